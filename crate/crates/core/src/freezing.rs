//! Freezing analysis: decide the product-equality conditions, locate the
//! sudden transition, sample the freezing surface and its boundary, and
//! scan non-Markovian trajectories for multiple transitions.

use rayon::prelude::*;

use crate::channels::{evolve_spectrum, NoiseSchedule, ParametrizedTime};
use crate::discord::{discord_analytic, Branch};
use crate::error::{Error, Result};
use crate::qmath::binary_entropy_clamped;
use crate::states::{BellDiagonal, Spectrum};

/// Default relative tolerance on the product equality; physical inputs
/// from files carry decimal rounding.
pub const DEFAULT_CONDITION_TOL: f64 = 1e-10;

/// Absolute floor on the product-equality test. Eigenvalues are order
/// one, so a single pass through the correlation parametrization
/// perturbs the products by a few 1e-17; without this floor, rank-two
/// states (vanishing products on both sides) would be rejected after
/// any such round trip.
const PRODUCT_NOISE_FLOOR: f64 = 1e-14;

/// The two alternative freezing conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `l1 l4 = l2 l3` with `(l1 - l4)(l2 - l3) > 0`; freezes on branch B1.
    A,
    /// `l1 l2 = l3 l4` with `(l1 - l2)(l4 - l3) > 0`; freezes on branch B2.
    B,
}

impl Condition {
    pub fn branch(&self) -> Branch {
        match self {
            Condition::A => Branch::B1,
            Condition::B => Branch::B2,
        }
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Condition::A => write!(f, "CondA"),
            Condition::B => write!(f, "CondB"),
        }
    }
}

/// The eight eigenvalue orderings compatible with the conditions, four
/// per condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderClass {
    A1234,
    A4321,
    A3412,
    A2143,
    B1432,
    B2341,
    B3214,
    B4123,
}

impl OrderClass {
    /// The ordering as a descending chain of eigenvalue labels.
    pub fn chain(&self) -> &'static str {
        match self {
            OrderClass::A1234 => "l1>l2>l3>l4",
            OrderClass::A4321 => "l4>l3>l2>l1",
            OrderClass::A3412 => "l3>l4>l1>l2",
            OrderClass::A2143 => "l2>l1>l4>l3",
            OrderClass::B1432 => "l1>l4>l3>l2",
            OrderClass::B2341 => "l2>l3>l4>l1",
            OrderClass::B3214 => "l3>l2>l1>l4",
            OrderClass::B4123 => "l4>l1>l2>l3",
        }
    }
}

impl std::fmt::Display for OrderClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.chain())
    }
}

/// Outcome of testing the freezing conditions on a spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionVerdict {
    pub condition: Option<Condition>,
    pub order_class: Option<OrderClass>,
    /// Set when a product equality holds but the strict inequality sits
    /// inside `[0, tol]`: the freezing interval has zero length, so the
    /// state is classified as not freezing rather than silently frozen.
    pub boundary: bool,
}

fn products_equal(p: f64, q: f64, tol: f64) -> bool {
    (p - q).abs() <= tol * p.max(q) + PRODUCT_NOISE_FLOOR
}

fn order_class_a(l: [f64; 4]) -> OrderClass {
    if l[0] - l[3] > 0.0 {
        if l[0] >= l[1] {
            OrderClass::A1234
        } else {
            OrderClass::A2143
        }
    } else if l[3] >= l[2] {
        OrderClass::A4321
    } else {
        OrderClass::A3412
    }
}

fn order_class_b(l: [f64; 4]) -> OrderClass {
    if l[0] - l[1] > 0.0 {
        if l[0] >= l[3] {
            OrderClass::B1432
        } else {
            OrderClass::B4123
        }
    } else if l[1] >= l[2] {
        OrderClass::B2341
    } else {
        OrderClass::B3214
    }
}

/// Test the freezing conditions on a spectrum.
///
/// The product equality is checked with the given relative tolerance and
/// the ordering inequality strictly (greater than `tol`); condition A is
/// tried first. Both conditions cannot hold strictly at once.
pub fn check_condition(sp: &Spectrum, tol: f64) -> ConditionVerdict {
    let l = sp.as_array();
    let mut boundary = false;

    let eq_a = products_equal(l[0] * l[3], l[1] * l[2], tol);
    let ineq_a = (l[0] - l[3]) * (l[1] - l[2]);
    if eq_a {
        if ineq_a > tol {
            return ConditionVerdict {
                condition: Some(Condition::A),
                order_class: Some(order_class_a(l)),
                boundary: false,
            };
        }
        if ineq_a >= 0.0 {
            boundary = true;
        }
    }

    let eq_b = products_equal(l[0] * l[1], l[2] * l[3], tol);
    let ineq_b = (l[0] - l[1]) * (l[3] - l[2]);
    if eq_b {
        if ineq_b > tol {
            return ConditionVerdict {
                condition: Some(Condition::B),
                order_class: Some(order_class_b(l)),
                boundary: false,
            };
        }
        if ineq_b >= 0.0 {
            boundary = true;
        }
    }

    ConditionVerdict {
        condition: None,
        order_class: None,
        boundary,
    }
}

/// The constant discord level on the freezing interval,
/// `1 - h2(l1 + l3)`.
pub fn frozen_value(sp: &Spectrum) -> Result<f64> {
    let verdict = check_condition(sp, DEFAULT_CONDITION_TOL);
    if verdict.condition.is_none() {
        return Err(Error::NotFrozen);
    }
    Ok(1.0 - binary_entropy_clamped(sp.l1() + sp.l3()))
}

fn active_magnitude(s: &BellDiagonal, condition: Condition) -> f64 {
    match condition {
        Condition::A => s.c1().abs(),
        Condition::B => s.c2().abs(),
    }
}

/// Parametrized time at which the freezing interval ends: the evolved
/// dominant magnitude falls to `|c3|`. A state with `c3 = 0` stays
/// frozen up to complete dephasing.
pub fn transition_q(s: &BellDiagonal) -> Result<f64> {
    let verdict = check_condition(&s.spectrum(), DEFAULT_CONDITION_TOL);
    let condition = verdict.condition.ok_or(Error::NotFrozen)?;
    if s.c3() == 0.0 {
        return Ok(1.0);
    }
    Ok(1.0 - (s.c3() / active_magnitude(s, condition)).abs())
}

/// One-sided discord rate just past the transition: the entropy
/// production term evaluated at the transition spectrum.
pub fn sudden_change_rate(s: &BellDiagonal) -> Result<f64> {
    let q_t = transition_q(s)?;
    if q_t >= 1.0 {
        return Err(Error::NoPostTransition);
    }
    let l = evolve_spectrum(
        &s.spectrum(),
        ParametrizedTime::new(q_t).expect("transition point is in range"),
    )
    .as_array();
    let swapped = [l[2], l[3], l[0], l[1]];
    let h4 = crate::qmath::relative_entropy_raw(&l, &swapped);
    Ok(-h4 / (2.0 * (1.0 - q_t)))
}

/// Condition check, frozen level, transition point and post-transition
/// rate of a state, in one record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreezeReport {
    pub verdict: ConditionVerdict,
    pub frozen_value: Option<f64>,
    pub q_transition: Option<f64>,
    pub sudden_rate: Option<f64>,
}

impl FreezeReport {
    pub fn analyze(s: &BellDiagonal, tol: f64) -> Self {
        let sp = s.spectrum();
        let verdict = check_condition(&sp, tol);
        if verdict.condition.is_none() {
            return Self {
                verdict,
                frozen_value: None,
                q_transition: None,
                sudden_rate: None,
            };
        }
        let condition = verdict.condition.expect("checked above");
        let frozen = 1.0 - binary_entropy_clamped(sp.l1() + sp.l3());
        let q_t = if s.c3() == 0.0 {
            1.0
        } else {
            1.0 - (s.c3() / active_magnitude(s, condition)).abs()
        };
        let sudden = if q_t < 1.0 {
            let l = evolve_spectrum(
                &sp,
                ParametrizedTime::new(q_t).expect("transition point is in range"),
            )
            .as_array();
            let swapped = [l[2], l[3], l[0], l[1]];
            Some(-crate::qmath::relative_entropy_raw(&l, &swapped) / (2.0 * (1.0 - q_t)))
        } else {
            None
        };
        Self {
            verdict,
            frozen_value: Some(frozen),
            q_transition: Some(q_t),
            sudden_rate: sudden,
        }
    }
}

/// A sampled state of the freezing surface, carried both as display
/// coordinates (square roots of the first three eigenvalues) and as the
/// full spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub sqrt_l1: f64,
    pub sqrt_l2: f64,
    pub sqrt_l3: f64,
    pub spectrum: Spectrum,
    pub condition: Condition,
}

fn surface_point(l: [f64; 4], condition: Condition) -> SurfacePoint {
    SurfacePoint {
        sqrt_l1: l[0].sqrt(),
        sqrt_l2: l[1].sqrt(),
        sqrt_l3: l[2].sqrt(),
        spectrum: Spectrum::new_unchecked(l),
        condition,
    }
}

/// Sample the freezing surface of one condition on an `n x n` parameter
/// grid.
///
/// Condition A is a graph over `(l1, l2)` via
/// `l3 = l1 (1 - l1 - l2) / (l1 + l2)`; condition B is the analogous
/// graph over `(l1, l3)`. Only points passing the strict condition and
/// physicality survive; empty regions simply yield no points.
pub fn sample_surface(condition: Condition, n: usize) -> Result<Vec<SurfacePoint>> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!(
            "surface sampling needs n >= 2, got {n}"
        )));
    }
    let step = 1.0 / (n - 1) as f64;
    let points: Vec<SurfacePoint> = (0..n)
        .into_par_iter()
        .map(|i| {
            let u = i as f64 * step;
            let mut row = Vec::new();
            for j in 0..n {
                let v = j as f64 * step;
                let l = match condition {
                    Condition::A => {
                        let (l1, l2) = (u, v);
                        if l1 + l2 <= 0.0 || l1 + l2 >= 1.0 {
                            continue;
                        }
                        let l3 = l1 * (1.0 - l1 - l2) / (l1 + l2);
                        let l4 = 1.0 - l1 - l2 - l3;
                        [l1, l2, l3, l4]
                    }
                    Condition::B => {
                        let (l1, l3) = (u, v);
                        if l1 + l3 <= 0.0 || l1 + l3 >= 1.0 {
                            continue;
                        }
                        let l2 = l3 * (1.0 - l1 - l3) / (l1 + l3);
                        let l4 = 1.0 - l1 - l2 - l3;
                        [l1, l2, l3, l4]
                    }
                };
                if l.iter().any(|&x| x < 0.0) {
                    continue;
                }
                let sp = Spectrum::new_unchecked(l);
                if check_condition(&sp, DEFAULT_CONDITION_TOL).condition == Some(condition) {
                    row.push(surface_point(l, condition));
                }
            }
            row
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(points)
}

/// A sampled point of one of the four transition-boundary curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub curve: usize,
    pub sqrt_l1: f64,
    pub sqrt_l2: f64,
    pub sqrt_l3: f64,
    pub spectrum: Spectrum,
    /// Which condition's product equality the curve bounds, classified
    /// numerically from an interior point of the curve.
    pub condition: Condition,
}

fn boundary_curve_map(curve: usize, u: f64) -> [f64; 4] {
    let r = u.sqrt();
    match curve {
        // l1 = l2 = sqrt(l3) - l3
        1 => [r - u, r - u, u, (1.0 - r) * (1.0 - r)],
        // l3 = l2 = sqrt(l1) - l1
        2 => [u, r - u, r - u, (1.0 - r) * (1.0 - r)],
        // l1 = (1 - sqrt(l2))^2, l3 = l4 = sqrt(l2) - l2
        3 => [(1.0 - r) * (1.0 - r), u, r - u, r - u],
        // l3 = (1 - sqrt(l2))^2, l1 = l4 = sqrt(l2) - l2
        4 => [r - u, u, (1.0 - r) * (1.0 - r), r - u],
        _ => unreachable!("curve index is 1..=4"),
    }
}

fn classify_curve(curve: usize) -> Condition {
    // Probe an interior point away from the common node, where exactly
    // one product equality holds.
    let l = boundary_curve_map(curve, 0.1);
    let eq_a = products_equal(l[0] * l[3], l[1] * l[2], 1e-10);
    let eq_b = products_equal(l[0] * l[1], l[2] * l[3], 1e-10);
    debug_assert!(eq_a != eq_b, "interior boundary point must pick a side");
    if eq_a {
        Condition::A
    } else {
        Condition::B
    }
}

/// Sample the four transition-boundary curves, `n` points each, over the
/// full physical range of their free parameter.
///
/// Every returned point satisfies its condition's product equality and
/// the branch tie (the dominant transverse magnitude equals `|c3|`); the
/// common limit of all four curves is the maximally random state.
pub fn boundary_curves(n: usize) -> Result<[Vec<BoundaryPoint>; 4]> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!(
            "boundary sampling needs n >= 2, got {n}"
        )));
    }
    let step = 1.0 / (n - 1) as f64;
    let mut out: [Vec<BoundaryPoint>; 4] = [vec![], vec![], vec![], vec![]];
    for curve in 1..=4 {
        let condition = classify_curve(curve);
        let points = &mut out[curve - 1];
        for i in 0..n {
            let u = i as f64 * step;
            let l = boundary_curve_map(curve, u);
            debug_assert!(l.iter().all(|&x| x >= -1e-15));
            let l = l.map(|x| x.max(0.0));
            points.push(BoundaryPoint {
                curve,
                sqrt_l1: l[0].sqrt(),
                sqrt_l2: l[1].sqrt(),
                sqrt_l3: l[2].sqrt(),
                spectrum: Spectrum::new_unchecked(l),
                condition,
            });
        }
    }
    Ok(out)
}

/// Direction of a freezing transition along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitionDirection {
    /// The dominant transverse magnitude dropped below `|c3|`.
    FreezeToDecay,
    /// It climbed back above `|c3|`: the trajectory re-enters a leaf.
    DecayToFreeze,
}

impl std::fmt::Display for TransitionDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransitionDirection::FreezeToDecay => write!(f, "freeze_to_decay"),
            TransitionDirection::DecayToFreeze => write!(f, "decay_to_freeze"),
        }
    }
}

/// A single transition event on a non-Markovian trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionEvent {
    pub t: f64,
    pub q: f64,
    pub direction: TransitionDirection,
}

/// Threshold predicate for multiple transitions under random telegraph
/// noise: the dominant-to-longitudinal ratio must beat the damping
/// accumulated over one half oscillation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RtnThreshold {
    /// `|c_active / c3|` of the initial state (infinite when `c3 = 0`).
    pub ratio: f64,
    /// `exp(pi gamma / omega)`.
    pub threshold: f64,
    pub satisfied: bool,
}

/// Evaluate the multiple-transition threshold for a freezing state under
/// a random-telegraph schedule.
pub fn multiple_transition_threshold(
    s: &BellDiagonal,
    sched: &NoiseSchedule,
) -> Result<RtnThreshold> {
    let verdict = check_condition(&s.spectrum(), DEFAULT_CONDITION_TOL);
    let condition = verdict.condition.ok_or(Error::NotFrozen)?;
    let omega = sched.omega().ok_or(Error::NotOscillatory)?;
    let threshold = (std::f64::consts::PI * sched.gamma() / omega).exp();
    let active = active_magnitude(s, condition);
    let ratio = if s.c3() == 0.0 {
        f64::INFINITY
    } else {
        (active / s.c3()).abs()
    };
    Ok(RtnThreshold {
        ratio,
        threshold,
        satisfied: ratio > threshold,
    })
}

/// Suggested scan step for [`nonmarkovian_transitions`]: two hundred
/// samples per oscillation period.
pub fn default_scan_step(sched: &NoiseSchedule) -> Result<f64> {
    let omega = sched.omega().ok_or(Error::NotOscillatory)?;
    Ok(2.0 * std::f64::consts::PI / omega / 200.0)
}

/// Locate the freezing transitions of a conditioned state driven by
/// random telegraph noise on `[0, t_max]`.
///
/// The scan samples `|d(t)| - |c3 / c_active|` on a grid of step `dt`
/// and refines each sign change by bisection until the bracket is
/// shorter than `1e-12` in `t`. Events alternate in direction by
/// construction.
pub fn nonmarkovian_transitions(
    s: &BellDiagonal,
    sched: &NoiseSchedule,
    t_max: f64,
    dt: f64,
) -> Result<Vec<TransitionEvent>> {
    let verdict = check_condition(&s.spectrum(), DEFAULT_CONDITION_TOL);
    let condition = verdict.condition.ok_or(Error::NotFrozen)?;
    if sched.omega().is_none() {
        return Err(Error::NotOscillatory);
    }
    if t_max <= 0.0 {
        return Err(Error::InvalidGrid(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    if dt <= 0.0 {
        return Err(Error::InvalidGrid(format!("dt must be positive, got {dt}")));
    }

    let active = active_magnitude(s, condition);
    let ratio = (s.c3() / active).abs();
    if ratio == 0.0 {
        // |d(t)| never crosses zero: the state stays frozen throughout.
        return Ok(Vec::new());
    }

    let gap = |t: f64| -> f64 {
        sched
            .coherence_at(t)
            .expect("scan times are non-negative")
            .abs()
            - ratio
    };

    let mut events = Vec::new();
    let mut t_prev = 0.0;
    let mut g_prev = gap(0.0);
    let mut t = dt;
    while t_prev < t_max {
        let t_cur = t.min(t_max);
        let g_cur = gap(t_cur);
        if (g_prev > 0.0) != (g_cur > 0.0) {
            let (mut lo, mut hi) = (t_prev, t_cur);
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                if (gap(mid) > 0.0) == (g_prev > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let t_event = 0.5 * (lo + hi);
            let direction = if g_prev > 0.0 {
                TransitionDirection::FreezeToDecay
            } else {
                TransitionDirection::DecayToFreeze
            };
            events.push(TransitionEvent {
                t: t_event,
                q: sched.q_at(t_event)?.value(),
                direction,
            });
        }
        t_prev = t_cur;
        g_prev = g_cur;
        t += dt;
    }
    Ok(events)
}

/// Discord along a schedule-driven trajectory at a given laboratory
/// time.
pub fn discord_at_time(s: &BellDiagonal, sched: &NoiseSchedule, t: f64) -> Result<f64> {
    Ok(discord_analytic(s, sched.q_at(t)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn benchmark_state() -> BellDiagonal {
        BellDiagonal::new(0.875, -0.525, 0.6).unwrap()
    }

    fn qt(v: f64) -> ParametrizedTime {
        ParametrizedTime::new(v).unwrap()
    }

    const FROZEN: f64 = 0.27807190511263765;

    #[test]
    fn condition_a_on_the_benchmark_state() {
        let sp = Spectrum::new(0.75, 0.1875, 0.05, 0.0125).unwrap();
        let v = check_condition(&sp, DEFAULT_CONDITION_TOL);
        assert_eq!(v.condition, Some(Condition::A));
        assert_eq!(v.order_class, Some(OrderClass::A1234));
        assert!(!v.boundary);
    }

    #[test]
    fn uniform_spectrum_is_a_boundary_case() {
        let sp = Spectrum::new(0.25, 0.25, 0.25, 0.25).unwrap();
        let v = check_condition(&sp, DEFAULT_CONDITION_TOL);
        assert_eq!(v.condition, None);
        assert!(v.boundary);
    }

    #[test]
    fn product_mismatch_is_rejected() {
        let sp = Spectrum::new(0.5, 0.3, 0.15, 0.05).unwrap();
        let v = check_condition(&sp, DEFAULT_CONDITION_TOL);
        assert_eq!(v.condition, None);
        assert!(!v.boundary);
    }

    #[test]
    fn condition_b_mirror_of_the_benchmark_state() {
        // Swap the roles of l2 and l4 to build the condition-B analogue.
        let sp = Spectrum::new(0.75, 0.0125, 0.05, 0.1875).unwrap();
        let v = check_condition(&sp, DEFAULT_CONDITION_TOL);
        assert_eq!(v.condition, Some(Condition::B));
        assert_eq!(v.order_class, Some(OrderClass::B1432));
    }

    #[test]
    fn frozen_value_of_the_benchmark_state() {
        let sp = Spectrum::new(0.75, 0.1875, 0.05, 0.0125).unwrap();
        assert!((frozen_value(&sp).unwrap() - FROZEN).abs() < 1e-15);
        assert!((frozen_value(&sp).unwrap() - discord_analytic(&benchmark_state(), qt(0.0))).abs() < 1e-12);
    }

    #[test]
    fn frozen_at_zero_when_longitudinal_part_vanishes() {
        // l1 + l3 = 1/2 <=> c3 = 0: frozen at zero discord.
        let sp = Spectrum::new(0.4, 0.4, 0.1, 0.1).unwrap();
        let v = check_condition(&sp, DEFAULT_CONDITION_TOL);
        assert_eq!(v.condition, Some(Condition::A));
        assert!(frozen_value(&sp).unwrap().abs() < 1e-15);
        let s = sp.correlations();
        assert_eq!(transition_q(&s).unwrap(), 1.0);
        assert!(matches!(
            sudden_change_rate(&s),
            Err(Error::NoPostTransition)
        ));
    }

    #[test]
    fn degenerate_pure_state_is_not_frozen() {
        let sp = Spectrum::new(1.0, 0.0, 0.0, 0.0).unwrap();
        let v = check_condition(&sp, DEFAULT_CONDITION_TOL);
        assert_eq!(v.condition, None);
        assert!(matches!(frozen_value(&sp), Err(Error::NotFrozen)));
    }

    #[test]
    fn transition_point_of_the_benchmark_state() {
        let q_t = transition_q(&benchmark_state()).unwrap();
        assert_eq!(q_t, 1.0 - 0.6 / 0.875);
        assert!((q_t - 11.0 / 35.0).abs() < 1e-15);
        // Branch tie at the transition.
        let c1_evolved = (1.0 - q_t) * 0.875;
        assert!((c1_evolved.abs() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn transition_point_via_condition_b() {
        let s = Spectrum::new(0.75, 0.0125, 0.05, 0.1875)
            .unwrap()
            .correlations();
        // Same geometry as the benchmark state with c2 in the active role.
        assert!((transition_q(&s).unwrap() - 11.0 / 35.0).abs() < 1e-14);
    }

    #[test]
    fn sudden_change_rate_of_the_benchmark_state() {
        let rate = sudden_change_rate(&benchmark_state()).unwrap();
        assert!((rate + 0.875).abs() < 1e-13);

        // Right-sided finite difference across the transition.
        let q_t = transition_q(&benchmark_state()).unwrap();
        let h = 1e-6;
        let fd = (discord_analytic(&benchmark_state(), qt(q_t + h)) - discord_analytic(&benchmark_state(), qt(q_t))) / h;
        assert!((rate - fd).abs() < 1e-5);

        // One-sided rate just past the transition agrees.
        match crate::discord::discord_rate(&benchmark_state(), qt(q_t + 1e-9)).unwrap() {
            crate::discord::DiscordRate::Single { rate: r, .. } => {
                assert!((rate - r).abs() < 1e-6)
            }
            other => panic!("unexpected tie {other:?}"),
        }
    }

    #[test]
    fn full_report_of_the_benchmark_state() {
        let r = FreezeReport::analyze(&benchmark_state(), DEFAULT_CONDITION_TOL);
        assert_eq!(r.verdict.condition, Some(Condition::A));
        assert!((r.frozen_value.unwrap() - FROZEN).abs() < 1e-15);
        assert!((r.q_transition.unwrap() - 11.0 / 35.0).abs() < 1e-15);
        assert!((r.sudden_rate.unwrap() + 0.875).abs() < 1e-13);
    }

    #[test]
    fn surface_contains_the_benchmark_state() {
        // Grid spacing 1/16 hits l1 = 12/16 and l2 = 3/16 exactly.
        let pts = sample_surface(Condition::A, 17).unwrap();
        assert!(pts.iter().any(|p| {
            (p.sqrt_l1 - 0.75f64.sqrt()).abs() < 1e-12
                && (p.sqrt_l2 - 0.1875f64.sqrt()).abs() < 1e-12
                && (p.sqrt_l3 - 0.05f64.sqrt()).abs() < 1e-12
        }));
    }

    #[test]
    fn surface_points_satisfy_their_condition() {
        for condition in [Condition::A, Condition::B] {
            let pts = sample_surface(condition, 41).unwrap();
            assert!(pts.len() > 100, "expected a dense sample");
            for p in &pts {
                let l = p.spectrum.as_array();
                let (pa, qa) = match condition {
                    Condition::A => (l[0] * l[3], l[1] * l[2]),
                    Condition::B => (l[0] * l[1], l[2] * l[3]),
                };
                assert!((pa - qa).abs() <= 1e-12);
                let v = check_condition(&p.spectrum, DEFAULT_CONDITION_TOL);
                assert_eq!(v.condition, Some(condition));
            }
        }
    }

    #[test]
    fn node_is_excluded_by_strictness() {
        for condition in [Condition::A, Condition::B] {
            let pts = sample_surface(condition, 41).unwrap();
            for p in &pts {
                let l = p.spectrum.as_array();
                let off_node: f64 = l.iter().map(|x| (x - 0.25).abs()).sum();
                assert!(off_node > 1e-12, "node must not be emitted");
            }
        }
    }

    #[test]
    fn surface_closure_under_the_flow() {
        let pts = sample_surface(Condition::A, 21).unwrap();
        for p in pts.iter().step_by(7) {
            let s = p.spectrum.correlations();
            let q_t = transition_q(&s).unwrap();
            for f in [0.25, 0.5, 0.9] {
                let evolved = evolve_spectrum(&p.spectrum, qt(q_t * f));
                let v = check_condition(&evolved, 1e-9);
                assert_eq!(v.condition, Some(Condition::A));
            }
        }
    }

    #[test]
    fn boundary_curves_pass_through_the_node() {
        let curves = boundary_curves(5).unwrap();
        for curve in &curves {
            let hits_node = curve.iter().any(|p| {
                let l = p.spectrum.as_array();
                l.iter().all(|&x| (x - 0.25).abs() < 1e-12)
            });
            assert!(hits_node, "free parameter 1/4 lands on the node");
        }
    }

    #[test]
    fn boundary_points_satisfy_equality_and_tie() {
        let curves = boundary_curves(33).unwrap();
        let classes: Vec<Condition> = curves.iter().map(|c| c[0].condition).collect();
        assert_eq!(
            classes,
            vec![Condition::B, Condition::A, Condition::B, Condition::A]
        );
        for curve in &curves {
            for p in curve {
                let l = p.spectrum.as_array();
                let (pa, qa) = match p.condition {
                    Condition::A => (l[0] * l[3], l[1] * l[2]),
                    Condition::B => (l[0] * l[1], l[2] * l[3]),
                };
                assert!((pa - qa).abs() <= 1e-10 * pa.max(qa).max(1e-10));
                let s = p.spectrum.correlations();
                let active = match p.condition {
                    Condition::A => s.c1().abs(),
                    Condition::B => s.c2().abs(),
                };
                assert!((active - s.c3().abs()).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn boundary_example_points() {
        // Curve 1 at l3 = 0.16 and curve 2 at l1 = 0.16 are the worked
        // examples of the two tie geometries.
        let l = boundary_curve_map(1, 0.16);
        assert!((l[0] - 0.24).abs() < 1e-15);
        assert!((l[1] - 0.24).abs() < 1e-15);
        assert!((l[3] - 0.36).abs() < 1e-15);
        let l = boundary_curve_map(2, 0.16);
        assert!((l[1] - 0.24).abs() < 1e-15);
        assert!((l[2] - 0.24).abs() < 1e-15);
    }

    #[test]
    fn rtn_threshold_for_the_benchmark_state() {
        let sched = NoiseSchedule::random_telegraph(1025f64.sqrt() / 2.0, 1.0).unwrap();
        let th = multiple_transition_threshold(&benchmark_state(), &sched).unwrap();
        assert!((th.ratio - 35.0 / 24.0).abs() < 1e-12);
        assert!((th.threshold - 1.1031555672286843).abs() < 1e-12);
        assert!(th.satisfied);
    }

    #[test]
    fn rtn_transitions_alternate_and_refreeze() {
        let sched = NoiseSchedule::random_telegraph(1025f64.sqrt() / 2.0, 1.0).unwrap();
        let omega = sched.omega().unwrap();
        let period = 2.0 * std::f64::consts::PI / omega;
        let dt = default_scan_step(&sched).unwrap();
        let events = nonmarkovian_transitions(&benchmark_state(), &sched, period, dt).unwrap();
        assert!(events.len() >= 2, "got {} events", events.len());
        assert_eq!(events[0].direction, TransitionDirection::FreezeToDecay);
        for pair in events.windows(2) {
            assert!(pair[0].t < pair[1].t);
            assert_ne!(pair[0].direction, pair[1].direction);
        }
        // After each re-entry the discord sits back at the frozen level.
        for (k, e) in events.iter().enumerate() {
            if e.direction != TransitionDirection::DecayToFreeze {
                continue;
            }
            let t_next = events.get(k + 1).map(|n| n.t).unwrap_or(period);
            let t_mid = 0.5 * (e.t + t_next);
            let q_mid = sched.q_at(t_mid).unwrap();
            assert!((discord_analytic(&benchmark_state(), q_mid) - FROZEN).abs() < 1e-9);
        }
    }

    #[test]
    fn weak_contrast_gives_a_single_transition() {
        // c1/c3 = 1.05 fails the threshold: one crossing, then the
        // damped oscillation never climbs back.
        let c3 = 0.6;
        let c1 = 1.05 * c3;
        // Condition A's product equality reads c2 = -c1 c3 in correlation
        // parameters, which keeps the tilted state on the surface.
        let c2 = -c1 * c3;
        let s = BellDiagonal::new(c1, c2, c3).unwrap();
        assert_eq!(
            check_condition(&s.spectrum(), DEFAULT_CONDITION_TOL).condition,
            Some(Condition::A)
        );
        let sched = NoiseSchedule::random_telegraph(1025f64.sqrt() / 2.0, 1.0).unwrap();
        let th = multiple_transition_threshold(&s, &sched).unwrap();
        assert!(!th.satisfied);
        let omega = sched.omega().unwrap();
        let period = 2.0 * std::f64::consts::PI / omega;
        let dt = default_scan_step(&sched).unwrap();
        let events = nonmarkovian_transitions(&s, &sched, 3.0 * period, dt).unwrap();
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].direction, TransitionDirection::FreezeToDecay);
    }

    #[test]
    fn transition_scan_rejects_bad_input() {
        let sched = NoiseSchedule::random_telegraph(2.0, 1.0).unwrap();
        let markov = NoiseSchedule::markovian(1.0).unwrap();
        let off = BellDiagonal::new(0.5, 0.3, 0.1).unwrap();
        assert!(matches!(
            nonmarkovian_transitions(&off, &sched, 1.0, 0.01),
            Err(Error::NotFrozen)
        ));
        assert!(matches!(
            nonmarkovian_transitions(&benchmark_state(), &markov, 1.0, 0.01),
            Err(Error::NotOscillatory)
        ));
        assert!(matches!(
            nonmarkovian_transitions(&benchmark_state(), &sched, -1.0, 0.01),
            Err(Error::InvalidGrid(_))
        ));
        assert!(matches!(
            nonmarkovian_transitions(&benchmark_state(), &sched, 1.0, 0.0),
            Err(Error::InvalidGrid(_))
        ));
    }
}
