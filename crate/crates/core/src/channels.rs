//! One-sided phase damping and the schedules mapping laboratory time to
//! the parametrized time `q = 1 - d(t)`.
//!
//! The channel is applied as the direct off-diagonal scaling map rather
//! than through a Kraus pair: the random-telegraph schedule drives the
//! coherence factor `d(t)` negative, and `q in [0, 2]` (i.e.
//! `p = q/2 in [0, 1]`) is exactly the range the map stays completely
//! positive on.

use crate::error::{Error, Result};
use crate::qmath::{ComplexMatrix, Subsystem};
use crate::states::{BellDiagonal, ExtendedBellDiagonal, Spectrum};

/// Parametrized time `q = 1 - d(t)`.
///
/// Markovian schedules stay in `[0, 1]`; random telegraph noise reaches
/// into `(1, 2]` when the coherence factor turns negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ParametrizedTime {
    q: f64,
}

impl ParametrizedTime {
    /// Accepts `q in [0, 2]` with `1e-12` slack, clamping into range.
    pub fn new(q: f64) -> Result<Self> {
        if !(-1e-12..=2.0 + 1e-12).contains(&q) {
            return Err(Error::TimeOutOfRange(q));
        }
        Ok(Self {
            q: q.clamp(0.0, 2.0),
        })
    }

    pub fn value(&self) -> f64 {
        self.q
    }

    /// Coherence scaling factor `d = 1 - q`.
    pub fn coherence_factor(&self) -> f64 {
        1.0 - self.q
    }
}

/// Time dependence of the dephasing strength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseSchedule {
    /// Exponential coherence decay, `d(t) = exp(-gamma t)`.
    Markovian { gamma: f64 },
    /// Random telegraph noise in the underdamped regime,
    /// `d(t) = exp(-gamma t) [cos(omega t) + (gamma/omega) sin(omega t)]`
    /// with `omega = sqrt(4 a^2 - gamma^2)`.
    RandomTelegraph { coupling: f64, gamma: f64 },
}

impl NoiseSchedule {
    pub fn markovian(gamma: f64) -> Result<Self> {
        if gamma <= 0.0 {
            return Err(Error::NonPositiveRate(gamma));
        }
        Ok(Self::Markovian { gamma })
    }

    /// Only the underdamped regime `2a > gamma` is supported; the
    /// overdamped case would need hyperbolic schedules and is rejected.
    pub fn random_telegraph(coupling: f64, gamma: f64) -> Result<Self> {
        if gamma <= 0.0 {
            return Err(Error::NonPositiveRate(gamma));
        }
        if coupling <= 0.0 {
            return Err(Error::NonPositiveRate(coupling));
        }
        if 2.0 * coupling <= gamma {
            return Err(Error::OverdampedRegime { a: coupling, gamma });
        }
        Ok(Self::RandomTelegraph { coupling, gamma })
    }

    /// Oscillation frequency of the random-telegraph schedule.
    pub fn omega(&self) -> Option<f64> {
        match *self {
            Self::Markovian { .. } => None,
            Self::RandomTelegraph { coupling, gamma } => {
                Some((4.0 * coupling * coupling - gamma * gamma).sqrt())
            }
        }
    }

    pub fn gamma(&self) -> f64 {
        match *self {
            Self::Markovian { gamma } | Self::RandomTelegraph { gamma, .. } => gamma,
        }
    }

    /// Coherence factor `d(t)`.
    pub fn coherence_at(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        Ok(match *self {
            Self::Markovian { gamma } => (-gamma * t).exp(),
            Self::RandomTelegraph { gamma, .. } => {
                let omega = self.omega().expect("random telegraph has omega");
                (-gamma * t).exp() * ((omega * t).cos() + gamma / omega * (omega * t).sin())
            }
        })
    }

    /// Parametrized time `q(t) = 1 - d(t)`.
    pub fn q_at(&self, t: f64) -> Result<ParametrizedTime> {
        ParametrizedTime::new(1.0 - self.coherence_at(t)?)
    }
}

impl std::str::FromStr for NoiseSchedule {
    type Err = Error;

    /// Parse `markovian:gamma=<v>` or `rtn:a=<v>,gamma=<v>`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::ScheduleParse(format!("expected kind:params, got `{s}`")))?;
        let mut params: Vec<(&str, f64)> = Vec::new();
        for item in rest.split(',') {
            let (key, value) = item
                .trim()
                .split_once('=')
                .ok_or_else(|| Error::ScheduleParse(format!("expected key=value, got `{item}`")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::ScheduleParse(format!("`{}` is not a number", value.trim())))?;
            if params.iter().any(|(k, _)| *k == key.trim()) {
                return Err(Error::ScheduleParse(format!(
                    "duplicate key `{}`",
                    key.trim()
                )));
            }
            params.push((key.trim(), value));
        }
        let get = |key: &str| params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        match kind.trim() {
            "markovian" => {
                if params.len() != 1 {
                    return Err(Error::ScheduleParse(
                        "markovian takes exactly gamma=<v>".into(),
                    ));
                }
                let gamma =
                    get("gamma").ok_or_else(|| Error::ScheduleParse("missing gamma".into()))?;
                Self::markovian(gamma)
            }
            "rtn" => {
                if params.len() != 2 {
                    return Err(Error::ScheduleParse(
                        "rtn takes exactly a=<v>,gamma=<v>".into(),
                    ));
                }
                let a = get("a").ok_or_else(|| Error::ScheduleParse("missing a".into()))?;
                let gamma =
                    get("gamma").ok_or_else(|| Error::ScheduleParse("missing gamma".into()))?;
                Self::random_telegraph(a, gamma)
            }
            other => Err(Error::ScheduleParse(format!(
                "unknown schedule kind `{other}` (expected markovian or rtn)"
            ))),
        }
    }
}

/// Phase damping on a single qubit: diagonal untouched, off-diagonal
/// scaled by `d = 1 - q`.
pub fn dephase_qubit(rho: &ComplexMatrix, q: ParametrizedTime) -> Result<ComplexMatrix> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: rho.dim(),
        });
    }
    let d = q.coherence_factor();
    let mut out = rho.clone();
    out[(0, 1)] *= d;
    out[(1, 0)] *= d;
    Ok(out)
}

/// Phase damping applied to one side of a two-qubit density matrix:
/// entries whose chosen-subsystem indices differ are scaled by `d`.
pub fn dephase_subsystem(
    rho: &ComplexMatrix,
    q: ParametrizedTime,
    side: Subsystem,
) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dim(),
        });
    }
    let d = q.coherence_factor();
    let mut out = rho.clone();
    for row in 0..4 {
        for col in 0..4 {
            let (ra, rb) = (row / 2, row % 2);
            let (ca, cb) = (col / 2, col % 2);
            let damped = match side {
                Subsystem::A => ra != ca,
                Subsystem::B => rb != cb,
            };
            if damped {
                out[(row, col)] *= d;
            }
        }
    }
    Ok(out)
}

/// Correlation-parameter flow of a standard Bell-diagonal state under
/// one-sided dephasing: the transverse coefficients shrink by `1 - q`,
/// the longitudinal one survives.
pub fn dephase_bell_diagonal(s: &BellDiagonal, q: ParametrizedTime) -> BellDiagonal {
    let d = q.coherence_factor();
    // Physicality is preserved for any q in [0, 2] from a physical input.
    let out = BellDiagonal::new_unchecked(d * s.c1(), d * s.c2(), s.c3());
    debug_assert!(out.spectrum().as_array().iter().all(|&l| l >= 0.0));
    out
}

/// Eigenvalue flow under one-sided dephasing: each coupled pair drifts
/// towards its mean at rate q/2.
pub fn evolve_spectrum(sp: &Spectrum, q: ParametrizedTime) -> Spectrum {
    let [l1, l2, l3, l4] = sp.as_array();
    let q = q.value();
    let odd = 0.5 * q * (l3 - l1);
    let even = 0.5 * q * (l4 - l2);
    Spectrum::new_unchecked([l1 + odd, l2 + even, l3 - odd, l4 - even])
}

/// Correlation flow of the extended family: every transverse block
/// coefficient shrinks by `1 - q`, `c33` survives.
pub fn dephase_extended(s: &ExtendedBellDiagonal, q: ParametrizedTime) -> ExtendedBellDiagonal {
    let d = q.coherence_factor();
    ExtendedBellDiagonal::new_unchecked(d * s.c11(), d * s.c12(), d * s.c21(), d * s.c22(), s.c33())
}
