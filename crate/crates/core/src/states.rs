//! The two Bell-diagonal state families and conversions between their
//! correlation-parameter and spectral representations.
//!
//! Eigenvalue labels follow the fixed Bell-basis order (`|psi_1,3>` built
//! from `|00> +/- |11>`, `|psi_2,4>` from `|01> +/- |10>`) and are never
//! sorted: the freezing conditions are label-sensitive. All 4x4 matrices
//! use the computational basis `|00>, |01>, |10>, |11>`.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qmath::{kron, ComplexMatrix};

/// Eigenvalues below this are unphysical; values in `[-PHYSICALITY_TOL, 0)`
/// are accepted and clamped so boundary states (pure Bell states,
/// degenerate transition points) survive rounding.
pub const PHYSICALITY_TOL: f64 = 1e-12;

fn clamp_physical(values: [f64; 4]) -> Result<[f64; 4]> {
    let mut out = values;
    for v in &mut out {
        if *v < 0.0 {
            if *v < -PHYSICALITY_TOL {
                return Err(Error::Unphysical(
                    values.into_iter().fold(f64::MAX, f64::min),
                ));
            }
            *v = 0.0;
        }
    }
    Ok(out)
}

/// Eigenvalues of a Bell-diagonal state in Bell-basis order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    l: [f64; 4],
}

impl Spectrum {
    /// Validate eigenvalues: each non-negative up to clamping, summing to
    /// one within `1e-12`.
    pub fn new(l1: f64, l2: f64, l3: f64, l4: f64) -> Result<Self> {
        let l = clamp_physical([l1, l2, l3, l4])?;
        let sum: f64 = l.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::ProbabilitySum(sum));
        }
        Ok(Self { l })
    }

    pub(crate) fn new_unchecked(l: [f64; 4]) -> Self {
        debug_assert!(l.iter().all(|&x| x >= -PHYSICALITY_TOL));
        debug_assert!((l.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        Self {
            l: l.map(|x| x.max(0.0)),
        }
    }

    pub fn l1(&self) -> f64 {
        self.l[0]
    }
    pub fn l2(&self) -> f64 {
        self.l[1]
    }
    pub fn l3(&self) -> f64 {
        self.l[2]
    }
    pub fn l4(&self) -> f64 {
        self.l[3]
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.l
    }

    /// Correlation parameters recovered by inverting the spectral map;
    /// round-trips with [`BellDiagonal::spectrum`] to machine precision.
    pub fn correlations(&self) -> BellDiagonal {
        let [l1, l2, l3, l4] = self.l;
        BellDiagonal {
            c1: l1 + l2 - l3 - l4,
            c2: -l1 + l2 + l3 - l4,
            c3: l1 + l3 - l2 - l4,
        }
    }
}

/// Standard Bell-diagonal two-qubit state, parametrized by the three
/// correlation coefficients of the Pauli expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonal {
    c1: f64,
    c2: f64,
    c3: f64,
}

impl BellDiagonal {
    /// Validate physicality: all four derived eigenvalues must be
    /// non-negative up to clamping.
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let s = Self { c1, c2, c3 };
        s.spectrum_checked()?;
        Ok(s)
    }

    pub(crate) fn new_unchecked(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }
    pub fn c2(&self) -> f64 {
        self.c2
    }
    pub fn c3(&self) -> f64 {
        self.c3
    }

    fn raw_lambdas(&self) -> [f64; 4] {
        let Self { c1, c2, c3 } = *self;
        [
            (1.0 + c1 - c2 + c3) / 4.0,
            (1.0 + c1 + c2 - c3) / 4.0,
            (1.0 - c1 + c2 + c3) / 4.0,
            (1.0 - c1 - c2 - c3) / 4.0,
        ]
    }

    fn spectrum_checked(&self) -> Result<Spectrum> {
        let l = clamp_physical(self.raw_lambdas())?;
        Ok(Spectrum { l })
    }

    /// Bell-basis eigenvalues of the state.
    pub fn spectrum(&self) -> Spectrum {
        Spectrum {
            l: self.raw_lambdas().map(|x| x.max(0.0)),
        }
    }

    /// Density matrix in the computational basis.
    pub fn density_matrix(&self) -> ComplexMatrix {
        let i2 = ComplexMatrix::identity(2).expect("dim 2 is supported");
        let mut rho = kron(&i2, &i2).expect("identity kron");
        for (c, sigma) in [
            (self.c1, ComplexMatrix::pauli_x()),
            (self.c2, ComplexMatrix::pauli_y()),
            (self.c3, ComplexMatrix::pauli_z()),
        ] {
            rho = rho.add(&kron(&sigma, &sigma).expect("pauli kron").scale(c));
        }
        rho.scale(0.25)
    }
}

/// Bell-diagonal state beyond the standard form: the cross terms
/// `c12`, `c21` may be nonzero while all other off-diagonal correlation
/// coefficients vanish. Its eigenvectors are phase-twisted Bell states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedBellDiagonal {
    c11: f64,
    c12: f64,
    c21: f64,
    c22: f64,
    c33: f64,
}

/// Spectral data of an extended state: Bell-order eigenvalues plus the
/// two eigenvector phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedEigensystem {
    pub spectrum: Spectrum,
    pub phi_plus: f64,
    pub phi_minus: f64,
}

impl ExtendedBellDiagonal {
    pub fn new(c11: f64, c12: f64, c21: f64, c22: f64, c33: f64) -> Result<Self> {
        let s = Self {
            c11,
            c12,
            c21,
            c22,
            c33,
        };
        clamp_physical(s.raw_lambdas())?;
        Ok(s)
    }

    pub(crate) fn new_unchecked(c11: f64, c12: f64, c21: f64, c22: f64, c33: f64) -> Self {
        Self {
            c11,
            c12,
            c21,
            c22,
            c33,
        }
    }

    pub fn c11(&self) -> f64 {
        self.c11
    }
    pub fn c12(&self) -> f64 {
        self.c12
    }
    pub fn c21(&self) -> f64 {
        self.c21
    }
    pub fn c22(&self) -> f64 {
        self.c22
    }
    pub fn c33(&self) -> f64 {
        self.c33
    }

    /// Radius of the `|00>/|11>` coherence block.
    fn r_minus(&self) -> f64 {
        ((self.c11 - self.c22).powi(2) + (self.c12 + self.c21).powi(2)).sqrt()
    }

    /// Radius of the `|01>/|10>` coherence block.
    fn r_plus(&self) -> f64 {
        ((self.c11 + self.c22).powi(2) + (self.c12 - self.c21).powi(2)).sqrt()
    }

    fn raw_lambdas(&self) -> [f64; 4] {
        let rm = self.r_minus();
        let rp = self.r_plus();
        [
            (1.0 + rm + self.c33) / 4.0,
            (1.0 + rp - self.c33) / 4.0,
            (1.0 - rm + self.c33) / 4.0,
            (1.0 - rp - self.c33) / 4.0,
        ]
    }

    /// Eigenvalues and eigenvector phases.
    ///
    /// The phases use the two-argument arctangent, with the quadrant fixed
    /// so that the spectral decomposition reproduces the Pauli expansion
    /// entrywise; when a coherence block vanishes the phase is arbitrary
    /// and reported as zero.
    pub fn eigensystem(&self) -> ExtendedEigensystem {
        let l = self.raw_lambdas().map(|x| x.max(0.0));
        let phi_plus = phase_or_zero(-(self.c12 + self.c21), self.c11 - self.c22);
        let phi_minus = phase_or_zero(self.c12 - self.c21, self.c11 + self.c22);
        ExtendedEigensystem {
            spectrum: Spectrum { l },
            phi_plus,
            phi_minus,
        }
    }

    /// Density matrix in the computational basis.
    pub fn density_matrix(&self) -> ComplexMatrix {
        let i2 = ComplexMatrix::identity(2).expect("dim 2 is supported");
        let mut rho = kron(&i2, &i2).expect("identity kron");
        let x = ComplexMatrix::pauli_x();
        let y = ComplexMatrix::pauli_y();
        let z = ComplexMatrix::pauli_z();
        for (c, a, b) in [
            (self.c11, &x, &x),
            (self.c12, &x, &y),
            (self.c21, &y, &x),
            (self.c22, &y, &y),
            (self.c33, &z, &z),
        ] {
            rho = rho.add(&kron(a, b).expect("pauli kron").scale(c));
        }
        rho.scale(0.25)
    }

    /// Standard Bell-diagonal state with the same spectrum and the same
    /// correlation dynamics under one-sided dephasing.
    ///
    /// The two states are related by a local diagonal unitary, which both
    /// leaves discord invariant and commutes with the phase damping
    /// channel, so every discord quantity of the extended state can be
    /// evaluated on this twin.
    pub fn standard_equivalent(&self) -> BellDiagonal {
        let rm = self.r_minus();
        let rp = self.r_plus();
        BellDiagonal {
            c1: (rm + rp) / 2.0,
            c2: (rp - rm) / 2.0,
            c3: self.c33,
        }
    }
}

fn phase_or_zero(y: f64, x: f64) -> f64 {
    if y == 0.0 && x == 0.0 {
        0.0
    } else {
        y.atan2(x)
    }
}

/// A parsed state specification: exactly one of the accepted
/// parametrizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSpec {
    Standard(BellDiagonal),
    Extended(ExtendedBellDiagonal),
}

impl StateSpec {
    /// The standard-family state used for analytic evaluation: either the
    /// state itself or the spectral twin of an extended state.
    pub fn standard_form(&self) -> BellDiagonal {
        match self {
            StateSpec::Standard(s) => *s,
            StateSpec::Extended(e) => e.standard_equivalent(),
        }
    }

    /// Density matrix of the state actually specified.
    pub fn density_matrix(&self) -> ComplexMatrix {
        match self {
            StateSpec::Standard(s) => s.density_matrix(),
            StateSpec::Extended(e) => e.density_matrix(),
        }
    }
}

impl FromStr for StateSpec {
    type Err = Error;

    /// Parse `key=value` pairs separated by commas. The key set must be
    /// exactly `{c1,c2,c3}`, `{l1,l2,l3,l4}` or `{c11,c12,c21,c22,c33}`.
    fn from_str(s: &str) -> Result<Self> {
        let mut pairs: Vec<(&str, f64)> = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            if item.is_empty() {
                return Err(Error::StateParse("empty key=value entry".into()));
            }
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::StateParse(format!("expected key=value, got `{item}`")))?;
            let key = key.trim();
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::StateParse(format!("`{}` is not a number", value.trim())))?;
            if pairs.iter().any(|(k, _)| *k == key) {
                return Err(Error::StateParse(format!("duplicate key `{key}`")));
            }
            pairs.push((key, value));
        }

        let get = |key: &str| pairs.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        let mut keys: Vec<&str> = pairs.iter().map(|(k, _)| *k).collect();
        keys.sort_unstable();

        match keys.as_slice() {
            ["c1", "c2", "c3"] => {
                let s =
                    BellDiagonal::new(get("c1").unwrap(), get("c2").unwrap(), get("c3").unwrap())?;
                Ok(StateSpec::Standard(s))
            }
            ["l1", "l2", "l3", "l4"] => {
                let sp = Spectrum::new(
                    get("l1").unwrap(),
                    get("l2").unwrap(),
                    get("l3").unwrap(),
                    get("l4").unwrap(),
                )?;
                Ok(StateSpec::Standard(sp.correlations()))
            }
            ["c11", "c12", "c21", "c22", "c33"] => {
                let e = ExtendedBellDiagonal::new(
                    get("c11").unwrap(),
                    get("c12").unwrap(),
                    get("c21").unwrap(),
                    get("c22").unwrap(),
                    get("c33").unwrap(),
                )?;
                Ok(StateSpec::Extended(e))
            }
            _ => Err(Error::StateParse(format!(
                "keys must be c1,c2,c3 or l1,l2,l3,l4 or c11,c12,c21,c22,c33; got {}",
                keys.join(",")
            ))),
        }
    }
}
