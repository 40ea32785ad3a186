//! The exponent function `E` controlling square-integrability.
//!
//! For a representation with weight multiset `{(lambda, d_lambda)}`,
//!
//! ```text
//! E(nu) = <2rho, nu> - (1/2) * sum_lambda d_lambda * |<lambda, nu>|
//! ```
//!
//! `E` is concave, piecewise linear and positively homogeneous, and the
//! quotient stack is square-integrable exactly when `E` is negative on every
//! nonzero dominant coweight. Two components of `E` are exposed separately
//! because the volume formulas consume them: the determinant part
//! `-(1/2) sum d_lambda <lambda, nu>` and the negative part
//! `sum_{<lambda,nu> < 0} d_lambda <lambda, nu>`.

use core::fmt;

use num_traits::Zero;

use crate::reps::WeightRep;
use crate::rootdata::RootDatum;
use crate::Rat;

/// The exponent function of a fixed group and representation.
#[derive(Clone, Debug)]
pub struct ExponentForm {
    pub rd: RootDatum,
    pub rep: WeightRep,
}

/// Error constructing an exponent form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentError {
    /// The representation's coordinate dimension differs from the group's.
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for ExponentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentError::DimensionMismatch { expected, got } => {
                write!(f, "representation has dimension {got}, group needs {expected}")
            }
        }
    }
}

impl core::error::Error for ExponentError {}

/// Pair a weight with a rational vector.
fn pair_rational(weight: &[i64], nu: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (&w, x) in weight.iter().zip(nu) {
        if w != 0 {
            acc += x * Rat::from_integer(w.into());
        }
    }
    acc
}

impl ExponentForm {
    pub fn new(rd: &RootDatum, rep: &WeightRep) -> Result<Self, ExponentError> {
        if rep.dim != rd.dim() {
            return Err(ExponentError::DimensionMismatch { expected: rd.dim(), got: rep.dim });
        }
        Ok(ExponentForm { rd: rd.clone(), rep: rep.clone() })
    }

    /// `E(nu)` at an arbitrary rational vector (dominance is not required;
    /// the linear-programming layer evaluates `E` on the whole cone).
    ///
    /// Panics if `nu` has the wrong dimension.
    pub fn exponent(&self, nu: &[Rat]) -> Rat {
        assert_eq!(nu.len(), self.rd.dim(), "exponent: coweight has wrong dimension");
        let two_rho = pair_rational(&self.rd.two_rho, nu);
        let mut weighted = Rat::zero();
        for (w, m) in &self.rep.entries {
            let p = pair_rational(w, nu);
            let abs = if p < Rat::zero() { -p } else { p };
            weighted += abs * Rat::from_integer((*m).into());
        }
        two_rho - weighted / Rat::from_integer(2.into())
    }

    /// `E(nu)` at an integer coweight, as an exact rational in `(1/2)Z`.
    pub fn exponent_at(&self, nu: &[i64]) -> Rat {
        Rat::new(self.two_e(nu).into(), 2.into())
    }

    /// `2 E(nu)` at an integer coweight: always an integer, and the fast path
    /// used by the series enumeration.
    pub fn two_e(&self, nu: &[i64]) -> i64 {
        let mut acc: i128 = 2 * i128::from(self.rd.pairing(&self.rd.two_rho, nu));
        for (w, m) in &self.rep.entries {
            let p = i128::from(self.rd.pairing(w, nu));
            acc -= p.abs() * i128::from(*m);
        }
        i64::try_from(acc).expect("2E fits in i64")
    }

    /// `sum_{<lambda,nu> < 0} d_lambda <lambda, nu>`: the lattice-overlap
    /// exponent. Always a nonpositive integer.
    pub fn negative_part(&self, nu: &[i64]) -> i64 {
        let mut acc: i128 = 0;
        for (w, m) in &self.rep.entries {
            let p = i128::from(self.rd.pairing(w, nu));
            if p < 0 {
                acc += p * i128::from(*m);
            }
        }
        i64::try_from(acc).expect("negative part fits in i64")
    }

    /// `-(1/2) sum_lambda d_lambda <lambda, nu>`: the square-root-of-the-
    /// determinant exponent. Lies in `(1/2)Z`.
    pub fn det_exponent(&self, nu: &[i64]) -> Rat {
        let mut acc: i128 = 0;
        for (w, m) in &self.rep.entries {
            acc += i128::from(self.rd.pairing(w, nu)) * i128::from(*m);
        }
        Rat::new((-acc).into(), 2.into())
    }
}
