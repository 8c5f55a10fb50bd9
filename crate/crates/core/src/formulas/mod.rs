//! Closed forms, recurrences and moment formulas for the rank counts.
//!
//! Every piecewise formula is written as a list of guarded cases. Evaluation
//! returns the first case whose guard holds; [`Cases::all`] exposes every
//! matching case so overlapping guards can be compared against each other.
//! Intermediate arithmetic is exact over the dyadic rationals because several
//! cases carry negative powers of two for small parameters; final values must
//! be integers.

pub mod double;
pub mod moments;
pub mod persym;
pub mod reductions;
pub mod triple;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use double::{delta_double, gamma_double, gamma_double_recur, sigma_formula};
pub use moments::{moment, moment_of_shape, r_q_single_closed};
pub use persym::{a_coeff, gamma_persym, gamma_persym_rows, joint_persym_formula};
pub use reductions::{reduction_identities, ReductionCheck, ReductionKind};
pub use triple::{gamma_triple, gamma_triple_recur};

/// An exact formula value together with the case that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaResult {
    pub value: BigInt,
    pub provenance: String,
}

impl FormulaResult {
    pub fn new(value: impl Into<BigInt>, provenance: impl Into<String>) -> Self {
        FormulaResult {
            value: value.into(),
            provenance: provenance.into(),
        }
    }
}

impl fmt::Display for FormulaResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.value, self.provenance)
    }
}

pub(crate) type Q = BigRational;

/// `2^e` for any integer exponent.
pub(crate) fn p2(e: i64) -> Q {
    if e >= 0 {
        Q::from_integer(BigInt::one() << (e as usize))
    } else {
        Q::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

pub(crate) fn n(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub(crate) fn qi(v: &BigInt) -> Q {
    Q::from_integer(v.clone())
}

/// Exact conversion of a dyadic value that must be integral.
pub(crate) fn to_int(value: &Q, what: &str) -> Result<BigInt> {
    if value.denom().is_one() {
        Ok(value.numer().clone())
    } else {
        Err(Error::Internal(format!("{what} evaluated to non-integer {value}")))
    }
}

/// `x / 2^bits`, failing unless the division is exact.
pub(crate) fn exact_shift_down(x: &BigInt, bits: usize, what: &str) -> Result<BigInt> {
    let den = BigInt::one() << bits;
    let (quot, rem) = x.div_rem(&den);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(Error::Internal(format!("{what}: {x} is not divisible by 2^{bits}")))
    }
}

/// A guarded case table under evaluation.
pub(crate) struct Cases {
    family: String,
    hits: Vec<(String, Q)>,
    tried: Vec<String>,
}

impl Cases {
    pub(crate) fn new(family: impl Into<String>) -> Self {
        Cases {
            family: family.into(),
            hits: Vec::new(),
            tried: Vec::new(),
        }
    }

    pub(crate) fn case(&mut self, guard: bool, tag: &str, value: impl FnOnce() -> Q) -> &mut Self {
        self.tried.push(tag.to_string());
        if guard {
            self.hits.push((tag.to_string(), value()));
        }
        self
    }

    /// Case whose value is itself a fallible formula evaluation.
    pub(crate) fn case_try(&mut self, guard: bool, tag: &str, value: impl FnOnce() -> Result<Q>) -> Result<&mut Self> {
        self.tried.push(tag.to_string());
        if guard {
            let v = value()?;
            self.hits.push((tag.to_string(), v));
        }
        Ok(self)
    }

    fn result(&self, idx: usize) -> Result<FormulaResult> {
        let (tag, v) = &self.hits[idx];
        let provenance = format!("{}: {}", self.family, tag);
        Ok(FormulaResult {
            value: to_int(v, &provenance)?,
            provenance,
        })
    }

    pub(crate) fn first(&self, what: &str) -> Result<FormulaResult> {
        if self.hits.is_empty() {
            return Err(Error::not_covered(
                format!("{} {what}", self.family),
                format!("guards tried: {}", self.tried.join("; ")),
            ));
        }
        self.result(0)
    }

    pub(crate) fn all(&self) -> Result<Vec<FormulaResult>> {
        (0..self.hits.len()).map(|i| self.result(i)).collect()
    }
}

/// Signed integer view used by guards.
pub(crate) fn sz(v: usize) -> i64 {
    v as i64
}
