//! Set-valued hyperfield addition over signed numbers and the cancellative
//! sum.

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::semiring::{Interval, SymNum};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HValue {
    Single(SymNum),
    /// Always `[⊖m, m]`.
    Interval(Interval),
}

impl HValue {
    pub fn contains(&self, z: &SymNum) -> bool {
        match self {
            HValue::Single(s) => s == z,
            HValue::Interval(iv) => iv.contains(z),
        }
    }

    fn radius(&self) -> Option<&num_rational::BigRational> {
        match self {
            HValue::Single(s) => s.mag(),
            HValue::Interval(iv) => iv.hi.mag(),
        }
    }

    /// Image of `x ⊕ y` for a set this value and a single signed `y`.
    fn plus(&self, y: &SymNum) -> HValue {
        match self {
            HValue::Single(x) => from_sum(x.add(y)),
            HValue::Interval(_) if y.mag() > self.radius() => HValue::Single(y.clone()),
            HValue::Interval(_) => self.clone(),
        }
    }

    fn join(&self, other: &HValue) -> HValue {
        match (self, other) {
            (_, HValue::Single(y)) => self.plus(y),
            (HValue::Single(x), _) => other.plus(x),
            (HValue::Interval(a), HValue::Interval(b)) => {
                HValue::Interval(if a.hi.mag() >= b.hi.mag() { a.clone() } else { b.clone() })
            }
        }
    }
}

fn from_sum(s: SymNum) -> HValue {
    if let SymNum::Bal(_) = s {
        HValue::Interval(s.uncomp())
    } else {
        HValue::Single(s)
    }
}

fn require_signed(xs: &[&SymNum]) -> Result<()> {
    match xs.iter().find(|x| !x.is_signed()) {
        Some(x) => Err(Error::Domain(format!("{x} is balanced"))),
        None => Ok(()),
    }
}

/// `x ⊞ y`: the whole interval on an opposite-sign tie.
pub fn hadd(x: &SymNum, y: &SymNum) -> Result<HValue> {
    require_signed(&[x, y])?;
    Ok(from_sum(x.add(y)))
}

/// Is `z` selectable from `V ⊡ λ`?
pub fn hconv_check(v: &SymMatrix, lambda: &[SymNum], z: &[SymNum]) -> Result<bool> {
    if lambda.len() != v.cols() || z.len() != v.rows() {
        return Err(Error::Dimension("weights or point do not fit the matrix".into()));
    }
    require_signed(&v.entries().iter().chain(lambda).chain(z).collect::<Vec<_>>())?;
    Ok((0..v.rows()).all(|i| {
        let total = v
            .row(i)
            .iter()
            .zip(lambda)
            .fold(HValue::Single(SymNum::Zero), |acc, (a, l)| acc.join(&HValue::Single(a.mul(l))));
        total.contains(&z[i])
    }))
}

/// Strict maximum, with opposite-sign ties cancelling to `Zero`. Not
/// associative.
pub fn cancellative_sum(x: &SymNum, y: &SymNum) -> Result<SymNum> {
    require_signed(&[x, y])?;
    Ok(match x.add(y) {
        SymNum::Bal(_) => SymNum::Zero,
        s => s,
    })
}
