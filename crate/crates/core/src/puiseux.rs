//! Finite Puiseux series with rational exponents, the signed valuation, and
//! lifts of signed matrices realizing hull points.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::semiring::{format_rational, SymNum};

/// A finite sum of terms `c · t^e`, stored by strictly decreasing exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PuiseuxSeries {
    terms: Vec<(BigRational, BigRational)>,
}

impl PuiseuxSeries {
    pub fn zero() -> PuiseuxSeries {
        PuiseuxSeries::default()
    }

    pub fn monomial(coeff: BigRational, exp: BigRational) -> PuiseuxSeries {
        PuiseuxSeries::from_terms(vec![(coeff, exp)])
    }

    /// `t^e`.
    pub fn power(exp: BigRational) -> PuiseuxSeries {
        PuiseuxSeries::monomial(BigRational::one(), exp)
    }

    /// Collects like powers and drops vanishing terms.
    pub fn from_terms(terms: Vec<(BigRational, BigRational)>) -> PuiseuxSeries {
        let mut by_exp: BTreeMap<BigRational, BigRational> = BTreeMap::new();
        for (c, e) in terms {
            *by_exp.entry(e).or_insert_with(BigRational::zero) += c;
        }
        let terms = by_exp
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (c, e))
            .collect();
        PuiseuxSeries { terms }
    }

    /// The monomial `tsgn(a) t^{|a|}` of a signed number.
    pub fn of_signed(a: &SymNum) -> Result<PuiseuxSeries> {
        match a {
            SymNum::Zero => Ok(PuiseuxSeries::zero()),
            SymNum::Pos(m) => Ok(PuiseuxSeries::monomial(BigRational::one(), m.clone())),
            SymNum::Neg(m) => Ok(PuiseuxSeries::monomial(-BigRational::one(), m.clone())),
            SymNum::Bal(_) => Err(Error::Domain(format!("{a} has no monomial lift"))),
        }
    }

    pub fn terms(&self) -> &[(BigRational, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        PuiseuxSeries::from_terms(self.terms.iter().chain(&other.terms).cloned().collect())
    }

    pub fn mul(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, e1) in &self.terms {
            for (c2, e2) in &other.terms {
                out.push((c1 * c2, e1 + e2));
            }
        }
        PuiseuxSeries::from_terms(out)
    }

    pub fn neg(&self) -> PuiseuxSeries {
        PuiseuxSeries {
            terms: self.terms.iter().map(|(c, e)| (-c, e.clone())).collect(),
        }
    }

    /// Leading exponent, `None` for the zero series.
    pub fn val(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, e)| e)
    }

    /// Sign of the leading coefficient with the leading exponent.
    pub fn sval(&self) -> SymNum {
        match self.terms.first() {
            None => SymNum::Zero,
            Some((c, e)) if c.is_positive() => SymNum::Pos(e.clone()),
            Some((_, e)) => SymNum::Neg(e.clone()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(c, e)| json!([format_rational(c), format_rational(e)]))
            .collect();
        json!(terms)
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, e)| format!("{}*t^{}", format_rational(c), format_rational(e)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A `d × n` matrix of series.
pub type Lift = Vec<Vec<PuiseuxSeries>>;

fn weight_series(x: &SymNum) -> PuiseuxSeries {
    x.mag().map_or_else(PuiseuxSeries::zero, |m| PuiseuxSeries::power(m.clone()))
}

/// Entrywise signed valuation.
pub fn sval_matrix(lift: &Lift) -> Result<SymMatrix> {
    SymMatrix::from_rows(lift.iter().map(|r| r.iter().map(PuiseuxSeries::sval).collect()).collect())
}

/// `Σ_j t^{x_j} · lift_{ij}` for every row.
pub fn combine(lift: &Lift, x: &[SymNum]) -> Vec<PuiseuxSeries> {
    lift.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(PuiseuxSeries::zero(), |acc, (a, xj)| acc.add(&a.mul(&weight_series(xj))))
        })
        .collect()
}

/// A lift of `a` whose combination with weights `t^{x_j}` has signed
/// valuation `b`. Requires `x ∈ Δ` and `b ∈ U(A ⊙ x)`.
pub fn lift_construct(a: &SymMatrix, x: &[SymNum], b: &[SymNum]) -> Result<Lift> {
    if x.len() != a.cols() || b.len() != a.rows() {
        return Err(Error::Dimension("weights or point do not fit the matrix".into()));
    }
    if !a.is_signed() || !b.iter().all(SymNum::is_signed) {
        return Err(Error::Domain("lifts need signed entries".into()));
    }
    if !x.iter().all(|e| e.is_pos() || e.is_zero()) || SymNum::sum(x.iter()) != SymNum::one() {
        return Err(Error::Domain("weights must be non-negative with maximum 0".into()));
    }
    let p = a.mul_vec(x)?;
    let mut lift: Lift = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        if !p[i].uncomp().contains(&b[i]) {
            return Err(Error::Domain(format!("coordinate {} is outside U(A ⊙ x)", i + 1)));
        }
        let mut row: Vec<PuiseuxSeries> = a.row(i).iter().map(PuiseuxSeries::of_signed).collect::<Result<_>>()?;
        if let SymNum::Bal(c) = &p[i] {
            let (plus, minus): (Vec<usize>, Vec<usize>) = (0..a.cols())
                .filter(|&j| a.get(i, j).mul(&x[j]).mag() == Some(c))
                .partition(|&j| a.get(i, j).is_pos());
            let residual = (0..a.cols())
                .fold(PuiseuxSeries::zero(), |acc, k| {
                    acc.add(&row[k].mul(&weight_series(&x[k])))
                })
                .neg()
                .add(&PuiseuxSeries::of_signed(&b[i])?);
            let mut order: Vec<usize> = if plus.len() <= minus.len() {
                plus.iter().chain(&minus).copied().collect()
            } else {
                minus.iter().chain(&plus).copied().collect()
            };
            order.dedup();
            let chosen = order.into_iter().find_map(|l| {
                let xl = x[l].mag()?.clone();
                let alpha = residual.mul(&PuiseuxSeries::power(-xl));
                let entry = row[l].add(&alpha);
                (entry.sval() == *a.get(i, l)).then_some((l, entry))
            });
            let (l, entry) = chosen.ok_or_else(|| Error::Domain(format!("no lift for row {}", i + 1)))?;
            row[l] = entry;
        }
        lift.push(row);
    }
    Ok(lift)
}

/// Checks that `lift` lifts `a` and that its combination with weights
/// `t^{x_j}` has signed valuation `b ⊙ val(Σ t^{x_k})`.
pub fn lift_verify(a: &SymMatrix, lift: &Lift, x: &[SymNum], b: &[SymNum]) -> bool {
    if sval_matrix(lift).ok().as_ref() != Some(a) || x.len() != a.cols() || b.len() != a.rows() {
        return false;
    }
    let total = x.iter().fold(PuiseuxSeries::zero(), |acc, xj| acc.add(&weight_series(xj)));
    let Some(scale) = total.val().cloned() else {
        return false;
    };
    combine(lift, x).iter().zip(b).all(|(s, bi)| s.sval() == bi.shift(&scale))
}
