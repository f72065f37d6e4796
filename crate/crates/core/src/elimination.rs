//! Fourier-Motzkin elimination for strict and non-strict systems, feasibility
//! of the open cone `sep(A)` and the non-negative kernel `nnker(A)`, and Farkas
//! certificates.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero as _;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{eliminate_row, incidence_pairs, row_partition, xi, zeta_full, SymMatrix};
use crate::semiring::{pick_between, SymNum};

/// Exactly one of these exists for every matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `x ≥ Zero`, not all `Zero`, with `A ⊙ x` balanced or zero entrywise.
    Kernel(Vec<SymNum>),
    /// Signed `y` with `yᵀ ⊙ A` positive entrywise.
    Separator(Vec<SymNum>),
}

impl Certificate {
    pub fn vector(&self) -> &[SymNum] {
        match self {
            Certificate::Kernel(v) | Certificate::Separator(v) => v,
        }
    }

    pub fn is_kernel(&self) -> bool {
        matches!(self, Certificate::Kernel(_))
    }

    pub fn verify(&self, a: &SymMatrix) -> bool {
        match self {
            Certificate::Kernel(x) => in_nnker(a, x),
            Certificate::Separator(y) => in_sep(a, y),
        }
    }

    /// JSON with the product that was checked.
    pub fn to_json(&self, a: &SymMatrix) -> serde_json::Value {
        let (kind, product) = match self {
            Certificate::Kernel(x) => ("kernel", a.mul_vec(x).unwrap_or_default()),
            Certificate::Separator(y) => ("separator", a.vec_mul(y).unwrap_or_default()),
        };
        json!({
            "kind": kind,
            "vector": self.vector(),
            "product": product,
            "verified": self.verify(a),
        })
    }
}

pub fn in_nnker(a: &SymMatrix, x: &[SymNum]) -> bool {
    x.len() == a.cols()
        && x.iter().all(|e| e.is_pos() || e.is_zero())
        && x.iter().any(|e| !e.is_zero())
        && a.mul_vec(x).is_ok_and(|p| p.iter().all(SymNum::is_balanced_or_zero))
}

pub fn in_sep(a: &SymMatrix, y: &[SymNum]) -> bool {
    y.len() == a.rows()
        && y.iter().all(SymNum::is_signed)
        && a.vec_mul(y).is_ok_and(|p| p.iter().all(SymNum::is_pos))
}

/// `ξ(A_{−i} ⊙ S ⊙ T)`: the open cone of the result is the projection of
/// `sep(A)` forgetting coordinate `i`.
pub fn fm_step_strict(a: &SymMatrix, i: usize) -> SymMatrix {
    xi(&eliminate_row(a, i))
}

/// Smallest `t` with `t ⊕ r > Zero` failing, i.e. the strict lower bound.
fn lower_bound(r: &SymNum) -> SymNum {
    match r {
        SymNum::Zero => SymNum::Zero,
        SymNum::Pos(m) => SymNum::Neg(m.clone()),
        SymNum::Neg(m) | SymNum::Bal(m) => SymNum::Pos(m.clone()),
    }
}

fn tighten(current: &mut Option<SymNum>, candidate: SymNum, keep: Ordering) {
    let replace = match current {
        None => true,
        Some(c) => candidate.cmp_signed(c) == Some(keep),
    };
    if replace {
        *current = Some(candidate);
    }
}

/// Choose `y_i` given the other coordinates so that every column of `a`
/// becomes positive. `a` must be signed in row `i`.
pub fn back_substitute(a: &SymMatrix, i: usize, rest: &[SymNum]) -> Option<SymNum> {
    let mut lo: Option<SymNum> = None;
    let mut hi: Option<SymNum> = None;
    for j in 0..a.cols() {
        let r = (0..a.rows())
            .filter(|&k| k != i)
            .zip(rest)
            .fold(SymNum::Zero, |acc, (k, y)| acc.add(&y.mul(a.get(k, j))));
        match a.get(i, j) {
            SymNum::Zero if !r.is_pos() => return None,
            SymNum::Zero => {}
            SymNum::Pos(m) => tighten(&mut lo, lower_bound(&r).shift(&-m), Ordering::Greater),
            SymNum::Neg(m) => tighten(&mut hi, lower_bound(&r).negate().shift(&-m), Ordering::Less),
            SymNum::Bal(_) => return None,
        }
    }
    pick_between(lo.as_ref(), hi.as_ref())
}

fn sep_rec(a: &SymMatrix) -> Option<Vec<SymNum>> {
    if a.rows() == 0 {
        return (a.cols() == 0).then(Vec::new);
    }
    let i = a.rows() - 1;
    let projected = fm_step_strict(a, i).dedup_columns();
    let mut y = sep_rec(&projected)?;
    let yi = back_substitute(a, i, &y)?;
    y.push(yi);
    Some(y)
}

/// A point of `sep(A)`, built by eliminating the last row and
/// back-substituting.
pub fn sep_solve(a: &SymMatrix) -> Option<Vec<SymNum>> {
    let y = sep_rec(&xi(a).dedup_columns())?;
    in_sep(a, &y).then_some(y)
}

fn nnker_rec(a: &SymMatrix) -> Option<Vec<SymNum>> {
    if a.rows() == 0 {
        if a.cols() == 0 {
            return None;
        }
        let mut x = vec![SymNum::Zero; a.cols()];
        x[0] = SymNum::one();
        return Some(x);
    }
    let i = a.rows() - 1;
    let pairs = incidence_pairs(&row_partition(a, i));
    let projected = eliminate_row(a, i);
    let mut seen = HashSet::new();
    let mut kept = Vec::new();
    let mut kept_columns = Vec::new();
    for (p, col) in projected.columns().into_iter().enumerate() {
        if seen.insert(col.clone()) {
            kept.push(p);
            kept_columns.push(col);
        }
    }
    let reduced = SymMatrix::from_columns(projected.rows(), kept_columns).ok()?;
    let z = nnker_rec(&reduced)?;
    let scale: Vec<BigRational> = a
        .row(i)
        .iter()
        .map(|e| e.mag().map_or_else(BigRational::zero, |m| -m))
        .collect();
    let mut x = vec![SymNum::Zero; a.cols()];
    for (zp, &p) in z.iter().zip(&kept) {
        if zp.is_zero() {
            continue;
        }
        let (k, l) = pairs[p];
        for j in std::iter::once(k).chain(l) {
            x[j] = x[j].add(&zp.shift(&scale[j]));
        }
    }
    Some(x)
}

/// Scale a non-negative vector so its largest entry is `0`.
pub fn normalize_weights(x: &[SymNum]) -> Vec<SymNum> {
    let top = x.iter().filter_map(SymNum::mag).max().cloned();
    match top {
        None => x.to_vec(),
        Some(t) => x.iter().map(|e| e.shift(&-t.clone())).collect(),
    }
}

/// A point of `nnker(A)`, normalized so that its maximum is `0`.
pub fn nnker_solve(a: &SymMatrix) -> Option<Vec<SymNum>> {
    let x = normalize_weights(&nnker_rec(a)?);
    in_nnker(a, &x).then_some(x)
}

/// Returns the certificate that exists for `a`, verified.
pub fn farkas(a: &SymMatrix) -> Result<Certificate> {
    if let Some(y) = sep_solve(a) {
        return Ok(Certificate::Separator(y));
    }
    if let Some(x) = nnker_solve(a) {
        return Ok(Certificate::Kernel(x));
    }
    Err(Error::Domain(format!("no certificate found for\n{a}")))
}

/// `c ⊙ (0, x)ᵀ ⊳ Zero` (strict) or `⊵ Zero` (non-strict).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineRow {
    pub coeffs: Vec<SymNum>,
    pub strict: bool,
}

impl AffineRow {
    pub fn new(coeffs: Vec<SymNum>, strict: bool) -> AffineRow {
        AffineRow { coeffs, strict }
    }

    pub fn nonstrict(coeffs: Vec<SymNum>) -> AffineRow {
        AffineRow::new(coeffs, false)
    }

    /// Number of variables.
    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &[SymNum]) -> SymNum {
        self.coeffs[1..]
            .iter()
            .zip(x)
            .fold(self.coeffs[0].clone(), |acc, (c, v)| acc.add(&c.mul(v)))
    }

    pub fn satisfied_by(&self, x: &[SymNum]) -> bool {
        let v = self.eval(x);
        if self.strict {
            v.is_pos()
        } else {
            !v.is_neg()
        }
    }

    /// Holds for every point: the constant is not negative and every
    /// variable coefficient is balanced or zero.
    pub fn is_tautology(&self) -> bool {
        if self.strict {
            return self.coeffs[0].is_pos() && self.coeffs[1..].iter().all(SymNum::is_zero);
        }
        !self.coeffs[0].is_neg() && self.coeffs[1..].iter().all(SymNum::is_balanced_or_zero)
    }

    pub fn is_signed(&self) -> bool {
        self.coeffs.iter().all(SymNum::is_signed)
    }

    /// Rescale so the largest coefficient magnitude is `0`.
    pub fn normalized(&self) -> AffineRow {
        AffineRow::new(normalize_weights(&self.coeffs), self.strict)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "coeffs": self.coeffs, "strict": self.strict })
    }
}

impl fmt::Display for AffineRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn rows_from_matrix(m: &SymMatrix, strict: bool) -> Vec<AffineRow> {
    m.row_vecs().into_iter().map(|r| AffineRow::new(r, strict)).collect()
}

pub fn rows_to_matrix(rows: &[AffineRow]) -> Result<SymMatrix> {
    SymMatrix::from_rows(rows.iter().map(|r| r.coeffs.clone()).collect())
}

/// Remove exact duplicates and rows with only a positive (or no) constant.
pub fn prune_rows(rows: Vec<AffineRow>) -> Vec<AffineRow> {
    let mut seen = HashSet::new();
    rows.into_iter()
        .filter(|r| {
            let trivial = r.coeffs[1..].iter().all(SymNum::is_zero) && !r.coeffs[0].is_neg();
            !trivial && seen.insert(r.clone())
        })
        .collect()
}

/// Eliminate variable `i` (1-based; index 0 is the constant slot) from a
/// non-strict system with signed coefficients in that column.
pub fn fm_step_nonstrict(rows: &[AffineRow], i: usize) -> Result<Vec<AffineRow>> {
    let Some(first) = rows.first() else {
        return Ok(Vec::new());
    };
    let width = first.coeffs.len();
    if i == 0 || i >= width {
        return Err(Error::Dimension(format!("no variable {i} in rows of width {width}")));
    }
    for (r, row) in rows.iter().enumerate() {
        if row.coeffs.len() != width {
            return Err(Error::Dimension(format!("row {} has a different width", r + 1)));
        }
        if row.strict {
            return Err(Error::Domain(format!("row {} is strict", r + 1)));
        }
        if !row.coeffs[i].is_signed() {
            return Err(Error::BalancedCoefficient(r + 1));
        }
    }
    let system = rows_to_matrix(rows)?.transpose();
    let projected = eliminate_row(&system, i).transpose();
    Ok(prune_rows(rows_from_matrix(&projected, false)))
}

/// Admissible range for a balanced coefficient at one point of the set.
enum Admissible {
    Any,
    AtMost(SymNum),
    AtLeast(SymNum),
}

fn admissible(row: &AffineRow, i: usize, point: &[SymNum], m: &BigRational) -> Result<Admissible> {
    let mut rest = row.clone();
    rest.coeffs[i] = SymNum::Zero;
    let w = match rest.eval(point) {
        SymNum::Bal(x) => SymNum::Pos(x),
        other => other,
    };
    let v = &point[i - 1];
    let Some(q) = v.mag() else {
        return Ok(Admissible::Any);
    };
    let bad = || Error::Unresolvable;
    let diff = |big: &BigRational| big - q;
    let upward = v.is_pos();
    Ok(match (&w, upward) {
        (SymNum::Zero, false) => Admissible::AtMost(SymNum::Zero),
        (SymNum::Zero, true) => Admissible::AtLeast(SymNum::Zero),
        (SymNum::Pos(big), false) => Admissible::AtMost(SymNum::Pos(m.min(&diff(big)).clone())),
        (SymNum::Pos(big), true) => Admissible::AtLeast(SymNum::Neg(m.min(&diff(big)).clone())),
        (SymNum::Neg(big), false) => {
            let need = diff(big);
            if &need > m {
                return Err(bad());
            }
            Admissible::AtMost(SymNum::Neg(need))
        }
        (SymNum::Neg(big), true) => {
            let need = diff(big);
            if &need > m {
                return Err(bad());
            }
            Admissible::AtLeast(SymNum::Pos(need))
        }
        (SymNum::Bal(_), _) => unreachable!("balanced values were replaced"),
    })
}

/// Replace the balanced coefficient `i` of `row` by a signed value such that
/// every point of `points` still satisfies the row. When `points` generate
/// every orthant part of a convex set (as `zeta_full` does), the result is
/// valid on the whole set.
pub fn resolve_with_points(row: &AffineRow, i: usize, points: &[Vec<SymNum>]) -> Result<AffineRow> {
    let m = match &row.coeffs[i] {
        SymNum::Bal(m) => m.clone(),
        _ => return Ok(row.clone()),
    };
    let mut out = row.clone();
    if i == 0 {
        out.coeffs[0] = SymNum::Pos(m);
        return Ok(out);
    }
    let mut upper = SymNum::Pos(m.clone());
    let mut lower = SymNum::Neg(m.clone());
    for p in points {
        match admissible(row, i, p, &m)? {
            Admissible::Any => {}
            Admissible::AtMost(b) => {
                if b.cmp_signed(&upper) == Some(Ordering::Less) {
                    upper = b;
                }
            }
            Admissible::AtLeast(b) => {
                if b.cmp_signed(&lower) == Some(Ordering::Greater) {
                    lower = b;
                }
            }
        }
    }
    if lower.cmp_signed(&upper) == Some(Ordering::Greater) {
        return Err(Error::Unresolvable);
    }
    let range = crate::semiring::Interval {
        lo: lower,
        hi: upper.clone(),
    };
    let chosen = [SymNum::Pos(m.clone()), SymNum::Neg(m), SymNum::Zero]
        .into_iter()
        .find(|c| range.contains(c))
        .unwrap_or(upper);
    out.coeffs[i] = chosen;
    if points.iter().all(|p| out.satisfied_by(p)) {
        Ok(out)
    } else {
        Err(Error::Unresolvable)
    }
}

/// Resolve coefficient `i` against the convex hull of the columns of
/// `generators`.
pub fn resolve_balanced_nonstrict(
    row: &AffineRow,
    i: usize,
    generators: &SymMatrix,
) -> Result<AffineRow> {
    let points = zeta_full(generators)?.columns();
    resolve_with_points(row, i, &points)
}

/// Resolve every balanced coefficient (constant first). Returns `None` for
/// rows that hold everywhere.
pub fn resolve_row(row: &AffineRow, points: &[Vec<SymNum>]) -> Result<Option<AffineRow>> {
    let mut current = row.clone();
    for i in 0..current.coeffs.len() {
        if current.is_tautology() {
            return Ok(None);
        }
        current = resolve_with_points(&current, i, points)?;
    }
    Ok((!current.is_tautology()).then_some(current))
}

/// Brute-force search for signed `x` (not all `Zero`) with `A ⊙ x ⊴ b`,
/// i.e. `b ⊖ A ⊙ x` never negative, over a finite candidate list per
/// coordinate. Experimental: no structural algorithm is known to reduce
/// this system form to the non-negative one.
pub fn experimental_signed_leq_solutions(
    a: &SymMatrix,
    b: &[SymNum],
    candidates: &[SymNum],
) -> Vec<Vec<SymNum>> {
    let n = a.cols();
    let mut found = Vec::new();
    let mut idx = vec![0usize; n];
    if candidates.is_empty() {
        return found;
    }
    loop {
        let x: Vec<SymNum> = idx.iter().map(|&k| candidates[k].clone()).collect();
        if x.iter().any(|e| !e.is_zero()) {
            if let Ok(ax) = a.mul_vec(&x) {
                if ax.iter().zip(b).all(|(l, r)| r.teq(l)) {
                    found.push(x);
                }
            }
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return found;
            }
            idx[pos] += 1;
            if idx[pos] < candidates.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> SymMatrix {
        s.parse().unwrap()
    }

    fn v(s: &str) -> Vec<SymNum> {
        m(s).row(0).to_vec()
    }

    #[test]
    fn strict_step_example() {
        let a = m("3 ~1 ~4; 3 ~0 ~2");
        assert_eq!(fm_step_strict(&a, 0), m("0 0"));
        let y = sep_solve(&a).unwrap();
        assert!(in_sep(&a, &y));
    }

    #[test]
    fn one_row_cases() {
        let a = m("3 ~3");
        assert!(sep_solve(&a).is_none());
        assert_eq!(nnker_solve(&a).unwrap(), v("0 0"));
        assert_eq!(farkas(&a).unwrap(), Certificate::Kernel(v("0 0")));
        let pos = m("2; 5");
        assert!(nnker_solve(&pos).is_none());
        assert_eq!(farkas(&pos).unwrap(), Certificate::Separator(v("0 0")));
    }

    #[test]
    fn zero_row_keeps_other_columns() {
        let a = m("_ _; 1 ~2");
        let p = fm_step_strict(&a, 0);
        assert_eq!(p, m("1 ~2"));
    }

    #[test]
    fn back_substitution_bounds() {
        let a = m("3 ~1 ~4; 3 ~0 ~2");
        assert_eq!(back_substitute(&a, 0, &v("0")), Some("~-1/2".parse().unwrap()));
    }

    #[test]
    fn balanced_inputs() {
        let a = m("*0 1");
        let c = farkas(&a).unwrap();
        assert!(c.verify(&a));
        let b = m("*2; 1");
        assert!(farkas(&b).unwrap().verify(&b));
    }

    #[test]
    fn certificate_json() {
        let a = m("3 ~3");
        let j = farkas(&a).unwrap().to_json(&a);
        assert_eq!(j["kind"], "kernel");
        assert_eq!(j["vector"], json!(["0", "0"]));
        assert_eq!(j["product"], json!(["*3"]));
    }

    #[test]
    fn nonstrict_segment_first_step() {
        let rows = rows_from_matrix(
            &m("_ ~0 1 ~0; _ 0 ~1 0; ~0 0 0 _; 0 ~0 ~0 _; _ 0 _ _; _ _ 0 _"),
            false,
        );
        let out = fm_step_nonstrict(&rows, 1).unwrap();
        let expected = rows_from_matrix(
            &m("_ *1 *0; ~0 1 ~0; _ 1 ~0; 0 ~1 0; *0 *0 _; 0 ~0 _; _ 0 _"),
            false,
        );
        let got: HashSet<_> = out.iter().cloned().collect();
        let want: HashSet<_> = expected.into_iter().collect();
        assert_eq!(got, want);
        assert_eq!(out.len(), 7);
        assert!(fm_step_nonstrict(&out, 1).is_err());
        assert!(fm_step_nonstrict(&[], 1).unwrap().is_empty());
    }

    #[test]
    fn balanced_constant_takes_abs() {
        let row = AffineRow::nonstrict(v("*0 *-1 *-1"));
        let out = resolve_with_points(&row, 0, &[]).unwrap();
        assert_eq!(out.coeffs, v("0 *-1 *-1"));
        assert!(out.is_tautology());
        assert_eq!(resolve_row(&row, &[]).unwrap(), None);
    }

    #[test]
    fn resolution_picks_valid_sign() {
        let hull = m("~0 1");
        let row = AffineRow::nonstrict(v("-1 *-1"));
        let out = resolve_balanced_nonstrict(&row, 1, &hull).unwrap();
        assert_eq!(out.coeffs, v("-1 -1"));
        let interp = AffineRow::nonstrict(v("0 ~-1 *2"));
        let feasible: Vec<Vec<SymNum>> = ["~5 3", "1 _", "_ ~2", "~1 2", "~1 ~2"]
            .iter()
            .map(|s| v(s))
            .collect();
        for p in &feasible {
            assert!(interp.satisfied_by(p));
        }
        let out = resolve_with_points(&interp, 2, &feasible).unwrap();
        assert!(feasible.iter().all(|p| out.satisfied_by(p)));
    }

    #[test]
    fn signed_leq_fixture() {
        let a = m("0 0; ~0 0; 0 ~0; ~0 ~0");
        let b = v("~0 ~0 ~0 ~0");
        let grid: Vec<SymNum> = ["_", "0", "~0", "1", "~1", "-1", "~-1"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert!(experimental_signed_leq_solutions(&a, &b, &grid).is_empty());
    }
}
