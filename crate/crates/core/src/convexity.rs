//! Hull membership, segments, halfspaces, conversions between generators and
//! halfspace systems, and the orthant decomposition of a hull.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero as _};
use serde_json::json;

use crate::elimination::{farkas, fm_step_nonstrict, normalize_weights, resolve_row, AffineRow, Certificate};
use crate::error::{Error, Result};
use crate::linalg::{zeta_full, SymMatrix};
use crate::semiring::{Interval, Sign, SymNum};

fn check_signed(label: &str, xs: &[SymNum]) -> Result<()> {
    if xs.iter().all(SymNum::is_signed) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{label} must not contain balanced entries")))
    }
}

fn check_point(a: &SymMatrix, b: &[SymNum]) -> Result<()> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "point has {} coordinates, generators have {}",
            b.len(),
            a.rows()
        )));
    }
    check_signed("generators", a.entries())?;
    check_signed("point", b)
}

/// Outcome of a hull membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Weights `x` with `⊕ x = 0` and `b ∈ U(A ⊙ x)`.
    Member(Vec<SymNum>),
    /// An open halfspace containing every generator but not the point.
    Separated(AffineRow),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Membership::Member(x) => json!({ "member": true, "weights": x }),
            Membership::Separated(h) => json!({ "member": false, "halfspace": h.to_json() }),
        }
    }
}

/// `[[A, ⊖b], [0 … 0, ⊖0]]`.
pub fn augmented(a: &SymMatrix, b: &[SymNum]) -> Result<SymMatrix> {
    let top = a.hconcat(&SymMatrix::column_vector(b.iter().map(SymNum::negate).collect()))?;
    let mut last = vec![SymNum::one(); a.cols()];
    last.push(SymNum::one().negate());
    top.vconcat(&SymMatrix::from_rows(vec![last])?)
}

/// Is `b` in the signed tropical convex hull of the columns of `a`?
pub fn member(a: &SymMatrix, b: &[SymNum]) -> Result<Membership> {
    check_point(a, b)?;
    if a.cols() == 0 {
        let mut coeffs = vec![SymNum::Zero; b.len() + 1];
        coeffs[0] = SymNum::one().negate();
        return Ok(Membership::Separated(AffineRow::new(coeffs, true)));
    }
    let big = augmented(a, b)?;
    match farkas(&big)? {
        Certificate::Kernel(x) => {
            let last = x[a.cols()].mag().cloned().ok_or_else(|| {
                Error::Domain("kernel witness has no weight on the point".into())
            })?;
            let w: Vec<SymNum> = x[..a.cols()].iter().map(|e| e.shift(&-last.clone())).collect();
            Ok(Membership::Member(w))
        }
        Certificate::Separator(y) => {
            let d = a.rows();
            let mut coeffs = vec![y[d].clone()];
            coeffs.extend_from_slice(&y[..d]);
            Ok(Membership::Separated(AffineRow::new(coeffs, true)))
        }
    }
}

pub fn is_member(a: &SymMatrix, b: &[SymNum]) -> Result<bool> {
    Ok(member(a, b)?.is_member())
}

/// Checks a membership witness directly.
pub fn verify_weights(a: &SymMatrix, b: &[SymNum], x: &[SymNum]) -> bool {
    let in_delta = x.iter().all(|e| e.is_pos() || e.is_zero())
        && SymNum::sum(x.iter()) == SymNum::one();
    in_delta
        && a.mul_vec(x)
            .is_ok_and(|ax| ax.iter().zip(b).all(|(c, bi)| c.uncomp().contains(bi)))
}

/// Is `b` in the signed tropical conic hull of the columns of `a`, i.e.
/// `b ∈ U(A ⊙ λ)` for some `λ ≥ Zero`?
pub fn conic_member(a: &SymMatrix, b: &[SymNum]) -> Result<bool> {
    check_point(a, b)?;
    if b.iter().all(SymNum::is_zero) {
        return Ok(true);
    }
    // The admissible shifts c with c ⊙ b ∈ tconv(A ∪ {Zero}) form a down-set
    // whose supremum is a path length of a difference-constraint system, so
    // one shift below every such length decides the question.
    let mags: Vec<BigRational> = a
        .entries()
        .iter()
        .chain(b)
        .filter_map(SymNum::mag)
        .cloned()
        .chain(std::iter::once(BigRational::zero()))
        .collect();
    let lo = mags.iter().min().cloned().unwrap_or_default();
    let hi = mags.iter().max().cloned().unwrap_or_default();
    let steps = BigRational::from_integer((a.cols() as i64 + 1).into());
    let shift = -((hi - lo) * steps + BigRational::one());
    let with_origin = a.hconcat(&SymMatrix::column_vector(vec![SymNum::Zero; a.rows()]))?;
    let scaled: Vec<SymNum> = b.iter().map(|e| e.shift(&shift)).collect();
    is_member(&with_origin, &scaled)
}

/// Evaluate a halfspace row at a signed point.
pub fn halfspace_contains(row: &AffineRow, x: &[SymNum]) -> Result<bool> {
    check_signed("point", x)?;
    if x.len() != row.dim() {
        return Err(Error::Dimension(format!(
            "point has {} coordinates, row has {}",
            x.len(),
            row.dim()
        )));
    }
    Ok(row.satisfied_by(x))
}

pub fn system_contains(rows: &[AffineRow], x: &[SymNum]) -> Result<bool> {
    for r in rows {
        if !halfspace_contains(r, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Position on a segment: `L_η(p, q) = Ψ(η)₀ ⊙ p ⊕ Ψ(η)₁ ⊙ q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Eta {
    NegInf,
    Finite(BigRational),
    PosInf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentPiece {
    Vertex(Vec<SymNum>),
    Box(Vec<Interval>),
}

impl SegmentPiece {
    /// Corners and the coordinate-wise midpoint choices `Zero` of a box, or
    /// the vertex itself.
    pub fn sample_points(&self) -> Vec<Vec<SymNum>> {
        match self {
            SegmentPiece::Vertex(v) => vec![v.clone()],
            SegmentPiece::Box(b) => {
                let choices: Vec<Vec<SymNum>> = b
                    .iter()
                    .map(|iv| {
                        if iv.is_point() {
                            vec![iv.lo.clone()]
                        } else {
                            vec![iv.lo.clone(), SymNum::Zero, iv.hi.clone()]
                        }
                    })
                    .collect();
                cartesian(&choices)
            }
        }
    }
}

pub fn cartesian(choices: &[Vec<SymNum>]) -> Vec<Vec<SymNum>> {
    choices.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentDescription {
    pub breakpoints: Vec<(Eta, SegmentPiece)>,
}

impl SegmentDescription {
    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .breakpoints
            .iter()
            .map(|(eta, piece)| {
                let eta = match eta {
                    Eta::NegInf => "-inf".to_string(),
                    Eta::PosInf => "inf".to_string(),
                    Eta::Finite(r) => crate::semiring::format_rational(r),
                };
                match piece {
                    SegmentPiece::Vertex(v) => json!({ "eta": eta, "vertex": v }),
                    SegmentPiece::Box(b) => {
                        let b: Vec<String> = b.iter().map(|iv| iv.to_string()).collect();
                        json!({ "eta": eta, "box": b })
                    }
                }
            })
            .collect();
        json!({ "segment": items })
    }

    /// Every vertex, box sample, and a point between consecutive breakpoints.
    pub fn sample_points(&self, p: &[SymNum], q: &[SymNum]) -> Vec<Vec<SymNum>> {
        let mut out: Vec<Vec<SymNum>> = Vec::new();
        let finite: Vec<&BigRational> = self
            .breakpoints
            .iter()
            .filter_map(|(e, _)| match e {
                Eta::Finite(r) => Some(r),
                _ => None,
            })
            .collect();
        for (_, piece) in &self.breakpoints {
            out.extend(piece.sample_points());
        }
        let two = BigRational::from_integer(2.into());
        let mut extra: Vec<BigRational> = finite
            .windows(2)
            .map(|w| (w[0] + w[1]) / &two)
            .collect();
        if let (Some(first), Some(last)) = (finite.first(), finite.last()) {
            extra.push(*first - BigRational::one());
            extra.push(*last + BigRational::one());
        }
        for eta in extra {
            out.extend(SegmentPiece::Box(l_eta(p, q, &eta).iter().map(SymNum::uncomp).collect()).sample_points());
        }
        let mut seen = BTreeSet::new();
        out.retain(|x| seen.insert(format!("{x:?}")));
        out
    }
}

/// `Ψ(η)`.
pub fn psi(eta: &BigRational) -> (SymNum, SymNum) {
    if eta <= &BigRational::zero() {
        (SymNum::one(), SymNum::Pos(eta.clone()))
    } else {
        (SymNum::Pos(-eta.clone()), SymNum::one())
    }
}

pub fn l_eta(p: &[SymNum], q: &[SymNum], eta: &BigRational) -> Vec<SymNum> {
    let (a, b) = psi(eta);
    p.iter().zip(q).map(|(x, y)| a.mul(x).add(&b.mul(y))).collect()
}

/// Piecewise description of `tconv({p, q})`.
pub fn segment(p: &[SymNum], q: &[SymNum]) -> Result<SegmentDescription> {
    if p.len() != q.len() {
        return Err(Error::Dimension("endpoints differ in length".into()));
    }
    check_signed("endpoint", p)?;
    check_signed("endpoint", q)?;
    let mut etas: BTreeSet<BigRational> = p
        .iter()
        .zip(q)
        .filter_map(|(x, y)| Some(x.mag()? - y.mag()?))
        .collect();
    etas.insert(BigRational::zero());
    let mut breakpoints = vec![(Eta::NegInf, SegmentPiece::Vertex(p.to_vec()))];
    if p != q {
        for eta in etas {
            let l = l_eta(p, q, &eta);
            let piece = if l.iter().all(SymNum::is_signed) {
                SegmentPiece::Vertex(l)
            } else {
                SegmentPiece::Box(l.iter().map(SymNum::uncomp).collect())
            };
            breakpoints.push((Eta::Finite(eta), piece));
        }
        breakpoints.push((Eta::PosInf, SegmentPiece::Vertex(q.to_vec())));
    }
    Ok(SegmentDescription { breakpoints })
}

/// Drop tautologies, resolve balanced coefficients against `points`,
/// normalize and deduplicate.
fn clean_rows(rows: Vec<AffineRow>, points: &[Vec<SymNum>]) -> Result<Vec<AffineRow>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for r in rows {
        if let Some(r) = resolve_row(&r, points)? {
            let r = r.normalized();
            if seen.insert(format!("{r}")) {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// Halfspace description of `tconv(V)` obtained by eliminating the weights
/// from the system `z ⋈ V ⊙ x`, `⊕ x = 0`, `x ≥ Zero`.
pub fn vrep_to_hrep(v: &SymMatrix) -> Result<Vec<AffineRow>> {
    check_signed("generators", v.entries())?;
    let (d, n) = (v.rows(), v.cols());
    if n == 0 {
        return Err(Error::Domain("no generators".into()));
    }
    let width = 1 + n + d;
    let row = |entries: Vec<(usize, SymNum)>| {
        let mut c = vec![SymNum::Zero; width];
        for (k, e) in entries {
            c[k] = e;
        }
        AffineRow::nonstrict(c)
    };
    let mut rows = Vec::new();
    for k in 0..d {
        let mut fwd: Vec<(usize, SymNum)> = (0..n).map(|j| (1 + j, v.get(k, j).clone())).collect();
        fwd.push((1 + n + k, SymNum::one().negate()));
        let back = fwd.iter().map(|(i, e)| (*i, e.negate())).collect();
        rows.push(row(fwd));
        rows.push(row(back));
    }
    let mut total: Vec<(usize, SymNum)> = (0..n).map(|j| (1 + j, SymNum::one())).collect();
    total.push((0, SymNum::one().negate()));
    let total_back = total.iter().map(|(i, e)| (*i, e.negate())).collect();
    rows.push(row(total));
    rows.push(row(total_back));
    for j in 0..n {
        rows.push(row(vec![(1 + j, SymNum::one())]));
    }
    for k in (1..=n).rev() {
        rows = fm_step_nonstrict(&rows, k)?;
        let remaining = k - 1;
        let mut gens = Vec::with_capacity(n);
        for j in 0..n {
            let mut col: Vec<SymNum> = (0..remaining)
                .map(|l| if l == j { SymNum::one() } else { SymNum::Zero })
                .collect();
            col.extend(v.column(j));
            gens.push(col);
        }
        let w = SymMatrix::from_columns(remaining + d, gens)?;
        let points = zeta_full(&w)?.columns();
        rows = clean_rows(rows, &points)?;
    }
    if d <= 3 {
        rows = drop_redundant(rows, v)?;
    }
    Ok(rows)
}

/// Remove rows whose removal leaves a description of `tconv(V)`: the rest
/// must cut out a bounded convex set whose generators all lie in the hull.
fn drop_redundant(mut rows: Vec<AffineRow>, v: &SymMatrix) -> Result<Vec<AffineRow>> {
    let mut i = 0;
    while i < rows.len() && rows.len() > 1 {
        let mut rest = rows.clone();
        rest.remove(i);
        let covered = match hrep_to_vrep(&rest) {
            Ok(gens) => gens
                .columns()
                .iter()
                .map(|g| is_member(v, g))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b),
            Err(_) => false,
        };
        if covered {
            rows = rest;
        } else {
            i += 1;
        }
    }
    Ok(rows)
}

/// Unsigned magnitude vector: `None` is `Zero`.
pub type Unsigned = Vec<Option<BigRational>>;

pub fn unsigned_of(p: &[SymNum]) -> Unsigned {
    p.iter().map(|e| e.mag().cloned()).collect()
}

/// Membership in the unsigned tropical convex hull of `gens`, via the
/// principal solution of `[G; 0] ⊙ λ = [b; 0]`.
pub fn unsigned_member(gens: &[Unsigned], b: &Unsigned) -> bool {
    let zero = BigRational::zero();
    let lambda: Vec<Option<BigRational>> = gens
        .iter()
        .map(|g| {
            let mut best = Some(zero.clone());
            for (gi, bi) in g.iter().zip(b) {
                if let Some(gi) = gi {
                    let cand = bi.as_ref().map(|bi| bi - gi);
                    best = match (best, cand) {
                        (None, _) | (_, None) => None,
                        (Some(x), Some(y)) => Some(x.min(y)),
                    };
                }
            }
            best
        })
        .collect();
    if lambda.iter().flatten().max() != Some(&zero) {
        return false;
    }
    (0..b.len()).all(|i| {
        let top = gens
            .iter()
            .zip(&lambda)
            .filter_map(|(g, l)| Some(g[i].as_ref()? + l.as_ref()?))
            .max();
        top == b[i]
    })
}

fn in_closed_orthant(p: &[SymNum], eps: &[Sign]) -> bool {
    p.iter().zip(eps).all(|(x, s)| x.is_zero() || x.sign() == *s)
}

fn orthants(d: usize) -> Vec<Vec<Sign>> {
    (0..1usize << d)
        .map(|mask| {
            (0..d)
                .map(|i| if mask >> i & 1 == 0 { Sign::Pos } else { Sign::Neg })
                .collect()
        })
        .collect()
}

/// The per-orthant unsigned generators of a hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthantHull {
    pub dim: usize,
    pub cells: Vec<(Vec<Sign>, Vec<Unsigned>)>,
}

impl OrthantHull {
    pub fn cell(&self, eps: &[Sign]) -> Option<&[Unsigned]> {
        self.cells.iter().find(|(e, _)| e == eps).map(|(_, g)| g.as_slice())
    }

    pub fn contains(&self, p: &[SymNum]) -> bool {
        let u = unsigned_of(p);
        self.cells
            .iter()
            .any(|(eps, gens)| in_closed_orthant(p, eps) && !gens.is_empty() && unsigned_member(gens, &u))
    }

    /// Generators of one cell, signed back into their orthant.
    pub fn signed_cell(&self, eps: &[Sign]) -> Vec<Vec<SymNum>> {
        self.cell(eps)
            .unwrap_or(&[])
            .iter()
            .map(|g| {
                g.iter()
                    .zip(eps)
                    .map(|(m, s)| m.clone().map_or(SymNum::Zero, |m| SymNum::with_sign(*s, m)))
                    .collect()
            })
            .collect()
    }
}

/// Intersect `ζ(M)` with every closed orthant.
pub fn orthant_hull(m: &SymMatrix) -> Result<OrthantHull> {
    check_signed("generators", m.entries())?;
    let points = zeta_full(m)?.columns();
    let cells = orthants(m.rows())
        .into_iter()
        .map(|eps| {
            let gens = points
                .iter()
                .filter(|p| in_closed_orthant(p, &eps))
                .map(|p| unsigned_of(p))
                .collect();
            (eps, gens)
        })
        .collect();
    Ok(OrthantHull { dim: m.rows(), cells })
}

/// Drop generators that lie in the unsigned hull of the others.
pub fn unsigned_extreme(mut gens: Vec<Unsigned>) -> Vec<Unsigned> {
    gens.sort();
    gens.dedup();
    let mut i = 0;
    while i < gens.len() {
        let others: Vec<Unsigned> = gens
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, g)| g.clone())
            .collect();
        if !others.is_empty() && unsigned_member(&others, &gens[i]) {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    gens
}

/// Coordinate magnitudes at which vertices of the set cut out by `rows` can
/// sit.
fn candidate_magnitudes(rows: &[AffineRow], d: usize) -> BTreeSet<BigRational> {
    let mut base = BTreeSet::new();
    let mut steps = BTreeSet::new();
    for r in rows {
        let mags: Vec<Option<&BigRational>> = r.coeffs.iter().map(SymNum::mag).collect();
        for (k, mk) in mags.iter().enumerate().skip(1) {
            let Some(mk) = mk else { continue };
            if let Some(m0) = mags[0] {
                base.insert(m0 - *mk);
            }
            for (l, ml) in mags.iter().enumerate().skip(1) {
                if let (true, Some(ml)) = (l != k, ml) {
                    steps.insert(*ml - *mk);
                }
            }
        }
    }
    base.insert(BigRational::zero());
    let mut all = base.clone();
    let mut frontier = base;
    for _ in 1..d {
        let next: BTreeSet<BigRational> = frontier
            .iter()
            .flat_map(|b| steps.iter().map(move |s| b + s))
            .filter(|x| !all.contains(x))
            .collect();
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Looks for a feasible point beyond every candidate magnitude, either by
/// setting one coordinate far out or by pushing a feasible point along a
/// direction in `{-1, 0, 1}^d`.
fn is_unbounded(rows: &[AffineRow], feasible: &[Vec<SymNum>], mags: &BTreeSet<BigRational>) -> bool {
    let (Some(lo), Some(hi)) = (mags.first(), mags.last()) else {
        return false;
    };
    let far = hi + BigRational::one();
    let step = hi - lo + BigRational::one();
    let inside = |q: &Vec<SymNum>| rows.iter().all(|r| r.satisfied_by(q));
    let d = feasible.first().map_or(0, Vec::len);
    let units = [-1i64, 0, 1];
    let directions = cartesian_usize(d, units.len());
    feasible.iter().any(|p| {
        let single = (0..d).any(|i| {
            [SymNum::Pos(far.clone()), SymNum::Neg(far.clone())].into_iter().any(|probe| {
                let mut q = p.clone();
                q[i] = probe;
                inside(&q)
            })
        });
        single
            || directions.iter().any(|dir| {
                let grows = dir.iter().zip(p).any(|(&k, x)| units[k] == 1 && !x.is_zero());
                grows && {
                    let q: Vec<SymNum> = p
                        .iter()
                        .zip(dir)
                        .map(|(x, &k)| x.shift(&(&step * BigRational::from_integer(units[k].into()))))
                        .collect();
                    inside(&q)
                }
            })
    })
}

fn cartesian_usize(d: usize, base: usize) -> Vec<Vec<usize>> {
    (0..base.pow(d as u32))
        .map(|mut code| {
            (0..d)
                .map(|_| {
                    let k = code % base;
                    code /= base;
                    k
                })
                .collect()
        })
        .collect()
}

/// Generators for a bounded, tropically convex intersection of closed
/// halfspaces in dimension at most 3.
pub fn hrep_to_vrep(rows: &[AffineRow]) -> Result<SymMatrix> {
    let Some(first) = rows.first() else {
        return Err(Error::Unbounded);
    };
    let d = first.dim();
    if d > 3 {
        return Err(Error::Domain(format!("dimension {d} exceeds 3")));
    }
    for (k, r) in rows.iter().enumerate() {
        if r.dim() != d {
            return Err(Error::Dimension(format!("row {} has a different width", k + 1)));
        }
        if r.strict || !r.is_signed() {
            return Err(Error::Domain(format!("row {} must be non-strict and signed", k + 1)));
        }
    }
    let mags = candidate_magnitudes(rows, d);
    let mut values = vec![SymNum::Zero];
    for m in &mags {
        values.push(SymNum::Pos(m.clone()));
        values.push(SymNum::Neg(m.clone()));
    }
    let feasible: Vec<Vec<SymNum>> = cartesian(&vec![values; d])
        .into_iter()
        .filter(|p| rows.iter().all(|r| r.satisfied_by(p)))
        .collect();
    if feasible.is_empty() {
        return Err(Error::Domain("the system has no solution on the candidate grid".into()));
    }
    if is_unbounded(rows, &feasible, &mags) {
        return Err(Error::Unbounded);
    }
    let mut gens: Vec<Vec<SymNum>> = Vec::new();
    let mut corners: Vec<Vec<SymNum>> = Vec::new();
    for eps in orthants(d) {
        let cell: Vec<Unsigned> = feasible
            .iter()
            .filter(|p| in_closed_orthant(p, &eps))
            .map(|p| unsigned_of(p))
            .collect();
        let extreme = unsigned_extreme(cell);
        if let Some(top) = extreme.iter().cloned().reduce(|a, b| a.into_iter().zip(b).map(|(x, y)| x.max(y)).collect()) {
            corners.push(signed_of(&top, &eps));
        }
        for g in extreme {
            let signed = signed_of(&g, &eps);
            if !gens.contains(&signed) {
                gens.push(signed);
            }
        }
    }
    for (a, p) in gens.iter().enumerate() {
        for q in &gens[a + 1..] {
            for s in segment(p, q)?.sample_points(p, q) {
                if !rows.iter().all(|r| r.satisfied_by(&s)) {
                    let shown: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                    return Err(Error::NonConvex(shown.join(" ")));
                }
            }
        }
    }
    for c in corners {
        if !gens.contains(&c) {
            gens.push(c);
        }
    }
    SymMatrix::from_columns(d, signed_extreme(gens)?)
}

fn signed_of(g: &Unsigned, eps: &[Sign]) -> Vec<SymNum> {
    g.iter()
        .zip(eps)
        .map(|(m, s)| m.clone().map_or(SymNum::Zero, |m| SymNum::with_sign(*s, m)))
        .collect()
}

/// Drop points in the signed hull of the others, trying points with many
/// `Zero` coordinates and small magnitudes first.
fn signed_extreme(mut gens: Vec<Vec<SymNum>>) -> Result<Vec<Vec<SymNum>>> {
    let key = |p: &Vec<SymNum>| {
        let zeros = p.iter().filter(|x| x.is_zero()).count();
        let mut mags: Vec<BigRational> = p.iter().filter_map(|x| x.mag().cloned()).collect();
        mags.sort();
        (std::cmp::Reverse(zeros), mags)
    };
    gens.sort_by_key(key);
    let d = gens.first().map_or(0, Vec::len);
    let mut i = 0;
    while i < gens.len() && gens.len() > 1 {
        let others: Vec<Vec<SymNum>> = gens
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, g)| g.clone())
            .collect();
        if is_member(&SymMatrix::from_columns(d, others)?, &gens[i])? {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(gens)
}

/// Rescale each row so the largest magnitude is `0`.
pub fn normalize_rows(rows: &[AffineRow]) -> Vec<AffineRow> {
    rows.iter()
        .map(|r| AffineRow::new(normalize_weights(&r.coeffs), r.strict))
        .collect()
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
    fn box_membership() {
        let a = m("~2 2; ~1 1");
        match member(&a, &v("0 ~0")).unwrap() {
            Membership::Member(x) => assert!(verify_weights(&a, &v("0 ~0"), &x)),
            other => panic!("{other:?}"),
        }
        match member(&a, &v("3 0")).unwrap() {
            Membership::Separated(h) => {
                assert!(!h.satisfied_by(&v("3 0")));
                for j in 0..a.cols() {
                    assert!(h.satisfied_by(&a.column(j)));
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn generators_are_members() {
        let a = m("3 ~1 ~4; 3 ~0 ~2");
        for j in 0..3 {
            assert!(is_member(&a, &a.column(j)).unwrap());
        }
    }

    #[test]
    fn cones() {
        let a = m("0; 0");
        assert!(!conic_member(&a, &v("1 0")).unwrap());
        assert!(conic_member(&a, &v("5 5")).unwrap());
        assert!(conic_member(&a, &v("_ _")).unwrap());
        let both = m("0 ~0; 0 ~0");
        assert!(conic_member(&both, &v("7 ~3")).unwrap());
    }

    #[test]
    fn closed_halfspace_misses_origin() {
        let h = AffineRow::nonstrict(v("~0 0 0"));
        assert!(halfspace_contains(&h, &v("~1 1")).unwrap());
        assert!(halfspace_contains(&h, &v("1 ~1")).unwrap());
        assert!(!halfspace_contains(&h, &v("_ _")).unwrap());
        assert!(is_member(&m("~1 1; 1 ~1"), &v("_ _")).unwrap());
        assert!(halfspace_contains(&h, &v("*1 1")).is_err());
    }

    #[test]
    fn exploded_segment() {
        let s = segment(&v("0 0"), &v("~-2 ~-2")).unwrap();
        let boxes: Vec<_> = s
            .breakpoints
            .iter()
            .filter(|(_, p)| matches!(p, SegmentPiece::Box(_)))
            .collect();
        assert_eq!(boxes.len(), 1);
        assert_eq!(boxes[0].0, Eta::Finite("2".parse().unwrap()));
        let single = segment(&v("1 2"), &v("1 2")).unwrap();
        assert_eq!(single.breakpoints.len(), 1);
    }

    #[test]
    fn flipped_segment() {
        let p = v("0 0");
        let q = v("2 ~-1");
        let s = segment(&p, &q).unwrap();
        let a = SymMatrix::from_columns(2, vec![p.clone(), q.clone()]).unwrap();
        for x in s.sample_points(&p, &q) {
            assert!(is_member(&a, &x).unwrap(), "{x:?}");
        }
    }

    #[test]
    fn orthant_example() {
        let oh = orthant_hull(&m("0 ~-2; 0 ~-2")).unwrap();
        let mut got: Vec<Unsigned> = oh.cell(&[Sign::Pos, Sign::Pos]).unwrap().to_vec();
        got.sort();
        let mut want: Vec<Unsigned> = ["_ _", "_ -2", "-2 _", "0 0"].iter().map(|s| unsigned_of(&v(s))).collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn unsigned_hull_basics() {
        let gens = vec![unsigned_of(&v("0 _")), unsigned_of(&v("_ 0"))];
        assert!(unsigned_member(&gens, &unsigned_of(&v("0 -1"))));
        assert!(!unsigned_member(&gens, &unsigned_of(&v("-1 -1"))));
        assert!(!unsigned_member(&gens, &unsigned_of(&v("1 0"))));
    }

    #[test]
    fn interval_hrep() {
        let rows = vrep_to_hrep(&m("~0 1")).unwrap();
        let hull = m("~0 1");
        for z in ["~0", "~-1", "_", "-3", "0", "1"] {
            assert!(is_member(&hull, &v(z)).unwrap(), "{z}");
            assert!(system_contains(&rows, &v(z)).unwrap(), "{z}");
        }
        for z in ["~1", "~1/2", "2", "3/2"] {
            assert!(!is_member(&hull, &v(z)).unwrap(), "{z}");
            assert!(!system_contains(&rows, &v(z)).unwrap(), "{z}");
        }
        let back = hrep_to_vrep(&rows).unwrap();
        let cols = back.columns();
        assert!(cols.contains(&v("1")) && cols.contains(&v("~0")));
    }

    #[test]
    fn unbounded_system() {
        let rows = vec![AffineRow::nonstrict(v("0 ~-5"))];
        assert_eq!(hrep_to_vrep(&rows), Err(Error::Unbounded));
    }
}
