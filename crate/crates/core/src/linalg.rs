//! Dense matrices over the symmetrized semiring and the auxiliary matrices
//! used by elimination and orthant decomposition.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semiring::{Sign, SymNum};

/// Row-major matrix over the symmetrized semiring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SymNum>,
}

impl SymMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<SymNum>) -> Result<SymMatrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(SymMatrix { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: SymNum) -> SymMatrix {
        SymMatrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> SymMatrix {
        SymMatrix::filled(rows, cols, SymNum::Zero)
    }

    /// Tropical identity: `0` on the diagonal, `Zero` elsewhere.
    pub fn identity(n: usize) -> SymMatrix {
        let mut m = SymMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, SymNum::one());
        }
        m
    }

    pub fn diagonal(entries: Vec<SymNum>) -> SymMatrix {
        let n = entries.len();
        let mut m = SymMatrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<SymNum>>) -> Result<SymMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("rows of unequal length".into()));
        }
        SymMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Build a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: Vec<Vec<SymNum>>) -> Result<SymMatrix> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension(format!("columns must have length {rows}")));
        }
        let cols = columns.len();
        let mut m = SymMatrix::zeros(rows, cols);
        for (j, col) in columns.into_iter().enumerate() {
            for (i, e) in col.into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        Ok(m)
    }

    pub fn column_vector(v: Vec<SymNum>) -> SymMatrix {
        let n = v.len();
        SymMatrix {
            rows: n,
            cols: 1,
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[SymNum] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &SymNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: SymNum) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[SymNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<SymNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<SymNum>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<SymNum>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> SymMatrix {
        let mut t = SymMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_signed(&self) -> bool {
        self.data.iter().all(SymNum::is_signed)
    }

    pub fn mat_mul(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = SymMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..other.cols {
                let mut acc = SymNum::Zero;
                for j in 0..self.cols {
                    acc = acc.add(&self.get(i, j).mul(other.get(j, k)));
                }
                out.set(i, k, acc);
            }
        }
        Ok(out)
    }

    /// `A ⊙ x`.
    pub fn mul_vec(&self, x: &[SymNum]) -> Result<Vec<SymNum>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(SymNum::Zero, |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    /// `yᵀ ⊙ A`.
    pub fn vec_mul(&self, y: &[SymNum]) -> Result<Vec<SymNum>> {
        if y.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} rows",
                y.len(),
                self.rows
            )));
        }
        Ok((0..self.cols)
            .map(|j| {
                (0..self.rows).fold(SymNum::Zero, |acc, i| acc.add(&y[i].mul(self.get(i, j))))
            })
            .collect())
    }

    pub fn without_row(&self, i: usize) -> SymMatrix {
        let rows: Vec<Vec<SymNum>> = (0..self.rows)
            .filter(|&r| r != i)
            .map(|r| self.row(r).to_vec())
            .collect();
        SymMatrix {
            rows: self.rows - 1,
            cols: self.cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Append the columns of `other`.
    pub fn hconcat(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension("row counts differ".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        SymMatrix::from_columns(self.rows, cols)
    }

    /// Append the rows of `other`.
    pub fn vconcat(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        SymMatrix::new(self.rows + other.rows, self.cols, data)
    }

    /// Remove repeated columns, keeping first occurrences.
    pub fn dedup_columns(&self) -> SymMatrix {
        let mut seen = HashSet::new();
        let cols = self
            .columns()
            .into_iter()
            .filter(|c| seen.insert(c.clone()))
            .collect();
        SymMatrix::from_columns(self.rows, cols).expect("columns share a length")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson::from(self)).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<SymMatrix> {
        let m: MatrixJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        SymMatrix::new(m.rows, m.cols, m.entries)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<SymNum>,
}

impl From<&SymMatrix> for MatrixJson {
    fn from(m: &SymMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            entries: m.data.clone(),
        }
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Rows separated by newlines or `;`, entries by whitespace.
impl FromStr for SymMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<SymMatrix> {
        let mut rows = Vec::new();
        for (line_no, line) in s.lines().enumerate() {
            for chunk in line.split(';') {
                let mut row = Vec::new();
                for (col, token) in chunk.split_whitespace().enumerate() {
                    let entry = token.parse::<SymNum>().map_err(|e| {
                        Error::Parse(format!("line {}, entry {}: {e}", line_no + 1, col + 1))
                    })?;
                    row.push(entry);
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        if let Some(first) = rows.first() {
            let width = first.len();
            if let Some(bad) = rows.iter().position(|r| r.len() != width) {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {width}",
                    bad + 1,
                    rows[bad].len()
                )));
            }
        }
        SymMatrix::from_rows(rows)
    }
}

/// Column indices of one row split by the sign of their entry.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignPartition {
    pub jplus: Vec<usize>,
    pub jminus: Vec<usize>,
    pub jbal: Vec<usize>,
    pub jzero: Vec<usize>,
}

pub fn partition_entries(row: &[SymNum]) -> SignPartition {
    let mut p = SignPartition::default();
    for (j, e) in row.iter().enumerate() {
        match e.sign() {
            Sign::Pos => p.jplus.push(j),
            Sign::Neg => p.jminus.push(j),
            Sign::Bal => p.jbal.push(j),
            Sign::Zero => p.jzero.push(j),
        }
    }
    p
}

pub fn row_partition(a: &SymMatrix, i: usize) -> SignPartition {
    partition_entries(a.row(i))
}

/// Diagonal scaling magnitudes `−|a_ij|` (or `0` for `Zero` entries).
fn normalizing_shifts(row: &[SymNum]) -> Vec<BigRational> {
    row.iter()
        .map(|e| e.mag().map_or_else(BigRational::zero, |m| -m))
        .collect()
}

/// Returns `(A ⊙ S, S)` where `S` makes every entry of row `i` have
/// magnitude `0` or be `Zero`.
pub fn scale_normalize_row(a: &SymMatrix, i: usize) -> (SymMatrix, SymMatrix) {
    let shifts = normalizing_shifts(a.row(i));
    let s = SymMatrix::diagonal(shifts.iter().cloned().map(SymNum::Pos).collect());
    let mut scaled = a.clone();
    for r in 0..a.rows() {
        for (j, shift) in shifts.iter().enumerate() {
            scaled.set(r, j, a.get(r, j).shift(shift));
        }
    }
    (scaled, s)
}

/// Column index pairs of the incidence matrix: `(k, Some(l))` for pairs,
/// `(j, None)` for zero columns.
pub fn incidence_pairs(p: &SignPartition) -> Vec<(usize, Option<usize>)> {
    let mut left: Vec<usize> = p.jplus.iter().chain(&p.jbal).copied().collect();
    let mut right: Vec<usize> = p.jbal.iter().chain(&p.jminus).copied().collect();
    left.sort_unstable();
    right.sort_unstable();
    let mut out = Vec::with_capacity(left.len() * right.len() + p.jzero.len());
    for &k in &left {
        for &l in &right {
            out.push((k, Some(l)));
        }
    }
    out.extend(p.jzero.iter().map(|&j| (j, None)));
    out
}

/// The 0/`Zero` incidence matrix for eliminating row `i`.
pub fn incidence_t(a: &SymMatrix, i: usize) -> SymMatrix {
    let pairs = incidence_pairs(&row_partition(a, i));
    let mut t = SymMatrix::zeros(a.cols(), pairs.len());
    for (p, &(k, l)) in pairs.iter().enumerate() {
        t.set(k, p, SymNum::one());
        if let Some(l) = l {
            t.set(l, p, SymNum::one());
        }
    }
    t
}

/// `A_{−i} ⊙ S ⊙ T` computed column by column.
pub fn eliminate_row(a: &SymMatrix, i: usize) -> SymMatrix {
    let (scaled, _) = scale_normalize_row(a, i);
    let pairs = incidence_pairs(&row_partition(a, i));
    let keep: Vec<usize> = (0..a.rows()).filter(|&r| r != i).collect();
    let columns = pairs
        .iter()
        .map(|&(k, l)| {
            keep.iter()
                .map(|&r| match l {
                    Some(l) if l != k => scaled.get(r, k).add(scaled.get(r, l)),
                    _ => scaled.get(r, k).clone(),
                })
                .collect()
        })
        .collect();
    SymMatrix::from_columns(keep.len(), columns).expect("uniform column length")
}

/// Split every column with balanced entries into two signed columns.
pub fn xi(a: &SymMatrix) -> SymMatrix {
    let mut columns = Vec::with_capacity(a.cols());
    for col in a.columns() {
        if col.iter().all(SymNum::is_signed) {
            columns.push(col);
            continue;
        }
        let resolve = |make: fn(BigRational) -> SymNum| -> Vec<SymNum> {
            col.iter()
                .map(|e| match e {
                    SymNum::Bal(m) => make(m.clone()),
                    other => other.clone(),
                })
                .collect()
        };
        columns.push(resolve(SymNum::Pos));
        columns.push(resolve(SymNum::Neg));
    }
    SymMatrix::from_columns(a.rows(), columns).expect("uniform column length")
}

/// Weights `(λ⁺, λ⁻)` that cancel coordinate `i` when combining a column
/// `u` with `u_i > Zero` and a column `v` with `v_i < Zero`.
pub fn lambda_pm(u: &[SymNum], v: &[SymNum], i: usize) -> Result<(SymNum, SymNum)> {
    let (p, q) = match (&u[i], &v[i]) {
        (SymNum::Pos(p), SymNum::Neg(q)) => (p, q),
        _ => {
            return Err(Error::Domain(format!(
                "need u_i > Zero and v_i < Zero, got {} and {}",
                u[i], v[i]
            )))
        }
    };
    let low = p.min(q);
    Ok((SymNum::Pos(low - p), SymNum::Pos(low - q)))
}

/// Generators of `tconv(A) ∩ {x_i = Zero}`.
pub fn zeta_i(a: &SymMatrix, i: usize) -> Result<SymMatrix> {
    let part = row_partition(a, i);
    if !part.jbal.is_empty() {
        return Err(Error::Domain("zeta_i needs a signed matrix".into()));
    }
    let cols = a.columns();
    let mut combos = Vec::new();
    for &k in &part.jplus {
        for &l in &part.jminus {
            let (lp, lm) = lambda_pm(&cols[k], &cols[l], i)?;
            combos.push(
                cols[k]
                    .iter()
                    .zip(&cols[l])
                    .map(|(x, y)| lp.mul(x).add(&lm.mul(y)))
                    .collect(),
            );
        }
    }
    combos.extend(part.jzero.iter().map(|&j| cols[j].clone()));
    let mut out = xi(&SymMatrix::from_columns(a.rows(), combos)?);
    for j in 0..out.cols() {
        out.set(i, j, SymNum::Zero);
    }
    Ok(out.dedup_columns())
}

/// `M` together with every iterated coordinate-hyperplane elimination,
/// deduplicated. Chains are memoized on the set of eliminated rows.
pub fn zeta_full(m: &SymMatrix) -> Result<SymMatrix> {
    let d = m.rows();
    let mut by_set: Vec<Option<SymMatrix>> = vec![None; 1 << d];
    by_set[0] = Some(m.clone());
    let mut masks: Vec<usize> = (1..1usize << d).collect();
    masks.sort_by_key(|s| s.count_ones());
    for mask in masks {
        let mut acc = SymMatrix::zeros(d, 0);
        for i in (0..d).filter(|i| mask & (1 << i) != 0) {
            let prev = by_set[mask & !(1 << i)].as_ref().expect("smaller sets first");
            acc = acc.hconcat(&zeta_i(prev, i)?)?;
        }
        by_set[mask] = Some(acc.dedup_columns());
    }
    let mut all = SymMatrix::zeros(d, 0);
    for g in by_set.into_iter().flatten() {
        all = all.hconcat(&g)?;
    }
    Ok(all.dedup_columns())
}
