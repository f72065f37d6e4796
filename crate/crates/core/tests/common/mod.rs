#![allow(dead_code)]

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use trop_core::semiring::{ratio, Sign};
use trop_core::{SymMatrix, SymNum};

pub fn s(x: &str) -> SymNum {
    x.parse().unwrap()
}

pub fn m(x: &str) -> SymMatrix {
    x.parse().unwrap()
}

pub fn v(x: &str) -> Vec<SymNum> {
    x.split_whitespace().map(s).collect()
}

/// `{Zero, 0, ⊖0, 1, ⊖1}`.
pub fn small_grid() -> Vec<SymNum> {
    v("_ 0 ~0 1 ~1")
}

/// `Zero` and both signs of every magnitude in `mags`.
pub fn signed_values(mags: &[BigRational]) -> Vec<SymNum> {
    let mut out = vec![SymNum::Zero];
    for m in mags {
        out.push(SymNum::Pos(m.clone()));
        out.push(SymNum::Neg(m.clone()));
    }
    out
}

/// Magnitudes `lo, lo + 1/2, …, hi`.
pub fn half_steps(lo: i64, hi: i64) -> Vec<BigRational> {
    (2 * lo..=2 * hi).map(|k| ratio(k, 2)).collect()
}

/// Every matrix with entries drawn from `values`.
pub fn all_matrices(rows: usize, cols: usize, values: &[SymNum]) -> Vec<SymMatrix> {
    let n = rows * cols;
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let data = idx.iter().map(|&k| values[k].clone()).collect();
        out.push(SymMatrix::new(rows, cols, data).unwrap());
        let mut p = 0;
        loop {
            if p == n {
                return out;
            }
            idx[p] += 1;
            if idx[p] < values.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// Every vector of length `d` over `values`.
pub fn all_points(d: usize, values: &[SymNum]) -> Vec<Vec<SymNum>> {
    all_matrices(1, d, values).into_iter().map(|m| m.row(0).to_vec()).collect()
}

/// Integer magnitude in `lo..=hi` with a random sign among `signs`.
pub fn random_entry(rng: &mut ChaCha8Rng, lo: i64, hi: i64, signs: &[Option<Sign>]) -> SymNum {
    let mag = BigRational::from_integer(rng.gen_range(lo..=hi).into());
    match signs[rng.gen_range(0..signs.len())] {
        None => SymNum::Zero,
        Some(sign) => SymNum::with_sign(sign, mag),
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64, signs: &[Option<Sign>]) -> SymMatrix {
    let data = (0..rows * cols).map(|_| random_entry(rng, lo, hi, signs)).collect();
    SymMatrix::new(rows, cols, data).unwrap()
}

pub const ALL_SIGNS: [Option<Sign>; 4] = [None, Some(Sign::Pos), Some(Sign::Neg), Some(Sign::Bal)];
pub const SIGNED: [Option<Sign>; 3] = [None, Some(Sign::Pos), Some(Sign::Neg)];
pub const NONZERO: [Option<Sign>; 2] = [Some(Sign::Pos), Some(Sign::Neg)];

/// Brute force: is there a signed `y` with `yᵀ ⊙ A > Zero`, for a `2 × n`
/// matrix with magnitudes in `{0, 1}`? Scaling lets `y₁ ∈ {Zero, 0, ⊖0}`.
pub fn brute_sep_2(a: &SymMatrix) -> Option<Vec<SymNum>> {
    let first = v("_ 0 ~0");
    let second = signed_values(&half_steps(-2, 2));
    for y1 in &first {
        for y2 in &second {
            let y = vec![y1.clone(), y2.clone()];
            if y.iter().all(SymNum::is_zero) {
                continue;
            }
            if a.vec_mul(&y).unwrap().iter().all(SymNum::is_pos) {
                return Some(y);
            }
        }
    }
    None
}

/// Brute force over normalized weights `{Zero, 0, -1, -2}`.
pub fn brute_nnker(a: &SymMatrix) -> Option<Vec<SymNum>> {
    let weights = v("_ 0 -1 -2");
    all_points(a.cols(), &weights).into_iter().find(|x| {
        x.iter().any(|e| !e.is_zero())
            && a.mul_vec(x).unwrap().iter().all(SymNum::is_balanced_or_zero)
    })
}

/// Points with coordinates in `{Zero} ∪ ±{-2, -3/2, …, 2, 3}` and `±3`.
pub fn sampling_grid(d: usize) -> Vec<Vec<SymNum>> {
    let mut mags = half_steps(-2, 2);
    mags.push(BigRational::from_integer(3.into()));
    mags.push(BigRational::from_integer((-3).into()));
    all_points(d, &signed_values(&mags))
}
