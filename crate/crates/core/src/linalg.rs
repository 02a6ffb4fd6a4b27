//! Rank computations: exact over ℤ/ℚ and numeric by singular values.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// The Mersenne prime 2^61 - 1.
pub const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn reduce_mod(x: &BigInt) -> u64 {
    let m = BigInt::from(MODULUS);
    x.mod_floor(&m).to_u64().expect("reduced below modulus")
}

/// Rank of the reduction mod 2^61 - 1. Never exceeds the rank over ℚ.
pub fn rank_mod_p(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(reduce_mod).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][col], MODULUS - 2);
        let pivot: Vec<u64> = m[rank].iter().map(|&v| mul_mod(v, inv)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in col..ncols {
                let sub = mul_mod(f, pivot[j]);
                row[j] = (row[j] + MODULUS - sub) % MODULUS;
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Fraction-free Gaussian elimination over ℤ.
pub fn bareiss_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            for j in (col + 1)..ncols {
                let v = &pivot_row[col] * &row[j] - &row[col] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Exact rank over ℚ of an integer matrix: the modular rank when it is
/// already maximal, Bareiss otherwise.
pub fn exact_rank(rows: &[Vec<BigInt>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let r = rank_mod_p(rows);
    if r == rows.len().min(ncols) {
        r
    } else {
        bareiss_rank(rows)
    }
}

/// Indices of a greedily chosen subset of rows that is a basis of the row
/// space, scanning in order.
pub fn independent_rows(rows: &[Vec<BigInt>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v: Vec<BigRational> = row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        for (pc, b) in &basis {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[pc].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            for (_, b) in basis.iter_mut() {
                if !b[pc].is_zero() {
                    let f = b[pc].clone();
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x -= &f * y;
                    }
                }
            }
            basis.push((pc, v));
            chosen.push(idx);
        }
    }
    chosen
}

/// Numeric rank with threshold `rel_tol * σ_max`, plus the singular values.
pub fn numeric_rank(rows: &[Vec<f64>], rel_tol: f64) -> (usize, Vec<f64>) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return (0, Vec::new());
    }
    let m = DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return (0, sv);
    }
    let rank = sv.iter().filter(|&&s| s > rel_tol * smax).count();
    (rank, sv)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values.into_iter().fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()))
}

/// Largest absolute value, for logging entry growth.
pub fn max_abs_bits(rows: &[Vec<BigInt>]) -> u64 {
    rows.iter().flatten().map(|x| x.abs().bits()).max().unwrap_or(0)
}
