//! Reference computations that share no code with the library: an exact
//! rank over the rationals by fraction-free elimination, and a Terracini
//! matrix built from homogeneous partial derivatives at integer points.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank of an integer matrix over the rationals (Bareiss elimination).
pub fn bareiss_rank(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for c in col + 1..ncols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Exponent vectors of degree `d` in `n + 1` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(vars: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 1 {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in 0..=d {
            cur.push(e);
            rec(vars - 1, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n + 1, d, &mut Vec::new(), &mut out);
    out
}

fn pow(b: &BigInt, e: u32) -> BigInt {
    num_traits::pow(b.clone(), e as usize)
}

/// Value of the monomial `x^e` and of each `d/dx_i x^e` at `p`.
fn eval_with_partials(e: &[u32], p: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let value = e.iter().zip(p).map(|(&k, x)| pow(x, k)).product();
    let partials = (0..e.len())
        .map(|i| {
            if e[i] == 0 {
                return BigInt::zero();
            }
            let mut v = BigInt::from(e[i]);
            for (j, (&k, x)) in e.iter().zip(p).enumerate() {
                v *= pow(x, if j == i { k - 1 } else { k });
            }
            v
        })
        .collect();
    (value, partials)
}

/// A point of a product of projective spaces, one homogeneous vector per
/// factor.
pub type MultiPoint = Vec<Vec<BigInt>>;

/// Conditions imposed on multihomogeneous forms by double points at
/// `points`: the value and every partial derivative in every coordinate.
pub fn double_point_rows(dims: &[usize], degs: &[u32], points: &[MultiPoint]) -> Vec<Vec<BigInt>> {
    let per_factor: Vec<Vec<Vec<u32>>> = dims.iter().zip(degs).map(|(&n, &d)| monomials(n, d)).collect();
    let mut columns: Vec<Vec<&Vec<u32>>> = vec![vec![]];
    for basis in &per_factor {
        columns = columns
            .into_iter()
            .flat_map(|prefix| {
                basis.iter().map(move |m| {
                    let mut c = prefix.clone();
                    c.push(m);
                    c
                })
            })
            .collect();
    }
    let nvars: usize = dims.iter().map(|n| n + 1).sum();
    let mut rows = Vec::new();
    for p in points {
        let mut block = vec![vec![BigInt::zero(); columns.len()]; 1 + nvars];
        for (c, col) in columns.iter().enumerate() {
            let evals: Vec<(BigInt, Vec<BigInt>)> =
                col.iter().zip(p).map(|(e, x)| eval_with_partials(e, x)).collect();
            let total: BigInt = evals.iter().map(|(v, _)| v.clone()).product();
            block[0][c] = total;
            let mut offset = 1;
            for (j, (_, partials)) in evals.iter().enumerate() {
                let others: BigInt = evals
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, (v, _))| v.clone())
                    .product();
                for (i, d) in partials.iter().enumerate() {
                    block[offset + i][c] = d * &others;
                }
                offset += partials.len();
            }
        }
        rows.extend(block);
    }
    rows
}

pub fn random_points(dims: &[usize], z: usize, seed: u64) -> Vec<MultiPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..z)
        .map(|_| {
            dims.iter()
                .map(|&n| (0..=n).map(|_| BigInt::from(rng.gen_range(-40i64..=40))).collect())
                .collect()
        })
        .collect()
}

/// Number of sections `prod C(n + d, n)`.
pub fn sections(dims: &[usize], degs: &[u32]) -> usize {
    dims.iter().zip(degs).map(|(&n, &d)| monomials(n, d).len()).product()
}

/// Rank of the double-point conditions at `z` random integer points.
pub fn oracle_rank(dims: &[usize], degs: &[u32], z: usize, seed: u64) -> usize {
    bareiss_rank(&double_point_rows(dims, degs, &random_points(dims, z, seed)))
}
