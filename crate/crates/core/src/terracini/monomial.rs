//! Multihomogeneous monomial basis.
//!
//! Monomials of one factor `P^n` in degree `d` are exponent vectors
//! `(e_0, ..., e_n)` listed in lexicographically decreasing order, so
//! `x_0^d` comes first. The basis of a product is the Kronecker product of
//! the factor bases with the first factor most significant.

/// Exponent vectors of degree `d` in `n + 1` variables.
pub fn factor_monomials(n: u32, d: u32) -> Vec<Vec<u32>> {
    fn rec(vars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(vars - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as usize + 1, d, &mut Vec::new(), &mut out);
    out
}

/// Kronecker product of row vectors, first vector most significant.
pub(crate) fn kron<F: Fn(u32, u32) -> u32>(vectors: &[&[u32]], mul: F) -> Vec<u32> {
    let total: usize = vectors.iter().map(|v| v.len()).product();
    let mut out = Vec::with_capacity(total);
    out.push(1u32);
    for v in vectors {
        let mut next = Vec::with_capacity(out.len() * v.len());
        for &a in &out {
            for &b in v.iter() {
                next.push(mul(a, b));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::binomial;

    #[test]
    fn order_and_counts() {
        assert_eq!(
            factor_monomials(1, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(
            factor_monomials(2, 1),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        assert_eq!(factor_monomials(3, 0), vec![vec![0, 0, 0, 0]]);
        for n in 1..5u32 {
            for d in 0..6u32 {
                let ms = factor_monomials(n, d);
                assert_eq!(
                    ms.len() as u128,
                    binomial(u64::from(n + d), u64::from(n)).unwrap()
                );
                assert!(ms.iter().all(|m| m.iter().sum::<u32>() == d));
                assert!(ms.windows(2).all(|w| w[0] > w[1]));
            }
        }
    }

    #[test]
    fn kron_ordering() {
        let a = [1u32, 2];
        let b = [3u32, 5, 7];
        assert_eq!(kron(&[&a, &b], |x, y| x * y), vec![3, 5, 7, 6, 10, 14]);
        assert_eq!(kron(&[], |x, y| x * y), vec![1]);
    }
}
