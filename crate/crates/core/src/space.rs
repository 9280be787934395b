//! Segre–Veronese pairs: a product of projective spaces `P^n1 x ... x P^nk`
//! together with the multidegree `(d1, ..., dk)` of the embedding line bundle.
//!
//! Every count here is exact. Section counts go through checked `u128`
//! arithmetic and surface [`Error::Overflow`] instead of wrapping.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `C(n, k)` with overflow detection.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// `(P^n1 x ... x P^nk, O(d1, ..., dk))`.
///
/// The user-facing factor order is preserved; [`SegreVeronesePair::normalized`]
/// gives the permutation-invariant form used for cache keys.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PairRepr", into = "PairRepr")]
pub struct SegreVeronesePair {
    factor_dims: Vec<u32>,
    multidegree: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    factor_dims: Vec<u32>,
    multidegree: Vec<u32>,
}

impl TryFrom<PairRepr> for SegreVeronesePair {
    type Error = Error;

    fn try_from(value: PairRepr) -> Result<Self> {
        Self::new(value.factor_dims, value.multidegree)
    }
}

impl From<SegreVeronesePair> for PairRepr {
    fn from(value: SegreVeronesePair) -> Self {
        PairRepr {
            factor_dims: value.factor_dims,
            multidegree: value.multidegree,
        }
    }
}

/// The two critical numbers of double points, `floor(N / (dim + 1))` and
/// `ceil(N / (dim + 1))`. Maximal rank at both certifies every `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalRanks {
    pub z_lo: u64,
    pub z_hi: u64,
}

impl CriticalRanks {
    /// The distinct critical values, in increasing order.
    pub fn values(&self) -> Vec<u64> {
        if self.z_lo == self.z_hi {
            vec![self.z_lo]
        } else {
            vec![self.z_lo, self.z_hi]
        }
    }
}

impl SegreVeronesePair {
    pub fn new(factor_dims: Vec<u32>, multidegree: Vec<u32>) -> Result<Self> {
        if factor_dims.is_empty() {
            return Err(Error::InvalidPair("at least one factor is required".into()));
        }
        if factor_dims.len() != multidegree.len() {
            return Err(Error::InvalidPair(format!(
                "{} factor dimensions but {} degrees",
                factor_dims.len(),
                multidegree.len()
            )));
        }
        if factor_dims.iter().any(|&n| n == 0) {
            return Err(Error::InvalidPair(
                "factor dimensions must be positive".into(),
            ));
        }
        Ok(Self {
            factor_dims,
            multidegree,
        })
    }

    /// `P^n` with `O(d)`.
    pub fn projective(n: u32, d: u32) -> Result<Self> {
        Self::new(vec![n], vec![d])
    }

    pub fn factor_dims(&self) -> &[u32] {
        &self.factor_dims
    }

    pub fn multidegree(&self) -> &[u32] {
        &self.multidegree
    }

    pub fn num_factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn factors(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.factor_dims
            .iter()
            .copied()
            .zip(self.multidegree.iter().copied())
    }

    /// `dim X = n1 + ... + nk`.
    pub fn dim(&self) -> u64 {
        self.factor_dims.iter().map(|&n| u64::from(n)).sum()
    }

    /// Number of global sections `N = prod C(ni + di, ni)`.
    pub fn h0(&self) -> Result<u128> {
        self.factors().try_fold(1u128, |acc, (n, d)| {
            let b = binomial(u64::from(n) + u64::from(d), u64::from(n))
                .ok_or(Error::Overflow("binomial coefficient"))?;
            acc.checked_mul(b).ok_or(Error::Overflow("section count"))
        })
    }

    /// Like [`h0`](Self::h0) but narrowed to a `usize`, for sizing matrices.
    pub fn sections(&self) -> Result<usize> {
        usize::try_from(self.h0()?).map_err(|_| Error::Overflow("section count as usize"))
    }

    /// `min(z (dim + 1), N) - 1`, the dimension of the `z`-th secant
    /// variety when it is not defective.
    pub fn expected_secant_dim(&self, z: u64) -> Result<u128> {
        let n = self.h0()?;
        let span = u128::from(z)
            .checked_mul(u128::from(self.dim() + 1))
            .ok_or(Error::Overflow("z (dim + 1)"))?;
        Ok(span.min(n).saturating_sub(1))
    }

    pub fn critical_z(&self) -> Result<CriticalRanks> {
        let n = self.h0()?;
        let m = u128::from(self.dim() + 1);
        let lo = n / m;
        let hi = lo + u128::from(n % m != 0);
        let narrow = |v: u128| u64::try_from(v).map_err(|_| Error::Overflow("critical z"));
        Ok(CriticalRanks {
            z_lo: narrow(lo)?,
            z_hi: narrow(hi)?,
        })
    }

    /// `(Y x P^n, L[d])` where `self` plays the role of `(Y, L)`.
    pub fn with_factor(&self, n: u32, d: u32) -> Result<Self> {
        let mut dims = self.factor_dims.clone();
        let mut degs = self.multidegree.clone();
        dims.push(n);
        degs.push(d);
        Self::new(dims, degs)
    }

    /// Drop factor `index`. Fails when it is the only factor.
    pub fn without_factor(&self, index: usize) -> Result<Self> {
        if index >= self.num_factors() {
            return Err(Error::FactorIndex {
                index,
                factors: self.num_factors(),
            });
        }
        let mut dims = self.factor_dims.clone();
        let mut degs = self.multidegree.clone();
        dims.remove(index);
        degs.remove(index);
        Self::new(dims, degs)
    }

    /// The permutation sorting factors by `(n, d)` descending, as
    /// `perm[new_position] = old_position`.
    pub fn normalizing_permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.num_factors()).collect();
        perm.sort_by(|&a, &b| {
            (self.factor_dims[b], self.multidegree[b])
                .cmp(&(self.factor_dims[a], self.multidegree[a]))
                .then(a.cmp(&b))
        });
        perm
    }

    pub fn normalized(&self) -> Self {
        let perm = self.normalizing_permutation();
        Self {
            factor_dims: perm.iter().map(|&i| self.factor_dims[i]).collect(),
            multidegree: perm.iter().map(|&i| self.multidegree[i]).collect(),
        }
    }

    /// Canonical text of the normalized pair.
    pub fn cache_key(&self) -> String {
        self.normalized().to_string()
    }
}

impl fmt::Display for SegreVeronesePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spaces: Vec<String> = self.factor_dims.iter().map(|n| format!("P{n}")).collect();
        let degs: Vec<String> = self.multidegree.iter().map(u32::to_string).collect();
        write!(f, "{} deg ({})", spaces.join("x"), degs.join(","))
    }
}

impl FromStr for SegreVeronesePair {
    type Err = Error;

    /// Parses the canonical form `P2xP2 deg (2,3)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "Segre-Veronese pair",
            input: s.to_string(),
        };
        let (spaces, degs) = s.split_once("deg").ok_or_else(bad)?;
        let dims = spaces
            .trim()
            .split('x')
            .map(|tok| {
                tok.trim()
                    .strip_prefix('P')
                    .and_then(|n| n.parse::<u32>().ok())
                    .ok_or_else(bad)
            })
            .collect::<Result<Vec<_>>>()?;
        let degs = degs
            .trim()
            .strip_prefix('(')
            .and_then(|d| d.strip_suffix(')'))
            .ok_or_else(bad)?;
        let degs = degs
            .split(',')
            .map(|d| d.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dims, degs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pair(dims: &[u32], degs: &[u32]) -> SegreVeronesePair {
        SegreVeronesePair::new(dims.to_vec(), degs.to_vec()).unwrap()
    }

    #[test]
    fn h0_examples() {
        assert_eq!(pair(&[2], &[2]).h0().unwrap(), 6);
        assert_eq!(pair(&[2, 2], &[2, 2]).h0().unwrap(), 36);
        assert_eq!(pair(&[2, 2, 2], &[2, 2, 2]).h0().unwrap(), 216);
        assert_eq!(pair(&[2, 2], &[3, 3]).h0().unwrap(), 100);
    }

    #[test]
    fn expected_dims() {
        assert_eq!(pair(&[2], &[2]).expected_secant_dim(2).unwrap(), 5);
        assert_eq!(pair(&[2, 2], &[2, 2]).expected_secant_dim(7).unwrap(), 34);
        assert_eq!(pair(&[2], &[4]).expected_secant_dim(5).unwrap(), 14);
    }

    #[test]
    fn critical_values() {
        let c = pair(&[2, 2, 2], &[2, 2, 3]).critical_z().unwrap();
        assert_eq!((c.z_lo, c.z_hi), (51, 52));
        let c = pair(&[2], &[4]).critical_z().unwrap();
        assert_eq!((c.z_lo, c.z_hi), (5, 5));
        assert_eq!(c.values(), vec![5]);
        let c = pair(&[1, 1, 2], &[12, 2, 2]).critical_z().unwrap();
        assert_eq!((c.z_lo, c.z_hi), (46, 47));
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(SegreVeronesePair::new(vec![], vec![]).is_err());
        assert!(SegreVeronesePair::new(vec![2], vec![1, 2]).is_err());
        assert!(SegreVeronesePair::new(vec![0], vec![1]).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let p = SegreVeronesePair::new(vec![60; 8], vec![60; 8]).unwrap();
        assert_eq!(p.h0(), Err(Error::Overflow("section count")));
    }

    #[test]
    fn canonical_text() {
        let p = pair(&[1, 3, 2], &[3, 3, 2]);
        assert_eq!(p.to_string(), "P1xP3xP2 deg (3,3,2)");
        assert_eq!(p.to_string().parse::<SegreVeronesePair>().unwrap(), p);
        assert_eq!(p.cache_key(), "P3xP2xP1 deg (3,2,3)");
        assert!("P2xP deg (2,2)".parse::<SegreVeronesePair>().is_err());
        assert!("P2 (2)".parse::<SegreVeronesePair>().is_err());
    }

    fn small_pair() -> impl Strategy<Value = SegreVeronesePair> {
        prop::collection::vec((1u32..5, 0u32..7), 1..5).prop_map(|fs| {
            let (dims, degs) = fs.into_iter().unzip();
            SegreVeronesePair::new(dims, degs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn h0_is_multiplicative(p in small_pair(), split in 0usize..4) {
            let k = p.num_factors();
            let split = split % k;
            if split == 0 {
                return Ok(());
            }
            let left = SegreVeronesePair::new(p.factor_dims()[..split].to_vec(), p.multidegree()[..split].to_vec()).unwrap();
            let right = SegreVeronesePair::new(p.factor_dims()[split..].to_vec(), p.multidegree()[split..].to_vec()).unwrap();
            prop_assert_eq!(p.h0().unwrap(), left.h0().unwrap() * right.h0().unwrap());
        }

        #[test]
        fn critical_values_bracket_n(p in small_pair()) {
            let n = p.h0().unwrap();
            let m = u128::from(p.dim() + 1);
            let c = p.critical_z().unwrap();
            prop_assert!(c.z_hi - c.z_lo <= 1);
            prop_assert!(u128::from(c.z_lo) * m <= n);
            prop_assert!(n <= u128::from(c.z_hi) * m);
            // the pair is expected to fill at z_hi
            prop_assert_eq!(p.expected_secant_dim(c.z_hi).unwrap(), n - 1);
        }

        #[test]
        fn normalization_is_permutation_invariant(p in small_pair()) {
            let mut dims = p.factor_dims().to_vec();
            let mut degs = p.multidegree().to_vec();
            dims.reverse();
            degs.reverse();
            let q = SegreVeronesePair::new(dims, degs).unwrap();
            prop_assert_eq!(p.cache_key(), q.cache_key());
            prop_assert_eq!(p.h0().unwrap(), q.h0().unwrap());
        }
    }
}
