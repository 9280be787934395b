use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Univariate polynomial with exact integer coefficients, lowest degree
/// first. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new([c.into()])
    }

    /// The identity polynomial `r`.
    pub fn var() -> Self {
        Self::new([0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| {
            self.coeffs.get(i).cloned().unwrap_or_default()
                + other.coeffs.get(i).cloned().unwrap_or_default()
        }))
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Poly {
        let k = k.into();
        Poly::new(self.coeffs.iter().map(|c| c * &k))
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(1), |acc, _| acc.mul(self))
    }

    /// `1 + max |a_i| / |a_lead|`, rounded up: every real root has absolute
    /// value below this.
    pub fn cauchy_bound(&self) -> BigInt {
        let Some(lead) = self.leading() else {
            return BigInt::zero();
        };
        let lead = lead.abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_default();
        BigInt::one() + (max + &lead - BigInt::one()) / lead
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("r")?,
                (1, false) => write!(f, "{a}r")?,
                (_, true) => write!(f, "r^{i}")?,
                (_, false) => write!(f, "{a}r^{i}")?,
            }
        }
        Ok(())
    }
}

/// Whether `p(n) >= 0` for every integer `n >= r0`.
///
/// Beyond the Cauchy bound `p` has no roots and takes the sign of its
/// leading coefficient, so checking the integers in `[r0, bound]` and the
/// sign of the leading coefficient decides the question exactly.
pub fn poly_nonneg_over_integer_tail(p: &Poly, r0: i64) -> bool {
    let Some(lead) = p.leading() else {
        return true;
    };
    if lead.is_negative() {
        return false;
    }
    let r0 = BigInt::from(r0);
    let bound = p.cauchy_bound();
    let mut n = r0;
    while n <= bound {
        if p.eval(&n).is_negative() {
            return false;
        }
        n += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trivial_examples() {
        assert!(poly_nonneg_over_integer_tail(&Poly::var().pow(2), 0));
        assert!(!poly_nonneg_over_integer_tail(&Poly::new([-10, 1]), 8));
        assert!(poly_nonneg_over_integer_tail(&Poly::zero(), 8));
        assert!(!poly_nonneg_over_integer_tail(&Poly::new([5, 0, -1]), 0));
        assert!(poly_nonneg_over_integer_tail(
            &Poly::new([-30, 11, -6, 1]),
            6
        ));
        assert!(!poly_nonneg_over_integer_tail(
            &Poly::new([-30, 11, -6, 1]),
            0
        ));
    }

    #[test]
    fn arithmetic_and_display() {
        let r = Poly::var();
        let p = r.add(&Poly::constant(1)).pow(3);
        assert_eq!(p, Poly::new([1, 3, 3, 1]));
        assert_eq!(p.to_string(), "r^3 + 3r^2 + 3r + 1");
        assert_eq!(Poly::new([-4, 0, -2]).to_string(), "-2r^2 - 4");
        assert_eq!(p.sub(&p), Poly::zero());
        assert_eq!(p.eval_i64(2), BigInt::from(27));
        assert_eq!(Poly::new([7, 0, 2]).cauchy_bound(), BigInt::from(5));
    }

    proptest! {
        #[test]
        fn agrees_with_naive_evaluation(
            coeffs in proptest::collection::vec(-50i64..50, 1..=6),
            r0 in -20i64..20,
        ) {
            let p = Poly::new(coeffs);
            let naive = (r0..=r0 + 10_000).all(|n| !p.eval_i64(n).is_negative());
            let decided = poly_nonneg_over_integer_tail(&p, r0);
            if decided {
                prop_assert!(naive);
            }
            if naive {
                // beyond the window only the leading sign matters
                let lead_ok = p.leading().map_or(true, |c| !c.is_negative());
                prop_assert_eq!(decided, lead_ok);
            }
        }
    }
}
