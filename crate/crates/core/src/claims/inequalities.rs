//! The inequalities that the proofs discharge "by the lower bounds on α".
//!
//! Each has the shape `c(r)·α ≥ d(r)` with `c` positive, so it holds for
//! all admissible `α` once it holds at the threshold. For `r ≥ 8` the
//! threshold is `A(r)/81` with `A(r) = 27r³+144r²+210r+79`, and the
//! inequality reduces to `c(r)·A(r) − 81·d(r) ≥ 0` on the integer tail.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::poly::{poly_nonneg_over_integer_tail, Poly};
use super::{Threshold, TABLE_START_LARGE_R};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub name: &'static str,
    /// Coefficient of α.
    pub alpha_coeff: Poly,
    /// Right-hand side.
    pub rhs: Poly,
    /// The threshold table the inequality is used with.
    pub table: Threshold,
}

fn r() -> Poly {
    Poly::var()
}

fn c(k: i64) -> Poly {
    Poly::constant(k)
}

fn shift(k: i64) -> Poly {
    r().add(&c(k))
}

impl Inequality {
    pub fn holds_at(&self, r: i64, alpha: i64) -> bool {
        self.alpha_coeff.eval_i64(r) * BigInt::from(alpha) >= self.rhs.eval_i64(r)
    }

    /// `c(r)·A(r) − 81·d(r)`.
    pub fn tail_polynomial(&self) -> Poly {
        self.alpha_coeff
            .mul(&large_r_numerator())
            .sub(&self.rhs.scale(81))
    }

    /// `c(r) ≥ 1` for all `r ≥ r0`, which makes the inequality monotone in α.
    pub fn alpha_coeff_positive(&self, r0: i64) -> bool {
        poly_nonneg_over_integer_tail(&self.alpha_coeff.sub(&c(1)), r0)
    }

    /// Checked at the tabulated thresholds `r = 2..=7` and proved on the
    /// integer tail `r ≥ 8`; together these cover every admissible `(r, α)`.
    pub fn verify(&self) -> InequalityReport {
        let monotone = self.alpha_coeff_positive(2);
        let small: Vec<(u32, u64, bool)> = (2..TABLE_START_LARGE_R)
            .map(|r| {
                let alpha = self.table.small(r).expect("tabulated");
                (r, alpha, self.holds_at(i64::from(r), alpha as i64))
            })
            .collect();
        let tail = self.tail_polynomial();
        let tail_holds = poly_nonneg_over_integer_tail(&tail, i64::from(TABLE_START_LARGE_R));
        InequalityReport {
            name: self.name.to_string(),
            table: self.table,
            monotone_in_alpha: monotone,
            small_r: small
                .iter()
                .map(|&(r, a, ok)| SmallCheck {
                    r,
                    alpha: a,
                    holds: ok,
                })
                .collect(),
            tail_polynomial: tail.to_string(),
            tail_holds,
            holds: monotone && tail_holds && small.iter().all(|s| s.2),
        }
    }
}

/// `27r³+144r²+210r+79`.
pub fn large_r_numerator() -> Poly {
    Poly::new([79, 210, 144, 27])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallCheck {
    pub r: u32,
    pub alpha: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub table: Threshold,
    pub monotone_in_alpha: bool,
    pub small_r: Vec<SmallCheck>,
    pub tail_polynomial: String,
    pub tail_holds: bool,
    pub holds: bool,
}

/// All inequality families of the claim proofs.
///
/// `eq3` and `eq5` carry `y₁` and are discharged through `eqcon2` and
/// `eqcon3`, as in the proof of Claim 1.
pub fn families() -> Vec<Inequality> {
    use Threshold::{A4Old, A4};
    let r = r();
    let r2 = r.pow(2);
    let r3 = r.pow(3);
    vec![
        Inequality {
            name: "eqcon1",
            alpha_coeff: Poly::new([3, 5]),
            rhs: Poly::new([4, 11, 15, 7, 1]),
            table: A4Old,
        },
        Inequality {
            name: "eqcon2",
            alpha_coeff: Poly::new([3, 2, 1]),
            rhs: shift(1)
                .pow(3)
                .mul(&shift(3))
                .scale(3)
                .add(&shift(2).pow(2)),
            table: A4Old,
        },
        Inequality {
            name: "eqcon3",
            alpha_coeff: Poly::new([3, 8, 3]),
            rhs: Poly::new([1, 15, 29, 23, 8, 1]),
            table: A4Old,
        },
        Inequality {
            name: "eqcon4",
            alpha_coeff: r.scale(2),
            rhs: shift(2).pow(2),
            table: A4Old,
        },
        Inequality {
            name: "eq8",
            alpha_coeff: Poly::new([0, -3, 1, 2]),
            rhs: Poly::new([0, 4, 14, 10, 2]).add(&r.mul(&shift(1).pow(3)).mul(&shift(3)).scale(3)),
            table: A4Old,
        },
        Inequality {
            name: "claim2_eq5_case",
            alpha_coeff: Poly::new([3, 2, 2, 1]),
            rhs: Poly::new([1, 15, 39, 32, 10, 1]),
            table: A4Old,
        },
        Inequality {
            // strict form of 3r²+12r+11−4α < 0
            name: "eq7",
            alpha_coeff: c(4),
            rhs: r2.scale(3).add(&r.scale(12)).add(&c(12)),
            table: A4,
        },
        Inequality {
            name: "claim3",
            alpha_coeff: Poly::new([2, 7, 3]),
            rhs: Poly::new([3, 10, 12, 6, 1]),
            table: A4,
        },
        Inequality {
            // α(t+1)(tr+2t−2) ≥ 2(r+1)²(r+3)+2(r+2)² at t = 3
            name: "claim11_t3",
            alpha_coeff: r.scale(3).add(&c(4)).scale(4),
            rhs: shift(1)
                .pow(2)
                .mul(&shift(3))
                .scale(2)
                .add(&shift(2).pow(2).scale(2)),
            table: A4,
        },
        Inequality {
            name: "a5_t3",
            alpha_coeff: Poly::new([-1, 3]),
            rhs: r3.add(&r2.scale(5)).add(&r.scale(8)).add(&c(5)),
            table: A4,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(name: &str) -> Inequality {
        families().into_iter().find(|f| f.name == name).unwrap()
    }

    #[test]
    fn expanded_forms() {
        assert_eq!(family("eqcon2").rhs, Poly::new([13, 34, 37, 18, 3]));
        assert_eq!(family("eqcon4").rhs, Poly::new([4, 4, 1]));
        assert_eq!(family("eq8").rhs, Poly::new([0, 13, 44, 46, 20, 3]));
    }

    #[test]
    fn eqcon1_tail_example() {
        let g = family("eqcon1").tail_polynomial();
        // 81·(5A·r + 3A)/81 − 81·(r⁴+7r³+15r²+11r+4)
        let a = large_r_numerator();
        let expected = a
            .mul(&Poly::new([3, 5]))
            .sub(&Poly::new([4, 11, 15, 7, 1]).scale(81));
        assert_eq!(g, expected);
        assert!(poly_nonneg_over_integer_tail(&g, 8));
    }

    #[test]
    fn eq8_is_what_limits_small_planes() {
        let f = family("eq8");
        assert!(!f.holds_at(2, 60));
        assert!(f.holds_at(2, 71));
        assert!(f.holds_at(3, 75));
        assert!(!f.holds_at(3, 60));
    }

    #[test]
    fn every_family_verifies() {
        for f in families() {
            let rep = f.verify();
            assert!(rep.holds, "{rep:?}");
        }
    }

    #[test]
    fn eqcon2_needs_the_older_table() {
        let f = family("eqcon2");
        let lowered: Vec<u32> = (3..=7)
            .filter(|&r| !f.holds_at(i64::from(r), Threshold::A4.small(r).unwrap() as i64))
            .collect();
        assert_eq!(lowered, [3, 4, 5, 6, 7]);
    }
}
