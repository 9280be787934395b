//! Exact integer verification of the computational claims behind the
//! `Y x P^2` induction, and of the threshold tables they feed.

mod inequalities;
mod poly;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use inequalities::{families, large_r_numerator, Inequality, InequalityReport, SmallCheck};
pub use poly::{poly_nonneg_over_integer_tail, Poly};

/// First `r` governed by the cubic formula rather than a table row.
pub const TABLE_START_LARGE_R: u32 = 8;

const A4_SMALL: [u64; 6] = [60, 60, 98, 133, 176, 231];
const A4_OLD_SMALL: [u64; 6] = [71, 75, 99, 138, 183, 234];

/// The two versions of the α-threshold for `Y x P^2`: the sharpened table
/// and the one reachable by the inequality families alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Threshold {
    A4,
    A4Old,
}

impl Threshold {
    /// Tabulated threshold for `2 <= r <= 7`.
    pub fn small(self, r: u32) -> Option<u64> {
        let table = match self {
            Threshold::A4 => &A4_SMALL,
            Threshold::A4Old => &A4_OLD_SMALL,
        };
        (2..TABLE_START_LARGE_R)
            .contains(&r)
            .then(|| table[r as usize - 2])
    }

    /// Smallest admissible α for dimension `r`, or `None` for `r < 2`.
    pub fn min_alpha(self, r: u64) -> Option<u128> {
        if r < 2 {
            return None;
        }
        if r < u64::from(TABLE_START_LARGE_R) {
            return self.small(r as u32).map(u128::from);
        }
        let r = u128::from(r);
        let num = r
            .checked_pow(3)?
            .checked_mul(27)?
            .checked_add(r.checked_mul(r)?.checked_mul(144)?)?
            .checked_add(210 * r + 79)?;
        Some(num.div_ceil(81))
    }

    pub fn admits(self, r: u64, alpha: u128) -> bool {
        self.min_alpha(r).is_some_and(|m| alpha >= m)
    }
}

/// Whether `(r, α)` lies in the sharpened table.
pub fn in_a4_table(r: u64, alpha: u128) -> bool {
    Threshold::A4.admits(r, alpha)
}

/// Outcome of a claim check with the integers it was decided on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub holds: bool,
    pub witness: Option<BTreeMap<String, i64>>,
}

impl ClaimResult {
    fn new(holds: bool, witness: impl IntoIterator<Item = (&'static str, i128)>) -> Self {
        Self {
            holds,
            witness: Some(
                witness
                    .into_iter()
                    .map(|(k, v)| (k.to_string(), v as i64))
                    .collect(),
            ),
        }
    }

    fn fail() -> Self {
        Self {
            holds: false,
            witness: None,
        }
    }

    pub fn get(&self, key: &str) -> Option<i64> {
        self.witness.as_ref()?.get(key).copied()
    }
}

fn fdiv(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

fn cdiv(a: i128, b: i128) -> i128 {
    -(-a).div_euclid(b)
}

/// The five inequalities of Claim 1 for `(x₁, y₁)`.
pub fn claim1_inequalities(r: i64, alpha: i64, z: i64, x1: i64, y1: i64) -> [bool; 5] {
    let (r, a, z, x, y) = (r as i128, alpha as i128, z as i128, x1 as i128, y1 as i128);
    [
        (r + 2) * x + y == 3 * a && x >= 0,
        x + y <= z,
        2 * r + 2 <= y && y <= fdiv(a, r + 1),
        (r + 2) * (z - x - y) + y <= 2 * a,
        z - x - y <= a - (r + 1) * y,
    ]
}

/// The canonical `(x₁, y₁)`: `y₁` is the least `y ≥ 2r+2` with
/// `y ≡ 3α (mod r+2)`, `y ≤ ⌊α/(r+1)⌋` and `(r+2)(z−x−y)+y ≤ 2α`.
/// `holds` means all five inequalities pass on it.
pub fn claim1_construct(r: i64, alpha: i64, z: i64) -> ClaimResult {
    let (ri, ai, zi) = (r as i128, alpha as i128, z as i128);
    let m = ri + 2;
    let hi = fdiv(ai, ri + 1);
    let lo = 2 * ri + 2;
    let mut y = lo + (3 * ai - lo).rem_euclid(m);
    while y <= hi {
        let x = (3 * ai - y) / m;
        if x < 0 {
            break;
        }
        if m * (zi - x - y) + y <= 2 * ai {
            let ok = claim1_inequalities(r, alpha, z, x as i64, y as i64)
                .iter()
                .all(|&b| b);
            return ClaimResult::new(ok, [("x1", x), ("y1", y)]);
        }
        y += m;
    }
    ClaimResult::fail()
}

/// `z − x₁ − y₁ ≥ ⌈α/(r+1)⌉`.
pub fn check_claim2(r: i64, alpha: i64, z: i64, x1: i64, y1: i64) -> ClaimResult {
    let (r, a) = (r as i128, alpha as i128);
    let lhs = z as i128 - x1 as i128 - y1 as i128;
    let rhs = cdiv(a, r + 1);
    ClaimResult::new(lhs >= rhs, [("lhs", lhs), ("rhs", rhs)])
}

/// `z̄ = z′ − z₁ + x₁ ≥ 0` with `x₁` from the canonical construction at
/// `z₁ = ⌊6α/(r+3)⌋`.
pub fn check_claim3(r: i64, alpha: i64) -> ClaimResult {
    let (ri, ai) = (r as i128, alpha as i128);
    let a = fdiv(4 * ai, ri + 2);
    let b = 4 * ai - (ri + 2) * a;
    let z = cdiv(10 * ai, ri + 3);
    let zp = z - a - b;
    let z1 = fdiv(6 * ai, ri + 3);
    let c1 = claim1_construct(r, alpha, z1 as i64);
    let (Some(x1), Some(y1)) = (c1.get("x1"), c1.get("y1")) else {
        return ClaimResult::new(
            false,
            [("a", a), ("b", b), ("z", z), ("z'", zp), ("z1", z1)],
        );
    };
    let zbar = zp - z1 + i128::from(x1);
    ClaimResult::new(
        c1.holds && zbar >= 0,
        [
            ("a", a),
            ("b", b),
            ("z", z),
            ("z'", zp),
            ("z1", z1),
            ("x1", i128::from(x1)),
            ("y1", i128::from(y1)),
            ("zbar", zbar),
        ],
    )
}

/// `z ≥ a + b` for both critical `z` of `L[t]` on `Y x P^2`.
pub fn check_claim11(r: i64, alpha: i64, t: i64) -> ClaimResult {
    let (ri, ai, ti) = (r as i128, alpha as i128, t as i128);
    let a = fdiv((ti + 1) * ai, ri + 2);
    let b = (ti + 1) * ai - (ri + 2) * a;
    let n = (ti + 2) * (ti + 1) / 2 * ai;
    let (zlo, zhi) = (fdiv(n, ri + 3), cdiv(n, ri + 3));
    ClaimResult::new(
        zlo >= a + b && zhi >= a + b,
        [("a", a), ("b", b), ("z_lo", zlo), ("z_hi", zhi)],
    )
}

/// The inequalities `cl7_eq0`–`cl7_eq4` at both critical `z` of
/// `P^1 x P^1 x P^2` in degree `(2a, 2, 2)`.
pub fn check_claim7(a_geom: i64) -> ClaimResult {
    let s = 2 * a_geom as i128 + 1;
    let zbar = fdiv(9 * s, 4);
    let ztil = 9 * s - 4 * zbar;
    let mut holds = true;
    let mut w = vec![("zbar", zbar), ("ztilde", ztil)];
    for (tag, z) in [("lo", fdiv(18 * s, 5)), ("hi", cdiv(18 * s, 5))] {
        let zp = z - zbar - ztil;
        let checks = [
            zp >= s + 1,
            4 * zp <= 6 * s - 6,
            4 * zp + ztil <= 6 * s,
            ztil <= s,
            zp <= 3 * s - 3 * ztil,
        ];
        holds &= checks.iter().all(|&c| c);
        let (zk, zpk, e1) = match tag {
            "lo" => ("z_lo", "z'_lo", "4z'_lo"),
            _ => ("z_hi", "z'_hi", "4z'_hi"),
        };
        w.extend([(zk, z), (zpk, zp), (e1, 4 * zp)]);
    }
    w.push(("6(2a+1)-6", 6 * s - 6));
    ClaimResult::new(holds, w)
}

/// One α checked by [`verify_threshold_gap`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapCheck {
    pub alpha: u64,
    pub z: Vec<u64>,
    pub claim1: bool,
    pub claim2: bool,
    pub claim3: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub r: u32,
    pub from: u64,
    /// Exclusive: the first α covered by the inequality families.
    pub to: u64,
    pub checks: Vec<GapCheck>,
    pub holds: bool,
}

impl GapReport {
    pub fn result(&self) -> ClaimResult {
        ClaimResult::new(
            self.holds,
            [
                ("r", i128::from(self.r)),
                ("alpha_from", i128::from(self.from)),
                ("alpha_to", i128::from(self.to) - 1),
                ("checked", self.checks.len() as i128),
            ],
        )
    }
}

/// Claims 1–3 at every α between the two threshold tables, at both
/// critical `z` of `L[2]` on `Y x P^2`.
pub fn verify_threshold_gap(r: u32) -> Result<GapReport> {
    let (Some(from), Some(to)) = (Threshold::A4.small(r), Threshold::A4Old.small(r)) else {
        return Err(Error::OutOfTable(r));
    };
    let ri = i64::from(r);
    let checks: Vec<GapCheck> = (from..to)
        .map(|alpha| {
            let ai = alpha as i64;
            let zs: Vec<i64> = {
                let mut v = vec![
                    fdiv(6 * ai as i128, ri as i128 + 3) as i64,
                    cdiv(6 * ai as i128, ri as i128 + 3) as i64,
                ];
                v.dedup();
                v
            };
            let mut c1 = true;
            let mut c2 = true;
            for &z in &zs {
                let w = claim1_construct(ri, ai, z);
                c1 &= w.holds;
                c2 &= match (w.get("x1"), w.get("y1")) {
                    (Some(x), Some(y)) => check_claim2(ri, ai, z, x, y).holds,
                    _ => false,
                };
            }
            GapCheck {
                alpha,
                z: zs.iter().map(|&z| z as u64).collect(),
                claim1: c1,
                claim2: c2,
                claim3: check_claim3(ri, ai).holds,
            }
        })
        .collect();
    let holds = checks.iter().all(|c| c.claim1 && c.claim2 && c.claim3);
    Ok(GapReport {
        r,
        from,
        to,
        checks,
        holds,
    })
}

/// The sharpened threshold table as `(r, α_min)` rows for `r = 2..=7`,
/// followed by the cubic rule for larger `r`.
pub fn threshold_table() -> Vec<(u32, u64)> {
    (2..TABLE_START_LARGE_R)
        .map(|r| (r, Threshold::A4.small(r).expect("tabulated")))
        .collect()
}
