//! Zero-dimensional schemes built from simple and double points.
//!
//! A component is a point `p` of multiplicity 1 or 2 together with two
//! per-factor constraint vectors:
//!
//! * `constraints` fix the subvariety `V` the double point lives in, so the
//!   component is `(2p, V)`. `V` is cut out factor by factor: the whole
//!   factor, the coordinate hyperplane `{x_n = 0}`, or the anchor point
//!   `(1 : 0 : ... : 0)`.
//! * `support` says where `p` itself lies. It is at least as restrictive as
//!   `constraints`; a full double point `(2p, X)` with `p` on a divisor `H`
//!   has `Full` constraints and a `Hyperplane` support on the factor of `H`.
//!
//! All hyperplane constraints on a factor refer to the same coordinate
//! hyperplane, and the anchor point lies on it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::SegreVeronesePair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FactorConstraint {
    Full,
    Hyperplane,
    FixedPoint,
}

impl FactorConstraint {
    /// Tangent directions contributed by a factor `P^n`.
    pub fn tangent_dim(self, n: u32) -> u64 {
        match self {
            FactorConstraint::Full => u64::from(n),
            FactorConstraint::Hyperplane => u64::from(n.saturating_sub(1)),
            FactorConstraint::FixedPoint => 0,
        }
    }

    /// True when points satisfying this constraint lie on the coordinate
    /// hyperplane of the factor.
    pub fn on_hyperplane(self) -> bool {
        !matches!(self, FactorConstraint::Full)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchemeComponent {
    multiplicity: u8,
    constraints: Vec<FactorConstraint>,
    support: Vec<FactorConstraint>,
}

impl SchemeComponent {
    pub fn new(multiplicity: u8, constraints: Vec<FactorConstraint>) -> Result<Self> {
        if !(1..=2).contains(&multiplicity) {
            return Err(Error::InvalidScheme(format!(
                "multiplicity {multiplicity} is not 1 or 2"
            )));
        }
        Ok(Self {
            multiplicity,
            support: constraints.clone(),
            constraints,
        })
    }

    /// A full double point `(2p, X)` on a pair with `factors` factors.
    pub fn double_point(factors: usize) -> Self {
        Self::new(2, vec![FactorConstraint::Full; factors]).expect("valid multiplicity")
    }

    /// A simple point on a pair with `factors` factors.
    pub fn simple_point(factors: usize) -> Self {
        Self::new(1, vec![FactorConstraint::Full; factors]).expect("valid multiplicity")
    }

    /// Constrain both the tangent directions and the support on `factor`.
    pub fn constrained(mut self, factor: usize, kind: FactorConstraint) -> Self {
        if factor < self.constraints.len() {
            self.constraints[factor] = kind;
            self.support[factor] = self.support[factor].max(kind);
        }
        self
    }

    /// Move the support onto `kind` on `factor` without restricting the
    /// tangent directions there.
    pub fn supported_on(mut self, factor: usize, kind: FactorConstraint) -> Self {
        if factor < self.support.len() {
            self.support[factor] = self.support[factor].max(kind);
        }
        self
    }

    pub fn multiplicity(&self) -> u8 {
        self.multiplicity
    }

    pub fn constraints(&self) -> &[FactorConstraint] {
        &self.constraints
    }

    pub fn support(&self) -> &[FactorConstraint] {
        &self.support
    }

    pub fn tangent_dim(&self, pair: &SegreVeronesePair) -> u64 {
        self.constraints
            .iter()
            .zip(pair.factor_dims())
            .map(|(c, &n)| c.tangent_dim(n))
            .sum()
    }

    pub fn degree(&self, pair: &SegreVeronesePair) -> u64 {
        match self.multiplicity {
            1 => 1,
            _ => self.tangent_dim(pair) + 1,
        }
    }

    fn validate(&self, pair: &SegreVeronesePair) -> Result<()> {
        if self.constraints.len() != pair.num_factors() || self.support.len() != pair.num_factors()
        {
            return Err(Error::InvalidScheme(format!(
                "component has {} constraints but the pair has {} factors",
                self.constraints.len(),
                pair.num_factors()
            )));
        }
        for (i, ((c, s), &n)) in self
            .constraints
            .iter()
            .zip(&self.support)
            .zip(pair.factor_dims())
            .enumerate()
        {
            if *c == FactorConstraint::Hyperplane && n == 0 {
                return Err(Error::InvalidScheme(format!(
                    "hyperplane constraint on the P^0 factor {}",
                    i + 1
                )));
            }
            if s < c {
                return Err(Error::InvalidScheme(format!(
                    "support on factor {} is looser than the tangent constraint",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// How the component meets the divisor `H_factor`: `(residual, trace)`.
    fn split(&self, pair: &SegreVeronesePair, factor: usize) -> (u64, u64) {
        let degree = self.degree(pair);
        if !self.support[factor].on_hyperplane() {
            return (degree, 0);
        }
        if self.multiplicity == 1 || self.constraints[factor].on_hyperplane() {
            // contained in H
            (0, degree)
        } else {
            // (2p, V) with V transversal to H: residual {p}, trace (2p, V n H)
            (1, degree - 1)
        }
    }
}

/// `count` copies of one component, each at its own general point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComponentGroup {
    pub component: SchemeComponent,
    pub count: u64,
}

/// A union of components over a fixed pair. Point positions are chosen
/// later by seeded sampling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeSpec {
    pair: SegreVeronesePair,
    groups: Vec<ComponentGroup>,
}

impl SchemeSpec {
    /// Build a scheme from `(component, number_of_points)` groups.
    pub fn new(
        pair: SegreVeronesePair,
        groups: impl IntoIterator<Item = (SchemeComponent, u64)>,
    ) -> Result<Self> {
        let groups = groups
            .into_iter()
            .filter(|(_, count)| *count > 0)
            .map(|(component, count)| {
                component.validate(&pair)?;
                Ok(ComponentGroup { component, count })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { pair, groups })
    }

    /// `z` general double points of the whole space.
    pub fn double_points(pair: &SegreVeronesePair, z: u64) -> Self {
        let component = SchemeComponent::double_point(pair.num_factors());
        Self::new(pair.clone(), [(component, z)]).expect("full double points are always valid")
    }

    pub fn pair(&self) -> &SegreVeronesePair {
        &self.pair
    }

    pub fn groups(&self) -> &[ComponentGroup] {
        &self.groups
    }

    /// Every component, repeated according to its group count.
    pub fn components(&self) -> impl Iterator<Item = &SchemeComponent> + '_ {
        self.groups
            .iter()
            .flat_map(|g| std::iter::repeat(&g.component).take(g.count as usize))
    }

    pub fn num_points(&self) -> u64 {
        self.groups.iter().map(|g| g.count).sum()
    }

    pub fn total_degree(&self) -> u64 {
        self.groups
            .iter()
            .map(|g| g.count * g.component.degree(&self.pair))
            .sum()
    }

    /// Residual and trace degrees with respect to the divisor given by the
    /// coordinate hyperplane of `factor`. They always add up to
    /// [`total_degree`](Self::total_degree).
    pub fn split_degree(&self, factor: usize) -> Result<(u64, u64)> {
        if factor >= self.pair.num_factors() {
            return Err(Error::FactorIndex {
                index: factor,
                factors: self.pair.num_factors(),
            });
        }
        Ok(self.groups.iter().fold((0, 0), |(res, tr), g| {
            let (r, t) = g.component.split(&self.pair, factor);
            (res + g.count * r, tr + g.count * t)
        }))
    }

    /// The same scheme over the normalized pair, with constraints permuted
    /// along with the factors.
    pub fn normalized(&self) -> Self {
        let perm = self.pair.normalizing_permutation();
        let groups = self
            .groups
            .iter()
            .map(|g| ComponentGroup {
                component: SchemeComponent {
                    multiplicity: g.component.multiplicity,
                    constraints: perm.iter().map(|&i| g.component.constraints[i]).collect(),
                    support: perm.iter().map(|&i| g.component.support[i]).collect(),
                },
                count: g.count,
            })
            .collect();
        Self {
            pair: self.pair.normalized(),
            groups,
        }
    }

    /// Text descriptor such as `3*2pt + 2*2pt@H2 + 1*1pt@h2`.
    pub fn descriptor(&self) -> String {
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|g| {
                let c = &g.component;
                let mut marks = Vec::new();
                for (i, (t, s)) in c.constraints.iter().zip(&c.support).enumerate() {
                    let mark = match (t, s) {
                        (FactorConstraint::Full, FactorConstraint::Full) => continue,
                        (FactorConstraint::Hyperplane, _) if *s == FactorConstraint::Hyperplane => {
                            "H"
                        }
                        (FactorConstraint::FixedPoint, _) => "O",
                        (FactorConstraint::Full, FactorConstraint::Hyperplane) => "h",
                        (FactorConstraint::Full, FactorConstraint::FixedPoint) => "o",
                        // hyperplane tangent directions at the anchor point
                        (FactorConstraint::Hyperplane, _) => "Ho",
                    };
                    marks.push(format!("{mark}{}", i + 1));
                }
                let mut text = format!("{}*{}pt", g.count, c.multiplicity);
                if !marks.is_empty() {
                    text.push('@');
                    text.push_str(&marks.join(","));
                }
                text
            })
            .collect();
        if parts.is_empty() {
            "empty".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Parse a descriptor against a pair.
    ///
    /// Each term is `COUNT*MULTpt`, optionally followed by `@` and a comma
    /// separated list of marks naming a 1-based factor:
    /// `H i` (double point of the hyperplane), `O i` (pinned to the anchor),
    /// `h i` (full double point supported on the hyperplane) and `o i`
    /// (full double point supported at the anchor).
    pub fn parse(pair: &SegreVeronesePair, text: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "scheme descriptor",
            input: text.to_string(),
        };
        let text = text.trim();
        if text == "empty" || text.is_empty() {
            return Self::new(pair.clone(), []);
        }
        let mut groups = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            let (head, marks) = match term.split_once('@') {
                Some((h, m)) => (h, Some(m)),
                None => (term, None),
            };
            let (count, mult) = head.split_once('*').ok_or_else(bad)?;
            let count: u64 = count.trim().parse().map_err(|_| bad())?;
            let mult: u8 = mult
                .trim()
                .strip_suffix("pt")
                .and_then(|m| m.parse().ok())
                .ok_or_else(bad)?;
            let mut component =
                SchemeComponent::new(mult, vec![FactorConstraint::Full; pair.num_factors()])?;
            for mark in marks.into_iter().flat_map(|m| m.split(',')) {
                let mark = mark.trim();
                let split = mark.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
                let (kind, index) = mark.split_at(split);
                let index: usize = index.parse().map_err(|_| bad())?;
                if index == 0 || index > pair.num_factors() {
                    return Err(Error::FactorIndex {
                        index,
                        factors: pair.num_factors(),
                    });
                }
                let f = index - 1;
                component = match kind {
                    "H" => component.constrained(f, FactorConstraint::Hyperplane),
                    "O" => component.constrained(f, FactorConstraint::FixedPoint),
                    "h" => component.supported_on(f, FactorConstraint::Hyperplane),
                    "o" => component.supported_on(f, FactorConstraint::FixedPoint),
                    "Ho" => component
                        .constrained(f, FactorConstraint::Hyperplane)
                        .supported_on(f, FactorConstraint::FixedPoint),
                    _ => return Err(bad()),
                };
            }
            groups.push((component, count));
        }
        Self::new(pair.clone(), groups)
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.descriptor(), self.pair)
    }
}

impl FromStr for FactorConstraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "FULL" => Ok(FactorConstraint::Full),
            "HYPERPLANE" => Ok(FactorConstraint::Hyperplane),
            "FIXED_POINT" => Ok(FactorConstraint::FixedPoint),
            _ => Err(Error::Parse {
                what: "factor constraint",
                input: s.to_string(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use FactorConstraint::*;

    fn p2p2() -> SegreVeronesePair {
        SegreVeronesePair::new(vec![2, 2], vec![2, 2]).unwrap()
    }

    #[test]
    fn make_scheme_degrees() {
        let pair = p2p2();
        let s = SchemeSpec::new(pair.clone(), [(SchemeComponent::double_point(2), 3)]).unwrap();
        assert_eq!(s.total_degree(), 15);

        let on_h = SchemeComponent::new(2, vec![Full, Hyperplane]).unwrap();
        assert_eq!(on_h.tangent_dim(&pair), 3);
        let s = SchemeSpec::new(pair.clone(), [(on_h, 2)]).unwrap();
        assert_eq!(s.total_degree(), 8);

        let on_e = SchemeComponent::new(2, vec![Full, FixedPoint]).unwrap();
        let s = SchemeSpec::new(pair, [(on_e, 1)]).unwrap();
        assert_eq!(s.total_degree(), 3);
    }

    #[test]
    fn make_scheme_errors() {
        let pair = p2p2();
        let short = SchemeComponent::new(2, vec![Full]).unwrap();
        assert!(matches!(
            SchemeSpec::new(pair, [(short, 1)]),
            Err(Error::InvalidScheme(_))
        ));
        assert!(SchemeComponent::new(3, vec![Full]).is_err());
        assert!(SchemeComponent::new(0, vec![Full]).is_err());
    }

    #[test]
    fn split_degree_examples() {
        let pair = p2p2();
        // (2p, X) with p on H = P2 x {x_2 = 0}
        let on_h = SchemeComponent::double_point(2).supported_on(1, Hyperplane);
        let s = SchemeSpec::new(pair.clone(), [(on_h, 1)]).unwrap();
        assert_eq!(s.split_degree(1).unwrap(), (1, 4));

        // (2p, H)
        let inside = SchemeComponent::double_point(2).constrained(1, Hyperplane);
        let s = SchemeSpec::new(pair.clone(), [(inside, 1)]).unwrap();
        assert_eq!(s.split_degree(1).unwrap(), (0, 4));

        let s = SchemeSpec::double_points(&pair, 1);
        assert_eq!(s.split_degree(1).unwrap(), (5, 0));
        assert!(matches!(s.split_degree(2), Err(Error::FactorIndex { .. })));
    }

    #[test]
    fn simple_points_have_degree_one() {
        let pair = p2p2();
        for c in [Full, Hyperplane, FixedPoint] {
            let comp = SchemeComponent::new(1, vec![c, c]).unwrap();
            assert_eq!(comp.degree(&pair), 1);
        }
    }

    #[test]
    fn descriptor_round_trip() {
        let pair = p2p2();
        let s = SchemeSpec::parse(&pair, "3*2pt + 2*2pt@H2 + 1*1pt@H2").unwrap();
        assert_eq!(s.total_degree(), 15 + 8 + 1);
        assert_eq!(s.descriptor(), "3*2pt + 2*2pt@H2 + 1*1pt@H2");
        let t = SchemeSpec::parse(&pair, "1*2pt@h1,O2").unwrap();
        assert_eq!(t.total_degree(), 3);
        assert_eq!(SchemeSpec::parse(&pair, &t.descriptor()).unwrap(), t);
        assert!(SchemeSpec::parse(&pair, "3*2pt@H3").is_err());
        assert!(SchemeSpec::parse(&pair, "3x2pt").is_err());
        assert!(SchemeSpec::parse(&pair, "1*3pt").is_err());
    }

    #[test]
    fn loose_support_is_rejected() {
        let pair = p2p2();
        let comp = SchemeComponent {
            multiplicity: 2,
            constraints: vec![Full, Hyperplane],
            support: vec![Full, Full],
        };
        assert!(SchemeSpec::new(pair, [(comp, 1)]).is_err());
    }

    fn any_constraint() -> impl Strategy<Value = FactorConstraint> {
        prop_oneof![Just(Full), Just(Hyperplane), Just(FixedPoint)]
    }

    proptest! {
        #[test]
        fn split_conserves_degree(
            dims in prop::collection::vec(1u32..4, 1..4),
            comps in prop::collection::vec((1u8..3, prop::collection::vec((any_constraint(), any_constraint()), 4), 1u64..5), 0..6),
            factor in 0usize..4,
        ) {
            let k = dims.len();
            let pair = SegreVeronesePair::new(dims, vec![2; k]).unwrap();
            let groups = comps.into_iter().map(|(m, cs, n)| {
                let mut c = SchemeComponent::new(m, vec![Full; k]).unwrap();
                for (i, (t, s)) in cs.into_iter().take(k).enumerate() {
                    c = c.constrained(i, t).supported_on(i, s);
                }
                (c, n)
            });
            let s = SchemeSpec::new(pair, groups).unwrap();
            let (res, tr) = s.split_degree(factor % k).unwrap();
            prop_assert_eq!(res + tr, s.total_degree());
            let summed: u64 = s.components().map(|c| c.degree(s.pair())).sum();
            prop_assert_eq!(summed, s.total_degree());
        }
    }
}
