use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scheme::{FactorConstraint, SchemeComponent, SchemeSpec};

use super::field::PrimeField;

const MAX_RETRIES: usize = 64;

/// One sampled point: homogeneous coordinates per factor, normalized so the
/// first coordinate of every factor is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledPoint {
    pub component: SchemeComponent,
    pub coords: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledPoints {
    pub seed: u64,
    pub prime: u64,
    pub points: Vec<SampledPoint>,
}

/// SplitMix64 finalizer, used to derive independent streams from one seed.
pub fn mix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn sample_factor(rng: &mut ChaCha8Rng, p: u64, n: u32, support: FactorConstraint) -> Vec<u32> {
    let n = n as usize;
    let mut coords = vec![0u32; n + 1];
    coords[0] = 1;
    let free = match support {
        FactorConstraint::Full => n,
        FactorConstraint::Hyperplane => n - 1,
        FactorConstraint::FixedPoint => 0,
    };
    for c in coords.iter_mut().skip(1).take(free) {
        *c = rng.gen_range(0..p) as u32;
    }
    coords
}

/// Draw one point per component, uniformly over the affine chart of its
/// support locus. Deterministic in `(scheme, field, seed)`.
pub fn sample_points(scheme: &SchemeSpec, field: &PrimeField, seed: u64) -> Result<SampledPoints> {
    let p = field.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed ^ mix64(p)));
    let dims = scheme.pair().factor_dims();
    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(scheme.num_points() as usize);
    for component in scheme.components() {
        let mut retries = 0;
        let coords = loop {
            let coords: Vec<Vec<u32>> = dims
                .iter()
                .zip(component.support())
                .map(|(&n, &s)| sample_factor(&mut rng, p, n, s))
                .collect();
            if !seen.contains(&coords) {
                break coords;
            }
            retries += 1;
            if retries >= MAX_RETRIES {
                return Err(Error::DegenerateField { prime: p, retries });
            }
        };
        seen.insert(coords.clone());
        points.push(SampledPoint {
            component: component.clone(),
            coords,
        });
    }
    Ok(SampledPoints {
        seed,
        prime: p,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::SegreVeronesePair;
    use FactorConstraint::*;

    fn pair() -> SegreVeronesePair {
        SegreVeronesePair::new(vec![2, 2, 2], vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn chart_conventions() {
        let pair = pair();
        let c = SchemeComponent::double_point(3)
            .constrained(1, Hyperplane)
            .constrained(2, FixedPoint);
        let s = SchemeSpec::new(pair, [(c, 5)]).unwrap();
        let pts = sample_points(&s, &PrimeField::default(), 7).unwrap();
        assert_eq!(pts.points.len(), 5);
        for pt in &pts.points {
            assert!(pt.coords.iter().all(|c| c[0] == 1));
            assert_eq!(pt.coords[1][2], 0);
            assert_eq!(pt.coords[2], vec![1, 0, 0]);
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let s = SchemeSpec::double_points(&pair(), 4);
        let f = PrimeField::default();
        assert_eq!(
            sample_points(&s, &f, 3).unwrap(),
            sample_points(&s, &f, 3).unwrap()
        );
        assert_ne!(
            sample_points(&s, &f, 3).unwrap(),
            sample_points(&s, &f, 4).unwrap()
        );
    }

    #[test]
    fn collisions_are_fatal_when_unavoidable() {
        let c = SchemeComponent::double_point(3)
            .constrained(0, FixedPoint)
            .constrained(1, FixedPoint)
            .constrained(2, FixedPoint);
        let s = SchemeSpec::new(pair(), [(c, 2)]).unwrap();
        assert!(matches!(
            sample_points(&s, &PrimeField::default(), 1),
            Err(Error::DegenerateField { .. })
        ));
    }

    #[test]
    fn tiny_field_resamples_on_collision() {
        let pair = SegreVeronesePair::new(vec![1], vec![3]).unwrap();
        let s = SchemeSpec::double_points(&pair, 3);
        let f = PrimeField::new(5).unwrap();
        let pts = sample_points(&s, &f, 11).unwrap();
        let distinct: HashSet<_> = pts.points.iter().map(|p| p.coords.clone()).collect();
        assert_eq!(distinct.len(), 3);
        let s = SchemeSpec::double_points(&pair, 6);
        assert!(sample_points(&s, &f, 11).is_err());
    }
}
