use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, PrimeField, SampledPoints};
use crate::scheme::FactorConstraint;
use crate::space::SegreVeronesePair;

use super::monomial::{factor_monomials, kron};

/// Values and first partials of one factor's monomials at an affine point.
struct FactorJet {
    values: Vec<u32>,
    /// `partials[j]` differentiates along affine coordinate `directions[j]`.
    partials: Vec<Vec<u32>>,
}

fn factor_jet(
    field: &PrimeField,
    monomials: &[Vec<u32>],
    degree: u32,
    coords: &[u32],
    directions: &[usize],
) -> FactorJet {
    // powers[j][e] = x_j^e for the affine coordinates x_1..x_n (x_0 = 1)
    let powers: Vec<Vec<u32>> = coords
        .iter()
        .map(|&x| {
            let mut row = Vec::with_capacity(degree as usize + 1);
            let mut acc = 1u32;
            for _ in 0..=degree {
                row.push(acc);
                acc = field.mul(acc, x);
            }
            row
        })
        .collect();
    let value_of = |m: &[u32], skip: Option<usize>| -> u32 {
        m.iter()
            .enumerate()
            .skip(1)
            .filter(|&(j, _)| Some(j) != skip)
            .fold(1u32, |acc, (j, &e)| field.mul(acc, powers[j][e as usize]))
    };
    let values = monomials.iter().map(|m| value_of(m, None)).collect();
    let partials = directions
        .iter()
        .map(|&j| {
            monomials
                .iter()
                .map(|m| {
                    let e = m[j];
                    if e == 0 {
                        0
                    } else {
                        let rest = value_of(m, Some(j));
                        let d = field.mul(field.element(u64::from(e)), powers[j][e as usize - 1]);
                        field.mul(d, rest)
                    }
                })
                .collect()
        })
        .collect();
    FactorJet { values, partials }
}

/// Terracini interpolation matrix: one row per condition imposed by the
/// sampled scheme, one column per monomial of the multihomogeneous basis.
///
/// A double point contributes its evaluation row plus one partial
/// derivative row per tangent direction allowed by its constraints;
/// hyperplane-constrained factors only differentiate along the hyperplane.
/// The row count equals the scheme's total degree.
pub fn build_matrix(
    pair: &SegreVeronesePair,
    points: &SampledPoints,
    field: &PrimeField,
) -> Result<DenseMatrix> {
    if points.prime != field.modulus() {
        return Err(Error::Shape(format!(
            "points sampled mod {} used with F_{}",
            points.prime,
            field.modulus()
        )));
    }
    let dims = pair.factor_dims();
    let bases: Vec<Vec<Vec<u32>>> = pair
        .factors()
        .map(|(n, d)| factor_monomials(n, d))
        .collect();
    let cols = pair.sections()?;
    let mut matrix = DenseMatrix::zeros(0, cols);
    let mul = |a, b| field.mul(a, b);

    for (idx, pt) in points.points.iter().enumerate() {
        let c = &pt.component;
        if pt.coords.len() != dims.len()
            || c.constraints().len() != dims.len()
            || pt
                .coords
                .iter()
                .zip(dims)
                .any(|(x, &n)| x.len() != n as usize + 1)
        {
            return Err(Error::Shape(format!("point {idx} does not live on {pair}")));
        }
        let jets: Vec<FactorJet> = (0..dims.len())
            .map(|i| {
                let n = dims[i] as usize;
                let directions: Vec<usize> = if c.multiplicity() < 2 {
                    Vec::new()
                } else {
                    match c.constraints()[i] {
                        FactorConstraint::Full => (1..=n).collect(),
                        FactorConstraint::Hyperplane => (1..n).collect(),
                        FactorConstraint::FixedPoint => Vec::new(),
                    }
                };
                factor_jet(
                    field,
                    &bases[i],
                    pair.multidegree()[i],
                    &pt.coords[i],
                    &directions,
                )
            })
            .collect();

        let values: Vec<&[u32]> = jets.iter().map(|j| j.values.as_slice()).collect();
        matrix.push_row(&kron(&values, mul))?;
        for (i, jet) in jets.iter().enumerate() {
            for partial in &jet.partials {
                let mut factors = values.clone();
                factors[i] = partial;
                matrix.push_row(&kron(&factors, mul))?;
            }
        }
    }
    Ok(matrix)
}
