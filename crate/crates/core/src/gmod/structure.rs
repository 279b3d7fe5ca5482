//! Projective covers, syzygies, and Krull-Schmidt decomposition.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FiniteField};
use crate::groups::FiniteGroup;
use crate::linalg::Matrix;

use super::{algebra, g24, AlgebraElement, GModule};

/// Seed used when callers do not pick one.
pub const DEFAULT_SEED: u64 = 0x6a6f_6b65;

/// Random endomorphisms tried before a module is declared indecomposable.
const SPLIT_TRIALS: usize = 48;

#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: GModule,
    /// dim M x dim P, a surjective module map.
    pub cover: Matrix,
    /// For each indecomposable summand of P, the index of its idempotent.
    pub summands: Vec<usize>,
}

/// A direct summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: GModule,
    pub inclusion: Matrix,
    pub projection: Matrix,
}

/// Complete set of primitive orthogonal idempotents of k[G] for the
/// supported groups: the unit for a 2-group, three lifted idempotents for
/// G24 over F4.
pub fn primitive_idempotents(
    field: FiniteField,
    group: &FiniteGroup,
) -> Result<Vec<AlgebraElement>> {
    if group.is_p_group(2) {
        return Ok(vec![algebra::one(field, group)]);
    }
    if group.order() == 24 && group.name() == "G24" && field == FiniteField::f4() {
        return Ok(g24::lifted_idempotents()?.idempotents);
    }
    Err(Error::NotTwoGroup(group.order()))
}

fn in_span(span: &Matrix, v: &Matrix) -> bool {
    if span.cols() == 0 {
        return v.is_zero();
    }
    let both = Matrix::hstack(&[span, v]).expect("same height");
    both.rank() == span.rank()
}

/// The projective indecomposable k[G] e as a module with its basis (in group
/// coordinates); the unit gives the regular module in the standard basis.
fn principal_projective(
    field: FiniteField,
    group: &Arc<FiniteGroup>,
    e: &AlgebraElement,
) -> Result<(GModule, Matrix)> {
    if *e == algebra::one(field, group) {
        let reg = GModule::regular(field, Arc::clone(group));
        return Ok((reg, Matrix::identity(field, group.order())));
    }
    GModule::left_ideal(field, Arc::clone(group), std::slice::from_ref(e))
}

/// Minimal projective cover P -> M.
pub fn projective_cover(m: &GModule) -> Result<ProjectiveCover> {
    let field = m.field();
    let group = Arc::clone(m.group());
    let idem = primitive_idempotents(field, &group)?;
    if m.dim() == 0 {
        return Ok(ProjectiveCover {
            projective: GModule::zero(field, group),
            cover: Matrix::zeros(field, 0, 0),
            summands: Vec::new(),
        });
    }
    let mut span = m.radical();
    let mut tops: Vec<(usize, Matrix)> = Vec::new();
    for (t, e) in idem.iter().enumerate() {
        let image = m.act(e);
        for c in 0..image.cols() {
            let v = image.column(c);
            if !in_span(&span, &v) {
                span = if span.cols() == 0 {
                    v.clone()
                } else {
                    Matrix::hstack(&[&span, &v])?
                };
                tops.push((t, v));
            }
        }
    }
    let mut projective = GModule::zero(field, Arc::clone(&group));
    let mut blocks = Vec::new();
    let mut summands = Vec::new();
    for (t, v) in &tops {
        let (p, basis) = principal_projective(field, &group, &idem[*t])?;
        let mut block = Matrix::zeros(field, m.dim(), p.dim());
        for c in 0..basis.cols() {
            let b: Vec<FieldElement> = basis.column(c).to_vec();
            let image = m.act(&b).mul_unchecked(v);
            for r in 0..m.dim() {
                block.set_bits(r, c, image.bits(r, 0));
            }
        }
        blocks.push(block);
        projective = projective.direct_sum(&p)?;
        summands.push(*t);
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let cover = Matrix::hstack(&refs)?;
    if cover.rank() != m.dim() {
        return Err(Error::Internal("projective cover is not surjective".into()));
    }
    if !projective.is_homomorphism(m, &cover) {
        return Err(Error::Internal("cover is not a module map".into()));
    }
    let kernel = cover.kernel_matrix();
    let rad = projective.radical();
    if kernel.cols() > 0 && !in_span(&rad, &kernel) {
        return Err(Error::Internal("cover is not minimal".into()));
    }
    Ok(ProjectiveCover {
        projective,
        cover,
        summands,
    })
}

/// Omega(M): the kernel of the minimal projective cover.
pub fn syzygy(m: &GModule) -> Result<GModule> {
    let pc = projective_cover(m)?;
    if pc.projective.dim() == 0 {
        return Ok(m.clone());
    }
    let kernel = pc.cover.kernel_matrix();
    pc.projective.submodule(&kernel)
}

/// Omega^n(M).
pub fn syzygy_n(m: &GModule, n: usize) -> Result<GModule> {
    (0..n).try_fold(m.clone(), |acc, _| syzygy(&acc))
}

fn power(a: &Matrix, e: usize) -> Matrix {
    let mut acc = Matrix::identity(a.field(), a.rows());
    let mut base = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_unchecked(&base);
        }
        base = base.mul_unchecked(&base);
        e >>= 1;
    }
    acc
}

/// Fitting decomposition M = ker(psi^n) + im(psi^n) if both are nonzero.
fn fitting_split(psi: &Matrix) -> Option<(Matrix, Matrix)> {
    let n = psi.rows();
    let p = power(psi, n);
    let image = p.column_space();
    if image.cols() == 0 || image.cols() == n {
        return None;
    }
    Some((p.kernel_matrix(), image))
}

fn find_split(m: &GModule, rng: &mut ChaCha8Rng) -> Result<Option<(Matrix, Matrix)>> {
    let end = m.hom_space(m)?;
    if end.len() <= 1 {
        return Ok(None);
    }
    let field = m.field();
    let id = Matrix::identity(field, m.dim());
    let try_endo = |phi: &Matrix| -> Option<(Matrix, Matrix)> {
        field
            .elements()
            .find_map(|l| fitting_split(&phi.add_unchecked(&id.scale(l))))
    };
    for phi in &end {
        if let Some(s) = try_endo(phi) {
            return Ok(Some(s));
        }
    }
    for _ in 0..SPLIT_TRIALS {
        let mut phi = Matrix::zeros(field, m.dim(), m.dim());
        for b in &end {
            let c = field.element(rng.gen_range(0..field.order()) as u8);
            phi = phi.add_unchecked(&b.scale(c));
        }
        if let Some(s) = try_endo(&phi) {
            return Ok(Some(s));
        }
    }
    // Exhaustive idempotent search for tiny endomorphism rings.
    if m.dim() <= 2 {
        let q = field.order();
        let total = q.pow(end.len() as u32);
        for code in 0..total {
            let mut phi = Matrix::zeros(field, m.dim(), m.dim());
            let mut c = code;
            for b in &end {
                phi = phi.add_unchecked(&b.scale(field.element((c % q) as u8)));
                c /= q;
            }
            if phi.mul_unchecked(&phi) == phi && !phi.is_zero() && !phi.is_identity() {
                return Ok(Some((phi.kernel_matrix(), phi.column_space())));
            }
        }
    }
    Ok(None)
}

fn split_recursive(m: &GModule, rng: &mut ChaCha8Rng) -> Result<Vec<Summand>> {
    let field = m.field();
    let id = Matrix::identity(field, m.dim());
    if m.dim() <= 1 {
        return Ok(vec![Summand {
            module: m.clone(),
            inclusion: id.clone(),
            projection: id,
        }]);
    }
    let Some((a, b)) = find_split(m, rng)? else {
        return Ok(vec![Summand {
            module: m.clone(),
            inclusion: id.clone(),
            projection: id,
        }]);
    };
    let basis = Matrix::hstack(&[&a, &b])?;
    let inv = basis.inverse()?;
    let (ka, n) = (a.cols(), m.dim());
    let parts = [
        (a, inv.submatrix(0..ka, 0..n)),
        (b, inv.submatrix(ka..n, 0..n)),
    ];
    let mut out = Vec::new();
    for (incl, proj) in parts {
        let sub = m.submodule(&incl)?;
        for s in split_recursive(&sub, rng)? {
            out.push(Summand {
                module: s.module,
                inclusion: incl.mul_unchecked(&s.inclusion),
                projection: s.projection.mul_unchecked(&proj),
            });
        }
    }
    Ok(out)
}

/// Krull-Schmidt decomposition by Fitting splits of seeded random
/// endomorphisms. Summands are sorted by dimension (stable otherwise).
pub fn decompose(m: &GModule, seed: u64) -> Result<Vec<Summand>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = split_recursive(m, &mut rng)?;
    parts.sort_by_key(|s| s.module.dim());
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::builtin;

    #[test]
    fn syzygy_of_trivial_is_augmentation_ideal() {
        let k = builtin("k").unwrap();
        let om = syzygy(&k).unwrap();
        assert_eq!(om.dim(), 7);
    }

    #[test]
    fn syzygy_of_w3_has_dim_5() {
        assert_eq!(builtin("W5").unwrap().dim(), 5);
    }

    #[test]
    fn omega_of_free_is_zero() {
        let reg = builtin("regular").unwrap();
        assert_eq!(syzygy(&reg).unwrap().dim(), 0);
    }

    #[test]
    fn decomposition_of_sum() {
        let w3 = builtin("W3").unwrap();
        let k = builtin("k").unwrap();
        let sum = w3.direct_sum(&k).unwrap().direct_sum(&k).unwrap();
        let parts = decompose(&sum, DEFAULT_SEED).unwrap();
        let dims: Vec<usize> = parts.iter().map(|p| p.module.dim()).collect();
        assert_eq!(dims, vec![1, 1, 3]);
        let total = parts
            .iter()
            .fold(Matrix::zeros(sum.field(), 5, 5), |acc, p| {
                acc.add_unchecked(&p.inclusion.mul_unchecked(&p.projection))
            });
        assert!(total.is_identity());
    }

    #[test]
    fn regular_is_indecomposable() {
        let reg = builtin("regular").unwrap();
        assert_eq!(decompose(&reg, DEFAULT_SEED).unwrap().len(), 1);
    }
}
