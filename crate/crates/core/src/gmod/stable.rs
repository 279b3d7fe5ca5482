//! Free summands, isomorphism testing, and endotriviality.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::GroupExt;
use crate::linalg::Matrix;

use super::structure::{decompose, Summand, DEFAULT_SEED};
use super::GModule;

/// M = F + R with F free of rank `free_rank` and R without free summands.
#[derive(Clone, Debug)]
pub struct StripFree {
    pub free_rank: usize,
    pub remainder: GModule,
    /// dim M x (rank |G|): the free part, basis (i, g) -> g m_i.
    pub free_inclusion: Matrix,
    /// (rank |G|) x dim M, a module map splitting `free_inclusion`.
    pub free_projection: Matrix,
    /// dim M x dim R.
    pub remainder_inclusion: Matrix,
}

/// A Krull-Schmidt decomposition.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn new(m: &GModule, seed: u64) -> Result<Self> {
        Ok(Decomposition {
            summands: decompose(m, seed)?,
        })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.module.dim()).collect()
    }
}

/// Splits off the largest free summand of a module over a 2-group.
pub fn strip_free(m: &GModule) -> Result<StripFree> {
    let group = m.group();
    if !group.is_p_group(2) {
        return Err(Error::NotTwoGroup(group.order()));
    }
    let field = m.field();
    let n = group.order();
    let norm = m.norm_matrix();
    let (_, pivots, r) = norm.rref();
    if r == 0 {
        return Ok(StripFree {
            free_rank: 0,
            remainder: m.clone(),
            free_inclusion: Matrix::zeros(field, m.dim(), 0),
            free_projection: Matrix::zeros(field, 0, m.dim()),
            remainder_inclusion: Matrix::identity(field, m.dim()),
        });
    }
    let mut free = Matrix::zeros(field, m.dim(), r * n);
    for (i, &p) in pivots.iter().enumerate() {
        for g in 0..n {
            for row in 0..m.dim() {
                free.set(row, i * n + g, m.rho(g).get(row, p));
            }
        }
    }
    if free.rank() != r * n {
        return Err(Error::Internal(
            "norm generators do not span a free module".into(),
        ));
    }
    let dual = free.extend_to_basis().inverse()?;
    let mut proj = Matrix::zeros(field, r * n, m.dim());
    for i in 0..r {
        let lambda = dual.submatrix(
            i * n + group.identity()..i * n + group.identity() + 1,
            0..m.dim(),
        );
        for g in 0..n {
            let row = lambda.mul_unchecked(m.rho(group.inv(g)));
            for c in 0..m.dim() {
                proj.set(i * n + g, c, row.get(0, c));
            }
        }
    }
    if !proj.mul_unchecked(&free).is_identity() {
        return Err(Error::Internal("free projection does not split".into()));
    }
    let rem_basis = proj.kernel_matrix();
    let remainder = m.submodule(&rem_basis)?;
    if !remainder.norm_matrix().is_zero() {
        return Err(Error::Internal("remainder still has a free summand".into()));
    }
    Ok(StripFree {
        free_rank: r,
        remainder,
        free_inclusion: free,
        free_projection: proj,
        remainder_inclusion: rem_basis,
    })
}

/// Isomorphism between indecomposables: some f in Hom(A,B) and g in
/// Hom(B,A) with g f invertible.
fn indecomposable_iso(a: &GModule, b: &GModule) -> Result<Option<Matrix>> {
    if a.dim() != b.dim() {
        return Ok(None);
    }
    let fs = a.hom_space(b)?;
    let gs = b.hom_space(a)?;
    for f in &fs {
        if f.is_invertible() {
            return Ok(Some(f.clone()));
        }
        if gs.iter().any(|g| g.mul_unchecked(f).is_invertible()) {
            return Ok(Some(f.clone()));
        }
    }
    Ok(None)
}

/// An explicit isomorphism X: M -> N (X rho_M(g) = rho_N(g) X), if any.
pub fn module_iso(m: &GModule, n: &GModule) -> Result<Option<Matrix>> {
    if m.field() != n.field() || m.group() != n.group() {
        return Err(Error::ModuleMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let field = m.field();
    if let Some(x) = indecomposable_iso(m, n)? {
        if x.is_invertible() {
            return Ok(Some(x));
        }
    }
    let dm = decompose(m, DEFAULT_SEED)?;
    let dn = decompose(n, DEFAULT_SEED)?;
    if dm.len() != dn.len() {
        return Ok(None);
    }
    let mut used = vec![false; dn.len()];
    let mut witness = Matrix::zeros(field, n.dim(), m.dim());
    for a in &dm {
        let mut matched = false;
        for (j, b) in dn.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(f) = indecomposable_iso(&a.module, &b.module)? {
                used[j] = true;
                let piece = b.inclusion.mul_unchecked(&f).mul_unchecked(&a.projection);
                witness = witness.add_unchecked(&piece);
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    if !witness.is_invertible() || !m.is_homomorphism(n, &witness) {
        return Err(Error::Internal(
            "assembled witness is not an isomorphism".into(),
        ));
    }
    Ok(Some(witness))
}

/// Stable isomorphism: isomorphic after removing free summands. Returns the
/// witness between the projective-free remainders.
pub fn stable_iso_witness(
    m: &GModule,
    n: &GModule,
) -> Result<Option<(StripFree, StripFree, Matrix)>> {
    let sm = strip_free(m)?;
    let sn = strip_free(n)?;
    let w = module_iso(&sm.remainder, &sn.remainder)?;
    Ok(w.map(|w| (sm, sn, w)))
}

pub fn stable_iso(m: &GModule, n: &GModule) -> Result<bool> {
    Ok(stable_iso_witness(m, n)?.is_some())
}

/// Outcome of both endotriviality tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndotrivialReport {
    /// End(M) = k + free, tested directly (2-groups only).
    pub direct: Option<bool>,
    /// The same test on restrictions to all elementary abelian 2-subgroups.
    pub restriction: bool,
    pub endotrivial: bool,
}

fn direct_test(m: &GModule) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    let end = m.hom_module(m)?;
    let s = strip_free(&end)?;
    Ok(s.remainder.dim() == 1 && s.remainder.is_trivial())
}

pub fn endotrivial_report(m: &GModule) -> Result<EndotrivialReport> {
    let group = Arc::clone(m.group());
    let direct = if group.is_p_group(2) {
        Some(direct_test(m)?)
    } else {
        None
    };
    let mut restriction = m.dim() > 0;
    for e in group.elementary_abelian_subgroups(2) {
        if !restriction {
            break;
        }
        restriction = direct_test(&m.restrict(&e)?)?;
    }
    if let Some(d) = direct {
        if d != restriction {
            return Err(Error::MethodDisagreement {
                direct: d,
                restriction,
            });
        }
    }
    Ok(EndotrivialReport {
        direct,
        restriction,
        endotrivial: restriction,
    })
}

/// M (x) M* = k + free, confirmed by two independent methods.
pub fn endotrivial(m: &GModule) -> Result<bool> {
    Ok(endotrivial_report(m)?.endotrivial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::builtin;

    #[test]
    fn strip_free_of_regular_plus_trivial() {
        let m = builtin("regular")
            .unwrap()
            .direct_sum(&builtin("k").unwrap())
            .unwrap();
        let s = strip_free(&m).unwrap();
        assert_eq!(s.free_rank, 1);
        assert_eq!(s.remainder.dim(), 1);
        assert!(s.remainder.is_trivial());
        assert!(m.is_homomorphism(
            &GModule::regular(m.field(), Arc::clone(m.group())),
            &s.free_projection
        ));
    }

    #[test]
    fn w3_and_k_are_endotrivial() {
        assert!(endotrivial(&builtin("k").unwrap()).unwrap());
        assert!(endotrivial(&builtin("W3").unwrap()).unwrap());
        assert!(!endotrivial(&builtin("regular").unwrap()).unwrap());
    }

    #[test]
    fn iso_detects_basis_change() {
        let w3 = builtin("W3").unwrap();
        let p = Matrix::parse_text(w3.field(), "1 1 0; 0 1 w; 0 0 1").unwrap();
        let other = w3.change_basis(&p).unwrap();
        let x = module_iso(&w3, &other).unwrap().unwrap();
        assert!(w3.is_homomorphism(&other, &x));
    }

    #[test]
    fn stable_iso_ignores_free() {
        let w3 = builtin("W3").unwrap();
        let bigger = w3.direct_sum(&builtin("regular").unwrap()).unwrap();
        assert!(stable_iso(&w3, &bigger).unwrap());
        assert!(!stable_iso(&w3, &builtin("k").unwrap()).unwrap());
    }
}
