//! F4[G24]: lifted idempotents, simple modules, projective indecomposables.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::FiniteField;
use crate::groups::FiniteGroup;
use crate::linalg::Matrix;

use super::{algebra, AlgebraElement, GModule};

/// Idempotents of F4[G24] lifted from F4[C3].
#[derive(Clone, Debug)]
pub struct LiftedIdempotents {
    /// The C3 idempotents e_j = sum_a w^{-ja} w^a, j = 0, 1, 2.
    pub residues: Vec<AlgebraElement>,
    /// Starting points for the lift, e_j i.
    pub preimages: Vec<AlgebraElement>,
    pub idempotents: Vec<AlgebraElement>,
    /// Squarings needed for each lift.
    pub iterations: Vec<usize>,
}

const MAX_SQUARINGS: usize = 64;

fn g24() -> FiniteGroup {
    FiniteGroup::g24()
}

/// x -> x^2 until stable.
pub fn lift_idempotent(group: &FiniteGroup, x: &AlgebraElement) -> Result<(AlgebraElement, usize)> {
    let mut cur = x.clone();
    for n in 0..MAX_SQUARINGS {
        let next = algebra::mul(group, &cur, &cur);
        if next == cur {
            return Ok((cur, n));
        }
        cur = next;
    }
    Err(Error::Internal("idempotent lift did not stabilise".into()))
}

/// The C3 idempotent for character w -> w^j.
pub fn c3_idempotent(j: usize) -> AlgebraElement {
    let f4 = FiniteField::f4();
    let g = g24();
    let w = f4.omega().expect("F4 has w");
    let mut e = algebra::zero(f4, &g);
    for a in 0..3 {
        let elem = g.pow(g.element("w").expect("w in G24"), a);
        e[elem] = w.pow(((3 - (j * a) % 3) % 3) as u64);
    }
    e
}

pub fn lifted_idempotents() -> Result<LiftedIdempotents> {
    let f4 = FiniteField::f4();
    let g = g24();
    let i = algebra::basis_element(f4, &g, g.element("i").expect("i in G24"));
    let one = algebra::one(f4, &g);
    let residues: Vec<AlgebraElement> = (0..3).map(c3_idempotent).collect();
    let preimages: Vec<AlgebraElement> = residues.iter().map(|e| algebra::mul(&g, e, &i)).collect();
    let mut idempotents = Vec::new();
    let mut iterations = Vec::new();
    let mut rest = one.clone();
    for x in &preimages {
        let corner = algebra::mul(&g, &algebra::mul(&g, &rest, x), &rest);
        let (e, n) = lift_idempotent(&g, &corner)?;
        rest = algebra::add(&rest, &e);
        idempotents.push(e);
        iterations.push(n);
    }
    let sum = idempotents
        .iter()
        .fold(algebra::zero(f4, &g), |acc, e| algebra::add(&acc, e));
    if sum != one {
        return Err(Error::Internal("lifted idempotents do not sum to 1".into()));
    }
    for (a, ea) in idempotents.iter().enumerate() {
        for (b, eb) in idempotents.iter().enumerate() {
            let prod = algebra::mul(&g, ea, eb);
            let expected = if a == b {
                ea.clone()
            } else {
                algebra::zero(f4, &g)
            };
            if prod != expected {
                return Err(Error::Internal(
                    "lifted idempotents are not orthogonal".into(),
                ));
            }
        }
    }
    Ok(LiftedIdempotents {
        residues,
        preimages,
        idempotents,
        iterations,
    })
}

/// P_j = F4[G24] e_j, each of dimension 8.
pub fn projective_indecomposables() -> Result<Vec<GModule>> {
    let group = Arc::new(g24());
    lifted_idempotents()?
        .idempotents
        .iter()
        .map(|e| Ok(GModule::left_ideal(FiniteField::f4(), Arc::clone(&group), std::slice::from_ref(e))?.0))
        .collect()
}

/// The simple modules P_j / rad P_j, ordered so that w acts by w^j.
pub fn simple_modules() -> Result<Vec<GModule>> {
    let f4 = FiniteField::f4();
    let w = f4.omega().expect("F4 has w");
    let mut simples: Vec<GModule> = projective_indecomposables()?
        .iter()
        .map(|p| Ok(p.quotient(&p.radical())?.0))
        .collect::<Result<_>>()?;
    let g = g24();
    let w_idx = g.element("w").expect("w in G24");
    let char_power = |s: &GModule| {
        (0..3u64)
            .find(|&j| s.rho(w_idx).get(0, 0) == w.pow(j))
            .unwrap_or(3)
    };
    simples.sort_by_key(char_power);
    Ok(simples)
}

/// The F4[G24]-module on F4 where Q8 acts trivially and w acts by w^j.
pub fn character_module(j: u32) -> Result<GModule> {
    let f4 = FiniteField::f4();
    let w = f4.omega().expect("F4 has w");
    let group = Arc::new(g24());
    let gens: Vec<Matrix> = group
        .generators()
        .iter()
        .map(|&g| {
            if group.element_name(g) == "w" {
                Matrix::scalar(w.pow(u64::from(j)))
            } else {
                Matrix::identity(f4, 1)
            }
        })
        .collect();
    GModule::from_generators(f4, group, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotents_are_complete_and_orthogonal() {
        let data = lifted_idempotents().unwrap();
        assert_eq!(data.idempotents.len(), 3);
    }

    #[test]
    fn projectives_have_dim_8() {
        let ps = projective_indecomposables().unwrap();
        assert_eq!(
            ps.iter().map(|p| p.dim()).collect::<Vec<_>>(),
            vec![8, 8, 8]
        );
    }

    #[test]
    fn simples_are_the_three_characters() {
        let simples = simple_modules().unwrap();
        for (j, s) in simples.iter().enumerate() {
            assert_eq!(s.dim(), 1);
            let expected = character_module(j as u32).unwrap();
            assert_eq!(s.matrices(), expected.matrices());
        }
    }
}
