use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use jokerlab::gmod::builtin;
use jokerlab::hecke::{G24Hecke, Laurent};
use jokerlab::morava::{q8_elements, O2Element};
use jokerlab::{FieldElement, FiniteField, FiniteGroup, GModule, Matrix};

fn f4() -> FiniteField {
    FiniteField::f4()
}

fn elem() -> impl Strategy<Value = FieldElement> {
    (0u8..4).prop_map(|b| f4().element(b))
}

fn square(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0u8..4, n * n).prop_map(move |bits| Matrix::from_bits(f4(), n, n, &bits))
}

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((0u8..4, -4i64..5), 0..4).prop_map(|terms| {
        terms.into_iter().fold(Laurent::zero(f4()), |acc, (c, e)| {
            acc.add(&Laurent::monomial(f4().element(c), e))
        })
    })
}

fn hecke() -> &'static G24Hecke {
    static H: OnceLock<G24Hecke> = OnceLock::new();
    H.get_or_init(|| G24Hecke::compute().unwrap())
}

proptest! {
    #[test]
    fn field_distributes(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a + a, f4().zero());
    }

    #[test]
    fn frobenius_is_additive(a in elem(), b in elem()) {
        prop_assert_eq!((a + b).frobenius(), a.frobenius() + b.frobenius());
        prop_assert_eq!(a.pow(4), a);
    }

    #[test]
    fn matrix_inverse(m in square(4)) {
        if m.is_invertible() {
            let inv = m.inverse().unwrap();
            prop_assert!(m.mul(&inv).unwrap().is_identity());
            prop_assert!(inv.mul(&m).unwrap().is_identity());
        } else {
            prop_assert!(m.rank() < 4);
            prop_assert!(!m.kernel_basis().is_empty());
        }
    }

    #[test]
    fn rank_nullity(bits in prop::collection::vec(0u8..4, 15)) {
        let m = Matrix::from_bits(f4(), 3, 5, &bits);
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), 5);
        for v in k {
            prop_assert!(m.mul(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(Laurent::parse(f4(), &a.to_string()).unwrap(), a);
    }

    #[test]
    fn o2_is_associative(x in 0usize..8, y in 0usize..8, z in 0usize..8) {
        let q = q8_elements(8).unwrap();
        let s = O2Element::s(8);
        let (a, b, c) = (q[x].mul(&s), q[y], q[z].add(&s));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn q8_embedding_is_a_homomorphism(g in 0usize..8, h in 0usize..8) {
        let q = q8_elements(8).unwrap();
        let group = FiniteGroup::q8();
        prop_assert_eq!(q[g].mul(&q[h]), q[group.mul(g, h)]);
    }

    #[test]
    fn tensor_and_dual_are_modules(a in 0usize..10, b in 0usize..10) {
        let names = builtin::BUILTIN_MODULES;
        let (m, n) = (builtin::builtin(names[a]).unwrap(), builtin::builtin(names[b]).unwrap());
        if m.dim() * n.dim() <= 64 {
            let t = m.tensor(&n).unwrap();
            prop_assert!(t.verify().is_ok());
            prop_assert_eq!(t.dim(), m.dim() * n.dim());
        }
        prop_assert!(m.dual().verify().is_ok());
        let dd = m.dual().dual();
        prop_assert_eq!(dd.matrices(), m.matrices());
    }

    #[test]
    fn hom_space_consists_of_homomorphisms(a in 0usize..10, b in 0usize..10) {
        let names = builtin::BUILTIN_MODULES;
        let (m, n) = (builtin::builtin(names[a]).unwrap(), builtin::builtin(names[b]).unwrap());
        for f in m.hom_space(&n).unwrap() {
            prop_assert!(m.is_homomorphism(&n, &f));
        }
    }

    #[test]
    fn hecke_closure(x in 0usize..8, y in 0usize..8, e in -2i64..3) {
        let h = hecke();
        let a = h.basis[x].element.clone();
        let b = h.algebra.mul(&h.basis[y].element, &h.algebra.term(Laurent::monomial(f4().one(), 3 * e), 0)).unwrap();
        let p = h.algebra.mul(&a, &b).unwrap();
        prop_assert!(h.algebra.is_fixed(&p));
        prop_assert!(h.algebra.coordinates(&h.basis, &p).is_ok());
    }
}

#[test]
fn regular_module_is_free() {
    let reg = GModule::regular(f4(), Arc::new(FiniteGroup::q8()));
    assert_eq!(reg.norm_matrix().rank(), 1);
    assert_eq!(reg.fixed_points().cols(), 1);
}
