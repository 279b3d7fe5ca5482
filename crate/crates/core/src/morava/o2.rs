//! The maximal order O2 = Z4<S>/(S^2 - 2) truncated modulo 2^m.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::FieldElement;

use super::z4::{hensel_sqrt, inv_odd, Z4Element, MAX_PRECISION};

/// x + y*S with x, y in Z4 mod 2^m, so the element is known modulo S^(2m).
///
/// Multiplication uses S z = sigma(z) S and S^2 = 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct O2Element {
    x: Z4Element,
    y: Z4Element,
}

/// Teichmuller digits a_0, a_1, ... of a unit, each an element of Z4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeichDigits {
    pub digits: Vec<Z4Element>,
}

impl TeichDigits {
    /// The digits reduced to F4.
    pub fn residues(&self) -> Vec<FieldElement> {
        self.digits.iter().map(|d| d.residue()).collect()
    }

    /// a_0^3 = 1 and a_r^4 = a_r.
    pub fn are_teichmuller(&self) -> bool {
        self.digits.iter().enumerate().all(|(r, d)| {
            if r == 0 {
                d.pow(3) == Z4Element::one(d.precision())
            } else {
                d.is_teichmuller()
            }
        })
    }

    /// Sum of a_r S^r.
    pub fn reconstruct(&self, m: u32) -> O2Element {
        let mut acc = O2Element::zero(m);
        let mut spow = O2Element::one(m);
        let s = O2Element::s(m);
        for d in &self.digits {
            acc = acc.add(&O2Element::from_z4(d.truncate(m)).mul(&spow));
            spow = spow.mul(&s);
        }
        acc
    }
}

impl O2Element {
    pub fn new(x: Z4Element, y: Z4Element) -> Self {
        debug_assert_eq!(x.precision(), y.precision());
        O2Element { x, y }
    }

    pub fn from_z4(x: Z4Element) -> Self {
        let m = x.precision();
        O2Element {
            x,
            y: Z4Element::zero(m),
        }
    }

    pub fn zero(m: u32) -> Self {
        Self::from_z4(Z4Element::zero(m))
    }

    pub fn one(m: u32) -> Self {
        Self::from_z4(Z4Element::one(m))
    }

    /// The uniformizer S.
    pub fn s(m: u32) -> Self {
        O2Element {
            x: Z4Element::zero(m),
            y: Z4Element::one(m),
        }
    }

    pub fn omega(m: u32) -> Self {
        Self::from_z4(Z4Element::omega(m))
    }

    pub fn precision(&self) -> u32 {
        self.x.precision()
    }

    pub fn parts(&self) -> (Z4Element, Z4Element) {
        (self.x, self.y)
    }

    pub fn add(&self, o: &Self) -> Self {
        O2Element {
            x: self.x.add(&o.x),
            y: self.y.add(&o.y),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        O2Element {
            x: self.x.sub(&o.x),
            y: self.y.sub(&o.y),
        }
    }

    pub fn neg(&self) -> Self {
        O2Element {
            x: self.x.neg(),
            y: self.y.neg(),
        }
    }

    /// (x1 + y1 S)(x2 + y2 S) = x1 x2 + 2 y1 s(y2) + (x1 y2 + y1 s(x2)) S
    pub fn mul(&self, o: &Self) -> Self {
        let x = self.x.mul(&o.x).add(&self.y.mul(&o.y.sigma()).scale(2));
        let y = self.x.mul(&o.y).add(&self.y.mul(&o.x.sigma()));
        O2Element { x, y }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one(self.precision());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        self.x.is_unit()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnit(self.to_string()));
        }
        let m = self.precision();
        let one = Self::one(m);
        let two = Self::from_z4(Z4Element::integer(m, 2));
        // Newton: h <- h(2 - g h), doubling the S-adic accuracy each round.
        let mut h = Self::from_z4(self.x.inverse()?);
        for _ in 0..8 {
            if self.mul(&h) == one {
                break;
            }
            h = h.mul(&two.sub(&self.mul(&h)));
        }
        if self.mul(&h) != one || h.mul(self) != one {
            return Err(Error::Internal("O2 inverse did not converge".into()));
        }
        Ok(h)
    }

    /// g z g^-1
    pub fn conj(&self, z: &Self) -> Result<Self> {
        Ok(self.mul(z).mul(&self.inverse()?))
    }

    /// Residue class in F4 = O2/(S).
    pub fn residue(&self) -> FieldElement {
        self.x.residue()
    }

    /// Congruence modulo S^n.
    pub fn eq_mod_s(&self, o: &Self, n: u32) -> bool {
        // S^n = 2^(n/2) S^(n mod 2): x needs ceil(n/2) bits, y needs floor(n/2).
        self.x.eq_mod(&o.x, n.div_ceil(2)) && self.y.eq_mod(&o.y, n / 2)
    }

    /// Greedy Teichmuller expansion g = sum a_r S^r, n digits.
    ///
    /// Requires n <= 2m - 1 so that every digit is determined.
    pub fn teichmuller_digits(&self, n: usize) -> Result<TeichDigits> {
        if !self.is_unit() {
            return Err(Error::NonUnit(format!("{self} has zero residue")));
        }
        let m = self.precision();
        if n > 2 * m as usize - 1 {
            return Err(Error::InsufficientLength {
                needed: n,
                have: 2 * m as usize - 1,
            });
        }
        let mut digits = Vec::with_capacity(n);
        let (mut x, mut y) = (self.x, self.y);
        for _ in 0..n {
            let a = Z4Element::teichmuller(m, x.residue());
            digits.push(a);
            // g - a = g' S with g' = y + ((x - a)/2) S.
            let rest = x.sub(&a).halve();
            x = y;
            y = rest;
        }
        Ok(TeichDigits { digits })
    }

    /// The k-th digit reduced to F4; the function called alpha_k.
    pub fn alpha(&self, k: usize) -> Result<FieldElement> {
        Ok(self.teichmuller_digits(k + 1)?.digits[k].residue())
    }
}

impl fmt::Display for O2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})S", self.x, self.y)
    }
}

impl fmt::Debug for O2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod 2^{})", self.precision())
    }
}

/// The units i, j, k of Q8 inside O2^x, from
/// i = (1/3)(1 + 2w^2)(1 - aS), j = ... (1 - a w^2 S), k = ... (1 - a w S)
/// with a = (1 - 2w)/sqrt(-7) and sqrt(-7) = 5 mod 8.
pub fn q8_embed(m: u32) -> Result<(O2Element, O2Element, O2Element)> {
    if !(3..=MAX_PRECISION).contains(&m) {
        return Err(Error::InvalidField(format!(
            "precision {m} outside 3..={MAX_PRECISION}"
        )));
    }
    let root = hensel_sqrt(-7, 5, m)?;
    let root_inv = Z4Element::from_parts(m, inv_odd(root, m), 0);
    let w = Z4Element::omega(m);
    let w2 = w.mul(&w);
    let one = Z4Element::one(m);
    let a = one.sub(&w.scale(2)).mul(&root_inv);
    let third = Z4Element::from_parts(m, inv_odd(3, m), 0);
    let front = O2Element::from_z4(third.mul(&one.add(&w2.scale(2))));
    let make = |c: Z4Element| {
        let tail = O2Element::new(one, a.mul(&c).neg());
        front.mul(&tail)
    };
    Ok((make(one), make(w2), make(w)))
}

/// The eight elements of Q8 in the group ordering 1, -1, i, -i, j, -j, k, -k.
pub fn q8_elements(m: u32) -> Result<Vec<O2Element>> {
    let (i, j, k) = q8_embed(m)?;
    let one = O2Element::one(m);
    Ok(vec![one, one.neg(), i, i.neg(), j, j.neg(), k, k.neg()])
}

/// The 24 elements of G24 = Q8 x| <w> in the ordering q * w^a at 8a + q.
pub fn g24_elements(m: u32) -> Result<Vec<O2Element>> {
    let q = q8_elements(m)?;
    let w = O2Element::omega(m);
    let mut out = Vec::with_capacity(24);
    for a in 0..3 {
        let wa = w.pow(a);
        out.extend(q.iter().map(|g| g.mul(&wa)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FiniteField;

    const M: u32 = 8;

    fn z(a: i64, b: i64) -> Z4Element {
        Z4Element::new(M, a, b)
    }

    #[test]
    fn uniformizer_relations() {
        let s = O2Element::s(M);
        assert_eq!(s.mul(&s), O2Element::from_z4(z(2, 0)));
        for (a, b) in [(1, 1), (3, -2), (0, 5), (7, 7)] {
            let c = O2Element::from_z4(z(a, b));
            let sc = O2Element::from_z4(z(a, b).sigma());
            assert_eq!(s.mul(&c), sc.mul(&s));
        }
    }

    #[test]
    fn quaternion_relations() {
        let (i, j, k) = q8_embed(M).unwrap();
        let m1 = O2Element::one(M).neg();
        assert_eq!(i.mul(&i), m1);
        assert_eq!(j.mul(&j), m1);
        assert_eq!(k.mul(&k), m1);
        assert_eq!(i.mul(&j), k);
        assert_eq!(j.mul(&i), k.neg());
        assert_eq!(i.mul(&j).mul(&k.inverse().unwrap()), O2Element::one(M));
        assert_eq!(i.pow(4), O2Element::one(M));
    }

    #[test]
    fn digits_mod_s_cubed() {
        let (i, j, k) = q8_embed(M).unwrap();
        let f4 = FiniteField::f4();
        let p = |s: &str| f4.parse_element(s).unwrap();
        assert_eq!(
            i.teichmuller_digits(3).unwrap().residues(),
            vec![p("1"), p("1"), p("w")]
        );
        assert_eq!(
            j.teichmuller_digits(3).unwrap().residues(),
            vec![p("1"), p("w2"), p("w")]
        );
        assert_eq!(
            k.teichmuller_digits(3).unwrap().residues(),
            vec![p("1"), p("w"), p("w")]
        );
        // i = 1 + S + 2w mod S^3
        let approx = O2Element::new(z(1, 2), z(1, 0));
        assert!(i.eq_mod_s(&approx, 3));
        let one = O2Element::one(M).teichmuller_digits(6).unwrap();
        assert_eq!(
            one.residues(),
            vec![p("1"), p("0"), p("0"), p("0"), p("0"), p("0")]
        );
    }

    #[test]
    fn reconstruction_and_alpha() {
        for g in q8_elements(M).unwrap() {
            let d = g.teichmuller_digits(15).unwrap();
            assert!(d.are_teichmuller());
            assert!(d.reconstruct(M).eq_mod_s(&g, 15));
            assert!(g.alpha(0).unwrap().is_one());
        }
        assert!(O2Element::s(M).teichmuller_digits(2).is_err());
    }

    #[test]
    fn conjugation_fixes_residue_of_omega() {
        let w = O2Element::omega(M);
        let (i, j, k) = q8_embed(M).unwrap();
        for g in [i, j, k] {
            assert_eq!(g.conj(&w).unwrap().residue(), w.residue());
        }
        assert_eq!(w.conj(&i).unwrap(), j);
        assert_eq!(w.conj(&j).unwrap(), k);
        assert_eq!(w.conj(&k).unwrap(), i);
    }
}
