//! Arithmetic in GF(2^k) for small k.
//!
//! Elements are bit-packed polynomial residues. The field is a tiny `Copy`
//! value, so every element carries its owner and mixed-field arithmetic can
//! be rejected.

use std::fmt;

use crate::error::{Error, Result};

/// A finite field GF(2^k), k in 1..=8, given by an irreducible modulus.
///
/// The modulus is stored as a bit polynomial including the leading term,
/// e.g. `0b111` for x^2 + x + 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FiniteField {
    degree: u8,
    modulus: u16,
}

/// An element of a [`FiniteField`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FiniteField,
    bits: u8,
}

const F4_MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

fn poly_degree(p: u16) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(15 - p.leading_zeros())
    }
}

/// Remainder of `a` modulo `m` for bit polynomials.
fn poly_rem(mut a: u32, m: u32) -> u32 {
    let dm = 31 - m.leading_zeros();
    while a != 0 && 31 - a.leading_zeros() >= dm {
        let shift = (31 - a.leading_zeros()) - dm;
        a ^= m << shift;
    }
    a
}

fn clmul(a: u32, b: u32) -> u32 {
    let mut acc = 0u32;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

impl FiniteField {
    /// Builds GF(2^degree) from `modulus`, rejecting reducible moduli.
    ///
    /// On a reducible modulus the error carries the smallest nontrivial factor
    /// found by trial division.
    pub fn new(degree: u8, modulus: u16) -> Result<Self> {
        if degree == 0 || degree > 8 {
            return Err(Error::InvalidField(format!(
                "degree {degree} outside 1..=8"
            )));
        }
        if poly_degree(modulus) != Some(degree as u32) {
            return Err(Error::InvalidField(format!(
                "modulus {} does not have degree {degree}",
                poly_to_string(modulus)
            )));
        }
        // Trial division by every polynomial of degree 1..=degree/2.
        for d in 1..=(degree as u32 / 2) {
            for f in (1u32 << d)..(1u32 << (d + 1)) {
                if poly_rem(modulus as u32, f) == 0 {
                    return Err(Error::ReducibleModulus {
                        modulus: poly_to_string(modulus),
                        factor: poly_to_string(f as u16),
                    });
                }
            }
        }
        Ok(FiniteField { degree, modulus })
    }

    /// The prime field F2 (modulus x).
    pub fn f2() -> Self {
        FiniteField {
            degree: 1,
            modulus: 0b10,
        }
    }

    /// F4 = F2(w) with w^2 + w + 1 = 0; w is the class of x.
    pub fn f4() -> Self {
        FiniteField {
            degree: 2,
            modulus: 0b111,
        }
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        1usize << self.degree
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: *self,
            bits: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: *self,
            bits: 1,
        }
    }

    /// The element with the given bit pattern; high bits beyond the degree
    /// are reduced away.
    pub fn element(&self, bits: u8) -> FieldElement {
        FieldElement {
            field: *self,
            bits: poly_rem(bits as u32, self.modulus as u32) as u8,
        }
    }

    /// The primitive cube root of unity `w`; only F4 (among k <= 8 with even
    /// degree the class of x need not be a cube root) exposes it by name.
    pub fn omega(&self) -> Option<FieldElement> {
        if self.degree == 2 {
            Some(self.element(0b10))
        } else {
            None
        }
    }

    /// All elements in bit order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |b| self.element(b as u8))
    }

    /// Nonzero elements in bit order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.order()).map(move |b| self.element(b as u8))
    }

    #[inline]
    pub(crate) fn add_bits(&self, a: u8, b: u8) -> u8 {
        a ^ b
    }

    #[inline]
    pub(crate) fn mul_bits(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            return 0;
        }
        match self.degree {
            1 => 1,
            2 => F4_MUL[a as usize][b as usize],
            _ => poly_rem(clmul(a as u32, b as u32), self.modulus as u32) as u8,
        }
    }

    #[cfg(test)]
    fn mul_bits_generic(&self, a: u8, b: u8) -> u8 {
        poly_rem(clmul(a as u32, b as u32), self.modulus as u32) as u8
    }

    pub(crate) fn inv_bits(&self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        // a^(q-2) by square and multiply.
        let mut e = self.order() - 2;
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_bits(acc, base);
            }
            base = self.mul_bits(base, base);
            e >>= 1;
        }
        Some(acc)
    }

    /// Parses an element in the textual notation used by file formats.
    ///
    /// F4 accepts `0, 1, w, w2`; every field accepts `0`, `1`, and `0x..` bit
    /// patterns.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let t = s.trim();
        match t {
            "0" => return Ok(self.zero()),
            "1" => return Ok(self.one()),
            _ => {}
        }
        if self.degree == 2 {
            match t {
                "w" => return Ok(self.element(0b10)),
                "w2" => return Ok(self.element(0b11)),
                _ => {}
            }
        }
        if let Some(hex) = t.strip_prefix("0x") {
            if let Ok(v) = u8::from_str_radix(hex, 16) {
                if (v as usize) < self.order() {
                    return Ok(self.element(v));
                }
            }
        }
        Err(Error::Parse(format!(
            "`{t}` is not an element of GF(2^{})",
            self.degree
        )))
    }

    /// Short name used on the command line: `f2`, `f4`, or `gf2^k`.
    pub fn name(&self) -> String {
        match self.degree {
            1 => "f2".to_string(),
            2 => "f4".to_string(),
            k => format!("gf2^{k}:{}", poly_to_string(self.modulus)),
        }
    }

    /// Inverse of [`FiniteField::name`] for the two working fields.
    pub fn from_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "f2" | "gf2" => Ok(Self::f2()),
            "f4" | "gf4" => Ok(Self::f4()),
            other => Err(Error::UnknownName {
                kind: "field",
                name: other.to_string(),
                valid: vec!["f2".into(), "f4".into()],
            }),
        }
    }
}

fn poly_to_string(p: u16) -> String {
    if p == 0 {
        return "0".into();
    }
    let mut parts = Vec::new();
    for e in (0..16).rev() {
        if p >> e & 1 == 1 {
            parts.push(match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            });
        }
    }
    parts.join("+")
}

impl FieldElement {
    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        Ok(*self + *rhs)
    }

    pub fn checked_mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        Ok(*self * *rhs)
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        let inv = rhs.inverse()?;
        Ok(*self * inv)
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        self.field
            .inv_bits(self.bits)
            .map(|bits| FieldElement {
                field: self.field,
                bits,
            })
            .ok_or(Error::DivisionByZero)
    }

    /// The Frobenius automorphism a -> a^2.
    pub fn frobenius(&self) -> FieldElement {
        *self * *self
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = *self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        debug_assert_eq!(self.field, rhs.field);
        FieldElement {
            field: self.field,
            bits: self.field.add_bits(self.bits, rhs.bits),
        }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + rhs
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> FieldElement {
        self
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn mul(self, rhs: FieldElement) -> FieldElement {
        debug_assert_eq!(self.field, rhs.field);
        FieldElement {
            field: self.field,
            bits: self.field.mul_bits(self.bits, rhs.bits),
        }
    }
}

impl std::ops::AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.field.degree, self.bits) {
            (_, 0) => write!(f, "0"),
            (_, 1) => write!(f, "1"),
            (2, 2) => write!(f, "w"),
            (2, 3) => write!(f, "w2"),
            (_, b) => write!(f, "0x{b:x}"),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4_all() -> Vec<FieldElement> {
        FiniteField::f4().elements().collect()
    }

    #[test]
    fn make_field_examples() {
        let f2 = FiniteField::new(1, 0b10).unwrap();
        assert_eq!(f2.order(), 2);
        let f4 = FiniteField::new(2, 0b111).unwrap();
        let w = f4.omega().unwrap();
        assert!((w * w + w + f4.one()).is_zero());
        match FiniteField::new(2, 0b101) {
            Err(Error::ReducibleModulus { factor, .. }) => assert_eq!(factor, "x+1"),
            other => panic!("expected reducible modulus, got {other:?}"),
        }
        assert!(FiniteField::new(3, 0b1011).is_ok());
        assert!(FiniteField::new(8, 0x11b).is_ok());
        assert!(FiniteField::new(8, 0x11c).is_err());
    }

    #[test]
    fn omega_identities() {
        let f4 = FiniteField::f4();
        let w = f4.omega().unwrap();
        let w2 = w * w;
        assert_eq!(w + w2, f4.one());
        assert_eq!(w * w2, f4.one());
        assert!(matches!(
            w.checked_div(&f4.zero()),
            Err(Error::DivisionByZero)
        ));
        assert_eq!(w.frobenius(), w2);
        assert_eq!(f4.one().frobenius(), f4.one());
        assert_eq!(w.frobenius().frobenius(), w);
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = FiniteField::f4().one();
        let b = FiniteField::f2().one();
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch)));
    }

    #[test]
    fn f4_field_laws_exhaustive() {
        let all = f4_all();
        for &a in &all {
            for &b in &all {
                assert_eq!((a + b).frobenius(), a.frobenius() + b.frobenius());
                assert_eq!(a * b, b * a);
                assert_eq!(a + b, b + a);
                for &c in &all {
                    assert_eq!((a * b) * c, a * (b * c));
                    assert_eq!((a + b) + c, a + (b + c));
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
            if !a.is_zero() {
                assert_eq!(a * a.inverse().unwrap(), a.field().one());
            }
        }
    }

    #[test]
    fn f4_units_cyclic_generated_by_omega() {
        let f4 = FiniteField::f4();
        let w = f4.omega().unwrap();
        let powers: Vec<_> = (0..3).map(|e| w.pow(e)).collect();
        let mut units: Vec<_> = f4.units().collect();
        let mut p = powers.clone();
        p.sort_by_key(|x| x.bits());
        units.sort_by_key(|x| x.bits());
        assert_eq!(p, units);
        assert_eq!(w.pow(3), f4.one());
    }

    #[test]
    fn notation_round_trip() {
        let f4 = FiniteField::f4();
        for a in f4.elements() {
            assert_eq!(f4.parse_element(&a.to_string()).unwrap(), a);
        }
        assert!(f4.parse_element("w3").is_err());
    }

    #[test]
    fn f4_table_matches_carryless_product() {
        let f4 = FiniteField::f4();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(f4.mul_bits(a, b), f4.mul_bits_generic(a, b));
            }
        }
    }

    #[test]
    fn gf8_inverses() {
        let f8 = FiniteField::new(3, 0b1011).unwrap();
        for a in f8.units() {
            assert!((a * a.inverse().unwrap()).is_one());
        }
    }
}
