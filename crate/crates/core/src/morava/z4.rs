//! Z4 = W(F4) truncated to (Z/2^m)[w], w^2 + w + 1 = 0.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FiniteField};

/// Largest supported precision; products stay inside `u128`.
pub const MAX_PRECISION: u32 = 60;

/// a + b*w modulo 2^m.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Z4Element {
    m: u32,
    a: u64,
    b: u64,
}

#[inline]
fn mask(m: u32) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Inverse of an odd integer modulo 2^m by Newton iteration.
pub fn inv_odd(x: u64, m: u32) -> u64 {
    debug_assert!(x & 1 == 1);
    let mut y = x; // correct to 3 bits for odd x
    for _ in 0..6 {
        y = y.wrapping_mul(2u64.wrapping_sub(x.wrapping_mul(y)));
    }
    y & mask(m)
}

/// Square root of `target` (an integer congruent to 1 mod 8) in Z2, modulo
/// 2^m, normalized to be congruent to `seed` mod 8.
///
/// The root is lifted one bit at a time to precision m+1 and then reduced, so
/// the answer is the residue of the genuine 2-adic root.
pub fn hensel_sqrt(target: i64, seed: u64, m: u32) -> Result<u64> {
    if !(3..=MAX_PRECISION).contains(&m) {
        return Err(Error::InvalidField(format!(
            "precision {m} outside 3..={MAX_PRECISION}"
        )));
    }
    let c = target as i128;
    if c.rem_euclid(8) != 1 {
        return Err(Error::NonUnit(format!("{target} is not a 2-adic square")));
    }
    let modp = |k: u32| 1i128 << k;
    let mut s = (seed % 8) as i128;
    if (s * s - c).rem_euclid(8) != 0 {
        return Err(Error::NonUnit(format!(
            "seed {seed} is not a root of {target} mod 8"
        )));
    }
    // s^2 = c mod 2^k determines the root mod 2^(k-1).
    for k in 3..=m + 1 {
        if (s * s - c).rem_euclid(modp(k + 1)) != 0 {
            s += modp(k - 1);
        }
        s = s.rem_euclid(modp(k + 1));
    }
    Ok((s.rem_euclid(modp(m))) as u64)
}

impl Z4Element {
    pub fn new(m: u32, a: i64, b: i64) -> Self {
        let mk = mask(m);
        Z4Element {
            m,
            a: (a as u64) & mk,
            b: (b as u64) & mk,
        }
    }

    pub fn from_parts(m: u32, a: u64, b: u64) -> Self {
        let mk = mask(m);
        Z4Element {
            m,
            a: a & mk,
            b: b & mk,
        }
    }

    pub fn zero(m: u32) -> Self {
        Self::new(m, 0, 0)
    }

    pub fn one(m: u32) -> Self {
        Self::new(m, 1, 0)
    }

    pub fn omega(m: u32) -> Self {
        Self::new(m, 0, 1)
    }

    pub fn integer(m: u32, n: i64) -> Self {
        Self::new(m, n, 0)
    }

    pub fn precision(&self) -> u32 {
        self.m
    }

    pub fn parts(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Units are the elements with nonzero residue in F4.
    pub fn is_unit(&self) -> bool {
        (self.a | self.b) & 1 == 1
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_parts(self.m, self.a.wrapping_add(o.a), self.b.wrapping_add(o.b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_parts(self.m, self.a.wrapping_sub(o.a), self.b.wrapping_sub(o.b))
    }

    pub fn neg(&self) -> Self {
        Self::from_parts(self.m, self.a.wrapping_neg(), self.b.wrapping_neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        // (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd)w
        let ac = self.a.wrapping_mul(o.a);
        let bd = self.b.wrapping_mul(o.b);
        let ad = self.a.wrapping_mul(o.b);
        let bc = self.b.wrapping_mul(o.a);
        Self::from_parts(
            self.m,
            ac.wrapping_sub(bd),
            ad.wrapping_add(bc).wrapping_sub(bd),
        )
    }

    pub fn scale(&self, n: i64) -> Self {
        self.mul(&Self::integer(self.m, n))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one(self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius lift: a + bw -> (a - b) - bw.
    pub fn sigma(&self) -> Self {
        Self::from_parts(self.m, self.a.wrapping_sub(self.b), self.b.wrapping_neg())
    }

    /// Norm z * sigma(z) = a^2 - ab + b^2, an integer.
    pub fn norm(&self) -> u64 {
        let (a, b) = (self.a, self.b);
        a.wrapping_mul(a)
            .wrapping_sub(a.wrapping_mul(b))
            .wrapping_add(b.wrapping_mul(b))
            & mask(self.m)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnit(self.to_string()));
        }
        let n_inv = inv_odd(self.norm(), self.m);
        Ok(self.sigma().mul(&Self::from_parts(self.m, n_inv, 0)))
    }

    /// Whether 2 divides the element; then `halve` is exact up to the lost
    /// top bit.
    pub fn is_even(&self) -> bool {
        (self.a | self.b) & 1 == 0
    }

    /// Division by 2 of an even element. The result is only meaningful
    /// modulo 2^(m-1).
    pub fn halve(&self) -> Self {
        debug_assert!(self.is_even());
        Self::from_parts(self.m, self.a >> 1, self.b >> 1)
    }

    /// Multiplication by 2^e.
    pub fn shl(&self, e: u32) -> Self {
        if e >= 64 {
            return Self::zero(self.m);
        }
        Self::from_parts(self.m, self.a << e, self.b << e)
    }

    /// Reduction to the residue field F4.
    pub fn residue(&self) -> FieldElement {
        let f4 = FiniteField::f4();
        f4.element(((self.a & 1) | ((self.b & 1) << 1)) as u8)
    }

    /// The Teichmuller representative of a residue: 0, 1, w, w^2 = -1 - w.
    pub fn teichmuller(m: u32, r: FieldElement) -> Self {
        match r.bits() {
            0 => Self::zero(m),
            1 => Self::one(m),
            2 => Self::omega(m),
            _ => Self::new(m, -1, -1),
        }
    }

    pub fn is_teichmuller(&self) -> bool {
        self.pow(4) == *self
    }

    /// Reduces to a lower precision.
    pub fn truncate(&self, m: u32) -> Self {
        Self::from_parts(m.min(self.m), self.a, self.b)
    }

    /// Congruence modulo 2^k.
    pub fn eq_mod(&self, o: &Self, k: u32) -> bool {
        let mk = mask(k.min(self.m).min(o.m));
        (self.a ^ o.a) & mk == 0 && (self.b ^ o.b) & mk == 0
    }
}

fn signed(x: u64, m: u32) -> i128 {
    let half = 1u128 << (m - 1);
    if (x as u128) >= half {
        x as i128 - (1i128 << m)
    } else {
        x as i128
    }
}

impl fmt::Display for Z4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = signed(self.a, self.m);
        let b = signed(self.b, self.m);
        match (a, b) {
            (_, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "w"),
            (0, -1) => write!(f, "-w"),
            (0, _) => write!(f, "{b}w"),
            (_, 1) => write!(f, "{a}+w"),
            (_, -1) => write!(f, "{a}-w"),
            (_, b) if b < 0 => write!(f, "{a}{b}w"),
            _ => write!(f, "{a}+{b}w"),
        }
    }
}

impl fmt::Debug for Z4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod 2^{})", self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_minus_seven() {
        assert_eq!(hensel_sqrt(-7, 5, 3).unwrap(), 5);
        let s = hensel_sqrt(-7, 5, 8).unwrap();
        assert_eq!((s * s + 7) % 256, 0);
        assert_eq!(s % 8, 5);
        // Both 5 and 13 square to -7 mod 16; the 2-adic root is 5 mod 16.
        assert_eq!(hensel_sqrt(-7, 5, 4).unwrap(), 5);
        assert_eq!(hensel_sqrt(-7, 5, 30).unwrap() % 16, 5);
        for m in 3..40 {
            let s = hensel_sqrt(-7, 5, m).unwrap() as u128;
            assert_eq!((s * s + 7) % (1u128 << m), 0, "m = {m}");
            let t = hensel_sqrt(-7, 5, m + 1).unwrap() as u128;
            assert_eq!(t % (1u128 << m), s, "roots are compatible at m = {m}");
        }
    }

    #[test]
    fn frobenius_lift() {
        let m = 8;
        let w = Z4Element::omega(m);
        assert_eq!(
            w.mul(&w).add(&w).add(&Z4Element::one(m)),
            Z4Element::zero(m)
        );
        for a in -5..5 {
            for b in -5..5 {
                let z = Z4Element::new(m, a, b);
                assert_eq!(z.sigma().sigma(), z);
                assert_eq!(z.sigma().residue(), z.residue().frobenius());
                if z.is_unit() {
                    assert_eq!(z.mul(&z.inverse().unwrap()), Z4Element::one(m));
                }
            }
        }
    }

    #[test]
    fn teichmuller_lifts() {
        let f4 = FiniteField::f4();
        for r in f4.elements() {
            let t = Z4Element::teichmuller(8, r);
            assert!(t.is_teichmuller());
            assert_eq!(t.residue(), r);
        }
        assert_eq!(Z4Element::omega(8).pow(3), Z4Element::one(8));
    }

    #[test]
    fn inverse_of_three() {
        let t = inv_odd(3, 8);
        assert_eq!(t * 3 % 256, 1);
    }
}
