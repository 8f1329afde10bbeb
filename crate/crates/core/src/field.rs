//! Arithmetic in the prime field F_p.
//!
//! Elements are plain `u64` residues in `[0, p)`; the [`PrimeField`] value
//! carries the modulus and a precomputed reducer so that every operation stays
//! exact and cheap. Moduli are restricted to 32 bits so a product of two
//! residues never overflows a `u64`.

use std::fmt;

use strength_reduce::StrengthReducedU64;

use crate::error::{Error, Result};

/// 2^31 - 1, the default modulus.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

#[derive(Clone, Copy)]
pub struct PrimeField {
    p: u64,
    reducer: StrengthReducedU64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            p,
            reducer: StrengthReducedU64::new(p),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.reducer
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.reducer
    }

    /// `a + b * c`, the elimination kernel.
    #[inline]
    pub fn mul_add(&self, a: u64, b: u64, c: u64) -> u64 {
        (a + b * c) % self.reducer
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base = self.reduce(base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if self.reduce(a) == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        let r = (x as i128).rem_euclid(self.p as i128);
        r as u64
    }

    /// Reads a decimal integer of any length (optionally signed) and reduces it.
    pub fn parse_decimal(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let (negative, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("invalid coefficient {s:?}")));
        }
        let mut acc = 0u64;
        for b in digits.bytes() {
            acc = self.mul_add((b - b'0') as u64, acc, 10);
        }
        Ok(if negative { self.neg(acc) } else { acc })
    }
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self::new(DEFAULT_PRIME).expect("default modulus is prime")
    }
}

/// Trial division; moduli are at most 32 bits so this is at most 2^16 steps.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composites_and_oversized() {
        assert_eq!(PrimeField::new(15), Err(Error::NotPrime(15)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert!(matches!(
            PrimeField::new((1 << 33) + 1),
            Err(Error::ModulusTooLarge(_))
        ));
        assert!(PrimeField::new(17).is_ok());
        assert!(PrimeField::new(DEFAULT_PRIME).is_ok());
        assert!(PrimeField::new(4_294_967_291).is_ok());
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f = PrimeField::new(17).unwrap();
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
        assert_eq!(f.inv(17), Err(Error::DivisionByZero));
    }

    #[test]
    fn fermat_line_coefficient() {
        // 2^4 = 16 = -1 in F_17
        let f = PrimeField::new(17).unwrap();
        assert_eq!(f.pow(2, 4), f.neg(1));
    }

    #[test]
    fn parses_signed_and_long_decimals() {
        let f = PrimeField::new(17).unwrap();
        assert_eq!(f.parse_decimal("-2").unwrap(), 15);
        assert_eq!(f.parse_decimal("+35").unwrap(), 1);
        // 10^30 mod 17
        assert_eq!(
            f.parse_decimal("1000000000000000000000000000000").unwrap(),
            f.pow(10, 30)
        );
        assert!(f.parse_decimal("1.5").is_err());
        assert!(f.parse_decimal("").is_err());
        assert!(f.parse_decimal("-").is_err());
    }

    proptest! {
        #[test]
        fn field_axioms(a in 0u64..DEFAULT_PRIME, b in 0u64..DEFAULT_PRIME, c in 0u64..DEFAULT_PRIME) {
            let f = PrimeField::default();
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }

        #[test]
        fn from_i64_matches_euclidean_remainder(x in any::<i64>()) {
            let f = PrimeField::new(17).unwrap();
            prop_assert_eq!(f.from_i64(x) as i64, x.rem_euclid(17));
        }
    }
}
