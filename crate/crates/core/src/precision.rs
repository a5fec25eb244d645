//! Global working precision and fixed-point enclosures.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::interval::Interval;

pub const DEFAULT_PRECISION_BITS: u32 = 128;
/// Sign decisions give up (and report a tie) beyond this many bits.
pub const MAX_PRECISION_BITS: u32 = 1 << 14;

static PRECISION: OnceLock<u32> = OnceLock::new();

/// Fix the working precision. Only the first call has an effect; returns
/// whether this call set it.
pub fn set_precision(bits: u32) -> bool {
    PRECISION.set(bits.clamp(32, MAX_PRECISION_BITS)).is_ok()
}

pub fn precision() -> u32 {
    *PRECISION.get().unwrap_or(&DEFAULT_PRECISION_BITS)
}

/// Closed interval `[lo, hi] / 2^bits` with integer endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

pub(crate) fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

pub(crate) fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Enclosure {
    pub fn zero(bits: u32) -> Self {
        Enclosure {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            bits,
        }
    }

    pub fn from_rational(r: &BigRational, bits: u32) -> Self {
        let n = r.numer() << bits as usize;
        Enclosure {
            lo: floor_div(&n, r.denom()),
            hi: ceil_div(&n, r.denom()),
            bits,
        }
    }

    /// Enclosure of `c * sqrt(d)` for `d >= 0`.
    pub fn scaled_sqrt(c: &BigRational, d: &BigInt, bits: u32) -> Self {
        let s = (d << (2 * bits as usize)).sqrt();
        let s1 = &s + 1u32;
        let (a, b) = if c.is_negative() { (&s1, &s) } else { (&s, &s1) };
        let exact = &s * &s == (d << (2 * bits as usize));
        let (a, b) = if exact { (&s, &s) } else { (a, b) };
        Enclosure {
            lo: floor_div(&(c.numer() * a), c.denom()),
            hi: ceil_div(&(c.numer() * b), c.denom()),
            bits,
        }
    }

    pub fn add(&self, o: &Enclosure) -> Enclosure {
        assert_eq!(self.bits, o.bits);
        Enclosure {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            bits: self.bits,
        }
    }

    /// `Some(ordering vs 0)` when decided.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.bits as usize)
    }

    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.bits as usize)
    }

    /// Outward-rounded `f64` interval.
    pub fn to_interval(&self) -> Interval {
        // keep 60 significant bits so the f64 conversion is the only other rounding
        let scale = |x: &BigInt, up: bool| -> f64 {
            let shift = (x.bits() as i64 - 60).max(0) as usize;
            let top = if up { -((-x) >> shift) } else { x >> shift };
            let e = shift as i64 - self.bits as i64;
            top.to_f64().unwrap() * 2f64.powi(e as i32)
        };
        let lo = scale(&self.lo, false);
        let hi = scale(&self.hi, true);
        Interval::new(lo.next_down(), hi.next_up())
    }

    /// The first `places` decimals after truncation, if both endpoints agree.
    pub fn truncated_decimal(&self, places: usize) -> Option<String> {
        let ten = BigInt::from(10u32).pow(places as u32);
        let den = BigInt::one() << self.bits as usize;
        let a = floor_div(&(&self.lo * &ten), &den);
        let b = floor_div(&(&self.hi * &ten), &den);
        if a != b || a.is_negative() {
            return None;
        }
        let (int, frac) = a.div_rem(&ten);
        Some(format!("{}.{:0>width$}", int, frac, width = places))
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_interval())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_digits() {
        let e = Enclosure::scaled_sqrt(&BigRational::one(), &BigInt::from(2), 128);
        assert_eq!(e.truncated_decimal(20).unwrap(), "1.41421356237309504880");
        assert!(e.to_interval().contains(std::f64::consts::SQRT_2));
    }

    #[test]
    fn perfect_square_is_exact() {
        let e = Enclosure::scaled_sqrt(&BigRational::from_integer((-3).into()), &BigInt::from(49), 64);
        assert_eq!(e.lo, e.hi);
        assert_eq!(e.sign(), Some(Ordering::Less));
    }

    #[test]
    fn rational_enclosure_brackets() {
        let r = BigRational::new((-1).into(), 3.into());
        let e = Enclosure::from_rational(&r, 40);
        assert!(e.lo_rational() <= r && r <= e.hi_rational());
    }
}
