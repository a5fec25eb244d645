//! Closed intervals of `f64` with outward rounding.
//!
//! Every arithmetic result is computed in round-to-nearest and then pushed
//! one ulp outward, which contains the exact result because the nearest
//! rounding error is at most half an ulp. Transcendental functions (`ln`,
//! `exp`, `powf`) are widened by [`TRANSCENDENTAL_ULPS`] ulps on each side.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Guard band applied to libm results.
pub const TRANSCENDENTAL_ULPS: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn down(x: f64) -> f64 {
    if x == 0.0 {
        -f64::MIN_POSITIVE * f64::EPSILON
    } else {
        x.next_down()
    }
}

fn up(x: f64) -> f64 {
    if x == 0.0 {
        f64::MIN_POSITIVE * f64::EPSILON
    } else {
        x.next_up()
    }
}

fn down_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = down(x);
    }
    x
}

fn up_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = up(x);
    }
    x
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Exactly representable point.
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        let x = n as f64;
        if x as i64 == n && x.abs() < 9.0e15 {
            Interval::point(x)
        } else {
            Interval::new(down(x), up(x))
        }
    }

    /// Tight enclosure of a big integer.
    pub fn from_bigint(n: &BigInt) -> Self {
        match n.to_f64() {
            Some(x) if x.is_finite() => {
                if x.abs() < 9.0e15 {
                    Interval::point(x)
                } else {
                    Interval::new(down(x), up(x))
                }
            }
            _ => {
                if n.is_negative() {
                    Interval::new(f64::NEG_INFINITY, -f64::MAX)
                } else {
                    Interval::new(f64::MAX, f64::INFINITY)
                }
            }
        }
    }

    /// Enclosure of an exact rational.
    pub fn from_rational(r: &BigRational) -> Self {
        if r.is_zero() {
            return Interval::point(0.0);
        }
        let n = Interval::from_bigint(r.numer());
        let d = Interval::from_bigint(r.denom());
        if n.lo.is_finite() && n.hi.is_finite() && d.lo.is_finite() && d.hi.is_finite() {
            n / d
        } else {
            // huge numerator or denominator: go through logarithms of magnitudes
            let lm = ln_abs_bigint(r.numer()) - ln_abs_bigint(r.denom());
            let mag = lm.exp();
            if r.is_negative() {
                -mag
            } else {
                mag
            }
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    /// Certainly strictly below `other`.
    pub fn lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn recip(&self) -> Interval {
        assert!(
            self.lo > 0.0 || self.hi < 0.0,
            "reciprocal of interval containing zero"
        );
        Interval::new(down(1.0 / self.hi), up(1.0 / self.lo))
    }

    /// Natural log; requires a positive interval.
    pub fn ln(&self) -> Interval {
        assert!(self.lo > 0.0, "ln of non-positive interval");
        Interval::new(
            down_n(self.lo.ln(), TRANSCENDENTAL_ULPS),
            up_n(self.hi.ln(), TRANSCENDENTAL_ULPS),
        )
    }

    pub fn exp(&self) -> Interval {
        let lo = down_n(self.lo.exp(), TRANSCENDENTAL_ULPS).max(0.0);
        Interval::new(lo, up_n(self.hi.exp(), TRANSCENDENTAL_ULPS))
    }

    /// `self^s` for a positive base and an exponent interval.
    pub fn pow(&self, s: &Interval) -> Interval {
        (self.ln() * *s).exp()
    }

    pub fn sqrt(&self) -> Interval {
        assert!(self.lo >= 0.0, "sqrt of negative interval");
        // sqrt is correctly rounded in IEEE 754
        Interval::new(down(self.lo.sqrt()).max(0.0), up(self.hi.sqrt()))
    }
}

/// Enclosure of `ln |n|` for a nonzero big integer, valid far beyond `f64` range.
pub fn ln_abs_bigint(n: &BigInt) -> Interval {
    let mag = n.magnitude();
    let bits = mag.bits();
    if bits <= 52 {
        return Interval::from_int(mag.to_u64().unwrap() as i64).ln();
    }
    let shift = bits - 52;
    let top = (mag >> shift).to_u64().unwrap() as f64;
    // top * 2^shift <= |n| < (top + 1) * 2^shift
    let base = Interval::new(top, top + 1.0).ln();
    let ln2 = Interval::new(down(std::f64::consts::LN_2), up(std::f64::consts::LN_2));
    base + ln2 * Interval::from_int(shift as i64)
}

/// Serialized as `[lo, hi]`.
impl serde::Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval::new(down(self.lo + o.lo), up(self.hi + o.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval::new(down(self.lo - o.hi), up(self.hi - o.lo))
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let c = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(down(lo), up(hi))
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, o: Interval) -> Interval {
        assert!(o.lo > 0.0 || o.hi < 0.0, "division by interval containing zero");
        let c = [
            self.lo / o.lo,
            self.lo / o.hi,
            self.hi / o.lo,
            self.hi / o.hi,
        ];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(down(lo), up(hi))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12}, {:.12}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_is_enclosed() {
        let t = Interval::point(1.0) / Interval::point(3.0);
        assert!(t.lo < t.hi);
        let r = BigRational::new(1.into(), 3.into());
        let e = Interval::from_rational(&r);
        assert!(e.lo <= t.hi && t.lo <= e.hi);
    }

    #[test]
    fn pow_brackets_libm() {
        let x = Interval::point(0.5);
        let s = Interval::point(0.49);
        let p = x.pow(&s);
        assert!(p.contains(0.5f64.powf(0.49)));
        assert!(p.width() < 1e-14);
    }

    #[test]
    fn ln_of_huge_integer() {
        let n: BigInt = BigInt::from(3u32).pow(700);
        let l = ln_abs_bigint(&n);
        let exact = 700.0 * 3f64.ln();
        assert!(l.contains(exact), "{l} vs {exact}");
        assert!(l.width() < 1e-9);
    }
}
