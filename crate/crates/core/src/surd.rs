//! Elements of a real quadratic field, `(x + y*sqrt(d)) / z`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::radical::RadicalSum;

const TRIAL_LIMIT: u64 = 1_000_000;

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Split `n > 0` as `k^2 * m` with `m` square-free. Exact whenever
/// `n <= 10^18`; above that, primes beyond the trial bound whose square
/// divides the cofactor may be missed unless the cofactor is a square.
pub fn square_free_part(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "square_free_part of non-positive");
    let mut m = n.clone();
    let mut k = BigInt::one();
    let mut free = BigInt::one();
    let limit = m.cbrt().to_u64().unwrap_or(u64::MAX).min(TRIAL_LIMIT);
    let mut p: u64 = 2;
    while p <= limit {
        let bp = BigInt::from(p);
        let mut e = 0u32;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        k *= bp.pow(e / 2);
        if e % 2 == 1 {
            free *= &bp;
        }
        // every prime factor left in m exceeds p
        if &bp * &bp * &bp > m {
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if is_square(&m) {
        k *= m.sqrt();
    } else {
        free *= m;
    }
    (k, free)
}

/// Canonical `(x + y*sqrt(d)) / z` with `z > 0`, `d` square-free,
/// `gcd(x, y, z) = 1`. Rationals have `y = 0, d = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadSurd {
    #[serde(serialize_with = "ser_big")]
    pub x: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub y: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub z: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub d: BigInt,
}

pub(crate) fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl QuadSurd {
    /// Builds and canonicalizes `(x + y*sqrt(d)) / z` for `d >= 0`, `z != 0`.
    pub fn new(x: BigInt, y: BigInt, z: BigInt, d: BigInt) -> Self {
        assert!(!z.is_zero(), "zero denominator");
        assert!(!d.is_negative(), "negative radicand");
        let (mut x, mut y, mut z, mut d) = (x, y, z, d);
        if d.is_zero() || y.is_zero() {
            y = BigInt::zero();
            d = BigInt::one();
        } else {
            let (k, m) = square_free_part(&d);
            y *= k;
            d = m;
            if d.is_one() {
                x += &y;
                y = BigInt::zero();
            }
        }
        if z.is_negative() {
            x = -x;
            y = -y;
            z = -z;
        }
        let g = x.gcd(&y).gcd(&z);
        if !g.is_one() {
            x /= &g;
            y /= &g;
            z /= &g;
        }
        QuadSurd { x, y, z, d }
    }

    /// Like `new` but trusts that `d` is already square-free.
    pub(crate) fn reduced(x: BigInt, y: BigInt, z: BigInt, d: BigInt) -> Self {
        let (mut x, mut y, mut z) = (x, y, z);
        let d = if y.is_zero() { BigInt::one() } else { d };
        if z.is_negative() {
            x = -x;
            y = -y;
            z = -z;
        }
        let g = x.gcd(&y).gcd(&z);
        if !g.is_one() {
            x /= &g;
            y /= &g;
            z /= &g;
        }
        QuadSurd { x, y, z, d }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        QuadSurd::new(r.numer().clone(), BigInt::zero(), r.denom().clone(), BigInt::one())
    }

    pub fn from_int(n: i64) -> Self {
        QuadSurd::from_rational(&BigRational::from_integer(n.into()))
    }

    /// `sqrt(n)` for integer `n >= 0`.
    pub fn sqrt_int(n: i64) -> Self {
        QuadSurd::new(BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::from(n))
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn rational_part(&self) -> BigRational {
        BigRational::new(self.x.clone(), self.z.clone())
    }

    pub fn irrational_coeff(&self) -> BigRational {
        BigRational::new(self.y.clone(), self.z.clone())
    }

    pub fn to_radical(&self) -> RadicalSum {
        RadicalSum::from_quad(self)
    }

    fn field(&self, o: &QuadSurd) -> BigInt {
        match (self.is_rational(), o.is_rational()) {
            (true, _) => o.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, o.d, "surds from different fields");
                self.d.clone()
            }
        }
    }

    pub fn add(&self, o: &QuadSurd) -> QuadSurd {
        let d = self.field(o);
        QuadSurd::reduced(
            &self.x * &o.z + &o.x * &self.z,
            &self.y * &o.z + &o.y * &self.z,
            &self.z * &o.z,
            d,
        )
    }

    pub fn neg(&self) -> QuadSurd {
        QuadSurd {
            x: -&self.x,
            y: -&self.y,
            z: self.z.clone(),
            d: self.d.clone(),
        }
    }

    pub fn sub(&self, o: &QuadSurd) -> QuadSurd {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &QuadSurd) -> QuadSurd {
        let d = self.field(o);
        QuadSurd::reduced(
            &self.x * &o.x + &self.y * &o.y * &d,
            &self.x * &o.y + &self.y * &o.x,
            &self.z * &o.z,
            d,
        )
    }

    /// Galois conjugate `(x - y*sqrt(d)) / z`.
    pub fn conj(&self) -> QuadSurd {
        QuadSurd {
            x: self.x.clone(),
            y: -&self.y,
            z: self.z.clone(),
            d: self.d.clone(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> QuadSurd {
        // 1/((x + y r)/z) = z (x - y r) / (x^2 - y^2 d)
        let norm = &self.x * &self.x - &self.y * &self.y * &self.d;
        assert!(!norm.is_zero(), "reciprocal of zero");
        QuadSurd::reduced(&self.z * &self.x, -(&self.z * &self.y), norm, self.d.clone())
    }

    pub fn div(&self, o: &QuadSurd) -> QuadSurd {
        self.mul(&o.recip())
    }

    pub fn add_int(&self, n: i64) -> QuadSurd {
        self.add(&QuadSurd::from_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        // sign of x + y sqrt(d), z > 0
        let sx = self.x.sign();
        let sy = self.y.sign();
        use num_bigint::Sign::*;
        match (sx, sy) {
            (NoSign, NoSign) => Ordering::Equal,
            (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
            (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
            _ => {
                // opposite signs: compare x^2 with y^2 d
                let a = &self.x * &self.x;
                let b = &self.y * &self.y * &self.d;
                let xs_wins = a.cmp(&b);
                if sx == Plus {
                    xs_wins
                } else {
                    xs_wins.reverse()
                }
            }
        }
    }

    pub fn cmp_exact(&self, o: &QuadSurd) -> Ordering {
        self.sub(o).signum()
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.d.to_f64().unwrap_or(f64::INFINITY).sqrt();
        (self.x.to_f64().unwrap() + self.y.to_f64().unwrap() * r) / self.z.to_f64().unwrap()
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            if self.z.is_one() {
                return write!(f, "{}", self.x);
            }
            return write!(f, "{}/{}", self.x, self.z);
        }
        let rad = if self.y.is_one() {
            format!("√{}", self.d)
        } else if self.y == -BigInt::one() {
            format!("-√{}", self.d)
        } else {
            format!("{}√{}", self.y, self.d)
        };
        let num = if self.x.is_zero() {
            rad
        } else if self.y.is_negative() {
            format!("{} - {}", self.x, rad.trim_start_matches('-'))
        } else {
            format!("{} + {}", self.x, rad)
        };
        if self.z.is_one() {
            write!(f, "{}", num)
        } else if self.x.is_zero() {
            write!(f, "{}/{}", num, self.z)
        } else {
            write!(f, "({})/{}", num, self.z)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let s = QuadSurd::new(2.into(), 2.into(), 4.into(), 12.into());
        // (2 + 2*sqrt(12))/4 = (1 + 2 sqrt 3)/2
        assert_eq!(s, QuadSurd::new(1.into(), 2.into(), 2.into(), 3.into()));
        assert_eq!(s.to_string(), "(1 + 2√3)/2");
        let r = QuadSurd::new(3.into(), 1.into(), (-1).into(), 49.into());
        assert_eq!(r, QuadSurd::from_int(-10));
    }

    #[test]
    fn field_ops() {
        let phi = QuadSurd::new((-1).into(), 1.into(), 2.into(), 5.into());
        // phi^2 + phi - 1 = 0
        let z = phi.mul(&phi).add(&phi).add_int(-1);
        assert!(z.is_zero());
        assert_eq!(phi.recip(), phi.add_int(1));
        assert_eq!(phi.signum(), Ordering::Greater);
        assert_eq!(phi.add_int(-1).signum(), Ordering::Less);
    }

    #[test]
    fn square_free_parts() {
        for (n, k, m) in [(12, 2, 3), (72, 6, 2), (49, 7, 1), (221, 1, 221), (1, 1, 1)] {
            assert_eq!(square_free_part(&BigInt::from(n)), (BigInt::from(k), BigInt::from(m)));
        }
        let big = BigInt::from(1_000_003u64) * BigInt::from(1_000_003u64) * 7;
        assert_eq!(square_free_part(&big), (BigInt::from(1_000_003u64), BigInt::from(7)));
    }
}
