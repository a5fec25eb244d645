//! Finite sums `Σ c_i * sqrt(d_i)` with rational coefficients and distinct
//! square-free radicands. Square roots of distinct square-free integers are
//! linearly independent over the rationals, so the canonical map is zero
//! iff the number is zero. Signs are decided by refining fixed-point
//! enclosures until they exclude zero.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::interval::Interval;
use crate::precision::{precision, Enclosure, MAX_PRECISION_BITS};
use crate::surd::{square_free_part, QuadSurd};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RadicalSum {
    /// radicand (1 for the rational part) -> nonzero coefficient
    terms: BTreeMap<BigInt, BigRational>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        RadicalSum::default()
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut s = RadicalSum::zero();
        s.push(BigInt::one(), r);
        s
    }

    pub fn from_int(n: i64) -> Self {
        RadicalSum::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_quad(q: &QuadSurd) -> Self {
        let mut s = RadicalSum::from_rational(q.rational_part());
        s.push(q.d.clone(), q.irrational_coeff());
        s
    }

    fn push(&mut self, d: BigInt, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(d.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &BigRational)> {
        self.terms.iter()
    }

    /// The value as a single quadratic surd, if it lives in one field.
    pub fn as_quad(&self) -> Option<QuadSurd> {
        let irr: Vec<_> = self.terms.iter().filter(|(d, _)| !d.is_one()).collect();
        let rat = self
            .terms
            .get(&BigInt::one())
            .cloned()
            .unwrap_or_else(BigRational::zero);
        match irr.len() {
            0 => Some(QuadSurd::from_rational(&rat)),
            1 => {
                let (d, c) = irr[0];
                let z = rat.denom().lcm(c.denom());
                let x = rat.numer() * (&z / rat.denom());
                let y = c.numer() * (&z / c.denom());
                Some(QuadSurd::reduced(x, y, z, d.clone()))
            }
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&BigInt::one()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, o: &RadicalSum) -> RadicalSum {
        let mut s = self.clone();
        for (d, c) in &o.terms {
            s.push(d.clone(), c.clone());
        }
        s
    }

    pub fn neg(&self) -> RadicalSum {
        RadicalSum {
            terms: self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &RadicalSum) -> RadicalSum {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &BigRational) -> RadicalSum {
        if r.is_zero() {
            return RadicalSum::zero();
        }
        RadicalSum {
            terms: self.terms.iter().map(|(d, c)| (d.clone(), c * r)).collect(),
        }
    }

    pub fn mul(&self, o: &RadicalSum) -> RadicalSum {
        let mut s = RadicalSum::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &o.terms {
                if d1.is_one() || d2.is_one() {
                    s.push(if d1.is_one() { d2.clone() } else { d1.clone() }, c1 * c2);
                    continue;
                }
                // sqrt(d1 d2) = g sqrt((d1/g)(d2/g)), g = gcd
                let g = d1.gcd(d2);
                let rest = (d1 / &g) * (d2 / &g);
                let (k, m) = square_free_part(&rest);
                let coeff = c1 * c2 * BigRational::from_integer(g * k);
                s.push(m, coeff);
            }
        }
        s
    }

    pub fn enclosure(&self, bits: u32) -> Enclosure {
        let mut e = Enclosure::zero(bits);
        for (d, c) in &self.terms {
            let t = if d.is_one() {
                Enclosure::from_rational(c, bits)
            } else {
                Enclosure::scaled_sqrt(c, d, bits)
            };
            e = e.add(&t);
        }
        e
    }

    pub fn to_interval(&self) -> Interval {
        self.enclosure(precision()).to_interval()
    }

    pub fn to_f64(&self) -> f64 {
        self.to_interval().mid()
    }

    /// Exact sign. Precision doubles from the global setting until the
    /// enclosure excludes zero.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if let Some(r) = self.as_rational() {
            return r.cmp(&BigRational::zero());
        }
        if let Some(q) = self.as_quad() {
            return q.signum();
        }
        let mut bits = precision();
        loop {
            if let Some(s) = self.enclosure(bits).sign() {
                return s;
            }
            if bits >= MAX_PRECISION_BITS {
                // only reachable if a huge radicand was not fully reduced
                log::warn!("sign undecided at {bits} bits; treating as zero");
                return Ordering::Equal;
            }
            bits *= 2;
        }
    }

    pub fn cmp_exact(&self, o: &RadicalSum) -> Ordering {
        self.sub(o).signum()
    }

    /// Truncated decimal expansion, raising precision until it is certain.
    pub fn decimal(&self, places: usize) -> String {
        // a rational can sit exactly on a digit boundary, where refining
        // enclosures never decides the last digit
        if let Some(r) = self.as_rational() {
            return rational_decimal(&r, places);
        }
        let mut bits = precision().max((places as f64 * 3.33) as u32 + 16);
        loop {
            if let Some(s) = self.enclosure(bits).truncated_decimal(places) {
                return s;
            }
            if bits >= MAX_PRECISION_BITS {
                return format!("{:.*}", places, self.to_f64());
            }
            bits *= 2;
        }
    }
}

fn rational_decimal(r: &BigRational, places: usize) -> String {
    let scaled = r.abs() * BigRational::from_integer(BigInt::from(10).pow(places as u32));
    let digits = scaled.to_integer().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if r.is_negative() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl PartialOrd for RadicalSum {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for RadicalSum {
    fn cmp(&self, o: &Self) -> Ordering {
        self.cmp_exact(o)
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_quad() {
            return write!(f, "{}", q);
        }
        let mut first = true;
        for (d, c) in &self.terms {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            if d.is_one() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "√{}", d)?;
            } else if mag.denom().is_one() {
                write!(f, "{}√{}", mag.numer(), d)?;
            } else {
                write!(f, "({})√{}", mag, d)?;
            }
        }
        Ok(())
    }
}

/// An exact real from the continued-fraction world together with an
/// enclosure at the working precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CFValue {
    #[serde(serialize_with = "ser_exact")]
    pub exact: RadicalSum,
    #[serde(serialize_with = "ser_enclosure")]
    pub enclosure: Enclosure,
}

fn ser_exact<S: serde::Serializer>(v: &RadicalSum, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_enclosure<S: serde::Serializer>(v: &Enclosure, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let i = v.to_interval();
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&i.lo)?;
    t.serialize_element(&i.hi)?;
    t.end()
}

impl CFValue {
    pub fn new(exact: RadicalSum) -> Self {
        let enclosure = exact.enclosure(precision());
        CFValue { exact, enclosure }
    }

    pub fn from_quad(q: &QuadSurd) -> Self {
        CFValue::new(RadicalSum::from_quad(q))
    }

    pub fn from_rational(r: BigRational) -> Self {
        CFValue::new(RadicalSum::from_rational(r))
    }

    pub fn interval(&self) -> Interval {
        self.enclosure.to_interval()
    }

    pub fn to_f64(&self) -> f64 {
        self.interval().mid()
    }

    pub fn as_quad(&self) -> Option<QuadSurd> {
        self.exact.as_quad()
    }

    pub fn decimal(&self, places: usize) -> String {
        self.exact.decimal(places)
    }
}

impl PartialOrd for CFValue {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for CFValue {
    fn cmp(&self, o: &Self) -> Ordering {
        self.exact.cmp_exact(&o.exact)
    }
}

impl fmt::Display for CFValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≈ {}", self.exact, self.exact.decimal(12))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(n: i64) -> RadicalSum {
        RadicalSum::from_quad(&QuadSurd::sqrt_int(n))
    }

    #[test]
    fn rational_digits_are_exact() {
        let r = |a: i64, b: i64| RadicalSum::from_rational(BigRational::new(a.into(), b.into()));
        assert_eq!(r(29, 10).decimal(20), "2.90000000000000000000");
        assert_eq!(r(-1, 8).decimal(2), "-0.12");
        assert_eq!(r(7, 1).decimal(0), "7");
    }

    #[test]
    fn independence_and_merging() {
        let a = sq(2).mul(&sq(6));
        // sqrt(12) = 2 sqrt(3)
        assert_eq!(a, sq(3).scale(&BigRational::from_integer(2.into())));
        let z = sq(2).add(&sq(3)).sub(&sq(3)).sub(&sq(2));
        assert!(z.is_zero());
    }

    #[test]
    fn close_values_ordered() {
        // sqrt(2) + sqrt(3) vs sqrt(10) : 3.1462... vs 3.1622...
        let lhs = sq(2).add(&sq(3));
        assert_eq!(lhs.cmp(&sq(10)), Ordering::Less);
        // (sqrt 5 + sqrt 7)^2 = 12 + 2 sqrt 35
        let s = sq(5).add(&sq(7));
        let t = s.mul(&s).sub(&RadicalSum::from_int(12)).sub(&sq(35).scale(&BigRational::from_integer(2.into())));
        assert!(t.is_zero());
    }

    #[test]
    fn decimals() {
        assert_eq!(sq(5).decimal(10), "2.2360679774");
        let v = CFValue::new(sq(2));
        assert!(v.interval().contains(std::f64::consts::SQRT_2));
    }
}
