use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::convergents::pq;
use super::cylinder::cylinder_length;
use super::expansion::purely_periodic;
use super::word::Word;
use crate::error::{Error, Result};
use crate::precision::precision;
use crate::radical::RadicalSum;
use crate::surd::QuadSurd;

/// `A_N = [0; overline(N,1)]`, the least point of `C_N`.
pub fn a_n(n: u32) -> QuadSurd {
    if n == 1 {
        return purely_periodic(&[1]);
    }
    purely_periodic(&[n, 1])
}

/// `B_N = [0; overline(1,N)]`, the largest point of `C_N`.
pub fn b_n(n: u32) -> QuadSurd {
    if n == 1 {
        return purely_periodic(&[1]);
    }
    purely_periodic(&[1, n])
}

#[derive(Clone, Debug, Serialize)]
pub struct Separation {
    /// exact minimum gap between consecutive N-bounded sub-pieces
    #[serde(serialize_with = "ser_rs")]
    pub bound: RadicalSum,
    /// rational number not exceeding `bound`
    #[serde(serialize_with = "crate::cf::cylinder::ser_rat")]
    pub rational_bound: BigRational,
    /// normalized constant with `bound >= c(N) |I(prefix)|`
    #[serde(serialize_with = "ser_rs")]
    pub c_n: RadicalSum,
    pub degenerate: bool,
}

fn ser_rs<S: serde::Serializer>(v: &RadicalSum, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn q_of(n: &BigInt) -> QuadSurd {
    QuadSurd::from_rational(&BigRational::from_integer(n.clone()))
}

/// `c(N) = (1 + A - B) min_{r in {0,1}} (1+r)/((N-1+B+r)(N+A+r))`.
pub fn separation_constant(n: u32) -> Option<QuadSurd> {
    if n < 2 {
        return None;
    }
    let (a, b) = (a_n(n), b_n(n));
    let k = a.sub(&b).add_int(1);
    let f = |r: i64| {
        let num = QuadSurd::from_int(1 + r);
        let den = b.add_int(n as i64 - 1 + r).mul(&a.add_int(n as i64 + r));
        num.div(&den)
    };
    let (f0, f1) = (f(0), f(1));
    let m = if f0.cmp_exact(&f1).is_le() { f0 } else { f1 };
    Some(k.mul(&m))
}

/// Certified lower bound on `|α - α'|` for N-bounded expansions sharing
/// `prefix` and differing at the next digit.
pub fn separation_lower_bound(prefix: &Word, n: u32) -> Result<Separation> {
    if n < 1 {
        return Err(Error::input("N must be at least 1"));
    }
    prefix.with_bound(n)?;
    if n == 1 {
        let z = RadicalSum::zero();
        return Ok(Separation {
            bound: z.clone(),
            rational_bound: BigRational::from_integer(0.into()),
            c_n: z,
            degenerate: true,
        });
    }
    let (_, _, qn, qn1) = pq(prefix.digits());
    let (a, b) = (a_n(n), b_n(n));
    let k = a.sub(&b).add_int(1);
    let mut best: Option<QuadSurd> = None;
    for d in 1..n as i64 {
        // gap between C_N ∩ I(prefix,d) and C_N ∩ I(prefix,d+1)
        let left = q_of(&qn).mul(&b.add_int(d)).add(&q_of(&qn1));
        let right = q_of(&qn).mul(&a.add_int(d + 1)).add(&q_of(&qn1));
        let gap = k.div(&left.mul(&right));
        best = Some(match best {
            Some(g) if g.cmp_exact(&gap).is_le() => g,
            _ => gap,
        });
    }
    let bound = RadicalSum::from_quad(&best.unwrap());
    let rational_bound = bound.enclosure(precision()).lo_rational();
    let c_n = RadicalSum::from_quad(&separation_constant(n).unwrap());
    debug_assert!(
        bound.cmp_exact(&c_n.scale(&cylinder_length(prefix.digits()))).is_ge()
    );
    Ok(Separation {
        bound,
        rational_bound,
        c_n,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::expansion::eval_quad;

    #[test]
    fn root_gap_matches_extreme_points() {
        let s = separation_lower_bound(&Word::empty(2), 2).unwrap();
        let hi = eval_quad(&[1], &[1, 2], 0);
        let lo = eval_quad(&[2], &[2, 1], 0);
        assert_eq!(s.bound, RadicalSum::from_quad(&hi.sub(&lo)));
        assert!(s.rational_bound > BigRational::from_integer(0.into()));
        assert!(RadicalSum::from_rational(s.rational_bound.clone()) <= s.bound);
    }

    #[test]
    fn prefix_one_matches_subcylinders() {
        let s = separation_lower_bound(&"1".parse().unwrap(), 2).unwrap();
        // distance between disjoint pieces = least endpoint difference
        let ends = |d: u32| [eval_quad(&[1, d], &[2, 1], 0), eval_quad(&[1, d], &[1, 2], 0)];
        let mut best: Option<RadicalSum> = None;
        for x in ends(1) {
            for y in ends(2) {
                let diff = RadicalSum::from_quad(&x.sub(&y));
                let diff = if diff.signum().is_lt() { diff.neg() } else { diff };
                best = Some(match best {
                    Some(b) if b <= diff => b,
                    _ => diff,
                });
            }
        }
        assert_eq!(s.bound, best.unwrap());
    }

    #[test]
    fn degenerate_alphabet() {
        assert!(separation_lower_bound(&"1,1".parse().unwrap(), 1).unwrap().degenerate);
        assert!(separation_lower_bound(&"2".parse().unwrap(), 1).is_err());
    }
}
