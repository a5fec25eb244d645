use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::convergents::pq;
use super::word::{parse_digits, write_digits, Word};
use crate::error::{Error, Result};
use crate::radical::CFValue;
use crate::surd::QuadSurd;

/// `[a0; pre, overline(period)]`; an empty period means a finite expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Expansion {
    pub a0: i64,
    pub pre: Vec<u32>,
    pub period: Vec<u32>,
}

impl Expansion {
    pub fn finite(a0: i64, digits: Vec<u32>) -> Self {
        Expansion {
            a0,
            pre: digits,
            period: Vec::new(),
        }
    }

    pub fn periodic(a0: i64, pre: Vec<u32>, period: Vec<u32>) -> Self {
        Expansion { a0, pre, period }
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Digit `k >= 1`, or `None` past the end of a finite expansion.
    pub fn digit(&self, k: usize) -> Option<u32> {
        debug_assert!(k >= 1);
        let i = k - 1;
        if i < self.pre.len() {
            Some(self.pre[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.pre.len()) % self.period.len()])
        }
    }

    /// Finite expansions are rewritten to not end in 1, so equal reals
    /// have equal finite forms.
    pub fn canonical(&self) -> Expansion {
        let mut e = self.clone();
        if e.is_finite() {
            if let Some(&1) = e.pre.last() {
                e.pre.pop();
                match e.pre.last_mut() {
                    Some(last) => *last += 1,
                    None => e.a0 += 1,
                }
            }
        }
        e
    }

    pub fn value(&self) -> QuadSurd {
        eval_quad(&self.pre, &self.period, self.a0)
    }
}

/// Positive root of `q_{k-1} x^2 + (q_k - p_{k-1}) x - p_k = 0`,
/// the value of `[0; overline(period)]`.
pub fn purely_periodic(period: &[u32]) -> QuadSurd {
    assert!(!period.is_empty(), "empty period");
    let (p, p1, q, q1) = pq(period);
    let b = &q - &p1;
    let disc = &b * &b + BigInt::from(4) * &q1 * &p;
    QuadSurd::new(-b, BigInt::one(), BigInt::from(2) * q1, disc)
}

/// Applies `x -> (P_j + P_{j-1} x)/(Q_j + Q_{j-1} x)` for the preperiod.
pub fn prepend(pre: &[u32], x: &QuadSurd) -> QuadSurd {
    let (p, p1, q, q1) = pq(pre);
    let num = QuadSurd::from_rational(&BigRational::from_integer(p)).add(&x.mul(&int(p1)));
    let den = QuadSurd::from_rational(&BigRational::from_integer(q)).add(&x.mul(&int(q1)));
    num.div(&den)
}

fn int(n: BigInt) -> QuadSurd {
    QuadSurd::from_rational(&BigRational::from_integer(n))
}

pub(crate) fn eval_quad(pre: &[u32], period: &[u32], a0: i64) -> QuadSurd {
    let tail = if period.is_empty() {
        let (p, _, q, _) = pq(pre);
        QuadSurd::from_rational(&BigRational::new(p, q))
    } else {
        prepend(pre, &purely_periodic(period))
    };
    tail.add_int(a0)
}

/// Exact value of `[a0; pre, overline(period)]`.
pub fn eval_periodic(pre: &Word, period: &Word, a0: i64, bound: Option<u32>) -> Result<CFValue> {
    if period.is_empty() {
        return Err(Error::input("period must be nonempty"));
    }
    if let Some(b) = bound {
        pre.with_bound(b)?;
        period.with_bound(b)?;
    }
    Ok(CFValue::from_quad(&eval_quad(pre.digits(), period.digits(), a0)))
}

/// Checks `x = M(x)` exactly for the period's Möbius map `M`.
pub fn is_fixed_point(period: &[u32], x: &QuadSurd) -> bool {
    let (p, p1, q, q1) = pq(period);
    let num = int(p).add(&x.mul(&int(p1)));
    let den = int(q).add(&x.mul(&int(q1)));
    num.div(&den) == *x
}

impl FromStr for Expansion {
    type Err = Error;

    /// `a0;pre:(period)` with an optional `*` after the period, or a
    /// finite `a0;digits`.
    fn from_str(s: &str) -> Result<Self> {
        let semi = s.find(';').ok_or(Error::Parse {
            pos: 0,
            msg: "expected `a0;...`".into(),
        })?;
        let a0: i64 = s[..semi].trim().parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("bad integer part {:?}", &s[..semi]),
        })?;
        let rest = &s[semi + 1..];
        let base = semi + 1;
        let (pre_s, per_s) = match rest.find(':') {
            Some(c) => (&rest[..c], Some((&rest[c + 1..], base + c + 1))),
            None => (rest, None),
        };
        let pre = parse_digits(pre_s, base)?;
        let period = match per_s {
            None => Vec::new(),
            Some((p, off)) => {
                let t = p.trim().trim_end_matches('*').trim();
                if t.is_empty() {
                    Vec::new()
                } else {
                    let inner = t
                        .strip_prefix('(')
                        .and_then(|x| x.strip_suffix(')'))
                        .ok_or(Error::Parse {
                            pos: off,
                            msg: "period must be parenthesised".into(),
                        })?;
                    let v = parse_digits(inner, off + 1)?;
                    if v.is_empty() {
                        return Err(Error::Parse {
                            pos: off,
                            msg: "empty period".into(),
                        });
                    }
                    v
                }
            }
        };
        Ok(Expansion { a0, pre, period })
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.a0)?;
        write_digits(f, &self.pre)?;
        if !self.period.is_empty() {
            write!(f, ":(")?;
            write_digits(f, &self.period)?;
            write!(f, ")*")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn golden_and_named() {
        let g = eval_periodic(&w(""), &w("1"), 0, None).unwrap();
        assert_eq!(g.as_quad().unwrap().to_string(), "(-1 + √5)/2");
        assert_eq!(g.decimal(10), "0.6180339887");
        let b2 = eval_periodic(&w(""), &w("1,2"), 0, Some(2)).unwrap();
        assert_eq!(b2.as_quad().unwrap(), QuadSurd::new((-2).into(), 1.into(), 2.into(), 12.into()));
        let a2 = eval_periodic(&w(""), &w("2,1"), 0, Some(2)).unwrap();
        assert_eq!(a2.as_quad().unwrap(), QuadSurd::new((-2).into(), 1.into(), 4.into(), 12.into()));
        assert!(eval_periodic(&w(""), &w("3"), 0, Some(2)).is_err());
    }

    #[test]
    fn preperiod() {
        let v: Expansion = "0;2:(2,1)*".parse().unwrap();
        assert!((v.value().to_f64() - 0.4226497).abs() < 1e-7);
        let f: Expansion = "0;1,2".parse().unwrap();
        assert_eq!(f.value(), QuadSurd::from_rational(&BigRational::new(2.into(), 3.into())));
    }

    #[test]
    fn fixed_point_substitution() {
        for p in [vec![1], vec![1, 2], vec![2, 2, 1, 1], vec![3, 1, 4]] {
            assert!(is_fixed_point(&p, &purely_periodic(&p)));
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!("0;1,a".parse::<Expansion>(), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!("x;1".parse::<Expansion>(), Err(Error::Parse { pos: 0, .. })));
        let e: Expansion = "0;:(1)*".parse().unwrap();
        assert_eq!(e.to_string(), "0;:(1)*");
    }
}
