use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cf::expansion::Expansion;
use crate::cf::word::{parse_digits, write_digits};
use crate::error::{Error, Result};

/// Eventually periodic bi-infinite sequence
/// `(… lp lp) lt ; rt (rp rp …)` with position 0 at the first digit of `rt`
/// (or of `rp` when `rt` is empty). Both periods are stored in the order
/// they are written.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BiSeq {
    pub left_period: Vec<u32>,
    pub left_transient: Vec<u32>,
    pub right_transient: Vec<u32>,
    pub right_period: Vec<u32>,
    pub bound: u32,
}

impl BiSeq {
    pub fn new(
        left_period: Vec<u32>,
        left_transient: Vec<u32>,
        right_transient: Vec<u32>,
        right_period: Vec<u32>,
    ) -> Result<Self> {
        if left_period.is_empty() || right_period.is_empty() {
            return Err(Error::input("both periods must be nonempty"));
        }
        let all = || {
            left_period
                .iter()
                .chain(&left_transient)
                .chain(&right_transient)
                .chain(&right_period)
        };
        if all().any(|&d| d == 0) {
            return Err(Error::input("digits must be positive"));
        }
        let bound = all().copied().max().unwrap();
        Ok(BiSeq {
            left_period,
            left_transient,
            right_transient,
            right_period,
            bound,
        })
    }

    /// `overline(w)` with `w[0]` at position 0.
    pub fn periodic(w: &[u32]) -> Result<Self> {
        BiSeq::new(w.to_vec(), vec![], vec![], w.to_vec())
    }

    pub fn with_bound(mut self, bound: u32) -> Result<Self> {
        if self.bound > bound {
            return Err(Error::DigitOutOfRange {
                digit: self.bound,
                bound,
            });
        }
        self.bound = bound;
        Ok(self)
    }

    /// First index of the right periodic regime.
    pub fn right_start(&self) -> i64 {
        self.right_transient.len() as i64
    }

    /// Last index of the left periodic regime.
    pub fn left_end(&self) -> i64 {
        -(self.left_transient.len() as i64) - 1
    }

    pub fn digit(&self, i: i64) -> u32 {
        if i >= 0 {
            let i = i as usize;
            let r = self.right_transient.len();
            if i < r {
                self.right_transient[i]
            } else {
                self.right_period[(i - r) % self.right_period.len()]
            }
        } else {
            let j = (-i) as usize;
            let l = self.left_transient.len();
            if j <= l {
                self.left_transient[l - j]
            } else {
                let q = self.left_period.len();
                let k = (j - l - 1) % q;
                self.left_period[q - 1 - k]
            }
        }
    }

    pub fn digits(&self, from: i64, to: i64) -> Vec<u32> {
        (from..to).map(|i| self.digit(i)).collect()
    }

    /// `[0; a_{i+1}, a_{i+2}, …]`
    pub fn right_tail(&self, i: i64) -> Expansion {
        let m = (i + 1).max(self.right_start());
        let pre = self.digits(i + 1, m);
        let p = self.right_period.len() as i64;
        let period = self.digits(m, m + p);
        Expansion::periodic(0, pre, period)
    }

    /// `[0; a_{i-1}, a_{i-2}, …]`
    pub fn left_tail(&self, i: i64) -> Expansion {
        let m = (i - 1).min(self.left_end());
        let pre: Vec<u32> = ((m + 1)..i).rev().map(|k| self.digit(k)).collect();
        let q = self.left_period.len() as i64;
        let period: Vec<u32> = ((m - q + 1)..=m).rev().map(|k| self.digit(k)).collect();
        Expansion::periodic(0, pre, period)
    }

    /// The sequence `b_i = a_{i+k}`.
    pub fn shift(&self, k: i64) -> BiSeq {
        let lo = self.left_end() + 1;
        let hi = self.right_start();
        let m = lo.min(k);
        let big = hi.max(k);
        let q = self.left_period.len() as i64;
        let p = self.right_period.len() as i64;
        BiSeq {
            left_period: self.digits(m - q, m),
            left_transient: self.digits(m, k),
            right_transient: self.digits(k, big),
            right_period: self.digits(big, big + p),
            bound: self.bound,
        }
    }

    pub fn is_purely_periodic(&self) -> bool {
        // the two-sided sequence has one period across the origin
        let p = self.right_period.len() as i64;
        let span = self.left_transient.len() as i64 + self.right_transient.len() as i64;
        let lo = self.left_end() - self.left_period.len() as i64 * p;
        let hi = self.right_start() + p * (self.left_period.len() as i64) + span;
        (lo..hi).all(|i| self.digit(i) == self.digit(i + p))
    }
}

impl FromStr for BiSeq {
    type Err = Error;

    /// `(lp)*:lt;rt:(rp)*`, or `(w)*` for a purely periodic sequence.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let group = |t: &str, off: usize| -> Result<Vec<u32>> {
            let t = t.trim();
            let inner = t
                .strip_suffix('*')
                .unwrap_or(t)
                .trim()
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .ok_or(Error::Parse {
                    pos: off,
                    msg: format!("expected a period `(digits)*`, found {t:?}"),
                })?;
            let v = parse_digits(inner, off + 1)?;
            if v.is_empty() {
                return Err(Error::Parse {
                    pos: off,
                    msg: "empty period".into(),
                });
            }
            Ok(v)
        };
        let Some(semi) = s.find(';') else {
            let w = group(s, 0)?;
            return BiSeq::periodic(&w);
        };
        let (left, right) = (&s[..semi], &s[semi + 1..]);
        let lc = left.rfind(':').ok_or(Error::Parse {
            pos: 0,
            msg: "expected `(left_period)*:left_transient` before `;`".into(),
        })?;
        let rc = right.find(':').ok_or(Error::Parse {
            pos: semi + 1,
            msg: "expected `right_transient:(right_period)*` after `;`".into(),
        })?;
        let lp = group(&left[..lc], 0)?;
        let lt = parse_digits(&left[lc + 1..], lc + 1)?;
        let rt = parse_digits(&right[..rc], semi + 1)?;
        let rp = group(&right[rc + 1..], semi + 2 + rc)?;
        BiSeq::new(lp, lt, rt, rp)
    }
}

impl fmt::Display for BiSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_digits(f, &self.left_period)?;
        write!(f, ")*:")?;
        write_digits(f, &self.left_transient)?;
        write!(f, ";")?;
        write_digits(f, &self.right_transient)?;
        write!(f, ":(")?;
        write_digits(f, &self.right_period)?;
        write!(f, ")*")
    }
}
