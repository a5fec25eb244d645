use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::word::Word;
use crate::surd::ser_big;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub k: i64,
    #[serde(serialize_with = "ser_big")]
    pub p: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub q: BigInt,
}

/// Table of convergents `p_k/q_k` for `k = -2 ..= n`, where row `k = 0`
/// holds `a0/1` and rows `1..=n` follow the word's digits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convergents {
    pub a0: i64,
    pub rows: Vec<Row>,
}

impl Convergents {
    /// Index of the last row, `n`.
    pub fn n(&self) -> i64 {
        self.rows.len() as i64 - 3
    }

    fn row(&self, k: i64) -> &Row {
        &self.rows[(k + 2) as usize]
    }

    pub fn p(&self, k: i64) -> &BigInt {
        &self.row(k).p
    }

    pub fn q(&self, k: i64) -> &BigInt {
        &self.row(k).q
    }

    /// The final convergent `p_n/q_n`.
    pub fn last(&self) -> BigRational {
        let n = self.n();
        BigRational::new(self.p(n).clone(), self.q(n).clone())
    }

    /// `p_k q_{k-1} - p_{k-1} q_k` for `k >= -1`.
    pub fn determinant(&self, k: i64) -> BigInt {
        self.p(k) * self.q(k - 1) - self.p(k - 1) * self.q(k)
    }
}

pub fn convergents(word: &Word, a0: i64) -> Convergents {
    convergents_of(word.digits(), a0)
}

pub fn convergents_of(digits: &[u32], a0: i64) -> Convergents {
    let mut rows = vec![
        Row {
            k: -2,
            p: BigInt::zero(),
            q: BigInt::one(),
        },
        Row {
            k: -1,
            p: BigInt::one(),
            q: BigInt::zero(),
        },
    ];
    let all = std::iter::once(a0).chain(digits.iter().map(|&d| d as i64));
    for (k, a) in all.enumerate() {
        let a = BigInt::from(a);
        let (r1, r2) = (&rows[rows.len() - 1], &rows[rows.len() - 2]);
        let p = &a * &r1.p + &r2.p;
        let q = &a * &r1.q + &r2.q;
        rows.push(Row { k: k as i64, p, q });
    }
    Convergents { a0, rows }
}

/// Only the pair `(q_n, q_{n-1})` for a digit string, with `a0 = 0`.
pub fn denominators(digits: &[u32]) -> (BigInt, BigInt) {
    let (mut q1, mut q0) = (BigInt::one(), BigInt::zero());
    for &d in digits {
        let q = BigInt::from(d) * &q1 + &q0;
        q0 = std::mem::replace(&mut q1, q);
    }
    (q1, q0)
}

/// `(p_n, p_{n-1}, q_n, q_{n-1})` with `a0 = 0`.
pub fn pq(digits: &[u32]) -> (BigInt, BigInt, BigInt, BigInt) {
    let (mut p1, mut p0) = (BigInt::zero(), BigInt::one());
    let (mut q1, mut q0) = (BigInt::one(), BigInt::zero());
    for &d in digits {
        let a = BigInt::from(d);
        let p = &a * &p1 + &p0;
        let q = &a * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p);
        q0 = std::mem::replace(&mut q1, q);
    }
    (p1, p0, q1, q0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci() {
        let c = convergents(&"1,1,1,1".parse().unwrap(), 0);
        assert_eq!(c.last(), BigRational::new(3.into(), 5.into()));
        for k in -1..=c.n() {
            let sign = if (k - 1).rem_euclid(2) == 0 { 1 } else { -1 };
            assert_eq!(c.determinant(k), BigInt::from(sign));
        }
    }

    #[test]
    fn two_two() {
        let c = convergents(&"2,2".parse().unwrap(), 0);
        assert_eq!(c.q(1), &BigInt::from(2));
        assert_eq!(c.q(2), &BigInt::from(5));
        assert_eq!(denominators(&[2, 2]), (5.into(), 2.into()));
    }

    #[test]
    fn empty_word_has_seed_and_a0_rows() {
        let c = convergents(&Word::empty(2), 3);
        assert_eq!(c.rows.len(), 3);
        assert_eq!(c.n(), 0);
        assert_eq!(c.last(), BigRational::from_integer(3.into()));
    }
}
