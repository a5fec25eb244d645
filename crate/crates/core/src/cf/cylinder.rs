use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::convergents::pq;
use super::word::Word;

/// The interval `I(a1..an)` of reals in `[0,1]` whose expansion starts
/// with the word, optionally translated by `a0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CylinderInterval {
    pub word: Word,
    pub a0: i64,
    /// `p_n/q_n`
    #[serde(serialize_with = "ser_rat")]
    pub convergent_end: BigRational,
    /// `(p_n + p_{n-1})/(q_n + q_{n-1})`
    #[serde(serialize_with = "ser_rat")]
    pub mediant_end: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub length: BigRational,
}

pub(crate) fn ser_rat<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl CylinderInterval {
    /// `p_n/q_n` is the left endpoint exactly when `n` is even.
    pub fn left(&self) -> &BigRational {
        if self.word.len() % 2 == 0 {
            &self.convergent_end
        } else {
            &self.mediant_end
        }
    }

    pub fn right(&self) -> &BigRational {
        if self.word.len() % 2 == 0 {
            &self.mediant_end
        } else {
            &self.convergent_end
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.left() <= x && x <= self.right()
    }
}

pub fn cylinder(word: &Word) -> CylinderInterval {
    cylinder_a0(word, 0)
}

pub fn cylinder_a0(word: &Word, a0: i64) -> CylinderInterval {
    let (p, p1, q, q1) = pq(word.digits());
    let shift = BigRational::from_integer(a0.into());
    let convergent_end = BigRational::new(p.clone(), q.clone()) + &shift;
    let mediant_end = BigRational::new(&p + &p1, &q + &q1) + &shift;
    let length = cylinder_length(word.digits());
    debug_assert_eq!((&convergent_end - &mediant_end).abs(), length);
    CylinderInterval {
        word: word.clone(),
        a0,
        convergent_end,
        mediant_end,
        length,
    }
}

/// `|I(w)| = 1/(q_n (q_n + q_{n-1}))`.
pub fn cylinder_length(digits: &[u32]) -> BigRational {
    let (_, _, q, q1) = pq(digits);
    BigRational::new(BigInt::one(), &q * (&q + q1))
}

/// `|I(w v)| / |I(w)|` from `r = q_{n-1}/q_n` of `w` and the convergents of `v`.
pub fn extension_ratio(r: &BigRational, v: &[u32]) -> BigRational {
    let (p, p1, q, q1) = pq(v);
    let one = BigRational::one();
    let pr = BigRational::from_integer(p.clone());
    let qr = BigRational::from_integer(q.clone());
    let a = &qr + r * &pr;
    let b = BigRational::from_integer(&q + &q1) + r * BigRational::from_integer(&p + &p1);
    (&one + r) / (a * b)
}

/// `r = q_{n-1}/q_n` for a word (0 for the empty word).
pub fn back_ratio(digits: &[u32]) -> BigRational {
    let (_, _, q, q1) = pq(digits);
    BigRational::new(q1, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn unit_cylinders() {
        let c = cylinder(&"1".parse().unwrap());
        assert_eq!(c.left(), &rat(1, 2));
        assert_eq!(c.right(), &rat(1, 1));
        assert_eq!(c.length, rat(1, 2));
        assert_eq!(cylinder(&"2,2".parse().unwrap()).length, rat(1, 35));
        assert_eq!(cylinder(&"1,1".parse().unwrap()).length, rat(1, 6));
        let root = cylinder(&Word::empty(2));
        assert_eq!((root.left().clone(), root.right().clone()), (rat(0, 1), rat(1, 1)));
    }

    #[test]
    fn length_formula_matches_endpoints_exhaustively() {
        for n in 0..=6 {
            for w in Word::all(4, n) {
                let c = cylinder(&w);
                assert_eq!(c.right() - c.left(), c.length, "{w}");
            }
        }
    }

    #[test]
    fn extension_ratio_matches_direct() {
        let w: Word = "3,1,2".parse().unwrap();
        let v = [2u32, 1, 1];
        let direct = cylinder_length(&w.concat(&Word::from_digits(v.to_vec()).unwrap()).digits().to_vec())
            / cylinder_length(w.digits());
        assert_eq!(extension_ratio(&back_ratio(w.digits()), &v), direct);
    }
}
