use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::expansion::Expansion;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    #[serde(serialize_with = "ser_ord")]
    pub ordering: Ordering,
    /// number of leading digits `a1..an` on which the two agree
    pub agree_depth: usize,
    /// `1/2^(n-1)` bound on the distance when they agree to depth `n >= 1`
    #[serde(serialize_with = "ser_opt_rat")]
    pub closeness_bound: Option<BigRational>,
}

fn ser_ord<S: serde::Serializer>(v: &Ordering, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(ordering_symbol(*v))
}

pub fn ordering_symbol(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

fn ser_opt_rat<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Orders two finite or eventually periodic expansions by their digits.
/// The first differing digit `k` decides: `sign(α - β) = (-1)^k (a_k - b_k)`,
/// with the end of a finite expansion acting as an infinite digit.
pub fn compare(a: &Expansion, b: &Expansion) -> Comparison {
    let a = a.canonical();
    let b = b.canonical();
    if a.a0 != b.a0 {
        return Comparison {
            ordering: a.a0.cmp(&b.a0),
            agree_depth: 0,
            closeness_bound: None,
        };
    }
    let limit = horizon(&a, &b);
    let mut k = 1;
    loop {
        if k > limit {
            // both infinite and periodic parts aligned: same real
            return Comparison {
                ordering: Ordering::Equal,
                agree_depth: k - 1,
                closeness_bound: None,
            };
        }
        let (x, y) = (a.digit(k), b.digit(k));
        if x == y {
            if x.is_none() {
                return Comparison {
                    ordering: Ordering::Equal,
                    agree_depth: k - 1,
                    closeness_bound: None,
                };
            }
            k += 1;
            continue;
        }
        // None stands for +infinity
        let raw = match (x, y) {
            (None, _) => Ordering::Greater,
            (_, None) => Ordering::Less,
            (Some(x), Some(y)) => x.cmp(&y),
        };
        let ordering = if k % 2 == 0 { raw } else { raw.reverse() };
        let n = k - 1;
        let closeness_bound =
            (n >= 1).then(|| BigRational::new(BigInt::one(), BigInt::one() << (n - 1)));
        return Comparison {
            ordering,
            agree_depth: n,
            closeness_bound,
        };
    }
}

fn horizon(a: &Expansion, b: &Expansion) -> usize {
    let span = |e: &Expansion| e.pre.len() + e.period.len();
    match (a.is_finite(), b.is_finite()) {
        (false, false) => {
            let l = a.period.len().lcm(&b.period.len());
            a.pre.len().max(b.pre.len()) + l
        }
        _ => span(a).max(span(b)) + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Expansion {
        s.parse().unwrap()
    }

    #[test]
    fn basic_orders() {
        assert_eq!(compare(&e("0;1"), &e("0;2")).ordering, Ordering::Greater);
        assert_eq!(compare(&e("0;1,2"), &e("0;1,3")).ordering, Ordering::Less);
        assert_eq!(compare(&e("0;:(1)"), &e("0;:(1)")).ordering, Ordering::Equal);
        assert_eq!(compare(&e("0;:(1)"), &e("0;1:(1,1)")).ordering, Ordering::Equal);
    }

    #[test]
    fn dual_representation() {
        assert_eq!(compare(&e("0;2,3"), &e("0;2,2,1")).ordering, Ordering::Equal);
        assert_eq!(compare(&e("0;1"), &e("1;")).ordering, Ordering::Equal);
        assert_eq!(compare(&e("0;1,5"), &e("0;1")).ordering, Ordering::Less);
    }

    #[test]
    fn closeness_reported() {
        let c = compare(&e("0;1,1,1,2"), &e("0;1,1,1,3"));
        assert_eq!(c.agree_depth, 3);
        assert_eq!(c.closeness_bound, Some(BigRational::new(1.into(), 4.into())));
    }
}
