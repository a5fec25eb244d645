use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::convergents::pq;
use super::separation::{a_n, b_n};
use super::word::Word;
use crate::interval::Interval;
use crate::radical::RadicalSum;
use crate::surd::QuadSurd;

/// Exhaustive enumeration is used while the number of pairs stays below this.
pub const EXHAUSTIVE_PAIRS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distortion {
    #[serde(serialize_with = "crate::cf::cylinder::ser_rat")]
    pub constant: BigRational,
    pub exhaustive: bool,
    pub depth: usize,
}

/// `|I(αβ)| / (|I(α)| |I(β)|) = (1+r)/((1+rx)(1+ry))` where `r = q_{n-1}/q_n`
/// of `α` and `x, y` are the endpoints of `I(β)`.
pub fn pair_ratio(r: &BigRational, x: &BigRational, y: &BigRational) -> BigRational {
    let one = BigRational::one();
    (&one + r) / ((&one + r * x) * (&one + r * y))
}

fn words_up_to(n: u32, depth: usize, from: usize) -> Vec<Word> {
    (from..=depth).flat_map(|k| Word::all(n, k)).collect()
}

fn endpoints(w: &Word) -> (BigRational, BigRational) {
    let (p, p1, q, q1) = pq(w.digits());
    (BigRational::new(p.clone(), q.clone()), BigRational::new(p + p1, q + q1))
}

fn back(w: &Word) -> BigRational {
    let (_, _, q, q1) = pq(w.digits());
    BigRational::new(q1, q)
}

/// Extreme values of `[0; d_1..d_k]` over N-bounded words of length `k`:
/// alternate `N,1,N,..` for the minimum and `1,N,1,..` for the maximum.
fn cf_extremes(n: u32, k: usize) -> (BigRational, BigRational) {
    let alt = |first: u32, second: u32| -> Vec<u32> {
        (0..k).map(|i| if i % 2 == 0 { first } else { second }).collect()
    };
    let val = |d: &[u32]| {
        let (p, _, q, _) = pq(d);
        BigRational::new(p, q)
    };
    (val(&alt(n, 1)), val(&alt(1, n)))
}

/// Max of `(1+r)/(1+cr)^2` over `r in [lo, hi]`.
fn max_upper(c: &BigRational, lo: &BigRational, hi: &BigRational) -> BigRational {
    let one = BigRational::one();
    let g = |r: &BigRational| (&one + r) / ((&one + c * r) * (&one + c * r));
    let mut best = g(lo).max(g(hi));
    if !c.is_zero() {
        let crit = (&one - c * BigRational::from_integer(2.into())) / c;
        if &crit > lo && &crit < hi {
            best = best.max(g(&crit));
        }
    }
    best
}

/// Bounded-distortion constant `Ĉ >= 1` valid for all N-bounded `α, β`
/// with `|α|, |β| <= depth`.
pub fn distortion_constant(n: u32, depth: usize) -> Distortion {
    assert!(n >= 2 && depth >= 1, "distortion_constant needs N >= 2, depth >= 1");
    let count: usize = (0..=depth).map(|k| (n as usize).saturating_pow(k as u32)).sum();
    if count.saturating_mul(count) <= EXHAUSTIVE_PAIRS {
        let rs: Vec<BigRational> = words_up_to(n, depth, 1).iter().map(back).collect();
        let ends: Vec<_> = words_up_to(n, depth, 1).iter().map(endpoints).collect();
        let mut c = BigRational::one();
        for r in &rs {
            for (x, y) in &ends {
                let q = pair_ratio(r, x, y);
                let inv = q.recip();
                c = c.max(q).max(inv);
            }
        }
        return Distortion {
            constant: c,
            exhaustive: true,
            depth,
        };
    }
    // ratio is decreasing in x and y; relax over the hulls of r and of the
    // cylinder endpoints
    let mut rlo = BigRational::one();
    let mut rhi = BigRational::zero();
    for k in 1..=depth {
        let (lo, hi) = cf_extremes(n, k);
        rlo = rlo.min(lo);
        rhi = rhi.max(hi);
    }
    let xmin = BigRational::new(BigInt::one(), BigInt::from(n + 1));
    let upper = max_upper(&xmin, &rlo, &rhi);
    let lower = (BigRational::one() + &rhi).recip();
    Distortion {
        constant: upper.max(lower.recip()),
        exhaustive: false,
        depth,
    }
}

/// Geometric rates `λ1 <= |I(α)|^{1/|α|}`-type bounds with their constant.
#[derive(Clone, Debug, Serialize)]
pub struct GeometricBounds {
    #[serde(serialize_with = "ser_q")]
    pub lambda1: QuadSurd,
    #[serde(serialize_with = "ser_q")]
    pub lambda2: QuadSurd,
    /// `C` with `C^-1 λ1^n <= |I(α)| <= C λ2^n`
    pub constant: f64,
}

fn ser_q<S: serde::Serializer>(v: &QuadSurd, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `λ1 = (N + B_N)^-2` and `λ2 = (1 + A_N)^-2`: the extreme one-step
/// contractions `1/(d+x)^2` of the inverse branches over `x in C_N`.
///
/// The constant comes from the mean value theorem: `|I(α)|` is a product of
/// factors `1/(a_k + x_k)^2` where `x_k` lies within `max|I(β)|, |β| = n-k`
/// of `[A_N, B_N]`; that distance is at most `1/(F_{j+1} F_{j+2})`.
pub fn geometric_bounds(n: u32) -> GeometricBounds {
    assert!(n >= 2);
    let (a, b) = (a_n(n), b_n(n));
    let lambda1 = b.add_int(n as i64).mul(&b.add_int(n as i64)).recip();
    let lambda2 = a.add_int(1).mul(&a.add_int(1)).recip();
    let ai = RadicalSum::from_quad(&a).to_interval();
    let bi = RadicalSum::from_quad(&b).to_interval();
    let one = Interval::point(1.0);
    let nb = Interval::from_int(n as i64) + bi;
    let a1 = one + ai;
    let j_max = 60;
    let (mut f1, mut f2) = (1.0f64, 1.0f64);
    let mut up = Interval::point(0.0);
    let mut down = Interval::point(0.0);
    for j in 0..=j_max {
        // distance of x_{n-j} from [A, B]
        let (dl, dh) = if j == 0 {
            (ai, one - bi)
        } else {
            let d = Interval::point(1.0) / (Interval::point(f1) * Interval::point(f2));
            (d, d)
        };
        up = up + (a1.ln() - (a1 - dl).ln());
        down = down + ((nb + dh).ln() - nb.ln());
        if j >= 1 {
            let f3 = f1 + f2;
            f1 = f2;
            f2 = f3;
        } else {
            f2 = 2.0;
        }
    }
    // tail: deltas at least halve each step, ln(1+u) <= u
    let tail = Interval::point(2.0) / (Interval::point(f1) * Interval::point(f2));
    let up = up + tail / (a1 - tail);
    let down = down + tail / nb;
    let two = Interval::point(2.0);
    let c = (two * up).max(&(two * down)).exp();
    GeometricBounds {
        lambda1,
        lambda2,
        constant: c.hi,
    }
}
