use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};

use spectra_core::cf::convergents::{convergents_of, pq};
use spectra_core::cf::cylinder::{back_ratio, cylinder_length};
use spectra_core::cf::distortion::pair_ratio;
use spectra_core::cf::{compare, distortion_constant, Expansion};
use spectra_core::dimension::cover_sum;
use spectra_core::dimension::eq32::RatioForm;
use spectra_core::graph::TransitionGraph;
use spectra_core::symbolic::values::Attained;
use spectra_core::symbolic::{lambda_at, lemma24_check, markov_value, BiSeq};
use spectra_core::{Interval, RadicalSum};

pub const CASES: u32 = 500;

fn run<S: Strategy>(
    seed: u64,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        cases: CASES,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new(config).run(&strategy, test).map_err(|e| e.to_string())
}

fn digits(max: u32, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=max, len)
}

fn expansion() -> impl Strategy<Value = Expansion> {
    (digits(4, 0..5), digits(4, 0..4)).prop_map(|(pre, period)| {
        if period.is_empty() {
            Expansion::finite(0, pre)
        } else {
            Expansion::periodic(0, pre, period)
        }
    })
}

fn periodic_expansion() -> impl Strategy<Value = Expansion> {
    (digits(3, 0..4), digits(3, 1..4)).prop_map(|(pre, period)| Expansion::periodic(0, pre, period))
}

fn biseq() -> impl Strategy<Value = BiSeq> {
    (digits(3, 1..4), digits(3, 0..4), digits(3, 0..4), digits(3, 1..4))
        .prop_map(|(lp, lt, rt, rp)| BiSeq::new(lp, lt, rt, rp).unwrap())
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn extend(u: &[u32], v: &[u32]) -> Vec<u32> {
    u.iter().chain(v).copied().collect()
}

/// Two- and three-step ratio forms equal the cylinder length quotients.
pub fn ratio_forms() -> Result<(), String> {
    let s = (digits(5, 0..8), 1i64..10, 1i64..10, 1i64..10);
    run(0x5eed_0001, s, |(u, a, b, c)| {
        let r = back_ratio(&u);
        let base = cylinder_length(&u);
        let two = cylinder_length(&extend(&u, &[a as u32, b as u32])) / &base;
        let three = cylinder_length(&extend(&u, &[a as u32, b as u32, c as u32])) / &base;
        prop_assert_eq!(RatioForm::two_step(a, b).eval(&r), two);
        prop_assert_eq!(RatioForm::three_step(a, b, c).eval(&r), three);
        Ok(())
    })
}

/// Digit-wise ordering agrees with exact comparison, and agreement to
/// depth `n` bounds the distance by `2^{1-n}`.
pub fn ordering() -> Result<(), String> {
    run(0x5eed_0002, (expansion(), expansion()), |(a, b)| {
        let c = compare(&a, &b);
        let (x, y) = (a.value().to_radical(), b.value().to_radical());
        prop_assert_eq!(c.ordering, x.cmp(&y));
        if let Some(bound) = &c.closeness_bound {
            let gap = x.sub(&y).to_interval();
            let b = Interval::from_rational(bound).hi;
            prop_assert!(gap.lo.abs().max(gap.hi.abs()) <= b * (1.0 + 1e-12));
        }
        Ok(())
    })
}

/// The Markov value dominates every `λ_i` of a wide window and is attained
/// there or approached within `1e-4`.
pub fn markov_window() -> Result<(), String> {
    run(0x5eed_0003, biseq(), |s| {
        let rep = markov_value(&s);
        let p = s.right_period.len() as i64;
        let q = s.left_period.len() as i64;
        let lo = s.left_end() - 12 * q;
        let hi = s.right_start() + 12 * p;
        let mut best: Option<RadicalSum> = None;
        for i in lo..=hi {
            let v = lambda_at(&s, i).exact;
            prop_assert!(v <= rep.value.exact, "λ_{} exceeds the Markov value", i);
            if best.as_ref().map_or(true, |b| v > *b) {
                best = Some(v);
            }
        }
        let best = best.unwrap();
        match rep.attaining_index {
            Attained::Index(i) => prop_assert_eq!(lambda_at(&s, i).exact, rep.value.exact),
            Attained::LimsupOnly => {
                let gap = rep.value.exact.sub(&best).to_interval();
                prop_assert!(gap.hi < 1e-4, "window falls {} short", gap.hi);
            }
        }
        Ok(())
    })
}

/// Ordered tail triples never break the windowed max comparison.
pub fn splice_margins() -> Result<(), String> {
    let s = (biseq(), periodic_expansion(), periodic_expansion(), periodic_expansion(), 1u32..5);
    run(0x5eed_0004, s, |(alpha, b1, b2, b3, r)| {
        let mut bs = [b1, b2, b3];
        bs.sort_by(|x, y| compare(x, y).ordering);
        let rec = lemma24_check(&alpha, &alpha, [&bs[0], &bs[1], &bs[2]], r).unwrap();
        prop_assert!(rec.violations.is_empty(), "{:?}", rec);
        Ok(())
    })
}

/// `p_k q_{k-1} - p_{k-1} q_k = (-1)^{k+1}`.
pub fn determinant() -> Result<(), String> {
    run(0x5eed_0005, (digits(9, 1..30), 0i64..5), |(d, a0)| {
        let c = convergents_of(&d, a0);
        for k in -1..=c.n() {
            let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(c.determinant(k), BigInt::from(sign));
        }
        Ok(())
    })
}

fn distortion_3_4() -> &'static BigRational {
    static C: OnceLock<BigRational> = OnceLock::new();
    C.get_or_init(|| distortion_constant(3, 4).constant)
}

/// `|I(ab)| / (|I(a)| |I(b)|)` matches its closed form and stays within the
/// distortion constant.
pub fn distortion() -> Result<(), String> {
    run(0x5eed_0006, (digits(3, 1..5), digits(3, 1..5)), |(a, b)| {
        let (p, p1, q, q1) = pq(&b);
        let x = BigRational::new(p.clone(), q.clone());
        let y = BigRational::new(p + p1, q + q1);
        let ratio = pair_ratio(&back_ratio(&a), &x, &y);
        let direct = cylinder_length(&extend(&a, &b)) / (cylinder_length(&a) * cylinder_length(&b));
        prop_assert_eq!(&ratio, &direct);
        let c = distortion_3_4();
        prop_assert!(&ratio <= c && &ratio.recip() <= c);
        Ok(())
    })
}

/// Derivative bound, its finite-difference consequence and the sign rule.
pub fn derivative_bound() -> Result<(), String> {
    let s = (1i64..8, 1i64..8, 1i64..8, any::<bool>(), 0i64..100, 1i64..100);
    run(0x5eed_0007, s, |(a, b, c, three, r_num, h_num)| {
        let f = if three { RatioForm::three_step(a, b, c) } else { RatioForm::two_step(a, b) };
        let r = BigRational::new(r_num.into(), 100.into());
        let h = BigRational::new(h_num.into(), 10_000.into());
        let rh = &r + &h;
        prop_assert!(f.derivative(&r) <= f.derivative_bound(&r));
        let fd = (f.eval(&rh) - f.eval(&r)) / &h;
        let cap = f.derivative_bound(&r).max(f.derivative_bound(&rh));
        prop_assert!(fd <= cap);
        let one = BigRational::one();
        let k = rat((f.x - f.y) * (f.z - f.w)) - rat(f.y * f.w) * (&one + &r) * (&one + &r);
        prop_assert_eq!(f.derivative(&r).signum(), k.signum());
        Ok(())
    })
}

/// `H_s` of a fixed cover strictly decreases in `s`.
pub fn cover_monotone() -> Result<(), String> {
    let g = TransitionGraph::full_shift(2, 1);
    run(0x5eed_0008, (1usize..7, 1u32..99, 1u32..50), |(depth, s1, ds)| {
        let lo = s1 as f64 / 100.0;
        let hi = (s1 + ds).min(100) as f64 / 100.0;
        let a = cover_sum(&g, depth, lo).unwrap().value;
        let b = cover_sum(&g, depth, hi).unwrap().value;
        prop_assert!(b.hi < a.lo);
        Ok(())
    })
}

pub fn all() -> Vec<(&'static str, fn() -> Result<(), String>)> {
    vec![
        ("ratio forms", ratio_forms as fn() -> Result<(), String>),
        ("ordering", ordering),
        ("markov window", markov_window),
        ("splice margins", splice_margins),
        ("determinant", determinant),
        ("distortion", distortion),
        ("derivative bound", derivative_bound),
        ("cover monotone", cover_monotone),
    ]
}
