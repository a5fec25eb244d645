use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::interval::Interval;

/// Subintervals of `[0, 1]` used for the enclosure of a supremum over `r`.
pub const R_PIECES: usize = 512;
pub const FIRST_THRESHOLD: f64 = 0.412;
pub const SECOND_THRESHOLD: f64 = 0.579;
pub const TWO_CHILD_THRESHOLD: f64 = 0.9;
/// Exponents scanned for slack, in hundredths.
pub const S_GRID: std::ops::RangeInclusive<u32> = 40..=50;

/// `(1+r)/((x+yr)(z+wr))` with integer coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RatioForm {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    pub w: i64,
}

impl RatioForm {
    /// `|I(u a b)| / |I(u)|`.
    pub fn two_step(a: i64, b: i64) -> Self {
        RatioForm { x: a * b + 1, y: b, z: a * b + a + 1, w: b + 1 }
    }

    /// `|I(u a b c)| / |I(u)|`.
    pub fn three_step(a: i64, b: i64, c: i64) -> Self {
        let x = a * b * c + c + a;
        RatioForm { x, y: b * c + 1, z: x + a * b + 1, w: b * c + b + 1 }
    }

    pub fn eval(&self, r: &BigRational) -> BigRational {
        let k = |n: i64| BigRational::from_integer(n.into());
        (BigRational::one() + r) / ((k(self.x) + k(self.y) * r) * (k(self.z) + k(self.w) * r))
    }

    /// Exact derivative in `r` by the quotient rule.
    pub fn derivative(&self, r: &BigRational) -> BigRational {
        let k = |n: i64| BigRational::from_integer(n.into());
        let u = k(self.x) + k(self.y) * r;
        let v = k(self.z) + k(self.w) * r;
        let den = &u * &v;
        let dden = k(self.y) * &v + k(self.w) * &u;
        (&den - (BigRational::one() + r) * dden) / (&den * &den)
    }

    /// `((x-y)(z-w) - yw) / den(r)^2`, an upper bound for the derivative on `r >= 0`.
    pub fn derivative_bound(&self, r: &BigRational) -> BigRational {
        let k = |n: i64| BigRational::from_integer(n.into());
        let num = (self.x - self.y) * (self.z - self.w) - self.y * self.w;
        let den = (k(self.x) + k(self.y) * r) * (k(self.z) + k(self.w) * r);
        k(num) / (&den * &den)
    }

    /// The derivative is negative on all of `r >= 0`.
    pub fn decreasing(&self) -> bool {
        (self.x - self.y) * (self.z - self.w) - self.y * self.w <= 0
    }

    /// Upper enclosure of the ratio over `r in [a, b]`, both ends >= 0.
    fn upper_on(&self, a: f64, b: f64) -> Interval {
        let k = |n: i64| Interval::from_int(n);
        let (ra, rb) = (Interval::point(a), Interval::point(b));
        (Interval::point(1.0) + rb) / ((k(self.x) + k(self.y) * ra) * (k(self.z) + k(self.w) * ra))
    }

    fn at(&self, r: f64) -> Interval {
        self.upper_on(r, r)
    }
}

/// Enclosure of `sup_{r in [0,1]} Σ f_j(r)^s`.
///
/// The upper end is the max over `R_PIECES` subintervals of the summed
/// piecewise bounds; the lower end is the best sampled value.
pub fn sup_sum(forms: &[RatioForm], s: f64) -> Interval {
    let s = Interval::point(s);
    let pow = |v: Interval| (v.ln() * s).exp();
    let mut hi = 0.0f64;
    let mut lo = 0.0f64;
    for k in 0..R_PIECES {
        let a = k as f64 / R_PIECES as f64;
        let b = (k + 1) as f64 / R_PIECES as f64;
        let up = forms.iter().fold(Interval::point(0.0), |acc, f| acc + pow(f.upper_on(a, b)));
        let sample = forms.iter().fold(Interval::point(0.0), |acc, f| acc + pow(f.at(a)));
        hi = hi.max(up.hi);
        lo = lo.max(sample.lo);
    }
    let end = forms.iter().fold(Interval::point(0.0), |acc, f| acc + pow(f.at(1.0)));
    Interval::new(lo.max(end.lo), hi)
}

/// If every term is decreasing on `[0, 1]`, the supremum is the value at 0.
pub fn sup_at_zero(forms: &[RatioForm], s: f64) -> Option<Interval> {
    if !forms.iter().all(RatioForm::decreasing) {
        return None;
    }
    let s = Interval::point(s);
    Some(forms.iter().fold(Interval::point(0.0), |acc, f| acc + (f.at(0.0).ln() * s).exp()))
}

pub fn first_forms(m: i64, i: i64) -> Vec<RatioForm> {
    (m + 1..=m + 3).map(|j| RatioForm::three_step(i, 1, j)).collect()
}

pub fn second_forms(m: i64, i: i64) -> Vec<RatioForm> {
    (m + 1..=m + 3).map(|j| RatioForm::two_step(i + 1, j)).collect()
}

pub fn two_child_forms() -> Vec<RatioForm> {
    vec![RatioForm::two_step(1, 1), RatioForm::two_step(2, 2)]
}

/// The coarse closed forms: `Σ (k/((2j+1)(2j+3)))^s` for `j = m+1..m+3`.
pub fn coarse_bound(m: i64, numerator: i64, s: f64) -> Interval {
    let s = Interval::point(s);
    (m + 1..=m + 3).fold(Interval::point(0.0), |acc, j| {
        let v = Interval::from_int(numerator) / Interval::from_int((2 * j + 1) * (2 * j + 3));
        acc + (v.ln() * s).exp()
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Eq32Row {
    pub i: i64,
    pub first: Interval,
    /// supremum at `r = 0` when every first-branch term is decreasing
    pub first_monotone: Option<Interval>,
    pub second: Interval,
    pub total_hi: f64,
    pub first_ok: bool,
    pub second_ok: bool,
    pub total_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Eq32Record {
    pub m: i64,
    pub s: f64,
    pub rows: Vec<Eq32Row>,
    pub first_coarse: Interval,
    pub second_coarse: Interval,
    pub two_child: Interval,
    pub two_child_ok: bool,
    /// smallest exponent on the 0.40..0.50 grid keeping every total below 1
    pub min_passing_s: Option<f64>,
    pub passed: bool,
}

fn row(m: i64, i: i64, s: f64) -> Eq32Row {
    let f = first_forms(m, i);
    let first = sup_sum(&f, s);
    let first_monotone = sup_at_zero(&f, s);
    let first_hi = first_monotone.map_or(first.hi, |x| x.hi.min(first.hi));
    let second = sup_sum(&second_forms(m, i), s);
    let total_hi = (Interval::point(first_hi) + Interval::point(second.hi)).hi;
    Eq32Row {
        i,
        first,
        first_monotone,
        second,
        total_hi,
        first_ok: first_hi < FIRST_THRESHOLD,
        second_ok: second.hi < SECOND_THRESHOLD,
        total_ok: total_hi < 1.0,
    }
}

fn totals_pass(m: i64, s: f64) -> bool {
    (1..=m + 2).all(|i| row(m, i, s).total_ok)
}

/// Certifies both branch sums for every `i in 1..=m+2` over `r in [0,1]`.
pub fn eq32_verify(m: i64, s: f64) -> Eq32Record {
    assert!(m >= 1, "eq32_verify needs m >= 1");
    let rows: Vec<Eq32Row> = (1..=m + 2).map(|i| row(m, i, s)).collect();
    let two_child = sup_sum(&two_child_forms(), s);
    let two_child_ok = two_child.hi < TWO_CHILD_THRESHOLD;
    let min_passing_s = S_GRID.map(|h| h as f64 / 100.0).find(|&t| totals_pass(m, t));
    let passed = two_child_ok && rows.iter().all(|r| r.first_ok && r.second_ok && r.total_ok);
    Eq32Record {
        m,
        s,
        rows,
        first_coarse: coarse_bound(m, 1, s),
        second_coarse: coarse_bound(m, 2, s),
        two_child,
        two_child_ok,
        min_passing_s,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::cylinder::{back_ratio, cylinder_length};

    #[test]
    fn forms_match_cylinder_ratios() {
        let u = [2u32, 1, 3];
        let r = back_ratio(&u);
        let base = cylinder_length(&u);
        let ext = |v: &[u32]| {
            let mut d = u.to_vec();
            d.extend_from_slice(v);
            cylinder_length(&d) / &base
        };
        assert_eq!(RatioForm::two_step(2, 3).eval(&r), ext(&[2, 3]));
        assert_eq!(RatioForm::three_step(1, 1, 4).eval(&r), ext(&[1, 1, 4]));
    }

    #[test]
    fn m_one_matches_coarse() {
        let rec = eq32_verify(1, 0.49);
        assert!(rec.passed, "{rec:?}");
        let r1 = &rec.rows[0];
        // every first-branch term decreases, so the sup sits at r = 0
        let mono = r1.first_monotone.unwrap();
        assert!(mono.hi <= rec.first_coarse.hi + 1e-12);
        assert!(rec.first_coarse.hi < 0.412 && rec.second_coarse.hi < 0.579);
        assert!((rec.first_coarse.mid() - 0.411).abs() < 1e-3);
        assert!((rec.second_coarse.mid() - 0.578).abs() < 1e-3);
        for row in &rec.rows {
            assert!(row.first.lo <= row.first.hi && row.second.hi <= rec.second_coarse.hi);
        }
    }

    #[test]
    fn two_child_value() {
        let rec = eq32_verify(1, 0.49);
        assert!(rec.two_child.hi < 0.9);
        let coarse = (1.0f64 / 3.0).powf(0.49) + (2.0f64 / 35.0).powf(0.49);
        assert!(rec.two_child.hi <= coarse);
    }

    #[test]
    fn slack_grid() {
        let rec = eq32_verify(1, 0.49);
        let s = rec.min_passing_s.unwrap();
        assert!(s <= 0.49);
    }

    #[test]
    fn derivative_closed_form() {
        let f = RatioForm { x: 7, y: 2, z: 9, w: 3 };
        for k in 0..=10 {
            let r = BigRational::new(k.into(), 10.into());
            let u = BigRational::from_integer(7.into()) + BigRational::from_integer(2.into()) * &r;
            let v = BigRational::from_integer(9.into()) + BigRational::from_integer(3.into()) * &r;
            let one = BigRational::one();
            let num = BigRational::from_integer(((7 - 2) * (9 - 3)).into())
                - BigRational::from_integer(6.into()) * (&one + &r) * (&one + &r);
            let den = &u * &v;
            assert_eq!(f.derivative(&r), num / (&den * &den));
            assert!(f.derivative(&r) <= f.derivative_bound(&r));
        }
    }
}
