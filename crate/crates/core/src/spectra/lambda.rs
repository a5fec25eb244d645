//! Fast enclosures of `λ_i` for periodic words and floating-point `λ_i`
//! along long finite streams.

use crate::interval::Interval;

/// Convergent data of `[0; d_1, …, d_k]` in machine integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Conv {
    pub p: u128,
    pub p1: u128,
    pub q: u128,
    pub q1: u128,
}

impl Conv {
    pub const EMPTY: Conv = Conv { p: 0, p1: 1, q: 1, q1: 0 };

    /// Appends a digit at the deep end. Panics on overflow.
    pub fn push(self, d: u32) -> Conv {
        let d = d as u128;
        let step = |a: u128, b: u128| a.checked_mul(d).and_then(|x| x.checked_add(b)).expect("continuant overflow");
        Conv { p: step(self.p, self.p1), p1: self.p, q: step(self.q, self.q1), q1: self.q }
    }

    pub fn of(digits: impl IntoIterator<Item = u32>) -> Conv {
        digits.into_iter().fold(Conv::EMPTY, Conv::push)
    }

    /// `(p + p1 y)/(q + q1 y)` over `y in [ylo, yhi]`: the value is monotone
    /// in `y`, so the endpoint images bound it.
    pub fn range(&self, ylo: Interval, yhi: Interval) -> Interval {
        let f = |y: Interval| (int(self.p) + int(self.p1) * y) / (int(self.q) + int(self.q1) * y);
        f(ylo).hull(&f(yhi))
    }
}

/// Exact integer as an interval.
pub(crate) fn int(x: u128) -> Interval {
    let f = x as f64;
    if f as u128 == x {
        Interval::point(f)
    } else {
        Interval::new(f.next_down(), f.next_up())
    }
}

/// `[0; overline(u)]`, the positive root of
/// `q_{k-1} x^2 + (q_k - p_{k-1}) x - p_k = 0`, written as
/// `2 p_k / (b + sqrt(b^2 + 4 q_{k-1} p_k))` to avoid cancellation.
pub(crate) fn periodic_tail(u: impl IntoIterator<Item = u32>) -> Interval {
    let c = Conv::of(u);
    let b = int(c.q) - int(c.p1);
    let disc = b * b + Interval::from_int(4) * int(c.q1) * int(c.p);
    Interval::from_int(2) * int(c.p) / (b + disc.sqrt())
}

/// Enclosure of `λ_i(overline w)` for `i` in one period.
pub(crate) fn periodic_lambda(w: &[u32], i: usize) -> Interval {
    let n = w.len();
    let right = (1..=n).map(|k| w[(i + k) % n]);
    let left = (1..=n).map(|k| w[(i + n * n - k) % n]);
    Interval::from_int(w[i] as i64) + periodic_tail(right) + periodic_tail(left)
}

/// Enclosure of the Markov value of `overline w`.
pub(crate) fn periodic_markov(w: &[u32]) -> Interval {
    (0..w.len())
        .map(|i| periodic_lambda(w, i))
        .reduce(|a, b| a.max(&b))
        .expect("nonempty period")
}

/// Digits of a tail deep enough for double precision.
pub const TAIL_DEPTH: usize = 48;

/// `[0; d_1, d_2, …]` from at most `TAIL_DEPTH` digits, backward recursion.
pub fn cf_tail<I: Iterator<Item = u32>>(digits: I) -> f64 {
    let ds: Vec<u32> = digits.take(TAIL_DEPTH).collect();
    ds.iter().rev().fold(0.0, |x, &d| 1.0 / (d as f64 + x))
}

/// `λ_i` of a finite stream, truncating both sides at the stream ends.
pub fn truncated_lambda(stream: &[u32], i: usize) -> f64 {
    let right = cf_tail(stream[i + 1..].iter().copied());
    let left = cf_tail(stream[..i].iter().rev().copied());
    stream[i] as f64 + right + left
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_tail() {
        let x = periodic_tail([1]);
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        assert!(x.contains(phi) && x.width() < 1e-12, "{x:?}");
    }

    #[test]
    fn markov_of_small_periods() {
        assert!(periodic_markov(&[1]).contains(5f64.sqrt()));
        assert!(periodic_markov(&[2]).contains(8f64.sqrt()));
        assert!(periodic_markov(&[1, 1, 2, 2]).contains(221f64.sqrt() / 5.0));
        assert!(periodic_markov(&[1, 2]).contains(12f64.sqrt()));
    }

    #[test]
    fn truncated_matches_periodic() {
        let s: Vec<u32> = [1u32, 1, 2, 2].iter().copied().cycle().take(200).collect();
        let v = truncated_lambda(&s, 101);
        assert!((v - periodic_lambda(&[1, 1, 2, 2], 1).mid()).abs() < 1e-12);
    }

    #[test]
    fn range_of_empty_side_is_y() {
        let lo = Interval::point(0.25);
        let hi = Interval::point(0.75);
        let r = Conv::EMPTY.range(lo, hi);
        assert!(r.contains(0.25) && r.contains(0.75) && r.width() < 0.5 + 1e-12);
    }
}
