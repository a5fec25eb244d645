//! Independent reference computations in plain floating point.

/// `ln |I(w)|` for every word of length `k` over `{1..n}`, from the
/// continuant pair `(q, q')` as `-ln(q (q + q'))`.
fn log_lengths(n: u32, k: usize) -> Vec<f64> {
    let mut qs: Vec<(f64, f64)> = vec![(1.0, 0.0)];
    for _ in 0..k {
        qs = qs
            .iter()
            .flat_map(|&(q, q1)| (1..=n).map(move |d| (d as f64 * q + q1, q)))
            .collect();
    }
    qs.iter().map(|&(q, q1)| -(q * (q + q1)).ln()).collect()
}

fn log_sum(logs: &[f64], s: f64) -> f64 {
    let m = logs.iter().fold(f64::MIN, |a, &b| a.max(b)) * s;
    m + logs.iter().map(|&l| (l * s - m).exp()).sum::<f64>().ln()
}

/// Dimension of `C_n` by the ratio method: the root in `s` of
/// `Z_{k+1}(s) = Z_k(s)`, where `Z_k(s) = Σ_{|w| = k} |I(w)|^s`.
pub fn hd_ratio(n: u32, k: usize) -> f64 {
    let a = log_lengths(n, k);
    let b = log_lengths(n, k + 1);
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let s = 0.5 * (lo + hi);
        if log_sum(&b, s) > log_sum(&a, s) {
            lo = s;
        } else {
            hi = s;
        }
    }
    0.5 * (lo + hi)
}

fn tail(digits: impl Iterator<Item = u32>) -> f64 {
    let ds: Vec<u32> = digits.take(80).collect();
    ds.iter().rev().fold(0.0, |x, &d| 1.0 / (d as f64 + x))
}

/// Markov value of `overline w` by direct summation of both tails.
pub fn periodic_markov(w: &[u32]) -> f64 {
    let n = w.len();
    (0..n)
        .map(|i| {
            let right = (1..).map(|k| w[(i + k) % n]);
            let left = (1..).map(|k| w[(i + n * 80 - k) % n]);
            w[i] as f64 + tail(right) + tail(left)
        })
        .fold(f64::MIN, f64::max)
}

/// Distinct Markov values below 3 over every word in `{1,2}` of length at
/// most `max_period`, primitive or not.
pub fn discrete_brute(max_period: usize) -> Vec<f64> {
    let mut vals = Vec::new();
    for len in 1..=max_period {
        for mask in 0..(1u32 << len) {
            let w: Vec<u32> = (0..len).map(|i| 1 + ((mask >> i) & 1)).collect();
            let v = periodic_markov(&w);
            if v < 3.0 - 1e-9 {
                vals.push(v);
            }
        }
    }
    vals.sort_by(f64::total_cmp);
    vals.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    vals
}
