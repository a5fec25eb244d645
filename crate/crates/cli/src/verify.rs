use std::cmp::Ordering;

use serde::Serialize;
use spectra_core::cf::constants::{freiman, junction_12, junction_4, max_f, min_f};
use spectra_core::dimension::eq32_verify;
use spectra_core::spectra::discrete_below_3;
use spectra_core::{QuadSurd, RadicalSum};

use crate::error::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub group: &'static str,
    pub name: String,
    pub computed: String,
    pub expected: String,
    /// distance to the threshold, for inequality checks
    pub margin: Option<f64>,
    pub pass: bool,
}

pub const GROUPS: [&str; 5] = ["freiman", "constants", "spectrum", "max-f", "eq32"];

fn digits(group: &'static str, name: &str, x: &RadicalSum, want: &str) -> Check {
    let places = want.split_once('.').map_or(0, |(_, f)| f.len());
    let got = x.decimal(places);
    Check { group, name: name.into(), pass: got == want, computed: got, expected: want.into(), margin: None }
}

fn equal(group: &'static str, name: &str, got: &QuadSurd, want: &QuadSurd, shown: &str) -> Check {
    let pass = got.to_radical().cmp(&want.to_radical()) == Ordering::Equal;
    Check {
        group,
        name: name.into(),
        computed: got.to_radical().decimal(15),
        expected: shown.into(),
        margin: None,
        pass,
    }
}

fn below(group: &'static str, name: String, value: f64, bound: f64) -> Check {
    Check {
        group,
        name,
        computed: format!("{value:.6}"),
        expected: format!("< {bound}"),
        margin: Some(bound - value),
        pass: value < bound,
    }
}

fn freiman_checks() -> Vec<Check> {
    vec![digits("freiman", "c_F", &RadicalSum::from_quad(&freiman()), "4.52782956616")]
}

fn constant_checks() -> Vec<Check> {
    vec![
        digits("constants", "2+[0;1*]+[0;2,(2,1)*]", &junction_12(), "3.0406"),
        digits("constants", "2+[0;1*]+[0;1,3,(1,4)*]", &junction_4(), "3.4109"),
    ]
}

fn spectrum_checks() -> Result<Vec<Check>, CliError> {
    let values = discrete_below_3(4)?;
    let want = [(5, 1, "√5"), (8, 1, "2√2"), (221, 5, "√221/5")];
    Ok(want
        .iter()
        .enumerate()
        .map(|(i, &(n, d, shown))| {
            let w = QuadSurd::sqrt_int(n).div(&QuadSurd::from_int(d));
            let name = format!("k_{}", i + 1);
            match values.get(i).and_then(|v| v.value.as_quad()) {
                Some(got) => equal("spectrum", &name, &got, &w, shown),
                None => Check {
                    group: "spectrum",
                    name,
                    computed: "missing".into(),
                    expected: shown.into(),
                    margin: None,
                    pass: false,
                },
            }
        })
        .collect())
}

fn max_f_checks() -> Vec<Check> {
    let mut out: Vec<Check> = (2..=6i64)
        .map(|n| {
            let want = QuadSurd::sqrt_int(n * n + 4 * n);
            equal("max-f", &format!("max f N={n}"), &max_f(n as u32), &want, &format!("√{}", n * n + 4 * n))
        })
        .collect();
    let half = QuadSurd::sqrt_int(12).div(&QuadSurd::from_int(2));
    out.push(equal("max-f", "min f N=2", &min_f(2), &half, "√12/2"));
    out
}

fn eq32_checks(ms: &[i64]) -> Vec<Check> {
    let mut out = Vec::new();
    let mut two = f64::NEG_INFINITY;
    for &m in ms {
        let rec = eq32_verify(m, 0.49);
        let first = rec
            .rows
            .iter()
            .map(|r| r.first_monotone.map_or(r.first.hi, |x| x.hi.min(r.first.hi)))
            .fold(f64::NEG_INFINITY, f64::max);
        let second = rec.rows.iter().map(|r| r.second.hi).fold(f64::NEG_INFINITY, f64::max);
        let total = rec.rows.iter().map(|r| r.total_hi).fold(f64::NEG_INFINITY, f64::max);
        out.push(below("eq32", format!("m={m} first branch"), first, 0.412));
        out.push(below("eq32", format!("m={m} second branch"), second, 0.579));
        out.push(below("eq32", format!("m={m} total"), total, 1.0));
        out.push(below("eq32", format!("m={m} first coarse"), rec.first_coarse.hi, 0.412));
        out.push(below("eq32", format!("m={m} second coarse"), rec.second_coarse.hi, 0.579));
        two = two.max(rec.two_child.hi);
    }
    out.push(below("eq32", "two-child sum N=2".into(), two, 0.9));
    out
}

pub fn run(only: Option<&str>, m: Option<i64>) -> Result<Vec<Check>, CliError> {
    if let Some(g) = only {
        if !GROUPS.contains(&g) {
            return Err(CliError::input(format!("unknown check group {g:?}; one of {}", GROUPS.join(", "))));
        }
    }
    let ms: Vec<i64> = match m {
        Some(m) if m < 1 => return Err(CliError::input("--m must be at least 1")),
        Some(m) => vec![m],
        None => (1..=8).collect(),
    };
    let want = |g: &str| only.is_none_or(|o| o == g);
    let mut out = Vec::new();
    if want("freiman") {
        out.extend(freiman_checks());
    }
    if want("constants") {
        out.extend(constant_checks());
    }
    if want("spectrum") {
        out.extend(spectrum_checks()?);
    }
    if want("max-f") {
        out.extend(max_f_checks());
    }
    if want("eq32") {
        out.extend(eq32_checks(&ms));
    }
    Ok(out)
}
