use num_bigint::BigInt;
use num_rational::BigRational;
use spectra_core::{QuadSurd, RadicalSum};

use crate::error::CliError;

/// `3.2`, `16/5`, `7` or `sqrt(12)` (also `√12`).
pub fn level(s: &str) -> Result<RadicalSum, CliError> {
    let s = s.trim();
    let root = s
        .strip_prefix("sqrt(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| s.strip_prefix('√'));
    if let Some(r) = root {
        let n: i64 = r.trim().parse().map_err(|_| CliError::input(format!("bad radicand in {s:?}")))?;
        if n < 0 {
            return Err(CliError::input("negative radicand"));
        }
        return Ok(RadicalSum::from_quad(&QuadSurd::sqrt_int(n)));
    }
    Ok(RadicalSum::from_rational(rational(s)?))
}

/// `0.01`, `1/100` or an integer.
pub fn rational(s: &str) -> Result<BigRational, CliError> {
    let s = s.trim();
    let bad = || CliError::input(format!("not a number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) || int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    Ok(BigRational::new(n, BigInt::from(10).pow(frac.len() as u32)))
}

pub fn list<T>(s: &str, f: impl Fn(&str) -> Result<T, CliError>) -> Result<Vec<T>, CliError> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(f).collect()
}
