use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite string of continued-fraction digits in `1..=bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    digits: Vec<u32>,
    bound: u32,
}

impl Word {
    pub fn new(digits: Vec<u32>, bound: u32) -> Result<Self> {
        if bound == 0 {
            return Err(Error::input("alphabet bound must be at least 1"));
        }
        if let Some(&d) = digits.iter().find(|&&d| d == 0 || d > bound) {
            return Err(Error::DigitOutOfRange { digit: d, bound });
        }
        Ok(Word { digits, bound })
    }

    /// Word whose bound is its largest digit (1 for the empty word).
    pub fn from_digits(digits: Vec<u32>) -> Result<Self> {
        let bound = digits.iter().copied().max().unwrap_or(1).max(1);
        Word::new(digits, bound)
    }

    pub fn empty(bound: u32) -> Self {
        Word {
            digits: Vec::new(),
            bound: bound.max(1),
        }
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn with_bound(&self, bound: u32) -> Result<Word> {
        Word::new(self.digits.clone(), bound)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Word {
            digits,
            bound: self.bound.max(other.bound),
        }
    }

    pub fn push(&self, d: u32) -> Word {
        let mut digits = self.digits.clone();
        digits.push(d);
        Word {
            digits,
            bound: self.bound.max(d),
        }
    }

    pub fn reversed(&self) -> Word {
        let mut digits = self.digits.clone();
        digits.reverse();
        Word {
            digits,
            bound: self.bound,
        }
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word {
            digits: self.digits[from..to].to_vec(),
            bound: self.bound,
        }
    }

    /// All words of length `n` over `1..=bound`, in lexicographic order.
    pub fn all(bound: u32, n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty(bound)];
        for _ in 0..n {
            out = out
                .iter()
                .flat_map(|w| (1..=bound).map(move |d| w.push(d)))
                .collect();
        }
        for w in &mut out {
            w.bound = bound;
        }
        out
    }
}

/// Parses comma-separated digits; an empty string is the empty word.
/// `offset` is added to reported error positions.
pub(crate) fn parse_digits(s: &str, offset: usize) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    if s.trim().is_empty() {
        return Ok(out);
    }
    let mut pos = offset;
    for part in s.split(',') {
        let t = part.trim();
        let lead = part.len() - part.trim_start().len();
        let d: u32 = t.parse().map_err(|_| Error::Parse {
            pos: pos + lead,
            msg: format!("expected a positive digit, found {t:?}"),
        })?;
        if d == 0 {
            return Err(Error::Parse {
                pos: pos + lead,
                msg: "digits must be positive".into(),
            });
        }
        out.push(d);
        pos += part.len() + 1;
    }
    Ok(out)
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Word::from_digits(parse_digits(s, 0)?)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_digits(f, &self.digits)
    }
}

pub(crate) fn write_digits(f: &mut fmt::Formatter<'_>, d: &[u32]) -> fmt::Result {
    for (i, x) in d.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}
