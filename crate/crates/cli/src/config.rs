use std::path::Path;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(CliError::input(format!("unknown format {s:?}"))),
        }
    }
}

/// Settings shared by every command. Sources in increasing priority:
/// defaults, the config file, flags, and `SPECTRA_PRECISION` for the
/// precision only.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub precision: u32,
    pub depth: usize,
    pub threads: usize,
    pub format: Option<Format>,
    pub seed: u64,
    pub eps: Option<String>,
    pub ell: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { precision: 128, depth: 10, threads: 1, format: None, seed: 0, eps: None, ell: None }
    }
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse().map_err(|_| CliError::input(format!("bad value {v:?} for {key}")))
}

impl RunConfig {
    /// `key = value` lines; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self, CliError> {
        let mut c = RunConfig::default();
        for (n, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let (k, v) = body
                .split_once('=')
                .ok_or_else(|| CliError::input(format!("config line {}: expected key = value", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "precision" => c.precision = parse(k, v)?,
                "depth" => c.depth = parse(k, v)?,
                "threads" => c.threads = parse(k, v)?,
                "format" => c.format = Some(parse(k, v)?),
                "seed" => c.seed = parse(k, v)?,
                "eps" => c.eps = Some(v.to_string()),
                "ell" => c.ell = Some(parse(k, v)?),
                _ => return Err(CliError::input(format!("config line {}: unknown key {k:?}", n + 1))),
            }
        }
        Ok(c)
    }

    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(RunConfig::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::input(format!("cannot read {}: {e}", p.display())))?;
                RunConfig::from_text(&text)
            }
        }
    }

    pub fn apply_env(&mut self) -> Result<(), CliError> {
        if let Ok(v) = std::env::var("SPECTRA_PRECISION") {
            self.precision = parse("SPECTRA_PRECISION", &v)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let c = RunConfig::from_text("# run\nprecision = 256\ndepth=8 # deeper\nformat = csv\n").unwrap();
        assert_eq!((c.precision, c.depth, c.format), (256, 8, Some(Format::Csv)));
    }

    #[test]
    fn rejects_unknown_key() {
        assert!(RunConfig::from_text("colour = red").is_err());
        assert!(RunConfig::from_text("depth 8").is_err());
    }
}
