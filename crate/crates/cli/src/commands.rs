use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use spectra_core::cf::convergents::convergents_of;
use spectra_core::cf::Expansion;
use spectra_core::dimension::hd_bounds;
use spectra_core::graph::{classify_components, scc_decompose, TransitionGraph};
use spectra_core::spectra::{
    build_pt, check_grid, d_estimate, ell_for_eps, holder_exponent_probe, lagrange_estimate, prune_words,
    random_pairs, splice_theta, window_check, ChainLink, DEstimate, SpectrumScan, SpliceConfig, WordStatus,
};
use spectra_core::symbolic::{lagrange_value, markov_value, BiSeq};
use spectra_core::{precision, CFValue, Error, RadicalSum};

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::parse;

/// A command's output in every supported form, plus the exit status to
/// report after printing.
pub struct Report {
    pub json: Value,
    pub csv: Option<String>,
    pub exit: Option<CliError>,
}

impl Report {
    fn new(command: &str, mut body: Value) -> Self {
        body["schema"] = json!(1);
        body["command"] = json!(command);
        Report { json: body, csv: None, exit: None }
    }

    fn csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("serializable") + "\n"),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::input("this command has no CSV form")),
            Format::Text => Ok(text(&self.json)),
        }
    }
}

fn text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, x) in m {
            let s = match x {
                Value::String(s) => s.clone(),
                Value::Array(a) if a.len() > 8 => format!("[{} entries]", a.len()),
                other => other.to_string(),
            };
            let _ = writeln!(out, "{k}: {s}");
        }
    }
    out
}

fn places() -> usize {
    (precision() as usize * 3 / 10).max(10)
}

fn value_json(v: &CFValue) -> Value {
    let i = v.interval();
    json!({ "exact": v.exact.to_string(), "decimal": v.decimal(places()), "enclosure": [i.lo, i.hi] })
}

pub fn cf(literal: &str, terms: usize) -> Result<Report, CliError> {
    let e: Expansion = literal.parse()?;
    let v = CFValue::from_quad(&e.value());
    let digits: Vec<u32> = (1..=terms).map_while(|k| e.digit(k)).collect();
    let conv = convergents_of(&digits, e.a0);
    let mut csv = String::from("k,p,q\n");
    for r in &conv.rows {
        let _ = writeln!(csv, "{},{},{}", r.k, r.p, r.q);
    }
    let body = json!({ "literal": e.to_string(), "value": value_json(&v), "convergents": conv.rows });
    Ok(Report::new("cf", body).csv(csv))
}

pub fn markov(literal: &str) -> Result<Report, CliError> {
    let s: BiSeq = literal.parse()?;
    let m = markov_value(&s);
    let l = lagrange_value(&s);
    let csv = format!(
        "quantity,exact,decimal\nmarkov,{},{}\nlagrange,{},{}\n",
        m.value.exact,
        m.value.decimal(places()),
        l.value.exact,
        l.value.decimal(places())
    );
    let body = json!({
        "sequence": literal,
        "markov": { "value": value_json(&m.value), "attained": m.attaining_index },
        "lagrange": { "value": value_json(&l.value), "attained": l.attaining_index },
    });
    Ok(Report::new("markov", body).csv(csv))
}

fn eps_ell(cfg: &RunConfig, eps: Option<&str>, ell: Option<usize>) -> Result<(num_rational::BigRational, usize), CliError> {
    let eps = parse::rational(eps.or(cfg.eps.as_deref()).unwrap_or("1/2"))?;
    if eps <= num_rational::BigRational::from_integer(0.into()) {
        return Err(CliError::input("eps must be positive"));
    }
    let ell = ell.or(cfg.ell).unwrap_or_else(|| ell_for_eps(&eps));
    Ok((eps, ell))
}

pub fn prune(cfg: &RunConfig, n: u32, t: &str, eps: Option<&str>, ell: Option<usize>, full: bool) -> Result<Report, CliError> {
    let t = parse::level(t)?;
    let (eps, ell) = eps_ell(cfg, eps, ell)?;
    let r = prune_words(n, &t, &eps, ell)?;
    let mut csv = String::from("word,status,witness_lo,witness_hi\n");
    for k in &r.kept {
        let status = match k.status {
            WordStatus::CertifiedNonempty => "certified",
            WordStatus::PossiblyNonempty => "possible",
            WordStatus::Pruned => "pruned",
        };
        let (lo, hi) = k.witness_value.map_or((String::new(), String::new()), |v| (v.lo.to_string(), v.hi.to_string()));
        let _ = writeln!(csv, "\"{}\",{status},{lo},{hi}", k.word);
    }
    let mut body = json!({
        "n": n,
        "t": value_json(&r.t),
        "eps": r.eps.to_string(),
        "ell": r.ell,
        "threshold": value_json(&r.threshold),
        "kept": r.kept.len(),
        "certified": r.certified().count(),
        "pruned": r.pruned_count.to_string(),
        "diagnostic": r.diagnostic,
    });
    if !r.kept.is_empty() {
        let pt = build_pt(&r)?;
        body["components"] = json!(pt.decomposition.components.len());
        body["transient_states"] = json!(pt.decomposition.transient_states.len());
        if full {
            body["words"] = serde_json::to_value(&r.kept).expect("serializable");
            body["certificates"] = serde_json::to_value(&r.certificates).expect("serializable");
            body["classification"] = serde_json::to_value(&pt.classification).expect("serializable");
        }
    }
    let mut rep = Report::new("prune", body).csv(csv);
    if r.kept.is_empty() {
        rep.exit = Some(CliError::Core(Error::Empty(r.diagnostic.unwrap_or_default())));
    }
    Ok(rep)
}

fn read_graph(path: &Path) -> Result<TransitionGraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(text.parse()?)
}

pub fn dim(cfg: &RunConfig, n: Option<u32>, graph: Option<&Path>, depth: Option<usize>) -> Result<Report, CliError> {
    let g = match (n, graph) {
        (_, Some(p)) => read_graph(p)?,
        (Some(n), None) if n >= 1 => TransitionGraph::full_shift(n, 1),
        _ => return Err(CliError::input("give --N or --graph")),
    };
    let depth = depth.unwrap_or(cfg.depth);
    let b = hd_bounds(&g, depth)?;
    let csv = format!("lo,hi,depth,distortion\n{},{},{},{}\n", b.lo, b.hi, b.depth, b.distortion);
    Ok(Report::new("dim", json!({ "bound": b })).csv(csv))
}

/// Grid points are independent, so they are spread over `threads` workers
/// and reassembled in grid order.
fn estimates(n: u32, grid: &[RadicalSum], eps: &num_rational::BigRational, ell: usize, depth: usize, threads: usize) -> Result<Vec<DEstimate>, CliError> {
    let threads = threads.max(1).min(grid.len().max(1));
    let mut slots: Vec<Option<Result<DEstimate, Error>>> = (0..grid.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        let chunks: Vec<_> = slots.chunks_mut(grid.len().div_ceil(threads).max(1)).collect();
        let mut start = 0;
        for chunk in chunks {
            let from = start;
            start += chunk.len();
            s.spawn(move || {
                for (k, slot) in chunk.iter_mut().enumerate() {
                    *slot = Some(d_estimate(n, &grid[from + k], eps, ell, depth));
                }
            });
        }
    });
    slots.into_iter().map(|s| s.expect("filled").map_err(CliError::from)).collect()
}

pub fn scan(cfg: &RunConfig, n: u32, grid: &str, eps: Option<&str>, ell: Option<usize>, depth: Option<usize>) -> Result<Report, CliError> {
    let grid = parse::list(grid, parse::level)?;
    if grid.is_empty() {
        return Err(CliError::input("empty grid"));
    }
    check_grid(&grid)?;
    let (eps, ell) = eps_ell(cfg, eps, ell)?;
    let depth = depth.unwrap_or(cfg.depth);
    let s = SpectrumScan::from_points(estimates(n, &grid, &eps, ell, depth, cfg.threads)?);
    let body = json!({
        "n": n,
        "eps": eps.to_string(),
        "ell": ell,
        "depth": depth,
        "points": s.points,
        "certified_increase": s.certified_increase,
        "inconclusive": s.inconclusive,
        "monotone_lower": s.monotone_lower,
        "full_dimension_bracket": s.full_dimension_bracket(),
    });
    Ok(Report::new("scan", body).csv(s.to_csv()))
}

pub fn scc(graph: &Path) -> Result<Report, CliError> {
    let g = read_graph(graph)?;
    let d = scc_decompose(&g);
    let c = classify_components(&g, &d);
    let mut csv = String::from("component,kind,period,vertices\n");
    for (i, comp) in d.components.iter().enumerate() {
        let names: Vec<String> = comp.iter().map(|&v| g.vertex(v).to_string()).collect();
        let kind = serde_json::to_value(c.kinds[i]).expect("serializable");
        let _ = writeln!(csv, "{i},{},{},\"{}\"", kind.as_str().unwrap_or_default(), c.periods[i], names.join(" "));
    }
    let body = json!({
        "vertices": g.len(),
        "components": d.components.len(),
        "transient_states": d.transient_states.len(),
        "decomposition": d,
        "classification": c,
    });
    Ok(Report::new("scc", body).csv(csv))
}

pub struct SpliceArgs<'a> {
    pub base: &'a str,
    pub chain: &'a str,
    pub length: usize,
    pub r0: Option<u32>,
    pub probe: bool,
    pub digits: Option<&'a Path>,
}

pub fn splice(cfg: &RunConfig, a: &SpliceArgs) -> Result<Report, CliError> {
    let base: Expansion = a.base.parse()?;
    let alphabets = parse::list(a.chain, |s| s.trim().parse::<u32>().map_err(|_| CliError::input(format!("bad alphabet {s:?}"))))?;
    let chain = alphabets
        .iter()
        .map(|&n| ChainLink::new(&TransitionGraph::full_shift(n, 1)))
        .collect::<Result<Vec<_>, _>>()?;
    let sc = SpliceConfig { r0: a.r0 };
    let theta = splice_theta(&base, &chain, a.length, &sc)?;
    let window = window_check(&theta, &chain);
    let estimate = lagrange_estimate(&theta, &chain).ok();
    let mut csv = String::from("n,link,radius,connector_len,s,insert_after,start,centre\n");
    for i in &theta.insertions {
        let _ = writeln!(csv, "{},{},{},{},{},{},{},{}", i.n, i.link, i.radius, i.connector_len, i.s, i.insert_after, i.start, i.centre);
    }
    let mut body = json!({
        "base": base.to_string(),
        "chain": alphabets,
        "maxima": chain.iter().map(|c| value_json(&c.max.lower)).collect::<Vec<_>>(),
        "theta": theta,
        "window": { "checked": window.checked, "violations": window.violations.len(), "min_slack": window.min_slack, "max_bound": window.max_bound },
        "estimate": estimate,
    });
    if a.probe {
        let pairs = random_pairs(cfg.seed, 40, 2, 10, 100_000, 64)?;
        let h = holder_exponent_probe(&pairs, &chain, &sc)?;
        body["holder_exponent"] = json!(h.exponent);
    }
    if let Some(p) = a.digits {
        let s: String = theta.digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        std::fs::write(p, s + "\n")?;
    }
    Ok(Report::new("splice", body).csv(csv))
}
