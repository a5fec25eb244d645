//! Subshifts of finite type as digraphs on equal-length words.

pub mod classify;
pub mod connector;
pub mod scc;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::cf::word::{parse_digits, Word};
use crate::error::{Error, Result};

pub use classify::{classify_components, Classification, ComponentKind, TransientSet};
pub use connector::{connector, digit_connector, mixing_constant, Connector};
pub use scc::{scc_decompose, Decomposition};

/// Directed graph whose vertices are words of one common length; an edge
/// `v -> w` requires the last `|v|-1` digits of `v` to equal the first
/// `|w|-1` digits of `w`. Vertices are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TransitionGraph {
    vertices: Vec<Word>,
    succ: Vec<Vec<usize>>,
    bound: u32,
}

fn overlaps(v: &Word, w: &Word) -> bool {
    let n = v.len();
    n == 0 || v.digits()[1..] == w.digits()[..n - 1]
}

impl TransitionGraph {
    /// Graph with the given vertices and edges, checked for the overlap
    /// condition, equal lengths and duplicates.
    pub fn new(vertices: Vec<Word>, edges: &[(Word, Word)], bound: u32) -> Result<Self> {
        let mut sorted = vertices.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vertices.len() {
            return Err(Error::input("duplicate vertices"));
        }
        if let Some(first) = sorted.first() {
            if sorted.iter().any(|v| v.len() != first.len() || v.is_empty()) {
                return Err(Error::input("vertices must be nonempty words of one length"));
            }
        }
        let index: HashMap<&Word, usize> = sorted.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut succ = vec![BTreeSet::new(); sorted.len()];
        for (a, b) in edges {
            let (&i, &j) = match (index.get(a), index.get(b)) {
                (Some(i), Some(j)) => (i, j),
                _ => return Err(Error::input(format!("edge {a} -> {b} uses an unknown vertex"))),
            };
            if !overlaps(a, b) {
                return Err(Error::input(format!("edge {a} -> {b} violates the overlap rule")));
            }
            succ[i].insert(j);
        }
        let bound = sorted
            .iter()
            .flat_map(|w| w.digits().iter().copied())
            .max()
            .unwrap_or(1)
            .max(bound);
        let vertices = sorted
            .into_iter()
            .map(|w| w.with_bound(bound))
            .collect::<Result<Vec<_>>>()?;
        Ok(TransitionGraph {
            vertices,
            succ: succ.into_iter().map(|s| s.into_iter().collect()).collect(),
            bound,
        })
    }

    /// All overlap edges between the given words.
    pub fn from_vertices(vertices: Vec<Word>, bound: u32) -> Result<Self> {
        let mut by_prefix: HashMap<&[u32], Vec<&Word>> = HashMap::new();
        for w in &vertices {
            if !w.is_empty() {
                by_prefix.entry(&w.digits()[..w.len() - 1]).or_default().push(w);
            }
        }
        let mut edges = Vec::new();
        for v in &vertices {
            if v.is_empty() {
                continue;
            }
            if let Some(ws) = by_prefix.get(&v.digits()[1..]) {
                for w in ws {
                    edges.push((v.clone(), (*w).clone()));
                }
            }
        }
        TransitionGraph::new(vertices, &edges, bound)
    }

    /// Full shift on `{1..n}` with vertices of length `len`.
    pub fn full_shift(n: u32, len: usize) -> Self {
        TransitionGraph::from_vertices(Word::all(n, len.max(1)), n).expect("full shift")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Common length of the vertex words (0 for the empty graph).
    pub fn word_len(&self) -> usize {
        self.vertices.first().map_or(0, |w| w.len())
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Word {
        &self.vertices[i]
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.vertices.binary_search(w).ok()
    }

    pub fn succ(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(|s| s.len()).sum()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.succ[i].binary_search(&j).is_ok()
    }

    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for (i, j) in self.edges() {
            pred[j].push(i);
        }
        pred
    }

    /// Subgraph induced by `keep` (indices into this graph).
    pub fn induced(&self, keep: &[usize]) -> TransitionGraph {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &i) in keep.iter().enumerate() {
            pos[i] = k;
        }
        let succ = keep
            .iter()
            .map(|&i| {
                self.succ[i]
                    .iter()
                    .filter(|&&j| pos[j] != usize::MAX)
                    .map(|&j| pos[j])
                    .collect()
            })
            .collect();
        TransitionGraph {
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            succ,
            bound: self.bound,
        }
    }

    /// Vertices surviving repeated removal of sources and sinks.
    pub fn core_indices(&self) -> Vec<usize> {
        let n = self.len();
        let pred = self.predecessors();
        let mut indeg: Vec<usize> = pred.iter().map(|p| p.len()).collect();
        let mut outdeg: Vec<usize> = self.succ.iter().map(|s| s.len()).collect();
        let mut alive = vec![true; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0 || outdeg[i] == 0).collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &w in &self.succ[v] {
                if alive[w] {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        queue.push_back(w);
                    }
                }
            }
            for &u in &pred[v] {
                if alive[u] {
                    outdeg[u] -= 1;
                    if outdeg[u] == 0 {
                        queue.push_back(u);
                    }
                }
            }
        }
        (0..n).filter(|&i| alive[i]).collect()
    }

    /// The subgraph carrying every bi-infinite path.
    pub fn core(&self) -> TransitionGraph {
        self.induced(&self.core_indices())
    }

    /// Graph of the reversed sequences: reversed words, reversed edges.
    pub fn transpose(&self) -> TransitionGraph {
        let vertices: Vec<Word> = self.vertices.iter().map(|w| w.reversed()).collect();
        let edges: Vec<(Word, Word)> = self
            .edges()
            .map(|(i, j)| (vertices[j].clone(), vertices[i].clone()))
            .collect();
        TransitionGraph::new(vertices, &edges, self.bound).expect("transpose of a valid graph")
    }

    /// Words of length `len` occurring in bi-infinite paths of the core.
    pub fn language(&self, len: usize) -> BTreeSet<Vec<u32>> {
        let core = self.core();
        let n = core.word_len();
        let mut out = BTreeSet::new();
        if core.is_empty() {
            return out;
        }
        if len <= n {
            for w in &core.vertices {
                out.insert(w.digits()[..len].to_vec());
            }
            return out;
        }
        // extend along paths of len - n edges
        let mut frontier: Vec<(usize, Vec<u32>)> =
            (0..core.len()).map(|i| (i, core.vertices[i].digits().to_vec())).collect();
        for _ in 0..(len - n) {
            let mut next = Vec::new();
            for (v, word) in frontier {
                for &w in &core.succ[v] {
                    let mut x = word.clone();
                    x.push(*core.vertices[w].digits().last().unwrap());
                    next.push((w, x));
                }
            }
            next.sort();
            next.dedup();
            frontier = next;
        }
        frontier.into_iter().map(|(_, w)| w).collect()
    }

    /// Does the word appear along some path of the graph? The word is
    /// checked window by window.
    pub fn admits(&self, digits: &[u32]) -> bool {
        let n = self.word_len();
        if digits.is_empty() {
            return !self.is_empty();
        }
        if digits.len() < n {
            return self
                .vertices
                .iter()
                .any(|v| v.digits().windows(digits.len()).any(|x| x == digits));
        }
        let mut prev: Option<usize> = None;
        for win in digits.windows(n) {
            let w = match Word::new(win.to_vec(), self.bound).ok().and_then(|w| self.index_of(&w)) {
                Some(w) => w,
                None => return false,
            };
            if let Some(p) = prev {
                if !self.has_edge(p, w) {
                    return false;
                }
            }
            prev = Some(w);
        }
        true
    }
}

/// Builds the graph of sequences whose length-`n(X)` windows all extend a
/// word of `X`. Shorter words are right-padded with every digit string up
/// to the longest length; this requires `normalize`.
pub fn from_word_set(words: &[Word], normalize: bool) -> Result<TransitionGraph> {
    if words.is_empty() {
        return Err(Error::input("empty word set"));
    }
    if words.iter().any(|w| w.is_empty()) {
        return Err(Error::input("empty word in word set"));
    }
    let n = words.iter().map(|w| w.len()).max().unwrap();
    let bound = words.iter().map(|w| w.bound()).max().unwrap();
    let mixed = words.iter().any(|w| w.len() != n);
    if mixed && !normalize {
        return Err(Error::input("mixed word lengths need normalization"));
    }
    let mut padded = BTreeSet::new();
    for w in words {
        for tail in Word::all(bound, n - w.len()) {
            padded.insert(w.concat(&tail).with_bound(bound)?);
        }
    }
    let g = TransitionGraph::from_vertices(padded.into_iter().collect(), bound)?;
    let core = g.core();
    if core.is_empty() {
        log::warn!("word set has no bi-infinite admissible sequence (empty core)");
    }
    Ok(core)
}

impl FromStr for TransitionGraph {
    type Err = Error;

    /// One `vertex: succ1 succ2 …` line per vertex; `#` starts a comment.
    /// A line may declare `bound = N`.
    fn from_str(s: &str) -> Result<Self> {
        let mut verts = BTreeSet::new();
        let mut edges = Vec::new();
        let mut bound = 1;
        let mut offset = 0;
        for line in s.lines() {
            let here = offset;
            offset += line.len() + 1;
            let body = line.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix("bound") {
                let v = rest.trim().trim_start_matches('=').trim();
                bound = v.parse().map_err(|_| Error::Parse {
                    pos: here,
                    msg: format!("bad bound {v:?}"),
                })?;
                continue;
            }
            let colon = body.find(':').ok_or(Error::Parse {
                pos: here,
                msg: "expected `vertex: successors`".into(),
            })?;
            let v = Word::from_digits(parse_digits(&body[..colon], here)?)?;
            verts.insert(v.clone());
            for tok in body[colon + 1..].split_whitespace() {
                let w = Word::from_digits(parse_digits(tok, here + colon + 1)?)?;
                verts.insert(w.clone());
                edges.push((v.clone(), w));
            }
        }
        let bound = verts.iter().map(|w| w.bound()).max().unwrap_or(1).max(bound);
        let verts: Vec<Word> = verts
            .into_iter()
            .map(|w| w.with_bound(bound))
            .collect::<Result<_>>()?;
        let edges: Vec<(Word, Word)> = edges
            .into_iter()
            .map(|(a, b)| Ok((a.with_bound(bound)?, b.with_bound(bound)?)))
            .collect::<Result<_>>()?;
        TransitionGraph::new(verts, &edges, bound)
    }
}

impl fmt::Display for TransitionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bound = {}", self.bound)?;
        for (i, v) in self.vertices.iter().enumerate() {
            write!(f, "{v}:")?;
            for &j in &self.succ[i] {
                write!(f, " {}", self.vertices[j])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn words(s: &[&str]) -> Vec<Word> {
        s.iter().map(|w| w.parse().unwrap()).collect()
    }

    #[test]
    fn full_two_shift() {
        let g = from_word_set(&words(&["1", "2"]), false).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn golden_mean() {
        let g = from_word_set(&words(&["1,1", "1,2", "2,1"]), false).unwrap();
        assert_eq!(g.len(), 3);
        // length-3 factors all avoid 2,2
        for w in g.language(3) {
            assert!(!w.windows(2).any(|x| x == [2, 2]));
        }
        assert_eq!(g.language(3).len(), 5);
    }

    #[test]
    fn empty_core() {
        let g = from_word_set(&words(&["1,2"]), false).unwrap();
        assert!(g.is_empty());
        assert!(from_word_set(&words(&["1", "1,2"]), false).is_err());
    }

    #[test]
    fn padding_mixed_lengths() {
        // {1} padded to {1,1},{1,2}; plus {2,1}
        let g = from_word_set(&words(&["1", "2,1"]), true).unwrap();
        assert_eq!(g.language(2), from_word_set(&words(&["1,1", "1,2", "2,1"]), false).unwrap().language(2));
    }

    #[test]
    fn text_round_trip() {
        let g = TransitionGraph::full_shift(2, 2);
        let back: TransitionGraph = g.to_string().parse().unwrap();
        assert_eq!(g, back);
        let bad = "1,1: 2,2\n".parse::<TransitionGraph>();
        assert!(bad.is_err());
    }

    #[test]
    fn transpose_reverses_language() {
        let g = from_word_set(&words(&["1,1", "1,2", "2,1", "2,3", "3,3", "3,1"]), false).unwrap();
        let t = g.transpose();
        let rev: BTreeSet<Vec<u32>> = g
            .language(4)
            .into_iter()
            .map(|mut w| {
                w.reverse();
                w
            })
            .collect();
        assert_eq!(t.language(4), rev);
    }
}
