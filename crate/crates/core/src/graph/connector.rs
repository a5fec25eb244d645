use std::collections::VecDeque;

use serde::Serialize;

use super::classify::{classify_components, ComponentKind};
use super::scc::Decomposition;
use super::TransitionGraph;
use crate::cf::word::Word;
use crate::error::{Error, Result};

/// A path `a = v_0 -> v_1 -> … -> v_k = b` inside a component. `word` holds
/// the last digits of the interior vertices, so `a · word · last(b)` is the
/// digit string spelled by the path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connector {
    pub interior: Vec<usize>,
    pub word: Word,
}

fn ensure_mixing(g: &TransitionGraph, d: &Decomposition, comp: usize) -> Result<()> {
    if comp >= d.components.len() {
        return Err(Error::input(format!("no component {comp}")));
    }
    let kinds = classify_components(g, d).kinds;
    if kinds[comp] != ComponentKind::Mixing {
        return Err(Error::NotMixing(comp));
    }
    Ok(())
}

/// BFS distances and parents from `a` (path length >= 1 back to `a`).
fn bfs(g: &TransitionGraph, d: &Decomposition, comp: usize, a: usize) -> (Vec<usize>, Vec<usize>) {
    let mut dist = vec![usize::MAX; g.len()];
    let mut parent = vec![usize::MAX; g.len()];
    let mut queue = VecDeque::new();
    // successors are sorted, so ties go to the smaller vertex
    for &w in g.succ(a) {
        if d.component_of[w] == Some(comp) && dist[w] == usize::MAX {
            dist[w] = 1;
            parent[w] = a;
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.succ(u) {
            if d.component_of[w] == Some(comp) && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

fn spell(g: &TransitionGraph, interior: &[usize]) -> Word {
    let digits = interior
        .iter()
        .map(|&v| *g.vertex(v).digits().last().unwrap())
        .collect();
    Word::new(digits, g.bound()).expect("digits from graph vertices")
}

/// Uniform bound `c` on connector lengths: the largest shortest-path length
/// between two vertices of the component, minus one.
pub fn mixing_constant(g: &TransitionGraph, d: &Decomposition, comp: usize) -> Result<usize> {
    ensure_mixing(g, d, comp)?;
    let mut diam = 1;
    for &a in &d.components[comp] {
        let (dist, _) = bfs(g, d, comp, a);
        for &b in &d.components[comp] {
            diam = diam.max(dist[b]);
        }
    }
    Ok(diam - 1)
}

/// Shortest connector from `a` to `b`; deterministic.
pub fn connector(g: &TransitionGraph, d: &Decomposition, comp: usize, a: usize, b: usize) -> Result<Connector> {
    ensure_mixing(g, d, comp)?;
    if d.component_of[a] != Some(comp) || d.component_of[b] != Some(comp) {
        return Err(Error::input("connector endpoints must lie in the component"));
    }
    let (dist, parent) = bfs(g, d, comp, a);
    debug_assert!(dist[b] != usize::MAX);
    let mut interior = Vec::new();
    let mut v = parent[b];
    while interior.len() + 1 < dist[b] {
        interior.push(v);
        v = parent[v];
    }
    interior.reverse();
    Ok(Connector {
        word: spell(g, &interior),
        interior,
    })
}

/// Connector with exactly `len` interior vertices, if one exists. The
/// choice is greedy on the smallest vertex, hence deterministic.
pub fn digit_connector(
    g: &TransitionGraph,
    d: &Decomposition,
    comp: usize,
    a: usize,
    b: usize,
    len: usize,
) -> Result<Connector> {
    ensure_mixing(g, d, comp)?;
    let steps = len + 1;
    let in_comp = |v: usize| d.component_of[v] == Some(comp);
    // reach[t][v]: v reaches b in exactly t steps inside the component
    let mut reach = vec![vec![false; g.len()]; steps + 1];
    reach[0][b] = true;
    for t in 1..=steps {
        for &v in &d.components[comp] {
            reach[t][v] = g.succ(v).iter().any(|&w| in_comp(w) && reach[t - 1][w]);
        }
    }
    if !reach[steps][a] {
        return Err(Error::input(format!(
            "no connector of length {len} between the given vertices"
        )));
    }
    let mut interior = Vec::new();
    let mut v = a;
    for t in (1..steps).rev() {
        v = *g
            .succ(v)
            .iter()
            .find(|&&w| in_comp(w) && reach[t][w])
            .unwrap();
        interior.push(v);
    }
    Ok(Connector {
        word: spell(g, &interior),
        interior,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::testutil::digraph;
    use crate::graph::{from_word_set, scc_decompose};

    #[test]
    fn full_shift_direct_edge() {
        let g = TransitionGraph::full_shift(2, 1);
        let d = scc_decompose(&g);
        let c = connector(&g, &d, 0, 0, 1).unwrap();
        assert!(c.word.is_empty());
        assert_eq!(mixing_constant(&g, &d, 0).unwrap(), 0);
    }

    #[test]
    fn golden_mean_connector() {
        let ws: Vec<Word> = ["1,1", "1,2", "2,1"].iter().map(|w| w.parse().unwrap()).collect();
        let g = from_word_set(&ws, false).unwrap();
        let d = scc_decompose(&g);
        let a = g.index_of(&"2,1".parse::<Word>().unwrap().with_bound(2).unwrap()).unwrap();
        let b = g.index_of(&"1,2".parse::<Word>().unwrap().with_bound(2).unwrap()).unwrap();
        let c = connector(&g, &d, 0, a, b).unwrap();
        assert!(c.word.is_empty());
        // 1,2 -> 2,1 -> 1,2 : back to itself in two steps
        let c = connector(&g, &d, 0, b, b).unwrap();
        assert_eq!(c.word.digits(), &[1]);
        let again = connector(&g, &d, 0, b, b).unwrap();
        assert_eq!(c, again);
        let m = mixing_constant(&g, &d, 0).unwrap();
        assert!(m <= g.len() + m + 1);
        for len in 2..6 {
            let c = digit_connector(&g, &d, 0, b, b, len).unwrap();
            assert_eq!(c.interior.len(), len);
            let mut path = vec![b];
            path.extend(&c.interior);
            path.push(b);
            assert!(path.windows(2).all(|e| g.has_edge(e[0], e[1])));
        }
    }

    #[test]
    fn nonmixing_rejected() {
        let g = digraph(2, &[(1, 2), (2, 1)]);
        let d = scc_decompose(&g);
        assert_eq!(connector(&g, &d, 0, 0, 1), Err(Error::NotMixing(0)));
    }
}
