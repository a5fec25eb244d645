use std::collections::VecDeque;

use num_integer::Integer;
use serde::Serialize;

use super::scc::Decomposition;
use super::TransitionGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    /// a single periodic orbit
    Trivial,
    Mixing,
    PeriodicNonmixing,
}

/// Orbits flowing from one component to another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransientSet {
    pub source: usize,
    pub sink: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kinds: Vec<ComponentKind>,
    /// gcd of cycle lengths per component
    pub periods: Vec<u64>,
    pub transient_sets: Vec<TransientSet>,
}

/// gcd of the cycle lengths through a strongly connected vertex set,
/// from BFS levels: gcd over internal edges of `level(u) + 1 - level(v)`.
pub fn component_period(g: &TransitionGraph, comp: &[usize], component_of: &[Option<usize>]) -> u64 {
    let id = component_of[comp[0]];
    let mut level = vec![i64::MIN; g.len()];
    level[comp[0]] = 0;
    let mut queue = VecDeque::from([comp[0]]);
    let mut gcd = 0i64;
    while let Some(u) = queue.pop_front() {
        for &v in g.succ(u) {
            if component_of[v] != id {
                continue;
            }
            if level[v] == i64::MIN {
                level[v] = level[u] + 1;
                queue.push_back(v);
            } else {
                gcd = gcd.gcd(&(level[u] + 1 - level[v]));
            }
        }
    }
    gcd.unsigned_abs()
}

pub fn classify_components(g: &TransitionGraph, d: &Decomposition) -> Classification {
    let mut kinds = Vec::new();
    let mut periods = Vec::new();
    for (c, comp) in d.components.iter().enumerate() {
        let internal_out = |v: usize| {
            g.succ(v)
                .iter()
                .filter(|&&w| d.component_of[w] == Some(c))
                .count()
        };
        let period = component_period(g, comp, &d.component_of);
        periods.push(period);
        kinds.push(if comp.iter().all(|&v| internal_out(v) == 1) {
            ComponentKind::Trivial
        } else if period == 1 {
            ComponentKind::Mixing
        } else {
            ComponentKind::PeriodicNonmixing
        });
    }
    // reachability between components through arbitrary vertices
    let mut transient_sets = Vec::new();
    for (c, comp) in d.components.iter().enumerate() {
        let mut seen = vec![false; g.len()];
        let mut queue: VecDeque<usize> = comp.iter().copied().collect();
        for &v in comp {
            seen[v] = true;
        }
        while let Some(u) = queue.pop_front() {
            for &v in g.succ(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        for (e, other) in d.components.iter().enumerate() {
            if e != c && seen[other[0]] {
                transient_sets.push(TransientSet { source: c, sink: e });
            }
        }
    }
    Classification {
        kinds,
        periods,
        transient_sets,
    }
}
