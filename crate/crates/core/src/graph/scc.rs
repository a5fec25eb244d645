use serde::Serialize;

use super::TransitionGraph;

/// Irreducible components in topological order (edges between components
/// only go forward) plus the transient states, which lie on no cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub components: Vec<Vec<usize>>,
    pub transient_states: Vec<usize>,
    /// component id of each vertex, `None` for transient states
    pub component_of: Vec<Option<usize>>,
}

/// Tarjan's algorithm with an explicit stack. Returns strongly connected
/// classes in reverse topological order (sinks first).
pub(crate) fn tarjan(g: &TransitionGraph) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // (vertex, position in its successor list)
        let mut call = vec![(root, 0usize)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = call.last_mut() {
            let v = top.0;
            let succ = g.succ(v);
            if top.1 < succ.len() {
                let w = succ[top.1];
                top.1 += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(u, _)) = call.last() {
                low[u] = low[u].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }
    out
}

pub fn scc_decompose(g: &TransitionGraph) -> Decomposition {
    let mut classes = tarjan(g);
    classes.reverse();
    let mut components = Vec::new();
    let mut transient_states = Vec::new();
    let mut component_of = vec![None; g.len()];
    for c in classes {
        if c.len() == 1 && !g.has_edge(c[0], c[0]) {
            transient_states.push(c[0]);
            continue;
        }
        for &v in &c {
            component_of[v] = Some(components.len());
        }
        components.push(c);
    }
    transient_states.sort_unstable();
    Decomposition {
        components,
        transient_states,
        component_of,
    }
}

impl Decomposition {
    /// No edge runs from a later component to an earlier one.
    pub fn is_block_triangular(&self, g: &TransitionGraph) -> bool {
        g.edges().all(|(i, j)| match (self.component_of[i], self.component_of[j]) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::word::Word;
    use crate::graph::testutil::digraph;

    #[test]
    fn examples() {
        let d = scc_decompose(&TransitionGraph::full_shift(2, 1));
        assert_eq!(d.components.len(), 1);
        assert!(d.transient_states.is_empty());

        // a<->b, b->c, c->c
        let g = digraph(3, &[(1, 2), (2, 1), (2, 3), (3, 3)]);
        let d = scc_decompose(&g);
        assert_eq!(d.components, vec![vec![0, 1], vec![2]]);
        assert!(d.transient_states.is_empty());
        assert!(d.is_block_triangular(&g));

        // chain a->b->c, loops at a and c
        let g = digraph(3, &[(1, 1), (1, 2), (2, 3), (3, 3)]);
        let d = scc_decompose(&g);
        assert_eq!(d.components, vec![vec![0], vec![2]]);
        assert_eq!(d.transient_states, vec![1]);
    }

    #[test]
    fn long_path_does_not_overflow() {
        let n = 20_000u32;
        let v: Vec<Word> = (1..=n).map(|d| Word::new(vec![d], n).unwrap()).collect();
        let e: Vec<(Word, Word)> = (0..n as usize - 1).map(|i| (v[i].clone(), v[i + 1].clone())).collect();
        let g = TransitionGraph::new(v, &e, n).unwrap();
        assert_eq!(scc_decompose(&g).transient_states.len(), n as usize);
    }
}
