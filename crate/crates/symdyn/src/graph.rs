//! Transition graphs for integer subshifts and labeled-graph machinery.
//!
//! An integer SFT whose forbidden patterns span at most `m` cells is the set
//! of bi-infinite walks in a de Bruijn-style graph: nodes are the admissible
//! words of length `m - 1`, and the edge `u -> v` exists when `u` and `v`
//! overlap and the combined `m`-word is admissible. Labeling the edges
//! through a local rule turns the graph into a presentation of the image
//! (sofic) shift; subset determinization then lets us compare factor
//! languages exactly.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::pattern::{Alphabet, Symbol};
use crate::{Limits, Result};

/// A forbidden constraint normalized to non-negative offsets: a partial word
/// where `offsets[i] = (position, symbol)`.
pub type OffsetPattern = Vec<(usize, Symbol)>;

/// De Bruijn-style transition graph of an integer SFT.
#[derive(Debug, Clone)]
pub struct TransitionGraph {
    /// Node word length (`m - 1` for span `m`).
    pub order: usize,
    pub alphabet: Alphabet,
    /// Admissible node words, sorted lexicographically.
    pub nodes: Vec<Vec<Symbol>>,
    /// `edges[u]` lists `(v, symbol)` pairs in ascending order. Reading the
    /// edge appends `symbol` to the sequence.
    pub edges: Vec<Vec<(usize, Symbol)>>,
}

fn word_hits(word: &[Symbol], pat: &OffsetPattern) -> bool {
    let span = pat.iter().map(|(p, _)| p + 1).max().unwrap_or(0);
    if span > word.len() {
        return false;
    }
    (0..=word.len() - span).any(|off| pat.iter().all(|(p, s)| word[off + p] == *s))
}

impl TransitionGraph {
    /// Build the transition graph for the SFT over `alphabet` avoiding all
    /// translates of the given offset patterns. Patterns must be non-empty.
    pub fn build(
        alphabet: Alphabet,
        patterns: &[OffsetPattern],
        limits: &Limits,
    ) -> Result<TransitionGraph> {
        Self::build_with_span(alphabet, patterns, 1, limits)
    }

    /// Like [`TransitionGraph::build`] with a lower bound on the sliding
    /// window span (used when edges must carry enough context for a local
    /// rule).
    pub fn build_with_span(
        alphabet: Alphabet,
        patterns: &[OffsetPattern],
        min_span: usize,
        limits: &Limits,
    ) -> Result<TransitionGraph> {
        let span = patterns
            .iter()
            .map(|p| p.iter().map(|(pos, _)| pos + 1).max().unwrap_or(1))
            .max()
            .unwrap_or(1)
            .max(min_span);
        let order = span - 1;
        let node_count = (alphabet.size() as u128).pow(order as u32);
        limits.check("graph nodes", node_count)?;

        let mut nodes = Vec::new();
        let mut index = BTreeMap::new();
        let mut word = vec![0u32; order];
        loop {
            if !patterns.iter().any(|p| word_hits(&word, p)) {
                index.insert(word.clone(), nodes.len());
                nodes.push(word.clone());
            }
            // increment in base |A|
            let mut pos = order;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                word[pos] += 1;
                if (word[pos] as usize) < alphabet.size() {
                    break;
                }
                word[pos] = 0;
            }
            if word.iter().all(|&s| s == 0) {
                break;
            }
        }

        let mut edges = vec![Vec::new(); nodes.len()];
        for (u, uw) in nodes.iter().enumerate() {
            for sym in alphabet.symbols() {
                let mut combined = uw.clone();
                combined.push(sym);
                let vw: Vec<Symbol> = combined[combined.len() - order..].to_vec();
                let Some(&v) = index.get(&vw) else { continue };
                if !patterns.iter().any(|p| word_hits(&combined, p)) {
                    edges[u].push((v, sym));
                }
            }
        }
        Ok(TransitionGraph {
            order,
            alphabet,
            nodes,
            edges,
        })
    }

    /// True iff the graph contains a directed cycle, i.e. the SFT is
    /// nonempty.
    pub fn has_cycle(&self) -> bool {
        self.find_cycle().is_some()
    }

    /// Find a directed cycle, returned as the node sequence `n_0, ..., n_k`
    /// with an edge `n_i -> n_{i+1}` and `n_k -> n_0`. Deterministic: the
    /// search explores nodes and edges in ascending order.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            White,
            Gray,
            Black,
        }
        let mut mark = vec![Mark::White; self.nodes.len()];
        let mut stack_pos: Vec<usize> = Vec::new();
        for start in 0..self.nodes.len() {
            if mark[start] != Mark::White {
                continue;
            }
            // iterative DFS keeping the gray path
            let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
            mark[start] = Mark::Gray;
            stack_pos.push(start);
            while let Some(top) = stack.len().checked_sub(1) {
                let (node, next) = stack[top];
                if next < self.edges[node].len() {
                    stack[top].1 += 1;
                    let (v, _) = self.edges[node][next];
                    match mark[v] {
                        Mark::Gray => {
                            let at = stack_pos.iter().position(|&n| n == v).unwrap();
                            return Some(stack_pos[at..].to_vec());
                        }
                        Mark::White => {
                            mark[v] = Mark::Gray;
                            stack_pos.push(v);
                            stack.push((v, 0));
                        }
                        Mark::Black => {}
                    }
                } else {
                    mark[node] = Mark::Black;
                    stack_pos.pop();
                    stack.pop();
                }
            }
        }
        None
    }

    /// Restrict to the nodes lying on bi-infinite walks: repeatedly remove
    /// nodes with no incoming or no outgoing edge. Returns the kept node
    /// indices (into the original graph) alongside the trimmed graph.
    pub fn trimmed(&self) -> (TransitionGraph, Vec<usize>) {
        let n = self.nodes.len();
        let mut alive = vec![true; n];
        loop {
            let mut indeg = vec![0usize; n];
            let mut outdeg = vec![0usize; n];
            for u in 0..n {
                if !alive[u] {
                    continue;
                }
                for &(v, _) in &self.edges[u] {
                    if alive[v] {
                        outdeg[u] += 1;
                        indeg[v] += 1;
                    }
                }
            }
            let mut changed = false;
            for u in 0..n {
                if alive[u] && (indeg[u] == 0 || outdeg[u] == 0) {
                    alive[u] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let kept: Vec<usize> = (0..n).filter(|&u| alive[u]).collect();
        let remap: BTreeMap<usize, usize> =
            kept.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let nodes = kept.iter().map(|&u| self.nodes[u].clone()).collect();
        let edges = kept
            .iter()
            .map(|&u| {
                self.edges[u]
                    .iter()
                    .filter_map(|&(v, s)| remap.get(&v).map(|&v2| (v2, s)))
                    .collect()
            })
            .collect();
        (
            TransitionGraph {
                order: self.order,
                alphabet: self.alphabet,
                nodes,
                edges,
            },
            kept,
        )
    }

    /// Relabel every edge through `f(source word, read symbol)`.
    pub fn relabel(&self, f: impl Fn(&[Symbol], Symbol) -> Symbol) -> TransitionGraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(u, outs)| {
                outs.iter()
                    .map(|&(v, s)| (v, f(&self.nodes[u], s)))
                    .collect()
            })
            .collect();
        TransitionGraph {
            order: self.order,
            alphabet: self.alphabet,
            nodes: self.nodes.clone(),
            edges,
        }
    }

    /// DOT rendering with deterministic node and edge order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {name} {{");
        for (i, w) in self.nodes.iter().enumerate() {
            let label: Vec<String> = w.iter().map(|s| s.to_string()).collect();
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label.join(""));
        }
        for (u, outs) in self.edges.iter().enumerate() {
            for &(v, s) in outs {
                let _ = writeln!(out, "  n{u} -> n{v} [label=\"{s}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Deterministic automaton obtained from a labeled graph by the subset
/// construction, starting from the set of all nodes. The readable words are
/// exactly the label words of finite walks.
#[derive(Debug)]
pub struct SubsetAutomaton {
    /// Each state is a sorted set of original node indices.
    pub states: Vec<Vec<usize>>,
    /// `trans[q]` maps a label to the successor state.
    pub trans: Vec<BTreeMap<Symbol, usize>>,
}

pub fn determinize(graph: &TransitionGraph) -> SubsetAutomaton {
    let all: Vec<usize> = (0..graph.nodes.len()).collect();
    let mut states = vec![all.clone()];
    let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    ids.insert(all, 0);
    let mut trans: Vec<BTreeMap<Symbol, usize>> = vec![BTreeMap::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(q) = queue.pop_front() {
        let mut by_label: BTreeMap<Symbol, BTreeSet<usize>> = BTreeMap::new();
        for &u in &states[q] {
            for &(v, s) in &graph.edges[u] {
                by_label.entry(s).or_default().insert(v);
            }
        }
        for (label, set) in by_label {
            let key: Vec<usize> = set.into_iter().collect();
            let id = *ids.entry(key.clone()).or_insert_with(|| {
                states.push(key);
                trans.push(BTreeMap::new());
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            trans[q].insert(label, id);
        }
    }
    SubsetAutomaton { states, trans }
}

/// Compare the factor languages presented by two labeled graphs. Both graphs
/// must already be trimmed to their bi-essential part. Returns a word in the
/// symmetric difference, or `None` when the languages agree.
pub fn language_difference(a: &TransitionGraph, b: &TransitionGraph) -> Option<Vec<Symbol>> {
    match (a.nodes.is_empty(), b.nodes.is_empty()) {
        (true, true) => return None,
        // one language is empty and the other contains the empty word
        (true, false) | (false, true) => return Some(vec![]),
        _ => {}
    }
    let da = determinize(a);
    let db = determinize(b);
    let mut seen = BTreeSet::new();
    seen.insert((0usize, 0usize));
    let mut queue: VecDeque<(usize, usize, Vec<Symbol>)> = VecDeque::from([(0, 0, vec![])]);
    while let Some((qa, qb, word)) = queue.pop_front() {
        let labels: BTreeSet<Symbol> = da.trans[qa]
            .keys()
            .chain(db.trans[qb].keys())
            .copied()
            .collect();
        for label in labels {
            let mut next_word = word.clone();
            next_word.push(label);
            match (da.trans[qa].get(&label), db.trans[qb].get(&label)) {
                (Some(&na), Some(&nb)) => {
                    if seen.insert((na, nb)) {
                        queue.push_back((na, nb, next_word));
                    }
                }
                (None, None) => {}
                _ => return Some(next_word),
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary() -> Alphabet {
        Alphabet::binary()
    }

    #[test]
    fn golden_mean_graph_has_cycle() {
        // forbid the word 11
        let pats = vec![vec![(0, 1), (1, 1)]];
        let g = TransitionGraph::build(binary(), &pats, &Limits::default()).unwrap();
        assert_eq!(g.order, 1);
        assert_eq!(g.nodes.len(), 2);
        assert!(g.has_cycle());
    }

    #[test]
    fn all_letters_forbidden_has_no_cycle() {
        let pats = vec![vec![(0, 0)], vec![(0, 1)]];
        let g = TransitionGraph::build(binary(), &pats, &Limits::default()).unwrap();
        assert!(!g.has_cycle());
    }

    #[test]
    fn constant_one_survives() {
        // forbid 00, 01, 10: only the constant-1 sequence remains
        let pats = vec![
            vec![(0, 0), (1, 0)],
            vec![(0, 0), (1, 1)],
            vec![(0, 1), (1, 0)],
        ];
        let g = TransitionGraph::build(binary(), &pats, &Limits::default()).unwrap();
        assert!(g.has_cycle());
        let cycle = g.find_cycle().unwrap();
        for &n in &cycle {
            assert_eq!(g.nodes[n], vec![1]);
        }
    }

    #[test]
    fn trim_removes_transients() {
        // forbid 10: after a 1 only 1s can follow; 0-then-1 is a transient
        // direction. Both fixed points survive as cycles.
        let pats = vec![vec![(0, 1), (1, 0)]];
        let g = TransitionGraph::build(binary(), &pats, &Limits::default()).unwrap();
        let (t, _) = g.trimmed();
        assert_eq!(t.nodes.len(), 2);
    }

    #[test]
    fn identical_graphs_have_equal_language() {
        let pats = vec![vec![(0, 1), (1, 1)]];
        let g = TransitionGraph::build(binary(), &pats, &Limits::default()).unwrap();
        let (t, _) = g.trimmed();
        assert!(language_difference(&t, &t).is_none());
    }

    #[test]
    fn different_languages_yield_witness() {
        let golden = TransitionGraph::build(binary(), &[vec![(0, 1), (1, 1)]], &Limits::default())
            .unwrap()
            .trimmed()
            .0;
        let full = TransitionGraph::build(binary(), &[], &Limits::default())
            .unwrap()
            .trimmed()
            .0;
        let diff = language_difference(&golden, &full).unwrap();
        // the witness must be a word in exactly one language; 11 is the
        // shortest candidate
        assert_eq!(diff, vec![1, 1]);
    }
}
