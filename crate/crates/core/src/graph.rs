//! Restricted de Bruijn graphs `D(S)`.
//!
//! Nodes are the `(ℓ-1)`-grams occurring as prefix or suffix of a gram in
//! `S`; gram `z` is an arc from its prefix to its suffix. Arcs keep the
//! index of their gram in `S`, so arc order is lexicographic gram order.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{param, Error, Result};
use crate::gram::{gram_to_string, GramSet};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcInfo {
    /// Gram code of the arc.
    pub code: u64,
    pub source: usize,
    pub target: usize,
    pub is_loop: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeBruijnGraph {
    gramset: GramSet,
    nodes: Vec<u64>,
    arcs: Vec<ArcInfo>,
    out_arcs: Vec<Vec<usize>>,
    in_arcs: Vec<Vec<usize>>,
}

/// A simple cycle: distinct nodes, smallest node first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cycle {
    pub nodes: Vec<usize>,
    /// `arcs[i]` runs from `nodes[i]` to `nodes[i + 1]` (cyclically).
    pub arcs: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// `χ(C)` over the arcs of the graph.
    pub fn incidence_vector(&self, arc_count: usize) -> Vec<u64> {
        let mut chi = vec![0u64; arc_count];
        for &a in &self.arcs {
            chi[a] = 1;
        }
        chi
    }
}

/// Strong components with the auxiliary longest-path DAG.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    /// Node indices of each component, components ordered by smallest node.
    pub components: Vec<Vec<usize>>,
    /// Arc indices induced inside each component.
    pub component_arcs: Vec<Vec<usize>>,
    /// `δ_i = |S_i| - |V_i|`.
    pub deltas: Vec<i64>,
    /// Component-level arcs `(i, j)`, `i != j`, deduplicated and sorted.
    pub dag_arcs: Vec<(usize, usize)>,
    /// `Δ̄ = max δ_i`, the growth exponent of closed words.
    pub delta_bar: i64,
    /// Longest source-to-sink weight `Δ`, the growth exponent of all words.
    pub delta: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkKind {
    Path,
    Cycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cover {
    /// Every arc used at most once.
    Pack,
    /// Every arc used exactly once.
    Decompose,
}

impl DeBruijnGraph {
    pub fn build(gramset: &GramSet) -> Self {
        let (q, ell) = (gramset.q() as u64, gramset.ell());
        let modulus = q.pow(ell as u32 - 1);
        let mut node_set = BTreeSet::new();
        for &code in gramset.codes() {
            node_set.insert(code / q);
            node_set.insert(code % modulus);
        }
        let nodes: Vec<u64> = node_set.into_iter().collect();
        let find = |c: u64| nodes.binary_search(&c).expect("node of a gram");
        let arcs: Vec<ArcInfo> = gramset
            .codes()
            .iter()
            .map(|&code| {
                let (source, target) = (find(code / q), find(code % modulus));
                ArcInfo {
                    code,
                    source,
                    target,
                    is_loop: source == target,
                }
            })
            .collect();
        let mut out_arcs = vec![Vec::new(); nodes.len()];
        let mut in_arcs = vec![Vec::new(); nodes.len()];
        for (i, a) in arcs.iter().enumerate() {
            out_arcs[a.source].push(i);
            in_arcs[a.target].push(i);
        }
        DeBruijnGraph {
            gramset: gramset.clone(),
            nodes,
            arcs,
            out_arcs,
            in_arcs,
        }
    }

    pub fn gramset(&self) -> &GramSet {
        &self.gramset
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Code of node `i` as an `(ℓ-1)`-gram.
    pub fn node_code(&self, i: usize) -> u64 {
        self.nodes[i]
    }

    pub fn node_index(&self, code: u64) -> Option<usize> {
        self.nodes.binary_search(&code).ok()
    }

    pub fn node_string(&self, i: usize) -> String {
        gram_to_string(self.nodes[i], self.gramset.q(), self.gramset.ell() - 1)
    }

    pub fn arc_string(&self, a: usize) -> String {
        self.gramset.gram_string(a)
    }

    pub fn arcs(&self) -> &[ArcInfo] {
        &self.arcs
    }

    pub fn arc(&self, a: usize) -> ArcInfo {
        self.arcs[a]
    }

    /// Outgoing arcs of a node in lexicographic order.
    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out_arcs[v]
    }

    pub fn in_arcs(&self, v: usize) -> &[usize] {
        &self.in_arcs[v]
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.arcs.len()).filter(|&a| self.arcs[a].is_loop)
    }

    pub fn has_loop(&self) -> bool {
        self.loops().next().is_some()
    }

    /// `B(D)`: `+1` at the terminal node, `-1` at the source, zero columns for loops.
    pub fn incidence_matrix(&self) -> Vec<Vec<i64>> {
        let mut b = vec![vec![0i64; self.arcs.len()]; self.nodes.len()];
        for (j, a) in self.arcs.iter().enumerate() {
            if !a.is_loop {
                b[a.target][j] = 1;
                b[a.source][j] = -1;
            }
        }
        b
    }

    /// Rank of the incidence matrix over the rationals.
    pub fn incidence_rank(&self) -> usize {
        crate::intmat::rank(&crate::intmat::from_i64(&self.incidence_matrix()))
    }

    /// Strong components (Tarjan), each sorted, ordered by smallest node.
    pub fn scc_partition(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut components = Vec::new();
        let mut counter = 0;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            // explicit DFS frames: (node, next out-arc position)
            let mut frames = vec![(root, 0usize)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
                if let Some(&a) = self.out_arcs[v].get(*pos) {
                    *pos += 1;
                    let w = self.arcs[a].target;
                    if index[w] == usize::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        frames.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
        components.sort_unstable_by_key(|c| c[0]);
        components
    }

    fn degree(&self, v: usize) -> usize {
        self.out_arcs[v].len() + self.in_arcs[v].len()
    }

    /// Strongly connected once isolated nodes are ignored.
    pub fn is_strongly_connected(&self) -> bool {
        let non_trivial: Vec<Vec<usize>> = self
            .scc_partition()
            .into_iter()
            .filter(|c| c.iter().any(|&v| self.degree(v) > 0))
            .collect();
        non_trivial.len() <= 1
    }

    /// Balanced degrees everywhere and strongly connected.
    pub fn is_eulerian(&self) -> bool {
        (0..self.nodes.len()).all(|v| self.out_arcs[v].len() == self.in_arcs[v].len())
            && self.is_strongly_connected()
    }

    /// Hamiltonian cycle starting at node 0.
    ///
    /// Full `[q]^ℓ` uses the de Bruijn sequence from Lyndon words; otherwise
    /// backtracking tries arcs in lexicographic order. `Ok(None)` means the
    /// search was exhaustive and found nothing.
    pub fn find_hamiltonian_cycle(&self, limits: &Limits) -> Result<Option<Cycle>> {
        if self.nodes.len() == 1 {
            return Ok(self.loops().next().map(|a| Cycle {
                nodes: vec![0],
                arcs: vec![a],
            }));
        }
        if self.gramset.is_full() {
            return Ok(Some(self.de_bruijn_cycle()));
        }
        self.backtrack_hamiltonian(limits)
    }

    /// Lexicographic backtracking search regardless of the gram set.
    pub fn backtrack_hamiltonian(&self, limits: &Limits) -> Result<Option<Cycle>> {
        let n = self.nodes.len();
        if n > limits.hamiltonian_nodes {
            return Err(Error::BudgetExceeded {
                what: "Hamiltonian backtracking (node count; raise the bound or use a full gram set)",
                estimate: n as u128,
                limit: limits.hamiltonian_nodes as u128,
            });
        }
        if n == 1 {
            return Ok(self.loops().next().map(|a| Cycle {
                nodes: vec![0],
                arcs: vec![a],
            }));
        }
        let mut visited = vec![false; n];
        let mut nodes = vec![0usize];
        let mut arcs = Vec::new();
        visited[0] = true;
        if self.extend_hamiltonian(&mut visited, &mut nodes, &mut arcs) {
            Ok(Some(Cycle { nodes, arcs }))
        } else {
            Ok(None)
        }
    }

    fn extend_hamiltonian(&self, visited: &mut [bool], nodes: &mut Vec<usize>, arcs: &mut Vec<usize>) -> bool {
        let v = *nodes.last().expect("nonempty path");
        for &a in &self.out_arcs[v] {
            let w = self.arcs[a].target;
            if w == v {
                continue;
            }
            if w == 0 && nodes.len() == visited.len() {
                arcs.push(a);
                return true;
            }
            if visited[w] {
                continue;
            }
            visited[w] = true;
            nodes.push(w);
            arcs.push(a);
            if self.extend_hamiltonian(visited, nodes, arcs) {
                return true;
            }
            arcs.pop();
            nodes.pop();
            visited[w] = false;
        }
        false
    }

    fn de_bruijn_cycle(&self) -> Cycle {
        let (q, k) = (self.gramset.q(), self.gramset.ell() - 1);
        let seq = de_bruijn_sequence(q, k);
        let len = seq.len();
        let window = |start: usize, width: usize| {
            (0..width).fold(0u64, |acc, i| acc * q as u64 + seq[(start + i) % len] as u64)
        };
        let nodes = (0..len).map(|i| window(i, k) as usize).collect();
        let arcs = (0..len).map(|i| window(i, k + 1) as usize).collect();
        Cycle { nodes, arcs }
    }

    /// All simple cycles (Johnson), each once with its smallest node first.
    pub fn enumerate_cycles(&self, limits: &Limits) -> Result<Vec<Cycle>> {
        let n = self.nodes.len();
        let mut out = Vec::new();
        let mut state = Johnson {
            graph: self,
            blocked: vec![false; n],
            block_map: vec![Vec::new(); n],
            stack: Vec::new(),
            arc_stack: Vec::new(),
            out: &mut out,
            limit: limits.cycles,
            overflow: false,
        };
        for s in 0..n {
            for v in s..n {
                state.blocked[v] = false;
                state.block_map[v].clear();
            }
            state.circuit(s, s);
            if state.overflow {
                return Err(Error::BudgetExceeded {
                    what: "simple-cycle enumeration",
                    estimate: limits.cycles as u128 + 1,
                    limit: limits.cycles as u128,
                });
            }
        }
        Ok(out)
    }

    /// `λ_S`: lcm of all simple-cycle lengths.
    pub fn lambda(&self, limits: &Limits) -> Result<u64> {
        lcm_of(self.enumerate_cycles(limits)?.iter().map(|c| c.len() as u64))
    }

    pub fn condensation(&self) -> Condensation {
        let components = self.scc_partition();
        let mut comp_of = vec![0usize; self.nodes.len()];
        for (i, c) in components.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut component_arcs = vec![Vec::new(); components.len()];
        let mut dag = BTreeSet::new();
        for (j, a) in self.arcs.iter().enumerate() {
            let (cs, ct) = (comp_of[a.source], comp_of[a.target]);
            if cs == ct {
                component_arcs[cs].push(j);
            } else {
                dag.insert((cs, ct));
            }
        }
        let deltas: Vec<i64> = components
            .iter()
            .zip(&component_arcs)
            .map(|(v, s)| s.len() as i64 - v.len() as i64)
            .collect();
        let dag_arcs: Vec<(usize, usize)> = dag.into_iter().collect();
        let mut succ = vec![Vec::new(); components.len()];
        for &(i, j) in &dag_arcs {
            succ[i].push(j);
        }
        let mut best: Vec<Option<i64>> = vec![None; components.len()];
        let delta = (0..components.len())
            .map(|i| longest_from(i, &succ, &deltas, &mut best))
            .max()
            .unwrap_or(0);
        let delta_bar = deltas.iter().copied().max().unwrap_or(0);
        Condensation {
            components,
            component_arcs,
            deltas,
            dag_arcs,
            delta_bar,
            delta,
        }
    }

    /// Checks arc sequences as a packing or decomposition of the arc set.
    pub fn validate_decomposition(&self, walks: &[Vec<usize>], kind: WalkKind, cover: Cover) -> Result<bool> {
        let mut used = vec![0usize; self.arcs.len()];
        for walk in walks {
            if walk.is_empty() {
                return Err(param("empty walk in decomposition"));
            }
            for pair in walk.windows(2) {
                let (a, b) = (self.arc_checked(pair[0])?, self.arc_checked(pair[1])?);
                if a.target != b.source {
                    return Err(param(alloc::format!(
                        "arcs {} and {} do not chain",
                        self.arc_string(pair[0]),
                        self.arc_string(pair[1])
                    )));
                }
            }
            for &a in walk {
                self.arc_checked(a)?;
                used[a] += 1;
            }
            if kind == WalkKind::Cycle {
                let (first, last) = (self.arcs[walk[0]], self.arcs[walk[walk.len() - 1]]);
                if last.target != first.source {
                    return Ok(false);
                }
            }
        }
        Ok(match cover {
            Cover::Pack => used.iter().all(|&u| u <= 1),
            Cover::Decompose => used.iter().all(|&u| u == 1),
        })
    }

    fn arc_checked(&self, a: usize) -> Result<ArcInfo> {
        self.arcs
            .get(a)
            .copied()
            .ok_or_else(|| param(alloc::format!("arc index {a} out of range")))
    }

    /// Exhaustive search for a partition of all arcs into `parts` closed
    /// walks of equal length. Walk `i` starts with the smallest arc not used
    /// by walks `< i`.
    pub fn search_closed_walk_decomposition(&self, parts: usize, limits: &Limits) -> Result<Option<Vec<Vec<usize>>>> {
        let m = self.arcs.len();
        if parts == 0 || !m.is_multiple_of(parts) {
            return Err(param(alloc::format!("{m} arcs cannot split into {parts} equal closed walks")));
        }
        let mut search = DecompositionSearch {
            graph: self,
            length: m / parts,
            used: vec![false; m],
            walks: Vec::new(),
            visited: 0,
            limit: limits.cycles,
        };
        match search.next_walk() {
            Some(true) => Ok(Some(search.walks)),
            Some(false) => Ok(None),
            None => Err(Error::BudgetExceeded {
                what: "closed-walk decomposition search",
                estimate: search.visited as u128,
                limit: limits.cycles as u128,
            }),
        }
    }
}

fn longest_from(i: usize, succ: &[Vec<usize>], deltas: &[i64], best: &mut [Option<i64>]) -> i64 {
    if let Some(b) = best[i] {
        return b;
    }
    let mut value = deltas[i];
    for &j in &succ[i] {
        value = value.max(deltas[i] + 1 + longest_from(j, succ, deltas, best));
    }
    best[i] = Some(value);
    value
}

/// lcm with overflow detection.
pub fn lcm_of(values: impl IntoIterator<Item = u64>) -> Result<u64> {
    let mut acc = 1u64;
    for v in values {
        let g = acc.gcd(&v);
        acc = (acc / g).checked_mul(v).ok_or(Error::Overflow("lcm of cycle lengths"))?;
    }
    Ok(acc)
}

/// De Bruijn sequence of order `k` over `[q]` (Lyndon-word concatenation).
pub fn de_bruijn_sequence(q: usize, k: usize) -> Vec<u8> {
    if k == 0 {
        return vec![0];
    }
    let mut a = vec![0u8; k + 1];
    let mut seq = Vec::new();
    fkm(1, 1, q, k, &mut a, &mut seq);
    seq
}

fn fkm(t: usize, p: usize, q: usize, k: usize, a: &mut [u8], seq: &mut Vec<u8>) {
    if t > k {
        if k.is_multiple_of(p) {
            seq.extend_from_slice(&a[1..=p]);
        }
        return;
    }
    a[t] = a[t - p];
    fkm(t + 1, p, q, k, a, seq);
    for j in a[t - p] as usize + 1..q {
        a[t] = j as u8;
        fkm(t + 1, t, q, k, a, seq);
    }
}

struct Johnson<'a> {
    graph: &'a DeBruijnGraph,
    blocked: Vec<bool>,
    block_map: Vec<Vec<usize>>,
    stack: Vec<usize>,
    arc_stack: Vec<usize>,
    out: &'a mut Vec<Cycle>,
    limit: u64,
    overflow: bool,
}

impl Johnson<'_> {
    fn circuit(&mut self, v: usize, s: usize) -> bool {
        if self.overflow {
            return false;
        }
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        let graph = self.graph;
        for &a in graph.out_arcs(v) {
            let w = graph.arc(a).target;
            if w < s {
                continue;
            }
            if w == s {
                self.arc_stack.push(a);
                if self.out.len() as u64 >= self.limit {
                    self.overflow = true;
                    self.arc_stack.pop();
                    break;
                }
                self.out.push(Cycle {
                    nodes: self.stack.clone(),
                    arcs: self.arc_stack.clone(),
                });
                self.arc_stack.pop();
                found = true;
            } else if !self.blocked[w] {
                self.arc_stack.push(a);
                if self.circuit(w, s) {
                    found = true;
                }
                self.arc_stack.pop();
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &a in graph.out_arcs(v) {
                let w = graph.arc(a).target;
                if w >= s && !self.block_map[w].contains(&v) {
                    self.block_map[w].push(v);
                }
            }
        }
        self.stack.pop();
        found
    }

    fn unblock(&mut self, v: usize) {
        let mut pending = vec![v];
        while let Some(u) = pending.pop() {
            if !self.blocked[u] {
                continue;
            }
            self.blocked[u] = false;
            pending.append(&mut self.block_map[u]);
        }
    }
}

struct DecompositionSearch<'a> {
    graph: &'a DeBruijnGraph,
    length: usize,
    used: Vec<bool>,
    walks: Vec<Vec<usize>>,
    visited: u64,
    limit: u64,
}

impl DecompositionSearch<'_> {
    /// `None` when the budget ran out.
    fn next_walk(&mut self) -> Option<bool> {
        let Some(first) = self.used.iter().position(|&u| !u) else {
            return Some(true);
        };
        self.used[first] = true;
        self.walks.push(vec![first]);
        let result = self.extend();
        if result != Some(true) {
            self.walks.pop();
            self.used[first] = false;
        }
        result
    }

    fn extend(&mut self) -> Option<bool> {
        self.visited += 1;
        if self.visited > self.limit {
            return None;
        }
        let walk = self.walks.last().expect("open walk");
        let start = self.graph.arc(walk[0]).source;
        let end = self.graph.arc(*walk.last().expect("nonempty")).target;
        if walk.len() == self.length {
            return if end == start { self.next_walk() } else { Some(false) };
        }
        let graph = self.graph;
        for &a in graph.out_arcs(end) {
            if self.used[a] {
                continue;
            }
            self.used[a] = true;
            self.walks.last_mut().expect("open walk").push(a);
            match self.extend() {
                Some(false) => {}
                other => {
                    other?;
                    return other;
                }
            }
            self.walks.last_mut().expect("open walk").pop();
            self.used[a] = false;
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::GramSet;
    use alloc::string::ToString;

    fn example_31() -> GramSet {
        GramSet::parse_explicit(4, &["00", "01", "10", "12", "23", "32", "33"]).unwrap()
    }

    fn names(g: &DeBruijnGraph, arcs: &[usize]) -> Vec<String> {
        arcs.iter().map(|&a| g.arc_string(a)).collect()
    }

    #[test]
    fn build_examples() {
        let g = DeBruijnGraph::build(&GramSet::full(2, 3).unwrap());
        assert_eq!((g.node_count(), g.arc_count()), (4, 8));
        let g = DeBruijnGraph::build(&GramSet::weight_constrained(2, 4, 1, 2, 3).unwrap());
        assert_eq!((g.node_count(), g.arc_count()), (7, 10));
        let node_set = GramSet::weight_constrained(2, 3, 1, 1, 3).unwrap();
        assert_eq!(
            (0..g.node_count()).map(|i| g.node_code(i)).collect::<Vec<_>>(),
            node_set.codes()
        );
        let g = DeBruijnGraph::build(&example_31());
        assert_eq!((g.node_count(), g.arc_count()), (4, 7));
        assert_eq!((0..4).map(|i| g.node_string(i)).collect::<Vec<_>>(), ["0", "1", "2", "3"]);
    }

    #[test]
    fn single_node_graph() {
        let g = DeBruijnGraph::build(&GramSet::full(3, 1).unwrap());
        assert_eq!(g.node_count(), 1);
        assert!(g.arcs().iter().all(|a| a.is_loop));
        let h = g.find_hamiltonian_cycle(&Limits::default()).unwrap().unwrap();
        assert_eq!(h.arcs, vec![0]);
    }

    #[test]
    fn incidence_examples() {
        let g = DeBruijnGraph::build(&GramSet::full(2, 2).unwrap());
        let b = g.incidence_matrix();
        assert_eq!(b, vec![vec![0, -1, 1, 0], vec![0, 1, -1, 0]]);
        let g3 = DeBruijnGraph::build(&GramSet::full(2, 3).unwrap());
        assert_eq!(g3.incidence_rank(), 3);
        for col in 0..g3.arc_count() {
            assert_eq!(g3.incidence_matrix().iter().map(|r| r[col]).sum::<i64>(), 0);
        }
    }

    #[test]
    fn scc_examples() {
        let g = DeBruijnGraph::build(&GramSet::full(2, 3).unwrap());
        assert_eq!(g.scc_partition().len(), 1);
        let g = DeBruijnGraph::build(&example_31());
        assert_eq!(g.scc_partition(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn eulerian_examples() {
        assert!(DeBruijnGraph::build(&GramSet::weight_constrained(2, 4, 1, 2, 3).unwrap()).is_eulerian());
        assert!(DeBruijnGraph::build(&GramSet::full(4, 2).unwrap()).is_eulerian());
        assert!(!DeBruijnGraph::build(&example_31()).is_eulerian());
    }

    #[test]
    fn hamiltonian_examples() {
        let limits = Limits::default();
        let g = DeBruijnGraph::build(&GramSet::full(2, 3).unwrap());
        let h = g.backtrack_hamiltonian(&limits).unwrap().unwrap();
        assert_eq!(h.nodes, vec![0, 1, 3, 2]);
        assert_eq!(names(&g, &h.arcs), ["001", "011", "110", "100"]);
        assert_eq!(g.find_hamiltonian_cycle(&limits).unwrap().unwrap(), h);

        let g = DeBruijnGraph::build(&GramSet::full(2, 2).unwrap());
        let h = g.find_hamiltonian_cycle(&limits).unwrap().unwrap();
        assert_eq!(names(&g, &h.arcs), ["01", "10"]);

        let tight = Limits {
            hamiltonian_nodes: 2,
            ..limits
        };
        let g = DeBruijnGraph::build(&GramSet::full(2, 3).unwrap());
        assert!(g.backtrack_hamiltonian(&tight).is_err());
    }

    #[test]
    fn de_bruijn_cycles_are_hamiltonian() {
        for (q, ell) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4), (4, 3)] {
            let g = DeBruijnGraph::build(&GramSet::full(q, ell).unwrap());
            let h = g.find_hamiltonian_cycle(&Limits::default()).unwrap().unwrap();
            let distinct: BTreeSet<usize> = h.nodes.iter().copied().collect();
            assert_eq!(distinct.len(), g.node_count());
            assert!(g.validate_decomposition(core::slice::from_ref(&h.arcs), WalkKind::Cycle, Cover::Pack).unwrap());
        }
    }

    #[test]
    fn cycle_examples() {
        let limits = Limits::default();
        let g = DeBruijnGraph::build(&GramSet::full(2, 2).unwrap());
        let cycles = g.enumerate_cycles(&limits).unwrap();
        let mut listed: Vec<Vec<String>> = cycles.iter().map(|c| names(&g, &c.arcs)).collect();
        listed.sort();
        assert_eq!(listed, vec![vec!["00".to_string()], vec!["01".into(), "10".into()], vec!["11".into()]]);
        assert_eq!(g.lambda(&limits).unwrap(), 2);
        let g = DeBruijnGraph::build(&GramSet::weight_constrained(2, 4, 1, 2, 3).unwrap());
        assert_eq!(g.lambda(&limits).unwrap(), 60);
        let g = DeBruijnGraph::build(&GramSet::weight_constrained(2, 5, 1, 3, 4).unwrap());
        assert_eq!(g.lambda(&limits).unwrap(), 420);
        let b = g.incidence_matrix();
        for c in g.enumerate_cycles(&limits).unwrap() {
            let chi = c.incidence_vector(g.arc_count());
            for row in &b {
                assert_eq!(row.iter().zip(&chi).map(|(&x, &y)| x * y as i64).sum::<i64>(), 0);
            }
        }
    }

    #[test]
    fn cycle_budget_is_enforced() {
        let g = DeBruijnGraph::build(&GramSet::full(2, 4).unwrap());
        let tight = Limits {
            cycles: 3,
            ..Limits::default()
        };
        assert!(matches!(g.enumerate_cycles(&tight), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn condensation_examples() {
        let g = DeBruijnGraph::build(&example_31());
        let c = g.condensation();
        assert_eq!(c.deltas, vec![1, 1]);
        assert_eq!((c.delta_bar, c.delta), (1, 3));

        let g = DeBruijnGraph::build(&GramSet::full(2, 3).unwrap());
        let c = g.condensation();
        assert_eq!(c.delta, 4);

        let split = GramSet::parse_explicit(4, &["00", "01", "10", "22", "23", "32", "33"]).unwrap();
        let c = DeBruijnGraph::build(&split).condensation();
        assert_eq!(c.deltas, vec![1, 2]);
        assert_eq!(c.delta, 2);
    }

    #[test]
    fn decomposition_examples() {
        let limits = Limits::default();
        let g = DeBruijnGraph::build(&GramSet::full(2, 2).unwrap());
        let walks = vec![vec![0], vec![3], vec![1, 2]];
        assert!(g.validate_decomposition(&walks, WalkKind::Cycle, Cover::Decompose).unwrap());
        let twice = vec![vec![0], vec![0], vec![3], vec![1, 2]];
        assert!(!g.validate_decomposition(&twice, WalkKind::Cycle, Cover::Decompose).unwrap());
        assert!(!g.validate_decomposition(&twice, WalkKind::Cycle, Cover::Pack).unwrap());
        assert!(g.validate_decomposition(&[vec![0, 3]], WalkKind::Path, Cover::Pack).is_err());
        assert!(!g.validate_decomposition(&[vec![1]], WalkKind::Cycle, Cover::Pack).unwrap());

        let g = DeBruijnGraph::build(&GramSet::full(2, 3).unwrap());
        let found = g.search_closed_walk_decomposition(2, &limits).unwrap().unwrap();
        assert_eq!(found.len(), 2);
        assert!(found.iter().all(|w| w.len() == 4));
        assert!(g.validate_decomposition(&found, WalkKind::Cycle, Cover::Decompose).unwrap());
    }

    #[test]
    fn de_bruijn_sequence_small() {
        assert_eq!(de_bruijn_sequence(2, 2), vec![0, 0, 1, 1]);
        assert_eq!(de_bruijn_sequence(2, 3), vec![0, 0, 0, 1, 0, 1, 1, 1]);
        assert_eq!(de_bruijn_sequence(3, 1), vec![0, 1, 2]);
    }
}
