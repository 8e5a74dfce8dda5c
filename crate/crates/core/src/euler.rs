//! The EULER map: a deterministic Eulerian walk turning a profile vector
//! back into a word.
//!
//! The walk starts at the node with one more outgoing than incoming arc if
//! there is one, otherwise at the smallest node with an outgoing arc. Each
//! step takes the lexicographically smallest remaining outgoing arc, and
//! stuck sub-tours are spliced in with the usual stack-based Hierholzer
//! procedure, so the result depends only on the profile.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{param, Error, Result};
use crate::gram::{decode_gram, profile, ProfileVector, Word};
use crate::graph::DeBruijnGraph;

/// `EULER(u)` for a profile vector.
pub fn euler_decode(u: &ProfileVector) -> Result<Word> {
    let graph = DeBruijnGraph::build(u.gramset());
    euler_decode_in(&graph, u.counts())
}

/// `EULER(u)` with a prebuilt graph of the profile's gram set.
pub fn euler_decode_in(graph: &DeBruijnGraph, counts: &[u64]) -> Result<Word> {
    if counts.len() != graph.arc_count() {
        return Err(param("profile length does not match the graph"));
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::NotAProfile("all counts are zero"));
    }
    let n = graph.node_count();
    let mut balance = vec![0i64; n];
    let mut out_degree = vec![0u64; n];
    for (a, &c) in counts.iter().enumerate() {
        let arc = graph.arc(a);
        balance[arc.source] += c as i64;
        balance[arc.target] -= c as i64;
        out_degree[arc.source] += c;
    }
    let mut start = None;
    let mut ends = 0;
    for (v, &b) in balance.iter().enumerate() {
        match b {
            0 => {}
            1 if start.is_none() => start = Some(v),
            -1 if ends == 0 => ends += 1,
            _ => return Err(Error::NotAProfile("imbalance")),
        }
    }
    if start.is_some() != (ends == 1) {
        return Err(Error::NotAProfile("imbalance"));
    }
    if !positive_part_connected(graph, counts) {
        return Err(Error::NotAProfile("disconnected"));
    }
    let start = start.unwrap_or_else(|| out_degree.iter().position(|&d| d > 0).expect("positive total"));

    let mut remaining = counts.to_vec();
    let mut next = vec![0usize; n];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut circuit = Vec::with_capacity(total as usize);
    while let Some(&(v, via)) = stack.last() {
        let outs = graph.out_arcs(v);
        while next[v] < outs.len() && remaining[outs[next[v]]] == 0 {
            next[v] += 1;
        }
        if let Some(&a) = outs.get(next[v]) {
            remaining[a] -= 1;
            stack.push((graph.arc(a).target, Some(a)));
        } else {
            stack.pop();
            if let Some(a) = via {
                circuit.push(a);
            }
        }
    }
    circuit.reverse();

    let gramset = graph.gramset();
    let (q, ell) = (gramset.q(), gramset.ell());
    let mut symbols = decode_gram(graph.node_code(start), q, ell - 1);
    symbols.extend(circuit.iter().map(|&a| (graph.arc(a).code % q as u64) as u8));
    Word::new(q, symbols)
}

fn positive_part_connected(graph: &DeBruijnGraph, counts: &[u64]) -> bool {
    let n = graph.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut touched = vec![false; n];
    for (a, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let arc = graph.arc(a);
        touched[arc.source] = true;
        touched[arc.target] = true;
        let (x, y) = (find(&mut parent, arc.source), find(&mut parent, arc.target));
        parent[x] = y;
    }
    let mut root = None;
    for v in 0..n {
        if touched[v] {
            let r = find(&mut parent, v);
            if *root.get_or_insert(r) != r {
                return false;
            }
        }
    }
    true
}

/// `EULER(p(x; S))`, the representative of the class of `x`.
pub fn canonical_representative(x: &Word, set: &crate::gram::GramSet) -> Result<Word> {
    euler_decode(&profile(x, set)?)
}

/// Whether `x` starts and ends with the same `(ℓ-1)`-gram.
pub fn is_closed_word(x: &Word, ell: usize) -> Result<bool> {
    if ell == 0 || x.len() < ell {
        return Err(param(alloc::format!("closedness needs 1 <= ℓ <= n, got ℓ = {ell}, n = {}", x.len())));
    }
    Ok(crate::gram::is_closed(x.symbols(), ell))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::GramSet;
    use alloc::string::ToString;

    fn decode(q: usize, ell: usize, counts: &[u64]) -> Result<Word> {
        let set = GramSet::full(q, ell).unwrap();
        euler_decode(&ProfileVector::new(set, counts.to_vec()).unwrap())
    }

    #[test]
    fn decodes_worked_profiles() {
        let x = decode(2, 3, &[3, 1, 0, 2, 1, 1, 2, 2]).unwrap();
        assert_eq!(x.to_string(), "00000110111100");
        let x = decode(2, 3, &[18, 1, 0, 1, 1, 0, 1, 0]).unwrap();
        assert_eq!(x.to_string(), "000000000000000000001100");
        let x = decode(2, 3, &[0, 0, 0, 0, 0, 0, 1, 0]).unwrap();
        assert_eq!(x.to_string(), "110");
    }

    #[test]
    fn rejects_non_profiles() {
        assert_eq!(decode(2, 2, &[0, 0, 0, 0]), Err(Error::NotAProfile("all counts are zero")));
        assert_eq!(decode(2, 2, &[0, 2, 0, 0]), Err(Error::NotAProfile("imbalance")));
        assert_eq!(decode(2, 2, &[1, 0, 0, 1]), Err(Error::NotAProfile("disconnected")));
    }

    #[test]
    fn trails_start_at_the_surplus_node() {
        let x = decode(2, 2, &[0, 2, 1, 0]).unwrap();
        assert_eq!(x.to_string(), "0101");
    }

    #[test]
    fn canonical_examples() {
        let s = GramSet::full(2, 2).unwrap();
        let a = canonical_representative(&Word::parse(2, "0010").unwrap(), &s).unwrap();
        let b = canonical_representative(&Word::parse(2, "1001").unwrap(), &s).unwrap();
        assert_eq!(a, b);
        assert_eq!(canonical_representative(&a, &s).unwrap(), a);
    }

    #[test]
    fn canonical_preserves_profile_for_all_length_8_words() {
        let s = GramSet::full(2, 3).unwrap();
        for bits in 0u32..256 {
            let x = Word::new(2, (0..8).map(|k| ((bits >> k) & 1) as u8).collect()).unwrap();
            let c = canonical_representative(&x, &s).unwrap();
            assert_eq!(profile(&c, &s).unwrap(), profile(&x, &s).unwrap());
        }
    }

    #[test]
    fn closed_word_examples() {
        assert!(is_closed_word(&Word::parse(2, "0001000").unwrap(), 3).unwrap());
        assert!(!is_closed_word(&Word::parse(2, "0101").unwrap(), 2).unwrap());
        assert!(is_closed_word(&Word::parse(2, "000").unwrap(), 3).unwrap());
        assert!(!is_closed_word(&Word::parse(2, "001").unwrap(), 3).unwrap());
        assert!(is_closed_word(&Word::parse(2, "01").unwrap(), 4).is_err());
    }
}
