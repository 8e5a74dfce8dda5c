//! Code constructions: Varshamov asymmetric codes, gram reconstruction codes
//! (by intersection and by systematic encoding) and the support-based
//! variant.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{param, Error, Result};
use crate::euler::euler_decode_in;
use crate::gram::{asym_distance_unchecked, enumerate_profile_classes, GramSet, ProfileVector, Word};
use crate::graph::DeBruijnGraph;
use crate::lattice::{build_system_in, for_each_point, GrcBlock, Strictness, Variant};
use crate::Limits;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn pow_mod(base: u64, exp: usize, p: u64) -> u64 {
    (0..exp).fold(1u64, |acc, _| acc * base % p)
}

/// `C(H, β) = {u : H·u ≡ β (mod p)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AeccSpec {
    /// `d × N`.
    pub h: Vec<Vec<u64>>,
    pub p: u64,
    pub beta: Vec<u64>,
    /// Generating residues when `H` has rows `α_i^k`.
    pub alpha: Option<Vec<u64>>,
}

impl AeccSpec {
    /// Varshamov matrix `H[k][i] = α_i^{k+1} mod p`.
    pub fn varshamov(alpha: Vec<u64>, d: usize, p: u64, beta: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(param(alloc::format!("p = {p} is not prime")));
        }
        if p as usize <= d {
            return Err(param(alloc::format!("p = {p} must exceed d = {d}")));
        }
        let distinct: BTreeSet<u64> = alpha.iter().copied().collect();
        if distinct.len() != alpha.len() || alpha.iter().any(|&a| a == 0 || a >= p) {
            return Err(param("α must be distinct nonzero residues mod p"));
        }
        let h = (1..=d)
            .map(|k| alpha.iter().map(|&a| pow_mod(a, k, p)).collect())
            .collect();
        Self::explicit(h, p, beta).map(|mut s| {
            s.alpha = Some(alpha);
            s
        })
    }

    pub fn explicit(h: Vec<Vec<u64>>, p: u64, beta: Vec<u64>) -> Result<Self> {
        if p < 2 {
            return Err(param("modulus p must be at least 2"));
        }
        if beta.len() != h.len() {
            return Err(param(alloc::format!("β has length {} but H has {} rows", beta.len(), h.len())));
        }
        if let Some(first) = h.first() {
            if h.iter().any(|r| r.len() != first.len()) {
                return Err(param("rows of H differ in length"));
            }
        }
        Ok(AeccSpec {
            h: h.iter().map(|r| r.iter().map(|x| x % p).collect()).collect(),
            p,
            beta: beta.iter().map(|x| x % p).collect(),
            alpha: None,
        })
    }

    /// Code length `N`, or `None` for `d = 0` where any length fits.
    pub fn length(&self) -> Option<usize> {
        self.h.first().map(Vec::len)
    }

    pub fn d(&self) -> usize {
        self.h.len()
    }

    pub fn with_beta(&self, beta: Vec<u64>) -> Result<Self> {
        let mut s = Self::explicit(self.h.clone(), self.p, beta)?;
        s.alpha = self.alpha.clone();
        Ok(s)
    }

    /// The same congruence as a lattice block.
    pub fn block(&self) -> GrcBlock {
        GrcBlock {
            h: self.h.clone(),
            p: self.p,
            beta: self.beta.clone(),
        }
    }

    /// `H·u mod p`.
    pub fn syndrome(&self, u: &[u64]) -> Vec<u64> {
        self.h
            .iter()
            .map(|row| {
                row.iter()
                    .zip(u)
                    .fold(0u64, |acc, (&h, &x)| (acc + h * (x % self.p)) % self.p)
            })
            .collect()
    }
}

/// Lexicographically smallest `count` distinct nonzero residues whose power
/// sums vanish mod `p` for `k = 1..=d` (so the all-ones vector is a
/// codeword); without that requirement simply `1..=count`.
pub fn find_alpha(count: usize, d: usize, p: u64, require_all_ones: bool, limits: &Limits) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(param(alloc::format!("p = {p} is not prime")));
    }
    if p as usize <= count.max(d) {
        return Err(param(alloc::format!("p = {p} must exceed both N = {count} and d = {d}")));
    }
    if !require_all_ones {
        return Ok((1..=count as u64).collect());
    }
    let mut chosen = Vec::with_capacity(count);
    let mut sums = vec![0u64; d];
    let mut visited = 0u128;
    match alpha_search(1, count, p, &mut chosen, &mut sums, &mut visited, limits.words) {
        Some(true) => Ok(chosen),
        Some(false) => Err(Error::NoAlpha { count, d, p }),
        None => Err(Error::BudgetExceeded {
            what: "α search",
            estimate: visited,
            limit: limits.words,
        }),
    }
}

fn alpha_search(
    next: u64,
    count: usize,
    p: u64,
    chosen: &mut Vec<u64>,
    sums: &mut [u64],
    visited: &mut u128,
    limit: u128,
) -> Option<bool> {
    *visited += 1;
    if *visited > limit {
        return None;
    }
    if chosen.len() == count {
        return Some(sums.iter().all(|&s| s == 0));
    }
    let needed = (count - chosen.len()) as u64;
    let mut a = next;
    while a + needed <= p {
        let powers: Vec<u64> = (1..=sums.len()).map(|k| pow_mod(a, k, p)).collect();
        for (s, x) in sums.iter_mut().zip(&powers) {
            *s = (*s + x) % p;
        }
        chosen.push(a);
        match alpha_search(a + 1, count, p, chosen, sums, visited, limit) {
            Some(false) => {}
            other => return other,
        }
        chosen.pop();
        for (s, x) in sums.iter_mut().zip(&powers) {
            *s = (*s + p - x) % p;
        }
        a += 1;
    }
    Some(false)
}

pub fn aecc_membership(u: &[u64], spec: &AeccSpec) -> Result<bool> {
    if let Some(n) = spec.length() {
        if n != u.len() {
            return Err(param(alloc::format!("vector of length {} against a code of length {n}", u.len())));
        }
    }
    Ok(spec.syndrome(u) == spec.beta)
}

/// Members of `C(H, β) ∩ [m]^N` in lexicographic order.
pub fn aecc_codewords(spec: &AeccSpec, length: usize, m: u64, limits: &Limits) -> Result<Vec<Vec<u64>>> {
    if spec.length().is_some_and(|n| n != length) {
        return Err(param("length does not match H"));
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let estimate = (m as u128).checked_pow(length as u32).unwrap_or(u128::MAX);
    if estimate > limits.words {
        return Err(Error::BudgetExceeded {
            what: "AECC enumeration m^N",
            estimate,
            limit: limits.words,
        });
    }
    let mut out = Vec::new();
    let mut u = vec![0u64; length];
    loop {
        if spec.syndrome(&u) == spec.beta {
            out.push(u.clone());
        }
        let mut i = length;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            u[i] += 1;
            if u[i] < m {
                break;
            }
            u[i] = 0;
        }
    }
}

/// Minimum pairwise asymmetric distance; `None` for fewer than two vectors.
pub fn min_asym_distance(vectors: &[Vec<u64>], limits: &Limits) -> Result<Option<u64>> {
    min_pairwise(vectors, limits, asym_distance_unchecked)
}

fn min_pairwise(vectors: &[Vec<u64>], limits: &Limits, dist: impl Fn(&[u64], &[u64]) -> u64) -> Result<Option<u64>> {
    let n = vectors.len() as u128;
    let pairs = n * n.saturating_sub(1) / 2;
    if pairs > limits.pairs {
        return Err(Error::BudgetExceeded {
            what: "pairwise distance scan",
            estimate: pairs,
            limit: limits.pairs,
        });
    }
    let mut best: Option<u64> = None;
    for (i, a) in vectors.iter().enumerate() {
        for b in &vectors[i + 1..] {
            let d = dist(a, b);
            if best.is_none_or(|x| d < x) {
                best = Some(d);
            }
        }
    }
    Ok(best)
}

/// Exact minimum distance of `C(H, β) ∩ [m]^N`.
pub fn aecc_min_distance(spec: &AeccSpec, length: usize, m: u64, limits: &Limits) -> Result<Option<u64>> {
    min_asym_distance(&aecc_codewords(spec, length, m, limits)?, limits)
}

/// Corrects an asymmetric (count-decreasing) error: the codeword `c >= y`
/// minimizing `Σ(c - y)`. Ties resolve to the earliest codeword.
pub fn decode_asymmetric(y: &[u64], codewords: &[Vec<u64>]) -> Option<usize> {
    codewords
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() == y.len() && c.iter().zip(y).all(|(a, b)| a >= b))
        .min_by_key(|(_, c)| c.iter().zip(y).map(|(a, b)| a - b).sum::<u64>())
        .map(|(i, _)| i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// All profiles of words in `([q]^n; S)`.
    Exhaustive,
    /// Interior lattice points `E(n; S)`.
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Intersection(Source),
    Systematic,
    Explicit,
}

/// Profile codewords of length-`n` words over a gram set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrcCodebook {
    pub gramset: GramSet,
    pub n: usize,
    /// Claimed minimum asymmetric distance.
    pub distance: u64,
    pub codewords: Vec<Vec<u64>>,
    pub provenance: Provenance,
}

impl GrcCodebook {
    pub fn explicit(gramset: GramSet, n: usize, distance: u64, codewords: Vec<Vec<u64>>) -> Result<Self> {
        let grams = (n + 1).checked_sub(gramset.ell()).ok_or_else(|| param("n is below ℓ"))? as u64;
        for c in &codewords {
            if c.len() != gramset.len() || c.iter().sum::<u64>() != grams {
                return Err(param("codeword is not a profile of the stated length"));
            }
        }
        Ok(GrcCodebook {
            gramset,
            n,
            distance,
            codewords,
            provenance: Provenance::Explicit,
        })
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn profile(&self, i: usize) -> ProfileVector {
        ProfileVector::new(self.gramset.clone(), self.codewords[i].clone()).expect("codeword shape")
    }
}

/// Profiles in the chosen source set that are codewords of `spec`.
pub fn grc_by_intersection(spec: &AeccSpec, n: usize, set: &GramSet, source: Source, limits: &Limits) -> Result<GrcCodebook> {
    if spec.length().is_some_and(|len| len != set.len()) {
        return Err(param(alloc::format!("code length must equal |S| = {}", set.len())));
    }
    let ell = set.ell();
    if n < ell {
        return Err(param("n is below ℓ"));
    }
    let codewords = match source {
        Source::Exhaustive => enumerate_profile_classes(n, set, false, limits)?
            .into_iter()
            .filter(|u| spec.syndrome(u) == spec.beta)
            .collect(),
        Source::Interior => {
            let graph = DeBruijnGraph::build(set);
            let spec_block = if spec.d() == 0 { Variant::Plain } else { Variant::Grc(spec.block()) };
            let system = build_system_in(&graph, &spec_block, (n - ell + 1) as u64, Strictness::Interior)?;
            let mut found = Vec::new();
            for_each_point(&system, limits, &mut |x| {
                found.push(x[..set.len()].iter().map(|&v| v as u64).collect::<Vec<u64>>());
            })?;
            found.sort_unstable();
            found
        }
    };
    Ok(GrcCodebook {
        gramset: set.clone(),
        n,
        distance: spec.d() as u64 + 1,
        codewords,
        provenance: Provenance::Intersection(source),
    })
}

/// How the encoder's length requirement is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundRule {
    /// `m·(C(|V|,2)(q-1) + |S| - |V| - 1) <= n - ℓ + 1`.
    Sufficient,
    /// The loop count stays nonnegative for every `v ∈ [m]^I`, checked on
    /// the vertices of the box (the total is convex in `v`).
    Exact,
}

/// Coordinate roles of the systematic encoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystematicLayout {
    pub gramset: GramSet,
    /// Hamiltonian cycle arcs starting at the smallest node.
    pub hamiltonian: Vec<usize>,
    /// The lexicographically smallest loop.
    pub loop_arc: usize,
    /// Free coordinates `I = S \ (H ∪ {a₀})` in lexicographic order.
    pub free: Vec<usize>,
    pub n: usize,
    pub m: u64,
    pub rule: BoundRule,
    graph: DeBruijnGraph,
}

impl SystematicLayout {
    pub fn graph(&self) -> &DeBruijnGraph {
        &self.graph
    }

    /// Coordinates ordered as Hamiltonian arcs, then the loop, then `I`.
    pub fn coordinate_order(&self) -> Vec<usize> {
        let mut order = self.hamiltonian.clone();
        order.push(self.loop_arc);
        order.extend(&self.free);
        order
    }
}

/// Picks the Hamiltonian cycle, loop and free coordinates for `(S, n, m)`.
pub fn systematic_layout(set: &GramSet, n: usize, m: u64, rule: BoundRule, limits: &Limits) -> Result<SystematicLayout> {
    let graph = DeBruijnGraph::build(set);
    let Some(loop_arc) = graph.loops().next() else {
        return Err(Error::LayoutUnsupported("the gram set has no loop".into()));
    };
    let Some(cycle) = graph.find_hamiltonian_cycle(limits)? else {
        return Err(Error::LayoutUnsupported("no Hamiltonian cycle was found".into()));
    };
    if m == 0 {
        return Err(param("alphabet size m must be positive"));
    }
    if n < set.ell() {
        return Err(param("n is below ℓ"));
    }
    let on_cycle: BTreeSet<usize> = cycle.arcs.iter().copied().collect();
    let free = (0..graph.arc_count())
        .filter(|a| *a != loop_arc && !on_cycle.contains(a))
        .collect();
    let layout = SystematicLayout {
        gramset: set.clone(),
        hamiltonian: cycle.arcs,
        loop_arc,
        free,
        n,
        m,
        rule,
        graph,
    };
    let required = required_length(&layout, m, rule)?;
    if required > n {
        return Err(Error::LengthTooShort {
            n,
            m,
            required_n: required,
            max_m: max_alphabet(&layout, n, rule)?,
        });
    }
    Ok(layout)
}

/// Smallest `n` admitting every `v ∈ [m]^I` under `rule`.
pub fn required_length(layout: &SystematicLayout, m: u64, rule: BoundRule) -> Result<usize> {
    let ell = layout.gramset.ell();
    let graph = &layout.graph;
    match rule {
        BoundRule::Sufficient => {
            let v = graph.node_count() as u64;
            let per = v * v.saturating_sub(1) / 2 * (layout.gramset.q() as u64 - 1) + layout.free.len() as u64;
            let grams = m.checked_mul(per).ok_or(Error::Overflow("length bound"))?;
            Ok(grams as usize + ell - 1)
        }
        BoundRule::Exact => {
            let k = layout.free.len();
            if k > 24 {
                return Err(Error::BudgetExceeded {
                    what: "exact length bound (2^|I| box vertices)",
                    estimate: 1u128 << k.min(127),
                    limit: 1 << 24,
                });
            }
            let mut worst = 0u64;
            for mask in 0u64..(1u64 << k) {
                let v: Vec<u64> = (0..k).map(|i| if mask >> i & 1 == 1 { m - 1 } else { 0 }).collect();
                let x = hamiltonian_counts(layout, &v);
                let total = v.iter().sum::<u64>() + x.iter().sum::<u64>();
                worst = worst.max(total);
            }
            Ok(worst as usize + ell - 1)
        }
    }
}

/// Largest `m` admissible at length `n`; zero when none is.
pub fn max_alphabet(layout: &SystematicLayout, n: usize, rule: BoundRule) -> Result<u64> {
    let fits = |m: u64| required_length(layout, m, rule).map(|r| r <= n);
    if !fits(1)? {
        return Ok(0);
    }
    let (mut lo, mut hi) = (1u64, 2u64);
    while fits(hi)? {
        lo = hi;
        hi *= 2;
        if hi > n as u64 + 2 {
            break;
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Counts on the Hamiltonian arcs: `x_i = 1 + P_{i-1} - min_j P_j`, where
/// `P` are prefix sums of the net free inflow at each cycle arc's head.
fn hamiltonian_counts(layout: &SystematicLayout, v: &[u64]) -> Vec<u64> {
    let graph = &layout.graph;
    let mut net = vec![0i64; graph.node_count()];
    for (&a, &value) in layout.free.iter().zip(v) {
        let arc = graph.arc(a);
        net[arc.target] += value as i64;
        net[arc.source] -= value as i64;
    }
    let mut prefix = Vec::with_capacity(layout.hamiltonian.len());
    let mut p = 0i64;
    prefix.push(0);
    for &h in &layout.hamiltonian[..layout.hamiltonian.len() - 1] {
        p += net[graph.arc(h).target];
        prefix.push(p);
    }
    let min = prefix.iter().copied().min().unwrap_or(0);
    prefix.iter().map(|&p| (1 + p - min) as u64).collect()
}

/// `φ_sys(v)`: `v` on `I`, flow-balancing counts on the Hamiltonian cycle
/// and the remainder on the loop.
pub fn systematic_encode(v: &[u64], layout: &SystematicLayout) -> Result<ProfileVector> {
    if v.len() != layout.free.len() {
        return Err(param(alloc::format!("expected {} free symbols, got {}", layout.free.len(), v.len())));
    }
    if let Some(&bad) = v.iter().find(|&&x| x >= layout.m) {
        return Err(param(alloc::format!("symbol {bad} is not below m = {}", layout.m)));
    }
    let x = hamiltonian_counts(layout, v);
    let grams = (layout.n - layout.gramset.ell() + 1) as u64;
    let used = v.iter().sum::<u64>() + x.iter().sum::<u64>();
    let y = grams.checked_sub(used).ok_or_else(|| {
        Error::Internal(alloc::format!("loop count would be negative ({grams} grams, {used} already placed)"))
    })?;
    let mut u = vec![0u64; layout.graph.arc_count()];
    for (&a, &c) in layout.hamiltonian.iter().zip(&x) {
        u[a] = c;
    }
    u[layout.loop_arc] = y;
    for (&a, &c) in layout.free.iter().zip(v) {
        u[a] = c;
    }
    ProfileVector::new(layout.gramset.clone(), u)
}

/// `φ_sys` applied to every codeword of an `m`-ary code on `I`.
pub fn grc_by_systematic(codewords: &[Vec<u64>], distance: u64, layout: &SystematicLayout) -> Result<GrcCodebook> {
    let encoded = codewords
        .iter()
        .map(|v| systematic_encode(v, layout).map(ProfileVector::into_counts))
        .collect::<Result<Vec<_>>>()?;
    Ok(GrcCodebook {
        gramset: layout.gramset.clone(),
        n: layout.n,
        distance,
        codewords: encoded,
        provenance: Provenance::Systematic,
    })
}

/// Permutation of `[m]` → systematic profile → EULER word.
pub fn rank_mod_pipeline(perm: &[usize], layout: &SystematicLayout) -> Result<Word> {
    let m = layout.free.len();
    if perm.len() != m {
        return Err(param(alloc::format!("permutation length {} differs from |I| = {m}", perm.len())));
    }
    let mut seen = vec![false; m];
    for &p in perm {
        if p >= m || core::mem::replace(&mut seen[p], true) {
            return Err(param("not a permutation of [m]"));
        }
    }
    if layout.gramset.is_full() {
        let (q, ell) = (layout.gramset.q(), layout.gramset.ell() as u32);
        let expected = q.pow(ell) - q.pow(ell - 1) - 1;
        if m != expected {
            return Err(param(alloc::format!("m must be q^ℓ - q^(ℓ-1) - 1 = {expected}")));
        }
    }
    let v: Vec<u64> = perm.iter().map(|&p| p as u64).collect();
    let u = systematic_encode(&v, layout)?;
    euler_decode_in(&layout.graph, u.counts())
}

/// Ranks of the free-coordinate counts of a profile (ties by position).
pub fn recover_permutation(counts: &[u64], layout: &SystematicLayout) -> Vec<usize> {
    let values: Vec<u64> = layout.free.iter().map(|&a| counts[a]).collect();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| (values[i], i));
    let mut rank = vec![0usize; values.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    rank
}

/// Exact minimum `d_asym` over distinct codewords; `None` stands for `+∞`.
pub fn grc_min_distance(book: &GrcCodebook, limits: &Limits) -> Result<Option<u64>> {
    min_asym_distance(&book.codewords, limits)
}

/// Exact minimum support symmetric difference over distinct codewords.
pub fn support_grc_min_distance(book: &GrcCodebook, limits: &Limits) -> Result<Option<u64>> {
    min_pairwise(&book.codewords, limits, |a, b| {
        a.iter().zip(b).filter(|(&x, &y)| (x > 0) != (y > 0)).count() as u64
    })
}

/// `n - ℓ + 1 - ⌊(d-1)/2⌋` observed grams identify a codeword of a
/// support code of distance `d`; verified on the book by checking that no
/// two codewords share that many grams.
pub fn support_identification_threshold(book: &GrcCodebook, d: u64, limits: &Limits) -> Result<u64> {
    if d == 0 {
        return Err(param("distance must be positive"));
    }
    let grams = (book.n - book.gramset.ell() + 1) as u64;
    let threshold = grams
        .checked_sub((d - 1) / 2)
        .ok_or_else(|| param("distance too large for the word length"))?;
    if let Some(actual) = support_grc_min_distance(book, limits)? {
        if actual < d {
            return Err(param(alloc::format!("book has support distance {actual} < {d}")));
        }
    }
    for (i, a) in book.codewords.iter().enumerate() {
        for (j, b) in book.codewords.iter().enumerate().skip(i + 1) {
            let shared = a.iter().zip(b).filter(|(&x, &y)| x > 0 && y > 0).count() as u64;
            if shared >= threshold {
                return Err(Error::Internal(alloc::format!(
                    "codewords {i} and {j} share {shared} grams, at least the threshold {threshold}"
                )));
            }
        }
    }
    Ok(threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::gram::profile;

    fn example_61_spec() -> AeccSpec {
        AeccSpec::varshamov(vec![1, 2, 3, 5, 8, 10, 11, 12], 2, 13, vec![0, 0]).unwrap()
    }

    #[test]
    fn varshamov_matrix_matches_example() {
        let spec = example_61_spec();
        assert_eq!(spec.h, vec![vec![1, 2, 3, 5, 8, 10, 11, 12], vec![1, 4, 9, 12, 12, 9, 4, 1]]);
        let h1 = AeccSpec::varshamov(vec![1, 2, 3], 2, 5, vec![0, 0]).unwrap();
        assert_eq!(h1.h, vec![vec![1, 2, 3], vec![1, 4, 4]]);
        assert!(AeccSpec::varshamov(vec![1, 1], 1, 5, vec![0]).is_err());
        assert!(AeccSpec::varshamov(vec![1, 2], 1, 6, vec![0]).is_err());
    }

    #[test]
    fn find_alpha_examples() {
        let limits = Limits::default();
        let alpha = find_alpha(8, 2, 13, true, &limits).unwrap();
        let spec = AeccSpec::varshamov(alpha, 2, 13, vec![0, 0]).unwrap();
        assert!(aecc_membership(&[1; 8], &spec).unwrap());
        assert!(aecc_membership(&[1; 8], &example_61_spec()).unwrap());
        assert_eq!(find_alpha(3, 2, 5, false, &limits).unwrap(), vec![1, 2, 3]);
        assert_eq!(find_alpha(10, 1, 11, true, &limits).unwrap(), (1..=10).collect::<Vec<_>>());
        assert!(matches!(find_alpha(2, 1, 3, true, &limits), Ok(ref a) if a == &vec![1, 2]));
        assert!(matches!(find_alpha(1, 1, 5, true, &limits), Err(Error::NoAlpha { .. })));
    }

    #[test]
    fn membership_examples() {
        let spec = example_61_spec();
        assert!(aecc_membership(&[0; 8], &spec).unwrap());
        let d1 = AeccSpec::varshamov(vec![1, 2], 1, 5, vec![0]).unwrap();
        assert!(!aecc_membership(&[1, 0], &d1).unwrap());
        assert!(aecc_membership(&[1, 2], &spec).is_err());
    }

    #[test]
    fn min_distance_examples() {
        let limits = Limits::default();
        let empty = AeccSpec::explicit(Vec::new(), 5, Vec::new()).unwrap();
        assert_eq!(aecc_min_distance(&empty, 3, 4, &limits).unwrap(), Some(1));
        let d1 = AeccSpec::varshamov(vec![1, 2, 3], 1, 5, vec![0]).unwrap();
        let book = aecc_codewords(&d1, 3, 2, &limits).unwrap();
        let mut oracle = u64::MAX;
        for a in &book {
            for b in &book {
                if a != b {
                    let up: u64 = a.iter().zip(b).map(|(x, y)| x.saturating_sub(*y)).sum();
                    let down: u64 = b.iter().zip(a).map(|(x, y)| x.saturating_sub(*y)).sum();
                    oracle = oracle.min(up.max(down));
                }
            }
        }
        assert_eq!(aecc_min_distance(&d1, 3, 2, &limits).unwrap(), Some(oracle));
    }

    #[test]
    fn varshamov_codes_meet_their_distance() {
        let limits = Limits::default();
        for (n, d, p, m) in [(3, 1, 5, 5), (3, 2, 5, 6), (4, 2, 7, 5), (4, 3, 7, 4)] {
            let alpha = find_alpha(n, d, p, false, &limits).unwrap();
            for beta in 0..p {
                let spec = AeccSpec::varshamov(alpha.clone(), d, p, vec![beta; d]).unwrap();
                if let Some(dist) = aecc_min_distance(&spec, n, m, &limits).unwrap() {
                    assert!(dist > d as u64, "N={n} d={d} p={p} β={beta}: distance {dist}");
                }
            }
        }
    }

    #[test]
    fn asymmetric_decoder_corrects_up_to_d() {
        let limits = Limits::default();
        let spec = AeccSpec::varshamov(vec![1, 2, 3], 2, 5, vec![0, 0]).unwrap();
        let book = aecc_codewords(&spec, 3, 5, &limits).unwrap();
        for (i, c) in book.iter().enumerate() {
            // every e >= 0 with wt(e) <= 2 and e <= c
            for e0 in 0..=2u64 {
                for e1 in 0..=2 - e0 {
                    for e2 in 0..=2 - e0 - e1 {
                        let e = [e0, e1, e2];
                        if c.iter().zip(&e).any(|(a, b)| b > a) {
                            continue;
                        }
                        let y: Vec<u64> = c.iter().zip(&e).map(|(a, b)| a - b).collect();
                        assert_eq!(decode_asymmetric(&y, &book), Some(i));
                    }
                }
            }
        }
    }

    #[test]
    fn intersection_matches_filtered_classes() {
        let limits = Limits::default();
        let set = GramSet::full(2, 2).unwrap();
        let spec = AeccSpec::varshamov(vec![1, 2, 3, 4], 1, 5, vec![0]).unwrap();
        let book = grc_by_intersection(&spec, 8, &set, Source::Exhaustive, &limits).unwrap();
        let oracle: Vec<Vec<u64>> = enumerate_profile_classes(8, &set, false, &limits)
            .unwrap()
            .into_iter()
            .filter(|u| u.iter().zip(&[1u64, 2, 3, 4]).map(|(a, b)| a * b).sum::<u64>() % 5 == 0)
            .collect();
        assert_eq!(book.codewords, oracle);

        let mut total = 0;
        for beta in 0..5 {
            total += grc_by_intersection(&spec.with_beta(vec![beta]).unwrap(), 8, &set, Source::Exhaustive, &limits)
                .unwrap()
                .len();
        }
        assert_eq!(total, enumerate_profile_classes(8, &set, false, &limits).unwrap().len());
    }

    fn layout(n: usize, m: u64, rule: BoundRule) -> Result<SystematicLayout> {
        systematic_layout(&GramSet::full(2, 3).unwrap(), n, m, rule, &Limits::default())
    }

    #[test]
    fn layout_examples() {
        let l = layout(24, 2, BoundRule::Exact).unwrap();
        let names = |arcs: &[usize]| arcs.iter().map(|&a| l.gramset.gram_string(a)).collect::<Vec<_>>();
        assert_eq!(names(&l.free), ["010", "101", "111"]);
        assert_eq!(names(&[l.loop_arc]), ["000"]);
        assert_eq!(names(&l.hamiltonian), ["001", "011", "110", "100"]);
        assert_eq!(l.coordinate_order().len(), 8);
    }

    #[test]
    fn length_bounds() {
        let l = layout(353, 39, BoundRule::Sufficient).unwrap();
        assert_eq!(required_length(&l, 39, BoundRule::Sufficient).unwrap(), 353);
        match layout(352, 39, BoundRule::Sufficient) {
            Err(Error::LengthTooShort { required_n, max_m, .. }) => {
                assert_eq!(required_n, 353);
                assert_eq!(max_m, 38);
            }
            other => panic!("unexpected {other:?}"),
        }
        // the exact rule gives 4m + 2 for the binary 3-gram set
        for m in 1..=8 {
            let l = layout(4 * m as usize + 2, m, BoundRule::Exact).unwrap();
            assert_eq!(required_length(&l, m, BoundRule::Exact).unwrap(), 4 * m as usize + 2);
        }
        assert!(layout(157, 39, BoundRule::Exact).is_err());
        assert!(layout(158, 39, BoundRule::Exact).is_ok());
    }

    #[test]
    fn unsupported_layouts() {
        let no_loop = GramSet::weight_constrained(2, 4, 1, 2, 3).unwrap();
        assert!(matches!(
            systematic_layout(&no_loop, 40, 2, BoundRule::Exact, &Limits::default()),
            Err(Error::LayoutUnsupported(_))
        ));
    }

    #[test]
    fn encoder_examples() {
        let l = layout(14, 3, BoundRule::Exact).unwrap();
        assert_eq!(systematic_encode(&[0, 1, 2], &l).unwrap().counts(), &[3, 1, 0, 2, 1, 1, 2, 2]);
        let l = layout(24, 1, BoundRule::Exact).unwrap();
        assert_eq!(systematic_encode(&[0, 0, 0], &l).unwrap().counts(), &[18, 1, 0, 1, 1, 0, 1, 0]);
        assert!(systematic_encode(&[0, 0, 3], &layout(14, 3, BoundRule::Exact).unwrap()).is_err());
    }

    #[test]
    fn encoder_postconditions_hold_exhaustively() {
        let l = layout(14, 3, BoundRule::Exact).unwrap();
        let b = l.graph().incidence_matrix();
        for code in 0..27u64 {
            let v = [code / 9, code / 3 % 3, code % 3];
            let u = systematic_encode(&v, &l).unwrap();
            let c = u.counts();
            assert_eq!(u.total(), 12);
            for row in &b {
                assert_eq!(row.iter().zip(c).map(|(&x, &y)| x * y as i64).sum::<i64>(), 0);
            }
            assert!(l.hamiltonian.iter().all(|&a| c[a] >= 1));
            assert_eq!(l.free.iter().map(|&a| c[a]).collect::<Vec<_>>(), v);
        }
    }

    #[test]
    fn rank_modulation_examples() {
        let l = layout(14, 3, BoundRule::Exact).unwrap();
        let set = GramSet::full(2, 3).unwrap();
        let x = rank_mod_pipeline(&[0, 1, 2], &l).unwrap();
        assert_eq!(x.len(), 14);
        let p = profile(&x, &set).unwrap();
        assert_eq!(p.counts(), &[3, 1, 0, 2, 1, 1, 2, 2]);
        assert_eq!(recover_permutation(p.counts(), &l), vec![0, 1, 2]);
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut words = BTreeSet::new();
        for perm in perms {
            let x = rank_mod_pipeline(&perm, &l).unwrap();
            assert_eq!(recover_permutation(profile(&x, &set).unwrap().counts(), &l), perm);
            words.insert(x.to_string());
        }
        assert_eq!(words.len(), 6);
        assert!(rank_mod_pipeline(&[0, 0, 1], &l).is_err());
    }

    #[test]
    fn systematic_books_keep_distances() {
        let limits = Limits::default();
        let l = layout(26, 6, BoundRule::Exact).unwrap();
        let spec = AeccSpec::varshamov(vec![1, 2, 3], 2, 5, vec![0, 0]).unwrap();
        let code = aecc_codewords(&spec, 3, 6, &limits).unwrap();
        let book = grc_by_systematic(&code, 3, &l).unwrap();
        for (i, a) in code.iter().enumerate() {
            for (j, b) in code.iter().enumerate().skip(i + 1) {
                assert!(asym_distance_unchecked(&book.codewords[i], &book.codewords[j]) >= asym_distance_unchecked(a, b));
            }
        }
        assert!(grc_by_systematic(&[], 3, &l).unwrap().is_empty());
    }

    #[test]
    fn min_distance_sentinel_and_oracle() {
        let limits = Limits::default();
        let set = GramSet::full(2, 2).unwrap();
        let single = GrcCodebook::explicit(set.clone(), 4, 1, vec![vec![3, 0, 0, 0]]).unwrap();
        assert_eq!(grc_min_distance(&single, &limits).unwrap(), None);
        let book = GrcCodebook::explicit(set, 4, 1, vec![vec![3, 0, 0, 0], vec![0, 2, 1, 0], vec![1, 1, 1, 0]]).unwrap();
        assert_eq!(grc_min_distance(&book, &limits).unwrap(), Some(1));
    }

    #[test]
    fn threshold_examples() {
        let limits = Limits::default();
        let set = GramSet::full(2, 3).unwrap();
        let words = ["00010", "11101"];
        let codewords = words
            .iter()
            .map(|w| profile(&Word::parse(2, w).unwrap(), &set).unwrap().into_counts())
            .collect();
        let book = GrcCodebook::explicit(set.clone(), 5, 4, codewords).unwrap();
        assert_eq!(support_grc_min_distance(&book, &limits).unwrap(), Some(6));
        assert_eq!(support_identification_threshold(&book, 4, &limits).unwrap(), 2);
        assert_eq!(support_identification_threshold(&book, 1, &limits).unwrap(), 3);
        let long = GrcCodebook::explicit(set, 8, 1, Vec::new()).unwrap();
        // d = 2(n - ℓ + 1) leaves a single gram
        assert_eq!(support_identification_threshold(&long, 12, &limits).unwrap(), 1);
    }
}
