//! Words, gram sets, profile vectors and the distances defined on them.
//!
//! Grams of length `ℓ` over `[q]` are stored as their base-`q` code with the
//! first symbol most significant, so numeric order on codes is exactly the
//! lexicographic order on grams.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{param, Error, Result};
use crate::Limits;

/// Largest `q^ℓ` for which a gram set may be materialized.
pub const MAX_GRAM_SPACE: u64 = 1 << 26;

/// A finite word over the alphabet `{0, .., q-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    q: usize,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(q: usize, symbols: Vec<u8>) -> Result<Self> {
        check_alphabet(q)?;
        if symbols.is_empty() {
            return Err(param("a word needs at least one symbol"));
        }
        if let Some(pos) = symbols.iter().position(|&s| s as usize >= q) {
            return Err(param(alloc::format!(
                "symbol {} at position {pos} is not below q = {q}",
                symbols[pos]
            )));
        }
        Ok(Word { q, symbols })
    }

    /// Parses a plain symbol string such as `"00101"`; digits above 9 use
    /// the letters `a..z`.
    pub fn parse(q: usize, text: &str) -> Result<Self> {
        let symbols = text
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| param(alloc::format!("'{c}' is not a symbol")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(q, symbols)
    }

    /// Parses a DNA string with `A, T, G, C -> 0, 1, 2, 3`.
    pub fn from_dna(text: &str) -> Result<Self> {
        let symbols = text
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'A' => Ok(0),
                'T' => Ok(1),
                'G' => Ok(2),
                'C' => Ok(3),
                other => Err(param(alloc::format!("'{other}' is not a DNA base"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(4, symbols)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    pub fn to_dna(&self) -> Option<String> {
        if self.q != 4 {
            return None;
        }
        Some(self.symbols.iter().map(|&s| ['A', 'T', 'G', 'C'][s as usize]).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", symbol_char(s))?;
        }
        Ok(())
    }
}

fn symbol_char(s: u8) -> char {
    char::from_digit(s as u32, 36).unwrap_or('?')
}

fn check_alphabet(q: usize) -> Result<()> {
    if !(2..=36).contains(&q) {
        return Err(param(alloc::format!("alphabet size q = {q} must lie in [2, 36]")));
    }
    Ok(())
}

/// Number of symbols lying in the top `qstar` letters `[q - qstar, q - 1]`.
pub fn qstar_weight(symbols: &[u8], q: usize, qstar: usize) -> Result<usize> {
    if qstar == 0 || qstar >= q {
        return Err(param(alloc::format!("q* = {qstar} must lie in [1, q-1] for q = {q}")));
    }
    let threshold = (q - qstar) as u8;
    Ok(symbols.iter().filter(|&&s| s >= threshold).count())
}

/// Base-`q` code of a gram, first symbol most significant.
pub fn encode_gram(symbols: &[u8], q: usize) -> u64 {
    symbols.iter().fold(0u64, |acc, &s| acc * q as u64 + s as u64)
}

/// Inverse of [`encode_gram`].
pub fn decode_gram(mut code: u64, q: usize, ell: usize) -> Vec<u8> {
    let mut out = vec![0u8; ell];
    for slot in out.iter_mut().rev() {
        *slot = (code % q as u64) as u8;
        code /= q as u64;
    }
    out
}

pub fn gram_to_string(code: u64, q: usize, ell: usize) -> String {
    decode_gram(code, q, ell).into_iter().map(symbol_char).collect()
}

/// `q^ℓ`, or `None` when it leaves `u64`.
pub fn gram_space(q: usize, ell: usize) -> Option<u64> {
    (q as u64).checked_pow(ell as u32)
}

/// How a gram set was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramOrigin {
    Explicit,
    /// All grams whose `q*`-weight lies in `[w1, w2]`.
    Weight { qstar: usize, w1: usize, w2: usize },
}

#[derive(Debug, PartialEq, Eq)]
struct GramSetInner {
    q: usize,
    ell: usize,
    codes: Vec<u64>,
    origin: GramOrigin,
}

/// A strictly sorted set of length-`ℓ` grams over `[q]`.
///
/// Cloning is cheap; profile vectors keep a handle to the set that indexes
/// them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramSet(Arc<GramSetInner>);

impl GramSet {
    /// The unconstrained set `[q]^ℓ`.
    pub fn full(q: usize, ell: usize) -> Result<Self> {
        let space = checked_space(q, ell)?;
        Ok(GramSet(Arc::new(GramSetInner {
            q,
            ell,
            codes: (0..space).collect(),
            origin: GramOrigin::Weight {
                qstar: q - 1,
                w1: 0,
                w2: ell,
            },
        })))
    }

    /// `S(q, ℓ; q*, [w1, w2])`: every gram whose `q*`-weight lies in `[w1, w2]`.
    pub fn weight_constrained(q: usize, ell: usize, qstar: usize, w1: usize, w2: usize) -> Result<Self> {
        let space = checked_space(q, ell)?;
        if qstar == 0 || qstar >= q {
            return Err(param(alloc::format!("q* = {qstar} must lie in [1, q-1] for q = {q}")));
        }
        if w1 > w2 || w2 > ell {
            return Err(param(alloc::format!("weight window [{w1}, {w2}] must satisfy 0 <= w1 <= w2 <= ℓ = {ell}")));
        }
        let threshold = (q - qstar) as u64;
        let codes: Vec<u64> = (0..space)
            .filter(|&code| {
                let mut c = code;
                let mut w = 0;
                for _ in 0..ell {
                    if c % q as u64 >= threshold {
                        w += 1;
                    }
                    c /= q as u64;
                }
                (w1..=w2).contains(&w)
            })
            .collect();
        if codes.is_empty() {
            return Err(Error::Internal("weight-constrained gram set came out empty".into()));
        }
        Ok(GramSet(Arc::new(GramSetInner {
            q,
            ell,
            codes,
            origin: GramOrigin::Weight { qstar, w1, w2 },
        })))
    }

    /// An explicit list of grams; order does not matter but duplicates are rejected.
    pub fn explicit(q: usize, ell: usize, grams: &[Vec<u8>]) -> Result<Self> {
        checked_space(q, ell)?;
        let mut codes = Vec::with_capacity(grams.len());
        for g in grams {
            if g.len() != ell {
                return Err(param(alloc::format!("gram of length {} in a set of {ell}-grams", g.len())));
            }
            if g.iter().any(|&s| s as usize >= q) {
                return Err(param("gram symbol outside the alphabet"));
            }
            codes.push(encode_gram(g, q));
        }
        Self::from_codes(q, ell, codes)
    }

    /// Parses grams written as symbol strings, e.g. `["00", "01", "10"]`.
    pub fn parse_explicit<S: AsRef<str>>(q: usize, grams: &[S]) -> Result<Self> {
        let first = grams.first().ok_or_else(|| param("empty gram list"))?;
        let ell = first.as_ref().chars().count();
        let parsed = grams
            .iter()
            .map(|g| Word::parse(q, g.as_ref()).map(Word::into_symbols))
            .collect::<Result<Vec<_>>>()?;
        Self::explicit(q, ell, &parsed)
    }

    pub(crate) fn from_codes(q: usize, ell: usize, mut codes: Vec<u64>) -> Result<Self> {
        if codes.is_empty() {
            return Err(param("a gram set needs at least one gram"));
        }
        codes.sort_unstable();
        if codes.windows(2).any(|w| w[0] == w[1]) {
            return Err(param("duplicate gram in explicit gram set"));
        }
        Ok(GramSet(Arc::new(GramSetInner {
            q,
            ell,
            codes,
            origin: GramOrigin::Explicit,
        })))
    }

    pub fn q(&self) -> usize {
        self.0.q
    }

    pub fn ell(&self) -> usize {
        self.0.ell
    }

    pub fn len(&self) -> usize {
        self.0.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.codes.is_empty()
    }

    pub fn origin(&self) -> GramOrigin {
        self.0.origin
    }

    pub fn is_full(&self) -> bool {
        gram_space(self.q(), self.ell()) == Some(self.len() as u64)
    }

    pub fn codes(&self) -> &[u64] {
        &self.0.codes
    }

    pub fn code(&self, index: usize) -> u64 {
        self.0.codes[index]
    }

    pub fn gram(&self, index: usize) -> Vec<u8> {
        decode_gram(self.code(index), self.q(), self.ell())
    }

    pub fn gram_string(&self, index: usize) -> String {
        gram_to_string(self.code(index), self.q(), self.ell())
    }

    /// Position of a gram code in the sorted set.
    pub fn index_of(&self, code: u64) -> Option<usize> {
        self.0.codes.binary_search(&code).ok()
    }

    pub fn index_of_gram(&self, gram: &[u8]) -> Option<usize> {
        if gram.len() != self.ell() {
            return None;
        }
        self.index_of(encode_gram(gram, self.q()))
    }

    /// Sub-set keeping the grams selected by `keep` (indices into `self`).
    pub fn subset(&self, keep: impl IntoIterator<Item = usize>) -> Result<Self> {
        let codes = keep.into_iter().map(|i| self.code(i)).collect();
        Self::from_codes(self.q(), self.ell(), codes)
    }
}

fn checked_space(q: usize, ell: usize) -> Result<u64> {
    check_alphabet(q)?;
    if ell == 0 {
        return Err(param("gram length ℓ must be at least 1"));
    }
    match gram_space(q, ell) {
        Some(space) if space <= MAX_GRAM_SPACE => Ok(space),
        _ => Err(param(alloc::format!("q^ℓ = {q}^{ell} is too large to materialize"))),
    }
}

/// Gram counts indexed by a gram set in its lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileVector {
    gramset: GramSet,
    counts: Vec<u64>,
}

impl ProfileVector {
    pub fn new(gramset: GramSet, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != gramset.len() {
            return Err(param(alloc::format!(
                "profile has {} entries but the gram set has {}",
                counts.len(),
                gramset.len()
            )));
        }
        Ok(ProfileVector { gramset, counts })
    }

    pub fn gramset(&self) -> &GramSet {
        &self.gramset
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.counts
    }

    /// Number of grams, `n - ℓ + 1` for a genuine profile.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Implied word length `Σu + ℓ - 1`.
    pub fn word_len(&self) -> usize {
        self.total() as usize + self.gramset.ell() - 1
    }

    /// Re-indexes the profile over the full `[q]^ℓ`.
    pub fn embed_full(&self) -> Vec<u64> {
        let space = gram_space(self.gramset.q(), self.gramset.ell()).unwrap_or(0) as usize;
        let mut out = vec![0u64; space];
        for (i, &c) in self.counts.iter().enumerate() {
            out[self.gramset.code(i) as usize] = c;
        }
        out
    }
}

/// Rolling gram codes of a word: item `i` is the code of `x[i..i+ℓ)`.
pub fn gram_codes(symbols: &[u8], q: usize, ell: usize) -> impl Iterator<Item = u64> + '_ {
    let modulus = (q as u64).pow(ell as u32 - 1);
    let mut code = encode_gram(&symbols[..ell.min(symbols.len()).saturating_sub(1)], q);
    symbols.iter().skip(ell - 1).map(move |&s| {
        code = (code % modulus) * q as u64 + s as u64;
        code
    })
}

/// The profile `p(x; S)`.
pub fn profile(word: &Word, set: &GramSet) -> Result<ProfileVector> {
    if word.q() != set.q() {
        return Err(param(alloc::format!("word is over q = {} but the gram set over q = {}", word.q(), set.q())));
    }
    let ell = set.ell();
    if word.len() < ell {
        return Err(param(alloc::format!("word length {} is below ℓ = {ell}", word.len())));
    }
    let mut counts = vec![0u64; set.len()];
    for (position, code) in gram_codes(word.symbols(), word.q(), ell).enumerate() {
        match set.index_of(code) {
            Some(i) => counts[i] += 1,
            None => {
                return Err(Error::GramNotInSet {
                    gram: gram_to_string(code, word.q(), ell),
                    position,
                })
            }
        }
    }
    Ok(ProfileVector {
        gramset: set.clone(),
        counts,
    })
}

/// The unrestricted profile `p(x; q, ℓ)` over all `q^ℓ` grams.
pub fn full_profile(word: &Word, ell: usize) -> Result<Vec<u64>> {
    let space = checked_space(word.q(), ell)?;
    if word.len() < ell {
        return Err(param(alloc::format!("word length {} is below ℓ = {ell}", word.len())));
    }
    let mut counts = vec![0u64; space as usize];
    for code in gram_codes(word.symbols(), word.q(), ell) {
        counts[code as usize] += 1;
    }
    Ok(counts)
}

/// `Δ(u, v) = Σ max(u_i - v_i, 0)`.
pub fn delta(u: &[u64], v: &[u64]) -> Result<u64> {
    same_shape(u, v)?;
    Ok(u.iter().zip(v).map(|(&a, &b)| a.saturating_sub(b)).sum())
}

/// `d_asym(u, v) = max(Δ(u, v), Δ(v, u))`.
pub fn asym_distance(u: &[u64], v: &[u64]) -> Result<u64> {
    same_shape(u, v)?;
    Ok(asym_distance_unchecked(u, v))
}

pub(crate) fn asym_distance_unchecked(u: &[u64], v: &[u64]) -> u64 {
    let (mut up, mut down) = (0u64, 0u64);
    for (&a, &b) in u.iter().zip(v) {
        if a > b {
            up += a - b;
        } else {
            down += b - a;
        }
    }
    up.max(down)
}

fn same_shape(u: &[u64], v: &[u64]) -> Result<()> {
    if u.len() != v.len() {
        return Err(param(alloc::format!("vectors of length {} and {} differ in shape", u.len(), v.len())));
    }
    Ok(())
}

/// `d_gram(x, y; S)`, a pseudometric on words.
pub fn gram_distance(x: &Word, y: &Word, set: &GramSet) -> Result<u64> {
    if x.len() != y.len() {
        return Err(param("gram distance needs words of equal length"));
    }
    let px = profile(x, set)?;
    let py = profile(y, set)?;
    asym_distance(px.counts(), py.counts())
}

/// `|supp p(x; q, ℓ) Δ supp p(y; q, ℓ)|`.
pub fn support_distance(x: &Word, y: &Word, ell: usize) -> Result<u64> {
    if x.q() != y.q() || x.len() != y.len() {
        return Err(param("support distance needs words of equal length over the same alphabet"));
    }
    let px = full_profile(x, ell)?;
    let py = full_profile(y, ell)?;
    Ok(px.iter().zip(&py).filter(|(&a, &b)| (a > 0) != (b > 0)).count() as u64)
}

/// Whether the first and last `(ℓ-1)`-grams of the symbols coincide.
pub(crate) fn is_closed(symbols: &[u8], ell: usize) -> bool {
    let k = ell - 1;
    symbols[..k] == symbols[symbols.len() - k..]
}

/// Every distinct profile of a word in `([q]^n; S)`, optionally only closed words.
///
/// The word space is walked gram by gram, so only words whose grams all lie
/// in `S` are visited; the limit still applies to `q^n`.
pub fn enumerate_profile_classes(
    n: usize,
    set: &GramSet,
    closed_only: bool,
    limits: &Limits,
) -> Result<BTreeSet<Vec<u64>>> {
    let (q, ell) = (set.q(), set.ell());
    if n < ell {
        return Err(param(alloc::format!("word length {n} is below ℓ = {ell}")));
    }
    let estimate = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if estimate > limits.words {
        return Err(Error::BudgetExceeded {
            what: "word enumeration q^n",
            estimate,
            limit: limits.words,
        });
    }
    let mut out = BTreeSet::new();
    let mut counts = vec![0u64; set.len()];
    let mut word = Vec::with_capacity(n);
    for (i, &code) in set.codes().iter().enumerate() {
        word.clear();
        word.extend(decode_gram(code, q, ell));
        counts[i] += 1;
        extend_words(set, n, closed_only, &mut word, &mut counts, &mut out);
        counts[i] -= 1;
    }
    Ok(out)
}

fn extend_words(
    set: &GramSet,
    n: usize,
    closed_only: bool,
    word: &mut Vec<u8>,
    counts: &mut [u64],
    out: &mut BTreeSet<Vec<u64>>,
) {
    let (q, ell) = (set.q(), set.ell());
    if word.len() == n {
        if !closed_only || is_closed(word, ell) {
            out.insert(counts.to_vec());
        }
        return;
    }
    let stem = encode_gram(&word[word.len() + 1 - ell..], q) * q as u64;
    for s in 0..q as u8 {
        if let Some(i) = set.index_of(stem + s as u64) {
            word.push(s);
            counts[i] += 1;
            extend_words(set, n, closed_only, word, counts, out);
            counts[i] -= 1;
            word.pop();
        }
    }
}

/// Möbius function.
pub fn mobius(mut n: u64) -> i64 {
    if n == 0 {
        return 0;
    }
    let mut sign = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of distinct binary gram supports `|Q*(n; 2, ℓ)|` for `ℓ <= n < 2ℓ`
/// via the necklace-counting formula.
pub fn support_classes_formula(n: usize, ell: usize) -> Result<u128> {
    if ell == 0 || n < ell || n >= 2 * ell {
        return Err(param(alloc::format!("the support-class formula needs ℓ <= n < 2ℓ, got n = {n}, ℓ = {ell}")));
    }
    if n >= 120 {
        return Err(Error::Overflow("support-class formula"));
    }
    let mut total: i128 = 1i128 << n;
    for k in 1..=(n - ell + 1) as u64 {
        let necklace_sum: i128 = (1..=k)
            .filter(|d| k % d == 0)
            .map(|d| mobius(k / d) as i128 * (1i128 << d))
            .sum();
        // Σ_{d|k} µ(k/d) 2^d counts primitive words of length k, a multiple of k.
        total -= (k as i128 - 1) * (necklace_sum / k as i128);
    }
    Ok(total as u128)
}

/// Brute-force counterpart of [`support_classes_formula`] for any `q`:
/// the number of distinct gram supports over all of `[q]^n`.
pub fn support_classes_brute(q: usize, n: usize, ell: usize, limits: &Limits) -> Result<u128> {
    let space = checked_space(q, ell)?;
    if n < ell {
        return Err(param("word length below ℓ"));
    }
    let estimate = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if estimate > limits.words {
        return Err(Error::BudgetExceeded {
            what: "support enumeration q^n",
            estimate,
            limit: limits.words,
        });
    }
    let words_in_set = space.div_ceil(64) as usize;
    let mut supports = BTreeSet::new();
    let mut symbols = vec![0u8; n];
    loop {
        let mut bits = vec![0u64; words_in_set];
        for code in gram_codes(&symbols, q, ell) {
            bits[(code / 64) as usize] |= 1 << (code % 64);
        }
        supports.insert(bits);
        // odometer increment
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(supports.len() as u128);
            }
            i -= 1;
            symbols[i] += 1;
            if (symbols[i] as usize) < q {
                break;
            }
            symbols[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(q: usize, s: &str) -> Word {
        Word::parse(q, s).unwrap()
    }

    #[test]
    fn qstar_weight_examples() {
        assert_eq!(qstar_weight(w(4, "0123").symbols(), 4, 2).unwrap(), 2);
        assert_eq!(qstar_weight(w(2, "000").symbols(), 2, 1).unwrap(), 0);
        assert_eq!(qstar_weight(w(2, "11111").symbols(), 2, 1).unwrap(), 5);
        assert!(qstar_weight(&[0, 1], 2, 2).is_err());
        assert!(qstar_weight(&[0, 1], 2, 0).is_err());
    }

    #[test]
    fn build_gramset_examples() {
        let all = GramSet::weight_constrained(2, 3, 1, 0, 3).unwrap();
        assert_eq!(all.len(), 8);
        assert_eq!(all, GramSet::full(2, 3).unwrap());
        assert_eq!(GramSet::weight_constrained(2, 4, 1, 2, 3).unwrap().len(), 10);
        let no_zero = GramSet::weight_constrained(2, 3, 1, 1, 3).unwrap();
        assert_eq!(no_zero.len(), 7);
        assert_eq!(no_zero.index_of(0), None);
        assert!(GramSet::weight_constrained(2, 3, 1, 2, 1).is_err());
        assert!(GramSet::weight_constrained(2, 3, 1, 0, 4).is_err());
    }

    #[test]
    fn explicit_sets_sort_and_reject_duplicates() {
        let s = GramSet::parse_explicit(4, &["33", "00", "12", "01", "10", "23", "32"]).unwrap();
        let listed: Vec<String> = (0..s.len()).map(|i| s.gram_string(i)).collect();
        assert_eq!(listed, ["00", "01", "10", "12", "23", "32", "33"]);
        assert!(GramSet::parse_explicit(2, &["01", "01"]).is_err());
        assert!(GramSet::parse_explicit(2, &["01", "1"]).is_err());
    }

    #[test]
    fn profile_examples() {
        let s22 = GramSet::full(2, 2).unwrap();
        assert_eq!(profile(&w(2, "0000"), &s22).unwrap().counts(), &[3, 0, 0, 0]);
        assert_eq!(profile(&w(2, "0101"), &s22).unwrap().counts(), &[0, 2, 1, 0]);
        let s23 = GramSet::full(2, 3).unwrap();
        let p = profile(&w(2, "00000110111100"), &s23).unwrap();
        assert_eq!(p.counts(), &[3, 1, 0, 2, 1, 1, 2, 2]);
        assert_eq!(p.word_len(), 14);
    }

    #[test]
    fn profile_rejects_grams_outside_the_set() {
        let s = GramSet::weight_constrained(2, 3, 1, 1, 3).unwrap();
        match profile(&w(2, "11000"), &s) {
            Err(Error::GramNotInSet { gram, position }) => {
                assert_eq!(gram, "000");
                assert_eq!(position, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(profile(&w(2, "01"), &s).is_err());
    }

    #[test]
    fn distance_examples() {
        let (a, b) = ([3, 0, 0, 0], [0, 2, 1, 0]);
        assert_eq!(delta(&a, &b).unwrap(), 3);
        assert_eq!(delta(&b, &a).unwrap(), 3);
        assert_eq!(delta(&a, &a).unwrap(), 0);
        assert_eq!(asym_distance(&a, &b).unwrap(), 3);
        assert_eq!(asym_distance(&[5, 0], &[4, 2]).unwrap(), 2);
        assert!(asym_distance(&[1], &[1, 2]).is_err());
        assert!(delta(&[1], &[]).is_err());
    }

    #[test]
    fn gram_distance_examples() {
        let s22 = GramSet::full(2, 2).unwrap();
        assert_eq!(gram_distance(&w(2, "0010"), &w(2, "1001"), &s22).unwrap(), 0);
        assert_eq!(gram_distance(&w(2, "0000"), &w(2, "0101"), &s22).unwrap(), 3);
        assert_eq!(gram_distance(&w(2, "0110"), &w(2, "0110"), &s22).unwrap(), 0);
    }

    #[test]
    fn support_distance_examples() {
        assert_eq!(support_distance(&w(2, "0101"), &w(2, "1010"), 3).unwrap(), 0);
        assert_eq!(support_distance(&w(2, "0000"), &w(2, "1111"), 3).unwrap(), 2);
        assert_eq!(support_distance(&w(2, "0110"), &w(2, "0110"), 3).unwrap(), 0);
    }

    #[test]
    fn profile_class_examples() {
        let limits = Limits::default();
        let s22 = GramSet::full(2, 2).unwrap();
        let classes = enumerate_profile_classes(2, &s22, false, &limits).unwrap();
        let expected: BTreeSet<Vec<u64>> =
            [vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]].into_iter().collect();
        assert_eq!(classes, expected);

        let s1 = GramSet::parse_explicit(2, &["00", "01", "10"]).unwrap();
        // 8 grams: ⌊8/2⌋ + 1 classes
        assert_eq!(enumerate_profile_classes(9, &s1, true, &limits).unwrap().len(), 5);
        assert_eq!(enumerate_profile_classes(8, &s1, true, &limits).unwrap().len(), 4);

        let tight = Limits { words: 10, ..limits };
        assert!(matches!(
            enumerate_profile_classes(4, &s22, false, &tight),
            Err(Error::BudgetExceeded { estimate: 16, .. })
        ));
    }

    #[test]
    fn support_class_formula_spot_values() {
        assert_eq!(support_classes_formula(3, 3).unwrap(), 8);
        assert_eq!(support_classes_formula(4, 3).unwrap(), 15);
        assert_eq!(support_classes_formula(5, 3).unwrap(), 27);
        assert!(support_classes_formula(6, 3).is_err());
        assert!(support_classes_formula(2, 3).is_err());
    }

    #[test]
    fn support_class_formula_matches_brute_force() {
        let limits = Limits::default();
        for ell in 2..=5 {
            for n in ell..2 * ell {
                assert_eq!(
                    support_classes_formula(n, ell).unwrap(),
                    support_classes_brute(2, n, ell, &limits).unwrap(),
                    "n = {n}, ℓ = {ell}"
                );
            }
        }
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), m);
        }
    }

    #[test]
    fn dna_and_display() {
        let x = Word::from_dna("AATGC").unwrap();
        assert_eq!(x.symbols(), &[0, 0, 1, 2, 3]);
        assert_eq!(x.to_dna().unwrap(), "AATGC");
        assert_eq!(alloc::format!("{x}"), "00123");
        assert!(Word::from_dna("AXG").is_err());
        assert!(Word::parse(2, "012").is_err());
    }

    /// Substituting symbol `i` removes the grams covering `i` and adds their
    /// substituted versions: `ℓ` each way inside the word, fewer at the ends.
    #[test]
    fn single_substitution_moves_covering_grams() {
        for ell in 2..=3usize {
            for n in ell..=12usize {
                for bits in 0u32..(1 << n) {
                    let symbols: Vec<u8> = (0..n).map(|k| ((bits >> k) & 1) as u8).collect();
                    let before = full_profile(&Word::new(2, symbols.clone()).unwrap(), ell).unwrap();
                    for i in 0..n {
                        let mut flipped = symbols.clone();
                        flipped[i] ^= 1;
                        let starts: Vec<usize> = (0..=n - ell).filter(|&s| s <= i && i < s + ell).collect();
                        let mut expected = before.clone();
                        for &s in &starts {
                            expected[encode_gram(&symbols[s..s + ell], 2) as usize] -= 1;
                        }
                        for &s in &starts {
                            expected[encode_gram(&flipped[s..s + ell], 2) as usize] += 1;
                        }
                        let after = full_profile(&Word::new(2, flipped).unwrap(), ell).unwrap();
                        assert_eq!(after, expected);
                        let covering = (i + 1).min(ell).min(n - i).min(n - ell + 1);
                        assert_eq!(starts.len(), covering);
                        if ell - 1 <= i && i + ell <= n {
                            assert_eq!(covering, ell);
                        }
                    }
                }
            }
        }
    }
}
