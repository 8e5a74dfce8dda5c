//! Seeded simulation of the storage channel: synthesis substitutions,
//! sequencing substitutions on fragments, and undersampling.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64`. Campaign trials use
//! the seed `splitmix64(splitmix64(master ^ cell) ^ trial)`, so each trial
//! is reproducible on its own.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::GrcCodebook;
use crate::error::{param, Result};
use crate::euler::euler_decode_in;
use crate::gram::{asym_distance_unchecked, decode_gram, encode_gram, full_profile, gram_codes, GramSet, Word};
use crate::graph::DeBruijnGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChannelConfig {
    pub s_syn: usize,
    pub s_seq: usize,
    pub t_under: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Substitution {
    pub position: usize,
    pub from: u8,
    pub to: u8,
}

/// A sequencing error on one surviving fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FragmentError {
    pub from: u64,
    pub to: u64,
    /// Offset of the substituted symbol inside the fragment.
    pub offset: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChannelTrace {
    pub synthesis: Vec<Substitution>,
    /// Gram codes of the fragments that were never observed.
    pub undersampled: Vec<u64>,
    pub sequencing: Vec<FragmentError>,
}

/// Observed fragment counts over the full `[q]^ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelOutput {
    pub q: usize,
    pub ell: usize,
    pub counts: Vec<u64>,
    pub trace: ChannelTrace,
}

impl ChannelOutput {
    /// Counts restricted to a gram set, plus the number of observations
    /// that fell outside it.
    pub fn restricted(&self, set: &GramSet) -> (Vec<u64>, u64) {
        let inside: Vec<u64> = set.codes().iter().map(|&c| self.counts[c as usize]).collect();
        let outside = self.counts.iter().sum::<u64>() - inside.iter().sum::<u64>();
        (inside, outside)
    }
}

/// Changes exactly `s_syn` distinct positions, each to a different symbol.
pub fn synthesize(x: &Word, s_syn: usize, rng: &mut impl Rng) -> Result<(Word, Vec<Substitution>)> {
    if s_syn > x.len() {
        return Err(param(alloc::format!("cannot substitute {s_syn} of {} symbols", x.len())));
    }
    let q = x.q();
    let mut symbols = x.symbols().to_vec();
    let mut positions = sample(rng, x.len(), s_syn).into_vec();
    positions.sort_unstable();
    let mut subs = Vec::with_capacity(s_syn);
    for position in positions {
        let from = symbols[position];
        let to = other_symbol(from, q, rng);
        symbols[position] = to;
        subs.push(Substitution { position, from, to });
    }
    Ok((Word::new(q, symbols)?, subs))
}

fn other_symbol(from: u8, q: usize, rng: &mut impl Rng) -> u8 {
    let r = rng.gen_range(0..q as u8 - 1);
    if r >= from {
        r + 1
    } else {
        r
    }
}

/// Fragments the word into its `n - ℓ + 1` grams, drops `t_under` of them,
/// then substitutes one symbol in each of `s_seq` distinct survivors.
pub fn sequence(x: &Word, s_seq: usize, t_under: usize, ell: usize, rng: &mut impl Rng) -> Result<ChannelOutput> {
    let q = x.q();
    let space = full_profile(x, ell)?.len();
    let fragments: Vec<u64> = gram_codes(x.symbols(), q, ell).collect();
    if s_seq + t_under > fragments.len() {
        return Err(param(alloc::format!(
            "{s_seq} substitutions and {t_under} losses exceed {} fragments",
            fragments.len()
        )));
    }
    let mut dropped = sample(rng, fragments.len(), t_under).into_vec();
    dropped.sort_unstable();
    let mut keep = vec![true; fragments.len()];
    for &i in &dropped {
        keep[i] = false;
    }
    let survivors: Vec<usize> = (0..fragments.len()).filter(|&i| keep[i]).collect();
    let mut hit = sample(rng, survivors.len(), s_seq).into_vec();
    hit.sort_unstable();
    let mut observed: Vec<u64> = survivors.iter().map(|&i| fragments[i]).collect();
    let mut sequencing = Vec::with_capacity(s_seq);
    for h in hit {
        let from = observed[h];
        let mut gram = decode_gram(from, q, ell);
        let offset = rng.gen_range(0..ell);
        gram[offset] = other_symbol(gram[offset], q, rng);
        let to = encode_gram(&gram, q);
        observed[h] = to;
        sequencing.push(FragmentError { from, to, offset });
    }
    let mut counts = vec![0u64; space];
    for c in observed {
        counts[c as usize] += 1;
    }
    Ok(ChannelOutput {
        q,
        ell,
        counts,
        trace: ChannelTrace {
            synthesis: Vec::new(),
            undersampled: dropped.iter().map(|&i| fragments[i]).collect(),
            sequencing,
        },
    })
}

/// Synthesis followed by sequencing, all drawn from `config.seed`.
pub fn transmit(x: &Word, config: &ChannelConfig, ell: usize) -> Result<ChannelOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (synthesized, synthesis) = synthesize(x, config.s_syn, &mut rng)?;
    let mut out = sequence(&synthesized, config.s_seq, config.t_under, ell, &mut rng)?;
    out.trace.synthesis = synthesis;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub index: usize,
    pub word: Word,
    pub distance: u64,
    /// Another codeword was equally close; the earliest one was taken.
    pub tie: bool,
}

/// Nearest codeword under `d_asym` after embedding into `[q]^ℓ`, decoded by EULER.
pub fn decode(observed: &ChannelOutput, book: &GrcCodebook) -> Result<Decoded> {
    let decoder = Decoder::new(book)?;
    decoder.decode(observed)
}

/// Codebook embedded over `[q]^ℓ`, reusable across many decodes.
#[derive(Debug, Clone)]
pub struct Decoder {
    graph: DeBruijnGraph,
    embedded: Vec<Vec<u64>>,
    codewords: Vec<Vec<u64>>,
}

impl Decoder {
    pub fn new(book: &GrcCodebook) -> Result<Self> {
        if book.is_empty() {
            return Err(param("cannot decode against an empty codebook"));
        }
        let embedded = (0..book.len()).map(|i| book.profile(i).embed_full()).collect();
        Ok(Decoder {
            graph: DeBruijnGraph::build(&book.gramset),
            embedded,
            codewords: book.codewords.clone(),
        })
    }

    pub fn nearest(&self, counts: &[u64]) -> Result<(usize, u64, bool)> {
        if counts.len() != self.embedded[0].len() {
            return Err(param("observation is not indexed over the codebook's [q]^ℓ"));
        }
        let mut best = (0usize, u64::MAX, false);
        for (i, c) in self.embedded.iter().enumerate() {
            let d = asym_distance_unchecked(c, counts);
            if d < best.1 {
                best = (i, d, false);
            } else if d == best.1 {
                best.2 = true;
            }
        }
        Ok(best)
    }

    pub fn decode(&self, observed: &ChannelOutput) -> Result<Decoded> {
        let (index, distance, tie) = self.nearest(&observed.counts)?;
        let word = euler_decode_in(&self.graph, &self.codewords[index])?;
        Ok(Decoded {
            index,
            word,
            distance,
            tie,
        })
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub fn trial_seed(master: u64, cell: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(master ^ cell) ^ trial)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub s_syn: usize,
    pub s_seq: usize,
    pub t_under: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CampaignRow {
    pub cell: Cell,
    pub trials: u64,
    pub successes: u64,
}

/// Codeword words and decoder shared by all campaign trials.
#[derive(Debug, Clone)]
pub struct CampaignBook {
    decoder: Decoder,
    words: Vec<Word>,
    ell: usize,
}

impl CampaignBook {
    pub fn new(book: &GrcCodebook) -> Result<Self> {
        let decoder = Decoder::new(book)?;
        let words = book
            .codewords
            .iter()
            .map(|c| euler_decode_in(&decoder.graph, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(CampaignBook {
            decoder,
            words,
            ell: book.gramset.ell(),
        })
    }

    /// One trial: pick a codeword, send it, decode. `true` on success.
    pub fn trial(&self, master: u64, cell_index: u64, cell: Cell, trial: u64) -> Result<bool> {
        let seed = trial_seed(master, cell_index, trial);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sent = rng.gen_range(0..self.words.len());
        let config = ChannelConfig {
            s_syn: cell.s_syn,
            s_seq: cell.s_seq,
            t_under: cell.t_under,
            seed: rng.gen(),
        };
        let observed = transmit(&self.words[sent], &config, self.ell)?;
        let (index, _, _) = self.decoder.nearest(&observed.counts)?;
        Ok(self.decoder.codewords[index] == self.decoder.codewords[sent])
    }
}

/// Success counts per cell; empty when `trials == 0`.
pub fn campaign(book: &GrcCodebook, cells: &[Cell], trials: u64, master: u64) -> Result<Vec<CampaignRow>> {
    if trials == 0 {
        return Ok(Vec::new());
    }
    let shared = CampaignBook::new(book)?;
    cells
        .iter()
        .enumerate()
        .map(|(i, &cell)| {
            let mut successes = 0;
            for trial in 0..trials {
                successes += u64::from(shared.trial(master, i as u64, cell, trial)?);
            }
            Ok(CampaignRow { cell, trials, successes })
        })
        .collect()
}

/// Cells strictly inside the guaranteed radius `2·s_syn·ℓ + 2·s_seq + t < d`.
pub fn cells_within_radius(d: u64, ell: usize) -> Vec<Cell> {
    let mut cells = Vec::new();
    let d = d as usize;
    for s_syn in 0..=d / (2 * ell).max(1) {
        for s_seq in 0..=d / 2 {
            for t_under in 0..d {
                if 2 * s_syn * ell + 2 * s_seq + t_under < d {
                    cells.push(Cell { s_syn, s_seq, t_under });
                }
            }
        }
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::delta;
    use alloc::string::ToString;

    fn word(s: &str) -> Word {
        Word::parse(2, s).unwrap()
    }

    #[test]
    fn synthesis_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = word("0110100");
        assert_eq!(synthesize(&x, 0, &mut rng).unwrap().0, x);
        let (y, subs) = synthesize(&word("00000"), 1, &mut rng).unwrap();
        assert_eq!(y.symbols().iter().filter(|&&s| s == 1).count(), 1);
        assert_eq!(subs.len(), 1);
        assert!(synthesize(&x, 8, &mut rng).is_err());
    }

    #[test]
    fn synthesis_changes_distinct_positions() {
        for seed in 0..200 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = Word::new(4, (0..20).map(|i| (i % 4) as u8).collect()).unwrap();
            let (y, subs) = synthesize(&x, 5, &mut rng).unwrap();
            let changed = x.symbols().iter().zip(y.symbols()).filter(|(a, b)| a != b).count();
            assert_eq!(changed, 5);
            assert!(subs.iter().all(|s| s.from != s.to));
        }
    }

    #[test]
    fn sequencing_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = word("0110100111");
        let out = sequence(&x, 0, 0, 3, &mut rng).unwrap();
        assert_eq!(out.counts, full_profile(&x, 3).unwrap());
        let out = sequence(&word("00000"), 0, 1, 3, &mut rng).unwrap();
        assert_eq!(out.counts[0], 2);
        let out = sequence(&x, 1, 0, 3, &mut rng).unwrap();
        let p = full_profile(&x, 3).unwrap();
        assert_eq!(delta(&p, &out.counts).unwrap(), 1);
        assert_eq!(delta(&out.counts, &p).unwrap(), 1);
        assert!(sequence(&x, 5, 4, 3, &mut rng).is_err());
    }

    #[test]
    fn transmit_is_deterministic_and_conserves_counts() {
        let x = Word::parse(2, "01101001110010110100").unwrap();
        let config = ChannelConfig {
            s_syn: 1,
            s_seq: 1,
            t_under: 1,
            seed: 42,
        };
        let a = transmit(&x, &config, 3).unwrap();
        let b = transmit(&x, &config, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.counts.iter().sum::<u64>(), 17);
        let clean = transmit(&x, &ChannelConfig { s_syn: 0, s_seq: 0, t_under: 0, seed: 9 }, 3).unwrap();
        assert_eq!(clean.counts, full_profile(&x, 3).unwrap());
    }

    #[test]
    fn error_weights_stay_within_the_model() {
        let x = Word::parse(2, "0110100111001011010011").unwrap();
        let ell = 3;
        let p = full_profile(&x, ell).unwrap();
        for seed in 0..500 {
            let config = ChannelConfig {
                s_syn: (seed % 3) as usize,
                s_seq: (seed % 4) as usize,
                t_under: (seed % 5) as usize,
                seed,
            };
            let out = transmit(&x, &config, ell).unwrap();
            let grams = x.len() - ell + 1;
            assert_eq!(out.counts.iter().sum::<u64>() as usize, grams - config.t_under);
            let plus = delta(&out.counts, &p).unwrap() as usize;
            let minus = delta(&p, &out.counts).unwrap() as usize;
            assert!(plus <= config.s_syn * ell + config.s_seq);
            assert!(minus <= config.s_syn * ell + config.s_seq + config.t_under);
            assert_eq!(minus - plus, config.t_under);
        }
    }

    #[test]
    fn decode_exact_profile() {
        let set = GramSet::full(2, 3).unwrap();
        let words = ["00000110111100", "01010101010101", "00110011001100"];
        let codewords = words
            .iter()
            .map(|w| crate::gram::profile(&word(w), &set).unwrap().into_counts())
            .collect();
        let book = GrcCodebook::explicit(set, 14, 1, codewords).unwrap();
        let clean = ChannelConfig {
            s_syn: 0,
            s_seq: 0,
            t_under: 0,
            seed: 0,
        };
        let out = transmit(&word(words[1]), &clean, 3).unwrap();
        let d = decode(&out, &book).unwrap();
        assert_eq!(d.index, 1);
        assert_eq!(d.distance, 0);
        assert_eq!(crate::gram::profile(&d.word, &book.gramset).unwrap().counts(), &book.codewords[1][..]);
        assert_eq!(d.word.to_string().len(), 14);
    }

    #[test]
    fn campaign_basics() {
        let set = GramSet::full(2, 3).unwrap();
        let book = GrcCodebook::explicit(set, 14, 1, vec![vec![3, 1, 0, 2, 1, 1, 2, 2]]).unwrap();
        assert!(campaign(&book, &[Cell { s_syn: 0, s_seq: 0, t_under: 0 }], 0, 7).unwrap().is_empty());
        let a = campaign(&book, &[Cell { s_syn: 1, s_seq: 0, t_under: 0 }], 20, 7).unwrap();
        assert_eq!(a, campaign(&book, &[Cell { s_syn: 1, s_seq: 0, t_under: 0 }], 20, 7).unwrap());
        assert_eq!(a[0].successes, 20);
    }

    #[test]
    fn radius_cells() {
        let cells = cells_within_radius(7, 3);
        assert!(cells.iter().all(|c| 2 * c.s_syn * 3 + 2 * c.s_seq + c.t_under < 7));
        assert_eq!(cells.len(), 17);
        assert!(cells_within_radius(1, 3) == vec![Cell { s_syn: 0, s_seq: 0, t_under: 0 }]);
    }
}
