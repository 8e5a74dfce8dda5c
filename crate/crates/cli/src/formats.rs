//! JSON, CSV and DOT representations of the core types.

use anyhow::{anyhow, bail, Context, Result};
use gramcode_core::channel::{CampaignRow, ChannelOutput};
use gramcode_core::codes::{AeccSpec, GrcCodebook, Provenance, Source};
use gramcode_core::gram::{gram_to_string, GramOrigin, GramSet};
use gramcode_core::graph::DeBruijnGraph;
use gramcode_core::lattice::Quasipolynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

/// Always `"num/den"`, also for integers.
pub fn rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().with_context(|| format!("bad numerator in {text:?}"))?;
    let den: BigInt = den.parse().with_context(|| format!("bad denominator in {text:?}"))?;
    if den == BigInt::from(0) {
        bail!("zero denominator in {text:?}");
    }
    Ok(BigRational::new(num, den))
}

/// Comma-separated nonnegative integers, e.g. `"0,1,2"`.
pub fn parse_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().with_context(|| format!("{s:?} is not a nonnegative integer")))
        .collect()
}

/// Rows separated by `;`, entries by `,`.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<u64>>> {
    text.split(';').map(parse_list).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightJson {
    pub qstar: usize,
    pub w1: usize,
    pub w2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramSetJson {
    pub q: usize,
    pub ell: usize,
    pub grams: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraint: Option<WeightJson>,
}

impl GramSetJson {
    pub fn from_set(set: &GramSet) -> Self {
        GramSetJson {
            q: set.q(),
            ell: set.ell(),
            grams: (0..set.len()).map(|i| set.gram_string(i)).collect(),
            constraint: match set.origin() {
                GramOrigin::Weight { qstar, w1, w2 } => Some(WeightJson { qstar, w1, w2 }),
                GramOrigin::Explicit => None,
            },
        }
    }

    pub fn to_set(&self) -> Result<GramSet> {
        let explicit = GramSet::parse_explicit(self.q, &self.grams)?;
        if explicit.ell() != self.ell {
            bail!("grams have length {} but ell is {}", explicit.ell(), self.ell);
        }
        match &self.constraint {
            None => Ok(explicit),
            Some(w) => {
                let built = GramSet::weight_constrained(self.q, self.ell, w.qstar, w.w1, w.w2)?;
                if built.codes() != explicit.codes() {
                    bail!("gram list disagrees with its weight constraint");
                }
                Ok(built)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    pub n: usize,
    pub q: usize,
    pub ell: usize,
    pub grams: Vec<String>,
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasipolynomialJson {
    pub degree: usize,
    pub period: u64,
    pub residue: u64,
    /// Coefficients of `t^0, t^1, ..` valid for `t ≡ residue (mod period)`.
    pub coefficients: Vec<String>,
    /// The same polynomial in `k` where `t = period·k`.
    pub coefficients_in_k: Vec<String>,
    pub leading: String,
}

impl QuasipolynomialJson {
    pub fn from_fit(q: &Quasipolynomial) -> Self {
        QuasipolynomialJson {
            degree: q.degree,
            period: q.period,
            residue: q.residue,
            coefficients: q.coefficients.iter().map(rational).collect(),
            coefficients_in_k: q.coefficients_in_k().iter().map(rational).collect(),
            leading: rational(q.leading()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AeccJson {
    pub h: Vec<Vec<u64>>,
    pub p: u64,
    pub beta: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<u64>>,
}

impl AeccJson {
    pub fn from_spec(spec: &AeccSpec) -> Self {
        AeccJson {
            h: spec.h.clone(),
            p: spec.p,
            beta: spec.beta.clone(),
            alpha: spec.alpha.clone(),
        }
    }

    pub fn to_spec(&self) -> Result<AeccSpec> {
        match &self.alpha {
            Some(alpha) => {
                let spec = AeccSpec::varshamov(alpha.clone(), self.h.len(), self.p, self.beta.clone())?;
                if spec.h != self.h {
                    bail!("H disagrees with the Varshamov matrix of alpha");
                }
                Ok(spec)
            }
            None => Ok(AeccSpec::explicit(self.h.clone(), self.p, self.beta.clone())?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodebookJson {
    pub gramset: GramSetJson,
    pub n: usize,
    pub distance: u64,
    pub provenance: String,
    pub codewords: Vec<Vec<u64>>,
}

impl CodebookJson {
    pub fn from_book(book: &GrcCodebook) -> Self {
        CodebookJson {
            gramset: GramSetJson::from_set(&book.gramset),
            n: book.n,
            distance: book.distance,
            provenance: provenance_name(book.provenance).into(),
            codewords: book.codewords.clone(),
        }
    }

    pub fn to_book(&self) -> Result<GrcCodebook> {
        let mut book = GrcCodebook::explicit(self.gramset.to_set()?, self.n, self.distance, self.codewords.clone())?;
        book.provenance = match self.provenance.as_str() {
            "intersection-exhaustive" => Provenance::Intersection(Source::Exhaustive),
            "intersection-interior" => Provenance::Intersection(Source::Interior),
            "systematic" => Provenance::Systematic,
            "explicit" => Provenance::Explicit,
            other => bail!("unknown provenance {other:?}"),
        };
        Ok(book)
    }
}

pub fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::Intersection(Source::Exhaustive) => "intersection-exhaustive",
        Provenance::Intersection(Source::Interior) => "intersection-interior",
        Provenance::Systematic => "systematic",
        Provenance::Explicit => "explicit",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionJson {
    pub position: usize,
    pub from: u8,
    pub to: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentErrorJson {
    pub from: String,
    pub to: String,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelJson {
    pub q: usize,
    pub ell: usize,
    /// Counts over the full `[q]^ℓ` in lexicographic order.
    pub counts: Vec<u64>,
    pub synthesis: Vec<SubstitutionJson>,
    pub undersampled: Vec<String>,
    pub sequencing: Vec<FragmentErrorJson>,
}

impl ChannelJson {
    pub fn from_output(out: &ChannelOutput) -> Self {
        let g = |c: u64| gram_to_string(c, out.q, out.ell);
        ChannelJson {
            q: out.q,
            ell: out.ell,
            counts: out.counts.clone(),
            synthesis: out
                .trace
                .synthesis
                .iter()
                .map(|s| SubstitutionJson {
                    position: s.position,
                    from: s.from,
                    to: s.to,
                })
                .collect(),
            undersampled: out.trace.undersampled.iter().map(|&c| g(c)).collect(),
            sequencing: out
                .trace
                .sequencing
                .iter()
                .map(|e| FragmentErrorJson {
                    from: g(e.from),
                    to: g(e.to),
                    offset: e.offset,
                })
                .collect(),
        }
    }
}

pub const CAMPAIGN_HEADER: &str = "s_syn,s_seq,t,trials,successes";

pub fn campaign_csv(rows: &[CampaignRow]) -> String {
    let mut out = String::from(CAMPAIGN_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{},{},{},{},{}", r.cell.s_syn, r.cell.s_seq, r.cell.t_under, r.trials, r.successes);
    }
    out
}

/// Parses `s_syn,s_seq,t` triples separated by `;`.
pub fn parse_grid(text: &str) -> Result<Vec<gramcode_core::channel::Cell>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|cell| {
            let v = parse_list(cell)?;
            match v[..] {
                [s_syn, s_seq, t] => Ok(gramcode_core::channel::Cell {
                    s_syn: s_syn as usize,
                    s_seq: s_seq as usize,
                    t_under: t as usize,
                }),
                _ => Err(anyhow!("grid cell {cell:?} must be s_syn,s_seq,t")),
            }
        })
        .collect()
}

pub fn graph_dot(graph: &DeBruijnGraph) -> String {
    let mut out = String::from("digraph D {\n");
    for v in 0..graph.node_count() {
        let _ = writeln!(out, "  n{v} [label=\"{}\"];", graph.node_string(v));
    }
    for (a, arc) in graph.arcs().iter().enumerate() {
        let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", arc.source, arc.target, graph.arc_string(a));
    }
    out.push_str("}\n");
    out
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}
