use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gramcode::formats::{
    self, campaign_csv, parse_list, parse_matrix, parse_rational, rational, AeccJson, ChannelJson, CodebookJson,
    GramSetJson, ProfileJson, QuasipolynomialJson,
};
use gramcode::parallel::{count_parallel, default_threads};
use gramcode::reproduce::{self, Context};
use gramcode::{exit_code, Mismatch};
use gramcode_core::channel::{cells_within_radius, transmit, CampaignBook, CampaignRow, ChannelConfig};
use gramcode_core::codes::{
    aecc_codewords, aecc_min_distance, decode_asymmetric, find_alpha, grc_by_intersection, grc_by_systematic,
    grc_min_distance, rank_mod_pipeline, recover_permutation, systematic_encode, systematic_layout, AeccSpec, BoundRule,
    Source,
};
use gramcode_core::euler::{euler_decode, euler_decode_in};
use gramcode_core::gram::{profile, GramSet, ProfileVector, Word};
use gramcode_core::graph::{lcm_of, DeBruijnGraph};
use gramcode_core::lattice::{build_system, fit_quasipolynomial, reciprocity_check, Strictness, Variant};
use gramcode_core::Limits;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "gramcode", version, about = "Profile-vector codes for DNA storage")]
struct Cli {
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Lattice enumeration node budget.
    #[arg(long, global = true, env = "GRAMCODE_BUDGET")]
    budget: Option<u64>,
    /// Word enumeration budget (q^n).
    #[arg(long, global = true, env = "GRAMCODE_WORD_BUDGET")]
    word_budget: Option<u128>,
    /// Simple-cycle enumeration budget.
    #[arg(long, global = true, env = "GRAMCODE_CYCLE_BUDGET")]
    cycle_budget: Option<u64>,
    /// Worker threads for counting and campaigns.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

impl BudgetArgs {
    fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(b) = self.budget {
            l.lattice_nodes = b;
        }
        if let Some(b) = self.word_budget {
            l.words = b;
        }
        if let Some(b) = self.cycle_budget {
            l.cycles = b;
        }
        l
    }

    fn threads(&self) -> usize {
        self.threads.unwrap_or_else(default_threads).max(1)
    }
}

#[derive(Args, Debug, Clone, Default)]
struct GramArgs {
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    q: usize,
    /// Gram length.
    #[arg(long)]
    ell: Option<usize>,
    /// Heavy symbols are the top q* of the alphabet.
    #[arg(long, requires_all = ["w1", "w2"])]
    qstar: Option<usize>,
    #[arg(long)]
    w1: Option<usize>,
    #[arg(long)]
    w2: Option<usize>,
    /// Explicit grams, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["qstar", "gramset"])]
    grams: Option<Vec<String>>,
    /// Gram set JSON file.
    #[arg(long, conflicts_with_all = ["qstar", "ell"])]
    gramset: Option<PathBuf>,
    /// DNA alphabet A, T, G, C as 0, 1, 2, 3 (q = 4).
    #[arg(long)]
    dna: bool,
}

impl GramArgs {
    fn q(&self) -> usize {
        if self.dna {
            4
        } else {
            self.q
        }
    }

    fn resolve(&self) -> Result<GramSet> {
        let q = self.q();
        if let Some(path) = &self.gramset {
            return formats::read_json::<GramSetJson>(path)?.to_set();
        }
        if let Some(grams) = &self.grams {
            let grams: Vec<String> = if self.dna {
                grams.iter().map(|g| dna_to_digits(g)).collect::<Result<_>>()?
            } else {
                grams.clone()
            };
            let set = GramSet::parse_explicit(q, &grams)?;
            if self.ell.is_some_and(|l| l != set.ell()) {
                bail!("--ell disagrees with the gram lengths");
            }
            return Ok(set);
        }
        let ell = self.ell.ok_or_else(|| anyhow!("give --ell, --grams or --gramset"))?;
        match (self.qstar, self.w1, self.w2) {
            (Some(qs), Some(w1), Some(w2)) => Ok(GramSet::weight_constrained(q, ell, qs, w1, w2)?),
            (None, None, None) => Ok(GramSet::full(q, ell)?),
            _ => bail!("--qstar, --w1 and --w2 go together"),
        }
    }

    fn word(&self, text: &str) -> Result<Word> {
        Ok(if self.dna { Word::from_dna(text)? } else { Word::parse(self.q(), text)? })
    }
}

fn dna_to_digits(text: &str) -> Result<String> {
    Ok(Word::from_dna(text)?.to_string())
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    /// H with α = (1,2,3,5,8,10,11,12), d = 2, p = 13.
    Binary3P13,
    /// Smallest α with vanishing power sum, d = 1, p = 11.
    Binary3P11,
}

#[derive(Args, Debug, Clone, Default)]
struct AeccArgs {
    /// AECC JSON file.
    #[arg(long, conflicts_with_all = ["h", "preset"])]
    aecc: Option<PathBuf>,
    /// Check matrix rows separated by ';'.
    #[arg(long, requires = "p")]
    h: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    /// Syndrome; zero by default.
    #[arg(long)]
    beta: Option<String>,
    #[arg(long, value_enum, conflicts_with = "h")]
    preset: Option<Preset>,
}

impl AeccArgs {
    fn resolve(&self, limits: &Limits) -> Result<Option<AeccSpec>> {
        let spec = if let Some(path) = &self.aecc {
            formats::read_json::<AeccJson>(path)?.to_spec()?
        } else if let Some(h) = &self.h {
            let h = parse_matrix(h)?;
            let rows = h.len();
            AeccSpec::explicit(h, self.p.expect("clap requires p"), vec![0; rows])?
        } else if let Some(preset) = self.preset {
            match preset {
                Preset::Binary3P13 => AeccSpec::varshamov(vec![1, 2, 3, 5, 8, 10, 11, 12], 2, 13, vec![0, 0])?,
                Preset::Binary3P11 => AeccSpec::varshamov(find_alpha(8, 1, 11, true, limits)?, 1, 11, vec![0])?,
            }
        } else {
            return Ok(None);
        };
        match &self.beta {
            Some(b) => Ok(Some(spec.with_beta(parse_list(b)?)?)),
            None => Ok(Some(spec)),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rule {
    Exact,
    Sufficient,
}

impl From<Rule> for BoundRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::Exact => BoundRule::Exact,
            Rule::Sufficient => BoundRule::Sufficient,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SourceArg {
    Exhaustive,
    Interior,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Profile vector of a word.
    Profile {
        #[arg(long)]
        word: String,
        #[command(flatten)]
        grams: GramArgs,
    },
    /// Analysis of the restricted de Bruijn graph.
    Graph {
        #[command(flatten)]
        grams: GramArgs,
        /// Also write the graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Exact number of lattice points at dilation t.
    Count {
        #[command(flatten)]
        grams: GramArgs,
        #[arg(long)]
        t: u64,
        /// Count u > 0 instead of u >= 0.
        #[arg(long)]
        interior: bool,
        #[command(flatten)]
        aecc: AeccArgs,
    },
    /// Fit the residue-0 Ehrhart polynomial from exact counts.
    Ehrhart {
        #[command(flatten)]
        grams: GramArgs,
        #[arg(long)]
        interior: bool,
        /// Sampling period; the cycle-length lcm (times p) by default.
        #[arg(long)]
        period: Option<u64>,
        /// Number of samples k = 1..K; degree + 2 by default.
        #[arg(long = "samples", short = 'K')]
        samples: Option<usize>,
        /// Expected degree, checked against |S| - |V|.
        #[arg(long)]
        degree: Option<usize>,
        /// Expected leading coefficient "num/den".
        #[arg(long)]
        expect: Option<String>,
        #[command(flatten)]
        aecc: AeccArgs,
    },
    /// Code constructions.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Channel simulation.
    #[command(subcommand)]
    Channel(ChannelCommand),
    /// Run the reference checks and print one line per check group.
    ReproducePaper {
        /// Only these criteria, comma separated.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<usize>>,
        /// Trials per channel cell.
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
}

#[derive(Subcommand, Debug)]
enum CodeCommand {
    /// Varshamov AECC H[k][i] = α_i^(k+1) mod p.
    Varshamov {
        /// Code length N.
        #[arg(long)]
        len: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: u64,
        /// Explicit α; otherwise searched.
        #[arg(long)]
        alpha: Option<String>,
        /// Require the all-ones vector in C(H, 0).
        #[arg(long)]
        all_ones: bool,
        #[arg(long)]
        beta: Option<String>,
        /// Enumerate codewords over [m]^N.
        #[arg(long)]
        m: Option<u64>,
        /// With --m, pick the β with the most codewords.
        #[arg(long, requires = "m")]
        best_beta: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Profiles of length-n words that satisfy the AECC.
    Intersect {
        #[command(flatten)]
        grams: GramArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        aecc: AeccArgs,
        #[arg(long, value_enum, default_value = "interior")]
        source: SourceArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the pairwise distance scan.
        #[arg(long)]
        no_distance: bool,
    },
    /// Systematic encoding of one message, or of a whole AECC with --aecc.
    Systematic {
        #[command(flatten)]
        grams: GramArgs,
        #[arg(long)]
        n: usize,
        /// Message on the free coordinates.
        #[arg(long, conflicts_with = "aecc")]
        v: Option<String>,
        /// Alphabet size; max(v) + 1 by default.
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, value_enum, default_value = "exact")]
        rule: Rule,
        #[command(flatten)]
        aecc: AeccArgs,
        /// Word to compare the decoded word with.
        #[arg(long)]
        expect: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank-modulation encoding of a permutation.
    Encode {
        #[command(flatten)]
        grams: GramArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value = "exact")]
        rule: Rule,
    },
    /// EULER decoding of a profile, optionally after nearest-codeword search.
    Decode {
        #[command(flatten)]
        grams: GramArgs,
        #[arg(long)]
        counts: String,
        #[arg(long)]
        book: Option<PathBuf>,
    },
    /// Recompute a codebook's minimum distance and decodability.
    Verify {
        #[arg(long)]
        book: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum ChannelCommand {
    /// Send one word through the channel.
    Transmit {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long)]
        dna: bool,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0)]
        s_syn: usize,
        #[arg(long, default_value_t = 0)]
        s_seq: usize,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Decode against this codebook.
        #[arg(long)]
        book: Option<PathBuf>,
    },
    /// Success counts over a grid of error cells.
    Campaign {
        #[arg(long)]
        book: PathBuf,
        /// Cells "s_syn,s_seq,t;...".
        #[arg(long, conflicts_with = "within_radius")]
        grid: Option<String>,
        /// Every cell with 2 s_syn l + 2 s_seq + t < d.
        #[arg(long)]
        within_radius: bool,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

fn emit(value: &impl serde::Serialize) {
    print!("{}", formats::to_json(value));
}

fn write_or_print(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let limits = cli.budget.limits();
    let threads = cli.budget.threads();
    match cli.command {
        Command::Profile { word, grams } => {
            let set = grams.resolve()?;
            let x = grams.word(&word)?;
            let p = profile(&x, &set)?;
            emit(&ProfileJson {
                word: Some(word),
                n: x.len(),
                q: set.q(),
                ell: set.ell(),
                grams: (0..set.len()).map(|i| set.gram_string(i)).collect(),
                counts: p.into_counts(),
            });
        }
        Command::Graph { grams, dot } => {
            let set = grams.resolve()?;
            let g = DeBruijnGraph::build(&set);
            let cond = g.condensation();
            let strongly = g.is_strongly_connected();
            let hamiltonian = g.find_hamiltonian_cycle(&limits)?;
            let lambda = if strongly { Some(g.lambda(&limits)?) } else { None };
            emit(&json!({
                "nodes": g.node_count(),
                "arcs": g.arc_count(),
                "eulerian": g.is_eulerian(),
                "strongly_connected": strongly,
                "components": cond.components.len(),
                "component_nodes": cond.components.iter()
                    .map(|c| c.iter().map(|&v| g.node_string(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "hamiltonian": hamiltonian.is_some(),
                "hamiltonian_cycle": hamiltonian.map(|c| c.nodes.iter().map(|&v| g.node_string(v)).collect::<Vec<_>>()),
                "lambda": lambda,
                "D": strongly.then(|| g.arc_count() - g.node_count()),
                "Delta_bar": cond.delta_bar,
                "Delta": cond.delta,
                "loops": g.loops().map(|a| g.arc_string(a)).collect::<Vec<_>>(),
            }));
            if let Some(path) = dot {
                std::fs::write(&path, formats::graph_dot(&g)).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Count { grams, t, interior, aecc } => {
            let set = grams.resolve()?;
            let variant = match aecc.resolve(&limits)? {
                Some(spec) => Variant::Grc(spec.block()),
                None => Variant::Plain,
            };
            let strictness = if interior { Strictness::Interior } else { Strictness::Boundary };
            let count = count_parallel(&build_system(&set, &variant, t, strictness)?, &limits, threads)?;
            emit(&json!({ "t": t, "n": t + set.ell() as u64 - 1, "interior": interior, "count": count }));
        }
        Command::Ehrhart {
            grams,
            interior,
            period,
            samples,
            degree,
            expect,
            aecc,
        } => {
            let set = grams.resolve()?;
            let g = DeBruijnGraph::build(&set);
            if !g.is_strongly_connected() {
                bail!("the Ehrhart fit needs a strongly connected graph");
            }
            let d = g.arc_count() - g.node_count();
            if let Some(expected) = degree {
                if expected != d {
                    return Err(Mismatch(format!("degree |S| - |V| is {d}, expected {expected}")).into());
                }
            }
            let spec = aecc.resolve(&limits)?;
            let lambda = g.lambda(&limits)?;
            let natural = match &spec {
                Some(s) => lcm_of([lambda, s.p])?,
                None => lambda,
            };
            let period = period.unwrap_or(natural);
            let samples = samples.unwrap_or(d + 2);
            let variant = match &spec {
                Some(s) => Variant::Grc(s.block()),
                None => Variant::Plain,
            };
            let count = |strictness| {
                let (set, variant) = (&set, &variant);
                move |t| count_parallel(&build_system(set, variant, t, strictness)?, &limits, threads)
            };
            let strictness = if interior { Strictness::Interior } else { Strictness::Boundary };
            let fit = fit_quasipolynomial(d, period, samples, count(strictness))?;
            let reciprocity = if spec.is_none() {
                let other = if interior { Strictness::Boundary } else { Strictness::Interior };
                let other_fit = fit_quasipolynomial(d, period, samples, count(other))?;
                let (f, e) = if interior { (&other_fit, &fit) } else { (&fit, &other_fit) };
                Some(reciprocity_check(f, e, samples).is_empty())
            } else {
                None
            };
            let expected = expect.as_deref().map(parse_rational).transpose()?;
            let matches = expected.as_ref().map(|e| e == fit.leading());
            emit(&json!({
                "lambda": natural,
                "quasipolynomial": QuasipolynomialJson::from_fit(&fit),
                "reciprocity": reciprocity,
                "expected_leading": expected.as_ref().map(rational),
                "matches_expected": matches,
            }));
            if matches == Some(false) {
                return Err(Mismatch(format!(
                    "leading coefficient {} differs from {}",
                    rational(fit.leading()),
                    expect.unwrap_or_default()
                ))
                .into());
            }
        }
        Command::Code(cmd) => return run_code(cmd, &limits),
        Command::Channel(cmd) => return run_channel(cmd, threads),
        Command::ReproducePaper { only, trials } => {
            let ctx = Context { limits, threads, trials };
            let ids = only.unwrap_or_else(|| (1..=13).collect());
            let mut all = true;
            for id in ids {
                let outcome = reproduce::run(id, &ctx)?;
                println!("{}", outcome.line());
                all &= outcome.passed();
            }
            return Ok(if all { 0 } else { gramcode::exit::CHECK_MISMATCH });
        }
    }
    Ok(0)
}

fn run_code(cmd: CodeCommand, limits: &Limits) -> Result<i32> {
    match cmd {
        CodeCommand::Varshamov {
            len,
            d,
            p,
            alpha,
            all_ones,
            beta,
            m,
            best_beta,
            out,
        } => {
            let alpha = match alpha {
                Some(a) => parse_list(&a)?,
                None => find_alpha(len, d, p, all_ones, limits)?,
            };
            let beta = match beta {
                Some(b) => parse_list(&b)?,
                None => vec![0; d],
            };
            let mut spec = AeccSpec::varshamov(alpha, d, p, beta)?;
            let mut size = None;
            if let Some(m) = m {
                if best_beta {
                    let mut best = (0usize, spec.beta.clone());
                    let cosets = p.checked_pow(d as u32).ok_or_else(|| anyhow!("too many cosets"))?;
                    for code in 0..cosets {
                        let b: Vec<u64> = (0..d).map(|k| code / p.pow(k as u32) % p).collect();
                        let s = aecc_codewords(&spec.with_beta(b.clone())?, len, m, limits)?.len();
                        if s > best.0 {
                            best = (s, b);
                        }
                    }
                    spec = spec.with_beta(best.1)?;
                }
                let words = aecc_codewords(&spec, len, m, limits)?.len();
                size = Some(words);
            }
            let distance = match m {
                Some(m) => aecc_min_distance(&spec, len, m, limits)?,
                None => None,
            };
            if let Some(path) = &out {
                std::fs::write(path, formats::to_json(&AeccJson::from_spec(&spec)))?;
            }
            emit(&json!({
                "spec": AeccJson::from_spec(&spec),
                "m": m,
                "size": size,
                "min_distance": distance,
            }));
        }
        CodeCommand::Intersect {
            grams,
            n,
            aecc,
            source,
            out,
            no_distance,
        } => {
            let set = grams.resolve()?;
            let spec = aecc.resolve(limits)?.ok_or_else(|| anyhow!("give --aecc, --h or --preset"))?;
            let source = match source {
                SourceArg::Exhaustive => Source::Exhaustive,
                SourceArg::Interior => Source::Interior,
            };
            let book = grc_by_intersection(&spec, n, &set, source, limits)?;
            let distance = if no_distance { None } else { grc_min_distance(&book, limits)? };
            if let Some(path) = &out {
                std::fs::write(path, formats::to_json(&CodebookJson::from_book(&book)))?;
            }
            emit(&json!({
                "n": n,
                "size": book.len(),
                "claimed_distance": book.distance,
                "min_distance": distance,
                "provenance": formats::provenance_name(book.provenance),
            }));
        }
        CodeCommand::Systematic {
            grams,
            n,
            v,
            m,
            rule,
            aecc,
            expect,
            out,
        } => {
            let set = if grams.ell.is_none() && grams.grams.is_none() && grams.gramset.is_none() {
                GramSet::full(grams.q(), 3)?
            } else {
                grams.resolve()?
            };
            if let Some(spec) = aecc.resolve(limits)? {
                let m = m.ok_or_else(|| anyhow!("--m is required with an AECC"))?;
                let layout = systematic_layout(&set, n, m, rule.into(), limits)?;
                let code = aecc_codewords(&spec, layout.free.len(), m, limits)?;
                let claimed = aecc_min_distance(&spec, layout.free.len(), m, limits)?.unwrap_or(spec.d() as u64 + 1);
                let book = grc_by_systematic(&code, claimed, &layout)?;
                let json = formats::to_json(&CodebookJson::from_book(&book));
                match &out {
                    Some(path) => std::fs::write(path, json)?,
                    None => print!("{json}"),
                }
                if out.is_some() {
                    emit(&json!({ "n": n, "m": m, "size": book.len(), "claimed_distance": claimed }));
                }
                return Ok(0);
            }
            let v = parse_list(v.as_deref().ok_or_else(|| anyhow!("give --v or an AECC"))?)?;
            let m = m.unwrap_or_else(|| v.iter().max().map_or(1, |x| x + 1));
            let layout = systematic_layout(&set, n, m, rule.into(), limits)?;
            let u = systematic_encode(&v, &layout)?;
            let x = euler_decode(&u)?;
            emit(&json!({
                "n": n,
                "m": m,
                "free": layout.free.iter().map(|&a| set.gram_string(a)).collect::<Vec<_>>(),
                "counts": u.counts(),
                "word": x.to_string(),
                "profile_matches": profile(&x, &set)? == u,
                "matches_expected": expect.as_ref().map(|e| *e == x.to_string()),
            }));
        }
        CodeCommand::Encode { grams, n, perm, rule } => {
            let set = grams.resolve()?;
            let perm: Vec<usize> = parse_list(&perm)?.into_iter().map(|p| p as usize).collect();
            let layout = systematic_layout(&set, n, perm.len() as u64, rule.into(), limits)?;
            let x = rank_mod_pipeline(&perm, &layout)?;
            let p = profile(&x, &set)?;
            emit(&json!({
                "word": x.to_string(),
                "counts": p.counts(),
                "recovered": recover_permutation(p.counts(), &layout),
            }));
        }
        CodeCommand::Decode { grams, counts, book } => {
            let counts = parse_list(&counts)?;
            match book {
                Some(path) => {
                    let book = formats::read_json::<CodebookJson>(&path)?.to_book()?;
                    let index = decode_asymmetric(&counts, &book.codewords)
                        .ok_or_else(|| anyhow!("the codebook is empty"))?;
                    let word = euler_decode(&book.profile(index))?;
                    emit(&json!({ "index": index, "codeword": book.codewords[index], "word": word.to_string() }));
                }
                None => {
                    let set = grams.resolve()?;
                    let word = euler_decode(&ProfileVector::new(set, counts)?)?;
                    emit(&json!({ "word": word.to_string(), "n": word.len() }));
                }
            }
        }
        CodeCommand::Verify { book } => {
            let book = formats::read_json::<CodebookJson>(&book)?.to_book()?;
            let measured = grc_min_distance(&book, limits)?;
            let graph = DeBruijnGraph::build(&book.gramset);
            let mut decodes = true;
            for c in &book.codewords {
                decodes &= euler_decode_in(&graph, c)
                    .and_then(|w| profile(&w, &book.gramset))
                    .is_ok_and(|p| p.counts() == &c[..]);
            }
            let ok = measured.is_none_or(|d| d >= book.distance) && decodes;
            emit(&json!({
                "size": book.len(),
                "claimed_distance": book.distance,
                "min_distance": measured,
                "all_decode": decodes,
                "ok": ok,
            }));
            if !ok {
                return Err(Mismatch("codebook does not meet its claims".into()).into());
            }
        }
    }
    Ok(0)
}

fn run_channel(cmd: ChannelCommand, threads: usize) -> Result<i32> {
    match cmd {
        ChannelCommand::Transmit {
            word,
            q,
            dna,
            ell,
            s_syn,
            s_seq,
            t,
            seed,
            book,
        } => {
            let x = if dna { Word::from_dna(&word)? } else { Word::parse(q, &word)? };
            let out = transmit(&x, &ChannelConfig { s_syn, s_seq, t_under: t, seed }, ell)?;
            let decoded = match book {
                Some(path) => {
                    let book = formats::read_json::<CodebookJson>(&path)?.to_book()?;
                    let d = gramcode_core::channel::decode(&out, &book)?;
                    Some(json!({ "index": d.index, "word": d.word.to_string(), "distance": d.distance, "tie": d.tie }))
                }
                None => None,
            };
            emit(&json!({ "observed": ChannelJson::from_output(&out), "decoded": decoded }));
        }
        ChannelCommand::Campaign {
            book,
            grid,
            within_radius,
            trials,
            seed,
            out,
        } => {
            let book = formats::read_json::<CodebookJson>(&book)?.to_book()?;
            let cells = match (grid, within_radius) {
                (Some(g), _) => formats::parse_grid(&g)?,
                (None, true) => cells_within_radius(book.distance, book.gramset.ell()),
                (None, false) => bail!("give --grid or --within-radius"),
            };
            let rows = if trials == 0 {
                Vec::new()
            } else {
                let shared = CampaignBook::new(&book)?;
                let mut rows = Vec::with_capacity(cells.len());
                for (i, &cell) in cells.iter().enumerate() {
                    let successes = parallel_trials(&shared, seed, i as u64, cell, trials, threads)?;
                    rows.push(CampaignRow { cell, trials, successes });
                }
                rows
            };
            write_or_print(out.as_ref(), &campaign_csv(&rows))?;
        }
    }
    Ok(0)
}

fn parallel_trials(
    shared: &CampaignBook,
    master: u64,
    cell_index: u64,
    cell: gramcode_core::channel::Cell,
    trials: u64,
    threads: usize,
) -> Result<u64> {
    let per = trials.div_ceil(threads as u64);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads as u64)
            .map(|w| {
                scope.spawn(move || -> gramcode_core::Result<u64> {
                    let mut ok = 0;
                    for trial in (w * per)..((w + 1) * per).min(trials) {
                        ok += u64::from(shared.trial(master, cell_index, cell, trial)?);
                    }
                    Ok(ok)
                })
            })
            .collect();
        let mut total = 0;
        for h in handles {
            total += h.join().map_err(|_| anyhow!("campaign worker panicked"))??;
        }
        Ok(total)
    })
}
