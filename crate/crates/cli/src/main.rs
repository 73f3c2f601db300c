//! `cgt`: batch front end for the cgt library.
//!
//! Exit status: 0 on success, 1 when a computation hit its limits, 2 on
//! bad input. Results go to stdout, diagnostics to stderr.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use cgt::abelian::{abelian_invariants, smith_normal_form, IntMatrix};
use cgt::backtrack::{centralizer, element_conjugacy, set_stabilizer};
use cgt::enumerate::{enumerate, EnumerationError, EnumerationStats, Strategy, StrategyKind};
use cgt::low_index::{low_index_subgroups, quotient_abelian_probe};
use cgt::perm::{
    derived_series, is_nilpotent, is_perfect, is_primitive, is_soluble, lower_central_series,
    minimal_block_partition, normal_closure, random_schreier, verify_chain, PermGroup, Permutation,
};
use cgt::subgroup::{reidemeister_rewrite, tietze_simplify};
use cgt::words::{Presentation, SubgroupSpec, Word};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "cgt", version, about = "Computational group theory toolkit")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the cosets of a subgroup of a finitely presented group.
    Enumerate(EnumerateArgs),
    /// Order of a finitely presented group (cosets of the trivial subgroup).
    Order(OrderArgs),
    /// All subgroups of small index.
    Lowindex(LowIndexArgs),
    /// Reidemeister-Schreier presentation of a subgroup.
    Rewrite(RewriteArgs),
    /// Tietze-simplify a presentation.
    Simplify(SimplifyArgs),
    /// Abelian invariants of a presentation, or the Smith form of a matrix.
    Abelian(AbelianArgs),
    /// Base, basic orbit lengths and order of a permutation group.
    Bsgs(BsgsArgs),
    /// Membership test for a permutation.
    Member(MemberArgs),
    /// Minimal block system containing a pair, or a primitivity test.
    Blocks(BlocksArgs),
    /// Normal closure of a subgroup.
    Closure(ClosureArgs),
    /// Derived and lower central series.
    Series(GroupArgs),
    /// Centralizer of a permutation.
    Centralizer(CentralizerArgs),
    /// Setwise stabilizer of a point set.
    Setstab(SetstabArgs),
    /// Conjugating element between two permutations.
    Conjugate(ConjugateArgs),
}

#[derive(Args)]
struct PresentationArgs {
    /// Presentation `<gens | relators>`, inline or `@file`.
    #[arg(long)]
    presentation: String,
}

#[derive(Args)]
struct StrategyArgs {
    /// Enumeration strategy: hlt or felsch.
    #[arg(long, default_value = "felsch")]
    strategy: StrategyKind,
    /// Largest number of coset table rows held at once.
    #[arg(long, default_value_t = cgt::enumerate::DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    /// Felsch only: define entries that close relator cycles first, while
    /// live cosets stay within this factor of the lowest incomplete row.
    #[arg(long, value_name = "FILL_FACTOR")]
    preferred: Option<usize>,
}

impl StrategyArgs {
    fn strategy(&self) -> Strategy {
        let s = Strategy::new(self.strategy).with_max_cosets(self.max_cosets);
        match self.preferred {
            Some(ff) => s.with_preferred_definitions(ff),
            None => s,
        }
    }
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    presentation: PresentationArgs,
    /// Subgroup generators as comma-separated words, inline or `@file`.
    #[arg(long, default_value = "")]
    subgroup: String,
    #[command(flatten)]
    strategy: StrategyArgs,
    /// Also print the standardized coset table.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct OrderArgs {
    #[command(flatten)]
    presentation: PresentationArgs,
    #[command(flatten)]
    strategy: StrategyArgs,
}

#[derive(Args)]
struct LowIndexArgs {
    #[command(flatten)]
    presentation: PresentationArgs,
    /// Largest index searched.
    #[arg(long)]
    index: usize,
    /// One subgroup per conjugacy class.
    #[arg(long)]
    classes: bool,
    /// Report the abelian invariants of each subgroup.
    #[arg(long)]
    probe: bool,
    /// Also print each coset table.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct RewriteArgs {
    #[command(flatten)]
    presentation: PresentationArgs,
    #[arg(long, default_value = "")]
    subgroup: String,
    #[command(flatten)]
    strategy: StrategyArgs,
    /// Tietze-simplify the result with this budget.
    #[arg(long)]
    simplify: Option<usize>,
}

#[derive(Args)]
struct SimplifyArgs {
    #[command(flatten)]
    presentation: PresentationArgs,
    /// Most transformations applied.
    #[arg(long, default_value_t = 1000)]
    budget: usize,
}

#[derive(Args)]
struct AbelianArgs {
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    presentation: Option<String>,
    /// Integer matrix (`rows cols` then entries), inline or `@file`.
    #[arg(long)]
    matrix: Option<String>,
}

#[derive(Args)]
struct GroupArgs {
    /// Permutation group: a group file path (or `@file`), or inline
    /// generators such as `(1,2),(1,2,3,4)`.
    #[arg(long)]
    group: String,
    /// Degree, when inline generators do not reveal it.
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Args)]
struct BsgsArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Build the chain from this many random elements, then verify it.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct MemberArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Permutation in cycle notation.
    #[arg(long)]
    perm: String,
}

#[derive(Args)]
struct BlocksArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Two points `a,b` to put in one block; without it, test primitivity.
    #[arg(long)]
    pair: Option<String>,
}

#[derive(Args)]
struct ClosureArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Generators of the subgroup, in the same formats as `--group`.
    #[arg(long)]
    subgroup: String,
}

#[derive(Args)]
struct CentralizerArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long)]
    perm: String,
}

#[derive(Args)]
struct SetstabArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Points, comma or space separated.
    #[arg(long)]
    set: String,
}

#[derive(Args)]
struct ConjugateArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
}

enum Failure {
    /// Bad input: exit status 2.
    Input(String),
    /// Limits reached: exit status 1. The partial report is still printed.
    Incomplete(String),
}

fn input<E: std::fmt::Display>(context: &str) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{context}: {e}"))
}

/// A command result that renders as text or JSON.
trait Report: Serialize {
    fn text(&self) -> String;
}

fn emit(report: &impl Report, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string(report).expect("reports serialize")
        );
    } else {
        print!("{}", report.text());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Incomplete(msg)) => {
            eprintln!("cgt: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("cgt: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Enumerate(a) => cmd_enumerate(a, json),
        Command::Order(a) => cmd_order(a, json),
        Command::Lowindex(a) => cmd_lowindex(a, json),
        Command::Rewrite(a) => cmd_rewrite(a, json),
        Command::Simplify(a) => cmd_simplify(a, json),
        Command::Abelian(a) => cmd_abelian(a, json),
        Command::Bsgs(a) => cmd_bsgs(a, json),
        Command::Member(a) => cmd_member(a, json),
        Command::Blocks(a) => cmd_blocks(a, json),
        Command::Closure(a) => cmd_closure(a, json),
        Command::Series(a) => cmd_series(a, json),
        Command::Centralizer(a) => cmd_centralizer(a, json),
        Command::Setstab(a) => cmd_setstab(a, json),
        Command::Conjugate(a) => cmd_conjugate(a, json),
    }
}

// ---------------------------------------------------------------------------
// Input helpers

/// `@path` reads a file; anything else is used verbatim.
fn inline_or_file(value: &str) -> Result<String, Failure> {
    match value.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(input(path)),
        None => Ok(value.to_string()),
    }
}

fn load_presentation(value: &str) -> Result<Presentation, Failure> {
    Presentation::parse(inline_or_file(value)?.trim()).map_err(input("presentation"))
}

fn load_subgroup(value: &str, p: &Presentation) -> Result<SubgroupSpec, Failure> {
    SubgroupSpec::parse(inline_or_file(value)?.trim(), p).map_err(input("subgroup"))
}

/// Group text from `@file`, an existing file path, or inline generators.
fn load_group_text(value: &str, degree: Option<usize>) -> Result<PermGroup, Failure> {
    let mut text = if value.starts_with('@') {
        inline_or_file(value)?
    } else if !value.trim_start().starts_with('(') && Path::new(value).is_file() {
        std::fs::read_to_string(value).map_err(input(value))?
    } else {
        value.to_string()
    };
    if let Some(d) = degree {
        text = format!("degree {d}\n{text}");
    }
    PermGroup::parse(&text).map_err(input("group"))
}

fn load_group(args: &GroupArgs) -> Result<PermGroup, Failure> {
    load_group_text(&args.group, args.degree)
}

fn load_perm(value: &str, degree: usize) -> Result<Permutation, Failure> {
    Permutation::parse(inline_or_file(value)?.trim(), Some(degree)).map_err(input("permutation"))
}

/// 1-based points separated by commas or whitespace, returned 0-based.
fn parse_points(value: &str, degree: usize) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    for tok in value
        .trim_matches(|c| c == '{' || c == '}')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let p: usize = tok
            .parse()
            .map_err(|_| Failure::Input(format!("bad point `{tok}`")))?;
        if p == 0 || p > degree {
            return Err(Failure::Input(format!(
                "point {p} out of range for degree {degree}"
            )));
        }
        out.push(p - 1);
    }
    Ok(out)
}

fn words(ws: &[Word], names: &[String]) -> Vec<String> {
    ws.iter().map(|w| w.display(names).to_string()).collect()
}

fn perms(ps: &[Permutation]) -> Vec<String> {
    ps.iter().map(Permutation::to_string).collect()
}

fn big(n: &BigUint) -> String {
    n.to_string()
}

fn points(ps: &[usize]) -> Vec<usize> {
    ps.iter().map(|p| p + 1).collect()
}

fn list<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

// ---------------------------------------------------------------------------
// Finitely presented groups

#[derive(Serialize)]
struct EnumerationReport {
    index: Option<usize>,
    max_active: usize,
    total_defined: u64,
    strategy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<String>,
}

impl EnumerationReport {
    fn new(index: Option<usize>, stats: EnumerationStats, table: Option<String>) -> Self {
        EnumerationReport {
            index,
            max_active: stats.max_active,
            total_defined: stats.total_defined,
            strategy: stats.strategy.to_string(),
            table,
        }
    }
}

impl Report for EnumerationReport {
    fn text(&self) -> String {
        let mut s = String::new();
        match self.index {
            Some(i) => writeln!(s, "index {i}").unwrap(),
            None => writeln!(s, "index incomplete").unwrap(),
        }
        writeln!(s, "max_active {}", self.max_active).unwrap();
        writeln!(s, "total_defined {}", self.total_defined).unwrap();
        writeln!(s, "strategy {}", self.strategy).unwrap();
        if let Some(t) = &self.table {
            s.push_str(t);
        }
        s
    }
}

fn limit_failure(e: EnumerationError, json: bool) -> Failure {
    match e {
        EnumerationError::LimitExceeded { stats } => {
            emit(&EnumerationReport::new(None, stats, None), json);
            Failure::Incomplete("coset limit exceeded".into())
        }
        EnumerationError::InvalidSubgroupWord(e) => Failure::Input(format!("subgroup: {e}")),
    }
}

fn cmd_enumerate(a: &EnumerateArgs, json: bool) -> Result<(), Failure> {
    let p = load_presentation(&a.presentation.presentation)?;
    let h = load_subgroup(&a.subgroup, &p)?;
    let r = enumerate(&p, &h, &a.strategy.strategy()).map_err(|e| limit_failure(e, json))?;
    let table = a.table.then(|| r.table().dump());
    emit(
        &EnumerationReport::new(Some(r.index()), r.stats(), table),
        json,
    );
    Ok(())
}

#[derive(Serialize)]
struct OrderReport {
    order: String,
}

impl Report for OrderReport {
    fn text(&self) -> String {
        format!("{}\n", self.order)
    }
}

fn cmd_order(a: &OrderArgs, json: bool) -> Result<(), Failure> {
    let p = load_presentation(&a.presentation.presentation)?;
    let r = enumerate(&p, &SubgroupSpec::trivial(), &a.strategy.strategy())
        .map_err(|e| limit_failure(e, json))?;
    emit(
        &OrderReport {
            order: r.index().to_string(),
        },
        json,
    );
    Ok(())
}

#[derive(Serialize)]
struct AbelianEntry {
    free_rank: usize,
    torsion: Vec<String>,
}

#[derive(Serialize)]
struct SubgroupEntry {
    index: usize,
    generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abelian: Option<AbelianEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<String>,
}

#[derive(Serialize)]
struct LowIndexReport {
    subgroups: Vec<SubgroupEntry>,
}

impl Report for LowIndexReport {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "subgroups {}", self.subgroups.len()).unwrap();
        for e in &self.subgroups {
            writeln!(s, "index {}", e.index).unwrap();
            writeln!(s, "generators {}", e.generators.join(", ")).unwrap();
            if let Some(ab) = &e.abelian {
                writeln!(s, "free_rank {}", ab.free_rank).unwrap();
                writeln!(s, "torsion {}", ab.torsion.join(" ")).unwrap();
            }
            if let Some(t) = &e.table {
                s.push_str(t);
            }
        }
        s
    }
}

fn cmd_lowindex(a: &LowIndexArgs, json: bool) -> Result<(), Failure> {
    let p = load_presentation(&a.presentation.presentation)?;
    if a.index == 0 {
        return Err(Failure::Input("--index must be at least 1".into()));
    }
    let result = low_index_subgroups(&p, a.index, a.classes);
    let probe = a.probe.then(|| quotient_abelian_probe(&result, &p));
    let subgroups = result
        .subgroups
        .iter()
        .enumerate()
        .map(|(i, sub)| SubgroupEntry {
            index: sub.index(),
            generators: words(&sub.generators.generators, p.generators()),
            abelian: probe.as_ref().map(|pr| AbelianEntry {
                free_rank: pr[i].free_rank,
                torsion: pr[i].torsion.iter().map(big).collect(),
            }),
            table: a.table.then(|| sub.table.dump()),
        })
        .collect();
    emit(&LowIndexReport { subgroups }, json);
    Ok(())
}

#[derive(Serialize)]
struct PresentationReport {
    presentation: String,
    generators: usize,
    relators: usize,
    total_length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    definitions: Option<Vec<String>>,
}

impl PresentationReport {
    fn new(p: &Presentation, definitions: Option<Vec<String>>) -> Self {
        PresentationReport {
            presentation: p.to_string(),
            generators: p.rank(),
            relators: p.relators().len(),
            total_length: p.total_length(),
            definitions,
        }
    }
}

impl Report for PresentationReport {
    fn text(&self) -> String {
        let mut s = format!("{}\n", self.presentation);
        if let Some(defs) = &self.definitions {
            for d in defs {
                writeln!(s, "{d}").unwrap();
            }
        }
        s
    }
}

fn cmd_rewrite(a: &RewriteArgs, json: bool) -> Result<(), Failure> {
    let p = load_presentation(&a.presentation.presentation)?;
    let h = load_subgroup(&a.subgroup, &p)?;
    let r = enumerate(&p, &h, &a.strategy.strategy()).map_err(|e| limit_failure(e, json))?;
    let rw = reidemeister_rewrite(&p, r.table()).map_err(input("rewrite"))?;
    let mut definitions: Vec<String> = rw
        .presentation
        .generators()
        .iter()
        .zip(&rw.definitions)
        .map(|(name, w)| format!("{name} = {}", w.display(p.generators())))
        .collect();
    let q = match a.simplify {
        Some(budget) => {
            let q = tietze_simplify(&rw.presentation, budget);
            definitions.retain(|d| {
                let name = d.split(' ').next().unwrap_or("");
                q.generators().iter().any(|g| g == name)
            });
            q
        }
        None => rw.presentation,
    };
    emit(&PresentationReport::new(&q, Some(definitions)), json);
    Ok(())
}

fn cmd_simplify(a: &SimplifyArgs, json: bool) -> Result<(), Failure> {
    let p = load_presentation(&a.presentation.presentation)?;
    emit(
        &PresentationReport::new(&tietze_simplify(&p, a.budget), None),
        json,
    );
    Ok(())
}

#[derive(Serialize)]
struct AbelianReport {
    free_rank: usize,
    torsion: Vec<String>,
    description: String,
}

impl Report for AbelianReport {
    fn text(&self) -> String {
        format!(
            "{}\nfree_rank {}\ntorsion {}\n",
            self.description,
            self.free_rank,
            self.torsion.join(" ")
        )
    }
}

#[derive(Serialize)]
struct SmithReport {
    diagonal: Vec<String>,
    rank: usize,
}

impl Report for SmithReport {
    fn text(&self) -> String {
        format!("diagonal {}\nrank {}\n", self.diagonal.join(" "), self.rank)
    }
}

fn cmd_abelian(a: &AbelianArgs, json: bool) -> Result<(), Failure> {
    if let Some(m) = &a.matrix {
        let m: IntMatrix = inline_or_file(m)?.parse().map_err(input("matrix"))?;
        let snf = smith_normal_form(&m);
        emit(
            &SmithReport {
                rank: snf.rank(),
                diagonal: snf.diagonal.iter().map(big).collect(),
            },
            json,
        );
        return Ok(());
    }
    let p = load_presentation(a.presentation.as_deref().expect("clap requires one input"))?;
    let inv = abelian_invariants(&p);
    emit(
        &AbelianReport {
            free_rank: inv.free_rank,
            torsion: inv.torsion.iter().map(big).collect(),
            description: inv.to_string(),
        },
        json,
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// Permutation groups

#[derive(Serialize)]
struct BsgsReport {
    degree: usize,
    base: Vec<usize>,
    orbit_lengths: Vec<usize>,
    strong_generators: usize,
    order: String,
}

impl Report for BsgsReport {
    fn text(&self) -> String {
        format!(
            "degree {}\nbase {}\norbit_lengths {}\nstrong_generators {}\norder {}\n",
            self.degree,
            list(&self.base),
            list(&self.orbit_lengths),
            self.strong_generators,
            self.order
        )
    }
}

fn cmd_bsgs(a: &BsgsArgs, json: bool) -> Result<(), Failure> {
    let g = load_group(&a.group)?;
    let chain = match a.random {
        Some(trials) => verify_chain(&g, &random_schreier(&g, trials.max(1), a.seed)),
        None => g.chain().clone(),
    };
    emit(
        &BsgsReport {
            degree: g.degree(),
            base: points(&chain.base()),
            orbit_lengths: chain.orbit_lengths(),
            strong_generators: chain.strong_generators().len(),
            order: big(&chain.order()),
        },
        json,
    );
    Ok(())
}

#[derive(Serialize)]
struct MemberReport {
    member: bool,
    level: usize,
}

impl Report for MemberReport {
    fn text(&self) -> String {
        format!("{}\n", if self.member { "yes" } else { "no" })
    }
}

fn cmd_member(a: &MemberArgs, json: bool) -> Result<(), Failure> {
    let g = load_group(&a.group)?;
    let x = load_perm(&a.perm, g.degree())?;
    let (residue, level) = g.chain().sift(&x).map_err(input("member"))?;
    emit(
        &MemberReport {
            member: residue.is_identity(),
            level: level + 1,
        },
        json,
    );
    Ok(())
}

#[derive(Serialize)]
struct BlocksReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    primitive: Option<bool>,
}

impl Report for BlocksReport {
    fn text(&self) -> String {
        let mut s = String::new();
        if let Some(blocks) = &self.blocks {
            for b in blocks {
                writeln!(s, "{}", list(b)).unwrap();
            }
        }
        if let Some(p) = self.primitive {
            writeln!(s, "{}", if p { "primitive" } else { "imprimitive" }).unwrap();
        }
        s
    }
}

fn cmd_blocks(a: &BlocksArgs, json: bool) -> Result<(), Failure> {
    let g = load_group(&a.group)?;
    let report = match &a.pair {
        Some(pair) => {
            let pts = parse_points(pair, g.degree())?;
            let [x, y] = pts[..] else {
                return Err(Failure::Input("--pair needs exactly two points".into()));
            };
            let blocks = minimal_block_partition(&g, x, y).map_err(input("blocks"))?;
            BlocksReport {
                blocks: Some(blocks.iter().map(|b| points(b)).collect()),
                primitive: None,
            }
        }
        None => BlocksReport {
            blocks: None,
            primitive: Some(is_primitive(&g).map_err(input("blocks"))?),
        },
    };
    emit(&report, json);
    Ok(())
}

#[derive(Serialize)]
struct GroupReport {
    order: String,
    generators: Vec<String>,
}

impl GroupReport {
    fn new(g: &PermGroup) -> Self {
        GroupReport {
            order: big(&g.order()),
            generators: perms(g.generators()),
        }
    }
}

impl Report for GroupReport {
    fn text(&self) -> String {
        let mut s = format!("order {}\n", self.order);
        for g in &self.generators {
            writeln!(s, "{g}").unwrap();
        }
        s
    }
}

fn cmd_closure(a: &ClosureArgs, json: bool) -> Result<(), Failure> {
    let g = load_group(&a.group)?;
    let h = load_group_text(&a.subgroup, Some(g.degree()))?;
    let n = normal_closure(&g, &h).map_err(input("closure"))?;
    emit(&GroupReport::new(&n), json);
    Ok(())
}

#[derive(Serialize)]
struct SeriesReport {
    derived: Vec<String>,
    lower_central: Vec<String>,
    soluble: bool,
    nilpotent: bool,
    perfect: bool,
}

impl Report for SeriesReport {
    fn text(&self) -> String {
        format!(
            "derived {}\nlower_central {}\nsoluble {}\nnilpotent {}\nperfect {}\n",
            self.derived.join(" "),
            self.lower_central.join(" "),
            self.soluble,
            self.nilpotent,
            self.perfect
        )
    }
}

fn cmd_series(a: &GroupArgs, json: bool) -> Result<(), Failure> {
    let g = load_group(a)?;
    let orders = |s: Vec<PermGroup>| s.iter().map(|t| big(&t.order())).collect();
    emit(
        &SeriesReport {
            derived: orders(derived_series(&g)),
            lower_central: orders(lower_central_series(&g)),
            soluble: is_soluble(&g),
            nilpotent: is_nilpotent(&g),
            perfect: is_perfect(&g),
        },
        json,
    );
    Ok(())
}

fn cmd_centralizer(a: &CentralizerArgs, json: bool) -> Result<(), Failure> {
    let g = load_group(&a.group)?;
    let z = load_perm(&a.perm, g.degree())?;
    let c = centralizer(&g, &z).map_err(input("centralizer"))?;
    emit(&GroupReport::new(&c), json);
    Ok(())
}

fn cmd_setstab(a: &SetstabArgs, json: bool) -> Result<(), Failure> {
    let g = load_group(&a.group)?;
    let set = parse_points(&a.set, g.degree())?;
    let s = set_stabilizer(&g, &set).map_err(input("setstab"))?;
    emit(&GroupReport::new(&s), json);
    Ok(())
}

#[derive(Serialize)]
struct ConjugateReport {
    conjugate: bool,
    witness: Option<String>,
}

impl Report for ConjugateReport {
    fn text(&self) -> String {
        match &self.witness {
            Some(w) => format!("conjugate {w}\n"),
            None => "not conjugate\n".to_string(),
        }
    }
}

fn cmd_conjugate(a: &ConjugateArgs, json: bool) -> Result<(), Failure> {
    let g = load_group(&a.group)?;
    let x = load_perm(&a.x, g.degree())?;
    let y = load_perm(&a.y, g.degree())?;
    let h = element_conjugacy(&g, &x, &y).map_err(input("conjugate"))?;
    emit(
        &ConjugateReport {
            conjugate: h.is_some(),
            witness: h.map(|h| h.to_string()),
        },
        json,
    );
    Ok(())
}
