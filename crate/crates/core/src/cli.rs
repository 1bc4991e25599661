//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 unreadable or
//! invalid input, 3 a size limit was exceeded.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::blocks::{enumerate_block_decompositions, enumerate_minimal_blocks, BlockError};
use crate::bridge::{
    block_of_part, blocks_from_decomposition, subcontexts_from_blocks, verify_with, CheckResult,
};
use crate::concepts::{enumerate_concepts_limited, ConceptError, ConceptLattice, FuzzySet};
use crate::context::{ContextError, ContextSpec, MultiAdjointContext, Subcontext};
use crate::lattice::{BoundedLattice, ElementSet, LatticeError, LatticeSpec};
use crate::oracle;
use crate::residuation::{ConjunctorRegistry, Grade, GradeChain};

#[derive(Debug, Parser)]
#[command(
    name = "fca-blocks",
    version,
    about = "Multi-adjoint concept lattices, lattice blocks and context decompositions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the concepts of a context and its Hasse diagram.
    Concepts {
        #[command(flatten)]
        io: Io,
        /// Also write the Hasse diagram as DOT.
        #[arg(long)]
        dot_out: Option<PathBuf>,
    },
    /// Minimal blocks and block decompositions of a lattice.
    Blocks {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        dot_out: Option<PathBuf>,
    },
    /// Separable subcontexts and decompositions into independent subcontexts.
    Decompose {
        #[command(flatten)]
        io: Io,
    },
    /// Map one context decomposition to concept blocks and back.
    Bridge {
        #[command(flatten)]
        io: Io,
        /// Position of the decomposition in the `decompose` output.
        #[arg(long, default_value_t = 0)]
        decomposition: usize,
    },
    /// Check the equivalence of both kinds of decomposition.
    Verify {
        #[command(flatten)]
        io: Io,
        /// Also compare against the brute-force oracles.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Debug, Args)]
pub struct Io {
    /// Input JSON file.
    pub input: PathBuf,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub json_out: Option<PathBuf>,
    /// Give up beyond this many concepts.
    #[arg(long, default_value_t = 100_000)]
    pub max_concepts: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{0}")]
    Input(String),
    #[error("size limit: {0}")]
    SizeLimit(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::SizeLimit(_) | CliError::Context(ContextError::TooLarge { .. }) => 3,
            _ => 2,
        }
    }
}

/// Whether every check in the report passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

pub fn main_from_env() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let (io, report, outcome) = match &cli.command {
        Command::Concepts { io, dot_out } => {
            let ctx = load_context(&io.input)?;
            let lat = concepts_of(&ctx, io.max_concepts)?;
            if let Some(path) = dot_out {
                write_file(path, &concept_dot(&ctx, &lat))?;
            }
            (io, concepts_report(&ctx, &lat), Outcome::Pass)
        }
        Command::Blocks { io, dot_out } => {
            let lattice = load_lattice(&io.input)?;
            if let Some(path) = dot_out {
                write_file(path, &lattice_dot(&lattice))?;
            }
            (io, blocks_report(&lattice)?, Outcome::Pass)
        }
        Command::Decompose { io } => {
            let ctx = load_context(&io.input)?;
            (io, decompose_report(&ctx)?, Outcome::Pass)
        }
        Command::Bridge { io, decomposition } => {
            let ctx = load_context(&io.input)?;
            let (report, outcome) = bridge_report(&ctx, *decomposition, io.max_concepts)?;
            (io, report, outcome)
        }
        Command::Verify { io, oracle } => {
            let ctx = load_context(&io.input)?;
            let (report, outcome) = verify_report(&ctx, *oracle, io.max_concepts)?;
            (io, report, outcome)
        }
    };
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
    text.push('\n');
    match &io.json_out {
        Some(path) => write_file(path, &text)?,
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })?,
    }
    Ok(outcome)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_context(path: &Path) -> Result<MultiAdjointContext, CliError> {
    let spec: ContextSpec =
        serde_json::from_str(&read(path)?).map_err(|source| CliError::Parse {
            path: path.to_owned(),
            source,
        })?;
    Ok(MultiAdjointContext::from_spec(
        &spec,
        &ConjunctorRegistry::with_builtins(),
    )?)
}

pub fn load_lattice(path: &Path) -> Result<BoundedLattice, CliError> {
    let spec: LatticeSpec =
        serde_json::from_str(&read(path)?).map_err(|source| CliError::Parse {
            path: path.to_owned(),
            source,
        })?;
    Ok(BoundedLattice::from_spec(&spec)?)
}

fn concepts_of(ctx: &MultiAdjointContext, limit: usize) -> Result<ConceptLattice, CliError> {
    enumerate_concepts_limited(ctx, limit).map_err(|e| match e {
        ConceptError::TooMany { .. } => CliError::SizeLimit(e.to_string()),
        other => CliError::Input(other.to_string()),
    })
}

/// A fuzzy set as a JSON object in label order, bottom entries omitted.
struct Sparse<'a> {
    set: &'a FuzzySet,
    labels: &'a [String],
    chain: GradeChain,
}

impl Serialize for Sparse<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<(&String, &Grade)> = self
            .labels
            .iter()
            .zip(self.set.values())
            .filter(|(_, g)| **g != Grade::BOTTOM)
            .collect();
        let mut map = serializer.serialize_map(Some(entries.len()))?;
        for (label, g) in entries {
            map.serialize_entry(label, &self.chain.render(*g))?;
        }
        map.end()
    }
}

fn sparse<'a>(set: &'a FuzzySet, labels: &'a [String], chain: GradeChain) -> Value {
    serde_json::to_value(Sparse { set, labels, chain }).expect("sparse sets serialize")
}

fn concept_id(c: usize) -> String {
    format!("C{c}")
}

fn generators(labels: &[String], chain: GradeChain, gens: Vec<(usize, Grade)>) -> Value {
    gens.into_iter()
        .map(|(i, g)| json!([labels[i], chain.render(g)]))
        .collect()
}

fn concepts_report(ctx: &MultiAdjointContext, lat: &ConceptLattice) -> Value {
    let chain = ctx.chain();
    let concepts: Vec<Value> = lat
        .concepts()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "id": concept_id(i),
                "extent": sparse(&c.extent, ctx.objects(), chain),
                "intent": sparse(&c.intent, ctx.attributes(), chain),
                "meet_irreducible": lat.is_meet_irreducible(i),
                "attribute_generators": generators(ctx.attributes(), chain, lat.attribute_generators(i)),
                "object_generators": generators(ctx.objects(), chain, lat.object_generators(i)),
            })
        })
        .collect();
    json!({
        "grades": chain.granularity(),
        "count": lat.len(),
        "bottom": concept_id(lat.bottom()),
        "top": concept_id(lat.top()),
        "concepts": concepts,
        "covers": lat.lattice().covers().map(|(lo, hi)| [concept_id(lo), concept_id(hi)]).collect::<Vec<_>>(),
    })
}

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram of the concept lattice, edges from lower to upper cover.
pub fn concept_dot(ctx: &MultiAdjointContext, lat: &ConceptLattice) -> String {
    let chain = ctx.chain();
    let mut dot = String::from("digraph concepts {\n  rankdir=BT;\n  node [shape=ellipse];\n");
    for (i, c) in lat.concepts().iter().enumerate() {
        let tooltip = format!(
            "<{}, {}>",
            c.extent.display(ctx.objects(), chain),
            c.intent.display(ctx.attributes(), chain)
        );
        writeln!(dot, "  C{i} [tooltip=\"{}\"];", escape(&tooltip)).unwrap();
    }
    for (lo, hi) in lat.lattice().covers() {
        writeln!(dot, "  C{lo} -> C{hi};").unwrap();
    }
    dot.push_str("}\n");
    dot
}

/// Hasse diagram of an abstract lattice.
pub fn lattice_dot(lattice: &BoundedLattice) -> String {
    let mut dot = String::from("digraph lattice {\n  rankdir=BT;\n");
    for label in lattice.labels() {
        writeln!(dot, "  \"{}\";", escape(label)).unwrap();
    }
    for (lo, hi) in lattice.covers() {
        writeln!(
            dot,
            "  \"{}\" -> \"{}\";",
            escape(lattice.label(lo)),
            escape(lattice.label(hi))
        )
        .unwrap();
    }
    dot.push_str("}\n");
    dot
}

fn labels_of(lattice: &BoundedLattice, set: &ElementSet) -> Vec<String> {
    lattice.labels_of(set)
}

fn blocks_report(lattice: &BoundedLattice) -> Result<Value, CliError> {
    let minimal = match enumerate_minimal_blocks(lattice) {
        Ok(blocks) => blocks,
        Err(BlockError::NoBlocks(_)) => Vec::new(),
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let decompositions: Vec<Vec<Vec<String>>> = enumerate_block_decompositions(lattice)
        .iter()
        .map(|d| {
            d.member_sets()
                .iter()
                .map(|s| labels_of(lattice, s))
                .collect()
        })
        .collect();
    Ok(json!({
        "elements": lattice.len(),
        "blocks": minimal.iter().map(|b| b.labels()).collect::<Vec<_>>(),
        "decompositions": decompositions,
    }))
}

fn subcontext_json(ctx: &MultiAdjointContext, part: &Subcontext) -> Value {
    json!({
        "attributes": ctx.attribute_labels(&part.attributes),
        "objects": ctx.object_labels(&part.objects),
    })
}

fn decompose_report(ctx: &MultiAdjointContext) -> Result<Value, CliError> {
    let separable = ctx.enumerate_separable_subcontexts()?;
    let decompositions = ctx.enumerate_decompositions()?;
    Ok(json!({
        "separable_subcontexts": separable.iter().map(|s| subcontext_json(ctx, s)).collect::<Vec<_>>(),
        "decompositions": decompositions
            .iter()
            .map(|d| d.parts().iter().map(|p| subcontext_json(ctx, p)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    }))
}

fn bridge_report(
    ctx: &MultiAdjointContext,
    index: usize,
    limit: usize,
) -> Result<(Value, Outcome), CliError> {
    let decompositions = ctx.enumerate_decompositions()?;
    let dec = decompositions.get(index).ok_or_else(|| {
        CliError::Input(format!(
            "decomposition {index} requested, but the context has {}",
            decompositions.len()
        ))
    })?;
    let lat = concepts_of(ctx, limit)?;
    let lattice = lat.lattice();
    let mut parts = Vec::new();
    for part in dec.parts() {
        let block = block_of_part(&lat, part).map_err(|e| CliError::Input(e.to_string()))?;
        let mut entry = subcontext_json(ctx, part);
        entry["block"] = json!(block.labels());
        parts.push(entry);
    }
    let (certified, recovered) = match blocks_from_decomposition(ctx, &lat, dec) {
        Ok(blocks) => {
            let back = subcontexts_from_blocks(ctx, &lat, &blocks);
            (Ok(()), back)
        }
        Err(e) => (Err(e.clone()), Err(e)),
    };
    let roundtrip = recovered.as_ref().is_ok_and(|r| r == dec);
    let report = json!({
        "decomposition": index,
        "concepts": lattice.len(),
        "parts": parts,
        "blocks_certified": certified.is_ok(),
        "recovered": match &recovered {
            Ok(r) => json!(r.parts().iter().map(|p| subcontext_json(ctx, p)).collect::<Vec<_>>()),
            Err(e) => json!({ "error": e.to_string() }),
        },
        "roundtrip": roundtrip,
    });
    let outcome = if certified.is_ok() && roundtrip {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    Ok((report, outcome))
}

fn oracle_checks(
    ctx: &MultiAdjointContext,
    lat: &ConceptLattice,
) -> Result<Vec<CheckResult>, CliError> {
    let limit = |e: oracle::TooLarge| CliError::SizeLimit(e.to_string());
    let mut checks = Vec::new();
    let mut record = |name, ok: bool, witness: &dyn Fn() -> String| {
        checks.push(CheckResult {
            name,
            passed: ok,
            witness: (!ok).then(witness),
        });
    };

    let brute = oracle::brute_concepts(ctx).map_err(limit)?;
    record(
        "oracle-concepts",
        brute.as_slice() == lat.concepts(),
        &|| {
            format!(
                "{} brute-force concepts vs {} enumerated",
                brute.len(),
                lat.len()
            )
        },
    );

    let brute = oracle::brute_decompositions(ctx).map_err(limit)?;
    let fast: Vec<Vec<Subcontext>> = ctx
        .enumerate_decompositions()?
        .iter()
        .map(|d| d.parts().to_vec())
        .collect();
    record("oracle-decompositions", brute == fast, &|| {
        format!(
            "{} brute-force decompositions vs {} enumerated",
            brute.len(),
            fast.len()
        )
    });

    let lattice = lat.lattice();
    let brute = oracle::brute_meet_irreducibles(lattice);
    let characterized: ElementSet = lat
        .meet_irreducible_concepts()
        .iter()
        .map(|m| m.concept)
        .collect();
    record(
        "oracle-meet-irreducibles",
        brute == characterized && brute == lattice.meet_irreducibles(),
        &|| format!("brute force {brute:?} vs characterization {characterized:?}"),
    );

    if lattice.len() >= crate::lattice::MIN_BLOCK_LATTICE_SIZE {
        let brute = oracle::brute_minimal_blocks(lattice).map_err(limit)?;
        let mut fast: Vec<ElementSet> = enumerate_minimal_blocks(lattice)
            .map(|bs| bs.into_iter().map(|b| b.into_members()).collect())
            .unwrap_or_default();
        fast.sort();
        record("oracle-minimal-blocks", brute == fast, &|| {
            format!(
                "{} brute-force minimal blocks vs {} from closures",
                brute.len(),
                fast.len()
            )
        });
    }
    Ok(checks)
}

fn verify_report(
    ctx: &MultiAdjointContext,
    with_oracle: bool,
    limit: usize,
) -> Result<(Value, Outcome), CliError> {
    let context_side = ctx.enumerate_decompositions()?;
    let lat = concepts_of(ctx, limit)?;
    let report = verify_with(ctx, &lat, &context_side);
    let mut passed = report.passed();
    let mut value = serde_json::to_value(&report).expect("report serializes");
    if with_oracle {
        let checks = oracle_checks(ctx, &lat)?;
        passed &= checks.iter().all(|c| c.passed);
        value["oracle"] = serde_json::to_value(&checks).expect("checks serialize");
    }
    value["passed"] = json!(passed);
    Ok((value, if passed { Outcome::Pass } else { Outcome::Fail }))
}
