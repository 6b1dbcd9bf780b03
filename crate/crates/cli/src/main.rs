//! `pctlab`: build conjugated triangulations and check their properties.
//!
//! Exit status: 0 when every hard check passes, 1 when one fails, 2 for
//! usage and input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pctlab_core::conjugate::{degree_audit, face_intersection_audit, ConjugateGraph};
use pctlab_core::euler::{euler_circuit, orient_along, verify_bi_euler};
use pctlab_core::generate::{exhaustive_sphere, GenSpec};
use pctlab_core::ledger::suite::{exhaustive_corpus, instances_from_text, random_corpus};
use pctlab_core::ledger::tables::{k_table_csv, k_table_validated};
use pctlab_core::ledger::{identity_report, relation_tables, run_suite, write_atomic, Severity, SuiteConfig};
use pctlab_core::matrix::{
    antisymmetry_check, arc_adjacency_matrix, compactness_metrics, quasicanonical_decomposition, vertex_adjacency_matrix,
    BitMatrix, MatrixKind,
};
use pctlab_core::planar::text::parse_records;
use pctlab_core::{fixtures, Mode, Triangulation, Verdict};

#[derive(Parser)]
#[command(name = "pctlab", version, about = "Conjugated planar triangulations: build, orient, convert, check")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate triangulations as rotation-system text.
    Gen(GenArgs),
    /// Build H and run the structural audits.
    Conjugate(InputArgs),
    /// Orient H along an Euler circuit.
    Orient(SeededInput),
    /// Emit the F or R matrix of the oriented H.
    Matrix(MatrixArgs),
    /// Counting identities between L and H.
    Identities(InputArgs),
    /// The k-parameterized table and the relation series.
    Table(TableArgs),
    /// Run the full pipeline over a corpus.
    Suite(SuiteArgs),
    /// Reproduce one of the three worked cases.
    Case(CaseArgs),
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    Sphere,
    Disk,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Sphere => Mode::Sphere,
            ModeArg::Disk => Mode::Disk,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum Fixture {
    Triangle,
    Tetrahedron,
    Octahedron,
    Icosahedron,
    Fan,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "sphere")]
    mode: ModeArg,
    /// Vertex count (sphere) or interior vertex count (disk).
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random flip attempts after stacking (sphere).
    #[arg(long, default_value_t = 0)]
    flips: usize,
    /// Boundary polygon size (disk).
    #[arg(long, default_value_t = 3)]
    boundary: usize,
    /// Every isomorphism class on n vertices instead of a random one.
    #[arg(long)]
    exhaustive: bool,
    /// Allow exhaustive enumeration above the built-in size cap.
    #[arg(long)]
    allow_large: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    /// Rotation-system text file, one or more records.
    #[arg(long, conflicts_with = "fixture")]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    fixture: Option<Fixture>,
    #[arg(long, value_enum, default_value = "sphere")]
    mode: ModeArg,
    /// Directory for written artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SeededInput {
    #[command(flatten)]
    input: InputArgs,
    /// Euler circuit seed; omitted means smallest-edge-first.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    input: SeededInput,
    #[arg(long, default_value = "R")]
    kind: MatrixKind,
    /// Also print the quasicanonical block decomposition.
    #[arg(long)]
    decompose: bool,
    /// Also print fill ratio and minimum-order checks.
    #[arg(long)]
    metrics: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 10)]
    k_max: u64,
    /// Also write CSV tables and SVG charts here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest n_L in the relation series.
    #[arg(long, default_value_t = 50)]
    n_max: i64,
}

#[derive(Args)]
struct SuiteArgs {
    /// Include every class with 4..=N vertices.
    #[arg(long)]
    exhaustive: Option<usize>,
    /// Include this many seeded random sphere instances.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 5)]
    n_min: usize,
    #[arg(long, default_value_t = 50)]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include the records of this file.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "sphere")]
    mode: ModeArg,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Euler circuits per instance.
    #[arg(long, default_value_t = 3)]
    circuits: u64,
    /// Treat claim disagreements as failures.
    #[arg(long)]
    strict_claims: bool,
    /// Print every outcome, not only the summary.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args)]
struct CaseArgs {
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    case: u8,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A run that completed: `Ok(true)` when every hard check passed.
type Outcome = Result<bool>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Conjugate(a) => conjugate_cmd(a),
        Command::Orient(a) => orient_cmd(a),
        Command::Matrix(a) => matrix_cmd(a),
        Command::Identities(a) => identities_cmd(a),
        Command::Table(a) => table_cmd(a),
        Command::Suite(a) => suite_cmd(a),
        Command::Case(a) => case_cmd(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen(a: GenArgs) -> Outcome {
    let mode: Mode = a.mode.into();
    let ts = if a.exhaustive {
        if mode == Mode::Disk {
            bail!("exhaustive generation is sphere-only");
        }
        exhaustive_sphere(a.n, a.allow_large)?
    } else {
        let spec = match mode {
            Mode::Sphere => GenSpec::sphere(a.n, a.seed, a.flips),
            Mode::Disk => GenSpec::disk(a.boundary, a.n, a.seed),
        };
        vec![spec.generate()?]
    };
    let text: Vec<String> = ts
        .iter()
        .enumerate()
        .map(|(i, t)| t.to_text(&[format!("{mode} n={} m={} seed={} index={i}", t.n(), t.m(), a.seed)]))
        .collect();
    emit(a.out.as_deref(), &text.join("\n"))?;
    Ok(true)
}

fn load(a: &InputArgs) -> Result<Vec<Triangulation>> {
    let mode: Mode = a.mode.into();
    if let Some(f) = a.fixture {
        let t = match f {
            Fixture::Triangle => fixtures::triangle(),
            Fixture::Tetrahedron => fixtures::tetrahedron(),
            Fixture::Octahedron => fixtures::octahedron(),
            Fixture::Icosahedron => fixtures::icosahedron(),
            Fixture::Fan => fixtures::fan(),
        };
        if t.mode() != mode {
            return Ok(vec![Triangulation::new(t.embedding().clone(), mode, Some(t.outer_dart()))?]);
        }
        return Ok(vec![t]);
    }
    let Some(path) = &a.input else {
        bail!("give --input FILE or --fixture NAME");
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let recs = parse_records(&text).with_context(|| format!("parsing {}", path.display()))?;
    recs.iter()
        .enumerate()
        .map(|(i, r)| Triangulation::from_record(r, mode).with_context(|| format!("{} record {i}", path.display())))
        .collect()
}

fn show(name: &str, v: &Verdict) -> bool {
    println!("{name}: {v}");
    !v.is_fail()
}

fn conjugate_cmd(a: InputArgs) -> Outcome {
    let mut ok = true;
    for (i, t) in load(&a)?.iter().enumerate() {
        let h = ConjugateGraph::of(t).with_context(|| format!("record {i}"))?;
        let stats = h.embedding().stats()?;
        println!("record {i}: mode={} n_L={} m_L={}", t.mode(), t.n(), t.m());
        println!("  n_H={} m_H={} faces={} nu_H={}", stats.n, stats.m, stats.f, stats.cyclomatic);
        let hist: Vec<String> = stats.degree_histogram.iter().map(|(d, c)| format!("{d}:{c}")).collect();
        println!("  degrees {}", hist.join(" "));
        println!("  class-1 faces {}, finite class-2 faces {}", h.class1_count(), h.class2_finite_count());
        println!("  external vertices {:?}", h.external_vertices());
        ok &= show("  degree audit", &degree_audit(&h));
        ok &= show("  face audit", &face_intersection_audit(&h));
        if let Some(dir) = &a.out {
            let rec = pctlab_core::planar::text::write_record(&h.embedding().to_rotation_system(), None, &[format!("H of record {i}")]);
            write_atomic(&dir.join(format!("H-{i:04}.txt")), rec.as_bytes())?;
            write_atomic(&dir.join(format!("H-{i:04}-provenance.tsv")), h.provenance_table().as_bytes())?;
        }
    }
    Ok(ok)
}

fn orient_cmd(a: SeededInput) -> Outcome {
    let mut ok = true;
    for (i, t) in load(&a.input)?.iter().enumerate() {
        let h = ConjugateGraph::of(t).with_context(|| format!("record {i}"))?;
        let c = euler_circuit(&h, a.seed)?;
        let d = orient_along(&h, &c);
        println!("record {i}: circuit length {} (m_H = {})", c.len(), h.m());
        ok &= show("  bi-Euler", &verify_bi_euler(&c, &h));
        ok &= show("  balance", &d.balance_check(h.embedding().is_simple()));
        match &a.input.out {
            Some(dir) => {
                write_atomic(&dir.join(format!("circuit-{i:04}.tsv")), c.dart_table(h.embedding()).as_bytes())?;
                write_atomic(&dir.join(format!("arcs-{i:04}.tsv")), d.digraph().arc_table().as_bytes())?;
            }
            None => print!("{}", d.digraph().arc_table()),
        }
    }
    Ok(ok)
}

fn matrix_cmd(a: MatrixArgs) -> Outcome {
    let mut ok = true;
    for (i, t) in load(&a.input.input)?.iter().enumerate() {
        let h = ConjugateGraph::of(t).with_context(|| format!("record {i}"))?;
        let d = orient_along(&h, &euler_circuit(&h, a.input.seed)?);
        let m: BitMatrix = match a.kind {
            MatrixKind::F => vertex_adjacency_matrix(&d),
            MatrixKind::R => arc_adjacency_matrix(&d),
        };
        match &a.input.input.out {
            Some(dir) => write_atomic(&dir.join(format!("{}-{i:04}.txt", a.kind)), m.to_text().as_bytes())?,
            None => print!("{}", m.to_text()),
        }
        println!("# {} order {} ones {}", a.kind, m.order(), m.total());
        if h.embedding().is_simple() {
            ok &= show("# antisymmetry", &antisymmetry_check(&m));
        }
        if a.decompose {
            match quasicanonical_decomposition(&m) {
                Ok(dec) => {
                    println!("# {} blocks", dec.blocks.len());
                    print!("{}", dec.to_text());
                }
                Err(e) => {
                    println!("# not quasicanonical: {e}");
                    // Only R is guaranteed to decompose.
                    ok &= a.kind == MatrixKind::F;
                }
            }
        }
        if a.metrics {
            let cm = compactness_metrics(&m, a.kind);
            let lambda = cm.lambda.map_or("undefined".to_string(), |l| l.to_string());
            println!(
                "# sigma {} lambda {} capacity_ok {} pipeline_min_ok {} minimum_order_ok {}",
                cm.sigma, lambda, cm.capacity_ok, cm.pipeline_min_ok, cm.minimum_order_ok
            );
        }
    }
    Ok(ok)
}

fn identities_cmd(a: InputArgs) -> Outcome {
    let mut ok = true;
    for (i, t) in load(&a)?.iter().enumerate() {
        let h = ConjugateGraph::of(t).with_context(|| format!("record {i}"))?;
        let Some(r) = identity_report(&h) else {
            println!("record {i}: skipped (disk mode)");
            continue;
        };
        println!(
            "record {i}: n_L={} m_L={} n_H={} m_H={} nu_L={} nu_H={} nu_M={} Delta={} k={}",
            r.n_l, r.m_l, r.n_h, r.m_h, r.nu_l, r.nu_h, r.nu_m, r.delta, r.k
        );
        for c in &r.checks {
            let status = match (c.holds(), c.severity) {
                (true, _) => "ok",
                (false, Severity::Hard) => "FAIL",
                (false, Severity::Claim) => "claim disagrees",
            };
            println!("  {:<32} {:<26} {} vs {}  {status}", c.id, c.statement, c.lhs, c.rhs);
        }
        ok &= r.hard_failures().next().is_none();
    }
    Ok(ok)
}

fn table_cmd(a: TableArgs) -> Outcome {
    if a.k_max < 1 {
        bail!("--k-max must be at least 1");
    }
    let rows = k_table_validated(a.k_max);
    let mut ok = true;
    println!("{:>4} {:>5} {:>5} {:>5} {:>5}  check", "k", "n_L", "n_H", "m_H", "nu_H");
    for (r, v) in &rows {
        let check = match v {
            Some(v) => {
                ok &= !v.is_fail();
                v.to_string()
            }
            None => "-".into(),
        };
        println!("{:>4} {:>5} {:>5} {:>5} {:>5}  {check}", r.k, r.n_l, r.n_h, r.m_h, r.nu_h);
    }
    if let Some(dir) = &a.out {
        let plain: Vec<_> = rows.iter().map(|(r, _)| *r).collect();
        write_atomic(&dir.join("k_table.csv"), k_table_csv(&plain).as_bytes())?;
        for art in relation_tables(a.n_max) {
            write_atomic(&dir.join(&art.name), art.contents.as_bytes())?;
        }
    }
    Ok(ok)
}

fn suite_cmd(a: SuiteArgs) -> Outcome {
    let mut corpus = Vec::new();
    if let Some(n) = a.exhaustive {
        corpus.extend(exhaustive_corpus(4, n)?);
    }
    if let Some(count) = a.random {
        corpus.extend(random_corpus(count, a.n_min, a.n_max, a.seed)?);
    }
    if let Some(path) = &a.input {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        corpus.extend(instances_from_text(&text, a.mode.into()).with_context(|| format!("parsing {}", path.display()))?);
    }
    if corpus.is_empty() {
        bail!("empty corpus: give --exhaustive, --random or --input");
    }
    let cfg = SuiteConfig { circuit_seeds: a.circuits, out_dir: a.out.clone(), ..SuiteConfig::default() };
    let report = run_suite(&corpus, &cfg);
    if a.verbose {
        for o in &report.outcomes {
            let seed = o.seed.map_or("-".to_string(), |s| s.to_string());
            println!("{} {} {} {} | {} | {}", o.instance_id, o.claim_id, seed, o.severity, o.predicted, o.observed);
        }
    }
    println!("instances: {}", report.instance_count);
    println!("outcomes: {}", report.outcomes.len());
    let hard: Vec<_> = report.hard_failures().collect();
    println!("hard failures: {}", hard.len());
    for o in &hard {
        println!("  FAIL {} {} seed={:?}: {}", o.instance_id, o.claim_id, o.seed, o.observed);
    }
    let claims: Vec<_> = report.claim_disagreements().collect();
    println!("claim disagreements: {}", claims.len());
    let mut by_claim: std::collections::BTreeMap<&str, usize> = Default::default();
    for o in &claims {
        *by_claim.entry(o.claim_id.as_str()).or_default() += 1;
    }
    for (id, n) in by_claim {
        println!("  warning: {id} disagrees on {n} outcome(s)");
    }
    for o in claims.iter().filter(|o| o.artifact.is_some()) {
        println!("  artifact: {}", o.artifact.as_ref().expect("filtered").display());
    }
    for e in &report.io_errors {
        eprintln!("io error: {e}");
    }
    Ok(report.passed(a.strict_claims))
}

fn case_cmd(a: CaseArgs) -> Outcome {
    match a.case {
        1 => {
            println!("case 1: L is the triangle (two faces), H is a multigraph");
            case_values(&fixtures::triangle())
        }
        2 => {
            println!("case 2: L is the tetrahedron");
            case_values(&fixtures::tetrahedron())
        }
        _ => {
            println!("case 3: seeded batch with n_L >= 5 (seed {})", a.seed);
            let corpus = random_corpus(10, 5, 14, a.seed)?;
            let report = run_suite(&corpus, &SuiteConfig::default());
            for inst in &corpus {
                let t = Triangulation::from_record(&inst.record, inst.mode)?;
                let h = ConjugateGraph::of(&t)?;
                let r = identity_report(&h).expect("sphere corpus");
                println!(
                    "  {}: n_L={} n_H={} m_H={} nu_L={} nu_H={} Delta={} k={}",
                    inst.id, r.n_l, r.n_h, r.m_h, r.nu_l, r.nu_h, r.delta, r.k
                );
            }
            let hard = report.hard_failures().count();
            println!("hard failures: {hard}");
            println!("claim disagreements: {}", report.claim_disagreements().count());
            Ok(hard == 0)
        }
    }
}

fn case_values(t: &Triangulation) -> Outcome {
    let h = ConjugateGraph::of(t)?;
    let r = identity_report(&h).expect("sphere fixture");
    let c = euler_circuit(&h, None)?;
    let d = orient_along(&h, &c);
    let rm = arc_adjacency_matrix(&d);
    println!("k={} n_L={} n_H={} m_H={} nu_H={} sum_R={}", r.k, r.n_l, r.n_h, r.m_h, r.nu_h, rm.total());
    println!("nu_L={} Delta={} nu_M={}", r.nu_l, r.delta, r.nu_m);
    let rows2 = rm.row_sums().iter().all(|&s| s == 2);
    println!("R order {} every row sum 2: {rows2}", rm.order());
    println!("directed 2-cycles: {}", d.digraph().two_cycle_count());
    println!("parallel edges in H: {}", !h.embedding().is_simple());
    let mut ok = show("bi-Euler", &verify_bi_euler(&c, &h));
    match quasicanonical_decomposition(&rm) {
        Ok(dec) => {
            let sizes: Vec<String> = dec.blocks.iter().map(|b| format!("{}x{}", b.rows.len(), b.cols.len())).collect();
            println!("R blocks: {} [{}]", dec.blocks.len(), sizes.join(" "));
        }
        Err(e) => {
            println!("R blocks: none ({e})");
            ok = false;
        }
    }
    for chk in r.checks.iter().filter(|c| !c.holds()) {
        println!("{}: {} vs {} ({})", chk.id, chk.lhs, chk.rhs, chk.severity);
    }
    ok &= r.hard_failures().next().is_none();
    Ok(ok)
}
