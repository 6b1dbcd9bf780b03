//! The full pipeline over a corpus: validate, conjugate, audit, orient,
//! build matrices, check identities and record claims.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::identities::identity_report;
use super::tables::{k_row_check, KRow};
use super::{write_atomic, ClaimOutcome, Severity};
use crate::chromatic::{chromatic_check, is_proper_coloring, DEFAULT_SIZE_CAP};
use crate::conjugate::{audit_classification, degree_audit, ConjugateGraph};
use crate::euler::{euler_circuit, orient_along, verify_bi_euler};
use crate::generate::{exhaustive_sphere, GenError, GenSpec};
use crate::matrix::{
    antisymmetry_check, arc_adjacency_matrix, compactness_metrics, multiplicity_audit, quasicanonical_decomposition,
    reverse_feasibility_claim, round_trip, vertex_adjacency_matrix, MatrixKind,
};
use crate::planar::text::TextRecord;
use crate::triangulation::{Mode, Triangulation};
use crate::verdict::Verdict;

/// One corpus entry. Kept as raw text data so that validation is part of the
/// run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub id: String,
    pub seed: Option<u64>,
    pub mode: Mode,
    pub record: TextRecord,
}

impl Instance {
    pub fn from_triangulation(id: String, seed: Option<u64>, t: &Triangulation) -> Self {
        let e = t.embedding();
        let outer = (t.mode() == Mode::Disk).then(|| (e.tail(t.outer_dart()), e.head(t.outer_dart())));
        Instance { id, seed, mode: t.mode(), record: TextRecord { rotation: e.to_rotation_system(), outer } }
    }
}

/// Every sphere triangulation class on `n_min..=n_max` vertices.
pub fn exhaustive_corpus(n_min: usize, n_max: usize) -> Result<Vec<Instance>, GenError> {
    let mut out = Vec::new();
    for n in n_min..=n_max {
        for (i, t) in exhaustive_sphere(n, false)?.iter().enumerate() {
            out.push(Instance::from_triangulation(format!("ex-n{n:02}-{i:03}"), None, t));
        }
    }
    Ok(out)
}

/// `count` random sphere triangulations with vertex counts cycling through
/// `n_min..=n_max`; per-instance seeds come from `seed`.
pub fn random_corpus(count: usize, n_min: usize, n_max: usize, seed: u64) -> Result<Vec<Instance>, GenError> {
    if n_min < 4 || n_max < n_min {
        return Err(GenError::InvalidParameter(format!("need 4 <= n_min <= n_max, got {n_min}..{n_max}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = n_min + i % (n_max - n_min + 1);
            let s: u64 = rng.gen();
            let t = GenSpec::sphere(n, s, 4 * n).generate()?;
            Ok(Instance::from_triangulation(format!("rnd-{i:03}-n{n:02}"), Some(s), &t))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Euler circuits per instance; circuit `j` uses seed `base + j`, where
    /// `base` is the instance seed or 0.
    pub circuit_seeds: u64,
    pub chromatic_size_cap: usize,
    /// Where matrices, decompositions and counterexamples go.
    pub out_dir: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { circuit_seeds: 3, chromatic_size_cap: DEFAULT_SIZE_CAP, out_dir: None }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub instance_count: usize,
    /// Sorted by instance id; within an instance, in pipeline order.
    pub outcomes: Vec<ClaimOutcome>,
    pub io_errors: Vec<String>,
}

impl SuiteReport {
    pub fn hard_failures(&self) -> impl Iterator<Item = &ClaimOutcome> {
        self.outcomes.iter().filter(|o| o.is_hard_failure())
    }

    pub fn claim_disagreements(&self) -> impl Iterator<Item = &ClaimOutcome> {
        self.outcomes.iter().filter(|o| o.is_claim_disagreement())
    }

    pub fn passed(&self, strict_claims: bool) -> bool {
        self.io_errors.is_empty()
            && self.hard_failures().next().is_none()
            && (!strict_claims || self.claim_disagreements().next().is_none())
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["claim_id", "instance_id", "seed", "predicted", "observed", "agree"]).expect("in-memory write");
        for o in &self.outcomes {
            let seed = o.seed.map(|s| s.to_string()).unwrap_or_default();
            let agree = if o.agree { "true" } else { "false" };
            w.write_record([o.claim_id.as_str(), &o.instance_id, &seed, &o.predicted, &o.observed, agree])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
    }
}

/// Runs every instance in parallel. Outcome order does not depend on
/// scheduling.
pub fn run_suite(instances: &[Instance], cfg: &SuiteConfig) -> SuiteReport {
    let per: Vec<(Vec<ClaimOutcome>, Vec<String>)> = instances.par_iter().map(|inst| run_instance(inst, cfg)).collect();
    let mut outcomes = Vec::new();
    let mut io_errors = Vec::new();
    for (o, e) in per {
        outcomes.extend(o);
        io_errors.extend(e);
    }
    outcomes.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
    let report = SuiteReport { instance_count: instances.len(), outcomes, io_errors };
    match &cfg.out_dir {
        Some(dir) => write_report(&report, dir),
        None => report,
    }
}

fn write_report(report: &SuiteReport, dir: &Path) -> SuiteReport {
    let mut report = report.clone();
    if let Err(e) = write_atomic(&dir.join("report.csv"), report.to_csv().as_bytes()) {
        report.io_errors.push(format!("report.csv: {e}"));
    }
    report
}

struct Recorder<'a> {
    inst: &'a Instance,
    out: Vec<ClaimOutcome>,
    io_errors: Vec<String>,
    dir: Option<PathBuf>,
}

impl Recorder<'_> {
    fn push(&mut self, claim: &str, seed: Option<u64>, predicted: String, observed: String, agree: bool, severity: Severity) {
        self.out.push(ClaimOutcome {
            claim_id: claim.to_string(),
            instance_id: self.inst.id.clone(),
            seed,
            predicted,
            observed,
            agree,
            severity,
            artifact: None,
        });
    }

    fn verdict(&mut self, claim: &str, seed: Option<u64>, v: &Verdict) {
        self.push(claim, seed, "pass".into(), v.to_string(), !v.is_fail(), Severity::Hard);
    }

    fn fail(&mut self, claim: &str, seed: Option<u64>, msg: String) {
        self.push(claim, seed, "pass".into(), format!("fail: {msg}"), false, Severity::Hard);
    }

    fn write(&mut self, rel: PathBuf, contents: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        match write_atomic(&dir.join(&rel), contents.as_bytes()) {
            Ok(()) => Some(rel),
            Err(e) => {
                self.io_errors.push(format!("{}: {}: {e}", self.inst.id, rel.display()));
                None
            }
        }
    }

    /// Attaches a counterexample file to the most recent outcome.
    fn counterexample(&mut self, contents: &str) {
        let last = self.out.last().expect("an outcome was just pushed");
        let seed = last.seed.map(|s| format!("-s{s}")).unwrap_or_default();
        let rel = PathBuf::from("counterexamples").join(format!("{}-{}{seed}.txt", last.claim_id, self.inst.id));
        let path = self.write(rel, contents);
        self.out.last_mut().expect("non-empty").artifact = path;
    }
}

fn run_instance(inst: &Instance, cfg: &SuiteConfig) -> (Vec<ClaimOutcome>, Vec<String>) {
    let mut r = Recorder { inst, out: Vec::new(), io_errors: Vec::new(), dir: cfg.out_dir.clone() };
    pipeline(&mut r, inst, cfg);
    (r.out, r.io_errors)
}

fn pipeline(r: &mut Recorder, inst: &Instance, cfg: &SuiteConfig) {
    let t = match Triangulation::from_record(&inst.record, inst.mode) {
        Ok(t) => t,
        Err(e) => return r.fail("validate", inst.seed, e.to_string()),
    };
    r.verdict("validate", inst.seed, &Verdict::Pass);
    let h = match ConjugateGraph::of(&t) {
        Ok(h) => h,
        Err(e) => return r.fail("conjugate", inst.seed, e.to_string()),
    };
    r.verdict("conjugate", inst.seed, &Verdict::Pass);
    r.verdict("degree_audit", inst.seed, &degree_audit(&h));
    r.verdict("face_classes", inst.seed, &audit_classification(&h, h.classification()));
    let inst_dir = PathBuf::from("instances").join(&inst.id);
    r.write(inst_dir.join("L.txt"), &t.to_text(&[format!("{} mode={}", inst.id, inst.mode)]));

    let sphere = inst.mode == Mode::Sphere;
    let full_size = sphere && t.n() >= 4;
    match identity_report(&h) {
        Some(rep) => {
            for c in &rep.checks {
                r.push(&format!("identity:{}", c.id), inst.seed, c.rhs.to_string(), c.lhs.to_string(), c.holds(), c.severity);
            }
            r.verdict("k_table_row", inst.seed, &k_row_check(&KRow::of((t.n() - 2) as u64), &h));
        }
        None => r.verdict("identities", inst.seed, &Verdict::Skipped("disk mode".into())),
    }

    let base = inst.seed.unwrap_or(0);
    let simple = h.embedding().is_simple();
    for j in 0..cfg.circuit_seeds {
        let s = Some(base.wrapping_add(j));
        let c = match euler_circuit(&h, s) {
            Ok(c) => c,
            Err(e) => {
                r.fail("euler_circuit", s, e.to_string());
                continue;
            }
        };
        r.verdict("bi_euler", s, &verify_bi_euler(&c, &h));
        let d = orient_along(&h, &c);
        r.verdict("orientation_balance", s, &d.balance_check(simple));
        let f = vertex_adjacency_matrix(&d);
        let rm = arc_adjacency_matrix(&d);
        let tag = format!("s{}", base.wrapping_add(j));
        r.write(inst_dir.join(format!("F-{tag}.txt")), &f.to_text());
        r.write(inst_dir.join(format!("R-{tag}.txt")), &rm.to_text());

        let multigraph = Verdict::Skipped("multigraph".into());
        r.verdict("f_antisymmetric", s, &if simple { antisymmetry_check(&f) } else { multigraph.clone() });
        r.verdict("r_antisymmetric", s, &if simple { antisymmetry_check(&rm) } else { multigraph });

        match quasicanonical_decomposition(&rm) {
            Ok(dec) => {
                r.write(inst_dir.join(format!("R-blocks-{tag}.txt")), &dec.to_text());
                let mut fails = Vec::new();
                if dec.blocks.len() != h.n() {
                    fails.push(format!("{} blocks for n_H = {}", dec.blocks.len(), h.n()));
                }
                if full_size && !dec.all_blocks_sized(2, 2) {
                    fails.push("a block is not 2x2".into());
                }
                if dec.unassigned != 0 {
                    fails.push(format!("{} entries outside blocks", dec.unassigned));
                }
                r.verdict("r_quasicanonical", s, &Verdict::from_failures(fails));
            }
            Err(e) => r.fail("r_quasicanonical", s, e.to_string()),
        }
        match round_trip(d.digraph()) {
            Ok(_) => r.verdict("round_trip", s, &Verdict::Pass),
            Err(e) => r.fail("round_trip", s, e),
        }
        r.verdict("multiplicity", s, &multiplicity_audit(&h, &f, &rm));

        if full_size {
            for (name, m, kind) in [("compactness_f", &f, MatrixKind::F), ("compactness_r", &rm, MatrixKind::R)] {
                let cm = compactness_metrics(m, kind);
                let mut fails = Vec::new();
                if cm.sigma * num_rational::Ratio::from_integer(cm.order as u64) != num_rational::Ratio::from_integer(2) {
                    fails.push(format!("sigma = {} is not 2/{}", cm.sigma, cm.order));
                }
                if !cm.minimum_order_ok {
                    fails.push(format!("order {} below the minimum", cm.order));
                }
                r.verdict(name, s, &Verdict::from_failures(fails));
            }

            let rep = reverse_feasibility_claim(&t, &f);
            let predicted = if rep.predicted_feasible() { "feasible-candidate" } else { "infeasible" };
            let observed = match rep.witness {
                None => "decomposes".to_string(),
                Some((a, b)) => format!("fails at rows {a},{b}"),
            };
            let predicted = format!("{predicted} (n_H = {}, degree-4 vertices {}/{})", rep.n_h, rep.degree4_count, rep.n_l);
            r.push("reverse_feasibility", s, predicted, observed, rep.agrees(), Severity::Claim);
            if !rep.agrees() {
                let mut doc = String::new();
                let _ = writeln!(doc, "# F decomposes although n_H = {} > 12", rep.n_h);
                doc.push_str(&t.to_text(&[format!("{} circuit seed {}", inst.id, base.wrapping_add(j))]));
                doc.push_str("\n# F\n");
                doc.push_str(&f.to_text());
                if let Ok(dec) = quasicanonical_decomposition(&f) {
                    doc.push_str("# blocks\n");
                    doc.push_str(&dec.to_text());
                }
                r.counterexample(&doc);
            }
        }
    }

    if h.n() <= cfg.chromatic_size_cap {
        match chromatic_check(h.embedding(), 3, cfg.chromatic_size_cap) {
            Ok(v) => {
                let observed = v.gamma_upper.map_or("no coloring with <= 3 colors".to_string(), |g| format!("{g}"));
                r.push("three_colorable", inst.seed, "<= 3".into(), observed, v.within_cap, Severity::Claim);
                if !v.within_cap {
                    r.counterexample(&t.to_text(&[format!("{}: H admits no 3-coloring", inst.id)]));
                }
                if let Some(col) = &v.coloring {
                    let ok = is_proper_coloring(h.embedding(), col);
                    r.verdict(
                        "coloring_witness",
                        inst.seed,
                        &if ok { Verdict::Pass } else { Verdict::Fail(vec!["witness is not proper".into()]) },
                    );
                }
            }
            Err(e) => r.fail("three_colorable", inst.seed, e.to_string()),
        }
    }
}

/// Loads corpus records from text, all in `mode`.
pub fn instances_from_text(text: &str, mode: Mode) -> Result<Vec<Instance>, crate::planar::text::ParseError> {
    Ok(crate::planar::text::parse_records(text)?
        .into_iter()
        .enumerate()
        .map(|(i, record)| Instance { id: format!("input-{i:04}"), seed: None, mode, record })
        .collect())
}
