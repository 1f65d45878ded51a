//! Regeneration of the reference tables and comparison with the bundled
//! golden files.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::alba::{canonical_text, run_alba, AlbaError};
use crate::alc::{
    canonical_product, check_derivation, parse_product, parse_script, replay_script, run_alc,
    AlcDerivation, AlcError,
};
use crate::axioms::Axiom;
use crate::oracle::{
    enumerate_binary, enumerate_ternary, fo_binary, fo_ternary, sample_binary, sample_ternary,
    validate_quasi, Algebra, OracleError,
};
use crate::syntax::{parse_quasi, QuasiInequality, SyntaxError};

pub const TABLE1_ALBA: &str = include_str!("../goldens/table1_alba.txt");
pub const TABLE3_ALC: &str = include_str!("../goldens/table3_alc.txt");
pub const CORRESPONDENCE_SCRIPTS: &str = include_str!("../goldens/correspondence.alc");
pub const BINARY_CORRESPONDENTS: &str = include_str!("../goldens/binary_correspondents.txt");
pub const TERNARY_CORRESPONDENTS: &str = include_str!("../goldens/ternary_correspondents.txt");

#[derive(Debug, Error)]
pub enum ReproError {
    #[error("unknown repro target `{0}`")]
    UnknownTarget(String),
    #[error("golden file for {target}: {message}")]
    Golden { target: Target, message: String },
    #[error("time budget exhausted during {0}")]
    Budget(Target),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Alba(#[from] AlbaError),
    #[error(transparent)]
    Alc(#[from] AlcError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// A regenerable table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Table1Alba,
    Table3Alc,
    BinaryCorrespondents,
    TernaryCorrespondents,
    AppendixA,
}

impl Target {
    pub const ALL: [Target; 5] = [
        Target::Table1Alba,
        Target::Table3Alc,
        Target::BinaryCorrespondents,
        Target::TernaryCorrespondents,
        Target::AppendixA,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Table1Alba => "table1-alba",
            Target::Table3Alc => "table3-alc",
            Target::BinaryCorrespondents => "binary-correspondents",
            Target::TernaryCorrespondents => "ternary-correspondents",
            Target::AppendixA => "appendix-a",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = ReproError;

    fn from_str(s: &str) -> Result<Target, ReproError> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| ReproError::UnknownTarget(s.to_string()))
    }
}

/// Settings for the frame sweeps.
#[derive(Clone, Debug)]
pub struct ReproOptions {
    /// Seed of the sampled frames. The bundled goldens use seed 0.
    pub seed: u64,
    /// Number of sampled frames of the next size up.
    pub samples: usize,
    pub deadline: Option<Instant>,
}

impl Default for ReproOptions {
    fn default() -> Self {
        ReproOptions {
            seed: 0,
            samples: 500,
            deadline: None,
        }
    }
}

/// One line of a regenerated table next to its golden counterpart.
/// `expected` and `actual` are canonical forms; `shown` is the regenerated
/// entry as printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub key: String,
    pub expected: Option<String>,
    pub actual: String,
    pub shown: String,
}

impl Row {
    fn new(key: String, expected: String, actual: String) -> Row {
        Row {
            key,
            expected: Some(expected),
            shown: actual.clone(),
            actual,
        }
    }

    pub fn matches(&self) -> bool {
        self.expected.as_deref() == Some(self.actual.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub target: Target,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.rows.iter().all(Row::matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.matches())
    }

    /// The regenerated table, one tab-separated row per line.
    pub fn render(&self) -> String {
        self.rows
            .iter()
            .map(|r| format!("{}\t{}\n", r.key, r.shown))
            .collect()
    }

    /// A line-oriented diff of the rows that do not match the golden file.
    pub fn diff(&self) -> String {
        let mut out = String::new();
        for r in self.mismatches() {
            out.push_str(&format!(
                "- {}\t{}\n",
                r.key,
                r.expected.as_deref().unwrap_or("(no golden row)")
            ));
            out.push_str(&format!("+ {}\t{}\n", r.key, r.actual));
        }
        out
    }
}

/// Regenerate `target` and compare it with its golden file.
pub fn run(target: Target, opts: &ReproOptions) -> Result<Report, ReproError> {
    let rows = match target {
        Target::Table1Alba => table1_alba(opts)?,
        Target::Table3Alc => table3_alc(opts)?,
        Target::BinaryCorrespondents => correspondents(target, opts)?,
        Target::TernaryCorrespondents => correspondents(target, opts)?,
        Target::AppendixA => appendix_a()?,
    };
    Ok(Report { target, rows })
}

/// Non-comment lines of a golden file split at the first tab.
fn golden_rows(target: Target, text: &str) -> Result<Vec<(String, String)>, ReproError> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_once('\t')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| ReproError::Golden {
                    target,
                    message: format!("row without a tab: `{l}`"),
                })
        })
        .collect()
}

fn axiom_of(target: Target, key: &str) -> Result<Axiom, ReproError> {
    key.parse().map_err(|_| ReproError::Golden {
        target,
        message: format!("unknown axiom `{key}`"),
    })
}

fn check_budget(target: Target, opts: &ReproOptions) -> Result<(), ReproError> {
    match opts.deadline {
        Some(d) if Instant::now() >= d => Err(ReproError::Budget(target)),
        _ => Ok(()),
    }
}

/// The single quasi-inequality produced for `axiom`, or a description of
/// what went wrong.
fn alba_output(axiom: Axiom) -> Result<Result<QuasiInequality, String>, ReproError> {
    let result = run_alba(&axiom.sequent(), None)?;
    Ok(match result.outputs() {
        Some([q]) => Ok(q.clone()),
        Some(qs) => Err(format!("{} outputs", qs.len())),
        None => Err("no output".to_string()),
    })
}

fn table1_alba(opts: &ReproOptions) -> Result<Vec<Row>, ReproError> {
    let target = Target::Table1Alba;
    let mut rows = Vec::new();
    for (key, text) in golden_rows(target, TABLE1_ALBA)? {
        check_budget(target, opts)?;
        let axiom = axiom_of(target, &key)?;
        let actual = match alba_output(axiom)? {
            Ok(q) => canonical_text(&q),
            Err(e) => format!("failure: {e}"),
        };
        rows.push(Row::new(key, canonical_text(&parse_quasi(&text)?), actual));
    }
    Ok(rows)
}

fn table3_rows() -> Result<Vec<(String, String)>, ReproError> {
    let target = Target::Table3Alc;
    golden_rows(target, TABLE3_ALC)?
        .into_iter()
        .map(|(k, v)| Ok((k, canonical_product(&parse_product(&v)?))))
        .collect()
}

/// Canonical and printed forms of a checked derivation's end sequent.
fn derivation_result(d: &AlcDerivation) -> (String, String) {
    match (check_derivation(d), d.result()) {
        (Ok(()), Some(result)) => (canonical_product(result), result.display_sequent()),
        (Err(e), _) => {
            let e = format!("illegal derivation: {e}");
            (e.clone(), e)
        }
        (Ok(()), None) => (
            "unfinished derivation".to_string(),
            "unfinished derivation".to_string(),
        ),
    }
}

fn table3_alc(opts: &ReproOptions) -> Result<Vec<Row>, ReproError> {
    let target = Target::Table3Alc;
    let mut rows = Vec::new();
    for (key, expected) in table3_rows()? {
        check_budget(target, opts)?;
        let axiom = axiom_of(target, &key)?;
        let (actual, shown) = match run_alc(&axiom.sequent())? {
            Some(d) => derivation_result(&d),
            None => ("no derivation".to_string(), "no derivation".to_string()),
        };
        rows.push(Row {
            shown,
            ..Row::new(key, expected, actual)
        });
    }
    Ok(rows)
}

fn appendix_a() -> Result<Vec<Row>, ReproError> {
    let scripts = parse_script(CORRESPONDENCE_SCRIPTS)?;
    let mut rows = Vec::new();
    for (key, expected) in table3_rows()? {
        let (actual, shown) = match scripts.iter().find(|s| s.name == key).map(replay_script) {
            None => (
                "no recorded derivation".to_string(),
                "no recorded derivation".to_string(),
            ),
            Some(Err(e)) => (format!("replay failed: {e}"), format!("replay failed: {e}")),
            Some(Ok(d)) => derivation_result(&d),
        };
        rows.push(Row {
            shown,
            ..Row::new(key, expected, actual)
        });
    }
    Ok(rows)
}

/// Validity of every output on `alg`.
fn outputs_hold<A: Algebra + ?Sized>(alg: &A, q: &QuasiInequality) -> bool {
    validate_quasi(alg, q).expect("frames are small enough to sweep")
}

/// Counts of a sweep: frames examined, frames satisfying the first-order
/// condition, frames where the condition and the output disagree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Sweep {
    pub frames: usize,
    pub holding: usize,
    pub disagreements: usize,
}

impl Sweep {
    fn add(self, other: Sweep) -> Sweep {
        Sweep {
            frames: self.frames + other.frames,
            holding: self.holding + other.holding,
            disagreements: self.disagreements + other.disagreements,
        }
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "frames={} holding={} disagreements={}",
            self.frames, self.holding, self.disagreements
        )
    }
}

fn sweep<F: Sync>(
    frames: &[F],
    expired: &AtomicBool,
    deadline: Option<Instant>,
    check: impl Fn(&F) -> (bool, bool) + Sync,
) -> Sweep {
    frames
        .par_iter()
        .map(|f| {
            if expired.load(Ordering::Relaxed) {
                return Sweep::default();
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                expired.store(true, Ordering::Relaxed);
                return Sweep::default();
            }
            let (fo, output) = check(f);
            Sweep {
                frames: 1,
                holding: usize::from(fo),
                disagreements: usize::from(fo != output),
            }
        })
        .reduce(Sweep::default, Sweep::add)
}

/// Agreement between the first-order condition of `axiom` and its ALBA
/// output on binary frames: every frame up to 3 worlds, then every frame on
/// 4 worlds when the axiom has at most two variables and `samples` seeded
/// ones otherwise.
pub fn binary_sweep(
    axiom: Axiom,
    opts: &ReproOptions,
) -> Result<Result<Sweep, String>, ReproError> {
    let q = match alba_output(axiom)? {
        Ok(q) => q,
        Err(e) => return Ok(Err(e)),
    };
    let expired = AtomicBool::new(false);
    let mut frames: Vec<_> = (1..=3)
        .flat_map(|n| enumerate_binary(n).expect("small size"))
        .collect();
    if axiom.sequent().vars().len() <= 2 {
        frames.extend(enumerate_binary(4)?);
    } else {
        frames.extend(sample_binary(4, opts.samples, opts.seed)?);
    }
    let total = sweep(&frames, &expired, opts.deadline, |f| {
        (fo_binary(axiom, f), outputs_hold(&f.dual(), &q))
    });
    if expired.load(Ordering::Relaxed) {
        return Err(ReproError::Budget(Target::BinaryCorrespondents));
    }
    Ok(Ok(total))
}

/// Agreement on ternary frames: every frame up to 2 worlds and `samples`
/// seeded frames on 3 worlds.
pub fn ternary_sweep(
    axiom: Axiom,
    opts: &ReproOptions,
) -> Result<Result<Sweep, String>, ReproError> {
    let q = match alba_output(axiom)? {
        Ok(q) => q,
        Err(e) => return Ok(Err(e)),
    };
    let expired = AtomicBool::new(false);
    let mut frames: Vec<_> = (1..=2)
        .flat_map(|n| enumerate_ternary(n).expect("small size"))
        .collect();
    frames.extend(sample_ternary(3, opts.samples, opts.seed)?);
    let total = sweep(&frames, &expired, opts.deadline, |f| {
        (fo_ternary(axiom, f), outputs_hold(&f.dual(), &q))
    });
    if expired.load(Ordering::Relaxed) {
        return Err(ReproError::Budget(Target::TernaryCorrespondents));
    }
    Ok(Ok(total))
}

fn correspondents(target: Target, opts: &ReproOptions) -> Result<Vec<Row>, ReproError> {
    let golden = match target {
        Target::BinaryCorrespondents => BINARY_CORRESPONDENTS,
        _ => TERNARY_CORRESPONDENTS,
    };
    let mut rows = Vec::new();
    for (key, expected) in golden_rows(target, golden)? {
        check_budget(target, opts)?;
        let axiom = axiom_of(target, &key)?;
        let result = match target {
            Target::BinaryCorrespondents => binary_sweep(axiom, opts)?,
            _ => ternary_sweep(axiom, opts)?,
        };
        let actual = match result {
            Ok(s) => s.to_string(),
            Err(e) => format!("failure: {e}"),
        };
        rows.push(Row::new(key, expected, actual));
    }
    Ok(rows)
}
