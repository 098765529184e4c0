//! Command dispatch for the `lefschetz` binary.
//!
//! Every command reads documents in the core text format and writes a
//! `key=value` report to stdout. Exit codes: 0 success, 1 validation
//! failure, 2 parse or usage error, 3 unsupported input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use lefschetz_core::cobordism::{class_sum, CobordismClass};
use lefschetz_core::fibration::{critical_counts, euler_characteristic, eta, fiber_sum, pullback_cover, validate};
use lefschetz_core::meyer::{calibration, SERIAL_ENV};
use lefschetz_core::{
    build_universal_dim2, build_universal_dim3_plan, cobordism_image_report, fibration_signature,
    forgetful_phi, invariant_image_lattice, parse, print, universality_report_dim2,
    universality_report_dim3, validate_presentation, CoverAssignment, Diagnostic, Document, Error,
    FibrationData, HurwitzDirection, Sign, SignedTwist, TwistWord, UniversalityReport,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {diag}")]
    Parse { path: String, diag: Diagnostic },
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::Unsupported(_) | Error::NoHomology { .. } => 3,
                Error::InvalidFibration(_)
                | Error::InvalidPresentation(_)
                | Error::Calibration(_)
                | Error::InvariantViolation(_) => 1,
                _ => 2,
            },
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "lefschetz", version, about = "Monodromy calculus for Lefschetz fibrations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check shape, allowability, closure and structure twist (and any presentation).
    Validate { file: PathBuf },
    /// Euler characteristic and critical-point counts.
    Invariants { file: PathBuf },
    /// Signature of the total space.
    Signature { file: PathBuf },
    /// Fiber sum of two fibrations over closed bases.
    Fibersum {
        first: PathBuf,
        second: PathBuf,
        /// Gluing word in the first document's curves, e.g. "a b^-1".
        #[arg(long, default_value = "")]
        gluing: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Elementary transformation of letters `index` and `index + 1` (1-based).
    Hurwitz {
        file: PathBuf,
        #[arg(long)]
        index: usize,
        #[arg(long, value_enum, default_value = "forward")]
        direction: Direction,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Pullback along an unbranched cover of a bounded base.
    Cover {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        /// One permutation per bundle generator as 1-based images, e.g. "2,1".
        #[arg(long = "perm")]
        perms: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dimension-2 universal data from a presentation.
    Universal2 { file: PathBuf },
    /// Dimension-3 handle plan; without --marked, checks the document's PLAN.
    #[command(name = "universal3-plan")]
    Universal3Plan {
        file: PathBuf,
        /// Comma-separated marked mapping class group generators.
        #[arg(long)]
        marked: Option<String>,
        #[arg(long = "three-handle")]
        three_handles: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Invariants of the class represented by the disjoint union of the files.
    #[command(name = "cobordism-report")]
    CobordismReport {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// The frozen signature calibration.
    Calibrate,
}

/// Ordered `key=value` lines.
#[derive(Debug, Default)]
struct Report(Vec<(String, String)>);

impl Report {
    fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        self.0.push((key.into(), value.to_string()));
    }

    fn render(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

fn load(path: &Path) -> Result<Document, CliError> {
    let text = fs::read_to_string(path)?;
    parse(&text).map_err(|diag| CliError::Parse {
        path: path.display().to_string(),
        diag,
    })
}

fn save(path: &Path, doc: &Document) -> Result<(), CliError> {
    fs::write(path, print(doc))?;
    Ok(())
}

fn fibration(doc: &Document) -> Result<FibrationData, CliError> {
    if doc.fibration.is_none() {
        return Err(CliError::Usage("document has no FIBRATION record".into()));
    }
    Ok(doc.to_fibration()?)
}

fn parse_word(doc: &Document, text: &str) -> Result<TwistWord, CliError> {
    text.split_whitespace()
        .map(|l| {
            let (name, sign) = match l.strip_suffix("^-1") {
                Some(n) => (n, Sign::Negative),
                None => (l, Sign::Positive),
            };
            doc.curve(name)
                .map(|c| SignedTwist::new(c.clone(), sign))
                .ok_or_else(|| CliError::Usage(format!("unknown curve `{name}` in word")))
        })
        .collect()
}

fn put_shape(r: &mut Report, f: &FibrationData) {
    r.put("fiber", f.fiber);
    r.put("base", format!("S_{{{},{}}}", f.base.genus, f.base.boundary_count));
}

fn put_counts(r: &mut Report, prefix: &str, f: &FibrationData) {
    let (p, m) = critical_counts(f);
    r.put(format!("{prefix}chi"), euler_characteristic(f));
    r.put(format!("{prefix}n_plus"), p);
    r.put(format!("{prefix}n_minus"), m);
    r.put(format!("{prefix}eta"), eta(f));
}

fn put_conditions(r: &mut Report, report: &UniversalityReport) {
    for c in &report.conditions {
        r.put(format!("condition.{}", c.key), c.verdict.label());
        r.put(format!("evidence.{}", c.key), c.evidence.label());
        if let lefschetz_core::Verdict::Fail(why) = &c.verdict {
            r.put(format!("reason.{}", c.key), why);
        }
    }
}

fn parse_perm(text: &str, degree: usize) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|x| match x.trim().parse::<usize>() {
            Ok(v) if (1..=degree).contains(&v) => Ok(v - 1),
            _ => Err(CliError::Usage(format!("bad permutation `{text}` for degree {degree}"))),
        })
        .collect()
}

fn execute(cmd: Command, r: &mut Report) -> Result<bool, CliError> {
    match cmd {
        Command::Validate { file } => {
            let doc = load(&file)?;
            let mut ok = true;
            if doc.fibration.is_some() {
                let f = fibration(&doc)?;
                put_shape(r, &f);
                let report = validate(&f);
                for (name, v) in report.entries() {
                    r.put(format!("check.{name}"), v.label());
                    if let lefschetz_core::Verdict::Fail(why) = v {
                        r.put(format!("reason.{name}"), why);
                    }
                }
                ok &= report.passed();
            }
            if doc.presentation.is_some() {
                let p = doc.to_presentation()?;
                let report = validate_presentation(&p);
                for (name, v) in report.generators.iter().chain(&report.relators) {
                    r.put(format!("presentation.{name}"), v.label());
                }
                ok &= report.passed();
            }
            if doc.fibration.is_none() && doc.presentation.is_none() {
                return Err(CliError::Usage("nothing to validate".into()));
            }
            r.put("valid", ok);
            Ok(ok)
        }
        Command::Invariants { file } => {
            let f = fibration(&load(&file)?)?;
            put_shape(r, &f);
            put_counts(r, "", &f);
            Ok(true)
        }
        Command::Signature { file } => {
            let f = fibration(&load(&file)?)?;
            put_shape(r, &f);
            r.put("sigma", fibration_signature(&f)?);
            r.put("eta", eta(&f));
            Ok(true)
        }
        Command::Fibersum {
            first,
            second,
            gluing,
            output,
        } => {
            let d1 = load(&first)?;
            let (f1, f2) = (fibration(&d1)?, fibration(&load(&second)?)?);
            let h = parse_word(&d1, &gluing)?;
            let s = fiber_sum(&f1, &f2, &h)?;
            put_shape(r, &s);
            put_counts(r, "", &s);
            let closure = validate(&s).closure;
            r.put("check.closure", closure.label());
            if let Some(path) = output {
                save(&path, &Document::from_fibration(&s)?)?;
            }
            Ok(closure.is_ok())
        }
        Command::Hurwitz {
            file,
            index,
            direction,
            output,
        } => {
            let f = fibration(&load(&file)?)?;
            if index == 0 {
                return Err(CliError::Usage("--index is 1-based".into()));
            }
            let dir = match direction {
                Direction::Forward => HurwitzDirection::Forward,
                Direction::Backward => HurwitzDirection::Backward,
            };
            let g = f.hurwitz_move(index - 1, dir)?;
            r.put("lefschetz", &g.lefschetz);
            r.put("check.closure", validate(&g).closure.label());
            if let Some(path) = output {
                save(&path, &Document::from_fibration(&g)?)?;
            }
            Ok(true)
        }
        Command::Cover {
            file,
            degree,
            perms,
            output,
        } => {
            let f = fibration(&load(&file)?)?;
            let bundle = perms
                .iter()
                .map(|p| parse_perm(p, degree))
                .collect::<Result<Vec<_>, _>>()?;
            let comps = pullback_cover(&f, &CoverAssignment::new(degree, bundle))?;
            r.put("components", comps.len());
            for (i, c) in comps.iter().enumerate() {
                let p = format!("component.{}.", i + 1);
                let sheets: Vec<String> = c.sheets.iter().map(|s| (s + 1).to_string()).collect();
                r.put(format!("{p}sheets"), sheets.join(","));
                r.put(
                    format!("{p}base"),
                    format!("S_{{{},{}}}", c.fibration.base.genus, c.fibration.base.boundary_count),
                );
                put_counts(r, &p, &c.fibration);
            }
            if let Some(path) = output {
                let [only] = comps.as_slice() else {
                    return Err(CliError::Usage("--output needs a connected cover".into()));
                };
                save(&path, &Document::from_fibration(&only.fibration)?)?;
            }
            Ok(true)
        }
        Command::Universal2 { file } => {
            let p = load(&file)?.to_presentation()?;
            let u = build_universal_dim2(&p)?;
            r.put("fiber", p.fiber);
            r.put("critical_disks", u.critical_disks);
            r.put("h2_rank", u.h2_rank);
            r.put("torus_amendment", u.torus_amendment);
            let report = universality_report_dim2(&u);
            put_conditions(r, &report);
            let image = cobordism_image_report(&u)?;
            for row in &image.rows {
                r.put(format!("relator.{}.sigma", row.relator), row.sigma);
                r.put(format!("relator.{}.eta", row.relator), row.eta);
            }
            r.put("lattice", &image.lattice);
            Ok(report.passed())
        }
        Command::Universal3Plan {
            file,
            marked,
            three_handles,
            output,
        } => {
            let doc = load(&file)?;
            let plan = match marked {
                Some(m) => {
                    let marked: Vec<String> = m.split(',').filter(|s| !s.is_empty()).map(String::from).collect();
                    build_universal_dim3_plan(&doc.to_presentation()?, &marked)?.with_three_handles(&three_handles)
                }
                None if doc.plan.is_some() => doc.to_plan()?,
                None => return Err(CliError::Usage("give --marked or a document with a PLAN".into())),
            };
            r.put("disks", plan.disks);
            for (i, s) in plan.steps.iter().enumerate() {
                r.put(format!("step.{}", i + 1), s);
            }
            let report = universality_report_dim3(&plan);
            put_conditions(r, &report);
            if let Some(path) = output {
                save(&path, &Document::from_plan(&plan)?)?;
            }
            Ok(report.passed())
        }
        Command::CobordismReport { files } => {
            let mut total: Option<CobordismClass> = None;
            let mut classes = Vec::new();
            for (i, path) in files.iter().enumerate() {
                let f = fibration(&load(path)?)?;
                let x = CobordismClass::of(f)?;
                let p = format!("rep.{}.", i + 1);
                r.put(format!("{p}sigma"), x.sigma()?);
                r.put(format!("{p}eta"), x.eta()?);
                total = Some(match total {
                    None => x.clone(),
                    Some(t) => class_sum(&t, &x)?,
                });
                classes.push(x);
            }
            let total = total.expect("clap requires at least one file");
            let (phi4, phi2) = forgetful_phi(&total)?;
            r.put("class.sigma", total.sigma()?);
            r.put("class.eta", total.eta()?);
            r.put("class.phi", format!("({phi4},{phi2})"));
            r.put("lattice", invariant_image_lattice(&classes)?);
            Ok(true)
        }
        Command::Calibrate => {
            let c = calibration()?;
            r.put("epsilon", &c.epsilon);
            r.put("c_plus", &c.c_plus);
            r.put("c_minus", &c.c_minus);
            r.put("reference.e1.cocycle_sum", c.reference_sums.0);
            r.put("reference.genus2_chain.cocycle_sum", c.reference_sums.1);
            r.put("serial_env", SERIAL_ENV);
            Ok(true)
        }
    }
}

/// Runs one invocation; returns the process exit code.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let mut report = Report::default();
    let result = execute(cli.command, &mut report);
    let _ = out.write_all(report.render().as_bytes());
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let code = e.exit_code();
            let _ = writeln!(err, "error: {e}");
            let _ = writeln!(out, "error={e}");
            code
        }
    }
}
