//! Line-oriented text format for surfaces, curves, words, fibrations,
//! presentations, handle plans and reports.
//!
//! ```text
//! VERSION 1
//! SURFACE g=1 b=0
//! CURVE a homology=1,0 sep=0
//! CURVE b homology=0,1 sep=0
//! WORD L = a b a b a b a b a b a b
//! FIBRATION base_genus=0 base_bdry=0 twist= lefschetz=L bundle=
//! ```
//!
//! `#` starts a comment. Curves must be defined before the words that use
//! them and words before the records that reference them.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::fibration::{BaseSurface, FibrationData};
use crate::mcg::{Presentation, Sign, SignedTwist, TwistWord};
use crate::surfaces::{CurveClass, FiberSurface, HomologyClass, StructureTwist};
use crate::universal::{HandlePlan3, PlanStep};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagnosticCode {
    Syntax,
    UnknownCurve,
    MalformedVector,
    VersionMismatch,
    UnknownWord,
    Duplicate,
    MissingField,
    InvalidValue,
    MissingSurface,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::Syntax => "E001",
            DiagnosticCode::UnknownCurve => "E002",
            DiagnosticCode::MalformedVector => "E003",
            DiagnosticCode::VersionMismatch => "E004",
            DiagnosticCode::UnknownWord => "E005",
            DiagnosticCode::Duplicate => "E006",
            DiagnosticCode::MissingField => "E007",
            DiagnosticCode::InvalidValue => "E008",
            DiagnosticCode::MissingSurface => "E009",
        }
    }
}

/// First error found while parsing, with its 1-based line number.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{} line {line}: {message}", code.as_str())]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationRecord {
    pub base_genus: u32,
    pub base_bdry: u32,
    pub twist: Vec<i64>,
    pub lefschetz: String,
    pub bundle: Vec<String>,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationRecord {
    pub gens: Vec<String>,
    pub relators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanRecord {
    pub disks: usize,
    pub steps: Vec<PlanStep>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub surface: Option<FiberSurface>,
    pub curves: Vec<CurveClass>,
    pub words: Vec<(String, TwistWord)>,
    pub fibration: Option<FibrationRecord>,
    pub presentation: Option<PresentationRecord>,
    pub plan: Option<PlanRecord>,
    pub reports: Vec<(String, String)>,
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '-')
}

fn csv(s: &str) -> Vec<&str> {
    if s.is_empty() {
        Vec::new()
    } else {
        s.split(',').collect()
    }
}

struct Parser {
    doc: Document,
    line: usize,
    curve_index: HashMap<String, usize>,
    word_index: HashMap<String, usize>,
    plan_started: bool,
}

impl Parser {
    fn err<T>(&self, code: DiagnosticCode, message: impl Into<String>) -> Result<T, Diagnostic> {
        Err(Diagnostic {
            code,
            line: self.line,
            message: message.into(),
        })
    }

    fn fields<'a>(&self, tokens: &[&'a str], allowed: &[&str]) -> Result<HashMap<&'a str, &'a str>, Diagnostic> {
        let mut out = HashMap::new();
        for t in tokens {
            let Some((k, v)) = t.split_once('=') else {
                return self.err(DiagnosticCode::Syntax, format!("expected key=value, found `{t}`"));
            };
            if !allowed.contains(&k) {
                return self.err(DiagnosticCode::Syntax, format!("unknown field `{k}`"));
            }
            if out.insert(k, v).is_some() {
                return self.err(DiagnosticCode::Duplicate, format!("field `{k}` given twice"));
            }
        }
        Ok(out)
    }

    fn required<'a>(&self, f: &HashMap<&str, &'a str>, key: &str) -> Result<&'a str, Diagnostic> {
        match f.get(key) {
            Some(v) => Ok(v),
            None => self.err(DiagnosticCode::MissingField, format!("missing field `{key}`")),
        }
    }

    fn int<T: std::str::FromStr>(&self, key: &str, v: &str) -> Result<T, Diagnostic> {
        v.parse()
            .or_else(|_| self.err(DiagnosticCode::InvalidValue, format!("`{key}` must be a non-negative integer, found `{v}`")))
    }

    fn vector(&self, v: &str) -> Result<Vec<i64>, Diagnostic> {
        csv(v)
            .into_iter()
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .or_else(|_| self.err(DiagnosticCode::MalformedVector, format!("`{v}` is not a comma-separated integer vector")))
            })
            .collect()
    }

    fn name(&self, what: &str, s: &str) -> Result<String, Diagnostic> {
        if is_name(s) {
            Ok(s.to_string())
        } else {
            self.err(DiagnosticCode::Syntax, format!("invalid {what} name `{s}`"))
        }
    }

    fn surface(&self) -> Result<FiberSurface, Diagnostic> {
        match self.doc.surface {
            Some(s) => Ok(s),
            None => self.err(DiagnosticCode::MissingSurface, "no SURFACE record before this line"),
        }
    }

    fn curve(&self, name: &str) -> Result<&CurveClass, Diagnostic> {
        match self.curve_index.get(name) {
            Some(&i) => Ok(&self.doc.curves[i]),
            None => self.err(DiagnosticCode::UnknownCurve, format!("unknown curve `{name}`")),
        }
    }

    fn word_name(&self, name: &str) -> Result<String, Diagnostic> {
        if self.word_index.contains_key(name) {
            Ok(name.to_string())
        } else {
            self.err(DiagnosticCode::UnknownWord, format!("unknown word `{name}`"))
        }
    }

    fn record(&mut self, tag: &str, rest: &[&str], raw: &str) -> Result<(), Diagnostic> {
        match tag {
            "SURFACE" => {
                if self.doc.surface.is_some() {
                    return self.err(DiagnosticCode::Duplicate, "second SURFACE record");
                }
                let f = self.fields(rest, &["g", "b"])?;
                let g = self.int("g", self.required(&f, "g")?)?;
                let b = self.int("b", self.required(&f, "b")?)?;
                self.doc.surface = Some(FiberSurface::new(g, b));
            }
            "CURVE" => {
                let surface = self.surface()?;
                let Some((name, fields)) = rest.split_first() else {
                    return self.err(DiagnosticCode::MissingField, "CURVE needs a name");
                };
                let name = self.name("curve", name)?;
                if self.curve_index.contains_key(&name) {
                    return self.err(DiagnosticCode::Duplicate, format!("curve `{name}` defined twice"));
                }
                let f = self.fields(fields, &["homology", "sep"])?;
                let coords = self.vector(self.required(&f, "homology")?)?;
                let sep = match self.required(&f, "sep")? {
                    "0" => false,
                    "1" => true,
                    v => return self.err(DiagnosticCode::InvalidValue, format!("sep must be 0 or 1, found `{v}`")),
                };
                if !surface.has_homology() {
                    return self.err(
                        DiagnosticCode::InvalidValue,
                        format!("{surface} has no homology model for curves"),
                    );
                }
                if coords.len() != surface.homology_rank() {
                    return self.err(
                        DiagnosticCode::InvalidValue,
                        format!("homology has {} entries, {surface} needs {}", coords.len(), surface.homology_rank()),
                    );
                }
                let c = CurveClass::new(name.clone(), HomologyClass::from_i64s(&coords), sep)
                    .or_else(|e| self.err(DiagnosticCode::InvalidValue, e.to_string()))?;
                self.curve_index.insert(name, self.doc.curves.len());
                self.doc.curves.push(c);
            }
            "WORD" => {
                let (name, letters) = match rest {
                    [name, "=", letters @ ..] => (*name, letters),
                    _ => return self.err(DiagnosticCode::Syntax, "expected `WORD <name> = <letters>`"),
                };
                let name = self.name("word", name)?;
                if self.word_index.contains_key(&name) {
                    return self.err(DiagnosticCode::Duplicate, format!("word `{name}` defined twice"));
                }
                let mut word = TwistWord::empty();
                for l in letters {
                    let (curve, sign) = match l.strip_suffix("^-1") {
                        Some(c) => (c, Sign::Negative),
                        None => (*l, Sign::Positive),
                    };
                    if !is_name(curve) {
                        return self.err(DiagnosticCode::Syntax, format!("bad letter `{l}`"));
                    }
                    word.push(SignedTwist::new(self.curve(curve)?.clone(), sign));
                }
                self.word_index.insert(name.clone(), self.doc.words.len());
                self.doc.words.push((name, word));
            }
            "FIBRATION" => {
                if self.doc.fibration.is_some() {
                    return self.err(DiagnosticCode::Duplicate, "second FIBRATION record");
                }
                self.surface()?;
                let f = self.fields(
                    rest,
                    &["base_genus", "base_bdry", "twist", "lefschetz", "bundle", "surjective"],
                )?;
                let base_genus = self.int("base_genus", self.required(&f, "base_genus")?)?;
                let base_bdry = self.int("base_bdry", self.required(&f, "base_bdry")?)?;
                let twist = self.vector(self.required(&f, "twist")?)?;
                let lefschetz = self.word_name(self.required(&f, "lefschetz")?)?;
                let bundle = csv(self.required(&f, "bundle")?)
                    .into_iter()
                    .map(|w| self.word_name(w))
                    .collect::<Result<Vec<_>, _>>()?;
                let surjective = match f.get("surjective").copied().unwrap_or("0") {
                    "0" => false,
                    "1" => true,
                    v => return self.err(DiagnosticCode::InvalidValue, format!("surjective must be 0 or 1, found `{v}`")),
                };
                self.doc.fibration = Some(FibrationRecord {
                    base_genus,
                    base_bdry,
                    twist,
                    lefschetz,
                    bundle,
                    surjective,
                });
            }
            "PRESENTATION" => {
                if self.doc.presentation.is_some() {
                    return self.err(DiagnosticCode::Duplicate, "second PRESENTATION record");
                }
                self.surface()?;
                let f = self.fields(rest, &["gens", "relators"])?;
                let gens = csv(self.required(&f, "gens")?)
                    .into_iter()
                    .map(|g| self.curve(g).map(|c| c.name.clone()))
                    .collect::<Result<Vec<_>, _>>()?;
                let relators = csv(self.required(&f, "relators")?)
                    .into_iter()
                    .map(|w| self.word_name(w))
                    .collect::<Result<Vec<_>, _>>()?;
                self.doc.presentation = Some(PresentationRecord { gens, relators });
            }
            "PLAN" => self.plan_record(rest)?,
            "REPORT" => {
                let body = raw.trim_start()["REPORT".len()..].trim();
                let Some((k, v)) = body.split_once('=') else {
                    return self.err(DiagnosticCode::Syntax, "expected `REPORT key=value`");
                };
                let k = self.name("report key", k)?;
                self.doc.reports.push((k, v.to_string()));
            }
            "VERSION" => return self.err(DiagnosticCode::Duplicate, "second VERSION record"),
            other => return self.err(DiagnosticCode::Syntax, format!("unknown record `{other}`")),
        }
        Ok(())
    }

    fn plan_record(&mut self, rest: &[&str]) -> Result<(), Diagnostic> {
        if let [field] = rest {
            if let Some(k) = field.strip_prefix("disks=") {
                if self.plan_started {
                    return self.err(DiagnosticCode::Duplicate, "second `PLAN disks=` record");
                }
                self.plan_started = true;
                self.doc.plan = Some(PlanRecord {
                    disks: self.int("disks", k)?,
                    steps: Vec::new(),
                });
                return Ok(());
            }
        }
        if !self.plan_started {
            return self.err(DiagnosticCode::MissingField, "`PLAN disks=<k>` must come first");
        }
        let index = |s: &str| self.int::<usize>("disk", s);
        let step = match rest {
            ["band", i, j] => PlanStep::Band(index(i)?, index(j)?),
            ["one_handle", l] => PlanStep::OneHandle(self.name("generator", l)?),
            ["two_handle", w] => PlanStep::TwoHandle(self.name("word", w)?),
            ["fibersum_torus_bundle", i] => PlanStep::FibersumTorusBundle(index(i)?),
            ["three_handle", s] => PlanStep::ThreeHandle(self.name("sphere", s)?),
            _ => return self.err(DiagnosticCode::Syntax, "unknown PLAN step"),
        };
        self.doc.plan.as_mut().expect("plan started").steps.push(step);
        Ok(())
    }
}

/// Parses a document, stopping at the first error.
pub fn parse(text: &str) -> Result<Document, Diagnostic> {
    let mut p = Parser {
        doc: Document::default(),
        line: 0,
        curve_index: HashMap::new(),
        word_index: HashMap::new(),
        plan_started: false,
    };
    let mut version_seen = false;
    for (i, raw) in text.lines().enumerate() {
        p.line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((tag, rest)) = tokens.split_first() else { continue };
        if !version_seen {
            match (*tag, rest) {
                ("VERSION", [v]) if *v == FORMAT_VERSION => version_seen = true,
                ("VERSION", [v]) => {
                    return p.err(DiagnosticCode::VersionMismatch, format!("unsupported format version `{v}`"))
                }
                _ => return p.err(DiagnosticCode::VersionMismatch, "document must start with `VERSION 1`"),
            }
            continue;
        }
        p.record(tag, rest, content)?;
    }
    if !version_seen {
        p.line = 1;
        return p.err(DiagnosticCode::VersionMismatch, "empty document");
    }
    Ok(p.doc)
}

fn letter_text(l: &SignedTwist) -> String {
    match l.sign {
        Sign::Positive => l.curve.name.clone(),
        Sign::Negative => format!("{}^-1", l.curve.name),
    }
}

/// Canonical text; `parse(&print(d)) == d` for every well-formed document.
pub fn print(doc: &Document) -> String {
    let mut out = format!("VERSION {FORMAT_VERSION}\n");
    if let Some(s) = doc.surface {
        let _ = writeln!(out, "SURFACE g={} b={}", s.genus, s.boundary_count);
    }
    for c in &doc.curves {
        let _ = writeln!(out, "CURVE {} homology={} sep={}", c.name, c.homology, u8::from(c.separating));
    }
    for (name, w) in &doc.words {
        let letters: Vec<String> = w.letters().iter().map(letter_text).collect();
        if letters.is_empty() {
            let _ = writeln!(out, "WORD {name} =");
        } else {
            let _ = writeln!(out, "WORD {name} = {}", letters.join(" "));
        }
    }
    if let Some(f) = &doc.fibration {
        let twist: Vec<String> = f.twist.iter().map(i64::to_string).collect();
        let _ = write!(
            out,
            "FIBRATION base_genus={} base_bdry={} twist={} lefschetz={} bundle={}",
            f.base_genus,
            f.base_bdry,
            twist.join(","),
            f.lefschetz,
            f.bundle.join(",")
        );
        if f.surjective {
            out.push_str(" surjective=1");
        }
        out.push('\n');
    }
    if let Some(p) = &doc.presentation {
        let _ = writeln!(out, "PRESENTATION gens={} relators={}", p.gens.join(","), p.relators.join(","));
    }
    if let Some(plan) = &doc.plan {
        let _ = writeln!(out, "PLAN disks={}", plan.disks);
        for s in &plan.steps {
            let _ = writeln!(out, "PLAN {s}");
        }
    }
    for (k, v) in &doc.reports {
        let _ = writeln!(out, "REPORT {k}={v}");
    }
    out
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl std::str::FromStr for Document {
    type Err = Diagnostic;

    fn from_str(s: &str) -> Result<Self, Diagnostic> {
        parse(s)
    }
}

impl Document {
    pub fn word(&self, name: &str) -> Option<&TwistWord> {
        self.words.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }

    pub fn curve(&self, name: &str) -> Option<&CurveClass> {
        self.curves.iter().find(|c| c.name == name)
    }

    fn require_surface(&self) -> Result<FiberSurface> {
        self.surface
            .ok_or_else(|| Error::InvalidArgument("document has no SURFACE record".into()))
    }

    fn named_word(&self, name: &str) -> Result<TwistWord> {
        self.word(name)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown word `{name}`")))
    }

    pub fn to_fibration(&self) -> Result<FibrationData> {
        let fiber = self.require_surface()?;
        let rec = self
            .fibration
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("document has no FIBRATION record".into()))?;
        let twist = if rec.twist.is_empty() {
            StructureTwist::zero_for(fiber)
        } else {
            StructureTwist::new(fiber.pi1_kind(), rec.twist.clone())?
        };
        let bundle = rec.bundle.iter().map(|w| self.named_word(w)).collect::<Result<Vec<_>>>()?;
        Ok(FibrationData::new(
            fiber,
            BaseSurface::new(rec.base_genus, rec.base_bdry),
            self.named_word(&rec.lefschetz)?,
            bundle,
        )
        .with_structure_twist(twist)
        .with_surjective(rec.surjective))
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        let fiber = self.require_surface()?;
        let rec = self
            .presentation
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("document has no PRESENTATION record".into()))?;
        let generators = rec
            .gens
            .iter()
            .map(|g| {
                self.curve(g)
                    .cloned()
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown curve `{g}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let relators = rec
            .relators
            .iter()
            .map(|r| Ok((r.clone(), self.named_word(r)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation::new(fiber, generators, relators))
    }

    pub fn to_plan(&self) -> Result<HandlePlan3> {
        let rec = self
            .plan
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("document has no PLAN record".into()))?;
        Ok(HandlePlan3 {
            presentation: self.to_presentation()?,
            disks: rec.disks,
            steps: rec.steps.clone(),
        })
    }

    fn add_curve(&mut self, c: &CurveClass) -> Result<()> {
        match self.curve(&c.name) {
            Some(existing) if existing.same_class(c) && existing.separating == c.separating => Ok(()),
            Some(_) => Err(Error::InvalidArgument(format!(
                "curve name `{}` used for two different classes",
                c.name
            ))),
            None => {
                self.curves.push(c.clone());
                Ok(())
            }
        }
    }

    fn add_word(&mut self, name: &str, w: &TwistWord) -> Result<()> {
        for l in w.letters() {
            self.add_curve(&l.curve)?;
        }
        if self.word(name).is_some() {
            return Err(Error::InvalidArgument(format!("word `{name}` defined twice")));
        }
        self.words.push((name.to_string(), w.clone()));
        Ok(())
    }

    /// Serializable form of `f`: the Lefschetz word is `L`, bundle words `B1, B2, ...`.
    pub fn from_fibration(f: &FibrationData) -> Result<Self> {
        let mut doc = Document {
            surface: Some(f.fiber),
            ..Default::default()
        };
        doc.add_word("L", &f.lefschetz)?;
        let mut bundle = Vec::with_capacity(f.bundle.len());
        for (i, w) in f.bundle.iter().enumerate() {
            let name = format!("B{}", i + 1);
            doc.add_word(&name, w)?;
            bundle.push(name);
        }
        doc.fibration = Some(FibrationRecord {
            base_genus: f.base.genus,
            base_bdry: f.base.boundary_count,
            twist: if f.structure_twist.is_zero() {
                Vec::new()
            } else {
                f.structure_twist.coords().to_vec()
            },
            lefschetz: "L".into(),
            bundle,
            surjective: f.surjective,
        });
        Ok(doc)
    }

    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        let mut doc = Document {
            surface: Some(p.fiber),
            ..Default::default()
        };
        for g in &p.generators {
            doc.add_curve(g)?;
        }
        for (name, w) in &p.relators {
            doc.add_word(name, w)?;
        }
        doc.presentation = Some(PresentationRecord {
            gens: p.generators.iter().map(|g| g.name.clone()).collect(),
            relators: p.relators.iter().map(|(n, _)| n.clone()).collect(),
        });
        Ok(doc)
    }

    pub fn from_plan(plan: &HandlePlan3) -> Result<Self> {
        let mut doc = Self::from_presentation(&plan.presentation)?;
        doc.plan = Some(PlanRecord {
            disks: plan.disks,
            steps: plan.steps.clone(),
        });
        Ok(doc)
    }
}
