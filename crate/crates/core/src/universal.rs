//! Universal fibration data built from a finite presentation of the mapping
//! class group: the 2-dimensional handle data, the `lambda` generators, and
//! the symbolic 3-dimensional handle plan.

use std::fmt;

use crate::cobordism::{eta_class, invariant_image_lattice, sigma_class, CobordismClass, ImageLattice};
use crate::error::{Error, Result};
use crate::fibration::FibrationData;
use crate::mcg::{validate_presentation, Presentation, TwistWord};
use crate::surfaces::{CurveClass, Pi1Kind};
use crate::verdict::{Evidence, Verdict};

/// `B^4` with one critical disk per generator and one 2-handle per relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalData2 {
    pub presentation: Presentation,
    pub critical_disks: usize,
    pub relator_loops: Vec<(String, TwistWord)>,
    pub framings: Vec<i64>,
    /// Fiber sum with torus bundles so that the structure monodromy is onto.
    pub torus_amendment: bool,
    pub h2_rank: usize,
}

fn checked_presentation(p: &Presentation) -> Result<()> {
    p.fiber.require_homology()?;
    let report = validate_presentation(p);
    if !report.passed() {
        return Err(Error::InvalidPresentation(report.failures().join("; ")));
    }
    Ok(())
}

pub fn build_universal_dim2(p: &Presentation) -> Result<UniversalData2> {
    checked_presentation(p)?;
    let l = p.relators.len();
    Ok(UniversalData2 {
        presentation: p.clone(),
        critical_disks: p.generators.len(),
        relator_loops: p.relators.clone(),
        framings: vec![0; l],
        torus_amendment: p.fiber.pi1_kind() == Pi1Kind::Torus,
        h2_rank: l,
    })
}

/// One line of a universality report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub key: &'static str,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniversalityReport {
    pub conditions: Vec<Condition>,
}

impl UniversalityReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.verdict.is_ok())
    }

    pub fn get(&self, key: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.key == key)
    }

    fn push(&mut self, key: &'static str, verdict: Verdict, evidence: Evidence) {
        self.conditions.push(Condition { key, verdict, evidence });
    }
}

fn vanishing_cycle_condition(curves: &[CurveClass]) -> Verdict {
    // With b <= 1 all essential nonseparating curves form one class, so one
    // such generator already hits every class.
    Verdict::from_bool(curves.iter().any(|c| !c.separating && c.is_essential()), || {
        "no nonseparating generator curve".into()
    })
}

fn structure_condition(kind: Pi1Kind, amended: bool) -> Verdict {
    match kind {
        Pi1Kind::Trivial => Verdict::NotApplicable,
        _ => Verdict::from_bool(amended, || "structure monodromy misses Pi_1(F)".into()),
    }
}

pub fn universality_report_dim2(u: &UniversalData2) -> UniversalityReport {
    let mut r = UniversalityReport::default();
    r.push("bundle_isomorphism", Verdict::Pass, Evidence::VerifiedByConstruction);
    r.push(
        "lefschetz_surjective",
        Verdict::from_bool(u.critical_disks > 0, || "no generators".into()),
        Evidence::Declared,
    );
    r.push(
        "structure_surjective",
        structure_condition(u.presentation.fiber.pi1_kind(), u.torus_amendment),
        Evidence::VerifiedByConstruction,
    );
    r.push(
        "vanishing_cycles",
        vanishing_cycle_condition(&u.presentation.generators),
        Evidence::HomologicallyConsistent,
    );
    r
}

/// The fibration over `S^2` read off the `i`-th relator (1-based).
pub fn lambda_generator(u: &UniversalData2, i: usize) -> Result<FibrationData> {
    let (_, word) = i
        .checked_sub(1)
        .and_then(|k| u.relator_loops.get(k))
        .ok_or(Error::IndexOutOfRange {
            index: i,
            len: u.relator_loops.len(),
        })?;
    Ok(FibrationData::over_sphere(u.presentation.fiber, word.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageRow {
    pub relator: String,
    pub sigma: i64,
    pub eta: i64,
}

/// Per-relator `(sigma, eta)` and the subgroup of `Z^2` they generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageReport {
    pub rows: Vec<ImageRow>,
    pub lattice: ImageLattice,
}

pub fn cobordism_image_report(u: &UniversalData2) -> Result<ImageReport> {
    let mut rows = Vec::with_capacity(u.relator_loops.len());
    let mut classes = Vec::with_capacity(u.relator_loops.len());
    for (i, (name, _)) in u.relator_loops.iter().enumerate() {
        let class = CobordismClass::of(lambda_generator(u, i + 1)?)?;
        rows.push(ImageRow {
            relator: name.clone(),
            sigma: sigma_class(&class)?,
            eta: eta_class(&class)?,
        });
        classes.push(class);
    }
    Ok(ImageReport {
        rows,
        lattice: invariant_image_lattice(&classes)?,
    })
}

/// One step of the 3-dimensional handle plan. Disks are numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanStep {
    Band(usize, usize),
    OneHandle(String),
    TwoHandle(String),
    FibersumTorusBundle(usize),
    ThreeHandle(String),
}

impl fmt::Display for PlanStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanStep::Band(i, j) => write!(f, "band {i} {j}"),
            PlanStep::OneHandle(l) => write!(f, "one_handle {l}"),
            PlanStep::TwoHandle(w) => write!(f, "two_handle {w}"),
            PlanStep::FibersumTorusBundle(i) => write!(f, "fibersum_torus_bundle {i}"),
            PlanStep::ThreeHandle(s) => write!(f, "three_handle {s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandlePlan3 {
    pub presentation: Presentation,
    pub disks: usize,
    pub steps: Vec<PlanStep>,
}

impl HandlePlan3 {
    /// Appends 3-handles along declared spheres.
    pub fn with_three_handles(mut self, spheres: &[String]) -> Self {
        self.steps.extend(spheres.iter().cloned().map(PlanStep::ThreeHandle));
        self
    }

    pub fn count(&self, pred: impl Fn(&PlanStep) -> bool) -> usize {
        self.steps.iter().filter(|s| pred(s)).count()
    }
}

/// Bands joining consecutive critical disks, then one 1-handle per marked
/// generator, then 2-handles along the relators (the declared kernel
/// generators), then two torus-bundle fiber sums when the fiber is a torus.
pub fn build_universal_dim3_plan(p: &Presentation, marked_generators: &[String]) -> Result<HandlePlan3> {
    checked_presentation(p)?;
    if marked_generators.is_empty() {
        return Err(Error::InvalidArgument("no marked mapping class generators".into()));
    }
    let k = p.generators.len();
    let mut steps: Vec<PlanStep> = (1..k).map(|i| PlanStep::Band(i, i + 1)).collect();
    steps.extend(marked_generators.iter().cloned().map(PlanStep::OneHandle));
    steps.extend(p.relators.iter().map(|(name, _)| PlanStep::TwoHandle(name.clone())));
    if p.fiber.pi1_kind() == Pi1Kind::Torus {
        steps.extend([PlanStep::FibersumTorusBundle(1), PlanStep::FibersumTorusBundle(2)]);
    }
    Ok(HandlePlan3 {
        presentation: p.clone(),
        disks: k,
        steps,
    })
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = x;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

/// Whether the bands placed before the first 1-handle join all disks.
fn critical_image_connected(plan: &HandlePlan3) -> Verdict {
    let k = plan.disks;
    if k == 0 {
        return Verdict::fail("no critical disks");
    }
    let mut parent: Vec<usize> = (0..k).collect();
    let mut components = k;
    for step in &plan.steps {
        match step {
            PlanStep::OneHandle(_) => break,
            PlanStep::Band(i, j) => {
                if !(1..=k).contains(i) || !(1..=k).contains(j) {
                    return Verdict::fail(format!("band {i} {j} names a missing disk"));
                }
                let (a, b) = (find(&mut parent, i - 1), find(&mut parent, j - 1));
                if a != b {
                    parent[a] = b;
                    components -= 1;
                }
            }
            _ => {}
        }
    }
    Verdict::from_bool(components == 1, || {
        format!("critical image has {components} components before the 1-handles")
    })
}

pub fn universality_report_dim3(plan: &HandlePlan3) -> UniversalityReport {
    let mut r = UniversalityReport::default();
    r.push("bundle_isomorphism", Verdict::Pass, Evidence::VerifiedByConstruction);
    r.push(
        "lefschetz_surjective",
        Verdict::from_bool(plan.disks > 0, || "no generators".into()),
        Evidence::Declared,
    );
    r.push(
        "singular_surjective",
        Verdict::from_bool(plan.count(|s| matches!(s, PlanStep::OneHandle(_))) > 0, || {
            "no 1-handles for the marked mapping class group".into()
        }),
        Evidence::Declared,
    );
    let torus_sums = plan.count(|s| matches!(s, PlanStep::FibersumTorusBundle(_)));
    r.push(
        "structure_surjective",
        structure_condition(plan.presentation.fiber.pi1_kind(), torus_sums == 2),
        Evidence::VerifiedByConstruction,
    );
    r.push(
        "vanishing_cycles",
        vanishing_cycle_condition(&plan.presentation.generators),
        Evidence::HomologicallyConsistent,
    );
    r.push("critical_image_connected", critical_image_connected(plan), Evidence::VerifiedByConstruction);
    r
}
