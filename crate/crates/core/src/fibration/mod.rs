//! Lefschetz fibrations over surfaces, encoded by their monodromy sequence.
//!
//! For a base `S = S_{h,d}` the fundamental group of `S` minus the critical
//! values is generated by meridians `xi_1..xi_n`, pairs `alpha_j, beta_j` and
//! boundary loops `d_1..d_d`, subject to
//!
//! ```text
//! xi_1 ... xi_n [alpha_1, beta_1] ... [alpha_h, beta_h] d_1 ... d_d = 1
//! ```
//!
//! The last boundary loop is redundant, so a datum stores the Lefschetz word
//! `delta_i = omega(xi_i)`, then `2h` bundle words for the pairs and `d - 1`
//! words for the remaining boundary loops. Over a closed base the product of
//! the Lefschetz word with the commutators must be trivial.

mod cover;
mod moves;

pub use cover::{pullback_cover, BaseGenerator, CoverAssignment, CoverComponent, FreeLetter, FreeWord};
pub use moves::{fiber_sum, HurwitzDirection};

use crate::error::{Error, Result};
use crate::mcg::{word_to_matrix, SymplecticMatrix, TwistWord};
use crate::surfaces::{CurveClass, FiberSurface, StructureTwist};
use crate::verdict::Verdict;

/// The base surface `S_{h,d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseSurface {
    pub genus: u32,
    pub boundary_count: u32,
}

impl BaseSurface {
    pub const fn new(genus: u32, boundary_count: u32) -> Self {
        Self {
            genus,
            boundary_count,
        }
    }

    pub const fn sphere() -> Self {
        Self::new(0, 0)
    }

    pub const fn disk() -> Self {
        Self::new(0, 1)
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_count == 0
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - i64::from(self.boundary_count)
    }

    /// Number of bundle words a datum over this base carries.
    pub fn bundle_word_count(&self) -> usize {
        2 * self.genus as usize + self.boundary_count.saturating_sub(1) as usize
    }
}

/// The combinatorial datum of a Lefschetz fibration over a surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FibrationData {
    pub fiber: FiberSurface,
    pub base: BaseSurface,
    /// Monodromies of the meridians, one signed twist per critical value.
    pub lefschetz: TwistWord,
    /// `alpha_1, beta_1, ..., alpha_h, beta_h`, then boundary loops `d_1..d_{d-1}`.
    pub bundle: Vec<TwistWord>,
    pub structure_twist: StructureTwist,
    /// Input declares the Lefschetz monodromy surjective.
    pub surjective: bool,
}

impl FibrationData {
    pub fn new(fiber: FiberSurface, base: BaseSurface, lefschetz: TwistWord, bundle: Vec<TwistWord>) -> Self {
        Self {
            fiber,
            base,
            lefschetz,
            bundle,
            structure_twist: StructureTwist::zero_for(fiber),
            surjective: false,
        }
    }

    /// Fibration over `S^2` with the given Lefschetz word.
    pub fn over_sphere(fiber: FiberSurface, lefschetz: TwistWord) -> Self {
        Self::new(fiber, BaseSurface::sphere(), lefschetz, Vec::new())
    }

    /// The product `S x F`.
    pub fn trivial_bundle(fiber: FiberSurface, base: BaseSurface) -> Self {
        Self::new(fiber, base, TwistWord::empty(), vec![TwistWord::empty(); base.bundle_word_count()])
    }

    pub fn with_surjective(mut self, surjective: bool) -> Self {
        self.surjective = surjective;
        self
    }

    pub fn with_structure_twist(mut self, twist: StructureTwist) -> Self {
        self.structure_twist = twist;
        self
    }

    pub fn critical_count(&self) -> usize {
        self.lefschetz.len()
    }

    /// `alpha_j`, zero-based.
    pub fn alpha(&self, j: usize) -> Option<&TwistWord> {
        (j < self.base.genus as usize).then(|| &self.bundle[2 * j])
    }

    /// `beta_j`, zero-based.
    pub fn beta(&self, j: usize) -> Option<&TwistWord> {
        (j < self.base.genus as usize).then(|| &self.bundle[2 * j + 1])
    }

    /// `[alpha_1, beta_1] ... [alpha_h, beta_h]` spelled out letter by letter.
    pub fn commutator_word(&self) -> TwistWord {
        let mut w = TwistWord::empty();
        for j in 0..self.base.genus as usize {
            let (a, b) = (&self.bundle[2 * j], &self.bundle[2 * j + 1]);
            w = w.concat(a).concat(b).concat(&a.inverse()).concat(&b.inverse());
        }
        w
    }

    /// Lefschetz letters followed by the commutator letters.
    pub fn closure_word(&self) -> TwistWord {
        self.lefschetz.concat(&self.commutator_word())
    }

    pub fn closure_matrix(&self) -> Result<SymplecticMatrix> {
        word_to_matrix(self.fiber, &self.closure_word())
    }

    /// Letters match up to curve labels.
    pub fn same_monodromy(&self, other: &Self) -> bool {
        fn same_word(x: &TwistWord, y: &TwistWord) -> bool {
            x.len() == y.len()
                && x.letters().iter().zip(y.letters()).all(|(p, q)| p.same_twist(q))
        }
        self.fiber == other.fiber
            && self.base == other.base
            && self.structure_twist == other.structure_twist
            && same_word(&self.lefschetz, &other.lefschetz)
            && self.bundle.len() == other.bundle.len()
            && self.bundle.iter().zip(&other.bundle).all(|(x, y)| same_word(x, y))
    }

    fn check_shape(&self) -> Result<()> {
        if self.bundle.len() != self.base.bundle_word_count() {
            return Err(Error::InvalidFibration(format!(
                "base S_{{{},{}}} needs {} bundle words, found {}",
                self.base.genus,
                self.base.boundary_count,
                self.base.bundle_word_count(),
                self.bundle.len()
            )));
        }
        Ok(())
    }
}

/// Per-check verdicts of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub shape: Verdict,
    pub admissible_fiber: Verdict,
    pub allowability: Verdict,
    pub closure: Verdict,
    pub structure_twist: Verdict,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.entries().iter().all(|(_, v)| v.is_ok())
    }

    pub fn entries(&self) -> [(&'static str, &Verdict); 5] {
        [
            ("shape", &self.shape),
            ("fiber", &self.admissible_fiber),
            ("allowability", &self.allowability),
            ("closure", &self.closure),
            ("structure_twist", &self.structure_twist),
        ]
    }
}

/// Checks allowability (every vanishing cycle homologically essential),
/// the closure condition over a closed base (symplectic level only), and that
/// the structure twist lives in `Pi_1` of the fiber.
pub fn validate(f: &FibrationData) -> ValidationReport {
    let shape = Verdict::from_bool(f.check_shape().is_ok(), || {
        f.check_shape().unwrap_err().to_string()
    });
    let admissible_fiber = Verdict::from_bool(f.fiber.is_admissible(), || {
        format!("{} is a sphere or a disk", f.fiber)
    });

    let rank = f.fiber.homology_rank();
    let all_words = || std::iter::once(&f.lefschetz).chain(&f.bundle);
    let ranks_ok = all_words().all(|w| w.letters().iter().all(|l| l.rank() == rank));

    let allowability = if !f.fiber.has_homology() {
        if f.lefschetz.is_empty() {
            Verdict::NotApplicable
        } else {
            Verdict::fail(format!("no homology model for {}", f.fiber))
        }
    } else if !ranks_ok {
        Verdict::fail("letters do not match the fiber's homology rank")
    } else {
        let bad: Vec<String> = f
            .lefschetz
            .letters()
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.curve.is_essential())
            .map(|(i, l)| format!("{}@{}", l.curve.name, i + 1))
            .collect();
        Verdict::from_bool(bad.is_empty(), || {
            format!("homologically inessential vanishing cycles: {}", bad.join(","))
        })
    };

    let closure = if !f.base.is_closed() {
        Verdict::NotApplicable
    } else if !f.fiber.has_homology() || !ranks_ok || !shape.is_pass() {
        if f.lefschetz.is_empty() && f.bundle.iter().all(TwistWord::is_empty) {
            Verdict::Pass
        } else {
            Verdict::fail("closure cannot be evaluated")
        }
    } else {
        match f.closure_matrix() {
            Ok(m) if m.is_identity() => Verdict::Pass,
            Ok(_) => Verdict::fail("total monodromy is not the identity in Sp"),
            Err(e) => Verdict::fail(e.to_string()),
        }
    };

    let structure_twist = if f.structure_twist.kind() != f.fiber.pi1_kind() {
        Verdict::fail("structure twist does not live in Pi_1 of the fiber")
    } else {
        Verdict::Pass
    };

    ValidationReport {
        shape,
        admissible_fiber,
        allowability,
        closure,
        structure_twist,
    }
}

/// `(n+, n-)`.
pub fn critical_counts(f: &FibrationData) -> (usize, usize) {
    f.lefschetz.sign_counts()
}

/// `chi(base) chi(fiber) + n`.
pub fn euler_characteristic(f: &FibrationData) -> i64 {
    f.base.euler_characteristic() * f.fiber.euler_characteristic() + f.critical_count() as i64
}

/// The datum of `-f`: the Lefschetz word is reversed with signs flipped, each
/// pair `(alpha_j, beta_j)` becomes `(beta_j, alpha_j)` with the pairs in
/// reverse order (so the commutator product is inverted), boundary words are
/// inverted in reverse order, and the structure twist is negated.
pub fn reverse_orientation(f: &FibrationData) -> FibrationData {
    let h = f.base.genus as usize;
    let mut bundle = Vec::with_capacity(f.bundle.len());
    for j in (0..h).rev() {
        bundle.push(f.bundle[2 * j + 1].clone());
        bundle.push(f.bundle[2 * j].clone());
    }
    bundle.extend(f.bundle.iter().skip(2 * h).rev().map(TwistWord::inverse));
    FibrationData {
        fiber: f.fiber,
        base: f.base,
        lefschetz: f.lefschetz.inverse(),
        bundle,
        structure_twist: f.structure_twist.negated(),
        surjective: f.surjective,
    }
}

/// Twisting by `psi` in `Pi_1(F)`; only exceptional fibers admit `psi != 0`.
pub fn twist(f: &FibrationData, psi: &StructureTwist) -> Result<FibrationData> {
    if psi.is_zero() && psi.kind() == f.structure_twist.kind() {
        return Ok(f.clone());
    }
    if !f.fiber.is_exceptional() {
        return Err(Error::NonExceptionalTwist);
    }
    let mut out = f.clone();
    out.structure_twist = f.structure_twist.add(psi)?;
    Ok(out)
}

/// Twisting is invisible up to equivalence once the Lefschetz monodromy is
/// surjective, so a declared-surjective datum gets its twist reset.
pub fn twist_normalize(f: &FibrationData) -> FibrationData {
    if f.surjective && !f.lefschetz.is_empty() {
        let mut out = f.clone();
        out.structure_twist = StructureTwist::zero(f.structure_twist.kind());
        out
    } else {
        f.clone()
    }
}

/// Declared singular monodromy along one critical component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularMonodromyData {
    pub component: usize,
    pub vanishing_cycle: CurveClass,
    pub images: Vec<TwistWord>,
}

/// Passes iff every image fixes the vanishing cycle's class up to sign.
pub fn singular_compatibility_check(fiber: FiberSurface, s: &SingularMonodromyData) -> Result<Verdict> {
    for (k, w) in s.images.iter().enumerate() {
        let m = word_to_matrix(fiber, w)?;
        let moved = m.apply(&s.vanishing_cycle.homology)?;
        if !moved.same_up_to_sign(&s.vanishing_cycle.homology) {
            return Ok(Verdict::fail(format!(
                "image {} sends [{}] = ({}) to ({})",
                k + 1,
                s.vanishing_cycle.name,
                s.vanishing_cycle.homology,
                moved
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// `eta = n+ - n-`.
pub fn eta(f: &FibrationData) -> i64 {
    let (p, m) = critical_counts(f);
    p as i64 - m as i64
}

#[cfg(test)]
mod tests;
