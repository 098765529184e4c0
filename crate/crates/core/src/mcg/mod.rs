//! Words in signed Dehn twists and their symplectic images.
//!
//! A positive twist about `c` acts on homology by the transvection
//! `x -> x + <x, c> c`. Words are evaluated left to right: the matrix of
//! `w = l1 l2 ... lk` is `M(l1) M(l2) ... M(lk)`. Under this convention the
//! word `u t_c u^-1` evaluates to the transvection about `M(u) c`.

mod relations;

pub use relations::{chain_curves, relation_library, RelationName};

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{symplectic_form, IntMatrix};
use crate::surfaces::{CurveClass, FiberSurface, HomologyClass};
use crate::verdict::Verdict;

/// Sign of a Dehn twist (and of the corresponding critical point).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// A Dehn twist about a curve, with a sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedTwist {
    pub curve: CurveClass,
    pub sign: Sign,
}

impl SignedTwist {
    pub fn new(curve: CurveClass, sign: Sign) -> Self {
        Self { curve, sign }
    }

    pub fn positive(curve: CurveClass) -> Self {
        Self::new(curve, Sign::Positive)
    }

    pub fn negative(curve: CurveClass) -> Self {
        Self::new(curve, Sign::Negative)
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.curve.clone(), self.sign.flipped())
    }

    pub fn rank(&self) -> usize {
        self.curve.homology.rank()
    }

    /// Same class, same separating flag and same sign; names ignored.
    pub fn same_twist(&self, other: &Self) -> bool {
        self.sign == other.sign && self.curve.same_class(&other.curve)
    }

    /// True when `self other` is a cancelling pair `t t^-1`.
    pub fn cancels(&self, other: &Self) -> bool {
        self.sign != other.sign
            && self.curve.name == other.curve.name
            && self.curve.same_class(&other.curve)
    }
}

impl fmt::Display for SignedTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Positive => write!(f, "{}", self.curve.name),
            Sign::Negative => write!(f, "{}^-1", self.curve.name),
        }
    }
}

/// A finite word in signed Dehn twists.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TwistWord {
    letters: Vec<SignedTwist>,
}

impl TwistWord {
    pub fn new(letters: Vec<SignedTwist>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[SignedTwist] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<SignedTwist> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: SignedTwist) {
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    pub fn power(&self, n: usize) -> Self {
        Self {
            letters: self.letters.iter().cycle().take(self.len() * n).cloned().collect(),
        }
    }

    /// Reversed order, flipped signs.
    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(SignedTwist::inverse).collect(),
        }
    }

    /// Removes adjacent cancelling pairs until none remain.
    pub fn freely_reduced(&self) -> Self {
        let mut out: Vec<SignedTwist> = Vec::with_capacity(self.len());
        for l in &self.letters {
            if out.last().is_some_and(|last| last.cancels(l)) {
                out.pop();
            } else {
                out.push(l.clone());
            }
        }
        Self { letters: out }
    }

    /// `(n+, n-)`: counts of positive and negative letters.
    pub fn sign_counts(&self) -> (usize, usize) {
        let pos = self.letters.iter().filter(|l| l.sign == Sign::Positive).count();
        (pos, self.len() - pos)
    }

    /// Symplectic image on the given fiber.
    pub fn matrix(&self, fiber: FiberSurface) -> Result<SymplecticMatrix> {
        word_to_matrix(fiber, self)
    }

    /// The word `h w h^-1` at the level of letters: every curve is moved by
    /// the symplectic image of `h`.
    pub fn conjugated_by(&self, h: &SymplecticMatrix) -> Result<Self> {
        self.letters
            .iter()
            .map(|l| conjugate_letter(l, h))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl FromIterator<SignedTwist> for TwistWord {
    fn from_iter<I: IntoIterator<Item = SignedTwist>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A `2g x 2g` integer matrix `M` with `M^T J M = J`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix(IntMatrix);

impl SymplecticMatrix {
    pub fn identity(genus: usize) -> Self {
        Self(IntMatrix::identity(2 * genus))
    }

    /// Checks the symplectic condition.
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() % 2 != 0 {
            return Err(Error::NotSymplectic);
        }
        let j = symplectic_form(m.rows() / 2);
        if &(&m.transpose() * &j) * &m != j {
            return Err(Error::NotSymplectic);
        }
        Ok(Self(m))
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn genus(&self) -> usize {
        self.0.rows() / 2
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn is_symplectic(&self) -> bool {
        let j = symplectic_form(self.genus());
        &(&self.0.transpose() * &j) * &self.0 == j
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    /// `M^-1 = -J M^T J`.
    pub fn inverse(&self) -> Self {
        let j = symplectic_form(self.genus());
        Self((&(&j * &self.0.transpose()) * &j).neg())
    }

    pub fn apply(&self, x: &HomologyClass) -> Result<HomologyClass> {
        if x.rank() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.rank(),
            });
        }
        Ok(HomologyClass::new(self.0.apply(x.coords())))
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::identity(self.genus()), |acc, _| acc.mul(self))
    }
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sp{:?}", self.0)
    }
}

/// Matrix of `x -> x + sign <x, c> c`.
pub fn transvection_matrix(twist: &SignedTwist) -> SymplecticMatrix {
    let c = twist.curve.homology.coords();
    let n = c.len();
    if twist.curve.homology.is_zero() {
        log::debug!(
            "twist about `{}` is homologically trivial; its transvection is the identity",
            twist.curve.name
        );
    }
    // <x, c> = sum_k x_k (J c)_k, so column k of the update is (J c)_k * c.
    let j = symplectic_form(n / 2);
    let jc = j.apply(c);
    let s = BigInt::from(twist.sign.value());
    let mut m = IntMatrix::identity(n);
    for r in 0..n {
        if c[r].is_zero() {
            continue;
        }
        for k in 0..n {
            let delta = &s * &c[r] * &jc[k];
            let v = m.get(r, k) + delta;
            m.set(r, k, v);
        }
    }
    SymplecticMatrix(m)
}

/// Ordered product of the letters' transvections; the empty word gives `I`.
pub fn word_to_matrix(fiber: FiberSurface, word: &TwistWord) -> Result<SymplecticMatrix> {
    fiber.require_homology()?;
    let rank = fiber.homology_rank();
    if word.letters.iter().any(|l| l.rank() != rank) {
        return Err(Error::MixedFibers);
    }
    Ok(word
        .letters
        .iter()
        .fold(SymplecticMatrix::identity(fiber.genus as usize), |acc, l| {
            acc.mul(&transvection_matrix(l))
        }))
}

/// Name used for curves produced by moves: `c` followed by the normalized
/// coordinates, `m` marking a minus sign (`c1_m1` is `(1,-1)`).
pub fn derived_curve_name(homology: &HomologyClass) -> String {
    let parts: Vec<String> = homology
        .coords()
        .iter()
        .map(|x| {
            let s = x.to_string();
            s.strip_prefix('-').map_or(s.clone(), |rest| format!("m{rest}"))
        })
        .collect();
    format!("c{}", parts.join("_"))
}

/// The letter `h t h^-1`: a twist of the same sign about `M(h) c`, stored with
/// its normalized class. Fixed classes keep their curve (and name).
pub fn conjugate_letter(letter: &SignedTwist, h: &SymplecticMatrix) -> Result<SignedTwist> {
    let moved = h.apply(&letter.curve.homology)?;
    if moved.same_up_to_sign(&letter.curve.homology) {
        return Ok(letter.clone());
    }
    let moved = moved.normalized();
    let name = derived_curve_name(&moved);
    Ok(SignedTwist::new(CurveClass::from_homology(name, moved), letter.sign))
}

/// A finite presentation by positive twists about named curves, with relator
/// words in those generators (negative letters allowed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub fiber: FiberSurface,
    pub generators: Vec<CurveClass>,
    pub relators: Vec<(String, TwistWord)>,
}

impl Presentation {
    pub fn new(
        fiber: FiberSurface,
        generators: Vec<CurveClass>,
        relators: Vec<(String, TwistWord)>,
    ) -> Self {
        Self {
            fiber,
            generators,
            relators,
        }
    }

    pub fn generator_twists(&self) -> Vec<SignedTwist> {
        self.generators.iter().cloned().map(SignedTwist::positive).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    pub generators: Vec<(String, Verdict)>,
    pub relators: Vec<(String, Verdict)>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.generators.iter().chain(&self.relators).all(|(_, v)| v.is_pass())
    }

    pub fn failures(&self) -> Vec<String> {
        self.generators
            .iter()
            .chain(&self.relators)
            .filter_map(|(n, v)| match v {
                Verdict::Fail(r) => Some(format!("{n}: {r}")),
                _ => None,
            })
            .collect()
    }
}

/// Checks that every generator is a nonseparating curve and that every
/// relator is trivial in the symplectic quotient (necessary, not sufficient).
pub fn validate_presentation(p: &Presentation) -> PresentationReport {
    let rank = p.fiber.homology_rank();
    let generators = p
        .generators
        .iter()
        .map(|c| {
            let v = if c.homology.rank() != rank {
                Verdict::fail(format!("rank {} on a fiber of rank {rank}", c.homology.rank()))
            } else if c.separating || !c.is_essential() {
                Verdict::fail("generator curve is separating")
            } else {
                Verdict::Pass
            };
            (c.name.clone(), v)
        })
        .collect();
    let relators = p
        .relators
        .iter()
        .map(|(name, w)| {
            let v = if let Some(bad) = w
                .letters()
                .iter()
                .find(|l| !p.generators.iter().any(|g| g.name == l.curve.name && g.same_class(&l.curve)))
            {
                Verdict::fail(format!("letter `{}` is not a generator", bad.curve.name))
            } else {
                match word_to_matrix(p.fiber, w) {
                    Ok(m) if m.is_identity() => Verdict::Pass,
                    Ok(_) => Verdict::fail("symplectic image is not the identity"),
                    Err(e) => Verdict::fail(e.to_string()),
                }
            };
            (name.clone(), v)
        })
        .collect();
    PresentationReport {
        generators,
        relators,
    }
}

/// `true` when the transvection of `twist` is the identity, i.e. the curve is
/// homologically trivial.
pub fn acts_trivially(twist: &SignedTwist) -> bool {
    twist.curve.homology.is_zero() || transvection_matrix(twist).matrix().is_identity()
}
