//! Fiber surfaces, their first homology, and curve classes.
//!
//! Homology is only modelled for `b <= 1`. For `b = 1` the boundary is capped
//! off, so `H_1(F_{g,1})` is identified with `H_1(F_{g,0}) = Z^{2g}` in the
//! basis `a1, b1, ..., ag, bg`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{content, symplectic_form};

/// The oriented surface `F_{g,b}` of genus `g` with `b` boundary components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiberSurface {
    pub genus: u32,
    pub boundary_count: u32,
}

impl FiberSurface {
    pub const fn new(genus: u32, boundary_count: u32) -> Self {
        Self {
            genus,
            boundary_count,
        }
    }

    pub const fn closed(genus: u32) -> Self {
        Self::new(genus, 0)
    }

    pub const fn torus() -> Self {
        Self::new(1, 0)
    }

    /// Sphere and disk are not allowed as fibers.
    pub fn is_admissible(&self) -> bool {
        !matches!((self.genus, self.boundary_count), (0, 0) | (0, 1))
    }

    pub fn has_homology(&self) -> bool {
        self.boundary_count <= 1
    }

    /// Rank of the (capped) first homology, `2g`.
    pub fn homology_rank(&self) -> usize {
        2 * self.genus as usize
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - i64::from(self.boundary_count)
    }

    pub fn is_exceptional(&self) -> bool {
        is_exceptional(*self)
    }

    pub fn pi1_kind(&self) -> Pi1Kind {
        match (self.genus, self.boundary_count) {
            (1, 0) => Pi1Kind::Torus,
            (0, 2) => Pi1Kind::Annulus,
            _ => Pi1Kind::Trivial,
        }
    }

    pub(crate) fn require_homology(&self) -> Result<()> {
        if self.has_homology() {
            Ok(())
        } else {
            Err(Error::NoHomology {
                genus: self.genus,
                boundary: self.boundary_count,
            })
        }
    }
}

impl fmt::Display for FiberSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{},{}}}", self.genus, self.boundary_count)
    }
}

/// True exactly for `(g, b)` in `{(0,0), (0,1), (0,2), (1,0)}`, the surfaces
/// with `pi_1(Diff(F), id) != 0`.
pub fn is_exceptional(fiber: FiberSurface) -> bool {
    matches!(
        (fiber.genus, fiber.boundary_count),
        (0, 0) | (0, 1) | (0, 2) | (1, 0)
    )
}

/// Number of classes of homologically essential curves up to diffeomorphism.
/// Only known (and equal to one) for `b <= 1`.
pub fn essential_curve_class_count(fiber: FiberSurface) -> Option<u32> {
    fiber.has_homology().then_some(1)
}

/// An integral class in `H_1(F)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomologyClass(Vec<BigInt>);

impl HomologyClass {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![BigInt::zero(); rank])
    }

    /// The `i`-th standard basis vector of `Z^rank`.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::one();
        v
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Classes of simple closed curves are primitive or zero.
    pub fn is_primitive(&self) -> bool {
        content(&self.0).is_one()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Representative with positive first nonzero coordinate. A class and its
    /// negative give the same Dehn twist.
    pub fn normalized(&self) -> Self {
        match self.0.iter().find(|x| !x.is_zero()) {
            Some(first) if first.is_negative() => self.negated(),
            _ => self.clone(),
        }
    }

    pub fn same_up_to_sign(&self, other: &Self) -> bool {
        self == other || *self == other.negated()
    }

    /// `<self, other> = self^T J other`.
    pub fn pairing(&self, other: &Self) -> Result<BigInt> {
        intersection_pairing(self, other)
    }
}

impl fmt::Debug for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Algebraic intersection number `x^T J y` for the standard symplectic `J`.
pub fn intersection_pairing(x: &HomologyClass, y: &HomologyClass) -> Result<BigInt> {
    if x.rank() != y.rank() {
        return Err(Error::DimensionMismatch {
            expected: x.rank(),
            found: y.rank(),
        });
    }
    if x.rank() % 2 != 0 {
        return Err(Error::DimensionMismatch {
            expected: x.rank() + 1,
            found: x.rank(),
        });
    }
    // J is block diagonal, so the pairing is a sum over symplectic pairs.
    let pairing = x
        .0
        .chunks(2)
        .zip(y.0.chunks(2))
        .map(|(p, q)| &p[0] * &q[1] - &p[1] * &q[0])
        .sum();
    debug_assert_eq!(pairing, {
        let j = symplectic_form(x.rank() / 2);
        let jy = j.apply(&y.0);
        x.0.iter().zip(&jy).map(|(a, b)| a * b).sum::<BigInt>()
    });
    Ok(pairing)
}

/// A named simple closed curve, recorded by its homology class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveClass {
    pub name: String,
    pub homology: HomologyClass,
    pub separating: bool,
}

impl CurveClass {
    /// Checks `separating <=> homology = 0`.
    pub fn new(name: impl Into<String>, homology: HomologyClass, separating: bool) -> Result<Self> {
        let name = name.into();
        if separating != homology.is_zero() {
            return Err(Error::InconsistentCurve { name });
        }
        Ok(Self {
            name,
            homology,
            separating,
        })
    }

    /// Curve with the given class; the separating flag is inferred.
    pub fn from_homology(name: impl Into<String>, homology: HomologyClass) -> Self {
        let separating = homology.is_zero();
        Self {
            name: name.into(),
            homology,
            separating,
        }
    }

    /// Convenience for tests and fixtures.
    pub fn with_coords(name: impl Into<String>, coords: &[i64]) -> Self {
        Self::from_homology(name, HomologyClass::from_i64s(coords))
    }

    pub fn separating(name: impl Into<String>, rank: usize) -> Self {
        Self::from_homology(name, HomologyClass::zero(rank))
    }

    pub fn is_essential(&self) -> bool {
        !self.homology.is_zero()
    }

    /// Same class up to sign and the same separating flag; names are labels.
    pub fn same_class(&self, other: &Self) -> bool {
        self.separating == other.separating && self.homology.same_up_to_sign(&other.homology)
    }
}

/// Result of surgering a fiber along a curve: the curve is cut out and the two
/// resulting boundary circles are capped by disks with marked centers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MarkedSurface {
    pub genus: u32,
    pub boundary_count: u32,
    pub marked_points: u32,
    pub components: u32,
}

/// Surgery along a nonseparating curve: `F_{g,b}` becomes a connected
/// `F_{g-1,b}` with two marked points.
pub fn surger(fiber: FiberSurface, curve: &CurveClass) -> Result<MarkedSurface> {
    fiber.require_homology()?;
    if curve.homology.rank() != fiber.homology_rank() {
        return Err(Error::DimensionMismatch {
            expected: fiber.homology_rank(),
            found: curve.homology.rank(),
        });
    }
    if curve.separating || !curve.is_essential() {
        return Err(Error::UnsupportedCurve(curve.name.clone()));
    }
    debug_assert!(fiber.genus >= 1, "nonzero class forces positive genus");
    Ok(MarkedSurface {
        genus: fiber.genus - 1,
        boundary_count: fiber.boundary_count,
        marked_points: 2,
        components: 1,
    })
}

/// Which group `Pi_1(F) = pi_1(Diff(F), id)` is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pi1Kind {
    Trivial,
    /// `Z`, for the annulus.
    Annulus,
    /// `Z^2`, for the torus.
    Torus,
}

impl Pi1Kind {
    pub fn rank(self) -> usize {
        match self {
            Pi1Kind::Trivial => 0,
            Pi1Kind::Annulus => 1,
            Pi1Kind::Torus => 2,
        }
    }
}

/// An element of `Pi_1(F)`, used as structure-twist bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureTwist {
    kind: Pi1Kind,
    coords: Vec<i64>,
}

impl StructureTwist {
    pub fn zero(kind: Pi1Kind) -> Self {
        Self {
            kind,
            coords: vec![0; kind.rank()],
        }
    }

    pub fn zero_for(fiber: FiberSurface) -> Self {
        Self::zero(fiber.pi1_kind())
    }

    pub fn new(kind: Pi1Kind, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != kind.rank() {
            return Err(Error::TwistRankMismatch {
                expected: kind.rank(),
                found: coords.len(),
            });
        }
        Ok(Self { kind, coords })
    }

    pub fn kind(&self) -> Pi1Kind {
        self.kind
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.kind != other.kind {
            return Err(Error::TwistRankMismatch {
                expected: self.kind.rank(),
                found: other.kind.rank(),
            });
        }
        Ok(Self {
            kind: self.kind,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn negated(&self) -> Self {
        Self {
            kind: self.kind,
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}
