//! Lefschetz cobordism classes as lists of representatives, the homomorphisms
//! `eta`, `sigma`, `Phi`, and a calculus of class-preserving moves.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fibration::{self, fiber_sum, reverse_orientation, FibrationData, HurwitzDirection};
use crate::meyer::{fibration_signature, parallel_enabled};
use crate::mcg::TwistWord;
use crate::surfaces::CurveClass;

/// A class in `Lambda(g, m)`, represented by a disjoint union of fibrations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismClass {
    pub genus: u32,
    pub dimension: u8,
    pub representatives: Vec<FibrationData>,
}

impl CobordismClass {
    /// Representatives must have fiber `F_{g,0}`; for `m = 2`, closed bases.
    pub fn new(genus: u32, dimension: u8, representatives: Vec<FibrationData>) -> Result<Self> {
        if !(2..=3).contains(&dimension) {
            return Err(Error::InvalidArgument(format!("base dimension {dimension}")));
        }
        for f in &representatives {
            if f.fiber.genus != genus || f.fiber.boundary_count != 0 {
                return Err(Error::FiberMismatch(format!("{} in a genus-{genus} class", f.fiber)));
            }
            if dimension == 2 && !f.base.is_closed() {
                return Err(Error::InvalidArgument("representatives need closed bases".into()));
            }
        }
        Ok(Self {
            genus,
            dimension,
            representatives,
        })
    }

    /// The empty fibration, the zero of `Lambda(g, 2)`.
    pub fn empty(genus: u32) -> Self {
        Self {
            genus,
            dimension: 2,
            representatives: Vec::new(),
        }
    }

    pub fn of(f: FibrationData) -> Result<Self> {
        Self::new(f.fiber.genus, 2, vec![f])
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// `[-f]`, the additive inverse.
    pub fn negated(&self) -> Self {
        Self {
            representatives: self.representatives.iter().map(reverse_orientation).collect(),
            ..self.clone()
        }
    }

    pub fn eta(&self) -> Result<i64> {
        eta_class(self)
    }

    pub fn sigma(&self) -> Result<i64> {
        sigma_class(self)
    }

    fn require_surface_base(&self) -> Result<()> {
        if self.dimension != 2 {
            return Err(Error::Unsupported(format!(
                "invariants of Lambda({}, {})",
                self.genus, self.dimension
            )));
        }
        Ok(())
    }
}

/// Disjoint union.
pub fn class_sum(x: &CobordismClass, y: &CobordismClass) -> Result<CobordismClass> {
    if (x.genus, x.dimension) != (y.genus, y.dimension) {
        return Err(Error::FiberMismatch(format!(
            "Lambda({}, {}) + Lambda({}, {})",
            x.genus, x.dimension, y.genus, y.dimension
        )));
    }
    let mut representatives = x.representatives.clone();
    representatives.extend(y.representatives.iter().cloned());
    Ok(CobordismClass {
        representatives,
        ..x.clone()
    })
}

pub fn eta_class(x: &CobordismClass) -> Result<i64> {
    x.require_surface_base()?;
    Ok(x.representatives.iter().map(fibration::eta).sum())
}

pub fn sigma_class(x: &CobordismClass) -> Result<i64> {
    x.require_surface_base()?;
    let values: Vec<i64> = if parallel_enabled() {
        x.representatives.par_iter().map(fibration_signature).collect::<Result<_>>()?
    } else {
        x.representatives.iter().map(fibration_signature).collect::<Result<_>>()?
    };
    Ok(values.into_iter().sum())
}

/// `Phi = ([V], [M])`: the `Omega_4` part is realized by the signature and the
/// `Omega_2` part vanishes identically.
pub fn forgetful_phi(x: &CobordismClass) -> Result<(i64, i64)> {
    Ok((sigma_class(x)?, 0))
}

/// A move between representatives of the same class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveWitness {
    Hurwitz {
        representative: usize,
        index: usize,
        direction: HurwitzDirection,
    },
    Conjugation {
        representative: usize,
        word: TwistWord,
    },
    CancellingPair {
        representative: usize,
        position: usize,
        curve: CurveClass,
    },
    /// Replaces representatives `first` and `second` by their fiber sum along `gluing`.
    FibersumSplit {
        first: usize,
        second: usize,
        gluing: TwistWord,
    },
    DisjointUnionReorder {
        permutation: Vec<usize>,
    },
}

impl MoveWitness {
    pub fn kind(&self) -> &'static str {
        match self {
            MoveWitness::Hurwitz { .. } => "hurwitz",
            MoveWitness::Conjugation { .. } => "conjugation",
            MoveWitness::CancellingPair { .. } => "cancelling_pair",
            MoveWitness::FibersumSplit { .. } => "fibersum_split",
            MoveWitness::DisjointUnionReorder { .. } => "disjoint_union_reorder",
        }
    }
}

impl fmt::Display for MoveWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind())
    }
}

fn rep(x: &CobordismClass, i: usize) -> Result<&FibrationData> {
    x.representatives.get(i).ok_or(Error::IndexOutOfRange {
        index: i,
        len: x.representatives.len(),
    })
}

fn chi_parity(x: &CobordismClass) -> i64 {
    x.representatives
        .iter()
        .map(fibration::euler_characteristic)
        .sum::<i64>()
        .mod_floor(&2)
}

/// Applies `w` and checks that `sigma`, `eta` and the parity of `chi` are unchanged.
pub fn apply_move(x: &CobordismClass, w: &MoveWitness) -> Result<CobordismClass> {
    let mut reps = x.representatives.clone();
    match w {
        MoveWitness::Hurwitz {
            representative,
            index,
            direction,
        } => {
            reps[*representative] = rep(x, *representative)?.hurwitz_move(*index, *direction)?;
        }
        MoveWitness::Conjugation { representative, word } => {
            reps[*representative] = rep(x, *representative)?.conjugate(word)?;
        }
        MoveWitness::CancellingPair {
            representative,
            position,
            curve,
        } => {
            reps[*representative] = rep(x, *representative)?.insert_cancelling_pair(*position, curve.clone())?;
        }
        MoveWitness::FibersumSplit { first, second, gluing } => {
            if first == second {
                return Err(Error::InvalidArgument("fiber sum of a representative with itself".into()));
            }
            let sum = fiber_sum(rep(x, *first)?, rep(x, *second)?, gluing)?;
            let (lo, hi) = ((*first).min(*second), (*first).max(*second));
            reps.remove(hi);
            reps[lo] = sum;
        }
        MoveWitness::DisjointUnionReorder { permutation } => {
            let n = reps.len();
            let mut seen = vec![false; n];
            if permutation.len() != n || permutation.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::InvalidArgument(format!("{permutation:?} is not a permutation of 0..{n}")));
            }
            reps = permutation.iter().map(|&i| x.representatives[i].clone()).collect();
        }
    }
    let y = CobordismClass {
        representatives: reps,
        ..x.clone()
    };
    let before = (sigma_class(x)?, eta_class(x)?, chi_parity(x));
    let after = (sigma_class(&y)?, eta_class(&y)?, chi_parity(&y));
    if before != after {
        return Err(Error::InvariantViolation(format!(
            "{w}: (sigma, eta, chi mod 2) {before:?} -> {after:?}"
        )));
    }
    Ok(y)
}

/// A subgroup of `Z^2` in Hermite normal form: either empty, `{(0, d)}`,
/// `{(a, b)}`, or `{(a, b), (0, d)}` with `a, d > 0` and `0 <= b < d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ImageLattice {
    pub basis: Vec<[i64; 2]>,
}

impl ImageLattice {
    pub fn generated_by(vectors: &[[i64; 2]]) -> Self {
        let mut rows: Vec<[i64; 2]> = vectors.iter().copied().filter(|v| *v != [0, 0]).collect();
        // Euclid on the first column.
        let mut lead: Option<[i64; 2]> = None;
        let mut rest = Vec::new();
        while let Some(pos) = rows
            .iter()
            .enumerate()
            .filter(|(_, v)| v[0] != 0)
            .min_by_key(|(_, v)| v[0].abs())
            .map(|(i, _)| i)
        {
            let p = rows.swap_remove(pos);
            let mut others = Vec::new();
            for v in rows.drain(..) {
                let q = Integer::div_floor(&v[0], &p[0]);
                others.push([v[0] - q * p[0], v[1] - q * p[1]]);
            }
            if others.iter().all(|v| v[0] == 0) {
                lead = Some(if p[0] < 0 { [-p[0], -p[1]] } else { p });
                rest = others;
                break;
            }
            others.push(p);
            rows = others;
        }
        if lead.is_none() {
            rest = rows;
        }
        let d = rest.iter().fold(0i64, |g, v| g.gcd(&v[1]));
        let mut basis = Vec::new();
        if let Some([a, mut b]) = lead {
            if d != 0 {
                b = b.mod_floor(&d);
            }
            basis.push([a, b]);
        }
        if d != 0 {
            basis.push([0, d]);
        }
        Self { basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: [i64; 2]) -> bool {
        let mut r = v;
        for b in &self.basis {
            if b[0] != 0 {
                if r[0] % b[0] != 0 {
                    return false;
                }
                let k = r[0] / b[0];
                r = [0, r[1] - k * b[1]];
            } else if r[0] == 0 && r[1] % b[1] == 0 {
                r = [0, 0];
            }
        }
        r == [0, 0]
    }
}

impl fmt::Display for ImageLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(|[a, b]| format!("({a},{b})")).collect();
        write!(f, "{}", if parts.is_empty() { "0".to_string() } else { parts.join(";") })
    }
}

/// Subgroup of `Z^2` generated by `(sigma, eta)` of the classes.
pub fn invariant_image_lattice(classes: &[CobordismClass]) -> Result<ImageLattice> {
    let points = classes
        .iter()
        .map(|x| Ok([sigma_class(x)?, eta_class(x)?]))
        .collect::<Result<Vec<_>>>()?;
    Ok(ImageLattice::generated_by(&points))
}
