use crate::error::{Error, Result};
use crate::mcg::{conjugate_letter, transvection_matrix, SignedTwist, TwistWord};
use crate::surfaces::CurveClass;

use super::{BaseSurface, FibrationData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HurwitzDirection {
    /// `(d_i, d_{i+1}) -> (d_{i+1}, d_{i+1}^-1 d_i d_{i+1})`
    Forward,
    /// `(d_i, d_{i+1}) -> (d_i d_{i+1} d_i^-1, d_i)`
    Backward,
}

impl HurwitzDirection {
    pub fn inverse(self) -> Self {
        match self {
            HurwitzDirection::Forward => HurwitzDirection::Backward,
            HurwitzDirection::Backward => HurwitzDirection::Forward,
        }
    }
}

impl FibrationData {
    /// Elementary transformation of the Lefschetz word at positions `i` and
    /// `i + 1` (zero-based). Conjugated letters keep their sign; their curve
    /// is moved by the symplectic action of the conjugating twist.
    pub fn hurwitz_move(&self, i: usize, direction: HurwitzDirection) -> Result<Self> {
        let n = self.lefschetz.len();
        if i + 1 >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        self.fiber.require_homology()?;
        let mut letters = self.lefschetz.letters().to_vec();
        let (x, y) = (letters[i].clone(), letters[i + 1].clone());
        let (first, second) = match direction {
            HurwitzDirection::Forward => {
                let m = transvection_matrix(&y).inverse();
                (y.clone(), conjugate_letter(&x, &m)?)
            }
            HurwitzDirection::Backward => {
                let m = transvection_matrix(&x);
                (conjugate_letter(&y, &m)?, x.clone())
            }
        };
        letters[i] = first;
        letters[i + 1] = second;
        let mut out = self.clone();
        out.lefschetz = TwistWord::new(letters);
        Ok(out)
    }

    /// Global conjugation by `h`: every letter `t` becomes `h t h^-1`.
    pub fn conjugate(&self, h: &TwistWord) -> Result<Self> {
        let m = h.matrix(self.fiber)?;
        let mut out = self.clone();
        out.lefschetz = self.lefschetz.conjugated_by(&m)?;
        out.bundle = self
            .bundle
            .iter()
            .map(|w| w.conjugated_by(&m))
            .collect::<Result<_>>()?;
        Ok(out)
    }

    /// Inserts `t_c t_c^-1` before position `position` of the Lefschetz word:
    /// two opposite critical points that cancel.
    pub fn insert_cancelling_pair(&self, position: usize, curve: CurveClass) -> Result<Self> {
        let n = self.lefschetz.len();
        if position > n {
            return Err(Error::IndexOutOfRange { index: position, len: n + 1 });
        }
        if curve.homology.rank() != self.fiber.homology_rank() {
            return Err(Error::MixedFibers);
        }
        let mut letters = self.lefschetz.letters().to_vec();
        let t = SignedTwist::positive(curve);
        letters.splice(position..position, [t.clone(), t.inverse()]);
        let mut out = self.clone();
        out.lefschetz = TwistWord::new(letters);
        Ok(out)
    }
}

/// Fiber sum of two fibrations over closed bases, gluing along `h`.
///
/// The Lefschetz word is `w1` followed by `h w2 h^-1`; the second summand's
/// bundle words are conjugated by `h`, and the first summand's by
/// `X^-1` with `X = h w2 h^-1`, so that the closure relation still holds.
pub fn fiber_sum(f1: &FibrationData, f2: &FibrationData, h: &TwistWord) -> Result<FibrationData> {
    if f1.fiber != f2.fiber {
        return Err(Error::FiberMismatch(format!("{} vs {}", f1.fiber, f2.fiber)));
    }
    if !f1.base.is_closed() || !f2.base.is_closed() {
        return Err(Error::Unsupported("fiber sum over bounded bases".into()));
    }
    let fiber = f1.fiber;
    let mh = h.matrix(fiber)?;
    let w2 = f2.lefschetz.conjugated_by(&mh)?;
    let x_inv = w2.matrix(fiber)?.inverse();

    let mut lefschetz = f1.lefschetz.clone();
    for l in w2.letters() {
        lefschetz.push(l.clone());
    }
    let mut bundle = Vec::with_capacity(f1.bundle.len() + f2.bundle.len());
    for w in &f1.bundle {
        bundle.push(w.conjugated_by(&x_inv)?);
    }
    for w in &f2.bundle {
        bundle.push(w.conjugated_by(&mh)?);
    }
    Ok(FibrationData {
        fiber,
        base: BaseSurface::new(f1.base.genus + f2.base.genus, 0),
        lefschetz,
        bundle,
        structure_twist: f1.structure_twist.add(&f2.structure_twist)?,
        surjective: f1.surjective || f2.surjective,
    })
}
