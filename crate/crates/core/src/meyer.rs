//! Meyer's signature cocycle and signatures of fibrations over closed bases.
//!
//! `tau(A, B)` is the signature of the symmetrized form
//! `<(x1,y1),(x2,y2)> = (x1+y1)^T J (I-B) y2` on
//! `V_{A,B} = {(x,y) : (A^-1 - I)x + (B - I)y = 0}`. The signature of a
//! fibration is the telescoped cocycle sum along its closure word plus
//! per-critical-point local terms, which are calibrated once against known
//! total spaces and then frozen.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fibration::{reverse_orientation, validate, FibrationData};
use crate::linalg::{symplectic_form, IntMatrix};
use crate::mcg::{relation_library, transvection_matrix, RelationName, Sign, SymplecticMatrix, TwistWord};
use crate::surfaces::{CurveClass, FiberSurface};

/// Environment variable that forces serial cocycle sums when set to `1`.
pub const SERIAL_ENV: &str = "LEFSCHETZ_SERIAL";

/// A symmetric matrix over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSymmetricForm {
    matrix: Vec<Vec<BigRational>>,
}

impl RationalSymmetricForm {
    pub fn new(matrix: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = matrix.len();
        for row in &matrix {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::NonSymmetric);
                }
            }
        }
        Ok(Self { matrix })
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<BigRational>] {
        &self.matrix
    }
}

/// `#positive - #negative` after congruence diagonalization.
pub fn signature_of_form(q: &RationalSymmetricForm) -> i64 {
    let mut a = q.matrix.clone();
    let n = a.len();
    let mut sig = 0i64;
    for k in 0..n {
        // Bring a nonzero diagonal entry to position k.
        let pivot = (k..n).find(|&i| !a[i][i].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                let off = (k..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
                let Some((i, j)) = off else { break };
                // e_i <- e_i + e_j makes a_ii = 2 a_ij != 0.
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                i
            }
        };
        a.swap(k, pivot);
        for row in a.iter_mut() {
            row.swap(k, pivot);
        }
        let d = a[k][k].clone();
        if d.is_positive() {
            sig += 1;
        } else {
            sig -= 1;
        }
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &d;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
    }
    sig
}

/// A cocycle value together with `dim V_{A,B}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeyerValue {
    pub value: i64,
    pub dimension: usize,
}

/// The form on `V_{A,B}` whose signature is `tau(A, B)`.
pub fn meyer_form(a: &SymplecticMatrix, b: &SymplecticMatrix) -> Result<RationalSymmetricForm> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let n = a.dim();
    let id = IntMatrix::identity(n);
    let constraints = a.inverse().matrix().sub(&id).hcat(&b.matrix().sub(&id));
    let basis = constraints.kernel_basis();
    // w(v) = J (I - B) y, so that <v1, v2> = (x1 + y1) . w(v2).
    let jib = &symplectic_form(n / 2) * &id.sub(b.matrix());
    let sums: Vec<Vec<BigInt>> = basis.iter().map(|v| (0..n).map(|i| &v[i] + &v[n + i]).collect()).collect();
    let ws: Vec<Vec<BigInt>> = basis.iter().map(|v| jib.apply(&v[n..])).collect();
    let dot = |x: &[BigInt], y: &[BigInt]| -> BigInt { x.iter().zip(y).map(|(p, q)| p * q).sum() };
    let m = basis.len();
    let mut rows = vec![vec![BigRational::zero(); m]; m];
    for i in 0..m {
        for j in i..m {
            let v = dot(&sums[i], &ws[j]) + dot(&sums[j], &ws[i]);
            rows[i][j] = BigRational::from_integer(v.clone());
            rows[j][i] = BigRational::from_integer(v);
        }
    }
    RationalSymmetricForm::new(rows)
}

pub fn meyer_value(a: &SymplecticMatrix, b: &SymplecticMatrix) -> Result<MeyerValue> {
    let q = meyer_form(a, b)?;
    Ok(MeyerValue {
        value: signature_of_form(&q),
        dimension: q.dimension(),
    })
}

/// `tau(A, B)`.
pub fn meyer_cocycle(a: &SymplecticMatrix, b: &SymplecticMatrix) -> Result<i64> {
    meyer_value(a, b).map(|v| v.value)
}

pub fn parallel_enabled() -> bool {
    !matches!(std::env::var(SERIAL_ENV).as_deref(), Ok("1"))
}

/// `sum_j tau(P_j, M(l_{j+1}))` with `P_j` the product of the first `j` letters.
pub fn cocycle_sum(fiber: FiberSurface, word: &TwistWord) -> Result<i64> {
    fiber.require_homology()?;
    let rank = fiber.homology_rank();
    if word.letters().iter().any(|l| l.rank() != rank) {
        return Err(Error::MixedFibers);
    }
    let mut steps = Vec::with_capacity(word.len());
    let mut prefix = SymplecticMatrix::identity(fiber.genus as usize);
    for l in word.letters() {
        let m = transvection_matrix(l);
        let next = prefix.mul(&m);
        steps.push((prefix, m));
        prefix = next;
    }
    let tau = |(p, m): &(SymplecticMatrix, SymplecticMatrix)| meyer_cocycle(p, m);
    let values: Vec<i64> = if parallel_enabled() {
        steps.par_iter().map(tau).collect::<Result<_>>()?
    } else {
        steps.iter().map(tau).collect::<Result<_>>()?
    };
    Ok(values.into_iter().sum())
}

/// Frozen constants of `sigma = epsilon * sum tau + n+ c+ + n- c- + separating terms`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Calibration {
    pub epsilon: BigRational,
    pub c_plus: BigRational,
    pub c_minus: BigRational,
    /// Cocycle sums of the two reference words (E(1), genus-2 chain).
    pub reference_sums: (i64, i64),
}

impl Calibration {
    fn signature(&self, f: &FibrationData) -> Result<i64> {
        check_signature_input(f)?;
        let sum = cocycle_sum(f.fiber, &f.closure_word())?;
        let (mut n_plus, mut n_minus, mut separating) = (0i64, 0i64, 0i64);
        for l in f.lefschetz.letters() {
            if l.curve.homology.is_zero() {
                // A separating singular fiber contributes (-1) with the sign of its point.
                separating -= l.sign.value();
            } else if l.sign == Sign::Positive {
                n_plus += 1;
            } else {
                n_minus += 1;
            }
        }
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        let sigma = &self.epsilon * q(sum) + &self.c_plus * q(n_plus) + &self.c_minus * q(n_minus) + q(separating);
        if !sigma.is_integer() {
            return Err(Error::Calibration(format!("non-integral signature {sigma}")));
        }
        sigma
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Calibration("signature out of range".into()))
    }
}

fn check_signature_input(f: &FibrationData) -> Result<()> {
    if !f.base.is_closed() {
        return Err(Error::Unsupported("signature over a base with boundary".into()));
    }
    if f.fiber.boundary_count != 0 {
        return Err(Error::Unsupported("signature of a total space with boundary".into()));
    }
    let report = validate(f);
    if !report.shape.is_ok() || !report.closure.is_ok() || !report.structure_twist.is_ok() {
        let failures: Vec<String> = report
            .entries()
            .iter()
            .filter(|(k, _)| *k != "allowability")
            .filter_map(|(k, v)| match v {
                crate::verdict::Verdict::Fail(why) => Some(format!("{k}: {why}")),
                _ => None,
            })
            .collect();
        return Err(Error::InvalidFibration(failures.join("; ")));
    }
    Ok(())
}

fn torus_e1(copies: usize) -> Result<FibrationData> {
    let (lhs, _) = relation_library(RelationName::Chain, FiberSurface::torus())?;
    Ok(FibrationData::over_sphere(FiberSurface::torus(), lhs.power(copies)))
}

/// Solves for `(epsilon, c+)` from two reference fibrations with known
/// signatures, E(1) (`-8`) and the genus-2 chain fibration (`-18`), sets
/// `c- = -c+`, and checks the result on E(2), on `-E(1)`, on a cancelling
/// pair, and on the genus-2 hyperelliptic fibration (`-12`).
pub fn calibrate_local_terms() -> Result<Calibration> {
    let e1 = torus_e1(1)?;
    let g2 = FiberSurface::closed(2);
    let (chain, _) = relation_library(RelationName::Chain, g2)?;
    let chain_fib = FibrationData::over_sphere(g2, chain);

    let s1 = cocycle_sum(e1.fiber, &e1.closure_word())?;
    let s2 = cocycle_sum(g2, &chain_fib.closure_word())?;
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let (n1, sigma1) = (q(e1.critical_count() as i64), q(-8));
    let (n2, sigma2) = (q(chain_fib.critical_count() as i64), q(-18));
    let det = q(s1) * &n2 - q(s2) * &n1;
    if det.is_zero() {
        return Err(Error::Calibration("reference equations are degenerate".into()));
    }
    let epsilon = (&sigma1 * &n2 - &sigma2 * &n1) / &det;
    let c_plus = (q(s1) * &sigma2 - q(s2) * &sigma1) / &det;
    if !epsilon.abs().is_one() {
        return Err(Error::Calibration(format!("cocycle scale {epsilon} is not a unit")));
    }
    let cal = Calibration {
        c_minus: -c_plus.clone(),
        epsilon,
        c_plus,
        reference_sums: (s1, s2),
    };

    let (hyper, _) = relation_library(RelationName::Hyperelliptic, g2)?;
    let checks: Vec<(&str, FibrationData, i64)> = vec![
        ("E(1)", e1.clone(), -8),
        ("E(2)", torus_e1(2)?, -16),
        ("-E(1)", reverse_orientation(&e1), 8),
        (
            "E(1) with cancelling pair",
            e1.insert_cancelling_pair(3, CurveClass::with_coords("c", &[1, 1]))?,
            -8,
        ),
        ("genus-2 hyperelliptic", FibrationData::over_sphere(g2, hyper), -12),
    ];
    for (name, f, expected) in checks {
        let got = cal.signature(&f)?;
        if got != expected {
            return Err(Error::Calibration(format!("{name}: expected {expected}, computed {got}")));
        }
    }
    Ok(cal)
}

static CALIBRATION: OnceLock<Result<Calibration>> = OnceLock::new();

/// The frozen calibration, computed on first use.
pub fn calibration() -> Result<&'static Calibration> {
    CALIBRATION
        .get_or_init(calibrate_local_terms)
        .as_ref()
        .map_err(Clone::clone)
}

/// Signature of the closed total space. Requires a closed base, a closed
/// fiber, and a datum whose closure relation holds.
pub fn fibration_signature(f: &FibrationData) -> Result<i64> {
    check_signature_input(f)?;
    calibration()?.signature(f)
}
