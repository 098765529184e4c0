//! Classical relations among Dehn twists, stored over homology classes.
//!
//! Every pair returned here has equal symplectic images; the unit tests
//! re-check that by matrix products.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::surfaces::{CurveClass, FiberSurface, HomologyClass};

use super::{SignedTwist, TwistWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationName {
    Braid,
    Chain,
    Lantern,
    Hyperelliptic,
}

impl RelationName {
    pub const ALL: [RelationName; 4] = [
        RelationName::Braid,
        RelationName::Chain,
        RelationName::Lantern,
        RelationName::Hyperelliptic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationName::Braid => "braid",
            RelationName::Chain => "chain",
            RelationName::Lantern => "lantern",
            RelationName::Hyperelliptic => "hyperelliptic",
        }
    }

    fn min_genus(self) -> u32 {
        match self {
            RelationName::Lantern => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for RelationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelationName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationName::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::UnknownRelation(s.to_string()))
    }
}

fn basis(rank: usize, parts: &[(usize, i64)]) -> HomologyClass {
    let mut v = vec![0i64; rank];
    for &(i, x) in parts {
        v[i] += x;
    }
    HomologyClass::from_i64s(&v).normalized()
}

/// The standard chain `c1, ..., c_{2g+1}` with consecutive curves meeting
/// once: `c1 = a1`, `c_{2i} = b_i`, `c_{2i+1} = a_{i+1} - a_i`, `c_{2g+1} = a_g`.
/// For `g = 1` the chain closes up with `c3 = c1`.
pub fn chain_curves(genus: u32) -> Vec<CurveClass> {
    let g = genus as usize;
    let rank = 2 * g;
    let a = |i: usize| 2 * (i - 1);
    let b = |i: usize| 2 * (i - 1) + 1;
    let mut out = Vec::with_capacity(2 * g + 1);
    out.push(CurveClass::from_homology("c1", basis(rank, &[(a(1), 1)])));
    for i in 1..=g {
        out.push(CurveClass::from_homology(format!("c{}", 2 * i), basis(rank, &[(b(i), 1)])));
        let next = if i < g {
            basis(rank, &[(a(i + 1), 1), (a(i), -1)])
        } else {
            basis(rank, &[(a(g), 1)])
        };
        out.push(CurveClass::from_homology(format!("c{}", 2 * i + 1), next));
    }
    out
}

fn positive_word(curves: &[CurveClass]) -> TwistWord {
    curves.iter().cloned().map(SignedTwist::positive).collect()
}

/// Returns `(lhs, rhs)` for a named relation on a closed fiber.
///
/// * `braid`: `t_a t_b t_a = t_b t_a t_b` for curves meeting once.
/// * `chain`: `(t_a t_b)^6 = 1` on the torus, `(t_{c1} ... t_{c_{2g+1}})^{2g+2} = 1` otherwise.
/// * `lantern`: four boundary twists against three interior ones. In genus 2
///   one interior curve is necessarily separating; from genus 3 on all seven
///   curves are nonseparating.
/// * `hyperelliptic`: `(t_{c1} ... t_{c_{2g+1}} t_{c_{2g+1}} ... t_{c1})^2 = 1`.
pub fn relation_library(name: RelationName, fiber: FiberSurface) -> Result<(TwistWord, TwistWord)> {
    fiber.require_homology()?;
    if fiber.genus < name.min_genus() {
        return Err(Error::FiberTooSmall {
            relation: name.to_string(),
            genus: fiber.genus,
        });
    }
    let g = fiber.genus;
    let rank = fiber.homology_rank();
    let chain = chain_curves(g);
    Ok(match name {
        RelationName::Braid => {
            let (a, b) = if g == 1 {
                (
                    CurveClass::with_coords("a", &[1, 0]),
                    CurveClass::with_coords("b", &[0, 1]),
                )
            } else {
                (chain[0].clone(), chain[1].clone())
            };
            (
                positive_word(&[a.clone(), b.clone(), a.clone()]),
                positive_word(&[b.clone(), a, b]),
            )
        }
        RelationName::Chain => {
            if g == 1 {
                let ab = positive_word(&[
                    CurveClass::with_coords("a", &[1, 0]),
                    CurveClass::with_coords("b", &[0, 1]),
                ]);
                (ab.power(6), TwistWord::empty())
            } else {
                (positive_word(&chain).power(2 * g as usize + 2), TwistWord::empty())
            }
        }
        RelationName::Hyperelliptic => {
            let mut pal = chain.clone();
            pal.extend(chain.iter().rev().cloned());
            (positive_word(&pal).power(2), TwistWord::empty())
        }
        RelationName::Lantern => {
            let a1 = 0;
            let a2 = 2;
            if g == 2 {
                // Boundary curves pair up (a ~ b, c ~ d) through the two
                // complementary annuli, so x = a + b is null-homologous.
                let lhs = positive_word(&[
                    CurveClass::from_homology("la", basis(rank, &[(a1, 1)])),
                    CurveClass::from_homology("lb", basis(rank, &[(a1, -1)])),
                    CurveClass::from_homology("lc", basis(rank, &[(a2, 1)])),
                    CurveClass::from_homology("ld", basis(rank, &[(a2, -1)])),
                ]);
                let rhs = positive_word(&[
                    CurveClass::separating("lx", rank),
                    CurveClass::from_homology("ly", basis(rank, &[(a1, -1), (a2, 1)])),
                    CurveClass::from_homology("lz", basis(rank, &[(a1, 1), (a2, 1)])),
                ]);
                (lhs, rhs)
            } else {
                let a3 = 4;
                let lhs = positive_word(&[
                    CurveClass::from_homology("la", basis(rank, &[(a1, 1)])),
                    CurveClass::from_homology("lb", basis(rank, &[(a2, 1)])),
                    CurveClass::from_homology("lc", basis(rank, &[(a3, 1)])),
                    CurveClass::from_homology("ld", basis(rank, &[(a1, -1), (a2, -1), (a3, -1)])),
                ]);
                let rhs = positive_word(&[
                    CurveClass::from_homology("lx", basis(rank, &[(a1, 1), (a2, 1)])),
                    CurveClass::from_homology("ly", basis(rank, &[(a2, 1), (a3, 1)])),
                    CurveClass::from_homology("lz", basis(rank, &[(a1, 1), (a3, 1)])),
                ]);
                (lhs, rhs)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::intersection_pairing;
    use num_bigint::BigInt;

    #[test]
    fn chain_curves_meet_consecutively() {
        for g in 2..=4 {
            let c = chain_curves(g);
            assert_eq!(c.len(), 2 * g as usize + 1);
            for i in 0..c.len() {
                for j in (i + 1)..c.len() {
                    let p = intersection_pairing(&c[i].homology, &c[j].homology).unwrap();
                    if j == i + 1 {
                        assert!(p == BigInt::from(1) || p == BigInt::from(-1), "c{} c{}", i + 1, j + 1);
                    } else {
                        assert_eq!(p, BigInt::from(0), "c{} c{}", i + 1, j + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn all_relations_hold_symplectically() {
        for g in 1..=4 {
            let fiber = FiberSurface::closed(g);
            for name in RelationName::ALL {
                match relation_library(name, fiber) {
                    Ok((lhs, rhs)) => {
                        assert_eq!(
                            lhs.matrix(fiber).unwrap(),
                            rhs.matrix(fiber).unwrap(),
                            "{name} on genus {g}"
                        );
                    }
                    Err(Error::FiberTooSmall { .. }) => assert!(g < 2 && name == RelationName::Lantern),
                    Err(e) => panic!("{name} on genus {g}: {e}"),
                }
            }
        }
    }

    #[test]
    fn lantern_shape() {
        for g in [2, 3] {
            let (lhs, rhs) = relation_library(RelationName::Lantern, FiberSurface::closed(g)).unwrap();
            assert_eq!(lhs.len(), 4);
            assert_eq!(rhs.len(), 3);
            assert_eq!(lhs.sign_counts(), (4, 0));
            assert_eq!(rhs.sign_counts(), (3, 0));
        }
        let (_, rhs2) = relation_library(RelationName::Lantern, FiberSurface::closed(2)).unwrap();
        assert!(rhs2.letters()[0].curve.separating);
        let (lhs3, rhs3) = relation_library(RelationName::Lantern, FiberSurface::closed(3)).unwrap();
        assert!(lhs3.letters().iter().chain(rhs3.letters()).all(|l| !l.curve.separating));
    }

    #[test]
    fn torus_fixtures() {
        let t = FiberSurface::torus();
        let (lhs, rhs) = relation_library(RelationName::Chain, t).unwrap();
        assert_eq!(lhs.len(), 12);
        assert!(rhs.is_empty());
        let (aba, bab) = relation_library(RelationName::Braid, t).unwrap();
        assert_eq!(aba.to_string(), "a b a");
        assert_eq!(bab.to_string(), "b a b");
    }

    #[test]
    fn unknown_and_too_small() {
        assert!("foo".parse::<RelationName>().is_err());
        assert!(matches!(
            relation_library(RelationName::Lantern, FiberSurface::torus()),
            Err(Error::FiberTooSmall { .. })
        ));
    }
}
