//! Pullbacks along finite unbranched covers of a bounded base.
//!
//! A connected degree-`k` cover of `S` is a transitive right action of
//! `pi_1(S)` on the sheets `0..k`, given by one permutation per bundle
//! generator (`alpha_j`, `beta_j`, then the free boundary loops). Meridians of
//! critical values are null-homotopic in `S` and act trivially, so every
//! critical value has `k` preimages. The lifted Hurwitz system comes from
//! Reidemeister-Schreier: a BFS spanning tree of the coset graph gives a
//! transversal `t_s`, and the Schreier generators `t_s x t_{s.x}^-1` for
//! non-tree edges form a free basis of the cover's fundamental group.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::mcg::{conjugate_letter, transvection_matrix, SymplecticMatrix, TwistWord};

use super::{BaseSurface, FibrationData};

/// A generator of `pi_1(S - critical values)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseGenerator {
    Meridian(usize),
    Bundle(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FreeLetter {
    pub generator: BaseGenerator,
    pub inverse: bool,
}

/// A word in the free generators of the punctured base.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord(pub Vec<FreeLetter>);

impl FreeWord {
    fn then(&self, letter: FreeLetter) -> Self {
        let mut v = self.0.clone();
        v.push(letter);
        FreeWord(v)
    }

    fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FreeWord(v)
    }

    pub fn inverse(&self) -> Self {
        FreeWord(
            self.0
                .iter()
                .rev()
                .map(|l| FreeLetter {
                    generator: l.generator,
                    inverse: !l.inverse,
                })
                .collect(),
        )
    }
}

/// Permutations describing the monodromy of a finite cover of the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverAssignment {
    pub degree: usize,
    /// One permutation of `0..degree` per bundle generator (`perm[s] = s.x`).
    pub bundle: Vec<Vec<usize>>,
    /// Optional meridian permutations; each must be the identity.
    pub meridians: Vec<Vec<usize>>,
}

impl CoverAssignment {
    pub fn new(degree: usize, bundle: Vec<Vec<usize>>) -> Self {
        Self {
            degree,
            bundle,
            meridians: Vec::new(),
        }
    }

    pub fn trivial(degree: usize, generators: usize) -> Self {
        Self::new(degree, vec![(0..degree).collect(); generators])
    }
}

/// One connected component of a pullback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverComponent {
    pub fibration: FibrationData,
    /// Sheets of the original assignment in this component, in BFS order.
    pub sheets: Vec<usize>,
    /// For each lifted Lefschetz letter, its image as a word downstairs.
    pub lefschetz_lifts: Vec<FreeWord>,
    /// For each lifted bundle word, its image as a word downstairs.
    pub bundle_lifts: Vec<FreeWord>,
}

impl CoverComponent {
    pub fn degree(&self) -> usize {
        self.sheets.len()
    }
}

fn check_permutation(p: &[usize], degree: usize) -> Result<()> {
    if p.len() != degree {
        return Err(Error::InvalidCover(format!(
            "permutation of length {} for degree {degree}",
            p.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x >= degree || std::mem::replace(&mut seen[x], true) {
            return Err(Error::InvalidCover(format!("{p:?} is not a permutation")));
        }
    }
    Ok(())
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn cycle_count(p: &[usize], on: &[usize]) -> usize {
    let mut seen = HashSet::new();
    let mut cycles = 0;
    for &s in on {
        if seen.insert(s) {
            cycles += 1;
            let mut t = p[s];
            while seen.insert(t) {
                t = p[t];
            }
        }
    }
    cycles
}

/// Appends `b` to `a`, cancelling `t t^-1` pairs at the seam.
fn concat_reduced(a: &TwistWord, b: &TwistWord) -> TwistWord {
    let mut out = a.letters().to_vec();
    for l in b.letters() {
        if out.last().is_some_and(|last| last.cancels(l)) {
            out.pop();
        } else {
            out.push(l.clone());
        }
    }
    TwistWord::new(out)
}

impl FibrationData {
    pub fn generator_matrix(&self, g: BaseGenerator) -> Result<SymplecticMatrix> {
        match g {
            BaseGenerator::Meridian(i) => self
                .lefschetz
                .letters()
                .get(i)
                .map(transvection_matrix)
                .ok_or(Error::IndexOutOfRange {
                    index: i,
                    len: self.lefschetz.len(),
                }),
            BaseGenerator::Bundle(j) => self
                .bundle
                .get(j)
                .ok_or(Error::IndexOutOfRange {
                    index: j,
                    len: self.bundle.len(),
                })?
                .matrix(self.fiber),
        }
    }

    /// Monodromy of a loop downstairs, evaluated generator by generator.
    pub fn evaluate(&self, word: &FreeWord) -> Result<SymplecticMatrix> {
        let mut m = SymplecticMatrix::identity(self.fiber.genus as usize);
        for l in &word.0 {
            let g = self.generator_matrix(l.generator)?;
            m = m.mul(&if l.inverse { g.inverse() } else { g });
        }
        Ok(m)
    }

    fn twist_word_of(&self, word: &FreeWord) -> TwistWord {
        word.0.iter().fold(TwistWord::empty(), |acc, l| {
            let piece = match l.generator {
                BaseGenerator::Meridian(i) => TwistWord::new(vec![self.lefschetz.letters()[i].clone()]),
                BaseGenerator::Bundle(j) => self.bundle[j].clone(),
            };
            concat_reduced(&acc, &if l.inverse { piece.inverse() } else { piece })
        })
    }
}

fn permute(perms: &[Vec<usize>], inverses: &[Vec<usize>], start: usize, word: &[FreeLetter]) -> usize {
    word.iter().fold(start, |s, l| match l.generator {
        BaseGenerator::Meridian(_) => s,
        BaseGenerator::Bundle(j) => {
            if l.inverse {
                inverses[j][s]
            } else {
                perms[j][s]
            }
        }
    })
}

/// Pulls `f` back along a finite unbranched cover of its (bounded) base.
/// A non-transitive assignment yields one component per orbit.
pub fn pullback_cover(f: &FibrationData, cover: &CoverAssignment) -> Result<Vec<CoverComponent>> {
    if f.base.is_closed() {
        return Err(Error::Unsupported("covers of closed bases".into()));
    }
    f.check_shape()?;
    f.fiber.require_homology()?;
    let k = cover.degree;
    if k == 0 {
        return Err(Error::InvalidCover("degree must be positive".into()));
    }
    let r = f.bundle.len();
    if cover.bundle.len() != r {
        return Err(Error::InvalidCover(format!(
            "expected {r} generator permutations, found {}",
            cover.bundle.len()
        )));
    }
    for p in &cover.bundle {
        check_permutation(p, k)?;
    }
    for (i, p) in cover.meridians.iter().enumerate() {
        check_permutation(p, k)?;
        if p.iter().enumerate().any(|(s, &t)| s != t) {
            return Err(Error::InvalidCover(format!(
                "meridian {} permutes sheets; branched covers are not supported",
                i + 1
            )));
        }
    }
    let inverses: Vec<Vec<usize>> = cover.bundle.iter().map(|p| invert(p)).collect();

    // The last boundary loop is (prod [alpha_j, beta_j] d_1 ... d_{d-1})^-1 in
    // pi_1(S); its cycles are those of the word inside the parentheses.
    let h = f.base.genus as usize;
    let mut boundary_word = Vec::new();
    for j in 0..h {
        for (g, inv) in [(2 * j, false), (2 * j + 1, false), (2 * j, true), (2 * j + 1, true)] {
            boundary_word.push(FreeLetter {
                generator: BaseGenerator::Bundle(g),
                inverse: inv,
            });
        }
    }
    for g in 2 * h..r {
        boundary_word.push(FreeLetter {
            generator: BaseGenerator::Bundle(g),
            inverse: false,
        });
    }
    let last_boundary: Vec<usize> = (0..k)
        .map(|s| permute(&cover.bundle, &inverses, s, &boundary_word))
        .collect();

    let mut assigned = vec![false; k];
    let mut components = Vec::new();
    for root in 0..k {
        if assigned[root] {
            continue;
        }
        // BFS spanning tree of the coset graph.
        let mut transversal: Vec<Option<FreeWord>> = vec![None; k];
        let mut tree: HashSet<(usize, usize)> = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([root]);
        transversal[root] = Some(FreeWord::default());
        assigned[root] = true;
        while let Some(s) = queue.pop_front() {
            order.push(s);
            let ts = transversal[s].clone().expect("visited");
            for j in 0..r {
                let fwd = cover.bundle[j][s];
                if !assigned[fwd] {
                    assigned[fwd] = true;
                    transversal[fwd] = Some(ts.then(FreeLetter {
                        generator: BaseGenerator::Bundle(j),
                        inverse: false,
                    }));
                    tree.insert((s, j));
                    queue.push_back(fwd);
                }
                let back = inverses[j][s];
                if !assigned[back] {
                    assigned[back] = true;
                    transversal[back] = Some(ts.then(FreeLetter {
                        generator: BaseGenerator::Bundle(j),
                        inverse: true,
                    }));
                    tree.insert((back, j));
                    queue.push_back(back);
                }
            }
        }
        let t = |s: usize| transversal[s].clone().expect("sheet in component");

        let mut lefschetz = TwistWord::empty();
        let mut lefschetz_lifts = Vec::new();
        for &s in &order {
            let ts = t(s);
            let m = f.evaluate(&ts)?;
            for (i, letter) in f.lefschetz.letters().iter().enumerate() {
                lefschetz.push(conjugate_letter(letter, &m)?);
                lefschetz_lifts.push(
                    ts.then(FreeLetter {
                        generator: BaseGenerator::Meridian(i),
                        inverse: false,
                    })
                    .concat(&ts.inverse()),
                );
            }
        }

        let mut bundle = Vec::new();
        let mut bundle_lifts = Vec::new();
        for &s in &order {
            for j in 0..r {
                if tree.contains(&(s, j)) {
                    continue;
                }
                let target = cover.bundle[j][s];
                let lift = t(s)
                    .then(FreeLetter {
                        generator: BaseGenerator::Bundle(j),
                        inverse: false,
                    })
                    .concat(&t(target).inverse());
                bundle.push(f.twist_word_of(&lift));
                bundle_lifts.push(lift);
            }
        }

        let sheets = order.len();
        let boundary_cycles: usize = cover.bundle[2 * h..]
            .iter()
            .map(|p| cycle_count(p, &order))
            .sum::<usize>()
            + cycle_count(&last_boundary, &order);
        let chi = sheets as i64 * f.base.euler_characteristic();
        let twice_genus = 2 - boundary_cycles as i64 - chi;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::InvalidCover(format!(
                "inconsistent cover: chi = {chi}, {boundary_cycles} boundary components"
            )));
        }
        let base = BaseSurface::new((twice_genus / 2) as u32, boundary_cycles as u32);
        if base.bundle_word_count() != bundle.len() {
            return Err(Error::InvalidCover(format!(
                "Schreier basis has {} elements, expected {}",
                bundle.len(),
                base.bundle_word_count()
            )));
        }
        components.push(CoverComponent {
            fibration: FibrationData {
                fiber: f.fiber,
                base,
                lefschetz,
                bundle,
                structure_twist: f.structure_twist.clone(),
                surjective: false,
            },
            sheets: order,
            lefschetz_lifts,
            bundle_lifts,
        });
    }
    Ok(components)
}
