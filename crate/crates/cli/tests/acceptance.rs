//! Acceptance suite: one line per criterion, `criterion N: pass|fail - detail`.
//! Runs without the libtest harness so the lines always show; exits nonzero
//! if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;

use lefschetz_core::cobordism::ImageLattice;
use lefschetz_core::fibration::{BaseGenerator, FreeWord};
use lefschetz_core::mcg::{chain_curves, derived_curve_name};
use lefschetz_core::{
    build_universal_dim2, build_universal_dim3_plan, class_sum, cobordism_image_report,
    critical_counts, euler_characteristic, eta, fiber_sum, fibration_signature, meyer_cocycle,
    pullback_cover, relation_library, reverse_orientation, transvection_matrix,
    universality_report_dim2, universality_report_dim3, word_to_matrix, BaseSurface,
    CobordismClass, CoverAssignment, CurveClass, FiberSurface, FibrationData, HomologyClass,
    HurwitzDirection, PlanStep, Presentation, RelationName, SignedTwist, SymplecticMatrix,
    TwistWord,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Random data
// ---------------------------------------------------------------------------

fn random_curve(rng: &mut StdRng, genus: u32) -> CurveClass {
    loop {
        let v: Vec<i64> = (0..2 * genus).map(|_| rng.gen_range(-2..=2)).collect();
        let h = HomologyClass::from_i64s(&v);
        if !h.is_zero() && h.is_primitive() {
            let h = h.normalized();
            return CurveClass::from_homology(derived_curve_name(&h), h);
        }
    }
}

fn random_twist(rng: &mut StdRng, genus: u32) -> SignedTwist {
    let c = random_curve(rng, genus);
    if rng.gen_bool(0.5) {
        SignedTwist::positive(c)
    } else {
        SignedTwist::negative(c)
    }
}

fn random_word(rng: &mut StdRng, genus: u32, len: std::ops::RangeInclusive<usize>) -> TwistWord {
    let n = rng.gen_range(len);
    (0..n).map(|_| random_twist(rng, genus)).collect()
}

fn random_matrix(rng: &mut StdRng, genus: u32) -> SymplecticMatrix {
    let w = random_word(rng, genus, 1..=6);
    word_to_matrix(FiberSurface::closed(genus), &w).unwrap()
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

fn relation_fibration(name: RelationName, genus: u32, copies: usize) -> FibrationData {
    let (lhs, rhs) = relation_library(name, FiberSurface::closed(genus)).unwrap();
    FibrationData::over_sphere(FiberSurface::closed(genus), lhs.concat(&rhs.inverse()).power(copies))
}

fn e(n: usize) -> FibrationData {
    relation_fibration(RelationName::Chain, 1, n)
}

/// A fibration over the torus with commuting bundle words and no critical points.
fn bundle_over_torus(genus: u32, first: &CurveClass, second: &CurveClass) -> FibrationData {
    let fiber = FiberSurface::closed(genus);
    let w1 = TwistWord::new(vec![SignedTwist::positive(first.clone())]);
    let w2 = TwistWord::new(vec![SignedTwist::negative(second.clone())]);
    FibrationData::new(fiber, BaseSurface::new(1, 0), TwistWord::empty(), vec![w1, w2])
}

fn genus_pool(genus: u32) -> Vec<FibrationData> {
    if genus == 1 {
        let a = CurveClass::with_coords("a", &[1, 0]);
        let a2 = CurveClass::with_coords("a", &[1, 0]);
        vec![
            e(1),
            reverse_orientation(&e(1)),
            relation_fibration(RelationName::Braid, 1, 1),
            bundle_over_torus(1, &a, &a2),
        ]
    } else {
        let c = chain_curves(2);
        vec![
            relation_fibration(RelationName::Chain, 2, 1),
            relation_fibration(RelationName::Hyperelliptic, 2, 1),
            reverse_orientation(&relation_fibration(RelationName::Hyperelliptic, 2, 1)),
            bundle_over_torus(2, &c[0], &c[2]),
        ]
    }
}

fn torus_presentation() -> Presentation {
    let t = FiberSurface::torus();
    let (aba, bab) = relation_library(RelationName::Braid, t).unwrap();
    let (chain, _) = relation_library(RelationName::Chain, t).unwrap();
    Presentation::new(
        t,
        vec![CurveClass::with_coords("a", &[1, 0]), CurveClass::with_coords("b", &[0, 1])],
        vec![("braid".into(), aba.concat(&bab.inverse())), ("chain".into(), chain)],
    )
}

fn chain_presentation(genus: u32) -> Presentation {
    let fiber = FiberSurface::closed(genus);
    let (chain, _) = relation_library(RelationName::Chain, fiber).unwrap();
    let (hyper, _) = relation_library(RelationName::Hyperelliptic, fiber).unwrap();
    Presentation::new(
        fiber,
        chain_curves(genus),
        vec![("chain".into(), chain), ("hyperelliptic".into(), hyper)],
    )
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

fn criterion_1(rng: &mut StdRng) -> Outcome {
    let mut degenerate = 0;
    for i in 0..50 {
        let genus = 1 + (i % 2) as u32;
        let m = random_matrix(rng, genus);
        let id = SymplecticMatrix::identity(genus as usize);
        ensure(meyer_cocycle(&id, &m).unwrap() == 0, || format!("tau(I, B) != 0 for {m:?}"))?;
        let a = random_matrix(rng, genus);
        ensure(meyer_cocycle(&a, &id).unwrap() == 0, || format!("tau(A, I) != 0 for {a:?}"))?;
        degenerate += 2;
    }
    for i in 0..100 {
        let genus = 1 + (i % 2) as u32;
        let (a, b, c) = (random_matrix(rng, genus), random_matrix(rng, genus), random_matrix(rng, genus));
        let lhs = meyer_cocycle(&a, &b).unwrap() + meyer_cocycle(&a.mul(&b), &c).unwrap();
        let rhs = meyer_cocycle(&a, &b.mul(&c)).unwrap() + meyer_cocycle(&b, &c).unwrap();
        ensure(lhs == rhs, || format!("cocycle identity {lhs} != {rhs} on genus {genus}"))?;
    }
    Ok(format!("{degenerate} degenerate cases zero, cocycle identity on 100 triples (g=1,2)"))
}

fn criterion_2() -> Outcome {
    let e2 = fibration_signature(&e(2)).map_err(|e| e.to_string())?;
    let rev = fibration_signature(&reverse_orientation(&e(1))).map_err(|e| e.to_string())?;
    let e1 = fibration_signature(&e(1)).map_err(|e| e.to_string())?;
    ensure(e1 == -8 && e2 == -16 && rev == 8, || format!("E(1)={e1} E(2)={e2} -E(1)={rev}"))?;
    Ok(format!("sigma(E(1))={e1}, sigma(E(2))={e2}, sigma(-E(1))={rev}"))
}

fn lantern_deltas(genus: u32, host: &FibrationData, at: usize) -> Result<(i64, i64), String> {
    let fiber = FiberSurface::closed(genus);
    let (lhs, rhs) = relation_library(RelationName::Lantern, fiber).unwrap();
    let letters = host.lefschetz.letters();
    let splice = |middle: &TwistWord| -> FibrationData {
        let mut w: Vec<SignedTwist> = letters[..at].to_vec();
        w.extend(middle.letters().iter().cloned());
        w.extend(rhs.inverse().letters().iter().cloned());
        w.extend(letters[at..].iter().cloned());
        FibrationData::over_sphere(fiber, TwistWord::new(w))
    };
    let old = splice(&rhs);
    let new = splice(&lhs);
    let s_old = fibration_signature(&old).map_err(|e| e.to_string())?;
    let s_new = fibration_signature(&new).map_err(|e| e.to_string())?;
    Ok((s_new - s_old, eta(&new) - eta(&old)))
}

fn criterion_3() -> Outcome {
    let host = relation_fibration(RelationName::Chain, 2, 1);
    let mut seen = Vec::new();
    for at in [0, 7, 15, 30] {
        let (ds, de) = lantern_deltas(2, &host, at)?;
        ensure((ds, de) == (-1, 1), || format!("genus 2 at {at}: (dsigma, deta) = ({ds}, {de})"))?;
        seen.push(at);
    }
    let host3 = relation_fibration(RelationName::Hyperelliptic, 3, 1);
    let (ds3, de3) = lantern_deltas(3, &host3, 5)?;
    ensure((ds3, de3) == (-1, 1), || format!("genus 3: ({ds3}, {de3})"))?;
    Ok(format!(
        "genus-2 lantern in chain word at positions {seen:?}: dsigma=-1, deta=+1; genus-3 check ({ds3}, {de3})"
    ))
}

fn invariants(f: &FibrationData) -> Result<(i64, i64, i64), String> {
    Ok((fibration_signature(f).map_err(|e| e.to_string())?, eta(f), euler_characteristic(f)))
}

fn criterion_4(rng: &mut StdRng) -> Outcome {
    let mut moves = 0;
    for genus in [1, 2] {
        for start in genus_pool(genus) {
            let mut f = start;
            let base = invariants(&f)?;
            for _ in 0..25 {
                let n = f.lefschetz.len();
                if n >= 2 && rng.gen_bool(0.6) {
                    let dir = if rng.gen_bool(0.5) { HurwitzDirection::Forward } else { HurwitzDirection::Backward };
                    f = f.hurwitz_move(rng.gen_range(0..n - 1), dir).map_err(|e| e.to_string())?;
                } else {
                    let h = random_word(rng, genus, 1..=2);
                    f = f.conjugate(&h).map_err(|e| e.to_string())?;
                }
                moves += 1;
                let now = invariants(&f)?;
                ensure(now == base, || format!("(sigma, eta, chi) {base:?} -> {now:?}"))?;
            }
            for _ in 0..6 {
                let before = (fibration_signature(&f).map_err(|e| e.to_string())?, eta(&f));
                let pos = rng.gen_range(0..=f.lefschetz.len());
                let g = f
                    .insert_cancelling_pair(pos, random_curve(rng, genus))
                    .map_err(|e| e.to_string())?;
                let after = (fibration_signature(&g).map_err(|e| e.to_string())?, eta(&g));
                ensure(before == after, || format!("cancelling pair: {before:?} -> {after:?}"))?;
            }
        }
    }
    // 2 genera x 4 starts x 25 = 200 moves; 2 x 4 x 6 = 48, topped up below.
    let mut pairs = 48;
    let f = e(1);
    let s = fibration_signature(&f).map_err(|e| e.to_string())?;
    while pairs < 50 {
        let g = f.insert_cancelling_pair(pairs % 12, random_curve(rng, 1)).map_err(|e| e.to_string())?;
        ensure(fibration_signature(&g).unwrap() == s && eta(&g) == eta(&f), || "cancelling pair on E(1)".into())?;
        pairs += 1;
    }
    Ok(format!("{moves} Hurwitz/conjugation moves, {pairs} cancelling pairs: invariants unchanged"))
}

fn criterion_5(rng: &mut StdRng) -> Outcome {
    let pools = [genus_pool(1), genus_pool(2)];
    for i in 0..50 {
        let genus = 1 + (i % 2) as u32;
        let pool = &pools[i % 2];
        let f1 = pool.choose(rng).unwrap();
        let f2 = pool.choose(rng).unwrap();
        let h = random_word(rng, genus, 0..=3);
        let s = fiber_sum(f1, f2, &h).map_err(|e| e.to_string())?;
        let (s1, s2, ss) = (invariants(f1)?, invariants(f2)?, invariants(&s)?);
        ensure(ss.0 == s1.0 + s2.0 && ss.1 == s1.1 + s2.1, || {
            format!("fiber sum: {s1:?} + {s2:?} -> {ss:?}")
        })?;
        let x = CobordismClass::of(f1.clone()).unwrap();
        let y = CobordismClass::of(f2.clone()).unwrap();
        let z = class_sum(&x, &y).map_err(|e| e.to_string())?;
        let (zs, ze) = (z.sigma().map_err(|e| e.to_string())?, z.eta().map_err(|e| e.to_string())?);
        ensure(zs == ss.0 && ze == ss.1, || format!("class sum ({zs}, {ze}) vs fiber sum {ss:?}"))?;
    }
    Ok("sigma and eta additive on 50 random pairs (fiber_sum and class_sum)".into())
}

fn criterion_6() -> Outcome {
    let u = build_universal_dim2(&torus_presentation()).map_err(|e| e.to_string())?;
    let report = universality_report_dim2(&u);
    let image = cobordism_image_report(&u).map_err(|e| e.to_string())?;
    ensure(u.h2_rank == 2, || format!("h2_rank = {}", u.h2_rank))?;
    ensure(u.torus_amendment, || "torus_amendment false".into())?;
    ensure(report.passed(), || format!("{report:?}"))?;
    ensure(image.lattice.contains([-8, 12]), || format!("lattice {}", image.lattice))?;
    ensure(image.lattice == ImageLattice::generated_by(&[[-8, 12], [0, 0]]), || {
        format!("unexpected lattice {}", image.lattice)
    })?;
    Ok(format!("h2_rank=2, torus_amendment=true, report all-pass, lattice {} contains (-8,12)", image.lattice))
}

fn permute_word(perms: &[Vec<usize>], start: usize, word: &FreeWord) -> usize {
    word.0.iter().fold(start, |s, l| match l.generator {
        BaseGenerator::Meridian(_) => s,
        BaseGenerator::Bundle(j) => {
            if l.inverse {
                perms[j].iter().position(|&t| t == s).unwrap()
            } else {
                perms[j][s]
            }
        }
    })
}

/// Composed monodromy of a downstairs loop, from the base datum only.
fn compose(f: &FibrationData, word: &FreeWord) -> SymplecticMatrix {
    word.0.iter().fold(SymplecticMatrix::identity(f.fiber.genus as usize), |m, l| {
        let g = match l.generator {
            BaseGenerator::Meridian(i) => transvection_matrix(&f.lefschetz.letters()[i]),
            BaseGenerator::Bundle(j) => word_to_matrix(f.fiber, &f.bundle[j]).unwrap(),
        };
        m.mul(&if l.inverse { g.inverse() } else { g })
    })
}

fn transitive(perms: &[Vec<usize>], k: usize) -> bool {
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(s) = stack.pop() {
        for p in perms {
            for t in [p[s], p.iter().position(|&x| x == s).unwrap()] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
    }
    seen.into_iter().all(|x| x)
}

fn criterion_7(rng: &mut StdRng) -> Outcome {
    let bases = [(0, 2), (0, 3), (1, 1), (1, 2)];
    let mut degrees = Vec::new();
    for _ in 0..20 {
        let genus = rng.gen_range(1..=2);
        let (h, d) = *bases.choose(rng).unwrap();
        let base = BaseSurface::new(h, d);
        let f = FibrationData::new(
            FiberSurface::closed(genus),
            base,
            random_word(rng, genus, 1..=4),
            (0..base.bundle_word_count()).map(|_| random_word(rng, genus, 0..=3)).collect(),
        );
        let k = rng.gen_range(2..=4);
        let perms = loop {
            let perms: Vec<Vec<usize>> = (0..f.bundle.len())
                .map(|_| {
                    let mut p: Vec<usize> = (0..k).collect();
                    p.shuffle(rng);
                    p
                })
                .collect();
            if transitive(&perms, k) {
                break perms;
            }
        };
        let comps = pullback_cover(&f, &CoverAssignment::new(k, perms.clone())).map_err(|e| e.to_string())?;
        ensure(comps.len() == 1, || format!("{} components for a transitive action", comps.len()))?;
        let c = &comps[0];
        let lifted = &c.fibration;
        for (letter, w) in lifted.lefschetz.letters().iter().zip(&c.lefschetz_lifts) {
            ensure(transvection_matrix(letter) == compose(&f, w), || "lifted letter image differs".into())?;
            let sheet = permute_word(&perms, c.sheets[0], w);
            ensure(sheet == c.sheets[0], || "lifted meridian is not a closed loop".into())?;
        }
        for (lw, w) in lifted.bundle.iter().zip(&c.bundle_lifts) {
            ensure(word_to_matrix(lifted.fiber, lw).unwrap() == compose(&f, w), || {
                "lifted bundle word image differs".into()
            })?;
            ensure(permute_word(&perms, c.sheets[0], w) == c.sheets[0], || "Schreier word is not a loop".into())?;
        }
        let (p, m) = critical_counts(&f);
        ensure(critical_counts(lifted) == (k * p, k * m), || "n+/n- do not scale".into())?;
        ensure(euler_characteristic(lifted) == k as i64 * euler_characteristic(&f), || {
            "chi does not scale".into()
        })?;
        degrees.push(k);
    }
    Ok(format!("20 connected covers (degrees {degrees:?}): lifted images match, chi and n+- scale"))
}

fn criterion_8() -> Outcome {
    let marked: Vec<String> = ["m1", "m2", "m3"].map(String::from).to_vec();
    let mut plans = 0;
    let mut mutants = 0;
    for (p, m) in [
        (torus_presentation(), 1),
        (chain_presentation(2), 3),
        (chain_presentation(3), 2),
    ] {
        let plan = build_universal_dim3_plan(&p, &marked[..m]).map_err(|e| e.to_string())?;
        let ok = universality_report_dim3(&plan);
        ensure(ok.get("critical_image_connected").unwrap().verdict.is_pass(), || format!("{ok:?}"))?;
        plans += 1;
        for (i, step) in plan.steps.iter().enumerate() {
            if matches!(step, PlanStep::Band(..)) {
                let mut cut = plan.clone();
                cut.steps.remove(i);
                let r = universality_report_dim3(&cut);
                ensure(!r.get("critical_image_connected").unwrap().verdict.is_ok(), || {
                    format!("deleting step {} still connected", i + 1)
                })?;
                mutants += 1;
            }
        }
    }
    Ok(format!("{plans} plans pass condition (4); all {mutants} band-deletion mutants fail it"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run_cli(args: &[&str], serial: bool) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lefschetz"));
    cmd.args(args).env_remove("LEFSCHETZ_SERIAL");
    if serial {
        cmd.env("LEFSCHETZ_SERIAL", "1");
    }
    let out = cmd.output().expect("spawn lefschetz");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_9() -> Outcome {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut checked = 0;
    for doc in ["e1", "trivial_bundle", "lantern_g2"] {
        for cmd in ["validate", "invariants", "signature"] {
            let path = data(&format!("{doc}.lf"));
            let path = path.to_str().unwrap();
            let runs: Vec<(i32, Vec<u8>)> = [false, false, true, true].iter().map(|&s| run_cli(&[cmd, path], s)).collect();
            ensure(runs.windows(2).all(|w| w[0] == w[1]), || format!("{cmd} {doc}: runs differ"))?;
            let expected = std::fs::read(golden.join(format!("{doc}.{cmd}.out"))).map_err(|e| e.to_string())?;
            ensure(runs[0].1 == expected, || {
                format!("{cmd} {doc}: output differs from golden:\n{}", String::from_utf8_lossy(&runs[0].1))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} reports byte-identical across 2 parallel + 2 serial runs and the goldens"))
}

fn main() {
    let mut rng = StdRng::seed_from_u64(0x1e5c_4e72);
    let criteria: Vec<(u32, Box<dyn FnOnce(&mut StdRng) -> Outcome>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(|_| criterion_2())),
        (3, Box::new(|_| criterion_3())),
        (4, Box::new(criterion_4)),
        (5, Box::new(criterion_5)),
        (6, Box::new(|_| criterion_6())),
        (7, Box::new(criterion_7)),
        (8, Box::new(|_| criterion_8())),
        (9, Box::new(|_| criterion_9())),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, check) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| check(&mut rng)))
            .unwrap_or_else(|p| {
                Err(p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into()))
            });
        match outcome {
            Ok(detail) => println!("criterion {n}: pass - {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: fail - {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
