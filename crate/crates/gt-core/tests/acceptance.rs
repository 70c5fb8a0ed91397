//! End-to-end acceptance gate: ten independent checks covering the whole
//! crate, each printing one `ACCEPTANCE <k>: PASS` or `FAIL` line. Every
//! comparison is exact; sweeps draw from seeded generators so reruns are
//! reproducible.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gt_core::bialgebra::{turaev_cobracket, turaev_cobracket_kinked};
use gt_core::check::{
    antisymmetry_defect, cocycle_law_holds, cojacobi_defect, compatibility_defect,
    involutivity_defect, jacobi_defect, random_cyclic, random_framing,
};
use gt_core::classify::{a_invariant, arf_invariant, quasi_algebraic_framing_exists, same_mcg_orbit};
use gt_core::expansion::{
    boundary_defect, boundary_leading_term, exp_expansion, filtration_report, Expansion,
};
use gt_core::intersect::{intersections, self_intersections};
use gt_core::oracle::{
    arf_by_counting, flat_boundary_log, flatten, orbit_scan, perturbed_intersections,
    perturbed_self_intersections, FlatSeries,
};
use gt_core::series::Series;
use gt_core::{autos, taut, CyclicWord, Framing, Letter, LoopCombo, Surface, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn surf(g: u32, n: u32) -> Arc<Surface> {
    Arc::new(Surface::build(g, n).expect("hyperbolic surface"))
}

fn combo(w: &CyclicWord) -> LoopCombo {
    LoopCombo::from_class(w.clone())
}

/// Prints the one-line verdict for a criterion and fails the test with the
/// collected diagnostics when anything went wrong.
fn verdict(criterion: u32, failures: Vec<String>) {
    if failures.is_empty() {
        println!("ACCEPTANCE {criterion}: PASS");
    } else {
        println!("ACCEPTANCE {criterion}: FAIL");
        for line in failures.iter().take(12) {
            println!("  {line}");
        }
        panic!(
            "acceptance criterion {criterion}: {} failing check(s)",
            failures.len()
        );
    }
}

fn budget(failures: &mut Vec<String>, start: Instant, limit: Duration, label: &str) {
    let spent = start.elapsed();
    if spent > limit {
        failures.push(format!("{label} took {spent:?}, budget {limit:?}"));
    }
}

/// Every distinct nonconstant free homotopy class with a representative of
/// the given maximum length, ordered by canonical length.
fn all_classes(s: &Surface, max_len: usize) -> Vec<CyclicWord> {
    let letters: Vec<Letter> = (0..s.num_gens() as u32)
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let mut seen = BTreeSet::new();
    for len in 1..=max_len {
        let mut digits = vec![0usize; len];
        'words: loop {
            let w = CyclicWord::from_letters(digits.iter().map(|&i| letters[i]));
            if !w.is_constant() {
                seen.insert(w);
            }
            let mut pos = 0;
            loop {
                if pos == len {
                    break 'words;
                }
                digits[pos] += 1;
                if digits[pos] < letters.len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }
    let mut classes: Vec<CyclicWord> = seen.into_iter().collect();
    classes.sort_by_key(CyclicWord::len);
    classes
}

/// All integer twist vectors of the given dimension with entries in
/// `-bound..=bound`.
fn twist_box(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let radix = (2 * bound + 1) as usize;
    let mut out = Vec::with_capacity(radix.pow(dim as u32));
    let mut digits = vec![0usize; dim];
    loop {
        out.push(digits.iter().map(|&d| d as i64 - bound).collect());
        let mut pos = 0;
        loop {
            if pos == dim {
                return out;
            }
            digits[pos] += 1;
            if digits[pos] < radix {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

fn gcd_all(values: &[i64]) -> i64 {
    values
        .iter()
        .fold(0u64, |acc, v| num_integer::gcd(acc, v.unsigned_abs())) as i64
}

#[test]
fn acceptance_01_bialgebra_axioms_hold_on_random_classes() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut draws = 0u32;
    for (g, n) in [(1, 0), (0, 2), (2, 0), (1, 1)] {
        let s = surf(g, n);
        let mut rng = ChaCha8Rng::seed_from_u64(101 + 10 * g as u64 + n as u64);
        for _ in 0..130 {
            let a = combo(&random_cyclic(&s, &mut rng, 8));
            let b = combo(&random_cyclic(&s, &mut rng, 8));
            let c = combo(&random_cyclic(&s, &mut rng, 8));
            let f = random_framing(&s, &mut rng, 3);
            draws += 1;
            let mut item = |axiom: &str, zero: bool| {
                if !zero {
                    failures.push(format!(
                        "{axiom} defect nonzero on ({g},{n}) for {:?} {:?} {:?}",
                        a, b, c
                    ));
                }
            };
            item(
                "antisymmetry",
                antisymmetry_defect(&s, &a, &b).is_ok_and(|d| d.is_zero()),
            );
            item(
                "jacobi",
                jacobi_defect(&s, &a, &b, &c).is_ok_and(|d| d.is_zero()),
            );
            item(
                "co-jacobi",
                cojacobi_defect(&f, &a).is_ok_and(|d| d.is_zero()),
            );
            item(
                "compatibility",
                compatibility_defect(&f, &a, &b).is_ok_and(|d| d.is_zero()),
            );
            item(
                "involutivity",
                involutivity_defect(&f, &a).is_ok_and(|d| d.is_zero()),
            );
        }
    }
    assert!(draws >= 500, "need at least 500 random draws, got {draws}");
    budget(&mut failures, start, Duration::from_secs(60), "axiom sweep");
    verdict(1, failures);
}

#[test]
fn acceptance_02_cobracket_ignores_added_kinks() {
    let mut failures = Vec::new();
    let mut words = 0u32;
    for (g, n) in [(1, 0), (0, 2), (2, 0), (1, 1)] {
        let s = surf(g, n);
        let mut rng = ChaCha8Rng::seed_from_u64(202 + 10 * g as u64 + n as u64);
        for _ in 0..50 {
            let mut w = random_cyclic(&s, &mut rng, 8);
            while w.is_constant() {
                w = random_cyclic(&s, &mut rng, 8);
            }
            let f = random_framing(&s, &mut rng, 2);
            let taut = match turaev_cobracket(&f, &combo(&w)) {
                Ok(v) => v,
                Err(e) => {
                    failures.push(format!("taut cobracket failed on ({g},{n}): {e}"));
                    continue;
                }
            };
            words += 1;
            for pos in 0..=3u32 {
                for neg in 0..=3u32 {
                    if pos + neg == 0 {
                        continue;
                    }
                    let kinked = turaev_cobracket_kinked(&f, &w, pos, neg);
                    if kinked.as_ref() != Ok(&taut) {
                        failures.push(format!(
                            "kinks ({pos},{neg}) change the cobracket of {} on ({g},{n})",
                            s.format_cyclic(&w)
                        ));
                    }
                }
            }
        }
    }
    assert!(words >= 200, "need at least 200 words, got {words}");
    verdict(2, failures);
}

#[test]
fn acceptance_03_local_degrees_sum_to_the_euler_characteristic() {
    let mut failures = Vec::new();
    for g in 0..=3u32 {
        for n in 0..=3u32 {
            if g == 0 && n < 2 {
                continue;
            }
            let s = surf(g, n);
            let mut rng = ChaCha8Rng::seed_from_u64(303 + 10 * g as u64 + n as u64);
            for _ in 0..200 {
                let f = random_framing(&s, &mut rng, 6);
                let total: i64 = f.local_degrees().iter().sum();
                if total != 2 - 2 * g as i64 {
                    failures.push(format!(
                        "degrees of twists {:?} on ({g},{n}) sum to {total}",
                        f.twists()
                    ));
                }
            }
        }
    }
    verdict(3, failures);
}

#[test]
fn acceptance_04_every_rotation_number_is_a_whole_turn() {
    let mut failures = Vec::new();
    for (g, n) in [(1, 0), (0, 2), (2, 0), (1, 1), (1, 2), (0, 3)] {
        let s = surf(g, n);
        let mut rng = ChaCha8Rng::seed_from_u64(404 + 10 * g as u64 + n as u64);
        for _ in 0..100 {
            let mut w = random_cyclic(&s, &mut rng, 8);
            while w.is_constant() {
                w = random_cyclic(&s, &mut rng, 8);
            }
            let f = random_framing(&s, &mut rng, 4);
            if !taut::turning(&s, &w).is_integer() {
                failures.push(format!(
                    "fractional turning for {} on ({g},{n})",
                    s.format_cyclic(&w)
                ));
            }
            if let Err(e) = f.rotation_number(&w) {
                failures.push(format!(
                    "rotation number failed for {} on ({g},{n}): {e}",
                    s.format_cyclic(&w)
                ));
            }
        }
    }
    verdict(4, failures);
}

#[test]
fn acceptance_05_interval_rule_matches_the_perturbed_drawing_oracle() {
    let start = Instant::now();
    let seed = 505;
    let mut failures = Vec::new();
    let mut selfs = 0u32;
    let mut pairs = 0u32;
    for (g, n) in [(1, 0), (0, 2)] {
        let s = surf(g, n);
        let classes = all_classes(&s, 6);
        for w in &classes {
            selfs += 1;
            let interval = self_intersections(&s, w);
            let drawn = perturbed_self_intersections(&s, w, seed);
            if interval != drawn {
                failures.push(format!(
                    "self-intersections of {} disagree on ({g},{n})",
                    s.format_cyclic(w)
                ));
            }
        }
        for (i, u) in classes.iter().enumerate() {
            for v in classes[i..].iter() {
                if u.len() + v.len() > 6 {
                    break;
                }
                pairs += 1;
                let interval = intersections(&s, u, v);
                let drawn = perturbed_intersections(&s, u, v, seed);
                if interval != drawn {
                    failures.push(format!(
                        "intersections of {} and {} disagree on ({g},{n})",
                        s.format_cyclic(u),
                        s.format_cyclic(v)
                    ));
                }
            }
        }
    }
    // 234 distinct classes of length <= 6 live over a rank-2 free group
    // (transfer-matrix necklace count), giving 820 pairs per surface.
    assert!(selfs == 468 && pairs == 1640, "sweep size changed: {selfs} classes, {pairs} pairs");
    budget(&mut failures, start, Duration::from_secs(300), "oracle sweep");
    verdict(5, failures);
}

#[test]
fn acceptance_06_orbit_search_agrees_with_the_classifier() {
    let mut failures = Vec::new();
    for (g, n) in [(1, 0), (1, 1), (0, 3)] {
        let s = surf(g, n);
        let scan = orbit_scan(&s, 4);
        let inits = twist_box(s.num_gens(), 2);
        let framings: Vec<Framing> = inits
            .iter()
            .map(|t| Framing::new(s.clone(), t.clone()).expect("twist vector fits"))
            .collect();
        let mut joined = 0u32;
        for i in 0..inits.len() {
            for j in i + 1..inits.len() {
                if scan.same_component(&inits[i], &inits[j]) != Some(true) {
                    continue;
                }
                joined += 1;
                match same_mcg_orbit(&framings[i], &framings[j]) {
                    Ok(true) => {}
                    outcome => failures.push(format!(
                        "search joins {:?} and {:?} on ({g},{n}) but the classifier says {outcome:?}",
                        inits[i], inits[j]
                    )),
                }
            }
        }
        // Genus zero is rigid: every pure mapping class sends each puncture
        // class to a conjugate of itself, so twist vectors never move and
        // zero joins is the expected outcome there.
        if joined == 0 && g > 0 {
            failures.push(format!("the move search proved nothing on ({g},{n})"));
        }
    }
    // All quadratic forms in genus 1 and 2: twist vectors over {0,1} hit
    // every basis-value pattern once, and the number of Arf-zero forms is
    // 2^(g-1) (2^g + 1).
    for (g, arf_zero_forms) in [(1u32, 3u32), (2, 10)] {
        let s = surf(g, 0);
        let mut zeros = 0u32;
        let mut forms = 0u32;
        for t in twist_box(s.num_gens(), 1) {
            if t.iter().any(|&v| v < 0) {
                continue;
            }
            forms += 1;
            let f = Framing::new(s.clone(), t.clone()).expect("twist vector fits");
            let counted = arf_by_counting(&f);
            let closed = arf_invariant(&f);
            match (&counted, &closed) {
                (Ok(a), Ok(b)) if a == b => {
                    if *a == 0 {
                        zeros += 1;
                    }
                }
                _ => failures.push(format!(
                    "Arf mismatch at twists {t:?} on ({g},0): counted {counted:?}, closed form {closed:?}"
                )),
            }
        }
        if forms != 1 << (2 * g) {
            failures.push(format!("expected {} forms in genus {g}, saw {forms}", 1 << (2 * g)));
        }
        if zeros != arf_zero_forms {
            failures.push(format!(
                "expected {arf_zero_forms} Arf-zero forms in genus {g}, saw {zeros}"
            ));
        }
    }
    verdict(6, failures);
}

#[test]
fn acceptance_07_quasi_algebraic_existence_matches_the_genus_one_criterion() {
    let mut failures = Vec::new();
    for (g, n) in [(0, 2), (0, 3), (2, 0), (2, 1), (3, 0)] {
        let s = surf(g, n);
        let mut rng = ChaCha8Rng::seed_from_u64(707 + 10 * g as u64 + n as u64);
        for _ in 0..40 {
            let f = random_framing(&s, &mut rng, 5);
            if !quasi_algebraic_framing_exists(&f) {
                failures.push(format!(
                    "existence denied on ({g},{n}) at twists {:?}",
                    f.twists()
                ));
            }
        }
    }
    let mut sweeps = 0u32;
    for (g, n) in [(1u32, 1u32), (1, 2)] {
        let s = surf(g, n);
        let mut rng = ChaCha8Rng::seed_from_u64(717 + n as u64);
        for _ in 0..60 {
            let f = random_framing(&s, &mut rng, 4);
            sweeps += 1;
            let got = quasi_algebraic_framing_exists(&f);
            let a = match a_invariant(&f) {
                Ok(a) => a,
                Err(e) => {
                    failures.push(format!("A-invariant failed on ({g},{n}): {e}"));
                    continue;
                }
            };
            let want = a == gcd_all(&f.local_degrees());
            if got != want {
                failures.push(format!(
                    "existence {got} but A/gcd comparison {want} on ({g},{n}) at twists {:?}",
                    f.twists()
                ));
            }
        }
    }
    assert!(sweeps >= 100, "need at least 100 genus-one framings, got {sweeps}");
    verdict(7, failures);
}

#[test]
fn acceptance_08_framing_cocycle_is_a_crossed_homomorphism() {
    let mut failures = Vec::new();
    let mut pairs = 0u32;
    for (g, n) in [(1u32, 1u32), (1, 2)] {
        let s = surf(g, n);
        let mut rng = ChaCha8Rng::seed_from_u64(808 + n as u64);
        let x1 = Word::letter(Letter::new(s.gen_x(1).expect("handle"), false));
        let y1 = Word::letter(Letter::new(s.gen_y(1).expect("handle"), false));
        let mut pool = vec![autos::handle_twist_x(&s, 1), autos::handle_twist_y(&s, 1)];
        for j in 1..=n {
            pool.push(autos::point_push(&s, j, &x1).expect("push along a handle generator"));
            pool.push(autos::point_push(&s, j, &y1).expect("push along a handle generator"));
        }
        let inverses: Vec<_> = pool.iter().map(autos::FreeGroupAuto::inverse).collect();
        pool.extend(inverses);
        for _ in 0..60 {
            let draw = |rng: &mut ChaCha8Rng| {
                let one = pool[rng.gen_range(0..pool.len())].clone();
                if rng.gen_bool(0.5) {
                    one.compose(&pool[rng.gen_range(0..pool.len())])
                } else {
                    one
                }
            };
            let outer = draw(&mut rng);
            let inner = draw(&mut rng);
            let f = random_framing(&s, &mut rng, 3);
            pairs += 1;
            if cocycle_law_holds(&f, &outer, &inner) != Ok(true) {
                failures.push(format!(
                    "cocycle law failed on ({g},{n}) at twists {:?}",
                    f.twists()
                ));
            }
        }
        // Point pushes pair with the homology intersection form: pushing
        // puncture j around a handle class evaluates classes against it,
        // scaled by the local degree at j.
        for j in 1..=n {
            for alpha in [&x1, &y1] {
                let push = autos::point_push(&s, j, alpha).expect("push along a handle generator");
                let h = s.homology_class(alpha.letters());
                for trial in 0..3u64 {
                    let f = random_framing(&s, &mut rng, 3);
                    let got = match autos::framing_cocycle(&push, &f) {
                        Ok(v) => v,
                        Err(e) => {
                            failures.push(format!("cocycle of a push failed on ({g},{n}): {e}"));
                            continue;
                        }
                    };
                    let d = f.local_degrees()[j as usize];
                    for (c, value) in got.iter().enumerate() {
                        let mut basis = vec![0i64; s.num_gens()];
                        basis[c] = 1;
                        let want = d * s.intersection_pairing(&h, &basis);
                        if *value != want {
                            failures.push(format!(
                                "push of puncture {j} along {} on ({g},{n}) trial {trial}: \
                                 entry {c} is {value}, expected {want}",
                                s.format_word(alpha)
                            ));
                        }
                    }
                }
            }
        }
    }
    assert!(pairs >= 100, "need at least 100 composable pairs, got {pairs}");
    verdict(8, failures);
}

#[test]
fn acceptance_09_bracket_and_cobracket_respect_the_weight_filtration() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut words = 0u32;
    let mut pairs = 0u32;
    for (g, n) in [(1, 0), (0, 2), (1, 1)] {
        let s = surf(g, n);
        let theta = exp_expansion(&s, 5);
        let f = Framing::blackboard(s.clone());
        let unit = LoopCombo::from_class(CyclicWord::constant());
        let classes = all_classes(&s, 6);
        let combos: Vec<LoopCombo> = classes.iter().map(combo).collect();
        for (w, a) in classes.iter().zip(&combos) {
            words += 1;
            match filtration_report(&theta, &f, a, &unit) {
                Ok(r) if r.bracket_ok && r.cobracket_ok => {}
                outcome => failures.push(format!(
                    "cobracket depth check failed for {} on ({g},{n}): {outcome:?}",
                    s.format_cyclic(w)
                )),
            }
        }
        for i in 0..classes.len() {
            for j in i..classes.len() {
                if classes[i].len() + classes[j].len() > 6 {
                    break;
                }
                pairs += 1;
                match filtration_report(&theta, &f, &combos[i], &combos[j]) {
                    Ok(r) if r.ok => {}
                    outcome => failures.push(format!(
                        "bracket depth check failed for {} , {} on ({g},{n}): {outcome:?}",
                        s.format_cyclic(&classes[i]),
                        s.format_cyclic(&classes[j])
                    )),
                }
            }
        }
    }
    assert!(words > 1000 && pairs > 1000, "sweep too small: {words} words, {pairs} pairs");
    budget(&mut failures, start, Duration::from_secs(120), "filtration sweep");
    verdict(9, failures);
}

fn flat_sub(a: &FlatSeries, b: &FlatSeries) -> FlatSeries {
    let mut out = a.clone();
    for (mono, coef) in b {
        let current = out
            .get(mono)
            .cloned()
            .unwrap_or_else(|| BigRational::from_integer(BigInt::from(0)));
        let updated = current - coef;
        if updated.is_zero() {
            out.remove(mono);
        } else {
            out.insert(mono.clone(), updated);
        }
    }
    out
}

#[test]
fn acceptance_10_pair_of_pants_boundary_defect_is_half_the_commutator() {
    let mut failures = Vec::new();
    let s = surf(0, 2);
    let trunc = 4;
    let theta = exp_expansion(&s, trunc);
    let z1 = Series::letter(trunc, s.gen_z(1).expect("puncture"), 2);
    let z2 = Series::letter(trunc, s.gen_z(2).expect("puncture"), 2);
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let expected = z1.commutator(&z2).scale(&half);

    let defect = boundary_defect(&theta);
    if defect != expected {
        failures.push("exponential-image defect is not half the puncture commutator".into());
    }

    // Independent path: multiply untruncated-by-weight flat series for the
    // boundary word, take the flat logarithm, and subtract the leading term.
    let leading = boundary_leading_term(&s, trunc);
    let flat_defect = flat_sub(&flat_boundary_log(&s, trunc), &flatten(&leading));
    if flat_defect != flatten(&expected) {
        failures.push("flat multiply-then-log path disagrees with the series engine".into());
    }

    // An expansion built to hit the boundary target exactly has no defect.
    let target = leading.exp();
    let images = vec![z1.exp(), z1.exp().inverse().mul(&target)];
    match Expansion::from_images(s.clone(), images) {
        Ok(exact) => {
            if !boundary_defect(&exact).is_zero() {
                failures.push("constructed exact-boundary expansion still has a defect".into());
            }
        }
        Err(e) => failures.push(format!("constructed expansion rejected: {e}")),
    }
    verdict(10, failures);
}
