//! Named invariant suites and the property checks behind them.
//!
//! The defect functions return the exact amount by which an identity fails,
//! so a passing check is a zero combination, not a tolerance. The suites
//! bundle seeded randomized runs of these checks at sizes suitable for an
//! interactive run; the heavier sweeps live in the integration tests.

use crate::autos::{
    framing_cocycle, handle_twist_x, handle_twist_y, point_push, pushforward_framing,
    FreeGroupAuto,
};
use crate::bialgebra::{
    goldman_bracket, turaev_cobracket, turaev_cobracket_kinked, BiLoopCombo, Coef, LoopCombo,
};
use crate::classify;
use crate::expansion::{boundary_defect, exp_expansion, filtration_report};
use crate::framing::Framing;
use crate::oracle;
use crate::series::Series;
use crate::surface::Surface;
use crate::taut;
use crate::words::{CyclicWord, Letter, Word};
use crate::{Error, Result};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Rational combination of ordered triples of classes; the value space of
/// the co-Jacobi sum.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriLoopCombo {
    terms: BTreeMap<(CyclicWord, CyclicWord, CyclicWord), Coef>,
}

impl TriLoopCombo {
    pub fn zero() -> Self {
        TriLoopCombo::default()
    }

    pub fn add_term(&mut self, a: CyclicWord, b: CyclicWord, c: CyclicWord, q: Coef) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry((a, b, c)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(CyclicWord, CyclicWord, CyclicWord), Coef> {
        &self.terms
    }
}

/// `{a, b} + {b, a}`; zero exactly when the bracket is antisymmetric here.
pub fn antisymmetry_defect(s: &Surface, a: &LoopCombo, b: &LoopCombo) -> Result<LoopCombo> {
    let mut out = goldman_bracket(s, a, b)?;
    out.add(&goldman_bracket(s, b, a)?);
    Ok(out)
}

/// `{a,{b,c}} + {b,{c,a}} + {c,{a,b}}`; zero exactly when Jacobi holds here.
pub fn jacobi_defect(
    s: &Surface,
    a: &LoopCombo,
    b: &LoopCombo,
    c: &LoopCombo,
) -> Result<LoopCombo> {
    let mut out = goldman_bracket(s, a, &goldman_bracket(s, b, c)?)?;
    out.add(&goldman_bracket(s, b, &goldman_bracket(s, c, a)?)?);
    out.add(&goldman_bracket(s, c, &goldman_bracket(s, a, b)?)?);
    Ok(out)
}

/// Cyclic sum of `(cobracket (x) id)` applied to the cobracket of `a`; zero
/// exactly when co-Jacobi holds here.
pub fn cojacobi_defect(f: &Framing, a: &LoopCombo) -> Result<TriLoopCombo> {
    let mut out = TriLoopCombo::zero();
    for ((u, v), q) in turaev_cobracket(f, a)?.terms() {
        let du = turaev_cobracket(f, &LoopCombo::from_class(u.clone()))?;
        for ((p, r), t) in du.terms() {
            let coef = q * t;
            out.add_term(p.clone(), r.clone(), v.clone(), coef.clone());
            out.add_term(r.clone(), v.clone(), p.clone(), coef.clone());
            out.add_term(v.clone(), p.clone(), r.clone(), coef);
        }
    }
    Ok(out)
}

/// Bracket applied in both tensor slots: `a . (u (x) v) = {a,u} (x) v +
/// u (x) {a,v}`, extended linearly.
fn adjoint_on_pairs(s: &Surface, a: &LoopCombo, pairs: &BiLoopCombo) -> Result<BiLoopCombo> {
    let mut out = BiLoopCombo::zero();
    for ((u, v), q) in pairs.terms() {
        let left = goldman_bracket(s, a, &LoopCombo::from_class(u.clone()))?;
        for (w, c) in left.terms() {
            out.add_term(w.clone(), v.clone(), q * c);
        }
        let right = goldman_bracket(s, a, &LoopCombo::from_class(v.clone()))?;
        for (w, c) in right.terms() {
            out.add_term(u.clone(), w.clone(), q * c);
        }
    }
    Ok(out)
}

/// `cobracket({a,b}) - a.cobracket(b) + b.cobracket(a)`; zero exactly when
/// the cobracket is a 1-cocycle for the bracket here.
pub fn compatibility_defect(f: &Framing, a: &LoopCombo, b: &LoopCombo) -> Result<BiLoopCombo> {
    let s = f.surface();
    let mut out = turaev_cobracket(f, &goldman_bracket(s, a, b)?)?;
    let minus_one = -Coef::one();
    let mut adj_b = adjoint_on_pairs(s, a, &turaev_cobracket(f, b)?)?;
    adj_b.scale(&minus_one);
    out.add(&adj_b);
    out.add(&adjoint_on_pairs(s, b, &turaev_cobracket(f, a)?)?);
    Ok(out)
}

/// Bracket contracted over the cobracket of `a`; zero exactly when the
/// bialgebra is involutive here.
pub fn involutivity_defect(f: &Framing, a: &LoopCombo) -> Result<LoopCombo> {
    let mut out = LoopCombo::zero();
    for ((u, v), q) in turaev_cobracket(f, a)?.terms() {
        let mut part = goldman_bracket(
            f.surface(),
            &LoopCombo::from_class(u.clone()),
            &LoopCombo::from_class(v.clone()),
        )?;
        part.scale(q);
        out.add(&part);
    }
    Ok(out)
}

/// The framing cocycle law: the cocycle of a composition is the cocycle of
/// the outer map plus the transported cocycle of the inner one.
pub fn cocycle_law_holds(
    f: &Framing,
    outer: &FreeGroupAuto,
    inner: &FreeGroupAuto,
) -> Result<bool> {
    let lhs = framing_cocycle(&outer.compose(inner), f)?;
    let f_outer = framing_cocycle(outer, f)?;
    let f_inner = framing_cocycle(inner, f)?;
    // Transport by the outer map sends the class evaluation c -> f(outer^-1 c).
    let m = outer.inverse().homology_matrix();
    let dim = f_outer.len();
    let mut rhs = f_outer;
    for (c, r) in rhs.iter_mut().enumerate() {
        for (d, fd) in f_inner.iter().enumerate().take(dim) {
            *r += m[d][c] * fd;
        }
    }
    Ok(lhs == rhs)
}

/// Random cyclically reduced class of length at most `max_len`; may reduce
/// to the constant class.
pub fn random_cyclic(s: &Surface, rng: &mut ChaCha8Rng, max_len: usize) -> CyclicWord {
    let len = rng.gen_range(1..=max_len);
    CyclicWord::from_letters((0..len).map(|_| {
        Letter::new(rng.gen_range(0..s.num_gens() as u32), rng.gen_bool(0.5))
    }))
}

/// Random framing with twists in `[-bound, bound]`.
pub fn random_framing(s: &Arc<Surface>, rng: &mut ChaCha8Rng, bound: i64) -> Framing {
    let twists = (0..s.num_gens()).map(|_| rng.gen_range(-bound..=bound)).collect();
    Framing::new(s.clone(), twists).expect("twist vector length")
}

/// Outcome of one named suite: every check counted, every failure listed.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: String,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &str) -> SuiteOutcome {
        SuiteOutcome { name: name.to_string(), checks: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(label());
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn passed(&self) -> u64 {
        self.checks - self.failures.len() as u64
    }
}

/// The suite names accepted by `run_suite`.
pub const SUITE_NAMES: &[&str] = &[
    "bialgebra",
    "representative-independence",
    "poincare-hopf",
    "whitney",
    "geometric-oracle",
    "classification",
    "existence",
    "cocycle",
    "filtration",
    "boundary",
];

/// Runs every suite with the same seed.
pub fn run_all(seed: u64) -> Vec<SuiteOutcome> {
    SUITE_NAMES
        .iter()
        .map(|n| run_suite(n, seed).expect("known suite name"))
        .collect()
}

/// Runs one named suite.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteOutcome> {
    match name {
        "bialgebra" => Ok(suite_bialgebra(seed)),
        "representative-independence" => Ok(suite_representative_independence(seed)),
        "poincare-hopf" => Ok(suite_poincare_hopf(seed)),
        "whitney" => Ok(suite_whitney(seed)),
        "geometric-oracle" => Ok(suite_geometric_oracle(seed)),
        "classification" => Ok(suite_classification(seed)),
        "existence" => Ok(suite_existence(seed)),
        "cocycle" => Ok(suite_cocycle(seed)),
        "filtration" => Ok(suite_filtration(seed)),
        "boundary" => Ok(suite_boundary()),
        _ => Err(Error::Parse(format!("unknown suite: {name}"))),
    }
}

fn surfaces(list: &[(u32, u32)]) -> Vec<Arc<Surface>> {
    list.iter().map(|&(g, n)| Arc::new(Surface::build(g, n).unwrap())).collect()
}

fn suite_bialgebra(seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("bialgebra");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in surfaces(&[(1, 0), (0, 2), (1, 1)]) {
        let f = random_framing(&s, &mut rng, 2);
        for _ in 0..6 {
            let a = LoopCombo::from_class(random_cyclic(&s, &mut rng, 5));
            let b = LoopCombo::from_class(random_cyclic(&s, &mut rng, 5));
            let c = LoopCombo::from_class(random_cyclic(&s, &mut rng, 4));
            out.record(antisymmetry_defect(&s, &a, &b).unwrap().is_zero(), || {
                format!("antisymmetry on ({}, {})", s.genus(), s.extra_punctures())
            });
            out.record(jacobi_defect(&s, &a, &b, &c).unwrap().is_zero(), || {
                format!("jacobi on ({}, {})", s.genus(), s.extra_punctures())
            });
            out.record(cojacobi_defect(&f, &a).unwrap().is_zero(), || {
                format!("co-jacobi on ({}, {})", s.genus(), s.extra_punctures())
            });
            out.record(compatibility_defect(&f, &a, &b).unwrap().is_zero(), || {
                format!("compatibility on ({}, {})", s.genus(), s.extra_punctures())
            });
            out.record(involutivity_defect(&f, &a).unwrap().is_zero(), || {
                format!("involutivity on ({}, {})", s.genus(), s.extra_punctures())
            });
        }
    }
    out
}

fn suite_representative_independence(seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("representative-independence");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in surfaces(&[(1, 0), (1, 1), (0, 2)]) {
        let f = random_framing(&s, &mut rng, 2);
        for _ in 0..10 {
            let w = random_cyclic(&s, &mut rng, 6);
            let taut_value = turaev_cobracket(&f, &LoopCombo::from_class(w.clone())).unwrap();
            for (kp, kn) in [(1, 0), (0, 1), (2, 1), (3, 3), (0, 3)] {
                let kinked = turaev_cobracket_kinked(&f, &w, kp, kn).unwrap();
                out.record(kinked == taut_value, || {
                    format!("kinks ({kp}, {kn}) on {}", s.format_cyclic(&w))
                });
            }
        }
    }
    out
}

fn suite_poincare_hopf(seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("poincare-hopf");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for g in 0..=2u32 {
        for n in 0..=2u32 {
            if g == 0 && n < 2 {
                continue;
            }
            let s = Arc::new(Surface::build(g, n).unwrap());
            for _ in 0..20 {
                let f = random_framing(&s, &mut rng, 5);
                let sum: i64 = f.local_degrees().iter().sum();
                out.record(sum == 2 - 2 * g as i64, || {
                    format!("degree sum on ({g}, {n}) twists {:?}", f.twists())
                });
            }
        }
    }
    out
}

fn suite_whitney(seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("whitney");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in surfaces(&[(1, 0), (0, 2), (1, 1), (2, 0)]) {
        let f = random_framing(&s, &mut rng, 3);
        for _ in 0..50 {
            let w = random_cyclic(&s, &mut rng, 8);
            if w.is_constant() {
                continue;
            }
            out.record(taut::turning(&s, &w).is_integer(), || {
                format!("turning of {}", s.format_cyclic(&w))
            });
            out.record(f.rotation_number(&w).is_ok(), || {
                format!("rotation number of {}", s.format_cyclic(&w))
            });
        }
    }
    out
}

fn suite_geometric_oracle(seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("geometric-oracle");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in surfaces(&[(1, 0), (0, 2)]) {
        for _ in 0..25 {
            let w = random_cyclic(&s, &mut rng, 5);
            let perturbed = oracle::perturbed_self_intersections(&s, &w, seed).unwrap();
            let interval = crate::intersect::self_intersections(&s, &w).unwrap();
            out.record(perturbed == interval, || {
                format!("self double points of {}", s.format_cyclic(&w))
            });
        }
        for _ in 0..15 {
            let u = random_cyclic(&s, &mut rng, 4);
            let v = random_cyclic(&s, &mut rng, 4);
            let perturbed = oracle::perturbed_intersections(&s, &u, &v, seed).unwrap();
            let interval = crate::intersect::intersections(&s, &u, &v).unwrap();
            out.record(perturbed == interval, || {
                format!(
                    "double points of {}, {}",
                    s.format_cyclic(&u),
                    s.format_cyclic(&v)
                )
            });
        }
    }
    out
}

fn suite_classification(seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("classification");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = Arc::new(Surface::build(1, 1).unwrap());
    for _ in 0..20 {
        let f = random_framing(&s, &mut rng, 2);
        out.record(
            oracle::arf_by_counting(&f).ok() == classify::arf_invariant(&f).ok(),
            || format!("arf counting at twists {:?}", f.twists()),
        );
        let tw = pushforward_framing(&handle_twist_x(&s, 1), &f).unwrap();
        out.record(
            classify::same_mcg_orbit(&f, &tw).unwrap(),
            || format!("twist image stays in orbit at twists {:?}", f.twists()),
        );
    }
    let torus = Arc::new(Surface::build(1, 0).unwrap());
    let scan = oracle::orbit_scan(&torus, 2);
    let items: Vec<(&Vec<i64>, &usize)> = scan.components().iter().collect();
    let mut joined = 0u64;
    for (i, (a, ca)) in items.iter().enumerate() {
        for (b, cb) in items.iter().skip(i + 1) {
            if ca == cb && joined < 200 {
                joined += 1;
                let fa = Framing::new(torus.clone(), (*a).clone()).unwrap();
                let fb = Framing::new(torus.clone(), (*b).clone()).unwrap();
                out.record(classify::same_mcg_orbit(&fa, &fb).unwrap(), || {
                    format!("scan joined {a:?} and {b:?} across orbits")
                });
            }
        }
    }
    out.record(joined >= 20, || "scan joined almost nothing".to_string());
    out
}

fn suite_existence(seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("existence");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in surfaces(&[(0, 2), (2, 0), (2, 1)]) {
        for _ in 0..10 {
            let f = random_framing(&s, &mut rng, 3);
            out.record(classify::quasi_algebraic_framing_exists(&f), || {
                format!(
                    "existence away from genus one on ({}, {})",
                    s.genus(),
                    s.extra_punctures()
                )
            });
        }
    }
    let s = Arc::new(Surface::build(1, 1).unwrap());
    for _ in 0..15 {
        let f = random_framing(&s, &mut rng, 2);
        let expect = {
            let d = f.local_degrees().iter().fold(0i64, |a, d| num_integer::gcd(a, *d));
            classify::a_invariant(&f).unwrap() == d
        };
        out.record(classify::quasi_algebraic_framing_exists(&f) == expect, || {
            format!("genus-one criterion at twists {:?}", f.twists())
        });
        // The answer is an orbit invariant, so moves cannot change it.
        let moved = pushforward_framing(&handle_twist_y(&s, 1), &f).unwrap();
        out.record(
            classify::quasi_algebraic_framing_exists(&moved)
                == classify::quasi_algebraic_framing_exists(&f),
            || format!("orbit invariance at twists {:?}", f.twists()),
        );
    }
    out
}

fn suite_cocycle(seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("cocycle");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = Arc::new(Surface::build(1, 1).unwrap());
    let f = Framing::blackboard(s.clone());
    let x = Word::letter(Letter::new(s.gen_x(1).unwrap(), false));
    let y = Word::letter(Letter::new(s.gen_y(1).unwrap(), false));
    let gens = vec![
        handle_twist_x(&s, 1),
        handle_twist_y(&s, 1),
        point_push(&s, 1, &x).unwrap(),
        point_push(&s, 1, &y).unwrap(),
    ];
    for _ in 0..12 {
        let a = &gens[rng.gen_range(0..gens.len())];
        let b = &gens[rng.gen_range(0..gens.len())];
        let (a, b) = if rng.gen_bool(0.5) { (a.clone(), b.inverse()) } else { (a.clone(), b.clone()) };
        out.record(cocycle_law_holds(&f, &a, &b).unwrap(), || "cocycle law".to_string());
    }
    // Point pushes hit homology through the local degree times the pairing.
    let d = f.local_degrees();
    for (gi, along) in [(s.gen_x(1).unwrap(), &x), (s.gen_y(1).unwrap(), &y)] {
        let push = point_push(&s, 1, along).unwrap();
        let got = framing_cocycle(&push, &f).unwrap();
        let ha = s.homology_class(along.letters());
        for (c, val) in got.iter().enumerate() {
            let mut basis = vec![0i64; s.num_gens()];
            basis[c] = 1;
            let expect = d[1] * s.intersection_pairing(&ha, &basis);
            out.record(*val == expect, || {
                format!("push law component {c} for generator {gi}")
            });
        }
    }
    out
}

fn suite_filtration(seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("filtration");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in surfaces(&[(1, 0), (0, 2)]) {
        let theta = exp_expansion(&s, 4);
        let f = Framing::blackboard(s.clone());
        for _ in 0..8 {
            let a = LoopCombo::from_class(random_cyclic(&s, &mut rng, 4));
            let b = LoopCombo::from_class(random_cyclic(&s, &mut rng, 4));
            let report = filtration_report(&theta, &f, &a, &b).unwrap();
            out.record(report.bracket_ok && report.cobracket_ok, || {
                format!("weight floors on ({}, {})", s.genus(), s.extra_punctures())
            });
        }
    }
    out
}

fn suite_boundary() -> SuiteOutcome {
    let mut out = SuiteOutcome::new("boundary");
    let pants = Arc::new(Surface::build(0, 2).unwrap());
    let theta = exp_expansion(&pants, 4);
    let defect = boundary_defect(&theta);
    let z1 = pants.gen_z(1).unwrap();
    let z2 = pants.gen_z(2).unwrap();
    let mut expect = Series::letter(4, z1, 2).commutator(&Series::letter(4, z2, 2));
    expect = expect.scale(&Coef::new(1.into(), 2.into()));
    out.record(defect == expect, || "pair of pants weight-4 defect".to_string());
    // The flat multiply-then-log path must see the same defect.
    let flat = oracle::flat_boundary_log(&pants, 4);
    let lead = crate::expansion::boundary_leading_term(&pants, 4);
    let graded = defect.add(&lead);
    out.record(oracle::flatten(&graded) == flat, || "flat boundary log".to_string());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_with_a_fixed_seed() {
        for outcome in run_all(5) {
            assert!(
                outcome.ok(),
                "suite {} failed: {:?}",
                outcome.name,
                outcome.failures
            );
            assert!(outcome.checks > 0, "suite {} ran nothing", outcome.name);
        }
    }

    #[test]
    fn unknown_suites_are_rejected() {
        assert!(run_suite("no-such-suite", 0).is_err());
    }
}
