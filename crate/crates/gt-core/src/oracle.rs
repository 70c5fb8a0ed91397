//! Independent cross-checks for the main computational paths: a perturbed
//! exact-coordinate drawing for double points, a zero-counting route to the
//! Arf invariant, a brute-force orbit partition of framings in a box, and a
//! flat ungraded series engine.
//!
//! Each check shares only unavoidable plumbing with the path it validates.
//! The perturbed drawing keeps the taut slot order but recomputes every
//! crossing from exact rational coordinates with orientation determinants;
//! the counting route never evaluates the closed Arf formula; the orbit
//! scan only composes elementary mapping classes; the flat engine
//! multiplies and takes logarithms without weight bucketing.

use crate::autos::{handle_twist_x, handle_twist_y, point_push, pushforward_framing, FreeGroupAuto};
use crate::framing::Framing;
use crate::intersect::{DoublePoint, SelfDoublePoint};
use crate::series::Series;
use crate::surface::Surface;
use crate::taut::{self, Chord, Diagram, Point};
use crate::words::{CyclicWord, Letter, Word};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

type Pt = (BigRational, BigRational);

fn sgn(r: &BigRational) -> i8 {
    match r.cmp(&BigRational::zero()) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

fn sub(a: &Pt, b: &Pt) -> Pt {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn cross(a: &Pt, b: &Pt) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Rational point of the unit circle for `tau` in `(0, 1)`, in strictly
/// counterclockwise order; the tangent half-angle form keeps coordinates
/// exact.
fn circle(tau: &BigRational) -> Pt {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let u = &two * tau - &one;
    let s = &u / (&one - &u * &u);
    let s2 = &s * &s;
    let d = &one + &s2;
    ((&one - &s2) / &d, (&two * &s) / &d)
}

/// Perturbed boundary points, one per occupied slot. Each point stays
/// strictly inside its slot cell, so the cyclic endpoint order of the taut
/// diagram is preserved while all coordinates move off any symmetric locus.
fn perturbed_points(
    d: &Diagram,
    num_arcs: usize,
    rng: &mut ChaCha8Rng,
) -> BTreeMap<Point, Pt> {
    let mut out = BTreeMap::new();
    for chords in &d.chords {
        for c in chords {
            for p in [c.arrive, c.depart] {
                if out.contains_key(&p) {
                    continue;
                }
                let (arc, slot) = p;
                let m = d.slots_per_arc[arc] as i64;
                let den = num_arcs as i64 * (m + 1);
                let base = BigRational::new(
                    BigInt::from(arc as i64 * (m + 1) + slot as i64 + 1),
                    BigInt::from(den),
                );
                // Jitter bounded by a third of the cell width.
                let j = rng.gen_range(-999i64..=999);
                let tau = base + BigRational::new(BigInt::from(j), BigInt::from(3000 * den));
                out.insert(p, circle(&tau));
            }
        }
    }
    out
}

/// `Ok(Some(sign))` for a transverse interior crossing of the two straight
/// chords, `Ok(None)` for disjoint ones, `Err(())` on a degenerate drawing.
fn chord_points_crossing(
    pts: &BTreeMap<Point, Pt>,
    c1: &Chord,
    c2: &Chord,
) -> std::result::Result<Option<i8>, ()> {
    let a1 = &pts[&c1.arrive];
    let a2 = &pts[&c1.depart];
    let b1 = &pts[&c2.arrive];
    let b2 = &pts[&c2.depart];
    let orient = |p: &Pt, q: &Pt, r: &Pt| sgn(&cross(&sub(q, p), &sub(r, p)));
    let d1 = orient(a1, a2, b1);
    let d2 = orient(a1, a2, b2);
    let d3 = orient(b1, b2, a1);
    let d4 = orient(b1, b2, a2);
    if d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0 {
        return Err(());
    }
    if d1 != d2 && d3 != d4 {
        // Crossing segments are never parallel, so the sign is nonzero.
        Ok(Some(sgn(&cross(&sub(a2, a1), &sub(b2, b1)))))
    } else {
        Ok(None)
    }
}

/// Draws the family with seeded jitter and evaluates `eval`, redrawing on a
/// degenerate configuration. Degeneracies need exact rational coincidences,
/// so a handful of attempts always suffices in practice.
fn with_perturbed<T>(
    s: &Surface,
    loops: &[&CyclicWord],
    seed: u64,
    eval: impl Fn(&Diagram, &BTreeMap<Point, Pt>) -> std::result::Result<T, ()>,
) -> T {
    let d = taut::diagram(s, loops);
    for attempt in 0..16 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        let pts = perturbed_points(&d, s.num_arcs(), &mut rng);
        if let Ok(v) = eval(&d, &pts) {
            return v;
        }
    }
    panic!("perturbed drawing stayed degenerate after 16 attempts");
}

/// Double points of the taut class of `w`, recomputed from a perturbed
/// exact drawing instead of the circular interleaving rule. Output order
/// and content match `intersect::self_intersections`.
pub fn perturbed_self_intersections(
    s: &Surface,
    w: &CyclicWord,
    seed: u64,
) -> Result<Vec<SelfDoublePoint>> {
    s.require_admits(w.letters())?;
    if w.is_constant() {
        return Ok(Vec::new());
    }
    Ok(with_perturbed(s, &[w], seed, |d, pts| {
        let chords = &d.chords[0];
        let mut out = Vec::new();
        for k in 0..chords.len() {
            for l in (k + 1)..chords.len() {
                if let Some(sign) = chord_points_crossing(pts, &chords[k], &chords[l])? {
                    let split = (
                        CyclicWord::from_letters(w.arc(k, l)),
                        CyclicWord::from_letters(w.arc(l, k)),
                    );
                    out.push(SelfDoublePoint { visits: (k, l), sign, split });
                }
            }
        }
        Ok(out)
    }))
}

/// Double points between the taut classes of `u` and `v`, recomputed from a
/// perturbed exact drawing. Output order and content match
/// `intersect::intersections`.
pub fn perturbed_intersections(
    s: &Surface,
    u: &CyclicWord,
    v: &CyclicWord,
    seed: u64,
) -> Result<Vec<DoublePoint>> {
    s.require_admits(u.letters())?;
    s.require_admits(v.letters())?;
    if u.is_constant() || v.is_constant() {
        return Ok(Vec::new());
    }
    Ok(with_perturbed(s, &[u, v], seed, |d, pts| {
        let mut out = Vec::new();
        for (k, cu) in d.chords[0].iter().enumerate() {
            for (l, cv) in d.chords[1].iter().enumerate() {
                if let Some(sign) = chord_points_crossing(pts, cu, cv)? {
                    let merged = CyclicWord::from_letters(u.rotation(k).chain(v.rotation(l)));
                    out.push(DoublePoint { visit_u: k, visit_v: l, sign, merged });
                }
            }
        }
        Ok(out)
    }))
}

/// Arf invariant obtained by counting the zeros of the quadratic form
/// `c -> (1 + rot(c)) mod 2` over the whole filled homology. A form of Arf
/// invariant zero has `2^(2g-1) + 2^(g-1)` zeros, one of invariant one has
/// `2^(2g-1) - 2^(g-1)`. Same domain of definition as the closed formula.
pub fn arf_by_counting(f: &Framing) -> Result<u8> {
    let s = f.surface().clone();
    let g = s.genus() as usize;
    if g == 0 {
        return Err(Error::NotDefined("the Arf invariant needs positive genus"));
    }
    if f.local_degrees().iter().any(|d| d % 2 != 0) {
        return Err(Error::NotDefined(
            "the Arf invariant needs even local degrees",
        ));
    }
    // Basis x_1, y_1, ..., x_g, y_g; values on the basis from rotation
    // numbers, values elsewhere from the intersection form.
    let mut q = Vec::with_capacity(2 * g);
    for i in 1..=g as u32 {
        for gen in [s.gen_x(i).unwrap(), s.gen_y(i).unwrap()] {
            let w = CyclicWord::from_letters([Letter::new(gen, false)]);
            let rot = f.rotation_number(&w).expect("generator class");
            q.push((1 + rot).rem_euclid(2) as u64);
        }
    }
    let dim = 2 * g;
    let mut zeros = 0u64;
    for mask in 0u64..(1 << dim) {
        let mut val = 0u64;
        for (b, qb) in q.iter().enumerate() {
            if mask >> b & 1 == 1 {
                val += qb;
            }
        }
        for i in 0..g {
            val += (mask >> (2 * i)) & (mask >> (2 * i + 1)) & 1;
        }
        if val % 2 == 0 {
            zeros += 1;
        }
    }
    let half = 1u64 << (dim - 1);
    let quarter = 1u64 << (g - 1);
    if zeros == half + quarter {
        Ok(0)
    } else if zeros == half - quarter {
        Ok(1)
    } else {
        panic!("zero count {zeros} does not come from a nondegenerate quadratic form");
    }
}

/// Affine action of one mapping class on twist vectors. Rotation numbers
/// are affine in the twists, hence so is the framing pushforward; the map
/// is sampled on basis framings and checked once against a probe vector.
struct AffineMove {
    matrix: Vec<Vec<i64>>,
    offset: Vec<i64>,
}

impl AffineMove {
    fn apply(&self, t: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, b)| row.iter().zip(t).map(|(a, x)| a * x).sum::<i64>() + b)
            .collect()
    }
}

fn affine_move(auto: &FreeGroupAuto) -> AffineMove {
    let s = auto.surface().clone();
    let k = s.num_gens();
    let push = |t: Vec<i64>| -> Vec<i64> {
        let f = Framing::new(s.clone(), t).expect("twist vector length");
        pushforward_framing(auto, &f)
            .expect("elementary move is a mapping class")
            .twists()
            .to_vec()
    };
    let offset = push(vec![0; k]);
    let mut matrix = vec![vec![0i64; k]; k];
    for c in 0..k {
        let mut t = vec![0i64; k];
        t[c] = 1;
        let img = push(t);
        for r in 0..k {
            matrix[r][c] = img[r] - offset[r];
        }
    }
    let mv = AffineMove { matrix, offset };
    let probe: Vec<i64> = (0..k).map(|i| (i as i64) % 3 - 1).collect();
    assert_eq!(mv.apply(&probe), push(probe.clone()), "twist action is not affine");
    mv
}

/// Handle twists and single-letter point pushes, with their inverses. The
/// push of a puncture around its own loop and all boundary-parallel twists
/// act trivially on twist vectors, so they are omitted.
fn elementary_moves(s: &Arc<Surface>) -> Vec<FreeGroupAuto> {
    let mut moves = Vec::new();
    for i in 1..=s.genus() {
        moves.push(handle_twist_x(s, i));
        moves.push(handle_twist_y(s, i));
    }
    for j in 1..=s.extra_punctures() {
        let own = s.gen_z(j);
        for gen in 0..s.num_gens() as u32 {
            if own == Some(gen) {
                continue;
            }
            let along = Word::letter(Letter::new(gen, false));
            moves.push(point_push(s, j, &along).expect("single-letter push"));
        }
    }
    let inverses: Vec<FreeGroupAuto> = moves.iter().map(FreeGroupAuto::inverse).collect();
    moves.extend(inverses);
    moves
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Partition of the twist vectors in a box into components joined by chains
/// of elementary moves that stay inside the box. A joined pair is genuinely
/// in one mapping class group orbit; a separated pair is inconclusive when
/// the chain would have to leave the box.
pub struct OrbitScan {
    bound: i64,
    component: BTreeMap<Vec<i64>, usize>,
}

impl OrbitScan {
    /// Box radius the scan was built with.
    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// `None` when either vector lies outside the box.
    pub fn same_component(&self, a: &[i64], b: &[i64]) -> Option<bool> {
        let ca = self.component.get(a)?;
        let cb = self.component.get(b)?;
        Some(ca == cb)
    }

    /// Every vector in the box with its component id.
    pub fn components(&self) -> &BTreeMap<Vec<i64>, usize> {
        &self.component
    }
}

/// Scans the box `[-bound, bound]^k` of twist vectors, joining each vector
/// to its images under all elementary moves that land inside the box.
pub fn orbit_scan(surface: &Arc<Surface>, bound: i64) -> OrbitScan {
    assert!(bound >= 0, "negative box radius");
    let k = surface.num_gens();
    let moves: Vec<AffineMove> = elementary_moves(surface).iter().map(affine_move).collect();
    let width = (2 * bound + 1) as usize;
    let total = width.pow(k as u32);
    let mut vecs = Vec::with_capacity(total);
    let mut index = BTreeMap::new();
    for code in 0..total {
        let mut t = Vec::with_capacity(k);
        let mut rest = code;
        for _ in 0..k {
            t.push((rest % width) as i64 - bound);
            rest /= width;
        }
        index.insert(t.clone(), code);
        vecs.push(t);
    }
    let mut uf = UnionFind::new(total);
    for (i, t) in vecs.iter().enumerate() {
        for mv in &moves {
            if let Some(&j) = index.get(&mv.apply(t)) {
                uf.union(i, j);
            }
        }
    }
    let mut component = BTreeMap::new();
    for (i, t) in vecs.into_iter().enumerate() {
        let root = uf.find(i);
        component.insert(t, root);
    }
    OrbitScan { bound, component }
}

/// Series stored flat as monomial to coefficient, without weight grading.
pub type FlatSeries = BTreeMap<Vec<u32>, BigRational>;

/// Total weight of a monomial.
pub fn flat_weight(s: &Surface, mono: &[u32]) -> usize {
    mono.iter().map(|&g| s.gen_weight(g)).sum()
}

/// The constant series one.
pub fn flat_one() -> FlatSeries {
    let mut out = FlatSeries::new();
    out.insert(Vec::new(), BigRational::one());
    out
}

/// Concatenation product, truncated above weight `trunc`.
pub fn flat_mul(s: &Surface, a: &FlatSeries, b: &FlatSeries, trunc: usize) -> FlatSeries {
    let mut out = FlatSeries::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m = ma.clone();
            m.extend_from_slice(mb);
            if flat_weight(s, &m) > trunc {
                continue;
            }
            let e = out.entry(m).or_insert_with(BigRational::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Exponential of a single signed letter.
pub fn flat_exp_letter(s: &Surface, l: Letter, trunc: usize) -> FlatSeries {
    let w = s.gen_weight(l.gen());
    let mut out = flat_one();
    let mut coef = BigRational::one();
    let mut k = 0usize;
    while (k + 1) * w <= trunc {
        k += 1;
        coef = &coef * BigRational::new(BigInt::from(l.sign()), BigInt::from(k as i64));
        out.insert(vec![l.gen(); k], coef.clone());
    }
    out
}

/// Image of a word under the letterwise exponential expansion.
pub fn flat_word_exp(s: &Surface, w: &Word, trunc: usize) -> FlatSeries {
    let mut out = flat_one();
    for &l in w.letters() {
        out = flat_mul(s, &out, &flat_exp_letter(s, l, trunc), trunc);
    }
    out
}

/// Logarithm of a series with scalar part one, truncated above `trunc`.
pub fn flat_log(s: &Surface, a: &FlatSeries, trunc: usize) -> FlatSeries {
    let one = BigRational::one();
    assert_eq!(a.get(&Vec::new()), Some(&one), "flat logarithm needs scalar part one");
    let mut n = a.clone();
    n.remove(&Vec::new());
    let mut out = FlatSeries::new();
    let mut power = flat_one();
    for k in 1..=trunc {
        power = flat_mul(s, &power, &n, trunc);
        if power.is_empty() {
            break;
        }
        let c = BigRational::new(
            BigInt::from(if k % 2 == 1 { 1i64 } else { -1 }),
            BigInt::from(k as i64),
        );
        for (m, q) in &power {
            let e = out.entry(m.clone()).or_insert_with(BigRational::zero);
            *e += q * &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Logarithm of the expanded boundary relator, by the flat path.
pub fn flat_boundary_log(s: &Surface, trunc: usize) -> FlatSeries {
    flat_log(s, &flat_word_exp(s, s.relator(), trunc), trunc)
}

/// Flat view of a graded series, for comparisons.
pub fn flatten(series: &Series) -> FlatSeries {
    let mut out = FlatSeries::new();
    for comp in series.components() {
        for (m, c) in comp {
            if !c.is_zero() {
                out.insert(m.clone(), c.clone());
            }
        }
    }
    out
}
