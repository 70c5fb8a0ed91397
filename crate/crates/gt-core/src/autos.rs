//! Automorphisms of the fundamental group, mapping classes, and the action
//! on framings.
//!
//! The fundamental group is free, so an automorphism is stored as the tuple
//! of generator images together with the images under the inverse. An
//! automorphism represents a mapping class exactly when it fixes the
//! conjugacy class of every boundary word; such classes act on framings by
//! transport of rotation numbers.
//!
//! Two constructions produce mapping classes directly. A Dehn twist along
//! an embedded loop rewrites each generator by inserting a copy of the loop
//! at every crossing, with crossings located and ordered by exact rational
//! geometry on the taut diagram. A point push dragging a puncture around a
//! loop is the quotient of two twists, along the loop itself and along its
//! transport across the puncture; the pair is normalized so that the action
//! on homology inserts the intersection number with the pushed loop.

use crate::framing::Framing;
use crate::geom;
use crate::intersect;
use crate::surface::Surface;
use crate::taut;
use crate::words::{CyclicWord, Letter, Word};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::{Arc, Mutex};

/// Automorphism of the free fundamental group, with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroupAuto {
    surface: Arc<Surface>,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

impl FreeGroupAuto {
    pub fn identity(surface: Arc<Surface>) -> Self {
        let images: Vec<Word> = (0..surface.num_gens())
            .map(|g| Word::letter(Letter::new(g as u32, false)))
            .collect();
        FreeGroupAuto {
            surface,
            inverse_images: images.clone(),
            images,
        }
    }

    /// Automorphism sending generator `i` to `images[i]`. The inverse is
    /// found by Nielsen reduction of the image tuple; tuples that do not
    /// form a basis are rejected.
    pub fn from_images(surface: Arc<Surface>, images: Vec<Word>) -> Result<Self> {
        check_images(&surface, &images)?;
        let inverse_images = nielsen_inverse(&surface, &images).ok_or_else(|| {
            Error::NotMappingClass("the generator images are not a free basis".into())
        })?;
        let auto = FreeGroupAuto {
            surface,
            images,
            inverse_images,
        };
        assert!(
            auto.composes_to_identity(),
            "internal error: Nielsen inverse does not invert"
        );
        Ok(auto)
    }

    /// Automorphism with both directions supplied; the compositions are
    /// verified to be the identity.
    pub fn from_images_with_inverse(
        surface: Arc<Surface>,
        images: Vec<Word>,
        inverse_images: Vec<Word>,
    ) -> Result<Self> {
        check_images(&surface, &images)?;
        check_images(&surface, &inverse_images)?;
        let auto = FreeGroupAuto {
            surface,
            images,
            inverse_images,
        };
        if auto.composes_to_identity() {
            Ok(auto)
        } else {
            Err(Error::NotMappingClass(
                "the supplied inverse images do not invert the automorphism".into(),
            ))
        }
    }

    fn composes_to_identity(&self) -> bool {
        (0..self.surface.num_gens()).all(|g| {
            let l = Word::letter(Letter::new(g as u32, false));
            self.apply(&self.inverse_images[g]) == l && self.apply_inverse(&self.images[g]) == l
        })
    }

    pub fn surface(&self) -> &Arc<Surface> {
        &self.surface
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse_images
    }

    pub fn apply(&self, w: &Word) -> Word {
        apply_images(&self.images, w)
    }

    pub fn apply_inverse(&self, w: &Word) -> Word {
        apply_images(&self.inverse_images, w)
    }

    /// Action on free homotopy classes.
    pub fn apply_class(&self, w: &CyclicWord) -> CyclicWord {
        CyclicWord::from_word(&self.apply(&w.to_word()))
    }

    pub fn inverse(&self) -> FreeGroupAuto {
        FreeGroupAuto {
            surface: self.surface.clone(),
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &FreeGroupAuto) -> FreeGroupAuto {
        assert_eq!(
            self.surface, other.surface,
            "composing automorphisms of different surfaces"
        );
        FreeGroupAuto {
            surface: self.surface.clone(),
            images: other.images.iter().map(|w| self.apply(w)).collect(),
            inverse_images: self
                .inverse_images
                .iter()
                .map(|w| apply_images(&other.inverse_images, w))
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(g, w)| *w == Word::letter(Letter::new(g as u32, false)))
    }

    /// Whether every boundary class is fixed, so the automorphism is
    /// induced by a homeomorphism fixing each puncture.
    pub fn is_mapping_class(&self) -> bool {
        self.surface
            .boundary_words()
            .iter()
            .all(|b| self.apply_class(b) == *b)
    }

    pub fn require_mapping_class(&self) -> Result<()> {
        if self.is_mapping_class() {
            Ok(())
        } else {
            Err(Error::NotMappingClass(
                "a boundary class is not fixed up to conjugacy".into(),
            ))
        }
    }

    /// Matrix of the action on `H_1`; column `c` is the class of the image
    /// of generator `c`.
    pub fn homology_matrix(&self) -> Vec<Vec<i64>> {
        let k = self.surface.num_gens();
        let mut m = vec![vec![0i64; k]; k];
        for (c, w) in self.images.iter().enumerate() {
            for (r, v) in self
                .surface
                .homology_class(w.letters())
                .into_iter()
                .enumerate()
            {
                m[r][c] = v;
            }
        }
        m
    }
}

fn apply_images(images: &[Word], w: &Word) -> Word {
    let mut acc = Word::identity();
    for &l in w.letters() {
        let img = &images[l.gen() as usize];
        if l.is_inverse() {
            acc = acc.concat(&img.inverse());
        } else {
            acc = acc.concat(img);
        }
    }
    acc
}

fn check_images(surface: &Surface, images: &[Word]) -> Result<()> {
    if images.len() != surface.num_gens() {
        return Err(Error::SurfaceMismatch);
    }
    for w in images {
        surface.require_admits(w.letters())?;
    }
    Ok(())
}

/// State of the Nielsen reduction: `u` is the current tuple, `p` tracks
/// preimages so that `auto(p[i]) = c * u[i] * c^-1` stays true under every
/// move, and `c` collects stripped conjugators.
#[derive(Clone)]
struct ReduceState {
    u: Vec<Word>,
    p: Vec<Word>,
    c: Word,
}

fn tuple_key(u: &[Word]) -> Vec<Vec<Letter>> {
    u.iter().map(|w| w.letters().to_vec()).collect()
}

fn pair_move(state: &ReduceState, i: usize, j: usize, inv: bool, right: bool) -> Option<ReduceState> {
    let (uj, pj) = if inv {
        (state.u[j].inverse(), state.p[j].inverse())
    } else {
        (state.u[j].clone(), state.p[j].clone())
    };
    let (nu, np) = if right {
        (state.u[i].concat(&uj), state.p[i].concat(&pj))
    } else {
        (uj.concat(&state.u[i]), pj.concat(&state.p[i]))
    };
    if nu.is_empty() {
        return None;
    }
    let mut next = state.clone();
    next.u[i] = nu;
    next.p[i] = np;
    Some(next)
}

fn strip_move(state: &ReduceState, a: Letter) -> Option<ReduceState> {
    let aw = Word::letter(a);
    let ai = aw.inverse();
    let mut nu = Vec::with_capacity(state.u.len());
    let mut before = 0usize;
    let mut after = 0usize;
    for u in &state.u {
        let v = ai.concat(u).concat(&aw);
        if v.is_empty() {
            return None;
        }
        before += u.len();
        after += v.len();
        nu.push(v);
    }
    if after >= before {
        return None;
    }
    Some(ReduceState {
        u: nu,
        p: state.p.clone(),
        c: state.c.concat(&aw),
    })
}

fn best_decreasing(num_gens: usize, state: &ReduceState) -> Option<ReduceState> {
    let k = state.u.len();
    let mut best: Option<(usize, ReduceState)> = None;
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            for inv in [false, true] {
                for right in [false, true] {
                    if let Some(next) = pair_move(state, i, j, inv, right) {
                        if next.u[i].len() < state.u[i].len() {
                            let gain = state.u[i].len() - next.u[i].len();
                            if best.as_ref().map_or(true, |(g, _)| gain > *g) {
                                best = Some((gain, next));
                            }
                        }
                    }
                }
            }
        }
    }
    for g in 0..num_gens {
        for invert in [false, true] {
            if let Some(next) = strip_move(state, Letter::new(g as u32, invert)) {
                let gain = state.u.iter().map(Word::len).sum::<usize>()
                    - next.u.iter().map(Word::len).sum::<usize>();
                if best.as_ref().map_or(true, |(g2, _)| gain > *g2) {
                    best = Some((gain, next));
                }
            }
        }
    }
    best.map(|(_, s)| s)
}

/// Breadth-first walk through length-preserving pair moves until a state
/// with a length-decreasing move appears.
fn plateau_escape(num_gens: usize, state: &ReduceState) -> Option<ReduceState> {
    let mut seen = BTreeSet::new();
    seen.insert(tuple_key(&state.u));
    let mut queue = VecDeque::new();
    queue.push_back(state.clone());
    let mut expanded = 0usize;
    while let Some(cur) = queue.pop_front() {
        expanded += 1;
        if expanded > 4000 {
            return None;
        }
        let k = cur.u.len();
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                for inv in [false, true] {
                    for right in [false, true] {
                        let Some(next) = pair_move(&cur, i, j, inv, right) else {
                            continue;
                        };
                        match next.u[i].len().cmp(&cur.u[i].len()) {
                            Ordering::Less => return Some(next),
                            Ordering::Equal => {
                                if seen.insert(tuple_key(&next.u)) {
                                    queue.push_back(next);
                                }
                            }
                            Ordering::Greater => {}
                        }
                    }
                }
            }
        }
        if let Some(next) = best_decreasing(num_gens, &cur) {
            return Some(next);
        }
    }
    None
}

fn nielsen_inverse(surface: &Surface, images: &[Word]) -> Option<Vec<Word>> {
    if !unimodular(surface, images) {
        return None;
    }
    let k = images.len();
    let mut state = ReduceState {
        u: images.to_vec(),
        p: (0..k)
            .map(|g| Word::letter(Letter::new(g as u32, false)))
            .collect(),
        c: Word::identity(),
    };
    loop {
        if state.u.iter().all(|u| u.len() == 1) {
            let gens: BTreeSet<u32> = state.u.iter().map(|u| u.letters()[0].gen()).collect();
            if gens.len() != k {
                return None;
            }
            break;
        }
        state = best_decreasing(k, &state).or_else(|| plateau_escape(k, &state))?;
    }
    // Now auto(p[i]^s) = c * g * c^-1 for the single letter g^s = u[i], so
    // with b[g] = p[i]^s and q = b(c) the inverse sends g to q^-1 b[g] q.
    let mut b: Vec<Option<Word>> = vec![None; k];
    for i in 0..k {
        let l = state.u[i].letters()[0];
        let w = if l.is_inverse() {
            state.p[i].inverse()
        } else {
            state.p[i].clone()
        };
        b[l.gen() as usize] = Some(w);
    }
    let b: Vec<Word> = b.into_iter().map(Option::unwrap).collect();
    let q = apply_images(&b, &state.c);
    let qi = q.inverse();
    Some(b.iter().map(|w| qi.concat(w).concat(&q)).collect())
}

/// Necessary condition for a basis: the action on `H_1` has determinant
/// `+-1`. Computed by fraction-free elimination in exact integers.
fn unimodular(surface: &Surface, images: &[Word]) -> bool {
    let k = images.len();
    let mut m: Vec<Vec<BigInt>> = images
        .iter()
        .map(|w| {
            surface
                .homology_class(w.letters())
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for col in 0..k {
        let Some(pivot) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return false;
        };
        if pivot != col {
            m.swap(pivot, col);
            sign = -sign;
        }
        for r in col + 1..k {
            for c in col + 1..k {
                m[r][c] = (&m[col][col] * &m[r][c] - &m[r][col] * &m[col][c]) / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[col][col].clone();
    }
    let det = &m[k - 1][k - 1] * sign;
    det == BigInt::one() || det == -BigInt::one()
}

/// `x_i -> x_i y_i`, everything else fixed; a Dehn twist, since it
/// preserves the handle commutator exactly.
pub fn handle_twist_x(surface: &Arc<Surface>, i: u32) -> FreeGroupAuto {
    let gx = surface.gen_x(i).expect("handle index in range");
    let gy = surface.gen_y(i).expect("handle index in range");
    elementary_twist(surface, gx, gy)
}

/// `y_i -> y_i x_i`, everything else fixed.
pub fn handle_twist_y(surface: &Arc<Surface>, i: u32) -> FreeGroupAuto {
    let gx = surface.gen_x(i).expect("handle index in range");
    let gy = surface.gen_y(i).expect("handle index in range");
    elementary_twist(surface, gy, gx)
}

fn elementary_twist(surface: &Arc<Surface>, target: u32, by: u32) -> FreeGroupAuto {
    let mut auto = FreeGroupAuto::identity(surface.clone());
    let t = Letter::new(target, false);
    auto.images[target as usize] = Word::from_letters([t, Letter::new(by, false)]);
    auto.inverse_images[target as usize] = Word::from_letters([t, Letter::new(by, true)]);
    debug_assert!(auto.composes_to_identity());
    assert!(
        auto.is_mapping_class(),
        "internal error: handle twist moves a boundary class"
    );
    auto
}

/// Dehn twist along an embedded loop. The two twists along the same loop
/// are inverse to each other; which one this function returns is a fixed
/// convention of the drawing.
pub fn dehn_twist(surface: &Arc<Surface>, curve: &CyclicWord) -> Result<FreeGroupAuto> {
    if curve.is_constant() {
        return Err(Error::ConstantClass);
    }
    surface.require_admits(curve.letters())?;
    if !intersect::self_intersections(surface, curve)?.is_empty() {
        return Err(Error::NotDefined("Dehn twists need an embedded loop"));
    }
    let k = surface.num_gens();
    let mut images = Vec::with_capacity(k);
    let mut inverse_images = Vec::with_capacity(k);
    for g in 0..k {
        images.push(twisted_generator(surface, curve, g as u32, 1));
        inverse_images.push(twisted_generator(surface, curve, g as u32, -1));
    }
    let auto = FreeGroupAuto {
        surface: surface.clone(),
        images,
        inverse_images,
    };
    assert!(
        auto.composes_to_identity(),
        "internal error: opposite twists do not cancel"
    );
    assert!(
        auto.is_mapping_class(),
        "internal error: twist moves a boundary class"
    );
    Ok(auto)
}

/// Image of a generator under the twist: reroute its single visit through
/// the basepoint and insert a copy of the twisting loop at every crossing
/// with the loop's chords, in order along the rerouted visit.
fn twisted_generator(surface: &Surface, curve: &CyclicWord, gen: u32, power: i8) -> Word {
    let letter = Letter::new(gen, false);
    let cyc = CyclicWord::from_letters([letter]);
    let diagram = taut::diagram(surface, &[&cyc, curve]);
    let arcs = surface.num_arcs();
    let pt = |p: taut::Point| {
        geom::circle_point(&geom::slot_position(arcs, p.0, p.1, diagram.slots_per_arc[p.0]))
    };
    let own = diagram.chords[0][0];
    let depart = pt(own.depart);
    let arrive = pt(own.arrive);
    let base = geom::basepoint();
    let mut before: Vec<(BigRational, usize, i8)> = Vec::new();
    let mut after: Vec<(BigRational, usize, i8)> = Vec::new();
    for (v, chord) in diagram.chords[1].iter().enumerate() {
        let p = pt(chord.arrive);
        let q = pt(chord.depart);
        assert!(
            !geom::cross(&geom::sub(&q, &p), &geom::sub(&base, &p)).is_zero(),
            "internal error: basepoint lies on a chord"
        );
        if let Some((t, s)) = geom::segment_crossing(&base, &depart, &p, &q) {
            before.push((t, v, s));
        }
        if let Some((t, s)) = geom::segment_crossing(&arrive, &base, &p, &q) {
            after.push((t, v, s));
        }
    }
    before.sort_by(|a, b| a.0.cmp(&b.0));
    after.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = Word::identity();
    for (_, v, s) in &before {
        out = out.concat(&twist_insertion(curve, *v, s * power));
    }
    out = out.concat(&Word::letter(letter));
    for (_, v, s) in &after {
        out = out.concat(&twist_insertion(curve, *v, s * power));
    }
    out
}

/// The twisting loop read once around, starting at the crossed visit.
fn twist_insertion(curve: &CyclicWord, visit: usize, exponent: i8) -> Word {
    let w = Word::from_letters(curve.rotation(visit));
    if exponent < 0 {
        w.inverse()
    } else {
        w
    }
}

static PUSH_CACHE: Lazy<Mutex<BTreeMap<(u32, u32, u32, u32), (Vec<Word>, Vec<Word>)>>> =
    Lazy::new(|| Mutex::new(BTreeMap::new()));

/// Mapping class dragging puncture `puncture` (1-based among the `z`
/// punctures) around the based loop `along`, composed letter by letter.
/// The result is canonical up to an inner automorphism; rotation numbers,
/// cocycles and orbit data do not see the difference.
pub fn point_push(surface: &Arc<Surface>, puncture: u32, along: &Word) -> Result<FreeGroupAuto> {
    if puncture == 0 || puncture > surface.extra_punctures() {
        return Err(Error::InvalidPuncture(puncture as usize));
    }
    surface.require_admits(along.letters())?;
    let mut acc = FreeGroupAuto::identity(surface.clone());
    for &l in along.letters() {
        acc = acc.compose(&letter_push(surface, puncture, l)?);
    }
    Ok(acc)
}

fn letter_push(surface: &Arc<Surface>, j: u32, l: Letter) -> Result<FreeGroupAuto> {
    let zj = surface.gen_z(j).expect("puncture index validated");
    if l.gen() == zj {
        // Dragging the puncture around its own loop becomes isotopic to the
        // identity once the puncture is filled.
        return Ok(FreeGroupAuto::identity(surface.clone()));
    }
    let positive = positive_letter_push(surface, j, l.gen())?;
    Ok(if l.is_inverse() {
        positive.inverse()
    } else {
        positive
    })
}

/// Push of puncture `j` around the positive generator `gen`: the twist
/// along the transported loop `gen * z_j^(+-1)` times the inverse twist
/// along `gen`. The two orderings are inverse pushes; the one kept is the
/// one whose cocycle is the local degree times the intersection pairing,
/// which on homology subtracts `<gen, .>` copies of `z_j`.
fn positive_letter_push(surface: &Arc<Surface>, j: u32, gen: u32) -> Result<FreeGroupAuto> {
    let key = (surface.genus(), surface.extra_punctures(), j, gen);
    if let Some((images, inverse_images)) = PUSH_CACHE.lock().unwrap().get(&key) {
        return Ok(FreeGroupAuto {
            surface: surface.clone(),
            images: images.clone(),
            inverse_images: inverse_images.clone(),
        });
    }
    let zj = Letter::new(surface.gen_z(j).expect("puncture index validated"), false);
    let c = Letter::new(gen, false);
    let around = CyclicWord::from_letters([c]);
    let transported = [zj, zj.inverse()]
        .into_iter()
        .map(|z| CyclicWord::from_letters([c, z]))
        .find(|w| {
            intersect::self_intersections(surface, w)
                .map(|d| d.is_empty())
                .unwrap_or(false)
        })
        .expect("internal error: no embedded transport of the pushed loop");
    let t_around = dehn_twist(surface, &around)?;
    let t_transported = dehn_twist(surface, &transported)?;
    let hc = surface.homology_class(&[c]);
    let auto = [
        t_transported.compose(&t_around.inverse()),
        t_around.compose(&t_transported.inverse()),
    ]
    .into_iter()
    .find(|a| push_homology_law(surface, a, &hc, zj.gen()))
    .expect("internal error: neither twist order matches the push homology action");
    assert!(
        auto.is_mapping_class(),
        "internal error: point push moves a boundary class"
    );
    PUSH_CACHE.lock().unwrap().insert(
        key,
        (auto.images.clone(), auto.inverse_images.clone()),
    );
    Ok(auto)
}

fn push_homology_law(surface: &Surface, a: &FreeGroupAuto, hc: &[i64], zj: u32) -> bool {
    (0..surface.num_gens()).all(|g| {
        let hg = surface.homology_class(&[Letter::new(g as u32, false)]);
        let mut expect = hg.clone();
        expect[zj as usize] -= surface.intersection_pairing(hc, &hg);
        surface.homology_class(a.images[g].letters()) == expect
    })
}

/// Transport of a framing along a mapping class: the new rotation number of
/// a class is the old rotation number of its preimage. The result is
/// checked on every two-letter class and every boundary class.
pub fn pushforward_framing(auto: &FreeGroupAuto, framing: &Framing) -> Result<Framing> {
    auto.require_mapping_class()?;
    if auto.surface() != framing.surface() {
        return Err(Error::SurfaceMismatch);
    }
    let s = auto.surface().clone();
    let mut twists = Vec::with_capacity(s.num_gens());
    for g in 0..s.num_gens() {
        let l = Letter::new(g as u32, false);
        let pre = CyclicWord::from_word(&auto.apply_inverse(&Word::letter(l)));
        let rot = framing.rotation_number(&pre)?;
        let turn = taut::turning(&s, &CyclicWord::from_letters([l]));
        assert!(turn.is_integer(), "internal error: non-integer turning");
        twists.push(rot - turn.to_integer());
    }
    let pushed = Framing::new(s.clone(), twists)?;
    let check = |w: &CyclicWord| {
        let pre = CyclicWord::from_word(&auto.apply_inverse(&w.to_word()));
        assert_eq!(
            pushed.rotation_number(w).expect("nonconstant class"),
            framing.rotation_number(&pre).expect("nonconstant class"),
            "internal error: pushforward is not linear over homology"
        );
    };
    let letters: Vec<Letter> = (0..s.num_gens() as u32)
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    for &a in &letters {
        for &b in &letters {
            if b != a.inverse() {
                check(&CyclicWord::from_letters([a, b]));
            }
        }
    }
    for b in s.boundary_words() {
        check(b);
    }
    Ok(pushed)
}

/// Difference of twist coordinates between the transported and original
/// framing on the handle generators. Puncture coordinates never move, which
/// is asserted.
pub fn framing_cocycle(auto: &FreeGroupAuto, framing: &Framing) -> Result<Vec<i64>> {
    let pushed = pushforward_framing(auto, framing)?;
    let s = auto.surface();
    let handles = 2 * s.genus() as usize;
    let mut out = Vec::with_capacity(handles);
    for (g, (new, old)) in pushed.twists().iter().zip(framing.twists()).enumerate() {
        if g < handles {
            out.push(new - old);
        } else {
            assert_eq!(new, old, "internal error: cocycle moves a puncture twist");
        }
    }
    Ok(out)
}
