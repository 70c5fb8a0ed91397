//! Double points of loops in taut position.
//!
//! All double points are transverse crossings of two disk chords. Two
//! chords cross if and only if their endpoint pairs interleave on the
//! boundary circle; the sign is `+1` when the second chord's arrival point
//! lies counterclockwise between the first chord's arrival and departure,
//! so it equals the sign of the determinant of the two tangent directions
//! at the crossing.

use crate::surface::Surface;
use crate::taut::{self, Chord, Point};
use crate::words::CyclicWord;
use crate::Result;

/// Transverse double point of one loop with itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfDoublePoint {
    /// Visit indices into the canonical word, first < second.
    pub visits: (usize, usize),
    /// Sign of (chord of the first visit, chord of the second visit).
    pub sign: i8,
    /// Classes of the two loops obtained by splitting at the double point:
    /// letters from the first visit to the second, and the complement.
    pub split: (CyclicWord, CyclicWord),
}

/// Transverse double point between two distinct taut loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublePoint {
    pub visit_u: usize,
    pub visit_v: usize,
    /// Sign of (chord of `u`, chord of `v`).
    pub sign: i8,
    /// Class of the loop obtained by merging at the double point.
    pub merged: CyclicWord,
}

/// Strict counterclockwise betweenness on the circle of endpoint slots.
fn between(x: Point, a: Point, b: Point) -> bool {
    debug_assert!(x != a && x != b && a != b);
    if a < b {
        a < x && x < b
    } else {
        x > a || x < b
    }
}

/// `Some(sign)` when the chords cross transversally, `None` otherwise.
pub(crate) fn chord_crossing(c1: &Chord, c2: &Chord) -> Option<i8> {
    let arr_in = between(c2.arrive, c1.arrive, c1.depart);
    let dep_in = between(c2.depart, c1.arrive, c1.depart);
    match (arr_in, dep_in) {
        (true, false) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    }
}

/// Double points of the taut representative of `w`, ordered by visit pair.
/// The constant class has an embedded representative, so it has none.
pub fn self_intersections(s: &Surface, w: &CyclicWord) -> Result<Vec<SelfDoublePoint>> {
    s.require_admits(w.letters())?;
    if w.is_constant() {
        return Ok(Vec::new());
    }
    let d = taut::diagram(s, &[w]);
    let chords = &d.chords[0];
    let mut out = Vec::new();
    for k in 0..chords.len() {
        for l in (k + 1)..chords.len() {
            if let Some(sign) = chord_crossing(&chords[k], &chords[l]) {
                let split = (
                    CyclicWord::from_letters(w.arc(k, l)),
                    CyclicWord::from_letters(w.arc(l, k)),
                );
                out.push(SelfDoublePoint { visits: (k, l), sign, split });
            }
        }
    }
    Ok(out)
}

/// Double points between taut representatives of `u` and `v`, ordered by
/// visit pair. The two representatives are drawn simultaneously, so equal
/// classes yield parallel copies whose crossings cancel in signed sums.
pub fn intersections(s: &Surface, u: &CyclicWord, v: &CyclicWord) -> Result<Vec<DoublePoint>> {
    s.require_admits(u.letters())?;
    s.require_admits(v.letters())?;
    if u.is_constant() || v.is_constant() {
        return Ok(Vec::new());
    }
    let d = taut::diagram(s, &[u, v]);
    let mut out = Vec::new();
    for (k, cu) in d.chords[0].iter().enumerate() {
        for (l, cv) in d.chords[1].iter().enumerate() {
            if let Some(sign) = chord_crossing(cu, cv) {
                let merged =
                    CyclicWord::from_letters(u.rotation(k).chain(v.rotation(l)));
                out.push(DoublePoint { visit_u: k, visit_v: l, sign, merged });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> Surface {
        Surface::build(1, 0).unwrap()
    }

    #[test]
    fn generators_of_the_torus_cross_once_positively() {
        let s = torus();
        let u = s.parse_cyclic("x").unwrap();
        let v = s.parse_cyclic("y").unwrap();
        let dps = intersections(&s, &u, &v).unwrap();
        assert_eq!(dps.len(), 1);
        assert_eq!(dps[0].sign, 1);
        assert_eq!(dps[0].merged, s.parse_cyclic("x y").unwrap());
    }

    #[test]
    fn inverse_classes_have_disjoint_representatives() {
        let s = torus();
        let u = s.parse_cyclic("x").unwrap();
        let v = s.parse_cyclic("X").unwrap();
        assert!(intersections(&s, &u, &v).unwrap().is_empty());
    }

    #[test]
    fn square_of_a_simple_loop_has_one_double_point() {
        let s = torus();
        let w = s.parse_cyclic("x x").unwrap();
        let dps = self_intersections(&s, &w).unwrap();
        assert_eq!(dps.len(), 1);
        let x = s.parse_cyclic("x").unwrap();
        assert_eq!(dps[0].split, (x.clone(), x));
    }

    #[test]
    fn cube_of_a_simple_loop_has_two_double_points() {
        let s = torus();
        let w = s.parse_cyclic("x x x").unwrap();
        let dps = self_intersections(&s, &w).unwrap();
        assert_eq!(dps.len(), 2);
        let x = s.parse_cyclic("x").unwrap();
        let xx = s.parse_cyclic("x x").unwrap();
        let mut splits: Vec<_> = dps.iter().map(|d| d.split.clone()).collect();
        splits.sort();
        let mut expect = vec![(x.clone(), xx.clone()), (xx, x)];
        expect.sort();
        assert_eq!(splits, expect);
    }

    #[test]
    fn some_simple_classes() {
        let s = torus();
        for word in ["x", "y", "x y", "x x y", "x y y", "x1 y1 X1 Y1"] {
            let w = s.parse_cyclic(word).unwrap();
            assert!(
                self_intersections(&s, &w).unwrap().is_empty(),
                "{word} should be simple"
            );
        }
        let s2 = Surface::build(0, 2).unwrap();
        for word in ["z1", "z2", "z1 z2", "Z2 Z1"] {
            let w = s2.parse_cyclic(word).unwrap();
            assert!(
                self_intersections(&s2, &w).unwrap().is_empty(),
                "{word} should be simple"
            );
        }
        let s3 = Surface::build(1, 1).unwrap();
        for word in ["x", "y", "z", "x y", "x z", "y Z", "x1 y1 X1 Y1 z1"] {
            let w = s3.parse_cyclic(word).unwrap();
            assert!(
                self_intersections(&s3, &w).unwrap().is_empty(),
                "{word} should be simple"
            );
        }
    }

    #[test]
    fn vertex_order_makes_y_z_cross_itself_once() {
        // In this ribbon structure the chords of y z interleave at the
        // vertex disk, so the class is not simple even though y Z is.
        let s = Surface::build(1, 1).unwrap();
        let w = s.parse_cyclic("y z").unwrap();
        let dps = self_intersections(&s, &w).unwrap();
        assert_eq!(dps.len(), 1);
        assert_eq!(
            dps[0].split,
            (s.parse_cyclic("y").unwrap(), s.parse_cyclic("z").unwrap())
        );
    }

    #[test]
    fn relator_class_is_embedded() {
        // Boundary words are face words of the ribbon graph, hence simple.
        for (g, n) in [(1, 0), (0, 2), (1, 1), (2, 0), (0, 3)] {
            let s = Surface::build(g, n).unwrap();
            for b in s.boundary_words() {
                assert!(self_intersections(&s, b).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn splits_reduce_cyclically() {
        // Splitting can expose cancellations across the seam.
        let s = torus();
        let w = s.parse_cyclic("x y X y").unwrap();
        for dp in self_intersections(&s, &w).unwrap() {
            let (a, b) = &dp.split;
            // Both sides must be canonical, possibly constant.
            assert_eq!(*a, CyclicWord::from_letters(a.letters().iter().copied()));
            assert_eq!(*b, CyclicWord::from_letters(b.letters().iter().copied()));
        }
    }

    #[test]
    fn mismatched_letters_are_rejected() {
        let s = Surface::build(0, 2).unwrap();
        let bigger = Surface::build(0, 3).unwrap();
        let w = bigger.parse_cyclic("z3").unwrap();
        assert!(self_intersections(&s, &w).is_err());
    }
}
