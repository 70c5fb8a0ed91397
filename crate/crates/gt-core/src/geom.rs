//! Exact rational coordinates for taut diagrams.
//!
//! A strand endpoint is placed on the unit circle by its circular position
//! in `(0, 1)`: the position is sent through a monotone rational map onto
//! the rational parametrization of the circle, so circular order is
//! preserved exactly and straight chords between such points cross exactly
//! when their endpoints interleave. All arithmetic is exact.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Pt = (BigRational, BigRational);

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Circular position in `(0, 1)` of slot `slot` out of `slots` on the arc
/// at position `arc` out of `arcs`.
pub(crate) fn slot_position(arcs: usize, arc: usize, slot: usize, slots: usize) -> BigRational {
    assert!(slot < slots && arc < arcs);
    let spread = ratio(slot as i64 + 1, slots as i64 + 1);
    (BigRational::from_integer((arc as i64).into()) + spread)
        / BigRational::from_integer((arcs as i64).into())
}

/// Point of the unit circle at circular position `tau` in `(0, 1)`,
/// counterclockwise and order preserving.
pub(crate) fn circle_point(tau: &BigRational) -> Pt {
    let one = BigRational::one();
    let two = &one + &one;
    assert!(tau > &BigRational::zero() && tau < &one);
    let s = (&two * tau - &one) / (tau * &(&one - tau));
    let s2 = &s * &s;
    let denom = &one + &s2;
    ((&one - &s2) / &denom, &two * &s / &denom)
}

/// A fixed interior point lying on none of the chords that arise from slot
/// positions; used as the basepoint when a loop is rerouted through the
/// disk center region.
pub(crate) fn basepoint() -> Pt {
    (ratio(9, 17), ratio(2, 19))
}

pub(crate) fn sub(a: &Pt, b: &Pt) -> Pt {
    (&a.0 - &b.0, &a.1 - &b.1)
}

pub(crate) fn cross(a: &Pt, b: &Pt) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Proper crossing of the open segments `a -> b` and `p -> q`: the
/// parameter along `a -> b` and the orientation sign of the frame
/// `(b - a, q - p)`.
pub(crate) fn segment_crossing(a: &Pt, b: &Pt, p: &Pt, q: &Pt) -> Option<(BigRational, i8)> {
    let d1 = sub(b, a);
    let d2 = sub(q, p);
    let denom = cross(&d1, &d2);
    if denom.is_zero() {
        return None;
    }
    let w = sub(p, a);
    let t = cross(&w, &d2) / &denom;
    let u = cross(&w, &d1) / &denom;
    let zero = BigRational::zero();
    let one = BigRational::one();
    if t > zero && t < one && u > zero && u < one {
        Some((t, if denom.is_positive() { 1 } else { -1 }))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_points_preserve_circular_order() {
        let taus: Vec<BigRational> = (1..12).map(|k| ratio(k, 12)).collect();
        let pts: Vec<Pt> = taus.iter().map(circle_point).collect();
        for p in &pts {
            assert_eq!(&p.0 * &p.0 + &p.1 * &p.1, BigRational::one());
        }
        // Successive points wind once counterclockwise: every consecutive
        // triple is positively oriented relative to the first point.
        for w in pts.windows(3) {
            let u = sub(&w[1], &w[0]);
            let v = sub(&w[2], &w[0]);
            assert!(cross(&u, &v).is_positive());
        }
    }

    #[test]
    fn crossing_detection_matches_interleaving() {
        let pt = |k: i64| circle_point(&ratio(k, 8));
        let (a, b, p, q) = (pt(1), pt(3), pt(2), pt(5));
        assert!(segment_crossing(&a, &b, &p, &q).is_some());
        let (a, b, p, q) = (pt(1), pt(3), pt(4), pt(6));
        assert!(segment_crossing(&a, &b, &p, &q).is_none());
    }

    #[test]
    fn crossing_parameter_orders_crossings_along_a_segment() {
        let pt = |k: i64| circle_point(&ratio(k, 16));
        let a = pt(1);
        let b = pt(8);
        let near = segment_crossing(&a, &b, &pt(2), &pt(15)).unwrap();
        let far = segment_crossing(&a, &b, &pt(7), &pt(9)).unwrap();
        assert!(near.0 < far.0);
    }
}
