//! Mapping class group orbit invariants of framings.
//!
//! Two framings of the same surface lie in one orbit of the mapping class
//! group exactly when a short list of invariants agree: the local degrees at
//! the punctures always; for genus one, the gcd of rotation numbers over
//! simple nonseparating classes (the `A`-invariant); for genus at least two
//! with all local degrees even, the Arf invariant of the induced quadratic
//! form. The `A`-invariant is computed from a finite generating family of
//! simple classes: the handle generators, Christoffel words of small slopes,
//! and puncture transports of the handle generators.

use crate::framing::Framing;
use crate::intersect;
use crate::surface::Surface;
use crate::words::{CyclicWord, Letter};
use crate::{Error, Result};

/// Invariants that classify the mapping class group orbit of a framing.
/// `arf` is present when the genus is positive and all local degrees are
/// even; `a` is present exactly in genus one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitInvariants {
    pub degrees: Vec<i64>,
    pub arf: Option<u8>,
    pub a: Option<i64>,
}

/// Lower Christoffel word of slope `p/q` in the first handle generators,
/// with `x_1` steps inverted when `p < 0`. Requires `p != 0`, `q >= 1`, and
/// `gcd(|p|, q) == 1`; the result is a simple nonseparating class of
/// homology class `(p, q)` on the filled surface.
pub fn christoffel(s: &Surface, p: i64, q: i64) -> CyclicWord {
    assert!(s.genus() >= 1, "Christoffel words need a handle");
    assert!(p != 0 && q >= 1 && num_integer::gcd(p.abs(), q) == 1);
    let x = Letter::new(s.gen_x(1).unwrap(), p < 0);
    let y = Letter::new(s.gen_y(1).unwrap(), false);
    let total = p.abs() + q;
    let letters = (1..=total).map(|i| {
        if (i * q).rem_euclid(total) > ((i - 1) * q).rem_euclid(total) {
            x
        } else {
            y
        }
    });
    CyclicWord::from_letters(letters)
}

fn simple_nonseparating_rot(f: &Framing, w: &CyclicWord) -> i64 {
    let s = f.surface();
    let crossings = intersect::self_intersections(s, w).expect("family class is admissible");
    assert!(
        crossings.is_empty(),
        "internal error: family class {} is not simple",
        s.format_cyclic(w)
    );
    let h = s.homology_class(w.letters());
    assert!(
        h[..2 * s.genus() as usize].iter().any(|&c| c != 0),
        "internal error: family class {} is separating",
        s.format_cyclic(w)
    );
    f.rotation_number(w).expect("family class is not constant")
}

/// Gcd of rotation numbers over simple nonseparating classes, defined for
/// genus one. Computed from the finite family `x`, `y`, Christoffel words of
/// slopes `+-p/q` with coprime `p, q <= 3`, the transports `x z_j` and
/// `y z_j^-1`, and the local degrees away from the distinguished puncture.
pub fn a_invariant(f: &Framing) -> Result<i64> {
    let s = f.surface().clone();
    if s.genus() != 1 {
        return Err(Error::NotDefined("the A-invariant needs genus one"));
    }
    let x = Letter::new(s.gen_x(1).unwrap(), false);
    let y = Letter::new(s.gen_y(1).unwrap(), false);
    let mut family = vec![
        CyclicWord::from_letters([x]),
        CyclicWord::from_letters([y]),
    ];
    for p in 1..=3 {
        for q in 1..=3 {
            if num_integer::gcd(p, q) == 1 {
                family.push(christoffel(&s, p, q));
                family.push(christoffel(&s, -p, q));
            }
        }
    }
    for j in 1..=s.extra_punctures() {
        let z = Letter::new(s.gen_z(j).unwrap(), false);
        family.push(CyclicWord::from_letters([x, z]));
        family.push(CyclicWord::from_letters([y, z.inverse()]));
    }
    let mut a = 0i64;
    for w in &family {
        a = num_integer::gcd(a, simple_nonseparating_rot(f, w));
    }
    for d in f.local_degrees().iter().skip(1) {
        a = num_integer::gcd(a, *d);
    }
    Ok(a)
}

/// Arf invariant of the quadratic form `c -> (1 + rot(c)) mod 2` on the
/// filled homology, defined when the genus is positive and every local
/// degree is even (the condition for the form to descend).
pub fn arf_invariant(f: &Framing) -> Result<u8> {
    let s = f.surface().clone();
    if s.genus() == 0 {
        return Err(Error::NotDefined("the Arf invariant needs positive genus"));
    }
    if f.local_degrees().iter().any(|d| d % 2 != 0) {
        return Err(Error::NotDefined(
            "the Arf invariant needs even local degrees",
        ));
    }
    let quad = |gen: u32| -> i64 {
        let w = CyclicWord::from_letters([Letter::new(gen, false)]);
        (1 + f.rotation_number(&w).expect("generator class")).rem_euclid(2)
    };
    let mut arf = 0;
    for i in 1..=s.genus() {
        arf += quad(s.gen_x(i).unwrap()) * quad(s.gen_y(i).unwrap());
    }
    Ok((arf % 2) as u8)
}

/// The full tuple of orbit invariants for one framing.
pub fn orbit_invariants(f: &Framing) -> OrbitInvariants {
    OrbitInvariants {
        degrees: f.local_degrees(),
        arf: arf_invariant(f).ok(),
        a: a_invariant(f).ok(),
    }
}

/// Whether two framings of the same surface differ by a mapping class.
pub fn same_mcg_orbit(f1: &Framing, f2: &Framing) -> Result<bool> {
    if f1.surface() != f2.surface() {
        return Err(Error::SurfaceMismatch);
    }
    let i1 = orbit_invariants(f1);
    let i2 = orbit_invariants(f2);
    if i1.degrees != i2.degrees {
        return Ok(false);
    }
    Ok(match f1.surface().genus() {
        0 => true,
        1 => i1.a == i2.a,
        _ => {
            if i1.degrees.iter().all(|d| d % 2 == 0) {
                i1.arf == i2.arf
            } else {
                true
            }
        }
    })
}

/// Whether some framing in the mapping class group orbit of `f` comes from
/// an expansion with quasi-algebraic leading terms. Away from genus one this
/// is unconditional; in genus one it holds exactly when the `A`-invariant
/// equals the gcd of all local degrees.
pub fn quasi_algebraic_framing_exists(f: &Framing) -> bool {
    if f.surface().genus() != 1 {
        return true;
    }
    let d = f
        .local_degrees()
        .iter()
        .fold(0i64, |acc, d| num_integer::gcd(acc, *d));
    a_invariant(f).expect("genus is one") == d
}
