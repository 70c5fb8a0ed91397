//! Framings of the punctured surface and rotation numbers.
//!
//! The drawing of the surface fixes a blackboard framing; any other
//! homotopy class of vector fields differs by an integer twist on each
//! band. A framing is therefore a vector `t` of integers indexed by the
//! generators. The rotation number of a nonempty class `w` is the exact
//! turning of its taut representative plus the pairing of `t` with the
//! homology class of `w`; it is an integer for every framing because the
//! taut turning is already integral.

use crate::surface::Surface;
use crate::taut;
use crate::words::CyclicWord;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Homotopy class of nowhere-zero vector fields, encoded by band twists
/// relative to the blackboard framing of the standard drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Framing {
    surface: Arc<Surface>,
    twists: Vec<i64>,
}

impl Framing {
    /// Framing with the given twist per generator band.
    pub fn new(surface: Arc<Surface>, twists: Vec<i64>) -> Result<Framing> {
        if twists.len() != surface.num_gens() {
            return Err(Error::SurfaceMismatch);
        }
        Ok(Framing { surface, twists })
    }

    /// The blackboard framing of the drawing.
    pub fn blackboard(surface: Arc<Surface>) -> Framing {
        let twists = vec![0; surface.num_gens()];
        Framing { surface, twists }
    }

    /// Builds a framing from named twists; absent names default to zero.
    pub fn from_named_twists(
        surface: Arc<Surface>,
        named: &BTreeMap<String, i64>,
    ) -> Result<Framing> {
        let mut twists = vec![0i64; surface.num_gens()];
        for (name, &t) in named {
            let gen = surface.parse_gen(name)?;
            twists[gen as usize] = t;
        }
        Ok(Framing { surface, twists })
    }

    pub fn surface(&self) -> &Arc<Surface> {
        &self.surface
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn named_twists(&self) -> BTreeMap<String, i64> {
        self.twists
            .iter()
            .enumerate()
            .map(|(g, &t)| (self.surface.gen_name(g as u32), t))
            .collect()
    }

    /// Rotation number of the taut representative of `w` relative to this
    /// framing. The constant class has no taut representative.
    pub fn rotation_number(&self, w: &CyclicWord) -> Result<i64> {
        if w.is_constant() {
            return Err(Error::ConstantClass);
        }
        self.surface.require_admits(w.letters())?;
        let turn = taut::turning(&self.surface, w);
        assert!(
            turn.is_integer(),
            "internal error: taut turning {turn} is not an integer"
        );
        let h = self.surface.homology_class(w.letters());
        let twist: i64 = h.iter().zip(&self.twists).map(|(a, t)| a * t).sum();
        Ok(turn.to_integer() + twist)
    }

    /// Local degree of the framing at each puncture: `d_j = 1 - rot(gamma_j)`.
    /// The sum over all punctures equals the Euler characteristic `2 - 2g`.
    pub fn local_degrees(&self) -> Vec<i64> {
        let degrees: Vec<i64> = self
            .surface
            .boundary_words()
            .iter()
            .map(|b| 1 - self.rotation_number(b).expect("boundary word is nonempty"))
            .collect();
        let chi = 2 - 2 * self.surface.genus() as i64;
        assert_eq!(
            degrees.iter().sum::<i64>(),
            chi,
            "internal error: local degrees violate Poincare-Hopf"
        );
        degrees
    }
}
