//! The one-vertex ribbon graph model of a punctured surface.
//!
//! A surface `S` of genus `g >= 0` with `n + 1 >= 1` punctures (hyperbolic,
//! so `2g - 1 + n > 0`) deformation retracts onto a wedge of `2g + n`
//! circles. We realize the wedge as a round disk whose boundary circle
//! carries `N = 2(2g + n)` attachment arcs, one per end of each band
//! (edge). Bands are attached outside the disk; loops traverse a chord of
//! the disk between consecutive band ends and then run through a band.
//!
//! Attachment arc `k` sits at angle `k/N` of a full turn, counterclockwise.
//! The stored arc order is the reverse of
//! `x_1, y_1^-1, x_1^-1, y_1, ..., x_g, ..., z_1, z_1^-1, ..., z_n, z_n^-1`,
//! where a generator label marks the band end the loop *leaves* through
//! when reading that letter (the initial end) and an inverted label marks
//! the end it *enters* (the terminal end). With this order the outer face
//! of the graph reads the relator `[x_1,y_1]...[x_g,y_g] z_1...z_n`
//! (puncture `0`) and each remaining face reads `z_j^-1` (puncture `j`).

use crate::words::{CyclicWord, Letter, Word};
use crate::{Error, Result};
use num_rational::Rational64;

/// Ribbon graph surface. Equality is by `(g, n)`: the construction is
/// deterministic, so two surfaces with equal signature are identical.
#[derive(Debug, Clone)]
pub struct Surface {
    g: u32,
    n: u32,
    /// Position `p` holds the half-edge attached at angle `p/N`.
    arc_order: Vec<HalfEdge>,
    /// Per generator: positions of its initial and terminal arcs.
    arc_pos: Vec<[usize; 2]>,
    /// Boundary words, index `j` = puncture `j`.
    boundary: Vec<CyclicWord>,
    /// Based relator `[x_1,y_1]...[x_g,y_g] z_1...z_n`.
    relator: Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct HalfEdge {
    gen: u32,
    /// `true` at the terminal end of the band.
    terminal: bool,
}

impl PartialEq for Surface {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g && self.n == other.n
    }
}
impl Eq for Surface {}

impl Surface {
    /// Builds the surface of genus `g` with `n + 1` punctures.
    pub fn build(g: u32, n: u32) -> Result<Surface> {
        if 2 * (g as i64) - 1 + (n as i64) <= 0 {
            return Err(Error::NonHyperbolic { g, n });
        }
        let num_gens = (2 * g + n) as usize;
        let mut original = Vec::with_capacity(2 * num_gens);
        for i in 0..g {
            let x = 2 * i;
            let y = 2 * i + 1;
            original.push(HalfEdge { gen: x, terminal: false });
            original.push(HalfEdge { gen: y, terminal: true });
            original.push(HalfEdge { gen: x, terminal: true });
            original.push(HalfEdge { gen: y, terminal: false });
        }
        for j in 0..n {
            let z = 2 * g + j;
            original.push(HalfEdge { gen: z, terminal: false });
            original.push(HalfEdge { gen: z, terminal: true });
        }
        let arc_order: Vec<HalfEdge> = original.into_iter().rev().collect();

        let mut arc_pos = vec![[usize::MAX; 2]; num_gens];
        for (p, h) in arc_order.iter().enumerate() {
            arc_pos[h.gen as usize][h.terminal as usize] = p;
        }

        let mut relator = Word::identity();
        for i in 0..g {
            let x = Word::letter(Letter::new(2 * i, false));
            let y = Word::letter(Letter::new(2 * i + 1, false));
            relator = relator
                .concat(&x)
                .concat(&y)
                .concat(&x.inverse())
                .concat(&y.inverse());
        }
        for j in 0..n {
            relator = relator.concat(&Word::letter(Letter::new(2 * g + j, false)));
        }

        let mut s = Surface {
            g,
            n,
            arc_order,
            arc_pos,
            boundary: Vec::new(),
            relator,
        };
        s.boundary = s.trace_faces();
        Ok(s)
    }

    /// Traces the faces of the ribbon graph and returns the boundary words
    /// indexed by puncture. Panics if the frozen combinatorics is violated;
    /// that would be an internal error, not a user error.
    fn trace_faces(&self) -> Vec<CyclicWord> {
        let np = self.num_arcs();
        let mut seen = vec![false; np];
        let face_word = |start: usize, seen: &mut Vec<bool>| -> CyclicWord {
            let mut letters = Vec::new();
            let mut p = start;
            loop {
                assert!(!seen[p], "internal error: face retraces an arc");
                seen[p] = true;
                let h = self.arc_order[p];
                letters.push(Letter::new(h.gen, h.terminal));
                // The face turns around the band and continues clockwise.
                let partner = self.arc_pos[h.gen as usize][!h.terminal as usize];
                p = (partner + np - 1) % np;
                if p == start {
                    break;
                }
            }
            CyclicWord::from_letters(letters)
        };

        // Puncture 0 owns the corner between positions N-1 and 0.
        let h0 = self.arc_order[0];
        let start0 = self.arc_pos[h0.gen as usize][!h0.terminal as usize];
        let mut faces = vec![face_word(start0, &mut seen)];
        assert_eq!(
            faces[0],
            CyclicWord::from_word(&self.relator),
            "internal error: outer face does not read the relator"
        );
        for j in 0..self.n {
            let z = 2 * self.g + j;
            let p = self.arc_pos[z as usize][1];
            let w = face_word(p, &mut seen);
            assert_eq!(
                w.letters(),
                &[Letter::new(z, true)],
                "internal error: puncture face is not a single inverted letter"
            );
            faces.push(w);
        }
        assert!(seen.iter().all(|&b| b), "internal error: faces missed an arc");
        faces
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    /// Number of punctures beyond puncture `0`.
    pub fn extra_punctures(&self) -> u32 {
        self.n
    }

    pub fn num_punctures(&self) -> u32 {
        self.n + 1
    }

    pub fn num_gens(&self) -> usize {
        (2 * self.g + self.n) as usize
    }

    pub fn num_arcs(&self) -> usize {
        2 * self.num_gens()
    }

    /// Angle of attachment arc `p`, in turns.
    pub fn arc_center(&self, p: usize) -> Rational64 {
        Rational64::new(p as i64, self.num_arcs() as i64)
    }

    /// Attachment arc a loop leaves the disk through when reading `l`.
    pub fn initial_arc(&self, l: Letter) -> usize {
        self.arc_pos[l.gen() as usize][l.is_inverse() as usize]
    }

    /// Attachment arc a loop re-enters the disk through after reading `l`.
    pub fn terminal_arc(&self, l: Letter) -> usize {
        self.arc_pos[l.gen() as usize][!l.is_inverse() as usize]
    }

    /// Position of the other end of the band attached at position `p`.
    pub fn partner_arc(&self, p: usize) -> usize {
        let h = self.arc_order[p];
        self.arc_pos[h.gen as usize][!h.terminal as usize]
    }

    /// Boundary words; index `j` is the loop around puncture `j`.
    pub fn boundary_words(&self) -> &[CyclicWord] {
        &self.boundary
    }

    /// Based relator `[x_1,y_1]...[x_g,y_g] z_1...z_n`.
    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn gen_x(&self, i: u32) -> Option<u32> {
        (1 <= i && i <= self.g).then(|| 2 * (i - 1))
    }

    pub fn gen_y(&self, i: u32) -> Option<u32> {
        (1 <= i && i <= self.g).then(|| 2 * (i - 1) + 1)
    }

    pub fn gen_z(&self, j: u32) -> Option<u32> {
        (1 <= j && j <= self.n).then(|| 2 * self.g + (j - 1))
    }

    /// Weight of a generator in the filtration: `z` letters weigh 2.
    pub fn gen_weight(&self, gen: u32) -> usize {
        if gen < 2 * self.g {
            1
        } else {
            2
        }
    }

    pub fn gen_name(&self, gen: u32) -> String {
        if gen < 2 * self.g {
            let i = gen / 2 + 1;
            if gen % 2 == 0 {
                format!("x{i}")
            } else {
                format!("y{i}")
            }
        } else {
            format!("z{}", gen - 2 * self.g + 1)
        }
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let name = self.gen_name(l.gen());
        if l.is_inverse() {
            name.to_uppercase()
        } else {
            name
        }
    }

    /// Parses a generator name such as `x1` or `z2` (no inversion case).
    pub fn parse_gen(&self, token: &str) -> Result<u32> {
        let err = || Error::UnknownGenerator(token.to_string());
        let mut chars = token.chars();
        let head = chars.next().ok_or_else(err)?;
        let idx_str = chars.as_str();
        let idx: u32 = if idx_str.is_empty() {
            1
        } else {
            idx_str.parse().map_err(|_| err())?
        };
        let gen = match head {
            'x' => self.gen_x(idx),
            'y' => self.gen_y(idx),
            'z' => self.gen_z(idx),
            _ => None,
        };
        gen.ok_or_else(err)
    }

    /// Parses a letter token: lowercase is a generator, uppercase its
    /// inverse. The index defaults to 1, so `x` means `x1`.
    pub fn parse_letter(&self, token: &str) -> Result<Letter> {
        let inverse = token.starts_with(|c: char| c.is_ascii_uppercase());
        let gen = self.parse_gen(&token.to_lowercase())?;
        Ok(Letter::new(gen, inverse))
    }

    /// Parses a whitespace-separated based word; `1` denotes the identity.
    pub fn parse_word(&self, input: &str) -> Result<Word> {
        Ok(Word::from_letters(self.parse_tokens(input)?))
    }

    /// Parses a whitespace-separated cyclic word; `1` is the constant class.
    pub fn parse_cyclic(&self, input: &str) -> Result<CyclicWord> {
        Ok(CyclicWord::from_letters(self.parse_tokens(input)?))
    }

    fn parse_tokens(&self, input: &str) -> Result<Vec<Letter>> {
        let trimmed = input.trim();
        if trimmed == "1" || trimmed.is_empty() {
            return Ok(Vec::new());
        }
        trimmed
            .split_whitespace()
            .map(|tok| self.parse_letter(tok))
            .collect()
    }

    pub fn format_word(&self, w: &Word) -> String {
        self.format_letters(w.letters())
    }

    pub fn format_cyclic(&self, w: &CyclicWord) -> String {
        self.format_letters(w.letters())
    }

    pub fn format_letters(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            return "1".to_string();
        }
        letters
            .iter()
            .map(|&l| self.letter_name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Checks that every letter refers to a generator of this surface.
    pub fn admits(&self, letters: &[Letter]) -> bool {
        letters.iter().all(|l| (l.gen() as usize) < self.num_gens())
    }

    pub fn require_admits(&self, letters: &[Letter]) -> Result<()> {
        if self.admits(letters) {
            Ok(())
        } else {
            Err(Error::SurfaceMismatch)
        }
    }

    /// Exponent vector in `H_1(S)`, ordered `x_1, y_1, ..., x_g, y_g,
    /// z_1, ..., z_n`.
    pub fn homology_class(&self, letters: &[Letter]) -> Vec<i64> {
        let mut h = vec![0i64; self.num_gens()];
        for l in letters {
            h[l.gen() as usize] += l.sign();
        }
        h
    }

    /// Algebraic intersection number of two homology classes on the filled
    /// surface: `z` components pair to zero, `<x_i, y_i> = +1`.
    pub fn intersection_pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        (0..self.g as usize)
            .map(|i| a[2 * i] * b[2 * i + 1] - a[2 * i + 1] * b[2 * i])
            .sum()
    }

    /// Names of the half-edges in circle order, lowercase at the initial
    /// end and uppercase at the terminal end.
    pub fn arc_names(&self) -> Vec<String> {
        self.arc_order
            .iter()
            .map(|h| self.letter_name(Letter::new(h.gen, h.terminal)))
            .collect()
    }
}
