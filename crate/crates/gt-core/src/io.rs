//! JSON document shapes shared by the command-line tool and the shipped
//! schemas, with conversions to and from the domain types.
//!
//! Emitted documents always carry `"v": 1`; documents read back accept a
//! missing version and reject any other value. Coefficients travel as
//! strings ("3/2") to keep them exact, words as the usual token syntax,
//! and series monomials as uppercase generator names.

use crate::autos::FreeGroupAuto;
use crate::bialgebra::{BiLoopCombo, Coef, LoopCombo};
use crate::check::SuiteOutcome;
use crate::expansion::FiltrationReport;
use crate::framing::Framing;
use crate::series::{CyclicSeries, Monomial, Series, WeightLevel};
use crate::surface::Surface;
use crate::{Error, Result};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

fn default_version() -> u32 {
    1
}

fn require_v1(v: u32) -> Result<()> {
    if v == 1 {
        Ok(())
    } else {
        Err(Error::Parse(format!("unsupported document version {v}")))
    }
}

fn parse_coef(text: &str) -> Result<Coef> {
    BigRational::from_str(text.trim())
        .map_err(|_| Error::Parse(format!("bad coefficient: {text}")))
}

/// `{"g": 1, "n": 0}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub g: u32,
    pub n: u32,
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<Arc<Surface>> {
        Ok(Arc::new(Surface::build(self.g, self.n)?))
    }
}

/// `{"t": {"x1": 0, "y1": 2}}`; absent edges default to twist zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FramingDoc {
    #[serde(default = "default_version")]
    pub v: u32,
    pub t: BTreeMap<String, i64>,
}

impl FramingDoc {
    pub fn to_framing(&self, s: &Arc<Surface>) -> Result<Framing> {
        require_v1(self.v)?;
        Framing::from_named_twists(s.clone(), &self.t)
    }

    pub fn from_framing(f: &Framing) -> FramingDoc {
        FramingDoc { v: 1, t: f.named_twists() }
    }
}

/// One term of a loop combination: `{"coef": "3/2", "word": "x1 y1"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComboTerm {
    pub coef: String,
    pub word: String,
}

pub fn combo_from_terms(s: &Surface, terms: &[ComboTerm]) -> Result<LoopCombo> {
    let mut out = LoopCombo::zero();
    for t in terms {
        out.add_term(s.parse_cyclic(&t.word)?, parse_coef(&t.coef)?);
    }
    Ok(out)
}

pub fn combo_to_terms(s: &Surface, c: &LoopCombo) -> Vec<ComboTerm> {
    c.terms()
        .iter()
        .map(|(w, q)| ComboTerm { coef: q.to_string(), word: s.format_cyclic(w) })
        .collect()
}

/// One term of a pair combination:
/// `{"coef": "1", "left": "x1", "right": "y1"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiComboTerm {
    pub coef: String,
    pub left: String,
    pub right: String,
}

pub fn bicombo_from_terms(s: &Surface, terms: &[BiComboTerm]) -> Result<BiLoopCombo> {
    let mut out = BiLoopCombo::zero();
    for t in terms {
        out.add_term(
            s.parse_cyclic(&t.left)?,
            s.parse_cyclic(&t.right)?,
            parse_coef(&t.coef)?,
        );
    }
    Ok(out)
}

pub fn bicombo_to_terms(s: &Surface, c: &BiLoopCombo) -> Vec<BiComboTerm> {
    c.terms()
        .iter()
        .map(|((l, r), q)| BiComboTerm {
            coef: q.to_string(),
            left: s.format_cyclic(l),
            right: s.format_cyclic(r),
        })
        .collect()
}

/// `{"images": {"x1": "x1", "y1": "y1 x1"}}` with optional exact inverse
/// images; when they are absent the inverse is reconstructed, which fails
/// on maps that are not automorphisms.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutoDoc {
    #[serde(default = "default_version")]
    pub v: u32,
    pub images: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse_images: Option<BTreeMap<String, String>>,
}

impl AutoDoc {
    pub fn to_auto(&self, s: &Arc<Surface>) -> Result<FreeGroupAuto> {
        require_v1(self.v)?;
        let images = Self::word_table(s, &self.images)?;
        match &self.inverse_images {
            Some(inv) => {
                let inverse = Self::word_table(s, inv)?;
                FreeGroupAuto::from_images_with_inverse(s.clone(), images, inverse)
            }
            None => FreeGroupAuto::from_images(s.clone(), images),
        }
    }

    pub fn from_auto(a: &FreeGroupAuto) -> AutoDoc {
        let s = a.surface();
        let table = |words: &[crate::words::Word]| {
            words
                .iter()
                .enumerate()
                .map(|(g, w)| (s.gen_name(g as u32), s.format_word(w)))
                .collect()
        };
        AutoDoc {
            v: 1,
            images: table(a.images()),
            inverse_images: Some(table(a.inverse_images())),
        }
    }

    fn word_table(
        s: &Arc<Surface>,
        map: &BTreeMap<String, String>,
    ) -> Result<Vec<crate::words::Word>> {
        for key in map.keys() {
            s.parse_gen(key)?;
        }
        (0..s.num_gens() as u32)
            .map(|g| {
                let name = s.gen_name(g);
                let text = map
                    .get(&name)
                    .ok_or_else(|| Error::Parse(format!("missing image for {name}")))?;
                s.parse_word(text)
            })
            .collect()
    }
}

/// Uppercase name of a series letter, `X1`, `Y1`, `Z1`, ...
pub fn series_letter_name(s: &Surface, gen: u32) -> String {
    s.gen_name(gen).to_uppercase()
}

fn parse_series_letter(s: &Surface, token: &str) -> Result<u32> {
    s.parse_gen(&token.to_lowercase())
}

/// One series term: `{"coef": "1/2", "mono": ["X1", "Y1"]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesTerm {
    pub coef: String,
    pub mono: Vec<String>,
}

/// `{"N": 4, "components": {"2": [{"coef": "1/2", "mono": ["X1","Y1"]}]}}`.
/// The same shape carries ordinary and cyclic series; cyclic monomials are
/// written through their least rotation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDoc {
    #[serde(default = "default_version")]
    pub v: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub components: BTreeMap<String, Vec<SeriesTerm>>,
}

fn components_doc(
    s: &Surface,
    comps: &[BTreeMap<Monomial, BigRational>],
) -> BTreeMap<String, Vec<SeriesTerm>> {
    let mut out = BTreeMap::new();
    for (weight, comp) in comps.iter().enumerate() {
        if comp.is_empty() {
            continue;
        }
        let terms = comp
            .iter()
            .map(|(m, c)| SeriesTerm {
                coef: c.to_string(),
                mono: m.iter().map(|&g| series_letter_name(s, g)).collect(),
            })
            .collect();
        out.insert(weight.to_string(), terms);
    }
    out
}

impl SeriesDoc {
    pub fn from_series(s: &Surface, series: &Series) -> SeriesDoc {
        SeriesDoc {
            v: 1,
            n: series.trunc(),
            components: components_doc(s, series.components()),
        }
    }

    pub fn from_cyclic(s: &Surface, series: &CyclicSeries) -> SeriesDoc {
        SeriesDoc {
            v: 1,
            n: series.trunc(),
            components: components_doc(s, series.components()),
        }
    }

    pub fn to_series(&self, s: &Surface) -> Result<Series> {
        require_v1(self.v)?;
        let mut out = Series::zero(self.n);
        for (key, terms) in &self.components {
            let weight: usize = key
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight key: {key}")))?;
            if weight > self.n {
                return Err(Error::Parse(format!(
                    "component weight {weight} beyond truncation {}",
                    self.n
                )));
            }
            for term in terms {
                let mono: Monomial = term
                    .mono
                    .iter()
                    .map(|t| parse_series_letter(s, t))
                    .collect::<Result<_>>()?;
                let actual: usize = mono.iter().map(|&g| s.gen_weight(g)).sum();
                if actual != weight {
                    return Err(Error::Parse(format!(
                        "monomial {:?} has weight {actual}, filed under {weight}",
                        term.mono
                    )));
                }
                out.add_term(weight, mono, parse_coef(&term.coef)?);
            }
        }
        Ok(out)
    }
}

fn level_doc(l: WeightLevel) -> Option<usize> {
    match l {
        WeightLevel::Finite(k) => Some(k),
        WeightLevel::Infinite => None,
    }
}

/// Report emitted by the filtration-report command. Levels are weights;
/// `null` marks an empty series (level beyond every weight).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiltrationReportDoc {
    pub v: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub level_a: Option<usize>,
    pub level_b: Option<usize>,
    pub bracket_level: Option<usize>,
    pub bracket_floor: i64,
    pub bracket_ok: bool,
    pub bracket_excess: BTreeMap<String, Vec<SeriesTerm>>,
    pub cobracket_level: Option<usize>,
    pub cobracket_floor: i64,
    pub cobracket_ok: bool,
    pub cobracket_excess_weights: Vec<usize>,
    pub boundary_defect_level: Option<usize>,
    pub ok: bool,
}

impl FiltrationReportDoc {
    pub fn from_report(s: &Surface, r: &FiltrationReport) -> FiltrationReportDoc {
        FiltrationReportDoc {
            v: 1,
            n: r.truncation,
            level_a: level_doc(r.level_a),
            level_b: level_doc(r.level_b),
            bracket_level: level_doc(r.bracket_level),
            bracket_floor: r.bracket_floor,
            bracket_ok: r.bracket_ok,
            bracket_excess: components_doc(s, r.bracket_excess.components()),
            cobracket_level: level_doc(r.cobracket_level),
            cobracket_floor: r.cobracket_floor,
            cobracket_ok: r.cobracket_ok,
            cobracket_excess_weights: r.cobracket_excess_weights.clone(),
            boundary_defect_level: level_doc(r.boundary_defect_level),
            ok: r.ok,
        }
    }
}

/// Output of the rot command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RotDoc {
    pub v: u32,
    pub rot: i64,
}

/// Output of the degrees command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreesDoc {
    pub v: u32,
    pub d: Vec<i64>,
}

/// Output of the classify and orbit commands. For classify, `same_orbit`
/// compares the framing with itself and is always true; orbit fills it with
/// the comparison of its two inputs while the invariants describe the first.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifyDoc {
    pub v: u32,
    pub d: Vec<i64>,
    pub arf: Option<u8>,
    #[serde(rename = "A")]
    pub a: Option<i64>,
    pub same_orbit: bool,
    pub quasi_algebraic: bool,
}

/// Output of the exists-qaf command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExistsDoc {
    pub v: u32,
    pub exists: bool,
}

/// Output of the bracket command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermsDoc {
    pub v: u32,
    pub terms: Vec<ComboTerm>,
}

/// Output of the cobracket command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BiTermsDoc {
    pub v: u32,
    pub terms: Vec<BiComboTerm>,
}

/// Output of the cocycle command: values on the handle homology basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CocycleDoc {
    pub v: u32,
    pub f: Vec<i64>,
}

/// Error object emitted on failures.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub v: u32,
    pub error: String,
    pub message: String,
}

/// One suite in the check report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteDoc {
    pub name: String,
    pub checks: u64,
    pub passed: u64,
    pub failures: Vec<String>,
    pub ok: bool,
}

impl SuiteDoc {
    pub fn from_outcome(o: &SuiteOutcome) -> SuiteDoc {
        SuiteDoc {
            name: o.name.clone(),
            checks: o.checks,
            passed: o.passed(),
            failures: o.failures.clone(),
            ok: o.ok(),
        }
    }
}

/// Output of the check command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckDoc {
    pub v: u32,
    pub seed: u64,
    pub suites: Vec<SuiteDoc>,
    pub ok: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::coef_int;

    fn surface(g: u32, n: u32) -> Arc<Surface> {
        Arc::new(Surface::build(g, n).unwrap())
    }

    #[test]
    fn framing_documents_round_trip_and_default_missing_edges() {
        let s = surface(1, 1);
        let doc: FramingDoc = serde_json::from_str(r#"{"t": {"z1": 2}}"#).unwrap();
        let f = doc.to_framing(&s).unwrap();
        assert_eq!(f.twists(), &[0, 0, 2]);
        let back = FramingDoc::from_framing(&f);
        let f2 = back.to_framing(&s).unwrap();
        assert_eq!(f.twists(), f2.twists());
    }

    #[test]
    fn framing_documents_reject_other_versions_and_unknown_fields() {
        assert!(serde_json::from_str::<FramingDoc>(r#"{"twists": {}}"#).is_err());
        let doc: FramingDoc = serde_json::from_str(r#"{"v": 2, "t": {}}"#).unwrap();
        assert!(doc.to_framing(&surface(1, 0)).is_err());
    }

    #[test]
    fn combos_round_trip_with_exact_coefficients() {
        let s = surface(0, 2);
        let terms = vec![
            ComboTerm { coef: "3/2".into(), word: "z1 z2".into() },
            ComboTerm { coef: "-2".into(), word: "z1".into() },
        ];
        let combo = combo_from_terms(&s, &terms).unwrap();
        assert_eq!(combo.terms().len(), 2);
        let back = combo_to_terms(&s, &combo);
        assert_eq!(combo_from_terms(&s, &back).unwrap(), combo);
        assert!(combo_from_terms(
            &s,
            &[ComboTerm { coef: "1/0".into(), word: "z1".into() }]
        )
        .is_err());
    }

    #[test]
    fn pair_combos_round_trip() {
        let s = surface(1, 0);
        let mut c = BiLoopCombo::zero();
        c.add_wedge(
            s.parse_cyclic("x").unwrap(),
            s.parse_cyclic("y").unwrap(),
            coef_int(2),
        );
        let back = bicombo_from_terms(&s, &bicombo_to_terms(&s, &c)).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn automorphism_documents_round_trip_through_both_paths() {
        let s = surface(1, 0);
        let auto = crate::autos::handle_twist_x(&s, 1);
        let doc = AutoDoc::from_auto(&auto);
        assert_eq!(doc.to_auto(&s).unwrap(), auto);
        let without_inverse = AutoDoc { inverse_images: None, ..doc };
        assert_eq!(without_inverse.to_auto(&s).unwrap(), auto);
    }

    #[test]
    fn automorphism_documents_need_every_generator() {
        let s = surface(1, 0);
        let doc: AutoDoc =
            serde_json::from_str(r#"{"images": {"x1": "x1"}}"#).unwrap();
        assert!(doc.to_auto(&s).is_err());
    }

    #[test]
    fn series_documents_round_trip_and_validate_weights() {
        let s = surface(0, 2);
        let theta = crate::expansion::exp_expansion(&s, 4);
        let series = crate::expansion::expand_word(&theta, s.relator()).unwrap();
        let doc = SeriesDoc::from_series(&s, &series);
        assert_eq!(doc.to_series(&s).unwrap(), series);
        let bad: SeriesDoc = serde_json::from_str(
            r#"{"N": 4, "components": {"3": [{"coef": "1", "mono": ["Z1"]}]}}"#,
        )
        .unwrap();
        assert!(bad.to_series(&s).is_err());
    }

    #[test]
    fn series_monomials_use_uppercase_names() {
        let s = surface(1, 0);
        let series = Series::letter(3, 0, 1);
        let doc = SeriesDoc::from_series(&s, &series);
        assert_eq!(doc.components["1"][0].mono, vec!["X1".to_string()]);
    }
}
