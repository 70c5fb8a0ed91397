//! Command line front end: parses surface, framing, word and combination
//! inputs, dispatches to the library, and emits deterministic JSON on
//! standard output.
//!
//! Exit codes: 0 on success, 1 on parse or usage errors, 2 on domain
//! errors; failures print `{"error": code, "message": ...}`. Positional
//! inputs accept inline JSON, `@file` references, bare `*.json` paths, or
//! a bare word standing for the one-class combination with coefficient 1.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use gt_core::bialgebra::{goldman_bracket, turaev_cobracket};
use gt_core::check::{run_all, run_suite};
use gt_core::classify;
use gt_core::expansion::{boundary_defect, exp_expansion, expand_word, filtration_report};
use gt_core::io::{
    bicombo_to_terms, combo_from_terms, combo_to_terms, AutoDoc, BiTermsDoc, CheckDoc,
    ClassifyDoc, CocycleDoc, ComboTerm, DegreesDoc, ErrorDoc, ExistsDoc, FiltrationReportDoc,
    FramingDoc, RotDoc, SeriesDoc, SuiteDoc, SurfaceSpec, TermsDoc,
};
use gt_core::{autos, Error, Framing, LoopCombo, Result, Surface};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "gt",
    version,
    about = "Exact Goldman bracket, Turaev cobracket and framing computations \
             on punctured surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Pretty-print the JSON output
    #[arg(long, global = true)]
    pretty: bool,
    /// Thread count for parallel library code (default 1)
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
}

/// The surface every geometric command works over: genus `g` with `n`
/// framed punctures beyond the base one.
#[derive(Args)]
struct SurfaceArgs {
    /// Genus of the surface
    #[arg(long)]
    g: u32,
    /// Number of framed punctures beyond the base one
    #[arg(long)]
    n: u32,
}

impl SurfaceArgs {
    fn build(&self) -> Result<Arc<Surface>> {
        SurfaceSpec { g: self.g, n: self.n }.build()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Goldman bracket of two loop combinations
    Bracket {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Left combination: JSON terms, @file, *.json, or a bare word
        #[arg(value_name = "COMBO")]
        a: String,
        /// Right combination, same forms
        #[arg(value_name = "COMBO")]
        b: String,
    },
    /// Turaev cobracket of a loop combination under a framing
    Cobracket {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Framing as JSON {"t":{...}} or @file
        #[arg(long)]
        framing: String,
        /// Combination: JSON terms, @file, *.json, or a bare word
        #[arg(value_name = "COMBO")]
        a: String,
    },
    /// Rotation number of one free homotopy class
    Rot {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Framing as JSON {"t":{...}} or @file
        #[arg(long)]
        framing: String,
        /// Cyclic word, e.g. "x1 y1 X1 Y1"
        #[arg(long)]
        word: String,
    },
    /// Local degrees of a framing at the punctures
    Degrees {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Framing as JSON {"t":{...}} or @file
        #[arg(long)]
        framing: String,
    },
    /// Orbit invariants of one framing
    Classify {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Framing as JSON {"t":{...}} or @file
        #[arg(long)]
        framing: String,
    },
    /// Invariants of the first framing plus the orbit verdict for the pair
    Orbit {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// First framing: JSON {"t":{...}}, @file, or *.json
        #[arg(value_name = "FRAMING")]
        first: String,
        /// Second framing, same forms
        #[arg(value_name = "FRAMING")]
        second: String,
    },
    /// Whether the mapping class orbit contains a quasi-algebraic framing
    ExistsQaf {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Framing as JSON {"t":{...}} or @file
        #[arg(long)]
        framing: String,
    },
    /// Point-push automorphism moving a puncture along a based word
    Push {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Index of the pushed puncture, 1..=n
        #[arg(long)]
        puncture: u32,
        /// Based word the puncture travels along
        #[arg(long)]
        word: String,
    },
    /// Framing cocycle of an automorphism on the handle homology basis
    Cocycle {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Framing as JSON {"t":{...}} or @file
        #[arg(long)]
        framing: String,
        /// Automorphism as JSON {"images":{...}}, @file, or *.json
        #[arg(value_name = "AUTO")]
        auto: String,
    },
    /// Image of a based word under the exponential expansion
    Expand {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Truncation degree, 2..=8
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=8))]
        trunc: u32,
        /// Based word to expand
        #[arg(long)]
        word: String,
    },
    /// Boundary defect of the exponential expansion
    BoundaryDefect {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Truncation degree, 2..=8
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=8))]
        trunc: u32,
    },
    /// Weight filtration report for a pair of loop combinations
    FiltrationReport {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Truncation degree, 2..=8
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=8))]
        trunc: u32,
        /// Framing as JSON {"t":{...}} or @file
        #[arg(long)]
        framing: String,
        /// Left combination: JSON terms, @file, *.json, or a bare word
        #[arg(value_name = "COMBO")]
        a: String,
        /// Right combination, same forms
        #[arg(value_name = "COMBO")]
        b: String,
    },
    /// Run the bundled invariant suites and report pass/fail counts
    Check {
        /// Run a single named suite instead of all of them
        #[arg(long)]
        suite: Option<String>,
        /// Seed for the randomized sweeps
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

/// Resolves an argument to its text: `@file` and bare `*.json` paths are
/// read from disk, everything else is taken verbatim.
fn resolve_text(arg: &str) -> Result<String> {
    let path = if let Some(p) = arg.strip_prefix('@') {
        p
    } else if !arg.trim_start().starts_with(['[', '{']) && arg.ends_with(".json") {
        arg
    } else {
        return Ok(arg.to_string());
    };
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
}

fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn combo_input(s: &Arc<Surface>, arg: &str) -> Result<LoopCombo> {
    let text = resolve_text(arg)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let terms: Vec<ComboTerm> = from_json(&text)?;
        combo_from_terms(s, &terms)
    } else if trimmed.starts_with('{') {
        // The wrapped form lets bracket output feed straight back in.
        let doc: TermsDoc = from_json(&text)?;
        if doc.v != 1 {
            return Err(Error::Parse(format!("unsupported document version {}", doc.v)));
        }
        combo_from_terms(s, &doc.terms)
    } else {
        Ok(LoopCombo::from_class(s.parse_cyclic(text.trim())?))
    }
}

fn framing_input(s: &Arc<Surface>, arg: &str) -> Result<Framing> {
    let text = resolve_text(arg)?;
    if !text.trim_start().starts_with('{') {
        return Err(Error::Parse(
            "a framing must be a JSON object like {\"t\":{\"x1\":1}}".to_string(),
        ));
    }
    from_json::<FramingDoc>(&text)?.to_framing(s)
}

fn auto_input(s: &Arc<Surface>, arg: &str) -> Result<autos::FreeGroupAuto> {
    let text = resolve_text(arg)?;
    if !text.trim_start().starts_with('{') {
        return Err(Error::Parse(
            "an automorphism must be a JSON object like {\"images\":{...}}".to_string(),
        ));
    }
    from_json::<AutoDoc>(&text)?.to_auto(s)
}

fn render<T: Serialize>(doc: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(doc).expect("documents serialize")
    } else {
        serde_json::to_string(doc).expect("documents serialize")
    }
}

fn classify_doc(f: &Framing, same_orbit: bool) -> ClassifyDoc {
    ClassifyDoc {
        v: 1,
        d: f.local_degrees(),
        arf: classify::arf_invariant(f).ok(),
        a: classify::a_invariant(f).ok(),
        same_orbit,
        quasi_algebraic: classify::quasi_algebraic_framing_exists(f),
    }
}

fn execute(cmd: Command, pretty: bool) -> Result<String> {
    match cmd {
        Command::Bracket { surface, a, b } => {
            let s = surface.build()?;
            let left = combo_input(&s, &a)?;
            let right = combo_input(&s, &b)?;
            let out = goldman_bracket(&s, &left, &right)?;
            let doc = TermsDoc { v: 1, terms: combo_to_terms(&s, &out) };
            Ok(render(&doc, pretty))
        }
        Command::Cobracket { surface, framing, a } => {
            let s = surface.build()?;
            let f = framing_input(&s, &framing)?;
            let combo = combo_input(&s, &a)?;
            let out = turaev_cobracket(&f, &combo)?;
            let doc = BiTermsDoc { v: 1, terms: bicombo_to_terms(&s, &out) };
            Ok(render(&doc, pretty))
        }
        Command::Rot { surface, framing, word } => {
            let s = surface.build()?;
            let f = framing_input(&s, &framing)?;
            let w = s.parse_cyclic(&word)?;
            let doc = RotDoc { v: 1, rot: f.rotation_number(&w)? };
            Ok(render(&doc, pretty))
        }
        Command::Degrees { surface, framing } => {
            let s = surface.build()?;
            let f = framing_input(&s, &framing)?;
            let doc = DegreesDoc { v: 1, d: f.local_degrees() };
            Ok(render(&doc, pretty))
        }
        Command::Classify { surface, framing } => {
            let s = surface.build()?;
            let f = framing_input(&s, &framing)?;
            Ok(render(&classify_doc(&f, true), pretty))
        }
        Command::Orbit { surface, first, second } => {
            let s = surface.build()?;
            let f1 = framing_input(&s, &first)?;
            let f2 = framing_input(&s, &second)?;
            let same = classify::same_mcg_orbit(&f1, &f2)?;
            Ok(render(&classify_doc(&f1, same), pretty))
        }
        Command::ExistsQaf { surface, framing } => {
            let s = surface.build()?;
            let f = framing_input(&s, &framing)?;
            let doc = ExistsDoc { v: 1, exists: classify::quasi_algebraic_framing_exists(&f) };
            Ok(render(&doc, pretty))
        }
        Command::Push { surface, puncture, word } => {
            let s = surface.build()?;
            let along = s.parse_word(&word)?;
            let auto = autos::point_push(&s, puncture, &along)?;
            Ok(render(&AutoDoc::from_auto(&auto), pretty))
        }
        Command::Cocycle { surface, framing, auto } => {
            let s = surface.build()?;
            let f = framing_input(&s, &framing)?;
            let psi = auto_input(&s, &auto)?;
            let doc = CocycleDoc { v: 1, f: autos::framing_cocycle(&psi, &f)? };
            Ok(render(&doc, pretty))
        }
        Command::Expand { surface, trunc, word } => {
            let s = surface.build()?;
            let theta = exp_expansion(&s, trunc as usize);
            let series = expand_word(&theta, &s.parse_word(&word)?)?;
            Ok(render(&SeriesDoc::from_series(&s, &series), pretty))
        }
        Command::BoundaryDefect { surface, trunc } => {
            let s = surface.build()?;
            let theta = exp_expansion(&s, trunc as usize);
            let defect = boundary_defect(&theta);
            Ok(render(&SeriesDoc::from_series(&s, &defect), pretty))
        }
        Command::FiltrationReport { surface, trunc, framing, a, b } => {
            let s = surface.build()?;
            let f = framing_input(&s, &framing)?;
            let left = combo_input(&s, &a)?;
            let right = combo_input(&s, &b)?;
            let theta = exp_expansion(&s, trunc as usize);
            let report = filtration_report(&theta, &f, &left, &right)?;
            Ok(render(&FiltrationReportDoc::from_report(&s, &report), pretty))
        }
        Command::Check { suite, seed } => {
            let outcomes = match suite {
                Some(name) => vec![run_suite(&name, seed)?],
                None => run_all(seed),
            };
            let suites: Vec<SuiteDoc> = outcomes.iter().map(SuiteDoc::from_outcome).collect();
            let ok = suites.iter().all(|s| s.ok);
            Ok(render(&CheckDoc { v: 1, seed, suites, ok }, pretty))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(1) as usize)
        .build_global();
    match execute(cli.command, cli.pretty) {
        Ok(json) => {
            println!("{json}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            let doc = ErrorDoc { v: 1, error: err.code().to_string(), message: err.to_string() };
            println!("{}", serde_json::to_string(&doc).expect("documents serialize"));
            ExitCode::from(if matches!(err, Error::Parse(_)) { 1 } else { 2 })
        }
    }
}
