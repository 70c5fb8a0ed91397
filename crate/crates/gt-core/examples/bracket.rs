//! Computes one Goldman bracket and one Turaev cobracket on the punctured
//! torus and prints the results.

use std::collections::BTreeMap;
use std::sync::Arc;

use gt_core::bialgebra::{goldman_bracket, turaev_cobracket};
use gt_core::{Framing, LoopCombo, Surface};

fn main() -> gt_core::Result<()> {
    let s = Arc::new(Surface::build(1, 1)?);

    let a = LoopCombo::from_class(s.parse_cyclic("x1")?);
    let b = LoopCombo::from_class(s.parse_cyclic("y1")?);
    let bracket = goldman_bracket(&s, &a, &b)?;
    for (class, coef) in bracket.terms() {
        println!("bracket term: {} * ({})", coef, s.format_cyclic(class));
    }

    let twists = BTreeMap::from([("z1".to_string(), 1)]);
    let f = Framing::from_named_twists(s.clone(), &twists)?;
    let c = LoopCombo::from_class(s.parse_cyclic("x1 z1 X1 y1")?);
    for ((l, r), coef) in turaev_cobracket(&f, &c)?.terms() {
        println!(
            "cobracket term: {} * ({}) (x) ({})",
            coef,
            s.format_cyclic(l),
            s.format_cyclic(r)
        );
    }
    Ok(())
}
