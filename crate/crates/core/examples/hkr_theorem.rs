//! HH_n of a polynomial ring against the n-forms, weight by weight, with the
//! antisymmetrization map checked to be an isomorphism onto homology.

use std::time::Instant;

use hkrlab::exact::Ring;
use hkrlab::hochschild::{hkr_isomorphism, hkr_map, RingPresentation};

fn main() -> hkrlab::Result<()> {
    let rings = [
        RingPresentation::polynomial(Ring::Integers, &[("x", 1)]),
        RingPresentation::polynomial(Ring::Integers, &[("x", 1), ("y", 1)]),
        RingPresentation::polynomial(Ring::Rationals, &[("x", 1), ("y", 1), ("z", 1)]),
    ];
    for p in &rings {
        let start = Instant::now();
        let hkr = hkr_map(p, 4, 5)?;
        let cells = hkr_isomorphism(&hkr)?;
        println!("{p}");
        for c in cells
            .iter()
            .filter(|c| c.forms > 0 || !c.homology.is_zero())
        {
            println!(
                "  n={} w={}  HH = {:<12} rank Ω = {:<3} iso: {}",
                c.degree,
                c.weight,
                c.homology.display_over(p.base()).to_string(),
                c.forms,
                c.isomorphism
            );
        }
        println!("  {:.2?}", start.elapsed());
    }
    Ok(())
}
