//! The heart of the graded HKR filtration of HH(Z[x, y]) next to the de Rham
//! complex, and the connecting map realizing d on functions.

use hkrlab::exact::Ring;
use hkrlab::hochschild::{
    connecting_is_universal_derivation, hkr_heart, hkr_map, RingPresentation,
};

fn main() -> hkrlab::Result<()> {
    let p = RingPresentation::polynomial(Ring::Integers, &[("x", 1), ("y", 1)]);
    let cmp = hkr_heart(&hkr_map(&p, 3, 4)?)?;
    for w in 1..=3 {
        for i in 0..2 {
            let heart: Vec<Vec<String>> = cmp
                .heart
                .map(i, w)
                .to_dense()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect();
            println!("w={w} heart ∂^{i} = {heart:?}");
        }
    }
    println!("heart equals de Rham on complete strands: {}", cmp.equal());

    let line = RingPresentation::polynomial(Ring::Integers, &[("x", 1)]);
    let r = connecting_is_universal_derivation(&line, 4)?;
    println!("Z[x]: connecting map is d on weights ≤ 4: {}", r.pass());
    Ok(())
}
