//! Filtered circle actions: graded pieces of the filtered Tate construction,
//! vanishing for induced objects, and the colimit comparison for HH(Q[x]).

use hkrlab::complexes::shift;
use hkrlab::exact::Ring;
use hkrlab::hochschild::{hkr_filtration, HochschildData, RingPresentation};
use hkrlab::mixed::{colimit_comparison, filtered_orbits_tate, tate};
use hkrlab::random::{self, Shape};

fn main() -> hkrlab::Result<()> {
    let window = (-4, 4);
    let s = Shape::default();

    let x = random::random_filtered_mixed(&mut random::rng(7), &s);
    let (_, t) = filtered_orbits_tate(&x, window)?;
    let (_, whole) = x.graded_cohomology_type();
    for i in 0..=2 {
        let gr = t.graded_piece(i);
        let expected = shift(&whole, 2 * i);
        let agree =
            x.filtered().complex().weights().into_iter().all(|w| {
                (window.0..=window.1).all(|n| gr.homology(n, w) == expected.homology(n, w))
            });
        println!(
            "random instance: gr^{i} of the filtered Tate construction ≅ |gr X|[{}]: {agree}",
            2 * i
        );
    }

    let induced = random::random_induced(&mut random::rng(7), &s);
    let tt = tate(&induced, window)?;
    let zero = induced
        .complex()
        .weights()
        .into_iter()
        .all(|w| (window.0..=window.1).all(|n| tt.homology(n, w).is_zero()));
    println!("induced instance: Tate construction vanishes: {zero}");

    let p = RingPresentation::polynomial(Ring::Rationals, &[("x", 1)]);
    let data = HochschildData::new(&p, 6, 3)?;
    let hkr = hkr_filtration(&data)?;
    let r = colimit_comparison(&hkr.filtered, (-4, 4), 0)?;
    println!(
        "HH(Q[x]): coconnectivity holds with a = {}, colimit agrees with HC⁻: {}",
        r.a, r.agree
    );
    Ok(())
}
