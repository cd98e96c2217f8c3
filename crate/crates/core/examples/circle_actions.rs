//! Homotopy fixed points, orbits and the Tate construction for circle
//! actions: the point, the induced module, and Hochschild chains of Q[x].

use hkrlab::exact::Ring;
use hkrlab::hochschild::{HochschildData, RingPresentation};
use hkrlab::mixed::{fixed_points, orbits, tate, windowed_homology, MixedComplex};

fn row(x: &MixedComplex, w: i64, window: (i64, i64)) -> hkrlab::Result<()> {
    for (name, cells) in [
        (
            "HC⁻",
            windowed_homology(|win| fixed_points(x, win), window)?,
        ),
        ("HC ", windowed_homology(|win| orbits(x, win), window)?),
        ("HP ", windowed_homology(|win| tate(x, win), window)?),
    ] {
        let groups: Vec<String> = (window.0..=window.1)
            .map(|n| {
                let c = &cells[&(n, w)];
                format!(
                    "{}{}",
                    c.group.display_over(x.ring()),
                    if c.stable { "" } else { "?" }
                )
            })
            .collect();
        println!(
            "  {name} n={}..{}: {}",
            window.0,
            window.1,
            groups.join(" ")
        );
    }
    Ok(())
}

fn main() -> hkrlab::Result<()> {
    let window = (-4, 4);
    println!("point");
    row(&MixedComplex::point(Ring::Integers), 0, window)?;
    println!("induced module D₊");
    row(&MixedComplex::circle_algebra(Ring::Integers), 0, window)?;

    let p = RingPresentation::polynomial(Ring::Rationals, &[("x", 1)]);
    let x = HochschildData::new(&p, 6, 3)?.mixed();
    for w in 0..=3 {
        println!("HH(Q[x]) weight {w}");
        row(&x, w, window)?;
    }
    Ok(())
}
