//! Eulerian idempotents in Q[S_n] and the Adams operations they assemble
//! into, acting on Hochschild chains.

use hkrlab::adams::{adams_on_filtration, all_permutations, eulerian_idempotents};
use hkrlab::exact::Ring;
use hkrlab::hochschild::{HochschildData, RingPresentation};

fn main() -> hkrlab::Result<()> {
    let e = eulerian_idempotents(3)?;
    for (i, ei) in e.iter().enumerate() {
        let terms: Vec<String> = all_permutations(3)
            .into_iter()
            .map(|s| (ei.coefficient(&s), s))
            .filter(|(c, _)| *c != num_traits::Zero::zero())
            .map(|(c, s)| format!("{c}·{s:?}"))
            .collect();
        println!(
            "e^({i})_3 = {}",
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" + ")
            }
        );
    }

    let p = RingPresentation::polynomial(Ring::Rationals, &[("x", 1), ("y", 1)]);
    let data = HochschildData::new(&p, 3, 4)?;
    for ell in [2, 3] {
        let r = adams_on_filtration(&data, ell)?;
        println!(
            "ψ^{ell} on {p}: preserves filtration {}, all cells pass {}",
            r.preserves_filtration,
            r.pass()
        );
        for c in r
            .cells
            .iter()
            .filter(|c| !c.group.is_zero() && c.weight == 3)
        {
            println!(
                "  gr^{} H_{} w={}: {} eigenvalue {}",
                c.filtration,
                c.degree,
                c.weight,
                c.group.display_over(Ring::Rationals),
                c.eigenvalue
            );
        }
    }
    Ok(())
}
