//! Filtrations, multicomplexes and the Beilinson heart.
//!
//! The de Rham complex of Z[x, y] is filtered brutally, split into a
//! multicomplex, totalized again, and its heart is read off; the heart
//! recovers the cochain complex it came from.

use hkrlab::exact::Ring;
use hkrlab::filtered::{
    beilinson_heart, brutal_filtration, split_multicomplex, PostnikovFiltration,
};
use hkrlab::hochschild::{de_rham_complex, HochschildData, RingPresentation};

fn main() -> hkrlab::Result<()> {
    let p = RingPresentation::polynomial(Ring::Integers, &[("x", 1), ("y", 1)]);
    let dr = de_rham_complex(&p, 3)?;
    let m = dr.cochain_complex();
    let f = brutal_filtration(m);
    let mc = split_multicomplex(&f);
    println!(
        "split multicomplex: {} pieces, higher differentials up to d_{}",
        mc.pieces().len(),
        mc.max_k()
    );

    let back = mc.totalize();
    let (lo, hi) = f.range();
    let same = (lo..=hi).all(|s| back.stage(s).homology_table() == f.stage(s).homology_table());
    println!("totalize ∘ split preserves H(F^s): {same}");

    let heart = beilinson_heart(&f)?;
    for w in 0..=3 {
        for i in 0..2 {
            let ours = heart.map(i, w).to_dense();
            let theirs = m.map(i, w).to_dense();
            println!(
                "w={w} ∂^{i}: heart {:?}  matches d: {}",
                shape(&ours),
                ours == theirs
            );
        }
    }

    let hh = HochschildData::new(
        &RingPresentation::polynomial(Ring::Integers, &[("x", 1)]),
        3,
        3,
    )?;
    let post = PostnikovFiltration::new(hh.complex())?;
    for i in 0..=2 {
        let gr = post.filtered.graded_piece(i);
        let h: Vec<String> = (0..=3).map(|n| gr.homology(n, 2).to_string()).collect();
        println!(
            "Postnikov gr^{i} of HH(Z[x]) in weight 2: H_0..3 = [{}]",
            h.join(", ")
        );
    }
    Ok(())
}

fn shape<T>(m: &[Vec<T>]) -> (usize, usize) {
    (m.len(), m.first().map_or(0, Vec::len))
}
