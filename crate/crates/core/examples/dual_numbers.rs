//! Q[x]/(x²): Hochschild homology in every degree, and an HKR filtration
//! whose graded pieces are no longer concentrated in one degree.

use hkrlab::exact::Ring;
use hkrlab::hochschild::{hkr_filtration, HochschildData, RingPresentation};

fn main() -> hkrlab::Result<()> {
    let p = RingPresentation::parse(Ring::Rationals, &[("x", 1)], &["x^2"])?;
    let data = HochschildData::new(&p, 5, 5)?;
    println!("dim HH_n({p}) by weight");
    for w in 0..=5 {
        let dims: Vec<String> = (0..=5)
            .map(|n| data.homology(n, w).map(|g| g.rank.to_string()))
            .collect::<Result<_, _>>()?;
        println!("  w={w}: {}", dims.join(" "));
    }
    let f = hkr_filtration(&data)?;
    println!("filtration: {:?}", f.method);
    for i in 0..=3 {
        let degrees: Vec<String> = (0..=5)
            .flat_map(|n| (0..=5).map(move |w| (n, w)))
            .filter(|&(n, w)| data.is_complete(w) && !f.graded_homology(i, n, w).is_zero())
            .map(|(n, w)| format!("H_{n} w={w}"))
            .collect();
        println!("  gr^{i}: {}", degrees.join(", "));
    }
    Ok(())
}
