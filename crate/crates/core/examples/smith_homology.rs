//! Smith normal form of a small integer matrix and the integral homology of
//! the real projective plane from its cellular chains.

use hkrlab::complexes::ComplexBuilder;
use hkrlab::exact::{smith_normal_form, Matrix, Ring};

fn main() -> hkrlab::Result<()> {
    let m = Matrix::from_i64(&[vec![2, 4], vec![6, 8]]);
    let snf = smith_normal_form(&m)?;
    let factors: Vec<String> = snf
        .invariant_factors()
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("invariant factors of [[2,4],[6,8]]: {}", factors.join(", "));
    assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);

    // one cell in each dimension; the 2-cell wraps twice around the 1-cell
    let rp2 = ComplexBuilder::new(Ring::Integers)
        .cell(2, 0, ["f"])
        .cell(1, 0, ["e"])
        .cell(0, 0, ["v"])
        .differential(2, 0, Matrix::from_i64(&[vec![2]]))
        .differential(1, 0, Matrix::from_i64(&[vec![0]]))
        .build()?;
    for n in 0..=2 {
        println!("H_{n}(RP², Z) = {}", rp2.homology(n, 0));
    }
    let rational = rp2.rationalize();
    for n in 0..=2 {
        println!(
            "H_{n}(RP², Q) = {}",
            rational.homology(n, 0).display_over(Ring::Rationals)
        );
    }
    Ok(())
}
