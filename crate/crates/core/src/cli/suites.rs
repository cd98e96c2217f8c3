use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adams::{
    adams_on_filtration, adams_operation, eulerian_idempotents, GroupAlgebraElement,
};
use crate::complexes::{shift, ChainComplex};
use crate::error::Result;
use crate::exact::Ring;
use crate::filtered::{split_multicomplex, FilteredComplex};
use crate::hochschild::{
    hkr_filtration, hkr_heart, hkr_isomorphism, hkr_map, HochschildData, RingPresentation,
};
use crate::mixed::{filtered_fixed, filtered_orbits_tate, tate, FilteredMixedComplex};
use crate::random::{self, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Hkr,
    Tate,
    Adams,
    Roundtrip,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Hkr => "hkr",
            Suite::Tate => "tate",
            Suite::Adams => "adams",
            Suite::Roundtrip => "roundtrip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckRecord {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
}

pub fn run_suite(suite: Suite) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Hkr => hkr_suite()?,
        Suite::Tate => tate_suite()?,
        Suite::Adams => adams_suite()?,
        Suite::Roundtrip => roundtrip_suite(),
    };
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

fn hkr_suite() -> Result<Vec<CheckRecord>> {
    let rings = [
        RingPresentation::polynomial(Ring::Integers, &[]),
        RingPresentation::polynomial(Ring::Integers, &[("x", 1)]),
        RingPresentation::polynomial(Ring::Integers, &[("x", 1), ("y", 1)]),
        RingPresentation::polynomial(Ring::Rationals, &[("x", 1), ("y", 1), ("z", 1)]),
    ];
    let (n, w) = (4, 5);
    let mut out = Vec::new();
    for p in &rings {
        let hkr = hkr_map(p, n, w)?;
        let cells = hkr_isomorphism(&hkr)?;
        let bad: Vec<String> = cells
            .iter()
            .filter(|c| !c.isomorphism)
            .map(|c| format!("({}, {})", c.degree, c.weight))
            .collect();
        out.push(CheckRecord::new(
            format!("{p}: Ω^n ≅ HH_n"),
            bad.is_empty(),
            bad.join(" "),
        ));

        let f = hkr_filtration(&hkr.data)?;
        let dr = &hkr.de_rham;
        let mut spread = Vec::new();
        let mut incomplete = Vec::new();
        for ww in 0..=w {
            for i in 0..=n {
                for m in 0..=n {
                    let g = f.graded_homology(i, m, ww);
                    let ok = if m == i {
                        g == dr.derived_gr(i).homology(i, ww)
                    } else {
                        g.is_zero()
                    };
                    if !ok {
                        spread.push(format!("gr^{i} H_{m} w={ww}"));
                    }
                    if m < i && !f.stage_homology(i, m, ww).is_zero() {
                        incomplete.push(format!("F^{i} H_{m} w={ww}"));
                    }
                }
            }
        }
        out.push(CheckRecord::new(
            format!("{p}: gr^i ≃ Ω^i[i]"),
            spread.is_empty(),
            spread.join(" "),
        ));
        out.push(CheckRecord::new(
            format!("{p}: H_n(F^i) = 0 for n < i"),
            incomplete.is_empty(),
            incomplete.join(" "),
        ));
        let heart = hkr_heart(&hkr_map(p, 3, 4)?)?;
        let detail: Vec<String> = heart
            .mismatches
            .iter()
            .map(|(i, w)| format!("({i}, {w})"))
            .collect();
        out.push(CheckRecord::new(
            format!("{p}: heart = de Rham"),
            heart.equal(),
            detail.join(" "),
        ));
    }
    Ok(out)
}

/// `gr^i(X^{hT_fil}) ≅ |gr X|^{≥i}[2i]` and `gr^i(X^{tT_fil}) ≅ |gr X|[2i]` on
/// homology, degree by degree in `window`.
pub(crate) fn tate_gr_identity(
    x: &FilteredMixedComplex,
    window: (i64, i64),
) -> Result<Vec<String>> {
    let (lo, hi) = window;
    let fixed = filtered_fixed(x, window)?;
    let (_, tate_f) = filtered_orbits_tate(x, window)?;
    let (tot, whole) = x.graded_cohomology_type();
    let (flo, fhi) = x.filtered().range();
    let mut bad = Vec::new();
    let weights: Vec<i64> = x.filtered().complex().weights().into_iter().collect();
    for i in (flo - (hi - lo) / 2 - 1)..=(fhi + (hi - lo) / 2 + 1) {
        let gf = fixed.graded_piece(i);
        let gt = tate_f.graded_piece(i);
        let ef = shift(&tot.stage(i), 2 * i);
        let et = shift(&whole, 2 * i);
        for &w in &weights {
            for n in lo..=hi {
                if gf.homology(n, w) != ef.homology(n, w) {
                    bad.push(format!("fixed gr^{i} H_{n} w={w}"));
                }
                if gt.homology(n, w) != et.homology(n, w) {
                    bad.push(format!("tate gr^{i} H_{n} w={w}"));
                }
            }
        }
    }
    Ok(bad)
}

fn tate_suite() -> Result<Vec<CheckRecord>> {
    let s = Shape::default();
    let window = (-4, 6);
    let mut out = Vec::new();
    let plain: Vec<Option<String>> = (0..50u64)
        .into_par_iter()
        .map(|seed| -> Result<Option<String>> {
            let x = random::random_induced(&mut random::rng(seed), &s);
            let t = tate(&x, window)?;
            let nonzero = x
                .complex()
                .weights()
                .into_iter()
                .any(|w| (window.0..=window.1).any(|n| !t.homology(n, w).is_zero()));
            Ok(nonzero.then(|| format!("seed {seed}")))
        })
        .collect::<Result<_>>()?;
    let plain: Vec<String> = plain.into_iter().flatten().collect();
    out.push(CheckRecord::new(
        "induced: X^{tS¹} ≃ 0 (50 instances)",
        plain.is_empty(),
        plain.join(" "),
    ));

    let filtered: Vec<Option<String>> = (0..50u64)
        .into_par_iter()
        .map(|seed| -> Result<Option<String>> {
            let x = random::random_filtered_induced(&mut random::rng(1000 + seed), &s);
            let (_, t) = filtered_orbits_tate(&x, window)?;
            let (lo, hi) = t.range();
            let weights = t.complex().weights();
            let nonzero = (lo..=hi)
                .map(|i| t.graded_piece(i))
                .chain([t.complex().clone()])
                .any(|c| {
                    weights
                        .iter()
                        .any(|&w| (window.0..=window.1).any(|n| !c.homology(n, w).is_zero()))
                });
            Ok(nonzero.then(|| format!("seed {}", 1000 + seed)))
        })
        .collect::<Result<_>>()?;
    let filtered: Vec<String> = filtered.into_iter().flatten().collect();
    out.push(CheckRecord::new(
        "filtered induced: X^{tT_fil} and all gr^i ≃ 0 (50 instances)",
        filtered.is_empty(),
        filtered.join(" "),
    ));

    let gr: Vec<Vec<String>> = (0..30u64)
        .into_par_iter()
        .map(|seed| {
            let x = random::random_filtered_mixed(&mut random::rng(2000 + seed), &s);
            tate_gr_identity(&x, window).map(|bad| {
                bad.into_iter()
                    .map(|b| format!("seed {}: {b}", 2000 + seed))
                    .collect()
            })
        })
        .collect::<Result<_>>()?;
    let gr: Vec<String> = gr.into_iter().flatten().collect();
    out.push(CheckRecord::new(
        "gr^i of filtered fixed points and Tate (30 instances)",
        gr.is_empty(),
        gr.join(" "),
    ));
    Ok(out)
}

fn adams_suite() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for n in 1..=5 {
        let e = eulerian_idempotents(n)?;
        let mut ok = e.iter().fold(GroupAlgebraElement::zero(n), |a, b| a.add(b))
            == GroupAlgebraElement::identity(n);
        for (i, a) in e.iter().enumerate() {
            for (j, b) in e.iter().enumerate() {
                let p = a.mul(b);
                ok &= if i == j { &p == a } else { p.is_zero() };
            }
        }
        out.push(CheckRecord::new(
            format!("Eulerian idempotents n = {n}"),
            ok,
            "",
        ));
    }
    let rings = [
        RingPresentation::polynomial(Ring::Rationals, &[("x", 1)]),
        RingPresentation::polynomial(Ring::Rationals, &[("x", 1), ("y", 1)]),
    ];
    for p in &rings {
        let data = HochschildData::new(p, 4, 5)?;
        for ell in [2, 3] {
            let r = adams_on_filtration(&data, ell)?;
            let bad: Vec<String> = r
                .cells
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("gr^{} H_{} w={}", c.filtration, c.degree, c.weight))
                .collect();
            out.push(CheckRecord::new(
                format!("{p}: ψ^{ell} = {ell}^i on H(gr^i)"),
                r.pass(),
                bad.join(" "),
            ));
        }
        let psi = |l| adams_operation(&data, l);
        let composite = psi(2)?.then(&psi(3)?)?.sub(&psi(6)?)?;
        let mut bad = Vec::new();
        for (n, w) in data.complex().cells() {
            if n <= 4 && !composite.on_homology(n, w)?.is_zero() {
                bad.push(format!("H_{n} w={w}"));
            }
        }
        out.push(CheckRecord::new(
            format!("{p}: ψ²ψ³ = ψ⁶ on homology"),
            bad.is_empty(),
            bad.join(" "),
        ));
    }
    Ok(out)
}

fn roundtrip_suite() -> Vec<CheckRecord> {
    let s = Shape::default();
    let bad: Vec<String> = (0..50u64)
        .into_par_iter()
        .filter_map(|seed| {
            let f = random::random_filtered_complex(&mut random::rng(3000 + seed), &s);
            (!roundtrip_holds(&f)).then(|| format!("seed {}", 3000 + seed))
        })
        .collect();
    vec![CheckRecord::new(
        "split/totalize preserves filtered homology (50 instances)",
        bad.is_empty(),
        bad.join(" "),
    )]
}

pub(crate) fn roundtrip_holds(f: &FilteredComplex) -> bool {
    let back = split_multicomplex(f).totalize();
    let same = |a: &ChainComplex, b: &ChainComplex| a.homology_table() == b.homology_table();
    let (lo, hi) = f.range();
    same(f.complex(), back.complex()) && (lo..=hi).all(|s| same(&f.stage(s), &back.stage(s)))
}
