//! The command-line front end: presentation files, result tables, the
//! `compute` and `adams` commands and the `check` suites.

mod suites;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::adams::adams_on_filtration;
use crate::complexes::Cell;
use crate::error::{Error, Result};
use crate::exact::{FgAbGroup, Ring};
use crate::hochschild::{hkr_filtration, DeRhamComplex, HochschildData, RingPresentation};
use crate::mixed::{fixed_points, orbits, tate, windowed_homology};

pub use suites::{run_suite, CheckRecord, Suite, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Exit code for an error: resource caps are 3, everything else is an input
/// problem.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap(_) => EXIT_RESOURCE,
        _ => EXIT_INPUT,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub weight: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub max_degree: i64,
    pub max_weight: i64,
}

/// The JSON input format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub base: String,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
    pub window: WindowSpec,
}

impl PresentationFile {
    pub fn presentation(&self) -> Result<RingPresentation> {
        let base = match self.base.as_str() {
            "Z" => Ring::Integers,
            "Q" => Ring::Rationals,
            other => {
                return Err(Error::Invalid(format!(
                    "base must be \"Z\" or \"Q\", got {other:?}"
                )))
            }
        };
        let gens: Vec<(&str, i64)> = self
            .generators
            .iter()
            .map(|g| (g.name.as_str(), g.weight))
            .collect();
        let rels: Vec<&str> = self.relations.iter().map(String::as_str).collect();
        RingPresentation::parse(base, &gens, &rels)
    }
}

/// Parses and validates a presentation file.
pub fn parse_presentation(text: &str) -> Result<(RingPresentation, WindowSpec)> {
    let file: PresentationFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let w = file.window;
    if w.max_degree < 0 || w.max_weight < 0 {
        return Err(Error::Invalid(format!(
            "window ({}, {}) has a negative bound",
            w.max_degree, w.max_weight
        )));
    }
    Ok((file.presentation()?, w))
}

/// A group in a result table; torsion orders that do not fit in 64 bits are
/// written as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub rank: usize,
    pub torsion: Vec<serde_json::Value>,
}

impl From<&FgAbGroup> for GroupRecord {
    fn from(g: &FgAbGroup) -> Self {
        GroupRecord {
            rank: g.rank,
            torsion: g.torsion.iter().map(bigint_value).collect(),
        }
    }
}

fn bigint_value(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(k) => serde_json::Value::from(k),
        None => serde_json::Value::from(n.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultCell {
    pub degree: i64,
    pub weight: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<i64>,
    pub group: GroupRecord,
    pub stable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalue: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultTable {
    pub invariant: String,
    pub presentation: String,
    pub cells: Vec<ResultCell>,
}

impl ResultTable {
    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        to_sorted_json(self)
    }

    pub fn pass(&self) -> bool {
        self.cells.iter().all(|c| c.pass != Some(false))
    }
}

pub fn to_sorted_json<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    Hh,
    Dr,
    Hc,
    HcMinus,
    Hp,
    Hkr,
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::Hh => "hh",
            Invariant::Dr => "dr",
            Invariant::Hc => "hc",
            Invariant::HcMinus => "hcminus",
            Invariant::Hp => "hp",
            Invariant::Hkr => "hkr",
        }
    }
}

type Key = (Option<i64>, i64, i64);

/// Cells of `compute(N)` with each marked stable when `compute(N + 2)` gives
/// the same group. Weight strands are independent summands, so only the
/// degree bound is widened. A widened run that hits a resource cap leaves
/// every cell unstable.
fn degree_stable(
    compute: impl Fn(i64) -> Result<BTreeMap<Key, FgAbGroup>>,
    n: i64,
) -> Result<Vec<ResultCell>> {
    let narrow = compute(n)?;
    let wide = match compute(n + 2) {
        Ok(w) => Some(w),
        Err(Error::ResourceCap(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(narrow
        .into_iter()
        .map(|((filtration, degree, weight), g)| ResultCell {
            degree,
            weight,
            filtration,
            stable: wide
                .as_ref()
                .is_some_and(|w| w.get(&(filtration, degree, weight)) == Some(&g)),
            group: GroupRecord::from(&g),
            eigenvalue: None,
            pass: None,
        })
        .collect())
}

fn from_window(cells: BTreeMap<Cell, crate::mixed::WindowCell>) -> Vec<ResultCell> {
    let mut out: Vec<ResultCell> = cells
        .into_iter()
        .map(|((degree, weight), c)| ResultCell {
            degree,
            weight,
            filtration: None,
            group: GroupRecord::from(&c.group),
            stable: c.stable,
            eigenvalue: None,
            pass: None,
        })
        .collect();
    out.sort_by_key(|c| (c.weight, c.degree));
    out
}

/// Runs one invariant on a presentation and window.
pub fn compute(
    p: &RingPresentation,
    window: WindowSpec,
    invariant: Invariant,
) -> Result<ResultTable> {
    let WindowSpec {
        max_degree: n,
        max_weight: w,
    } = window;
    let mut cells = match invariant {
        Invariant::Hh => degree_stable(
            |nn| {
                let data = HochschildData::new(p, nn, w)?;
                let mut out = BTreeMap::new();
                for ww in 0..=w {
                    for k in 0..=n.min(nn) {
                        out.insert((None, k, ww), data.homology(k, ww)?);
                    }
                }
                Ok(out)
            },
            n,
        )?,
        Invariant::Dr => {
            let narrow = DeRhamComplex::new(p, w)?;
            let wide = DeRhamComplex::new(p, w + 2)?;
            let mut out = Vec::new();
            for ww in 0..=w {
                for i in 0..=p.nvars() as i64 {
                    let g = narrow.cohomology(i, ww);
                    out.push(ResultCell {
                        degree: i,
                        weight: ww,
                        filtration: None,
                        stable: wide.cohomology(i, ww) == g,
                        group: GroupRecord::from(&g),
                        eigenvalue: None,
                        pass: None,
                    });
                }
            }
            out
        }
        Invariant::Hc | Invariant::HcMinus | Invariant::Hp => {
            let x = HochschildData::new(p, n, w)?.mixed();
            match invariant {
                Invariant::Hc => from_window(windowed_homology(|win| orbits(&x, win), (0, n))?),
                Invariant::HcMinus => {
                    from_window(windowed_homology(|win| fixed_points(&x, win), (-n, n))?)
                }
                _ => from_window(windowed_homology(|win| tate(&x, win), (-n, n))?),
            }
        }
        Invariant::Hkr => degree_stable(
            |nn| {
                let data = HochschildData::new(p, nn, w)?;
                let f = hkr_filtration(&data)?;
                let mut out = BTreeMap::new();
                for ww in 0..=w {
                    if !data.is_complete(ww) || ww > n + 1 {
                        continue;
                    }
                    for i in 0..=n.min(nn) {
                        for k in 0..=n.min(nn) {
                            out.insert((Some(i), k, ww), f.graded_homology(i, k, ww));
                        }
                    }
                }
                Ok(out)
            },
            n,
        )?,
    };
    cells.sort_by_key(|c| (c.weight, c.filtration, c.degree));
    Ok(ResultTable {
        invariant: invariant.name().to_string(),
        presentation: p.to_string(),
        cells,
    })
}

/// `ψ^ℓ` on the homology of the graded pieces of the HKR filtration.
pub fn adams_table(p: &RingPresentation, window: WindowSpec, ell: i64) -> Result<ResultTable> {
    let run = |nn: i64| adams_on_filtration(&HochschildData::new(p, nn, window.max_weight)?, ell);
    let narrow = run(window.max_degree)?;
    let wide = match run(window.max_degree + 2) {
        Ok(r) => Some(r),
        Err(Error::ResourceCap(_)) => None,
        Err(e) => return Err(e),
    };
    let mut cells: Vec<ResultCell> = narrow
        .cells
        .iter()
        .map(|c| {
            let stable = wide.as_ref().is_some_and(|r| {
                r.cells.iter().any(|d| {
                    (d.filtration, d.degree, d.weight) == (c.filtration, c.degree, c.weight)
                        && d.group == c.group
                })
            });
            ResultCell {
                degree: c.degree,
                weight: c.weight,
                filtration: Some(c.filtration),
                group: GroupRecord::from(&c.group),
                stable,
                eigenvalue: Some(c.eigenvalue.to_string()),
                pass: Some(c.pass && narrow.preserves_filtration),
            }
        })
        .collect();
    cells.sort_by_key(|c| (c.weight, c.filtration, c.degree));
    Ok(ResultTable {
        invariant: format!("adams{ell}"),
        presentation: p.to_string(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = r#"{"base":"Z","generators":[{"name":"x","weight":1}],"relations":[],"window":{"max_degree":3,"max_weight":4}}"#;

    #[test]
    fn parses_presentations() {
        let (p, w) = parse_presentation(LINE).unwrap();
        assert_eq!(p.to_string(), "Z[x]");
        assert_eq!(
            w,
            WindowSpec {
                max_degree: 3,
                max_weight: 4
            }
        );
        let sq = LINE.replace("[]", r#"["x^2"]"#);
        assert!(parse_presentation(&sq).unwrap().0.relations().len() == 1);
        let bad = r#"{"base":"Z","generators":[{"name":"x","weight":1},{"name":"y","weight":1}],"relations":["x^2 + y"],"window":{"max_degree":3,"max_weight":4}}"#;
        assert!(matches!(
            parse_presentation(bad),
            Err(Error::Inhomogeneous { .. })
        ));
        let broken = "{\n  \"base\": \"Z\",\n  \"generators\": [\n}";
        match parse_presentation(broken) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hh_and_dr_tables() {
        let (p, w) = parse_presentation(LINE).unwrap();
        let hh = compute(&p, w, Invariant::Hh).unwrap();
        assert!(hh.cells.iter().all(|c| c.stable));
        for c in &hh.cells {
            let expected = if c.degree <= 1 && c.weight >= c.degree {
                1
            } else {
                0
            };
            assert_eq!(c.group.rank, expected, "{c:?}");
        }
        let dr = compute(&p, w, Invariant::Dr).unwrap();
        let h1: Vec<_> = dr
            .cells
            .iter()
            .filter(|c| c.degree == 1 && c.weight > 0)
            .collect();
        assert!(h1
            .iter()
            .all(|c| c.group.torsion == vec![serde_json::Value::from(c.weight)] || c.weight == 1));
        assert_eq!(
            compute(&p, w, Invariant::Hh).unwrap().to_json(),
            hh.to_json()
        );
    }
}
