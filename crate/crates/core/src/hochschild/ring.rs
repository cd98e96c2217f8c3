use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::{One, Signed};

use super::poly::{
    div_monomials, divides, format_monomial, lcm_monomials, mul_monomials, parse_polynomial,
    Display, Monomial, Polynomial,
};
use crate::error::{Error, Result};
use crate::exact::{Ring, Scalar, SparseVec};

/// A generator with a positive internal weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub weight: i64,
}

/// A commutative ring `base[x₁, …, x_k] / (relations)` with positive generator
/// weights and weight-homogeneous relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    base: Ring,
    generators: Vec<Generator>,
    relations: Vec<Polynomial>,
}

impl RingPresentation {
    pub fn new(base: Ring, generators: Vec<Generator>, relations: Vec<Polynomial>) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            if g.weight <= 0 {
                return Err(Error::Invalid(format!(
                    "generator `{}` has nonpositive weight {}",
                    g.name, g.weight
                )));
            }
            if g.name.is_empty() || generators[..k].iter().any(|h| h.name == g.name) {
                return Err(Error::Invalid(format!(
                    "duplicate or empty generator name `{}`",
                    g.name
                )));
            }
        }
        let p = RingPresentation {
            base,
            generators,
            relations: Vec::new(),
        };
        let mut rels = Vec::new();
        for (r, rel) in relations.into_iter().enumerate() {
            if rel.terms.keys().any(|m| m.len() != p.nvars()) {
                return Err(Error::Invalid(format!(
                    "relation {r} has the wrong number of variables"
                )));
            }
            if base == Ring::Integers && !rel.is_integral() {
                return Err(Error::Invalid(format!(
                    "relation {r} has non-integral coefficients"
                )));
            }
            p.check_homogeneous(r, &rel)?;
            if !rel.is_zero() {
                rels.push(rel);
            }
        }
        Ok(RingPresentation {
            relations: rels,
            ..p
        })
    }

    /// `base[x₁, …]` with the given generators.
    pub fn polynomial(base: Ring, generators: &[(&str, i64)]) -> Self {
        RingPresentation::new(base, gens(generators), Vec::new()).expect("valid polynomial ring")
    }

    /// Parses relation strings; parse errors report the relation's 1-based
    /// index as the line.
    pub fn parse(base: Ring, generators: &[(&str, i64)], relations: &[&str]) -> Result<Self> {
        let g = gens(generators);
        let names: Vec<String> = g.iter().map(|g| g.name.clone()).collect();
        let rels = relations
            .iter()
            .enumerate()
            .map(|(k, r)| parse_polynomial(r, &names, k + 1))
            .collect::<Result<Vec<_>>>()?;
        RingPresentation::new(base, g, rels)
    }

    fn check_homogeneous(&self, r: usize, rel: &Polynomial) -> Result<()> {
        let Some((lead, _)) = rel.leading(&|a, b| self.order(a, b)) else {
            return Ok(());
        };
        let expected = self.weight_of(lead);
        if expected == 0 {
            return Err(Error::Invalid(format!("relation {r} has a constant term")));
        }
        for m in rel.terms.keys() {
            let found = self.weight_of(m);
            if found != expected {
                return Err(Error::Inhomogeneous {
                    relation: r,
                    term: format_monomial(m, &self.names()),
                    found,
                    expected,
                });
            }
        }
        Ok(())
    }

    pub fn base(&self) -> Ring {
        self.base
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn is_smooth(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn weight_of(&self, m: &[u32]) -> i64 {
        m.iter()
            .zip(&self.generators)
            .map(|(e, g)| i64::from(*e) * g.weight)
            .sum()
    }

    /// Weight first, then lexicographic with earlier generators larger.
    pub fn order(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.weight_of(a)
            .cmp(&self.weight_of(b))
            .then_with(|| a.cmp(b))
    }

    pub fn display(&self, p: &Polynomial) -> String {
        Display(p, &self.names()).to_string()
    }

    /// All monomials of weight `w`, largest first.
    pub fn monomials(&self, w: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.nvars()];
        self.fill(0, w, &mut cur, &mut out);
        out.sort_by(|a, b| self.order(b, a));
        out
    }

    fn fill(&self, k: usize, rest: i64, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if k == self.nvars() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let wt = self.generators[k].weight;
        let mut e = 0;
        while e * wt <= rest {
            cur[k] = e as u32;
            self.fill(k + 1, rest - e * wt, cur, out);
            e += 1;
        }
        cur[k] = 0;
    }

    /// Gröbner basis and standard monomial bases up to weight `max_weight`.
    pub fn truncate(&self, max_weight: i64) -> Result<GradedRing> {
        GradedRing::new(self.clone(), max_weight)
    }
}

fn gens(generators: &[(&str, i64)]) -> Vec<Generator> {
    generators
        .iter()
        .map(|(n, w)| Generator {
            name: n.to_string(),
            weight: *w,
        })
        .collect()
}

impl std::fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[{}]", self.base(), self.names().join(", "))?;
        if !self.relations().is_empty() {
            let rels: Vec<String> = self.relations().iter().map(|r| self.display(r)).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

/// The weight pieces `B_0, …, B_W` of a presented ring, each with its basis of
/// standard monomials, and the multiplication table between them.
#[derive(Clone, Debug)]
pub struct GradedRing {
    presentation: RingPresentation,
    max_weight: i64,
    groebner: Vec<Polynomial>,
    bases: Vec<Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
    table: HashMap<(usize, usize, usize, usize), SparseVec>,
}

impl GradedRing {
    fn new(p: RingPresentation, max_weight: i64) -> Result<Self> {
        let max_weight = max_weight.max(0);
        let groebner = groebner_basis(&p, max_weight)?;
        let leads: Vec<Monomial> = groebner
            .iter()
            .map(|g| g.leading(&|a, b| p.order(a, b)).unwrap().0.clone())
            .collect();
        let mut bases = Vec::new();
        let mut index = HashMap::new();
        for w in 0..=max_weight {
            let b: Vec<Monomial> = p
                .monomials(w)
                .into_iter()
                .filter(|m| !leads.iter().any(|l| divides(l, m)))
                .collect();
            for (i, m) in b.iter().enumerate() {
                index.insert(m.clone(), i);
            }
            bases.push(b);
        }
        let mut ring = GradedRing {
            presentation: p,
            max_weight,
            groebner,
            bases,
            index,
            table: HashMap::new(),
        };
        let mut table = HashMap::new();
        for w1 in 0..=max_weight as usize {
            for w2 in 0..=(max_weight as usize - w1) {
                for (i1, m1) in ring.bases[w1].iter().enumerate() {
                    for (i2, m2) in ring.bases[w2].iter().enumerate() {
                        let prod = Polynomial::monomial(mul_monomials(m1, m2), Scalar::one());
                        let nf = ring.normal_form(&prod);
                        table.insert((w1, i1, w2, i2), ring.coordinates(&nf));
                    }
                }
            }
        }
        ring.table = table;
        Ok(ring)
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.presentation
    }

    pub fn base(&self) -> Ring {
        self.presentation.base
    }

    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.groebner
    }

    pub fn dim(&self, w: i64) -> usize {
        if w < 0 || w > self.max_weight {
            0
        } else {
            self.bases[w as usize].len()
        }
    }

    pub fn basis(&self, w: i64) -> &[Monomial] {
        &self.bases[w as usize]
    }

    pub fn label(&self, w: usize, i: usize) -> String {
        format_monomial(&self.bases[w][i], &self.presentation.names())
    }

    /// Index of a standard monomial within its weight piece.
    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        reduce(p, &self.groebner, &self.presentation)
    }

    /// Coordinates of a normal form (all terms in one weight) in the standard basis.
    fn coordinates(&self, nf: &Polynomial) -> SparseVec {
        let mut v: SparseVec = nf
            .terms
            .iter()
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    /// Product of basis elements `(w1, i1)` and `(w2, i2)` in the basis of weight `w1 + w2`.
    pub fn multiply(&self, w1: usize, i1: usize, w2: usize, i2: usize) -> &SparseVec {
        &self.table[&(w1, i1, w2, i2)]
    }

    /// The class of generator `k` as a basis element, if it is standard.
    pub fn generator_element(&self, k: usize) -> Option<(usize, usize)> {
        let g = &self.presentation.generators[k];
        let mut m = vec![0; self.presentation.nvars()];
        m[k] = 1;
        if g.weight > self.max_weight {
            return None;
        }
        self.index_of(&m).map(|i| (g.weight as usize, i))
    }
}

fn reduce(p: &Polynomial, gb: &[Polynomial], pres: &RingPresentation) -> Polynomial {
    let order = |a: &Monomial, b: &Monomial| pres.order(a, b);
    let leads: Vec<(Monomial, Scalar)> = gb
        .iter()
        .map(|g| {
            let (m, c) = g.leading(&order).unwrap();
            (m.clone(), c.clone())
        })
        .collect();
    let mut p = p.clone();
    loop {
        let mut hit = None;
        for (m, c) in p.terms.iter().rev() {
            if let Some(k) = leads.iter().position(|(l, _)| divides(l, m)) {
                hit = Some((m.clone(), c.clone(), k));
                break;
            }
        }
        let Some((m, c, k)) = hit else {
            return p;
        };
        let (l, lc) = &leads[k];
        let factor = Polynomial::monomial(div_monomials(&m, l), -(c / lc));
        p = p.add(&factor.mul(&gb[k]));
    }
}

fn normalize(p: Polynomial, pres: &RingPresentation) -> Result<Polynomial> {
    let (_, lc) = p.leading(&|a, b| pres.order(a, b)).unwrap();
    match pres.base {
        Ring::Rationals => Ok(p.scale(&(Scalar::one() / lc))),
        Ring::Integers => {
            if !lc.is_integer() || !lc.abs().is_one() {
                return Err(Error::UnsupportedRelations(format!(
                    "over Z the rewriting needs unit leading coefficients; `{}` has leading coefficient {lc}",
                    pres.display(&p)
                )));
            }
            let s = lc.clone();
            Ok(p.scale(&s))
        }
    }
}

/// Buchberger's algorithm, restricted to S-pairs of weight at most `max_weight`
/// (enough for a homogeneous ideal in those weights).
fn groebner_basis(p: &RingPresentation, max_weight: i64) -> Result<Vec<Polynomial>> {
    let order = |a: &Monomial, b: &Monomial| p.order(a, b);
    let lead = |g: &Polynomial| g.leading(&order).unwrap().0.clone();
    let mut gb: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let push = |gb: &mut Vec<Polynomial>, pairs: &mut Vec<(usize, usize)>, g: Polynomial| {
        let k = gb.len();
        pairs.extend((0..k).map(|i| (i, k)));
        gb.push(g);
    };
    for r in p.relations() {
        if p.weight_of(&lead(r)) > max_weight {
            continue;
        }
        let nf = reduce(r, &gb, p);
        if !nf.is_zero() {
            let g = normalize(nf, p)?;
            push(&mut gb, &mut pairs, g);
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (li, lj) = (lead(&gb[i]), lead(&gb[j]));
        let l = lcm_monomials(&li, &lj);
        if p.weight_of(&l) > max_weight || mul_monomials(&li, &lj) == l {
            continue;
        }
        let s = Polynomial::monomial(div_monomials(&l, &li), Scalar::one())
            .mul(&gb[i])
            .add(&Polynomial::monomial(div_monomials(&l, &lj), -Scalar::one()).mul(&gb[j]));
        let nf = reduce(&s, &gb, p);
        if !nf.is_zero() {
            let g = normalize(nf, p)?;
            push(&mut gb, &mut pairs, g);
        }
    }
    Ok(gb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    #[test]
    fn polynomial_ring_dims() {
        let p = RingPresentation::polynomial(Ring::Integers, &[("x", 1), ("y", 1)]);
        let r = p.truncate(4).unwrap();
        assert_eq!(
            (0..=4).map(|w| r.dim(w)).collect::<Vec<_>>(),
            vec![1, 2, 3, 4, 5]
        );
        assert_eq!(r.label(2, 0), "x^2");
        assert_eq!(r.label(2, 1), "x*y");
        assert_eq!(r.multiply(1, 0, 1, 1), &vec![(1, int(1))]);
    }

    #[test]
    fn dual_numbers() {
        let p = RingPresentation::parse(Ring::Rationals, &[("x", 1)], &["x^2"]).unwrap();
        let r = p.truncate(5).unwrap();
        assert_eq!(
            (0..=5).map(|w| r.dim(w)).collect::<Vec<_>>(),
            vec![1, 1, 0, 0, 0, 0]
        );
        assert!(r.multiply(1, 0, 1, 0).is_empty());
    }

    #[test]
    fn principal_relation_with_completion() {
        // x^2 - y^2 over Z: standard monomials avoid x^2
        let p =
            RingPresentation::parse(Ring::Integers, &[("x", 1), ("y", 1)], &["x^2 - y^2"]).unwrap();
        let r = p.truncate(4).unwrap();
        assert_eq!(
            (0..=4).map(|w| r.dim(w)).collect::<Vec<_>>(),
            vec![1, 2, 2, 2, 2]
        );
        let x = r.generator_element(0).unwrap();
        // x * x = y^2
        let prod = r.multiply(x.0, x.1, x.0, x.1);
        assert_eq!(prod.len(), 1);
        assert_eq!(r.label(2, prod[0].0), "y^2");
    }

    #[test]
    fn rejections() {
        let e = RingPresentation::parse(Ring::Integers, &[("x", 1), ("y", 1)], &["x^2 + y"]);
        match e {
            Err(Error::Inhomogeneous {
                term,
                found,
                expected,
                ..
            }) => {
                assert_eq!((term.as_str(), found, expected), ("y", 1, 2));
            }
            other => panic!("{other:?}"),
        }
        let p = RingPresentation::parse(Ring::Integers, &[("x", 1)], &["2*x^2"]).unwrap();
        assert!(matches!(p.truncate(3), Err(Error::UnsupportedRelations(_))));
        let q = RingPresentation::parse(Ring::Rationals, &[("x", 1)], &["2*x^2"]).unwrap();
        assert_eq!(q.truncate(3).unwrap().dim(2), 0);
        assert!(RingPresentation::parse(Ring::Integers, &[("x", 0)], &[]).is_err());
    }
}
