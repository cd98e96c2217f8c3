use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::scalar::{frac, int, sign};
use crate::exact::Scalar;

/// Permutation of `{0, …, n-1}` in one-line notation: `p[i] = σ(i)`.
pub type Permutation = Vec<u8>;

/// Largest `n` for which idempotents are tabulated.
pub const MAX_N: usize = 6;

pub fn compose(s: &[u8], t: &[u8]) -> Permutation {
    t.iter().map(|&i| s[i as usize]).collect()
}

pub fn inverse(s: &[u8]) -> Permutation {
    let mut out = vec![0u8; s.len()];
    for (i, &j) in s.iter().enumerate() {
        out[j as usize] = i as u8;
    }
    out
}

pub fn parity(s: &[u8]) -> i64 {
    let mut inv = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

/// Number of `i` with `σ(i) > σ(i+1)`.
pub fn descents(s: &[u8]) -> usize {
    s.windows(2).filter(|w| w[0] > w[1]).count()
}

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    fn go(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Permutation>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            go(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    go(0, &mut cur, &mut out);
    out.sort();
    out
}

/// Element of the rational group algebra `ℚ[S_n]`; the product is composition,
/// `(σ · τ)(i) = σ(τ(i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub n: usize,
    pub coefficients: BTreeMap<Permutation, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            n,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        GroupAlgebraElement::basis((0..n as u8).collect())
    }

    pub fn basis(p: Permutation) -> Self {
        let n = p.len();
        GroupAlgebraElement {
            n,
            coefficients: BTreeMap::from([(p, Scalar::one())]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, p: &[u8]) -> Scalar {
        self.coefficients
            .get(p)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    fn insert(&mut self, p: Permutation, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self
            .coefficients
            .entry(p.clone())
            .or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.coefficients.remove(&p);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.coefficients {
            out.insert(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return GroupAlgebraElement::zero(self.n);
        }
        GroupAlgebraElement {
            n: self.n,
            coefficients: self
                .coefficients
                .iter()
                .map(|(p, v)| (p.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = GroupAlgebraElement::zero(self.n);
        for (s, a) in &self.coefficients {
            for (t, b) in &other.coefficients {
                out.insert(compose(s, t), a * b);
            }
        }
        out
    }

    /// `f × g ∈ ℚ[S_{p+q}]`, `f` acting on the first `p` letters.
    pub fn cross(&self, other: &Self) -> Self {
        let p = self.n as u8;
        let mut out = GroupAlgebraElement::zero(self.n + other.n);
        for (s, a) in &self.coefficients {
            for (t, b) in &other.coefficients {
                let mut u = s.clone();
                u.extend(t.iter().map(|&i| i + p));
                out.insert(u, a * b);
            }
        }
        out
    }
}

/// Sum of the `(p, q)`-shuffles: permutations increasing on `0..p` and on `p..p+q`.
pub fn shuffle_element(p: usize, q: usize) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero(p + q);
    let mut pattern = Vec::with_capacity(p + q);
    fn go(p: usize, q: usize, pattern: &mut Vec<bool>, out: &mut GroupAlgebraElement) {
        if p == 0 && q == 0 {
            let mut sigma = vec![0u8; pattern.len()];
            let (mut a, mut b) = (0usize, 0usize);
            let na = pattern.iter().filter(|x| **x).count();
            for (pos, &from_first) in pattern.iter().enumerate() {
                if from_first {
                    sigma[a] = pos as u8;
                    a += 1;
                } else {
                    sigma[na + b] = pos as u8;
                    b += 1;
                }
            }
            out.insert(sigma, Scalar::one());
            return;
        }
        if p > 0 {
            pattern.push(true);
            go(p - 1, q, pattern, out);
            pattern.pop();
        }
        if q > 0 {
            pattern.push(false);
            go(p, q - 1, pattern, out);
            pattern.pop();
        }
    }
    go(p, q, &mut pattern, &mut out);
    out
}

/// Families `(f_n)_{0 ≤ n ≤ N}` with `f_n ∈ ℚ[S_n]` under the shuffle
/// convolution `(f * g)_n = Σ_{p+q=n} sh_{p,q} · (f_p × g_q)`.
pub type Family = Vec<GroupAlgebraElement>;

pub fn convolve(f: &Family, g: &Family) -> Family {
    let top = f.len().min(g.len());
    (0..top)
        .map(|n| {
            let mut acc = GroupAlgebraElement::zero(n);
            for p in 0..=n {
                let q = n - p;
                if f[p].is_zero() || g[q].is_zero() {
                    continue;
                }
                acc = acc.add(&shuffle_element(p, q).mul(&f[p].cross(&g[q])));
            }
            acc
        })
        .collect()
}

fn identity_family(top: usize) -> Family {
    (0..=top).map(GroupAlgebraElement::identity).collect()
}

/// `λ^k = I^{*k}`, the `k`-th convolution power of the identity family.
pub fn lambda_family(k: usize, top: usize) -> Family {
    let mut out: Family = (0..=top)
        .map(|n| {
            if n == 0 {
                GroupAlgebraElement::identity(0)
            } else {
                GroupAlgebraElement::zero(n)
            }
        })
        .collect();
    let id = identity_family(top);
    for _ in 0..k {
        out = convolve(&out, &id);
    }
    out
}

/// `e^{(1)} = log(I) = Σ_{j≥1} (-1)^{j-1}/j · J^{*j}` with `J = I - ε`.
fn first_eulerian(top: usize) -> Family {
    let j: Family = (0..=top)
        .map(|n| {
            if n == 0 {
                GroupAlgebraElement::zero(0)
            } else {
                GroupAlgebraElement::identity(n)
            }
        })
        .collect();
    let mut power = j.clone();
    let mut out: Family = (0..=top).map(GroupAlgebraElement::zero).collect();
    for k in 1..=top {
        let c = sign(k as i64 - 1) * frac(1, k as i64);
        for n in 0..=top {
            out[n] = out[n].add(&power[n].scale(&c));
        }
        power = convolve(&power, &j);
    }
    out
}

/// `table[i][n] = e^{(i)}_n` for `0 ≤ i, n ≤ MAX_N`.
fn table() -> &'static Vec<Family> {
    static TABLE: OnceLock<Vec<Family>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let e1 = first_eulerian(MAX_N);
        let mut out = Vec::new();
        let mut power: Family = (0..=MAX_N)
            .map(|n| {
                if n == 0 {
                    GroupAlgebraElement::identity(0)
                } else {
                    GroupAlgebraElement::zero(n)
                }
            })
            .collect();
        let mut factorial = Scalar::one();
        for i in 0..=MAX_N {
            if i > 0 {
                power = convolve(&power, &e1);
                factorial *= int(i as i64);
            }
            let inv = Scalar::one() / &factorial;
            out.push(power.iter().map(|x| x.scale(&inv)).collect());
        }
        out
    })
}

/// `e^{(i)}_n`, zero for `i > n`; `e^{(0)}_0 = 1`.
pub fn eulerian_idempotent(i: usize, n: usize) -> Result<GroupAlgebraElement> {
    if n > MAX_N {
        return Err(Error::ResourceCap(format!(
            "Eulerian idempotents are tabulated for n ≤ {MAX_N}, asked for n = {n}"
        )));
    }
    if i > n {
        return Ok(GroupAlgebraElement::zero(n));
    }
    Ok(table()[i][n].clone())
}

/// `e^{(1)}_n, …, e^{(n)}_n`.
pub fn eulerian_idempotents(n: usize) -> Result<Vec<GroupAlgebraElement>> {
    if n == 0 {
        return Err(Error::Invalid("Eulerian idempotents need n ≥ 1".into()));
    }
    (1..=n).map(|i| eulerian_idempotent(i, n)).collect()
}

/// `ψ^ℓ_n = Σ_i ℓ^i e^{(i)}_n`.
pub fn adams_element(ell: i64, n: usize) -> Result<GroupAlgebraElement> {
    let mut out = GroupAlgebraElement::zero(n);
    let mut power = Scalar::one();
    for i in 0..=n {
        out = out.add(&eulerian_idempotent(i, n)?.scale(&power));
        power *= int(ell);
    }
    Ok(out)
}
