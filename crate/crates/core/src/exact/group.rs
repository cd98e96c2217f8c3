use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::Ring;

/// Finitely generated abelian group `ℤ^rank ⊕ ⊕ ℤ/dᵢ` with d₁ | d₂ | … and dᵢ ≥ 2.
///
/// Over ℚ the same type records a vector space: torsion is always empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        FgAbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: i64) -> Self {
        FgAbGroup::from_parts(0, [BigInt::from(order)])
    }

    /// Normalizes arbitrary cyclic orders into invariant-factor form.
    /// Orders 0 contribute to the rank; orders ±1 are dropped.
    pub fn from_parts(rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut rank = rank;
        let mut primary: Vec<BigInt> = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                rank += 1;
            } else if !o.is_one() {
                primary.push(o);
            }
        }
        FgAbGroup {
            rank,
            torsion: invariant_form(primary),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup::from_parts(
            self.rank + other.rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    /// Base change to the given coefficient ring (ℚ kills torsion).
    pub fn over(&self, ring: Ring) -> FgAbGroup {
        match ring {
            Ring::Integers => self.clone(),
            Ring::Rationals => FgAbGroup::free(self.rank),
        }
    }

    pub fn divisibility_chain_holds(&self) -> bool {
        self.torsion.iter().all(|d| d > &BigInt::one())
            && self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

/// Turns a list of cyclic orders into the invariant factor list d₁ | d₂ | ….
fn invariant_form(orders: Vec<BigInt>) -> Vec<BigInt> {
    // repeatedly replace (a, b) with (gcd, lcm); this converges to the chain
    let mut v = orders;
    v.sort();
    let n = v.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let g = v[i].gcd(&v[j]);
            let l = v[i].lcm(&v[j]);
            v[i] = g;
            v[j] = l;
        }
    }
    v.retain(|d| !d.is_one());
    v
}

impl FgAbGroup {
    /// Displays the group as a module over `ring`, e.g. `Q^2` over ℚ.
    pub fn display_over(&self, ring: Ring) -> Over<'_> {
        Over(self, ring)
    }
}

pub struct Over<'a>(&'a FgAbGroup, Ring);

impl fmt::Display for Over<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Over(g, ring) = self;
        if g.is_zero() {
            return write!(f, "0");
        }
        let name = match ring {
            Ring::Integers => "Z",
            Ring::Rationals => "Q",
        };
        let mut parts = Vec::new();
        if g.rank == 1 {
            parts.push(name.to_string());
        } else if g.rank > 1 {
            parts.push(format!("{name}^{}", g.rank));
        }
        for d in &g.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_over(Ring::Integers).fmt(f)
    }
}
