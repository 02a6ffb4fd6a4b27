use serde::Serialize;

use super::{Family, Root, RootSystem, DEFAULT_WEYL_CAP};
use crate::error::{Error, Result};

/// A signed permutation: coordinate `i` moves to `perm[i]` and then picks up
/// the sign `signs[perm[i]]`. Type A elements carry all signs `+1`; type D
/// elements carry an even number of `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeylElement {
    pub perm: Vec<u8>,
    pub signs: Vec<i8>,
}

impl WeylElement {
    pub fn identity(ncoords: usize) -> Self {
        WeylElement {
            perm: (0..ncoords as u8).collect(),
            signs: vec![1; ncoords],
        }
    }

    /// The `k`-th element in the fixed enumeration order: permutations in
    /// lexicographic order, sign patterns varying fastest.
    pub fn unrank(family: Family, rank: usize, k: u128) -> WeylElement {
        let nc = family.ambient_dim(rank);
        let nsigns: u128 = match family {
            Family::A => 1,
            Family::B | Family::C => 1 << rank,
            Family::D => 1 << (rank - 1),
        };
        let mut perm_index = k / nsigns;
        let sign_index = k % nsigns;

        let mut pool: Vec<u8> = (0..nc as u8).collect();
        let mut perm = Vec::with_capacity(nc);
        let mut fact: u128 = (1..nc as u128).product::<u128>().max(1);
        for remaining in (1..=nc).rev() {
            let d = (perm_index / fact) as usize;
            perm_index %= fact;
            perm.push(pool.remove(d));
            if remaining > 1 {
                fact /= (remaining - 1) as u128;
            }
        }

        let mut signs = vec![1i8; nc];
        match family {
            Family::A => {}
            Family::B | Family::C => {
                for (i, s) in signs.iter_mut().enumerate() {
                    if sign_index >> i & 1 == 1 {
                        *s = -1;
                    }
                }
            }
            Family::D => {
                let mut parity = 0;
                for (i, s) in signs.iter_mut().take(rank - 1).enumerate() {
                    if sign_index >> i & 1 == 1 {
                        *s = -1;
                        parity ^= 1;
                    }
                }
                if parity == 1 {
                    signs[rank - 1] = -1;
                }
            }
        }
        WeylElement { perm, signs }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let nc = self.perm.len();
        let mut perm = vec![0u8; nc];
        let mut signs = vec![1i8; nc];
        for (slot, &mid) in perm.iter_mut().zip(&other.perm) {
            let mid = mid as usize;
            let dst = self.perm[mid];
            *slot = dst;
            signs[dst as usize] = self.signs[dst as usize] * other.signs[mid];
        }
        WeylElement { perm, signs }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut perm = vec![0u8; self.perm.len()];
        for (i, &dst) in self.perm.iter().enumerate() {
            perm[dst as usize] = i as u8;
        }
        let signs = self.perm.iter().map(|&dst| self.signs[dst as usize]).collect();
        WeylElement { perm, signs }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == i) && self.signs.iter().all(|&s| s == 1)
    }
}

/// Coordinate `i` of the result is `signs[i] * r[perm^-1(i)]`.
pub fn apply_weyl(w: &WeylElement, r: &Root) -> Root {
    let mut out = vec![0i8; r.0.len()];
    for (i, &c) in r.0.iter().enumerate() {
        let dst = w.perm[i] as usize;
        out[dst] = w.signs[dst] * c;
    }
    Root(out)
}

/// Enumerates the Weyl group exactly once in a deterministic order.
pub fn weyl_elements(
    family: Family,
    rank: usize,
) -> Result<impl Iterator<Item = WeylElement>> {
    family.check_rank(rank)?;
    let order = family.weyl_order(rank);
    if order > DEFAULT_WEYL_CAP {
        return Err(Error::Capacity {
            what: format!("Weyl group of {family}{rank}"),
            needed: order,
            cap: DEFAULT_WEYL_CAP,
        });
    }
    Ok((0..order).map(move |k| WeylElement::unrank(family, rank, k)))
}

impl RootSystem {
    pub fn weyl_element(&self, k: u64) -> WeylElement {
        WeylElement::unrank(self.family(), self.rank(), k as u128)
    }
}
