//! Root systems of the classical families, their Weyl groups and
//! root-subsystem machinery.

mod corank;
mod rootset;
mod subsystem;
mod weyl;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub use corank::closed_corank1_subsystems;
pub use rootset::RootSet;
pub use subsystem::{format_factors, Factor, FactorKind, RootSubsystem};
pub use weyl::{apply_weyl, weyl_elements, WeylElement};

/// Default cap on Weyl group enumeration.
pub const DEFAULT_WEYL_CAP: u128 = 2_000_000;

/// The four classical families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

    /// Smallest rank this crate will construct. C2, D2 and D3 are allowed for
    /// base-case work even though they are not usually listed on their own.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            _ => 2,
        }
    }

    /// Length of coordinate vectors: n+1 for A, n otherwise.
    pub fn ambient_dim(self, rank: usize) -> usize {
        match self {
            Family::A => rank + 1,
            _ => rank,
        }
    }

    pub fn root_count(self, n: usize) -> usize {
        match self {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
        }
    }

    pub fn weyl_order(self, n: usize) -> u128 {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        match self {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
        }
    }

    /// Size of the defining matrices: su(n+1), so(2n+1), sp(n) as 2n x 2n, so(2n).
    pub fn matrix_size(self, n: usize) -> usize {
        match self {
            Family::A => n + 1,
            Family::B => 2 * n + 1,
            Family::C | Family::D => 2 * n,
        }
    }

    /// Real dimension of the compact matrix Lie algebra.
    pub fn algebra_dim(self, n: usize) -> usize {
        match self {
            Family::A => (n + 1) * (n + 1) - 1,
            Family::B => (2 * n + 1) * (2 * n) / 2,
            Family::C => n * (2 * n + 1),
            Family::D => 2 * n * (2 * n - 1) / 2,
        }
    }

    pub fn check_rank(self, rank: usize) -> Result<()> {
        if rank < self.min_rank() {
            return domain(format!(
                "rank {rank} below minimum {} for family {self}",
                self.min_rank()
            ));
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown family `{other}`"),
            }),
        }
    }
}

/// A root as an integer coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i8>);

impl Root {
    pub fn coords(&self) -> &[i8] {
        &self.0
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|&c| -c).collect())
    }

    pub fn dot(&self, other: &Root) -> i64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }

    pub fn norm2(&self) -> i64 {
        self.dot(self)
    }

    /// First nonzero coordinate positive.
    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    fn terms(&self) -> Terms {
        let mut t = [NO_TERM; 2];
        let mut k = 0;
        for (i, &c) in self.0.iter().enumerate() {
            if c != 0 {
                t[k] = (i as u8, c);
                k += 1;
            }
        }
        t
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            write!(f, "{sign}{mag}e{}", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Up to two nonzero (coordinate, coefficient) pairs; unused slots are `NO_TERM`.
type Terms = [(u8, i8); 2];
const NO_TERM: (u8, i8) = (u8::MAX, 0);

/// The full root system of a classical family at a given rank.
#[derive(Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    ncoords: usize,
    roots: Vec<Root>,
    positive: Vec<bool>,
    negation: Vec<u16>,
    terms: Vec<Terms>,
    lookup: Vec<u16>,
    weyl_cap: u128,
}

impl RootSystem {
    /// Builds the root system; positive roots have their first nonzero coordinate positive.
    pub fn new(family: Family, rank: usize) -> Result<Arc<RootSystem>> {
        Self::with_weyl_cap(family, rank, DEFAULT_WEYL_CAP)
    }

    pub fn with_weyl_cap(family: Family, rank: usize, weyl_cap: u128) -> Result<Arc<RootSystem>> {
        family.check_rank(rank)?;
        let nc = family.ambient_dim(rank);
        if nc > 60 {
            return Err(Error::Capacity {
                what: "root system coordinates".into(),
                needed: nc as u128,
                cap: 60,
            });
        }
        let unit = |i: usize, c: i8| {
            let mut v = vec![0i8; nc];
            v[i] = c;
            v
        };
        let pair = |i: usize, ci: i8, j: usize, cj: i8| {
            let mut v = vec![0i8; nc];
            v[i] = ci;
            v[j] = cj;
            v
        };
        let mut roots = Vec::new();
        for i in 0..nc {
            for j in (i + 1)..nc {
                match family {
                    Family::A => {
                        roots.push(pair(i, 1, j, -1));
                        roots.push(pair(i, -1, j, 1));
                    }
                    _ => {
                        for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            roots.push(pair(i, a, j, b));
                        }
                    }
                }
            }
            match family {
                Family::B => {
                    roots.push(unit(i, 1));
                    roots.push(unit(i, -1));
                }
                Family::C => {
                    roots.push(unit(i, 2));
                    roots.push(unit(i, -2));
                }
                _ => {}
            }
        }
        let mut roots: Vec<Root> = roots.into_iter().map(Root).collect();
        roots.sort_by(|a, b| b.cmp(a));
        debug_assert_eq!(roots.len(), family.root_count(rank));

        let width = 4 * nc + 1;
        let mut lookup = vec![u16::MAX; width * width];
        let terms: Vec<Terms> = roots.iter().map(Root::terms).collect();
        for (idx, t) in terms.iter().enumerate() {
            lookup[term_key(t, nc)] = idx as u16;
        }
        let positive = roots.iter().map(Root::is_positive).collect();
        let negation = roots
            .iter()
            .map(|r| lookup[term_key(&r.neg().terms(), nc)])
            .collect();
        Ok(Arc::new(RootSystem {
            family,
            rank,
            ncoords: nc,
            roots,
            positive,
            negation,
            terms,
            lookup,
            weyl_cap,
        }))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ncoords(&self) -> usize {
        self.ncoords
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, idx: usize) -> &Root {
        &self.roots[idx]
    }

    pub fn is_positive(&self, idx: usize) -> bool {
        self.positive[idx]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> + '_ {
        self.roots
            .iter()
            .zip(&self.positive)
            .filter_map(|(r, &p)| p.then_some(r))
    }

    pub fn negation_index(&self, idx: usize) -> usize {
        self.negation[idx] as usize
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        if r.0.len() != self.ncoords {
            return None;
        }
        let nz = r.0.iter().filter(|&&c| c != 0).count();
        if nz == 0 || nz > 2 || r.0.iter().any(|c| c.abs() > 2) {
            return None;
        }
        let idx = self.lookup[term_key(&r.terms(), self.ncoords)];
        (idx != u16::MAX).then_some(idx as usize)
    }

    pub fn weyl_cap(&self) -> u128 {
        self.weyl_cap
    }

    pub fn weyl_order(&self) -> u128 {
        self.family.weyl_order(self.rank)
    }

    /// Fails when brute force over the Weyl group would exceed the cap.
    pub fn check_weyl_cap(&self) -> Result<()> {
        let order = self.weyl_order();
        if order > self.weyl_cap {
            return Err(Error::Capacity {
                what: format!("Weyl group of {}{}", self.family, self.rank),
                needed: order,
                cap: self.weyl_cap,
            });
        }
        Ok(())
    }

    /// Index of w(root idx).
    pub fn act_index(&self, w: &WeylElement, idx: usize) -> usize {
        let mut t = self.terms[idx];
        for term in t.iter_mut() {
            if term.1 != 0 {
                let dst = w.perm[term.0 as usize];
                *term = (dst, term.1 * w.signs[dst as usize]);
            }
        }
        if t[1].1 != 0 && t[1].0 < t[0].0 {
            t.swap(0, 1);
        }
        self.lookup[term_key(&t, self.ncoords)] as usize
    }

    /// The whole system as a subsystem of itself.
    pub fn full(self: &Arc<Self>) -> RootSubsystem {
        RootSubsystem::from_set(self.clone(), RootSet::full(self.len()))
    }

    pub(crate) fn same_as(&self, other: &RootSystem) -> bool {
        self.family == other.family && self.rank == other.rank
    }
}

fn term_key(t: &Terms, nc: usize) -> usize {
    let code = |(i, c): (u8, i8)| -> usize {
        let ci = match c {
            -2 => 0,
            -1 => 1,
            1 => 2,
            _ => 3,
        };
        i as usize * 4 + ci
    };
    let first = code(t[0]);
    let second = if t[1].1 == 0 { 4 * nc } else { code(t[1]) };
    first * (4 * nc + 1) + second
}

/// Builds the root system of `family` at `rank`.
pub fn build_root_system(family: Family, rank: usize) -> Result<Arc<RootSystem>> {
    RootSystem::new(family, rank)
}

#[cfg(test)]
pub(crate) fn format_factors_for(s: &RootSubsystem) -> String {
    format_factors(&s.subsystem_type().unwrap())
}

/// Rank of a list of small integer vectors (fraction-free elimination).
pub(crate) fn int_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in (rank + 1)..m.len() {
            for j in (col + 1)..ncols {
                m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
    }
    rank
}
