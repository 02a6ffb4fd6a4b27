use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use super::{Family, RootSet, RootSubsystem, RootSystem};
use crate::error::{Error, Result};
use crate::par;

/// Cap on the number of (n-1)-subsets of positive roots examined.
const COMBINATION_CAP: u128 = 50_000_000;

/// Every Ψ of rank n-1 with span(Ψ) ∩ Φ = Ψ, sorted by root-index bitmask.
///
/// Each hyperplane spanned by n-1 independent positive roots is recorded by
/// its primitive integer normal (taken inside the sum-zero hyperplane for
/// type A); Ψ is then the set of roots orthogonal to that normal.
pub fn closed_corank1_subsystems(sys: &Arc<RootSystem>) -> Result<Vec<RootSubsystem>> {
    let n = sys.rank();
    let k = n - 1;
    if k == 0 {
        return Ok(vec![RootSubsystem::empty(sys.clone())]);
    }
    let pos: Vec<Vec<i64>> = sys
        .positive_roots()
        .map(|r| r.0.iter().map(|&c| c as i64).collect())
        .collect();
    let combos = binomial(pos.len() as u128, k as u128);
    if combos > COMBINATION_CAP {
        return Err(Error::Capacity {
            what: format!("corank-1 subsystem search in {}{}", sys.family(), sys.rank()),
            needed: combos,
            cap: COMBINATION_CAP,
        });
    }
    let extra: Option<Vec<i64>> = (sys.family() == Family::A).then(|| vec![1; sys.ncoords()]);

    let per_first = par::map_range(pos.len(), |first| {
        let mut found = BTreeSet::new();
        let mut echelon = Echelon::default();
        echelon.try_add(&pos[first]);
        search(&pos, first + 1, k - 1, &mut echelon, extra.as_deref(), &mut found);
        found
    });
    let normals: BTreeSet<Vec<i64>> = per_first.into_iter().flatten().collect();

    let mut out: Vec<RootSet> = normals
        .iter()
        .map(|nu| {
            let mut set = RootSet::empty(sys.len());
            for (i, r) in sys.roots().iter().enumerate() {
                let d: i64 = r.0.iter().zip(nu).map(|(&a, &b)| a as i64 * b).sum();
                if d == 0 {
                    set.insert(i);
                }
            }
            set
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out
        .into_iter()
        .map(|s| RootSubsystem::from_set(sys.clone(), s))
        .collect())
}

fn search(
    pos: &[Vec<i64>],
    start: usize,
    remaining: usize,
    echelon: &mut Echelon,
    extra: Option<&[i64]>,
    found: &mut BTreeSet<Vec<i64>>,
) {
    if remaining == 0 {
        found.insert(echelon.normal(extra));
        return;
    }
    for i in start..pos.len() {
        if pos.len() - i < remaining {
            break;
        }
        let saved = echelon.rows.len();
        if echelon.try_add(&pos[i]) {
            search(pos, i + 1, remaining - 1, echelon, extra, found);
            echelon.rows.truncate(saved);
        }
    }
}

#[derive(Default, Clone)]
struct Echelon {
    rows: Vec<(usize, Vec<Rational64>)>,
}

impl Echelon {
    fn reduce(&self, v: &[i64]) -> Vec<Rational64> {
        let mut v: Vec<Rational64> = v.iter().map(|&x| Rational64::from_integer(x)).collect();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p] / row[*p];
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= f * r;
                }
            }
        }
        v
    }

    fn try_add(&mut self, v: &[i64]) -> bool {
        let red = self.reduce(v);
        match red.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, red));
                true
            }
            None => false,
        }
    }

    /// Primitive integer generator of the orthogonal complement of the rows
    /// (and of `extra`, if given); assumes that complement is a line.
    fn normal(&self, extra: Option<&[i64]>) -> Vec<i64> {
        let mut m: Vec<Vec<Rational64>> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        if let Some(e) = extra {
            m.push(e.iter().map(|&x| Rational64::from_integer(x)).collect());
        }
        let ncols = m[0].len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = Rational64::one() / m[r][c];
            for x in m[r].iter_mut() {
                *x *= inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c];
                    let pivot_row = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free = (0..ncols).find(|c| !pivots.contains(c)).expect("complement is a line");
        let mut nu = vec![Rational64::zero(); ncols];
        nu[free] = Rational64::one();
        for (row, &c) in pivots.iter().enumerate() {
            nu[c] = -m[row][free];
        }
        let lcm = nu.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<i64> = nu.iter().map(|x| (x * lcm).to_integer()).collect();
        let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for x in ints.iter_mut() {
            *x /= g;
        }
        if ints.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            for x in ints.iter_mut() {
                *x = -*x;
            }
        }
        ints
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}
