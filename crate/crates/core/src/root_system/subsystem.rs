use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::{int_rank, Root, RootSet, RootSystem, WeylElement};
use crate::error::{Error, Result};
use crate::par;

/// A negation-closed set of roots of an ambient system.
#[derive(Clone, Debug)]
pub struct RootSubsystem {
    system: Arc<RootSystem>,
    set: RootSet,
}

impl PartialEq for RootSubsystem {
    fn eq(&self, other: &Self) -> bool {
        self.system.same_as(&other.system) && self.set == other.set
    }
}

impl Eq for RootSubsystem {}

impl RootSubsystem {
    /// Validates membership in the ambient system and closure under negation.
    pub fn new(system: Arc<RootSystem>, roots: &[Root]) -> Result<Self> {
        let mut set = RootSet::empty(system.len());
        for r in roots {
            let idx = system
                .index_of(r)
                .ok_or_else(|| Error::Domain(format!("{r} is not a root of {}{}", system.family(), system.rank())))?;
            set.insert(idx);
        }
        for idx in set.iter() {
            if !set.contains(system.negation_index(idx)) {
                return Err(Error::Domain(format!(
                    "subsystem not closed under negation: missing -({})",
                    system.root(idx)
                )));
            }
        }
        Ok(RootSubsystem { system, set })
    }

    /// Builds a subsystem from `±` of each given root.
    pub fn from_pm(system: Arc<RootSystem>, roots: &[Root]) -> Result<Self> {
        let all: Vec<Root> = roots.iter().flat_map(|r| [r.clone(), r.neg()]).collect();
        Self::new(system, &all)
    }

    pub(crate) fn from_set(system: Arc<RootSystem>, set: RootSet) -> Self {
        RootSubsystem { system, set }
    }

    pub fn empty(system: Arc<RootSystem>) -> Self {
        let set = RootSet::empty(system.len());
        RootSubsystem { system, set }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn set(&self) -> &RootSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.system.index_of(r).is_some_and(|i| self.set.contains(i))
    }

    /// Roots in ambient index order.
    pub fn roots(&self) -> Vec<Root> {
        self.set.iter().map(|i| self.system.root(i).clone()).collect()
    }

    pub fn is_subset(&self, other: &RootSubsystem) -> bool {
        self.set.is_subset(&other.set)
    }

    /// The setwise image w(S).
    pub fn act(&self, w: &WeylElement) -> RootSubsystem {
        let mut set = RootSet::empty(self.system.len());
        for i in self.set.iter() {
            set.insert(self.system.act_index(w, i));
        }
        RootSubsystem { system: self.system.clone(), set }
    }

    /// Dimension of the real span.
    pub fn span_rank(&self) -> usize {
        let rows: Vec<Vec<i64>> = self
            .set
            .iter()
            .map(|i| self.system.root(i).0.iter().map(|&c| c as i64).collect())
            .collect();
        int_rank(&rows)
    }

    fn check_same(&self, other: &RootSubsystem) -> Result<()> {
        if !self.system.same_as(&other.system) {
            return Err(Error::Mismatch(format!(
                "subsystems of {}{} and {}{}",
                self.system.family(),
                self.system.rank(),
                other.system.family(),
                other.system.rank()
            )));
        }
        Ok(())
    }

    /// Finds w with w(self) = other, by brute force over the Weyl group.
    pub fn is_weyl_conjugate(&self, other: &RootSubsystem) -> Result<Option<WeylElement>> {
        self.check_same(other)?;
        self.system.check_weyl_cap()?;
        if self.len() != other.len() {
            return Ok(None);
        }
        Ok(self.find_weyl(|w| self.set.iter().all(|i| other.set.contains(self.system.act_index(w, i)))))
    }

    /// Finds w with w(self) ⊆ other.
    pub fn is_conjugate_to_subset(&self, other: &RootSubsystem) -> Result<Option<WeylElement>> {
        self.check_same(other)?;
        self.system.check_weyl_cap()?;
        if self.len() > other.len() {
            return Ok(None);
        }
        Ok(self.find_weyl(|w| self.set.iter().all(|i| other.set.contains(self.system.act_index(w, i)))))
    }

    fn find_weyl<F>(&self, pred: F) -> Option<WeylElement>
    where
        F: Fn(&WeylElement) -> bool + Sync + Send,
    {
        let sys = &self.system;
        let order = sys.weyl_order() as u64;
        par::find_first(order, |k| pred(&sys.weyl_element(k))).map(|k| sys.weyl_element(k))
    }

    /// min over w of |self ∩ w(psi)|, with a minimizing w.
    pub fn min_intersection(&self, psi: &RootSubsystem) -> Result<(usize, WeylElement)> {
        self.check_same(psi)?;
        self.system.check_weyl_cap()?;
        let sys = &self.system;
        let order = sys.weyl_order() as u64;
        let (count, k) = par::min_by_key(order, |k| {
            let w = sys.weyl_element(k);
            psi.set.iter().filter(|&i| self.set.contains(sys.act_index(&w, i))).count()
        })
        .expect("Weyl group is nonempty");
        Ok((count, sys.weyl_element(k)))
    }

    /// Lexicographically smallest image over the Weyl group; equal for conjugate subsystems.
    pub fn canonical_form(&self) -> Result<RootSet> {
        self.system.check_weyl_cap()?;
        let sys = &self.system;
        let order = sys.weyl_order() as u64;
        let (set, _) = par::min_by_key(order, |k| {
            let w = sys.weyl_element(k);
            let mut s = RootSet::empty(sys.len());
            for i in self.set.iter() {
                s.insert(sys.act_index(&w, i));
            }
            s
        })
        .expect("Weyl group is nonempty");
        Ok(set)
    }

    /// Irreducible components, each identified against the classical tables.
    pub fn subsystem_type(&self) -> Result<Vec<Factor>> {
        let idx: Vec<usize> = self.set.iter().collect();
        let roots: Vec<&Root> = idx.iter().map(|&i| self.system.root(i)).collect();
        let n = roots.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if roots[a].dot(roots[b]) != 0 {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut label = vec![usize::MAX; n];
        for a in 0..n {
            let r = find(&mut parent, a);
            if label[r] == usize::MAX {
                label[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[label[r]].push(a);
        }
        let mut factors = Vec::with_capacity(comps.len());
        for comp in comps {
            let members: Vec<&Root> = comp.iter().map(|&a| roots[a]).collect();
            factors.push(identify_component(&members)?);
        }
        factors.sort();
        Ok(factors)
    }
}

fn identify_component(roots: &[&Root]) -> Result<Factor> {
    let rows: Vec<Vec<i64>> = roots.iter().map(|r| r.0.iter().map(|&c| c as i64).collect()).collect();
    let rank = int_rank(&rows);
    let nc = roots[0].0.len();
    let support = (0..nc).filter(|&i| roots.iter().any(|r| r.0[i] != 0)).count();
    let has_len = |l: i64| roots.iter().any(|r| r.norm2() == l);
    let card = roots.len();
    let (kind, size, expected) = if has_len(1) {
        (FactorKind::B, rank, 2 * rank * rank)
    } else if has_len(4) {
        (FactorKind::C, rank, 2 * rank * rank)
    } else if support == rank + 1 {
        (FactorKind::SU, rank + 1, rank * (rank + 1))
    } else if support == rank && rank >= 3 {
        (FactorKind::D, rank, 2 * rank * (rank - 1))
    } else {
        return Err(Error::Domain(format!(
            "component of rank {rank}, support {support}, {card} roots matches no classical type"
        )));
    };
    if card != expected {
        return Err(Error::Domain(format!(
            "component looks like {kind:?}{size} but has {card} roots (expected {expected})"
        )));
    }
    Ok(Factor { kind, size })
}

/// Kind of an irreducible factor. SU(k) is type A_{k-1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FactorKind {
    B,
    C,
    D,
    SU,
}

/// An irreducible factor: `SU(size)` or `B_size`, `C_size`, `D_size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Factor {
    pub kind: FactorKind,
    pub size: usize,
}

impl Factor {
    pub fn su(size: usize) -> Self {
        Factor { kind: FactorKind::SU, size }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FactorKind::SU => write!(f, "SU({})", self.size),
            FactorKind::B => write!(f, "B{}", self.size),
            FactorKind::C => write!(f, "C{}", self.size),
            FactorKind::D => write!(f, "D{}", self.size),
        }
    }
}

/// Joins factors as `D3xSU(2)`; the empty product prints as `1`.
pub fn format_factors(factors: &[Factor]) -> String {
    if factors.is_empty() {
        return "1".into();
    }
    factors.iter().map(Factor::to_string).collect::<Vec<_>>().join("x")
}

impl Serialize for RootSubsystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut roots = self.roots();
        roots.sort();
        roots.serialize(s)
    }
}

impl fmt::Display for RootSubsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let roots: Vec<String> = self
            .set
            .iter()
            .filter(|&i| self.system.is_positive(i))
            .map(|i| format!("±({})", self.system.root(i)))
            .collect();
        write!(f, "{{{}}}", roots.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{weyl_elements, Family};
    use super::*;

    fn e(nc: usize, terms: &[(usize, i8)]) -> Root {
        let mut v = vec![0; nc];
        for &(i, c) in terms {
            v[i - 1] = c;
        }
        Root(v)
    }

    fn su4_plus(sys: &Arc<RootSystem>) -> RootSubsystem {
        let mut roots = Vec::new();
        for i in 1..=4 {
            for j in 1..=4 {
                if i != j {
                    roots.push(e(4, &[(i, 1), (j, -1)]));
                }
            }
        }
        RootSubsystem::new(sys.clone(), &roots).unwrap()
    }

    fn su4_minus(sys: &Arc<RootSystem>) -> RootSubsystem {
        let mut roots = Vec::new();
        for i in 1..=3 {
            for j in 1..=3 {
                if i != j {
                    roots.push(e(4, &[(i, 1), (j, -1)]));
                }
            }
            roots.push(e(4, &[(i, 1), (4, 1)]));
            roots.push(e(4, &[(i, -1), (4, -1)]));
        }
        RootSubsystem::new(sys.clone(), &roots).unwrap()
    }

    #[test]
    fn negation_closure_is_checked() {
        let sys = RootSystem::new(Family::D, 4).unwrap();
        let err = RootSubsystem::new(sys.clone(), &[e(4, &[(1, 1), (2, -1)])]);
        assert!(matches!(err, Err(Error::Domain(_))));
        let err = RootSubsystem::new(sys, &[e(4, &[(1, 1)])]);
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn types_of_examples() {
        let d4 = RootSystem::new(Family::D, 4).unwrap();
        let s = RootSubsystem::from_pm(d4.clone(), &[e(4, &[(1, 1), (2, -1)]), e(4, &[(3, 1), (4, 1)])]).unwrap();
        assert_eq!(s.subsystem_type().unwrap(), vec![Factor::su(2), Factor::su(2)]);

        let mut d3 = Vec::new();
        for i in 1..=3 {
            for j in (i + 1)..=3 {
                for (a, b) in [(1, 1), (1, -1)] {
                    d3.push(e(4, &[(i, a), (j, b)]));
                }
            }
        }
        let d3 = RootSubsystem::from_pm(d4.clone(), &d3).unwrap();
        assert_eq!(d3.subsystem_type().unwrap(), vec![Factor { kind: FactorKind::D, size: 3 }]);
        assert_eq!(su4_plus(&d4).subsystem_type().unwrap(), vec![Factor::su(4)]);
        assert_eq!(su4_minus(&d4).subsystem_type().unwrap(), vec![Factor::su(4)]);

        let b2 = RootSystem::new(Family::B, 2).unwrap();
        assert_eq!(b2.full().subsystem_type().unwrap(), vec![Factor { kind: FactorKind::B, size: 2 }]);
        let b1 = RootSubsystem::from_pm(b2.clone(), &[e(2, &[(1, 1)])]).unwrap();
        assert_eq!(b1.subsystem_type().unwrap(), vec![Factor { kind: FactorKind::B, size: 1 }]);

        let c2 = RootSystem::new(Family::C, 2).unwrap();
        assert_eq!(c2.full().subsystem_type().unwrap(), vec![Factor { kind: FactorKind::C, size: 2 }]);
        let c1 = RootSubsystem::from_pm(c2, &[e(2, &[(1, 2)])]).unwrap();
        assert_eq!(c1.subsystem_type().unwrap(), vec![Factor { kind: FactorKind::C, size: 1 }]);

        let d5 = RootSystem::new(Family::D, 5).unwrap();
        assert_eq!(d5.full().subsystem_type().unwrap(), vec![Factor { kind: FactorKind::D, size: 5 }]);
        assert!(RootSubsystem::empty(d5).subsystem_type().unwrap().is_empty());
    }

    #[test]
    fn su4_classes_are_not_conjugate() {
        let d4 = RootSystem::new(Family::D, 4).unwrap();
        let (p, m) = (su4_plus(&d4), su4_minus(&d4));
        assert!(p.is_weyl_conjugate(&m).unwrap().is_none());
        let w = p.is_weyl_conjugate(&p).unwrap().unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn b2_short_roots_conjugate_by_transposition() {
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        let s1 = RootSubsystem::from_pm(b2.clone(), &[e(2, &[(1, 1)])]).unwrap();
        let s2 = RootSubsystem::from_pm(b2, &[e(2, &[(2, 1)])]).unwrap();
        let w = s1.is_weyl_conjugate(&s2).unwrap().unwrap();
        assert_eq!(s1.act(&w), s2);
    }

    #[test]
    fn conjugate_to_subset_examples() {
        let d4 = RootSystem::new(Family::D, 4).unwrap();
        let su4 = su4_plus(&d4);
        let same = RootSubsystem::from_pm(d4.clone(), &[e(4, &[(1, 1), (2, -1)]), e(4, &[(3, 1), (4, -1)])]).unwrap();
        assert!(same.is_conjugate_to_subset(&su4).unwrap().is_some());
        let other = RootSubsystem::from_pm(d4.clone(), &[e(4, &[(1, 1), (2, -1)]), e(4, &[(3, 1), (4, 1)])]).unwrap();
        assert!(other.is_conjugate_to_subset(&su4).unwrap().is_none());
        // Independent brute force: no Weyl image of `other` lands inside SU(4)+.
        let hits = weyl_elements(Family::D, 4)
            .unwrap()
            .filter(|w| other.roots().iter().all(|r| su4.contains(&super::super::apply_weyl(w, r))))
            .count();
        assert_eq!(hits, 0);
        assert!(RootSubsystem::empty(d4).is_conjugate_to_subset(&su4).unwrap().is_some());
    }

    #[test]
    fn type_is_weyl_invariant() {
        let d4 = RootSystem::new(Family::D, 4).unwrap();
        let s = su4_minus(&d4);
        let t = s.subsystem_type().unwrap();
        for k in (0..192).step_by(7) {
            assert_eq!(s.act(&d4.weyl_element(k)).subsystem_type().unwrap(), t);
        }
    }

    #[test]
    fn canonical_form_detects_conjugacy() {
        let d4 = RootSystem::new(Family::D, 4).unwrap();
        let p = su4_plus(&d4);
        let q = p.act(&d4.weyl_element(100));
        assert_eq!(p.canonical_form().unwrap(), q.canonical_form().unwrap());
        assert_ne!(p.canonical_form().unwrap(), su4_minus(&d4).canonical_form().unwrap());
    }

    #[test]
    fn mismatched_ambients_are_rejected() {
        let a = RootSystem::new(Family::D, 4).unwrap().full();
        let b = RootSystem::new(Family::B, 4).unwrap().full();
        assert!(matches!(a.is_weyl_conjugate(&b), Err(Error::Mismatch(_))));
    }
}
