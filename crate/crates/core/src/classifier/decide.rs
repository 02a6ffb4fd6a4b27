use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::element::{ElementType, TorusElement};
use crate::error::{domain, Result};
use crate::root_system::{Family, RootSet, RootSubsystem, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    AbsolutelyContinuous,
    Singular,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::AbsolutelyContinuous => "AbsolutelyContinuous",
            Status::Singular => "Singular",
            Status::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    EligibleNonexceptional,
    NotEligible,
    Exceptional,
    OpenCase,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::EligibleNonexceptional => "eligible_nonexceptional",
            Reason::NotEligible => "not_eligible",
            Reason::Exceptional => "exceptional",
            Reason::OpenCase => "open_case",
        })
    }
}

/// The eligible tuples that nevertheless give a singular convolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExceptionalCase {
    /// A_{2m-1}, two elements of type SU(m) x SU(m).
    HalfSplitPair,
    /// D_n, types SU(n) and SU(n).
    TopSuPair,
    /// D_n, types SU(n) and SU(n-1) (with either D1 or SU(1) alongside).
    TopSuNextPair,
    /// D4, SU(4) with an SU(2) x SU(2) whose annihilator fits inside.
    D4NestedPair,
    /// D4, SU(4) with SU(2) x D2.
    D4SuD2Pair,
    /// D4, three SU(4) elements of one Weyl class.
    D4ConjugateTriple,
}

impl fmt::Display for ExceptionalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExceptionalCase::HalfSplitPair => "half_split_pair",
            ExceptionalCase::TopSuPair => "top_su_pair",
            ExceptionalCase::TopSuNextPair => "top_su_next_pair",
            ExceptionalCase::D4NestedPair => "d4_nested_pair",
            ExceptionalCase::D4SuD2Pair => "d4_su_d2_pair",
            ExceptionalCase::D4ConjugateTriple => "d4_conjugate_triple",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub reason: Reason,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<ExceptionalCase>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.status, self.reason)?;
        if let Some(c) = self.case {
            write!(f, " [{c}]")?;
        }
        Ok(())
    }
}

/// Everything `decide` looks at, kept for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub family: Family,
    pub rank: usize,
    pub types: Vec<ElementType>,
    pub s_values: Vec<usize>,
    pub s_sum: usize,
    pub bound: usize,
    pub eligible: bool,
    pub exceptional: Option<ExceptionalCase>,
    pub verdict: Verdict,
}

/// Common family and rank of a tuple of nonzero elements.
pub fn check_tuple(tuple: &[TorusElement]) -> Result<(Family, usize)> {
    if tuple.len() < 2 {
        return domain(format!("a tuple needs at least two elements, got {}", tuple.len()));
    }
    let (family, rank) = (tuple[0].family(), tuple[0].rank());
    for x in tuple {
        if (x.family(), x.rank()) != (family, rank) {
            return domain(format!(
                "mixed ambient algebras: {family}{rank} and {}{}",
                x.family(),
                x.rank()
            ));
        }
        if x.is_zero() {
            return domain("tuple contains the zero element");
        }
    }
    Ok((family, rank))
}

/// (L-1)(n+1) for A, (L-1)2n otherwise.
pub fn eligibility_bound(family: Family, rank: usize, len: usize) -> usize {
    let per = if family == Family::A { rank + 1 } else { 2 * rank };
    (len - 1) * per
}

pub fn is_eligible(tuple: &[TorusElement]) -> Result<bool> {
    let (family, rank) = check_tuple(tuple)?;
    let mut sum = 0;
    for x in tuple {
        sum += x.s_value()?;
    }
    Ok(sum <= eligibility_bound(family, rank, tuple.len()))
}

fn is_su_n(t: &ElementType, n: usize) -> bool {
    t.is_su(&[n])
}

fn is_su_n_minus_1(t: &ElementType, n: usize) -> bool {
    (t.zero_block == 1 && t.parts == [n - 1]) || t.is_su(&[n - 1, 1])
}

/// Which exceptional case the tuple falls under, if any. Eligibility is not
/// checked here.
pub fn is_exceptional(tuple: &[TorusElement]) -> Result<Option<ExceptionalCase>> {
    let (family, rank) = check_tuple(tuple)?;
    let types = tuple.iter().map(TorusElement::element_type).collect::<Result<Vec<_>>>()?;
    exceptional_case(family, rank, tuple, &types)
}

fn exceptional_case(
    family: Family,
    rank: usize,
    tuple: &[TorusElement],
    types: &[ElementType],
) -> Result<Option<ExceptionalCase>> {
    match (family, tuple.len()) {
        (Family::A, 2) if rank >= 3 && family.matrix_size(rank).is_multiple_of(2) => {
            let m = family.matrix_size(rank) / 2;
            if types.iter().all(|t| t.parts == [m, m]) {
                return Ok(Some(ExceptionalCase::HalfSplitPair));
            }
        }
        (Family::D, 2) => {
            let n = rank;
            let (t1, t2) = (&types[0], &types[1]);
            if is_su_n(t1, n) && is_su_n(t2, n) {
                return Ok(Some(ExceptionalCase::TopSuPair));
            }
            if (is_su_n(t1, n) && is_su_n_minus_1(t2, n)) || (is_su_n(t2, n) && is_su_n_minus_1(t1, n)) {
                return Ok(Some(ExceptionalCase::TopSuNextPair));
            }
            if n == 4 {
                for (big, small, tb, ts) in [(0, 1, t1, t2), (1, 0, t2, t1)] {
                    if !is_su_n(tb, 4) {
                        continue;
                    }
                    if ts.zero_block == 2 && ts.parts == [2] {
                        return Ok(Some(ExceptionalCase::D4SuD2Pair));
                    }
                    if ts.is_su(&[2, 2]) {
                        let sys = tuple[0].root_system();
                        let outer = tuple[big].annihilator_in(&sys);
                        let inner = tuple[small].annihilator_in(&sys);
                        if inner.is_conjugate_to_subset(&outer)?.is_some() {
                            return Ok(Some(ExceptionalCase::D4NestedPair));
                        }
                    }
                }
            }
        }
        (Family::D, 3) if rank == 4 && types.iter().all(|t| is_su_n(t, 4)) => {
            let sys = tuple[0].root_system();
            let ann: Vec<RootSubsystem> = tuple.iter().map(|x| x.annihilator_in(&sys)).collect();
            let mut all = true;
            for i in 0..3 {
                for j in i + 1..3 {
                    all &= ann[i].is_weyl_conjugate(&ann[j])?.is_some();
                }
            }
            if all {
                return Ok(Some(ExceptionalCase::D4ConjugateTriple));
            }
        }
        _ => {}
    }
    Ok(None)
}

/// Eligibility, exceptional cases and the resulting verdict.
pub fn analyze(tuple: &[TorusElement]) -> Result<Analysis> {
    let (family, rank) = check_tuple(tuple)?;
    if family == Family::D && rank < 4 {
        return domain(format!("D{rank} is only used internally; use A3 for D3 or A1xA1 for D2"));
    }
    let types = tuple.iter().map(TorusElement::element_type).collect::<Result<Vec<_>>>()?;
    let s_values: Vec<usize> = types.iter().map(ElementType::s_value).collect();
    let s_sum = s_values.iter().sum();
    let bound = eligibility_bound(family, rank, tuple.len());
    let eligible = s_sum <= bound;
    let exceptional = exceptional_case(family, rank, tuple, &types)?;
    let verdict = if !eligible {
        Verdict { status: Status::Singular, reason: Reason::NotEligible, case: None }
    } else if let Some(case) = exceptional {
        if case == ExceptionalCase::TopSuNextPair && rank >= 6 {
            Verdict { status: Status::Unknown, reason: Reason::OpenCase, case: Some(case) }
        } else {
            Verdict { status: Status::Singular, reason: Reason::Exceptional, case: Some(case) }
        }
    } else {
        Verdict { status: Status::AbsolutelyContinuous, reason: Reason::EligibleNonexceptional, case: None }
    };
    Ok(Analysis { family, rank, types, s_values, s_sum, bound, eligible, exceptional, verdict })
}

pub fn decide(tuple: &[TorusElement]) -> Result<Verdict> {
    Ok(analyze(tuple)?.verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinPower {
    Exactly(usize),
    Unknown,
}

impl fmt::Display for MinPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinPower::Exactly(l) => write!(f, "{l}"),
            MinPower::Unknown => f.write_str("unknown"),
        }
    }
}

/// Smallest L for which the L-fold self-convolution is absolutely continuous.
pub fn min_power(x: &TorusElement) -> Result<MinPower> {
    let cap = x.rank() + 2;
    for len in 2..=cap {
        let tuple = vec![x.clone(); len];
        match decide(&tuple)?.status {
            Status::AbsolutelyContinuous => return Ok(MinPower::Exactly(len)),
            Status::Unknown => return Ok(MinPower::Unknown),
            Status::Singular => {}
        }
    }
    Ok(MinPower::Unknown)
}

/// How a group-level verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupBasis {
    /// Every Φ_x equals its algebra counterpart.
    SameType,
    /// Some Φ_x is strictly larger and the algebra tuple is already singular.
    AlgebraSingular,
    /// Some Φ_x is strictly larger; the algebra verdict does not transfer.
    TypeMismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupDecision {
    pub status: Status,
    pub basis: GroupBasis,
    pub algebra: Verdict,
    /// Indices whose group annihilator strictly contains the algebra one.
    pub mismatched: Vec<usize>,
}

/// Φ_x = {α : α(x) ≡ 0 mod 2π} for a torus point whose angles are given in
/// units of π.
pub fn group_annihilator(angles: &TorusElement, sys: &Arc<RootSystem>) -> RootSubsystem {
    let two = BigInt::from(2);
    let mut set = RootSet::empty(sys.len());
    for (i, r) in sys.roots().iter().enumerate() {
        let v = angles.root_value(r);
        if v.is_integer() && v.to_integer().is_multiple_of(&two) {
            set.insert(i);
        }
    }
    RootSubsystem::from_set(sys.clone(), set)
}

/// Decide the convolution of conjugacy-class measures in the compact group
/// from torus angles (rational multiples of π).
pub fn group_decide(tuple: &[TorusElement]) -> Result<GroupDecision> {
    if tuple.iter().any(|x| x.values().iter().all(Zero::is_zero)) {
        return domain("an element with all angles zero is central; its class is a point");
    }
    let (family, rank) = check_tuple(tuple)?;
    let sys = RootSystem::new(family, rank)?;
    let algebra = decide(tuple)?;
    let mut mismatched = Vec::new();
    for (i, x) in tuple.iter().enumerate() {
        let alg = x.annihilator_in(&sys);
        let grp = group_annihilator(x, &sys);
        debug_assert!(alg.is_subset(&grp));
        if alg.len() != grp.len() {
            mismatched.push(i);
        }
    }
    let (status, basis) = if mismatched.is_empty() {
        (algebra.status, GroupBasis::SameType)
    } else if algebra.status == Status::Singular {
        (Status::Singular, GroupBasis::AlgebraSingular)
    } else {
        (Status::Unknown, GroupBasis::TypeMismatch)
    };
    Ok(GroupDecision { status, basis, algebra, mismatched })
}
