//! Element types, eligibility and the absolute-continuity verdict.

mod decide;
mod element;
mod syntax;

pub use decide::{
    analyze, check_tuple, decide, eligibility_bound, group_annihilator, group_decide, is_eligible,
    is_exceptional, min_power, Analysis, ExceptionalCase, GroupBasis, GroupDecision, MinPower, Reason,
    Status, Verdict,
};
pub use element::{partitions, Dominance, ElementType, SignClass, TorusElement};
pub use syntax::{parse_element, parse_rational, parse_type};
