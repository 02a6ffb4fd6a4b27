use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{domain, Result};
use crate::root_system::{Family, Root, RootSet, RootSubsystem, RootSystem};

/// A point of the maximal torus, in the coordinates used by the root tables.
///
/// For type A there are n+1 values summing to zero (the diagonal of an
/// su(n+1) matrix divided by i). For B, C and D there are n block
/// parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusElement {
    family: Family,
    rank: usize,
    values: Vec<BigRational>,
}

impl TorusElement {
    pub fn new(family: Family, rank: usize, values: Vec<BigRational>) -> Result<Self> {
        family.check_rank(rank)?;
        let want = family.ambient_dim(rank);
        if values.len() != want {
            return domain(format!(
                "{family}{rank} elements need {want} values, got {}",
                values.len()
            ));
        }
        if family == Family::A && !values.iter().fold(BigRational::zero(), |a, v| a + v).is_zero() {
            return domain("type A values must sum to zero");
        }
        Ok(TorusElement { family, rank, values })
    }

    pub fn from_ints(family: Family, rank: usize, values: &[i64]) -> Result<Self> {
        Self::new(family, rank, values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// α(X) = Σ α_i x_i, exactly.
    pub fn root_value(&self, r: &Root) -> BigRational {
        r.0.iter()
            .zip(&self.values)
            .filter(|(&c, _)| c != 0)
            .fold(BigRational::zero(), |acc, (&c, v)| acc + v * BigInt::from(c))
    }

    pub fn root_system(&self) -> Arc<RootSystem> {
        RootSystem::new(self.family, self.rank).expect("rank validated at construction")
    }

    /// Φ_X = {α : α(X) = 0}.
    pub fn annihilator(&self) -> RootSubsystem {
        self.annihilator_in(&self.root_system())
    }

    pub fn annihilator_in(&self, sys: &Arc<RootSystem>) -> RootSubsystem {
        assert_eq!((sys.family(), sys.rank()), (self.family, self.rank));
        let mut set = RootSet::empty(sys.len());
        for (i, r) in sys.roots().iter().enumerate() {
            if self.root_value(r).is_zero() {
                set.insert(i);
            }
        }
        RootSubsystem::from_set(sys.clone(), set)
    }

    /// Weyl-canonical representative: ascending values for A; ascending
    /// absolute values (zeros first) for B/C/D, with a lone minus sign on the
    /// last coordinate for D elements that need one.
    pub fn canonical(&self) -> TorusElement {
        let mut values = self.values.clone();
        match self.family {
            Family::A => values.sort(),
            _ => {
                let negatives = values.iter().filter(|v| v.is_negative()).count();
                let mut abs: Vec<BigRational> = values.iter().map(Signed::abs).collect();
                abs.sort();
                if self.family == Family::D && negatives % 2 == 1 && abs.iter().all(|v| !v.is_zero()) {
                    let last = abs.len() - 1;
                    abs[last] = -abs[last].clone();
                }
                values = abs;
            }
        }
        TorusElement { family: self.family, rank: self.rank, values }
    }

    /// Blocks of equal (absolute) nonzero values in canonical order: (start, len).
    fn blocks(&self) -> (usize, Vec<(usize, usize)>) {
        let c = self.canonical();
        let key = |v: &BigRational| if c.family == Family::A { v.clone() } else { v.abs() };
        let zeros = if c.family == Family::A {
            0
        } else {
            c.values.iter().take_while(|v| v.is_zero()).count()
        };
        let mut blocks = Vec::new();
        let mut i = zeros;
        while i < c.values.len() {
            let mut j = i + 1;
            while j < c.values.len() && key(&c.values[j]) == key(&c.values[i]) {
                j += 1;
            }
            blocks.push((i, j - i));
            i = j;
        }
        (zeros, blocks)
    }

    /// Lie type of Φ_X.
    pub fn element_type(&self) -> Result<ElementType> {
        if self.is_zero() {
            return domain("the zero element has a one-point orbit");
        }
        let (zeros, blocks) = self.blocks();
        let mut parts: Vec<usize> = blocks.iter().map(|b| b.1).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let sign = if ElementType::sign_is_meaningful(self.family, zeros, &parts) {
            let negatives = self.values.iter().filter(|v| v.is_negative()).count();
            if negatives % 2 == 0 {
                SignClass::Plus
            } else {
                SignClass::Minus
            }
        } else {
            SignClass::NotApplicable
        };
        Ok(ElementType {
            family: self.family,
            rank: self.rank,
            zero_block: zeros,
            parts,
            sign,
        })
    }

    pub fn s_value(&self) -> Result<usize> {
        Ok(self.element_type()?.s_value())
    }

    /// The element X' one rank down: drop a zero when 2J ≥ s₁, otherwise
    /// drop one coordinate of the first largest block.
    pub fn reduce(&self) -> Result<TorusElement> {
        if self.is_zero() {
            return domain("cannot reduce the zero element");
        }
        if self.rank <= self.family.min_rank() {
            return domain(format!(
                "{}{} cannot be reduced below the minimum rank",
                self.family, self.rank
            ));
        }
        let c = self.canonical();
        let (zeros, blocks) = self.blocks();
        let s1 = blocks.iter().map(|b| b.1).max().unwrap_or(0);
        let drop = if self.family != Family::A && zeros > 0 && 2 * zeros >= s1 {
            0
        } else {
            blocks.iter().find(|b| b.1 == s1).expect("nonzero element has a block").0
        };
        let mut values = c.values;
        values.remove(drop);
        if self.family == Family::A {
            let mean = values.iter().fold(BigRational::zero(), |a, v| a + v)
                / BigRational::from_integer(BigInt::from(values.len()));
            for v in values.iter_mut() {
                *v -= &mean;
            }
        }
        TorusElement::new(self.family, self.rank - 1, values)
    }

    /// The chain X, X', X'', ... down to the minimum rank.
    pub fn reduction_chain(&self) -> Vec<TorusElement> {
        let mut chain = vec![self.clone()];
        while let Ok(next) = chain.last().expect("nonempty").reduce() {
            chain.push(next);
        }
        chain
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "{}{}:[{}]", self.family, self.rank, vals.join(","))
    }
}

impl Serialize for TorusElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Which of the two D-type sign classes an element with J = 0 lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignClass {
    Plus,
    Minus,
    #[serde(rename = "n/a")]
    NotApplicable,
}

/// Whether the zero block or the largest equal block dominates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dominance {
    /// Dominant B, C or D type (2J ≥ max s_j).
    ZeroBlock,
    /// Dominant SU type (always the case in family A).
    SU,
}

/// The type B_J x SU(s₁) x ... (or C_J, D_J; plain SU products for A).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementType {
    pub family: Family,
    pub rank: usize,
    /// J, the number of zero coordinates (always 0 for A).
    pub zero_block: usize,
    /// Block sizes s_j in descending order.
    pub parts: Vec<usize>,
    pub sign: SignClass,
}

impl ElementType {
    /// The sign class separates two Weyl classes of Φ_X only in type D with
    /// J = 0 and every block of even size; otherwise a sign flip can be
    /// absorbed by flipping a whole odd block.
    pub fn sign_is_meaningful(family: Family, zero_block: usize, parts: &[usize]) -> bool {
        family == Family::D && zero_block == 0 && parts.iter().all(|p| p % 2 == 0)
    }

    pub fn max_part(&self) -> usize {
        self.parts.iter().copied().max().unwrap_or(0)
    }

    pub fn dominance(&self) -> Dominance {
        if self.family != Family::A && self.zero_block > 0 && 2 * self.zero_block >= self.max_part() {
            Dominance::ZeroBlock
        } else {
            Dominance::SU
        }
    }

    /// S_X: 2J for dominant B/C/D type, max s_j otherwise.
    pub fn s_value(&self) -> usize {
        match self.dominance() {
            Dominance::ZeroBlock => 2 * self.zero_block,
            Dominance::SU => self.max_part(),
        }
    }

    /// |Φ_X| from the type alone.
    pub fn annihilator_count(&self) -> usize {
        let j = self.zero_block;
        let zero_part = match self.family {
            Family::A => 0,
            Family::B | Family::C => 2 * j * j,
            Family::D => 2 * j * j.saturating_sub(1),
        };
        zero_part + self.parts.iter().map(|s| s * (s - 1)).sum::<usize>()
    }

    /// dim O_X = |Φ| - |Φ_X|.
    pub fn orbit_dim(&self) -> usize {
        self.family.root_count(self.rank) - self.annihilator_count()
    }

    /// J zeros followed by blocks with values 1, 2, 3, ... (shifted to sum
    /// zero for A); the minus class negates the last coordinate.
    pub fn witness(&self) -> TorusElement {
        let mut values: Vec<i64> = vec![0; self.zero_block];
        for (k, &s) in self.parts.iter().enumerate() {
            values.extend(std::iter::repeat_n(k as i64 + 1, s));
        }
        if self.family == Family::A {
            let total: i64 = values.iter().sum();
            let len = values.len() as i64;
            for v in values.iter_mut() {
                *v = *v * len - total;
            }
        }
        if self.sign == SignClass::Minus {
            let last = values.len() - 1;
            values[last] = -values[last];
        }
        TorusElement::from_ints(self.family, self.rank, &values).expect("witness is well formed")
    }

    /// Every nonzero type at the rank, with both sign classes where they differ.
    pub fn all(family: Family, rank: usize) -> Result<Vec<ElementType>> {
        family.check_rank(rank)?;
        let mut out = Vec::new();
        let total = family.ambient_dim(rank);
        let zero_range = if family == Family::A { 0..1 } else { 0..rank };
        for j in zero_range {
            for parts in partitions(total - j) {
                if family == Family::A && parts.len() == 1 {
                    continue;
                }
                let signs: &[SignClass] = if Self::sign_is_meaningful(family, j, &parts) {
                    &[SignClass::Plus, SignClass::Minus]
                } else {
                    &[SignClass::NotApplicable]
                };
                for &sign in signs {
                    out.push(ElementType { family, rank, zero_block: j, parts: parts.clone(), sign });
                }
            }
        }
        Ok(out)
    }

    /// Factor string such as `B2xSU(3)`, `D1xSU(3)`, `SU(4)-`.
    pub fn label(&self) -> String {
        let mut factors = Vec::new();
        if self.zero_block > 0 {
            factors.push(format!("{}{}", self.family, self.zero_block));
        }
        for &s in &self.parts {
            if s > 1 {
                factors.push(format!("SU({s})"));
            }
        }
        if factors.is_empty() {
            factors.push("SU(1)".into());
        }
        let mut out = factors.join("x");
        match self.sign {
            SignClass::Plus => out.push('+'),
            SignClass::Minus => out.push('-'),
            SignClass::NotApplicable => {}
        }
        out
    }

    pub fn is_su(&self, parts: &[usize]) -> bool {
        self.zero_block == 0 && self.parts == parts
    }
}

impl fmt::Display for ElementType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for ElementType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// Partitions of m into positive parts, each in descending order.
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=m.min(max)).rev() {
            cur.push(p);
            go(m - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}
