use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::mat::{re, Mat, Real, C};
use super::{algebra_basis, AlgebraMatrix};
use crate::error::{Error, Result};
use crate::linalg::common_denominator;
use crate::par::child_seed;
use crate::root_system::Family;

/// Sampling and rank arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Numeric,
    Exact,
}

/// A unitary, orthogonal or compact symplectic matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupMatrix<R> {
    pub family: Family,
    pub rank: usize,
    pub entries: Mat<R>,
    pub exact: bool,
}

impl<R: Real> GroupMatrix<R> {
    pub fn identity(family: Family, rank: usize, exact: bool) -> Self {
        GroupMatrix { family, rank, entries: Mat::identity(family.matrix_size(rank)), exact }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if (self.family, self.rank) != (other.family, other.rank) {
            return Err(Error::Mismatch("group elements of different groups".into()));
        }
        Ok(GroupMatrix { entries: self.entries.mul(&other.entries), exact: self.exact && other.exact, ..*self })
    }

    /// U U* - I, and for C also U^T J U - J, stacked.
    fn defects(&self) -> Vec<C<R>> {
        let u = &self.entries;
        let n = u.size();
        let mut out: Vec<C<R>> = u.mul(&u.adjoint()).sub(&Mat::identity(n)).entries().to_vec();
        match self.family {
            Family::B | Family::D => out.extend(u.entries().iter().map(|z| super::mat::im(z.im.clone()))),
            Family::C => {
                let h = n / 2;
                let j = Mat::from_fn(n, |r, c| {
                    if c == r + h {
                        C::one()
                    } else if r == c + h {
                        -C::<R>::one()
                    } else {
                        C::zero()
                    }
                });
                out.extend(u.transpose().mul(&j).mul(u).sub(&j).entries().iter().cloned());
            }
            Family::A => {}
        }
        out
    }

    pub fn satisfies_relations(&self) -> bool {
        self.defects().iter().all(Zero::is_zero)
    }
}

impl GroupMatrix<f64> {
    pub fn relation_defect(&self) -> f64 {
        self.defects().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl GroupMatrix<BigRational> {
    /// A positive integer multiple of the matrix with Gaussian-integer
    /// entries; Ad by it differs from Ad(g) by a positive scalar.
    pub fn integer_scaled(&self) -> Mat<BigInt> {
        let d = common_denominator(self.entries.entries().iter().flat_map(|z| [&z.re, &z.im]));
        let dq = BigRational::from_integer(d);
        self.entries.map(|z| C::new((&z.re * &dq).to_integer(), (&z.im * &dq).to_integer()))
    }
}

/// Ad(g)M = g M g⁻¹ with g⁻¹ = g*.
pub fn adjoint<R: Real>(g: &GroupMatrix<R>, m: &AlgebraMatrix<R>) -> Result<AlgebraMatrix<R>> {
    if (g.family, g.rank) != (m.family, m.rank) {
        return Err(Error::Mismatch(format!(
            "{}{} group acting on {}{} algebra",
            g.family, g.rank, m.family, m.rank
        )));
    }
    Ok(AlgebraMatrix { family: m.family, rank: m.rank, entries: g.entries.mul(&m.entries).mul(&g.entries.adjoint()) })
}

/// exp of Σ c_k B_k with c_k uniform in [-1, 1].
pub fn random_group_numeric(family: Family, rank: usize, seed: u64) -> GroupMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = algebra_basis::<f64>(family, rank);
    let mut s = Mat::zeros(family.matrix_size(rank));
    for b in &basis {
        let c: f64 = rng.gen_range(-1.0..=1.0);
        s = s.add(&b.entries.scale(&re(c)));
    }
    let g = s.to_nalgebra().exp();
    GroupMatrix { family, rank, entries: Mat::from_nalgebra(&g), exact: false }
}

/// Cayley transform (I - S)⁻¹(I + S) of S = Σ (p_k/q_k) B_k with
/// p_k in [-width, width] and q_k in 1..=4. Exactly in the group.
pub fn random_group_exact(family: Family, rank: usize, seed: u64, width: i64) -> GroupMatrix<BigRational> {
    let basis = algebra_basis::<BigRational>(family, rank);
    let n = family.matrix_size(rank);
    let id = Mat::<BigRational>::identity(n);
    for attempt in 0u64.. {
        let mut rng = ChaCha8Rng::seed_from_u64(if attempt == 0 { seed } else { child_seed(seed, attempt) });
        let mut s = Mat::zeros(n);
        for b in &basis {
            let p: i64 = rng.gen_range(-width..=width);
            let q: i64 = rng.gen_range(1..=4);
            if p != 0 {
                s = s.add(&b.entries.scale(&re(BigRational::new(p.into(), q.into()))));
            }
        }
        // I - S is invertible for skew-Hermitian S; the retry is defensive.
        if let Some(inv) = id.sub(&s).inverse() {
            return GroupMatrix { family, rank, entries: inv.mul(&id.add(&s)), exact: true };
        }
    }
    unreachable!("seed space exhausted")
}

#[derive(Clone, Debug)]
pub enum SampledGroup {
    Numeric(GroupMatrix<f64>),
    Exact(GroupMatrix<BigRational>),
}

/// Seeded group element; exact mode uses the default Cayley width 3.
pub fn random_group_element(family: Family, rank: usize, seed: u64, mode: Mode) -> SampledGroup {
    match mode {
        Mode::Numeric => SampledGroup::Numeric(random_group_numeric(family, rank, seed)),
        Mode::Exact => SampledGroup::Exact(random_group_exact(family, rank, seed, 3)),
    }
}
