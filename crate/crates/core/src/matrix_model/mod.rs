//! Matrix realizations su(n+1), so(2n+1), sp(n), so(2n) of the compact
//! classical algebras, their torus embeddings and orbit tangent spaces.

mod group;
mod mat;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub use group::{
    adjoint, random_group_element, random_group_exact, random_group_numeric, GroupMatrix, Mode, SampledGroup,
};
pub use mat::{im, re, Mat, Real, C};

use crate::classifier::TorusElement;
use crate::error::{Error, Result};
use crate::linalg::{common_denominator, independent_rows};
use crate::root_system::Family;

/// An element of the Lie algebra of the given family and rank.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMatrix<R> {
    pub family: Family,
    pub rank: usize,
    pub entries: Mat<R>,
}

impl<R: Real> AlgebraMatrix<R> {
    pub fn zero(family: Family, rank: usize) -> Self {
        AlgebraMatrix { family, rank, entries: Mat::zeros(family.matrix_size(rank)) }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if (self.family, self.rank) != (other.family, other.rank) {
            return Err(Error::Mismatch(format!(
                "{}{} against {}{}",
                self.family, self.rank, other.family, other.rank
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(AlgebraMatrix { entries: self.entries.add(&other.entries), ..*self })
    }

    pub fn scale(&self, s: &C<R>) -> Self {
        AlgebraMatrix { entries: self.entries.scale(s), ..*self }
    }

    /// Real coordinates in a fixed linear identification with ℝ^dim.
    pub fn coords(&self) -> Vec<R> {
        coords(self)
    }

    /// Quantities that vanish exactly when the matrix lies in the algebra.
    pub fn constraints(&self) -> Vec<C<R>> {
        let m = &self.entries;
        let n = m.size();
        let mut out: Vec<C<R>> = m.add(&m.adjoint()).entries().to_vec();
        match self.family {
            Family::A => out.push(m.trace()),
            Family::B | Family::D => out.extend(m.entries().iter().map(|z| im(z.im.clone()))),
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
                out.extend(m.transpose().mul(&j).add(&j.mul(m)).entries().iter().cloned());
            }
        }
        out
    }

    pub fn is_member(&self) -> bool {
        self.entries.size() == self.family.matrix_size(self.rank) && self.constraints().iter().all(Zero::is_zero)
    }
}

impl AlgebraMatrix<f64> {
    /// Largest violated constraint.
    pub fn membership_residual(&self) -> f64 {
        self.constraints().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// [A, B] = AB - BA.
pub fn bracket<R: Real>(a: &AlgebraMatrix<R>, b: &AlgebraMatrix<R>) -> Result<AlgebraMatrix<R>> {
    a.check_same(b)?;
    Ok(AlgebraMatrix { family: a.family, rank: a.rank, entries: a.entries.commutator(&b.entries) })
}

fn unit<R: Real>(n: usize, entries: &[(usize, usize, C<R>)]) -> Mat<R> {
    let mut m = Mat::zeros(n);
    for (i, j, v) in entries {
        m.set(*i, *j, v.clone());
    }
    m
}

/// A basis of the algebra; its length is n + |Φ|.
pub fn algebra_basis<R: Real>(family: Family, rank: usize) -> Vec<AlgebraMatrix<R>> {
    let size = family.matrix_size(rank);
    let one = || re(R::one());
    let i1 = || im(R::one());
    let mut out: Vec<Mat<R>> = Vec::new();
    match family {
        Family::A => {
            for j in 0..size {
                for k in j + 1..size {
                    out.push(unit(size, &[(j, k, one()), (k, j, -one())]));
                    out.push(unit(size, &[(j, k, i1()), (k, j, i1())]));
                }
            }
            for j in 0..size - 1 {
                out.push(unit(size, &[(j, j, i1()), (j + 1, j + 1, -i1())]));
            }
        }
        Family::B | Family::D => {
            for j in 0..size {
                for k in j + 1..size {
                    out.push(unit(size, &[(j, k, one()), (k, j, -one())]));
                }
            }
        }
        Family::C => {
            let n = rank;
            for j in 0..n {
                for k in j + 1..n {
                    out.push(unit(size, &[(j, k, one()), (k, j, -one()), (n + j, n + k, one()), (n + k, n + j, -one())]));
                    out.push(unit(size, &[(j, k, i1()), (k, j, i1()), (n + j, n + k, -i1()), (n + k, n + j, -i1())]));
                }
                out.push(unit(size, &[(j, j, i1()), (n + j, n + j, -i1())]));
            }
            for j in 0..n {
                for k in j..n {
                    if j == k {
                        out.push(unit(size, &[(j, n + j, one()), (n + j, j, -one())]));
                        out.push(unit(size, &[(j, n + j, i1()), (n + j, j, i1())]));
                    } else {
                        out.push(unit(
                            size,
                            &[(j, n + k, one()), (k, n + j, one()), (n + j, k, -one()), (n + k, j, -one())],
                        ));
                        out.push(unit(
                            size,
                            &[(j, n + k, i1()), (k, n + j, i1()), (n + j, k, i1()), (n + k, j, i1())],
                        ));
                    }
                }
            }
        }
    }
    out.into_iter().map(|entries| AlgebraMatrix { family, rank, entries }).collect()
}

fn coords<R: Real>(m: &AlgebraMatrix<R>) -> Vec<R> {
    let e = &m.entries;
    let size = e.size();
    let mut out = Vec::with_capacity(m.family.algebra_dim(m.rank));
    match m.family {
        Family::A => {
            for j in 0..size {
                for k in j + 1..size {
                    out.push(e.get(j, k).re.clone());
                    out.push(e.get(j, k).im.clone());
                }
            }
            for j in 0..size - 1 {
                out.push(e.get(j, j).im.clone());
            }
        }
        Family::B | Family::D => {
            for j in 0..size {
                for k in j + 1..size {
                    out.push(e.get(j, k).re.clone());
                }
            }
        }
        Family::C => {
            let n = m.rank;
            for j in 0..n {
                for k in j + 1..n {
                    out.push(e.get(j, k).re.clone());
                    out.push(e.get(j, k).im.clone());
                }
                out.push(e.get(j, j).im.clone());
            }
            for j in 0..n {
                for k in j..n {
                    out.push(e.get(j, n + k).re.clone());
                    out.push(e.get(j, n + k).im.clone());
                }
            }
        }
    }
    out
}

/// Torus embedding of explicit values: diag(i a) for A, 2x2 rotation
/// generators for B/D (B has a final zero), diag(i a, -i a) for C.
pub fn embed_values<R: Real>(family: Family, rank: usize, values: &[R]) -> AlgebraMatrix<R> {
    assert_eq!(values.len(), family.ambient_dim(rank));
    let size = family.matrix_size(rank);
    let mut m = Mat::zeros(size);
    match family {
        Family::A => {
            for (j, v) in values.iter().enumerate() {
                m.set(j, j, im(v.clone()));
            }
        }
        Family::B | Family::D => {
            for (j, v) in values.iter().enumerate() {
                m.set(2 * j, 2 * j + 1, re(v.clone()));
                m.set(2 * j + 1, 2 * j, re(-v.clone()));
            }
        }
        Family::C => {
            for (j, v) in values.iter().enumerate() {
                m.set(j, j, im(v.clone()));
                m.set(rank + j, rank + j, im(-v.clone()));
            }
        }
    }
    AlgebraMatrix { family, rank, entries: m }
}

pub fn embed_torus(x: &TorusElement) -> AlgebraMatrix<BigRational> {
    embed_values(x.family(), x.rank(), x.values())
}

pub fn embed_torus_f64(x: &TorusElement) -> AlgebraMatrix<f64> {
    let v: Vec<f64> = x.values().iter().map(|q| q.to_f64().expect("finite rational")).collect();
    embed_values(x.family(), x.rank(), &v)
}

/// Embedding of a positive integer multiple of X (denominators cleared).
pub fn embed_torus_integer(x: &TorusElement) -> AlgebraMatrix<BigInt> {
    let d = common_denominator(x.values());
    let v: Vec<BigInt> = x.values().iter().map(|q| (q * &d).to_integer()).collect();
    embed_values(x.family(), x.rank(), &v)
}

/// Spanning set {[B_k, Ad(g)X]} of the tangent space of the orbit at Ad(g)X.
#[derive(Clone, Debug)]
pub struct TangentBasis<R> {
    pub base_point: AlgebraMatrix<R>,
    pub matrices: Vec<AlgebraMatrix<R>>,
}

pub fn tangent_basis<R: Real>(x: &AlgebraMatrix<R>, g: Option<&GroupMatrix<R>>) -> Result<TangentBasis<R>> {
    let base_point = match g {
        Some(g) => adjoint(g, x)?,
        None => x.clone(),
    };
    let matrices = algebra_basis::<R>(x.family, x.rank)
        .iter()
        .map(|b| bracket(b, &base_point))
        .collect::<Result<Vec<_>>>()?;
    Ok(TangentBasis { base_point, matrices })
}

/// An exactly independent subset of {[B_k, X]} at the torus point, with
/// integer entries. Its size is |Φ| - |Φ_X|, and Ad(g) of it spans the
/// tangent space at Ad(g)X.
pub fn torus_frame(x: &TorusElement) -> Vec<AlgebraMatrix<BigInt>> {
    let tb = tangent_basis(&embed_torus_integer(x), None).expect("same algebra");
    let rows: Vec<Vec<BigInt>> = tb.matrices.iter().map(AlgebraMatrix::coords).collect();
    independent_rows(&rows).into_iter().map(|i| tb.matrices[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::ElementType;
    use crate::linalg::{exact_rank, numeric_rank};

    fn el(f: Family, n: usize, v: &[i64]) -> TorusElement {
        TorusElement::from_ints(f, n, v).unwrap()
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(algebra_basis::<f64>(Family::B, 4).len(), 36);
        assert_eq!(algebra_basis::<f64>(Family::A, 2).len(), 8);
        assert_eq!(algebra_basis::<f64>(Family::C, 3).len(), 21);
        for f in Family::ALL {
            for n in f.min_rank()..=6 {
                let b = algebra_basis::<BigInt>(f, n);
                assert_eq!(b.len(), n + f.root_count(n));
                assert!(b.iter().all(AlgebraMatrix::is_member), "{f}{n}");
                let rows: Vec<Vec<BigInt>> = b.iter().map(AlgebraMatrix::coords).collect();
                assert!(rows.iter().all(|r| r.len() == b.len()));
                assert_eq!(exact_rank(&rows), b.len(), "{f}{n}");
            }
        }
    }

    #[test]
    fn coords_are_injective_on_the_algebra() {
        // coords is linear; a basis maps to a basis, so a zero coordinate
        // vector means a zero member. Spot-check a combination.
        let b = algebra_basis::<BigRational>(Family::C, 2);
        let mut s = AlgebraMatrix::zero(Family::C, 2);
        for (k, m) in b.iter().enumerate() {
            s = s.add(&m.scale(&re(BigRational::from_integer((k as i64 - 4).into())))).unwrap();
        }
        assert!(s.is_member());
        let c = s.coords();
        assert_eq!(c.iter().filter(|v| !v.is_zero()).count(), b.len() - 1);
    }

    #[test]
    fn embeddings() {
        let x = embed_torus_f64(&el(Family::B, 2, &[0, 3]));
        assert!(x.is_member());
        let eig = x.entries.to_nalgebra().map(|z| z * nalgebra::Complex::new(0.0, -1.0));
        let mut ev: Vec<f64> = eig.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        let want = [-3.0, 0.0, 0.0, 0.0, 3.0];
        assert!(ev.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-12), "{ev:?}");

        let d = embed_torus(&el(Family::D, 2, &[2, 2]));
        assert!(d.is_member());
        let a = embed_torus(&el(Family::A, 2, &[1, 2, -3]));
        assert_eq!(*a.entries.get(2, 2), im(BigRational::from_integer((-3).into())));
        assert!(embed_torus(&el(Family::C, 3, &[1, 0, 5])).is_member());
    }

    #[test]
    fn bracket_closure_and_mismatch() {
        for f in Family::ALL {
            let n = f.min_rank().max(2);
            let b = algebra_basis::<BigInt>(f, n);
            for x in &b {
                for y in &b {
                    assert!(bracket(x, y).unwrap().is_member());
                }
                assert!(bracket(x, x).unwrap().entries.is_zero());
            }
        }
        let x = algebra_basis::<BigInt>(Family::B, 2);
        let y = algebra_basis::<BigInt>(Family::C, 2);
        assert!(matches!(bracket(&x[0], &y[0]), Err(Error::Mismatch(_))));
    }

    #[test]
    fn jacobi_identity() {
        let b = algebra_basis::<BigInt>(Family::C, 2);
        for x in &b {
            for y in b.iter().step_by(3) {
                for z in b.iter().step_by(4) {
                    let t1 = bracket(x, &bracket(y, z).unwrap()).unwrap();
                    let t2 = bracket(y, &bracket(z, x).unwrap()).unwrap();
                    let t3 = bracket(z, &bracket(x, y).unwrap()).unwrap();
                    assert!(t1.add(&t2).unwrap().add(&t3).unwrap().entries.is_zero());
                }
            }
        }
    }

    #[test]
    fn centralizer_dimension() {
        // ad(H) has kernel of dimension n + |Φ_H|.
        for f in Family::ALL {
            for n in f.min_rank().max(2)..=4 {
                for t in ElementType::all(f, n).unwrap() {
                    let x = t.witness();
                    let tb = tangent_basis(&embed_torus_f64(&x), None).unwrap();
                    let rows: Vec<Vec<f64>> = tb.matrices.iter().map(AlgebraMatrix::coords).collect();
                    let (rank, _) = numeric_rank(&rows, 1e-10);
                    let kernel = rows.len() - rank;
                    assert_eq!(kernel, n + t.annihilator_count(), "{f}{n} {t}");
                }
            }
        }
    }

    #[test]
    fn tangent_dimensions() {
        let x = el(Family::B, 5, &[0, 0, 0, 0, 1]);
        assert_eq!(torus_frame(&x).len(), 18);
        let r = el(Family::A, 2, &[1, 2, -3]);
        assert_eq!(torus_frame(&r).len(), 6);
        let s = el(Family::D, 4, &[1, 1, 1, 1]);
        assert_eq!(torus_frame(&s).len(), 12);
        for f in Family::ALL {
            for n in f.min_rank()..=6 {
                for t in ElementType::all(f, n).unwrap() {
                    assert_eq!(torus_frame(&t.witness()).len(), t.orbit_dim(), "{f}{n} {t}");
                }
            }
        }
    }
}
