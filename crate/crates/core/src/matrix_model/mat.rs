use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex;
use num_traits::{FromPrimitive, Num, One, Zero};

/// Real scalar types the models are built over: `f64`, `BigRational`, `BigInt`.
pub trait Real: Clone + PartialEq + Debug + Send + Sync + Num + Neg<Output = Self> + FromPrimitive + 'static {}

impl<T> Real for T where T: Clone + PartialEq + Debug + Send + Sync + Num + Neg<Output = T> + FromPrimitive + 'static {}

pub type C<R> = Complex<R>;

pub fn re<R: Real>(v: R) -> C<R> {
    Complex::new(v, R::zero())
}

pub fn im<R: Real>(v: R) -> C<R> {
    Complex::new(R::zero(), v)
}

/// Dense square complex matrix, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<R> {
    n: usize,
    data: Vec<C<R>>,
}

impl<R: Real> Mat<R> {
    pub fn zeros(n: usize) -> Self {
        Mat { n, data: vec![C::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C<R>) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Mat { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &C<R> {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C<R>) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[C<R>] {
        &self.data
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Mat { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Mat { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &C<R>) -> Self {
        Mat { n: self.n, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = vec![C::<R>::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] = &out[i * n + j] + a * b;
                    }
                }
            }
        }
        Mat { n, data: out }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> C<R> {
        (0..self.n).fold(C::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<S: Real>(&self, f: impl Fn(&C<R>) -> C<S>) -> Mat<S> {
        Mat { n: self.n, data: self.data.iter().map(f).collect() }
    }

    /// Gauss-Jordan inverse; meaningful only over a field.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                    inv.data.swap(p * n + j, col * n + j);
                }
            }
            let piv = C::<R>::one() / a.get(col, col).clone();
            for j in 0..n {
                a.data[col * n + j] = &a.data[col * n + j] * &piv;
                inv.data[col * n + j] = &inv.data[col * n + j] * &piv;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.data[r * n + j] = &a.data[r * n + j] - &f * &a.data[col * n + j];
                    inv.data[r * n + j] = &inv.data[r * n + j] - &f * &inv.data[col * n + j];
                }
            }
        }
        Some(inv)
    }
}

impl Mat<f64> {
    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm, sqrt(tr(M M*)).
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex<f64>> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| *self.get(i, j))
    }

    pub fn from_nalgebra(m: &nalgebra::DMatrix<Complex<f64>>) -> Self {
        assert_eq!(m.nrows(), m.ncols());
        Self::from_fn(m.nrows(), |i, j| m[(i, j)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn inverse_exact() {
        let m = Mat::from_fn(3, |i, j| Complex::new(q((i * 3 + j) as i64 % 5 + 1, 2), q(i as i64 - j as i64, 3)));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(3));
        let sing: Mat<BigRational> = Mat::from_fn(2, |_, _| re(q(1, 1)));
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn adjoint_and_trace() {
        let m: Mat<f64> = Mat::from_fn(2, |i, j| Complex::new(i as f64, j as f64));
        let a = m.adjoint();
        assert_eq!(*a.get(0, 1), Complex::new(1.0, -0.0));
        assert_eq!(m.trace(), Complex::new(1.0, 1.0));
        assert!(m.commutator(&m).is_zero());
    }
}
