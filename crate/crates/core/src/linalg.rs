//! Dense square complex matrices on qubit registers.
//!
//! Row-major storage. Basis index bit `qubits-1-i` is qubit `i`, so qubit 0
//! is the most significant bit.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;

use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            out[(i, i)] = Complex::new(T::one(), T::zero());
        }
        out
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Panics unless `data.len() == dim²`.
    pub fn from_rows(dim: usize, data: Vec<Complex<T>>) -> Self {
        assert_eq!(data.len(), dim * dim, "matrix data length");
        Self { dim, data }
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &[Complex<T>]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::new(T::zero(), T::zero()), |acc, i| {
            acc + self[(i, i)]
        })
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, factor: T) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let d = other.dim;
        Self::from_fn(self.dim * d, |i, j| {
            self[(i / d, j / d)] * other[(i % d, j % d)]
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (x, y)| acc.max((x - y).norm()))
    }

    pub fn hermiticity_defect(&self) -> T {
        let mut defect = T::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                defect = defect.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        defect
    }

    /// `⟨u|self|v⟩`.
    pub fn sandwich_vectors(&self, u: &[Complex<T>], v: &[Complex<T>]) -> Complex<T> {
        self.apply(v)
            .iter()
            .zip(u)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (mv, ui)| {
                acc + ui.conj() * mv
            })
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .fold(Complex::new(T::zero(), T::zero()), |s, (a, b)| s + a * b)
            })
            .collect()
    }

    /// Number of qubits, if `dim` is a power of two.
    pub fn qubits(&self) -> Option<u32> {
        self.dim
            .is_power_of_two()
            .then(|| self.dim.trailing_zeros())
    }

    /// Conjugation by the swap of qubits `i` and `j` of a `qubits`-register.
    pub fn swap_qubits(&self, qubits: u32, i: u32, j: u32) -> Self {
        let (bi, bj) = (qubits - 1 - i, qubits - 1 - j);
        let perm = |x: usize| {
            let (xi, xj) = (x >> bi & 1, x >> bj & 1);
            if xi == xj {
                x
            } else {
                x ^ (1 << bi) ^ (1 << bj)
            }
        };
        Self::from_fn(self.dim, |r, c| self[(perm(r), perm(c))])
    }

    /// Largest deviation from invariance under adjacent qubit swaps, which
    /// generate the full permutation group.
    pub fn permutation_defect(&self, qubits: u32) -> T {
        (0..qubits.saturating_sub(1))
            .map(|i| self.max_abs_diff(&self.swap_qubits(qubits, i, i + 1)))
            .fold(T::zero(), T::max)
    }

    /// Reduced 2×2 operator of qubit `target`, tracing out the rest.
    pub fn reduce_to_qubit(&self, qubits: u32, target: u32) -> Self {
        let bit = qubits - 1 - target;
        let mut out = Self::zeros(2);
        for r in 0..self.dim {
            let x = r >> bit & 1;
            let rest = r & !(1 << bit);
            for y in 0..2usize {
                out[(x, y)] += self[(r, rest | y << bit)];
            }
        }
        out
    }

    /// Whether every eigenvalue is above `-shift` (`shift > 0`), via
    /// Gaussian elimination on `self + shift·I`: all pivots of a positive
    /// definite matrix are positive. Assumes Hermitian input.
    pub fn is_positive_semidefinite(&self, shift: T) -> bool {
        let n = self.dim;
        let mut a = self.clone();
        for i in 0..n {
            a[(i, i)].re += shift;
        }
        for k in 0..n {
            let pivot = a[(k, k)].re;
            if pivot <= T::zero() {
                return false;
            }
            for i in k + 1..n {
                let factor = a[(i, k)] / pivot;
                if factor.norm_sqr() == T::zero() {
                    continue;
                }
                for j in k + 1..n {
                    let update = factor * a[(k, j)];
                    a[(i, j)] -= update;
                }
            }
        }
        true
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.data[i * n + k];
                if x.norm_sqr() == T::zero() {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                for (o, y) in out.data[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += x * y;
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl<T: Real> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}
