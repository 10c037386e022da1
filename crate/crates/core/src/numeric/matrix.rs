use crate::error::{Error, Result};
use crate::scalar::Real;

/// Symmetric `n x n` matrix stored densely, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    order: usize,
    data: Vec<T>,
}

impl<T: Real> SymMatrix<T> {
    /// Wraps row-major entries, rejecting anything asymmetric beyond `1e-12`.
    pub fn new(order: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != order * order {
            return Err(Error::DimensionMismatch {
                expected: order * order,
                got: data.len(),
            });
        }
        let tol = T::lit(1e-12);
        for i in 0..order {
            for j in i + 1..order {
                let dev = (data[i * order + j] - data[j * order + i]).abs();
                if !(dev <= tol) {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        deviation: dev.to_f64_lossy(),
                    });
                }
            }
        }
        Ok(SymMatrix { order, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let order = rows.len();
        let mut data = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::DimensionMismatch {
                    expected: order,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(order, data)
    }

    /// Builds from the upper triangle `f(i, j)`, `i <= j`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            for j in i..order {
                m.set_sym(i, j, f(i, j));
            }
        }
        m
    }

    pub fn zeros(order: usize) -> Self {
        SymMatrix {
            order,
            data: vec![T::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn diagonal(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.order + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.order + j] = v;
    }

    pub(crate) fn set_sym(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.order + j] = v;
        self.data[j * self.order + i] = v;
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, &x| acc + x * x)
            .sqrt()
    }

    pub fn trace(&self) -> T {
        (0..self.order).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.order, "vector length must match matrix order");
        self.data
            .chunks_exact(self.order.max(1))
            .take(self.order)
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn scale(&self, s: T) -> Self {
        SymMatrix {
            order: self.order,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }
}

/// Product of two row-major `n x n` matrices.
pub fn matmul<T: Real>(a: &[T], b: &[T], n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == T::zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric_and_misshapen() {
        assert!(matches!(
            SymMatrix::<f64>::new(2, vec![0.0, 1.0, 1.0 + 1e-9, 0.0]),
            Err(Error::NotSymmetric { row: 0, col: 1, .. })
        ));
        assert!(SymMatrix::<f64>::new(2, vec![0.0, 1.0, 1.0 + 1e-13, 0.0]).is_ok());
        assert!(matches!(
            SymMatrix::<f64>::new(2, vec![0.0; 3]),
            Err(Error::DimensionMismatch {
                expected: 4,
                got: 3
            })
        ));
    }

    #[test]
    fn basic_ops() {
        let m = SymMatrix::<f64>::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]).unwrap();
        assert_eq!(m.trace(), 5.0);
        assert_eq!(m.mul_vec(&[1.0, -1.0]), vec![1.0, -2.0]);
        assert!((m.frobenius_norm() - 15f64.sqrt()).abs() < 1e-15);
        let sq = matmul(m.as_slice(), m.as_slice(), 2);
        assert_eq!(sq, vec![5.0, 5.0, 5.0, 10.0]);
    }
}
