use super::{Spectrum, SymMatrix};
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching unit eigenvectors.
#[derive(Debug, Clone)]
pub struct SymEigen<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<T>>,
}

/// Full eigendecomposition by cyclic Jacobi rotations.
///
/// Each sweep annihilates every off-diagonal entry once; the iteration stops
/// once the off-diagonal Frobenius mass falls below `eps * ||M||_F`.
pub fn eigen_sym<T: Real>(m: &SymMatrix<T>) -> Result<SymEigen<T>> {
    let n = m.order();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut a: Vec<T> = m.as_slice().to_vec();
    let mut v = SymMatrix::<T>::identity(n).as_slice().to_vec();
    let at = |i: usize, j: usize| i * n + j;

    let norm = m.frobenius_norm();
    let target = T::epsilon() * norm;
    let big = T::max_value().sqrt();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off += a[at(p, q)] * a[at(p, q)];
            }
        }
        if off.sqrt() <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[at(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[at(q, q)] - a[at(p, p)]) / (apq + apq);
                let t = if theta.abs() > big {
                    T::lit(0.5) / theta
                } else {
                    let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;

                a[at(p, p)] -= t * apq;
                a[at(q, q)] += t * apq;
                a[at(p, q)] = T::zero();
                a[at(q, p)] = T::zero();
                for k in 0..n {
                    if k != p && k != q {
                        let akp = a[at(k, p)];
                        let akq = a[at(k, q)];
                        let new_p = c * akp - s * akq;
                        let new_q = s * akp + c * akq;
                        a[at(k, p)] = new_p;
                        a[at(p, k)] = new_p;
                        a[at(k, q)] = new_q;
                        a[at(q, k)] = new_q;
                    }
                    let vkp = v[at(k, p)];
                    let vkq = v[at(k, q)];
                    v[at(k, p)] = c * vkp - s * vkq;
                    v[at(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[at(i, i)]
            .partial_cmp(&a[at(j, j)])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&i| a[at(i, i)]).collect();
    let vectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v[at(row, col)]).collect())
        .collect();
    Ok(SymEigen { values, vectors })
}

/// All eigenvalues grouped with the scalar type's default tolerance.
pub fn eigenvalues_sym<T: Real>(m: &SymMatrix<T>) -> Result<Spectrum<T>> {
    eigenvalues_sym_with_tol(m, T::grouping_tol())
}

pub fn eigenvalues_sym_with_tol<T: Real>(m: &SymMatrix<T>, grouping_tol: T) -> Result<Spectrum<T>> {
    let eig = eigen_sym(m)?;
    Ok(Spectrum::from_values(eig.values, grouping_tol))
}

/// Moore-Penrose pseudoinverse through the eigendecomposition; eigenvalues
/// with `|mu| <= 1e-9 * max(1, ||M||_F)` are treated as zero.
pub fn pseudoinverse<T: Real>(m: &SymMatrix<T>) -> Result<SymMatrix<T>> {
    let n = m.order();
    if n == 0 {
        return Ok(SymMatrix::zeros(0));
    }
    let eig = eigen_sym(m)?;
    let rel = T::lit(1e-9).max(T::of_usize(n) * T::lit(100.0) * T::epsilon());
    let cutoff = rel * T::one().max(m.frobenius_norm());
    let mut out = SymMatrix::zeros(n);
    for (mu, vec) in eig.values.iter().zip(&eig.vectors) {
        if mu.abs() <= cutoff {
            continue;
        }
        let inv = T::one() / *mu;
        for i in 0..n {
            let vi = vec[i] * inv;
            for j in i..n {
                let x = out.get(i, j) + vi * vec[j];
                out.set_sym(i, j, x);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::matmul;
    use super::*;

    fn residual(m: &SymMatrix<f64>, mu: f64, v: &[f64]) -> f64 {
        let mv = m.mul_vec(v);
        mv.iter()
            .zip(v)
            .map(|(a, b)| (a - mu * b).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    fn check_residuals(m: &SymMatrix<f64>) {
        let eig = eigen_sym(m).unwrap();
        let bound = 1e-9 * m.frobenius_norm().max(1.0);
        for (mu, v) in eig.values.iter().zip(&eig.vectors) {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
            assert!(residual(m, *mu, v) <= bound);
        }
        let sum: f64 = eig.values.iter().sum();
        assert!((sum - m.trace()).abs() <= 1e-8 * m.order() as f64);
    }

    #[test]
    fn diagonal_and_swap() {
        let s = eigenvalues_sym(&SymMatrix::diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(s.flatten(), vec![1.0, 2.0, 3.0]);

        let m = SymMatrix::<f64>::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let s = eigenvalues_sym(&m).unwrap().flatten();
        assert!((s[0] + 1.0).abs() < 1e-15 && (s[1] - 1.0).abs() < 1e-15);
        check_residuals(&m);
    }

    #[test]
    fn k33_adjacency() {
        let g = crate::graph::family("complete_bipartite(3,3)").unwrap();
        let a = g.adjacency_matrix::<f64>();
        let s = eigenvalues_sym(&a).unwrap();
        let items: Vec<_> = s
            .items()
            .iter()
            .map(|e| (e.value.round() as i64, e.multiplicity))
            .collect();
        assert_eq!(items, vec![(-3, 1), (0, 4), (3, 1)]);
        check_residuals(&a);
    }

    #[test]
    fn residual_contract_on_dense_matrix() {
        // deterministic pseudo-random symmetric matrix
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let m = SymMatrix::from_fn(40, |_, _| next());
        check_residuals(&m);
    }

    #[test]
    fn empty_matrix_rejected() {
        assert_eq!(
            eigen_sym(&SymMatrix::<f64>::zeros(0)).unwrap_err(),
            Error::EmptyMatrix
        );
    }

    #[test]
    fn f32_path() {
        let g = crate::graph::family("cycle(4)").unwrap();
        let s = eigenvalues_sym(&g.adjacency_matrix::<f32>()).unwrap();
        let items: Vec<_> = s
            .items()
            .iter()
            .map(|e| (e.value.round() as i32, e.multiplicity))
            .collect();
        assert_eq!(items, vec![(-2, 1), (0, 2), (2, 1)]);
    }

    #[test]
    fn pseudoinverse_examples() {
        let id = SymMatrix::<f64>::identity(3);
        assert_eq!(pseudoinverse(&id).unwrap(), id);

        let z = SymMatrix::<f64>::zeros(3);
        assert_eq!(pseudoinverse(&z).unwrap(), z);

        let l = SymMatrix::<f64>::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        let p = pseudoinverse(&l).unwrap();
        for (x, y) in p.as_slice().iter().zip([0.25, -0.25, -0.25, 0.25]) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn moore_penrose_identities() {
        let g = crate::graph::family("petersen").unwrap();
        for m in [g.laplacian_matrix::<f64>(), g.adjacency_matrix::<f64>()] {
            let n = m.order();
            let p = pseudoinverse(&m).unwrap();
            let (a, ap) = (m.as_slice(), p.as_slice());
            let a_ap = matmul(a, ap, n);
            let ap_a = matmul(ap, a, n);
            let close = |x: &[f64], y: &[f64]| x.iter().zip(y).all(|(u, v)| (u - v).abs() <= 1e-8);
            assert!(close(&matmul(&a_ap, a, n), a));
            assert!(close(&matmul(&ap_a, ap, n), ap));
            let t = |x: &[f64]| {
                (0..n * n)
                    .map(|k| x[(k % n) * n + k / n])
                    .collect::<Vec<_>>()
            };
            assert!(close(&t(&a_ap), &a_ap));
            assert!(close(&t(&ap_a), &ap_a));
        }
    }
}
