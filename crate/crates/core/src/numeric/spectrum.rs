use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue<T> {
    pub value: T,
    pub multiplicity: usize,
}

/// Multiset of real eigenvalues. Values closer than `grouping_tol` to their
/// neighbour are merged into one entry carrying their mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum<T> {
    items: Vec<Eigenvalue<T>>,
    grouping_tol: T,
}

impl<T: Real> Spectrum<T> {
    pub fn from_values<I: IntoIterator<Item = T>>(values: I, grouping_tol: T) -> Self {
        Self::from_weighted(values.into_iter().map(|v| (v, 1)), grouping_tol)
    }

    /// Builds from `(value, count)` pairs; zero counts are dropped.
    pub fn from_weighted<I: IntoIterator<Item = (T, usize)>>(pairs: I, grouping_tol: T) -> Self {
        let mut pairs: Vec<(T, usize)> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));

        let mut items: Vec<Eigenvalue<T>> = Vec::new();
        let mut sum = T::zero();
        let mut last = T::neg_infinity();
        for (v, k) in pairs {
            match items.last_mut() {
                Some(cur) if v - last <= grouping_tol => {
                    sum += v * T::of_usize(k);
                    cur.multiplicity += k;
                    cur.value = sum / T::of_usize(cur.multiplicity);
                }
                _ => {
                    sum = v * T::of_usize(k);
                    items.push(Eigenvalue {
                        value: v,
                        multiplicity: k,
                    });
                }
            }
            last = v;
        }
        Spectrum {
            items,
            grouping_tol,
        }
    }

    pub fn items(&self) -> &[Eigenvalue<T>] {
        &self.items
    }

    pub fn grouping_tol(&self) -> T {
        self.grouping_tol
    }

    /// Total multiplicity.
    pub fn len(&self) -> usize {
        self.items.iter().map(|e| e.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Ascending list with every value repeated by its multiplicity.
    pub fn flatten(&self) -> Vec<T> {
        self.items
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity))
            .collect()
    }

    /// Multiplicity of the entry within `tol` of `x` (0 if none).
    pub fn multiplicity_near(&self, x: T, tol: T) -> usize {
        self.items
            .iter()
            .filter(|e| (e.value - x).abs() <= tol)
            .map(|e| e.multiplicity)
            .sum()
    }

    /// Sum of value times multiplicity.
    pub fn weighted_sum(&self) -> T {
        self.items.iter().fold(T::zero(), |acc, e| {
            acc + e.value * T::of_usize(e.multiplicity)
        })
    }

    pub fn min(&self) -> Option<T> {
        self.items.first().map(|e| e.value)
    }

    pub fn max(&self) -> Option<T> {
        self.items.last().map(|e| e.value)
    }

    /// Applies `f` to every value and regroups.
    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self::from_weighted(
            self.items.iter().map(|e| (f(e.value), e.multiplicity)),
            self.grouping_tol,
        )
    }
}

/// Compares flattened spectra elementwise. Returns the verdict and the largest
/// deviation; a length mismatch reports `+inf`.
pub fn spectra_equal<T: Real>(a: &Spectrum<T>, b: &Spectrum<T>, tol: T) -> (bool, T) {
    let (fa, fb) = (a.flatten(), b.flatten());
    if fa.len() != fb.len() {
        return (false, T::infinity());
    }
    let dev = fa
        .iter()
        .zip(&fb)
        .fold(T::zero(), |acc, (x, y)| acc.max((*x - *y).abs()));
    (dev <= tol, dev)
}
