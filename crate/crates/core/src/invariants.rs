//! Kemeny's constant and the degree Kirchhoff index by three routes:
//! spectral sums, closed forms for the composites, and effective resistance.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, RegularGraph};
use crate::numeric::{pseudoinverse, Spectrum};
use crate::scalar::Real;
use crate::spectra::{adjacency_spectrum, direct_spectrum, regular_nl_spectrum, Composite};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Spectral,
    ClosedForm,
    ResistanceOracle,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Spectral, Route::ClosedForm, Route::ResistanceOracle];
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Spectral => "spectral",
            Route::ClosedForm => "closed_form",
            Route::ResistanceOracle => "resistance_oracle",
        })
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(Route::Spectral),
            "closed" | "closed_form" => Ok(Route::ClosedForm),
            "oracle" | "resistance_oracle" => Ok(Route::ResistanceOracle),
            _ => Err(Error::InvalidParameter(format!("unknown route {s:?}"))),
        }
    }
}

/// Selects between the corrected closed forms and the forms as originally
/// typeset. Only the two join formulas and the edge join normalization differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Transcription {
    #[default]
    Corrected,
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport<T> {
    pub kemeny: T,
    pub degree_kirchhoff: T,
    pub route: Route,
    /// `2|E|`, the factor relating the two invariants.
    pub edge_count_used: usize,
}

impl<T: Real> InvariantReport<T> {
    fn from_kemeny(kemeny: T, route: Route, edge_count_used: usize) -> Self {
        InvariantReport {
            kemeny,
            degree_kirchhoff: T::of_usize(edge_count_used) * kemeny,
            route,
            edge_count_used,
        }
    }
}

fn zero_tol<T: Real>() -> T {
    T::grouping_tol()
}

/// Sum of reciprocals of the nonzero eigenvalues.
pub fn kemeny_from_spectrum<T: Real>(s: &Spectrum<T>) -> Result<T> {
    let tol = zero_tol::<T>();
    let zeros = s.multiplicity_near(T::zero(), tol);
    if zeros > 1 {
        return Err(Error::Disconnected { components: zeros });
    }
    Ok(s.items()
        .iter()
        .filter(|e| e.value.abs() > tol)
        .fold(T::zero(), |acc, e| {
            acc + T::of_usize(e.multiplicity) / e.value
        }))
}

pub fn degree_kirchhoff_from_spectrum<T: Real>(s: &Spectrum<T>, m: usize) -> Result<T> {
    Ok(T::of_usize(2 * m) * kemeny_from_spectrum(s)?)
}

/// Both invariants from the direct normalized Laplacian spectrum of `g`.
pub fn invariants_spectral<T: Real>(g: &Graph) -> Result<InvariantReport<T>> {
    let k = kemeny_from_spectrum(&direct_spectrum::<T>(g)?)?;
    Ok(InvariantReport::from_kemeny(k, Route::Spectral, 2 * g.m()))
}

/// Both invariants of a regular graph from its adjacency spectrum.
pub fn invariants_regular_closed<T: Real>(rg: &RegularGraph) -> Result<InvariantReport<T>> {
    let k = kemeny_from_spectrum(&regular_nl_spectrum::<T>(rg)?)?;
    Ok(InvariantReport::from_kemeny(
        k,
        Route::ClosedForm,
        2 * rg.m(),
    ))
}

fn require_connected(
    kind: Composite,
    rg1: &RegularGraph,
    rg2: Option<&RegularGraph>,
) -> Result<()> {
    let composite = kind.build(rg1.graph(), rg2.map(RegularGraph::graph))?;
    match composite.component_count() {
        1 => Ok(()),
        components => Err(Error::Disconnected { components }),
    }
}

/// Kemeny's constant of C(G) from the adjacency eigenvalues of r-regular G.
pub fn kemeny_central_closed<T: Real>(rg: &RegularGraph) -> Result<T> {
    let (n, m, r) = (rg.n(), rg.m(), rg.r());
    if n < 2 {
        return Err(Error::TrivialDenominator);
    }
    if r == 0 {
        return Err(Error::ZeroRegularity);
    }
    if m < n {
        return Err(Error::NegativeMultiplicity(m as i64 - n as i64));
    }
    require_connected(Composite::Central, rg, None)?;
    let [nf, mf, rf] = [n, m, r].map(T::of_usize);
    let one = T::one();
    let two = T::lit(2.0);

    let adj = adjacency_spectrum::<T>(rg.graph())?;
    let mut k = mf - nf + (nf - one) / (nf - one + rf);
    for (i, lambda) in adj.flatten().into_iter().rev().enumerate() {
        if i == 0 {
            continue;
        }
        k += two * (two * nf + lambda - one) / (two * nf + lambda - rf);
    }
    Ok(k)
}

/// Normalized Laplacian eigenvalues of a regular graph with one zero removed.
fn nontrivial<T: Real>(rg: &RegularGraph) -> Result<Vec<T>> {
    let mut mu = regular_nl_spectrum::<T>(rg)?.flatten();
    mu.remove(0);
    Ok(mu)
}

fn join_preconditions(
    kind: Composite,
    rg1: &RegularGraph,
    rg2: &RegularGraph,
    min_excess: usize,
) -> Result<()> {
    if rg1.r() == 0 || rg2.r() == 0 {
        return Err(Error::ZeroRegularity);
    }
    if rg1.n() < 2 {
        return Err(Error::TrivialDenominator);
    }
    if rg1.m() < rg1.n() + min_excess {
        return Err(Error::NegativeMultiplicity(
            rg1.m() as i64 - (rg1.n() + min_excess) as i64,
        ));
    }
    require_connected(kind, rg1, Some(rg2))
}

/// Kemeny's constant of the central vertex join.
pub fn kemeny_cvj_closed<T: Real>(
    rg1: &RegularGraph,
    rg2: &RegularGraph,
    transcription: Transcription,
) -> Result<T> {
    join_preconditions(Composite::VertexJoin, rg1, rg2, 0)?;
    let [n1, m1, r1, n2, r2] = [rg1.n(), rg1.m(), rg1.r(), rg2.n(), rg2.r()].map(T::of_usize);
    let two = T::lit(2.0);
    let one = T::one();

    let cubic_term = match transcription {
        Transcription::Corrected => {
            (n1 * (two * n1 + T::lit(3.0) * n2 + r1 + r2) + two * n2 * r2 - two * n1 - r2 + r1 * r2)
                / (n1 * (n1 + two * n2 + r1 - one) + n2 * r2)
        }
        Transcription::AsPrinted => {
            (n1 * (two * n1 + T::lit(3.0) * n2 + r1 + r2) + two * n2 * r2 - two * n1 - r2 - r1 * r2)
                / (n1 * (n1 + two * n2 - two) + n2 * r2)
        }
    };
    let mut k = m1 - n1 + cubic_term;
    for mu in nontrivial::<T>(rg2)? {
        k += (r2 + n1) / (n1 + r2 * mu);
    }
    for mu in nontrivial::<T>(rg1)? {
        k += two * (-r1 * mu + two * n1 + two * n2 + r1 - one) / (two * n1 + two * n2 - r1 * mu);
    }
    Ok(k)
}

/// Kemeny's constant of the central edge join.
pub fn kemeny_cej_closed<T: Real>(
    rg1: &RegularGraph,
    rg2: &RegularGraph,
    transcription: Transcription,
) -> Result<T> {
    join_preconditions(Composite::EdgeJoin, rg1, rg2, 1)?;
    let [n1, m1, r1, n2, r2] = [rg1.n(), rg1.m(), rg1.r(), rg2.n(), rg2.r()].map(T::of_usize);
    let c = T::lit;
    let one = T::one();

    let (quartic_term, spare) = match transcription {
        Transcription::Corrected => {
            let num = c(2.0) * m1 * n1 * n2 + c(6.0) * m1 * n1 + c(3.0) * m1 * n2 * r1
                - c(2.0) * m1 * n2
                + c(4.0) * m1 * r1
                - c(6.0) * m1
                + n1 * n2 * r2
                + c(2.0) * n1 * r2
                + c(2.0) * n2 * r1 * r2
                - n2 * r2
                + c(2.0) * r1 * r2
                - c(2.0) * r2;
            let den = c(2.0) * m1 * n1 + c(2.0) * m1 * n2 * r1 + c(2.0) * m1 * r1 - c(2.0) * m1
                + n2 * r1 * r2;
            (num / den, one)
        }
        Transcription::AsPrinted => {
            let den = m1
                * (c(2.0) * n2 * n2 * r1
                    + c(2.0) * n1 * n2
                    + c(6.0) * n2 * r1
                    + c(4.0) * n1
                    + c(2.0) * n2)
                + c(2.0) * n2 * r1
                + n2 * n2 * r1 * r2;
            let a = r2
                * (c(4.0) * n1 * n2 - n2 * n2 + c(6.0) * n2 * r1 + c(4.0) * n1 - c(4.0) * n2
                    + c(4.0) * r1
                    - c(4.0));
            let b = n2 * n2 * (n1 * r2 + c(2.0) * n1 * m1 + c(2.0) * r1 * r2 + c(3.0) * m1 * r1)
                + m1 * (c(10.0) * n1 * n2 - c(2.0) * n2 * n2 + c(10.0) * n2 * r1 + c(12.0) * n1
                    - c(10.0) * n2
                    + c(8.0) * r1
                    - c(12.0));
            ((a + b) / den, c(3.0))
        }
    };
    let mut k = m1 - n1 - one + quartic_term;
    for mu in nontrivial::<T>(rg2)? {
        k += (r2 + m1) / (m1 + r2 * mu);
    }
    for mu in nontrivial::<T>(rg1)? {
        let num = -n2 * r1 * mu - c(2.0) * r1 * mu + c(2.0) * n1 * n2 + n2 * r1 + c(4.0) * n1 - n2
            + c(2.0) * r1
            - c(2.0);
        let den = n1 * n2 + n2 * r1 + c(2.0) * n1 - n2 * r1 * mu - spare * r1 * mu;
        k += num / den;
    }
    Ok(k)
}

/// `2|E|` of the composite, as used to turn Kemeny's constant into `Kf*`.
pub fn composite_normalization(
    kind: Composite,
    rg1: &RegularGraph,
    rg2: Option<&RegularGraph>,
    transcription: Transcription,
) -> usize {
    let (n1, m1) = (rg1.n(), rg1.m());
    let (n2, m2) = rg2.map_or((0, 0), |h| (h.n(), h.m()));
    let central = 2 * m1 + n1 * (n1 - 1);
    match kind {
        Composite::Central => central,
        Composite::VertexJoin => central + 2 * m2 + 2 * n1 * n2,
        Composite::EdgeJoin => match transcription {
            Transcription::Corrected => central + 2 * m2 + 2 * m1 * n2,
            Transcription::AsPrinted => central + 2 * m2 + 2 * m1 * m2,
        },
    }
}

/// Closed-form invariants of a composite of regular graphs.
pub fn invariants_closed<T: Real>(
    kind: Composite,
    rg1: &RegularGraph,
    rg2: Option<&RegularGraph>,
    transcription: Transcription,
) -> Result<InvariantReport<T>> {
    let partner =
        || rg2.ok_or_else(|| Error::InvalidParameter(format!("{kind} needs a second graph")));
    let k = match kind {
        Composite::Central => kemeny_central_closed(rg1)?,
        Composite::VertexJoin => kemeny_cvj_closed(rg1, partner()?, transcription)?,
        Composite::EdgeJoin => kemeny_cej_closed(rg1, partner()?, transcription)?,
    };
    let norm = composite_normalization(kind, rg1, rg2, transcription);
    Ok(InvariantReport::from_kemeny(k, Route::ClosedForm, norm))
}

/// `sum_{i<j} d_i d_j r_ij` with effective resistances from the pseudoinverse
/// of the combinatorial Laplacian.
pub fn degree_kirchhoff_resistance_oracle<T: Real>(g: &Graph) -> Result<T> {
    let components = g.component_count();
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    let n = g.n();
    let lp = pseudoinverse(&g.laplacian_matrix::<T>())?;
    let deg: Vec<T> = g.degrees().into_iter().map(T::of_usize).collect();
    let mut total = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            let r = lp.get(i, i) + lp.get(j, j) - T::lit(2.0) * lp.get(i, j);
            total += deg[i] * deg[j] * r;
        }
    }
    Ok(total)
}

pub fn invariants_oracle<T: Real>(g: &Graph) -> Result<InvariantReport<T>> {
    let kf = degree_kirchhoff_resistance_oracle::<T>(g)?;
    let norm = 2 * g.m();
    Ok(InvariantReport {
        kemeny: kf / T::of_usize(norm),
        degree_kirchhoff: kf,
        route: Route::ResistanceOracle,
        edge_count_used: norm,
    })
}
