//! Built-in regression suite: closed forms against direct spectra, invariant
//! routes against each other, and basic spectral sanity, over a fixed set of
//! regular graphs and partners.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{as_regular, Family, Graph, RegularGraph};
use crate::invariants::{invariants_closed, invariants_oracle, invariants_spectral, Transcription};
use crate::numeric::{spectra_equal, Spectrum};
use crate::spectra::{closed_spectrum, direct_spectrum, ClosedFormSpectrum, Composite};

pub const SPECTRUM_TOL: f64 = 1e-8;
pub const CLOSED_ROUTE_TOL: f64 = 1e-8;
pub const ORACLE_ROUTE_TOL: f64 = 1e-6;
pub const SANITY_TOL: f64 = 1e-9;

/// `K_n` for 3 <= n <= 8, `K_{p,p}` for 2 <= p <= 4, `C_n` for 3 <= n <= 10,
/// and the Petersen graph.
pub fn suite_graphs() -> Vec<Family> {
    let mut out: Vec<Family> = (3..=8).map(Family::Complete).collect();
    out.extend((2..=4).map(|p| Family::CompleteBipartite(p, p)));
    out.extend((3..=10).map(Family::Cycle));
    out.push(Family::Petersen);
    out
}

pub fn suite_partners() -> Vec<Family> {
    vec![Family::Complete(2), Family::Complete(3), Family::Cycle(4)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A documented guard rejected the input.
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: &'static str,
    pub subject: String,
    pub status: Status,
    pub deviation: Option<f64>,
    /// Offending formula piece or the guard that fired.
    pub detail: Option<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(f, "{status:<4}  {:<22} {:<48}", self.check, self.subject)?;
        if let Some(d) = self.deviation {
            write!(f, " dev={d:.3e}")?;
        }
        if let Some(d) = &self.detail {
            write!(f, "  {d}")?;
        }
        Ok(())
    }
}

/// One fixture: a composite of suite graphs.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub kind: Composite,
    pub g1: Family,
    pub g2: Option<Family>,
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.g2 {
            None => write!(f, "{}({})", self.kind, self.g1),
            Some(h) => write!(f, "{}({}, {})", self.kind, self.g1, h),
        }
    }
}

pub fn suite_fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for g1 in suite_graphs() {
        out.push(Fixture {
            kind: Composite::Central,
            g1,
            g2: None,
        });
        for kind in [Composite::VertexJoin, Composite::EdgeJoin] {
            for h in suite_partners() {
                out.push(Fixture {
                    kind,
                    g1,
                    g2: Some(h),
                });
            }
        }
    }
    out
}

fn regular(f: Family) -> Result<RegularGraph> {
    as_regular(&f.build()?)
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

/// Label of the first closed-form piece with a value missing from `direct`.
fn offending_piece(cf: &ClosedFormSpectrum<f64>, direct: &Spectrum<f64>) -> Option<String> {
    cf.pieces
        .iter()
        .find(|p| {
            p.values().iter().any(|&v| {
                direct
                    .items()
                    .iter()
                    .all(|e| (e.value - v).abs() > SPECTRUM_TOL)
            })
        })
        .map(|p| p.label.clone())
}

/// Spectral sanity of a normalized Laplacian spectrum of `g`.
pub fn sanity_checks(g: &Graph, s: &Spectrum<f64>) -> Vec<(&'static str, bool, f64)> {
    let n = g.n() as f64;
    let lo = s.min().unwrap_or(0.0);
    let hi = s.max().unwrap_or(0.0);
    let trace_dev = (s.weighted_sum() - n).abs();
    let zeros = s.multiplicity_near(0.0, 1e-7);
    let has_two = s.multiplicity_near(2.0, 1e-7) > 0;
    let bipartite = g.bipartite_components().into_iter().any(|b| b);
    vec![
        (
            "eigenvalue_range",
            lo >= -SANITY_TOL && hi <= 2.0 + SANITY_TOL,
            lo.min(2.0 - hi).min(0.0).abs(),
        ),
        ("trace", trace_dev <= 1e-8 * n, trace_dev),
        ("zero_multiplicity", zeros == g.component_count(), 0.0),
        ("two_iff_bipartite", has_two == bipartite, 0.0),
    ]
}

fn run_fixture(fx: Fixture) -> Vec<CheckResult> {
    let subject = fx.to_string();
    let mut out = Vec::new();
    let mut push = |check, status, deviation, detail| {
        out.push(CheckResult {
            check,
            subject: subject.clone(),
            status,
            deviation,
            detail,
        })
    };
    let fail = |e: Error| Some(e.to_string());

    let built = (|| -> Result<_> {
        let rg1 = regular(fx.g1)?;
        let rg2 = fx.g2.map(regular).transpose()?;
        let g = fx
            .kind
            .build(rg1.graph(), rg2.as_ref().map(RegularGraph::graph))?;
        let direct = direct_spectrum::<f64>(&g)?;
        Ok((rg1, rg2, g, direct))
    })();
    let (rg1, rg2, g, direct) = match built {
        Ok(x) => x,
        Err(e) => {
            push("build", Status::Fail, None, fail(e));
            return out;
        }
    };

    for (name, ok, dev) in sanity_checks(&g, &direct) {
        push(
            name,
            if ok { Status::Pass } else { Status::Fail },
            Some(dev),
            None,
        );
    }

    match closed_spectrum::<f64>(fx.kind, &rg1, rg2.as_ref()) {
        Ok(cf) => {
            let (ok, dev) = spectra_equal(&cf.assembled, &direct, SPECTRUM_TOL);
            let detail = if ok {
                None
            } else {
                offending_piece(&cf, &direct)
            };
            push(
                "closed_vs_direct",
                if ok { Status::Pass } else { Status::Fail },
                Some(dev),
                detail,
            );
        }
        Err(e) if e.is_precondition() => push("closed_vs_direct", Status::Skipped, None, fail(e)),
        Err(e) => push("closed_vs_direct", Status::Fail, None, fail(e)),
    }

    let spectral = match invariants_spectral::<f64>(&g) {
        Ok(r) => r,
        Err(e) => {
            push("kemeny_routes", Status::Fail, None, fail(e));
            return out;
        }
    };
    let kf_identity = relative(
        spectral.degree_kirchhoff,
        2.0 * g.m() as f64 * spectral.kemeny,
    );
    push(
        "kirchhoff_identity",
        if kf_identity <= 1e-8 {
            Status::Pass
        } else {
            Status::Fail
        },
        Some(kf_identity),
        None,
    );

    match invariants_closed::<f64>(fx.kind, &rg1, rg2.as_ref(), Transcription::Corrected) {
        Ok(closed) => {
            let dev = relative(closed.kemeny, spectral.kemeny)
                .max(relative(closed.degree_kirchhoff, spectral.degree_kirchhoff));
            let norm_ok = closed.edge_count_used == 2 * g.m();
            let ok = dev <= CLOSED_ROUTE_TOL && norm_ok;
            let detail =
                (!norm_ok).then(|| format!("normalization {} != 2|E|", closed.edge_count_used));
            push(
                "closed_route",
                if ok { Status::Pass } else { Status::Fail },
                Some(dev),
                detail,
            );
        }
        Err(e) if e.is_precondition() => push("closed_route", Status::Skipped, None, fail(e)),
        Err(e) => push("closed_route", Status::Fail, None, fail(e)),
    }

    match invariants_oracle::<f64>(&g) {
        Ok(oracle) => {
            let dev = relative(oracle.degree_kirchhoff, spectral.degree_kirchhoff);
            let ok = dev <= ORACLE_ROUTE_TOL;
            push(
                "oracle_route",
                if ok { Status::Pass } else { Status::Fail },
                Some(dev),
                None,
            );
        }
        Err(e) => push("oracle_route", Status::Fail, None, fail(e)),
    }
    out
}

/// Runs every fixture, in parallel, returning results in fixture order.
pub fn run_suite() -> Vec<CheckResult> {
    let fixtures = suite_fixtures();
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(fixtures.len());
    let mut slots: Vec<Vec<CheckResult>> = vec![Vec::new(); fixtures.len()];
    std::thread::scope(|s| {
        let chunk = fixtures.len().div_ceil(workers.max(1));
        for (fx, out) in fixtures.chunks(chunk).zip(slots.chunks_mut(chunk)) {
            s.spawn(move || {
                for (f, slot) in fx.iter().zip(out) {
                    *slot = run_fixture(*f);
                }
            });
        }
    });
    slots.into_iter().flatten().collect()
}
