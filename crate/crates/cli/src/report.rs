//! Report types written by the CLI, as JSON or as aligned text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use central_spectra::cospectral::CospectralOutcome;
use central_spectra::{InvariantReport, Route, Spectrum};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    ClosedForm,
    Both,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenvalueEntry {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    #[serde(skip)]
    pub source: String,
    pub n: usize,
    pub m: usize,
    pub method: Method,
    pub eigenvalues: Vec<EigenvalueEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kemeny: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_kirchhoff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviations: Option<BTreeMap<String, f64>>,
}

impl SpectrumReport {
    pub fn entries(s: &Spectrum) -> Vec<EigenvalueEntry> {
        s.items()
            .iter()
            .map(|e| EigenvalueEntry {
                value: e.value,
                multiplicity: e.multiplicity,
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "graph: {} (n = {}, m = {})",
            self.source, self.n, self.m
        );
        let method = match self.method {
            Method::Direct => "direct",
            Method::ClosedForm => "closed_form",
            Method::Both => "both (eigenvalues from direct)",
        };
        let _ = writeln!(out, "method: {method}");
        let _ = writeln!(out, "{:>20}  multiplicity", "eigenvalue");
        for e in &self.eigenvalues {
            let _ = writeln!(out, "{:>20}  {}", sig12(e.value), e.multiplicity);
        }
        if let Some(k) = self.kemeny {
            let _ = writeln!(out, "kemeny: {}", sig12(k));
        }
        if let Some(kf) = self.degree_kirchhoff {
            let _ = writeln!(out, "degree_kirchhoff: {}", sig12(kf));
        }
        for (name, dev) in self.deviations.iter().flatten() {
            let _ = writeln!(out, "deviation {name}: {dev:.3e}");
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedRoute {
    pub route: Route,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantsReport {
    #[serde(skip)]
    pub source: String,
    pub n: usize,
    pub m: usize,
    pub routes: Vec<InvariantReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<SkippedRoute>,
    /// Relative differences of the degree Kirchhoff index between routes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviations: Option<BTreeMap<String, f64>>,
}

impl InvariantsReport {
    pub fn pairwise(routes: &[InvariantReport]) -> Option<BTreeMap<String, f64>> {
        if routes.len() < 2 {
            return None;
        }
        let mut out = BTreeMap::new();
        for (i, a) in routes.iter().enumerate() {
            for b in &routes[i + 1..] {
                let rel = (a.degree_kirchhoff - b.degree_kirchhoff).abs()
                    / (1.0 + b.degree_kirchhoff.abs());
                out.insert(format!("{}_vs_{}", a.route, b.route), rel);
            }
        }
        Some(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "graph: {} (n = {}, m = {})",
            self.source, self.n, self.m
        );
        let _ = writeln!(
            out,
            "{:<18} {:>20} {:>20} {:>8}",
            "route", "kemeny", "degree_kirchhoff", "2|E|"
        );
        for r in &self.routes {
            let _ = writeln!(
                out,
                "{:<18} {:>20} {:>20} {:>8}",
                r.route.to_string(),
                sig12(r.kemeny),
                sig12(r.degree_kirchhoff),
                r.edge_count_used
            );
        }
        for s in &self.skipped {
            let _ = writeln!(out, "{:<18} skipped: {}", s.route.to_string(), s.reason);
        }
        for (name, dev) in self.deviations.iter().flatten() {
            let _ = writeln!(out, "deviation {name}: {dev:.3e}");
        }
        out
    }
}

pub fn cospectral_text(outcome: &CospectralOutcome<f64>) -> String {
    let mut out = String::new();
    match outcome {
        CospectralOutcome::Cospectral(c) => {
            let _ = writeln!(out, "{}", c.summary());
            let _ = writeln!(
                out,
                "max deviation: {:.3e} (tolerance {:e})",
                c.max_deviation, c.tolerance
            );
            if let Some(w) = &c.nonisomorphism_witness {
                let _ = writeln!(out, "witness: {}", w.name());
            }
            let _ = writeln!(out, "{:>20}  multiplicity", "shared eigenvalue");
            for e in c.shared_spectrum.items() {
                let _ = writeln!(out, "{:>20}  {}", sig12(e.value), e.multiplicity);
            }
        }
        CospectralOutcome::Mismatch(m) => {
            let _ = writeln!(out, "not cospectral");
            let _ = writeln!(out, "max deviation: {:.3e}", m.max_deviation);
        }
    }
    out
}

/// Twelve significant digits; magnitudes below 1e-12 print as zero.
pub fn sig12(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}
