//! Cospectrality certificates and non-regular cospectral pairs built from
//! cospectral regular graphs by central vertex and edge joins.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, RegularGraph};
use crate::numeric::{spectra_equal, Spectrum};
use crate::scalar::Real;
use crate::spectra::{direct_spectrum, regular_nl_spectrum, Composite};

/// Tolerance used when certifying composites of ~70 vertices.
pub const CERTIFICATION_TOL: f64 = 1e-7;

/// A cheap isomorphism invariant on which two graphs differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum Witness {
    DegreeMultiset {
        a: Vec<usize>,
        b: Vec<usize>,
    },
    TriangleCounts {
        a: Vec<usize>,
        b: Vec<usize>,
    },
    NeighborDegreeMultisets {
        a: Vec<Vec<usize>>,
        b: Vec<Vec<usize>>,
    },
    /// Sorted component counts of the subgraphs induced on each neighborhood.
    NeighborhoodComponents {
        a: Vec<usize>,
        b: Vec<usize>,
    },
}

impl Witness {
    pub fn name(&self) -> &'static str {
        match self {
            Witness::DegreeMultiset { .. } => "degree_multiset",
            Witness::TriangleCounts { .. } => "triangle_counts",
            Witness::NeighborDegreeMultisets { .. } => "neighbor_degree_multisets",
            Witness::NeighborhoodComponents { .. } => "neighborhood_components",
        }
    }

    /// Recomputes the invariant on both graphs and confirms the recorded
    /// values are genuine and distinct.
    pub fn holds_for(&self, a: &Graph, b: &Graph) -> bool {
        match self {
            Witness::DegreeMultiset { a: va, b: vb } => {
                va != vb && *va == a.degree_multiset() && *vb == b.degree_multiset()
            }
            Witness::TriangleCounts { a: va, b: vb } => {
                va != vb && *va == sorted_triangles(a) && *vb == sorted_triangles(b)
            }
            Witness::NeighborDegreeMultisets { a: va, b: vb } => {
                va != vb
                    && *va == neighbor_degree_multisets(a)
                    && *vb == neighbor_degree_multisets(b)
            }
            Witness::NeighborhoodComponents { a: va, b: vb } => {
                va != vb && *va == neighborhood_components(a) && *vb == neighborhood_components(b)
            }
        }
    }
}

fn sorted_triangles(g: &Graph) -> Vec<usize> {
    let mut t = g.triangle_counts();
    t.sort_unstable();
    t
}

fn neighbor_degree_multisets(g: &Graph) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0..g.n())
        .map(|v| {
            let mut d: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
            d.sort_unstable();
            d
        })
        .collect();
    all.sort();
    all
}

fn neighborhood_components(g: &Graph) -> Vec<usize> {
    let mut counts: Vec<usize> = (0..g.n())
        .map(|v| {
            let nb = g.neighbors(v);
            let local: Vec<(usize, usize)> = nb
                .iter()
                .enumerate()
                .flat_map(|(i, &x)| {
                    nb[i + 1..]
                        .iter()
                        .enumerate()
                        .filter(move |&(_, &y)| g.has_edge(x, y))
                        .map(move |(j, _)| (i, i + 1 + j))
                })
                .collect();
            Graph::new(nb.len(), local)
                .expect("neighborhood subgraph is simple")
                .component_count()
        })
        .collect();
    counts.sort_unstable();
    counts
}

/// First cheap invariant separating `a` and `b`, if any.
pub fn find_witness(a: &Graph, b: &Graph) -> Option<Witness> {
    let (da, db) = (a.degree_multiset(), b.degree_multiset());
    if da != db {
        return Some(Witness::DegreeMultiset { a: da, b: db });
    }
    let (ta, tb) = (sorted_triangles(a), sorted_triangles(b));
    if ta != tb {
        return Some(Witness::TriangleCounts { a: ta, b: tb });
    }
    let (na, nb) = (neighbor_degree_multisets(a), neighbor_degree_multisets(b));
    if na != nb {
        return Some(Witness::NeighborDegreeMultisets { a: na, b: nb });
    }
    let (ca, cb) = (neighborhood_components(a), neighborhood_components(b));
    if ca != cb {
        return Some(Witness::NeighborhoodComponents { a: ca, b: cb });
    }
    None
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CospectralCertificate<T> {
    pub graph_a: Graph,
    pub graph_b: Graph,
    pub shared_spectrum: Spectrum<T>,
    pub max_deviation: T,
    pub tolerance: T,
    pub nonisomorphism_witness: Option<Witness>,
}

impl<T: Real> CospectralCertificate<T> {
    pub fn summary(&self) -> String {
        match &self.nonisomorphism_witness {
            Some(w) => format!("cospectral; non-isomorphic ({} differs)", w.name()),
            None => "cospectral; isomorphism undetermined".to_string(),
        }
    }

    /// Re-verifies the stored spectrum against both graphs and re-checks the
    /// witness. Intended for certificates loaded from disk.
    pub fn recheck(&self) -> Result<bool> {
        for g in [&self.graph_a, &self.graph_b] {
            if !spectra_equal(&self.shared_spectrum, &direct_spectrum(g)?, self.tolerance).0 {
                return Ok(false);
            }
        }
        Ok(self
            .nonisomorphism_witness
            .as_ref()
            .is_none_or(|w| w.holds_for(&self.graph_a, &self.graph_b)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralMismatch<T> {
    pub spectrum_a: Spectrum<T>,
    pub spectrum_b: Spectrum<T>,
    /// `+inf` when the vertex counts differ.
    pub max_deviation: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CospectralOutcome<T> {
    Cospectral(CospectralCertificate<T>),
    Mismatch(SpectralMismatch<T>),
}

impl<T> CospectralOutcome<T> {
    pub fn certificate(&self) -> Option<&CospectralCertificate<T>> {
        match self {
            CospectralOutcome::Cospectral(c) => Some(c),
            CospectralOutcome::Mismatch(_) => None,
        }
    }
}

pub fn check_cospectral<T: Real>(a: &Graph, b: &Graph, tol: T) -> Result<CospectralOutcome<T>> {
    let sa = direct_spectrum::<T>(a)?;
    let sb = direct_spectrum::<T>(b)?;
    let (equal, max_deviation) = spectra_equal(&sa, &sb, tol);
    Ok(if equal {
        CospectralOutcome::Cospectral(CospectralCertificate {
            graph_a: a.clone(),
            graph_b: b.clone(),
            shared_spectrum: sa,
            max_deviation,
            tolerance: tol,
            nonisomorphism_witness: find_witness(a, b),
        })
    } else {
        CospectralOutcome::Mismatch(SpectralMismatch {
            spectrum_a: sa,
            spectrum_b: sb,
            max_deviation,
        })
    })
}

fn require_cospectral_regular<T: Real>(x: &RegularGraph, y: &RegularGraph, tol: T) -> Result<()> {
    if x.n() != y.n() || x.r() != y.r() {
        return Err(Error::NotCospectralInput(format!(
            "({} vertices, {}-regular) vs ({} vertices, {}-regular)",
            x.n(),
            x.r(),
            y.n(),
            y.r()
        )));
    }
    let (equal, dev) = spectra_equal(
        &regular_nl_spectrum::<T>(x)?,
        &regular_nl_spectrum::<T>(y)?,
        tol,
    );
    if !equal {
        return Err(Error::NotCospectralInput(format!(
            "normalized Laplacian spectra differ by {:e}",
            dev.to_f64_lossy()
        )));
    }
    Ok(())
}

/// Given cospectral regular pairs `(g1, g2)` and `(h1, h2)`, certifies that
/// `g1 ∨̇ h1, g2 ∨̇ h2` and `g1 ⊻ h1, g2 ⊻ h2` are cospectral.
pub fn build_cospectral_family<T: Real>(
    g1: &RegularGraph,
    g2: &RegularGraph,
    h1: &RegularGraph,
    h2: &RegularGraph,
) -> Result<Vec<(Composite, CospectralCertificate<T>)>> {
    let tol = T::lit(CERTIFICATION_TOL);
    require_cospectral_regular(g1, g2, tol)?;
    require_cospectral_regular(h1, h2, tol)?;

    let certify = |kind: Composite| -> Result<(Composite, CospectralCertificate<T>)> {
        let a = kind.build(g1.graph(), Some(h1.graph()))?;
        let b = kind.build(g2.graph(), Some(h2.graph()))?;
        match check_cospectral(&a, &b, tol)? {
            CospectralOutcome::Cospectral(c) => Ok((kind, c)),
            CospectralOutcome::Mismatch(m) => Err(Error::CertificationFailed {
                composite: kind.to_string(),
                max_deviation: m.max_deviation.to_f64_lossy(),
            }),
        }
    };
    std::thread::scope(|s| {
        let edge = s.spawn(|| certify(Composite::EdgeJoin));
        let vertex = certify(Composite::VertexJoin);
        let edge = edge.join().expect("certification thread panicked");
        Ok(vec![vertex?, edge?])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{as_regular, family};

    fn reg(name: &str) -> RegularGraph {
        as_regular(&family(name).unwrap()).unwrap()
    }

    #[test]
    fn self_pair_has_no_witness() {
        let g = family("petersen").unwrap();
        let c = check_cospectral(&g, &g, 1e-8).unwrap();
        let cert = c.certificate().unwrap();
        assert!(cert.nonisomorphism_witness.is_none());
        assert_eq!(cert.summary(), "cospectral; isomorphism undetermined");
        assert!(cert.recheck().unwrap());
    }

    #[test]
    fn k3_vs_p3_mismatch() {
        let out = check_cospectral::<f64>(
            &family("complete(3)").unwrap(),
            &family("path(3)").unwrap(),
            1e-8,
        )
        .unwrap();
        assert!(matches!(out, CospectralOutcome::Mismatch(_)));
        let out = check_cospectral::<f64>(
            &family("complete(3)").unwrap(),
            &family("complete(4)").unwrap(),
            1e-8,
        )
        .unwrap();
        match out {
            CospectralOutcome::Mismatch(m) => assert!(m.max_deviation.is_infinite()),
            _ => panic!(),
        }
    }

    #[test]
    fn witness_order() {
        let c4 = family("cycle(4)").unwrap();
        let p4 = family("path(4)").unwrap();
        assert_eq!(find_witness(&c4, &p4).unwrap().name(), "degree_multiset");
        // Shrikhande and the 4x4 rook graph agree on the first three; their
        // neighborhoods are C6 and 2K3.
        let (s, r) = (family("shrikhande").unwrap(), family("rook_4x4").unwrap());
        assert_eq!(sorted_triangles(&s), sorted_triangles(&r));
        assert_eq!(neighbor_degree_multisets(&s), neighbor_degree_multisets(&r));
        assert_eq!(
            find_witness(&s, &r),
            Some(Witness::NeighborhoodComponents {
                a: vec![1; 16],
                b: vec![2; 16]
            })
        );
        assert!(find_witness(&s, &s).is_none());
        // 2K3 vs C6: triangles separate them
        let two_k3 = Graph::new(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        let w = find_witness(&two_k3, &family("cycle(6)").unwrap()).unwrap();
        assert_eq!(w.name(), "triangle_counts");
        assert!(w.holds_for(&two_k3, &family("cycle(6)").unwrap()));
        assert!(!w.holds_for(&two_k3, &two_k3));
    }

    #[test]
    fn trivial_family() {
        let (k33, k2) = (reg("complete_bipartite(3,3)"), reg("complete(2)"));
        let certs = build_cospectral_family::<f64>(&k33, &k33, &k2, &k2).unwrap();
        assert_eq!(certs.len(), 2);
        assert_eq!(certs[0].0, Composite::VertexJoin);
        assert_eq!(certs[1].0, Composite::EdgeJoin);
        for (_, c) in &certs {
            assert_eq!(c.max_deviation, 0.0);
        }
    }

    #[test]
    fn non_cospectral_inputs_rejected() {
        let err = build_cospectral_family::<f64>(
            &reg("complete_bipartite(3,3)"),
            &reg("cycle(6)"),
            &reg("complete(2)"),
            &reg("complete(2)"),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotCospectralInput(_)), "{err}");
        assert!(build_cospectral_family::<f64>(
            &reg("cycle(4)"),
            &reg("complete(4)"),
            &reg("complete(2)"),
            &reg("complete(2)")
        )
        .is_err());
    }

    #[test]
    fn certificate_serde_round_trip() {
        let a = Composite::VertexJoin
            .build(
                &family("cycle(4)").unwrap(),
                Some(&family("complete(2)").unwrap()),
            )
            .unwrap();
        let cert = check_cospectral(&a, &a, 1e-8).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: CospectralOutcome<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert!(back.certificate().unwrap().recheck().unwrap());
    }

    #[test]
    fn tampered_graph_fails_to_load_or_recheck() {
        let g = family("complete(3)").unwrap();
        let cert = check_cospectral(&g, &g, 1e-8).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let looped = json.replacen("[0,1]", "[1,1]", 1);
        assert!(serde_json::from_str::<CospectralOutcome<f64>>(&looped).is_err());
        let mut c = cert.certificate().unwrap().clone();
        c.graph_b = family("path(3)").unwrap();
        assert!(!c.recheck().unwrap());
    }
}
