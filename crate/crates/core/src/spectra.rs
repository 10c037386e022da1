//! Normalized Laplacian assembly, direct spectra, and the closed-form spectra
//! of C(G), G1 ∨̇ G2 and G1 ⊻ G2 for regular inputs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{central_edge_join, central_graph, central_vertex_join, Graph, RegularGraph};
use crate::numeric::{eigenvalues_sym, Eigenvalue, Polynomial, Spectrum, SymMatrix};
use crate::scalar::Real;

/// `I - D^{-1/2} A D^{-1/2}` together with the graph it came from.
#[derive(Debug, Clone)]
pub struct NormalizedLaplacian<T> {
    pub matrix: SymMatrix<T>,
    pub source: Graph,
}

pub fn normalized_laplacian<T: Real>(g: &Graph) -> Result<NormalizedLaplacian<T>> {
    let n = g.n();
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let inv_sqrt: Vec<T> = (0..n)
        .map(|v| T::one() / T::of_usize(g.degree(v)).sqrt())
        .collect();
    let mut matrix = SymMatrix::identity(n);
    for &(u, v) in g.edges() {
        matrix.set_sym(u, v, -(inv_sqrt[u] * inv_sqrt[v]));
    }
    Ok(NormalizedLaplacian {
        matrix,
        source: g.clone(),
    })
}

/// Eigenvalues of the normalized Laplacian by dense eigendecomposition.
pub fn direct_spectrum<T: Real>(g: &Graph) -> Result<Spectrum<T>> {
    eigenvalues_sym(&normalized_laplacian::<T>(g)?.matrix)
}

/// Adjacency spectrum of a graph.
pub fn adjacency_spectrum<T: Real>(g: &Graph) -> Result<Spectrum<T>> {
    eigenvalues_sym(&g.adjacency_matrix::<T>())
}

/// Normalized Laplacian spectrum of an r-regular graph via `mu = 1 - lambda / r`.
pub fn regular_nl_spectrum<T: Real>(rg: &RegularGraph) -> Result<Spectrum<T>> {
    if rg.r() == 0 {
        return Err(Error::ZeroRegularity);
    }
    let r = T::of_usize(rg.r());
    Ok(adjacency_spectrum::<T>(rg.graph())?.map(|lambda| T::one() - lambda / r))
}

/// Which composite a closed form describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Composite {
    Central,
    VertexJoin,
    EdgeJoin,
}

impl Composite {
    pub const ALL: [Composite; 3] = [
        Composite::Central,
        Composite::VertexJoin,
        Composite::EdgeJoin,
    ];

    pub fn needs_partner(self) -> bool {
        self != Composite::Central
    }

    /// Builds the composite graph. `g2` is ignored for the central graph.
    pub fn build(self, g1: &Graph, g2: Option<&Graph>) -> Result<Graph> {
        let partner =
            || g2.ok_or_else(|| Error::InvalidParameter(format!("{self} needs a second graph")));
        Ok(match self {
            Composite::Central => central_graph(g1).0,
            Composite::VertexJoin => central_vertex_join(g1, partner()?).0,
            Composite::EdgeJoin => central_edge_join(g1, partner()?).0,
        })
    }
}

impl fmt::Display for Composite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Composite::Central => "central",
            Composite::VertexJoin => "cvj",
            Composite::EdgeJoin => "cej",
        })
    }
}

impl FromStr for Composite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "central" => Ok(Composite::Central),
            "cvj" | "vertex_join" => Ok(Composite::VertexJoin),
            "cej" | "edge_join" => Ok(Composite::EdgeJoin),
            _ => Err(Error::InvalidParameter(format!("unknown composite {s:?}"))),
        }
    }
}

/// One factor of a closed-form spectrum.
#[derive(Debug, Clone, PartialEq)]
pub enum PieceValue<T> {
    Value(T),
    /// Real parts of the roots of `polynomial`, ascending.
    Roots {
        polynomial: Polynomial<T>,
        roots: Vec<T>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPiece<T> {
    pub label: String,
    pub value: PieceValue<T>,
    /// How many times every value of this piece occurs.
    pub multiplicity: usize,
}

impl<T: Real> SpectrumPiece<T> {
    pub fn values(&self) -> Vec<T> {
        match &self.value {
            PieceValue::Value(v) => vec![*v],
            PieceValue::Roots { roots, .. } => roots.clone(),
        }
    }

    fn count(&self) -> usize {
        self.values().len() * self.multiplicity
    }
}

#[derive(Debug, Clone)]
pub struct ClosedFormSpectrum<T> {
    pub pieces: Vec<SpectrumPiece<T>>,
    pub assembled: Spectrum<T>,
    /// Set when an input graph is disconnected, a regime the factorization
    /// was not derived for; cross-check against [`direct_spectrum`].
    pub unvalidated_disconnected: bool,
}

impl<T: Real> ClosedFormSpectrum<T> {
    fn assemble(pieces: Vec<SpectrumPiece<T>>, disconnected: bool) -> Self {
        let assembled = Spectrum::from_weighted(
            pieces
                .iter()
                .flat_map(|p| p.values().into_iter().map(move |v| (v, p.multiplicity))),
            T::grouping_tol(),
        );
        debug_assert_eq!(
            assembled.len(),
            pieces.iter().map(SpectrumPiece::count).sum::<usize>()
        );
        ClosedFormSpectrum {
            pieces,
            assembled,
            unvalidated_disconnected: disconnected,
        }
    }
}

fn value_piece<T: Real>(label: String, v: T, multiplicity: usize) -> SpectrumPiece<T> {
    SpectrumPiece {
        label,
        value: PieceValue::Value(v),
        multiplicity,
    }
}

fn roots_piece<T: Real>(
    label: String,
    polynomial: Polynomial<T>,
    multiplicity: usize,
) -> Result<SpectrumPiece<T>> {
    let mut roots: Vec<T> = polynomial.roots()?.into_iter().map(|z| z.re).collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(SpectrumPiece {
        label,
        value: PieceValue::Roots { polynomial, roots },
        multiplicity,
    })
}

/// Grouped spectrum with one copy of its extreme element removed; the
/// closed forms index their sums from `i = 2`.
fn drop_one<T: Real>(items: &[Eigenvalue<T>], from_top: bool) -> Vec<Eigenvalue<T>> {
    let mut items = items.to_vec();
    let idx = if from_top { items.len() - 1 } else { 0 };
    items[idx].multiplicity -= 1;
    items.retain(|e| e.multiplicity > 0);
    items
}

fn y<T: Real>() -> Polynomial<T> {
    Polynomial::x_minus(T::one())
}

fn x<T: Real>() -> Polynomial<T> {
    Polynomial::x_minus(T::zero())
}

fn fmt_val<T: Real>(v: T) -> String {
    format!("{:.6}", v.to_f64_lossy())
}

/// Closed-form normalized Laplacian spectrum of C(G) for r-regular G:
/// `1` with multiplicity `m - n`, two roots of
/// `(x-1)((x-1) + (n-1-r)/(n-1)) - r/(n-1)`, and for every adjacency
/// eigenvalue `lambda_i`, `i >= 2`, two roots of
/// `(x-1)((x-1) + (-1-lambda_i)/(n-1)) - (lambda_i + r)/(2(n-1))`.
pub fn central_spectrum_closed<T: Real>(rg: &RegularGraph) -> Result<ClosedFormSpectrum<T>> {
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
    let nf = T::of_usize(n);
    let rf = T::of_usize(r);
    let d = nf - T::one();
    let two = T::lit(2.0);

    let adj = adjacency_spectrum::<T>(rg.graph())?;
    let mut pieces = vec![value_piece("eigenvalue 1".into(), T::one(), m - n)];
    let top = y() * (y() + (d - rf) / d) - rf / d;
    pieces.push(roots_piece("top factor".into(), top, 1)?);
    for e in drop_one(adj.items(), true) {
        let lambda = e.value;
        let poly = y() * (y() + (-T::one() - lambda) / d) - (lambda + rf) / (two * d);
        pieces.push(roots_piece(
            format!("adjacency eigenvalue {}", fmt_val(lambda)),
            poly,
            e.multiplicity,
        )?);
    }
    Ok(ClosedFormSpectrum::assemble(
        pieces,
        !rg.graph().is_connected(),
    ))
}

fn join_guards(rg1: &RegularGraph, rg2: &RegularGraph, n1_min: usize) -> Result<()> {
    if rg1.n() < n1_min || rg1.n() + rg2.n() < 2 {
        return Err(Error::TrivialDenominator);
    }
    if rg1.r() == 0 || rg2.r() == 0 {
        return Err(Error::ZeroRegularity);
    }
    Ok(())
}

/// Closed-form normalized Laplacian spectrum of the central vertex join.
pub fn cvj_spectrum_closed<T: Real>(
    rg1: &RegularGraph,
    rg2: &RegularGraph,
) -> Result<ClosedFormSpectrum<T>> {
    join_guards(rg1, rg2, 1)?;
    let (n1, m1, r1) = (rg1.n(), rg1.m(), rg1.r());
    let (n2, r2) = (rg2.n(), rg2.r());
    if m1 < n1 {
        return Err(Error::NegativeMultiplicity(m1 as i64 - n1 as i64));
    }
    let [n1f, n2f, r1f, r2f] = [n1, n2, r1, r2].map(T::of_usize);
    let big = n1f + n2f - T::one();
    let two = T::lit(2.0);

    let mu1 = regular_nl_spectrum::<T>(rg1)?;
    let mu2 = regular_nl_spectrum::<T>(rg2)?;

    let mut pieces = vec![value_piece("eigenvalue 1".into(), T::one(), m1 - n1)];
    for e in drop_one(mu2.items(), false) {
        let v = n1f / (r2f + n1f) + r2f * e.value / (r2f + n1f);
        pieces.push(value_piece(
            format!("G2 eigenvalue {}", fmt_val(e.value)),
            v,
            e.multiplicity,
        ));
    }

    let base = y() * y() - r1f / big - y() * ((T::one() + r1f) / big);
    let coupling = (y() * (n1f * n2f) - y() * n1f * (x() * (n1f + r2f) - n1f))
        * (T::one() / (big * (n1f + r2f)));
    let cubic = (x() - n1f / (r2f + n1f)) * base.clone() - coupling;
    pieces.push(roots_piece("cubic factor".into(), cubic, 1)?);

    for e in drop_one(mu1.items(), false) {
        let mu = e.value;
        let poly = base.clone() + r1f * mu / (two * big) + y() * (r1f * mu / big);
        pieces.push(roots_piece(
            format!("G1 eigenvalue {}", fmt_val(mu)),
            poly,
            e.multiplicity,
        )?);
    }
    let disconnected = !rg1.graph().is_connected() || !rg2.graph().is_connected();
    Ok(ClosedFormSpectrum::assemble(pieces, disconnected))
}

/// Closed-form normalized Laplacian spectrum of the central edge join. The
/// quartic factor is expanded numerically from its product form.
pub fn cej_spectrum_closed<T: Real>(
    rg1: &RegularGraph,
    rg2: &RegularGraph,
) -> Result<ClosedFormSpectrum<T>> {
    join_guards(rg1, rg2, 2)?;
    let (n1, m1, r1) = (rg1.n(), rg1.m(), rg1.r());
    let (n2, r2) = (rg2.n(), rg2.r());
    if m1 < n1 + 1 {
        return Err(Error::NegativeMultiplicity(m1 as i64 - n1 as i64 - 1));
    }
    let [n1f, n2f, m1f, r1f, r2f] = [n1, n2, m1, r1, r2].map(T::of_usize);
    let d1 = n1f - T::one();
    let q = n2f + T::lit(2.0);
    let s = r2f + m1f;

    let mu1 = regular_nl_spectrum::<T>(rg1)?;
    let mu2 = regular_nl_spectrum::<T>(rg2)?;

    let mut pieces = vec![value_piece("eigenvalue 1".into(), T::one(), m1 - n1 - 1)];
    for e in drop_one(mu2.items(), false) {
        let v = m1f / s + r2f * e.value / s;
        pieces.push(value_piece(
            format!("G2 eigenvalue {}", fmt_val(e.value)),
            v,
            e.multiplicity,
        ));
    }

    let left = y() * y() + y() * ((d1 - r1f) / d1) - T::lit(2.0) * r1f / (d1 * q);
    let right = (x() - m1f / s) * y() - n2f * m1f / (q * s);
    let quartic = left * right - n2f * r1f * r1f * n1f / (d1 * q * q * s);
    pieces.push(roots_piece("quartic factor".into(), quartic, 1)?);

    for e in drop_one(mu1.items(), false) {
        let mu = e.value;
        let poly = y() * y() + y() * ((-T::one() - r1f + r1f * mu) / d1)
            - (T::lit(2.0) * r1f - r1f * mu) / (d1 * q);
        pieces.push(roots_piece(
            format!("G1 eigenvalue {}", fmt_val(mu)),
            poly,
            e.multiplicity,
        )?);
    }
    let disconnected = !rg1.graph().is_connected() || !rg2.graph().is_connected();
    Ok(ClosedFormSpectrum::assemble(pieces, disconnected))
}

/// Dispatches to the closed form of `kind`.
pub fn closed_spectrum<T: Real>(
    kind: Composite,
    rg1: &RegularGraph,
    rg2: Option<&RegularGraph>,
) -> Result<ClosedFormSpectrum<T>> {
    let partner =
        || rg2.ok_or_else(|| Error::InvalidParameter(format!("{kind} needs a second graph")));
    match kind {
        Composite::Central => central_spectrum_closed(rg1),
        Composite::VertexJoin => cvj_spectrum_closed(rg1, partner()?),
        Composite::EdgeJoin => cej_spectrum_closed(rg1, partner()?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{as_regular, family};
    use crate::numeric::spectra_equal;

    fn reg(name: &str) -> RegularGraph {
        as_regular(&family(name).unwrap()).unwrap()
    }

    fn approx_items(s: &Spectrum<f64>) -> Vec<(f64, usize)> {
        s.items()
            .iter()
            .map(|e| (e.value, e.multiplicity))
            .collect()
    }

    fn assert_items(s: &Spectrum<f64>, expected: &[(f64, usize)]) {
        let got = approx_items(s);
        assert_eq!(got.len(), expected.len(), "{got:?}");
        for ((v, k), (ev, ek)) in got.iter().zip(expected) {
            assert!((v - ev).abs() < 1e-10 && k == ek, "{got:?} vs {expected:?}");
        }
    }

    #[test]
    fn normalized_laplacian_k2() {
        let nl = normalized_laplacian::<f64>(&family("complete(2)").unwrap()).unwrap();
        assert_eq!(nl.matrix.as_slice(), &[1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn normalized_laplacian_entries() {
        let g = family("path(3)").unwrap();
        let nl = normalized_laplacian::<f64>(&g).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert_eq!(nl.matrix.get(0, 1), -s);
        assert_eq!(nl.matrix.get(0, 2), 0.0);
        assert_eq!(nl.matrix.get(1, 1), 1.0);
    }

    #[test]
    fn isolated_vertex_rejected() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(
            normalized_laplacian::<f64>(&g).unwrap_err(),
            Error::IsolatedVertex(2)
        );
        assert_eq!(
            direct_spectrum::<f64>(&g).unwrap_err(),
            Error::IsolatedVertex(2)
        );
    }

    #[test]
    fn direct_examples() {
        assert_items(
            &direct_spectrum(&family("cycle(4)").unwrap()).unwrap(),
            &[(0.0, 1), (1.0, 2), (2.0, 1)],
        );
        assert_items(
            &direct_spectrum(&family("complete(2)").unwrap()).unwrap(),
            &[(0.0, 1), (2.0, 1)],
        );
        assert_items(
            &direct_spectrum(&family("complete_bipartite(3,3)").unwrap()).unwrap(),
            &[(0.0, 1), (1.0, 4), (2.0, 1)],
        );
    }

    #[test]
    fn regular_relation() {
        assert_items(
            &regular_nl_spectrum(&reg("complete(2)")).unwrap(),
            &[(0.0, 1), (2.0, 1)],
        );
        assert_items(
            &regular_nl_spectrum(&reg("complete_bipartite(3,3)")).unwrap(),
            &[(0.0, 1), (1.0, 4), (2.0, 1)],
        );
        // Petersen adjacency spectrum {3, 1^5, (-2)^4}
        let adj = adjacency_spectrum::<f64>(reg("petersen").graph()).unwrap();
        assert_items(&adj, &[(-2.0, 4), (1.0, 5), (3.0, 1)]);
        assert_items(
            &regular_nl_spectrum(&reg("petersen")).unwrap(),
            &[(0.0, 1), (2.0 / 3.0, 5), (5.0 / 3.0, 4)],
        );
        let empty = as_regular(&Graph::empty(3)).unwrap();
        assert_eq!(
            regular_nl_spectrum::<f64>(&empty).unwrap_err(),
            Error::ZeroRegularity
        );
    }

    #[test]
    fn central_k33_pieces() {
        let cf = central_spectrum_closed::<f64>(&reg("complete_bipartite(3,3)")).unwrap();
        assert_eq!(cf.assembled.len(), 15);
        assert!(!cf.unvalidated_disconnected);
        assert_eq!(cf.pieces[0].multiplicity, 3);
        // top factor roots 0 and 8/5
        let top = cf.pieces[1].values();
        assert!(top[0].abs() < 1e-15 && (top[1] - 1.6).abs() < 1e-15);
        // lambda = 0 (x4): 10x^2 - 22x + 9 ; lambda = -3 (x1): 5x^2 - 8x + 3
        let by_label: Vec<_> = cf
            .pieces
            .iter()
            .map(|p| (p.label.as_str(), p.multiplicity))
            .collect();
        assert!(
            by_label.contains(&("adjacency eigenvalue -3.000000", 1)),
            "{by_label:?}"
        );
        assert!(
            by_label.contains(&("adjacency eigenvalue 0.000000", 4)),
            "{by_label:?}"
        );
        let direct =
            direct_spectrum(&central_graph(reg("complete_bipartite(3,3)").graph()).0).unwrap();
        let (ok, dev) = spectra_equal(&cf.assembled, &direct, 1e-8);
        assert!(ok, "{dev}");
    }

    #[test]
    fn central_guards() {
        assert_eq!(
            central_spectrum_closed::<f64>(&reg("complete(2)")).unwrap_err(),
            Error::NegativeMultiplicity(-1)
        );
        assert_eq!(
            central_spectrum_closed::<f64>(&reg("complete(1)")).unwrap_err(),
            Error::TrivialDenominator
        );
    }

    #[test]
    fn central_matches_direct_c4() {
        let rg = reg("cycle(4)");
        let cf = central_spectrum_closed::<f64>(&rg).unwrap();
        let direct = direct_spectrum(&central_graph(rg.graph()).0).unwrap();
        assert!(spectra_equal(&cf.assembled, &direct, 1e-8).0);
    }

    #[test]
    fn vertex_join_k33_k2() {
        let cf = cvj_spectrum_closed::<f64>(&reg("complete_bipartite(3,3)"), &reg("complete(2)"))
            .unwrap();
        assert_eq!(cf.assembled.len(), 17);
        match cf.pieces[1].value {
            PieceValue::Value(v) => assert!((v - 8.0 / 7.0).abs() < 1e-15),
            _ => panic!("piece 2 is explicit"),
        }
        let direct = direct_spectrum(
            &central_vertex_join(
                reg("complete_bipartite(3,3)").graph(),
                reg("complete(2)").graph(),
            )
            .0,
        )
        .unwrap();
        assert!(spectra_equal(&cf.assembled, &direct, 1e-8).0);
    }

    #[test]
    fn vertex_join_matches_direct_c4_k2() {
        let (g1, g2) = (reg("cycle(4)"), reg("complete(2)"));
        let cf = cvj_spectrum_closed::<f64>(&g1, &g2).unwrap();
        let direct = direct_spectrum(&central_vertex_join(g1.graph(), g2.graph()).0).unwrap();
        let (ok, dev) = spectra_equal(&cf.assembled, &direct, 1e-8);
        assert!(ok, "{dev}");
    }

    #[test]
    fn edge_join_k33_k2() {
        let cf = cej_spectrum_closed::<f64>(&reg("complete_bipartite(3,3)"), &reg("complete(2)"))
            .unwrap();
        assert_eq!(cf.assembled.len(), 17);
        match cf.pieces[1].value {
            PieceValue::Value(v) => assert!((v - 1.1).abs() < 1e-15),
            _ => panic!("piece 2 is explicit"),
        }
        // mu = 1 family is 20x^2 - 44x + 21 scaled to monic
        let fam = cf
            .pieces
            .iter()
            .find(|p| p.label == "G1 eigenvalue 1.000000")
            .unwrap();
        assert_eq!(fam.multiplicity, 4);
        if let PieceValue::Roots { polynomial, .. } = &fam.value {
            let expected = Polynomial::from_descending(&[20.0, -44.0, 21.0]).monic();
            for (a, b) in polynomial.monic().coeffs().iter().zip(expected.coeffs()) {
                assert!((a - b).abs() < 1e-14);
            }
        } else {
            panic!()
        }
    }

    #[test]
    fn edge_join_matches_direct_k4_k2() {
        let (g1, g2) = (reg("complete(4)"), reg("complete(2)"));
        let cf = cej_spectrum_closed::<f64>(&g1, &g2).unwrap();
        let direct = direct_spectrum(&central_edge_join(g1.graph(), g2.graph()).0).unwrap();
        let (ok, dev) = spectra_equal(&cf.assembled, &direct, 1e-8);
        assert!(ok, "{dev}");
    }

    #[test]
    fn join_guards_apply() {
        assert_eq!(
            cej_spectrum_closed::<f64>(&reg("cycle(5)"), &reg("complete(2)")).unwrap_err(),
            Error::NegativeMultiplicity(-1)
        );
        let empty2 = as_regular(&Graph::empty(2)).unwrap();
        assert_eq!(
            cvj_spectrum_closed::<f64>(&reg("cycle(4)"), &empty2).unwrap_err(),
            Error::ZeroRegularity
        );
        assert!(closed_spectrum::<f64>(Composite::VertexJoin, &reg("cycle(4)"), None).is_err());
    }

    #[test]
    fn disconnected_input_flagged_and_still_matches() {
        let two_k3 = Graph::new(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        let rg = as_regular(&two_k3).unwrap();
        let cf = central_spectrum_closed::<f64>(&rg).unwrap();
        assert!(cf.unvalidated_disconnected);
        let direct = direct_spectrum(&central_graph(&two_k3).0).unwrap();
        assert!(spectra_equal(&cf.assembled, &direct, 1e-8).0);
    }

    #[test]
    fn f32_closed_vs_direct() {
        let rg = reg("complete_bipartite(3,3)");
        let cf = central_spectrum_closed::<f32>(&rg).unwrap();
        let direct = direct_spectrum::<f32>(&central_graph(rg.graph()).0).unwrap();
        let (ok, dev) = spectra_equal(&cf.assembled, &direct, 1e-4);
        assert!(ok, "{dev}");
    }

    #[test]
    fn composite_names() {
        for c in Composite::ALL {
            assert_eq!(c.to_string().parse::<Composite>().unwrap(), c);
        }
    }
}
