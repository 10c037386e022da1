//! Simple undirected graphs, the standard families used as fixtures, and the
//! central graph / central vertex join / central edge join constructions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::SymMatrix;
use crate::scalar::Real;

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically, so two
/// graphs with the same vertex count and edge set compare equal regardless of
/// how they were built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphData", try_from = "GraphData")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

// Wire form: vertex count plus edge list, revalidated on load.
#[derive(Serialize, Deserialize)]
struct GraphData {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl From<Graph> for GraphData {
    fn from(g: Graph) -> Self {
        GraphData {
            n: g.n,
            edges: g.edges,
        }
    }
}

impl TryFrom<GraphData> for Graph {
    type Error = Error;
    fn try_from(d: GraphData) -> Result<Self> {
        Graph::new(d.n, d.edges)
    }
}

impl Graph {
    /// Validates and canonicalizes an edge list.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                if a >= n {
                    return Err(Error::VertexOutOfRange { vertex: a, n });
                }
                return Err(Error::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if !set.insert((u, v)) {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    /// Graph with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    // Caller guarantees edges are sorted, unique and normalized.
    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    fn from_unsorted(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Self::from_sorted(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Degree sequence sorted ascending.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    /// Component index of every vertex, numbered in order of first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_labels()
            .into_iter()
            .max()
            .map_or(0, |c| c + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// For each connected component, whether it is bipartite.
    pub fn bipartite_components(&self) -> Vec<bool> {
        let labels = self.component_labels();
        let count = labels.iter().max().map_or(0, |c| c + 1);
        let mut ok = vec![true; count];
        let mut color = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        stack.push(w);
                    } else if color[w] == color[v] {
                        ok[labels[s]] = false;
                    }
                }
            }
        }
        ok
    }

    /// Number of triangles through each vertex.
    pub fn triangle_counts(&self) -> Vec<usize> {
        let mut t = vec![0; self.n];
        for &(u, v) in &self.edges {
            let (a, b) = (&self.adj[u], &self.adj[v]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let w = a[i];
                        // each triangle {u,v,w} is seen once per edge; credit only at its smallest edge
                        if w > v {
                            t[u] += 1;
                            t[v] += 1;
                            t[w] += 1;
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        t
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                self.n
            )));
        }
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Ok(Self::from_unsorted(self.n, edges))
    }

    /// Induced subgraph on vertices `0..k`.
    pub fn prefix_subgraph(&self, k: usize) -> Self {
        let k = k.min(self.n);
        let edges = self.edges.iter().copied().filter(|&(_, v)| v < k).collect();
        Self::from_sorted(k, edges)
    }

    pub fn adjacency_matrix<T: Real>(&self) -> SymMatrix<T> {
        let mut a = SymMatrix::zeros(self.n);
        for &(u, v) in &self.edges {
            a.set_sym(u, v, T::one());
        }
        a
    }

    /// Combinatorial Laplacian `D - A`.
    pub fn laplacian_matrix<T: Real>(&self) -> SymMatrix<T> {
        let mut l = SymMatrix::zeros(self.n);
        for v in 0..self.n {
            l.set(v, v, T::of_usize(self.degree(v)));
        }
        for &(u, v) in &self.edges {
            l.set_sym(u, v, -T::one());
        }
        l
    }
}

/// Graph whose vertices all share the degree `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularGraph {
    graph: Graph,
    r: usize,
}

impl RegularGraph {
    pub fn new(graph: Graph) -> Result<Self> {
        let degrees = graph.degrees();
        match degrees.first() {
            None => Ok(RegularGraph { graph, r: 0 }),
            Some(&r) if degrees.iter().all(|&d| d == r) => Ok(RegularGraph { graph, r }),
            Some(_) => Err(Error::NotRegular { degrees }),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

pub fn as_regular(g: &Graph) -> Result<RegularGraph> {
    RegularGraph::new(g.clone())
}

/// Origin of a vertex in a composite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum VertexRole {
    /// Vertex `v` of G1.
    Original { vertex: usize },
    /// Vertex inserted on edge `index` = `{u, v}` of G1.
    Subdivision { index: usize, u: usize, v: usize },
    /// Vertex `v` of G2.
    Partner { vertex: usize },
}

/// Per-vertex origin tags, in block order: originals, subdivisions, partners.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexLabeling {
    roles: Vec<VertexRole>,
}

impl VertexLabeling {
    fn build(g1: &Graph, n2: usize) -> Self {
        let mut roles = Vec::with_capacity(g1.n() + g1.m() + n2);
        roles.extend((0..g1.n()).map(|vertex| VertexRole::Original { vertex }));
        roles.extend(
            g1.edges()
                .iter()
                .enumerate()
                .map(|(index, &(u, v))| VertexRole::Subdivision { index, u, v }),
        );
        roles.extend((0..n2).map(|vertex| VertexRole::Partner { vertex }));
        VertexLabeling { roles }
    }

    pub fn roles(&self) -> &[VertexRole] {
        &self.roles
    }

    pub fn role(&self, v: usize) -> VertexRole {
        self.roles[v]
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    /// Sizes of the (original, subdivision, partner) blocks.
    pub fn block_sizes(&self) -> (usize, usize, usize) {
        self.roles.iter().fold((0, 0, 0), |(a, b, c), r| match r {
            VertexRole::Original { .. } => (a + 1, b, c),
            VertexRole::Subdivision { .. } => (a, b + 1, c),
            VertexRole::Partner { .. } => (a, b, c + 1),
        })
    }
}

fn central_edges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.m() + n * n.saturating_sub(1) / 2);
    for (k, &(u, v)) in g.edges().iter().enumerate() {
        edges.push((u, n + k));
        edges.push((v, n + k));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Central graph C(G): every edge subdivided once, every non-adjacent pair of
/// original vertices joined.
pub fn central_graph(g: &Graph) -> (Graph, VertexLabeling) {
    let edges = central_edges(g);
    (
        Graph::from_unsorted(g.n() + g.m(), edges),
        VertexLabeling::build(g, 0),
    )
}

#[derive(Clone, Copy)]
enum JoinKind {
    Vertex,
    Edge,
}

fn central_join(g1: &Graph, g2: &Graph, kind: JoinKind) -> (Graph, VertexLabeling) {
    let (n1, m1, n2) = (g1.n(), g1.m(), g2.n());
    let offset = n1 + m1;
    let mut edges = central_edges(g1);
    edges.extend(g2.edges().iter().map(|&(u, v)| (u + offset, v + offset)));
    let attach = match kind {
        JoinKind::Vertex => 0..n1,
        JoinKind::Edge => n1..n1 + m1,
    };
    for a in attach {
        edges.extend((0..n2).map(|w| (a, offset + w)));
    }
    (
        Graph::from_unsorted(offset + n2, edges),
        VertexLabeling::build(g1, n2),
    )
}

/// Central vertex join: C(G1) and G2 with every original vertex of G1 joined
/// to every vertex of G2.
pub fn central_vertex_join(g1: &Graph, g2: &Graph) -> (Graph, VertexLabeling) {
    central_join(g1, g2, JoinKind::Vertex)
}

/// Central edge join: C(G1) and G2 with every subdivision vertex joined to
/// every vertex of G2.
pub fn central_edge_join(g1: &Graph, g2: &Graph) -> (Graph, VertexLabeling) {
    central_join(g1, g2, JoinKind::Edge)
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_sorted(n, edges)
}

/// Named graph families.
///
/// Vertex orders: `complete_bipartite(p, q)` puts the `p` side first;
/// `cycle(n)` and `path(n)` follow the walk `0, 1, ..., n-1`; `petersen` has
/// the outer 5-cycle on `0..5` and the inner pentagram on `5..10` with spoke
/// `i -- i+5`; `shrikhande` and `rook_4x4` index `(a, b)` in `Z4 x Z4` as `4a + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Cycle(usize),
    Path(usize),
    Petersen,
    Shrikhande,
    Rook4x4,
}

impl Family {
    pub fn build(self) -> Result<Graph> {
        let mut edges = Vec::new();
        let n = match self {
            Family::Complete(n) => {
                if n == 0 {
                    return Err(Error::InvalidParameter("complete(n) needs n >= 1".into()));
                }
                for u in 0..n {
                    edges.extend((u + 1..n).map(|v| (u, v)));
                }
                n
            }
            Family::CompleteBipartite(p, q) => {
                if p == 0 || q == 0 {
                    return Err(Error::InvalidParameter(
                        "complete_bipartite(p,q) needs p, q >= 1".into(),
                    ));
                }
                for u in 0..p {
                    edges.extend((0..q).map(|j| (u, p + j)));
                }
                p + q
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(Error::InvalidParameter("cycle(n) needs n >= 3".into()));
                }
                edges.extend((0..n).map(|i| (i, (i + 1) % n)));
                n
            }
            Family::Path(n) => {
                if n == 0 {
                    return Err(Error::InvalidParameter("path(n) needs n >= 1".into()));
                }
                edges.extend((1..n).map(|i| (i - 1, i)));
                n
            }
            Family::Petersen => {
                for i in 0..5 {
                    edges.push((i, (i + 1) % 5));
                    edges.push((i, i + 5));
                    edges.push((i + 5, (i + 2) % 5 + 5));
                }
                10
            }
            Family::Shrikhande => {
                let steps = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
                z4_cayley(&mut edges, |da, db| steps.contains(&(da, db)));
                16
            }
            Family::Rook4x4 => {
                z4_cayley(&mut edges, |da, db| (da == 0) != (db == 0));
                16
            }
        };
        Graph::new(n, edges)
    }
}

fn z4_cayley(edges: &mut Vec<(usize, usize)>, adjacent: impl Fn(usize, usize) -> bool) {
    for x in 0..16 {
        for y in x + 1..16 {
            let da = (y / 4 + 4 - x / 4) % 4;
            let db = (y % 4 + 4 - x % 4) % 4;
            if adjacent(da, db) {
                edges.push((x, y));
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "complete({n})"),
            Family::CompleteBipartite(p, q) => write!(f, "complete_bipartite({p},{q})"),
            Family::Cycle(n) => write!(f, "cycle({n})"),
            Family::Path(n) => write!(f, "path({n})"),
            Family::Petersen => f.write_str("petersen"),
            Family::Shrikhande => f.write_str("shrikhande"),
            Family::Rook4x4 => f.write_str("rook_4x4"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(open) => {
                let inner = s[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::UnknownFamily(s.to_string()))?;
                let args = inner
                    .split(',')
                    .map(|a| {
                        a.trim().parse::<usize>().map_err(|_| {
                            Error::InvalidParameter(format!("bad argument {a:?} in {s}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                (s[..open].trim(), args)
            }
            None => (s, Vec::new()),
        };
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} takes {k} argument(s), got {}",
                    args.len()
                )))
            }
        };
        match name {
            "complete" => arity(1).map(|_| Family::Complete(args[0])),
            "complete_bipartite" => arity(2).map(|_| Family::CompleteBipartite(args[0], args[1])),
            "cycle" => arity(1).map(|_| Family::Cycle(args[0])),
            "path" => arity(1).map(|_| Family::Path(args[0])),
            "petersen" => arity(0).map(|_| Family::Petersen),
            "shrikhande" => arity(0).map(|_| Family::Shrikhande),
            "rook_4x4" => arity(0).map(|_| Family::Rook4x4),
            _ => Err(Error::UnknownFamily(name.to_string())),
        }
    }
}

/// Builds a family graph from its textual name, e.g. `"complete_bipartite(3,3)"`.
pub fn family(name: &str) -> Result<Graph> {
    name.parse::<Family>()?.build()
}
