//! Plumbing graphs of graph manifolds, possibly with boundary.
//!
//! Vertices carry an Euler number and a genus, edges are plumbings and every
//! arrow marks one boundary torus. Only forests are modelled.
//!
//! Boundary framing of an arrow `a` at vertex `v`: `μ_a` is the meridian of
//! the removed fibre neighbourhood and `λ_a` is the fibre of `v`. In the
//! first homology presentation `[μ_a]` is its own generator and `[λ_a] = t_v`.
//! A slope `(p, q)` is the curve `p·μ_a + q·λ_a`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::zlattice::{cokernel, AbelianGroup, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    EdgeOutOfRange {
        edge: (usize, usize),
        vertices: usize,
    },
    SelfLoop {
        vertex: usize,
    },
    /// The edge closes a cycle (this includes repeated edges).
    Cycle {
        edge: (usize, usize),
    },
    ArrowOutOfRange {
        label: String,
        vertex: usize,
    },
    DuplicateLabel {
        label: String,
    },
    UnknownArrow {
        label: String,
    },
    /// The operation needs a closed graph.
    ArrowsPresent {
        count: usize,
    },
    InvalidSlope {
        p: i64,
        q: i64,
    },
    NoSuchEdge {
        edge: (usize, usize),
    },
    VertexOutOfRange {
        vertex: usize,
    },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::EdgeOutOfRange { edge, vertices } => write!(
                f,
                "edge ({}, {}) refers to a vertex outside 0..{vertices}",
                edge.0, edge.1
            ),
            GraphError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            GraphError::Cycle { edge } => write!(
                f,
                "edge ({}, {}) closes a cycle; only trees are supported",
                edge.0, edge.1
            ),
            GraphError::ArrowOutOfRange { label, vertex } => {
                write!(f, "arrow {label:?} sits on missing vertex {vertex}")
            }
            GraphError::DuplicateLabel { label } => write!(f, "duplicate arrow label {label:?}"),
            GraphError::UnknownArrow { label } => write!(f, "no arrow labelled {label:?}"),
            GraphError::ArrowsPresent { count } => {
                write!(
                    f,
                    "graph has {count} boundary arrow(s); a closed graph is required"
                )
            }
            GraphError::InvalidSlope { p, q } => {
                write!(f, "slope ({p}, {q}) is not a primitive vector")
            }
            GraphError::NoSuchEdge { edge } => write!(f, "no edge ({}, {})", edge.0, edge.1),
            GraphError::VertexOutOfRange { vertex } => write!(f, "no vertex {vertex}"),
        }
    }
}

impl core::error::Error for GraphError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub euler: i64,
    pub genus: u32,
}

impl Vertex {
    pub fn new(euler: i64, genus: u32) -> Self {
        Vertex { euler, genus }
    }

    /// Genus-0 vertex.
    pub fn sphere(euler: i64) -> Self {
        Vertex { euler, genus: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub vertex: usize,
    pub label: String,
}

impl Arrow {
    pub fn new(vertex: usize, label: impl Into<String>) -> Self {
        Arrow {
            vertex,
            label: label.into(),
        }
    }
}

/// Primitive curve `p·μ + q·λ` on a boundary torus, up to orientation.
///
/// Normalized so that `p >= 0`, and `q > 0` when `p == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self, GraphError> {
        if p.gcd(&q) != 1 {
            return Err(GraphError::InvalidSlope { p, q });
        }
        let (p, q) = if p < 0 || (p == 0 && q < 0) {
            (-p, -q)
        } else {
            (p, q)
        };
        Ok(Slope { p, q })
    }

    /// The boundary meridian `μ`.
    pub fn meridian() -> Self {
        Slope { p: 1, q: 0 }
    }

    /// The fibre `λ`.
    pub fn fiber() -> Self {
        Slope { p: 0, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

/// Negative continued fraction `num/den = b_1 - 1/(b_2 - 1/(... - 1/b_k))`
/// with `b_i >= 2` for `i >= 2`. `den` must be positive.
pub fn negative_continued_fraction(num: i64, den: i64) -> Vec<i64> {
    assert!(den > 0, "denominator must be positive");
    let (mut n, mut d) = (i128::from(num), i128::from(den));
    let mut out = Vec::new();
    loop {
        // ceiling division
        let b = -((-n).div_euclid(d));
        out.push(b as i64);
        let r = b * d - n;
        if r == 0 {
            return out;
        }
        (n, d) = (d, r);
    }
}

/// Generator of the H_1 presentation of a plumbing graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `t_v`, the fibre class of vertex `v`.
    Vertex(usize),
    /// `μ_a` for the arrow with the given index.
    Meridian(usize),
    /// One of the `2 g_v` free symbols of a vertex of positive genus.
    Genus { vertex: usize, index: u32 },
}

/// Generator indices of the framing curves of one arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArrowFraming {
    pub label: String,
    pub meridian: usize,
    pub parallel: usize,
}

/// Presentation of `H_1` of a plumbed manifold: relation columns over the
/// listed generators, plus the boundary framing of every arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Presentation {
    pub generators: Vec<Generator>,
    pub relations: IntMatrix,
    pub framings: Vec<ArrowFraming>,
}

impl H1Presentation {
    pub fn group(&self) -> AbelianGroup {
        cokernel(&self.relations)
    }

    /// Coefficient vector of `p·μ_a + q·λ_a` over the generators.
    pub fn curve_class(&self, arrow: usize, p: i64, q: i64) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.generators.len()];
        let fr = &self.framings[arrow];
        v[fr.meridian] += p;
        v[fr.parallel] += q;
        v
    }
}

/// Outcome of the move-subset simplification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub graph: PlumbingGraph,
    /// Split-off `S³` summands.
    pub s3_components: usize,
    /// Vertex indices refer to the input graph.
    pub moves: Vec<Move>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Blow-down of a `±1` sphere of valence 1 or 2.
    BlowDown {
        vertex: usize,
        weight: i64,
        neighbors: Vec<usize>,
    },
    /// An isolated `±1` sphere is a lens space `L(1, 1) = S³`.
    DeleteIsolated { vertex: usize, weight: i64 },
    /// A component made of two adjacent `0` spheres is `S³`.
    ZeroChain { vertices: [usize; 2] },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum S3Verdict {
    Yes,
    No,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlowUpSite {
    /// New leaf hanging off the vertex.
    Vertex(usize),
    /// New vertex subdividing the edge.
    Edge(usize, usize),
    /// New isolated vertex.
    Isolated,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    arrows: Vec<Arrow>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl PlumbingGraph {
    /// Validates and canonicalizes: every edge is stored as `(min, max)` and
    /// the edge list is sorted.
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        arrows: Vec<Arrow>,
    ) -> Result<Self, GraphError> {
        let n = vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        let mut canon = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(GraphError::EdgeOutOfRange {
                    edge: (a, b),
                    vertices: n,
                });
            }
            if a == b {
                return Err(GraphError::SelfLoop { vertex: a });
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(GraphError::Cycle { edge: (a, b) });
            }
            parent[ra] = rb;
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        let mut labels = BTreeSet::new();
        for arrow in &arrows {
            if arrow.vertex >= n {
                return Err(GraphError::ArrowOutOfRange {
                    label: arrow.label.clone(),
                    vertex: arrow.vertex,
                });
            }
            if !labels.insert(arrow.label.as_str()) {
                return Err(GraphError::DuplicateLabel {
                    label: arrow.label.clone(),
                });
            }
        }
        Ok(PlumbingGraph {
            vertices,
            edges: canon,
            arrows,
        })
    }

    pub fn empty() -> Self {
        PlumbingGraph::default()
    }

    /// Linear chain of spheres with the given weights.
    pub fn chain(weights: &[i64]) -> Self {
        let vertices = weights.iter().map(|&e| Vertex::sphere(e)).collect();
        let edges = (1..weights.len()).map(|i| (i - 1, i)).collect();
        PlumbingGraph::new(vertices, edges, Vec::new()).expect("a chain is a tree")
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_closed(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Component index of every vertex; components are numbered in order of
    /// their smallest vertex.
    pub fn vertex_components(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut next = 0;
        for start in 0..self.vertices.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.vertex_components()
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    /// Connected components as separate graphs, arrows included. Vertices
    /// keep their relative order.
    pub fn components(&self) -> Vec<PlumbingGraph> {
        let comp = self.vertex_components();
        let count = comp.iter().max().map_or(0, |m| m + 1);
        let mut local = vec![0; self.vertices.len()];
        let mut parts: Vec<PlumbingGraph> = vec![PlumbingGraph::empty(); count];
        for (v, &c) in comp.iter().enumerate() {
            local[v] = parts[c].vertices.len();
            parts[c].vertices.push(self.vertices[v]);
        }
        for &(a, b) in &self.edges {
            parts[comp[a]].edges.push((local[a], local[b]));
        }
        for arrow in &self.arrows {
            parts[comp[arrow.vertex]]
                .arrows
                .push(Arrow::new(local[arrow.vertex], arrow.label.clone()));
        }
        for p in &mut parts {
            p.edges.sort_unstable();
        }
        parts
    }

    /// Euler numbers on the diagonal, 1 for every edge.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let n = self.vertices.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, v) in self.vertices.iter().enumerate() {
            m[(i, i)] = BigInt::from(v.euler);
        }
        for &(a, b) in &self.edges {
            m[(a, b)] += 1;
            m[(b, a)] += 1;
        }
        m
    }

    /// Generators `t_v`, then `μ_a`, then genus symbols. One relation per
    /// vertex: `e_v t_v + Σ_{w~v} t_w + Σ_{a at v} μ_a = 0`.
    pub fn h1_presentation(&self) -> H1Presentation {
        let n = self.vertices.len();
        let mut generators: Vec<Generator> = (0..n).map(Generator::Vertex).collect();
        generators.extend((0..self.arrows.len()).map(Generator::Meridian));
        for (v, vert) in self.vertices.iter().enumerate() {
            generators
                .extend((0..2 * vert.genus).map(|index| Generator::Genus { vertex: v, index }));
        }
        let mut relations = IntMatrix::zeros(generators.len(), n);
        for (v, vert) in self.vertices.iter().enumerate() {
            relations[(v, v)] = BigInt::from(vert.euler);
        }
        for &(a, b) in &self.edges {
            relations[(a, b)] += 1;
            relations[(b, a)] += 1;
        }
        for (i, arrow) in self.arrows.iter().enumerate() {
            relations[(n + i, arrow.vertex)] += 1;
        }
        let framings = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, arrow)| ArrowFraming {
                label: arrow.label.clone(),
                meridian: n + i,
                parallel: arrow.vertex,
            })
            .collect();
        H1Presentation {
            generators,
            relations,
            framings,
        }
    }

    pub fn h1(&self) -> AbelianGroup {
        self.h1_presentation().group()
    }

    /// Dehn filling of the boundary torus of `arrow` so that the slope bounds.
    ///
    /// The arrow is replaced by a chain of spheres read off the negative
    /// continued fraction of `-p/q`; the chain imposes exactly the relation
    /// `p·μ + q·λ = 0`. The fibre slope gives a single `0` sphere and the
    /// meridian slope just deletes the arrow.
    pub fn dehn_fill(&self, arrow: &str, slope: Slope) -> Result<PlumbingGraph, GraphError> {
        let idx = self
            .arrow_index(arrow)
            .ok_or_else(|| GraphError::UnknownArrow {
                label: arrow.into(),
            })?;
        let anchor = self.arrows[idx].vertex;
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        let mut arrows = self.arrows.clone();
        arrows.remove(idx);
        let (p, q) = (slope.p(), slope.q());
        if q != 0 {
            let (num, den) = if q > 0 { (-p, q) } else { (p, -q) };
            let mut prev = anchor;
            for b in negative_continued_fraction(num, den) {
                let id = vertices.len();
                vertices.push(Vertex::sphere(-b));
                edges.push((prev, id));
                prev = id;
            }
        }
        PlumbingGraph::new(vertices, edges, arrows)
    }

    /// Inverse of a blow-down: inserts a `±1` sphere at `site`.
    pub fn blow_up(&self, site: BlowUpSite, positive: bool) -> Result<PlumbingGraph, GraphError> {
        let eps: i64 = if positive { 1 } else { -1 };
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        let new = vertices.len();
        vertices.push(Vertex::sphere(eps));
        match site {
            BlowUpSite::Isolated => {}
            BlowUpSite::Vertex(v) => {
                if v >= new {
                    return Err(GraphError::VertexOutOfRange { vertex: v });
                }
                vertices[v].euler += eps;
                edges.push((v, new));
            }
            BlowUpSite::Edge(a, b) => {
                let pos = edges
                    .iter()
                    .position(|&e| e == (a.min(b), a.max(b)))
                    .ok_or(GraphError::NoSuchEdge { edge: (a, b) })?;
                edges.remove(pos);
                vertices[a].euler += eps;
                vertices[b].euler += eps;
                edges.push((a, new));
                edges.push((new, b));
            }
        }
        PlumbingGraph::new(vertices, edges, self.arrows.clone())
    }

    /// Applies blow-downs of `±1` spheres of valence at most 2, removes
    /// isolated `±1` spheres and `(0, 0)` chains (recording an `S³` each)
    /// until nothing applies. The lowest-indexed applicable vertex goes first.
    pub fn reduce(&self) -> Result<Reduction, GraphError> {
        if !self.is_closed() {
            return Err(GraphError::ArrowsPresent {
                count: self.arrows.len(),
            });
        }
        let n = self.vertices.len();
        let mut euler: Vec<i64> = self.vertices.iter().map(|v| v.euler).collect();
        let mut alive = vec![true; n];
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let sphere = |v: usize| self.vertices[v].genus == 0;
        let mut moves = Vec::new();
        let mut s3_components = 0;

        loop {
            let mut applied = None;
            for v in (0..n).filter(|&v| alive[v] && sphere(v)) {
                let e = euler[v];
                let deg = adj[v].len();
                if e.abs() == 1 && deg == 0 {
                    applied = Some(Move::DeleteIsolated {
                        vertex: v,
                        weight: e,
                    });
                } else if e.abs() == 1 && deg <= 2 {
                    applied = Some(Move::BlowDown {
                        vertex: v,
                        weight: e,
                        neighbors: adj[v].iter().copied().collect(),
                    });
                } else if e == 0 && deg == 1 {
                    let w = *adj[v].first().expect("valence 1");
                    if sphere(w) && euler[w] == 0 && adj[w].len() == 1 {
                        applied = Some(Move::ZeroChain { vertices: [v, w] });
                    }
                }
                if applied.is_some() {
                    break;
                }
            }
            let Some(mv) = applied else { break };
            match &mv {
                Move::DeleteIsolated { vertex, .. } => {
                    alive[*vertex] = false;
                    s3_components += 1;
                }
                Move::ZeroChain { vertices: [a, b] } => {
                    alive[*a] = false;
                    alive[*b] = false;
                    adj[*a].clear();
                    adj[*b].clear();
                    s3_components += 1;
                }
                Move::BlowDown {
                    vertex,
                    weight,
                    neighbors,
                } => {
                    for &w in neighbors {
                        euler[w] -= weight;
                        adj[w].remove(vertex);
                    }
                    if let [a, b] = neighbors[..] {
                        adj[a].insert(b);
                        adj[b].insert(a);
                    }
                    adj[*vertex].clear();
                    alive[*vertex] = false;
                }
            }
            moves.push(mv);
        }

        let mut index = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for v in (0..n).filter(|&v| alive[v]) {
            index[v] = vertices.len();
            vertices.push(Vertex::new(euler[v], self.vertices[v].genus));
        }
        let mut edges = Vec::new();
        for v in (0..n).filter(|&v| alive[v]) {
            for &w in adj[v].iter().filter(|&&w| w > v) {
                edges.push((index[v], index[w]));
            }
        }
        let graph = PlumbingGraph::new(vertices, edges, Vec::new())
            .expect("blow-downs keep the graph a forest");
        debug_assert_eq!(self.h1(), graph.h1(), "reduction changed H_1");
        Ok(Reduction {
            graph,
            s3_components,
            moves,
        })
    }

    /// Sufficient test for `S³`: trivial `H_1`, connected, and the move
    /// subset reduces it to a single recorded `S³`.
    pub fn is_s3_certificate(&self) -> Result<S3Verdict, GraphError> {
        if !self.is_closed() {
            return Err(GraphError::ArrowsPresent {
                count: self.arrows.len(),
            });
        }
        if !self.h1().is_trivial() || self.component_count() != 1 {
            return Ok(S3Verdict::No);
        }
        let r = self.reduce()?;
        Ok(if r.graph.vertex_count() == 0 && r.s3_components == 1 {
            S3Verdict::Yes
        } else {
            S3Verdict::Undetermined
        })
    }
}
