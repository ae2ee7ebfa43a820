//! The multisigned complete graph and its label calculus.
//!
//! Edge labels live in a flat triangular table, so lookups are O(1) and the
//! census scans stay cache-friendly. Graphs are immutable once built; every
//! operation returns a new graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::gf2::Multisign;

pub type Vertex = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for n={1}")]
    BadVertex(Vertex, usize),
    #[error("vertex count {0} below minimum 3")]
    TooFewVertices(usize),
    #[error("edge set is not a disjoint union of cycles: vertex {0} has degree {1}")]
    NotACycle(Vertex, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("vertex order is not a Hamiltonian cycle")]
    BadOrder,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Normalizes an unordered vertex pair to `(min, max)`.
pub fn edge(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    assert_ne!(u, v, "no self-loops in K_n");
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A set of unordered edges, used for cycle subgraphs and symmetric
/// differences.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeSet {
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet::default()
    }

    pub fn from_edges(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut set = EdgeSet::new();
        for (u, v) in pairs {
            set.insert(u, v);
        }
        set
    }

    /// The triangle on three distinct vertices.
    pub fn triangle(a: Vertex, b: Vertex, c: Vertex) -> Self {
        EdgeSet::from_edges([(a, b), (b, c), (a, c)])
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex) -> bool {
        self.edges.insert(edge(u, v))
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&edge(u, v))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    /// Edges in exactly one of the two sets. Shared edges cancel, so the
    /// multisign of the result is the sum of the two multisigns.
    pub fn symmetric_difference(&self, other: &EdgeSet) -> EdgeSet {
        let edges = self
            .edges
            .symmetric_difference(&other.edges)
            .copied()
            .collect();
        EdgeSet { edges }
    }

    pub fn degrees(&self) -> BTreeMap<Vertex, usize> {
        let mut deg = BTreeMap::new();
        for (u, v) in self.iter() {
            *deg.entry(u).or_insert(0) += 1;
            *deg.entry(v).or_insert(0) += 1;
        }
        deg
    }

    /// True iff every incident vertex has degree exactly 2.
    pub fn is_cycle_subgraph(&self) -> bool {
        !self.is_empty() && self.degrees().values().all(|&d| d == 2)
    }

    /// Number of connected components among incident vertices.
    pub fn component_count(&self) -> usize {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for (u, v) in self.iter() {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        let mut components = 0;
        for &start in adj.keys() {
            if seen.contains(&start) {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !seen.insert(v) {
                    continue;
                }
                stack.extend(adj[&v].iter().copied());
            }
        }
        components
    }
}

/// A Hamiltonian cycle in canonical form: starts at vertex 0 and the second
/// vertex is the smaller of the two neighbors of 0, so each undirected cycle
/// has exactly one representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HamiltonianCycle {
    order: Vec<Vertex>,
}

impl HamiltonianCycle {
    /// Canonicalizes a vertex order; errors unless it is a permutation of
    /// `0..n` with `n >= 3`.
    pub fn new(order: Vec<Vertex>, n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooFewVertices(n));
        }
        if order.len() != n {
            return Err(GraphError::BadOrder);
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(GraphError::BadOrder);
            }
            seen[v] = true;
        }
        let start = order.iter().position(|&v| v == 0).expect("0 is present");
        let mut rotated: Vec<Vertex> = Vec::with_capacity(n);
        rotated.extend_from_slice(&order[start..]);
        rotated.extend_from_slice(&order[..start]);
        if rotated[1] > rotated[n - 1] {
            rotated[1..].reverse();
        }
        Ok(HamiltonianCycle { order: rotated })
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// The n edges of the cycle, consecutive pairs plus the closing pair.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.order.len();
        (0..n).map(move |i| edge(self.order[i], self.order[(i + 1) % n]))
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet::from_edges(self.edges())
    }
}

/// A per-vertex multisign assignment used for switching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchingFunction {
    values: Vec<Multisign>,
}

impl SwitchingFunction {
    pub fn new(values: Vec<Multisign>) -> Self {
        assert!(!values.is_empty());
        let m = values[0].dim();
        assert!(values.iter().all(|v| v.dim() == m));
        SwitchingFunction { values }
    }

    pub fn identity(n: usize, m: usize) -> Self {
        SwitchingFunction { values: vec![Multisign::zero(m); n] }
    }

    pub fn get(&self, v: Vertex) -> Multisign {
        self.values[v]
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// The multisigned complete graph `(K_n, sigma, F_2^m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisignedGraph {
    n: usize,
    m: usize,
    labels: Vec<Multisign>,
}

fn tri_index(u: Vertex, v: Vertex) -> usize {
    let (u, v) = edge(u, v);
    v * (v - 1) / 2 + u
}

impl MultisignedGraph {
    /// All-identity labels.
    pub fn identity(n: usize, m: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooFewVertices(n));
        }
        Ok(MultisignedGraph {
            n,
            m,
            labels: vec![Multisign::zero(m); n * (n - 1) / 2],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn sigma(&self, u: Vertex, v: Vertex) -> Multisign {
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.labels[tri_index(u, v)]
    }

    pub fn set_sigma(&mut self, u: Vertex, v: Vertex, x: Multisign) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        assert_eq!(x.dim(), self.m, "label dimension mismatch");
        self.labels[tri_index(u, v)] = x;
    }

    /// XOR of sigma over an arbitrary edge list (edges must be valid pairs).
    pub fn sum_over(&self, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Multisign {
        let mut acc = Multisign::zero(self.m);
        for (u, v) in edges {
            acc = acc + self.sigma(u, v);
        }
        acc
    }

    /// Multisign of a cycle subgraph; errors if some vertex has degree != 2.
    pub fn cycle_multisign(&self, c: &EdgeSet) -> Result<Multisign, GraphError> {
        for (u, v) in c.iter() {
            if u >= self.n || v >= self.n {
                return Err(GraphError::BadVertex(u.max(v), self.n));
            }
        }
        if let Some((&v, &d)) = c.degrees().iter().find(|(_, &d)| d != 2) {
            return Err(GraphError::NotACycle(v, d));
        }
        Ok(self.sum_over(c.iter()))
    }

    pub fn ham_multisign(&self, h: &HamiltonianCycle) -> Multisign {
        assert_eq!(h.n(), self.n, "cycle does not cover this graph");
        self.sum_over(h.edges())
    }

    pub fn triangle_multisign(&self, a: Vertex, b: Vertex, c: Vertex) -> Multisign {
        self.sum_over([(a, b), (b, c), (a, c)])
    }

    /// Switched graph: sigma'({u,v}) = s(u) + sigma({u,v}) + s(v).
    pub fn switch(&self, s: &SwitchingFunction) -> MultisignedGraph {
        assert_eq!(s.values.len(), self.n, "switching not total on V");
        assert_eq!(s.values[0].dim(), self.m);
        let mut g = self.clone();
        for v in 1..self.n {
            for u in 0..v {
                g.labels[tri_index(u, v)] = s.get(u) + self.sigma(u, v) + s.get(v);
            }
        }
        g
    }

    /// Switches so every edge at `v` carries the identity; returns the
    /// switched graph and the switching used.
    pub fn normalize_vertex(&self, v: Vertex) -> (MultisignedGraph, SwitchingFunction) {
        assert!(v < self.n, "vertex out of range");
        let mut values = vec![Multisign::zero(self.m); self.n];
        for (u, value) in values.iter_mut().enumerate() {
            if u != v {
                *value = self.sigma(u, v);
            }
        }
        let s = SwitchingFunction::new(values);
        (self.switch(&s), s)
    }

    /// Shifts every edge label by `x` (the graph `Sigma_n^x`).
    pub fn add_constant(&self, x: Multisign) -> MultisignedGraph {
        assert_eq!(x.dim(), self.m, "shift dimension mismatch");
        let mut g = self.clone();
        for label in &mut g.labels {
            *label = *label + x;
        }
        g
    }

    /// Counts triangles per multisign: eta(x) over all C(n,3) triples.
    pub fn triangle_census(&self) -> BTreeMap<Multisign, u64> {
        let mut census = BTreeMap::new();
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                let ab = self.sigma(a, b);
                for c in (b + 1)..self.n {
                    let t = ab + self.sigma(b, c) + self.sigma(a, c);
                    *census.entry(t).or_insert(0) += 1;
                }
            }
        }
        census
    }

    /// Parses the line-oriented instance format:
    /// `msg <n> <m>` header, then `u v <bitstring>` per edge (u < v),
    /// `#` comments, missing edges default to the identity.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut graph: Option<MultisignedGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match graph {
                None => {
                    if fields.len() != 3 || fields[0] != "msg" {
                        return Err(GraphError::Parse {
                            line: line_no,
                            msg: "expected header `msg <n> <m>`".to_string(),
                        });
                    }
                    let n: usize = fields[1].parse().map_err(|_| GraphError::Parse {
                        line: line_no,
                        msg: format!("bad vertex count {:?}", fields[1]),
                    })?;
                    let m: usize = fields[2].parse().map_err(|_| GraphError::Parse {
                        line: line_no,
                        msg: format!("bad dimension {:?}", fields[2]),
                    })?;
                    if n < 3 {
                        return Err(GraphError::Parse {
                            line: line_no,
                            msg: format!("vertex count {n} below minimum 3"),
                        });
                    }
                    if !(1..=crate::gf2::MAX_DIM).contains(&m) {
                        return Err(GraphError::Parse {
                            line: line_no,
                            msg: format!("dimension {m} out of range"),
                        });
                    }
                    graph = Some(MultisignedGraph::identity(n, m)?);
                }
                Some(ref mut g) => {
                    if fields.len() != 3 {
                        return Err(GraphError::Parse {
                            line: line_no,
                            msg: "expected `u v <bitstring>`".to_string(),
                        });
                    }
                    let u: usize = fields[0].parse().map_err(|_| GraphError::Parse {
                        line: line_no,
                        msg: format!("bad vertex {:?}", fields[0]),
                    })?;
                    let v: usize = fields[1].parse().map_err(|_| GraphError::Parse {
                        line: line_no,
                        msg: format!("bad vertex {:?}", fields[1]),
                    })?;
                    if u == v || u >= g.n || v >= g.n {
                        return Err(GraphError::Parse {
                            line: line_no,
                            msg: format!("bad edge {u} {v} for n={}", g.n),
                        });
                    }
                    let x: Multisign = fields[2].parse().map_err(|_| GraphError::Parse {
                        line: line_no,
                        msg: format!("bad multisign {:?}", fields[2]),
                    })?;
                    if x.dim() != g.m {
                        return Err(GraphError::Parse {
                            line: line_no,
                            msg: format!("multisign width {} != m={}", x.dim(), g.m),
                        });
                    }
                    g.set_sigma(u, v, x);
                }
            }
        }
        graph.ok_or(GraphError::Parse { line: 0, msg: "empty instance".to_string() })
    }

    /// Canonical text form; identity-labeled edges are omitted, so
    /// parse . format is the identity on canonical files.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "msg {} {}", self.n, self.m).unwrap();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let x = self.sigma(u, v);
                if !x.is_zero() {
                    writeln!(out, "{u} {v} {x}").unwrap();
                }
            }
        }
        out
    }
}
