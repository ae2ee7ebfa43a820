//! Ground truth by exhaustive search over Hamiltonian cycles.
//!
//! Enumeration is backtracking over vertex orderings with the canonical form
//! baked in: start at vertex 0 and require the second vertex to be smaller
//! than the last, which visits each undirected cycle exactly once and halves
//! the work without hashing.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::gf2::{classify_set, Gf2Basis, Multisign, RealizationVerdict};
use crate::graph::{GraphError, HamiltonianCycle, MultisignedGraph, Vertex};

/// Largest n for exhaustive mode: 12!/2 cycles is still desk-scale.
pub const EXHAUSTIVE_CAP: usize = 13;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("n={0} exceeds the exhaustive cap {EXHAUSTIVE_CAP}")]
    RangeExceeded(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_range(n: usize) -> Result<(), OracleError> {
    if n < 3 {
        return Err(OracleError::Graph(GraphError::TooFewVertices(n)));
    }
    if n > EXHAUSTIVE_CAP {
        return Err(OracleError::RangeExceeded(n));
    }
    Ok(())
}

/// Visits every canonical Hamiltonian vertex order of `K_n` in
/// lexicographic order. The callback may break to stop early.
fn visit_orders<F>(n: usize, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    let mut path: Vec<Vertex> = Vec::with_capacity(n);
    path.push(0);
    let mut used = vec![false; n];
    used[0] = true;
    recurse(n, &mut path, &mut used, f)
}

fn recurse<F>(n: usize, path: &mut Vec<Vertex>, used: &mut [bool], f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    if path.len() == n {
        // Reflection pruning: keep the orientation with the smaller second vertex.
        if path[1] < path[n - 1] {
            return f(path);
        }
        return ControlFlow::Continue(());
    }
    for v in 1..n {
        if !used[v] {
            used[v] = true;
            path.push(v);
            recurse(n, path, used, f)?;
            path.pop();
            used[v] = false;
        }
    }
    ControlFlow::Continue(())
}

/// Streaming enumeration of all `(n-1)!/2` Hamiltonian cycles of `K_n`,
/// each in canonical form, in deterministic lexicographic order.
pub fn enumerate_hamiltonian(n: usize) -> Result<HamiltonianCycles, OracleError> {
    check_range(n)?;
    Ok(HamiltonianCycles::new(n))
}

/// Iterator state for the backtracking search.
pub struct HamiltonianCycles {
    n: usize,
    path: Vec<Vertex>,
    used: Vec<bool>,
    // Next candidate vertex to try at each depth.
    next: Vec<Vertex>,
    done: bool,
}

impl HamiltonianCycles {
    fn new(n: usize) -> Self {
        let mut used = vec![false; n];
        used[0] = true;
        let mut next = vec![1; n + 1];
        next[1] = 1;
        HamiltonianCycles { n, path: vec![0], used, next, done: false }
    }

    fn backtrack(&mut self) {
        if let Some(v) = self.path.pop() {
            if v != 0 {
                self.used[v] = false;
            }
        }
    }
}

impl Iterator for HamiltonianCycles {
    type Item = HamiltonianCycle;

    fn next(&mut self) -> Option<HamiltonianCycle> {
        if self.done {
            return None;
        }
        loop {
            let depth = self.path.len();
            if depth == self.n {
                let emit = self.path[1] < self.path[self.n - 1];
                let cycle = if emit {
                    Some(
                        HamiltonianCycle::new(self.path.clone(), self.n)
                            .expect("search paths are permutations"),
                    )
                } else {
                    None
                };
                self.backtrack();
                if let Some(c) = cycle {
                    return Some(c);
                }
                continue;
            }
            let mut candidate = self.next[depth];
            while candidate < self.n && self.used[candidate] {
                candidate += 1;
            }
            if candidate < self.n {
                self.next[depth] = candidate + 1;
                self.used[candidate] = true;
                self.path.push(candidate);
                self.next[depth + 1] = 1;
            } else {
                self.next[depth] = 1;
                self.backtrack();
                if self.path.is_empty() {
                    self.done = true;
                    return None;
                }
            }
        }
    }
}

/// Exact Hamiltonian cycle count of `K_n`, i.e. `(n-1)!/2`.
pub fn count_hamiltonian(n: usize) -> Result<u64, OracleError> {
    check_range(n)?;
    let mut count = 0u64;
    let _ = visit_orders(n, &mut |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    Ok(count)
}

/// The set `S(Sigma_n)` of multisigns of all Hamiltonian circles.
pub fn realized_multisigns(g: &MultisignedGraph) -> Result<BTreeSet<Multisign>, OracleError> {
    check_range(g.n())?;
    let n = g.n();
    let mut set = BTreeSet::new();
    let _ = visit_orders(n, &mut |order| {
        let mut acc = g.sigma(order[n - 1], order[0]);
        for w in order.windows(2) {
            acc = acc + g.sigma(w[0], w[1]);
        }
        set.insert(acc);
        ControlFlow::Continue(())
    });
    Ok(set)
}

/// `realized_multisigns` without the range cap, for callers who accept the
/// factorial cost explicitly.
pub fn realized_multisigns_unbounded(
    g: &MultisignedGraph,
) -> Result<BTreeSet<Multisign>, OracleError> {
    if g.n() < 3 {
        return Err(OracleError::Graph(GraphError::TooFewVertices(g.n())));
    }
    let n = g.n();
    let mut set = BTreeSet::new();
    let _ = visit_orders(n, &mut |order| {
        let mut acc = g.sigma(order[n - 1], order[0]);
        for w in order.windows(2) {
            acc = acc + g.sigma(w[0], w[1]);
        }
        set.insert(acc);
        ControlFlow::Continue(())
    });
    Ok(set)
}

/// Early-exit search for a Hamiltonian cycle with multisign `target`.
///
/// No range cap: the search stops at the first witness, though a miss still
/// costs the full enumeration.
pub fn find_with_multisign(
    g: &MultisignedGraph,
    target: Multisign,
) -> Result<Option<HamiltonianCycle>, OracleError> {
    if g.n() < 3 {
        return Err(OracleError::Graph(GraphError::TooFewVertices(g.n())));
    }
    if target.dim() != g.dim() {
        return Err(OracleError::Graph(GraphError::DimensionMismatch(
            target.dim(),
            g.dim(),
        )));
    }
    let n = g.n();
    let mut found = None;
    let _ = visit_orders(n, &mut |order| {
        let mut acc = g.sigma(order[n - 1], order[0]);
        for w in order.windows(2) {
            acc = acc + g.sigma(w[0], w[1]);
        }
        if acc == target {
            found = Some(
                HamiltonianCycle::new(order.to_vec(), n).expect("search paths are permutations"),
            );
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(found)
}

/// Basis of the sigma-image of the cycle space.
///
/// Triangles through one fixed vertex generate the cycle space of `K_n`, so
/// the span of their multisigns is the whole image.
pub fn cycle_space_image(g: &MultisignedGraph) -> Result<Gf2Basis, OracleError> {
    if g.n() < 3 {
        return Err(OracleError::Graph(GraphError::TooFewVertices(g.n())));
    }
    let mut basis = Gf2Basis::empty(g.dim());
    for u in 1..g.n() {
        for v in (u + 1)..g.n() {
            basis.insert(g.triangle_multisign(0, u, v));
            if basis.is_full() {
                return Ok(basis);
            }
        }
    }
    Ok(basis)
}

/// Classifies `S(Sigma_n)` by full enumeration.
pub fn classify_realized(g: &MultisignedGraph) -> Result<RealizationVerdict, OracleError> {
    let set = realized_multisigns(g)?;
    classify_set(&set, g.dim()).map_err(|_| OracleError::Graph(GraphError::TooFewVertices(g.n())))
}
