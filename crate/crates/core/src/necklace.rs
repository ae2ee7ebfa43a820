//! Covering C4-necklaces and the constructive realization of target
//! multisigns.
//!
//! A necklace is a closed chain of squares (4-cycles) and paths covering all
//! vertices. Components attach in two ways: a square junction may coincide
//! with a path endpoint or a junction of another square (a shared vertex),
//! or two attachment vertices may be joined by an explicit bridge edge
//! (a `link` record). Bridge edges belong to the assembled Hamiltonian
//! cycle, so their labels are counted once in the fixed-part sum `h`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::gf2::{solve_combination, Multisign};
use crate::graph::{edge, GraphError, HamiltonianCycle, MultisignedGraph, Vertex};

/// A 4-cycle `a-b-c-d` with junctions at the opposite pair `(a, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Square {
    verts: [Vertex; 4],
}

impl Square {
    pub fn new(a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> Self {
        Square { verts: [a, b, c, d] }
    }

    pub fn verts(&self) -> [Vertex; 4] {
        self.verts
    }

    /// The two opposite attachment vertices.
    pub fn junctions(&self) -> (Vertex, Vertex) {
        (self.verts[0], self.verts[2])
    }

    pub fn interior(&self) -> (Vertex, Vertex) {
        (self.verts[1], self.verts[3])
    }

    /// The four cycle edges.
    pub fn edges(&self) -> [(Vertex, Vertex); 4] {
        let [a, b, c, d] = self.verts;
        [edge(a, b), edge(b, c), edge(c, d), edge(d, a)]
    }

    /// Multisign of the 4-cycle.
    pub fn multisign(&self, g: &MultisignedGraph) -> Multisign {
        g.sum_over(self.edges())
    }
}

/// A vertex-simple path; a single vertex is a degenerate path of length 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecklacePath {
    verts: Vec<Vertex>,
}

impl NecklacePath {
    pub fn new(verts: Vec<Vertex>) -> Self {
        assert!(!verts.is_empty(), "a path has at least one vertex");
        NecklacePath { verts }
    }

    pub fn verts(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.verts[0], *self.verts.last().expect("nonempty"))
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.verts.windows(2).map(|w| edge(w[0], w[1]))
    }

    pub fn multisign(&self, g: &MultisignedGraph) -> Multisign {
        g.sum_over(self.edges())
    }
}

/// Squares plus paths plus explicit bridge links, intended to form a closed
/// covering chain. Validation derives shared-vertex attachments
/// automatically; `links` only lists bridge edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoveringNecklace {
    pub squares: Vec<Square>,
    pub paths: Vec<NecklacePath>,
    pub links: Vec<(Vertex, Vertex)>,
}

/// One attachment slot: a square junction or a path endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Junction { square: usize, side: usize },
    PathEnd { path: usize, end: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Square(usize),
    Path(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkKind {
    /// The exit vertex of one component is the entry vertex of the next.
    Shared,
    /// An explicit edge joins the exit vertex to the next entry vertex.
    Bridge(Vertex, Vertex),
}

/// One component of the chain in traversal order.
#[derive(Debug, Clone)]
pub struct ChainStep {
    pub component: Component,
    /// Which attachment slot the traversal enters through (0 or 1).
    pub entry: usize,
    /// How the exit slot connects to the next step's entry slot.
    pub outgoing: LinkKind,
}

/// A validated traversal order around the necklace.
#[derive(Debug, Clone)]
pub struct ChainPlan {
    pub steps: Vec<ChainStep>,
}

/// A structured report naming the first violated necklace condition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("necklace condition {condition} violated: {detail}")]
pub struct Violation {
    /// 1 = attachment rule, 2 = closed chain, 3 = vertex cover;
    /// 0 = malformed component.
    pub condition: u8,
    pub detail: String,
}

fn violation(condition: u8, detail: impl Into<String>) -> Violation {
    Violation { condition, detail: detail.into() }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NecklaceError {
    #[error(transparent)]
    Invalid(#[from] Violation),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl CoveringNecklace {
    /// Checks the three covering-necklace conditions against a graph on `n`
    /// vertices and returns the chain traversal order.
    pub fn validate(&self, n: usize) -> Result<ChainPlan, Violation> {
        if self.squares.is_empty() {
            return Err(violation(2, "necklace has no squares"));
        }
        for (i, sq) in self.squares.iter().enumerate() {
            let vs = sq.verts();
            if vs.iter().any(|&v| v >= n) {
                return Err(violation(0, format!("square {i} has a vertex outside 0..{n}")));
            }
            for a in 0..4 {
                for b in (a + 1)..4 {
                    if vs[a] == vs[b] {
                        return Err(violation(0, format!("square {i} repeats vertex {}", vs[a])));
                    }
                }
            }
        }
        for (k, p) in self.paths.iter().enumerate() {
            let vs = p.verts();
            if vs.iter().any(|&v| v >= n) {
                return Err(violation(0, format!("path {k} has a vertex outside 0..{n}")));
            }
            let mut sorted = vs.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != vs.len() {
                return Err(violation(0, format!("path {k} repeats a vertex")));
            }
        }

        // Where each vertex occurs, and which occurrences are attachable.
        #[derive(Clone, Copy)]
        struct Occurrence {
            component: Component,
            slot: Option<Slot>,
        }
        let mut occ: BTreeMap<Vertex, Vec<Occurrence>> = BTreeMap::new();
        for (i, sq) in self.squares.iter().enumerate() {
            let (j0, j1) = sq.junctions();
            let (b, d) = sq.interior();
            occ.entry(j0).or_default().push(Occurrence {
                component: Component::Square(i),
                slot: Some(Slot::Junction { square: i, side: 0 }),
            });
            occ.entry(j1).or_default().push(Occurrence {
                component: Component::Square(i),
                slot: Some(Slot::Junction { square: i, side: 1 }),
            });
            for v in [b, d] {
                occ.entry(v)
                    .or_default()
                    .push(Occurrence { component: Component::Square(i), slot: None });
            }
        }
        for (k, p) in self.paths.iter().enumerate() {
            let vs = p.verts();
            if vs.len() == 1 {
                // A degenerate path exposes both ends at its only vertex;
                // both await bridge links.
                for end in [0, 1] {
                    occ.entry(vs[0]).or_default().push(Occurrence {
                        component: Component::Path(k),
                        slot: Some(Slot::PathEnd { path: k, end }),
                    });
                }
                continue;
            }
            for (pos, &v) in vs.iter().enumerate() {
                let slot = if pos == 0 {
                    Some(Slot::PathEnd { path: k, end: 0 })
                } else if pos == vs.len() - 1 {
                    Some(Slot::PathEnd { path: k, end: 1 })
                } else {
                    None
                };
                occ.entry(v)
                    .or_default()
                    .push(Occurrence { component: Component::Path(k), slot });
            }
        }

        // Condition 3: every vertex covered.
        for v in 0..n {
            if !occ.contains_key(&v) {
                return Err(violation(3, format!("vertex {v} is not covered")));
            }
        }

        // Shared-vertex attachments; condition 1 limits who may share.
        let mut matches: Vec<(Slot, Slot, LinkKind)> = Vec::new();
        let mut matched: Vec<Slot> = Vec::new();
        for (&v, occurrences) in &occ {
            match occurrences.len() {
                1 => {}
                2 => {
                    let (a, b) = (&occurrences[0], &occurrences[1]);
                    if a.component == b.component {
                        // The two ends of a degenerate path are not an
                        // attachment to each other; they await bridge links.
                        if a.slot.is_some() && b.slot.is_some() {
                            continue;
                        }
                        return Err(violation(
                            1,
                            format!("vertex {v} occurs twice in the same component"),
                        ));
                    }
                    let (sa, sb) = match (a.slot, b.slot) {
                        (Some(sa), Some(sb)) => (sa, sb),
                        _ => {
                            return Err(violation(
                                1,
                                format!("vertex {v} is shared through a non-attachment position"),
                            ))
                        }
                    };
                    matches.push((sa, sb, LinkKind::Shared));
                    matched.push(sa);
                    matched.push(sb);
                }
                _ => {
                    return Err(violation(
                        1,
                        format!("vertex {v} is shared by {} components", occurrences.len()),
                    ))
                }
            }
        }

        // Explicit bridge links consume the remaining slots.
        let free_slot_at = |v: Vertex, matched: &[Slot]| -> Option<Slot> {
            let occurrences = occ.get(&v)?;
            occurrences
                .iter()
                .filter_map(|o| o.slot)
                .find(|s| !matched.contains(s))
        };
        for &(u, v) in &self.links {
            if u == v {
                return Err(violation(2, format!("link {u} {v} is a self-loop")));
            }
            if u >= n || v >= n {
                return Err(violation(2, format!("link {u} {v} names a vertex outside 0..{n}")));
            }
            let su = free_slot_at(u, &matched).ok_or_else(|| {
                violation(2, format!("link {u} {v}: no free attachment at vertex {u}"))
            })?;
            matched.push(su);
            let sv = free_slot_at(v, &matched).ok_or_else(|| {
                violation(2, format!("link {u} {v}: no free attachment at vertex {v}"))
            })?;
            matched.push(sv);
            matches.push((su, sv, LinkKind::Bridge(u, v)));
        }

        // Every slot must now be matched exactly once.
        let mut all_slots: Vec<Slot> = Vec::new();
        for i in 0..self.squares.len() {
            all_slots.push(Slot::Junction { square: i, side: 0 });
            all_slots.push(Slot::Junction { square: i, side: 1 });
        }
        for k in 0..self.paths.len() {
            all_slots.push(Slot::PathEnd { path: k, end: 0 });
            all_slots.push(Slot::PathEnd { path: k, end: 1 });
        }
        for slot in &all_slots {
            let uses = matched.iter().filter(|s| *s == slot).count();
            if uses != 1 {
                let cond = if matches!(slot, Slot::Junction { .. }) { 1 } else { 2 };
                return Err(violation(
                    cond,
                    format!("attachment {slot:?} is used {uses} times, expected 1"),
                ));
            }
        }

        // Condition 2: walk the component cycle.
        let total = self.squares.len() + self.paths.len();
        let slot_of = |s: Slot| -> (usize, usize) {
            match s {
                Slot::Junction { square, side } => (square, side),
                Slot::PathEnd { path, end } => (self.squares.len() + path, end),
            }
        };
        let mut partner: Vec<[Option<(usize, usize, LinkKind)>; 2]> = vec![[None, None]; total];
        for &(sa, sb, kind) in &matches {
            let (ca, ia) = slot_of(sa);
            let (cb, ib) = slot_of(sb);
            if partner[ca][ia].is_some() || partner[cb][ib].is_some() {
                return Err(violation(2, "an attachment is used twice"));
            }
            partner[ca][ia] = Some((cb, ib, kind));
            partner[cb][ib] = Some((ca, ia, kind));
        }
        let mut steps = Vec::with_capacity(total);
        let mut visited = vec![false; total];
        let mut comp = 0usize;
        let mut entry = 0usize;
        loop {
            if visited[comp] {
                return Err(violation(2, "chain revisits a component before closing"));
            }
            visited[comp] = true;
            let exit = 1 - entry;
            let (next_comp, next_entry, kind) = partner[comp][exit]
                .ok_or_else(|| violation(2, "chain is broken at an unmatched attachment"))?;
            steps.push(ChainStep {
                component: if comp < self.squares.len() {
                    Component::Square(comp)
                } else {
                    Component::Path(comp - self.squares.len())
                },
                entry,
                outgoing: kind,
            });
            if next_comp == 0 && next_entry == 0 && visited.iter().filter(|&&v| v).count() == total
            {
                break;
            }
            comp = next_comp;
            entry = next_entry;
        }
        if visited.iter().any(|&v| !v) {
            return Err(violation(2, "chain does not traverse every component"));
        }
        Ok(ChainPlan { steps })
    }

    /// Canonical text form: `square a b c d` (junctions first and third),
    /// `path v1 v2 ...`, `link u v`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for sq in &self.squares {
            let [a, b, c, d] = sq.verts();
            writeln!(out, "square {a} {b} {c} {d}").unwrap();
        }
        for p in &self.paths {
            let verts: Vec<String> = p.verts().iter().map(|v| v.to_string()).collect();
            writeln!(out, "path {}", verts.join(" ")).unwrap();
        }
        for (u, v) in &self.links {
            writeln!(out, "link {u} {v}").unwrap();
        }
        out
    }

    /// Parses the necklace file format. Unknown directives are errors;
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, NecklaceError> {
        let mut necklace = CoveringNecklace::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let directive = fields.next().expect("nonempty line");
            let nums: Result<Vec<Vertex>, _> = fields.map(|f| f.parse::<Vertex>()).collect();
            let nums = nums.map_err(|_| NecklaceError::Parse {
                line: line_no,
                msg: "bad vertex number".to_string(),
            })?;
            match directive {
                "square" => {
                    if nums.len() != 4 {
                        return Err(NecklaceError::Parse {
                            line: line_no,
                            msg: "square takes exactly 4 vertices".to_string(),
                        });
                    }
                    necklace.squares.push(Square::new(nums[0], nums[1], nums[2], nums[3]));
                }
                "path" => {
                    if nums.is_empty() {
                        return Err(NecklaceError::Parse {
                            line: line_no,
                            msg: "path takes at least 1 vertex".to_string(),
                        });
                    }
                    necklace.paths.push(NecklacePath::new(nums));
                }
                "link" => {
                    if nums.len() != 2 {
                        return Err(NecklaceError::Parse {
                            line: line_no,
                            msg: "link takes exactly 2 vertices".to_string(),
                        });
                    }
                    necklace.links.push((nums[0], nums[1]));
                }
                other => {
                    return Err(NecklaceError::Parse {
                        line: line_no,
                        msg: format!("unknown directive {other:?}"),
                    })
                }
            }
        }
        Ok(necklace)
    }
}

/// The two junction-to-junction Hamiltonian paths of the diamond obtained by
/// adding the interior chord. Their multisigns differ by exactly the
/// square's multisign, since the chord cancels.
pub fn diamond_paths(sq: &Square) -> (NecklacePath, NecklacePath) {
    let [a, b, c, d] = sq.verts();
    (
        NecklacePath::new(vec![a, b, d, c]),
        NecklacePath::new(vec![a, d, b, c]),
    )
}

fn square_sequence(sq: &Square, choose_alternate: bool, entry: usize) -> Vec<Vertex> {
    let (p0, p1) = diamond_paths(sq);
    let mut seq = if choose_alternate { p1.verts().to_vec() } else { p0.verts().to_vec() };
    if entry == 1 {
        seq.reverse();
    }
    seq
}

/// The coset of multisigns the necklace can realize: offset
/// `h + sum x_i` plus the span of the square multisigns, where `h` sums the
/// path labels and bridge edges and `x_i` is the first diamond path of
/// square `i`.
pub fn reachable_coset(
    g: &MultisignedGraph,
    necklace: &CoveringNecklace,
) -> Result<(Multisign, crate::gf2::Gf2Basis), NecklaceError> {
    let plan = necklace.validate(g.n())?;
    let mut offset = Multisign::zero(g.dim());
    for p in &necklace.paths {
        offset = offset + p.multisign(g);
    }
    for step in &plan.steps {
        if let LinkKind::Bridge(u, v) = step.outgoing {
            offset = offset + g.sigma(u, v);
        }
    }
    let mut basis = crate::gf2::Gf2Basis::empty(g.dim());
    for sq in &necklace.squares {
        let (p0, _) = diamond_paths(sq);
        offset = offset + p0.multisign(g);
        basis.insert(sq.multisign(g));
    }
    Ok((basis.reduce(offset), basis))
}

/// Realizes a Hamiltonian cycle with multisign `target` from the necklace,
/// or `None` if `target` lies outside the reachable coset
/// `h + sum x_i + span{sigma(D_i)}`.
pub fn realize_multisign(
    g: &MultisignedGraph,
    necklace: &CoveringNecklace,
    target: Multisign,
) -> Result<Option<HamiltonianCycle>, NecklaceError> {
    if target.dim() != g.dim() {
        return Err(NecklaceError::DimensionMismatch(target.dim(), g.dim()));
    }
    let plan = necklace.validate(g.n())?;

    // Fixed part: path labels plus every bridge edge, each counted once.
    let mut fixed = Multisign::zero(g.dim());
    for p in &necklace.paths {
        fixed = fixed + p.multisign(g);
    }
    for step in &plan.steps {
        if let LinkKind::Bridge(u, v) = step.outgoing {
            fixed = fixed + g.sigma(u, v);
        }
    }
    let mut base_choice = Multisign::zero(g.dim());
    let square_signs: Vec<Multisign> = necklace
        .squares
        .iter()
        .map(|sq| sq.multisign(g))
        .collect();
    for sq in &necklace.squares {
        let (p0, _) = diamond_paths(sq);
        base_choice = base_choice + p0.multisign(g);
    }

    let needed = target + fixed + base_choice;
    let coeffs = match solve_combination(&square_signs, needed)
        .expect("square signs share the graph dimension")
    {
        Some(c) => c,
        None => return Ok(None),
    };

    // Assemble the cycle around the chain.
    let n = g.n();
    let mut verts: Vec<Vertex> = Vec::with_capacity(n);
    let incoming_shared = |idx: usize| -> bool {
        let prev = if idx == 0 { plan.steps.len() - 1 } else { idx - 1 };
        matches!(plan.steps[prev].outgoing, LinkKind::Shared)
    };
    for (idx, step) in plan.steps.iter().enumerate() {
        let seq = match step.component {
            Component::Square(i) => square_sequence(&necklace.squares[i], coeffs[i], step.entry),
            Component::Path(k) => {
                let mut seq = necklace.paths[k].verts().to_vec();
                if step.entry == 1 {
                    seq.reverse();
                }
                seq
            }
        };
        let skip = usize::from(incoming_shared(idx));
        verts.extend_from_slice(&seq[skip..]);
    }
    assert_eq!(verts.len(), n, "assembled chain must cover every vertex once");
    let cycle = HamiltonianCycle::new(verts, n)?;
    assert_eq!(g.ham_multisign(&cycle), target, "assembled cycle multisign");
    Ok(Some(cycle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Gf2Basis;
    use crate::oracle;

    fn ms(s: &str) -> Multisign {
        s.parse().unwrap()
    }

    /// Square {0,1,2,3} junctions (0,2) plus path 0-4-5-2: the smallest
    /// closed chain covering 6 vertices.
    fn six_vertex_necklace() -> CoveringNecklace {
        CoveringNecklace {
            squares: vec![Square::new(0, 1, 2, 3)],
            paths: vec![NecklacePath::new(vec![0, 4, 5, 2])],
            links: vec![],
        }
    }

    #[test]
    fn validate_accepts_the_basic_chain() {
        let plan = six_vertex_necklace().validate(6).unwrap();
        assert_eq!(plan.steps.len(), 2);
    }

    #[test]
    fn validate_reports_uncovered_vertex() {
        let necklace = CoveringNecklace {
            squares: vec![Square::new(0, 1, 2, 3)],
            paths: vec![NecklacePath::new(vec![0, 4, 2])],
            links: vec![],
        };
        let v = necklace.validate(6).unwrap_err();
        assert_eq!(v.condition, 3);
    }

    #[test]
    fn validate_rejects_shared_interior_vertex() {
        // Two squares sharing an interior vertex.
        let necklace = CoveringNecklace {
            squares: vec![Square::new(0, 1, 2, 3), Square::new(4, 1, 5, 6)],
            paths: vec![NecklacePath::new(vec![0, 4]), NecklacePath::new(vec![2, 5])],
            links: vec![],
        };
        let v = necklace.validate(7).unwrap_err();
        assert_eq!(v.condition, 1);
    }

    #[test]
    fn validate_accepts_bridge_links() {
        // Square {0,1,2,3} bridged to path 4-5 on both sides.
        let necklace = CoveringNecklace {
            squares: vec![Square::new(0, 1, 2, 3)],
            paths: vec![NecklacePath::new(vec![4, 5])],
            links: vec![(0, 4), (5, 2)],
        };
        let plan = necklace.validate(6).unwrap();
        assert_eq!(plan.steps.len(), 2);
        let bridges = plan
            .steps
            .iter()
            .filter(|s| matches!(s.outgoing, LinkKind::Bridge(_, _)))
            .count();
        assert_eq!(bridges, 2);
    }

    #[test]
    fn validate_accepts_square_ring_sharing_junctions() {
        // Three squares in a ring, consecutive pairs sharing a junction.
        let necklace = CoveringNecklace {
            squares: vec![
                Square::new(0, 1, 3, 2),
                Square::new(3, 4, 6, 5),
                Square::new(6, 7, 0, 8),
            ],
            paths: vec![],
            links: vec![],
        };
        let plan = necklace.validate(9).unwrap();
        assert_eq!(plan.steps.len(), 3);
    }

    #[test]
    fn diamond_paths_differ_by_the_square_multisign() {
        let mut g = MultisignedGraph::identity(6, 3).unwrap();
        g.set_sigma(0, 1, ms("101"));
        g.set_sigma(1, 2, ms("010"));
        g.set_sigma(1, 3, ms("110"));
        g.set_sigma(2, 3, ms("011"));
        let sq = Square::new(0, 1, 2, 3);
        let (p0, p1) = diamond_paths(&sq);
        assert_eq!(p0.verts(), &[0, 1, 3, 2]);
        assert_eq!(p1.verts(), &[0, 3, 1, 2]);
        assert_eq!(p0.multisign(&g) + p1.multisign(&g), sq.multisign(&g));
    }

    #[test]
    fn realize_identity_graph() {
        let g = MultisignedGraph::identity(6, 2).unwrap();
        let h = realize_multisign(&g, &six_vertex_necklace(), ms("00"))
            .unwrap()
            .unwrap();
        assert_eq!(g.ham_multisign(&h), ms("00"));
        // A nonzero target is outside the (rank 0) reachable coset.
        assert!(realize_multisign(&g, &six_vertex_necklace(), ms("10"))
            .unwrap()
            .is_none());
    }

    #[test]
    fn realize_single_square_both_targets_cross_checked_by_oracle() {
        // m=1, square multisign (1): both targets must be realizable, and
        // the brute-force oracle over all 60 cycles of K_6 agrees.
        let mut g = MultisignedGraph::identity(6, 1).unwrap();
        g.set_sigma(0, 1, ms("1"));
        let necklace = six_vertex_necklace();
        let sq_sign = necklace.squares[0].multisign(&g);
        assert_eq!(sq_sign, ms("1"));
        let realized = oracle::realized_multisigns(&g).unwrap();
        for target in [ms("0"), ms("1")] {
            let h = realize_multisign(&g, &necklace, target).unwrap().unwrap();
            assert_eq!(g.ham_multisign(&h), target);
            assert!(realized.contains(&target));
        }
    }

    #[test]
    fn realize_spanning_squares_hit_every_target() {
        // Two squares with independent multisigns spanning F_2^2.
        let mut g = MultisignedGraph::identity(8, 2).unwrap();
        g.set_sigma(0, 1, ms("10"));
        g.set_sigma(3, 4, ms("01"));
        let necklace = CoveringNecklace {
            squares: vec![Square::new(0, 1, 3, 2), Square::new(3, 4, 6, 5)],
            paths: vec![NecklacePath::new(vec![6, 7, 0])],
            links: vec![],
        };
        let signs: Vec<Multisign> =
            necklace.squares.iter().map(|s| s.multisign(&g)).collect();
        assert!(Gf2Basis::span(&signs, 2).unwrap().is_full());
        let realized = oracle::realized_multisigns(&g).unwrap();
        for bits in 0..4 {
            let target = Multisign::from_bits(bits, 2);
            let h = realize_multisign(&g, &necklace, target).unwrap().unwrap();
            assert_eq!(g.ham_multisign(&h), target);
            assert!(realized.contains(&target));
        }
    }

    #[test]
    fn necklace_file_round_trip() {
        let necklace = CoveringNecklace {
            squares: vec![Square::new(0, 1, 2, 3)],
            paths: vec![NecklacePath::new(vec![4, 5])],
            links: vec![(0, 4), (5, 2)],
        };
        let text = necklace.to_text();
        assert_eq!(text, "square 0 1 2 3\npath 4 5\nlink 0 4\nlink 5 2\n");
        assert_eq!(CoveringNecklace::parse(&text).unwrap(), necklace);
        assert!(CoveringNecklace::parse("bead 1 2\n").is_err());
    }
}
