//! Search machinery for the constructive realization pipeline: independent
//! triangles, identity triangles, triangular paths, the Q quadrilaterals,
//! and necklace assembly.
//!
//! The pipeline never promises success: every stage returns a typed failure
//! (`NotFound` or `ExceptionalCase`) and the caller decides how to degrade.
//! All scans are lexicographic so results are reproducible.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::gf2::{Gf2Basis, Multisign};
use crate::graph::{GraphError, MultisignedGraph, Vertex};
use crate::necklace::{
    self, CoveringNecklace, NecklaceError, NecklacePath, Square,
};
use crate::oracle;

#[derive(Debug, Error)]
pub enum FinderError {
    /// The searched structure does not exist (or the greedy scan missed it).
    #[error("{stage}: {detail}")]
    NotFound { stage: &'static str, detail: String },
    /// A precondition of the construction is violated; the instance belongs
    /// to the exceptional set the classifier must not guess about.
    #[error("exceptional configuration: {detail}")]
    ExceptionalCase { detail: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Necklace(#[from] NecklaceError),
}

impl From<crate::oracle::OracleError> for FinderError {
    fn from(e: crate::oracle::OracleError) -> Self {
        match e {
            crate::oracle::OracleError::Graph(g) => FinderError::Graph(g),
            other => FinderError::NotFound { stage: "oracle", detail: other.to_string() },
        }
    }
}

fn not_found(stage: &'static str, detail: impl Into<String>) -> FinderError {
    FinderError::NotFound { stage, detail: detail.into() }
}

fn exceptional(detail: impl Into<String>) -> FinderError {
    FinderError::ExceptionalCase { detail: detail.into() }
}

/// Three distinct vertices with the cached multisign of their cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triangle {
    verts: [Vertex; 3],
    multisign: Multisign,
}

impl Triangle {
    pub fn new(g: &MultisignedGraph, a: Vertex, b: Vertex, c: Vertex) -> Self {
        assert!(a != b && b != c && a != c, "triangle vertices must be distinct");
        Triangle { verts: [a, b, c], multisign: g.triangle_multisign(a, b, c) }
    }

    pub fn verts(&self) -> [Vertex; 3] {
        self.verts
    }

    pub fn multisign(&self) -> Multisign {
        self.multisign
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.verts.contains(&v)
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.verts.iter().copied().collect()
    }

    fn common_verts(&self, other: &Triangle) -> Vec<Vertex> {
        self.verts.iter().copied().filter(|&v| other.contains(v)).collect()
    }

    /// The shared edge, when the triangles have exactly two common vertices.
    pub fn shared_edge(&self, other: &Triangle) -> Option<(Vertex, Vertex)> {
        let common = self.common_verts(other);
        match common[..] {
            [u, v] => Some(crate::graph::edge(u, v)),
            _ => None,
        }
    }
}

/// A strip of consecutive triangles T, Y_1, ..., Y_r, R: each consecutive
/// pair shares exactly one edge, nonconsecutive members are edge-disjoint.
#[derive(Debug, Clone)]
pub struct TriangularPath {
    triangles: Vec<Triangle>,
}

impl TriangularPath {
    pub fn new(triangles: Vec<Triangle>) -> Result<Self, FinderError> {
        if triangles.len() < 2 {
            return Err(exceptional("a triangular path needs at least two triangles"));
        }
        for i in 0..triangles.len() {
            for j in (i + 1)..triangles.len() {
                let common = triangles[i].common_verts(&triangles[j]).len();
                if j == i + 1 && common != 2 {
                    return Err(exceptional(format!(
                        "triangles {i} and {j} share {common} vertices, expected a common edge"
                    )));
                }
                if j > i + 1 && common > 1 {
                    return Err(exceptional(format!(
                        "nonconsecutive triangles {i} and {j} are not edge-disjoint"
                    )));
                }
            }
        }
        Ok(TriangularPath { triangles })
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    /// Number of intermediate triangles (the strip length r).
    pub fn interior_len(&self) -> usize {
        self.triangles.len() - 2
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.triangles.iter().flat_map(|t| t.verts()).collect()
    }
}

fn lex_triples(n: usize) -> impl Iterator<Item = (Vertex, Vertex, Vertex)> {
    (0..n).flat_map(move |a| {
        ((a + 1)..n).flat_map(move |b| ((b + 1)..n).map(move |c| (a, b, c)))
    })
}

/// Greedy lexicographic scan: collect up to `limit` triangles whose
/// multisigns extend the running span. The result size equals the rank of
/// the triangle multisign image when `limit` allows.
pub fn find_independent_triangles(g: &MultisignedGraph, limit: usize) -> Vec<Triangle> {
    let mut basis = Gf2Basis::empty(g.dim());
    let mut out = Vec::new();
    for (a, b, c) in lex_triples(g.n()) {
        if out.len() == limit {
            break;
        }
        let t = Triangle::new(g, a, b, c);
        if basis.insert(t.multisign()) {
            out.push(t);
        }
    }
    out
}

/// Like `find_independent_triangles`, but accepted triangles must also be
/// pairwise vertex-disjoint. May find fewer than the image rank.
pub fn find_disjoint_independent_triangles(g: &MultisignedGraph, limit: usize) -> Vec<Triangle> {
    let mut basis = Gf2Basis::empty(g.dim());
    let mut used: BTreeSet<Vertex> = BTreeSet::new();
    let mut out = Vec::new();
    for (a, b, c) in lex_triples(g.n()) {
        if out.len() == limit {
            break;
        }
        if used.contains(&a) || used.contains(&b) || used.contains(&c) {
            continue;
        }
        let t = Triangle::new(g, a, b, c);
        if basis.insert(t.multisign()) {
            used.extend([a, b, c]);
            out.push(t);
        }
    }
    out
}

/// True iff any two sets share at most one vertex and, among any three, at
/// least one is disjoint from the other two.
pub fn check_almost_disjoint(sets: &[BTreeSet<Vertex>]) -> bool {
    let overlap = |i: usize, j: usize| sets[i].intersection(&sets[j]).count();
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            if overlap(i, j) > 1 {
                return false;
            }
            for k in (j + 1)..sets.len() {
                let disjoint = |x: usize, y: usize, z: usize| {
                    overlap(x, y) == 0 && overlap(x, z) == 0
                };
                if !(disjoint(i, j, k) || disjoint(j, i, k) || disjoint(k, i, j)) {
                    return false;
                }
            }
        }
    }
    true
}

/// `count` pairwise-disjoint identity-multisign triangles avoiding
/// `forbidden`, by greedy lexicographic scan.
pub fn find_identity_triangles(
    g: &MultisignedGraph,
    count: usize,
    forbidden: &BTreeSet<Vertex>,
) -> Result<Vec<Triangle>, FinderError> {
    let e = Multisign::zero(g.dim());
    let mut blocked = forbidden.clone();
    let mut out = Vec::new();
    for (a, b, c) in lex_triples(g.n()) {
        if out.len() == count {
            break;
        }
        if blocked.contains(&a) || blocked.contains(&b) || blocked.contains(&c) {
            continue;
        }
        let t = Triangle::new(g, a, b, c);
        if t.multisign() == e {
            blocked.extend([a, b, c]);
            out.push(t);
        }
    }
    if out.len() < count {
        return Err(not_found(
            "identity-triangles",
            format!("found {} of {count} disjoint identity triangles", out.len()),
        ));
    }
    Ok(out)
}

/// A triangular path from `from` to `to`. When they share an edge the path
/// is just the pair (r = 0); when they are vertex-disjoint, a zig-zag strip
/// over two fresh vertices outside `avoid` connects them (r = 4). Partial
/// vertex sharing is rejected.
pub fn build_triangular_path(
    g: &MultisignedGraph,
    from: &Triangle,
    to: &Triangle,
    avoid: &BTreeSet<Vertex>,
) -> Result<TriangularPath, FinderError> {
    let common = from.common_verts(to);
    match common.len() {
        2 => TriangularPath::new(vec![*from, *to]),
        0 => {
            let fresh: Vec<Vertex> = (0..g.n())
                .filter(|v| !avoid.contains(v) && !from.contains(*v) && !to.contains(*v))
                .take(2)
                .collect();
            let [u, w] = fresh[..] else {
                return Err(not_found(
                    "triangular-path",
                    format!("need 2 fresh vertices, have {}", fresh.len()),
                ));
            };
            let [a, b, c] = from.verts();
            let [d, e, f] = to.verts();
            let strip = [
                [a, b, c],
                [b, c, u],
                [c, u, w],
                [u, w, d],
                [w, d, e],
                [d, e, f],
            ];
            TriangularPath::new(
                strip.iter().map(|&[x, y, z]| Triangle::new(g, x, y, z)).collect(),
            )
        }
        k => Err(not_found(
            "triangular-path",
            format!("end triangles share {k} vertices but no edge"),
        )),
    }
}

/// A 4-cycle extracted from a triangular path, with its multisign and the
/// indices of the adjacent triangle pair that produced it.
#[derive(Debug, Clone)]
pub struct QuadChoice {
    pub square: Square,
    pub sign: Multisign,
    pub pair: (usize, usize),
}

/// The symmetric difference of two edge-sharing triangles as a square whose
/// junctions are the two vertices off the shared edge.
fn quad_of_pair(t1: &Triangle, t2: &Triangle) -> Square {
    let (x, y) = t1.shared_edge(t2).expect("consecutive triangles share an edge");
    let apex = |t: &Triangle| {
        t.verts()
            .into_iter()
            .find(|&v| v != x && v != y)
            .expect("triangle has a vertex off the shared edge")
    };
    Square::new(apex(t1), x, apex(t2), y)
}

/// Scans the path for the first adjacent pair whose multisigns straddle the
/// cosets `span(U)` and `t_sign + span(U)`; their symmetric difference is a
/// square with multisign in `t_sign + span(U)`, which extends independence.
pub fn construct_q(
    g: &MultisignedGraph,
    path: &TriangularPath,
    u_span: &Gf2Basis,
    t_sign: Multisign,
) -> Result<QuadChoice, FinderError> {
    if u_span.contains(t_sign) {
        return Err(exceptional("t_sign lies inside span(U)"));
    }
    // Coset dichotomy: every triangle multisign of the path must lie in
    // span(U) or its t_sign-translate.
    let side = |s: Multisign| -> Result<bool, FinderError> {
        if u_span.contains(s) {
            Ok(false)
        } else if u_span.contains(s + t_sign) {
            Ok(true)
        } else {
            Err(exceptional(format!(
                "triangle multisign {s} outside span(U) and t+span(U)"
            )))
        }
    };
    let tris = path.triangles();
    let sides: Vec<bool> = tris
        .iter()
        .map(|t| side(t.multisign()))
        .collect::<Result<_, _>>()?;
    if !sides[0] {
        return Err(exceptional("path does not start in t_sign + span(U)"));
    }
    if *sides.last().expect("nonempty") {
        return Err(exceptional("path does not end in span(U)"));
    }
    let i = (0..sides.len() - 1)
        .find(|&i| sides[i] != sides[i + 1])
        .expect("sides flip between the two ends");
    let square = quad_of_pair(&tris[i], &tris[i + 1]);
    let sign = tris[i].multisign() + tris[i + 1].multisign();
    debug_assert_eq!(square.multisign(g), sign);
    Ok(QuadChoice { square, sign, pair: (i, i + 1) })
}

/// The chosen squares, one per triangular path, in construction order.
#[derive(Debug, Clone)]
pub struct QSequence {
    pub quads: Vec<QuadChoice>,
}

impl QSequence {
    pub fn signs(&self) -> Vec<Multisign> {
        self.quads.iter().map(|q| q.sign).collect()
    }
}

/// Builds one square per path so that the square multisigns stay linearly
/// independent: when picking square i, U spans the already-chosen square
/// signs together with the not-yet-processed t signs.
pub fn construct_q_sequence(
    g: &MultisignedGraph,
    paths: &[TriangularPath],
    t_signs: &[Multisign],
) -> Result<QSequence, FinderError> {
    assert_eq!(paths.len(), t_signs.len());
    let m = g.dim();
    let k = t_signs.len();
    if Gf2Basis::span(t_signs, m).map_err(|_| exceptional("mixed dimensions"))?.rank() != k {
        return Err(exceptional("t signs are not linearly independent"));
    }
    let mut quads: Vec<QuadChoice> = Vec::with_capacity(k);
    for i in 0..k {
        let mut rows: Vec<Multisign> = quads.iter().map(|q| q.sign).collect();
        rows.extend_from_slice(&t_signs[i + 1..]);
        let u_span = Gf2Basis::span(&rows, m).expect("uniform dimension");
        quads.push(construct_q(g, &paths[i], &u_span, t_signs[i])?);
    }
    let seq = QSequence { quads };
    let rank = Gf2Basis::span(&seq.signs(), m).expect("uniform dimension").rank();
    if rank != k {
        return Err(exceptional(format!("square signs have rank {rank}, expected {k}")));
    }
    let vsets: Vec<BTreeSet<Vertex>> = seq
        .quads
        .iter()
        .map(|q| q.square.verts().into_iter().collect())
        .collect();
    if !check_almost_disjoint(&vsets) {
        return Err(exceptional("chosen squares are not almost-disjoint"));
    }
    Ok(seq)
}

/// Chains the squares into a covering necklace: consecutive squares are
/// joined junction-to-junction by two-vertex paths, and every vertex not on
/// a square is absorbed into the first connecting path.
pub fn assemble_necklace(n: usize, q: &QSequence) -> Result<CoveringNecklace, FinderError> {
    let squares: Vec<Square> = q.quads.iter().map(|c| c.square).collect();
    let mut covered: BTreeSet<Vertex> = BTreeSet::new();
    for sq in &squares {
        for v in sq.verts() {
            if !covered.insert(v) {
                return Err(exceptional(format!("squares overlap at vertex {v}")));
            }
        }
    }
    let leftovers: Vec<Vertex> = (0..n).filter(|v| !covered.contains(v)).collect();
    let k = squares.len();
    let mut paths = Vec::with_capacity(k);
    for i in 0..k {
        let (_, exit) = squares[i].junctions();
        let (entry, _) = squares[(i + 1) % k].junctions();
        let mut verts = vec![exit];
        if i == 0 {
            verts.extend_from_slice(&leftovers);
        }
        verts.push(entry);
        paths.push(NecklacePath::new(verts));
    }
    let necklace = CoveringNecklace { squares, paths, links: Vec::new() };
    necklace
        .validate(n)
        .map_err(|v| not_found("assemble", format!("assembled chain invalid: {v}")))?;
    Ok(necklace)
}

/// A successful pipeline run: the necklace plus the coset it realizes,
/// `offset + span(basis)`, with the offset in lex-minimal form.
#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub necklace: CoveringNecklace,
    pub offset: Multisign,
    pub basis: Gf2Basis,
}

/// End-to-end constructive run: independent triangles, identity triangles,
/// triangular paths, Q squares, necklace. The realized coset always spans
/// the full triangle-multisign image, so success pins down the realized set
/// exactly.
pub fn run_pipeline(g: &MultisignedGraph) -> Result<PipelineOutcome, FinderError> {
    let n = g.n();
    if n < 4 {
        return Err(not_found("pipeline", format!("n={n} has no room for a square")));
    }
    let image = oracle::cycle_space_image(g)?;
    let r = image.rank();

    if r == 0 {
        // Every cycle has the same multisign; any square works.
        let square = Square::new(0, 1, 2, 3);
        let mut verts = vec![2];
        verts.extend(4..n);
        verts.push(0);
        let necklace = CoveringNecklace {
            squares: vec![square],
            paths: vec![NecklacePath::new(verts)],
            links: Vec::new(),
        };
        necklace
            .validate(n)
            .map_err(|v| not_found("assemble", format!("trivial chain invalid: {v}")))?;
        let (offset, basis) = necklace::reachable_coset(g, &necklace)?;
        return Ok(PipelineOutcome { necklace, offset, basis });
    }

    let t_tris = find_disjoint_independent_triangles(g, r);
    if t_tris.len() < r {
        return Err(not_found(
            "independent-triangles",
            format!("found {} disjoint independent triangles, need {r}", t_tris.len()),
        ));
    }
    let mut used: BTreeSet<Vertex> = t_tris.iter().flat_map(|t| t.verts()).collect();
    let r_tris = find_identity_triangles(g, r, &used)?;
    used.extend(r_tris.iter().flat_map(|t| t.verts()));

    let mut paths = Vec::with_capacity(r);
    for i in 0..r {
        let p = build_triangular_path(g, &t_tris[i], &r_tris[i], &used)?;
        used.extend(p.vertices());
        paths.push(p);
    }
    let t_signs: Vec<Multisign> = t_tris.iter().map(|t| t.multisign()).collect();
    let seq = construct_q_sequence(g, &paths, &t_signs)?;
    let necklace = assemble_necklace(n, &seq)?;
    let (offset, basis) = necklace::reachable_coset(g, &necklace)?;
    if basis.rank() != r {
        return Err(exceptional(format!(
            "necklace coset has rank {}, expected image rank {r}",
            basis.rank()
        )));
    }
    Ok(PipelineOutcome { necklace, offset, basis })
}
