//! Deterministic instance generators: reference fixtures, seeded random
//! graphs, and necklace-carrying samples for end-to-end checks.
//!
//! All randomness comes from ChaCha8 seeded explicitly, so a (generator,
//! seed) pair reproduces the same instance byte for byte on any platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf2::Multisign;
use crate::graph::{GraphError, MultisignedGraph, Vertex};
use crate::necklace::{CoveringNecklace, NecklacePath, Square};

/// Every edge labeled with the identity.
pub fn all_identity(n: usize, m: usize) -> Result<MultisignedGraph, GraphError> {
    MultisignedGraph::identity(n, m)
}

fn label_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Independent uniform labels on every edge, in fixed edge order.
pub fn uniform_random(n: usize, m: usize, seed: u64) -> Result<MultisignedGraph, GraphError> {
    let mut g = MultisignedGraph::identity(n, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for v in 1..n {
        for u in 0..v {
            let bits = rng.gen::<u64>() & label_mask(m);
            g.set_sigma(u, v, Multisign::from_bits(bits, m));
        }
    }
    Ok(g)
}

/// Layout of the three specially labeled edges in the Case-1 fixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case1Variant {
    /// The three edges meet at a common vertex.
    Star,
    /// The three edges form a triangle.
    Triangle,
}

/// The n=7, m=3 counterexample fixture: three edges with independent labels
/// that either share a vertex or form a triangle, everything else identity.
/// The sum of the three labels is not realized by any Hamiltonian circle.
pub fn paper_case1(variant: Case1Variant) -> MultisignedGraph {
    let mut g = MultisignedGraph::identity(7, 3).expect("fixed valid sizes");
    let edges: [(Vertex, Vertex); 3] = match variant {
        Case1Variant::Star => [(0, 1), (0, 2), (0, 3)],
        Case1Variant::Triangle => [(0, 1), (1, 2), (0, 2)],
    };
    for (i, &(u, v)) in edges.iter().enumerate() {
        g.set_sigma(u, v, Multisign::unit(3, i));
    }
    g
}

/// The n=9, m=4 fixture: four consecutive path edges carrying the four unit
/// labels, everything else identity. Its realized set is all of F_2^4.
pub fn paper_figure3() -> MultisignedGraph {
    let mut g = MultisignedGraph::identity(9, 4).expect("fixed valid sizes");
    for i in 0..4 {
        g.set_sigma(i, i + 1, Multisign::unit(4, i));
    }
    g
}

/// Sparse fixture in normalized form: edge `(3i, 3i+1)` carries unit label
/// `i`, everything else identity. The triangles `(3i, 3i+1, 3i+2)` are
/// disjoint with independent multisigns, so the constructive pipeline
/// succeeds whenever `n >= 8m`.
pub fn normalized_sparse(n: usize, m: usize) -> Result<MultisignedGraph, GraphError> {
    if n < 3 * m {
        return Err(GraphError::TooFewVertices(n));
    }
    let mut g = MultisignedGraph::identity(n, m)?;
    for i in 0..m {
        g.set_sigma(3 * i, 3 * i + 1, Multisign::unit(m, i));
    }
    Ok(g)
}

/// A random instance together with a covering necklace whose `m` square
/// multisigns are exactly the unit vectors, so the necklace reaches a full
/// coset of size 2^m. Vertex placement and all other edge labels are
/// seed-determined. Requires `n = 3m` with `m >= 2` (a closed ring of
/// squares) or `n >= 3m + 1` (a chain closed by one path).
pub fn necklace_instance(
    n: usize,
    m: usize,
    seed: u64,
) -> Result<(MultisignedGraph, CoveringNecklace), GraphError> {
    assert!(m >= 1, "need at least one square");
    let ring = n == 3 * m && m >= 2;
    if !ring && n < 3 * m + 1 {
        return Err(GraphError::TooFewVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = MultisignedGraph::identity(n, m)?;
    for v in 1..n {
        for u in 0..v {
            let bits = rng.gen::<u64>() & label_mask(m);
            g.set_sigma(u, v, Multisign::from_bits(bits, m));
        }
    }
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);

    let mut squares = Vec::with_capacity(m);
    let mut paths = Vec::new();
    if ring {
        // Junctions perm[0..m], interiors two fresh per square.
        for i in 0..m {
            let j0 = perm[i];
            let j1 = perm[(i + 1) % m];
            let a = perm[m + 2 * i];
            let b = perm[m + 2 * i + 1];
            squares.push(Square::new(j0, a, j1, b));
        }
    } else {
        // Open chain p_0 -> q_0 = p_1 -> ... -> q_{m-1}, closed by a path
        // absorbing every leftover vertex.
        let mut entry = perm[0];
        let mut next = 1;
        for _ in 0..m {
            let a = perm[next];
            let b = perm[next + 1];
            let exit = perm[next + 2];
            next += 3;
            squares.push(Square::new(entry, a, exit, b));
            entry = exit;
        }
        let mut closing = vec![entry];
        closing.extend_from_slice(&perm[next..]);
        closing.push(perm[0]);
        paths.push(NecklacePath::new(closing));
    }
    // Retarget each square's multisign to the unit vector by adjusting its
    // first edge; interiors are private, so the adjusted edges are distinct.
    for (i, sq) in squares.iter().enumerate() {
        let [p, a, _, _] = sq.verts();
        let delta = sq.multisign(&g) + Multisign::unit(m, i);
        g.set_sigma(p, a, g.sigma(p, a) + delta);
    }
    Ok((g, CoveringNecklace { squares, paths, links: Vec::new() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Gf2Basis;

    fn ms(s: &str) -> Multisign {
        s.parse().unwrap()
    }

    #[test]
    fn uniform_random_is_reproducible() {
        let a = uniform_random(8, 3, 42).unwrap();
        let b = uniform_random(8, 3, 42).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        let c = uniform_random(8, 3, 43).unwrap();
        assert_ne!(a.to_text(), c.to_text());
    }

    #[test]
    fn case1_fixture_shape() {
        let g = paper_case1(Case1Variant::Star);
        assert_eq!(g.n(), 7);
        assert_eq!(g.dim(), 3);
        assert_eq!(g.sigma(0, 1), ms("100"));
        assert_eq!(g.sigma(0, 2), ms("010"));
        assert_eq!(g.sigma(0, 3), ms("001"));
        assert_eq!(g.sigma(4, 5), ms("000"));
        let t = paper_case1(Case1Variant::Triangle);
        assert_eq!(t.triangle_multisign(0, 1, 2), ms("111"));
    }

    #[test]
    fn figure3_fixture_shape() {
        let g = paper_figure3();
        assert_eq!((g.n(), g.dim()), (9, 4));
        for i in 0..4 {
            assert_eq!(g.sigma(i, i + 1), Multisign::unit(4, i));
        }
    }

    #[test]
    fn normalized_sparse_triangles_are_independent() {
        let g = normalized_sparse(9, 3).unwrap();
        let signs: Vec<Multisign> =
            (0..3).map(|i| g.triangle_multisign(3 * i, 3 * i + 1, 3 * i + 2)).collect();
        assert_eq!(Gf2Basis::span(&signs, 3).unwrap().rank(), 3);
        assert!(normalized_sparse(5, 2).is_err());
    }

    #[test]
    fn necklace_instance_squares_span_and_validate() {
        for (n, m, seed) in [(6, 1, 0), (6, 2, 1), (9, 3, 2), (12, 4, 3), (11, 3, 4)] {
            let (g, necklace) = necklace_instance(n, m, seed).unwrap();
            necklace.validate(n).unwrap();
            let signs: Vec<Multisign> =
                necklace.squares.iter().map(|sq| sq.multisign(&g)).collect();
            for (i, s) in signs.iter().enumerate() {
                assert_eq!(*s, Multisign::unit(m, i), "n={n} m={m} seed={seed}");
            }
        }
        assert!(necklace_instance(3, 1, 0).is_err());
    }
}
