//! The bipartite swapping bijection between `I(G) x I(G)` and `J(G)`.
//!
//! `J(G)` is the set of ordered pairs `(A', B')` of vertex sets with no edge
//! between `A'` and `B'` and with `G[A' ∪ B']` bipartite. Given independent
//! sets `(A, B)`, let `W = A ∪ B` with canonical two-colouring `(W1, W2)` of
//! `G[W]` (each component's minimum vertex in `W1`), and swap the `W2`
//! halves: `A' = (A∩W1) ∪ (B∩W2)`, `B' = (A∩W2) ∪ (B∩W1)`. The inverse
//! recolours `W = A' ∪ B'` the same way and swaps back.

use crate::counting::{count_independent_sets, enumerate_independent_sets};
use crate::error::{Error, Result};
use crate::graph::{double_cover, emit_graph6, set_to_vec, Graph, VertexSet};
use num_bigint::BigUint;
use serde::Serialize;
use std::collections::HashSet;

/// Largest graph for which `J(G)` is enumerated.
pub const J_ENUMERATION_LIMIT: usize = 14;
/// Largest cover size (`2n`) for the double-cover chain.
pub const COVER_LIMIT: usize = 30;

/// A pair of independent sets of `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndependentPair {
    a: VertexSet,
    b: VertexSet,
}

impl IndependentPair {
    pub fn new(g: &Graph, a: VertexSet, b: VertexSet) -> Result<Self> {
        let within = g.vertices();
        if a & !within != 0 || b & !within != 0 || !g.is_independent(a) || !g.is_independent(b) {
            return Err(Error::domain("both sets of an independent pair must be independent"));
        }
        Ok(IndependentPair { a, b })
    }

    pub fn a(&self) -> VertexSet {
        self.a
    }

    pub fn b(&self) -> VertexSet {
        self.b
    }
}

/// A member of `J(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SwapPair {
    a: VertexSet,
    b: VertexSet,
}

impl SwapPair {
    pub fn new(g: &Graph, a: VertexSet, b: VertexSet) -> Result<Self> {
        let within = g.vertices();
        if a & !within != 0 || b & !within != 0 {
            return Err(Error::domain("swap pair contains vertices outside the graph"));
        }
        if !g.cross_independent(a, b) {
            return Err(Error::domain("swap pair sets are joined by an edge"));
        }
        if g.two_colour(a | b).is_none() {
            return Err(Error::domain("union of a swap pair induces an odd cycle"));
        }
        Ok(SwapPair { a, b })
    }

    pub fn a(&self) -> VertexSet {
        self.a
    }

    pub fn b(&self) -> VertexSet {
        self.b
    }
}

pub fn swap_forward(g: &Graph, pair: IndependentPair) -> Result<SwapPair> {
    let IndependentPair { a, b } = IndependentPair::new(g, pair.a, pair.b)?;
    let (w1, w2) = g
        .two_colour(a | b)
        .expect("union of two independent sets is bipartite");
    Ok(SwapPair {
        a: (a & w1) | (b & w2),
        b: (a & w2) | (b & w1),
    })
}

pub fn swap_backward(g: &Graph, pair: SwapPair) -> Result<IndependentPair> {
    let SwapPair { a, b } = SwapPair::new(g, pair.a, pair.b)?;
    let (w1, w2) = g.two_colour(a | b).expect("checked by SwapPair::new");
    Ok(IndependentPair {
        a: (a & w1) | (b & w2),
        b: (b & w1) | (a & w2),
    })
}

/// Every member of `J(G)`, ordered by `A'` then `B'` as bitmasks.
///
/// For each `A'` with `G[A']` bipartite, candidate `B'` range over subsets of
/// the vertices with no neighbour in `A'`.
pub fn enumerate_j(g: &Graph) -> Result<impl Iterator<Item = SwapPair> + '_> {
    if g.n() > J_ENUMERATION_LIMIT {
        return Err(Error::Capacity {
            what: "J(G) enumeration",
            requested: g.n(),
            limit: J_ENUMERATION_LIMIT,
        });
    }
    let all = g.vertices();
    Ok((0..=all)
        .filter(move |&a| g.two_colour(a).is_some())
        .flat_map(move |a| {
            let free = all & !g.neighborhood_of(a);
            submasks_ascending(free)
                .filter(move |&b| g.two_colour(a | b).is_some())
                .map(move |b| SwapPair { a, b })
        }))
}

/// Submasks of `mask` in increasing numeric order.
fn submasks_ascending(mask: VertexSet) -> impl Iterator<Item = VertexSet> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        // increment within the bits of `mask`
        next = if cur == mask {
            None
        } else {
            Some(((cur | !mask).wrapping_add(1)) & mask)
        };
        Some(cur)
    })
}

/// A pair that broke the bijection, in replayable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapWitness {
    pub graph6: String,
    pub kind: &'static str,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl SwapWitness {
    fn new(g: &Graph, kind: &'static str, a: VertexSet, b: VertexSet) -> Self {
        SwapWitness {
            graph6: emit_graph6(g),
            kind,
            a: set_to_vec(a),
            b: set_to_vec(b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub independent_sets: usize,
    pub pairs_checked: usize,
    pub j_size: usize,
    pub image_size: usize,
    pub image_equals_j: bool,
    pub forward_round_trips: bool,
    pub backward_round_trips: bool,
    pub union_preserved: bool,
    pub witnesses: Vec<SwapWitness>,
}

impl BijectionReport {
    pub fn pass(&self) -> bool {
        self.witnesses.is_empty()
            && self.image_equals_j
            && self.j_size == self.independent_sets * self.independent_sets
    }
}

/// Exhaustively check the bijection on `g`: the forward image of
/// `I(G) x I(G)` is `J(G)`, both round trips are identities, and unions are
/// preserved. At most `max_witnesses` failing pairs are recorded.
pub fn verify_swap_bijection(g: &Graph, max_witnesses: usize) -> Result<BijectionReport> {
    let sets: Vec<VertexSet> = enumerate_independent_sets(g)?.collect();
    let j: HashSet<SwapPair> = enumerate_j(g)?.collect();
    let mut image = HashSet::with_capacity(sets.len() * sets.len());
    let mut witnesses = Vec::new();
    let mut record = |w: SwapWitness| {
        if witnesses.len() < max_witnesses {
            witnesses.push(w);
        }
    };
    let (mut forward_ok, mut union_ok, mut backward_ok) = (true, true, true);
    for &a in &sets {
        for &b in &sets {
            let pair = IndependentPair { a, b };
            let out = swap_forward(g, pair)?;
            if out.a | out.b != a | b {
                union_ok = false;
                record(SwapWitness::new(g, "union-changed", a, b));
            }
            if !j.contains(&out) {
                record(SwapWitness::new(g, "image-outside-j", a, b));
            }
            if swap_backward(g, out)? != pair {
                forward_ok = false;
                record(SwapWitness::new(g, "forward-round-trip", a, b));
            }
            image.insert(out);
        }
    }
    for &q in &j {
        if swap_forward(g, swap_backward(g, q)?)? != q {
            backward_ok = false;
            record(SwapWitness::new(g, "backward-round-trip", q.a, q.b));
        }
    }
    let mut missed: Vec<_> = j.difference(&image).copied().collect();
    missed.sort();
    for q in missed {
        record(SwapWitness::new(g, "j-not-covered", q.a, q.b));
    }
    Ok(BijectionReport {
        independent_sets: sets.len(),
        pairs_checked: sets.len() * sets.len(),
        j_size: j.len(),
        image_size: image.len(),
        image_equals_j: image == j,
        forward_round_trips: forward_ok,
        backward_round_trips: backward_ok,
        union_preserved: union_ok,
        witnesses,
    })
}

/// `i(G)^2 = |J(G)| <= #{cross-independent pairs} = i(G x K_2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCoverChain {
    pub count: BigUint,
    pub count_squared: BigUint,
    /// `None` when `n` exceeds the `J(G)` enumeration limit.
    pub j_size: Option<BigUint>,
    pub cross_independent_pairs: BigUint,
    pub cover_count: BigUint,
    pub pass: bool,
}

pub fn verify_double_cover_inequality(g: &Graph) -> Result<DoubleCoverChain> {
    if 2 * g.n() > COVER_LIMIT {
        return Err(Error::Capacity {
            what: "double cover chain",
            requested: 2 * g.n(),
            limit: COVER_LIMIT,
        });
    }
    let count = count_independent_sets(g);
    let count_squared = &count * &count;
    let cover_count = count_independent_sets(double_cover(g)?.graph());
    let all = g.vertices();
    // every A pairs with any subset of the vertices it has no edge to
    let cross_independent_pairs: BigUint = (0..=all)
        .map(|a| BigUint::from(1u32) << (all & !g.neighborhood_of(a)).count_ones())
        .sum();
    let j_size = if g.n() <= J_ENUMERATION_LIMIT {
        Some(BigUint::from(enumerate_j(g)?.count()))
    } else {
        None
    };
    let pass = j_size.as_ref().is_none_or(|j| *j == count_squared)
        && count_squared <= cross_independent_pairs
        && cross_independent_pairs == cover_count;
    Ok(DoubleCoverChain {
        count,
        count_squared,
        j_size,
        cross_independent_pairs,
        cover_count,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique, cycle, path, petersen, set_from};

    #[test]
    fn empty_pair_is_fixed() {
        let g = cycle(5).unwrap();
        let p = IndependentPair::new(&g, 0, 0).unwrap();
        let q = swap_forward(&g, p).unwrap();
        assert_eq!((q.a(), q.b()), (0, 0));
        assert_eq!(swap_backward(&g, q).unwrap(), p);
    }

    #[test]
    fn equal_sets_map_to_themselves() {
        // W = S has no internal edges, so every vertex is its own component
        // and lands in W1: A' = S ∩ W1 = S and B' = S ∩ W1 = S.
        let g = cycle(6).unwrap();
        let s = set_from(&[0, 2, 4]);
        let q = swap_forward(&g, IndependentPair::new(&g, s, s).unwrap()).unwrap();
        assert_eq!((q.a(), q.b()), (s, s));
        assert_eq!(q.a() | q.b(), s);
    }

    #[test]
    fn overlapping_pair_round_trips() {
        let g = path(4).unwrap();
        let a = set_from(&[0, 2]);
        let b = set_from(&[0, 3]);
        let p = IndependentPair::new(&g, a, b).unwrap();
        let q = swap_forward(&g, p).unwrap();
        // W = {0,2,3}: components {0} and {2,3}; W1 = {0,2}, W2 = {3}
        assert_eq!((q.a(), q.b()), (set_from(&[0, 2, 3]), set_from(&[0])));
        assert_eq!(swap_backward(&g, q).unwrap(), p);
    }

    #[test]
    fn rejects_invalid_pairs() {
        let g = path(3).unwrap();
        assert!(IndependentPair::new(&g, set_from(&[0, 1]), 0).is_err());
        assert!(SwapPair::new(&g, set_from(&[0]), set_from(&[1])).is_err());
        let tri = clique(3).unwrap();
        assert!(SwapPair::new(&tri, set_from(&[0, 1, 2]), 0).is_err());
    }

    #[test]
    fn j_sizes() {
        assert_eq!(enumerate_j(&clique(2).unwrap()).unwrap().count(), 9);
        assert_eq!(enumerate_j(&clique(3).unwrap()).unwrap().count(), 16);
        assert!(enumerate_j(&Graph::empty(15).unwrap()).is_err());
    }

    #[test]
    fn j_matches_definition() {
        // direct 4^n scan against the pruned enumeration
        for g in [cycle(5).unwrap(), path(4).unwrap(), clique(4).unwrap()] {
            let all = g.vertices();
            let mut direct = Vec::new();
            for a in 0..=all {
                for b in 0..=all {
                    if g.cross_independent(a, b) && g.two_colour(a | b).is_some() {
                        direct.push(SwapPair { a, b });
                    }
                }
            }
            let pruned: Vec<_> = enumerate_j(&g).unwrap().collect();
            assert_eq!(pruned, direct);
        }
    }

    #[test]
    fn submask_order() {
        let v: Vec<_> = submasks_ascending(0b1010).collect();
        assert_eq!(v, vec![0, 0b10, 0b1000, 0b1010]);
        assert_eq!(submasks_ascending(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn bijection_on_small_graphs() {
        for g in [cycle(5).unwrap(), clique(3).unwrap(), path(5).unwrap(), Graph::empty(3).unwrap()] {
            let r = verify_swap_bijection(&g, 10).unwrap();
            assert!(r.pass(), "{r:?}");
            assert!(r.forward_round_trips && r.backward_round_trips && r.union_preserved);
        }
    }

    #[test]
    fn cover_chains() {
        let c5 = verify_double_cover_inequality(&cycle(5).unwrap()).unwrap();
        assert_eq!(c5.count, BigUint::from(11u32));
        assert_eq!(c5.cover_count, BigUint::from(123u32));
        assert!(c5.pass);
        let k3 = verify_double_cover_inequality(&clique(3).unwrap()).unwrap();
        assert_eq!((k3.count_squared.clone(), k3.cover_count.clone()), (16u32.into(), 18u32.into()));
        assert!(k3.pass);
        let p = verify_double_cover_inequality(&petersen()).unwrap();
        assert_eq!(p.count_squared, BigUint::from(5776u32));
        assert_eq!(p.j_size, Some(BigUint::from(5776u32)));
        assert!(p.pass && p.cover_count >= p.count_squared);
        assert!(verify_double_cover_inequality(&Graph::empty(16).unwrap()).is_err());
    }
}
