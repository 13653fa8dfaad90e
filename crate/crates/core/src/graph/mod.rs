//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Neighbourhoods are stored as `u64` bitsets, so vertex sets throughout the
//! crate are plain [`VertexSet`] masks. Graphs are immutable values: every
//! operation that "changes" a graph returns a new one.

mod format;
mod layers;

pub use format::{emit_graph6, parse_edge_list, parse_graph6, to_edge_list};
pub use layers::{layer_decomposition, LayerDecomposition};

use crate::error::{Error, Result};
use std::collections::VecDeque;
use std::fmt;

pub const MAX_VERTICES: usize = 64;

/// A set of vertex ids encoded as a bitmask (bit `v` set iff `v` is a member).
pub type VertexSet = u64;

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> VertexSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate over the members of a vertex set in increasing order.
pub fn members(set: VertexSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

pub fn set_from(vertices: &[usize]) -> VertexSet {
    vertices.iter().fold(0, |acc, &v| acc | (1u64 << v))
}

pub fn set_to_vec(set: VertexSet) -> Vec<usize> {
    members(set).collect()
}

fn check_capacity(what: &'static str, requested: usize) -> Result<()> {
    if requested > MAX_VERTICES {
        Err(Error::Capacity {
            what,
            requested,
            limit: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_capacity("graph", n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Build from raw adjacency masks, validating symmetry and irreflexivity.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self> {
        let n = adj.len();
        check_capacity("graph", n)?;
        let universe = full_mask(n);
        for (u, &nb) in adj.iter().enumerate() {
            if nb & !universe != 0 {
                return Err(Error::domain(format!("vertex {u} has a neighbour outside 0..{n}")));
            }
            if nb & (1 << u) != 0 {
                return Err(Error::domain(format!("self-loop at vertex {u}")));
            }
            for v in members(nb) {
                if adj[v] & (1 << u) == 0 {
                    return Err(Error::domain(format!("asymmetric adjacency between {u} and {v}")));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    // Only used while a graph is under construction.
    fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::domain(format!("self-loop at vertex {u}")));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        full_mask(self.n)
    }

    /// Neighbourhood `N(v)` as a bitmask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1 << v) != 0
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in members(self.adj[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Union of the neighbourhoods of every vertex in `set`.
    pub fn neighborhood_of(&self, set: VertexSet) -> VertexSet {
        members(set).fold(0, |acc, v| acc | self.adj[v])
    }

    /// True iff no edge has both endpoints in `set`.
    pub fn is_independent(&self, set: VertexSet) -> bool {
        members(set).all(|v| self.adj[v] & set == 0)
    }

    /// True iff no edge joins a vertex of `a` to a vertex of `b`.
    pub fn cross_independent(&self, a: VertexSet, b: VertexSet) -> bool {
        self.neighborhood_of(a) & b == 0
    }

    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a == 0).count()
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == 0)
            .fold(0, |acc, (v, _)| acc | (1 << v))
    }

    /// Connected component of `v` inside the induced subgraph on `within`.
    pub fn component_within(&self, v: usize, within: VertexSet) -> VertexSet {
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let next = self.neighborhood_of(frontier) & within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of `G[within]`, ordered by minimum vertex.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let comp = self.component_within(v, within);
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_within(0, self.vertices()) == self.vertices()
    }

    /// `Some(d)` when every vertex has degree `d`; `None` otherwise or when `n = 0`.
    pub fn is_regular(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Induced subgraph on `keep`, with surviving vertices relabelled in order.
    pub fn induced(&self, keep: VertexSet) -> Relabeled {
        let keep = keep & self.vertices();
        let map: Vec<usize> = members(keep).collect();
        let mut new_id = [usize::MAX; MAX_VERTICES];
        for (i, &old) in map.iter().enumerate() {
            new_id[old] = i;
        }
        let adj = map
            .iter()
            .map(|&old| members(self.adj[old] & keep).fold(0u64, |acc, u| acc | (1 << new_id[u])))
            .collect();
        Relabeled {
            graph: Graph { n: map.len(), adj },
            map,
        }
    }

    /// `G - w`.
    pub fn delete_vertex(&self, w: usize) -> Result<Relabeled> {
        self.check_vertex(w)?;
        Ok(self.induced(self.vertices() & !(1 << w)))
    }

    /// `G - w - N(w)`.
    pub fn delete_closed_neighborhood(&self, w: usize) -> Result<Relabeled> {
        self.check_vertex(w)?;
        Ok(self.induced(self.vertices() & !(self.adj[w] | (1 << w))))
    }

    /// Canonical two-colouring of `G[within]`: in every component the
    /// minimum-index vertex gets side 0. Returns `(side0, side1)`, or `None`
    /// when `G[within]` contains an odd cycle.
    pub fn two_colour(&self, within: VertexSet) -> Option<(VertexSet, VertexSet)> {
        let mut side = [0u64; 2];
        let mut rest = within;
        let mut queue = VecDeque::new();
        while rest != 0 {
            let root = rest.trailing_zeros() as usize;
            side[0] |= 1 << root;
            rest &= !(1 << root);
            queue.push_back((root, 0usize));
            while let Some((u, c)) = queue.pop_front() {
                let nb = self.adj[u] & within;
                if nb & side[c] != 0 {
                    return None;
                }
                let fresh = nb & rest;
                side[1 - c] |= fresh;
                rest &= !fresh;
                for v in members(fresh) {
                    queue.push_back((v, 1 - c));
                }
            }
        }
        Some((side[0], side[1]))
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colour(self.vertices()).is_some()
    }

    /// True iff every component with at least two vertices is a complete
    /// bipartite graph. Isolated vertices are allowed.
    pub fn is_complete_bipartite_component_union(&self) -> bool {
        self.components().into_iter().all(|comp| {
            if comp.count_ones() < 2 {
                return true;
            }
            match self.two_colour(comp) {
                None => false,
                Some((a, b)) => members(a).all(|v| self.adj[v] == b),
            }
        })
    }

    /// True iff every component is a clique (an isolated vertex is `K_1`).
    pub fn is_clique_union(&self) -> bool {
        self.components()
            .into_iter()
            .all(|comp| members(comp).all(|v| self.adj[v] | (1 << v) == comp))
    }

    /// Lowest-index vertex among those of maximum degree inside `within`.
    pub fn max_degree_vertex(&self, within: VertexSet) -> Option<usize> {
        let mut best: Option<(usize, u32)> = None;
        for v in members(within) {
            let d = (self.adj[v] & within).count_ones();
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((v, d));
            }
        }
        best.map(|(v, _)| v)
    }
}

/// A graph produced by deleting vertices, plus the map `new id -> old id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeled {
    pub graph: Graph,
    pub map: Vec<usize>,
}

/// A bipartite graph with a fixed bipartition `(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bigraph {
    graph: Graph,
    part_a: VertexSet,
    part_b: VertexSet,
}

impl Bigraph {
    pub fn new(graph: Graph, part_a: VertexSet) -> Result<Self> {
        let all = graph.vertices();
        if part_a & !all != 0 {
            return Err(Error::domain("part A contains vertices outside the graph"));
        }
        let part_b = all & !part_a;
        for (u, v) in graph.edges() {
            let ua = part_a & (1 << u) != 0;
            let va = part_a & (1 << v) != 0;
            if ua == va {
                return Err(Error::domain(format!("edge {u}-{v} lies inside one part")));
            }
        }
        Ok(Bigraph {
            graph,
            part_a,
            part_b,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn part_a(&self) -> VertexSet {
        self.part_a
    }

    pub fn part_b(&self) -> VertexSet {
        self.part_b
    }

    /// The same bigraph with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> Bigraph {
        Bigraph {
            graph: self.graph.clone(),
            part_a: self.part_b,
            part_b: self.part_a,
        }
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

/// Canonical bipartition: the minimum-index vertex of every component is
/// placed in `A`. `None` if `g` has an odd cycle.
pub fn bipartition(g: &Graph) -> Option<Bigraph> {
    let (a, b) = g.two_colour(g.vertices())?;
    Some(Bigraph {
        graph: g.clone(),
        part_a: a,
        part_b: b,
    })
}

/// `K_{a,b}` with `A = {0..a}` and `B = {a..a+b}`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Bigraph> {
    if a == 0 || b == 0 {
        return Err(Error::domain("complete bipartite parts must be non-empty"));
    }
    check_capacity("complete bipartite graph", a + b)?;
    let part_a = full_mask(a);
    let part_b = full_mask(a + b) & !part_a;
    let adj = (0..a + b)
        .map(|v| if v < a { part_b } else { part_a })
        .collect();
    Ok(Bigraph {
        graph: Graph { n: a + b, adj },
        part_a,
        part_b,
    })
}

pub fn clique(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::domain("clique needs at least one vertex"));
    }
    check_capacity("clique", k)?;
    let all = full_mask(k);
    Ok(Graph {
        n: k,
        adj: (0..k).map(|v| all & !(1 << v)).collect(),
    })
}

/// Path on `n` vertices (`n - 1` edges).
pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::domain("a cycle needs at least 3 vertices"));
    }
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Star `K_{1,k}` with centre 0.
pub fn star(k: usize) -> Result<Graph> {
    Ok(complete_bipartite(1, k)?.into_graph())
}

/// Petersen graph: outer 5-cycle 0..5, spokes i -> i+5, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("petersen fixture")
}

/// Disjoint union; vertices of `g2` are shifted by `g1.n()`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Result<Graph> {
    check_capacity("disjoint union", g1.n + g2.n)?;
    let shift = g1.n;
    let adj = g1
        .adj
        .iter()
        .copied()
        .chain(g2.adj.iter().map(|&a| a << shift))
        .collect();
    Ok(Graph {
        n: g1.n + g2.n,
        adj,
    })
}

pub fn disjoint_union_all<'a>(parts: impl IntoIterator<Item = &'a Graph>) -> Result<Graph> {
    parts
        .into_iter()
        .try_fold(Graph::empty(0)?, |acc, g| disjoint_union(&acc, g))
}

/// Bipartite double cover `G x K_2`: vertex `(v, i)` has id `v + i*n`, and
/// `(u,0)~(v,1)` iff `uv` is an edge. `A` is the `i = 0` layer.
pub fn double_cover(g: &Graph) -> Result<Bigraph> {
    let n = g.n;
    check_capacity("double cover", 2 * n)?;
    let mut adj = vec![0u64; 2 * n];
    for v in 0..n {
        adj[v] = g.adj[v] << n;
        adj[v + n] = g.adj[v];
    }
    let part_a = full_mask(n);
    Ok(Bigraph {
        graph: Graph { n: 2 * n, adj },
        part_a,
        part_b: full_mask(2 * n) & !part_a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_bipartite_shapes() {
        let k11 = complete_bipartite(1, 1).unwrap();
        assert_eq!(k11.graph().n(), 2);
        assert_eq!(k11.graph().edge_count(), 1);

        let k33 = complete_bipartite(3, 3).unwrap();
        assert_eq!(k33.graph().is_regular(), Some(3));
        assert_eq!(k33.graph().edge_count(), 9);

        let k23 = complete_bipartite(2, 3).unwrap();
        assert_eq!(k23.graph().degrees(), vec![3, 3, 2, 2, 2]);
        assert_eq!(k23.graph().edge_count(), 6);
        assert_eq!(k23.part_a().count_ones(), 2);

        assert!(matches!(complete_bipartite(40, 30), Err(Error::Capacity { .. })));
    }

    #[test]
    fn cliques() {
        let k1 = clique(1).unwrap();
        assert_eq!((k1.n(), k1.edge_count(), k1.isolated_count()), (1, 0, 1));
        assert_eq!(clique(3).unwrap().edge_count(), 3);
        let k4 = clique(4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.is_regular(), Some(3));
        assert!(clique(65).is_err());
        assert_eq!(clique(64).unwrap().edge_count(), 64 * 63 / 2);
    }

    #[test]
    fn unions() {
        let k2 = clique(2).unwrap();
        let u = disjoint_union(&k2, &k2).unwrap();
        assert_eq!((u.n(), u.edge_count(), u.is_regular()), (4, 2, Some(1)));

        let u = disjoint_union(&k2, &clique(1).unwrap()).unwrap();
        assert_eq!(u.isolated_count(), 1);

        let c5 = cycle(5).unwrap();
        let u = disjoint_union(&c5, &c5).unwrap();
        assert_eq!((u.n(), u.edge_count()), (10, 10));
        assert!(!u.has_edge(4, 5));

        let big = Graph::empty(40).unwrap();
        assert!(disjoint_union(&big, &big).is_err());
    }

    #[test]
    fn double_cover_of_small_graphs() {
        let dc = double_cover(&clique(2).unwrap()).unwrap();
        let g = dc.graph();
        assert_eq!(g.components().len(), 2);
        assert_eq!(g.edge_count(), 2);

        let dc = double_cover(&petersen()).unwrap();
        assert_eq!(dc.graph().n(), 20);
        assert_eq!(dc.graph().is_regular(), Some(3));
        assert!(dc.graph().is_bipartite());
        assert!(dc.graph().is_connected());

        assert!(double_cover(&Graph::empty(33).unwrap()).is_err());
    }

    #[test]
    fn double_cover_of_triangle_is_hexagon() {
        let dc = double_cover(&cycle(3).unwrap()).unwrap().into_graph();
        assert!(dc.is_connected());
        assert_eq!(dc.is_regular(), Some(2));
        // brute-force isomorphism search against C_6 over all 720 relabellings
        let c6 = cycle(6).unwrap();
        let mut perm: Vec<usize> = (0..6).collect();
        let mut found = false;
        permute(&mut perm, 0, &mut |p| {
            if c6.edges().iter().all(|&(u, v)| dc.has_edge(p[u], p[v])) {
                found = true;
            }
        });
        assert!(found);
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn deletions_relabel_in_order() {
        let r = clique(2).unwrap().delete_vertex(0).unwrap();
        assert_eq!((r.graph.n(), r.graph.edge_count()), (1, 0));
        assert_eq!(r.map, vec![1]);

        let r = star(3).unwrap().delete_closed_neighborhood(0).unwrap();
        assert_eq!(r.graph.n(), 0);

        let r = cycle(5).unwrap().delete_closed_neighborhood(0).unwrap();
        assert_eq!(r.map, vec![2, 3]);
        assert_eq!(r.graph.edges(), vec![(0, 1)]);

        assert_eq!(
            cycle(5).unwrap().delete_vertex(5),
            Err(Error::InvalidVertex { vertex: 5, n: 5 })
        );
    }

    #[test]
    fn bipartitions() {
        let bg = bipartition(&cycle(4).unwrap()).unwrap();
        assert_eq!(bg.part_a(), set_from(&[0, 2]));
        assert_eq!(bg.part_b().count_ones(), 2);
        assert!(bipartition(&cycle(5).unwrap()).is_none());

        let two_edges = Graph::from_edges(4, &[(1, 3), (0, 2)]).unwrap();
        assert_eq!(bipartition(&two_edges).unwrap().part_a(), set_from(&[0, 1]));
    }

    #[test]
    fn structural_predicates() {
        let k23 = complete_bipartite(2, 3).unwrap().into_graph();
        let g = disjoint_union(&k23, &clique(2).unwrap()).unwrap();
        assert!(g.is_complete_bipartite_component_union());
        assert!(!cycle(6).unwrap().is_complete_bipartite_component_union());
        assert!(disjoint_union(&clique(3).unwrap(), &clique(1).unwrap())
            .unwrap()
            .is_clique_union());
        assert!(!path(3).unwrap().is_clique_union());
        assert!(Graph::empty(3).unwrap().is_complete_bipartite_component_union());
        assert!(!clique(3).unwrap().is_complete_bipartite_component_union());
        assert!(cycle(4).unwrap().is_complete_bipartite_component_union());
    }

    #[test]
    fn regularity_and_connectivity() {
        assert_eq!(petersen().is_regular(), Some(3));
        assert_eq!(path(3).unwrap().is_regular(), None);
        assert_eq!(Graph::empty(0).unwrap().is_regular(), None);
        assert_eq!(Graph::empty(2).unwrap().is_regular(), Some(0));
        assert!(petersen().is_connected());
        assert!(!Graph::empty(2).unwrap().is_connected());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_adjacency(vec![0b10, 0]).is_err());
        assert!(Bigraph::new(clique(3).unwrap(), 1).is_err());
    }
}
