use super::{members, Graph, VertexSet};
use crate::error::{Error, Result};
use serde::Serialize;

/// BFS layering of a connected graph around a pivot `w`.
///
/// `layers[k]` is the set of vertices at distance exactly `k` from `w`;
/// `edge_layers[k]` holds the edges between `layers[k-1]` and `layers[k]`
/// (`edge_layers[0]` is empty); `isolated_layers[k]` holds the vertices of
/// `layers[k]` with no neighbour in `layers[k+1]`; `forward_degree[u]` counts
/// neighbours of `u` one layer further out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerDecomposition {
    pub pivot: usize,
    pub pivot_degree: usize,
    pub distance: Vec<usize>,
    pub layers: Vec<VertexSet>,
    pub edge_layers: Vec<Vec<(usize, usize)>>,
    pub isolated_layers: Vec<VertexSet>,
    pub forward_degree: Vec<usize>,
    /// Edges with both endpoints in the same layer (none when bipartite).
    pub intra_layer_edges: Vec<(usize, usize)>,
}

impl LayerDecomposition {
    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.count_ones() as usize).collect()
    }

    /// `|I_k|`, zero past the last layer.
    pub fn isolated_in_layer(&self, k: usize) -> usize {
        self.isolated_layers
            .get(k)
            .map_or(0, |s| s.count_ones() as usize)
    }
}

pub fn layer_decomposition(g: &Graph, w: usize) -> Result<LayerDecomposition> {
    g.check_vertex(w)?;
    if !g.is_connected() {
        return Err(Error::domain("layer decomposition requires a connected graph"));
    }
    let n = g.n();
    let mut distance = vec![usize::MAX; n];
    let mut layers = vec![1u64 << w];
    distance[w] = 0;
    let mut seen = 1u64 << w;
    loop {
        let last = *layers.last().unwrap();
        let next = g.neighborhood_of(last) & !seen;
        if next == 0 {
            break;
        }
        for v in members(next) {
            distance[v] = layers.len();
        }
        seen |= next;
        layers.push(next);
    }

    let mut edge_layers = vec![Vec::new(); layers.len()];
    let mut intra_layer_edges = Vec::new();
    for (u, v) in g.edges() {
        let (du, dv) = (distance[u], distance[v]);
        if du == dv {
            intra_layer_edges.push((u, v));
        } else {
            edge_layers[du.max(dv)].push((u, v));
        }
    }

    let forward_degree: Vec<usize> = (0..n)
        .map(|u| {
            let next = layers.get(distance[u] + 1).copied().unwrap_or(0);
            (g.neighbors(u) & next).count_ones() as usize
        })
        .collect();

    let isolated_layers = layers
        .iter()
        .map(|&layer| {
            members(layer)
                .filter(|&u| forward_degree[u] == 0)
                .fold(0u64, |acc, u| acc | (1 << u))
        })
        .collect();

    Ok(LayerDecomposition {
        pivot: w,
        pivot_degree: g.degree(w),
        distance,
        layers,
        edge_layers,
        isolated_layers,
        forward_degree,
        intra_layer_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, petersen, Graph};

    #[test]
    fn star_from_centre() {
        let g = complete_bipartite(1, 3).unwrap().into_graph();
        let ld = layer_decomposition(&g, 0).unwrap();
        assert_eq!(ld.layers, vec![1, 0b1110]);
        assert_eq!(ld.isolated_layers[1], 0b1110);
        assert_eq!(ld.pivot_degree, 3);
    }

    #[test]
    fn hexagon_layers() {
        let g = cycle(6).unwrap();
        for w in 0..6 {
            let ld = layer_decomposition(&g, w).unwrap();
            assert_eq!(ld.layer_sizes(), vec![1, 2, 2, 1]);
            let edge_sizes: Vec<_> = ld.edge_layers[1..].iter().map(Vec::len).collect();
            assert_eq!(edge_sizes, vec![2, 2, 2]);
            assert!(ld.intra_layer_edges.is_empty());
        }
    }

    #[test]
    fn petersen_layers() {
        let g = petersen();
        for w in 0..10 {
            let ld = layer_decomposition(&g, w).unwrap();
            assert_eq!(ld.layer_sizes(), vec![1, 3, 6]);
            for u in members(ld.layers[1]) {
                assert_eq!(ld.forward_degree[u], 2);
            }
            // 15 edges = 3 + 6 forward, the remaining 6 sit inside the outer layer
            assert_eq!(ld.intra_layer_edges.len(), 6);
        }
    }

    #[test]
    fn rejects_disconnected() {
        let g = Graph::empty(2).unwrap();
        assert!(matches!(layer_decomposition(&g, 0), Err(Error::Domain(_))));
        assert!(layer_decomposition(&cycle(4).unwrap(), 9).is_err());
    }
}
