use super::j_value;
use crate::error::{Error, Result};
use crate::graph::{layer_decomposition, Graph};
use serde::Serialize;

/// The three `j`-values around a maximum-degree pivot `w`, in log2 space,
/// together with the isolated-vertex counts that produce their `2^iso`
/// factors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JDecomposition {
    pub pivot: usize,
    pub pivot_degree: usize,
    pub j_g: f64,
    pub j_g_minus_w: f64,
    pub j_g_minus_closed_nbhd: f64,
    pub iso_g: usize,
    pub iso_g_minus_w: usize,
    pub iso_g_minus_closed_nbhd: usize,
    /// `|I_1|` and `|I_2|` from the BFS layering at `w`.
    pub layer_isolated_1: usize,
    pub layer_isolated_2: usize,
    /// `(2^{j(G-w)} + 2^{j(G-w-N(w))}) / 2^{j(G)}`.
    pub ratio: f64,
    pub pass: bool,
}

impl JDecomposition {
    pub fn iso_consistent(&self) -> bool {
        self.iso_g_minus_w == self.layer_isolated_1
            && self.iso_g_minus_closed_nbhd == self.layer_isolated_2
    }

    /// `log2(2^{j(G-w)} + 2^{j(G-w-N(w))})`.
    pub fn log2_lhs(&self) -> f64 {
        self.j_g + self.ratio.log2()
    }
}

/// Check `j(G-w) + j(G-w-N(w)) <= j(G)` for a connected bipartite graph
/// without isolated vertices on at least two vertices.
///
/// The sum is formed in linear space, relative to `2^{j(G)}`, and passes
/// when the ratio is at most `1 + tolerance`.
pub fn verify_j_inequality(g: &Graph, tolerance: f64) -> Result<JDecomposition> {
    if g.n() < 2 {
        return Err(Error::domain("j-inequality needs at least two vertices"));
    }
    if !g.is_connected() {
        return Err(Error::domain("j-inequality needs a connected graph"));
    }
    if !g.is_bipartite() {
        return Err(Error::domain("j-inequality needs a bipartite graph"));
    }
    let iso_g = g.isolated_count();
    if iso_g > 0 {
        return Err(Error::domain("j-inequality needs a graph without isolated vertices"));
    }
    let w = g.max_degree_vertex(g.vertices()).expect("n >= 2");
    let minus_w = g.delete_vertex(w)?.graph;
    let minus_closed = g.delete_closed_neighborhood(w)?.graph;
    let layers = layer_decomposition(g, w)?;

    let j_g = j_value(g);
    let j_g_minus_w = j_value(&minus_w);
    let j_g_minus_closed_nbhd = j_value(&minus_closed);
    let ratio = (j_g_minus_w - j_g).exp2() + (j_g_minus_closed_nbhd - j_g).exp2();

    Ok(JDecomposition {
        pivot: w,
        pivot_degree: g.degree(w),
        j_g,
        j_g_minus_w,
        j_g_minus_closed_nbhd,
        iso_g,
        iso_g_minus_w: minus_w.isolated_count(),
        iso_g_minus_closed_nbhd: minus_closed.isolated_count(),
        layer_isolated_1: layers.isolated_in_layer(1),
        layer_isolated_2: layers.isolated_in_layer(2),
        ratio,
        pass: ratio <= 1.0 + tolerance,
    })
}
