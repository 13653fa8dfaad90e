//! The pivot recursion shared by every exact counter.
//!
//! For a vertex set `S` of the original graph, the value of `G[S]` is
//! `value(S \ {w}) + include(w, value(S \ N[w]))`, and values of disjoint
//! components multiply. Results are memoised on the bitmask `S` for the
//! lifetime of one top-level query.

use crate::graph::{Graph, VertexSet};
use std::collections::HashMap;

/// A commutative semiring of "weights" that the recursion accumulates.
pub trait Algebra {
    type Value: Clone;

    fn one(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    /// Multiply by the weight of putting vertex `v` into the independent set.
    fn include(&self, v: usize, value: Self::Value) -> Self::Value;
}

/// Which vertex the recursion branches on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    /// Lowest-index vertex of maximum degree in the current subgraph.
    #[default]
    MaxDegreeLowest,
    /// Highest-index vertex of maximum degree.
    MaxDegreeHighest,
    /// Lowest-index vertex, ignoring degree.
    LowestIndex,
}

impl PivotRule {
    fn choose(self, g: &Graph, within: VertexSet) -> usize {
        match self {
            PivotRule::MaxDegreeLowest => g.max_degree_vertex(within).expect("non-empty"),
            PivotRule::MaxDegreeHighest => {
                let mut best = (0usize, 0u32);
                let mut found = false;
                for v in crate::graph::members(within) {
                    let d = (g.neighbors(v) & within).count_ones();
                    if !found || d >= best.1 {
                        best = (v, d);
                        found = true;
                    }
                }
                best.0
            }
            PivotRule::LowestIndex => within.trailing_zeros() as usize,
        }
    }
}

pub struct PivotEngine<'g, A: Algebra> {
    graph: &'g Graph,
    algebra: A,
    rule: PivotRule,
    memo: HashMap<VertexSet, A::Value>,
}

impl<'g, A: Algebra> PivotEngine<'g, A> {
    pub fn new(graph: &'g Graph, algebra: A, rule: PivotRule) -> Self {
        PivotEngine {
            graph,
            algebra,
            rule,
            memo: HashMap::new(),
        }
    }

    pub fn evaluate(mut self) -> A::Value {
        let all = self.graph.vertices();
        self.value(all)
    }

    fn value(&mut self, within: VertexSet) -> A::Value {
        if within == 0 {
            return self.algebra.one();
        }
        if let Some(v) = self.memo.get(&within) {
            return v.clone();
        }
        let g = self.graph;
        let first = g.component_within(within.trailing_zeros() as usize, within);
        let result = if first != within {
            let mut acc = self.connected_value(first);
            let mut rest = within & !first;
            while rest != 0 {
                let comp = g.component_within(rest.trailing_zeros() as usize, rest);
                let v = self.connected_value(comp);
                acc = self.algebra.mul(&acc, &v);
                rest &= !comp;
            }
            acc
        } else {
            self.connected_value(within)
        };
        self.memo.insert(within, result.clone());
        result
    }

    fn connected_value(&mut self, comp: VertexSet) -> A::Value {
        if comp.count_ones() == 1 {
            let v = comp.trailing_zeros() as usize;
            let one = self.algebra.one();
            let with_v = self.algebra.include(v, one.clone());
            return self.algebra.add(&one, &with_v);
        }
        if let Some(v) = self.memo.get(&comp) {
            return v.clone();
        }
        let w = self.rule.choose(self.graph, comp);
        let without = self.value(comp & !(1 << w));
        let closed = (self.graph.neighbors(w) | (1 << w)) & comp;
        let with = self.value(comp & !closed);
        let with = self.algebra.include(w, with);
        let result = self.algebra.add(&without, &with);
        self.memo.insert(comp, result.clone());
        result
    }
}
