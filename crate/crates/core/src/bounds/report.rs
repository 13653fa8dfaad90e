use super::{
    bigraph_upper_bound, irregular_upper_bound, lower_bound, regular_upper_bound,
    weighted_lower_bound, weighted_upper_bound, DEFAULT_TOLERANCE,
};
use crate::counting::{bigraph_polynomial, independence_polynomial};
use crate::error::Result;
use crate::graph::{bipartition, emit_graph6, Graph};
use crate::rational::{format_rational, log2_biguint, log2_rational};
use num_rational::BigRational;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundDirection {
    Upper,
    Lower,
}

/// One bound evaluated on one graph.
///
/// `slack = log2_bound - log2_value`; valid upper bounds have
/// `slack >= -tol`, valid lower bounds `slack <= tol`.
/// `structural_equality` is `None` where no equality characterisation is
/// asserted (the one-variable weighted bounds).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub direction: BoundDirection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    pub log2_value: f64,
    pub log2_bound: f64,
    pub slack: f64,
    pub holds: bool,
    pub numeric_equality: bool,
    pub structural_equality: Option<bool>,
}

impl BoundEntry {
    #[allow(clippy::too_many_arguments)]
    fn new(
        name: &'static str,
        direction: BoundDirection,
        lambda: Option<&BigRational>,
        mu: Option<&BigRational>,
        log2_value: f64,
        log2_bound: f64,
        structural_equality: Option<bool>,
        tol: f64,
    ) -> Self {
        let slack = log2_bound - log2_value;
        let holds = match direction {
            BoundDirection::Upper => slack >= -tol,
            BoundDirection::Lower => slack <= tol,
        };
        BoundEntry {
            name,
            direction,
            lambda: lambda.map(format_rational),
            mu: mu.map(format_rational),
            log2_value,
            log2_bound,
            slack,
            holds,
            numeric_equality: slack.abs() <= tol,
            structural_equality,
        }
    }

    /// False only when a structural characterisation is asserted and disagrees.
    pub fn equality_consistent(&self) -> bool {
        self.structural_equality
            .is_none_or(|s| s == self.numeric_equality)
    }
}

#[derive(Clone, Debug)]
pub struct BoundOptions {
    pub lambdas: Vec<BigRational>,
    pub weight_pairs: Vec<(BigRational, BigRational)>,
    pub tolerance: f64,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            lambdas: Vec::new(),
            weight_pairs: Vec::new(),
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

/// Exact `log2 i(G)` against every applicable bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub graph_id: String,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub log2_count: f64,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    /// Entries, in order: `irregular_upper`, `lower`, `regular_upper` (for
    /// `d`-regular graphs with `d >= 1`), then `weighted_upper` /
    /// `weighted_lower` per fugacity, then `bigraph_upper` per weight pair for
    /// bipartite graphs.
    pub fn build(id: &str, g: &Graph, options: &BoundOptions) -> Result<BoundReport> {
        use BoundDirection::{Lower, Upper};
        let tol = options.tolerance;
        let poly = independence_polynomial(g);
        let log2_count = log2_biguint(&poly.total());
        let cb_union = g.is_complete_bipartite_component_union();
        let mut entries = vec![
            BoundEntry::new("irregular_upper", Upper, None, None, log2_count, irregular_upper_bound(g), Some(cb_union), tol),
            BoundEntry::new("lower", Lower, None, None, log2_count, lower_bound(g), Some(g.is_clique_union()), tol),
        ];
        if let Some(d) = g.is_regular().filter(|&d| d >= 1) {
            entries.push(BoundEntry::new(
                "regular_upper",
                Upper,
                None,
                None,
                log2_count,
                regular_upper_bound(g.n(), d)?,
                Some(cb_union),
                tol,
            ));
        }
        for lambda in &options.lambdas {
            let value = log2_rational(&poly.evaluate(lambda));
            let up = weighted_upper_bound(g, lambda)?;
            let low = weighted_lower_bound(g, lambda)?;
            entries.push(BoundEntry::new("weighted_upper", Upper, Some(lambda), None, value, up, None, tol));
            entries.push(BoundEntry::new("weighted_lower", Lower, Some(lambda), None, value, low, None, tol));
        }
        if !options.weight_pairs.is_empty() {
            if let Some(bg) = bipartition(g) {
                let grid = bigraph_polynomial(&bg);
                for (lambda, mu) in &options.weight_pairs {
                    let value = log2_rational(&grid.evaluate(lambda, mu));
                    let bound = bigraph_upper_bound(&bg, lambda, mu)?;
                    entries.push(BoundEntry::new(
                        "bigraph_upper",
                        Upper,
                        Some(lambda),
                        Some(mu),
                        value,
                        bound,
                        Some(cb_union),
                        tol,
                    ));
                }
            }
        }
        Ok(BoundReport {
            graph_id: id.to_string(),
            graph6: emit_graph6(g),
            n: g.n(),
            m: g.edge_count(),
            log2_count,
            entries,
        })
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Plain-text table for terminal output.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "graph {} ({}), n={} m={}, log2 i(G) = {:.6}\n",
            self.graph_id, self.graph6, self.n, self.m, self.log2_count
        );
        out.push_str(&format!(
            "{:<16} {:>6} {:>6} {:>12} {:>12} {:>12}  {:<5} {:<8} {}\n",
            "bound", "lambda", "mu", "log2_value", "log2_bound", "slack", "holds", "equal", "extremal"
        ));
        for e in &self.entries {
            out.push_str(&format!(
                "{:<16} {:>6} {:>6} {:>12.6} {:>12.6} {:>12.6}  {:<5} {:<8} {}\n",
                e.name,
                e.lambda.as_deref().unwrap_or("-"),
                e.mu.as_deref().unwrap_or("-"),
                e.log2_value,
                e.log2_bound,
                e.slack,
                e.holds,
                e.numeric_equality,
                e.structural_equality.map_or("-".to_string(), |s| s.to_string()),
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, petersen};
    use crate::rational::parse_rational;

    #[test]
    fn petersen_report() {
        let r = BoundReport::build("petersen", &petersen(), &BoundOptions::default()).unwrap();
        let up = r.entry("irregular_upper").unwrap();
        assert!((up.slack - 0.26356).abs() < 1e-5);
        assert!(up.holds && !up.numeric_equality);
        let reg = r.entry("regular_upper").unwrap();
        assert!((reg.log2_bound - up.log2_bound).abs() < 1e-12);
        assert!(r.entry("bigraph_upper").is_none());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["graph_id"], "petersen");
        assert!(json["entries"][0].get("lambda").is_none());
    }

    #[test]
    fn weighted_entries_follow_options() {
        let options = BoundOptions {
            lambdas: vec![parse_rational("1/2").unwrap(), parse_rational("1").unwrap()],
            weight_pairs: vec![(parse_rational("2").unwrap(), parse_rational("1/2").unwrap())],
            tolerance: 1e-9,
        };
        let g = complete_bipartite(2, 3).unwrap().into_graph();
        let r = BoundReport::build("k23", &g, &options).unwrap();
        let names: Vec<_> = r.entries.iter().map(|e| e.name).collect();
        assert_eq!(
            names,
            ["irregular_upper", "lower", "weighted_upper", "weighted_lower", "weighted_upper", "weighted_lower", "bigraph_upper"]
        );
        assert!(r.entries.iter().all(|e| e.holds && e.equality_consistent()));
        let bigraph = r.entry("bigraph_upper").unwrap();
        assert!(bigraph.numeric_equality);
        assert_eq!(bigraph.lambda.as_deref(), Some("2"));
        assert_eq!(bigraph.mu.as_deref(), Some("1/2"));
        // unit fugacity reproduces the unweighted row exactly
        assert_eq!(r.entries[4].log2_bound, r.entries[0].log2_bound);
        assert_eq!(r.entries[4].log2_value, r.log2_count);
        assert!(r.to_table().contains("bigraph_upper"));
    }
}
