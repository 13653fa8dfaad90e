//! Closed-form extremal bounds on `i(G)` and `P_G(λ)`, all in log2 space.
//!
//! Every bound is assembled from exact big-integer or rational factors and
//! only converted to `f64` at the final `log2`, one factor at a time, with a
//! compensated sum over factors.

mod j;
mod report;

pub use j::{verify_j_inequality, JDecomposition};
pub use report::{BoundDirection, BoundEntry, BoundOptions, BoundReport};

use crate::counting::count_independent_sets;
use crate::error::{Error, Result};
use crate::graph::{members, Bigraph, Graph};
use crate::rational::{log2_biguint, log2_rational, CompensatedSum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `i(K_{a,b}) = 2^a + 2^b - 1`.
pub fn complete_bipartite_count(a: usize, b: usize) -> BigUint {
    (BigUint::one() << a) + (BigUint::one() << b) - 1u32
}

/// `P_{K_{a,b}}(λ) = (1+λ)^a + (1+λ)^b - 1`.
pub fn complete_bipartite_partition(a: usize, b: usize, lambda: &BigRational) -> BigRational {
    let base = BigRational::one() + lambda;
    num_traits::pow(base.clone(), a) + num_traits::pow(base, b) - BigRational::one()
}

pub fn log2_count(g: &Graph) -> f64 {
    log2_biguint(&count_independent_sets(g))
}

fn require_positive(name: &str, x: &BigRational) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive")))
    }
}

/// `(n / 2d) * log2(2^{d+1} - 1)`, the bound for `d`-regular graphs.
pub fn regular_upper_bound(n: usize, d: usize) -> Result<f64> {
    if n == 0 || d == 0 {
        return Err(Error::domain("regular bound needs n >= 1 and d >= 1"));
    }
    let kdd = complete_bipartite_count(d, d);
    Ok(n as f64 / (2 * d) as f64 * log2_biguint(&kdd))
}

/// `iso(G) + Σ_{uv∈E} log2(2^{d_u} + 2^{d_v} - 1) / (d_u d_v)`.
pub fn irregular_upper_bound(g: &Graph) -> f64 {
    let mut sum = CompensatedSum::new();
    sum.add(g.isolated_count() as f64);
    for (u, v) in g.edges() {
        let (du, dv) = (g.degree(u), g.degree(v));
        sum.add(log2_biguint(&complete_bipartite_count(du, dv)) / (du * dv) as f64);
    }
    sum.value()
}

/// The same bound restricted to graphs without isolated vertices.
pub fn irregular_upper_bound_no_isolated(g: &Graph) -> Result<f64> {
    if g.isolated_count() > 0 {
        return Err(Error::domain("graph has isolated vertices"));
    }
    Ok(irregular_upper_bound(g))
}

/// `j(G)` in log2 space; the same functional as the irregular upper bound.
pub fn j_value(g: &Graph) -> f64 {
    irregular_upper_bound(g)
}

/// `iso(G) log2(1+λ) + Σ_{uv∈E} log2 P_{K_{d_u,d_v}}(λ) / (d_u d_v)`.
pub fn weighted_upper_bound(g: &Graph, lambda: &BigRational) -> Result<f64> {
    require_positive("fugacity", lambda)?;
    let mut sum = CompensatedSum::new();
    sum.add(g.isolated_count() as f64 * log2_rational(&(BigRational::one() + lambda)));
    for (u, v) in g.edges() {
        let (du, dv) = (g.degree(u), g.degree(v));
        let factor = complete_bipartite_partition(du, dv, lambda);
        sum.add(log2_rational(&factor) / (du * dv) as f64);
    }
    Ok(sum.value())
}

/// Two-variable bound for a bigraph `(A, B)`:
/// `Σ_{uv, u∈A, v∈B} log2((1+λ)^{d_v} + (1+μ)^{d_u} - 1) / (d_u d_v)`,
/// plus `log2(1+λ)` per isolated `A`-vertex and `log2(1+μ)` per isolated
/// `B`-vertex.
pub fn bigraph_upper_bound(bg: &Bigraph, lambda: &BigRational, mu: &BigRational) -> Result<f64> {
    require_positive("lambda", lambda)?;
    require_positive("mu", mu)?;
    let g = bg.graph();
    let one = BigRational::one();
    let isolated = g.isolated_vertices();
    let iso_a = (isolated & bg.part_a()).count_ones() as f64;
    let iso_b = (isolated & bg.part_b()).count_ones() as f64;
    let mut sum = CompensatedSum::new();
    sum.add(iso_a * log2_rational(&(&one + lambda)));
    sum.add(iso_b * log2_rational(&(&one + mu)));
    for u in members(bg.part_a()) {
        for v in members(g.neighbors(u)) {
            let (du, dv) = (g.degree(u), g.degree(v));
            let factor = num_traits::pow(&one + lambda, dv) + num_traits::pow(&one + mu, du) - &one;
            sum.add(log2_rational(&factor) / (du * dv) as f64);
        }
    }
    Ok(sum.value())
}

/// `Σ_v log2(d_v + 2) / (d_v + 1)`.
pub fn lower_bound(g: &Graph) -> f64 {
    (0..g.n())
        .map(|v| {
            let d = g.degree(v);
            log2_biguint(&BigUint::from(d + 2)) / (d + 1) as f64
        })
        .collect::<CompensatedSum>()
        .value()
}

/// `Σ_v log2((d_v + 1) λ + 1) / (d_v + 1)`.
pub fn weighted_lower_bound(g: &Graph, lambda: &BigRational) -> Result<f64> {
    require_positive("fugacity", lambda)?;
    Ok((0..g.n())
        .map(|v| {
            let d = g.degree(v);
            let factor = lambda * BigRational::from_integer((d + 1).into()) + BigRational::one();
            log2_rational(&factor) / (d + 1) as f64
        })
        .collect::<CompensatedSum>()
        .value())
}

/// The two unweighted bounds whose equality cases are characterised
/// structurally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    IrregularUpper,
    Lower,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::IrregularUpper => "irregular_upper",
            BoundKind::Lower => "lower",
        }
    }

    pub fn evaluate(self, g: &Graph) -> f64 {
        match self {
            BoundKind::IrregularUpper => irregular_upper_bound(g),
            BoundKind::Lower => lower_bound(g),
        }
    }

    /// The structural equality condition: complete bipartite components
    /// (plus isolated vertices) for the upper bound, cliques for the lower.
    pub fn extremal(self, g: &Graph) -> bool {
        match self {
            BoundKind::IrregularUpper => g.is_complete_bipartite_component_union(),
            BoundKind::Lower => g.is_clique_union(),
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "irregular_upper" | "upper" => Ok(BoundKind::IrregularUpper),
            "lower" => Ok(BoundKind::Lower),
            _ => Err(Error::Unknown {
                kind: "bound",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EqualityCheck {
    pub slack: f64,
    pub numeric: bool,
    pub structural: bool,
}

impl EqualityCheck {
    /// The biconditional `numeric ⟺ structural`.
    pub fn consistent(&self) -> bool {
        self.numeric == self.structural
    }
}

pub fn equality_case_check(g: &Graph, kind: BoundKind, tolerance: f64) -> EqualityCheck {
    let slack = kind.evaluate(g) - log2_count(g);
    EqualityCheck {
        slack,
        numeric: slack.abs() <= tolerance,
        structural: kind.extremal(g),
    }
}
