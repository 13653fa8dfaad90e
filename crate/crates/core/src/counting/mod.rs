//! Exact counting of independent sets.
//!
//! [`count_independent_sets`], [`independence_polynomial`] and
//! [`bigraph_polynomial`] all run the same memoised pivot recursion over
//! different coefficient algebras. [`brute_force_count`] and
//! [`enumerate_independent_sets`] are the independent subset-scanning
//! oracles.

mod engine;
mod polynomial;

pub use engine::{Algebra, PivotEngine, PivotRule};
pub use polynomial::{BigraphPolynomial, IndependencePolynomial};

use crate::error::{Error, Result};
use crate::graph::{Bigraph, Graph, VertexSet};
use num_bigint::BigUint;
use num_traits::One;

/// Largest graph the subset-scanning oracles accept.
pub const ENUMERATION_LIMIT: usize = 30;

struct CountAlgebra;

impl Algebra for CountAlgebra {
    type Value = BigUint;

    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a + b
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b
    }
    fn include(&self, _v: usize, value: BigUint) -> BigUint {
        value
    }
}

struct PolyAlgebra;

impl Algebra for PolyAlgebra {
    type Value = Vec<BigUint>;

    fn one(&self) -> Vec<BigUint> {
        vec![BigUint::one()]
    }
    fn add(&self, a: &Vec<BigUint>, b: &Vec<BigUint>) -> Vec<BigUint> {
        polynomial::add(a, b)
    }
    fn mul(&self, a: &Vec<BigUint>, b: &Vec<BigUint>) -> Vec<BigUint> {
        polynomial::mul(a, b)
    }
    fn include(&self, _v: usize, mut value: Vec<BigUint>) -> Vec<BigUint> {
        value.insert(0, BigUint::default());
        value
    }
}

/// Grids indexed `[a][b]`; `include` shifts along the axis of the vertex's part.
struct GridAlgebra {
    part_a: VertexSet,
}

impl Algebra for GridAlgebra {
    type Value = Vec<Vec<BigUint>>;

    fn one(&self) -> Self::Value {
        vec![vec![BigUint::one()]]
    }
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        polynomial::grid_add(a, b)
    }
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        polynomial::grid_mul(a, b)
    }
    fn include(&self, v: usize, mut value: Self::Value) -> Self::Value {
        if self.part_a & (1 << v) != 0 {
            let width = value[0].len();
            value.insert(0, vec![BigUint::default(); width]);
        } else {
            for row in &mut value {
                row.insert(0, BigUint::default());
            }
        }
        value
    }
}

/// `i(G)`, the number of independent sets including the empty set.
pub fn count_independent_sets(g: &Graph) -> BigUint {
    count_with_pivot(g, PivotRule::default())
}

pub fn count_with_pivot(g: &Graph, rule: PivotRule) -> BigUint {
    PivotEngine::new(g, CountAlgebra, rule).evaluate()
}

/// The coefficient sequence of `P_G(λ) = Σ_I λ^|I|`.
pub fn independence_polynomial(g: &Graph) -> IndependencePolynomial {
    independence_polynomial_with_pivot(g, PivotRule::default())
}

pub fn independence_polynomial_with_pivot(g: &Graph, rule: PivotRule) -> IndependencePolynomial {
    IndependencePolynomial::from_coeffs(PivotEngine::new(g, PolyAlgebra, rule).evaluate())
}

/// The grid of `P_G(λ, μ) = Σ_I λ^|I∩A| μ^|I∩B|`, via the pivot recursion.
pub fn bigraph_polynomial(bg: &Bigraph) -> BigraphPolynomial {
    let grid = PivotEngine::new(
        bg.graph(),
        GridAlgebra {
            part_a: bg.part_a(),
        },
        PivotRule::default(),
    )
    .evaluate();
    BigraphPolynomial::from_grid(
        bg.part_a().count_ones() as usize,
        bg.part_b().count_ones() as usize,
        grid,
    )
}

/// The same grid by scanning every independent set; `n <= 30`.
pub fn bigraph_polynomial_by_enumeration(bg: &Bigraph) -> Result<BigraphPolynomial> {
    let size_a = bg.part_a().count_ones() as usize;
    let size_b = bg.part_b().count_ones() as usize;
    let mut grid = vec![vec![0u64; size_b + 1]; size_a + 1];
    for set in enumerate_independent_sets(bg.graph())? {
        let a = (set & bg.part_a()).count_ones() as usize;
        let b = (set & bg.part_b()).count_ones() as usize;
        grid[a][b] += 1;
    }
    let grid = grid
        .into_iter()
        .map(|row| row.into_iter().map(BigUint::from).collect())
        .collect();
    Ok(BigraphPolynomial::from_grid(size_a, size_b, grid))
}

fn check_enumerable(g: &Graph) -> Result<()> {
    if g.n() > ENUMERATION_LIMIT {
        Err(Error::Capacity {
            what: "subset enumeration",
            requested: g.n(),
            limit: ENUMERATION_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Scan all `2^n` subsets and count the independent ones.
pub fn brute_force_count(g: &Graph) -> Result<BigUint> {
    check_enumerable(g)?;
    let adj = g.adjacency();
    let count = (0u64..1 << g.n())
        .filter(|&s| {
            let mut rest = s;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                if adj[v] & s != 0 {
                    return false;
                }
                rest &= rest - 1;
            }
            true
        })
        .count();
    Ok(BigUint::from(count))
}

/// Every independent set of `g` exactly once, in increasing bitmask order.
pub fn enumerate_independent_sets(g: &Graph) -> Result<IndependentSets<'_>> {
    check_enumerable(g)?;
    Ok(IndependentSets {
        graph: g,
        stack: vec![Frame {
            next: g.n(),
            set: 0,
            blocked: 0,
        }],
    })
}

#[derive(Clone, Copy)]
struct Frame {
    // vertices >= next are decided
    next: usize,
    set: VertexSet,
    blocked: VertexSet,
}

/// Depth-first walk deciding vertices from the highest index down,
/// excluding before including, which yields sets in numeric order.
pub struct IndependentSets<'g> {
    graph: &'g Graph,
    stack: Vec<Frame>,
}

impl Iterator for IndependentSets<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        while let Some(frame) = self.stack.pop() {
            if frame.next == 0 {
                return Some(frame.set);
            }
            let v = frame.next - 1;
            if frame.blocked & (1 << v) == 0 {
                self.stack.push(Frame {
                    next: v,
                    set: frame.set | (1 << v),
                    blocked: frame.blocked | self.graph.neighbors(v),
                });
            }
            self.stack.push(Frame { next: v, ..frame });
        }
        None
    }
}
