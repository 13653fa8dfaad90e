//! Exact Shannon entropies (in bits) of finite distributions.
//!
//! Distributions keep integer weights over a common integer total, so every
//! probability is an exact rational; floating point enters only in the final
//! `log2` of each term.

mod chain;

pub use chain::{
    audit_entropy_chain, audit_entropy_chain_both, audit_entropy_chain_with_tolerance, ChainAudit, ChainStep,
    Relation, AUDIT_LIMIT, UNIFORM_ENTROPY_TOLERANCE,
};

use crate::counting::{enumerate_independent_sets, ENUMERATION_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{members, Graph, VertexSet};
use crate::rational::{log2_biguint, CompensatedSum};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// Largest graph for which per-vertex marginals are computed.
pub const MARGINAL_LIMIT: usize = 25;

/// A finite distribution with exact rational probabilities `weight / total`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution<K: Ord> {
    weights: BTreeMap<K, BigUint>,
    total: BigUint,
}

impl<K: Ord + Clone> Distribution<K> {
    /// Empirical distribution of a sequence of equally likely outcomes.
    pub fn uniform_over(outcomes: impl IntoIterator<Item = K>) -> Result<Self> {
        Self::from_weights(outcomes.into_iter().map(|k| (k, BigUint::one())))
    }

    pub fn from_weights(items: impl IntoIterator<Item = (K, BigUint)>) -> Result<Self> {
        let mut weights: BTreeMap<K, BigUint> = BTreeMap::new();
        let mut total = BigUint::zero();
        for (k, w) in items {
            total += &w;
            *weights.entry(k).or_default() += w;
        }
        if total.is_zero() {
            return Err(Error::domain("distribution has zero total weight"));
        }
        Ok(Distribution { weights, total })
    }

    /// Probabilities must be non-negative and sum to exactly one.
    pub fn from_probabilities(items: impl IntoIterator<Item = (K, BigRational)>) -> Result<Self> {
        let items: Vec<_> = items.into_iter().collect();
        if items.iter().any(|(_, p)| p.is_negative()) {
            return Err(Error::domain("negative probability"));
        }
        let sum: BigRational = items.iter().map(|(_, p)| p.clone()).sum();
        if !sum.is_one() {
            return Err(Error::domain(format!("probabilities sum to {sum}, not 1")));
        }
        let common = items
            .iter()
            .fold(BigInt::one(), |acc, (_, p)| acc.lcm(p.denom()));
        let scale = BigRational::from_integer(common);
        Self::from_weights(items.into_iter().map(|(k, p)| {
            let w = (p * &scale).to_integer();
            (k, w.to_biguint().expect("non-negative"))
        }))
    }

    pub fn probability(&self, k: &K) -> BigRational {
        let w = self.weights.get(k).cloned().unwrap_or_default();
        BigRational::new(w.into(), self.total.clone().into())
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn support_size(&self) -> usize {
        self.weights.values().filter(|w| !w.is_zero()).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigUint)> {
        self.weights.iter()
    }

    /// Push-forward along `f`: the distribution of `f(X)`.
    pub fn map<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> Distribution<K2> {
        let mut weights: BTreeMap<K2, BigUint> = BTreeMap::new();
        for (k, w) in &self.weights {
            *weights.entry(f(k)).or_default() += w;
        }
        Distribution {
            weights,
            total: self.total.clone(),
        }
    }

    /// Conditioning on an event of positive probability.
    pub fn restrict(&self, event: impl Fn(&K) -> bool) -> Option<Self> {
        Self::from_weights(
            self.weights
                .iter()
                .filter(|(k, _)| event(k))
                .map(|(k, w)| (k.clone(), w.clone())),
        )
        .ok()
    }

    /// `H(X) = Σ p log2(1/p)` in bits.
    pub fn entropy(&self) -> f64 {
        entropy_of_weights(self.weights.values(), &self.total)
    }
}

fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    BigRational::new(num.clone().into(), den.clone().into())
        .to_f64()
        .expect("finite ratio")
}

/// `Σ (w/N) (log2 N - log2 w)`, skipping zero weights.
fn entropy_of_weights<'a>(weights: impl Iterator<Item = &'a BigUint>, total: &BigUint) -> f64 {
    let log_total = log2_biguint(total);
    weights
        .filter(|w| !w.is_zero())
        .map(|w| {
            if w == total {
                0.0
            } else {
                ratio_f64(w, total) * (log_total - log2_biguint(w))
            }
        })
        .collect::<CompensatedSum>()
        .value()
}

pub fn entropy<K: Ord + Clone>(dist: &Distribution<K>) -> f64 {
    dist.entropy()
}

/// `H(X | Y) = Σ_y p(y) Σ_x p(x|y) log2(1/p(x|y))` for a joint law of `(X, Y)`.
pub fn conditional_entropy<X: Ord + Clone, Y: Ord + Clone>(joint: &Distribution<(X, Y)>) -> f64 {
    let mut by_y: BTreeMap<&Y, Vec<&BigUint>> = BTreeMap::new();
    for ((_, y), w) in joint.iter() {
        by_y.entry(y).or_default().push(w);
    }
    by_y.into_values()
        .map(|ws| {
            let cy: BigUint = ws.iter().copied().sum();
            if cy.is_zero() {
                return 0.0;
            }
            ratio_f64(&cy, &joint.total) * entropy_of_weights(ws.into_iter(), &cy)
        })
        .collect::<CompensatedSum>()
        .value()
}

/// `H(x) = x log2(1/x) + (1-x) log2(1/(1-x))`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("binary entropy argument {x} outside [0, 1]")));
    }
    let term = |p: f64| if p == 0.0 { 0.0 } else { -p * p.log2() };
    Ok(term(x) + term(1.0 - x))
}

/// Binary entropy of an exact probability.
pub fn binary_entropy_exact(q: &BigRational) -> Result<f64> {
    let one = BigRational::one();
    if q.is_negative() || q > &one {
        return Err(Error::domain(format!("binary entropy argument {q} outside [0, 1]")));
    }
    let rest = &one - q;
    Ok(Distribution::from_probabilities([(true, q.clone()), (false, rest)])?.entropy())
}

/// `H(x) + x log2(2^d / (2^d - 1))`.
pub fn chain_objective(x: f64, d: u32) -> Result<f64> {
    let p = 2f64.powi(d as i32);
    Ok(binary_entropy(x)? + x * (p / (p - 1.0)).log2())
}

/// `x0 = 2^d / (2^{d+1} - 1)`, the maximiser of [`chain_objective`].
pub fn chain_maximizer(d: u32) -> Result<f64> {
    if d == 0 {
        return Err(Error::domain("degree must be positive"));
    }
    let p = 2f64.powi(d as i32);
    Ok(p / (2.0 * p - 1.0))
}

/// The maximum value, `log2(2^{d+1} - 1) - log2(2^d - 1)`.
pub fn chain_maximum(d: u32) -> Result<f64> {
    if d == 0 {
        return Err(Error::domain("degree must be positive"));
    }
    let one = BigUint::one();
    Ok(log2_biguint(&((&one << (d + 1)) - 1u32)) - log2_biguint(&((&one << d) - 1u32)))
}

/// Argmax of `f` on `[0, 1]`: a grid of step `1e-3`, then a grid of step
/// `1e-7` around the coarse winner.
pub fn grid_argmax(f: impl Fn(f64) -> f64) -> f64 {
    let argmax = |points: &mut dyn Iterator<Item = f64>| {
        points
            .map(|x| (x, f(x)))
            .fold((f64::NAN, f64::NEG_INFINITY), |best, (x, y)| if y > best.1 { (x, y) } else { best })
            .0
    };
    let coarse = argmax(&mut (0..=1000).map(|i| i as f64 / 1000.0));
    let lo = (coarse - 1e-3).max(0.0);
    argmax(&mut (0..=20_000).map(|i| lo + i as f64 * 1e-7).filter(|x| *x <= 1.0))
}

/// `p(v) = Pr(v ∈ I)` and `q(v) = Pr(I ∩ N(v) = ∅)` under the uniform law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexMarginal {
    #[serde(serialize_with = "serialize_rational")]
    pub p: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub q: BigRational,
}

fn serialize_rational<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::rational::format_rational(x))
}

/// The uniform distribution over the independent sets of a graph.
#[derive(Clone, Debug)]
pub struct ISetDistribution {
    graph: Graph,
    sets: Vec<VertexSet>,
}

impl ISetDistribution {
    pub fn new(g: &Graph) -> Result<Self> {
        if g.n() > ENUMERATION_LIMIT {
            return Err(Error::Capacity {
                what: "independent-set distribution",
                requested: g.n(),
                limit: ENUMERATION_LIMIT,
            });
        }
        Ok(ISetDistribution {
            graph: g.clone(),
            sets: enumerate_independent_sets(g)?.collect(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn count(&self) -> usize {
        self.sets.len()
    }

    /// Each set has probability exactly `1 / i(G)`.
    pub fn probability(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.sets.len()))
    }

    /// Law of `f(I)`.
    pub fn law<K: Ord + Clone>(&self, f: impl Fn(VertexSet) -> K) -> Distribution<K> {
        Distribution::uniform_over(self.sets.iter().map(|&s| f(s))).expect("i(G) >= 1")
    }

    /// Law of `f(I)` given the event `event(I)`, if it has positive probability.
    pub fn law_given<K: Ord + Clone>(
        &self,
        f: impl Fn(VertexSet) -> K,
        event: impl Fn(VertexSet) -> bool,
    ) -> Option<Distribution<K>> {
        Distribution::uniform_over(self.sets.iter().filter(|&&s| event(s)).map(|&s| f(s))).ok()
    }

    /// `H(f(I))`.
    pub fn entropy_of<K: Ord + Clone>(&self, f: impl Fn(VertexSet) -> K) -> f64 {
        self.law(f).entropy()
    }

    /// `H(f(I) | g(I))`.
    pub fn conditional_entropy_of<X: Ord + Clone, Y: Ord + Clone>(
        &self,
        f: impl Fn(VertexSet) -> X,
        given: impl Fn(VertexSet) -> Y,
    ) -> f64 {
        conditional_entropy(&self.law(|s| (f(s), given(s))))
    }

    pub fn marginals(&self) -> Vec<VertexMarginal> {
        let total = BigInt::from(self.sets.len());
        (0..self.graph.n())
            .map(|v| {
                let nb = self.graph.neighbors(v);
                let with_v = self.sets.iter().filter(|&&s| s & (1 << v) != 0).count();
                let free = self.sets.iter().filter(|&&s| s & nb == 0).count();
                VertexMarginal {
                    p: BigRational::new(with_v.into(), total.clone()),
                    q: BigRational::new(free.into(), total.clone()),
                }
            })
            .collect()
    }
}

pub fn marginals(g: &Graph) -> Result<Vec<VertexMarginal>> {
    if g.n() > MARGINAL_LIMIT {
        return Err(Error::Capacity {
            what: "marginals",
            requested: g.n(),
            limit: MARGINAL_LIMIT,
        });
    }
    Ok(ISetDistribution::new(g)?.marginals())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShearerCheck {
    pub lhs_bits: f64,
    pub rhs_bits: f64,
    pub multiplicity: usize,
    pub pass: bool,
}

/// Check `H(X) <= (1/m) Σ_{A ∈ cover} H(X_A)` for a random subset `X` of
/// `ground`, where `X_A = X ∩ A`. Every element of `ground` must lie in at
/// least `m >= 1` members of `cover`.
pub fn verify_shearer(
    dist: &Distribution<VertexSet>,
    ground: VertexSet,
    cover: &[VertexSet],
    m: usize,
    tolerance: f64,
) -> Result<ShearerCheck> {
    if m == 0 {
        return Err(Error::domain("cover multiplicity must be at least 1"));
    }
    for x in members(ground) {
        let hits = cover.iter().filter(|&&a| a & (1 << x) != 0).count();
        if hits < m {
            return Err(Error::domain(format!(
                "element {x} lies in {hits} cover sets, fewer than m = {m}"
            )));
        }
    }
    let lhs = dist.entropy();
    let rhs = cover
        .iter()
        .map(|&a| dist.map(|&x| x & a).entropy())
        .collect::<CompensatedSum>()
        .value()
        / m as f64;
    Ok(ShearerCheck {
        lhs_bits: lhs,
        rhs_bits: rhs,
        multiplicity: m,
        pass: lhs <= rhs + tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bipartition, clique, cycle, disjoint_union, Graph};
    use crate::rational::parse_rational;
    use proptest::prelude::*;

    fn r(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn basic_entropies() {
        let d = Distribution::uniform_over([0, 1, 2]).unwrap();
        assert!((d.entropy() - 3f64.log2()).abs() < 1e-15);
        let d = Distribution::from_probabilities([(0, r("1")), (1, r("0"))]).unwrap();
        assert_eq!(d.entropy(), 0.0);
        assert!(Distribution::from_probabilities([(0, r("1/2")), (1, r("1/3"))]).is_err());
        assert!(Distribution::from_probabilities([(0, r("3/2")), (1, r("-1/2"))]).is_err());
        let d = Distribution::from_probabilities([(0, r("1/4")), (1, r("3/4"))]).unwrap();
        assert_eq!(d.probability(&1), r("3/4"));
        assert_eq!(d.total(), &BigUint::from(4u32));
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-0.1).is_err());
        let exact = binary_entropy_exact(&r("1/3")).unwrap();
        assert!((exact - binary_entropy(1.0 / 3.0).unwrap()).abs() < 1e-15);
        assert!(binary_entropy_exact(&r("4/3")).is_err());
    }

    #[test]
    fn maximizer_for_single_edge() {
        assert!((chain_maximizer(1).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let v = chain_objective(2.0 / 3.0, 1).unwrap();
        assert!((v - 3f64.log2()).abs() < 1e-12);
        assert!((chain_maximum(1).unwrap() - 3f64.log2()).abs() < 1e-15);
        assert!(chain_maximizer(0).is_err());
    }

    #[test]
    fn maximizer_grid_search() {
        for d in 1..=6 {
            let x0 = chain_maximizer(d).unwrap();
            let best = grid_argmax(|x| chain_objective(x, d).unwrap());
            assert!((best - x0).abs() <= 1e-6, "d={d}: grid {best} vs {x0}");
            let peak = chain_objective(x0, d).unwrap();
            assert!((peak - chain_maximum(d).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn marginal_values() {
        let m = marginals(&clique(2).unwrap()).unwrap();
        assert_eq!(m[0], VertexMarginal { p: r("1/3"), q: r("2/3") });
        assert_eq!(m[1], m[0]);
        let g = disjoint_union(&cycle(4).unwrap(), &clique(1).unwrap()).unwrap();
        assert_eq!(marginals(&g).unwrap()[4].q, r("1"));
        for m in marginals(&cycle(4).unwrap()).unwrap() {
            assert_eq!(m, VertexMarginal { p: r("2/7"), q: r("4/7") });
        }
        assert!(marginals(&Graph::empty(26).unwrap()).is_err());
    }

    #[test]
    fn uniform_entropy_is_log_count() {
        for g in [cycle(7).unwrap(), clique(5).unwrap(), Graph::empty(6).unwrap()] {
            let dist = ISetDistribution::new(&g).unwrap();
            let h = dist.entropy_of(|s| s);
            assert!((h - (dist.count() as f64).log2()).abs() < 1e-12);
        }
    }

    #[test]
    fn shearer_instances() {
        let ground = 0b111;
        let dist = Distribution::uniform_over([0u64, 1, 3, 7]).unwrap();
        let full = verify_shearer(&dist, ground, &[ground], 1, 1e-9).unwrap();
        assert!(full.pass && (full.lhs_bits - full.rhs_bits).abs() < 1e-12);

        let bits = Distribution::uniform_over(0u64..8).unwrap();
        let cover = [0b011, 0b110, 0b101];
        let c = verify_shearer(&bits, ground, &cover, 2, 1e-9).unwrap();
        assert!(c.pass && (c.lhs_bits - c.rhs_bits).abs() < 1e-12);

        let bg = bipartition(&cycle(6).unwrap()).unwrap();
        let g = bg.graph();
        let iset = ISetDistribution::new(g).unwrap();
        let odd = bg.part_b();
        let law = iset.law(|s| s & odd);
        let cover: Vec<_> = members(bg.part_a()).map(|v| g.neighbors(v)).collect();
        assert!(verify_shearer(&law, odd, &cover, 2, 1e-9).unwrap().pass);

        assert!(verify_shearer(&law, odd, &cover, 3, 1e-9).is_err());
        assert!(verify_shearer(&law, odd, &cover, 0, 1e-9).is_err());
    }

    fn arb_joint() -> impl Strategy<Value = Vec<((u8, u8), u32)>> {
        proptest::collection::vec(((0u8..4, 0u8..4), 0u32..20), 1..16)
            .prop_filter("positive total", |v| v.iter().any(|(_, w)| *w > 0))
    }

    proptest! {
        #[test]
        fn conditioning_reduces_entropy(items in arb_joint()) {
            let joint = Distribution::from_weights(items.into_iter().map(|(k, w)| (k, BigUint::from(w)))).unwrap();
            let hx = joint.map(|&(x, _)| x).entropy();
            let hy = joint.map(|&(_, y)| y).entropy();
            let hxy = conditional_entropy(&joint);
            prop_assert!(hxy <= hx + 1e-12);
            // chain rule H(X,Y) = H(Y) + H(X|Y)
            prop_assert!((joint.entropy() - hy - hxy).abs() < 1e-9);
        }
    }
}
