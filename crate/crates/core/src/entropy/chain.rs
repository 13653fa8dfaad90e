use super::{binary_entropy_exact, chain_maximum, verify_shearer, ISetDistribution};
use crate::bounds::DEFAULT_TOLERANCE;
use crate::error::{Error, Result};
use crate::graph::{members, Bigraph, VertexSet};
use crate::rational::{compensated_sum, log2_biguint};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

/// Largest graph the chain audit will enumerate.
pub const AUDIT_LIMIT: usize = 22;

/// `H(I) = log2 i(G)` is checked at this tolerance, independent of the
/// step tolerance.
pub const UNIFORM_ENTROPY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = "<=")]
    AtMost,
}

/// One link `lhs (= | <=) rhs` of the chain, in bits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainStep {
    pub name: &'static str,
    pub relation: Relation,
    pub lhs_bits: f64,
    pub rhs_bits: f64,
    pub slack_bits: f64,
    pub pass: bool,
}

impl ChainStep {
    fn new(name: &'static str, relation: Relation, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::with_detail(name, relation, lhs, rhs, tol, true)
    }

    /// `detail` carries per-vertex checks folded into a summed step.
    fn with_detail(name: &'static str, relation: Relation, lhs: f64, rhs: f64, tol: f64, detail: bool) -> Self {
        let slack = rhs - lhs;
        let ok = match relation {
            Relation::Equal => slack.abs() <= tol,
            Relation::AtMost => slack >= -tol,
        };
        ChainStep {
            name,
            relation,
            lhs_bits: lhs,
            rhs_bits: rhs,
            slack_bits: slack,
            pass: ok && detail,
        }
    }
}

/// The entropy chain for one orientation: `even` plays the part whose
/// vertices are summed over, `odd` the part whose restriction is bounded by
/// Shearer's lemma.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainAudit {
    pub n: usize,
    pub d: usize,
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
    pub count: String,
    pub log2_count: f64,
    pub steps: Vec<ChainStep>,
    pub pass: bool,
    /// The final inequality holds with equality within the tolerance.
    pub final_equality: bool,
}

impl ChainAudit {
    pub fn step(&self, name: &str) -> Option<&ChainStep> {
        self.steps.iter().find(|s| s.name == name)
    }

    pub fn final_step(&self) -> &ChainStep {
        self.steps.last().expect("audit has steps")
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "n={} d={} i(G)={} even={:?} odd={:?}\n{:<20} {:>3} {:>12} {:>12} {:>12}  pass\n",
            self.n, self.d, self.count, self.even, self.odd, "step", "rel", "lhs_bits", "rhs_bits", "slack_bits"
        );
        for s in &self.steps {
            let rel = match s.relation {
                Relation::Equal => "=",
                Relation::AtMost => "<=",
            };
            out.push_str(&format!(
                "{:<20} {:>3} {:>12.9} {:>12.9} {:>12.3e}  {}\n",
                s.name, rel, s.lhs_bits, s.rhs_bits, s.slack_bits, s.pass
            ));
        }
        out
    }
}

fn check_preconditions(bg: &Bigraph, d: usize) -> Result<()> {
    let g = bg.graph();
    if d == 0 {
        return Err(Error::domain("degree must be positive"));
    }
    if g.n() > AUDIT_LIMIT {
        return Err(Error::Capacity {
            what: "entropy chain audit",
            requested: g.n(),
            limit: AUDIT_LIMIT,
        });
    }
    if g.is_regular() != Some(d) {
        return Err(Error::domain(format!("graph is not {d}-regular")));
    }
    Ok(())
}

/// Audit every link of the entropy proof of the regular bound on a
/// `d`-regular bigraph, with `part_a` as the summed side.
pub fn audit_entropy_chain(bg: &Bigraph, d: usize) -> Result<ChainAudit> {
    audit_entropy_chain_with_tolerance(bg, d, DEFAULT_TOLERANCE)
}

pub fn audit_entropy_chain_with_tolerance(bg: &Bigraph, d: usize, tol: f64) -> Result<ChainAudit> {
    check_preconditions(bg, d)?;
    let g = bg.graph();
    let dist = ISetDistribution::new(g)?;
    audit_orientation(&dist, bg.part_a(), bg.part_b(), d, tol)
}

/// Both orientations, `(A, B)` then `(B, A)`.
pub fn audit_entropy_chain_both(bg: &Bigraph, d: usize, tol: f64) -> Result<[ChainAudit; 2]> {
    check_preconditions(bg, d)?;
    let dist = ISetDistribution::new(bg.graph())?;
    Ok([
        audit_orientation(&dist, bg.part_a(), bg.part_b(), d, tol)?,
        audit_orientation(&dist, bg.part_b(), bg.part_a(), d, tol)?,
    ])
}

struct VertexTerms {
    q: f64,
    h_q: f64,
    h_indicator_given_odd: f64,
    h_indicator_given_q: f64,
    h_q_given_odd: f64,
    h_x: f64,
    h_x_given_q: f64,
    /// `(1 - q) H(X_v | not Q_v)`, computed on the conditioned law.
    h_x_given_not_q_weighted: f64,
}

fn audit_orientation(
    dist: &ISetDistribution,
    even: VertexSet,
    odd: VertexSet,
    d: usize,
    tol: f64,
) -> Result<ChainAudit> {
    use Relation::{AtMost, Equal};
    let g = dist.graph();
    let n = g.n();
    let count = BigUint::from(dist.count());
    let log2_count = log2_biguint(&count);
    let range = log2_biguint(&((BigUint::one() << d) - 1u32));
    let df = d as f64;
    let marginals = dist.marginals();

    let terms: Vec<VertexTerms> = members(even)
        .map(|v| -> Result<VertexTerms> {
            let nb = g.neighbors(v);
            let bit = move |s: VertexSet| s >> v & 1 == 1;
            let q_event = move |s: VertexSet| s & nb == 0;
            let qv = &marginals[v].q;
            let q = qv.to_f64().expect("finite");
            let h_x_given_not_q = dist
                .law_given(|s| s & nb, |s| !q_event(s))
                .map_or(0.0, |law| law.entropy());
            Ok(VertexTerms {
                q,
                h_q: binary_entropy_exact(qv)?,
                h_indicator_given_odd: dist.conditional_entropy_of(bit, |s| s & odd),
                h_indicator_given_q: dist.conditional_entropy_of(bit, q_event),
                h_q_given_odd: dist.conditional_entropy_of(q_event, |s| s & odd),
                h_x: dist.entropy_of(|s| s & nb),
                h_x_given_q: dist.conditional_entropy_of(|s| s & nb, q_event),
                h_x_given_not_q_weighted: (1.0 - q) * h_x_given_not_q,
            })
        })
        .collect::<Result<_>>()?;
    let sum = |f: &dyn Fn(&VertexTerms) -> f64| compensated_sum(terms.iter().map(f));
    let all = |f: &dyn Fn(&VertexTerms) -> bool| terms.iter().all(f);

    let h_i = dist.entropy_of(|s| s);
    let h_odd = dist.entropy_of(|s| s & odd);
    let h_even_given_odd = dist.conditional_entropy_of(|s| s & even, |s| s & odd);
    let sum_q = sum(&|t| t.q);
    let sum_ind_odd = sum(&|t| t.h_indicator_given_odd);
    let sum_ind_q = sum(&|t| t.h_indicator_given_q);
    let sum_hx = sum(&|t| t.h_x);
    let sum_hq = sum(&|t| t.h_q);
    let sum_hx_given_q = sum(&|t| t.h_x_given_q);
    let sum_range = sum(&|t| (1.0 - t.q) * range);
    let second_rhs = (sum_hq + sum_range) / df;
    let combined_rhs = second_rhs + sum_q;
    let half = members(even).count() as f64;
    let gain = df - range;
    let objective = sum(&|t| t.h_q + t.q * gain) / df;
    let final_rhs = n as f64 / (2.0 * df) * log2_biguint(&((BigUint::one() << (d + 1)) - 1u32));

    let shearer_cover: Vec<VertexSet> = members(even).map(|v| g.neighbors(v)).collect();
    let shearer = verify_shearer(&dist.law(|s| s & odd), odd, &shearer_cover, d, tol)?;

    let steps = vec![
        ChainStep::new("uniform-entropy", Equal, h_i, log2_count, UNIFORM_ENTROPY_TOLERANCE),
        ChainStep::new("chain-rule", Equal, h_i, h_odd + h_even_given_odd, tol),
        ChainStep::new("subadditivity", AtMost, h_even_given_odd, sum_ind_odd, tol),
        ChainStep::new("q-determined", Equal, sum(&|t| t.h_q_given_odd), 0.0, tol),
        ChainStep::with_detail(
            "conditioning",
            AtMost,
            sum_ind_odd,
            sum_ind_q,
            tol,
            all(&|t| t.h_indicator_given_odd <= t.h_indicator_given_q + tol),
        ),
        ChainStep::with_detail(
            "indicator-given-q",
            Equal,
            sum_ind_q,
            sum_q,
            tol,
            all(&|t| (t.h_indicator_given_q - t.q).abs() <= tol),
        ),
        ChainStep::new("first-chain", AtMost, h_i, h_odd + sum_q, tol),
        ChainStep::new("shearer", AtMost, shearer.lhs_bits, shearer.rhs_bits, tol),
        ChainStep::with_detail(
            "split-on-q",
            Equal,
            sum_hx,
            sum_hq + sum_hx_given_q,
            tol,
            all(&|t| (t.h_x_given_q - t.h_x_given_not_q_weighted).abs() <= tol),
        ),
        ChainStep::with_detail(
            "range-bound",
            AtMost,
            sum_hx_given_q,
            sum_range,
            tol,
            all(&|t| t.h_x_given_q <= (1.0 - t.q) * range + tol),
        ),
        ChainStep::new("second-chain", AtMost, h_odd, second_rhs, tol),
        ChainStep::new("combined", AtMost, h_i, combined_rhs, tol),
        ChainStep::new("rearrangement", Equal, combined_rhs, half * range / df + objective, tol),
        ChainStep::new("maximizer", AtMost, objective, half / df * chain_maximum(d as u32)?, tol),
        ChainStep::new("final", AtMost, h_i, final_rhs, tol),
    ];
    let pass = steps.iter().all(|s| s.pass);
    let final_equality = steps.last().is_some_and(|s| s.slack_bits.abs() <= tol);
    Ok(ChainAudit {
        n,
        d,
        even: members(even).collect(),
        odd: members(odd).collect(),
        count: count.to_string(),
        log2_count,
        steps,
        pass,
        final_equality,
    })
}
