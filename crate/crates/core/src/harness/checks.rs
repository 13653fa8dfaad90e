use super::RunConfig;
use crate::bounds::{
    bigraph_upper_bound, irregular_upper_bound, j_value, lower_bound, regular_upper_bound,
    verify_j_inequality, weighted_lower_bound, weighted_upper_bound,
};
use crate::counting::{
    bigraph_polynomial, brute_force_count, count_independent_sets, independence_polynomial,
};
use crate::entropy::{audit_entropy_chain_both, verify_shearer, ISetDistribution, AUDIT_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{bipartition, double_cover, emit_graph6, Graph};
use crate::rational::{format_rational, log2_biguint, log2_rational};
use crate::swap::{verify_double_cover_inequality, verify_swap_bijection, COVER_LIMIT};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Largest graph the brute-force oracle is run on.
pub const ORACLE_LIMIT: usize = 20;
/// Largest graph for the exhaustive swap bijection.
pub const SWAP_LIMIT: usize = 6;
/// Largest graph for the Shearer instance on closed neighbourhoods.
pub const SHEARER_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Oracle,
    UpperBound,
    LowerBound,
    RegularBound,
    WeightedUpper,
    WeightedLower,
    UnitFugacity,
    BigraphUpper,
    SwapBijection,
    DoubleCover,
    JInequality,
    JDoubling,
    EntropyChain,
    Shearer,
}

impl Check {
    pub const ALL: [Check; 14] = [
        Check::Oracle,
        Check::UpperBound,
        Check::LowerBound,
        Check::RegularBound,
        Check::WeightedUpper,
        Check::WeightedLower,
        Check::UnitFugacity,
        Check::BigraphUpper,
        Check::SwapBijection,
        Check::DoubleCover,
        Check::JInequality,
        Check::JDoubling,
        Check::EntropyChain,
        Check::Shearer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Oracle => "oracle",
            Check::UpperBound => "upper-bound",
            Check::LowerBound => "lower-bound",
            Check::RegularBound => "regular-bound",
            Check::WeightedUpper => "weighted-upper",
            Check::WeightedLower => "weighted-lower",
            Check::UnitFugacity => "unit-fugacity",
            Check::BigraphUpper => "bigraph-upper",
            Check::SwapBijection => "swap-bijection",
            Check::DoubleCover => "double-cover",
            Check::JInequality => "j-inequality",
            Check::JDoubling => "j-doubling",
            Check::EntropyChain => "entropy-chain",
            Check::Shearer => "shearer",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "check",
                name: s.to_string(),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skip => "skip",
        })
    }
}

/// One check on one graph. `param` names the fugacity or weight pair for
/// the weighted checks; the bit columns are absent for skipped checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub graph_id: String,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub check: Check,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param: Option<String>,
    pub result: Outcome,
    pub lhs_bits: Option<f64>,
    pub rhs_bits: Option<f64>,
    pub slack_bits: Option<f64>,
    pub equality: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    /// `check` with its parameter, e.g. `weighted-upper@1/2`.
    pub fn label(&self) -> String {
        match &self.param {
            Some(p) => format!("{}@{p}", self.check),
            None => self.check.to_string(),
        }
    }
}

struct Ctx<'a> {
    id: &'a str,
    graph6: String,
    g: &'a Graph,
    tol: f64,
}

impl Ctx<'_> {
    fn row(&self, check: Check, param: Option<String>, result: Outcome) -> CheckResult {
        CheckResult {
            graph_id: self.id.to_string(),
            graph6: self.graph6.clone(),
            n: self.g.n(),
            m: self.g.edge_count(),
            check,
            param,
            result,
            lhs_bits: None,
            rhs_bits: None,
            slack_bits: None,
            equality: false,
            detail: None,
        }
    }

    fn skip(&self, check: Check, why: impl Into<String>) -> CheckResult {
        CheckResult {
            detail: Some(why.into()),
            ..self.row(check, None, Outcome::Skip)
        }
    }

    /// A comparison `lhs <= rhs`; `ok` is the full verdict, `equality`
    /// whether the two sides agree within tolerance.
    fn compare(
        &self,
        check: Check,
        param: Option<String>,
        lhs: f64,
        rhs: f64,
        ok: bool,
        detail: Option<String>,
    ) -> CheckResult {
        let slack = rhs - lhs;
        CheckResult {
            lhs_bits: Some(lhs),
            rhs_bits: Some(rhs),
            slack_bits: Some(slack),
            equality: slack.abs() <= self.tol,
            detail: if ok { None } else { detail },
            ..self.row(check, param, if ok { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

/// Equality detected numerically must coincide with the structural
/// characterisation.
fn equality_detail(numeric: bool, structural: bool, what: &str) -> String {
    format!("numeric equality {numeric} but {what} {structural}")
}

/// Run one check on one graph. Checks outside their domain return a single
/// skipped row; weighted checks return one row per parameter.
pub fn run_check(check: Check, id: &str, g: &Graph, config: &RunConfig) -> Vec<CheckResult> {
    let ctx = Ctx {
        id,
        graph6: emit_graph6(g),
        g,
        tol: config.tolerance,
    };
    match evaluate(check, &ctx, config) {
        Ok(rows) => rows,
        Err(e) => vec![CheckResult {
            detail: Some(e.to_string()),
            ..ctx.row(check, None, Outcome::Fail)
        }],
    }
}

fn evaluate(check: Check, ctx: &Ctx, config: &RunConfig) -> Result<Vec<CheckResult>> {
    let g = ctx.g;
    let tol = ctx.tol;
    let one = |r: CheckResult| Ok(vec![r]);
    match check {
        Check::Oracle => {
            if g.n() > ORACLE_LIMIT {
                return one(ctx.skip(check, format!("n > {ORACLE_LIMIT}")));
            }
            let fast = count_independent_sets(g);
            let slow = brute_force_count(g)?;
            one(ctx.compare(
                check,
                None,
                log2_biguint(&fast),
                log2_biguint(&slow),
                fast == slow,
                Some(format!("recursion {fast} != brute force {slow}")),
            ))
        }
        Check::UpperBound => {
            let value = log2_biguint(&count_independent_sets(g));
            let bound = irregular_upper_bound(g);
            let numeric = (bound - value).abs() <= tol;
            let structural = g.is_complete_bipartite_component_union();
            one(ctx.compare(
                check,
                None,
                value,
                bound,
                bound - value >= -tol && numeric == structural,
                Some(equality_detail(numeric, structural, "complete-bipartite union")),
            ))
        }
        Check::LowerBound => {
            let value = log2_biguint(&count_independent_sets(g));
            let bound = lower_bound(g);
            let numeric = (bound - value).abs() <= tol;
            let structural = g.is_clique_union();
            // lower bound: lhs is the bound
            one(ctx.compare(
                check,
                None,
                bound,
                value,
                bound - value <= tol && numeric == structural,
                Some(equality_detail(numeric, structural, "clique union")),
            ))
        }
        Check::RegularBound => {
            let Some(d) = g.is_regular().filter(|&d| d >= 1) else {
                return one(ctx.skip(check, "not regular of positive degree"));
            };
            let value = log2_biguint(&count_independent_sets(g));
            let bound = regular_upper_bound(g.n(), d)?;
            let agree = (bound - irregular_upper_bound(g)).abs() <= 1e-12;
            let numeric = (bound - value).abs() <= tol;
            let structural = g.is_complete_bipartite_component_union();
            one(ctx.compare(
                check,
                None,
                value,
                bound,
                bound - value >= -tol && agree && numeric == structural,
                Some(format!(
                    "agrees with irregular bound: {agree}; {}",
                    equality_detail(numeric, structural, "complete-bipartite union")
                )),
            ))
        }
        Check::WeightedUpper | Check::WeightedLower => {
            let poly = independence_polynomial(g);
            config
                .lambdas
                .iter()
                .map(|lambda| {
                    let value = log2_rational(&poly.evaluate(lambda));
                    let param = Some(format_rational(lambda));
                    Ok(if check == Check::WeightedUpper {
                        let bound = weighted_upper_bound(g, lambda)?;
                        ctx.compare(check, param, value, bound, bound - value >= -tol, Some("bound violated".into()))
                    } else {
                        let bound = weighted_lower_bound(g, lambda)?;
                        ctx.compare(check, param, bound, value, bound - value <= tol, Some("bound violated".into()))
                    })
                })
                .collect()
        }
        Check::UnitFugacity => {
            let unit = BigRational::one();
            let up = weighted_upper_bound(g, &unit)?;
            let low = weighted_lower_bound(g, &unit)?;
            let p1 = log2_rational(&independence_polynomial(g).evaluate(&unit));
            let count = log2_biguint(&count_independent_sets(g));
            let same = |a: f64, b: f64| a.to_bits() == b.to_bits();
            let ok = same(up, irregular_upper_bound(g)) && same(low, lower_bound(g)) && same(p1, count);
            one(ctx.compare(
                check,
                None,
                up,
                irregular_upper_bound(g),
                ok,
                Some("unit fugacity differs from unweighted values".into()),
            ))
        }
        Check::BigraphUpper => {
            let Some(bg) = bipartition(g) else {
                return one(ctx.skip(check, "not bipartite"));
            };
            let grid = bigraph_polynomial(&bg);
            let structural = g.is_complete_bipartite_component_union();
            config
                .weight_pairs
                .iter()
                .map(|(lambda, mu)| {
                    let value = log2_rational(&grid.evaluate(lambda, mu));
                    let bound = bigraph_upper_bound(&bg, lambda, mu)?;
                    let numeric = (bound - value).abs() <= tol;
                    Ok(ctx.compare(
                        check,
                        Some(format!("{},{}", format_rational(lambda), format_rational(mu))),
                        value,
                        bound,
                        bound - value >= -tol && numeric == structural,
                        Some(equality_detail(numeric, structural, "complete-bipartite union")),
                    ))
                })
                .collect()
        }
        Check::SwapBijection => {
            if g.n() > SWAP_LIMIT {
                return one(ctx.skip(check, format!("n > {SWAP_LIMIT}")));
            }
            let report = verify_swap_bijection(g, 3)?;
            let detail = serde_json::to_string(&report).ok();
            let j = (report.j_size as f64).log2();
            let sq = 2.0 * (report.independent_sets as f64).log2();
            one(ctx.compare(check, None, j, sq, report.pass(), detail))
        }
        Check::DoubleCover => {
            if 2 * g.n() > COVER_LIMIT {
                return one(ctx.skip(check, format!("2n > {COVER_LIMIT}")));
            }
            let chain = verify_double_cover_inequality(g)?;
            one(ctx.compare(
                check,
                None,
                log2_biguint(&chain.count_squared),
                log2_biguint(&chain.cover_count),
                chain.pass,
                Some(format!("i(G)^2 = {} vs i(G x K2) = {}", chain.count_squared, chain.cover_count)),
            ))
        }
        Check::JInequality => match verify_j_inequality(g, tol) {
            Err(Error::Domain(why)) => one(ctx.skip(check, why)),
            Err(e) => Err(e),
            Ok(jd) => {
                let ok = jd.pass && jd.iso_consistent();
                let detail = serde_json::to_string(&jd).ok();
                one(ctx.compare(check, None, jd.log2_lhs(), jd.j_g, ok, detail))
            }
        },
        Check::JDoubling => {
            if 2 * g.n() > crate::graph::MAX_VERTICES {
                return one(ctx.skip(check, "double cover exceeds capacity"));
            }
            let cover = double_cover(g)?.into_graph();
            let lhs = j_value(&cover);
            let rhs = 2.0 * j_value(g);
            one(ctx.compare(check, None, lhs, rhs, (lhs - rhs).abs() <= tol, Some("j(G x K2) != 2 j(G)".into())))
        }
        Check::EntropyChain => {
            let Some(d) = g.is_regular().filter(|&d| d >= 1) else {
                return one(ctx.skip(check, "not regular of positive degree"));
            };
            let Some(bg) = bipartition(g) else {
                return one(ctx.skip(check, "not bipartite"));
            };
            if g.n() > AUDIT_LIMIT {
                return one(ctx.skip(check, format!("n > {AUDIT_LIMIT}")));
            }
            let audits = audit_entropy_chain_both(&bg, d, tol)?;
            let structural = g.is_complete_bipartite_component_union();
            let ok = audits.iter().all(|a| a.pass && a.final_equality == structural);
            let last = audits[0].final_step();
            let failing: Vec<_> = audits
                .iter()
                .flat_map(|a| a.steps.iter().filter(|s| !s.pass).map(|s| s.name))
                .collect();
            one(ctx.compare(
                check,
                None,
                last.lhs_bits,
                last.rhs_bits,
                ok,
                Some(format!(
                    "failing steps {failing:?}; final equality {} / {} vs union {structural}",
                    audits[0].final_equality, audits[1].final_equality
                )),
            ))
        }
        Check::Shearer => {
            if g.n() == 0 || g.n() > SHEARER_LIMIT {
                return one(ctx.skip(check, format!("n outside 1..={SHEARER_LIMIT}")));
            }
            let dist = ISetDistribution::new(g)?;
            let cover: Vec<_> = (0..g.n()).map(|v| g.neighbors(v) | 1 << v).collect();
            let m = g.degrees().into_iter().min().unwrap_or(0) + 1;
            let law = dist.law(|s| s);
            let sc = verify_shearer(&law, g.vertices(), &cover, m, tol)?;
            one(ctx.compare(check, None, sc.lhs_bits, sc.rhs_bits, sc.pass, Some("Shearer inequality violated".into())))
        }
    }
}

/// All checks on one graph, in [`Check::ALL`] order.
pub fn run_checks(id: &str, g: &Graph, config: &RunConfig) -> Vec<CheckResult> {
    Check::ALL
        .into_iter()
        .filter(|c| config.checks.as_ref().is_none_or(|set| set.contains(c)))
        .flat_map(|c| run_check(c, id, g, config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique, complete_bipartite, cycle, petersen};

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!(matches!("bogus".parse::<Check>(), Err(Error::Unknown { .. })));
    }

    #[test]
    fn petersen_rows() {
        let rows = run_checks("petersen", &petersen(), &cfg());
        assert!(rows.iter().all(|r| r.result != Outcome::Fail), "{rows:#?}");
        let up = rows.iter().find(|r| r.check == Check::UpperBound).unwrap();
        assert!((up.slack_bits.unwrap() - 0.26356).abs() < 1e-5);
        let skipped: Vec<_> = rows.iter().filter(|r| r.result == Outcome::Skip).map(|r| r.check).collect();
        assert_eq!(
            skipped,
            [Check::BigraphUpper, Check::SwapBijection, Check::JInequality, Check::EntropyChain]
        );
        let weighted = rows.iter().filter(|r| r.check == Check::WeightedUpper).count();
        assert_eq!(weighted, cfg().lambdas.len());
    }

    #[test]
    fn extremal_rows_report_equality() {
        let k33 = complete_bipartite(3, 3).unwrap().into_graph();
        let rows = run_checks("k3_3", &k33, &cfg());
        assert!(rows.iter().all(|r| r.result == Outcome::Pass), "{rows:#?}");
        for c in [Check::UpperBound, Check::RegularBound, Check::EntropyChain, Check::JInequality] {
            assert!(rows.iter().find(|r| r.check == c).unwrap().equality, "{c}");
        }
        let k4 = run_check(Check::LowerBound, "k4", &clique(4).unwrap(), &cfg());
        assert!(k4[0].equality && k4[0].result == Outcome::Pass);
    }

    #[test]
    fn tiny_tolerance_is_allowed_to_fail() {
        let config = RunConfig {
            tolerance: 1e-300,
            ..cfg()
        };
        // still a valid run: rows are produced whatever the verdict
        let rows = run_checks("c6", &cycle(6).unwrap(), &config);
        assert!(!rows.is_empty());
    }
}
