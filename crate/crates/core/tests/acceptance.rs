//! Release criteria. Each criterion prints one `PASS`/`FAIL` line to stderr
//! (visible without `--nocapture`); the test fails if any criterion fails.

use isbound::bounds::{
    irregular_upper_bound, lower_bound, regular_upper_bound, verify_j_inequality,
    weighted_lower_bound, weighted_upper_bound, BoundOptions, BoundReport,
};
use isbound::counting::{
    bigraph_polynomial, brute_force_count, count_independent_sets, independence_polynomial,
};
use isbound::entropy::{
    audit_entropy_chain_both, grid_argmax, chain_maximizer, chain_maximum, chain_objective,
    UNIFORM_ENTROPY_TOLERANCE,
};
use isbound::graph::{bipartition, complete_bipartite, double_cover, petersen};
use isbound::harness::{
    csv_report, generate_exhaustive, json_report, named_corpus, regular_tier, run_all,
    CorpusEntry, ResultsDetail, RunConfig,
};
use isbound::rational::{log2_biguint, log2_rational, parse_rational};
use isbound::swap::{verify_double_cover_inequality, verify_swap_bijection, COVER_LIMIT};
use isbound::Graph;
use num_bigint::BigUint;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

const TOL: f64 = 1e-9;

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exhaustive_upto(max_n: usize) -> Vec<CorpusEntry> {
    (1..=max_n).flat_map(|n| generate_exhaustive(n).unwrap()).collect()
}

/// Every labelled graph on 7 vertices, streamed by edge mask.
fn for_each_graph_on_7(mut f: impl FnMut(u64, Graph)) {
    let pairs: Vec<(usize, usize)> = (1..7).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        f(mask, Graph::from_edges(7, &edges).unwrap());
    }
}

fn oracle_agreement() -> Verdict {
    let start = Instant::now();
    let mut graphs = 0;
    let corpus = generate_exhaustive(6).unwrap().into_iter().chain(named_corpus());
    for e in corpus {
        let fast = count_independent_sets(&e.graph);
        let slow = brute_force_count(&e.graph).unwrap();
        ensure(fast == slow, || format!("{}: recursion {fast} vs brute force {slow}", e.id))?;
        graphs += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{graphs} graphs, 0 mismatches, {secs:.1} s"))
}

fn upper_bound(corpus: &[CorpusEntry]) -> Verdict {
    let (mut equal, mut min_slack) = (0, f64::INFINITY);
    for e in corpus {
        let g = &e.graph;
        let slack = irregular_upper_bound(g) - log2_biguint(&count_independent_sets(g));
        min_slack = min_slack.min(slack);
        ensure(slack >= -TOL, || format!("{}: slack {slack}", e.id))?;
        let numeric = slack.abs() <= TOL;
        ensure(numeric == g.is_complete_bipartite_component_union(), || {
            format!("{}: numeric equality {numeric} disagrees with structure", e.id)
        })?;
        equal += numeric as usize;
    }
    Ok(format!(
        "{} graphs, {equal} equality cases all complete-bipartite unions, min slack {min_slack:.3e}",
        corpus.len()
    ))
}

fn lower_bound_check(corpus: &[CorpusEntry]) -> Verdict {
    let mut equal = 0;
    for e in corpus {
        let g = &e.graph;
        let slack = lower_bound(g) - log2_biguint(&count_independent_sets(g));
        ensure(slack <= TOL, || format!("{}: bound exceeds count by {slack}", e.id))?;
        let numeric = slack.abs() <= TOL;
        ensure(numeric == g.is_clique_union(), || {
            format!("{}: numeric equality {numeric} disagrees with structure", e.id)
        })?;
        equal += numeric as usize;
    }
    Ok(format!("{} graphs, {equal} equality cases all clique unions", corpus.len()))
}

fn weighted_bounds(corpus: &[CorpusEntry]) -> Verdict {
    let lambdas: Vec<_> = ["1/2", "1", "2", "5"].map(|s| parse_rational(s).unwrap()).into();
    let unit = parse_rational("1").unwrap();
    let options = BoundOptions {
        lambdas: vec![unit.clone()],
        ..BoundOptions::default()
    };
    for e in corpus {
        let g = &e.graph;
        let poly = independence_polynomial(g);
        for lambda in &lambdas {
            let value = log2_rational(&poly.evaluate(lambda));
            let up = weighted_upper_bound(g, lambda).unwrap();
            let low = weighted_lower_bound(g, lambda).unwrap();
            ensure(up - value >= -TOL && low - value <= TOL, || {
                format!("{} at lambda {lambda}: {low} <= {value} <= {up} fails", e.id)
            })?;
        }
        let same = |a: f64, b: f64| a.to_bits() == b.to_bits();
        ensure(
            same(weighted_upper_bound(g, &unit).unwrap(), irregular_upper_bound(g))
                && same(weighted_lower_bound(g, &unit).unwrap(), lower_bound(g)),
            || format!("{}: unit fugacity bounds differ from unweighted", e.id),
        )?;
        let report = BoundReport::build(&e.id, g, &options).unwrap();
        let col = |name: &str| report.entry(name).unwrap().clone();
        let (wu, wl, u, l) = (col("weighted_upper"), col("weighted_lower"), col("irregular_upper"), col("lower"));
        ensure(
            same(wu.log2_bound, u.log2_bound)
                && same(wl.log2_bound, l.log2_bound)
                && same(wu.log2_value, u.log2_value)
                && same(wu.slack, u.slack)
                && same(wl.slack, l.slack),
            || format!("{}: report unit-fugacity columns differ", e.id),
        )?;
    }
    Ok(format!("{} graphs x 4 fugacities; unit fugacity bit-identical", corpus.len()))
}

fn bigraph_bound(corpus: &[CorpusEntry]) -> Verdict {
    let grid = ["1/2", "1", "2"].map(|s| parse_rational(s).unwrap());
    let (mut graphs, mut equal) = (0, 0);
    for e in corpus {
        let Some(bg) = bipartition(&e.graph) else { continue };
        graphs += 1;
        let structural = e.graph.is_complete_bipartite_component_union();
        let poly = bigraph_polynomial(&bg);
        for lambda in &grid {
            for mu in &grid {
                let value = log2_rational(&poly.evaluate(lambda, mu));
                let slack = isbound::bounds::bigraph_upper_bound(&bg, lambda, mu).unwrap() - value;
                ensure(slack >= -TOL, || format!("{} at ({lambda},{mu}): slack {slack}", e.id))?;
                let numeric = slack.abs() <= TOL;
                ensure(numeric == structural, || {
                    format!("{} at ({lambda},{mu}): equality {numeric} vs structure {structural}", e.id)
                })?;
                equal += numeric as usize;
            }
        }
    }
    Ok(format!("{graphs} bipartite graphs x 9 weight pairs, {equal} equality cases"))
}

fn swapping(corpus: &[CorpusEntry], everything: &[CorpusEntry]) -> Verdict {
    for e in corpus {
        let r = verify_swap_bijection(&e.graph, 1).unwrap();
        ensure(r.pass() && r.j_size == r.independent_sets * r.independent_sets, || {
            format!("{}: bijection fails {:?}", e.id, r.witnesses)
        })?;
    }
    let mut covers = 0;
    for e in everything.iter().filter(|e| 2 * e.graph.n() <= COVER_LIMIT) {
        let chain = verify_double_cover_inequality(&e.graph).unwrap();
        ensure(chain.pass, || format!("{}: i(G)^2 > i(G x K2)", e.id))?;
        covers += 1;
    }
    let p = petersen();
    let chain = verify_double_cover_inequality(&p).unwrap();
    let cover = double_cover(&p).unwrap().into_graph();
    let oracle = brute_force_count(&cover).unwrap();
    ensure(chain.count == BigUint::from(76u32) && chain.count_squared == BigUint::from(5776u32), || {
        format!("i(Petersen) = {}", chain.count)
    })?;
    ensure(oracle == chain.cover_count && chain.pass, || {
        format!("i(Desargues) recursion {} vs oracle {oracle}", chain.cover_count)
    })?;
    Ok(format!(
        "bijection on {} graphs; cover chain on {covers} graphs; 5776 <= i(Desargues) = {oracle}",
        corpus.len()
    ))
}

fn specific_values() -> Verdict {
    for d in 1..=6 {
        let g = complete_bipartite(d, d).unwrap().into_graph();
        let expected = (BigUint::from(1u32) << (d + 1)) - 1u32;
        let got = count_independent_sets(&g);
        ensure(got == expected && brute_force_count(&g).unwrap() == expected, || {
            format!("i(K_{{{d},{d}}}) = {got}")
        })?;
    }
    let bound = regular_upper_bound(10, 3).unwrap();
    let closed = 10.0 / 6.0 * 15f64.log2();
    let count = brute_force_count(&petersen()).unwrap();
    ensure((bound - closed).abs() <= 1e-12, || format!("bound {bound} vs {closed}"))?;
    ensure(bound > log2_biguint(&count), || format!("bound {bound} <= log2 {count}"))?;
    Ok(format!("i(K_dd) = 2^(d+1)-1 for d<=6; (10/6) log2 15 = {bound:.5} > log2 {count}"))
}

fn entropy_chain(everything: &[CorpusEntry]) -> Verdict {
    let (mut audited, mut tight) = (0, 0);
    for e in everything {
        let g = &e.graph;
        let Some(d) = g.is_regular().filter(|&d| d >= 1) else { continue };
        let Some(bg) = bipartition(g) else { continue };
        if g.n() > 14 {
            continue;
        }
        let structural = g.is_complete_bipartite_component_union();
        for audit in audit_entropy_chain_both(&bg, d, TOL).unwrap() {
            let failing: Vec<_> = audit.steps.iter().filter(|s| !s.pass).map(|s| s.name).collect();
            ensure(failing.is_empty(), || format!("{}: failing steps {failing:?}", e.id))?;
            let h = audit.step("uniform-entropy").unwrap();
            ensure((h.lhs_bits - h.rhs_bits).abs() <= UNIFORM_ENTROPY_TOLERANCE, || {
                format!("{}: H(I) - log2 i(G) = {}", e.id, h.lhs_bits - h.rhs_bits)
            })?;
            ensure(audit.final_equality == structural, || {
                format!("{}: final equality {} vs structure {structural}", e.id, audit.final_equality)
            })?;
        }
        audited += 1;
        tight += structural as usize;
    }
    Ok(format!("{audited} regular bipartite graphs, both orientations; {tight} tight, all K_dd unions"))
}

fn j_inequality(named: &[CorpusEntry]) -> Verdict {
    let mut instances = 0;
    let mut check = |id: &str, g: &Graph| -> Result<(), String> {
        if g.n() < 2 || !g.is_connected() || !g.is_bipartite() || g.isolated_count() > 0 {
            return Ok(());
        }
        let jd = verify_j_inequality(g, TOL).map_err(|e| format!("{id}: {e}"))?;
        ensure(jd.pass, || format!("{id}: ratio {}", jd.ratio))?;
        ensure(jd.iso_consistent(), || format!("{id}: isolated counts disagree with layers"))?;
        instances += 1;
        Ok(())
    };
    for e in exhaustive_upto(6).iter().chain(named) {
        check(&e.id, &e.graph)?;
    }
    let mut err = None;
    for_each_graph_on_7(|mask, g| {
        if err.is_none() {
            err = check(&format!("ex7-{mask}"), &g).err();
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(format!("{instances} connected bipartite graphs (all labelled n <= 7 plus fixtures)"))
}

fn maximizer() -> Verdict {
    for d in 1..=6u32 {
        let x0 = chain_maximizer(d).unwrap();
        let best = grid_argmax(|x| chain_objective(x, d).unwrap());
        ensure((best - x0).abs() <= 1e-6, || format!("d={d}: grid argmax {best} vs {x0}"))?;
        let peak = chain_objective(x0, d).unwrap();
        let closed = chain_maximum(d).unwrap();
        ensure((peak - closed).abs() <= 1e-12, || format!("d={d}: {peak} vs {closed}"))?;
    }
    Ok("d = 1..6".into())
}

fn strip_header(text: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
    v.as_object_mut().unwrap().remove("header");
    v
}

fn determinism() -> Verdict {
    let config = RunConfig {
        max_n: 5,
        detail: ResultsDetail::All,
        ..RunConfig::default()
    };
    let first = run_all(&config).unwrap();
    let again = run_all(&config).unwrap();
    let serial = run_all(&RunConfig { threads: 1, ..config.clone() }).unwrap();
    let reports: Vec<_> = [&first, &again, &serial]
        .iter()
        .map(|o| (strip_header(&json_report(&config, o)), csv_report(&config, o).unwrap()))
        .collect();
    ensure(reports[0] == reports[1], || "repeated runs differ".into())?;
    ensure(reports[0] == reports[2], || "serial and parallel runs differ".into())?;
    ensure(first.summary.failed() == 0, || first.summary.to_table())?;
    Ok(format!("{} rows identical across repeat and serial runs", first.results.len()))
}

#[test]
fn acceptance_criteria() {
    let exhaustive = exhaustive_upto(6);
    let named = named_corpus();
    let everything: Vec<_> = exhaustive.iter().cloned().chain(named.clone()).chain(regular_tier()).collect();

    let criteria: Vec<Criterion> = vec![
        ("oracle agreement", Box::new(oracle_agreement)),
        ("irregular upper bound and equality cases", Box::new(|| upper_bound(&exhaustive))),
        ("lower bound and equality cases", Box::new(|| lower_bound_check(&exhaustive))),
        ("weighted bounds", Box::new(|| weighted_bounds(&exhaustive))),
        ("bigraph bound", Box::new(|| bigraph_bound(&exhaustive))),
        ("swapping bijection and double cover", Box::new(|| swapping(&exhaustive, &everything))),
        ("specific values", Box::new(specific_values)),
        ("entropy chain audit", Box::new(|| entropy_chain(&everything))),
        ("j-inequality", Box::new(|| j_inequality(&named))),
        ("maximizer identity", Box::new(maximizer)),
        ("determinism", Box::new(determinism)),
    ];

    let mut failed = Vec::new();
    let mut err = std::io::stderr().lock();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        let (tag, text) = match &verdict {
            Ok(t) => ("PASS", t),
            Err(t) => ("FAIL", t),
        };
        writeln!(err, "{tag} criterion {:>2} {name}: {text} [{secs:.1} s]", i + 1).unwrap();
        if verdict.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
