//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::f64::consts::SQRT_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gapcheck::analysis::{AnalysisConfig, Subject};
use gapcheck::corpus::RandomSpec;
use gapcheck::expansion::{
    cheeger_constant, l1_cheeger_check, vertex_expansion, ExpansionProfile, DEFAULT_MAX_N,
};
use gapcheck::graph::{make_family, Graph, Provenance};
use gapcheck::report::RunReport;
use gapcheck::spectra::{eigenspace_pair, inner, normalized_spectrum, walk, Spectrum};
use gapcheck::symmetry::{verify_vertex_transitive, Transitivity, DEFAULT_SEARCH_LIMIT};
use gapcheck::verdict::{Status, Verdict, DEFAULT_TOL};
use gapcheck::verifier::{
    abs_concentration_check, abs_overlap_check, cheeger_inequality_check, product_variation_check,
    proof_chain_check, proof_function, second_bottom_gap_check, second_bottom_gap_simplified_check,
    second_gap_constant, simple_eigenvalue_lattice_check, transitive_bottom_gap_check,
    walk_energy_errors,
};

use common::{frozen, max_abs_diff};

const TOL: f64 = DEFAULT_TOL;

struct Case {
    id: String,
    graph: Graph,
    spectrum: Spectrum,
    profile: ExpansionProfile,
}

impl Case {
    fn new(subject: &Subject) -> Self {
        let mut graph = subject.graph.clone();
        if graph.vertex_transitive().is_none()
            && verify_vertex_transitive(&graph, DEFAULT_SEARCH_LIMIT) == Transitivity::Verified
        {
            graph = graph.with_vertex_transitive(Provenance::Verified);
        }
        let spectrum =
            normalized_spectrum(&graph).expect("corpus graphs have no isolated vertices");
        let profile = cheeger_constant(&graph, DEFAULT_MAX_N)
            .expect("corpus graphs are small")
            .with_vertex_expansion(vertex_expansion(&graph, DEFAULT_MAX_N).expect("small"));
        Self {
            id: subject.id.clone(),
            graph,
            spectrum,
            profile,
        }
    }

    fn transitive(&self) -> bool {
        self.graph.vertex_transitive().is_some()
    }
}

struct Ctx {
    subjects: Vec<Subject>,
    cases: Vec<Case>,
}

impl Ctx {
    fn connected(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.graph.is_connected())
    }

    fn case(&self, id: &str) -> &Case {
        self.cases
            .iter()
            .find(|c| c.id == id)
            .unwrap_or_else(|| panic!("{id} missing from corpus"))
    }
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Ctx) -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn require_holds(id: &str, v: &Verdict) -> Result<(), String> {
    ensure(v.status() == Status::Holds, || {
        format!(
            "{id}: {} lhs {} rhs {} slack {}",
            v.name, v.lhs, v.rhs, v.slack
        )
    })
}

fn min_slack<'a>(vs: impl IntoIterator<Item = &'a Verdict>) -> f64 {
    vs.into_iter()
        .map(|v| v.slack)
        .fold(f64::INFINITY, f64::min)
}

fn spectrum_oracle(_: &Ctx) -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 3..=12 {
        let s = normalized_spectrum(&make_family("cycle", &[n]).unwrap()).unwrap();
        worst = worst.max(max_abs_diff(s.values(), &common::cycle_spectrum(n)));
    }
    for n in 3..=8 {
        let s = normalized_spectrum(&make_family("complete", &[n]).unwrap()).unwrap();
        worst = worst.max(max_abs_diff(s.values(), &common::complete_spectrum(n)));
    }
    let s = normalized_spectrum(&make_family("petersen", &[]).unwrap()).unwrap();
    worst = worst.max(max_abs_diff(s.values(), &common::petersen_spectrum()));
    let elapsed = start.elapsed();
    ensure(worst <= 1e-9, || format!("max abs error {worst:.3e}"))?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("max abs error {worst:.2e} in {elapsed:.2?}"))
}

fn eigensolver_checks(ctx: &Ctx) -> Outcome {
    let random = ctx
        .cases
        .iter()
        .filter(|c| c.id.starts_with("random-"))
        .count();
    ensure(random == 100, || {
        format!("{random} random graphs in corpus")
    })?;
    let (mut residual, mut trace, mut trace_sq, mut ortho) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for c in &ctx.cases {
        let (g, s) = (&c.graph, &c.spectrum);
        for (i, &mu) in s.values().iter().enumerate() {
            let f = s.function(i);
            let pf = walk(g, f);
            let r = pf
                .iter()
                .zip(f)
                .map(|(a, b)| (a - mu * b).abs())
                .fold(0.0, f64::max);
            residual = residual.max(r);
            for j in i..s.len() {
                let expected = if i == j { 1.0 } else { 0.0 };
                ortho = ortho.max((inner(f, s.function(j), g).unwrap() - expected).abs());
            }
        }
        trace = trace.max(s.values().iter().sum::<f64>().abs());
        let squares: f64 = s.values().iter().map(|m| m * m).sum();
        let edge_sum: f64 = g
            .edges()
            .iter()
            .map(|&(u, v)| 2.0 / (g.degree(u) * g.degree(v)) as f64)
            .sum();
        trace_sq = trace_sq.max((squares - edge_sum).abs());
    }
    ensure(residual <= 1e-9, || format!("residual {residual:.3e}"))?;
    ensure(trace <= 1e-9, || format!("trace {trace:.3e}"))?;
    ensure(trace_sq <= 1e-8, || {
        format!("trace of square {trace_sq:.3e}")
    })?;
    ensure(ortho <= 1e-9, || format!("orthonormality {ortho:.3e}"))?;
    Ok(format!(
        "{} graphs: residual {residual:.1e}, trace {trace:.1e}, trace of square {trace_sq:.1e}, orthonormality {ortho:.1e}",
        ctx.cases.len()
    ))
}

fn cheeger_oracle(ctx: &Ctx) -> Outcome {
    let mut compared = 0;
    for c in ctx.cases.iter().filter(|c| c.graph.n() <= 10) {
        let (a, b) = common::naive_cheeger(&c.graph);
        let h = c.profile.h;
        ensure((*h.numer(), *h.denom()) == (a, b), || {
            format!("{}: gray code {h}, naive {a}/{b}", c.id)
        })?;
        compared += 1;
    }
    for (id, expected) in [
        ("cycle-5", (1, 2)),
        ("complete-4", (2, 3)),
        ("cycle-3", (1, 1)),
        ("petersen", (1, 3)),
    ] {
        let h = ctx.case(id).profile.h;
        ensure((*h.numer(), *h.denom()) == expected, || {
            format!("{id}: h = {h}")
        })?;
    }
    Ok(format!(
        "{compared} graphs match exactly; C5 1/2, K4 2/3, C3 1, Petersen 1/3"
    ))
}

fn cheeger_inequality(ctx: &Ctx) -> Outcome {
    let mut verdicts = Vec::new();
    for c in ctx.connected() {
        let (upper, lower) = cheeger_inequality_check(&c.spectrum, &c.profile, TOL);
        let (h, gap) = (c.profile.h_value(), c.spectrum.top_gap());
        ensure(2.0 * h - gap >= -TOL && gap - h * h / 2.0 >= -TOL, || {
            format!("{}: h {h}, gap {gap}", c.id)
        })?;
        require_holds(&c.id, &upper)?;
        require_holds(&c.id, &lower)?;
        verdicts.extend([upper, lower]);
    }
    Ok(format!(
        "{} verdicts, min slack {:.3e}",
        verdicts.len(),
        min_slack(&verdicts)
    ))
}

fn second_bottom_gap(ctx: &Ctx) -> Outcome {
    let mut verdicts = Vec::new();
    for c in ctx.connected() {
        let v = second_bottom_gap_check(&c.graph, &c.spectrum, &c.profile, TOL)
            .map_err(|e| format!("{}: {e}", c.id))?;
        require_holds(&c.id, &v)?;
        verdicts.push(v);
    }
    let spot = |id: &str, lhs: f64, rhs: f64| -> Result<(), String> {
        let c = ctx.case(id);
        let v = second_bottom_gap_check(&c.graph, &c.spectrum, &c.profile, TOL).unwrap();
        ensure(
            (v.lhs - lhs).abs() <= 1e-6 && (v.rhs - rhs).abs() <= 1e-6,
            || {
                format!(
                    "{id}: lhs {} rhs {}, expected {lhs} and {rhs}",
                    v.lhs, v.rhs
                )
            },
        )
    };
    spot("cycle-3", 0.5, frozen::TRIANGLE_C)?;
    spot("cycle-5", 0.190_983, frozen::CYCLE5_C)?;
    Ok(format!(
        "{} graphs, min slack {:.3e}; C3 rhs {:.7}, C5 rhs {:.7}",
        verdicts.len(),
        min_slack(&verdicts),
        frozen::TRIANGLE_C,
        frozen::CYCLE5_C
    ))
}

fn simplified_and_transitive(ctx: &Ctx) -> Outcome {
    let mut simplified = Vec::new();
    for c in ctx.connected() {
        let (a, b) = second_bottom_gap_simplified_check(&c.spectrum, &c.profile, TOL);
        require_holds(&c.id, &a)?;
        require_holds(&c.id, &b)?;
        simplified.extend([a, b]);
    }
    let mut covered = Vec::new();
    let mut transitive = Vec::new();
    for c in ctx
        .connected()
        .filter(|c| c.transitive() && !c.graph.is_bipartite())
    {
        let (a, b) = transitive_bottom_gap_check(&c.graph, &c.spectrum, &c.profile, TOL)
            .map_err(|e| format!("{}: {e}", c.id))?;
        require_holds(&c.id, &a)?;
        require_holds(&c.id, &b)?;
        transitive.extend([a, b]);
        covered.push(c.id.as_str());
    }
    let required = [
        "cycle-3",
        "cycle-5",
        "cycle-7",
        "cycle-9",
        "cycle-11",
        "petersen",
        "complete-4",
        "complete-5",
        "cayley-Z5-1.4",
        "cayley-Z7-1.2.5.6",
        "cayley-Z9-1.3.6.8",
    ];
    for id in required {
        ensure(covered.contains(&id), || {
            format!("{id} not checked as vertex-transitive")
        })?;
    }
    Ok(format!(
        "simplified: {} verdicts, min slack {:.3e}; transitive: {} graphs, min slack {:.3e}",
        simplified.len(),
        min_slack(&simplified),
        covered.len(),
        min_slack(&transitive)
    ))
}

fn lattice(ctx: &Ctx) -> Outcome {
    let mut graphs = 0;
    let mut verdicts = Vec::new();
    for c in ctx.cases.iter().filter(|c| c.transitive()) {
        let vs = simple_eigenvalue_lattice_check(&c.graph, &c.spectrum)
            .map_err(|e| format!("{}: {e}", c.id))?;
        ensure(!vs.is_empty(), || format!("{}: no simple eigenvalue", c.id))?;
        for v in &vs {
            require_holds(&c.id, v)?;
        }
        graphs += 1;
        verdicts.extend(vs);
    }
    Ok(format!(
        "{graphs} vertex-transitive graphs, {} simple eigenvalues on the lattice",
        verdicts.len()
    ))
}

fn lemma_suite(ctx: &Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0.0f64;
    for c in &ctx.cases {
        for _ in 0..50 {
            let f: Vec<f64> = (0..c.graph.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let (minus, plus) = walk_energy_errors(&c.graph, &f).unwrap();
            worst = worst.max(minus).max(plus);
        }
    }
    ensure(worst <= 1e-8, || {
        format!("edge-sum identity relative error {worst:.3e}")
    })?;

    let (mut checked, mut skipped) = (0usize, 0usize);
    for c in ctx.connected().filter(|c| c.graph.n() <= 10) {
        let (g, s) = (&c.graph, &c.spectrum);
        for i in 0..s.len() {
            let (f, mu) = (s.function(i), s.values()[i]);
            let (a, b) =
                abs_concentration_check(g, f, mu, s, TOL).map_err(|e| format!("{}: {e}", c.id))?;
            require_holds(&c.id, &a)?;
            require_holds(&c.id, &b)?;
            checked += 2;
            for j in i..s.len() {
                let (h, nu) = (s.function(j), s.values()[j]);
                let v = product_variation_check(g, f, mu, h, nu, TOL)
                    .map_err(|e| format!("{}: {e}", c.id))?;
                require_holds(&c.id, &v)?;
                let v = abs_overlap_check(g, f, mu, h, nu, s, TOL)
                    .map_err(|e| format!("{}: {e}", c.id))?;
                match v.status() {
                    Status::Skipped => skipped += 1,
                    _ => {
                        require_holds(&c.id, &v)?;
                        checked += 1;
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "edge-sum identities max relative error {worst:.1e}; {checked} eigenpair verdicts hold, {skipped} overlap checks out of regime"
    ))
}

fn proof_chain(ctx: &Ctx) -> Outcome {
    let mut l1 = Vec::new();
    let mut chain = 0;
    for c in ctx.connected() {
        let pair = eigenspace_pair(&c.spectrum).map_err(|e| format!("{}: {e}", c.id))?;
        let product: Vec<f64> = pair.f.iter().zip(pair.g).map(|(a, b)| a * b).collect();
        let v = l1_cheeger_check(&c.graph, &product, c.profile.h_value(), TOL)
            .map_err(|e| format!("{}: {e}", c.id))?;
        require_holds(&c.id, &v)?;
        l1.push(v);
        let in_regime = 1.0 + c.spectrum.mu_second_min() < c.spectrum.top_gap() / 2.0;
        match proof_chain_check(&c.graph, &c.spectrum, &c.profile, TOL)
            .map_err(|e| format!("{}: {e}", c.id))?
        {
            Some((a, b)) => {
                ensure(in_regime, || {
                    format!("{}: chain checked outside its regime", c.id)
                })?;
                require_holds(&c.id, &a)?;
                require_holds(&c.id, &b)?;
                chain += 1;
            }
            None => ensure(!in_regime, || format!("{}: chain not checked", c.id))?,
        }
    }
    ensure(chain > 0, || {
        "no graph in the small-second-gap regime".to_string()
    })?;
    Ok(format!(
        "l1 bound on {} graphs (min slack {:.3e}); chain verified on {chain} graphs",
        l1.len(),
        min_slack(&l1)
    ))
}

fn constant_properties(_: &Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut worst_oracle, mut worst_fixed_point) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let h = 1.0 - rng.gen::<f64>();
        let gap = 2.0 * (1.0 - rng.gen::<f64>());
        let c = second_gap_constant(h, gap).map_err(|e| format!("h {h}, gap {gap}: {e}"))?;
        ensure(c <= gap / 2.0, || {
            format!("c {c} > gap/2 at h {h}, gap {gap}")
        })?;
        worst_oracle = worst_oracle.max((c - common::bisect_c(h, gap)).abs() / c);
        if gap / 2.0 - c > 1e-12 {
            worst_fixed_point =
                worst_fixed_point.max((proof_function(c, c, gap) - h / SQRT_2).abs());
        }
    }
    ensure(worst_oracle <= 1e-9, || {
        format!("bisection disagreement {worst_oracle:.3e}")
    })?;
    ensure(worst_fixed_point <= 1e-8, || {
        format!("F(c,c) error {worst_fixed_point:.3e}")
    })?;

    let steps = 100;
    let grid: Vec<Vec<f64>> = (1..=steps)
        .map(|i| {
            (1..=steps)
                .map(|j| {
                    second_gap_constant(i as f64 / steps as f64, 2.0 * j as f64 / steps as f64)
                        .unwrap()
                })
                .collect()
        })
        .collect();
    for i in 0..steps {
        for j in 0..steps {
            if i + 1 < steps {
                ensure(grid[i + 1][j] >= grid[i][j], || {
                    format!("not increasing in h at ({i},{j})")
                })?;
            }
            if j + 1 < steps {
                ensure(grid[i][j + 1] >= grid[i][j], || {
                    format!("not increasing in gap at ({i},{j})")
                })?;
            }
        }
    }
    Ok(format!(
        "1000 samples below gap/2, bisection agreement {worst_oracle:.1e}, F(c,c) error {worst_fixed_point:.1e}; {steps}x{steps} grid monotone"
    ))
}

fn full_corpus(ctx: &Ctx) -> Outcome {
    let config = AnalysisConfig::default();
    let start = Instant::now();
    let first = RunReport::run(&ctx.subjects, &config, Some(RandomSpec::default()))
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let second = RunReport::run(&ctx.subjects, &config, Some(RandomSpec::default()))
        .map_err(|e| e.to_string())?;
    if let Some((id, v)) = first.failed().next() {
        return Err(format!(
            "{} failed, first {id} {}",
            first.summary.failed, v.name
        ));
    }
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    ensure(first.to_json() == second.to_json(), || {
        "reports differ".to_string()
    })?;
    let fresh = common::corpus();
    let third =
        RunReport::run(&fresh, &config, Some(RandomSpec::default())).map_err(|e| e.to_string())?;
    ensure(first.to_json() == third.to_json(), || {
        "resampled corpus differs".to_string()
    })?;
    let s = first.summary;
    Ok(format!(
        "{} graphs, {} checks: {} hold, {} skipped, 0 failed in {elapsed:.2?}; byte-identical reruns",
        s.graphs, s.checks_total, s.holds, s.skipped
    ))
}

fn main() -> ExitCode {
    let subjects = common::corpus();
    let cases = subjects.iter().map(Case::new).collect();
    let ctx = Ctx { subjects, cases };

    let criteria: [Criterion; 11] = [
        ("closed-form spectra", spectrum_oracle),
        ("eigensolver internal checks", eigensolver_checks),
        ("exact Cheeger constant", cheeger_oracle),
        ("two-sided Cheeger inequality", cheeger_inequality),
        ("second-bottom-gap bound", second_bottom_gap),
        (
            "simplified and vertex-transitive bounds",
            simplified_and_transitive,
        ),
        ("simple-eigenvalue lattice", lattice),
        ("eigenfunction lemmas", lemma_suite),
        ("l1 bound and proof chain", proof_chain),
        ("bound constant properties", constant_properties),
        ("full corpus run", full_corpus),
    ];
    let mut failures = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check(&ctx) {
            Ok(detail) => println!("PASS [{:>2}] {title}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL [{:>2}] {title}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
