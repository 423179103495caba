//! Per-graph pipeline: spectrum, expansion, then every applicable check.
//!
//! Hypothesis violations never fail a run. A check whose hypothesis does not
//! hold for the graph is recorded as a skipped verdict carrying the reason.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::expansion::{
    cheeger_constant, l1_cheeger_check, ratio_f64, vertex_expansion, ExpansionError,
    ExpansionProfile, DEFAULT_MAX_N, L1_CHEEGER_ANCHOR,
};
use crate::graph::{Graph, Provenance};
use crate::spectra::{
    diagnostics, normalized_spectrum_with, SpectraError, Spectrum, DEFAULT_CLUSTER_TOL,
    DEFAULT_MAX_SWEEPS,
};
use crate::symmetry::{verify_vertex_transitive, Transitivity, DEFAULT_SEARCH_LIMIT};
use crate::verdict::{Verdict, DEFAULT_TOL};
use crate::verifier::{self, anchors, PriorRatios};

/// Groups of checks selectable with `--checks`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckGroup {
    /// Eigensolver health and spectral structure cross-checks.
    Spectrum,
    /// Two-sided Cheeger inequality.
    Cheeger,
    /// `h_out/d ≤ h ≤ h_out` for regular graphs.
    Sandwich,
    /// Bounds on `1+μ_{n−1}`.
    PairGap,
    /// Bounds on `1+μ_n` and simple-eigenvalue lattice for vertex-transitive graphs.
    VertexTransitive,
    /// Bounds on `1+μ_n` for Cayley graphs of odd-order or simple groups.
    Cayley,
    /// Eigenfunction lemmas and edge-sum identities.
    Lemmas,
    /// ℓ¹ Cheeger bound on the bottom product and the assembled argument.
    ProofChain,
    /// Report-only ratios against earlier bounds.
    Ratios,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 9] = [
        CheckGroup::Spectrum,
        CheckGroup::Cheeger,
        CheckGroup::Sandwich,
        CheckGroup::PairGap,
        CheckGroup::VertexTransitive,
        CheckGroup::Cayley,
        CheckGroup::Lemmas,
        CheckGroup::ProofChain,
        CheckGroup::Ratios,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckGroup::Spectrum => "spectrum",
            CheckGroup::Cheeger => "cheeger",
            CheckGroup::Sandwich => "sandwich",
            CheckGroup::PairGap => "pair-gap",
            CheckGroup::VertexTransitive => "vertex-transitive",
            CheckGroup::Cayley => "cayley",
            CheckGroup::Lemmas => "lemmas",
            CheckGroup::ProofChain => "proof-chain",
            CheckGroup::Ratios => "ratios",
        }
    }
}

impl fmt::Display for CheckGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckGroup::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = CheckGroup::ALL.iter().map(|g| g.name()).collect();
                format!("unknown check `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisConfig {
    pub tol: f64,
    pub cluster_tol: f64,
    pub max_sweeps: usize,
    pub max_n: usize,
    pub vt_limit: usize,
    pub assume_vt: bool,
    pub seed: u64,
    /// Graphs up to this size get every eigenfunction pair in the lemma
    /// suite; larger ones get `lemma_pair_samples` random pairs.
    pub lemma_all_pairs_max_n: usize,
    pub lemma_pair_samples: usize,
    pub walk_energy_samples: usize,
    pub checks: BTreeSet<CheckGroup>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            cluster_tol: DEFAULT_CLUSTER_TOL,
            max_sweeps: DEFAULT_MAX_SWEEPS,
            max_n: DEFAULT_MAX_N,
            vt_limit: DEFAULT_SEARCH_LIMIT,
            assume_vt: false,
            seed: 42,
            lemma_all_pairs_max_n: 10,
            lemma_pair_samples: 50,
            walk_energy_samples: 50,
            checks: CheckGroup::ALL.into_iter().collect(),
        }
    }
}

impl AnalysisConfig {
    fn wants(&self, group: CheckGroup) -> bool {
        self.checks.contains(&group)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("{id}: {source}")]
    Spectra {
        id: String,
        #[source]
        source: SpectraError,
    },
    #[error("{id}: {source}")]
    Expansion {
        id: String,
        #[source]
        source: ExpansionError,
    },
}

/// Group-side facts about a Cayley graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleyInfo {
    pub order: usize,
    pub generators: Vec<usize>,
    pub order_is_odd: bool,
    pub asserted_simple: bool,
    pub applicable: bool,
}

/// A graph queued for analysis.
#[derive(Clone, Debug)]
pub struct Subject {
    pub id: String,
    pub source: String,
    pub graph: Graph,
    pub cayley: Option<CayleyInfo>,
}

impl Subject {
    pub fn new(id: impl Into<String>, source: impl Into<String>, graph: Graph) -> Self {
        Self {
            id: id.into(),
            source: source.into(),
            graph,
            cayley: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RationalValue {
    pub numer: u64,
    pub denom: u64,
    pub value: f64,
}

impl From<Ratio<u64>> for RationalValue {
    fn from(r: Ratio<u64>) -> Self {
        Self {
            numer: *r.numer(),
            denom: *r.denom(),
            value: ratio_f64(r),
        }
    }
}

impl fmt::Display for RationalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} = {:.12}", self.numer, self.denom, self.value)
    }
}

/// Everything computed for one graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphRecord {
    pub graph_id: String,
    pub source: String,
    pub n: usize,
    pub m: usize,
    pub regular_degree: Option<usize>,
    pub connected: bool,
    pub bipartite: bool,
    /// Provenance, or `refuted` / `skipped` from the automorphism search.
    pub vertex_transitive: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cayley: Option<CayleyInfo>,
    /// Ascending eigenvalues rounded to 12 decimals.
    pub spectrum: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub h: RationalValue,
    pub h_witness: Vec<usize>,
    pub h_out: Option<RationalValue>,
    pub verdicts: Vec<Verdict>,
    pub ratios: Option<PriorRatios>,
}

/// Rounds to 12 decimals, folding `-0` into `0`.
pub fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn stable_hash(s: &str) -> u64 {
    // FNV-1a
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Resolves vertex-transitivity: construction flags first, then a user
/// assertion, then the automorphism search.
fn resolve_transitivity(g: &Graph, config: &AnalysisConfig) -> (Graph, Option<String>) {
    if let Some(p) = g.vertex_transitive() {
        return (g.clone(), Some(p.to_string()));
    }
    if config.assume_vt {
        let p = Provenance::Asserted;
        return (g.clone().with_vertex_transitive(p), Some(p.to_string()));
    }
    match verify_vertex_transitive(g, config.vt_limit) {
        Transitivity::Verified => {
            let p = Provenance::Verified;
            (g.clone().with_vertex_transitive(p), Some(p.to_string()))
        }
        Transitivity::Refuted => (g.clone(), Some("refuted".to_string())),
        Transitivity::Skipped => (g.clone(), Some("skipped".to_string())),
    }
}

fn skipped(name: &str, anchor: &str, reason: impl fmt::Display, tol: f64) -> Verdict {
    Verdict::skip(name, anchor, format!("hypothesis not met: {reason}"), tol)
}

pub fn analyze(subject: &Subject, config: &AnalysisConfig) -> Result<GraphRecord, AnalysisError> {
    let id = subject.id.clone();
    let (g, vt_label) = resolve_transitivity(&subject.graph, config);
    let s =
        normalized_spectrum_with(&g, config.max_sweeps, config.cluster_tol).map_err(|source| {
            AnalysisError::Spectra {
                id: id.clone(),
                source,
            }
        })?;
    let expansion_err = |source| AnalysisError::Expansion {
        id: id.clone(),
        source,
    };
    let mut e = cheeger_constant(&g, config.max_n).map_err(expansion_err)?;
    e = e.with_vertex_expansion(vertex_expansion(&g, config.max_n).map_err(expansion_err)?);

    let tol = config.tol;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ stable_hash(&subject.id));
    let mut verdicts = Vec::new();

    if config.wants(CheckGroup::Spectrum) {
        verdicts.extend(spectrum_verdicts(&g, &s));
    }
    if config.wants(CheckGroup::Cheeger) {
        let (upper, lower) = verifier::cheeger_inequality_check(&s, &e, tol);
        verdicts.extend([upper, lower]);
    }
    if config.wants(CheckGroup::Sandwich) {
        match verifier::regular_sandwich_check(&g, &e, tol) {
            Ok((lower, upper)) => verdicts.extend([lower, upper]),
            Err(err) => verdicts.extend([
                skipped("regular-sandwich-lower", anchors::SANDWICH_LOWER, &err, tol),
                skipped("regular-sandwich-upper", anchors::SANDWICH_UPPER, &err, tol),
            ]),
        }
    }
    if config.wants(CheckGroup::PairGap) {
        verdicts.push(
            verifier::second_bottom_gap_check(&g, &s, &e, tol)
                .unwrap_or_else(|err| skipped("second-bottom-gap", anchors::SECOND_GAP, err, tol)),
        );
        let (spectral, expansion) = verifier::second_bottom_gap_simplified_check(&s, &e, tol);
        verdicts.extend([spectral, expansion]);
    }
    if config.wants(CheckGroup::VertexTransitive) {
        match verifier::transitive_bottom_gap_check(&g, &s, &e, tol) {
            Ok((a, b)) => verdicts.extend([a, b]),
            Err(err) => verdicts.extend([
                skipped(
                    "transitive-bottom-gap-expansion",
                    anchors::TRANSITIVE_EXPANSION,
                    &err,
                    tol,
                ),
                skipped(
                    "transitive-bottom-gap-spectral",
                    anchors::TRANSITIVE_SPECTRAL,
                    &err,
                    tol,
                ),
            ]),
        }
        match verifier::simple_eigenvalue_lattice_check(&g, &s) {
            Ok(vs) => verdicts.extend(vs),
            Err(err) => verdicts.push(skipped(
                "simple-eigenvalue-lattice",
                anchors::LATTICE,
                err,
                tol,
            )),
        }
    }
    if config.wants(CheckGroup::Cayley) {
        if let Some(info) = &subject.cayley {
            let names = [
                ("cayley-bottom-gap-expansion", anchors::CAYLEY_EXPANSION),
                ("cayley-bottom-gap-spectral", anchors::CAYLEY_SPECTRAL),
                (
                    "cayley-nontrivial-multiplicity",
                    anchors::CAYLEY_MULTIPLICITY,
                ),
            ];
            match verifier::cayley_bottom_gap_check(&g, &s, &e, info.applicable, tol) {
                Ok(vs) => verdicts.extend(vs),
                Err(err) => verdicts.extend(
                    names
                        .iter()
                        .map(|(name, anchor)| skipped(name, anchor, &err, tol)),
                ),
            }
        }
    }
    if config.wants(CheckGroup::Lemmas) {
        verdicts.extend(lemma_verdicts(&g, &s, config, &mut rng));
    }
    if config.wants(CheckGroup::ProofChain) {
        verdicts.extend(proof_chain_verdicts(&g, &s, &e, tol));
    }

    let ratios = match (config.wants(CheckGroup::Ratios), g.regular_degree()) {
        (true, Some(d)) if g.is_connected() && !g.is_bipartite() => {
            verifier::prior_bound_ratios(&s, &e, d).ok()
        }
        _ => None,
    };

    Ok(GraphRecord {
        graph_id: subject.id.clone(),
        source: subject.source.clone(),
        n: g.n(),
        m: g.m(),
        regular_degree: g.regular_degree(),
        connected: g.is_connected(),
        bipartite: g.is_bipartite(),
        vertex_transitive: vt_label,
        cayley: subject.cayley.clone(),
        spectrum: s.values().iter().copied().map(round12).collect(),
        multiplicities: s.clusters().iter().map(|r| r.len()).collect(),
        h: e.h.into(),
        h_witness: e.witness.members.clone(),
        h_out: e.h_out.as_ref().map(|v| v.ratio.into()),
        verdicts,
        ratios,
    })
}

/// Eigensolver thresholds, fixed independently of the verdict tolerance.
pub mod thresholds {
    pub const RESIDUAL: f64 = 1e-9;
    pub const TRACE: f64 = 1e-9;
    pub const TRACE_SQUARE: f64 = 1e-8;
    pub const ORTHONORMALITY: f64 = 1e-9;
    pub const TOP_EIGENVALUE: f64 = 1e-10;
    pub const RANGE: f64 = 1e-10;
}

fn spectrum_verdicts(g: &Graph, s: &Spectrum) -> Vec<Verdict> {
    let d = diagnostics(g, s);
    let mut out = vec![
        Verdict::at_most(
            "eigen-residual",
            "max_i ||D^-1 A f_i - mu_i f_i||_inf",
            d.residual,
            thresholds::RESIDUAL,
            0.0,
        ),
        Verdict::at_most(
            "eigen-trace",
            "|sum_i mu_i| = |trace(D^-1 A)| = 0",
            d.trace,
            thresholds::TRACE,
            0.0,
        ),
        Verdict::at_most(
            "eigen-trace-square",
            "sum_i mu_i^2 = sum_{u~v} 2/(d_u d_v)",
            d.trace_sq_error,
            thresholds::TRACE_SQUARE,
            0.0,
        ),
        Verdict::at_most(
            "eigen-orthonormality",
            "<f_i, f_j> = delta_ij in the degree-weighted inner product",
            d.orthonormality_error,
            thresholds::ORTHONORMALITY,
            0.0,
        ),
        Verdict::at_most(
            "top-eigenvalue",
            "mu1 = 1",
            d.top_error,
            thresholds::TOP_EIGENVALUE,
            0.0,
        ),
        Verdict::at_most(
            "eigen-range",
            "all eigenvalues lie in [-1, 1]",
            d.range_excess,
            thresholds::RANGE,
            0.0,
        ),
    ];
    for v in &mut out {
        v.dependencies.push(format!("{} Jacobi sweeps", s.sweeps()));
    }
    out.extend(verifier::spectral_structure_check(g, s));
    out
}

/// Index pairs `(i, j)`, `i ≤ j`, fed to the two-function lemmas.
fn lemma_pairs(n: usize, config: &AnalysisConfig, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let all: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    if n <= config.lemma_all_pairs_max_n || all.len() <= config.lemma_pair_samples {
        return all;
    }
    let mut picked: Vec<usize> = sample(rng, all.len(), config.lemma_pair_samples).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|k| all[k]).collect()
}

fn lemma_verdicts(
    g: &Graph,
    s: &Spectrum,
    config: &AnalysisConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<Verdict> {
    let tol = config.tol;
    let mut out = Vec::new();

    let functions: Vec<Vec<f64>> = (0..config.walk_energy_samples)
        .map(|_| (0..g.n()).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let (minus, plus) = verifier::walk_energy_check(g, &functions).expect("dimensions match");
    out.extend([minus, plus]);

    for (i, &mu) in s.values().iter().enumerate() {
        let note = format!("f = eigenfunction #{i} (mu = {mu:.12})");
        match verifier::abs_concentration_check(g, s.function(i), mu, s, tol) {
            Ok((a, b)) => out.extend([a.depends_on(note.clone()), b.depends_on(note)]),
            Err(err) => out.extend([
                skipped("abs-deviation", anchors::ABS_DEVIATION, &err, tol),
                skipped("abs-mass", anchors::ABS_MASS, &err, tol),
            ]),
        }
    }

    for (i, j) in lemma_pairs(s.len(), config, rng) {
        let note = format!("pair ({i}, {j})");
        let (f, mu) = (s.function(i), s.values()[i]);
        let (h, nu) = (s.function(j), s.values()[j]);
        out.push(
            verifier::product_variation_check(g, f, mu, h, nu, tol)
                .map(|v| v.depends_on(note.clone()))
                .unwrap_or_else(|err| {
                    skipped("product-variation", anchors::PRODUCT_VARIATION, err, tol)
                }),
        );
        out.push(
            verifier::abs_overlap_check(g, f, mu, h, nu, s, tol)
                .map(|v| v.depends_on(note))
                .unwrap_or_else(|err| skipped("abs-overlap", anchors::ABS_OVERLAP, err, tol)),
        );
    }
    out
}

fn proof_chain_verdicts(g: &Graph, s: &Spectrum, e: &ExpansionProfile, tol: f64) -> Vec<Verdict> {
    let mut out = Vec::new();
    let product: Vec<f64> = s
        .function(0)
        .iter()
        .zip(s.function(1))
        .map(|(a, b)| a * b)
        .collect();
    out.push(match l1_cheeger_check(g, &product, e.h_value(), tol) {
        Ok(v) => v.depends_on("f = product of the two bottom eigenfunctions"),
        Err(err) => Verdict::skip("l1-cheeger", L1_CHEEGER_ANCHOR, err.to_string(), tol),
    });
    match verifier::proof_chain_check(g, s, e, tol) {
        Ok(Some((chain, ratio))) => out.extend([chain, ratio]),
        Ok(None) => {
            let reason = "1+mu[n-1] >= (1-mu2)/2: the bound follows from the case split";
            out.extend([
                Verdict::skip("proof-chain", anchors::PROOF_CHAIN, reason, tol),
                Verdict::skip("proof-chain-ratio", anchors::PROOF_CHAIN_RATIO, reason, tol),
            ]);
        }
        Err(err) => out.extend([
            skipped("proof-chain", anchors::PROOF_CHAIN, &err, tol),
            skipped("proof-chain-ratio", anchors::PROOF_CHAIN_RATIO, &err, tol),
        ]),
    }
    out
}
