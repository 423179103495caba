//! Checks of the spectral-gap inequalities against computed spectra and
//! expansion profiles.
//!
//! Every check consumes an injected [`Spectrum`] and [`ExpansionProfile`]
//! and never recomputes them, so tests can substitute oracle values. Notation
//! in anchors: `mu[n] <= mu[n-1] <= ... <= mu2 <= mu1 = 1` are the eigenvalues
//! of `D⁻¹A`, `h` the edge-expansion, `d` the degree of a regular graph.

use std::f64::consts::SQRT_2;

use serde::Serialize;
use thiserror::Error;

use crate::expansion::ExpansionProfile;
use crate::graph::{Graph, Provenance};
use crate::spectra::{inner, walk, SpectraError, Spectrum};
use crate::verdict::Verdict;

/// `(√3 − 1)² / 8`.
pub fn expansion_coefficient() -> f64 {
    let r = 3f64.sqrt() - 1.0;
    r * r / 8.0
}

pub mod anchors {
    pub const SECOND_GAP: &str =
        "1+mu[n-1] >= (1-mu2)^2/(2h^2) * (sqrt(1+h^2/(1-mu2)) - 1)^2 for connected graphs";
    pub const SECOND_GAP_SPECTRAL: &str = "1+mu[n-1] >= 2(sqrt(1+(1-mu2)/4) - 1)^2";
    pub const SECOND_GAP_EXPANSION: &str = "1+mu[n-1] >= (sqrt3-1)^2/8 * h^2";
    pub const TRANSITIVE_EXPANSION: &str =
        "1+mu[n] >= min{2/d, (sqrt3-1)^2/8 * h^2} for non-bipartite vertex-transitive graphs";
    pub const TRANSITIVE_SPECTRAL: &str =
        "1+mu[n] >= min{2/d, 2(sqrt(1+(1-mu2)/4) - 1)^2} for non-bipartite vertex-transitive graphs";
    pub const LATTICE: &str =
        "a simple eigenvalue of a connected vertex-transitive graph equals 2k/d - 1, k integer in [0, d]";
    pub const CAYLEY_EXPANSION: &str =
        "1+mu[n] >= (sqrt3-1)^2/8 * h^2 for Cayley graphs of odd-order or simple groups";
    pub const CAYLEY_SPECTRAL: &str =
        "1+mu[n] >= 2(sqrt(1+(1-mu2)/4) - 1)^2 for Cayley graphs of odd-order or simple groups";
    pub const CAYLEY_MULTIPLICITY: &str =
        "eigenvalues other than 1 and -1 of such Cayley graphs have multiplicity >= 2";
    pub const PRODUCT_VARIATION: &str =
        "sum_E |f(u)g(u) - f(v)g(v)| <= (sqrt2/2)(sqrt(1+mu) + sqrt(1+nu)) for unit eigenfunctions f, g";
    pub const ABS_DEVIATION: &str =
        "||f1||^2 <= (1+mu)/(1-mu2) where f1 = |f| - <|f|,c>c, c the unit constant";
    pub const ABS_MASS: &str = "<|f|,c>^2 >= 1 - (1+mu)/(1-mu2)";
    pub const ABS_OVERLAP: &str =
        "<|f|,|g|> >= sqrt(1-a)sqrt(1-b) - sqrt(a)sqrt(b), a = (1+mu)/(1-mu2), b = (1+nu)/(1-mu2)";
    pub const CHEEGER_UPPER: &str = "2h >= 1-mu2";
    pub const CHEEGER_LOWER: &str = "1-mu2 >= h^2/2";
    pub const SANDWICH_LOWER: &str = "h >= h_out/d for d-regular graphs";
    pub const SANDWICH_UPPER: &str = "h <= h_out for d-regular graphs";
    pub const WALK_ENERGY_MINUS: &str = "sum_E (f(u)-f(v))^2 = <f,(I-D^-1 A)f>";
    pub const WALK_ENERGY_PLUS: &str = "sum_E (f(u)+f(v))^2 = <f,(I+D^-1 A)f>";
    pub const PROOF_CHAIN: &str = "(sqrt2/2)h <= (sqrt(1+mu[n]) + sqrt(1+mu[n-1])) / (sqrt(1-a)sqrt(1-b) - sqrt(a)sqrt(b)) when 1+mu[n-1] < (1-mu2)/2";
    pub const PROOF_CHAIN_RATIO: &str =
        "l1 ratio of fg <= product-variation bound / absolute-overlap bound for the bottom pair";
    pub const BIPARTITE_SPECTRAL: &str = "mu[n] = -1 iff bipartite, for connected graphs";
    pub const CONNECTED_SPECTRAL: &str = "mu2 = 1 iff disconnected";
}

#[derive(Debug, Error, PartialEq)]
pub enum VerifyError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is bipartite")]
    Bipartite,
    #[error("graph is not known to be vertex-transitive")]
    NotVertexTransitive,
    #[error("graph is not regular")]
    NotRegular,
    #[error("group has even order and is not declared simple")]
    NotApplicable,
    #[error("eigenfunction has degree-weighted norm² {0}, expected 1")]
    NotNormalized(f64),
    #[error("need h > 0 and 1-mu2 > 0, got h = {h}, gap = {gap}")]
    NonPositive { h: f64, gap: f64 },
    #[error("f(c,c) = {value} disagrees with (sqrt2/2)h = {target}")]
    SelfConsistency { value: f64, target: f64 },
    #[error("vertex-expansion was not computed")]
    MissingVertexExpansion,
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// `√x` for quantities that are mathematically nonnegative but may carry
/// a rounding-sized negative part.
fn root(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

/// The function of two variables bounding the bottom pair:
/// `F(x, y) = (√x + √y) / (√(1−x/g)√(1−y/g) − √(x/g)√(y/g))` with `g = 1−μ₂`.
pub fn proof_function(x: f64, y: f64, gap: f64) -> f64 {
    let (a, b) = (x / gap, y / gap);
    (root(x) + root(y)) / (root(1.0 - a) * root(1.0 - b) - root(a) * root(b))
}

/// The lower bound `c(h, 1−μ₂)` for `1+μ_{n−1}`:
/// `√c = (1−μ₂)/(√2 h) · (√(1 + h²/(1−μ₂)) − 1)`.
///
/// Evaluated in the rationalized form `√c = h / (√2 (√(1+h²/g) + 1))`, which
/// avoids cancellation as `g → 0`. The result is cross-checked against
/// `F(c, c) = (√2/2) h` unless `c` sits within `1e-12` of the pole at `g/2`.
pub fn second_gap_constant(h: f64, gap: f64) -> Result<f64, VerifyError> {
    if !(h > 0.0 && gap > 0.0 && h.is_finite() && gap.is_finite()) {
        return Err(VerifyError::NonPositive { h, gap });
    }
    let sqrt_c = h / (SQRT_2 * ((1.0 + h * h / gap).sqrt() + 1.0));
    let c = sqrt_c * sqrt_c;
    if gap / 2.0 - c > 1e-12 {
        let value = proof_function(c, c, gap);
        let target = h / SQRT_2;
        if (value - target).abs() > 1e-8 {
            return Err(VerifyError::SelfConsistency { value, target });
        }
    }
    Ok(c)
}

/// `2(√(1 + (1−μ₂)/4) − 1)²`.
pub fn spectral_bound(gap: f64) -> f64 {
    let r = (1.0 + gap.max(0.0) / 4.0).sqrt() - 1.0;
    2.0 * r * r
}

/// `1+μ_{n−1} ≥ c(h, 1−μ₂)` on a connected graph.
pub fn second_bottom_gap_check(
    g: &Graph,
    s: &Spectrum,
    e: &ExpansionProfile,
    tol: f64,
) -> Result<Verdict, VerifyError> {
    if !g.is_connected() {
        return Err(VerifyError::Disconnected);
    }
    let rhs = second_gap_constant(e.h_value(), s.top_gap())?;
    Ok(Verdict::at_least(
        "second-bottom-gap",
        anchors::SECOND_GAP,
        1.0 + s.mu_second_min(),
        rhs,
        tol,
    ))
}

/// The two simplified bounds on `1+μ_{n−1}`, one in terms of `1−μ₂` and one
/// in terms of `h`. Both degenerate to `0` on disconnected graphs.
pub fn second_bottom_gap_simplified_check(
    s: &Spectrum,
    e: &ExpansionProfile,
    tol: f64,
) -> (Verdict, Verdict) {
    let lhs = 1.0 + s.mu_second_min();
    let h = e.h_value();
    (
        Verdict::at_least(
            "second-bottom-gap-spectral",
            anchors::SECOND_GAP_SPECTRAL,
            lhs,
            spectral_bound(s.top_gap()),
            tol,
        ),
        Verdict::at_least(
            "second-bottom-gap-expansion",
            anchors::SECOND_GAP_EXPANSION,
            lhs,
            expansion_coefficient() * h * h,
            tol,
        ),
    )
}

fn transitive_hypotheses(g: &Graph) -> Result<(usize, Provenance), VerifyError> {
    if !g.is_connected() {
        return Err(VerifyError::Disconnected);
    }
    let provenance = g
        .vertex_transitive()
        .ok_or(VerifyError::NotVertexTransitive)?;
    let d = g.regular_degree().ok_or(VerifyError::NotRegular)?;
    Ok((d, provenance))
}

/// Bounds on `1+μ_n` for connected, non-bipartite, vertex-transitive graphs.
pub fn transitive_bottom_gap_check(
    g: &Graph,
    s: &Spectrum,
    e: &ExpansionProfile,
    tol: f64,
) -> Result<(Verdict, Verdict), VerifyError> {
    if g.is_bipartite() {
        return Err(VerifyError::Bipartite);
    }
    let (d, provenance) = transitive_hypotheses(g)?;
    let lhs = 1.0 + s.mu_min();
    let h = e.h_value();
    let simple_gap = 2.0 / d as f64;
    let note = format!("vertex-transitive: {provenance}");
    Ok((
        Verdict::at_least(
            "transitive-bottom-gap-expansion",
            anchors::TRANSITIVE_EXPANSION,
            lhs,
            simple_gap.min(expansion_coefficient() * h * h),
            tol,
        )
        .depends_on(note.clone()),
        Verdict::at_least(
            "transitive-bottom-gap-spectral",
            anchors::TRANSITIVE_SPECTRAL,
            lhs,
            simple_gap.min(spectral_bound(s.top_gap())),
            tol,
        )
        .depends_on(note),
    ))
}

/// Tolerance on the integrality of `k = d(μ+1)/2`.
pub const LATTICE_TOL: f64 = 1e-7;

/// For each simple eigenvalue `μ` of a vertex-transitive graph, checks that
/// `k = d(μ+1)/2` is an integer in `[0, d]`.
pub fn simple_eigenvalue_lattice_check(
    g: &Graph,
    s: &Spectrum,
) -> Result<Vec<Verdict>, VerifyError> {
    let (d, provenance) = transitive_hypotheses(g)?;
    let verdicts = (0..s.len())
        .filter(|&i| s.is_simple(i))
        .map(|i| {
            let mu = s.values()[i];
            let k = d as f64 * (mu + 1.0) / 2.0;
            let nearest = k.round();
            let distance = (k - nearest).abs();
            let range_slack = nearest.min(d as f64 - nearest);
            let mut v = Verdict::at_most(
                "simple-eigenvalue-lattice",
                anchors::LATTICE,
                distance,
                LATTICE_TOL,
                0.0,
            )
            .depends_on(format!("mu = {mu:.12}, k = {k:.9}"))
            .depends_on(format!("vertex-transitive: {provenance}"))
            .depends_on(format!("multiplicity tolerance {:e}", s.cluster_tol()));
            if range_slack < 0.0 {
                v.slack = range_slack;
                v.holds = false;
            }
            v
        })
        .collect();
    Ok(verdicts)
}

/// Bounds on `1+μ_n` for connected Cayley graphs whose group has odd order
/// or is declared simple, plus the structural claim that every eigenvalue
/// other than ±1 is repeated.
pub fn cayley_bottom_gap_check(
    g: &Graph,
    s: &Spectrum,
    e: &ExpansionProfile,
    applicable: bool,
    tol: f64,
) -> Result<[Verdict; 3], VerifyError> {
    if !applicable {
        return Err(VerifyError::NotApplicable);
    }
    if !g.is_connected() {
        return Err(VerifyError::Disconnected);
    }
    if g.is_bipartite() || s.mu_min() <= -1.0 + tol {
        return Err(VerifyError::Bipartite);
    }
    if g.vertex_transitive().is_none() {
        return Err(VerifyError::NotVertexTransitive);
    }
    let lhs = 1.0 + s.mu_min();
    let h = e.h_value();
    let ctol = s.cluster_tol();
    let nontrivial: Vec<usize> = s
        .clusters()
        .iter()
        .filter(|r| {
            !s.values()[(*r).clone()]
                .iter()
                .any(|mu| (mu - 1.0).abs() < ctol || (mu + 1.0).abs() < ctol)
        })
        .map(|r| r.len())
        .collect();
    let multiplicity = match nontrivial.iter().min() {
        Some(&m) => Verdict::at_least(
            "cayley-nontrivial-multiplicity",
            anchors::CAYLEY_MULTIPLICITY,
            m as f64,
            2.0,
            0.0,
        )
        .depends_on(format!("cluster sizes {nontrivial:?}")),
        None => Verdict::at_least(
            "cayley-nontrivial-multiplicity",
            anchors::CAYLEY_MULTIPLICITY,
            2.0,
            2.0,
            0.0,
        )
        .depends_on("vacuous: no eigenvalues other than 1 and -1"),
    }
    .depends_on(format!("multiplicity tolerance {ctol:e}"));
    Ok([
        Verdict::at_least(
            "cayley-bottom-gap-expansion",
            anchors::CAYLEY_EXPANSION,
            lhs,
            expansion_coefficient() * h * h,
            tol,
        ),
        Verdict::at_least(
            "cayley-bottom-gap-spectral",
            anchors::CAYLEY_SPECTRAL,
            lhs,
            spectral_bound(s.top_gap()),
            tol,
        ),
        multiplicity,
    ])
}

fn check_unit(g: &Graph, f: &[f64]) -> Result<(), VerifyError> {
    let norm = inner(f, f, g)?;
    if (norm - 1.0).abs() > 1e-9 {
        return Err(VerifyError::NotNormalized(norm));
    }
    Ok(())
}

/// `Σ_E |f(u)g(u) − f(v)g(v)| ≤ (√2/2)(√(1+μ) + √(1+ν))` for unit
/// eigenfunctions `f`, `g` of `μ`, `ν`. Stored as an upper bound.
pub fn product_variation_check(
    graph: &Graph,
    f: &[f64],
    mu: f64,
    g: &[f64],
    nu: f64,
    tol: f64,
) -> Result<Verdict, VerifyError> {
    check_unit(graph, f)?;
    check_unit(graph, g)?;
    let lhs: f64 = graph
        .edges()
        .iter()
        .map(|&(u, v)| (f[u] * g[u] - f[v] * g[v]).abs())
        .sum();
    let rhs = (root(1.0 + mu) + root(1.0 + nu)) / SQRT_2;
    Ok(Verdict::at_most(
        "product-variation",
        anchors::PRODUCT_VARIATION,
        lhs,
        rhs,
        tol,
    ))
}

fn abs_mass(graph: &Graph, f: &[f64]) -> (Vec<f64>, f64) {
    let abs: Vec<f64> = f.iter().map(|x| x.abs()).collect();
    let c = 1.0 / (graph.volume() as f64).sqrt();
    let mass: f64 = abs
        .iter()
        .enumerate()
        .map(|(u, x)| x * c * graph.degree(u) as f64)
        .sum();
    (abs, mass)
}

/// For a unit eigenfunction `f` of `μ`: the deviation of `|f|` from its
/// projection onto constants is at most `(1+μ)/(1−μ₂)` in squared norm, and
/// the projection carries the rest of the mass.
pub fn abs_concentration_check(
    graph: &Graph,
    f: &[f64],
    mu: f64,
    s: &Spectrum,
    tol: f64,
) -> Result<(Verdict, Verdict), VerifyError> {
    if !graph.is_connected() {
        return Err(VerifyError::Disconnected);
    }
    check_unit(graph, f)?;
    let (abs, mass) = abs_mass(graph, f);
    let c = 1.0 / (graph.volume() as f64).sqrt();
    let f1: Vec<f64> = abs.iter().map(|x| x - mass * c).collect();
    let deviation = inner(&f1, &f1, graph)?;
    let ratio = (1.0 + mu) / s.top_gap();
    Ok((
        Verdict::at_most(
            "abs-deviation",
            anchors::ABS_DEVIATION,
            deviation,
            ratio,
            tol,
        ),
        Verdict::at_least("abs-mass", anchors::ABS_MASS, mass * mass, 1.0 - ratio, tol),
    ))
}

/// `⟨|f|,|g|⟩ ≥ √(1−a)√(1−b) − √a√b` with `a = (1+μ)/(1−μ₂)`,
/// `b = (1+ν)/(1−μ₂)`. Skipped when `a > 1` or `b > 1`.
pub fn abs_overlap_check(
    graph: &Graph,
    f: &[f64],
    mu: f64,
    g: &[f64],
    nu: f64,
    s: &Spectrum,
    tol: f64,
) -> Result<Verdict, VerifyError> {
    if !graph.is_connected() {
        return Err(VerifyError::Disconnected);
    }
    check_unit(graph, f)?;
    check_unit(graph, g)?;
    let gap = s.top_gap();
    let a = (1.0 + mu) / gap;
    let b = (1.0 + nu) / gap;
    let fa: Vec<f64> = f.iter().map(|x| x.abs()).collect();
    let ga: Vec<f64> = g.iter().map(|x| x.abs()).collect();
    let lhs = inner(&fa, &ga, graph)?;
    if a > 1.0 || b > 1.0 {
        return Ok(Verdict::skip(
            "abs-overlap",
            anchors::ABS_OVERLAP,
            format!(
                "out of regime: (1+mu)/(1-mu2) = {:.6}, (1+nu)/(1-mu2) = {:.6}",
                a, b
            ),
            tol,
        )
        .with_lhs(lhs));
    }
    let rhs = root(1.0 - a) * root(1.0 - b) - root(a) * root(b);
    Ok(Verdict::at_least(
        "abs-overlap",
        anchors::ABS_OVERLAP,
        lhs,
        rhs,
        tol,
    ))
}

/// `2h ≥ 1−μ₂ ≥ h²/2`.
pub fn cheeger_inequality_check(
    s: &Spectrum,
    e: &ExpansionProfile,
    tol: f64,
) -> (Verdict, Verdict) {
    let h = e.h_value();
    let gap = s.top_gap();
    (
        Verdict::at_least("cheeger-upper", anchors::CHEEGER_UPPER, 2.0 * h, gap, tol),
        Verdict::at_least(
            "cheeger-lower",
            anchors::CHEEGER_LOWER,
            gap,
            h * h / 2.0,
            tol,
        ),
    )
}

/// `h_out/d ≤ h ≤ h_out` on a connected `d`-regular graph.
pub fn regular_sandwich_check(
    g: &Graph,
    e: &ExpansionProfile,
    tol: f64,
) -> Result<(Verdict, Verdict), VerifyError> {
    if !g.is_connected() {
        return Err(VerifyError::Disconnected);
    }
    let d = g.regular_degree().ok_or(VerifyError::NotRegular)? as f64;
    let h_out = e.h_out_value().ok_or(VerifyError::MissingVertexExpansion)?;
    let h = e.h_value();
    Ok((
        Verdict::at_least(
            "regular-sandwich-lower",
            anchors::SANDWICH_LOWER,
            h,
            h_out / d,
            tol,
        ),
        Verdict::at_most(
            "regular-sandwich-upper",
            anchors::SANDWICH_UPPER,
            h,
            h_out,
            tol,
        ),
    ))
}

fn relative_error(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Relative errors of the two edge-sum identities for `f`: the edge sums of
/// `(f(u)∓f(v))²` against `⟨f, (I ∓ D⁻¹A) f⟩`.
pub fn walk_energy_errors(g: &Graph, f: &[f64]) -> Result<(f64, f64), VerifyError> {
    let pf = walk(g, f);
    let ff = inner(f, f, g)?;
    let fpf = inner(f, &pf, g)?;
    let minus: f64 = g.edges().iter().map(|&(u, v)| (f[u] - f[v]).powi(2)).sum();
    let plus: f64 = g.edges().iter().map(|&(u, v)| (f[u] + f[v]).powi(2)).sum();
    Ok((
        relative_error(minus, ff - fpf),
        relative_error(plus, ff + fpf),
    ))
}

/// Relative-error threshold for the edge-sum identities.
pub const WALK_ENERGY_TOL: f64 = 1e-8;

/// Worst relative error of each edge-sum identity over `functions`.
pub fn walk_energy_check(
    g: &Graph,
    functions: &[Vec<f64>],
) -> Result<(Verdict, Verdict), VerifyError> {
    let mut worst = (0.0f64, 0.0f64);
    for f in functions {
        let (m, p) = walk_energy_errors(g, f)?;
        worst = (worst.0.max(m), worst.1.max(p));
    }
    let note = format!("{} test functions", functions.len());
    Ok((
        Verdict::at_most(
            "walk-energy-minus",
            anchors::WALK_ENERGY_MINUS,
            worst.0,
            WALK_ENERGY_TOL,
            0.0,
        )
        .depends_on(note.clone()),
        Verdict::at_most(
            "walk-energy-plus",
            anchors::WALK_ENERGY_PLUS,
            worst.1,
            WALK_ENERGY_TOL,
            0.0,
        )
        .depends_on(note),
    ))
}

/// The assembled argument for the bottom pair `f, g` (eigenvalues `μ_n`,
/// `μ_{n−1}`): when `1+μ_{n−1} < (1−μ₂)/2`, checks
/// `(√2/2) h ≤ F(1+μ_n, 1+μ_{n−1})` and that the ℓ¹ ratio of `fg` sits below
/// the quotient of the product-variation and absolute-overlap bounds.
/// Returns `None` outside that regime.
pub fn proof_chain_check(
    graph: &Graph,
    s: &Spectrum,
    e: &ExpansionProfile,
    tol: f64,
) -> Result<Option<(Verdict, Verdict)>, VerifyError> {
    if !graph.is_connected() {
        return Err(VerifyError::Disconnected);
    }
    let gap = s.top_gap();
    let x = 1.0 + s.mu_min();
    let y = 1.0 + s.mu_second_min();
    if y >= gap / 2.0 {
        return Ok(None);
    }
    let (f, g) = (s.function(0), s.function(1));
    let h = e.h_value();
    let chain = Verdict::at_most(
        "proof-chain",
        anchors::PROOF_CHAIN,
        h / SQRT_2,
        proof_function(x, y, gap),
        tol,
    );

    let product: Vec<f64> = f.iter().zip(g).map(|(a, b)| a * b).collect();
    let variation: f64 = graph
        .edges()
        .iter()
        .map(|&(u, v)| (product[u] - product[v]).abs())
        .sum();
    let mass: f64 = product
        .iter()
        .enumerate()
        .map(|(u, p)| p.abs() * graph.degree(u) as f64)
        .sum();
    let (a, b) = (x / gap, y / gap);
    let overlap_bound = root(1.0 - a) * root(1.0 - b) - root(a) * root(b);
    let ratio = Verdict::at_most(
        "proof-chain-ratio",
        anchors::PROOF_CHAIN_RATIO,
        variation / mass,
        (root(x) + root(y)) / SQRT_2 / overlap_bound,
        tol,
    );
    Ok(Some((chain, ratio)))
}

/// Agreement of the spectral and combinatorial tests for bipartiteness
/// (connected graphs) and connectivity.
pub fn spectral_structure_check(g: &Graph, s: &Spectrum) -> Vec<Verdict> {
    let agree = |name: &str, anchor: &str, ok: bool, note: String| {
        Verdict::at_least(name, anchor, if ok { 1.0 } else { 0.0 }, 1.0, 0.0).depends_on(note)
    };
    let spectral_disconnected = (s.mu2() - 1.0).abs() <= 1e-9;
    let mut out = vec![agree(
        "connected-spectral",
        anchors::CONNECTED_SPECTRAL,
        spectral_disconnected != g.is_connected(),
        format!("mu2 = {:.12}, connected = {}", s.mu2(), g.is_connected()),
    )];
    if g.is_connected() {
        let spectral_bipartite = (s.mu_min() + 1.0).abs() <= 1e-9;
        out.push(agree(
            "bipartite-spectral",
            anchors::BIPARTITE_SPECTRAL,
            spectral_bipartite == g.is_bipartite(),
            format!(
                "mu[n] = {:.12}, bipartite = {}",
                s.mu_min(),
                g.is_bipartite()
            ),
        ));
    }
    out
}

/// Ratios of `1+μ_n` to the shapes of two earlier bounds with unspecified
/// constants. Reported only.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PriorRatios {
    /// `(1+μ_n) / (h²/d²)`.
    pub edge_ratio: f64,
    /// `(1+μ_n) / (h_out²/d)`.
    pub vertex_ratio: f64,
}

pub fn prior_bound_ratios(
    s: &Spectrum,
    e: &ExpansionProfile,
    d: usize,
) -> Result<PriorRatios, VerifyError> {
    let h_out = e.h_out_value().ok_or(VerifyError::MissingVertexExpansion)?;
    let h = e.h_value();
    let d = d as f64;
    let gap = 1.0 + s.mu_min();
    Ok(PriorRatios {
        edge_ratio: gap / (h * h / (d * d)),
        vertex_ratio: gap / (h_out * h_out / d),
    })
}
