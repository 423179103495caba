//! Spectrum of the normalized adjacency (random-walk) operator `D⁻¹A`.
//!
//! `D⁻¹A` is not symmetric, but it is similar to `N = D^{-1/2} A D^{-1/2}`.
//! We diagonalize `N` with cyclic Jacobi rotations and map every orthonormal
//! eigenvector `v` back to the eigenfunction `f = D^{-1/2} v`. The map is an
//! isometry from the Euclidean inner product onto the degree-weighted one
//! `⟨f, g⟩ = Σ_u f(u) g(u) deg(u)`, so the eigenfunctions come out
//! degree-orthonormal even inside degenerate eigenspaces.
//!
//! Eigenvalues are stored ascending: index `0` holds the smallest eigenvalue
//! `μ_n`, index `1` holds `μ_{n-1}`, index `n-2` holds `μ_2` and index `n-1`
//! holds `μ_1 = 1`.

use std::ops::Range;

use thiserror::Error;

use crate::graph::Graph;

/// Default gap below which adjacent eigenvalues share a multiplicity cluster.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum SpectraError {
    #[error("vertex {0} is isolated; D is not invertible")]
    IsolatedVertex(usize),
    #[error(
        "Jacobi iteration did not converge in {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NotConverged { sweeps: usize, off_norm: f64 },
    #[error("vertex function has length {found}, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("need at least two vertices, got {0}")]
    TooSmall(usize),
}

/// Eigendecomposition of a dense symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// `vectors[i]` is the unit eigenvector for `values[i]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

/// Cyclic Jacobi eigensolver for a row-major symmetric `n × n` matrix.
///
/// Sweeps over all pairs `p < q`, annihilating `a[p][q]` with a plane
/// rotation, until the off-diagonal Frobenius norm drops below `1e-12 · n`.
pub fn jacobi_eigen(
    mut a: Vec<f64>,
    n: usize,
    max_sweeps: usize,
) -> Result<SymmetricEigen, SpectraError> {
    assert_eq!(a.len(), n * n, "matrix must be n x n");
    let threshold = 1e-12 * n as f64;
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off < threshold {
            break;
        }
        if sweeps == max_sweeps {
            return Err(SpectraError::NotConverged {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // A <- A J
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                // A <- Jᵀ A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
        .collect();
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

/// Full spectrum of `D⁻¹A` with degree-orthonormal eigenfunctions.
#[derive(Clone, Debug)]
pub struct Spectrum {
    values: Vec<f64>,
    functions: Vec<Vec<f64>>,
    clusters: Vec<Range<usize>>,
    cluster_tol: f64,
    residual: f64,
    sweeps: usize,
}

impl Spectrum {
    /// Ascending eigenvalues `μ_n ≤ … ≤ μ_1`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Eigenfunction attached to `values()[i]`.
    pub fn function(&self, i: usize) -> &[f64] {
        &self.functions[i]
    }

    pub fn functions(&self) -> &[Vec<f64>] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest eigenvalue `μ_n`.
    pub fn mu_min(&self) -> f64 {
        self.values[0]
    }

    /// Second smallest eigenvalue `μ_{n-1}`.
    pub fn mu_second_min(&self) -> f64 {
        self.values[1]
    }

    /// Second largest eigenvalue `μ_2`.
    pub fn mu2(&self) -> f64 {
        self.values[self.values.len() - 2]
    }

    /// Top spectral gap `1 - μ_2`.
    pub fn top_gap(&self) -> f64 {
        1.0 - self.mu2()
    }

    /// Maximal runs of eigenvalue indices whose consecutive gaps are below
    /// the clustering tolerance.
    pub fn clusters(&self) -> &[Range<usize>] {
        &self.clusters
    }

    pub fn cluster_tol(&self) -> f64 {
        self.cluster_tol
    }

    pub fn cluster_of(&self, i: usize) -> &Range<usize> {
        self.clusters
            .iter()
            .find(|r| r.contains(&i))
            .expect("clusters partition the index range")
    }

    pub fn is_simple(&self, i: usize) -> bool {
        self.cluster_of(i).len() == 1
    }

    /// `max_i ‖D⁻¹A f_i − μ_i f_i‖∞`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// Re-clusters with a different tolerance.
    pub fn with_cluster_tol(mut self, tol: f64) -> Self {
        self.clusters = cluster_eigenvalues(&self.values, tol);
        self.cluster_tol = tol;
        self
    }
}

/// Computes the spectrum of `D⁻¹A` with the default sweep budget and
/// clustering tolerance.
pub fn normalized_spectrum(g: &Graph) -> Result<Spectrum, SpectraError> {
    normalized_spectrum_with(g, DEFAULT_MAX_SWEEPS, DEFAULT_CLUSTER_TOL)
}

pub fn normalized_spectrum_with(
    g: &Graph,
    max_sweeps: usize,
    cluster_tol: f64,
) -> Result<Spectrum, SpectraError> {
    let n = g.n();
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(SpectraError::IsolatedVertex(v));
    }
    let inv_sqrt: Vec<f64> = (0..n).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    let mut matrix = vec![0.0; n * n];
    for &(u, v) in g.edges() {
        let w = inv_sqrt[u] * inv_sqrt[v];
        matrix[u * n + v] = w;
        matrix[v * n + u] = w;
    }
    let eig = jacobi_eigen(matrix, n, max_sweeps)?;

    let functions: Vec<Vec<f64>> = eig
        .vectors
        .iter()
        .map(|vec| {
            let mut f: Vec<f64> = vec.iter().zip(&inv_sqrt).map(|(x, s)| x * s).collect();
            orient(&mut f);
            f
        })
        .collect();

    let residual = eig
        .values
        .iter()
        .zip(&functions)
        .map(|(&mu, f)| {
            walk(g, f)
                .iter()
                .zip(f)
                .map(|(pf, x)| (pf - mu * x).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);

    Ok(Spectrum {
        clusters: cluster_eigenvalues(&eig.values, cluster_tol),
        values: eig.values,
        functions,
        cluster_tol,
        residual,
        sweeps: eig.sweeps,
    })
}

/// Flips `f` so that its entry of largest magnitude (first one on ties) is
/// positive.
fn orient(f: &mut [f64]) {
    let max = f.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(&lead) = f.iter().find(|x| x.abs() >= max - 1e-12) {
        if lead < 0.0 {
            f.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Applies the walk operator: `(D⁻¹A f)(u) = (1/deg u) Σ_{v∼u} f(v)`.
pub fn walk(g: &Graph, f: &[f64]) -> Vec<f64> {
    (0..g.n())
        .map(|u| {
            let s: f64 = g.neighbors(u).iter().map(|&v| f[v]).sum();
            s / g.degree(u) as f64
        })
        .collect()
}

/// Degree-weighted inner product `Σ_u f(u) g(u) deg(u)`.
pub fn inner(f: &[f64], h: &[f64], g: &Graph) -> Result<f64, SpectraError> {
    for len in [f.len(), h.len()] {
        if len != g.n() {
            return Err(SpectraError::DimensionMismatch {
                expected: g.n(),
                found: len,
            });
        }
    }
    Ok(f.iter()
        .zip(h)
        .enumerate()
        .map(|(u, (a, b))| a * b * g.degree(u) as f64)
        .sum())
}

/// Partitions ascending `values` into maximal runs with consecutive gaps
/// `< tol`.
pub fn cluster_eigenvalues(values: &[f64], tol: f64) -> Vec<Range<usize>> {
    let mut clusters = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] >= tol {
            clusters.push(start..i);
            start = i;
        }
    }
    clusters
}

/// Two degree-orthonormal eigenfunctions for the two smallest eigenvalue
/// slots.
#[derive(Clone, Copy, Debug)]
pub struct BottomPair<'a> {
    pub f: &'a [f64],
    pub g: &'a [f64],
    pub mu_n: f64,
    pub mu_n_minus_1: f64,
}

pub fn eigenspace_pair(s: &Spectrum) -> Result<BottomPair<'_>, SpectraError> {
    if s.len() < 2 {
        return Err(SpectraError::TooSmall(s.len()));
    }
    Ok(BottomPair {
        f: s.function(0),
        g: s.function(1),
        mu_n: s.values[0],
        mu_n_minus_1: s.values[1],
    })
}

/// Numerical health of a computed spectrum, each quantity evaluated against
/// the graph directly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagnostics {
    pub residual: f64,
    /// `|Σ μ_i|`; the trace of `D⁻¹A` is zero for loopless graphs.
    pub trace: f64,
    /// `|Σ μ_i² − Σ_{u∼v} 2/(d_u d_v)|`.
    pub trace_sq_error: f64,
    /// `max_{i,j} |⟨f_i, f_j⟩ − δ_ij|`.
    pub orthonormality_error: f64,
    /// `|μ_1 − 1|`.
    pub top_error: f64,
    /// Largest amount by which an eigenvalue leaves `[-1, 1]`.
    pub range_excess: f64,
}

pub fn diagnostics(g: &Graph, s: &Spectrum) -> Diagnostics {
    let trace = s.values.iter().sum::<f64>().abs();
    let sum_sq: f64 = s.values.iter().map(|x| x * x).sum();
    let expected: f64 = g
        .edges()
        .iter()
        .map(|&(u, v)| 2.0 / (g.degree(u) * g.degree(v)) as f64)
        .sum();
    let mut orthonormality_error: f64 = 0.0;
    for i in 0..s.len() {
        for j in i..s.len() {
            let ip = inner(&s.functions[i], &s.functions[j], g).expect("same graph");
            let target = if i == j { 1.0 } else { 0.0 };
            orthonormality_error = orthonormality_error.max((ip - target).abs());
        }
    }
    let range_excess = s
        .values
        .iter()
        .map(|x| (x.abs() - 1.0).max(0.0))
        .fold(0.0, f64::max);
    Diagnostics {
        residual: s.residual,
        trace,
        trace_sq_error: (sum_sq - expected).abs(),
        orthonormality_error,
        top_error: (s.values[s.len() - 1] - 1.0).abs(),
        range_excess,
    }
}
