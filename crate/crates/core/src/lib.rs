//! Spectra of the normalized adjacency operator `D⁻¹A`, exact
//! edge-expansion, and machine-checked bounds relating the bottom of the
//! spectrum (`1+μ_n`, `1+μ_{n−1}`) to the top spectral gap `1−μ₂` and the
//! Cheeger constant `h`.
//!
//! The pieces, bottom-up:
//!
//! | module | role |
//! |---|---|
//! | [`graph`] | simple graphs, edge-list parsing, named families |
//! | [`symmetry`] | vertex-transitivity by automorphism search |
//! | [`cayley`] | group tables and Cayley graphs |
//! | [`spectra`] | Jacobi eigensolver, degree-orthonormal eigenfunctions |
//! | [`expansion`] | Gray-code Cheeger constant, vertex-expansion |
//! | [`verifier`] | the inequalities, each as a [`Verdict`] |
//! | [`analysis`] | per-graph pipeline with hypothesis gating |
//! | [`corpus`], [`report`] | test corpora, JSON/CSV reports |

pub mod analysis;
pub mod cayley;
pub mod corpus;
pub mod expansion;
pub mod graph;
pub mod report;
pub mod spectra;
pub mod symmetry;
pub mod verdict;
pub mod verifier;

pub use analysis::{analyze, AnalysisConfig, CheckGroup, GraphRecord, Subject};
pub use cayley::{cayley_graph, parse_group, GeneratingSet, GroupTable};
pub use expansion::{cheeger_constant, vertex_expansion, ExpansionProfile};
pub use graph::{make_family, parse_graph, Graph, Provenance};
pub use report::RunReport;
pub use spectra::{normalized_spectrum, Spectrum};
pub use verdict::{Status, Verdict};
