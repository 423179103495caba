//! Test corpora: named families, small Cayley graphs, and Erdős–Rényi
//! graphs conditioned on connectivity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::analysis::{CayleyInfo, Subject};
use crate::cayley::{
    cayley_graph, multiplicity_argument_applies, GeneratingSet, GroupError, GroupTable,
};
use crate::graph::{Family, Graph};

#[derive(Debug, Error, PartialEq)]
pub enum CorpusError {
    #[error("random graph {index}: no connected sample in {retries} attempts")]
    Unsatisfiable { index: usize, retries: usize },
    #[error("invalid random spec: {0}")]
    InvalidSpec(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RandomSpec {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub max_retries: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        Self {
            count: 100,
            n_min: 4,
            n_max: 14,
            p_min: 0.25,
            p_max: 0.75,
            max_retries: 1000,
        }
    }
}

impl RandomSpec {
    fn validate(&self) -> Result<(), CorpusError> {
        let bad = |msg: &str| Err(CorpusError::InvalidSpec(msg.to_string()));
        if self.n_min < 2 || self.n_min > self.n_max {
            return bad("need 2 <= n_min <= n_max");
        }
        if self.n_max > 14 {
            return bad("random graphs are limited to n <= 14");
        }
        if !(0.0..=1.0).contains(&self.p_min)
            || !(0.0..=1.0).contains(&self.p_max)
            || self.p_min > self.p_max
        {
            return bad("need 0 <= p_min <= p_max <= 1");
        }
        Ok(())
    }
}

/// Samples `G(n, p)` graphs, rejecting disconnected samples. `n` and `p` are
/// redrawn on every attempt. Deterministic in `seed`.
pub fn random_corpus(spec: &RandomSpec, seed: u64) -> Result<Vec<Subject>, CorpusError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = spec.count.saturating_sub(1).to_string().len().max(3);
    (0..spec.count)
        .map(|index| {
            for _ in 0..spec.max_retries {
                let n = rng.gen_range(spec.n_min..=spec.n_max);
                let p = rng.gen_range(spec.p_min..=spec.p_max);
                let edges: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .filter(|_| rng.gen_bool(p))
                    .collect();
                let g = Graph::from_edges(n, edges).expect("sampled edges are simple");
                if g.is_connected() {
                    return Ok(Subject::new(
                        format!("random-{index:0width$}"),
                        format!("gnp n={n} p={p:.4} seed={seed}"),
                        g,
                    ));
                }
            }
            Err(CorpusError::Unsatisfiable {
                index,
                retries: spec.max_retries,
            })
        })
        .collect()
}

/// The standard family corpus.
pub fn family_corpus() -> Vec<Subject> {
    let mut families: Vec<Family> = Vec::new();
    families.extend((3..=12).map(Family::Cycle));
    families.extend((2..=8).map(Family::Complete));
    families.extend([
        Family::CompleteBipartite(1, 4),
        Family::CompleteBipartite(2, 3),
        Family::CompleteBipartite(3, 3),
        Family::Petersen,
        Family::Hypercube(2),
        Family::Hypercube(3),
        Family::Hypercube(4),
    ]);
    families
        .into_iter()
        .map(|f| Subject::new(f.id(), "family", f.build()))
        .collect()
}

/// Dihedral group of order `2n`: index `k + n·e` stands for `r^k s^e`.
pub fn dihedral(n: usize) -> GroupTable {
    GroupTable::from_fn(2 * n, |x, y| {
        let (a, e) = (x % n, x / n);
        let (b, f) = (y % n, y / n);
        let k = if e == 0 { a + b } else { a + n - b };
        k % n + n * ((e + f) % 2)
    })
    .expect("dihedral table is a group")
}

/// The non-abelian group `Z_7 ⋊ Z_3` of order 21, with `(a, b)` stored at
/// `a + 7b` and `(a, b)(c, d) = (a + 2^b c, b + d)`.
pub fn frobenius21() -> GroupTable {
    GroupTable::from_fn(21, |x, y| {
        let (a, b) = (x % 7, x / 7);
        let (c, d) = (y % 7, y / 7);
        let twist = [1, 2, 4][b];
        (a + twist * c) % 7 + 7 * ((b + d) % 3)
    })
    .expect("Z7 x| Z3 table is a group")
}

/// Builds the analysis subject for a Cayley graph.
pub fn cayley_subject(
    name: &str,
    group: &GroupTable,
    generators: &[usize],
) -> Result<Subject, GroupError> {
    let gens = GeneratingSet::new(group, generators)?;
    let labels: Vec<String> = gens.elements().iter().map(usize::to_string).collect();
    Ok(Subject {
        id: format!("cayley-{name}-{}", labels.join(".")),
        source: format!("cayley {name} gens {{{}}}", labels.join(",")),
        graph: cayley_graph(group, &gens),
        cayley: Some(CayleyInfo {
            order: group.order(),
            generators: gens.elements().to_vec(),
            order_is_odd: group.order_is_odd(),
            asserted_simple: group.asserted_simple(),
            applicable: multiplicity_argument_applies(group),
        }),
    })
}

/// Cayley graphs of small cyclic, dihedral and odd-order non-abelian groups.
pub fn cayley_corpus() -> Vec<Subject> {
    let specs: Vec<(&str, GroupTable, Vec<usize>)> = vec![
        ("Z5", GroupTable::cyclic(5), vec![1, 4]),
        ("Z5", GroupTable::cyclic(5), vec![1, 2, 3, 4]),
        ("Z6", GroupTable::cyclic(6), vec![1, 5]),
        ("Z7", GroupTable::cyclic(7), vec![1, 2, 5, 6]),
        ("Z8", GroupTable::cyclic(8), vec![1, 3, 5, 7]),
        ("Z9", GroupTable::cyclic(9), vec![1, 8]),
        ("Z9", GroupTable::cyclic(9), vec![1, 3, 6, 8]),
        ("Z11", GroupTable::cyclic(11), vec![1, 3, 8, 10]),
        ("D3", dihedral(3), vec![1, 2, 3]),
        ("D5", dihedral(5), vec![5, 6]),
        ("F21", frobenius21(), vec![1, 6, 7, 14]),
    ];
    specs
        .into_iter()
        .map(|(name, group, gens)| {
            cayley_subject(name, &group, &gens).expect("corpus generating sets are valid")
        })
        .collect()
}

/// Families, Cayley graphs and `spec.count` random graphs.
pub fn standard_corpus(spec: &RandomSpec, seed: u64) -> Result<Vec<Subject>, CorpusError> {
    let mut subjects = family_corpus();
    subjects.extend(cayley_corpus());
    subjects.extend(random_corpus(spec, seed)?);
    Ok(subjects)
}
