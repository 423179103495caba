//! Finite groups given by multiplication tables, and their Cayley graphs.
//!
//! Table file format: the first line is the order `|G|`, followed by `|G|`
//! rows of `|G|` whitespace-separated indices, row `i` column `j` holding the
//! index of `i∘j`. The identity is element 0. Lines starting with `#` are
//! ignored.

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Provenance};

/// Largest order for which associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;
const SAMPLED_TRIPLES: usize = 200_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("expected {expected} table rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("a group needs at least one element")]
    Empty,
    #[error("entry {value} at ({row}, {col}) is not an element index")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("element 0 is not a two-sided identity (fails at {0})")]
    MissingIdentity(usize),
    #[error("Latin square violated in {kind} {index}")]
    NotLatin { kind: &'static str, index: usize },
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("generator {0} is not an element")]
    GeneratorOutOfRange(usize),
    #[error("the identity cannot be a generator")]
    IdentityGenerator,
    #[error("generating set is not closed under inverses: {0} has inverse {1} missing")]
    NotSymmetric(usize, usize),
    #[error("generating set reaches only {reached} of {order} elements")]
    DoesNotGenerate { reached: usize, order: usize },
}

/// How associativity was established at validation time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssociativityCheck {
    Exhaustive,
    Sampled(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    asserted_simple: bool,
    associativity: AssociativityCheck,
}

impl GroupTable {
    /// Validates a row-major multiplication table.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        assert_eq!(table.len(), order * order, "table must be order x order");
        for (k, &value) in table.iter().enumerate() {
            if value >= order {
                return Err(GroupError::OutOfRange {
                    row: k / order,
                    col: k % order,
                    value,
                });
            }
        }
        let at = |i: usize, j: usize| table[i * order + j];

        for i in 0..order {
            if at(0, i) != i || at(i, 0) != i {
                return Err(GroupError::MissingIdentity(i));
            }
        }
        for i in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for j in 0..order {
                if std::mem::replace(&mut row[at(i, j)], true) {
                    return Err(GroupError::NotLatin {
                        kind: "row",
                        index: i,
                    });
                }
                if std::mem::replace(&mut col[at(j, i)], true) {
                    return Err(GroupError::NotLatin {
                        kind: "column",
                        index: i,
                    });
                }
            }
        }
        let inverse = (0..order)
            .map(|i| {
                let j = (0..order)
                    .find(|&j| at(i, j) == 0)
                    .expect("Latin rows contain the identity");
                if at(j, i) == 0 {
                    Ok(j)
                } else {
                    Err(GroupError::MissingInverse(i))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;

        let associative = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        let associativity = if order <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !associative(a, b, c) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
            AssociativityCheck::Exhaustive
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if !associative(a, b, c) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
            log::warn!(
                "group of order {order}: associativity checked on {SAMPLED_TRIPLES} sampled triples only"
            );
            AssociativityCheck::Sampled(SAMPLED_TRIPLES)
        };

        Ok(Self {
            order,
            table,
            inverse,
            asserted_simple: false,
            associativity,
        })
    }

    /// Tabulates `op` over `0..order`.
    pub fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, GroupError> {
        let table = (0..order)
            .flat_map(|i| (0..order).map(move |j| (i, j)))
            .map(|(i, j)| op(i, j))
            .collect();
        Self::from_table(order, table)
    }

    /// The cyclic group `Z_n` under addition.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("Z_n is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn order_is_odd(&self) -> bool {
        self.order % 2 == 1
    }

    pub fn asserted_simple(&self) -> bool {
        self.asserted_simple
    }

    pub fn associativity(&self) -> AssociativityCheck {
        self.associativity
    }

    /// Records the user's declaration that the group is simple. Simplicity
    /// is never computed.
    pub fn assert_simple(mut self) -> Self {
        self.asserted_simple = true;
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in self.table.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

pub fn parse_group(text: &str) -> Result<GroupTable, GroupError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let malformed = |line: usize, reason: String| GroupError::Malformed { line, reason };

    let (hline, header) = lines.next().ok_or(GroupError::Empty)?;
    let order: usize = header
        .parse()
        .map_err(|_| malformed(hline, format!("`{header}` is not a group order")))?;
    if order == 0 {
        return Err(GroupError::Empty);
    }
    let mut table = Vec::with_capacity(order * order);
    let mut rows = 0;
    for (line, text) in lines {
        rows += 1;
        if rows > order {
            continue;
        }
        let row = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| malformed(line, format!("`{tok}` is not an element index")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != order {
            return Err(malformed(
                line,
                format!("expected {order} entries, found {}", row.len()),
            ));
        }
        table.extend(row);
    }
    if rows != order {
        return Err(GroupError::RowCount {
            expected: order,
            found: rows,
        });
    }
    GroupTable::from_table(order, table)
}

/// A symmetric generating set not containing the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    elements: Vec<usize>,
}

impl GeneratingSet {
    pub fn new(group: &GroupTable, elements: &[usize]) -> Result<Self, GroupError> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        for &s in &set {
            if s >= group.order() {
                return Err(GroupError::GeneratorOutOfRange(s));
            }
            if s == 0 {
                return Err(GroupError::IdentityGenerator);
            }
            if !set.contains(&group.inverse(s)) {
                return Err(GroupError::NotSymmetric(s, group.inverse(s)));
            }
        }
        let mut seen = vec![false; group.order()];
        seen[0] = true;
        let mut reached = 1;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in &set {
                let y = group.op(x, s);
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        if reached != group.order() {
            return Err(GroupError::DoesNotGenerate {
                reached,
                order: group.order(),
            });
        }
        Ok(Self {
            elements: set.into_iter().collect(),
        })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }
}

/// Parses a comma-separated generator list such as `1,4`.
pub fn parse_generators(text: &str) -> Result<Vec<usize>, GroupError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse().map_err(|_| GroupError::Malformed {
                line: 0,
                reason: format!("`{t}` is not a generator index"),
            })
        })
        .collect()
}

/// Cayley graph with edges `{x, x∘s}`; `|S|`-regular, connected and
/// vertex-transitive by construction.
pub fn cayley_graph(group: &GroupTable, gens: &GeneratingSet) -> Graph {
    let edges: BTreeSet<(usize, usize)> = (0..group.order())
        .flat_map(|x| gens.elements().iter().map(move |&s| (x, group.op(x, s))))
        .map(|(x, y)| (x.min(y), x.max(y)))
        .collect();
    Graph::from_edges(group.order(), edges)
        .expect("a symmetric identity-free generating set yields a simple graph")
        .with_vertex_transitive(Provenance::ByConstruction)
}

/// Whether the multiplicity argument for Cayley graphs applies: the group
/// has odd order or was declared simple.
pub fn multiplicity_argument_applies(group: &GroupTable) -> bool {
    group.order_is_odd() || group.asserted_simple()
}
