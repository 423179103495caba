//! Vertex-transitivity by backtracking automorphism search.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{Graph, Provenance};

/// Default largest `n` for which the exhaustive search is attempted.
pub const DEFAULT_SEARCH_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transitivity {
    Verified,
    Refuted,
    Skipped,
}

/// Decides vertex-transitivity by searching, for every target `v`, for an
/// automorphism sending vertex 0 to `v`.
///
/// Non-regular graphs are refuted without searching. Above `limit` the search
/// is not run: graphs flagged vertex-transitive by construction report
/// `Verified`, everything else `Skipped`.
pub fn verify_vertex_transitive(g: &Graph, limit: usize) -> Transitivity {
    if g.regular_degree().is_none() {
        return Transitivity::Refuted;
    }
    if g.n() > limit {
        return if g.vertex_transitive() == Some(Provenance::ByConstruction) {
            Transitivity::Verified
        } else {
            Transitivity::Skipped
        };
    }
    let search = AutomorphismSearch::new(g);
    let mut reached = vec![false; g.n()];
    for target in 0..g.n() {
        if reached[target] {
            continue;
        }
        match search.find(0, target) {
            // every vertex on the orbit of 0 under this map is reachable
            // from 0 by one of its powers
            Some(perm) => {
                let mut x = 0;
                loop {
                    x = perm[x];
                    if reached[x] {
                        break;
                    }
                    reached[x] = true;
                }
                reached[target] = true;
            }
            None => return Transitivity::Refuted,
        }
    }
    Transitivity::Verified
}

/// Backtracking search for automorphisms with a prescribed image of one
/// vertex. Candidates are pruned by degree and by the multiset of neighbor
/// degrees, and each vertex after the first is placed next to the image of
/// its BFS parent.
pub struct AutomorphismSearch<'a> {
    g: &'a Graph,
    signature: Vec<(usize, Vec<usize>)>,
}

impl<'a> AutomorphismSearch<'a> {
    pub fn new(g: &'a Graph) -> Self {
        let signature = (0..g.n())
            .map(|v| {
                let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
                nd.sort_unstable();
                (g.degree(v), nd)
            })
            .collect();
        Self { g, signature }
    }

    /// Returns an automorphism `p` (as `p[x]` = image of `x`) with
    /// `p[source] = target`, if one exists.
    pub fn find(&self, source: usize, target: usize) -> Option<Vec<usize>> {
        if self.signature[source] != self.signature[target] {
            return None;
        }
        let (order, parent) = self.placement_order(source);
        let n = self.g.n();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[source] = target;
        used[target] = true;
        if self.extend(1, &order, &parent, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn placement_order(&self, source: usize) -> (Vec<usize>, Vec<Option<usize>>) {
        let n = self.g.n();
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        for root in std::iter::once(source).chain(0..n) {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &w in self.g.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(u);
                        queue.push_back(w);
                    }
                }
            }
        }
        (order, parent)
    }

    fn extend(
        &self,
        depth: usize,
        order: &[usize],
        parent: &[Option<usize>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        let candidates: Vec<usize> = match parent[x] {
            Some(p) => self.g.neighbors(map[p]).to_vec(),
            None => (0..self.g.n()).collect(),
        };
        for y in candidates {
            if used[y] || self.signature[x] != self.signature[y] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&z| self.g.has_edge(x, z) == self.g.has_edge(y, map[z]));
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.extend(depth + 1, order, parent, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }
}
