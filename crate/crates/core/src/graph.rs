//! Labelled multigraphs `(G, l, A, σ)` and the operations that act on them.
//!
//! Vertices are `1..=n`. Parallel edges never appear as separate records: a
//! vertex pair carries at most one [`Edge`] whose multiplicity is a nonzero
//! integer. Labels are opaque strings and the label set is always exactly the
//! image of the labeling.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: String,
    pub mult: i64,
}

impl Edge {
    pub fn new(u: usize, v: usize, label: impl Into<String>, mult: i64) -> Self {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        Self {
            u,
            v,
            label: label.into(),
            mult,
        }
    }

    /// Edge with its canonical label `(u,v)` and multiplicity 1.
    pub fn classical(u: usize, v: usize) -> Self {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        Self::new(u, v, canonical_label(u, v), 1)
    }

    pub fn key(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

/// The canonical label of the edge `{u,v}`.
pub fn canonical_label(u: usize, v: usize) -> String {
    let (u, v) = if u <= v { (u, v) } else { (v, u) };
    format!("({u},{v})")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollapseKind {
    /// The edge count is preserved.
    Simple,
    /// Some parallel edges were merged.
    Singular,
}

impl fmt::Display for CollapseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollapseKind::Simple => f.write_str("simple"),
            CollapseKind::Singular => f.write_str("singular"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted by `(u, v)`, unique.
    edges: Vec<Edge>,
}

impl Graph {
    /// Validates and normalises an edge list.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut by_key = BTreeMap::new();
        for e in edges {
            let e = Edge::new(e.u, e.v, e.label, e.mult);
            if e.u == e.v {
                return Err(Error::Loop(e.u));
            }
            for x in [e.u, e.v] {
                if x == 0 || x > n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if e.mult == 0 {
                return Err(Error::ZeroMultiplicity(e.u, e.v));
            }
            if by_key.contains_key(&e.key()) {
                return Err(Error::DuplicateEdge(e.u, e.v));
            }
            by_key.insert(e.key(), e);
        }
        Ok(Self {
            n,
            edges: by_key.into_values().collect(),
        })
    }

    /// Canonical labeling, trivial multiplicity.
    pub fn classical(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(u, v)| Edge::classical(u, v)))
    }

    /// `S_n`: `n` isolated vertices.
    pub fn isolated(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|v| (v, v + 1)).collect();
        Self::classical(n, &pairs).expect("path edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let pairs: Vec<_> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        Self::classical(n, &pairs).expect("complete graph edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, u: usize, v: usize) -> Option<&Edge> {
        let key = if u <= v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| e.key().cmp(&key))
            .ok()
            .map(|k| &self.edges[k])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge(u, v).is_some()
    }

    /// The label set `A`, ordered by the smallest edge carrying each label.
    /// This order fixes the rows of every exponent matrix.
    pub fn labels(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in &self.edges {
            if seen.insert(e.label.as_str()) {
                out.push(e.label.clone());
            }
        }
        out
    }

    /// Injective labeling and every multiplicity equal to one. Label names
    /// themselves are irrelevant here.
    pub fn is_classical(&self) -> bool {
        self.labels().len() == self.edges.len() && self.edges.iter().all(|e| e.mult == 1)
    }

    /// Every edge is labelled `(u,v)` by its own endpoints.
    pub fn has_canonical_labels(&self) -> bool {
        self.edges
            .iter()
            .all(|e| e.label == canonical_label(e.u, e.v))
    }

    /// Edges grouped by label, each group given as its sorted vertex pairs.
    pub fn label_classes(&self) -> BTreeSet<Vec<(usize, usize)>> {
        let mut classes: BTreeMap<&str, Vec<(usize, usize)>> = BTreeMap::new();
        for e in &self.edges {
            classes.entry(&e.label).or_default().push(e.key());
        }
        classes.into_values().collect()
    }

    /// Multiplicity per vertex pair, labels ignored.
    pub fn multiplicities(&self) -> BTreeMap<(usize, usize), i64> {
        self.edges.iter().map(|e| (e.key(), e.mult)).collect()
    }

    /// Renames the vertices: vertex `v` becomes `perm[v - 1]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::NotAPermutation(self.n));
        }
        let mut hit = vec![false; self.n];
        for &p in perm {
            if p == 0 || p > self.n || hit[p - 1] {
                return Err(Error::NotAPermutation(self.n));
            }
            hit[p - 1] = true;
        }
        Graph::new(
            self.n,
            self.edges
                .iter()
                .map(|e| Edge::new(perm[e.u - 1], perm[e.v - 1], e.label.clone(), e.mult)),
        )
    }

    /// Replaces every multiplicity. `sigma` must cover exactly the edges.
    pub fn set_multiplicities(&self, sigma: &BTreeMap<(usize, usize), i64>) -> Result<Graph> {
        for &(u, v) in sigma.keys() {
            if !self.has_edge(u, v) {
                return Err(Error::UnknownEdge(u, v));
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let m = *sigma
                    .get(&e.key())
                    .or_else(|| sigma.get(&(e.v, e.u)))
                    .ok_or(Error::MissingEdge(e.u, e.v))?;
                if m == 0 {
                    return Err(Error::ZeroMultiplicity(e.u, e.v));
                }
                Ok(Edge::new(e.u, e.v, e.label.clone(), m))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Graph { n: self.n, edges })
    }

    /// Applies a label-to-label map defined on every current label. The new
    /// label set is the image of the map.
    pub fn relabel(&self, map: &BTreeMap<String, String>) -> Result<Graph> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let to = map
                    .get(&e.label)
                    .ok_or_else(|| Error::IncompleteLabeling(e.label.clone()))?;
                Ok(Edge::new(e.u, e.v, to.clone(), e.mult))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Graph { n: self.n, edges })
    }

    /// Every edge labelled `from` takes the label `to`.
    pub fn merge_labels(&self, from: &str, to: &str) -> Result<Graph> {
        let labels = self.labels();
        for l in [from, to] {
            if !labels.iter().any(|x| x == l) {
                return Err(Error::UnknownLabel(l.to_string()));
            }
        }
        if from == to {
            return Err(Error::SameLabel(from.to_string()));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let label = if e.label == from { to } else { &e.label };
                Edge::new(e.u, e.v, label, e.mult)
            })
            .collect();
        Ok(Graph { n: self.n, edges })
    }

    /// `G ⊔ H`, see [`disjoint_union_with_labels`].
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        disjoint_union_with_labels(self, other).0
    }

    /// Identifies `j` with `i`. The vertex `j` disappears and the vertices
    /// above it shift down by one.
    pub fn collapse(&self, i: usize, j: usize) -> Result<(Graph, CollapseKind)> {
        for x in [i, j] {
            if x == 0 || x > self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if i == j {
            return Err(Error::SelfCollapse(i));
        }
        if self.has_edge(i, j) {
            return Err(Error::AdjacentCollapse(i, j));
        }
        let renumber = |x: usize| if x > j { x - 1 } else { x };

        // Label rewriting map, kept fully resolved: every value is a root.
        let mut rename: BTreeMap<String, String> =
            self.labels().into_iter().map(|l| (l.clone(), l)).collect();
        let mut merged: BTreeMap<(usize, usize), Edge> = BTreeMap::new();
        let mut singular = false;

        for e in &self.edges {
            if e.u == j || e.v == j {
                continue;
            }
            let ne = Edge::new(renumber(e.u), renumber(e.v), e.label.clone(), e.mult);
            merged.insert(ne.key(), ne);
        }
        // Edges at j in ascending order of the other endpoint.
        for e in &self.edges {
            let x = match (e.u == j, e.v == j) {
                (true, _) => e.v,
                (_, true) => e.u,
                _ => continue,
            };
            match self.edge(i, x) {
                Some(keep) => {
                    singular = true;
                    let mult = keep
                        .mult
                        .checked_add(e.mult)
                        .ok_or(Error::Overflow("collapse multiplicity"))?;
                    let key = Edge::new(renumber(i), renumber(x), "", 0).key();
                    if mult == 0 {
                        return Err(Error::ZeroMergedMultiplicity(key.0, key.1));
                    }
                    merged.get_mut(&key).expect("surviving edge present").mult = mult;
                    let keep_root = rename[&keep.label].clone();
                    let drop_root = rename[&e.label].clone();
                    if keep_root != drop_root {
                        for v in rename.values_mut() {
                            if *v == drop_root {
                                *v = keep_root.clone();
                            }
                        }
                    }
                }
                None => {
                    let ne = Edge::new(renumber(i), renumber(x), e.label.clone(), e.mult);
                    merged.insert(ne.key(), ne);
                }
            }
        }
        let edges = merged
            .into_values()
            .map(|mut e| {
                e.label = rename[&e.label].clone();
                e
            })
            .collect();
        let kind = if singular {
            CollapseKind::Singular
        } else {
            CollapseKind::Simple
        };
        Ok((
            Graph {
                n: self.n - 1,
                edges,
            },
            kind,
        ))
    }

    /// `G #₀ H` glued at `v ∈ G` and `w ∈ H`.
    pub fn clique_zero_sum(&self, other: &Graph, v: usize, w: usize) -> Result<Graph> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        if w == 0 || w > other.n {
            return Err(Error::VertexOutOfRange {
                vertex: w,
                n: other.n,
            });
        }
        let (g, kind) = self.disjoint_union(other).collapse(v, self.n + w)?;
        debug_assert_eq!(kind, CollapseKind::Simple);
        Ok(g)
    }
}

/// `G ⊔ H` together with the label renamings applied to each operand.
///
/// `G` keeps its labels. A label of `H` that is the canonical label of the
/// single edge carrying it becomes the canonical label of the shifted edge;
/// any other label of `H` gets primes appended until it is fresh.
pub fn disjoint_union_with_labels(
    g: &Graph,
    h: &Graph,
) -> (Graph, BTreeMap<String, String>, BTreeMap<String, String>) {
    let shift = g.n;
    let left: BTreeMap<String, String> = g.labels().into_iter().map(|l| (l.clone(), l)).collect();
    let mut used: BTreeSet<String> = left.keys().cloned().collect();
    let mut right = BTreeMap::new();

    let mut class_size: BTreeMap<&str, usize> = BTreeMap::new();
    for e in &h.edges {
        *class_size.entry(&e.label).or_default() += 1;
    }
    for e in &h.edges {
        if class_size[e.label.as_str()] == 1 && e.label == canonical_label(e.u, e.v) {
            let name = canonical_label(e.u + shift, e.v + shift);
            used.insert(name.clone());
            right.insert(e.label.clone(), name);
        }
    }
    for l in h.labels() {
        if right.contains_key(&l) {
            continue;
        }
        let mut name = l.clone();
        while used.contains(&name) {
            name.push('\'');
        }
        used.insert(name.clone());
        right.insert(l, name);
    }

    let edges = g
        .edges
        .iter()
        .cloned()
        .chain(
            h.edges
                .iter()
                .map(|e| Edge::new(e.u + shift, e.v + shift, right[&e.label].clone(), e.mult)),
        )
        .collect();
    (
        Graph {
            n: g.n + h.n,
            edges,
        },
        left,
        right,
    )
}
