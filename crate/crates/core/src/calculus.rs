//! How graph operations act on exponent matrices and cut ideals: the
//! multiplicity, relabeling and collapse transforms, column mixing for
//! disjoint unions, the union and collapse routes to an ideal, and
//! verifiers comparing each route against direct computation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::format::graph_to_json;
use crate::graph::{disjoint_union_with_labels, Edge, Graph};
use crate::groebner::{normal_form, RawBinomial, TermOrder};
use crate::matrix::{exponent_matrix, mat_mul, ExponentMatrix, RowKey};
use crate::partition::{
    all_partitions, is_feasible, lift_feasible, product_partition, split_product, Partition,
};
use crate::toric::{eliminate, ideal_equal, membership_in, toric_ideal, Binomial, Ideal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    MultiplicityBlock,
    RelabelBlock,
    CollapseSelector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformMatrix {
    pub kind: TransformKind,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i64>>,
}

impl TransformMatrix {
    fn zeros(kind: TransformKind, rows: usize, cols: usize) -> Self {
        Self {
            kind,
            rows,
            cols,
            entries: vec![vec![0; cols]; rows],
        }
    }

    /// `self · m`.
    pub fn times(&self, m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
        mat_mul(&self.entries, m, self.cols)
    }

    /// `m · self`.
    pub fn times_left(&self, m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
        mat_mul(m, &self.entries, self.rows)
    }
}

/// `M_σ = diag(I_σ, I_σ)` with `I_σ` the diagonal of the new multiplicities
/// in edge order. `G` must be classical.
pub fn multiplicity_matrix(
    graph: &Graph,
    sigma: &BTreeMap<(usize, usize), i64>,
) -> Result<TransformMatrix> {
    if !graph.is_classical() {
        return Err(Error::NotClassical);
    }
    let weighted = graph.set_multiplicities(sigma)?;
    let m = graph.edge_count();
    let mut t = TransformMatrix::zeros(TransformKind::MultiplicityBlock, 2 * m, 2 * m);
    for (k, e) in weighted.edges().enumerate() {
        t.entries[k][k] = e.mult;
        t.entries[m + k][m + k] = e.mult;
    }
    Ok(t)
}

/// `R = diag(B, B)` with `b_{ca} = 1` iff the label map sends `a` to `c`.
/// Columns follow the labels of `graph`, rows the labels of the relabelled
/// graph, which is returned alongside.
pub fn relabel_matrix(
    graph: &Graph,
    map: &BTreeMap<String, String>,
) -> Result<(TransformMatrix, Graph)> {
    let target = graph.relabel(map)?;
    let t = label_block(&graph.labels(), &target.labels(), map);
    Ok((t, target))
}

fn label_block(from: &[String], to: &[String], map: &BTreeMap<String, String>) -> TransformMatrix {
    let mut t = TransformMatrix::zeros(TransformKind::RelabelBlock, 2 * to.len(), 2 * from.len());
    for (a, l) in from.iter().enumerate() {
        let c = to.iter().position(|x| *x == map[l]).expect("image label");
        t.entries[c][a] = 1;
        t.entries[to.len() + c][from.len() + a] = 1;
    }
    t
}

/// The label map `l'` forced by collapsing `i` and `j`: each label of `G` is
/// sent to the label its edges carry afterwards.
pub fn collapse_label_map(graph: &Graph, i: usize, j: usize) -> Result<BTreeMap<String, String>> {
    let (collapsed, _) = graph.collapse(i, j)?;
    let image = |x: usize| {
        let x = if x == j { i } else { x };
        if x > j {
            x - 1
        } else {
            x
        }
    };
    Ok(graph
        .edges()
        .map(|e| {
            let to = collapsed
                .edge(image(e.u), image(e.v))
                .expect("every edge survives up to merging");
            (e.label.clone(), to.label.clone())
        })
        .collect())
}

/// `R_{l'}` for the collapse of `i` and `j`, rows in the label order of the
/// collapsed graph. A permutation matrix for simple collapses.
pub fn collapse_relabel_matrix(graph: &Graph, i: usize, j: usize) -> Result<TransformMatrix> {
    let (collapsed, _) = graph.collapse(i, j)?;
    let map = collapse_label_map(graph, i, j)?;
    Ok(label_block(&graph.labels(), &collapsed.labels(), &map))
}

/// `C_{i≡j}`: the `2^{n-1} × 2^{n-2}` selector with `C[p_f, p] = 1`.
pub fn collapse_matrix(graph: &Graph, i: usize, j: usize) -> Result<TransformMatrix> {
    graph.collapse(i, j)?;
    let n = graph.n();
    let rows = all_partitions(n)?.len();
    let lower = all_partitions(n - 1)?;
    let mut t = TransformMatrix::zeros(TransformKind::CollapseSelector, rows, lower.len());
    for q in &lower {
        t.entries[lift_feasible(q, i, j).index()][q.index()] = 1;
    }
    Ok(t)
}

/// `𝒜_G # 𝒜_H`: rows of `G` then rows of `H`, one column per pair of
/// columns, keyed by the product partition `a×b`.
pub fn mix_columns(mg: &ExponentMatrix, mh: &ExponentMatrix) -> ExponentMatrix {
    let mut rows = mg.rows.clone();
    rows.extend(mh.rows.iter().cloned());
    let mut cols = Vec::with_capacity(mg.ncols() * mh.ncols());
    let mut entries = vec![Vec::with_capacity(mg.ncols() * mh.ncols()); rows.len()];
    for (ca, a) in mg.cols.iter().enumerate() {
        for (cb, b) in mh.cols.iter().enumerate() {
            cols.push(product_partition(a, b, false));
            let col = mg.column(ca).into_iter().chain(mh.column(cb));
            for (r, x) in col.enumerate() {
                entries[r].push(x);
            }
        }
    }
    ExponentMatrix {
        rows,
        cols,
        entries,
    }
}

fn renamed_rows(m: &ExponentMatrix, map: &BTreeMap<String, String>) -> ExponentMatrix {
    let mut out = m.clone();
    for r in &mut out.rows {
        r.label = map[&r.label].clone();
    }
    out
}

/// Every monomial of total degree `d` in `nvars` variables, in a fixed order.
fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            go(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if nvars > 0 {
        go(0, d, &mut vec![0; nvars], &mut out);
    }
    out
}

/// Images of a monomial under the maps of the two factors.
type ImagePair = (Vec<i64>, Vec<i64>);

/// `I_{G⊔H}` assembled from the two factors.
///
/// Two monomials of degree at most `degree_bound` in the variables
/// `r_{a×b}` are joined by a binomial exactly when their projections to the
/// `a` indices differ by an element of `I_G` and their projections to the
/// `b` indices by an element of `I_H`, both decided by the exponent-matrix
/// oracle. This yields the linear relations `r_{a×b} - r_{a×b*}` and all
/// composed binomials. Candidates already in the ideal of the earlier ones
/// are dropped.
pub fn union_ideal(g: &Graph, h: &Graph, degree_bound: u32) -> Result<Ideal> {
    let n = g.n() + h.n();
    let vars = all_partitions(n)?;
    let mg = exponent_matrix(g)?;
    let mh = exponent_matrix(h)?;
    let key_cols: Vec<(Vec<i64>, Vec<i64>)> = vars
        .iter()
        .map(|q| {
            let (a, b, _) = split_product(q, g.n());
            (mg.column(a.index()), mh.column(b.index()))
        })
        .collect();

    let mut buckets: HashMap<ImagePair, Vec<Vec<u32>>> = HashMap::new();
    let mut keys_in_order = Vec::new();
    for d in 0..=degree_bound {
        for m in monomials_of_degree(vars.len(), d) {
            let mut kg = vec![0i64; mg.nrows()];
            let mut kh = vec![0i64; mh.nrows()];
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = i64::from(e);
                let (cg, ch) = &key_cols[v];
                for (x, c) in kg.iter_mut().zip(cg) {
                    *x += e * c;
                }
                for (x, c) in kh.iter_mut().zip(ch) {
                    *x += e * c;
                }
            }
            let key = (kg, kh);
            let slot = buckets.entry(key.clone()).or_default();
            if slot.is_empty() {
                keys_in_order.push(key);
            }
            slot.push(m);
        }
    }

    let degree = |a: &[u32], b: &[u32]| a.iter().sum::<u32>().max(b.iter().sum());
    let mut candidates: Vec<(u32, Vec<u32>, Vec<u32>)> = Vec::new();
    for key in &keys_in_order {
        for w in buckets[key].windows(2) {
            candidates.push((degree(&w[0], &w[1]), w[0].clone(), w[1].clone()));
        }
    }
    candidates.sort_by_key(|c| c.0);

    let mut accepted: Vec<Binomial> = Vec::new();
    let mut k = 0;
    while k < candidates.len() {
        let d = candidates[k].0;
        let current = Ideal::new(n, accepted.clone(), TermOrder::DegRevLex)?;
        let gb: Vec<RawBinomial> = current
            .reduced_gb()
            .iter()
            .map(|b| RawBinomial {
                lead: b.plus().to_vec(),
                tail: b.minus().to_vec(),
            })
            .collect();
        while k < candidates.len() && candidates[k].0 == d {
            let (_, a, b) = &candidates[k];
            if normal_form(a, &gb) != normal_form(b, &gb) {
                accepted.push(Binomial::new(n, a.clone(), b.clone())?);
            }
            k += 1;
        }
    }
    Ideal::new(n, accepted, TermOrder::DegRevLex)
}

/// `I_{G⊔S_m} = I_G' + J`: the generators of `I_G` with every isolated
/// vertex placed on the side not containing 1, plus the linear relations
/// identifying all variables that agree on `[n_G]`.
pub fn isolated_union_ideal(g: &Graph, m: usize) -> Result<Ideal> {
    if m == 0 {
        return toric_ideal(g);
    }
    let n = g.n() + m;
    let nv = all_partitions(n)?.len();
    let whole = Partition::whole(m);
    let lift = |mono: &[u32]| {
        let mut out = vec![0u32; nv];
        for (k, &e) in mono.iter().enumerate() {
            let a = Partition::from_index(g.n(), k);
            out[product_partition(&a, &whole, true).index()] += e;
        }
        out
    };
    let mut gens: Vec<Binomial> = toric_ideal(g)?
        .generators()
        .iter()
        .map(|b| Binomial::new(n, lift(b.plus()), lift(b.minus())))
        .collect::<Result<_>>()?;
    let mut by_a: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for q in all_partitions(n)? {
        by_a.entry(split_product(&q, g.n()).0.index())
            .or_default()
            .push(q.index());
    }
    for class in by_a.values() {
        for w in class.windows(2) {
            let mut a = vec![0u32; nv];
            let mut b = vec![0u32; nv];
            a[w[0]] = 1;
            b[w[1]] = 1;
            gens.push(Binomial::new(n, a, b)?);
        }
    }
    Ideal::new(n, gens, TermOrder::DegRevLex)
}

fn rename_feasible(b: &Binomial, i: usize, j: usize) -> Option<Binomial> {
    let n = b.n();
    let m = 1usize << (n - 2);
    let mut plus = vec![0u32; m];
    let mut minus = vec![0u32; m];
    for (k, (&x, &y)) in b.plus().iter().zip(b.minus()).enumerate() {
        if x == 0 && y == 0 {
            continue;
        }
        let p = Partition::from_index(n, k);
        if !is_feasible(&p, i, j) {
            return None;
        }
        let q = p.project(j).index();
        plus[q] += x;
        minus[q] += y;
    }
    Some(Binomial::new(n - 1, plus, minus).expect("projection is injective on feasible variables"))
}

/// The collapse route: eliminate every variable whose partition separates
/// `i` and `j` from `I_G`, then rename `r_{p_f}` to `r_p` over `[n-1]`.
pub fn collapse_ideal(graph: &Graph, i: usize, j: usize) -> Result<Ideal> {
    graph.collapse(i, j)?;
    let n = graph.n();
    let kill: Vec<Partition> = all_partitions(n)?
        .into_iter()
        .filter(|p| !is_feasible(p, i, j))
        .collect();
    let kept = eliminate(&toric_ideal(graph)?, &kill)?;
    let gens = kept
        .generators()
        .iter()
        .map(|b| rename_feasible(b, i, j).expect("eliminated ideal uses feasible variables only"))
        .collect();
    Ideal::new(n - 1, gens, TermOrder::DegRevLex)
}

/// The collapse rule applied to a list of generators: drop every binomial
/// with a non-feasible variable, rename the rest. Sound but in general not
/// a generating set of the collapsed cut ideal.
pub fn generator_level_collapse(
    graph: &Graph,
    gens: &[Binomial],
    i: usize,
    j: usize,
) -> Result<Vec<Binomial>> {
    graph.collapse(i, j)?;
    for b in gens {
        if b.n() != graph.n() {
            return Err(Error::SizeMismatch {
                expected: graph.n(),
                found: b.n(),
            });
        }
    }
    Ok(gens
        .iter()
        .filter_map(|b| rename_feasible(b, i, j))
        .collect())
}

/// One verified identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    /// Counterexample description when the check fails.
    pub detail: String,
}

impl Check {
    fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ok: true,
            detail: String::new(),
        }
    }

    fn from_result(name: impl Into<String>, r: std::result::Result<(), String>) -> Self {
        match r {
            Ok(()) => Self::pass(name),
            Err(detail) => Self {
                name: name.into(),
                ok: false,
                detail,
            },
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            write!(f, "OK   {}", self.name)
        } else {
            write!(f, "FAIL {}: {}", self.name, self.detail)
        }
    }
}

fn compare_entries(got: &[Vec<i64>], want: &ExponentMatrix) -> std::result::Result<(), String> {
    if got.len() != want.nrows() {
        return Err(format!("{} rows, expected {}", got.len(), want.nrows()));
    }
    for (r, (a, b)) in got.iter().zip(&want.entries).enumerate() {
        if a.len() != b.len() {
            return Err(format!("{} columns, expected {}", a.len(), b.len()));
        }
        if let Some(c) = (0..a.len()).find(|&c| a[c] != b[c]) {
            return Err(format!(
                "entry ({}, {}) is {}, expected {}",
                want.rows[r], want.cols[c], a[c], b[c]
            ));
        }
    }
    Ok(())
}

fn compare_ideals(name: &str, got: &Ideal, want: &Ideal) -> Check {
    let r = match ideal_equal(got, want) {
        Ok(true) => Ok(()),
        Ok(false) => {
            let missing = want.reduced_gb().iter().find(|b| !got.contains(b));
            let extra = got.reduced_gb().iter().find(|b| !want.contains(b));
            Err(match (missing, extra) {
                (Some(b), _) => format!("missing {b}"),
                (_, Some(b)) => format!("unexpected {b}"),
                _ => "reduced bases differ".into(),
            })
        }
        Err(e) => Err(e.to_string()),
    };
    Check::from_result(name, r)
}

/// `M_σ·𝒜_G = 𝒜_{(G,σ)}` and `I_G = I_{(G,σ)}` for classical `G`.
pub fn verify_multiplicity(
    graph: &Graph,
    sigma: &BTreeMap<(usize, usize), i64>,
) -> Result<Vec<Check>> {
    let weighted = graph.set_multiplicities(sigma)?;
    let m = multiplicity_matrix(graph, sigma)?;
    let got = m.times(&exponent_matrix(graph)?.entries)?;
    let want = exponent_matrix(&weighted)?;
    Ok(vec![
        dump(
            Check::from_result("multiplicity matrix identity", compare_entries(&got, &want)),
            &weighted,
        ),
        dump(
            compare_ideals(
                "multiplicity invariance of the cut ideal",
                &toric_ideal(&weighted)?,
                &toric_ideal(graph)?,
            ),
            &weighted,
        ),
    ])
}

/// `R_l·𝒜_G = 𝒜_{(G,l)}`.
pub fn verify_relabel(graph: &Graph, map: &BTreeMap<String, String>) -> Result<Check> {
    let (r, target) = relabel_matrix(graph, map)?;
    let got = r.times(&exponent_matrix(graph)?.entries)?;
    Ok(dump(
        Check::from_result(
            "relabel matrix identity",
            compare_entries(&got, &exponent_matrix(&target)?),
        ),
        graph,
    ))
}

/// The collapse matrix identity, the collapse route against the direct cut
/// ideal, and soundness of the generator-level rule.
pub fn verify_collapse(graph: &Graph, i: usize, j: usize) -> Result<Vec<Check>> {
    let (collapsed, kind) = graph.collapse(i, j)?;
    let tag = format!("{kind} collapse {i}≡{j}");
    let r = collapse_relabel_matrix(graph, i, j)?;
    let c = collapse_matrix(graph, i, j)?;
    let want = exponent_matrix(&collapsed)?;
    let got = c.times_left(&r.times(&exponent_matrix(graph)?.entries)?)?;
    let mut out = vec![Check::from_result(
        format!("{tag}: matrix identity"),
        compare_entries(&got, &want),
    )];

    let direct = toric_ideal(&collapsed)?;
    out.push(compare_ideals(
        &format!("{tag}: collapse ideal equals direct cut ideal"),
        &collapse_ideal(graph, i, j)?,
        &direct,
    ));

    let survivors = generator_level_collapse(graph, toric_ideal(graph)?.generators(), i, j)?;
    let mut bad = None;
    for b in &survivors {
        if !membership_in(&want, b)? {
            bad = Some(b.to_string());
            break;
        }
    }
    out.push(Check::from_result(
        format!(
            "{tag}: {} surviving generators are members",
            survivors.len()
        ),
        bad.map_or(Ok(()), |b| {
            Err(format!("{b} is not in the collapsed ideal"))
        }),
    ));
    Ok(out.into_iter().map(|c| dump(c, graph)).collect())
}

/// Column mixing against `𝒜_{G⊔H}` (every mixed column twice) and
/// `𝒜_{G#₀H}` glued at the last vertex of `G` and the first of `H`, then
/// the union route against the direct cut ideal.
pub fn verify_union(g: &Graph, h: &Graph, degree_bound: u32) -> Result<Vec<Check>> {
    let (union, left, right) = disjoint_union_with_labels(g, h);
    let mix = mix_columns(
        &renamed_rows(&exponent_matrix(g)?, &left),
        &renamed_rows(&exponent_matrix(h)?, &right),
    );
    let mu = exponent_matrix(&union)?;
    let mut out = Vec::new();

    let row_of = |m: &ExponentMatrix, k: &RowKey| m.rows.iter().position(|x| x == k);
    let union_check = (|| {
        for (c, q) in mu.cols.iter().enumerate() {
            let (a, b, _) = split_product(q, g.n());
            let mc = (a.index()) * (1usize << (h.n() - 1)) + b.index();
            for (r, key) in mix.rows.iter().enumerate() {
                let ur = row_of(&mu, key).ok_or_else(|| format!("row {key} missing"))?;
                if mu.entries[ur][c] != mix.entries[r][mc] {
                    return Err(format!(
                        "column {q} differs from mixed column {}",
                        mix.cols[mc]
                    ));
                }
            }
        }
        Ok(())
    })();
    out.push(Check::from_result(
        "disjoint union columns are mixed columns, each twice",
        union_check,
    ));

    let glue = (g.n(), g.n() + 1);
    let (sum, _) = union.collapse(glue.0, glue.1)?;
    let ms = exponent_matrix(&sum)?;
    let sum_check = (|| {
        for (c, q) in ms.cols.iter().enumerate() {
            let lifted = lift_feasible(q, glue.0, glue.1);
            let (a, b, _) = split_product(&lifted, g.n());
            let mc = a.index() * (1usize << (h.n() - 1)) + b.index();
            for (r, key) in mix.rows.iter().enumerate() {
                let sr = row_of(&ms, key).ok_or_else(|| format!("row {key} missing"))?;
                if ms.entries[sr][c] != mix.entries[r][mc] {
                    return Err(format!(
                        "column {q} differs from mixed column {}",
                        mix.cols[mc]
                    ));
                }
            }
        }
        Ok(())
    })();
    out.push(Check::from_result(
        "clique 0-sum columns are exactly the mixed columns",
        sum_check,
    ));

    let composed = union_ideal(g, h, degree_bound)?;
    let direct = toric_ideal(&union)?;
    let stray = composed.generators().iter().find(|b| !direct.contains(b));
    out.push(Check::from_result(
        "union generators lie in the direct cut ideal",
        stray.map_or(Ok(()), |b| Err(format!("{b} is not a member"))),
    ));
    if direct.max_degree() <= degree_bound {
        out.push(compare_ideals(
            "union ideal equals direct cut ideal",
            &composed,
            &direct,
        ));
    }
    Ok(out.into_iter().map(|c| dump(c, &union)).collect())
}

/// Draws a graph on `n` vertices. Labelled graphs use at most `max_labels`
/// labels; multiplicities come from `{-2, -1, 1, 2}`.
pub fn sample_graph(rng: &mut impl Rng, n: usize, classical: bool, max_labels: usize) -> Graph {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .filter(|_| rng_coin(rng))
        .collect();
    if classical {
        return Graph::classical(n, &pairs).expect("valid pairs");
    }
    let mults = [-2i64, -1, 1, 2];
    let names = ["a", "b", "c", "d"];
    let k = max_labels.clamp(1, names.len());
    let edges = pairs.iter().map(|&(u, v)| {
        Edge::new(
            u,
            v,
            names[rng.gen_range(0..k)],
            *mults.choose(rng).expect("nonempty"),
        )
    });
    Graph::new(n, edges.collect::<Vec<_>>()).expect("valid edges")
}

fn rng_coin(rng: &mut impl Rng) -> bool {
    rng.gen_bool(0.5)
}

/// Random multiplicities for the edges of `graph`, drawn from `{-2,-1,1,2,3}`.
pub fn sample_multiplicities(rng: &mut impl Rng, graph: &Graph) -> BTreeMap<(usize, usize), i64> {
    let mults = [-2i64, -1, 1, 2, 3];
    graph
        .edges()
        .map(|e| (e.key(), *mults.choose(rng).expect("nonempty")))
        .collect()
}

/// Matrix identities on sampled graphs: multiplicity and relabel blocks on
/// classical graphs, collapse selectors on labelled ones, column mixing on
/// pairs.
pub fn verify_matrices(rng: &mut impl Rng, cases: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for case in 0..cases {
        let n = rng.gen_range(2..=5);
        let g = sample_graph(rng, n, true, 0);
        let sigma = sample_multiplicities(rng, &g);
        let m = multiplicity_matrix(&g, &sigma)?;
        let got = m.times(&exponent_matrix(&g)?.entries)?;
        let want = exponent_matrix(&g.set_multiplicities(&sigma)?)?;
        out.push(dump(
            Check::from_result(
                format!("case {case}: M_σ identity"),
                compare_entries(&got, &want),
            ),
            &g,
        ));

        let names = ["a", "b", "c"];
        let map: BTreeMap<String, String> = g
            .labels()
            .into_iter()
            .map(|l| (l, names[rng.gen_range(0..names.len())].to_string()))
            .collect();
        out.push(verify_relabel(&g, &map)?);

        let lg = sample_graph(rng, n, false, 3);
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && !lg.has_edge(i, j))
            .collect();
        if let Some(&(i, j)) = pairs.choose(rng) {
            if let Ok((collapsed, kind)) = lg.collapse(i, j) {
                let r = collapse_relabel_matrix(&lg, i, j)?;
                let c = collapse_matrix(&lg, i, j)?;
                let got = c.times_left(&r.times(&exponent_matrix(&lg)?.entries)?)?;
                out.push(dump(
                    Check::from_result(
                        format!("case {case}: {kind} collapse {i}≡{j} identity"),
                        compare_entries(&got, &exponent_matrix(&collapsed)?),
                    ),
                    &lg,
                ));
            }
        }

        let m2 = rng.gen_range(1..=(6 - n).max(1));
        let h = sample_graph(rng, m2, false, 2);
        if n + m2 <= 6 {
            let (union, left, right) = disjoint_union_with_labels(&lg, &h);
            let mix = mix_columns(
                &renamed_rows(&exponent_matrix(&lg)?, &left),
                &renamed_rows(&exponent_matrix(&h)?, &right),
            );
            let mu = exponent_matrix(&union)?;
            let mut want_cols: Vec<Vec<i64>> = Vec::new();
            for c in 0..mix.ncols() {
                want_cols.push(mix.column(c));
                want_cols.push(mix.column(c));
            }
            let doubled = ExponentMatrix {
                rows: mix.rows.clone(),
                cols: (0..want_cols.len()).map(|k| mu.cols[k]).collect(),
                entries: (0..mix.nrows())
                    .map(|r| want_cols.iter().map(|c| c[r]).collect())
                    .collect(),
            };
            let ok = doubled.same_up_to_order(&mu);
            out.push(dump(
                Check::from_result(
                    format!("case {case}: union columns are doubled mixed columns"),
                    if ok {
                        Ok(())
                    } else {
                        Err("column multisets differ".into())
                    },
                ),
                &union,
            ));
        }
    }
    Ok(out)
}

fn dump(mut check: Check, graph: &Graph) -> Check {
    if !check.ok {
        check.detail = format!("{}\n{}", check.detail, graph_to_json(graph));
    }
    check
}
