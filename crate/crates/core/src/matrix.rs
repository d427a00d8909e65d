//! The exponent matrix of the toric map and exact integer linear algebra on
//! it: rank by fraction-free elimination and a saturated kernel lattice basis
//! by unimodular row reduction followed by LLL size reduction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{all_partitions, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowSide {
    /// `s_a`: the edges labelled `a` that the partition separates.
    Separated,
    /// `t_a`: the edges labelled `a` kept on one side.
    Together,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowKey {
    pub side: RowSide,
    pub label: String,
}

impl fmt::Display for RowKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            RowSide::Separated => write!(f, "s{}", self.label),
            RowSide::Together => write!(f, "t{}", self.label),
        }
    }
}

/// Rows are every `s_a` (labels in graph order) followed by every `t_a`;
/// columns follow the partition order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    pub rows: Vec<RowKey>,
    pub cols: Vec<Partition>,
    pub entries: Vec<Vec<i64>>,
}

pub fn exponent_matrix(graph: &Graph) -> Result<ExponentMatrix> {
    let cols = all_partitions(graph.n())?;
    let labels = graph.labels();
    let rows: Vec<RowKey> = [RowSide::Separated, RowSide::Together]
        .into_iter()
        .flat_map(|side| {
            labels.iter().map(move |l| RowKey {
                side,
                label: l.clone(),
            })
        })
        .collect();
    let k = labels.len();
    let mut entries = vec![vec![0i64; cols.len()]; 2 * k];
    for (c, p) in cols.iter().enumerate() {
        for e in graph.edges() {
            let a = labels
                .iter()
                .position(|l| *l == e.label)
                .expect("label set is the image");
            let r = if p.separates(e.u, e.v) { a } else { k + a };
            entries[r][c] = entries[r][c]
                .checked_add(e.mult)
                .ok_or(Error::Overflow("exponent matrix"))?;
        }
    }
    Ok(ExponentMatrix {
        rows,
        cols,
        entries,
    })
}

impl ExponentMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// The exponent vector of `φ(r_p)` for the column at position `c`.
    pub fn column(&self, c: usize) -> Vec<i64> {
        self.entries.iter().map(|r| r[c]).collect()
    }

    pub fn column_of(&self, p: &Partition) -> Option<Vec<i64>> {
        self.cols
            .iter()
            .position(|q| q == p)
            .map(|c| self.column(c))
    }

    pub fn rank(&self) -> usize {
        rank(&self.entries)
    }

    /// `𝒜·u` for an integer vector indexed by the columns.
    pub fn apply(&self, u: &[i64]) -> Result<Vec<i64>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter().zip(u).try_fold(0i64, |acc, (&a, &x)| {
                    a.checked_mul(x)
                        .and_then(|t| acc.checked_add(t))
                        .ok_or(Error::Overflow("matrix-vector product"))
                })
            })
            .collect()
    }

    pub fn integer_kernel(&self) -> Result<LatticeBasis> {
        integer_kernel(&self.entries, self.ncols())
    }

    /// Equality up to reordering rows (matched by key) and columns (as a
    /// multiset).
    pub fn same_up_to_order(&self, other: &ExponentMatrix) -> bool {
        let mut mine: Vec<&RowKey> = self.rows.iter().collect();
        let mut theirs: Vec<&RowKey> = other.rows.iter().collect();
        mine.sort();
        theirs.sort();
        if mine != theirs || self.ncols() != other.ncols() {
            return false;
        }
        let perm: Vec<usize> = self
            .rows
            .iter()
            .map(|k| {
                other
                    .rows
                    .iter()
                    .position(|x| x == k)
                    .expect("same key set")
            })
            .collect();
        let mut a: Vec<Vec<i64>> = (0..self.ncols()).map(|c| self.column(c)).collect();
        let mut b: Vec<Vec<i64>> = (0..other.ncols())
            .map(|c| perm.iter().map(|&r| other.entries[r][c]).collect())
            .collect();
        a.sort();
        b.sort();
        a == b
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header: Vec<String> = self.cols.iter().map(|p| p.to_string()).collect();
        let keys: Vec<String> = self.rows.iter().map(|k| k.to_string()).collect();
        let kw = keys.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = header
            .iter()
            .enumerate()
            .map(|(c, h)| {
                self.entries
                    .iter()
                    .map(|r| r[c].to_string().len())
                    .max()
                    .unwrap_or(0)
                    .max(h.len())
            })
            .collect();
        write!(f, "{:kw$}", "")?;
        for (h, w) in header.iter().zip(&widths) {
            write!(f, " {h:>w$}")?;
        }
        writeln!(f)?;
        for (key, row) in keys.iter().zip(&self.entries) {
            write!(f, "{key:kw$}")?;
            for (x, w) in row.iter().zip(&widths) {
                write!(f, " {x:>w$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Integer matrix product with overflow checks.
pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>], inner: usize) -> Result<Vec<Vec<i64>>> {
    let cols = b.first().map_or(0, Vec::len);
    debug_assert!(a.iter().all(|r| r.len() == inner) && b.len() == inner);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    (0..inner).try_fold(0i64, |acc, k| {
                        row[k]
                            .checked_mul(b[k][c])
                            .and_then(|t| acc.checked_add(t))
                            .ok_or(Error::Overflow("matrix product"))
                    })
                })
                .collect()
        })
        .collect()
}

/// Rank over ℚ by Bareiss fraction-free elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for k in r + 1..m.len() {
            for cc in c + 1..ncols {
                let v = (&m[r][c] * &m[k][cc] - &m[k][c] * &m[r][cc]) / &prev;
                m[k][cc] = v;
            }
            m[k][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// A ℤ-basis of a saturated kernel lattice `{u ∈ ℤ^N : 𝒜u = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub dim: usize,
    pub rows: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Kernel lattice of an `m × ncols` integer matrix.
///
/// The transpose is reduced to echelon form by unimodular row operations
/// carried out on `[𝒜ᵀ | I]`; rows whose left part vanishes span the full
/// integer kernel. The basis is then LLL reduced.
pub fn integer_kernel(entries: &[Vec<i64>], ncols: usize) -> Result<LatticeBasis> {
    let m = entries.len();
    let mut work: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..ncols)
        .map(|k| {
            let left = entries.iter().map(|r| BigInt::from(r[k])).collect();
            let mut right = vec![BigInt::zero(); ncols];
            right[k] = BigInt::one();
            (left, right)
        })
        .collect();

    let mut pivot = 0;
    for c in 0..m {
        loop {
            let best = (pivot..ncols)
                .filter(|&k| !work[k].0[c].is_zero())
                .min_by(|&x, &y| work[x].0[c].abs().cmp(&work[y].0[c].abs()));
            let Some(best) = best else { break };
            work.swap(pivot, best);
            let mut done = true;
            for k in pivot + 1..ncols {
                if work[k].0[c].is_zero() {
                    continue;
                }
                let q = work[k].0[c].div_floor(&work[pivot].0[c]);
                let (head, tail) = work.split_at_mut(k);
                let p = &head[pivot];
                let row = &mut tail[0];
                for (x, y) in row.0.iter_mut().zip(&p.0) {
                    *x -= &q * y;
                }
                for (x, y) in row.1.iter_mut().zip(&p.1) {
                    *x -= &q * y;
                }
                if !row.0[c].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
        if pivot == ncols {
            break;
        }
    }

    let basis: Vec<Vec<BigInt>> = work.into_iter().skip(pivot).map(|(_, r)| r).collect();
    let reduced = lll(basis);
    let rows = reduced
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.to_i64().ok_or(Error::Overflow("kernel basis")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeBasis { dim: ncols, rows })
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn gram_schmidt(basis: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>) {
    let k = basis.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    let mut mu = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        let bi: Vec<BigRational> = basis[i]
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let mut v = bi.clone();
        for j in 0..i {
            let nj = dot(&star[j], &star[j]);
            mu[i][j] = dot(&bi, &star[j]) / nj;
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        star.push(v);
    }
    (star, mu)
}

/// Textbook LLL with δ = 3/4 on linearly independent integer rows.
fn lll(mut basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let k = basis.len();
    if k < 2 {
        return basis;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let (mut star, mut mu) = gram_schmidt(&basis);
    let mut i = 1;
    while i < k {
        for j in (0..i).rev() {
            if mu[i][j].abs() > half {
                let q = mu[i][j].round().to_integer();
                let (head, tail) = basis.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= &q * y;
                }
                let gs = gram_schmidt(&basis);
                star = gs.0;
                mu = gs.1;
            }
        }
        let lhs = dot(&star[i], &star[i]);
        let rhs = (&delta - &mu[i][i - 1] * &mu[i][i - 1]) * dot(&star[i - 1], &star[i - 1]);
        if lhs >= rhs {
            i += 1;
        } else {
            basis.swap(i, i - 1);
            let gs = gram_schmidt(&basis);
            star = gs.0;
            mu = gs.1;
            i = (i - 1).max(1);
        }
    }
    basis
}
