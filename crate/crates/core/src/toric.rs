//! Binomials in the partition variables `r_p`, ideals generated by them and
//! the computation of (generalised) cut ideals as toric ideals.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::groebner::{normal_form, reduced_groebner, RawBinomial, TermOrder};
use crate::matrix::{exponent_matrix, rank, ExponentMatrix};
use crate::partition::{Partition, MAX_PARTITION_VERTICES};

/// `r^plus - r^minus` over the variables `r_p`, `p ∈ Π_n`, indexed in the
/// partition order. An empty monomial is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    n: usize,
    plus: Vec<u32>,
    minus: Vec<u32>,
}

fn nvars(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::NoVertices);
    }
    if n > MAX_PARTITION_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    Ok(1 << (n - 1))
}

impl Binomial {
    pub fn new(n: usize, plus: Vec<u32>, minus: Vec<u32>) -> Result<Self> {
        let len = nvars(n)?;
        if plus.len() != len || minus.len() != len {
            return Err(Error::SizeMismatch {
                expected: len,
                found: plus.len().max(minus.len()),
            });
        }
        if plus == minus {
            return Err(Error::ZeroBinomial);
        }
        Ok(Self { n, plus, minus })
    }

    /// Builds from lists of `(partition, exponent)` factors; repeated
    /// partitions accumulate.
    pub fn from_terms(
        n: usize,
        plus: &[(Partition, u32)],
        minus: &[(Partition, u32)],
    ) -> Result<Self> {
        let len = nvars(n)?;
        let dense = |terms: &[(Partition, u32)]| -> Result<Vec<u32>> {
            let mut v = vec![0u32; len];
            for (p, e) in terms {
                if p.n() != n {
                    return Err(Error::SizeMismatch {
                        expected: n,
                        found: p.n(),
                    });
                }
                v[p.index()] += e;
            }
            Ok(v)
        };
        Self::new(n, dense(plus)?, dense(minus)?)
    }

    /// The lattice binomial `r^{u+} - r^{u-}`.
    pub fn from_lattice_vector(n: usize, u: &[i64]) -> Result<Self> {
        let pos = u.iter().map(|&x| x.max(0) as u32).collect();
        let neg = u.iter().map(|&x| (-x).max(0) as u32).collect();
        Self::new(n, pos, neg)
    }

    pub(crate) fn from_raw(n: usize, raw: RawBinomial) -> Self {
        Self {
            n,
            plus: raw.lead,
            minus: raw.tail,
        }
    }

    pub(crate) fn to_raw(&self) -> RawBinomial {
        RawBinomial {
            lead: self.plus.clone(),
            tail: self.minus.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn plus(&self) -> &[u32] {
        &self.plus
    }

    pub fn minus(&self) -> &[u32] {
        &self.minus
    }

    pub fn exponent(&self, p: &Partition) -> (u32, u32) {
        (self.plus[p.index()], self.minus[p.index()])
    }

    /// `plus - minus` as an integer vector.
    pub fn difference(&self) -> Vec<i64> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.plus.iter().sum::<u32>().max(self.minus.iter().sum())
    }

    /// Partitions whose variable occurs in either monomial.
    pub fn support(&self) -> Vec<Partition> {
        (0..self.plus.len())
            .filter(|&k| self.plus[k] > 0 || self.minus[k] > 0)
            .map(|k| Partition::from_index(self.n, k))
            .collect()
    }

    /// Same binomial up to sign.
    pub fn same_up_to_sign(&self, other: &Binomial) -> bool {
        (self.plus == other.plus && self.minus == other.minus)
            || (self.plus == other.minus && self.minus == other.plus)
    }

    /// Orients so that `plus` is the larger term for `order`.
    pub fn oriented(&self, order: &TermOrder) -> Binomial {
        if order.cmp(&self.plus, &self.minus).is_lt() {
            Binomial {
                n: self.n,
                plus: self.minus.clone(),
                minus: self.plus.clone(),
            }
        } else {
            self.clone()
        }
    }
}

pub(crate) fn write_monomial(f: &mut impl fmt::Write, n: usize, m: &[u32]) -> fmt::Result {
    let mut first = true;
    for (k, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        write!(f, "r{{{}}}", Partition::from_index(n, k))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        f.write_char('1')?;
    }
    Ok(())
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self.n, &self.plus)?;
        f.write_str(" - ")?;
        write_monomial(f, self.n, &self.minus)
    }
}

/// A binomial ideal in `K[r_p : p ∈ Π_n]`. The reduced Gröbner basis for
/// the ideal's order is computed on first use and cached.
#[derive(Debug, Clone)]
pub struct Ideal {
    n: usize,
    gens: Vec<Binomial>,
    order: TermOrder,
    reduced_gb: OnceLock<Vec<Binomial>>,
}

impl Ideal {
    pub fn new(n: usize, gens: Vec<Binomial>, order: TermOrder) -> Result<Self> {
        nvars(n)?;
        for g in &gens {
            if g.n != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: g.n,
                });
            }
        }
        Ok(Self {
            n,
            gens,
            order,
            reduced_gb: OnceLock::new(),
        })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, Vec::new(), TermOrder::DegRevLex)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Binomial] {
        &self.gens
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        1 << (self.n - 1)
    }

    /// The reduced Gröbner basis for the ideal's own order, leading term in
    /// `plus`, sorted by ascending leading term.
    pub fn reduced_gb(&self) -> &[Binomial] {
        self.reduced_gb
            .get_or_init(|| self.groebner_in(&self.order))
    }

    pub fn groebner_in(&self, order: &TermOrder) -> Vec<Binomial> {
        let raw: Vec<RawBinomial> = self.gens.iter().map(Binomial::to_raw).collect();
        reduced_groebner(&raw, order)
            .into_iter()
            .map(|b| Binomial::from_raw(self.n, b))
            .collect()
    }

    /// The same ideal presented by its reduced Gröbner basis in `order`.
    pub fn reduced_groebner(&self, order: &TermOrder) -> Ideal {
        let gb = self.groebner_in(order);
        let out = Ideal {
            n: self.n,
            gens: gb.clone(),
            order: order.clone(),
            reduced_gb: OnceLock::new(),
        };
        let _ = out.reduced_gb.set(gb);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty() || self.reduced_gb().is_empty()
    }

    /// Normal form of a monomial modulo the ideal.
    pub fn normal_form(&self, m: &[u32]) -> Vec<u32> {
        let raw: Vec<RawBinomial> = self.reduced_gb().iter().map(Binomial::to_raw).collect();
        normal_form(m, &raw)
    }

    /// Ideal membership of `r^a - r^b` by reduction to zero.
    pub fn contains_difference(&self, a: &[u32], b: &[u32]) -> bool {
        let raw: Vec<RawBinomial> = self.reduced_gb().iter().map(Binomial::to_raw).collect();
        normal_form(a, &raw) == normal_form(b, &raw)
    }

    pub fn contains(&self, b: &Binomial) -> bool {
        b.n == self.n && self.contains_difference(&b.plus, &b.minus)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Binomial::degree).max().unwrap_or(0)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return writeln!(f, "(0)");
        }
        for g in &self.gens {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Equality of ideals: identical reduced degrevlex Gröbner bases.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::SizeMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    let order = TermOrder::DegRevLex;
    let ga = if a.order == order {
        a.reduced_gb().to_vec()
    } else {
        a.groebner_in(&order)
    };
    let gb = if b.order == order {
        b.reduced_gb().to_vec()
    } else {
        b.groebner_in(&order)
    };
    Ok(ga == gb)
}

/// `I ∩ K[r_p : p ∉ kill]`, presented by the part of an elimination-order
/// Gröbner basis free of the killed variables.
pub fn eliminate(ideal: &Ideal, kill: &[Partition]) -> Result<Ideal> {
    for p in kill {
        if p.n() != ideal.n {
            return Err(Error::SizeMismatch {
                expected: ideal.n,
                found: p.n(),
            });
        }
    }
    if kill.is_empty() {
        return Ok(ideal.clone());
    }
    let block: Vec<usize> = kill.iter().map(Partition::index).collect();
    let order = TermOrder::Elimination(block.clone());
    let kept = ideal
        .groebner_in(&order)
        .into_iter()
        .filter(|b| block.iter().all(|&k| b.plus[k] == 0 && b.minus[k] == 0))
        .collect();
    Ideal::new(ideal.n, kept, TermOrder::DegRevLex)
}

/// `𝒜·(plus - minus) = 0`: the binomial lies in the cut ideal.
pub fn membership(graph: &Graph, b: &Binomial) -> Result<bool> {
    let m = exponent_matrix(graph)?;
    membership_in(&m, b)
}

pub fn membership_in(matrix: &ExponentMatrix, b: &Binomial) -> Result<bool> {
    if b.plus.len() != matrix.ncols() {
        return Err(Error::SizeMismatch {
            expected: matrix.ncols(),
            found: b.plus.len(),
        });
    }
    Ok(matrix.apply(&b.difference())?.iter().all(|&x| x == 0))
}

/// How a lattice ideal is saturated by one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Saturation {
    /// Degrevlex with the variable last, then divide it out. Valid only when
    /// the lattice is homogeneous for the standard grading.
    ReverseLexDivision,
    /// `(I + (t·x - 1)) ∩ K[x]` by elimination of a fresh variable `t`.
    Elimination,
}

/// Lattice binomials of a basis, one per row.
pub fn lattice_binomials(n: usize, rows: &[Vec<i64>]) -> Result<Vec<Binomial>> {
    rows.iter()
        .map(|u| Binomial::from_lattice_vector(n, u))
        .collect()
}

fn saturate_by_division(gens: Vec<RawBinomial>, var: usize) -> Vec<RawBinomial> {
    let last = gens.first().map_or(0, |g| g.lead.len()) - 1;
    let swap = |mut v: Vec<u32>| {
        v.swap(var, last);
        v
    };
    let swapped: Vec<RawBinomial> = gens
        .into_iter()
        .map(|g| RawBinomial {
            lead: swap(g.lead),
            tail: swap(g.tail),
        })
        .collect();
    reduced_groebner(&swapped, &TermOrder::DegRevLex)
        .into_iter()
        .map(|mut g| {
            let common = g.lead[last].min(g.tail[last]);
            g.lead[last] -= common;
            g.tail[last] -= common;
            RawBinomial {
                lead: swap(g.lead),
                tail: swap(g.tail),
            }
        })
        .collect()
}

fn saturate_by_elimination(gens: Vec<RawBinomial>, var: usize) -> Vec<RawBinomial> {
    let len = gens.first().map_or(0, |g| g.lead.len());
    let mut extended: Vec<RawBinomial> = gens
        .into_iter()
        .map(|g| {
            let mut lead = g.lead;
            let mut tail = g.tail;
            lead.push(0);
            tail.push(0);
            RawBinomial { lead, tail }
        })
        .collect();
    let mut tx = vec![0u32; len + 1];
    tx[var] = 1;
    tx[len] = 1;
    extended.push(RawBinomial {
        lead: tx,
        tail: vec![0; len + 1],
    });
    reduced_groebner(&extended, &TermOrder::Elimination(vec![len]))
        .into_iter()
        .filter(|g| g.lead[len] == 0 && g.tail[len] == 0)
        .map(|mut g| {
            g.lead.pop();
            g.tail.pop();
            g
        })
        .collect()
}

/// True when the all-ones grading lies in the row space of `𝒜`, i.e. every
/// kernel vector has coordinate sum zero.
pub fn is_standard_graded(matrix: &ExponentMatrix) -> bool {
    if matrix.nrows() == 0 {
        return false;
    }
    let mut with_ones = matrix.entries.clone();
    with_ones.push(vec![1; matrix.ncols()]);
    rank(&with_ones) == matrix.rank()
}

/// The cut ideal `ker φ` of a labelled graph with multiplicities.
///
/// The binomials of a basis of the (saturated) kernel lattice of `𝒜`
/// generate an ideal whose saturation by the product of all variables is
/// the toric ideal; the saturation is done one variable at a time. The
/// result is presented by its reduced degrevlex Gröbner basis.
pub fn toric_ideal(graph: &Graph) -> Result<Ideal> {
    let matrix = exponent_matrix(graph)?;
    let method = if is_standard_graded(&matrix) {
        Saturation::ReverseLexDivision
    } else {
        Saturation::Elimination
    };
    toric_ideal_from_matrix(graph.n(), &matrix, method)
}

pub fn toric_ideal_from_matrix(
    n: usize,
    matrix: &ExponentMatrix,
    method: Saturation,
) -> Result<Ideal> {
    let basis = matrix.integer_kernel()?;
    let mut gens: Vec<RawBinomial> = lattice_binomials(n, &basis.rows)?
        .iter()
        .map(Binomial::to_raw)
        .collect();
    if !gens.is_empty() {
        for var in 0..matrix.ncols() {
            gens = match method {
                Saturation::ReverseLexDivision => saturate_by_division(gens, var),
                Saturation::Elimination => saturate_by_elimination(gens, var),
            };
        }
    }
    let order = TermOrder::DegRevLex;
    let gb: Vec<Binomial> = reduced_groebner(&gens, &order)
        .into_iter()
        .map(|b| Binomial::from_raw(n, b))
        .collect();
    let ideal = Ideal::new(n, gb.clone(), order)?;
    let _ = ideal.reduced_gb.set(gb);
    Ok(ideal)
}
