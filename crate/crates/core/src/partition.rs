//! Unordered bipartitions `A|B` of `{1,…,n}`.
//!
//! A partition is stored as the bitmask of the side containing vertex 1
//! (vertex `v` is bit `v - 1`), so `A|B` and `B|A` share one encoding. The
//! fixed order on partitions is ascending bitmask; since bit 0 is always set
//! the position of a partition in that order is simply `mask >> 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// Largest ground set for which the partitions may be enumerated.
pub const MAX_PARTITION_VERTICES: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    mask: u64,
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Partition {
    /// Builds the partition with `side` on one block and the rest of `[n]`
    /// on the other.
    pub fn new(n: usize, side: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        if n > 63 {
            return Err(Error::TooManyVertices(n));
        }
        let mut mask = 0u64;
        for v in side {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            mask |= 1 << (v - 1);
        }
        Ok(Self::from_mask(n, mask))
    }

    /// Canonicalises an arbitrary side mask over `[n]`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let full = full_mask(n);
        let mask = mask & full;
        let mask = if mask & 1 == 1 { mask } else { full & !mask };
        Self { n, mask }
    }

    /// The partition at position `index` of the fixed order on `Π_n`.
    pub fn from_index(n: usize, index: usize) -> Self {
        debug_assert!(index < 1usize << (n - 1));
        Self {
            n,
            mask: ((index as u64) << 1) | 1,
        }
    }

    /// The single-block partition `[n]|·`.
    pub fn whole(n: usize) -> Self {
        Self {
            n,
            mask: full_mask(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Bitmask of the side containing vertex 1.
    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn index(&self) -> usize {
        (self.mask >> 1) as usize
    }

    /// True when `v` lies on the same side as vertex 1.
    pub fn with_first(&self, v: usize) -> bool {
        self.mask >> (v - 1) & 1 == 1
    }

    pub fn same_side(&self, u: usize, v: usize) -> bool {
        self.with_first(u) == self.with_first(v)
    }

    pub fn separates(&self, u: usize, v: usize) -> bool {
        !self.same_side(u, v)
    }

    /// The vertices of the side containing 1, ascending.
    pub fn first_side(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.with_first(v)).collect()
    }

    pub fn second_side(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| !self.with_first(v)).collect()
    }

    /// Removes vertex `j` and renumbers the vertices above it.
    pub fn project(&self, j: usize) -> Partition {
        let low = self.mask & full_mask(j - 1);
        let high = (self.mask >> j) << (j - 1);
        Partition::from_mask(self.n - 1, low | high)
    }

    /// Inserts a fresh vertex at position `j` (shifting `j..` up by one),
    /// placed with or against vertex `anchor`. `anchor` is numbered in the
    /// lifted ground set.
    fn insert(&self, j: usize, anchor: usize, together: bool) -> Partition {
        let low = self.mask & full_mask(j - 1);
        let high = (self.mask >> (j - 1)) << j;
        let shifted = low | high;
        let n = self.n + 1;
        let anchor_bit = shifted >> (anchor - 1) & 1 == 1;
        let bit = if together { anchor_bit } else { !anchor_bit };
        let mask = if bit {
            shifted | (1 << (j - 1))
        } else {
            shifted
        };
        Partition::from_mask(n, mask)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.first_side();
        let b = self.second_side();
        let (first, second) = if b.is_empty() || a.len() <= b.len() {
            (a, b)
        } else {
            (b, a)
        };
        let sep = if self.n >= 10 { "," } else { "" };
        let render = |side: &[usize]| -> String {
            if side.is_empty() {
                ".".to_string()
            } else {
                side.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(sep)
            }
        };
        write!(f, "{}|{}", render(&first), render(&second))
    }
}

fn parse_side(s: &str, n: usize, full: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "." || s == "·" || s == "\\cdot" {
        return Ok(Vec::new());
    }
    let tokens: Vec<&str> = if s.contains(',') || n >= 10 {
        s.split(',').map(str::trim).collect()
    } else {
        s.char_indices()
            .map(|(i, c)| &s[i..i + c.len_utf8()])
            .collect()
    };
    tokens
        .into_iter()
        .map(|t| {
            let v: usize = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex {t:?} in partition {full:?}")))?;
            if v == 0 || v > n {
                return Err(Error::Parse(format!(
                    "vertex {v} out of range 1..={n} in partition {full:?}"
                )));
            }
            Ok(v)
        })
        .collect()
}

/// Parses `A|B` over `[n]`. Vertices are comma separated or, for `n < 10`,
/// plain concatenated digits; the empty side may be written `.`, `·`,
/// `\cdot` or nothing.
pub fn parse_partition(s: &str, n: usize) -> Result<Partition> {
    if n == 0 {
        return Err(Error::NoVertices);
    }
    if n > 63 {
        return Err(Error::TooManyVertices(n));
    }
    let mut halves = s.split('|');
    let (a, b) = match (halves.next(), halves.next(), halves.next()) {
        (Some(a), Some(b), None) => (a, b),
        _ => {
            return Err(Error::Parse(format!(
                "partition {s:?} needs exactly one '|'"
            )))
        }
    };
    let mut seen = 0u64;
    let mut first = 0u64;
    for (k, side) in [a, b].into_iter().enumerate() {
        for v in parse_side(side, n, s)? {
            let bit = 1u64 << (v - 1);
            if seen & bit != 0 {
                return Err(Error::Parse(format!(
                    "vertex {v} repeated in partition {s:?}"
                )));
            }
            seen |= bit;
            if k == 0 {
                first |= bit;
            }
        }
    }
    if seen != full_mask(n) {
        return Err(Error::Parse(format!(
            "partition {s:?} does not cover 1..={n}"
        )));
    }
    Ok(Partition::from_mask(n, first))
}

/// All of `Π_n` in the fixed order: `2^(n-1)` partitions.
pub fn all_partitions(n: usize) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::NoVertices);
    }
    if n > MAX_PARTITION_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    Ok((0..1usize << (n - 1))
        .map(|i| Partition::from_index(n, i))
        .collect())
}

/// Edges of `graph` whose endpoints lie on opposite sides of `p`.
pub fn cut<'g>(graph: &'g Graph, p: &Partition) -> Result<Vec<&'g Edge>> {
    if p.n() != graph.n() {
        return Err(Error::SizeMismatch {
            expected: graph.n(),
            found: p.n(),
        });
    }
    Ok(graph.edges().filter(|e| p.separates(e.u, e.v)).collect())
}

/// A partition survives the collapse of `i` and `j` iff both vertices lie on
/// the same side.
pub fn is_feasible(p: &Partition, i: usize, j: usize) -> bool {
    p.same_side(i, j)
}

/// Surviving vertex `i` (original numbering) after removing `j`.
pub fn collapsed_index(i: usize, j: usize) -> usize {
    if i > j {
        i - 1
    } else {
        i
    }
}

/// The feasible lift `p_f` of a partition of `[n-1]` for the collapse of
/// `i` and `j` in `[n]`: `j` reinserted on the side of `i`. Both vertices
/// are numbered in `[n]`.
pub fn lift_feasible(p: &Partition, i: usize, j: usize) -> Partition {
    p.insert(j, i, true)
}

/// The non-feasible lift `p_nf`: `j` reinserted opposite to `i`.
pub fn lift_nonfeasible(p: &Partition, i: usize, j: usize) -> Partition {
    p.insert(j, i, false)
}

/// The partition `a×b` (or `a×b*` when `star`) of the disjoint union of an
/// `[n]` and an `[m]` ground set, the second shifted to `n+1..=n+m`.
pub fn product_partition(a: &Partition, b: &Partition, star: bool) -> Partition {
    let n = a.n();
    let m = b.n();
    let b_side = if star {
        full_mask(m) & !b.mask()
    } else {
        b.mask()
    };
    Partition::from_mask(n + m, a.mask() | (b_side << n))
}

/// Splits a partition of `[n+m]` into `(a, b, star)` with
/// `product_partition(a, b, star) == p`.
pub fn split_product(p: &Partition, n: usize) -> (Partition, Partition, bool) {
    let m = p.n() - n;
    let a = Partition::from_mask(n, p.mask() & full_mask(n));
    let raw_b = (p.mask() >> n) & full_mask(m);
    let b = Partition::from_mask(m, raw_b);
    (a, b, raw_b != b.mask())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Partition {
        parse_partition(s, n).unwrap()
    }

    #[test]
    fn enumerates_r4_variables() {
        let ps = all_partitions(4).unwrap();
        assert_eq!(ps.len(), 8);
        let mut shown: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
        shown.sort();
        let mut expected = vec![
            "1|234", "2|134", "3|124", "4|123", "12|34", "13|24", "14|23", "1234|.",
        ];
        expected.sort();
        assert_eq!(shown, expected);
        for (k, q) in ps.iter().enumerate() {
            assert_eq!(q.index(), k);
        }
        assert_eq!(all_partitions(1).unwrap(), vec![Partition::whole(1)]);
        assert_eq!(all_partitions(5).unwrap().len(), 16);
        assert_eq!(all_partitions(0), Err(Error::NoVertices));
    }

    #[test]
    fn display_conventions() {
        assert_eq!(Partition::whole(4).to_string(), "1234|.");
        assert_eq!(Partition::new(4, [1, 3]).unwrap().to_string(), "13|24");
        assert_eq!(Partition::new(4, [2, 4]).unwrap().to_string(), "13|24");
        assert_eq!(Partition::new(3, [1, 3]).unwrap().to_string(), "2|13");
        let big = Partition::new(11, [11]).unwrap();
        assert_eq!(big.to_string(), "11|1,2,3,4,5,6,7,8,9,10");
        assert_eq!(parse_partition("11|1,2,3,4,5,6,7,8,9,10", 11).unwrap(), big);
    }

    #[test]
    fn parse_variants_and_errors() {
        assert_eq!(p("1234|\\cdot", 4), Partition::whole(4));
        assert_eq!(p("1234|·", 4), Partition::whole(4));
        assert_eq!(p("1234|", 4), Partition::whole(4));
        assert_eq!(p("24|13", 4), p("13|24", 4));
        assert_eq!(p("1,3|2,4", 4), p("13|24", 4));
        assert!(parse_partition("13-24", 4).is_err());
        assert!(parse_partition("13|2|4", 4).is_err());
        assert!(parse_partition("113|24", 4).is_err());
        assert!(parse_partition("15|234", 4).is_err());
        assert!(parse_partition("1|23", 4).is_err());
        assert!(parse_partition("1x|234", 4).is_err());
    }

    #[test]
    fn round_trip_small_n() {
        for n in 1..=6 {
            for q in all_partitions(n).unwrap() {
                assert_eq!(parse_partition(&q.to_string(), n).unwrap(), q);
            }
        }
    }

    #[test]
    fn feasibility() {
        assert!(is_feasible(&p("2|13", 3), 1, 3));
        assert!(!is_feasible(&p("1|23", 3), 1, 3));
        for n in 2..=5 {
            for i in 1..=n {
                for j in 1..=n {
                    if i != j {
                        assert!(is_feasible(&Partition::whole(n), i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn lifts_for_p3_collapse() {
        let q = Partition::new(2, [1]).unwrap();
        assert_eq!(lift_feasible(&q, 1, 3), p("13|2", 3));
        assert_eq!(lift_nonfeasible(&q, 1, 3), p("1|23", 3));
        assert_eq!(
            lift_feasible(&Partition::whole(2), 1, 3),
            Partition::whole(3)
        );
    }

    #[test]
    fn lifts_partition_pi_n() {
        for n in 2..=6 {
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    let mut seen = vec![0u8; 1 << (n - 1)];
                    for q in all_partitions(n - 1).unwrap() {
                        let f = lift_feasible(&q, i, j);
                        let nf = lift_nonfeasible(&q, i, j);
                        assert!(is_feasible(&f, i, j));
                        assert!(!is_feasible(&nf, i, j));
                        assert_eq!(f.project(j), q);
                        assert_eq!(nf.project(j), q);
                        seen[f.index()] += 1;
                        seen[nf.index()] += 1;
                    }
                    assert!(seen.iter().all(|&c| c == 1));
                }
            }
        }
    }

    #[test]
    fn product_partitions_of_two_k2() {
        let a = Partition::new(2, [1]).unwrap();
        let b = Partition::new(2, [1]).unwrap();
        assert_eq!(product_partition(&a, &b, false), p("13|24", 4));
        assert_eq!(product_partition(&a, &b, true), p("14|23", 4));
    }

    #[test]
    fn products_biject_onto_union_partitions() {
        for n in 1..=3 {
            for m in 1..=3 {
                let mut seen = vec![0u8; 1 << (n + m - 1)];
                for a in all_partitions(n).unwrap() {
                    for b in all_partitions(m).unwrap() {
                        let x = product_partition(&a, &b, false);
                        let y = product_partition(&a, &b, true);
                        assert_ne!(x, y);
                        assert_eq!(split_product(&x, n), (a, b, false));
                        assert_eq!(split_product(&y, n), (a, b, true));
                        seen[x.index()] += 1;
                        seen[y.index()] += 1;
                    }
                }
                assert!(seen.iter().all(|&c| c == 1));
            }
        }
        let a = Partition::new(3, [2]).unwrap();
        let w = Partition::whole(2);
        for star in [false, true] {
            let x = product_partition(&a, &w, star);
            assert_eq!(split_product(&x, 3).0, a);
        }
    }
}
