//! Buchberger's algorithm specialised to pure-difference binomials.
//!
//! Every element is `x^lead - x^tail` with unit coefficients. S-polynomials
//! and reductions of such binomials stay pure differences, and the normal
//! form of a binomial is just the difference of the normal forms of its two
//! monomials, so the engine never touches a coefficient. Exponents are dense
//! vectors over a fixed variable sequence.

use std::cmp::Ordering;

/// A monomial order on exponent vectors; variables earlier in the sequence
/// are larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermOrder {
    DegRevLex,
    Lex,
    /// The listed variables are compared first (graded reverse lexicographic
    /// on that block), ties are broken by degrevlex on the remaining
    /// variables. Any monomial involving the block beats every monomial
    /// free of it.
    Elimination(Vec<usize>),
}

impl TermOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::DegRevLex => degrevlex(a, b, |_| true),
            TermOrder::Lex => a.cmp(b),
            TermOrder::Elimination(block) => {
                let inside = |i: usize| block.contains(&i);
                degrevlex(a, b, inside).then_with(|| degrevlex(a, b, |i| !inside(i)))
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TermOrder::DegRevLex => "degrevlex",
            TermOrder::Lex => "lex",
            TermOrder::Elimination(_) => "elimination",
        }
    }
}

fn degrevlex(a: &[u32], b: &[u32], keep: impl Fn(usize) -> bool) -> Ordering {
    let deg = |m: &[u32]| -> u64 {
        m.iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, &e)| e as u64)
            .sum()
    };
    deg(a).cmp(&deg(b)).then_with(|| {
        for i in (0..a.len()).rev() {
            if keep(i) && a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

/// `x^lead - x^tail` with `lead` greater than `tail` in the active order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RawBinomial {
    pub lead: Vec<u32>,
    pub tail: Vec<u32>,
}

impl RawBinomial {
    /// Orients `a - b` for `order`; `None` when `a == b`.
    pub fn oriented(a: Vec<u32>, b: Vec<u32>, order: &TermOrder) -> Option<Self> {
        match order.cmp(&a, &b) {
            Ordering::Greater => Some(Self { lead: a, tail: b }),
            Ordering::Less => Some(Self { lead: b, tail: a }),
            Ordering::Equal => None,
        }
    }
}

fn support_mask(m: &[u32]) -> u64 {
    m.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0, |acc, (i, _)| acc | 1 << (i % 64))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

/// `m / d * t` for `d | m`.
fn rewrite(m: &[u32], d: &[u32], t: &[u32]) -> Vec<u32> {
    m.iter()
        .zip(d)
        .zip(t)
        .map(|((&x, &y), &z)| x - y + z)
        .collect()
}

struct Element {
    bin: RawBinomial,
    mask: u64,
}

/// Leading terms indexed for repeated divisibility queries.
struct Reducer<'a> {
    store: &'a [Element],
    active: &'a [usize],
}

impl Reducer<'_> {
    fn normal_form(&self, mut m: Vec<u32>) -> Vec<u32> {
        'outer: loop {
            let mask = support_mask(&m);
            for &k in self.active {
                let el = &self.store[k];
                if el.mask & !mask == 0 && divides(&el.bin.lead, &m) {
                    m = rewrite(&m, &el.bin.lead, &el.bin.tail);
                    continue 'outer;
                }
            }
            return m;
        }
    }
}

/// Normal form of a monomial modulo binomials (a Gröbner basis for a
/// canonical answer).
pub fn normal_form(m: &[u32], basis: &[RawBinomial]) -> Vec<u32> {
    let store: Vec<Element> = basis
        .iter()
        .map(|b| Element {
            mask: support_mask(&b.lead),
            bin: b.clone(),
        })
        .collect();
    let active: Vec<usize> = (0..store.len()).collect();
    Reducer {
        store: &store,
        active: &active,
    }
    .normal_form(m.to_vec())
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u32>,
}

struct Engine<'o> {
    order: &'o TermOrder,
    store: Vec<Element>,
    active: Vec<usize>,
    /// Sorted so that the next pair to process is last.
    pairs: Vec<Pair>,
}

impl<'o> Engine<'o> {
    fn new(order: &'o TermOrder) -> Self {
        Self {
            order,
            store: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn reduce(&self, a: Vec<u32>, b: Vec<u32>) -> Option<RawBinomial> {
        let r = Reducer {
            store: &self.store,
            active: &self.active,
        };
        let a = r.normal_form(a);
        let b = r.normal_form(b);
        RawBinomial::oriented(a, b, self.order)
    }

    fn pair_cmp(&self, x: &Pair, y: &Pair) -> Ordering {
        // Descending: smallest lcm ends up last.
        self.order
            .cmp(&y.lcm, &x.lcm)
            .then_with(|| (y.i, y.j).cmp(&(x.i, x.j)))
    }

    /// Gebauer–Möller installation of a new basis element.
    fn insert(&mut self, bin: RawBinomial) {
        let h = self.store.len();
        self.store.push(Element {
            mask: support_mask(&bin.lead),
            bin,
        });
        let hl = self.store[h].bin.lead.clone();

        let mut candidates: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| Pair {
                i: g,
                j: h,
                lcm: lcm(&self.store[g].bin.lead, &hl),
            })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let disjoint = coprime(&self.store[p.i].bin.lead, &hl);
            let dominated = candidates
                .iter()
                .chain(kept.iter())
                .any(|q| divides(&q.lcm, &p.lcm));
            if disjoint || !dominated {
                kept.push(p);
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|p| !coprime(&self.store[p.i].bin.lead, &hl))
            .collect();

        let store = &self.store;
        self.pairs.retain(|p| {
            !divides(&hl, &p.lcm)
                || lcm(&store[p.i].bin.lead, &hl) == p.lcm
                || lcm(&store[p.j].bin.lead, &hl) == p.lcm
        });
        self.pairs.extend(fresh);
        let mut pairs = std::mem::take(&mut self.pairs);
        pairs.sort_by(|x, y| self.pair_cmp(x, y));
        self.pairs = pairs;

        self.active.retain(|&g| !divides(&hl, &store[g].bin.lead));
        self.active.push(h);
    }

    fn run(&mut self) {
        while let Some(p) = self.pairs.pop() {
            let a = &self.store[p.i].bin;
            let b = &self.store[p.j].bin;
            let left = rewrite(&p.lcm, &a.lead, &a.tail);
            let right = rewrite(&p.lcm, &b.lead, &b.tail);
            if let Some(s) = self.reduce(left, right) {
                self.insert(s);
            }
        }
    }

    fn reduced_basis(&self) -> Vec<RawBinomial> {
        let mut minimal: Vec<RawBinomial> = Vec::new();
        let mut leads: Vec<&RawBinomial> =
            self.active.iter().map(|&k| &self.store[k].bin).collect();
        leads.sort_by(|x, y| self.order.cmp(&x.lead, &y.lead));
        for b in leads {
            if !minimal.iter().any(|m| divides(&m.lead, &b.lead)) {
                minimal.push(b.clone());
            }
        }
        let store: Vec<Element> = minimal
            .iter()
            .map(|b| Element {
                mask: support_mask(&b.lead),
                bin: b.clone(),
            })
            .collect();
        let active: Vec<usize> = (0..store.len()).collect();
        let r = Reducer {
            store: &store,
            active: &active,
        };
        minimal
            .iter()
            .map(|b| RawBinomial {
                lead: b.lead.clone(),
                tail: r.normal_form(b.tail.clone()),
            })
            .collect()
    }
}

/// The reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// ascending leading term.
pub fn reduced_groebner(gens: &[RawBinomial], order: &TermOrder) -> Vec<RawBinomial> {
    let mut input: Vec<RawBinomial> = gens
        .iter()
        .filter_map(|g| RawBinomial::oriented(g.lead.clone(), g.tail.clone(), order))
        .collect();
    input.sort_by(|x, y| {
        order
            .cmp(&x.lead, &y.lead)
            .then_with(|| order.cmp(&x.tail, &y.tail))
    });
    input.dedup();
    let mut engine = Engine::new(order);
    for g in input {
        if let Some(h) = engine.reduce(g.lead, g.tail) {
            engine.insert(h);
        }
        engine.run();
    }
    engine.run();
    engine.reduced_basis()
}

/// Buchberger's criterion, checked pair by pair without any shortcut.
pub fn is_groebner(basis: &[RawBinomial]) -> bool {
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let l = lcm(&a.lead, &b.lead);
            let x = normal_form(&rewrite(&l, &a.lead, &a.tail), basis);
            let y = normal_form(&rewrite(&l, &b.lead, &b.tail), basis);
            if x != y {
                return false;
            }
        }
    }
    true
}
