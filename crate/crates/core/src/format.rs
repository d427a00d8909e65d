//! Graph JSON, ideal JSON/text and binomial text.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical_label, Edge, Graph};
use crate::groebner::TermOrder;
use crate::partition::{parse_partition, Partition};
use crate::toric::{Binomial, Ideal};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    u: usize,
    v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default = "unit_mult")]
    mult: i64,
}

fn unit_mult() -> i64 {
    1
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphRecord {
    vertices: usize,
    edges: Vec<EdgeRecord>,
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let rec: GraphRecord =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    let mut edges = Vec::with_capacity(rec.edges.len());
    let mut seen = BTreeMap::new();
    for (k, e) in rec.edges.iter().enumerate() {
        let name = format!("edge #{k} {{{},{}}}", e.u, e.v);
        let fail = |why: String| Error::Parse(format!("{name}: {why}"));
        if e.u == e.v {
            return Err(fail("loop".into()));
        }
        for x in [e.u, e.v] {
            if x == 0 || x > rec.vertices {
                return Err(fail(format!(
                    "vertex {x} out of range 1..={}",
                    rec.vertices
                )));
            }
        }
        if e.mult == 0 {
            return Err(fail("zero multiplicity".into()));
        }
        let key = (e.u.min(e.v), e.u.max(e.v));
        if let Some(first) = seen.insert(key, k) {
            return Err(fail(format!("duplicates edge #{first}")));
        }
        let label = e.label.clone().unwrap_or_else(|| canonical_label(e.u, e.v));
        edges.push(Edge::new(e.u, e.v, label, e.mult));
    }
    Graph::new(rec.vertices, edges)
}

/// Serialises with every field explicit.
pub fn graph_to_json(graph: &Graph) -> String {
    let rec = GraphRecord {
        vertices: graph.n(),
        edges: graph
            .edges()
            .map(|e| EdgeRecord {
                u: e.u,
                v: e.v,
                label: Some(e.label.clone()),
                mult: e.mult,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&rec).expect("graph record serialises")
}

/// Parses one binomial such as `r{1|23}*r{3|12} - r{2|13}*r{123|.}`.
/// Whitespace is ignored, `r_{…}` is accepted for `r{…}`, factors may carry
/// `^k` and either side may be the constant `1`.
pub fn parse_binomial(text: &str, n: usize) -> Result<Binomial> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut sides = compact.split('-');
    let (lhs, rhs) = match (sides.next(), sides.next(), sides.next()) {
        (Some(a), Some(b), None) => (a, b),
        _ => {
            return Err(Error::Parse(format!(
                "binomial {text:?} needs exactly one '-'"
            )))
        }
    };
    let plus = parse_monomial(lhs, n)?;
    let minus = parse_monomial(rhs, n)?;
    Binomial::from_terms(n, &plus, &minus)
}

fn parse_monomial(s: &str, n: usize) -> Result<Vec<(Partition, u32)>> {
    if s == "1" {
        return Ok(Vec::new());
    }
    if s.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    s.split('*').map(|f| parse_factor(f, n)).collect()
}

fn parse_factor(f: &str, n: usize) -> Result<(Partition, u32)> {
    let body = f
        .strip_prefix("r_{")
        .or_else(|| f.strip_prefix("r{"))
        .ok_or_else(|| Error::Parse(format!("bad factor {f:?}")))?;
    let close = body
        .find('}')
        .ok_or_else(|| Error::Parse(format!("unclosed factor {f:?}")))?;
    let p = parse_partition(&body[..close], n)?;
    let rest = &body[close + 1..];
    let exp = if rest.is_empty() {
        1
    } else {
        let e = rest
            .strip_prefix('^')
            .ok_or_else(|| Error::Parse(format!("unexpected {rest:?} after factor {f:?}")))?;
        e.parse()
            .map_err(|_| Error::Parse(format!("bad exponent {e:?} in {f:?}")))?
    };
    Ok((p, exp))
}

/// One binomial per line; `(0)` denotes the zero ideal.
pub fn ideal_to_text(ideal: &Ideal) -> String {
    ideal.to_string()
}

/// Parses the line format; blank lines, `(0)` and `#` comments are skipped.
pub fn parse_ideal_text(text: &str, n: usize) -> Result<Ideal> {
    let gens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty() && *l != "(0)")
        .map(|l| parse_binomial(l, n))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(n, gens, TermOrder::DegRevLex)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BinomialRecord {
    plus: serde_json::Map<String, serde_json::Value>,
    minus: serde_json::Map<String, serde_json::Value>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealRecord {
    n: usize,
    order: String,
    generators: Vec<BinomialRecord>,
}

fn monomial_map(n: usize, m: &[u32]) -> serde_json::Map<String, serde_json::Value> {
    m.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| (Partition::from_index(n, k).to_string(), e.into()))
        .collect()
}

pub fn ideal_to_json(ideal: &Ideal) -> String {
    let n = ideal.n();
    let rec = IdealRecord {
        n,
        order: ideal.order().name().to_string(),
        generators: ideal
            .generators()
            .iter()
            .map(|b| BinomialRecord {
                plus: monomial_map(n, b.plus()),
                minus: monomial_map(n, b.minus()),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&rec).expect("ideal record serialises")
}

fn parse_order(name: &str) -> Result<TermOrder> {
    match name {
        "degrevlex" => Ok(TermOrder::DegRevLex),
        "lex" => Ok(TermOrder::Lex),
        other => Err(Error::Parse(format!("unknown term order {other:?}"))),
    }
}

pub fn parse_ideal_json(text: &str) -> Result<Ideal> {
    let rec: IdealRecord =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("ideal JSON: {e}")))?;
    let n = rec.n;
    let order = parse_order(&rec.order)?;
    let terms = |m: &serde_json::Map<String, serde_json::Value>| -> Result<Vec<(Partition, u32)>> {
        m.iter()
            .map(|(k, v)| {
                let p = parse_partition(k, n)?;
                let e = v
                    .as_u64()
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| Error::Parse(format!("bad exponent {v} for {k:?}")))?;
                Ok((p, e))
            })
            .collect()
    };
    let gens = rec
        .generators
        .iter()
        .map(|g| Binomial::from_terms(n, &terms(&g.plus)?, &terms(&g.minus)?))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(n, gens, order)
}
