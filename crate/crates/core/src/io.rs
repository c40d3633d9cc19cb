//! JSON encodings of graphs and formal sums.
//!
//! Endpoints are written `v<k>` (internal) or `h<k>` (hair), 1-based. The
//! listed edge order and directions are the input orientation.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{HgcError, Result};
use crate::formal::{FormalSum, Q};
use crate::graph::{Decoration, End, Flavor, HairyGraph, Parameters};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HairJson {
    pub dec: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub m: u32,
    pub n: u32,
    pub flavor: String,
    pub internal: usize,
    pub hairs: Vec<HairJson>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub graph: GraphJson,
}

/// A formal sum. `m`, `n` and `flavor` repeat the term data so that the
/// empty sum keeps its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flavor: Option<String>,
    pub terms: Vec<TermJson>,
}

fn end_name(e: End) -> String {
    match e {
        End::Vertex(v) => format!("v{}", v + 1),
        End::Hair(h) => format!("h{}", h + 1),
    }
}

fn parse_end(s: &str) -> Result<End> {
    let bad = || HgcError::Parse(format!("bad endpoint {s:?}"));
    let (kind, num) = s.split_at(1.min(s.len()));
    let k: usize = num.parse().map_err(|_| bad())?;
    if k == 0 {
        return Err(bad());
    }
    match kind {
        "v" => Ok(End::Vertex(k - 1)),
        "h" => Ok(End::Hair(k - 1)),
        _ => Err(bad()),
    }
}

impl GraphJson {
    pub fn from_graph(g: &HairyGraph, p: Parameters, flavor: Flavor) -> Self {
        Self {
            m: p.m(),
            n: p.n(),
            flavor: flavor.name().to_string(),
            internal: g.internal,
            hairs: g.hairs.iter().map(|d| HairJson { dec: d.symbol().to_string() }).collect(),
            edges: g.edges.iter().map(|&(a, b)| [end_name(a), end_name(b)]).collect(),
        }
    }

    /// The graph as written, validated structurally but not canonicalized.
    pub fn to_graph(&self) -> Result<(HairyGraph, Parameters, Flavor)> {
        let p = Parameters::new(self.m, self.n)?;
        let flavor = Flavor::from_name(&self.flavor)?;
        let hairs = self.hairs.iter().map(|h| Decoration::from_symbol(&h.dec)).collect::<Result<Vec<_>>>()?;
        let edges = self
            .edges
            .iter()
            .map(|[a, b]| Ok((parse_end(a)?, parse_end(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let g = HairyGraph::new(self.internal, hairs, edges);
        g.check_flavor(flavor)?;
        Ok((g, p, flavor))
    }
}

pub fn coeff_string(c: &Q) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_coeff(s: &str) -> Result<Q> {
    let bad = || HgcError::Parse(format!("bad coefficient {s:?}"));
    let s = s.trim();
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

impl SumJson {
    pub fn from_sum(x: &FormalSum) -> Self {
        let (p, f) = (x.params(), x.flavor());
        Self {
            m: Some(p.m()),
            n: Some(p.n()),
            flavor: Some(f.name().to_string()),
            terms: x
                .terms()
                .map(|(g, c)| TermJson { coeff: coeff_string(c), graph: GraphJson::from_graph(g, p, f) })
                .collect(),
        }
    }

    /// Canonicalizes every term; parameters and flavor must agree.
    pub fn to_sum(&self) -> Result<FormalSum> {
        let header = match (self.m, self.n, &self.flavor) {
            (Some(m), Some(n), Some(f)) => Some((Parameters::new(m, n)?, Flavor::from_name(f)?)),
            _ => None,
        };
        let first = match self.terms.first() {
            Some(t) => {
                let (_, p, f) = t.graph.to_graph()?;
                (p, f)
            }
            None => header.ok_or_else(|| HgcError::Parse("empty sum without m, n and flavor".into()))?,
        };
        if header.is_some_and(|h| h != first) {
            return Err(HgcError::Mismatch("sum header disagrees with its terms".into()));
        }
        let mut out = FormalSum::zero(first.0, first.1);
        for t in &self.terms {
            let (g, p, f) = t.graph.to_graph()?;
            if (p, f) != first {
                return Err(HgcError::Mismatch("terms with different parameters or flavors".into()));
            }
            out.add_assign(&FormalSum::inject(&g, p, f)?.scale(&parse_coeff(&t.coeff)?))?;
        }
        Ok(out)
    }
}

pub fn graph_to_json(g: &HairyGraph, p: Parameters, flavor: Flavor) -> String {
    serde_json::to_string(&GraphJson::from_graph(g, p, flavor)).expect("graph serializes")
}

pub fn graph_from_json(s: &str) -> Result<(HairyGraph, Parameters, Flavor)> {
    let j: GraphJson = serde_json::from_str(s).map_err(|e| HgcError::Parse(e.to_string()))?;
    j.to_graph()
}

pub fn sum_to_json(x: &FormalSum) -> String {
    serde_json::to_string_pretty(&SumJson::from_sum(x)).expect("sum serializes")
}

/// Read a formal sum, or a single graph object as the sum with coefficient 1.
pub fn sum_from_json(s: &str) -> Result<FormalSum> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| HgcError::Parse(e.to_string()))?;
    if v.get("terms").is_some() {
        let j: SumJson = serde_json::from_value(v).map_err(|e| HgcError::Parse(e.to_string()))?;
        j.to_sum()
    } else {
        let j: GraphJson = serde_json::from_value(v).map_err(|e| HgcError::Parse(e.to_string()))?;
        let (g, p, f) = j.to_graph()?;
        FormalSum::inject(&g, p, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::q_frac;
    use crate::named::{named_sum, Named};

    #[test]
    fn graph_round_trip() {
        let p = Parameters::new(2, 5).unwrap();
        let g = Named::Example.graph();
        let s = graph_to_json(&g, p, Flavor::A);
        assert!(s.contains("\"v1\""));
        assert_eq!(graph_from_json(&s).unwrap(), (g, p, Flavor::A));
    }

    #[test]
    fn sum_round_trip() {
        let p = Parameters::new(2, 5).unwrap();
        let x = named_sum(Named::T, p, Flavor::A).unwrap().scale(&q_frac(-3, 4));
        let s = sum_to_json(&x);
        assert!(s.contains("3/4\""));
        assert_eq!(sum_from_json(&s).unwrap(), x);
        let z = FormalSum::zero(p, Flavor::Abar);
        assert_eq!(sum_from_json(&sum_to_json(&z)).unwrap(), z);
    }

    #[test]
    fn bad_input() {
        assert!(parse_end("x3").is_err());
        assert!(parse_end("v0").is_err());
        assert!(parse_coeff("1/0").is_err());
        assert_eq!(parse_coeff("5").unwrap(), Q::from_integer(5.into()));
        assert!(graph_from_json("{}").is_err());
    }
}
