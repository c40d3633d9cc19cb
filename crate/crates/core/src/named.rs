//! The small diagrams that carry the low-degree classes.

use crate::canon::{canonicalize, SignedCanonicalGraph};
use crate::error::{HgcError, Result};
use crate::formal::FormalSum;
use crate::graph::Decoration::{self, *};
use crate::graph::End::*;
use crate::graph::{Flavor, HairyGraph, Parameters};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Named {
    /// Edge between a 1-hair and an ω-hair.
    L,
    /// Tadpole vertex with an ω-hair.
    D,
    /// Vertex with hairs 1, ω, ω.
    T,
    /// Edge between two 1-hairs.
    Lprime,
    /// Tadpole vertex with a 1-hair.
    Dprime,
    /// Edge between two ω-hairs; the line graph `L_ω`.
    Ldoubleprime,
    /// Vertex with three ω-hairs.
    Tomega,
    /// Four internal vertices, hairs ω, 1, ω.
    Example,
}

pub const ALL_NAMED: [Named; 8] = [
    Named::L,
    Named::D,
    Named::T,
    Named::Lprime,
    Named::Dprime,
    Named::Ldoubleprime,
    Named::Tomega,
    Named::Example,
];

/// The six diagrams of the parity table.
pub const PARITY_NAMED: [Named; 6] = [Named::L, Named::D, Named::T, Named::Lprime, Named::Dprime, Named::Ldoubleprime];

impl Named {
    pub fn from_name(s: &str) -> Result<Self> {
        Ok(match s {
            "L" => Named::L,
            "D" => Named::D,
            "T" => Named::T,
            "Lprime" => Named::Lprime,
            "Dprime" => Named::Dprime,
            "Ldoubleprime" | "Lomega" => Named::Ldoubleprime,
            "Tomega" => Named::Tomega,
            "Example" => Named::Example,
            other => return Err(HgcError::UnknownName(other.to_string())),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Named::L => "L",
            Named::D => "D",
            Named::T => "T",
            Named::Lprime => "Lprime",
            Named::Dprime => "Dprime",
            Named::Ldoubleprime => "Ldoubleprime",
            Named::Tomega => "Tomega",
            Named::Example => "Example",
        }
    }

    /// The listed (input) orientation. Tripods have their edges directed
    /// from the hairs inward and tadpoles list the hair edge first, which
    /// makes `[L, L] = T` and `dL = D` hold on the nose.
    pub fn graph(self) -> HairyGraph {
        let line = |a: Decoration, b: Decoration| HairyGraph::new(0, vec![a, b], vec![(Hair(0), Hair(1))]);
        let tadpole = |a: Decoration| HairyGraph::new(1, vec![a], vec![(Vertex(0), Hair(0)), (Vertex(0), Vertex(0))]);
        let tripod =
            |hairs: Vec<Decoration>| HairyGraph::new(1, hairs, (0..3).map(|h| (Hair(h), Vertex(0))).collect());
        match self {
            Named::L => line(One, Omega),
            Named::D => tadpole(Omega),
            Named::T => tripod(vec![One, Omega, Omega]),
            Named::Lprime => line(One, One),
            Named::Dprime => tadpole(One),
            Named::Ldoubleprime => line(Omega, Omega),
            Named::Tomega => tripod(vec![Omega, Omega, Omega]),
            Named::Example => HairyGraph::new(
                4,
                vec![Omega, One, Omega],
                vec![
                    (Vertex(0), Vertex(1)),
                    (Vertex(0), Vertex(3)),
                    (Vertex(0), Hair(0)),
                    (Vertex(1), Vertex(3)),
                    (Vertex(2), Vertex(1)),
                    (Vertex(2), Vertex(3)),
                    (Vertex(3), Hair(2)),
                    (Vertex(2), Hair(1)),
                ],
            ),
        }
    }

    /// The smallest flavor containing the diagram.
    pub fn natural_flavor(self) -> Flavor {
        if self.graph().hairs.iter().all(|&d| d == Omega) {
            Flavor::Abar
        } else {
            Flavor::A
        }
    }

    /// Whether the diagram is nonzero, by its closed-form parity rule.
    pub fn predicted_nonzero(self, p: Parameters) -> Option<bool> {
        let n_even = p.n() % 2 == 0;
        let nm_odd = (p.n() - p.m()) % 2 == 1;
        match self {
            Named::L => Some(true),
            Named::D | Named::Lprime | Named::Dprime => Some(n_even),
            Named::T | Named::Tomega => Some(nm_odd),
            Named::Ldoubleprime => Some(!nm_odd),
            Named::Example => None,
        }
    }

    pub fn degree(self, p: Parameters) -> i64 {
        self.graph().degree(p)
    }
}

pub fn named_graph(name: Named, p: Parameters) -> Result<SignedCanonicalGraph> {
    canonicalize(&name.graph(), p)
}

/// The diagram as an element of the given flavor.
pub fn named_sum(name: Named, p: Parameters, flavor: Flavor) -> Result<FormalSum> {
    FormalSum::inject(&name.graph(), p, flavor)
}
