//! Finite ℚ-linear combinations of canonical graphs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::canon::{canonical_unchecked, canonicalize_with, Sign};
use crate::error::{HgcError, Result};
use crate::graph::{Decoration, Flavor, HairyGraph, Parameters, Validity};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// An element of a graph complex. Keys are canonical graphs with sign `+1`;
/// coefficients are never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum {
    params: Parameters,
    flavor: Flavor,
    terms: BTreeMap<HairyGraph, Q>,
}

impl FormalSum {
    pub fn zero(params: Parameters, flavor: Flavor) -> Self {
        Self { params, flavor, terms: BTreeMap::new() }
    }

    /// The single-term sum `sign · canonical(g)`, empty when `g` is zero.
    pub fn inject(g: &HairyGraph, params: Parameters, flavor: Flavor) -> Result<Self> {
        Self::inject_with(g, params, flavor, Validity::Genuine)
    }

    pub fn inject_with(g: &HairyGraph, params: Parameters, flavor: Flavor, mode: Validity) -> Result<Self> {
        g.check_flavor(flavor)?;
        let c = canonicalize_with(g, params, mode)?;
        let mut out = Self::zero(params, flavor);
        if !c.sign.is_zero() {
            out.terms.insert(c.graph, q(c.sign.value() as i64));
        }
        Ok(out)
    }

    /// Canonicalize a graph produced internally and accumulate `coeff` times it.
    pub(crate) fn push_raw(&mut self, g: HairyGraph, coeff: &Q) {
        let c = canonical_unchecked(&g, self.params);
        match c.sign {
            Sign::Zero => {}
            Sign::Plus => self.accumulate(c.graph, coeff.clone()),
            Sign::Minus => self.accumulate(c.graph, -coeff.clone()),
        }
    }

    /// Accumulate a term whose key is already canonical.
    pub(crate) fn accumulate(&mut self, g: HairyGraph, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Expand every term through `f` (raw graph, integer sign) in parallel and
    /// collect the canonicalized result.
    pub(crate) fn expand<F>(&self, flavor: Flavor, f: F) -> FormalSum
    where
        F: Fn(&HairyGraph) -> Vec<(HairyGraph, i32)> + Sync,
    {
        let params = self.params;
        let parts: Vec<Vec<(HairyGraph, Q)>> = self
            .terms
            .par_iter()
            .map(|(g, c)| {
                f(g).into_iter()
                    .filter_map(|(h, s)| {
                        let k = canonical_unchecked(&h, params);
                        let sign = s * k.sign.value();
                        (sign != 0).then(|| (k.graph, c * q(sign as i64)))
                    })
                    .collect()
            })
            .collect();
        let mut out = FormalSum::zero(params, flavor);
        for (g, c) in parts.into_iter().flatten() {
            out.accumulate(g, c);
        }
        out
    }

    /// Canonicalize raw signed terms in parallel and sum them.
    pub(crate) fn from_raw(params: Parameters, flavor: Flavor, raw: Vec<(HairyGraph, Q)>) -> FormalSum {
        let canon: Vec<(HairyGraph, Q)> = raw
            .into_par_iter()
            .filter_map(|(h, c)| {
                let k = canonical_unchecked(&h, params);
                match k.sign {
                    Sign::Zero => None,
                    Sign::Plus => Some((k.graph, c)),
                    Sign::Minus => Some((k.graph, -c)),
                }
            })
            .collect();
        let mut out = FormalSum::zero(params, flavor);
        for (g, c) in canon {
            out.accumulate(g, c);
        }
        out
    }

    pub fn params(&self) -> Parameters {
        self.params
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HairyGraph, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &HairyGraph) -> Q {
        self.terms.get(g).cloned().unwrap_or_else(Q::zero)
    }

    fn check_compatible(&self, other: &FormalSum) -> Result<()> {
        if self.params != other.params || self.flavor != other.flavor {
            return Err(HgcError::Mismatch(format!(
                "{} {:?} vs {} {:?}",
                self.params, self.flavor, other.params, other.flavor
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &FormalSum) -> Result<FormalSum> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.accumulate(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FormalSum) -> Result<FormalSum> {
        self.add(&other.neg())
    }

    pub fn add_assign(&mut self, other: &FormalSum) -> Result<()> {
        self.check_compatible(other)?;
        for (g, c) in &other.terms {
            self.accumulate(g.clone(), c.clone());
        }
        Ok(())
    }

    pub fn scale(&self, k: &Q) -> FormalSum {
        let mut out = FormalSum::zero(self.params, self.flavor);
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(g, c)| (g.clone(), c * k)).collect();
        out
    }

    pub fn neg(&self) -> FormalSum {
        self.scale(&-Q::one())
    }

    /// The common degree of all terms; `None` for the empty sum.
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut it = self.terms.keys().map(|g| g.degree(self.params));
        let Some(d) = it.next() else { return Ok(None) };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(HgcError::NotHomogeneous)
        }
    }

    /// Split into homogeneous components.
    pub fn by_degree(&self) -> BTreeMap<i64, FormalSum> {
        let mut out: BTreeMap<i64, FormalSum> = BTreeMap::new();
        for (g, c) in &self.terms {
            out.entry(g.degree(self.params))
                .or_insert_with(|| FormalSum::zero(self.params, self.flavor))
                .terms
                .insert(g.clone(), c.clone());
        }
        out
    }

    /// Retag the flavor. Abar embeds into both other flavors; `1` and `ε`
    /// are exchanged between A and Aprime.
    pub fn reflavor(&self, to: Flavor) -> Result<FormalSum> {
        let (from, to_dec) = match (self.flavor, to) {
            (a, b) if a == b => return Ok(self.clone()),
            (Flavor::Abar, _) => {
                let mut out = self.clone();
                out.flavor = to;
                return Ok(out);
            }
            (Flavor::Aprime, Flavor::A) => (Decoration::Epsilon, Decoration::One),
            (Flavor::A, Flavor::Aprime) => (Decoration::One, Decoration::Epsilon),
            (_, Flavor::Abar) => {
                if let Some(g) = self.terms.keys().find(|g| g.omega_count() != g.hair_count()) {
                    return Err(HgcError::IllegalDecoration {
                        decoration: *g.hairs.iter().find(|&&d| d != Decoration::Omega).unwrap(),
                        flavor: Flavor::Abar,
                    });
                }
                let mut out = self.clone();
                out.flavor = to;
                return Ok(out);
            }
            _ => unreachable!(),
        };
        let mut out = FormalSum::zero(self.params, to);
        for (g, c) in &self.terms {
            out.push_raw(g.redecorate(from, to_dec), c);
        }
        Ok(out)
    }

    /// Drop terms with uni- or bivalent internal vertices.
    pub fn prune_to_genuine(&self) -> FormalSum {
        let mut out = self.clone();
        out.terms.retain(|g, _| g.is_genuine());
        out
    }

    /// Keep only the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&HairyGraph) -> bool) -> FormalSum {
        let mut out = self.clone();
        out.terms.retain(|g, _| keep(g));
        out
    }

    /// Maximum absolute numerator, a crude size measure for reports.
    pub fn height(&self) -> BigInt {
        self.terms.values().map(|c| c.numer().abs()).max().unwrap_or_default()
    }
}
