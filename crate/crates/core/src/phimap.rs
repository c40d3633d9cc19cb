//! The comparison map `Φ` between the primed subcomplexes of the A' and A
//! complexes, its factorization `exp(s) ∘ I_ε`, its inverse, and the pieces
//! of the A' differential on the enlarged complex.
//!
//! Reconnecting an ε-hair keeps its edge (index and direction) and replaces
//! the hair end by an internal vertex. ε-hairs carry no orientation symbol
//! and the ω-hairs keep their relative order, so reconnection is sign-free.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::{d, join_terms, split_terms, split_vertex};
use crate::error::{HgcError, Result};
use crate::formal::{q, FormalSum, Q};
use crate::graph::{Decoration, End, Flavor, HairyGraph};

/// An element of the primed subcomplex: every graph has an ω-hair and an
/// internal vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimedElement {
    value: FormalSum,
}

pub fn is_primed(g: &HairyGraph) -> bool {
    g.internal >= 1 && g.omega_count() >= 1
}

impl PrimedElement {
    pub fn new(value: FormalSum) -> Result<Self> {
        if value.flavor() == Flavor::Abar {
            return Err(HgcError::UnsupportedFlavor(Flavor::Abar));
        }
        if let Some((g, _)) = value.terms().find(|(g, _)| !is_primed(g)) {
            return Err(HgcError::NotPrimed(g.to_string()));
        }
        Ok(Self { value })
    }

    pub fn value(&self) -> &FormalSum {
        &self.value
    }

    pub fn into_inner(self) -> FormalSum {
        self.value
    }
}

fn epsilon_hairs(g: &HairyGraph) -> Vec<usize> {
    (0..g.hairs.len()).filter(|&h| g.hairs[h] == Decoration::Epsilon).collect()
}

/// All reconnections of the hairs in `subset` (raw graphs, sign +1).
pub(crate) fn reconnect_raw(g: &HairyGraph, subset: &[usize]) -> Vec<HairyGraph> {
    let mut in_s = vec![false; g.hairs.len()];
    let mut own = Vec::with_capacity(subset.len());
    for &h in subset {
        in_s[h] = true;
        match g.hair_attachment(h) {
            Some(v) => own.push(v),
            None => return vec![],
        }
    }
    let mut new_index = vec![usize::MAX; g.hairs.len()];
    let hairs: Vec<Decoration> = (0..g.hairs.len())
        .filter(|&h| !in_s[h])
        .enumerate()
        .map(|(i, h)| {
            new_index[h] = i;
            g.hairs[h]
        })
        .collect();
    if hairs.is_empty() {
        return vec![];
    }
    let base: Vec<(End, End)> = g
        .edges
        .iter()
        .map(|&(a, b)| {
            let m = |e: End| match e {
                End::Hair(h) if !in_s[h] => End::Hair(new_index[h]),
                e => e,
            };
            (m(a), m(b))
        })
        .collect();
    let mut out = Vec::new();
    let mut targets = vec![0usize; subset.len()];
    'outer: loop {
        if targets.iter().zip(&own).all(|(t, o)| t != o) {
            let mut edges = base.clone();
            for (k, &h) in subset.iter().enumerate() {
                let e = g.hair_edge(h).unwrap();
                let to = End::Vertex(targets[k]);
                if edges[e].0 == End::Hair(h) {
                    edges[e].0 = to;
                } else {
                    edges[e].1 = to;
                }
            }
            out.push(HairyGraph::new(g.internal, hairs.clone(), edges));
        }
        for t in targets.iter_mut() {
            *t += 1;
            if *t < g.internal {
                continue 'outer;
            }
            *t = 0;
        }
        return out;
    }
}

/// `R_S(g)`: reconnect the ε-hairs in `subset` to internal vertices other
/// than their own, in all ways.
pub fn reconnect(g: &HairyGraph, subset: &[usize], x: &FormalSum) -> Result<FormalSum> {
    if let Some(&h) = subset.iter().find(|&&h| g.hairs.get(h) != Some(&Decoration::Epsilon)) {
        return Err(HgcError::MalformedGraph(format!("hair {} is not an ε-hair", h + 1)));
    }
    if g.internal == 0 {
        return Err(HgcError::NotPrimed("no internal vertex".into()));
    }
    let raw = reconnect_raw(g, subset).into_iter().map(|h| (h, Q::one())).collect();
    Ok(FormalSum::from_raw(x.params(), x.flavor(), raw))
}

fn subsets(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0u32..(1 << items.len())).map(move |mask| {
        (0..items.len()).filter(|&i| mask >> i & 1 == 1).map(|i| items[i]).collect()
    })
}

fn require_flavor(x: &FormalSum, f: Flavor) -> Result<()> {
    if x.flavor() != f {
        return Err(HgcError::Mismatch(format!("expected flavor {}, got {}", f.name(), x.flavor().name())));
    }
    Ok(())
}

/// `Φ(Γ) = (-1)^{#ε} Σ_S R_S(Γ)`, with ε read as 1 in the target.
pub fn phi(x: &PrimedElement) -> Result<PrimedElement> {
    let x = x.value();
    require_flavor(x, Flavor::Aprime)?;
    let out = x.expand(Flavor::A, |g| {
        let eps = epsilon_hairs(g);
        let sign = if eps.len() % 2 == 1 { -1 } else { 1 };
        subsets(&eps)
            .flat_map(|s| reconnect_raw(g, &s))
            .map(|h| (h.redecorate(Decoration::Epsilon, Decoration::One), sign))
            .collect()
    });
    Ok(PrimedElement { value: out })
}

/// `s`: reconnect one ε-hair.
pub fn s_operator(x: &FormalSum) -> Result<FormalSum> {
    require_flavor(x, Flavor::Aprime)?;
    Ok(x.expand(Flavor::Aprime, |g| {
        epsilon_hairs(g).into_iter().flat_map(|h| reconnect_raw(g, &[h])).map(|h| (h, 1)).collect()
    }))
}

/// `I_ε`: multiply each graph by `(-1)^{#ε}`.
pub fn i_epsilon(x: &FormalSum) -> FormalSum {
    let mut out = FormalSum::zero(x.params(), x.flavor());
    for (g, c) in x.terms() {
        let c = if g.count_decoration(Decoration::Epsilon) % 2 == 1 { -c.clone() } else { c.clone() };
        out.accumulate(g.clone(), c);
    }
    out
}

/// `exp(t·s) x`; `s` removes an ε-hair, so the series stops after `#ε` terms.
pub fn exp_s(x: &FormalSum, t: &Q) -> Result<FormalSum> {
    let mut total = x.clone();
    let mut term = x.clone();
    for j in 1.. {
        term = s_operator(&term)?.scale(&(t / q(j)));
        if term.is_zero() {
            break;
        }
        total.add_assign(&term)?;
    }
    Ok(total)
}

/// `Φ` through its factorization `exp(s) ∘ I_ε`.
pub fn phi_factored(x: &PrimedElement) -> Result<PrimedElement> {
    require_flavor(x.value(), Flavor::Aprime)?;
    let y = exp_s(&i_epsilon(x.value()), &Q::one())?;
    Ok(PrimedElement { value: y.reflavor(Flavor::A)? })
}

/// `Φ⁻¹` by back-substitution in loop order: the lowest-loop part of the
/// residual determines the next correction, since `Φ(Γ) = ±Γ + (higher loops)`.
pub fn phi_inverse(y: &PrimedElement) -> Result<PrimedElement> {
    let y = y.value();
    require_flavor(y, Flavor::A)?;
    let mut residual = y.clone();
    let mut x = FormalSum::zero(y.params(), Flavor::Aprime);
    while let Some(low) = residual.terms().map(|(g, _)| g.loop_order()).min() {
        let lead = i_epsilon(&residual.filter(|g| g.loop_order() == low).reflavor(Flavor::Aprime)?);
        let image = phi(&PrimedElement { value: lead.clone() })?;
        residual = residual.sub(image.value())?;
        if residual.terms().any(|(g, _)| g.loop_order() <= low) {
            return Err(HgcError::Consistency("Φ is not triangular on this input".into()));
        }
        x.add_assign(&lead)?;
    }
    Ok(PrimedElement { value: x })
}

/// The pieces `(d'_1, B_∅, d'_ε, d'_ω)` of the A' differential on the
/// enlarged complex, with `d' = d'_1 − B_∅ + d'_ε + d'_ω`.
#[derive(Clone, Debug)]
pub struct DPrimePieces {
    pub split: FormalSum,
    pub b_empty: FormalSum,
    pub d_eps: FormalSum,
    pub d_omega: FormalSum,
}

impl DPrimePieces {
    pub fn reassemble(&self) -> Result<FormalSum> {
        self.split.sub(&self.b_empty)?.add(&self.d_eps)?.add(&self.d_omega)
    }
}

pub fn d_prime_pieces(x: &FormalSum) -> Result<DPrimePieces> {
    require_flavor(x, Flavor::Aprime)?;
    let p = x.params();
    let f = Flavor::Aprime;
    // all splittings, including those leaving a uni- or bivalent vertex
    let split = x.expand(f, |g| split_terms(g, p, 0));
    // a new univalent vertex on an internal vertex, signed like the matching split
    let b_empty = x.expand(f, |g| {
        (0..g.internal)
            .filter_map(|v| split_vertex(g, p, v, 0).into_iter().next())
            .filter(|(h, _)| h.valence(g.internal) == 1)
            .collect()
    });
    let joins = |want_omega: bool| {
        x.expand(f, move |g| {
            join_terms(g, p, f, 1)
                .into_iter()
                .filter(|(h, _)| joined_omega(h) == want_omega)
                .collect()
        })
    };
    Ok(DPrimePieces { split, b_empty, d_eps: joins(false), d_omega: joins(true) })
}

/// Whether the hair made by a join is an ω-hair; it hangs on the last edge.
fn joined_omega(h: &HairyGraph) -> bool {
    matches!(h.edges.last(), Some(&(_, End::Hair(k))) if h.hairs[k] == Decoration::Omega)
}

/// `Φ ∘ d' ∘ Φ⁻¹` evaluated as `exp(s) Ī d' Ī exp(−s)` on an A element.
pub fn conjugated_differential(y: &FormalSum) -> Result<FormalSum> {
    require_flavor(y, Flavor::A)?;
    let x = exp_s(&y.reflavor(Flavor::Aprime)?, &-Q::one())?;
    let dx = i_epsilon(&d(&i_epsilon(&x)));
    exp_s(&dx, &Q::one())?.reflavor(Flavor::A)
}

/// The signed sum `Σ_{J∩K=∅} (-1)^{|K|} X_{J∪K}` over a ground set of
/// `size` elements, with subsets encoded as bit masks.
pub fn inclusion_exclusion_sum(size: usize, x: impl Fn(u32) -> Q) -> Q {
    let mut total = Q::zero();
    for j in 0u32..(1 << size) {
        let rest = !j & ((1 << size) - 1);
        // enumerate submasks k of the complement
        let mut k = rest;
        loop {
            let term = x(j | k);
            if k.count_ones() % 2 == 1 {
                total -= term;
            } else {
                total += term;
            }
            if k == 0 {
                break;
            }
            k = (k - 1) & rest;
        }
    }
    total
}

/// Symbolic form: the coefficient of every `X_T` after collecting terms.
/// Returns the number of signed terms and whether only `X_∅` survives
/// with coefficient 1.
pub fn inclusion_exclusion_symbolic(size: usize) -> Result<(usize, bool)> {
    if size > 10 {
        return Err(HgcError::SizeBound(format!("ground set of size {size} > 10")));
    }
    let mut coeff = vec![0i64; 1 << size];
    let mut terms = 0;
    for j in 0u32..(1 << size) {
        let rest = !j & ((1 << size) - 1);
        let mut k = rest;
        loop {
            coeff[(j | k) as usize] += if k.count_ones() % 2 == 1 { -1 } else { 1 };
            terms += 1;
            if k == 0 {
                break;
            }
            k = (k - 1) & rest;
        }
    }
    let ok = coeff[0] == 1 && coeff[1..].iter().all(|&c| c == 0);
    Ok((terms, ok))
}

/// Numeric form with seeded random rational values.
pub fn inclusion_exclusion_numeric(size: usize, seed: u64) -> Result<bool> {
    if size > 10 {
        return Err(HgcError::SizeBound(format!("ground set of size {size} > 10")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<Q> = (0..1usize << size)
        .map(|_| Q::new(rng.gen_range(-50i64..=50).into(), rng.gen_range(1i64..=9).into()))
        .collect();
    Ok(inclusion_exclusion_sum(size, |t| values[t as usize].clone()) == values[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::End::*;
    use crate::graph::Parameters;
    use crate::named::{named_sum, Named};
    use Decoration::*;

    fn p(m: u32, n: u32) -> Parameters {
        Parameters::new(m, n).unwrap()
    }

    fn primed(g: &HairyGraph, pp: Parameters) -> PrimedElement {
        PrimedElement::new(FormalSum::inject(g, pp, Flavor::Aprime).unwrap()).unwrap()
    }

    fn tripod_eps() -> HairyGraph {
        HairyGraph::new(1, vec![Epsilon, Omega, Omega], (0..3).map(|h| (Hair(h), Vertex(0))).collect())
    }

    /// Two vertices joined by a double edge, ε on vertex 0 and ω on vertex 1.
    fn theta_like() -> HairyGraph {
        HairyGraph::new(
            2,
            vec![Epsilon, Omega],
            vec![(Vertex(0), Vertex(1)), (Vertex(0), Vertex(1)), (Vertex(0), Hair(0)), (Vertex(1), Hair(1))],
        )
    }

    #[test]
    fn reconnection_examples() {
        let pp = p(2, 5);
        let t = tripod_eps();
        let x = FormalSum::inject(&t, pp, Flavor::Aprime).unwrap();
        assert_eq!(reconnect(&t, &[], &x).unwrap(), x);
        assert!(reconnect(&t, &[0], &x).unwrap().is_zero());
        assert!(reconnect(&t, &[1], &x).is_err());
        let g = theta_like();
        assert_eq!(reconnect_raw(&g, &[0]).len(), 1);
        let r = &reconnect_raw(&g, &[0])[0];
        assert_eq!(r.edges[2], (Vertex(0), Vertex(1)));
    }

    #[test]
    fn phi_of_tripod_is_minus_t() {
        let pp = p(2, 5);
        let image = phi(&primed(&tripod_eps(), pp)).unwrap();
        let t = named_sum(Named::T, pp, Flavor::A).unwrap();
        assert_eq!(image.value(), &t.neg());
        let back = phi_inverse(&PrimedElement::new(t.neg()).unwrap()).unwrap();
        assert_eq!(back.value(), &FormalSum::inject(&tripod_eps(), pp, Flavor::Aprime).unwrap());
    }

    #[test]
    fn phi_without_epsilon_is_identity() {
        let pp = p(3, 6);
        let g = named_sum(Named::Tomega, pp, Flavor::Aprime).unwrap();
        let image = phi(&PrimedElement::new(g.clone()).unwrap()).unwrap();
        assert_eq!(image.value(), &g.reflavor(Flavor::A).unwrap());
    }

    #[test]
    fn phi_chain_map_and_factorization_on_examples() {
        for pp in [p(2, 5), p(2, 6), p(3, 6)] {
            for g in [tripod_eps(), theta_like()] {
                let x = primed(&g, pp);
                let lhs = d(phi(&x).unwrap().value());
                let rhs = phi(&PrimedElement::new(d(x.value())).unwrap()).unwrap();
                assert_eq!(&lhs, rhs.value(), "{pp} {g}");
                assert_eq!(phi(&x).unwrap(), phi_factored(&x).unwrap());
                assert_eq!(phi_inverse(&phi(&x).unwrap()).unwrap(), x);
            }
        }
    }

    #[test]
    fn s_squared_is_two_subset_term() {
        let pp = p(2, 6);
        // square with ε on two corners
        let g = HairyGraph::new(
            4,
            vec![Epsilon, Epsilon, Omega, Omega],
            vec![
                (Vertex(0), Vertex(1)),
                (Vertex(1), Vertex(2)),
                (Vertex(2), Vertex(3)),
                (Vertex(3), Vertex(0)),
                (Vertex(0), Hair(0)),
                (Vertex(1), Hair(1)),
                (Vertex(2), Hair(2)),
                (Vertex(3), Hair(3)),
            ],
        );
        let x = FormalSum::inject(&g, pp, Flavor::Aprime).unwrap();
        let s2 = s_operator(&s_operator(&x).unwrap()).unwrap().scale(&Q::new(1.into(), 2.into()));
        assert_eq!(s2, reconnect(&g, &[0, 1], &x).unwrap());
        assert!(s_operator(&FormalSum::inject(&theta_like().redecorate(Epsilon, Omega), pp, Flavor::Aprime).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn pieces_reassemble() {
        for pp in [p(2, 5), p(3, 6)] {
            for g in [tripod_eps(), theta_like()] {
                let x = FormalSum::inject(&g, pp, Flavor::Aprime).unwrap();
                let pieces = d_prime_pieces(&x).unwrap();
                assert_eq!(pieces.reassemble().unwrap(), d(&x), "{pp} {g}");
                let raw_omega = join_terms(&g, pp, Flavor::Aprime, 1)
                    .into_iter()
                    .filter(|(h, _)| joined_omega(h))
                    .count();
                assert_eq!(raw_omega, g.omega_count());
            }
        }
    }

    #[test]
    fn conjugation_gives_d() {
        let pp = p(2, 5);
        let y = phi(&primed(&theta_like(), pp)).unwrap();
        assert_eq!(conjugated_differential(y.value()).unwrap(), d(y.value()));
    }

    #[test]
    fn inclusion_exclusion() {
        assert_eq!(inclusion_exclusion_symbolic(0).unwrap(), (1, true));
        assert_eq!(inclusion_exclusion_symbolic(3).unwrap(), (27, true));
        assert!(inclusion_exclusion_symbolic(10).unwrap().1);
        assert!(inclusion_exclusion_numeric(5, 7).unwrap());
        assert!(inclusion_exclusion_symbolic(11).is_err());
    }

    #[test]
    fn primed_membership() {
        let pp = p(2, 5);
        let l = named_sum(Named::L, pp, Flavor::A).unwrap();
        assert!(matches!(PrimedElement::new(l), Err(HgcError::NotPrimed(_))));
    }
}
