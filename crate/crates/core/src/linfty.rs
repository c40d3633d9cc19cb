//! The L∞ operations `ℓ_r`, Maurer–Cartan elements and twisting.
//!
//! Degrees are the graph degrees, so every `ℓ_r` has degree `-1` and is
//! graded symmetric with plain Koszul signs. `ℓ_r(Γ_1, …, Γ_r)` joins a
//! non-empty set of hairs from each argument at one new vertex; its sign is
//! that of the join applied to the concatenated orientation words.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::complexes::{d, join_subset};
use crate::error::{HgcError, Result};
use crate::formal::{q, FormalSum, Q};
use crate::graph::{Decoration, End, Flavor, HairyGraph, Sym};

/// Disjoint union of graphs together with the concatenated orientation word.
fn union(graphs: &[&HairyGraph]) -> (HairyGraph, Vec<Sym>, Vec<usize>) {
    let mut u = HairyGraph::new(0, vec![], vec![]);
    let mut word = Vec::new();
    let mut hair_offsets = Vec::with_capacity(graphs.len());
    for g in graphs {
        let (vo, ho, eo) = (u.internal, u.hairs.len(), u.edges.len());
        let shift = |e: End| match e {
            End::Vertex(v) => End::Vertex(v + vo),
            End::Hair(h) => End::Hair(h + ho),
        };
        u.edges.extend(g.edges.iter().map(|&(a, b)| (shift(a), shift(b))));
        u.hairs.extend(g.hairs.iter().copied());
        u.internal += g.internal;
        word.extend((0..g.edges.len()).map(|e| Sym::Edge(e + eo)));
        word.extend((0..g.internal).map(|v| Sym::Vertex(v + vo)));
        word.extend(
            g.hairs
                .iter()
                .enumerate()
                .filter(|(_, &d)| d == Decoration::Omega)
                .map(|(h, _)| Sym::Omega(h + ho)),
        );
        hair_offsets.push(ho);
    }
    (u, word, hair_offsets)
}

/// `ℓ_r` on graphs, as raw signed terms.
fn ell_graphs(graphs: &[&HairyGraph], flavor: Flavor, p: crate::graph::Parameters) -> Vec<(HairyGraph, i32)> {
    let (u, word, offsets) = union(graphs);
    let mut out = Vec::new();
    let sizes: Vec<usize> = graphs.iter().map(|g| g.hairs.len()).collect();
    // odometer over one non-empty mask per argument
    let mut masks: Vec<u32> = vec![1; graphs.len()];
    loop {
        let mut subset = Vec::new();
        for (i, &mask) in masks.iter().enumerate() {
            subset.extend((0..sizes[i]).filter(|&h| mask >> h & 1 == 1).map(|h| h + offsets[i]));
        }
        if let Some(dec) = flavor.product_all(subset.iter().map(|&h| u.hairs[h])) {
            out.push(join_subset(&u, &word, &subset, dec, p));
        }
        let mut i = 0;
        loop {
            if i == masks.len() {
                return out;
            }
            masks[i] += 1;
            if masks[i] < (1 << sizes[i]) {
                break;
            }
            masks[i] = 1;
            i += 1;
        }
    }
}

/// The `r`-ary operation, `r >= 2`, extended multilinearly.
pub fn ell(args: &[&FormalSum]) -> Result<FormalSum> {
    if args.len() < 2 {
        return Err(HgcError::Arity { min: 2, got: args.len() });
    }
    let (p, flavor) = (args[0].params(), args[0].flavor());
    for a in args {
        if a.params() != p || a.flavor() != flavor {
            return Err(HgcError::Mismatch("ℓ_r arguments must share parameters and flavor".into()));
        }
    }
    match flavor {
        Flavor::Abar => return Ok(FormalSum::zero(p, flavor)),
        Flavor::Aprime => return Err(HgcError::UnsupportedFlavor(flavor)),
        Flavor::A => {}
    }
    let lists: Vec<Vec<(&HairyGraph, &Q)>> = args.iter().map(|a| a.terms().collect()).collect();
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(FormalSum::zero(p, flavor));
    }
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for l in &lists {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..l.len()).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    let raw: Vec<(HairyGraph, Q)> = tuples
        .par_iter()
        .flat_map_iter(|t| {
            let graphs: Vec<&HairyGraph> = t.iter().enumerate().map(|(k, &i)| lists[k][i].0).collect();
            let coeff: Q = t.iter().enumerate().map(|(k, &i)| lists[k][i].1.clone()).product();
            ell_graphs(&graphs, flavor, p)
                .into_iter()
                .map(move |(g, s)| (g, &coeff * q(s as i64)))
        })
        .collect();
    Ok(FormalSum::from_raw(p, flavor, raw))
}

pub fn bracket(a: &FormalSum, b: &FormalSum) -> Result<FormalSum> {
    ell(&[a, b])
}

/// `ℓ_1 = d`, and `ℓ_r` otherwise.
fn ell_any(args: &[&FormalSum]) -> Result<FormalSum> {
    if args.len() == 1 {
        Ok(d(args[0]))
    } else {
        ell(args)
    }
}

fn homogeneous_degree(x: &FormalSum) -> Result<i64> {
    Ok(x.degree()?.unwrap_or(0))
}

/// The generalized Jacobi expression of arity `xs.len()`:
/// `Σ_{i+j=N+1} Σ_σ ε(σ) ℓ_j(ℓ_i(x_σ1, …, x_σi), x_σ(i+1), …)` over unshuffles.
/// It vanishes exactly when the relation holds on these inputs.
pub fn jacobiator(xs: &[&FormalSum]) -> Result<FormalSum> {
    let n = xs.len();
    if n == 0 {
        return Err(HgcError::Arity { min: 1, got: 0 });
    }
    let degs: Vec<i64> = xs.iter().map(|x| homogeneous_degree(x)).collect::<Result<_>>()?;
    let mut total = FormalSum::zero(xs[0].params(), xs[0].flavor());
    for i in 1..=n {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != i {
                continue;
            }
            let inner: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
            let outer: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 0).collect();
            // Koszul sign of moving the inner block in front
            let mut odd = false;
            for &a in &outer {
                for &b in &inner {
                    if b > a && degs[a] % 2 != 0 && degs[b] % 2 != 0 {
                        odd = !odd;
                    }
                }
            }
            let inner_args: Vec<&FormalSum> = inner.iter().map(|&k| xs[k]).collect();
            let first = ell_any(&inner_args)?;
            let mut outer_args: Vec<&FormalSum> = vec![&first];
            outer_args.extend(outer.iter().map(|&k| xs[k]));
            let term = ell_any(&outer_args)?;
            total.add_assign(&if odd { term.neg() } else { term })?;
        }
    }
    Ok(total)
}

fn factorial(r: usize) -> Q {
    (1..=r).map(|k| q(k as i64)).product::<Q>()
}

/// Maurer–Cartan curvature `Σ_{r>=1} ℓ_r(π, …, π) / r!`.
///
/// Degree-zero elements are all-ω trees, so every `ℓ_r` with `r >= 2` joins
/// at least two ω-hairs and vanishes; the series is evaluated until a term
/// is zero and refused when it cannot be shown to stop.
pub fn mc_curvature(pi: &FormalSum) -> Result<FormalSum> {
    let deg = pi.degree()?;
    if let Some(k) = deg {
        if k != 0 {
            return Err(HgcError::WrongDegree { expected: 0, found: k });
        }
    }
    ensure_omega_only(pi)?;
    let mut total = d(pi);
    for r in 2.. {
        let args: Vec<&FormalSum> = vec![pi; r];
        let term = ell(&args)?;
        if term.is_zero() {
            break;
        }
        total.add_assign(&term.scale(&(Q::one() / factorial(r))))?;
    }
    Ok(total)
}

pub fn mc_check(pi: &FormalSum) -> Result<bool> {
    Ok(mc_curvature(pi)?.is_zero())
}

fn ensure_omega_only(pi: &FormalSum) -> Result<()> {
    if pi.terms().any(|(g, _)| g.omega_count() != g.hair_count()) {
        return Err(HgcError::NonTerminating("π has hairs other than ω".into()));
    }
    Ok(())
}

/// A verified Maurer–Cartan element.
#[derive(Clone, Debug)]
pub struct McElement {
    value: FormalSum,
}

impl McElement {
    pub fn new(value: FormalSum) -> Result<Self> {
        if !mc_check(&value)? {
            return Err(HgcError::NotMaurerCartan);
        }
        Ok(Self { value })
    }

    pub fn value(&self) -> &FormalSum {
        &self.value
    }
}

/// `d^π x = d x + Σ_{r>=1} ℓ_{r+1}(π, …, π, x) / r!`. Each copy of the
/// all-ω element π spends an ω-hair at the join, so terms with `r >= 2`
/// vanish; the loop stops at the first zero term.
pub fn twist_differential(pi: &McElement, x: &FormalSum) -> Result<FormalSum> {
    let pi = &pi.value;
    if pi.flavor() == Flavor::Abar {
        return Ok(d(x));
    }
    let mut total = d(x);
    for r in 1.. {
        let mut args: Vec<&FormalSum> = vec![pi; r];
        args.push(x);
        let term = ell(&args)?;
        if term.is_zero() {
            break;
        }
        total.add_assign(&term.scale(&(Q::one() / factorial(r))))?;
    }
    Ok(total)
}

/// `x ↦ q·x` helper used by property tests of the MC equation.
pub fn scaled_mc_check(pi: &FormalSum, k: &Q) -> Result<bool> {
    if k.is_zero() {
        return Ok(true);
    }
    mc_check(&pi.scale(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Parameters;
    use crate::named::{named_sum, Named};

    fn p(m: u32, n: u32) -> Parameters {
        Parameters::new(m, n).unwrap()
    }

    #[test]
    fn bracket_of_lines_is_tripod() {
        let pp = p(2, 5);
        let l = named_sum(Named::L, pp, Flavor::A).unwrap();
        let t = named_sum(Named::T, pp, Flavor::A).unwrap();
        assert_eq!(bracket(&l, &l).unwrap(), t);
        let lw = named_sum(Named::Ldoubleprime, p(3, 7), Flavor::A).unwrap();
        assert!(bracket(&lw, &lw).unwrap().is_zero());
    }

    #[test]
    fn arity_errors() {
        let pp = p(2, 5);
        let l = named_sum(Named::L, pp, Flavor::A).unwrap();
        assert!(matches!(ell(&[&l]), Err(HgcError::Arity { .. })));
        let lw = named_sum(Named::Ldoubleprime, p(3, 7), Flavor::Abar).unwrap();
        assert!(bracket(&lw, &lw).unwrap().is_zero());
    }

    #[test]
    fn mc_elements() {
        let lw = named_sum(Named::Ldoubleprime, p(3, 7), Flavor::A).unwrap();
        assert!(mc_check(&lw).unwrap());
        let tw = named_sum(Named::Tomega, p(3, 6), Flavor::A).unwrap();
        assert!(mc_check(&tw).unwrap());
        assert!(mc_check(&FormalSum::zero(p(2, 5), Flavor::A)).unwrap());
        let l = named_sum(Named::L, p(2, 5), Flavor::A).unwrap();
        assert!(matches!(mc_check(&l), Err(HgcError::WrongDegree { .. })));
    }

    #[test]
    fn arity_two_relation_on_named() {
        let pp = p(2, 5);
        let l = named_sum(Named::L, pp, Flavor::A).unwrap();
        let t = named_sum(Named::T, pp, Flavor::A).unwrap();
        assert!(jacobiator(&[&l, &t]).unwrap().is_zero());
        assert!(jacobiator(&[&l, &l, &l]).unwrap().is_zero());
    }
}
