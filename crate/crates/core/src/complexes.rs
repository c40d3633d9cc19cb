//! Differentials: vertex splitting, hair joining, and the mapping cone of
//! the inclusion of the ω-only complex into the full one.
//!
//! Signs follow the derivation rule on orientation words. Splitting vertex
//! `v` replaces its symbol by `e v w` (new edge, old vertex, new vertex) and
//! pays the Koszul sign of moving the odd-degree operator past everything
//! in front of `v`. Joining puts `f u` (new hair edge, new vertex) in front
//! of the whole word.

use crate::error::{HgcError, Result};
use crate::formal::FormalSum;
use crate::graph::{layout_sign, Decoration, End, Flavor, HairyGraph, Parameters, Sym};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DifferentialKind {
    /// Splitting only; the differential of the Abar complex.
    SplitOnly,
    /// Splitting plus joining with the A products.
    Full,
    /// Splitting plus joining with the A' products.
    Prime,
}

impl DifferentialKind {
    pub fn for_flavor(f: Flavor) -> Self {
        match f {
            Flavor::Abar => DifferentialKind::SplitOnly,
            Flavor::A => DifferentialKind::Full,
            Flavor::Aprime => DifferentialKind::Prime,
        }
    }

    pub fn flavor(self) -> Flavor {
        match self {
            DifferentialKind::SplitOnly => Flavor::Abar,
            DifferentialKind::Full => Flavor::A,
            DifferentialKind::Prime => Flavor::Aprime,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DifferentialKind::SplitOnly => "split",
            DifferentialKind::Full => "full",
            DifferentialKind::Prime => "prime",
        }
    }
}

/// All ways of splitting internal vertices, with both blocks of at least
/// `min_block` original half-edges. `min_block = 2` is the genuine splitting;
/// smaller values create uni- or bivalent vertices.
pub(crate) fn split_terms(g: &HairyGraph, p: Parameters, min_block: usize) -> Vec<(HairyGraph, i32)> {
    let mut out = Vec::new();
    for v in 0..g.internal {
        out.extend(split_vertex(g, p, v, min_block));
    }
    out
}

pub(crate) fn split_vertex(g: &HairyGraph, p: Parameters, v: usize, min_block: usize) -> Vec<(HairyGraph, i32)> {
    let e_count = g.edges.len();
    let w = g.internal;
    let half = g.half_edges_at(v);
    let k = half.len();
    let mut word: Vec<Sym> = (0..e_count).map(Sym::Edge).collect();
    word.extend((0..v).map(Sym::Vertex));
    word.extend([Sym::Edge(e_count), Sym::Vertex(v), Sym::Vertex(w)]);
    word.extend((v + 1..g.internal).map(Sym::Vertex));
    word.extend(omega_syms(g));
    let mut sign = layout_sign(&word, p);
    let front = e_count * (p.n() as usize - 1) + v * p.n() as usize;
    if front % 2 == 1 {
        sign = -sign;
    }
    let mut out = Vec::new();
    // half-edge 0 always stays at v, so each unordered partition appears once
    for mask in 0u32..(1u32 << (k - 1)) {
        let moved = mask.count_ones() as usize;
        if moved.min(k - moved) < min_block {
            continue;
        }
        let mut edges = g.edges.clone();
        for (i, &(e, side)) in half[1..].iter().enumerate() {
            if mask >> i & 1 == 1 {
                if side == 0 {
                    edges[e].0 = End::Vertex(w);
                } else {
                    edges[e].1 = End::Vertex(w);
                }
            }
        }
        edges.push((End::Vertex(v), End::Vertex(w)));
        out.push((HairyGraph::new(g.internal + 1, g.hairs.clone(), edges), sign));
    }
    out
}

fn omega_syms(g: &HairyGraph) -> impl Iterator<Item = Sym> + '_ {
    g.hairs
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == Decoration::Omega)
        .map(|(h, _)| Sym::Omega(h))
}

/// Merge the hairs in `subset` (sorted, non-empty) into a new internal vertex
/// carrying one new hair decorated by `dec`. `base` is the orientation word
/// of `g` the operation acts on.
pub(crate) fn join_subset(
    g: &HairyGraph,
    base: &[Sym],
    subset: &[usize],
    dec: Decoration,
    p: Parameters,
) -> (HairyGraph, i32) {
    let u = g.internal;
    let e_count = g.edges.len();
    let mut in_s = vec![false; g.hairs.len()];
    for &h in subset {
        in_s[h] = true;
    }
    let keep = subset
        .iter()
        .copied()
        .find(|&h| g.hairs[h] == Decoration::Omega)
        .unwrap_or(subset[0]);
    let mut new_index = vec![usize::MAX; g.hairs.len()];
    let mut hairs = Vec::with_capacity(g.hairs.len() + 1 - subset.len());
    for (h, &d) in g.hairs.iter().enumerate() {
        if h == keep {
            new_index[h] = hairs.len();
            hairs.push(dec);
        } else if !in_s[h] {
            new_index[h] = hairs.len();
            hairs.push(d);
        }
    }
    let map = |e: End| match e {
        End::Hair(h) if in_s[h] => End::Vertex(u),
        End::Hair(h) => End::Hair(new_index[h]),
        v => v,
    };
    let mut edges: Vec<(End, End)> = g.edges.iter().map(|&(a, b)| (map(a), map(b))).collect();
    edges.push((End::Vertex(u), End::Hair(new_index[keep])));
    let mut word = Vec::with_capacity(base.len() + 2);
    word.push(Sym::Edge(e_count));
    word.push(Sym::Vertex(u));
    word.extend(base.iter().map(|&s| match s {
        Sym::Omega(h) => Sym::Omega(new_index[h]),
        s => s,
    }));
    let sign = layout_sign(&word, p);
    (HairyGraph::new(g.internal + 1, hairs, edges), sign)
}

/// Joins over all hair subsets of size at least `min_size` with a nonzero product.
pub(crate) fn join_terms(g: &HairyGraph, p: Parameters, flavor: Flavor, min_size: usize) -> Vec<(HairyGraph, i32)> {
    let base = g.layout_word();
    let h = g.hairs.len();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << h) {
        if (mask.count_ones() as usize) < min_size {
            continue;
        }
        let subset: Vec<usize> = (0..h).filter(|&i| mask >> i & 1 == 1).collect();
        let Some(dec) = flavor.product_all(subset.iter().map(|&i| g.hairs[i])) else {
            continue;
        };
        out.push(join_subset(g, &base, &subset, dec, p));
    }
    out
}

pub fn delta_split(x: &FormalSum) -> FormalSum {
    let p = x.params();
    x.expand(x.flavor(), |g| split_terms(g, p, 2))
}

pub fn delta_join(x: &FormalSum) -> Result<FormalSum> {
    let (p, f) = (x.params(), x.flavor());
    if f == Flavor::Abar {
        return Err(HgcError::UnsupportedFlavor(f));
    }
    Ok(x.expand(f, |g| join_terms(g, p, f, 2)))
}

pub fn differential(x: &FormalSum, kind: DifferentialKind) -> Result<FormalSum> {
    if kind.flavor() != x.flavor() {
        return Err(HgcError::Mismatch(format!(
            "{} differential on flavor {:?}",
            kind.name(),
            x.flavor()
        )));
    }
    Ok(d(x))
}

/// The differential natural to the flavor of `x`.
pub fn d(x: &FormalSum) -> FormalSum {
    let (p, f) = (x.params(), x.flavor());
    x.expand(f, |g| {
        let mut t = split_terms(g, p, 2);
        if f != Flavor::Abar {
            t.extend(join_terms(g, p, f, 2));
        }
        t
    })
}

/// The differential on the enlarged complex (uni- and bivalent internal
/// vertices allowed): splitting with non-empty blocks and joining of any
/// non-empty subset.
pub fn d_enlarged(x: &FormalSum) -> FormalSum {
    let (p, f) = (x.params(), x.flavor());
    x.expand(f, |g| {
        let mut t = split_terms(g, p, 1);
        if f != Flavor::Abar {
            t.extend(join_terms(g, p, f, 1));
        }
        t
    })
}

/// Inclusion of the Abar complex into the A complex.
pub fn inclusion_bar_to_full(x: &FormalSum) -> Result<FormalSum> {
    if x.flavor() != Flavor::Abar {
        return Err(HgcError::UnsupportedFlavor(x.flavor()));
    }
    x.reflavor(Flavor::A)
}

/// An element `(x, y)` of the mapping cone, `x` in Abar and `y` in A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeElement {
    pub bar: FormalSum,
    pub full: FormalSum,
}

impl ConeElement {
    pub fn new(bar: FormalSum, full: FormalSum) -> Result<Self> {
        if bar.flavor() != Flavor::Abar || full.flavor() != Flavor::A {
            return Err(HgcError::Mismatch("cone parts must be (Abar, A)".into()));
        }
        if bar.params() != full.params() {
            return Err(HgcError::Mismatch("cone parts have different parameters".into()));
        }
        if let (Some(a), Some(b)) = (bar.degree()?, full.degree()?) {
            // the Abar part sits one degree below the A part
            if a + 1 != b {
                return Err(HgcError::WrongDegree { expected: b - 1, found: a });
            }
        }
        Ok(Self { bar, full })
    }

    pub fn is_zero(&self) -> bool {
        self.bar.is_zero() && self.full.is_zero()
    }
}

/// `(x, y) ↦ (-d x, ι x + d y)`.
pub fn cone_differential(c: &ConeElement) -> Result<ConeElement> {
    let bar = d(&c.bar).neg();
    let full = inclusion_bar_to_full(&c.bar)?.add(&d(&c.full))?;
    Ok(ConeElement { bar, full })
}
