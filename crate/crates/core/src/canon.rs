//! Canonical forms of oriented hairy graphs.
//!
//! Internal vertices get a canonical labeling by colour refinement followed by
//! a branch-and-bound search for the least code. Hairs and edges are then
//! placed deterministically: hairs sorted by (attachment label, decoration),
//! edges sorted by endpoint ids and directed from the smaller id.
//!
//! A graph is zero when some automorphism reverses its orientation. The local
//! automorphisms (swapping parallel edges, twin hairs, flipping a tadpole) are
//! handled by closed-form parity rules; once those are all even, any two
//! minimal labelings differ by a vertex automorphism, and comparing their
//! signs decides the rest.

use std::cmp::Ordering;

use crate::error::{HgcError, Result};
use crate::graph::{layout_sign, Decoration, End, HairyGraph, Parameters, Relabeling, Sym, Validity};

/// Orientation sign of a graph relative to its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn from_i32(s: i32) -> Self {
        match s.signum() {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            _ => Sign::Zero,
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Zero => 0,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i32(self.value() * rhs.value())
    }
}

/// `g = sign · graph` as oriented graphs. With `Sign::Zero`, `graph` is still
/// the canonical representative of the underlying abstract graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedCanonicalGraph {
    pub graph: HairyGraph,
    pub sign: Sign,
}

pub fn canonicalize(g: &HairyGraph, p: Parameters) -> Result<SignedCanonicalGraph> {
    canonicalize_with(g, p, Validity::Genuine)
}

pub fn canonicalize_with(g: &HairyGraph, p: Parameters, mode: Validity) -> Result<SignedCanonicalGraph> {
    g.validate(mode)?;
    Ok(canonical_unchecked(g, p))
}

/// Sign relating two orientations of the same abstract graph (`g = s·h`).
pub fn relative_sign(g: &HairyGraph, h: &HairyGraph, p: Parameters) -> Result<Sign> {
    let a = canonicalize_with(g, p, Validity::Enlarged)?;
    let b = canonicalize_with(h, p, Validity::Enlarged)?;
    if a.graph != b.graph {
        return Err(HgcError::NotIsomorphic);
    }
    Ok(a.sign * b.sign)
}

/// Vertex-level summary of a graph: per-vertex local data and the
/// multiplicity matrix of non-loop edges between internal vertices.
struct Profile {
    v: usize,
    /// (tadpoles, ω-hairs, 1-hairs, ε-hairs)
    local: Vec<[u32; 4]>,
    mult: Vec<Vec<u32>>,
    colors: Vec<u32>,
    attach: Vec<Option<usize>>,
}

fn dec_slot(d: Decoration) -> usize {
    match d {
        Decoration::Omega => 1,
        Decoration::One => 2,
        Decoration::Epsilon => 3,
    }
}

impl Profile {
    fn new(g: &HairyGraph) -> Self {
        let v = g.internal;
        let mut local = vec![[0u32; 4]; v];
        let mut mult = vec![vec![0u32; v]; v];
        let mut attach = vec![None; g.hairs.len()];
        for &(a, b) in &g.edges {
            match (a, b) {
                (End::Vertex(x), End::Vertex(y)) if x == y => local[x][0] += 1,
                (End::Vertex(x), End::Vertex(y)) => {
                    mult[x][y] += 1;
                    mult[y][x] += 1;
                }
                (End::Vertex(x), End::Hair(h)) | (End::Hair(h), End::Vertex(x)) => {
                    attach[h] = Some(x);
                    local[x][dec_slot(g.hairs[h])] += 1;
                }
                (End::Hair(_), End::Hair(_)) => {}
            }
        }
        let colors = refine(&local, &mult);
        Self { v, local, mult, colors, attach }
    }

    fn chunk(&self, order: &[usize], vertex: usize, out: &mut Vec<u32>) {
        out.extend_from_slice(&self.local[vertex]);
        out.extend(order.iter().map(|&u| self.mult[u][vertex]));
    }

    /// Code of a complete labeling (`order[label] = vertex`), without the colour prefix.
    fn code(&self, order: &[usize]) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.v * (self.v + 9) / 2);
        for i in 0..order.len() {
            self.chunk(&order[..i], order[i], &mut out);
        }
        out
    }

    fn sorted_colors(&self) -> Vec<u32> {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c
    }

    /// The closed-form check for an odd automorphism fixing every internal vertex.
    fn locally_zero(&self, p: Parameters) -> bool {
        let n_even = !p.vertex_odd();
        let nm_even = (p.n() + p.m()) % 2 == 0;
        for x in 0..self.v {
            let [tad, w, one, eps] = self.local[x];
            if tad >= 2 || (tad == 1 && !n_even) {
                return true;
            }
            if w >= 2 && nm_even {
                return true;
            }
            if (one >= 2 || eps >= 2) && n_even {
                return true;
            }
            if n_even && self.mult[x].iter().any(|&k| k >= 2) {
                return true;
            }
        }
        false
    }
}

/// Coarsest equitable refinement of the initial colouring by local data and valence.
fn refine(local: &[[u32; 4]], mult: &[Vec<u32>]) -> Vec<u32> {
    let v = local.len();
    let keys: Vec<(u32, [u32; 4], u32)> = (0..v)
        .map(|x| {
            let val = 2 * local[x][0] + local[x][1..].iter().sum::<u32>() + mult[x].iter().sum::<u32>();
            (0, local[x], val)
        })
        .collect();
    let mut colors = rank(&keys);
    loop {
        let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0) as usize;
        let sigs: Vec<(u32, Vec<u32>)> = (0..v)
            .map(|x| {
                let mut counts = vec![0u32; k];
                for y in 0..v {
                    counts[colors[y] as usize] += mult[x][y];
                }
                (colors[x], counts)
            })
            .collect();
        let next = rank(&sigs);
        let k2 = next.iter().map(|&c| c + 1).max().unwrap_or(0) as usize;
        colors = next;
        if k2 == k {
            return colors;
        }
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap() as u32).collect()
}

struct Search<'a> {
    prof: &'a Profile,
    target: Vec<u32>,
    order: Vec<usize>,
    used: Vec<bool>,
    cur: Vec<u32>,
    best: Option<Vec<u32>>,
    leaves: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn dfs(&mut self) {
        let i = self.order.len();
        if i == self.prof.v {
            match self.best.as_ref().map(|b| self.cur.cmp(b)) {
                None | Some(Ordering::Less) => {
                    self.best = Some(self.cur.clone());
                    self.leaves.clear();
                    self.leaves.push(self.order.clone());
                }
                Some(Ordering::Equal) => self.leaves.push(self.order.clone()),
                Some(Ordering::Greater) => {}
            }
            return;
        }
        for x in 0..self.prof.v {
            if self.used[x] || self.prof.colors[x] != self.target[i] {
                continue;
            }
            let start = self.cur.len();
            self.prof.chunk(&self.order, x, &mut self.cur);
            let worse = self
                .best
                .as_ref()
                .is_some_and(|b| self.cur[..] > b[..self.cur.len()]);
            if !worse {
                self.used[x] = true;
                self.order.push(x);
                self.dfs();
                self.order.pop();
                self.used[x] = false;
            }
            self.cur.truncate(start);
        }
    }
}

/// All labelings attaining the least code, as `order[label] = vertex`.
fn minimal_leaves(prof: &Profile) -> Vec<Vec<usize>> {
    let mut search = Search {
        prof,
        target: prof.sorted_colors(),
        order: Vec::with_capacity(prof.v),
        used: vec![false; prof.v],
        cur: Vec::new(),
        best: None,
        leaves: Vec::new(),
    };
    search.dfs();
    search.leaves
}

/// The relabeling induced by a vertex labeling `label[vertex]`.
fn relabeling_for(g: &HairyGraph, prof: &Profile, label: &[usize]) -> Relabeling {
    let v = g.internal;
    let mut hair_idx: Vec<usize> = (0..g.hairs.len()).collect();
    hair_idx.sort_by_key(|&h| (prof.attach[h].map_or(usize::MAX, |x| label[x]), g.hairs[h]));
    let mut hair_perm = vec![0; g.hairs.len()];
    for (new, &old) in hair_idx.iter().enumerate() {
        hair_perm[old] = new;
    }
    let id = |e: End| match e {
        End::Vertex(x) => label[x],
        End::Hair(h) => v + hair_perm[h],
    };
    let mut reversed = Vec::with_capacity(g.edges.len());
    let mut keys = Vec::with_capacity(g.edges.len());
    for &(a, b) in &g.edges {
        let (ia, ib) = (id(a), id(b));
        reversed.push(ia > ib);
        keys.push((ia.min(ib), ia.max(ib)));
    }
    let mut edge_idx: Vec<usize> = (0..g.edges.len()).collect();
    edge_idx.sort_by_key(|&e| keys[e]);
    let mut edge_perm = vec![0; g.edges.len()];
    for (new, &old) in edge_idx.iter().enumerate() {
        edge_perm[old] = new;
    }
    Relabeling { vertex_perm: label.to_vec(), hair_perm, edge_perm, reversed }
}

fn invert(order: &[usize]) -> Vec<usize> {
    let mut label = vec![0; order.len()];
    for (l, &x) in order.iter().enumerate() {
        label[x] = l;
    }
    label
}

/// Canonical form without validating the input.
pub(crate) fn canonical_unchecked(g: &HairyGraph, p: Parameters) -> SignedCanonicalGraph {
    let prof = Profile::new(g);
    if g.internal == 0 {
        return canonical_bare_edge(g, p);
    }
    let leaves = minimal_leaves(&prof);
    let first = relabeling_for(g, &prof, &invert(&leaves[0]));
    let graph = first.apply(g).expect("labeling is a bijection");
    if prof.locally_zero(p) {
        return SignedCanonicalGraph { graph, sign: Sign::Zero };
    }
    let sign = first.orientation_sign(g, p).expect("labeling is a bijection");
    for order in &leaves[1..] {
        let r = relabeling_for(g, &prof, &invert(order));
        if r.orientation_sign(g, p).expect("labeling is a bijection") != sign {
            return SignedCanonicalGraph { graph, sign: Sign::Zero };
        }
    }
    SignedCanonicalGraph { graph, sign: Sign::from_i32(sign) }
}

/// Relabel a hairless multigraph (a core) into canonical form, edges sorted.
pub(crate) fn canonical_core(core: &HairyGraph) -> HairyGraph {
    let prof = Profile::new(core);
    let label = invert(&minimal_leaves(&prof)[0]);
    let mut edges: Vec<(End, End)> = core
        .edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (label[a.vertex().unwrap()], label[b.vertex().unwrap()]);
            (End::Vertex(x.min(y)), End::Vertex(x.max(y)))
        })
        .collect();
    edges.sort();
    HairyGraph::new(core.internal, vec![], edges)
}

/// A single edge between two hairs.
fn canonical_bare_edge(g: &HairyGraph, p: Parameters) -> SignedCanonicalGraph {
    let swap = g.hairs[0] > g.hairs[1];
    let mut hairs = g.hairs.clone();
    hairs.sort();
    let graph = HairyGraph::new(0, hairs.clone(), vec![(End::Hair(0), End::Hair(1))]);
    if hairs[0] == hairs[1] {
        let mut odd = p.vertex_odd();
        if hairs[0] == Decoration::Omega && p.omega_odd() {
            odd = !odd;
        }
        if odd {
            return SignedCanonicalGraph { graph, sign: Sign::Zero };
        }
    }
    let r = Relabeling {
        vertex_perm: vec![],
        hair_perm: if swap { vec![1, 0] } else { vec![0, 1] },
        edge_perm: vec![0],
        reversed: vec![(g.edges[0].0 == End::Hair(1)) != swap],
    };
    let sign = r.orientation_sign(g, p).expect("two hairs");
    SignedCanonicalGraph { graph, sign: Sign::from_i32(sign) }
}

/// Size limit of the exhaustive oracle.
pub const BRUTE_FORCE_MAX_INTERNAL: usize = 6;
pub const BRUTE_FORCE_MAX_HAIRS: usize = 8;

/// Exhaustive canonicalization: least code over all `V!` labelings, the sign
/// from an explicit isomorphism and a full Koszul count, and zero detection by
/// enumerating every automorphism.
pub fn canonicalize_brute_force(g: &HairyGraph, p: Parameters) -> Result<SignedCanonicalGraph> {
    canonicalize_brute_force_with(g, p, Validity::Genuine)
}

pub fn canonicalize_brute_force_with(
    g: &HairyGraph,
    p: Parameters,
    mode: Validity,
) -> Result<SignedCanonicalGraph> {
    g.validate(mode)?;
    if g.internal > BRUTE_FORCE_MAX_INTERNAL || g.hairs.len() > BRUTE_FORCE_MAX_HAIRS {
        return Err(HgcError::SizeBound(format!(
            "brute force handles at most {BRUTE_FORCE_MAX_INTERNAL} internal vertices and {BRUTE_FORCE_MAX_HAIRS} hairs"
        )));
    }
    let prof = Profile::new(g);
    let (order, graph) = if g.internal == 0 {
        let mut hairs = g.hairs.clone();
        hairs.sort();
        (vec![], HairyGraph::new(0, hairs, vec![(End::Hair(0), End::Hair(1))]))
    } else {
        let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
        for order in permutations(g.internal) {
            let mut code: Vec<u32> = order.iter().map(|&x| prof.colors[x]).collect();
            code.extend(prof.code(&order));
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                best = Some((code, order));
            }
        }
        let (code, order) = best.expect("at least one labeling");
        let graph = decode(&code[g.internal..], g.internal);
        (order, graph)
    };
    let iso = explicit_isomorphism(g, &graph, &order)?;
    let sign = koszul_sign(g, &graph, &iso, p);
    let zero = automorphisms(g).into_iter().any(|a| koszul_sign(g, g, &a, p) == -1);
    Ok(SignedCanonicalGraph { graph, sign: if zero { Sign::Zero } else { Sign::from_i32(sign) } })
}

/// Rebuild the canonical graph from a labeling code.
#[allow(clippy::needless_range_loop)]
fn decode(code: &[u32], v: usize) -> HairyGraph {
    let mut local = vec![[0u32; 4]; v];
    let mut mult = vec![vec![0u32; v]; v];
    let mut pos = 0;
    for i in 0..v {
        local[i].copy_from_slice(&code[pos..pos + 4]);
        pos += 4;
        for j in 0..i {
            mult[j][i] = code[pos];
            pos += 1;
        }
    }
    let mut hairs = Vec::new();
    let mut hair_of = vec![Vec::new(); v];
    for i in 0..v {
        for (slot, d) in [(1, Decoration::Omega), (2, Decoration::One), (3, Decoration::Epsilon)] {
            for _ in 0..local[i][slot] {
                hair_of[i].push(hairs.len());
                hairs.push(d);
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..v {
        for _ in 0..local[i][0] {
            edges.push((End::Vertex(i), End::Vertex(i)));
        }
        for j in i + 1..v {
            for _ in 0..mult[i][j] {
                edges.push((End::Vertex(i), End::Vertex(j)));
            }
        }
    }
    // hair edges have the largest ids, so they follow all vertex pairs of their vertex
    let mut out = Vec::new();
    let mut k = 0;
    for i in 0..v {
        while k < edges.len() && edges[k].0 == End::Vertex(i) {
            out.push(edges[k]);
            k += 1;
        }
        for &h in &hair_of[i] {
            out.push((End::Vertex(i), End::Hair(h)));
        }
    }
    HairyGraph::new(v, hairs, out)
}

/// An isomorphism as old-index maps: `edge_to[old] = (new, reversed)`, `hair_to[old] = new`.
struct Iso {
    vertex_to: Vec<usize>,
    hair_to: Vec<usize>,
    edge_to: Vec<(usize, bool)>,
}

fn explicit_isomorphism(g: &HairyGraph, c: &HairyGraph, order: &[usize]) -> Result<Iso> {
    let vertex_to = invert(order);
    let mut hair_to = vec![usize::MAX; g.hairs.len()];
    if g.internal == 0 {
        let swap = g.hairs[0] > g.hairs[1];
        hair_to = if swap { vec![1, 0] } else { vec![0, 1] };
    } else {
        let c_attach = Profile::new(c).attach;
        let g_attach = Profile::new(g).attach;
        for (j, &d) in c.hairs.iter().enumerate() {
            let h = (0..g.hairs.len())
                .find(|&h| {
                    hair_to[h] == usize::MAX
                        && g.hairs[h] == d
                        && g_attach[h].map(|x| vertex_to[x]) == c_attach[j]
                })
                .ok_or(HgcError::NotIsomorphic)?;
            hair_to[h] = j;
        }
    }
    let map = |e: End| match e {
        End::Vertex(x) => End::Vertex(vertex_to[x]),
        End::Hair(h) => End::Hair(hair_to[h]),
    };
    let mut taken = vec![false; c.edges.len()];
    let mut edge_to = vec![(0, false); g.edges.len()];
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        let (a, b) = (map(a), map(b));
        let f = (0..c.edges.len())
            .find(|&f| !taken[f] && (c.edges[f] == (a, b) || c.edges[f] == (b, a)))
            .ok_or(HgcError::NotIsomorphic)?;
        taken[f] = true;
        edge_to[e] = (f, a != b && c.edges[f] != (a, b));
    }
    Ok(Iso { vertex_to, hair_to, edge_to })
}

/// Sign of `g = s·c` under an isomorphism, by counting Koszul inversions of
/// the old symbols listed in the new layout.
fn koszul_sign(g: &HairyGraph, c: &HairyGraph, iso: &Iso, p: Parameters) -> i32 {
    let mut word = vec![Sym::Edge(0); c.edges.len()];
    let mut reversals = 0;
    for (e, &(f, rev)) in iso.edge_to.iter().enumerate() {
        word[f] = Sym::Edge(e);
        reversals += rev as usize;
    }
    let mut verts = vec![Sym::Vertex(0); c.internal];
    for (x, &l) in iso.vertex_to.iter().enumerate() {
        verts[l] = Sym::Vertex(x);
    }
    word.extend(verts);
    let mut hairs = vec![None; c.hairs.len()];
    for (h, &j) in iso.hair_to.iter().enumerate() {
        if g.hairs[h] == Decoration::Omega {
            hairs[j] = Some(Sym::Omega(h));
        }
    }
    word.extend(hairs.into_iter().flatten());
    let mut s = layout_sign(&word, p);
    if p.vertex_odd() && reversals % 2 == 1 {
        s = -s;
    }
    s
}

/// Every automorphism of `g`, as isomorphisms onto itself.
fn automorphisms(g: &HairyGraph) -> Vec<Iso> {
    let mut out = Vec::new();
    for order in permutations(g.internal) {
        let vertex_to = invert(&order);
        let mut state = AutState {
            g,
            vertex_to: &vertex_to,
            hair_to: vec![usize::MAX; g.hairs.len()],
            edge_to: vec![(0, false); g.edges.len()],
            taken: vec![false; g.edges.len()],
        };
        state.extend(0, &mut out);
    }
    out
}

struct AutState<'a> {
    g: &'a HairyGraph,
    vertex_to: &'a [usize],
    hair_to: Vec<usize>,
    edge_to: Vec<(usize, bool)>,
    taken: Vec<bool>,
}

impl AutState<'_> {
    fn end_fits(&self, from: End, to: End) -> bool {
        match (from, to) {
            (End::Vertex(x), End::Vertex(y)) => self.vertex_to[x] == y,
            (End::Hair(h), End::Hair(k)) => self.g.hairs[h] == self.g.hairs[k],
            _ => false,
        }
    }

    fn extend(&mut self, e: usize, out: &mut Vec<Iso>) {
        let g = self.g;
        if e == g.edges.len() {
            out.push(Iso {
                vertex_to: self.vertex_to.to_vec(),
                hair_to: self.hair_to.clone(),
                edge_to: self.edge_to.clone(),
            });
            return;
        }
        let (a, b) = g.edges[e];
        for f in 0..g.edges.len() {
            if self.taken[f] {
                continue;
            }
            let (c, d) = g.edges[f];
            for rev in [false, true] {
                let (x, y) = if rev { (d, c) } else { (c, d) };
                if !self.end_fits(a, x) || !self.end_fits(b, y) {
                    continue;
                }
                let saved = self.hair_to.clone();
                let mut ok = true;
                for (from, to) in [(a, x), (b, y)] {
                    if let (End::Hair(h), End::Hair(k)) = (from, to) {
                        if self.hair_to.contains(&k) && self.hair_to[h] != k {
                            ok = false;
                        }
                        self.hair_to[h] = k;
                    }
                }
                if ok {
                    self.taken[f] = true;
                    self.edge_to[e] = (f, rev);
                    self.extend(e + 1, out);
                    self.taken[f] = false;
                }
                self.hair_to = saved;
            }
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Decoration::*;
    use End::*;

    fn p(m: u32, n: u32) -> Parameters {
        Parameters::new(m, n).unwrap()
    }

    fn grid() -> Vec<Parameters> {
        vec![p(2, 5), p(2, 6), p(3, 6), p(3, 7)]
    }

    fn tadpole_d() -> HairyGraph {
        HairyGraph::new(1, vec![Omega], vec![(Vertex(0), Vertex(0)), (Vertex(0), Hair(0))])
    }

    fn theta_like() -> HairyGraph {
        HairyGraph::new(
            2,
            vec![Omega, One],
            vec![
                (Vertex(1), Vertex(0)),
                (Vertex(0), Vertex(1)),
                (Hair(1), Vertex(1)),
                (Vertex(0), Hair(0)),
            ],
        )
    }

    fn k4_with_hair() -> HairyGraph {
        HairyGraph::new(
            4,
            vec![Omega, One],
            vec![
                (Vertex(0), Vertex(1)),
                (Vertex(0), Vertex(2)),
                (Vertex(0), Vertex(3)),
                (Vertex(1), Vertex(2)),
                (Vertex(1), Vertex(3)),
                (Vertex(2), Vertex(3)),
                (Vertex(0), Hair(0)),
                (Vertex(2), Hair(1)),
            ],
        )
    }

    #[test]
    fn tadpole_vanishes_for_odd_n() {
        assert_eq!(canonicalize(&tadpole_d(), p(2, 5)).unwrap().sign, Sign::Zero);
        assert_ne!(canonicalize(&tadpole_d(), p(2, 6)).unwrap().sign, Sign::Zero);
    }

    #[test]
    fn bare_edges() {
        let l2 = HairyGraph::new(0, vec![Omega, Omega], vec![(Hair(0), Hair(1))]);
        assert_eq!(canonicalize(&l2, p(2, 5)).unwrap().sign, Sign::Zero);
        assert_ne!(canonicalize(&l2, p(3, 7)).unwrap().sign, Sign::Zero);
        let l1 = HairyGraph::new(0, vec![One, One], vec![(Hair(0), Hair(1))]);
        assert_eq!(canonicalize(&l1, p(2, 5)).unwrap().sign, Sign::Zero);
        assert_ne!(canonicalize(&l1, p(2, 6)).unwrap().sign, Sign::Zero);
        let l = HairyGraph::new(0, vec![Omega, One], vec![(Hair(1), Hair(0))]);
        for q in grid() {
            let c = canonicalize(&l, q).unwrap();
            assert_ne!(c.sign, Sign::Zero);
            assert_eq!(c.graph.hairs, vec![Omega, One]);
        }
    }

    #[test]
    fn idempotent() {
        for q in grid() {
            for g in [tadpole_d(), theta_like(), k4_with_hair()] {
                let c = canonicalize(&g, q).unwrap();
                if c.sign.is_zero() {
                    continue;
                }
                let again = canonicalize(&c.graph, q).unwrap();
                assert_eq!(again.graph, c.graph);
                assert_eq!(again.sign, Sign::Plus);
            }
        }
    }

    #[test]
    fn parallel_edges_vanish_for_even_n() {
        assert_eq!(canonicalize(&theta_like(), p(2, 6)).unwrap().sign, Sign::Zero);
        assert_ne!(canonicalize(&theta_like(), p(2, 5)).unwrap().sign, Sign::Zero);
    }

    #[test]
    fn swapped_edges_fold_with_koszul_sign() {
        let g = k4_with_hair();
        let mut h = g.clone();
        h.edges.swap(0, 1);
        for q in grid() {
            let a = canonicalize(&g, q).unwrap();
            let b = canonicalize(&h, q).unwrap();
            assert_eq!(a.graph, b.graph);
            let expected = if q.edge_odd() { -1 } else { 1 };
            assert_eq!(a.sign.value() * b.sign.value(), expected);
        }
    }

    #[test]
    fn matches_brute_force_on_samples() {
        for q in grid() {
            for g in [tadpole_d(), theta_like(), k4_with_hair()] {
                assert_eq!(canonicalize(&g, q).unwrap(), canonicalize_brute_force(&g, q).unwrap());
            }
        }
    }

    #[test]
    fn brute_force_size_bound() {
        let star = HairyGraph::new(
            1,
            vec![Omega; 9],
            (0..9).map(|h| (Vertex(0), Hair(h))).collect(),
        );
        assert!(matches!(canonicalize_brute_force(&star, p(2, 5)), Err(HgcError::SizeBound(_))));
    }

    #[test]
    fn relative_sign_of_reversed_edge() {
        let g = k4_with_hair();
        let mut h = g.clone();
        h.edges[3] = (Vertex(2), Vertex(1));
        assert_eq!(relative_sign(&g, &h, p(2, 5)).unwrap(), Sign::Minus);
        assert_eq!(relative_sign(&g, &h, p(2, 6)).unwrap(), Sign::Plus);
        let other = tadpole_d();
        assert_eq!(relative_sign(&g, &other, p(2, 6)), Err(HgcError::NotIsomorphic));
    }
}
