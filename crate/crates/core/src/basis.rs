//! Exhaustive enumeration of canonical basis graphs inside a size window.
//!
//! Generation is shape driven. A shape is (loop order g, ω-hairs, other
//! hairs, internal vertices); the degree is
//! `(n-1)(g+h-1) - V - m·h_ω`, and trivalence forces `V <= 2g + h - 2`.
//! Every coefficient of the resulting lower bound on the degree is positive
//! when `n - m >= 3`, so each degree admits finitely many shapes and a slice
//! is complete exactly when all of them fit inside the window.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::canon::{canonical_core, canonical_unchecked};
use crate::error::{HgcError, Result};
use crate::graph::{Decoration, End, Flavor, HairyGraph, Parameters};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    All,
    /// Loop order zero.
    Trees,
    /// Trees with exactly one ε-hair (flavor Aprime).
    UT,
    /// No ω-hairs (flavor A).
    W0,
    /// At least one ω-hair and at least one internal vertex.
    Primed,
    /// Only ω-hairs.
    OmegaOnly,
}

impl Sector {
    pub fn name(self) -> &'static str {
        match self {
            Sector::All => "all",
            Sector::Trees => "trees",
            Sector::UT => "ut",
            Sector::W0 => "w0",
            Sector::Primed => "primed",
            Sector::OmegaOnly => "omega-only",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "all" => Sector::All,
            "trees" => Sector::Trees,
            "ut" => Sector::UT,
            "w0" => Sector::W0,
            "primed" => Sector::Primed,
            "omega-only" | "omegaonly" => Sector::OmegaOnly,
            other => return Err(HgcError::Parse(format!("unknown sector {other:?}"))),
        })
    }

    fn allows_shape(self, flavor: Flavor, s: &Shape) -> bool {
        if flavor == Flavor::Abar && s.other > 0 {
            return false;
        }
        match self {
            Sector::All => true,
            Sector::Trees => s.loops == 0,
            Sector::UT => s.loops == 0 && s.other == 1,
            Sector::W0 => s.omega == 0,
            Sector::Primed => s.omega >= 1 && s.internal >= 1,
            Sector::OmegaOnly => s.other == 0,
        }
    }

    pub fn contains(self, g: &HairyGraph) -> bool {
        let w = g.omega_count();
        let other = g.hair_count() - w;
        match self {
            Sector::All => true,
            Sector::Trees => g.is_tree(),
            Sector::UT => g.is_tree() && g.count_decoration(Decoration::Epsilon) == 1 && other == 1,
            Sector::W0 => w == 0,
            Sector::Primed => w >= 1 && g.internal >= 1,
            Sector::OmegaOnly => other == 0,
        }
    }

    fn check_flavor(self, flavor: Flavor) -> Result<()> {
        let ok = match self {
            Sector::UT => flavor == Flavor::Aprime,
            Sector::W0 => flavor == Flavor::A,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(HgcError::Window(format!("sector {} is not available in flavor {:?}", self.name(), flavor)))
        }
    }
}

/// Combinatorial type of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub loops: usize,
    pub omega: usize,
    pub other: usize,
    pub internal: usize,
}

impl Shape {
    pub fn hairs(&self) -> usize {
        self.omega + self.other
    }

    pub fn edges(&self) -> usize {
        self.loops + self.internal + self.hairs() - 1
    }

    pub fn degree(&self, p: Parameters) -> i64 {
        let (m, n) = (p.m() as i64, p.n() as i64);
        (n - 1) * self.edges() as i64 - n * self.internal as i64 - m * self.omega as i64
    }

    fn admissible(&self) -> bool {
        let h = self.hairs();
        if h == 0 {
            return false;
        }
        if self.internal == 0 {
            return self.loops == 0 && h == 2;
        }
        self.internal + 2 <= 2 * self.loops + h
    }
}

/// Every admissible shape of degree `d` in a sector. The set is finite.
pub fn shapes_of_degree(p: Parameters, flavor: Flavor, sector: Sector, d: i64) -> Vec<Shape> {
    let (m, n) = (p.m() as i64, p.n() as i64);
    // g(n-3) + h_w(n-2-m) + h_o(n-2) <= d + n - 3
    let budget = d + n - 3;
    let mut out = Vec::new();
    if budget < 0 {
        return out;
    }
    for loops in 0..=(budget / (n - 3)) {
        let rest = budget - loops * (n - 3);
        for omega in 0..=(rest / (n - 2 - m)) {
            let rest2 = rest - omega * (n - 2 - m);
            for other in 0..=(rest2 / (n - 2)) {
                let h = omega + other;
                let v = (n - 1) * (loops + h - 1) - m * omega - d;
                if v < 0 {
                    continue;
                }
                let s = Shape {
                    loops: loops as usize,
                    omega: omega as usize,
                    other: other as usize,
                    internal: v as usize,
                };
                if s.admissible() && sector.allows_shape(flavor, &s) && s.degree(p) == d {
                    out.push(s);
                }
            }
        }
    }
    // the bound above assumes V >= 1; bare edges have a separate budget
    for omega in 0..=2usize {
        let s = Shape { loops: 0, omega, other: 2 - omega, internal: 0 };
        if s.degree(p) == d && sector.allows_shape(flavor, &s) && !out.contains(&s) {
            out.push(s);
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub params: Parameters,
    pub flavor: Flavor,
    pub sector: Sector,
    pub max_internal: usize,
    pub max_hairs: usize,
    pub max_edges: usize,
    /// Upper bound on raw graphs generated before giving up.
    pub cap: usize,
}

pub const DEFAULT_CAP: usize = 20_000_000;

impl Window {
    /// A window with the default edge bound `⌊(3·max_internal + max_hairs) / 2⌋`,
    /// the edge count of a trivalent graph filling both bounds.
    pub fn new(params: Parameters, flavor: Flavor, sector: Sector, max_internal: usize, max_hairs: usize) -> Result<Self> {
        sector.check_flavor(flavor)?;
        Ok(Self {
            params,
            flavor,
            sector,
            max_internal,
            max_hairs,
            max_edges: (3 * max_internal + max_hairs) / 2,
            cap: DEFAULT_CAP,
        })
    }

    pub fn with_max_edges(mut self, max_edges: usize) -> Self {
        self.max_edges = max_edges;
        self
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Result<Self> {
        self.sector.check_flavor(flavor)?;
        Ok(Self { flavor, ..self.clone() })
    }

    /// The smallest window containing every graph of the given degrees.
    pub fn covering(
        params: Parameters,
        flavor: Flavor,
        sector: Sector,
        degrees: impl IntoIterator<Item = i64>,
    ) -> Result<Self> {
        sector.check_flavor(flavor)?;
        let mut w = Self { params, flavor, sector, max_internal: 0, max_hairs: 0, max_edges: 0, cap: DEFAULT_CAP };
        for d in degrees {
            for s in shapes_of_degree(params, flavor, sector, d) {
                w.max_internal = w.max_internal.max(s.internal);
                w.max_hairs = w.max_hairs.max(s.hairs());
                w.max_edges = w.max_edges.max(s.edges());
            }
        }
        Ok(w)
    }

    /// Smallest window containing both.
    pub fn union(&self, other: &Window) -> Window {
        Window {
            max_internal: self.max_internal.max(other.max_internal),
            max_hairs: self.max_hairs.max(other.max_hairs),
            max_edges: self.max_edges.max(other.max_edges),
            ..self.clone()
        }
    }

    pub fn fits(&self, g: &HairyGraph) -> bool {
        g.internal <= self.max_internal && g.hair_count() <= self.max_hairs && g.edge_count() <= self.max_edges
    }

    fn fits_shape(&self, s: &Shape) -> bool {
        s.internal <= self.max_internal && s.hairs() <= self.max_hairs && s.edges() <= self.max_edges
    }

    /// Whether every graph of degree `d` in the sector lies inside the window.
    pub fn is_complete(&self, d: i64) -> bool {
        shapes_of_degree(self.params, self.flavor, self.sector, d)
            .iter()
            .all(|s| self.fits_shape(s))
    }

    /// All admissible shapes inside the window.
    pub fn shapes(&self) -> Vec<Shape> {
        let mut out = Vec::new();
        for internal in 0..=self.max_internal {
            for h in 1..=self.max_hairs {
                for omega in 0..=h {
                    for edges in 1..=self.max_edges {
                        if edges + 1 < internal + h {
                            continue;
                        }
                        let s = Shape { loops: edges + 1 - internal - h, omega, other: h - omega, internal };
                        if s.admissible() && self.sector.allows_shape(self.flavor, &s) {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }

    /// Degrees with at least one shape inside the window.
    pub fn degrees(&self) -> BTreeSet<i64> {
        self.shapes().iter().map(|s| s.degree(self.params)).collect()
    }

    pub fn describe(&self) -> String {
        format!(
            "{} flavor={} sector={} V<={} H<={} E<={}",
            self.params,
            self.flavor.name(),
            self.sector.name(),
            self.max_internal,
            self.max_hairs,
            self.max_edges
        )
    }
}

/// Canonical basis graphs of one degree.
#[derive(Clone, Debug)]
pub struct BasisSlice {
    pub degree: i64,
    pub graphs: Vec<HairyGraph>,
    pub complete: bool,
    index: HashMap<HairyGraph, usize>,
}

impl BasisSlice {
    pub fn new(degree: i64, graphs: Vec<HairyGraph>, complete: bool) -> Self {
        let index = graphs.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        Self { degree, graphs, complete, index }
    }

    pub fn empty(degree: i64, complete: bool) -> Self {
        Self::new(degree, Vec::new(), complete)
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn position(&self, g: &HairyGraph) -> Option<usize> {
        self.index.get(g).copied()
    }
}

/// Enumerate all slices of the window, keyed by degree.
pub fn enumerate(w: &Window) -> Result<BTreeMap<i64, BasisSlice>> {
    let shapes = w.shapes();
    let graphs = generate(w, &shapes)?;
    let mut by_degree: BTreeMap<i64, Vec<HairyGraph>> = BTreeMap::new();
    for g in graphs {
        by_degree.entry(g.degree(w.params)).or_default().push(g);
    }
    Ok(by_degree
        .into_iter()
        .map(|(d, gs)| (d, BasisSlice::new(d, gs, w.is_complete(d))))
        .collect())
}

/// Enumerate the slice of one degree (empty if nothing fits).
pub fn enumerate_degree(w: &Window, d: i64) -> Result<BasisSlice> {
    let shapes: Vec<Shape> = w.shapes().into_iter().filter(|s| s.degree(w.params) == d).collect();
    let graphs = generate(w, &shapes)?;
    Ok(BasisSlice::new(d, graphs.into_iter().collect(), w.is_complete(d)))
}

/// All-ω trees of degree `<= 0`; these are the only graphs of nonpositive degree.
pub fn tree_sector_nonpositive(p: Parameters) -> Result<BTreeMap<i64, BasisSlice>> {
    // below both the shape budget and the bare edge degrees nothing exists
    let (m, n) = (p.m() as i64, p.n() as i64);
    let lowest = (3 - n).min(n - 1 - 2 * m).min(0);
    let w = Window::covering(p, Flavor::Abar, Sector::Trees, lowest..=0)?;
    let mut out = BTreeMap::new();
    for d in lowest..=0 {
        let s = enumerate_degree(&w, d)?;
        out.insert(d, s);
    }
    Ok(out)
}

fn generate(w: &Window, shapes: &[Shape]) -> Result<BTreeSet<HairyGraph>> {
    let mut jobs: Vec<(Shape, Arc<Vec<HairyGraph>>)> = Vec::new();
    let mut estimate = 0usize;
    for s in shapes {
        if s.internal == 0 {
            jobs.push((*s, Arc::new(vec![])));
            continue;
        }
        let cores = cores(s.internal, s.edges() - s.hairs());
        estimate = estimate.saturating_add(cores.len().saturating_mul(binomial(s.hairs() + s.internal, s.internal)));
        jobs.push((*s, cores));
    }
    if estimate > w.cap {
        return Err(HgcError::SizeBound(format!("about {estimate} raw graphs in {}", w.describe())));
    }
    let work: Vec<(Shape, HairyGraph)> = jobs
        .iter()
        .flat_map(|(s, cs)| {
            if s.internal == 0 {
                vec![(*s, HairyGraph::new(0, vec![], vec![]))]
            } else {
                cs.iter().map(|c| (*s, c.clone())).collect()
            }
        })
        .collect();
    let sets: Vec<HashSet<HairyGraph>> = work
        .par_iter()
        .map(|(s, core)| decorate(w, s, core))
        .collect();
    let mut out = BTreeSet::new();
    for set in sets {
        out.extend(set);
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Attach hairs to a core in every admissible way and keep the nonzero canonical forms.
fn decorate(w: &Window, s: &Shape, core: &HairyGraph) -> HashSet<HairyGraph> {
    let p = w.params;
    let unit = w.flavor.unit_like();
    let mut out = HashSet::new();
    let mut push = |g: HairyGraph| {
        if !w.sector.contains(&g) {
            return;
        }
        let c = canonical_unchecked(&g, p);
        if !c.sign.is_zero() {
            out.insert(c.graph);
        }
    };
    if s.internal == 0 {
        let mut hairs = vec![Decoration::Omega; s.omega];
        if s.other > 0 {
            match unit {
                Some(u) => hairs.extend(vec![u; s.other]),
                None => return out,
            }
        }
        push(HairyGraph::new(0, hairs, vec![(End::Hair(0), End::Hair(1))]));
        return out;
    }
    let v = s.internal;
    let val: Vec<usize> = (0..v).map(|x| core.valence(x)).collect();
    let need: Vec<usize> = val.iter().map(|&k| 3usize.saturating_sub(k)).collect();
    let h = s.hairs();
    if need.iter().sum::<usize>() > h {
        return out;
    }
    for counts in compositions(h, &need) {
        for omegas in compositions_bounded(s.omega, &counts) {
            let mut hairs = Vec::with_capacity(h);
            let mut edges = core.edges.clone();
            for x in 0..v {
                for k in 0..counts[x] {
                    let d = if k < omegas[x] { Decoration::Omega } else { unit.unwrap_or(Decoration::Omega) };
                    edges.push((End::Vertex(x), End::Hair(hairs.len())));
                    hairs.push(d);
                }
            }
            if s.other > 0 && unit.is_none() {
                continue;
            }
            push(HairyGraph::new(v, hairs, edges));
        }
    }
    out
}

/// Vectors `c` with `c[i] >= low[i]` and sum `total`.
fn compositions(total: usize, low: &[usize]) -> Vec<Vec<usize>> {
    let base: usize = low.iter().sum();
    if base > total {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = low.to_vec();
    fn go(i: usize, left: usize, cur: &mut Vec<usize>, low: &[usize], out: &mut Vec<Vec<usize>>) {
        if i + 1 == cur.len() {
            cur[i] = low[i] + left;
            out.push(cur.clone());
            return;
        }
        for extra in 0..=left {
            cur[i] = low[i] + extra;
            go(i + 1, left - extra, cur, low, out);
        }
    }
    go(0, total - base, &mut cur, low, &mut out);
    out
}

/// Vectors `c` with `c[i] <= high[i]` and sum `total`.
fn compositions_bounded(total: usize, high: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; high.len()];
    fn go(i: usize, left: usize, cur: &mut Vec<usize>, high: &[usize], out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let room: usize = high[i..].iter().sum();
        if room < left {
            return;
        }
        for k in 0..=left.min(high[i]) {
            cur[i] = k;
            go(i + 1, left - k, cur, high, out);
        }
    }
    go(0, total, &mut cur, high, &mut out);
    out
}

type CoreCache = Mutex<HashMap<(usize, usize), Arc<Vec<HairyGraph>>>>;

fn core_cache() -> &'static CoreCache {
    static CACHE: OnceLock<CoreCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Connected multigraphs (loops allowed) on `v` vertices with `c` edges, up to
/// isomorphism. Every such graph arises from a smaller one by adding an edge
/// (remove a loop or a cycle edge) or by adding a leaf (a tree has one).
pub(crate) fn cores(v: usize, c: usize) -> Arc<Vec<HairyGraph>> {
    if let Some(hit) = core_cache().lock().unwrap().get(&(v, c)) {
        return hit.clone();
    }
    let result: Vec<HairyGraph> = if v == 0 || c + 1 < v {
        vec![]
    } else if v == 1 && c == 0 {
        vec![HairyGraph::new(1, vec![], vec![])]
    } else {
        let mut found: BTreeSet<HairyGraph> = BTreeSet::new();
        if c > 0 {
            let smaller = cores(v, c - 1);
            let grown: Vec<HairyGraph> = smaller
                .par_iter()
                .flat_map_iter(|g| {
                    let mut local = Vec::new();
                    for a in 0..v {
                        for b in a..v {
                            let mut h = g.clone();
                            h.edges.push((End::Vertex(a), End::Vertex(b)));
                            local.push(canonical_core(&h));
                        }
                    }
                    local
                })
                .collect();
            found.extend(grown);
        }
        if v > 1 && c > 0 {
            for g in cores(v - 1, c - 1).iter() {
                for a in 0..v - 1 {
                    let mut h = HairyGraph::new(v, vec![], g.edges.clone());
                    h.edges.push((End::Vertex(a), End::Vertex(v - 1)));
                    found.insert(canonical_core(&h));
                }
            }
        }
        found.into_iter().collect()
    };
    let arc = Arc::new(result);
    core_cache().lock().unwrap().insert((v, c), arc.clone());
    arc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: u32, n: u32) -> Parameters {
        Parameters::new(m, n).unwrap()
    }

    #[test]
    fn core_counts() {
        // one vertex: c loops
        assert_eq!(cores(1, 3).len(), 1);
        // two vertices, two edges: double edge, edge plus a loop
        assert_eq!(cores(2, 2).len(), 2);
        // trees on four vertices: path and star
        assert_eq!(cores(4, 3).len(), 2);
        // connected multigraphs with loops on 2 vertices and 3 edges:
        // triple edge, double edge + loop, edge + 2 loops on one, edge + loop on each
        assert_eq!(cores(2, 3).len(), 4);
    }

    #[test]
    fn line_omega_window() {
        let w = Window::new(p(3, 7), Flavor::Abar, Sector::All, 0, 2).unwrap();
        let slices = enumerate(&w).unwrap();
        assert_eq!(slices.len(), 1);
        let s = &slices[&0];
        assert_eq!(s.len(), 1);
        assert!(s.complete);
        assert_eq!(s.graphs[0].hairs, vec![Decoration::Omega; 2]);
    }

    #[test]
    fn tripod_in_small_window() {
        let w = Window::new(p(2, 5), Flavor::A, Sector::All, 1, 3).unwrap();
        let slices = enumerate(&w).unwrap();
        let t = &slices[&3];
        assert!(t.graphs.iter().any(|g| g.internal == 1 && g.omega_count() == 2 && g.hair_count() == 3));
    }

    #[test]
    fn empty_window() {
        let w = Window::new(p(2, 5), Flavor::A, Sector::All, 3, 0).unwrap();
        assert!(enumerate(&w).unwrap().is_empty());
    }

    #[test]
    fn nonpositive_trees() {
        let s = tree_sector_nonpositive(p(3, 7)).unwrap();
        assert_eq!(s[&0].len(), 1);
        assert_eq!(s[&0].graphs[0].internal, 0);
        let s = tree_sector_nonpositive(p(3, 6)).unwrap();
        assert_eq!(s[&0].len(), 1);
        assert_eq!(s[&0].graphs[0].internal, 1);
        let s = tree_sector_nonpositive(p(2, 5)).unwrap();
        assert!(s.get(&0).is_none_or(|x| x.is_empty()));
        for slice in s.values() {
            assert!(slice.complete);
        }
    }

    #[test]
    fn sector_flavor_compatibility() {
        assert!(Window::new(p(2, 5), Flavor::A, Sector::UT, 2, 2).is_err());
        assert!(Window::new(p(2, 5), Flavor::Aprime, Sector::W0, 2, 2).is_err());
    }

    #[test]
    fn shapes_agree_with_generated_degrees() {
        let q = p(2, 5);
        let w = Window::new(q, Flavor::A, Sector::All, 3, 3).unwrap();
        for (d, slice) in enumerate(&w).unwrap() {
            let shapes = shapes_of_degree(q, Flavor::A, Sector::All, d);
            for g in &slice.graphs {
                let s = Shape {
                    loops: g.loop_order() as usize,
                    omega: g.omega_count(),
                    other: g.hair_count() - g.omega_count(),
                    internal: g.internal,
                };
                assert!(shapes.contains(&s), "{g} missing shape {s:?}");
            }
        }
    }

    #[test]
    fn complete_slices_are_stable_under_growth() {
        let q = p(2, 5);
        let small = Window::new(q, Flavor::A, Sector::All, 2, 3).unwrap();
        let big = Window::new(q, Flavor::A, Sector::All, 4, 5).unwrap();
        let a = enumerate(&small).unwrap();
        let b = enumerate(&big).unwrap();
        for (d, s) in &a {
            if s.complete {
                assert_eq!(s.graphs, b[d].graphs, "degree {d}");
            }
        }
    }
}
