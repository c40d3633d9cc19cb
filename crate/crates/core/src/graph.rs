//! Hairy graphs and their orientation data.
//!
//! A graph has `internal` vertices, a list of decorated hairs (univalent
//! external vertices) and a list of directed edges. The listed order of the
//! edges, of the internal vertices and of the ω-hairs is the orientation:
//! reversing an edge costs `(-1)^n`, and reordering the orientation set
//! `E ∪ V ∪ H_ω` costs the Koszul sign with edges of degree `n-1`, internal
//! vertices of degree `-n` and ω-hairs of degree `-m`. Hairs decorated by
//! `1` or `ε` have degree zero and do not take part in the orientation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HgcError, Result};

/// The pair `(m, n)`: source and ambient dimension, with `n - m >= 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Parameters {
    m: u32,
    n: u32,
}

impl Parameters {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m < 1 || (n as i64) - (m as i64) < 3 {
            return Err(HgcError::InvalidParameters { m: m as i64, n: n as i64 });
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Parity of the degree `n - 1` carried by an edge.
    pub fn edge_odd(&self) -> bool {
        (self.n - 1) % 2 == 1
    }

    /// Parity of the degree `-n` carried by an internal vertex.
    pub fn vertex_odd(&self) -> bool {
        self.n % 2 == 1
    }

    /// Parity of the degree `-m` carried by an ω-hair.
    pub fn omega_odd(&self) -> bool {
        self.m % 2 == 1
    }

    pub(crate) fn parity(&self, sym: Sym) -> bool {
        match sym {
            Sym::Edge(_) => self.edge_odd(),
            Sym::Vertex(_) => self.vertex_odd(),
            Sym::Omega(_) => self.omega_odd(),
        }
    }
}

impl fmt::Display for Parameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, n={})", self.m, self.n)
    }
}

/// Hair decoration. The derived order (ω first) is the canonical hair order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Decoration {
    Omega,
    One,
    Epsilon,
}

impl Decoration {
    pub fn degree(self, p: Parameters) -> i64 {
        match self {
            Decoration::Omega => p.m() as i64,
            Decoration::One | Decoration::Epsilon => 0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Decoration::Omega => "w",
            Decoration::One => "1",
            Decoration::Epsilon => "e",
        }
    }

    pub fn from_symbol(s: &str) -> Result<Self> {
        match s {
            "w" => Ok(Decoration::Omega),
            "1" => Ok(Decoration::One),
            "e" => Ok(Decoration::Epsilon),
            other => Err(HgcError::Parse(format!("unknown decoration {other:?}"))),
        }
    }
}

/// Which decoration algebra governs the hairs: `Ā_m` (ω only), `A_m` (1, ω)
/// or the non-unital `A'_m` (ε, ω with ε² = ε).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    Abar,
    A,
    Aprime,
}

impl Flavor {
    pub fn decorations(self) -> &'static [Decoration] {
        match self {
            Flavor::Abar => &[Decoration::Omega],
            Flavor::A => &[Decoration::Omega, Decoration::One],
            Flavor::Aprime => &[Decoration::Omega, Decoration::Epsilon],
        }
    }

    pub fn allows(self, d: Decoration) -> bool {
        self.decorations().contains(&d)
    }

    /// The degree-zero decoration of the flavor, if any.
    pub fn unit_like(self) -> Option<Decoration> {
        match self {
            Flavor::Abar => None,
            Flavor::A => Some(Decoration::One),
            Flavor::Aprime => Some(Decoration::Epsilon),
        }
    }

    /// Product of two decorations; `None` is the zero product.
    pub fn product(self, a: Decoration, b: Decoration) -> Option<Decoration> {
        use Decoration::*;
        match (self, a, b) {
            (_, Omega, Omega) => None,
            (Flavor::A, One, One) => Some(One),
            (Flavor::A, One, Omega) | (Flavor::A, Omega, One) => Some(Omega),
            (Flavor::Aprime, Epsilon, Epsilon) => Some(Epsilon),
            (Flavor::Aprime, Epsilon, Omega) | (Flavor::Aprime, Omega, Epsilon) => None,
            _ => None,
        }
    }

    pub fn product_all<I: IntoIterator<Item = Decoration>>(self, decs: I) -> Option<Decoration> {
        let mut it = decs.into_iter();
        let first = it.next()?;
        it.try_fold(first, |acc, d| self.product(acc, d))
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Abar => "Abar",
            Flavor::A => "A",
            Flavor::Aprime => "Aprime",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "Abar" | "abar" => Ok(Flavor::Abar),
            "A" | "a" => Ok(Flavor::A),
            "Aprime" | "aprime" => Ok(Flavor::Aprime),
            other => Err(HgcError::Parse(format!("unknown flavor {other:?}"))),
        }
    }
}

/// Edge endpoint: an internal vertex or a hair, both 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Vertex(usize),
    Hair(usize),
}

impl End {
    pub fn vertex(self) -> Option<usize> {
        match self {
            End::Vertex(v) => Some(v),
            End::Hair(_) => None,
        }
    }
}

/// Which valences are admissible for internal vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Validity {
    /// Internal vertices of valence at least three.
    Genuine,
    /// Uni- and bivalent internal vertices allowed (comparison-map bookkeeping).
    Enlarged,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HairyGraph {
    pub internal: usize,
    pub hairs: Vec<Decoration>,
    pub edges: Vec<(End, End)>,
}

impl HairyGraph {
    pub fn new(internal: usize, hairs: Vec<Decoration>, edges: Vec<(End, End)>) -> Self {
        Self { internal, hairs, edges }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn hair_count(&self) -> usize {
        self.hairs.len()
    }

    pub fn count_decoration(&self, d: Decoration) -> usize {
        self.hairs.iter().filter(|&&h| h == d).count()
    }

    pub fn omega_count(&self) -> usize {
        self.count_decoration(Decoration::Omega)
    }

    /// `(n-1)#E - n#V - m#H_ω`.
    pub fn degree(&self, p: Parameters) -> i64 {
        let (m, n) = (p.m() as i64, p.n() as i64);
        (n - 1) * self.edges.len() as i64 - n * self.internal as i64 - m * self.omega_count() as i64
    }

    /// First Betti number, counting hairs as vertices.
    pub fn loop_order(&self) -> i64 {
        self.edges.len() as i64 - (self.internal + self.hairs.len()) as i64 + 1
    }

    pub fn is_tree(&self) -> bool {
        self.loop_order() == 0
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == End::Vertex(v)) as usize + (b == End::Vertex(v)) as usize)
            .sum()
    }

    /// Half-edges `(edge, side)` ending at internal vertex `v`; side 0 is the tail.
    pub fn half_edges_at(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if a == End::Vertex(v) {
                out.push((i, 0));
            }
            if b == End::Vertex(v) {
                out.push((i, 1));
            }
        }
        out
    }

    /// Index of the edge attached to hair `h`.
    pub fn hair_edge(&self, h: usize) -> Option<usize> {
        self.edges.iter().position(|&(a, b)| a == End::Hair(h) || b == End::Hair(h))
    }

    /// The internal vertex a hair hangs on, `None` for hair–hair edges.
    pub fn hair_attachment(&self, h: usize) -> Option<usize> {
        let e = self.hair_edge(h)?;
        let (a, b) = self.edges[e];
        let other = if a == End::Hair(h) { b } else { a };
        other.vertex()
    }

    pub fn check_flavor(&self, flavor: Flavor) -> Result<()> {
        for &d in &self.hairs {
            if !flavor.allows(d) {
                return Err(HgcError::IllegalDecoration { decoration: d, flavor });
            }
        }
        Ok(())
    }

    /// Structural well-formedness: indices, univalent hairs, valences, connectivity.
    pub fn validate(&self, mode: Validity) -> Result<()> {
        let bad = |s: String| Err(HgcError::MalformedGraph(s));
        if self.hairs.is_empty() {
            return bad("a hairy graph needs at least one hair".into());
        }
        let mut hair_val = vec![0usize; self.hairs.len()];
        let mut vert_val = vec![0usize; self.internal];
        for &(a, b) in &self.edges {
            for end in [a, b] {
                match end {
                    End::Vertex(v) if v < self.internal => vert_val[v] += 1,
                    End::Hair(h) if h < self.hairs.len() => hair_val[h] += 1,
                    _ => return bad(format!("endpoint {end:?} out of range")),
                }
            }
            if a == b {
                if let End::Hair(_) = a {
                    return bad("a tadpole must sit on an internal vertex".into());
                }
            }
        }
        if let Some(h) = hair_val.iter().position(|&c| c != 1) {
            return bad(format!("hair {} has valence {}", h + 1, hair_val[h]));
        }
        let min_val = match mode {
            Validity::Genuine => 3,
            Validity::Enlarged => 1,
        };
        if let Some(v) = vert_val.iter().position(|&c| c < min_val) {
            return bad(format!("internal vertex {} has valence {}", v + 1, vert_val[v]));
        }
        if !self.is_connected() {
            return bad("graph is disconnected".into());
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        let total = self.internal + self.hairs.len();
        if total == 0 {
            return false;
        }
        let id = |e: End| match e {
            End::Vertex(v) => v,
            End::Hair(h) => self.internal + h,
        };
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, id(a)), find(&mut parent, id(b)));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        (1..total).all(|x| find(&mut parent, x) == root)
    }

    /// Whether every internal vertex is at least trivalent.
    pub fn is_genuine(&self) -> bool {
        (0..self.internal).all(|v| self.valence(v) >= 3)
    }

    /// Replace every hair decoration `from` by `to`.
    pub fn redecorate(&self, from: Decoration, to: Decoration) -> HairyGraph {
        let hairs = self.hairs.iter().map(|&d| if d == from { to } else { d }).collect();
        HairyGraph { internal: self.internal, hairs, edges: self.edges.clone() }
    }

    /// The orientation word in its standard layout: edges, internal vertices, ω-hairs.
    pub(crate) fn layout_word(&self) -> Vec<Sym> {
        let mut w: Vec<Sym> = (0..self.edges.len()).map(Sym::Edge).collect();
        w.extend((0..self.internal).map(Sym::Vertex));
        w.extend(
            self.hairs
                .iter()
                .enumerate()
                .filter(|(_, &d)| d == Decoration::Omega)
                .map(|(i, _)| Sym::Omega(i)),
        );
        w
    }
}

impl fmt::Display for HairyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |e: End| match e {
            End::Vertex(v) => format!("v{}", v + 1),
            End::Hair(h) => format!("h{}", h + 1),
        };
        let hairs: Vec<&str> = self.hairs.iter().map(|d| d.symbol()).collect();
        let edges: Vec<String> =
            self.edges.iter().map(|&(a, b)| format!("{}-{}", end(a), end(b))).collect();
        write!(f, "V={} hairs=[{}] edges=[{}]", self.internal, hairs.join(","), edges.join(" "))
    }
}

/// A member of the orientation set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Sym {
    Edge(usize),
    Vertex(usize),
    Omega(usize),
}

/// Koszul sign (as ±1) of sorting `word` into the standard layout.
pub(crate) fn layout_sign(word: &[Sym], p: Parameters) -> i32 {
    let odd: Vec<Sym> = word.iter().copied().filter(|&s| p.parity(s)).collect();
    let mut inversions = 0usize;
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            if odd[i] > odd[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of a permutation given as `perm[old] = new`.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// An explicit isomorphism onto a relabeled copy of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    /// `vertex_perm[old] = new`.
    pub vertex_perm: Vec<usize>,
    /// `hair_perm[old] = new`; must preserve decorations.
    pub hair_perm: Vec<usize>,
    /// `edge_perm[old] = new` position in the edge list.
    pub edge_perm: Vec<usize>,
    /// Whether the edge (indexed by its old position) is reversed.
    pub reversed: Vec<bool>,
}

impl Relabeling {
    pub fn identity(g: &HairyGraph) -> Self {
        Self {
            vertex_perm: (0..g.internal).collect(),
            hair_perm: (0..g.hairs.len()).collect(),
            edge_perm: (0..g.edges.len()).collect(),
            reversed: vec![false; g.edges.len()],
        }
    }

    fn check(&self, g: &HairyGraph) -> Result<()> {
        let is_perm = |p: &[usize], n: usize| {
            let mut seen = vec![false; n];
            p.len() == n && p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        if !is_perm(&self.vertex_perm, g.internal)
            || !is_perm(&self.hair_perm, g.hairs.len())
            || !is_perm(&self.edge_perm, g.edges.len())
            || self.reversed.len() != g.edges.len()
        {
            return Err(HgcError::MalformedGraph("relabeling is not a bijection".into()));
        }
        Ok(())
    }

    pub fn apply(&self, g: &HairyGraph) -> Result<HairyGraph> {
        self.check(g)?;
        let map = |e: End| match e {
            End::Vertex(v) => End::Vertex(self.vertex_perm[v]),
            End::Hair(h) => End::Hair(self.hair_perm[h]),
        };
        let mut hairs = vec![Decoration::Omega; g.hairs.len()];
        for (h, &d) in g.hairs.iter().enumerate() {
            hairs[self.hair_perm[h]] = d;
        }
        let mut edges = vec![(End::Vertex(0), End::Vertex(0)); g.edges.len()];
        for (i, &(a, b)) in g.edges.iter().enumerate() {
            let (a, b) = (map(a), map(b));
            edges[self.edge_perm[i]] = if self.reversed[i] { (b, a) } else { (a, b) };
        }
        Ok(HairyGraph { internal: g.internal, hairs, edges })
    }

    /// Sign relating the orientation of the relabeled copy to that of `g`:
    /// `(-1)^n` per reversed edge times the Koszul sign of the induced
    /// permutation of `E ∪ V ∪ H_ω`.
    pub fn orientation_sign(&self, g: &HairyGraph, p: Parameters) -> Result<i32> {
        self.check(g)?;
        let mut sign = 1;
        if p.vertex_odd() && self.reversed.iter().filter(|&&r| r).count() % 2 == 1 {
            sign = -sign;
        }
        if p.edge_odd() {
            sign *= permutation_sign(&self.edge_perm);
        }
        if p.vertex_odd() {
            sign *= permutation_sign(&self.vertex_perm);
        }
        if p.omega_odd() {
            // positions of ω-hairs before and after
            let old: Vec<usize> = (0..g.hairs.len()).filter(|&h| g.hairs[h] == Decoration::Omega).collect();
            let mut new_sorted: Vec<usize> = old.iter().map(|&h| self.hair_perm[h]).collect();
            new_sorted.sort_unstable();
            let perm: Vec<usize> = old
                .iter()
                .map(|&h| new_sorted.binary_search(&self.hair_perm[h]).unwrap())
                .collect();
            sign *= permutation_sign(&perm);
        }
        Ok(sign)
    }
}

/// Sign relating `g` to `copy = r(g)`; errors if `r` does not carry `g` onto `copy`.
pub fn orientation_sign(g: &HairyGraph, copy: &HairyGraph, r: &Relabeling, p: Parameters) -> Result<i32> {
    if r.apply(g)? != *copy {
        return Err(HgcError::NotIsomorphic);
    }
    r.orientation_sign(g, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: u32, n: u32) -> Parameters {
        Parameters::new(m, n).unwrap()
    }

    fn example_graph() -> HairyGraph {
        use End::*;
        // four internal vertices, hairs ω, 1, ω
        HairyGraph::new(
            4,
            vec![Decoration::Omega, Decoration::One, Decoration::Omega],
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
        )
    }

    #[test]
    fn parameters_need_codimension_three() {
        assert!(Parameters::new(2, 4).is_err());
        assert!(Parameters::new(0, 5).is_err());
        assert!(Parameters::new(2, 5).is_ok());
    }

    #[test]
    fn example_degree() {
        let g = example_graph();
        g.validate(Validity::Genuine).unwrap();
        for (m, n) in [(2, 5), (2, 6), (3, 6), (3, 7)] {
            assert_eq!(g.degree(p(m, n)), 4 * n as i64 - 2 * m as i64 - 8);
        }
    }

    #[test]
    fn validation_errors() {
        use End::*;
        let no_hair = HairyGraph::new(1, vec![], vec![(Vertex(0), Vertex(0))]);
        assert!(no_hair.validate(Validity::Genuine).is_err());
        let bivalent = HairyGraph::new(
            1,
            vec![Decoration::Omega, Decoration::Omega],
            vec![(Vertex(0), Hair(0)), (Vertex(0), Hair(1))],
        );
        assert!(bivalent.validate(Validity::Genuine).is_err());
        assert!(bivalent.validate(Validity::Enlarged).is_ok());
        let disconnected = HairyGraph::new(
            0,
            vec![Decoration::Omega; 4],
            vec![(Hair(0), Hair(1)), (Hair(2), Hair(3))],
        );
        assert!(disconnected.validate(Validity::Genuine).is_err());
        let double_hair = HairyGraph::new(
            1,
            vec![Decoration::Omega],
            vec![(Vertex(0), Hair(0)), (Vertex(0), Hair(0)), (Vertex(0), Vertex(0))],
        );
        assert!(double_hair.validate(Validity::Genuine).is_err());
    }

    #[test]
    fn products() {
        use Decoration::*;
        assert_eq!(Flavor::A.product(One, One), Some(One));
        assert_eq!(Flavor::A.product(One, Omega), Some(Omega));
        assert_eq!(Flavor::A.product(Omega, Omega), None);
        assert_eq!(Flavor::Aprime.product(Epsilon, Epsilon), Some(Epsilon));
        assert_eq!(Flavor::Aprime.product(Epsilon, Omega), None);
        assert_eq!(Flavor::Abar.product(Omega, Omega), None);
        assert_eq!(Flavor::A.product_all([One, One, Omega, One]), Some(Omega));
        assert_eq!(Flavor::A.product_all([One, Omega, Omega]), None);
    }

    #[test]
    fn identity_relabeling_has_sign_plus() {
        let g = example_graph();
        let r = Relabeling::identity(&g);
        assert_eq!(r.apply(&g).unwrap(), g);
        assert_eq!(r.orientation_sign(&g, p(2, 5)).unwrap(), 1);
    }

    #[test]
    fn tadpole_reversal() {
        use End::*;
        let d = HairyGraph::new(1, vec![Decoration::Omega], vec![(Vertex(0), Vertex(0)), (Vertex(0), Hair(0))]);
        let mut r = Relabeling::identity(&d);
        r.reversed[0] = true;
        assert_eq!(r.apply(&d).unwrap(), d);
        assert_eq!(r.orientation_sign(&d, p(2, 5)).unwrap(), -1);
        assert_eq!(r.orientation_sign(&d, p(2, 6)).unwrap(), 1);
    }

    #[test]
    fn swapping_parallel_edges() {
        use End::*;
        let g = HairyGraph::new(
            2,
            vec![Decoration::Omega, Decoration::Omega],
            vec![(Vertex(0), Vertex(1)), (Vertex(0), Vertex(1)), (Vertex(0), Hair(0)), (Vertex(1), Hair(1))],
        );
        let mut r = Relabeling::identity(&g);
        r.edge_perm = vec![1, 0, 2, 3];
        assert_eq!(r.apply(&g).unwrap(), g);
        assert_eq!(r.orientation_sign(&g, p(2, 6)).unwrap(), -1);
        assert_eq!(r.orientation_sign(&g, p(2, 5)).unwrap(), 1);
    }

    #[test]
    fn swapping_omega_hairs_with_their_edges() {
        use End::*;
        let t = HairyGraph::new(
            1,
            vec![Decoration::One, Decoration::Omega, Decoration::Omega],
            vec![(Vertex(0), Hair(0)), (Vertex(0), Hair(1)), (Vertex(0), Hair(2))],
        );
        let r = Relabeling {
            vertex_perm: vec![0],
            hair_perm: vec![0, 2, 1],
            edge_perm: vec![0, 2, 1],
            reversed: vec![false; 3],
        };
        assert_eq!(r.apply(&t).unwrap(), t);
        // n - m even
        assert_eq!(r.orientation_sign(&t, p(2, 6)).unwrap(), -1);
        assert_eq!(r.orientation_sign(&t, p(3, 7)).unwrap(), -1);
        // n - m odd
        assert_eq!(r.orientation_sign(&t, p(2, 5)).unwrap(), 1);
    }

    #[test]
    fn layout_sign_counts_odd_inversions() {
        let q = p(2, 6); // edges odd, vertices even, ω even
        let w = [Sym::Edge(1), Sym::Vertex(0), Sym::Edge(0)];
        assert_eq!(layout_sign(&w, q), -1);
        let q = p(2, 5); // edges even, vertices odd
        let w = [Sym::Vertex(1), Sym::Edge(0), Sym::Vertex(0)];
        assert_eq!(layout_sign(&w, q), -1);
        let w = [Sym::Edge(1), Sym::Edge(0)];
        assert_eq!(layout_sign(&w, q), 1);
    }
}
