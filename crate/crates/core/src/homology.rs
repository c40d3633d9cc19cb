//! Boundary matrices, ranks and Betti numbers on enumerated windows, and
//! the mapping cone of the inclusion of the Abar complex into the A complex.
//!
//! A Betti number in degree `d` is certified when the slices in degrees
//! `d - 1`, `d` and `d + 1` are complete, so that no graph outside the
//! window can change either rank.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{enumerate, BasisSlice, Sector, Window};
use crate::complexes::{d, ConeElement, DifferentialKind};
use crate::error::{HgcError, Result};
use crate::formal::{FormalSum, Q};
use crate::graph::{Flavor, HairyGraph};
use crate::linalg::{self, primitive, Echelon, SparseVec};

/// Matrix of `d: C_d → C_{d-1}`, stored by columns (one per source graph).
#[derive(Clone, Debug)]
pub struct DifferentialMatrix {
    pub source_degree: i64,
    pub rows: usize,
    pub columns: Vec<SparseVec>,
    /// Image terms that fell outside the target slice.
    pub escaped: usize,
    pub certified: bool,
}

impl DifferentialMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.columns)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub degree: i64,
    pub dim: usize,
    /// Dimension of the cycles, `dim − rank(d out of this degree)`.
    pub kernel_dim: usize,
    /// Rank of `d` into this degree.
    pub image_dim: usize,
    pub betti: usize,
    pub certified: bool,
}

impl BettiReport {
    fn from_ranks(degree: i64, dim: usize, rank_out: usize, rank_in: usize, certified: bool) -> Self {
        let kernel_dim = dim - rank_out;
        Self { degree, dim, kernel_dim, image_dim: rank_in, betti: kernel_dim - rank_in, certified }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CycleClass {
    NotCycle,
    Boundary,
    /// A cycle that is not a boundary of anything in the window; certified
    /// when the slice one degree up is complete.
    NontrivialInWindow { certified: bool },
}

/// A window together with its basis and differential.
pub struct Complex {
    window: Window,
    kind: DifferentialKind,
    slices: BTreeMap<i64, BasisSlice>,
    matrices: Mutex<HashMap<i64, Arc<DifferentialMatrix>>>,
}

impl Complex {
    pub fn new(window: &Window, kind: DifferentialKind) -> Result<Self> {
        let slices = enumerate(window)?;
        Self::from_slices(window, kind, slices)
    }

    pub fn from_slices(window: &Window, kind: DifferentialKind, slices: BTreeMap<i64, BasisSlice>) -> Result<Self> {
        if kind.flavor() != window.flavor {
            return Err(HgcError::Mismatch(format!(
                "{} differential on a {} window",
                kind.name(),
                window.flavor.name()
            )));
        }
        Ok(Self { window: window.clone(), kind, slices, matrices: Mutex::new(HashMap::new()) })
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn kind(&self) -> DifferentialKind {
        self.kind
    }

    pub fn slices(&self) -> &BTreeMap<i64, BasisSlice> {
        &self.slices
    }

    pub fn dim(&self, deg: i64) -> usize {
        self.slices.get(&deg).map_or(0, |s| s.len())
    }

    pub fn is_complete(&self, deg: i64) -> bool {
        self.slices.get(&deg).map_or_else(|| self.window.is_complete(deg), |s| s.complete)
    }

    fn graphs(&self, deg: i64) -> &[HairyGraph] {
        self.slices.get(&deg).map_or(&[], |s| &s.graphs)
    }

    /// Coordinates of `x` in the degree-`deg` slice, plus the number of
    /// terms not in the slice.
    fn coordinates(&self, x: &FormalSum, deg: i64) -> Result<(SparseVec, usize)> {
        let slice = self.slices.get(&deg);
        let mut entries = Vec::new();
        let mut escaped = 0;
        for (g, c) in x.terms() {
            match slice.and_then(|s| s.position(g)) {
                Some(i) => entries.push((i, c.clone())),
                None => {
                    if !self.window.sector.contains(g) {
                        return Err(HgcError::Consistency(format!(
                            "sector {} is not closed under d: {g}",
                            self.window.sector.name()
                        )));
                    }
                    if self.window.fits(g) && self.is_complete(deg) {
                        return Err(HgcError::Consistency(format!("{g} missing from a complete slice")));
                    }
                    escaped += 1;
                }
            }
        }
        Ok((primitive(entries), escaped))
    }

    /// The matrix of `d` leaving degree `deg`.
    pub fn matrix(&self, deg: i64) -> Result<Arc<DifferentialMatrix>> {
        if let Some(m) = self.matrices.lock().unwrap().get(&deg) {
            return Ok(m.clone());
        }
        let (p, f) = (self.window.params, self.window.flavor);
        let cols: Vec<(SparseVec, usize)> = self
            .graphs(deg)
            .par_iter()
            .map(|g| {
                let x = FormalSum::inject(g, p, f)?;
                self.coordinates(&d(&x), deg - 1)
            })
            .collect::<Result<_>>()?;
        let escaped = cols.iter().map(|c| c.1).sum();
        let m = Arc::new(DifferentialMatrix {
            source_degree: deg,
            rows: self.dim(deg - 1),
            columns: cols.into_iter().map(|c| c.0).collect(),
            escaped,
            certified: self.is_complete(deg) && self.is_complete(deg - 1),
        });
        self.matrices.lock().unwrap().insert(deg, m.clone());
        Ok(m)
    }

    pub fn betti(&self, deg: i64) -> Result<BettiReport> {
        let dim = self.dim(deg);
        let rank_out = self.matrix(deg)?.rank();
        let rank_in = self.matrix(deg + 1)?.rank();
        let certified = self.is_complete(deg - 1) && self.is_complete(deg) && self.is_complete(deg + 1);
        Ok(BettiReport::from_ranks(deg, dim, rank_out, rank_in, certified))
    }

    /// Betti numbers in every degree the window touches.
    pub fn bettis(&self) -> Result<Vec<BettiReport>> {
        self.slices.keys().map(|&deg| self.betti(deg)).collect()
    }

    /// Classify a homogeneous element of this complex.
    pub fn cycle_class(&self, x: &FormalSum) -> Result<CycleClass> {
        if x.params() != self.window.params || x.flavor() != self.window.flavor {
            return Err(HgcError::Mismatch("element does not belong to this complex".into()));
        }
        let Some(deg) = x.degree()? else {
            return Ok(CycleClass::Boundary);
        };
        if !d(x).is_zero() {
            return Ok(CycleClass::NotCycle);
        }
        let (v, escaped) = self.coordinates(x, deg)?;
        if escaped > 0 {
            return Err(HgcError::Window(format!("element does not fit {}", self.window.describe())));
        }
        let mut image = Echelon::new();
        for c in &self.matrix(deg + 1)?.columns {
            image.insert(c.clone());
        }
        Ok(if image.contains(v) {
            CycleClass::Boundary
        } else {
            CycleClass::NontrivialInWindow { certified: self.is_complete(deg + 1) }
        })
    }
}

/// Rank of a boundary matrix; the exact fraction-free elimination.
pub fn rank_exact(m: &DifferentialMatrix) -> usize {
    m.rank()
}

/// One-shot Betti number of a window in a degree.
pub fn betti(w: &Window, kind: DifferentialKind, deg: i64) -> Result<BettiReport> {
    Complex::new(w, kind)?.betti(deg)
}

/// The mapping cone of `Abar → A` over an A window. Its degree-`k` part is
/// `Abar_{k-1} ⊕ A_k`, with `d(x, y) = (−dx, ιx + dy)`.
pub struct ConeComplex {
    full: Complex,
    bar: BTreeMap<i64, BasisSlice>,
}

/// Position in the cone basis of degree `k`: bar graphs first.
fn cone_coordinates(
    bar: Option<&BasisSlice>,
    full: Option<&BasisSlice>,
    bar_part: &FormalSum,
    full_part: &FormalSum,
) -> (SparseVec, usize) {
    let offset = bar.map_or(0, |s| s.len());
    let mut entries: Vec<(usize, Q)> = Vec::new();
    let mut escaped = 0;
    for (g, c) in bar_part.terms() {
        match bar.and_then(|s| s.position(g)) {
            Some(i) => entries.push((i, c.clone())),
            None => escaped += 1,
        }
    }
    for (g, c) in full_part.terms() {
        match full.and_then(|s| s.position(g)) {
            Some(i) => entries.push((offset + i, c.clone())),
            None => escaped += 1,
        }
    }
    (primitive(entries), escaped)
}

impl ConeComplex {
    pub fn new(window: &Window) -> Result<Self> {
        if window.flavor != Flavor::A || window.sector != Sector::All {
            return Err(HgcError::Window("the cone needs an A window over all graphs".into()));
        }
        let full = Complex::new(window, DifferentialKind::Full)?;
        let bar = full
            .slices
            .iter()
            .map(|(&deg, s)| {
                let gs: Vec<HairyGraph> = s.graphs.iter().filter(|g| Sector::OmegaOnly.contains(g)).cloned().collect();
                (deg, BasisSlice::new(deg, gs, s.complete))
            })
            .collect();
        Ok(Self { full, bar })
    }

    pub fn window(&self) -> &Window {
        self.full.window()
    }

    pub fn dim(&self, k: i64) -> usize {
        self.bar.get(&(k - 1)).map_or(0, |s| s.len()) + self.full.dim(k)
    }

    pub fn is_complete(&self, k: i64) -> bool {
        self.full.is_complete(k) && self.full.is_complete(k - 1)
    }

    fn coords(&self, k: i64, c: &ConeElement) -> (SparseVec, usize) {
        cone_coordinates(self.bar.get(&(k - 1)), self.full.slices.get(&k), &c.bar, &c.full)
    }

    /// Columns of the cone differential leaving degree `k`.
    fn columns(&self, k: i64) -> Result<Vec<SparseVec>> {
        let p = self.window().params;
        let bar_graphs = self.bar.get(&(k - 1)).map_or(&[][..], |s| &s.graphs[..]);
        let full_graphs = self.full.graphs(k);
        let mut jobs: Vec<(bool, &HairyGraph)> = bar_graphs.iter().map(|g| (true, g)).collect();
        jobs.extend(full_graphs.iter().map(|g| (false, g)));
        jobs.par_iter()
            .map(|&(is_bar, g)| {
                let elem = if is_bar {
                    ConeElement {
                        bar: FormalSum::inject(g, p, Flavor::Abar)?,
                        full: FormalSum::zero(p, Flavor::A),
                    }
                } else {
                    ConeElement { bar: FormalSum::zero(p, Flavor::Abar), full: FormalSum::inject(g, p, Flavor::A)? }
                };
                let image = crate::complexes::cone_differential(&elem)?;
                Ok(self.coords(k - 1, &image).0)
            })
            .collect()
    }

    pub fn betti(&self, k: i64) -> Result<BettiReport> {
        let dim = self.dim(k);
        let rank_out = linalg::rank(&self.columns(k)?);
        let rank_in = linalg::rank(&self.columns(k + 1)?);
        let certified = self.is_complete(k - 1) && self.is_complete(k) && self.is_complete(k + 1);
        Ok(BettiReport::from_ranks(k, dim, rank_out, rank_in, certified))
    }

    /// Betti numbers for every cone degree with a nonempty chain space.
    pub fn bettis(&self) -> Result<Vec<BettiReport>> {
        let mut degrees: Vec<i64> = self.full.slices.keys().flat_map(|&d| [d, d + 1]).collect();
        degrees.sort();
        degrees.dedup();
        degrees.into_iter().map(|k| self.betti(k)).collect()
    }

    /// Classify a cone element of degree `k` (the degree of its A part).
    pub fn cycle_class(&self, c: &ConeElement) -> Result<CycleClass> {
        let k = match (c.full.degree()?, c.bar.degree()?) {
            (Some(k), _) => k,
            (None, Some(b)) => b + 1,
            (None, None) => return Ok(CycleClass::Boundary),
        };
        if !crate::complexes::cone_differential(c)?.is_zero() {
            return Ok(CycleClass::NotCycle);
        }
        let (v, escaped) = self.coords(k, c);
        if escaped > 0 {
            return Err(HgcError::Window(format!("cone element does not fit {}", self.window().describe())));
        }
        let mut image = Echelon::new();
        for col in self.columns(k + 1)? {
            image.insert(col);
        }
        Ok(if image.contains(v) {
            CycleClass::Boundary
        } else {
            CycleClass::NontrivialInWindow { certified: self.is_complete(k + 1) }
        })
    }
}

/// Cone Betti number of a window in one degree.
pub fn cone_betti(w: &Window, k: i64) -> Result<BettiReport> {
    ConeComplex::new(w)?.betti(k)
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
    fn trees_in_degree_zero() {
        // L_ω spans H_0 at (3,7)
        let pp = p(3, 7);
        let w = Window::covering(pp, Flavor::Abar, Sector::Trees, -1..=1).unwrap();
        let c = Complex::new(&w, DifferentialKind::SplitOnly).unwrap();
        let b = c.betti(0).unwrap();
        assert!(b.certified);
        assert_eq!(b.betti, 1);
    }

    #[test]
    fn d_is_boundary_in_full_not_in_bar() {
        let pp = p(2, 6);
        let deg = Named::D.degree(pp);
        let wa = Window::covering(pp, Flavor::A, Sector::All, deg - 1..=deg + 1).unwrap();
        let full = Complex::new(&wa, DifferentialKind::Full).unwrap();
        let dd = named_sum(Named::D, pp, Flavor::A).unwrap();
        assert_eq!(full.cycle_class(&dd).unwrap(), CycleClass::Boundary);
        let wb = wa.with_flavor(Flavor::Abar).unwrap();
        let bar = Complex::new(&wb, DifferentialKind::SplitOnly).unwrap();
        let db = named_sum(Named::D, pp, Flavor::Abar).unwrap();
        assert_eq!(bar.cycle_class(&db).unwrap(), CycleClass::NontrivialInWindow { certified: true });
        let l = named_sum(Named::L, pp, Flavor::A).unwrap();
        assert_eq!(full.cycle_class(&l).unwrap(), CycleClass::NotCycle);
    }

    #[test]
    fn cone_class_of_l() {
        let pp = p(2, 5);
        let k = Named::L.degree(pp);
        let w = Window::covering(pp, Flavor::A, Sector::All, k - 2..=k + 1).unwrap();
        let cone = ConeComplex::new(&w).unwrap();
        let l = ConeElement::new(FormalSum::zero(pp, Flavor::Abar), named_sum(Named::L, pp, Flavor::A).unwrap()).unwrap();
        assert_eq!(cone.cycle_class(&l).unwrap(), CycleClass::NontrivialInWindow { certified: true });
        let b = cone.betti(k).unwrap();
        assert!(b.certified);
        assert_eq!(b.betti, 1);
    }

    #[test]
    fn kind_must_match_window() {
        let w = Window::new(p(2, 5), Flavor::A, Sector::All, 1, 2).unwrap();
        assert!(Complex::new(&w, DifferentialKind::SplitOnly).is_err());
    }
}
