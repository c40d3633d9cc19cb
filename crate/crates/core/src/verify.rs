//! Window sweeps and the named checks, returning serializable reports.
//! The command line and the acceptance suite both run these.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{enumerate, tree_sector_nonpositive, Sector, Window};
use crate::canon::{canonicalize, canonicalize_brute_force, Sign};
use crate::complexes::{d, ConeElement, DifferentialKind};
use crate::error::Result;
use crate::formal::{q, FormalSum};
use crate::graph::{Flavor, HairyGraph, Parameters, Relabeling};
use crate::homology::{BettiReport, Complex, ConeComplex, CycleClass};
use crate::linalg::{dense_rank, primitive, rank, to_dense};
use crate::linfty::{bracket, jacobiator, mc_check, twist_differential, McElement};
use crate::named::{named_sum, Named, PARITY_NAMED};
use crate::phimap::{conjugated_differential, d_prime_pieces, phi, phi_factored, phi_inverse, PrimedElement};

/// The four parity classes of `(m, n)`.
pub const SMALL_GRID: [(u32, u32); 4] = [(2, 5), (2, 6), (3, 6), (3, 7)];

pub fn small_grid() -> Vec<Parameters> {
    SMALL_GRID.iter().map(|&(m, n)| Parameters::new(m, n).expect("grid parameters are valid")).collect()
}

/// Outcome of one named check; `detail` lists counterexamples or context.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Self { name: name.into(), passed, detail: Vec::new() }
    }

    pub fn with(mut self, line: impl Into<String>) -> Self {
        self.detail.push(line.into());
        self
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn basis_graphs(w: &Window) -> Result<Vec<HairyGraph>> {
    Ok(enumerate(w)?.into_values().flat_map(|s| s.graphs).collect())
}

fn inject_all(gs: &[HairyGraph], p: Parameters, f: Flavor) -> Result<Vec<FormalSum>> {
    gs.iter().map(|g| FormalSum::inject(g, p, f)).collect()
}

/// Apply `op` to every basis graph of the window and keep the graphs for
/// which `ok` fails. At most `keep` counterexamples are recorded.
fn sweep<F>(name: String, w: &Window, keep: usize, ok: F) -> Result<Check>
where
    F: Fn(&FormalSum) -> Result<bool> + Sync,
{
    let gs = basis_graphs(w)?;
    let xs = inject_all(&gs, w.params, w.flavor)?;
    let verdicts: Vec<bool> = xs.par_iter().map(&ok).collect::<Result<_>>()?;
    let bad: Vec<String> = gs.iter().zip(&verdicts).filter(|(_, &v)| !v).map(|(g, _)| g.to_string()).collect();
    let mut c = Check::new(name, bad.is_empty()).with(format!("{}: {} graphs, {} failures", w.describe(), gs.len(), bad.len()));
    c.detail.extend(bad.into_iter().take(keep));
    Ok(c)
}

/// `d ∘ d = 0` on every basis graph of the window. Each distinct graph in
/// the first image is differentiated once.
pub fn d_squared(w: &Window) -> Result<Check> {
    let (p, f) = (w.params, w.flavor);
    let gs = basis_graphs(w)?;
    let first: Vec<FormalSum> = gs.par_iter().map(|g| FormalSum::inject(g, p, f).map(|x| d(&x))).collect::<Result<_>>()?;
    let distinct: BTreeSet<&HairyGraph> = first.iter().flat_map(|x| x.terms().map(|(g, _)| g)).collect();
    let second: HashMap<&HairyGraph, FormalSum> = distinct
        .into_par_iter()
        .map(|h| FormalSum::inject(h, p, f).map(|x| (h, d(&x))))
        .collect::<Result<_>>()?;
    let mut bad = Vec::new();
    for (g, x) in gs.iter().zip(&first) {
        let mut dd = FormalSum::zero(p, f);
        for (h, c) in x.terms() {
            dd.add_assign(&second[h].scale(c))?;
        }
        if !dd.is_zero() {
            bad.push(format!("{g}: d² has {} terms", dd.len()));
        }
    }
    let name = format!("d² = 0 ({} differential)", DifferentialKind::for_flavor(f).name());
    let mut c = Check::new(name, bad.is_empty()).with(format!("{}: {} graphs", w.describe(), gs.len()));
    c.detail.extend(bad.into_iter().take(5));
    Ok(c)
}

/// The closed-form identities among the named diagrams at one parameter point.
pub fn named_identities(p: Parameters) -> Result<Vec<Check>> {
    let sum = |name, f| named_sum(name, p, f);
    let a = |name| sum(name, Flavor::A);
    let mut out = Vec::new();
    let at = |s: &str| format!("{s} at {p}");
    let n_even = p.n() % 2 == 0;
    let dl = d(&a(Named::L)?);
    if n_even {
        out.push(Check::new(at("dL = D"), dl == a(Named::D)?));
        out.push(Check::new(at("dL' = D'"), d(&a(Named::Lprime)?) == a(Named::Dprime)?));
    } else {
        out.push(Check::new(at("dL = 0"), dl.is_zero()));
    }
    out.push(Check::new(at("dT = 0"), d(&a(Named::T)?).is_zero()));
    if p.n() % 2 == 1 && p.m() % 2 == 0 {
        let t = a(Named::T)?;
        out.push(Check::new(at("[L, L] = T"), bracket(&a(Named::L)?, &a(Named::L)?)? == t && !t.is_zero()));
    }
    if (p.n() - p.m()) % 2 == 0 {
        // every pair of ω-only diagrams
        let omega_only: Vec<FormalSum> =
            [Named::Ldoubleprime, Named::Tomega, Named::D].iter().map(|&nm| a(nm)).collect::<Result<_>>()?;
        let zero = omega_only
            .iter()
            .all(|x| omega_only.iter().all(|y| bracket(x, y).map(|b| b.is_zero()).unwrap_or(false)));
        out.push(Check::new(at("[x, y] = 0 for ω-only x, y"), zero));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityCell {
    pub name: &'static str,
    pub m: u32,
    pub n: u32,
    pub predicted_nonzero: bool,
    pub observed_nonzero: bool,
}

impl ParityCell {
    pub fn matches(&self) -> bool {
        self.predicted_nonzero == self.observed_nonzero
    }
}

/// Vanishing of the six parity diagrams against the closed-form rules.
pub fn parity_table(grid: &[Parameters]) -> Result<Vec<ParityCell>> {
    let mut out = Vec::new();
    for &p in grid {
        for name in PARITY_NAMED {
            let c = crate::named::named_graph(name, p)?;
            out.push(ParityCell {
                name: name.name(),
                m: p.m(),
                n: p.n(),
                predicted_nonzero: name.predicted_nonzero(p).expect("parity diagrams have a rule"),
                observed_nonzero: !c.sign.is_zero(),
            });
        }
    }
    Ok(out)
}

/// Degree formula checks for the example graph and L, D, T.
pub fn degree_checks(grid: &[Parameters]) -> Vec<Check> {
    grid.iter()
        .map(|&p| {
            let (m, n) = (p.m() as i64, p.n() as i64);
            let got = [Named::Example, Named::L, Named::D, Named::T].map(|nm| nm.degree(p));
            let want = [4 * n - 2 * m - 8, n - m - 1, n - m - 2, 2 * n - 2 * m - 3];
            Check::new(format!("degrees at {p}"), got == want).with(format!("got {got:?}, want {want:?}"))
        })
        .collect()
}

/// Chain map, factorization, round trip, piece reassembly and conjugation
/// for `Φ` on every primed A' basis graph of the window.
pub fn phi_checks(p: Parameters, max_v: usize, max_h: usize) -> Result<Vec<Check>> {
    let w = Window::new(p, Flavor::Aprime, Sector::Primed, max_v, max_h)?;
    let prime = |x: &FormalSum| PrimedElement::new(x.clone());
    Ok(vec![
        sweep(format!("d∘Φ = Φ∘d' at {p}"), &w, 3, |x| {
            let image = phi(&prime(x)?)?;
            Ok(&d(image.value()) == phi(&prime(&d(x))?)?.value())
        })?,
        sweep(format!("Φ = exp(s)∘I_ε at {p}"), &w, 3, |x| {
            let x = prime(x)?;
            Ok(phi(&x)? == phi_factored(&x)?)
        })?,
        sweep(format!("Φ⁻¹∘Φ = id at {p}"), &w, 3, |x| {
            let x = prime(x)?;
            Ok(phi_inverse(&phi(&x)?)? == x)
        })?,
        sweep(format!("d'_1 − B_∅ + d'_ε + d'_ω = d' at {p}"), &w, 3, |x| {
            let pieces = d_prime_pieces(x)?.reassemble()?;
            // uni- and bivalent terms cancel before any pruning
            Ok(pieces == d(x) && pieces.prune_to_genuine() == pieces)
        })?,
        sweep(format!("exp(ad_s)(Ī d' Ī) = d at {p}"), &w, 3, |x| {
            let y = x.reflavor(Flavor::A)?;
            Ok(conjugated_differential(&y)? == d(&y))
        })?,
    ])
}

/// The arity-2 relation on all ordered pairs, and graded symmetry of the bracket.
pub fn linfty_arity2(p: Parameters, max_v: usize, max_h: usize) -> Result<Vec<Check>> {
    let w = Window::new(p, Flavor::A, Sector::All, max_v, max_h)?;
    let xs = inject_all(&basis_graphs(&w)?, p, Flavor::A)?;
    let pairs: Vec<(usize, usize)> = (0..xs.len()).flat_map(|i| (0..xs.len()).map(move |j| (i, j))).collect();
    let results: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (&xs[i], &xs[j]);
            let rel = jacobiator(&[x, y])?.is_zero();
            let (a, b) = (x.degree()?.unwrap_or(0), y.degree()?.unwrap_or(0));
            let yx = bracket(y, x)?;
            let sym = bracket(x, y)? == if a * b % 2 != 0 { yx.neg() } else { yx };
            Ok((rel, sym))
        })
        .collect::<Result<_>>()?;
    let rel_bad = results.iter().filter(|r| !r.0).count();
    let sym_bad = results.iter().filter(|r| !r.1).count();
    Ok(vec![
        Check::new(format!("arity-2 relation at {p}"), rel_bad == 0)
            .with(format!("{}: {} pairs, {rel_bad} failures", w.describe(), pairs.len())),
        Check::new(format!("graded symmetry of ℓ_2 at {p}"), sym_bad == 0)
            .with(format!("{} pairs, {sym_bad} failures", pairs.len())),
    ])
}

/// The arity-3 relation on seeded random triples of basis graphs.
pub fn linfty_arity3(p: Parameters, max_v: usize, max_h: usize, samples: usize, seed: u64) -> Result<Check> {
    let w = Window::new(p, Flavor::A, Sector::All, max_v, max_h)?;
    let xs = inject_all(&basis_graphs(&w)?, p, Flavor::A)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<[usize; 3]> =
        (0..samples).map(|_| [0; 3].map(|_| rng.gen_range(0..xs.len()))).collect();
    let bad: Vec<String> = triples
        .par_iter()
        .map(|t| Ok((t, jacobiator(&[&xs[t[0]], &xs[t[1]], &xs[t[2]]])?.is_zero())))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(t, _)| format!("triple {t:?}"))
        .collect();
    let mut c = Check::new(format!("arity-3 relation at {p}"), bad.is_empty())
        .with(format!("{}: {samples} triples, seed {seed}, {} failures", w.describe(), bad.len()));
    c.detail.extend(bad);
    Ok(c)
}

/// Maurer–Cartan checks and the twisted differentials.
pub fn mc_checks(max_v: usize, max_h: usize) -> Result<Vec<Check>> {
    let (p37, p36) = (Parameters::new(3, 7)?, Parameters::new(3, 6)?);
    let lw = named_sum(Named::Ldoubleprime, p37, Flavor::A)?;
    let tw = named_sum(Named::Tomega, p36, Flavor::A)?;
    let mut out = vec![
        Check::new("mc(L_ω) at (3,7)", mc_check(&lw)?),
        Check::new("mc(T_ω) at (3,6)", mc_check(&tw)?),
        Check::new("mc(q·L_ω), mc(q·T_ω), q = 5/3", mc_check(&lw.scale(&(q(5) / q(3))))? && mc_check(&tw.scale(&(q(5) / q(3))))?),
    ];
    let lw = McElement::new(lw)?;
    let tw = McElement::new(tw)?;
    let w37 = Window::new(p37, Flavor::A, Sector::All, max_v, max_h)?;
    out.push(sweep("d^{L_ω} = d at (3,7)".into(), &w37, 3, |x| Ok(twist_differential(&lw, x)? == d(x)))?);
    let w36 = Window::new(p36, Flavor::A, Sector::All, max_v, max_h)?;
    out.push(sweep("(d^{T_ω})² = 0 at (3,6)".into(), &w36, 3, |x| {
        Ok(twist_differential(&tw, &twist_differential(&tw, x)?)?.is_zero())
    })?);
    let gs = inject_all(&basis_graphs(&w36)?, p36, Flavor::A)?;
    let changed = gs.par_iter().map(|x| Ok(twist_differential(&tw, x)? != d(x))).collect::<Result<Vec<bool>>>()?;
    let count = changed.iter().filter(|&&c| c).count();
    out.push(Check::new("d^{T_ω} ≠ d at (3,6)", count > 0).with(format!("{count} of {} basis graphs change", gs.len())));
    Ok(out)
}

/// Tree-sector homology of the Abar complex in degrees `<= 0`.
pub fn tree_h0(p: Parameters) -> Result<(BettiReport, usize, bool)> {
    let slices = tree_sector_nonpositive(p)?;
    let lowest = *slices.keys().next().unwrap_or(&0);
    let w = Window::covering(p, Flavor::Abar, Sector::Trees, lowest - 1..=1)?;
    let c = Complex::new(&w, DifferentialKind::SplitOnly)?;
    let reports: Vec<BettiReport> = (lowest..=0).map(|deg| c.betti(deg)).collect::<Result<_>>()?;
    let total = reports.iter().map(|b| b.betti).sum();
    let certified = reports.iter().all(|b| b.certified);
    Ok((c.betti(0)?, total, certified))
}

/// Certified Betti numbers of a sector, degree by degree.
pub fn sector_bettis(w: &Window, degrees: impl IntoIterator<Item = i64>) -> Result<Vec<BettiReport>> {
    let c = Complex::new(w, DifferentialKind::for_flavor(w.flavor))?;
    degrees.into_iter().map(|deg| c.betti(deg)).collect()
}

pub fn l_degree(p: Parameters) -> i64 {
    p.n() as i64 - p.m() as i64 - 1
}

pub fn t_degree(p: Parameters) -> i64 {
    2 * (p.n() as i64 - p.m() as i64) - 3
}

fn t_nonzero(p: Parameters) -> bool {
    (p.n() - p.m()) % 2 == 1
}

/// Expected cone Betti number in degree `k`.
pub fn expected_cone_betti(p: Parameters, k: i64) -> usize {
    (k == l_degree(p)) as usize + (t_nonzero(p) && k == t_degree(p)) as usize
}

/// Cone Betti numbers over the degrees carrying the predicted classes, and
/// the class checks for L, T and D.
pub fn cone_checks(p: Parameters) -> Result<(Vec<BettiReport>, Vec<Check>)> {
    let (kl, kt) = (l_degree(p), t_degree(p));
    let top = if t_nonzero(p) { kt } else { kl + 1 };
    let w = Window::covering(p, Flavor::A, Sector::All, kl - 2..=top + 1)?;
    let cone = ConeComplex::new(&w)?;
    let reports: Vec<BettiReport> = (kl - 1..=top).map(|k| cone.betti(k)).collect::<Result<_>>()?;
    let mut checks = Vec::new();
    let nontrivial = CycleClass::NontrivialInWindow { certified: true };
    let zero_bar = FormalSum::zero(p, Flavor::Abar);
    let l = named_sum(Named::L, p, Flavor::A)?;
    if p.n() % 2 == 0 {
        let deg = Named::D.degree(p);
        let wd = Window::covering(p, Flavor::A, Sector::All, deg - 1..=deg + 1)?;
        let full = Complex::new(&wd, DifferentialKind::Full)?;
        let bar = Complex::new(&wd.with_flavor(Flavor::Abar)?, DifferentialKind::SplitOnly)?;
        let d_bar = named_sum(Named::D, p, Flavor::Abar)?;
        checks.push(Check::new(format!("D nontrivial in Abar at {p}"), bar.cycle_class(&d_bar)? == nontrivial));
        checks.push(Check::new(
            format!("D a boundary in A at {p}"),
            full.cycle_class(&named_sum(Named::D, p, Flavor::A)?)? == CycleClass::Boundary,
        ));
        let class = ConeElement::new(d_bar, l.neg())?;
        checks.push(Check::new(format!("(D, −L) nontrivial in the cone at {p}"), cone.cycle_class(&class)? == nontrivial));
    } else {
        let class = ConeElement::new(zero_bar.clone(), l)?;
        checks.push(Check::new(format!("L nontrivial in the cone at {p}"), cone.cycle_class(&class)? == nontrivial));
    }
    if t_nonzero(p) {
        let class = ConeElement::new(zero_bar, named_sum(Named::T, p, Flavor::A)?)?;
        checks.push(Check::new(format!("T nontrivial in the cone at {p}"), cone.cycle_class(&class)? == nontrivial));
    }
    Ok((reports, checks))
}

/// A seeded random relabeling of `g`.
pub fn random_relabeling(g: &HairyGraph, rng: &mut impl Rng) -> Relabeling {
    let mut r = Relabeling::identity(g);
    r.vertex_perm.shuffle(rng);
    r.hair_perm.shuffle(rng);
    r.edge_perm.shuffle(rng);
    for b in r.reversed.iter_mut() {
        *b = rng.gen_bool(0.5);
    }
    r
}

/// Fast and brute-force canonical forms agree (graph and sign) on every
/// basis graph of the window and on a random relabeled copy of each.
pub fn canonical_oracle(w: &Window, seed: u64) -> Result<Check> {
    let gs = basis_graphs(w)?;
    let p = w.params;
    let copies: Vec<(HairyGraph, Sign)> = {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        gs.iter()
            .map(|g| {
                let r = random_relabeling(g, &mut rng);
                Ok((r.apply(g)?, Sign::from_i32(r.orientation_sign(g, p)?)))
            })
            .collect::<Result<_>>()?
    };
    let bad: Vec<String> = gs
        .par_iter()
        .zip(copies.par_iter())
        .map(|(g, (h, s))| {
            let fast_g = canonicalize(g, p)?;
            let fast_h = canonicalize(h, p)?;
            let ok = fast_g == canonicalize_brute_force(g, p)?
                && fast_h == canonicalize_brute_force(h, p)?
                && fast_h.graph == *g
                && fast_g.graph == *g
                && fast_h.sign == fast_g.sign * *s;
            Ok((!ok).then(|| g.to_string()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut c = Check::new(format!("canonical = brute force at {p}"), bad.is_empty())
        .with(format!("{}: {} graphs and {} relabeled copies", w.describe(), gs.len(), gs.len()));
    c.detail.extend(bad.into_iter().take(5));
    Ok(c)
}

/// Sparse exact rank against dense rational elimination on seeded random
/// sparse integer matrices.
pub fn rank_oracle(count: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for i in 0..count {
        let (rows, cols) = (rng.gen_range(1..=14), rng.gen_range(1..=14));
        let density = rng.gen_range(0.1..0.6);
        let vectors: Vec<_> = (0..rows)
            .map(|_| {
                let mut row = Vec::new();
                for j in 0..cols {
                    if rng.gen_bool(density) {
                        row.push((j, q(rng.gen_range(-4..=4))));
                    }
                }
                primitive(row)
            })
            .collect();
        let (a, b) = (rank(&vectors), dense_rank(&to_dense(&vectors, cols)));
        if a != b {
            bad.push(format!("matrix {i}: sparse {a}, dense {b}"));
        }
    }
    let mut c = Check::new("sparse rank = dense rank", bad.is_empty()).with(format!("{count} matrices, seed {seed}"));
    c.detail.extend(bad);
    c
}

/// One acceptance criterion and the checks that decide it.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    /// Wall time; left out of serialized reports so they are reproducible.
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && all_passed(&self.checks)
    }
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "d² = 0 sweep"),
    (2, "named identities"),
    (3, "parity table"),
    (4, "degree formula"),
    (5, "Φ verification"),
    (6, "L∞ relations"),
    (7, "Maurer–Cartan and twist"),
    (8, "H_0 detection"),
    (9, "U^t sector"),
    (10, "mapping cone"),
    (11, "oracle equivalence"),
    (12, "W_0 acyclicity"),
];

/// Grid for the degree-0 tree check.
pub const TREE_GRID: [(u32, u32); 6] = [(3, 7), (3, 6), (2, 5), (2, 6), (3, 8), (4, 7)];

pub const ACCEPTANCE_SEED: u64 = 20_240_517;

fn betti_line(b: &BettiReport) -> String {
    format!(
        "degree {}: dim {}, betti {}{}",
        b.degree,
        b.dim,
        b.betti,
        if b.certified { "" } else { " (uncertified)" }
    )
}

/// Run one criterion on the acceptance windows.
pub fn run_criterion(id: u8) -> Result<CriterionReport> {
    let title = CRITERIA.iter().find(|c| c.0 == id).map(|c| c.1).ok_or_else(|| {
        crate::error::HgcError::UnknownName(format!("criterion {id}"))
    })?;
    let start = std::time::Instant::now();
    let grid = small_grid();
    let mut checks = Vec::new();
    match id {
        1 => {
            for &p in &grid {
                for f in [Flavor::Abar, Flavor::A, Flavor::Aprime] {
                    let c = d_squared(&Window::new(p, f, Sector::All, 5, 5)?)?;
                    checks.push(Check { name: format!("{} at {p}, {}", c.name, f.name()), ..c });
                }
            }
        }
        2 => {
            for &p in &grid {
                checks.extend(named_identities(p)?);
            }
        }
        3 => {
            let cells = parity_table(&grid)?;
            let good = cells.iter().filter(|c| c.matches()).count();
            let mut c = Check::new("parity cells", good == 24 && cells.len() == 24)
                .with(format!("{good}/{} cells match", cells.len()));
            for cell in cells.iter().filter(|c| !c.matches()) {
                c.detail.push(format!("{} at ({},{})", cell.name, cell.m, cell.n));
            }
            checks.push(c);
        }
        4 => {
            let mut points = grid.clone();
            points.push(Parameters::new(4, 9)?);
            checks.extend(degree_checks(&points));
        }
        5 => {
            for &(m, n) in &[(2, 5), (3, 6)] {
                checks.extend(phi_checks(Parameters::new(m, n)?, 4, 4)?);
            }
        }
        6 => {
            for &p in &grid {
                checks.extend(linfty_arity2(p, 2, 3)?);
                checks.push(linfty_arity3(p, 3, 4, 20, ACCEPTANCE_SEED)?);
            }
        }
        7 => checks.extend(mc_checks(4, 4)?),
        8 => {
            for &(m, n) in &TREE_GRID {
                let p = Parameters::new(m, n)?;
                let (b0, total, certified) = tree_h0(p)?;
                let want = usize::from((m, n) == (3, 7) || (m, n) == (3, 6));
                checks.push(
                    Check::new(format!("tree H_0 = {want} at {p}"), b0.certified && b0.betti == want)
                        .with(betti_line(&b0)),
                );
                checks.push(
                    Check::new(format!("dim H_≤0 ≤ 1 at {p}"), certified && total <= 1)
                        .with(format!("total {total}, certified {certified}")),
                );
            }
        }
        9 => {
            for &(m, n) in &[(2, 5), (2, 6)] {
                let p = Parameters::new(m, n)?;
                let top = t_degree(p) + 1;
                let w = Window::covering(p, Flavor::Aprime, Sector::UT, 0..=top)?;
                let reports = sector_bettis(&w, 0..=t_degree(p))?;
                let mut want: Vec<i64> = vec![l_degree(p)];
                if t_nonzero(p) {
                    want.push(t_degree(p));
                }
                let got: Vec<i64> = reports.iter().filter(|b| b.certified && b.betti > 0).map(|b| b.degree).collect();
                let ones = reports.iter().filter(|b| b.betti > 0).all(|b| b.betti == 1);
                let all_certified = want.iter().all(|&k| reports.iter().any(|b| b.degree == k && b.certified));
                let mut c = Check::new(format!("U^t classes at {p}"), got == want && ones && all_certified)
                    .with(format!("nonzero at {got:?}, expected {want:?}"));
                c.detail.extend(reports.iter().map(betti_line));
                checks.push(c);
            }
        }
        10 => {
            for &p in &grid {
                let (reports, classes) = cone_checks(p)?;
                let certified: Vec<&BettiReport> = reports.iter().filter(|b| b.certified).collect();
                let ok = certified.iter().all(|b| b.betti == expected_cone_betti(p, b.degree))
                    && certified.iter().any(|b| b.degree == l_degree(p));
                let mut c = Check::new(format!("cone Betti numbers at {p}"), ok);
                c.detail.extend(reports.iter().map(betti_line));
                checks.push(c);
                checks.extend(classes);
            }
        }
        11 => {
            for &p in &grid {
                checks.push(canonical_oracle(&Window::new(p, Flavor::A, Sector::All, 4, 4)?, ACCEPTANCE_SEED)?);
            }
            checks.push(rank_oracle(50, ACCEPTANCE_SEED));
        }
        12 => {
            for &p in &grid {
                let w = Window::new(p, Flavor::A, Sector::W0, 5, 5)?;
                let c = Complex::new(&w, DifferentialKind::Full)?;
                let reports = c.bettis()?;
                let certified: Vec<&BettiReport> = reports.iter().filter(|b| b.certified).collect();
                let ok = certified.iter().all(|b| b.betti == 0) && certified.iter().any(|b| b.dim > 0);
                let mut check = Check::new(format!("H(W_0) = 0 at {p}"), ok)
                    .with(format!("{} certified degrees", certified.len()));
                check.detail.extend(reports.iter().map(betti_line));
                checks.push(check);
            }
        }
        _ => unreachable!(),
    }
    Ok(CriterionReport { id, title, checks, seconds: start.elapsed().as_secs_f64() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_identities_hold() {
        for p in small_grid() {
            for c in named_identities(p).unwrap() {
                assert!(c.passed, "{}", c.name);
            }
        }
    }

    #[test]
    fn parity_cells() {
        let cells = parity_table(&small_grid()).unwrap();
        assert_eq!(cells.len(), 24);
        assert!(cells.iter().all(|c| c.matches()));
    }

    #[test]
    fn small_sweeps() {
        let p = Parameters::new(2, 5).unwrap();
        let w = Window::new(p, Flavor::A, Sector::All, 2, 3).unwrap();
        assert!(d_squared(&w).unwrap().passed);
        assert!(canonical_oracle(&w, 1).unwrap().passed);
        assert!(rank_oracle(10, 3).passed);
        assert!(all_passed(&phi_checks(p, 2, 3).unwrap()));
    }

    #[test]
    fn expected_cone_classes() {
        let p = Parameters::new(2, 5).unwrap();
        assert_eq!(expected_cone_betti(p, 2), 1);
        assert_eq!(expected_cone_betti(p, 3), 1);
        assert_eq!(expected_cone_betti(p, 4), 0);
    }
}
