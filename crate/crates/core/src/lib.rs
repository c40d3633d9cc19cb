//! Exact computations in hairy graph complexes.

pub mod basis;
pub mod canon;
pub mod complexes;
pub mod error;
pub mod formal;
pub mod graph;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod linfty;
pub mod named;
pub mod phimap;
pub mod verify;

pub use canon::{canonicalize, canonicalize_brute_force, Sign, SignedCanonicalGraph};
pub use error::{HgcError, Result};
pub use graph::{Decoration, End, Flavor, HairyGraph, Parameters, Relabeling, Validity};
pub use complexes::{d, delta_join, delta_split, differential, ConeElement, DifferentialKind};
pub use formal::{FormalSum, Q};
pub use basis::{enumerate, BasisSlice, Sector, Window};
pub use linfty::{bracket, ell, mc_check, twist_differential, McElement};
pub use named::{named_graph, named_sum, Named};
pub use phimap::{phi, phi_inverse, PrimedElement};
pub use homology::{betti, cone_betti, rank_exact, BettiReport, Complex, ConeComplex, CycleClass, DifferentialMatrix};
