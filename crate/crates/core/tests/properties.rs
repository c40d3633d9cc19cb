use std::sync::OnceLock;

use hgc_core::formal::q_frac;
use hgc_core::io::{sum_from_json, sum_to_json};
use hgc_core::verify::random_relabeling;
use hgc_core::{
    bracket, canonicalize, d, enumerate, mc_check, named_sum, phi, FormalSum, Flavor, HairyGraph, Named, Parameters,
    PrimedElement, Sector, Sign, Window, Q,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Fixture {
    p: Parameters,
    graphs: Vec<HairyGraph>,
}

fn basis(p: Parameters, flavor: Flavor, sector: Sector, v: usize, h: usize) -> Vec<HairyGraph> {
    let w = Window::new(p, flavor, sector, v, h).unwrap();
    enumerate(&w).unwrap().into_values().flat_map(|s| s.graphs).collect()
}

fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        [(2, 5), (2, 6), (3, 6), (3, 7)]
            .into_iter()
            .map(|(m, n)| {
                let p = Parameters::new(m, n).unwrap();
                Fixture { p, graphs: basis(p, Flavor::A, Sector::All, 3, 4) }
            })
            .collect()
    })
}

fn primed() -> &'static [HairyGraph] {
    static F: OnceLock<Vec<HairyGraph>> = OnceLock::new();
    F.get_or_init(|| basis(Parameters::new(2, 5).unwrap(), Flavor::Aprime, Sector::Primed, 3, 3))
}

fn coeff() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| q_frac(a, b))
}

/// A random combination of up to four basis graphs at one grid point.
fn combination(f: &Fixture, picks: &[(usize, Q)]) -> FormalSum {
    let mut x = FormalSum::zero(f.p, Flavor::A);
    for (i, c) in picks {
        let g = &f.graphs[i % f.graphs.len()];
        x.add_assign(&FormalSum::inject(g, f.p, Flavor::A).unwrap().scale(c)).unwrap();
    }
    x
}

fn picks() -> impl Strategy<Value = Vec<(usize, Q)>> {
    prop::collection::vec((any::<usize>(), coeff()), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels(point in 0usize..4, idx in any::<usize>(), seed in any::<u64>()) {
        let f = &fixtures()[point];
        let g = &f.graphs[idx % f.graphs.len()];
        let r = random_relabeling(g, &mut ChaCha8Rng::seed_from_u64(seed));
        let h = r.apply(g).unwrap();
        let (a, b) = (canonicalize(g, f.p).unwrap(), canonicalize(&h, f.p).unwrap());
        prop_assert_eq!(&a.graph, &b.graph);
        // the copy carries the orientation sign of the relabeling
        prop_assert_eq!(b.sign, a.sign * Sign::from_i32(r.orientation_sign(g, f.p).unwrap()));
    }

    #[test]
    fn differential_is_linear(point in 0usize..4, xs in picks(), ys in picks(), a in coeff(), b in coeff()) {
        let f = &fixtures()[point];
        let (x, y) = (combination(f, &xs), combination(f, &ys));
        let lhs = d(&x.scale(&a).add(&y.scale(&b)).unwrap());
        let rhs = d(&x).scale(&a).add(&d(&y).scale(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_on_combinations(point in 0usize..4, xs in picks()) {
        let f = &fixtures()[point];
        prop_assert!(d(&d(&combination(f, &xs))).is_zero());
    }

    #[test]
    fn bracket_graded_symmetry(point in 0usize..4, i in any::<usize>(), j in any::<usize>(), a in coeff()) {
        let f = &fixtures()[point];
        let x = combination(f, &[(i, a)]);
        let y = combination(f, &[(j, Q::from_integer(1.into()))]);
        let (dx, dy) = (x.degree().unwrap().unwrap_or(0), y.degree().unwrap().unwrap_or(0));
        let yx = bracket(&y, &x).unwrap();
        let expected = if dx * dy % 2 != 0 { yx.neg() } else { yx };
        prop_assert_eq!(bracket(&x, &y).unwrap(), expected);
    }

    #[test]
    fn mc_is_invariant_under_scaling(a in coeff()) {
        let lw = named_sum(Named::Ldoubleprime, Parameters::new(3, 7).unwrap(), Flavor::A).unwrap();
        let tw = named_sum(Named::Tomega, Parameters::new(3, 6).unwrap(), Flavor::A).unwrap();
        prop_assert!(mc_check(&lw.scale(&a)).unwrap());
        prop_assert!(mc_check(&tw.scale(&a)).unwrap());
    }

    #[test]
    fn json_round_trip(point in 0usize..4, xs in picks()) {
        let x = combination(&fixtures()[point], &xs);
        prop_assert_eq!(sum_from_json(&sum_to_json(&x)).unwrap(), x);
    }

    #[test]
    fn phi_is_linear(i in any::<usize>(), j in any::<usize>(), a in coeff(), b in coeff()) {
        let p = Parameters::new(2, 5).unwrap();
        let gs = primed();
        let x = FormalSum::inject(&gs[i % gs.len()], p, Flavor::Aprime).unwrap();
        let y = FormalSum::inject(&gs[j % gs.len()], p, Flavor::Aprime).unwrap();
        let combo = PrimedElement::new(x.scale(&a).add(&y.scale(&b)).unwrap()).unwrap();
        let separate = phi(&PrimedElement::new(x).unwrap()).unwrap().value().scale(&a)
            .add(&phi(&PrimedElement::new(y).unwrap()).unwrap().value().scale(&b)).unwrap();
        let together = phi(&combo).unwrap();
        prop_assert_eq!(together.value(), &separate);
    }
}
