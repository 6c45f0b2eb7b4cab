use proptest::prelude::*;

use liechains::algebra::{quasi_ideal_grid, quasi_ideal_lines};
use liechains::catalog;
use liechains::io::AlgebraFile;
use liechains::lattice::{LatticeBudget, SubalgebraLattice};
use liechains::structural::modular_by_classification;
use liechains::{FieldSpec, LieAlgebra, Scalar, Subspace};

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::quad(2).unwrap()),
        Just(FieldSpec::quad(-3).unwrap()),
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(5).unwrap()),
        Just(FieldSpec::prime(7).unwrap()),
    ]
}

fn scalar(f: FieldSpec) -> impl Strategy<Value = Scalar> {
    (-9i64..=9, -9i64..=9, 1i64..=5).prop_map(move |(a, b, c)| {
        let c = f.from_int(c);
        let c = if c.is_zero() { f.one() } else { c };
        let base = &f.from_int(a) / &c;
        match f.sqrt_generator() {
            Some(s) => &base + &(&f.from_int(b) * &s),
            None => base,
        }
    })
}

fn small_gf() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::prime(2).unwrap()), Just(FieldSpec::prime(3).unwrap())]
}

fn random_solvable() -> impl Strategy<Value = LieAlgebra> {
    (small_gf(), 1usize..=4, any::<u64>()).prop_map(|(f, n, seed)| catalog::random_solvable(f, n, seed).unwrap())
}

fn vectors(f: FieldSpec, n: usize, k: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=k)
        .prop_map(move |rows| rows.into_iter().map(|r| r.into_iter().map(|x| f.from_int(x)).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, a, b, c) in field().prop_flat_map(|f| (Just(f), scalar(f), scalar(f), scalar(f)))) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(f.parse_scalar(&a.to_literal()).unwrap(), a);
    }

    #[test]
    fn subspace_dimension_law((f, a, b) in field().prop_flat_map(|f| (Just(f), vectors(f, 4, 3), vectors(f, 4, 3)))) {
        let a = Subspace::span(f, 4, a);
        let b = Subspace::span(f, 4, b);
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(s.contains(&a).unwrap() && a.contains(&i).unwrap());
    }

    #[test]
    fn solvable_minmax_equals_chief_length(alg in random_solvable()) {
        let lat = SubalgebraLattice::enumerate(&alg, &LatticeBudget::default()).unwrap();
        let chief = lat.chief_series(false);
        let short = lat.minmax();
        prop_assert_eq!(short.length(), chief.length());
        let (mut a, mut b) = (chief.codims(), short.codims());
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        // the chief length does not depend on tie breaking
        prop_assert_eq!(lat.chief_series(true).length(), chief.length());
    }

    #[test]
    fn join_is_closure_of_sum((alg, i, j) in (random_solvable(), any::<prop::sample::Index>(), any::<prop::sample::Index>())) {
        let lat = SubalgebraLattice::enumerate(&alg, &LatticeBudget::default()).unwrap();
        let (i, j) = (i.index(lat.len()), j.index(lat.len()));
        let sum = lat.node(i).sum(lat.node(j)).unwrap();
        prop_assert_eq!(lat.node(lat.join(i, j)), &alg.closure(&sum));
        prop_assert_eq!(lat.node(lat.meet(i, j)), &lat.node(i).intersect(lat.node(j)).unwrap());
    }

    #[test]
    fn chain_bounds(alg in random_solvable()) {
        let lat = SubalgebraLattice::enumerate(&alg, &LatticeBudget::default()).unwrap();
        let (l, q, m) = (lat.ell(), lat.qil().length(), lat.minmax().length());
        prop_assert!(l <= m);
        prop_assert!(l <= q && q <= l + 2);
    }

    #[test]
    fn file_round_trip(alg in random_solvable()) {
        let text = AlgebraFile::new(alg.clone()).to_json_string();
        let back = AlgebraFile::parse(&text).unwrap();
        prop_assert_eq!(&back.algebra, &alg);
        prop_assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn cross_products_satisfy_jacobi(a in -6i64..=6, b in -6i64..=6) {
        prop_assume!(a != 0 && b != 0);
        let f = FieldSpec::Rationals;
        let alg = catalog::cross_product(f, &f.from_int(a), &f.from_int(b)).unwrap();
        prop_assert!(alg.validate().is_ok());
        prop_assert!(alg.is_perfect());
    }

    #[test]
    fn quasi_ideal_engines_agree(alg in (Just(FieldSpec::prime(3).unwrap()), 1usize..=4, any::<u64>())
        .prop_map(|(f, n, s)| catalog::random_solvable(f, n, s).unwrap()))
    {
        let lat = SubalgebraLattice::enumerate(&alg, &LatticeBudget::default()).unwrap();
        for (k, s) in lat.nodes().iter().enumerate() {
            let lines = quasi_ideal_lines(&alg, s).unwrap();
            prop_assert_eq!(lines, quasi_ideal_grid(&alg, s));
            prop_assert_eq!(lines, lat.quasi_ideal_flags()[k]);
        }
    }

    #[test]
    fn modular_classification_matches_lattice(p in prop_oneof![Just(5u32), Just(7u32)], n in 1usize..=3, sl in any::<bool>()) {
        let f = FieldSpec::prime(p).unwrap();
        let alg = if sl { catalog::sl2(f).unwrap() } else { catalog::almost_abelian(f, n).unwrap() };
        let lat = SubalgebraLattice::enumerate(&alg, &LatticeBudget::default()).unwrap();
        for (k, s) in lat.nodes().iter().enumerate() {
            prop_assert_eq!(modular_by_classification(&alg, s).unwrap().modular, lat.modular_flags()[k]);
        }
    }
}
