use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superhoch::cohomology::{cohomology_capped, is_coboundary, random_cocycle};
use superhoch::deformation::{apply_isomorphism, check_deformation};
use superhoch::exactfield::{rank_and_kernel, solve};
use superhoch::format::{from_json, to_json};
use superhoch::{
    delta, delta_matrix, make_named, self_module, CochainFile, CochainShape, Coeff, Deformation,
    DenseMatrix, Field, FormalIsomorphism, Parity, ProductContext, Scalar, SuperAlgebra,
};

const Q: Field = Field::Rational;
const NAMES: [&str; 6] = [
    "ground",
    "dual_even",
    "dual_odd",
    "clifford1",
    "matrix(1|1)",
    "square_zero(dual_odd)",
];

fn algebra(k: usize) -> SuperAlgebra {
    make_named(NAMES[k % NAMES.len()], Q).unwrap()
}

fn parity(bit: bool) -> Parity {
    Parity::new(bit as usize)
}

fn small_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Q),
        Just(Field::Prime(2)),
        Just(Field::Prime(7)),
        Just(Field::Prime(101))
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(field in small_field(), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let (x, y, z) = (field.from_i64(a), field.from_i64(b), field.from_i64(c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        if let Some(inv) = x.inv() {
            prop_assert!((&x * &inv).is_one());
        } else {
            prop_assert!(x.is_zero());
        }
        let text = x.to_string();
        prop_assert_eq!(field.parse(&text).unwrap(), x);
    }

    #[test]
    fn kernel_vectors_are_annihilated(
        field in small_field(),
        rows in 1usize..5,
        cols in 1usize..6,
        entries in proptest::collection::vec(-3i64..=3, 30),
    ) {
        let data: Vec<Vec<Scalar>> = (0..rows)
            .map(|r| (0..cols).map(|c| field.from_i64(entries[r * cols + c])).collect())
            .collect();
        let m = DenseMatrix::from_rows(field, data).unwrap();
        let (rank, kernel) = rank_and_kernel(&m);
        prop_assert_eq!(rank + kernel.len(), cols);
        for k in &kernel {
            prop_assert!(m.mul_vec(k).unwrap().iter().all(Scalar::is_zero));
        }
        // Every image vector is solvable, and the solution reproduces it.
        let x: Vec<Scalar> = (0..cols).map(|c| field.from_i64(entries[c] + 1)).collect();
        let b = m.mul_vec(&x).unwrap();
        let y = solve(&m, &b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn delta_squares_to_zero(k in 0usize..6, arity in 0usize..4, odd in any::<bool>(), seed in any::<u64>()) {
        let a = algebra(k);
        let own = self_module(&a);
        let shape = CochainShape::new(Q, a.parities(), a.parities(), arity, parity(odd));
        let f = superhoch::Cochain::random(shape, &mut ChaCha8Rng::seed_from_u64(seed));
        let df = delta(&a, &own, &f).unwrap();
        prop_assert_eq!(df.parity(), f.parity());
        prop_assert!(delta(&a, &own, &df).unwrap().is_zero());
    }

    #[test]
    fn delta_matrix_agrees_with_delta(k in 0usize..6, arity in 0usize..3, odd in any::<bool>(), seed in any::<u64>()) {
        let a = algebra(k);
        let own = self_module(&a);
        let shape = CochainShape::new(Q, a.parities(), a.parities(), arity, parity(odd));
        let f = superhoch::Cochain::random(shape, &mut ChaCha8Rng::seed_from_u64(seed));
        let m = delta_matrix(&a, &own, arity, parity(odd));
        prop_assert_eq!(m.mul_vec(f.coeffs()).unwrap(), delta(&a, &own, &f).unwrap().coeffs().to_vec());
    }

    #[test]
    fn coboundaries_are_recognised(k in 0usize..6, arity in 0usize..3, odd in any::<bool>(), seed in any::<u64>()) {
        let a = algebra(k);
        let own = self_module(&a);
        let shape = CochainShape::new(Q, a.parities(), a.parities(), arity, parity(odd));
        let g = superhoch::Cochain::random(shape, &mut ChaCha8Rng::seed_from_u64(seed));
        let dg = delta(&a, &own, &g).unwrap();
        let w = is_coboundary(&a, &own, &dg).unwrap().expect("delta g bounds");
        prop_assert_eq!(delta(&a, &own, &w).unwrap(), dg);
    }

    #[test]
    fn cohomology_dimensions_add_up(k in 0usize..6, n in 0usize..3, odd in any::<bool>()) {
        let a = algebra(k);
        let own = self_module(&a);
        let g = cohomology_capped(&a, &own, n, parity(odd), 4).unwrap();
        let d = &g.dims;
        prop_assert!(d.dim_b <= d.dim_z && d.dim_z <= d.dim_c);
        prop_assert_eq!(d.dim_h, d.dim_z - d.dim_b);
        for r in &g.representatives {
            prop_assert!(delta(&a, &own, r).unwrap().is_zero());
            if n > 0 {
                prop_assert!(is_coboundary(&a, &own, r).unwrap().is_none());
            }
        }
    }

    #[test]
    fn cup_is_associative_and_bilinear(k in 0usize..6, seed in any::<u64>(), arities in (0usize..3, 0usize..2, 0usize..2)) {
        let a = algebra(k);
        let ctx = ProductContext::new(a, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = Coeff::Algebra;
        let mut pick = |n: usize, bit: u64| ctx.random(n, parity(seed >> bit & 1 == 1), alg, &mut rng).unwrap();
        let (f, g, h) = (pick(arities.0, 1), pick(arities.1, 2), pick(arities.2, 3));
        let g2 = pick(arities.1, 2);
        prop_assert_eq!(ctx.check_cup_associative(&f, &g, &h).unwrap(), None);
        let lhs = ctx.cup(&f, alg, &g.add(&g2).unwrap(), alg).unwrap();
        let rhs = ctx.cup(&f, alg, &g, alg).unwrap().add(&ctx.cup(&f, alg, &g2, alg).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_graded_antisymmetric(k in 0usize..6, seed in any::<u64>(), m in 0usize..3, n in 1usize..3) {
        let a = algebra(k);
        let ctx = ProductContext::new(a, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = ctx.random(m, parity(seed & 1 == 1), Coeff::Algebra, &mut rng).unwrap();
        let g = ctx.random(n, parity(seed & 2 == 2), Coeff::Algebra, &mut rng).unwrap();
        prop_assert_eq!(ctx.check_bracket_antisymmetry(&f, &g).unwrap(), None);
        prop_assert_eq!(ctx.check_delta_as_bracket(&f).unwrap(), None);
    }

    #[test]
    fn cochain_files_round_trip(k in 0usize..6, arity in 0usize..4, odd in any::<bool>(), seed in any::<u64>()) {
        let a = algebra(k);
        let shape = CochainShape::new(Q, a.parities(), a.parities(), arity, parity(odd));
        let f = superhoch::Cochain::random(shape, &mut ChaCha8Rng::seed_from_u64(seed));
        let text = to_json(&CochainFile::from_cochain(&f));
        let parsed: CochainFile = from_json(&text).unwrap();
        prop_assert_eq!(parsed.to_cochain(Q, a.parities(), a.parities()).unwrap(), f);
        prop_assert_eq!(to_json(&parsed), text);
    }

    #[test]
    fn isomorphisms_preserve_deformations(k in 0usize..6, seed in any::<u64>()) {
        let a = algebra(k);
        let own = self_module(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu1 = random_cocycle(&a, &own, 2, Parity::EVEN, &mut rng).unwrap();
        let d = Deformation::new(a.clone(), vec![mu1]).unwrap();
        prop_assert!(check_deformation(&d).is_valid());
        let maps = CochainShape::new(Q, a.parities(), a.parities(), 1, Parity::EVEN);
        let psi = FormalIsomorphism::new(&a, vec![superhoch::Cochain::random(maps, &mut rng)]).unwrap();
        let moved = apply_isomorphism(&psi, &d).unwrap();
        prop_assert!(check_deformation(&moved).is_valid());
        let back = apply_isomorphism(&psi.inverse(&a, 1).unwrap(), &moved).unwrap();
        prop_assert_eq!(back, d);
    }
}
