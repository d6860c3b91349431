use gerstenhaber::bracket::{phi_star, tau_eval};
use gerstenhaber::cochain::{act, invariant_basis, is_in_h, is_invariant, koszul_dual_diff, proj_h, reynolds};
use gerstenhaber::io::{cochain_to_json, parse_cochain};
use gerstenhaber::verify::sample;
use gerstenhaber::{catalog, quantum_integer, BasisTable, BracketEngine, CycNum, Group};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cyc(coeffs: &[(i64, i64)], n: u32) -> CycNum {
    let mut out = CycNum::zero();
    for (k, &(a, b)) in coeffs.iter().enumerate() {
        out += &CycNum::from_frac(a, b).mul_ref(&CycNum::root_of_unity(k as i64, n));
    }
    out
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..20, 1i64..7), 1..6)
}

fn group(k: usize) -> Group {
    match k % 4 {
        0 => catalog::dihedral8(),
        1 => catalog::cyclic_diagonal(4, &[1, 3, 0]),
        2 => catalog::klein_diagonal(),
        _ => catalog::cyclic_diagonal(3, &[1, 1, 1]),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclotomic_field_axioms(a in coeffs(), b in coeffs(), c in coeffs(), n in prop::sample::select(vec![3u32, 4, 5, 8, 12])) {
        let (x, y, z) = (cyc(&a, n), cyc(&b, n), cyc(&c, n));
        prop_assert_eq!(x.mul_ref(&y).mul_ref(&z), x.mul_ref(&y.mul_ref(&z)));
        prop_assert_eq!(x.mul_ref(&y.add_ref(&z)), x.mul_ref(&y).add_ref(&x.mul_ref(&z)));
        prop_assert_eq!(x.mul_ref(&y), y.mul_ref(&x));
        if !x.is_zero() {
            prop_assert!(x.mul_ref(&x.inverse().unwrap()).is_one());
        }
        prop_assert_eq!(CycNum::parse(&x.to_string(), n).unwrap(), x);
    }

    #[test]
    fn quantum_integers_telescope(k in 0u32..12, j in 0i64..12, n in prop::sample::select(vec![2u32, 3, 4, 6])) {
        let e = CycNum::root_of_unity(j, n);
        let lhs = quantum_integer(k, &e).mul_ref(&CycNum::one().sub_ref(&e));
        prop_assert_eq!(lhs, CycNum::one().sub_ref(&e.pow(k)));
    }

    #[test]
    fn koszul_differential_squares_to_zero(seed in any::<u64>(), k in 0usize..4) {
        let g = group(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = (seed % g.dim() as u64) as usize;
        let a = sample::cochain(&g, p, 3, 3, &mut rng);
        prop_assert!(koszul_dual_diff(&g, &koszul_dual_diff(&g, &a)).is_zero());
    }

    #[test]
    fn proj_h_is_an_equivariant_idempotent(seed in any::<u64>(), k in 0usize..4) {
        let g = group(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = BasisTable::randomized(&g, &mut rng);
        let a = sample::cochain(&g, 2, 2, 3, &mut rng);
        let p = proj_h(&g, &table, &a);
        prop_assert!(is_in_h(&g, &table, &p));
        prop_assert_eq!(proj_h(&g, &table, &p), p.clone());
        prop_assert_eq!(proj_h(&g, &BasisTable::new(), &a), p.clone());
        let x = (seed % g.order() as u64) as usize;
        prop_assert_eq!(proj_h(&g, &table, &act(&g, x, &a)), act(&g, x, &p));
        prop_assert!(is_invariant(&g, &reynolds(&g, &a)));
    }

    #[test]
    fn phi_star_inverts_tau(seed in any::<u64>(), k in 0usize..4) {
        let g = group(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = BasisTable::randomized(&g, &mut rng);
        let p = 1 + (seed % 3) as usize;
        let a = sample::cochain(&g, p, 3, 2, &mut rng);
        let back = phi_star(g.dim(), p, |args| Ok(tau_eval(&g, &table, &a, args))).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn bracket_is_symmetric_invariant_and_basis_free(seed in any::<u64>(), k in 0usize..4) {
        let g = group(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = invariant_basis(&g, &BasisTable::new(), 2, 1).unwrap();
        let (Some(a), Some(b)) = (sample::combination(&g, &basis, 2, &mut rng), sample::combination(&g, &basis, 2, &mut rng)) else {
            return Ok(());
        };
        let e = BracketEngine::new(&g);
        let ab = e.bracket(&a, &b).unwrap();
        prop_assert_eq!(e.bracket(&b, &a).unwrap(), ab.clone());
        prop_assert!(is_invariant(&g, &ab));
        let other = BracketEngine::new(&g).with_table(BasisTable::randomized(&g, &mut rng));
        prop_assert_eq!(other.bracket(&a, &b).unwrap(), ab);
    }

    #[test]
    fn cochain_json_round_trips(seed in any::<u64>(), k in 0usize..4) {
        let g = group(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = 1 + (seed % 3) as usize;
        let a = sample::cochain(&g, p, 3, 3, &mut rng);
        let json = cochain_to_json(&g, &a).unwrap().to_string();
        prop_assert_eq!(parse_cochain(&g, &json).unwrap(), a);
    }
}
