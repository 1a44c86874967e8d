use linkatlas_core::curvature::{eta_fit, ricci, Matrix, MetricAlgebra};
use linkatlas_core::eta::{einstein_scale, homothety, EtaConstants, HomothetyScale};
use linkatlas_core::links::{
    bp_link, classify_sign, count_monomials, solve_weights, BpExponents, MonomialMatrix, SignClass,
    WeightSystem,
};
use linkatlas_core::milnor_orlik::betti;
use linkatlas_core::spheres::brieskorn_signature;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn exponents(len: std::ops::RangeInclusive<usize>, max: u64) -> impl Strategy<Value = Vec<u64>> {
    len.prop_flat_map(move |n| prop::collection::vec(2..=max, n))
}

fn positive_rational() -> impl Strategy<Value = BigRational> {
    (1i64..60, 1i64..60).prop_map(|(p, d)| q(p, d))
}

proptest! {
    #[test]
    fn sign_agrees_with_reciprocal_sum(a in exponents(2..=6, 50)) {
        let a = BpExponents::new(a).unwrap();
        let sign = classify_sign(&bp_link(&a).unwrap());
        let expected = match a.reciprocal_sum().cmp(&BigRational::one()) {
            std::cmp::Ordering::Greater => SignClass::Positive,
            std::cmp::Ordering::Equal => SignClass::Null,
            std::cmp::Ordering::Less => SignClass::Negative,
        };
        prop_assert_eq!(sign, expected);
    }

    #[test]
    fn bp_weights_are_primitive(a in exponents(2..=6, 50)) {
        let ws = bp_link(&BpExponents::new(a).unwrap()).unwrap();
        let g = ws.weights().iter().fold(BigUint::zero(), |acc, w| acc.gcd(w));
        prop_assert!(g.is_one());
    }

    #[test]
    fn solving_diagonal_rows_reproduces_bp_link(a in exponents(2..=6, 40)) {
        let a = BpExponents::new(a).unwrap();
        let solved = solve_weights(&MonomialMatrix::brieskorn_pham(&a)).unwrap();
        prop_assert_eq!(solved, bp_link(&a).unwrap());
    }

    #[test]
    fn invariants_ignore_permutation(
        a in exponents(3..=4, 14),
        rot in 0usize..4,
    ) {
        let mut b = a.clone();
        let len = b.len();
        b.rotate_left(rot % len);
        b.reverse();
        let (a, b) = (BpExponents::new(a).unwrap(), BpExponents::new(b).unwrap());
        let (wa, wb) = (bp_link(&a).unwrap(), bp_link(&b).unwrap());
        prop_assert_eq!(&wa, &wb);
        prop_assert_eq!(classify_sign(&wa), classify_sign(&wb));
        prop_assert_eq!(betti(&wa).unwrap(), betti(&wb).unwrap());
        if a.nvars() == 3 {
            prop_assert_eq!(
                brieskorn_signature(&a).unwrap(),
                brieskorn_signature(&b).unwrap()
            );
        }
    }

    #[test]
    fn monomial_count_ignores_weight_order(w in prop::collection::vec(1u64..8, 2..5), k in 1u64..5) {
        let d: u64 = w.iter().product::<u64>() * k;
        let mut rev = w.clone();
        rev.reverse();
        let a = WeightSystem::new(w.clone(), d).unwrap();
        let b = WeightSystem::new(rev, d).unwrap();
        prop_assert_eq!(count_monomials(&a).unwrap(), count_monomials(&b).unwrap());
    }

    #[test]
    fn signature_lattice_partition(a in exponents(3..=3, 15)) {
        let a = BpExponents::new(a).unwrap();
        let s = brieskorn_signature(&a).unwrap();
        let total: u128 = a.exponents().iter().map(|&e| (e - 1) as u128).product();
        prop_assert_eq!(s.positive_count + s.negative_count + s.integral_count, total);
        prop_assert!(s.signature.unsigned_abs() <= total);
    }

    #[test]
    fn homothety_group_law(n in 1u32..8, lambda in -40i64..40, a in positive_rational(), b in positive_rational()) {
        let c = EtaConstants::from_lambda(n, q(lambda, 3)).unwrap();
        let sa = HomothetyScale::new(a.clone()).unwrap();
        let sb = HomothetyScale::new(b.clone()).unwrap();
        let two_step = homothety(&homothety(&c, &sa), &sb);
        let one_step = homothety(&c, &HomothetyScale::new(a.clone() * b).unwrap());
        prop_assert_eq!(&two_step, &one_step);
        prop_assert_eq!(two_step.lambda() + two_step.nu(), BigRational::from_integer((2 * n).into()));
        prop_assert_eq!(two_step.sign(), c.sign());
        let back = homothety(&homothety(&c, &sa), &HomothetyScale::new(a.recip()).unwrap());
        prop_assert_eq!(back, c);
    }

    #[test]
    fn einstein_scale_lands_on_einstein(n in 1u32..8, lambda in positive_rational()) {
        // λ = lambda - 2 covers (-2, ∞)
        let c = EtaConstants::from_lambda(n, lambda - BigRational::from_integer(2.into())).unwrap();
        let out = homothety(&c, &einstein_scale(&c).unwrap());
        prop_assert_eq!(out.lambda(), &BigRational::from_integer((2 * n).into()));
        prop_assert!(out.nu().is_zero());
    }

    /// Ricci of the homothetic metric, `Ric_g - 2(a-1) g + (a-1)(2n+2+2na) η⊗η`,
    /// rewritten in the basis `(g', η'⊗η')` with `g = (g' - a(a-1)η⊗η)/a` and
    /// `η⊗η = η'⊗η'/a²`.
    #[test]
    fn tanno_ricci_relation(n in 1u32..8, lambda in -40i64..40, a in positive_rational()) {
        let c = EtaConstants::from_lambda(n, q(lambda, 7)).unwrap();
        let one = BigRational::one();
        let nn = BigRational::from_integer(BigInt::from(n));
        let two = BigRational::from_integer(2.into());
        let g_coeff = c.lambda() - &two * (&a - &one);
        let ee_coeff = c.nu()
            + (&a - &one) * (&two * &nn + &two + &two * &nn * &a);
        let lambda_prime = &g_coeff / &a;
        let nu_prime = (ee_coeff - &g_coeff * (&a - &one)) / (&a * &a);
        let out = homothety(&c, &HomothetyScale::new(a).unwrap());
        prop_assert_eq!(out.lambda(), &lambda_prime);
        prop_assert_eq!(out.nu(), &nu_prime);
    }

    #[test]
    fn ricci_is_symmetric_on_random_nilpotent_algebras(
        coeffs in prop::collection::vec(-3i64..=3, 6),
        diag in prop::collection::vec(1i64..5, 5),
        off in -1i64..=1,
    ) {
        // e0..e3 bracket into the central e4: 2-step nilpotent, Jacobi holds
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let brackets: Vec<_> = pairs
            .iter()
            .zip(&coeffs)
            .map(|(&(i, j), &c)| (i, j, 4, q(c, 1)))
            .collect();
        let mut rows: Vec<Vec<BigRational>> = (0..5)
            .map(|i| (0..5).map(|j| if i == j { q(diag[i] * 2, 1) } else { BigRational::zero() }).collect())
            .collect();
        rows[0][1] = q(off, 2);
        rows[1][0] = q(off, 2);
        let metric = Matrix::from_rows(rows).unwrap();
        let alg = MetricAlgebra::from_brackets(5, &brackets, metric, 4).unwrap();
        let ric = ricci(&alg).unwrap();
        prop_assert!(ric.is_symmetric());
    }

    #[test]
    fn berger_matches_homothety(p in 1i64..12, d in 1i64..12) {
        let a = q(p, d);
        let fit = eta_fit(&linkatlas_core::curvature::berger(a.clone()).unwrap()).unwrap();
        let expected = homothety(
            &EtaConstants::from_lambda(1, BigRational::from_integer(2.into())).unwrap(),
            &HomothetyScale::new(a).unwrap(),
        );
        prop_assert!(fit.residual.is_zero());
        prop_assert_eq!(&fit.lambda_fit, expected.lambda());
        prop_assert_eq!(&fit.nu_fit, expected.nu());
        prop_assert!(fit.k_contact_holds());
        prop_assert!(fit.lambda_fit > BigRational::from_integer((-2).into()));
    }
}
