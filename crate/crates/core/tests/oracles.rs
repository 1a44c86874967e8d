//! Independent oracles for the combinatorial invariants.
//!
//! The lattice oracle below sums `Σ i_j/a_j` as exact rationals over every
//! tuple `0 < i_j < a_j`. It shares no code with the residue arithmetic in
//! `spheres` and works for any number of variables, so it also checks the
//! Betti formula: for a Brieskorn-Pham link the middle Betti number is the
//! number of tuples with integral sum.

use std::collections::HashMap;

use linkatlas_core::links::{bp_link, count_monomials, BpExponents, WeightSystem};
use linkatlas_core::milnor_orlik::betti;
use linkatlas_core::spheres::{
    bp8_class, brieskorn_signature, casson, dim3_homology_sphere, signature_by_enumeration,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Default, PartialEq)]
struct LatticeCount {
    positive: u64,
    negative: u64,
    integral: u64,
}

fn lattice_oracle(a: &[u64]) -> LatticeCount {
    let mut out = LatticeCount::default();
    let two = BigRational::from_integer(BigInt::from(2));
    let one = BigRational::from_integer(BigInt::from(1));
    let mut idx = vec![1u64; a.len()];
    loop {
        let mut s = BigRational::zero();
        for (&i, &e) in idx.iter().zip(a) {
            s += BigRational::new(i.into(), e.into());
        }
        let s = &s - (&s / &two).floor() * &two;
        if s.is_integer() {
            out.integral += 1;
        } else if s < one {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        let mut j = 0;
        loop {
            if j == a.len() {
                return out;
            }
            idx[j] += 1;
            if idx[j] < a[j] {
                break;
            }
            idx[j] = 1;
            j += 1;
        }
    }
}

fn bp(a: &[u64]) -> BpExponents {
    BpExponents::new(a.to_vec()).unwrap()
}

fn betti_u64(a: &[u64]) -> u64 {
    betti(&bp_link(&bp(a)).unwrap())
        .unwrap()
        .middle_betti
        .to_u64()
        .unwrap()
}

#[test]
fn lattice_oracle_matches_both_signature_routes_on_coprime_triples() {
    for p in 2..=12u64 {
        for q in p + 1..=12 {
            for r in q + 1..=12 {
                if p.gcd(&q) != 1 || p.gcd(&r) != 1 || q.gcd(&r) != 1 {
                    continue;
                }
                let a = [p, q, r];
                let oracle = lattice_oracle(&a);
                let conv = brieskorn_signature(&bp(&a)).unwrap();
                let direct = signature_by_enumeration(&bp(&a)).unwrap();
                assert_eq!(conv, direct, "{a:?}");
                assert_eq!(conv.positive_count as u64, oracle.positive, "{a:?}");
                assert_eq!(conv.negative_count as u64, oracle.negative, "{a:?}");
                assert_eq!(conv.integral_count as u64, oracle.integral, "{a:?}");
                assert_eq!(conv.signature % 8, 0, "{a:?}");
            }
        }
    }
}

#[test]
fn lattice_oracle_matches_on_five_exponents() {
    for a in [
        [2, 2, 2, 3, 5],
        [3, 3, 3, 4, 5],
        [2, 3, 3, 4, 7],
        [2, 2, 2, 2, 2],
        [4, 4, 4, 5, 3],
    ] {
        let oracle = lattice_oracle(&a);
        let conv = brieskorn_signature(&bp(&a)).unwrap();
        assert_eq!(
            (
                conv.positive_count as u64,
                conv.negative_count as u64,
                conv.integral_count as u64
            ),
            (oracle.positive, oracle.negative, oracle.integral),
            "{a:?}"
        );
    }
}

/// Frozen from `lattice_oracle`: σ⁺ = 8, σ⁻ = 0, so σ/8 = 1.
#[test]
fn bp8_regression_value() {
    let oracle = lattice_oracle(&[2, 2, 2, 3, 5]);
    assert_eq!(
        oracle,
        LatticeCount {
            positive: 8,
            negative: 0,
            integral: 0
        }
    );
    let v = bp8_class(&bp(&[2, 2, 2, 3, 5])).unwrap();
    assert_eq!(v.bp8_residue, Some(1));
}

#[test]
fn betti_equals_integral_lattice_count() {
    let cases: &[&[u64]] = &[
        &[4, 4, 4, 4],
        &[6, 6, 6, 2],
        &[2, 3, 12, 12],
        &[5, 5, 6, 6],
        &[3, 3, 3, 4],
        &[2, 3, 7, 42],
        &[2, 3, 5],
        &[6, 10, 15],
        &[3, 4, 6, 8],
        &[2, 2, 2, 3, 5],
        &[3, 3, 3, 3, 3],
        &[4, 6, 9, 10],
    ];
    for a in cases {
        assert_eq!(betti_u64(a), lattice_oracle(a).integral, "{a:?}");
    }
}

#[test]
fn closed_form_k_k_kp1_kp1() {
    for k in 4..=10u64 {
        assert_eq!(betti_u64(&[k, k, k + 1, k + 1]), k * (k - 1), "k = {k}");
    }
}

#[test]
fn closed_form_pqr_pqr() {
    for p in 2..=13u64 {
        for q in p + 1..=13 {
            for r in q + 1..=13 {
                if p.gcd(&q) != 1 || p.gcd(&r) != 1 || q.gcd(&r) != 1 {
                    continue;
                }
                let (sp, sq, sr) = (p as i64, q as i64, r as i64);
                let expected = (sp * sq * sr - sp * sq - sp * sr - sq * sr - 1) + sp + sq + sr;
                assert_eq!(
                    betti_u64(&[p, q, r, p * q * r]) as i64,
                    expected,
                    "({p},{q},{r})"
                );
            }
        }
    }
}

#[test]
fn coprime_triples_are_homology_spheres_with_zero_betti() {
    for p in 2..=15u64 {
        for q in p..=15 {
            for r in q..=15 {
                let a = bp(&[p, q, r]);
                let b = betti_u64(&[p, q, r]);
                if dim3_homology_sphere(&a).unwrap() {
                    assert_eq!(b, 0, "({p},{q},{r})");
                }
            }
        }
    }
}

#[test]
fn casson_family() {
    for k in 1..=5i128 {
        let a = bp(&[6 * k as u64 - 1, 3, 2]);
        assert_eq!(brieskorn_signature(&a).unwrap().signature, -8 * k);
        assert_eq!(casson(&a).unwrap(), -k);
    }
}

/// Enumerates monomials of degree `d` directly.
fn monomial_oracle(w: &[u64], d: u64) -> u64 {
    fn go(w: &[u64], left: u64) -> u64 {
        match w.split_first() {
            None => u64::from(left == 0),
            Some((&first, rest)) => (0..=left / first).map(|m| go(rest, left - m * first)).sum(),
        }
    }
    go(w, d)
}

#[test]
fn monomial_count_matches_enumeration() {
    let cases: &[(&[u64], u64)] = &[
        (&[1, 2, 3], 6),
        (&[1, 1, 2], 4),
        (&[1, 1, 1], 3),
        (&[1, 1, 4, 6], 12),
        (&[13, 43, 101, 158], 316),
        (&[2, 7, 11, 19], 40),
        (&[6, 14, 21], 42),
    ];
    for &(w, d) in cases {
        let ws = WeightSystem::new(w.iter().copied(), d).unwrap();
        assert_eq!(
            count_monomials(&ws).unwrap().to_u64().unwrap(),
            monomial_oracle(w, d)
        );
    }
}

#[test]
fn twin_weight_systems() {
    let mut seen = HashMap::new();
    for (w, d) in [([13u64, 43, 101, 158], 316u64), ([11, 61, 85, 158], 316)] {
        let ws = WeightSystem::new(w, d).unwrap();
        let b = betti(&ws).unwrap().middle_betti.to_u64().unwrap();
        assert_eq!(b, 1);
        seen.insert(ws.key(), b);
    }
    assert_eq!(seen.len(), 2);
}
