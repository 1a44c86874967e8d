//! Sphere detection for Brieskorn-Pham links: signatures of the Milnor
//! fibre, Casson invariants of homology 3-spheres, the Kervaire family and
//! `bP_8` classes of homotopy 7-spheres.
//!
//! The signature of `V(a) = {Σ z_i^{a_i} = ε} ∩ D` is
//! `σ⁺ - σ⁻` where `σ⁺` counts tuples `0 < i_j < a_j` whose sum `Σ i_j/a_j`
//! taken mod 2 lies in `(0, 1)` and `σ⁻` those in `(1, 2)`. Tuples with an
//! integral sum count in neither.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::links::{bp_link, classify_sign, pairwise_coprime, BpExponents, SignClass};
use crate::milnor_orlik::betti;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignatureResult {
    pub signature: i128,
    pub positive_count: u128,
    pub negative_count: u128,
    /// Tuples whose sum is an integer; these contribute to neither count.
    pub integral_count: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SphereKind {
    StandardSphere,
    KervaireSphere,
    HomologySphere,
    RationalHomologySphere,
    NotASphere,
    Undetermined,
}

impl fmt::Display for SphereKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SphereKind::StandardSphere => "standard sphere",
            SphereKind::KervaireSphere => "Kervaire sphere",
            SphereKind::HomologySphere => "integral homology sphere",
            SphereKind::RationalHomologySphere => "rational homology sphere",
            SphereKind::NotASphere => "not a sphere",
            SphereKind::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SphereVerdict {
    pub verdict: SphereKind,
    /// `(σ/8) mod 28`, only for 7-dimensional rational homology spheres.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bp8_residue: Option<u8>,
}

impl SphereVerdict {
    pub fn of(verdict: SphereKind) -> Self {
        Self {
            verdict,
            bp8_residue: None,
        }
    }
}

impl fmt::Display for SphereVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bp8_residue {
            Some(r) => write!(f, "{} (bP8 class {r})", self.verdict),
            None => self.verdict.fmt(f),
        }
    }
}

fn check_signature_dims(a: &BpExponents) -> Result<()> {
    match a.nvars() {
        3 | 5 => Ok(()),
        got => Err(Error::DimensionUnsupported {
            expected: "3 or 5",
            got,
        }),
    }
}

/// `lcm(a)` and `Π a_j`, refusing lattices whose size does not fit `u128`.
fn lattice_bounds(a: &BpExponents) -> Result<u128> {
    let too_large = || Error::TooLarge(format!("{a} exceeds 128-bit lattice counts"));
    a.exponents()
        .iter()
        .try_fold(1u128, |acc, &e| acc.checked_mul(e as u128))
        .ok_or_else(too_large)?
        .checked_mul(2)
        .ok_or_else(too_large)?;
    a.degree().to_u128().ok_or_else(too_large)
}

fn tally(residue: u128, d: u128, count: u128, out: &mut SignatureResult) {
    if residue == 0 || residue == d {
        out.integral_count += count;
    } else if residue < d {
        out.positive_count += count;
    } else {
        out.negative_count += count;
    }
}

/// Brieskorn signature by iterated histogram convolution over residues of
/// `Σ i_j (d/a_j)` mod `2d`, smallest exponents first so the histogram stays
/// sparse; the largest exponent is classified without materializing the
/// final histogram.
pub fn brieskorn_signature(a: &BpExponents) -> Result<SignatureResult> {
    check_signature_dims(a)?;
    let d = lattice_bounds(a)?;
    let modulus = 2 * d;
    let sorted = a.sorted();
    let (last, init) = sorted.split_last().expect("at least three exponents");

    let mut hist: HashMap<u128, u128> = HashMap::from([(0, 1)]);
    for &e in init {
        let step = d / e as u128;
        let mut next = HashMap::with_capacity(hist.len() * (e as usize - 1));
        for (&r, &c) in &hist {
            let mut s = r;
            for _ in 1..e {
                s = (s + step) % modulus;
                *next.entry(s).or_insert(0) += c;
            }
        }
        hist = next;
    }

    let mut out = SignatureResult {
        signature: 0,
        positive_count: 0,
        negative_count: 0,
        integral_count: 0,
    };
    let step = d / *last as u128;
    for (&r, &c) in &hist {
        let mut s = r;
        for _ in 1..*last {
            s = (s + step) % modulus;
            tally(s, d, c, &mut out);
        }
    }
    out.signature = out.positive_count as i128 - out.negative_count as i128;
    Ok(out)
}

/// Brieskorn signature by visiting every lattice tuple. Exponential in the
/// number of variables; kept as a cross-check for the convolution.
pub fn signature_by_enumeration(a: &BpExponents) -> Result<SignatureResult> {
    check_signature_dims(a)?;
    let d = lattice_bounds(a)?;
    let modulus = 2 * d;
    let exps = a.exponents();
    let steps: Vec<u128> = exps.iter().map(|&e| d / e as u128).collect();
    let mut idx = vec![1u64; exps.len()];
    let mut out = SignatureResult {
        signature: 0,
        positive_count: 0,
        negative_count: 0,
        integral_count: 0,
    };
    'outer: loop {
        let s: u128 = idx
            .iter()
            .zip(&steps)
            .map(|(&i, &st)| i as u128 * st)
            .sum::<u128>()
            % modulus;
        tally(s, d, 1, &mut out);
        for j in 0..idx.len() {
            idx[j] += 1;
            if idx[j] < exps[j] {
                continue 'outer;
            }
            idx[j] = 1;
        }
        break;
    }
    out.signature = out.positive_count as i128 - out.negative_count as i128;
    Ok(out)
}

/// Rough count of elementary steps [`brieskorn_signature`] performs.
pub fn signature_cost(a: &BpExponents) -> u128 {
    let sorted = a.sorted();
    let mut support: u128 = 1;
    let mut prefix_lcm: u128 = 1;
    let mut cost: u128 = 0;
    for &e in &sorted {
        let e = e as u128;
        cost = cost.saturating_add(support.saturating_mul(e - 1));
        prefix_lcm = prefix_lcm.lcm(&e);
        support = support
            .saturating_mul(e - 1)
            .min(prefix_lcm.saturating_mul(2));
    }
    cost
}

pub fn dim3_homology_sphere(a: &BpExponents) -> Result<bool> {
    if a.nvars() != 3 {
        return Err(Error::DimensionUnsupported {
            expected: "3",
            got: a.nvars(),
        });
    }
    Ok(a.pairwise_coprime())
}

/// Casson invariant `λ = σ(V)/8` of a Brieskorn integral homology 3-sphere.
pub fn casson(a: &BpExponents) -> Result<i128> {
    if !dim3_homology_sphere(a)? {
        return Err(Error::NotHomologySphere);
    }
    let sig = brieskorn_signature(a)?.signature;
    if sig % 8 != 0 {
        return Err(Error::NonDivisible(sig.to_string()));
    }
    Ok(sig / 8)
}

/// Classifies `L(2, 2r_1, ..., 2r_{2m}, a)`: standard sphere for
/// `a ≡ ±1 mod 8`, Kervaire sphere for `a ≡ ±3 mod 8`, undetermined for even
/// `a`. Also returns the sign of the induced Sasakian structure.
pub fn kervaire_classify(r: &[u64], a: u64) -> Result<(SphereVerdict, SignClass)> {
    if r.is_empty() || !r.len().is_multiple_of(2) {
        return Err(Error::InvalidWeights(format!(
            "Kervaire family needs an even, nonzero number of r_i, got {}",
            r.len()
        )));
    }
    if r.contains(&0) {
        return Err(Error::InvalidWeights("r_i must be positive".into()));
    }
    if !pairwise_coprime(r) {
        return Err(Error::NotPairwiseCoprime);
    }
    let exps: Vec<u64> = std::iter::once(2)
        .chain(r.iter().map(|&x| 2 * x))
        .chain(std::iter::once(a))
        .collect();
    let sign = classify_sign(&bp_link(&BpExponents::new(exps)?)?);
    let verdict = if a.is_multiple_of(2) {
        SphereKind::Undetermined
    } else {
        match a % 8 {
            1 | 7 => SphereKind::StandardSphere,
            _ => SphereKind::KervaireSphere,
        }
    };
    Ok((SphereVerdict::of(verdict), sign))
}

/// Recognizes `L(2, 2r_1, ..., 2r_{2m}, a)` with a single odd exponent `a`
/// and returns `(r, a)`.
pub fn kervaire_parameters(a: &BpExponents) -> Option<(Vec<u64>, u64)> {
    let sorted = a.sorted();
    if sorted.len() < 4 || !sorted.len().is_multiple_of(2) {
        return None;
    }
    let (odd, even): (Vec<u64>, Vec<u64>) = sorted.iter().partition(|&&x| x % 2 == 1);
    if odd.len() != 1 {
        return None;
    }
    let two = even.iter().position(|&x| x == 2)?;
    let r: Vec<u64> = even
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != two)
        .map(|(_, &x)| x / 2)
        .collect();
    pairwise_coprime(&r).then_some((r, odd[0]))
}

/// `bP_8 ≅ Z/28` class `(σ(V)/8) mod 28` of a 7-dimensional Brieskorn
/// rational homology sphere.
pub fn bp8_class(a: &BpExponents) -> Result<SphereVerdict> {
    if a.nvars() != 5 {
        return Err(Error::DimensionUnsupported {
            expected: "5",
            got: a.nvars(),
        });
    }
    let b = betti(&bp_link(a)?)?.middle_betti;
    if !b.is_zero() {
        return Err(Error::NotASphere(b.to_string()));
    }
    let sig = brieskorn_signature(a)?.signature;
    if sig % 8 != 0 {
        return Err(Error::NonDivisible(sig.to_string()));
    }
    Ok(SphereVerdict {
        verdict: SphereKind::RationalHomologySphere,
        bp8_residue: Some((sig / 8).rem_euclid(28) as u8),
    })
}

/// `Σ 1/r_i < (a-2)/a`, the negativity test of the Kervaire family.
pub fn kervaire_negative(r: &[u64], a: u64) -> bool {
    let lhs = r
        .iter()
        .map(|&x| BigRational::new(1.into(), x.into()))
        .fold(BigRational::zero(), |acc, x| acc + x);
    lhs < BigRational::new((a as i64 - 2).into(), a.into())
}
