//! Exact algebra of η-Einstein constants on a Sasakian `(2n+1)`-manifold.
//!
//! A Sasakian metric is η-Einstein when `Ric = λ g + ν η⊗η`; the constants
//! always satisfy `λ + ν = 2n`. A D-homothety with scale `a > 0` replaces
//! `(ξ, η, g)` by `(ξ/a, a η, a g + a(a-1) η⊗η)` and sends `λ` to
//! `(λ + 2 - 2a)/a`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::links::SignClass;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(n, λ, ν)` with `λ + ν = 2n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EtaConstants {
    n: u32,
    lambda: BigRational,
    nu: BigRational,
}

impl EtaConstants {
    /// Constants with `ν = 2n - λ`.
    pub fn from_lambda(n: u32, lambda: BigRational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWeights("n must be positive".into()));
        }
        let nu = q(2 * n as i64) - &lambda;
        Ok(Self { n, lambda, nu })
    }

    /// Rejects triples violating `λ + ν = 2n`.
    pub fn new(n: u32, lambda: BigRational, nu: BigRational) -> Result<Self> {
        let c = Self::from_lambda(n, lambda)?;
        if c.nu != nu {
            return Err(Error::InconsistentConstants {
                sum: (&c.lambda + &nu).to_string(),
                expected: (2 * n).to_string(),
            });
        }
        Ok(c)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    pub fn nu(&self) -> &BigRational {
        &self.nu
    }

    /// Positive iff `λ > -2`, null iff `λ = -2`, negative iff `λ < -2`.
    pub fn sign(&self) -> SignClass {
        match self.lambda.cmp(&q(-2)) {
            std::cmp::Ordering::Greater => SignClass::Positive,
            std::cmp::Ordering::Equal => SignClass::Null,
            std::cmp::Ordering::Less => SignClass::Negative,
        }
    }
}

impl fmt::Display for EtaConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, λ={}, ν={})", self.n, self.lambda, self.nu)
    }
}

/// Serialized form with rationals as `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaConstantsRepr {
    pub n: u32,
    pub lambda: String,
    pub nu: String,
}

impl From<&EtaConstants> for EtaConstantsRepr {
    fn from(c: &EtaConstants) -> Self {
        Self {
            n: c.n,
            lambda: c.lambda.to_string(),
            nu: c.nu.to_string(),
        }
    }
}

impl TryFrom<EtaConstantsRepr> for EtaConstants {
    type Error = Error;

    fn try_from(r: EtaConstantsRepr) -> Result<Self> {
        EtaConstants::new(r.n, parse_rational(&r.lambda)?, parse_rational(&r.nu)?)
    }
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, d)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int: BigInt = match int {
            "" | "-" | "+" => BigInt::zero(),
            i => i.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = int.abs() * &scale + frac;
        let num = if negative { -mag } else { mag };
        return Ok(BigRational::new(num, scale));
    }
    Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
}

/// Positive D-homothety scale.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomothetyScale(BigRational);

impl HomothetyScale {
    pub fn new(a: BigRational) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::NonPositiveScale(a.to_string()));
        }
        Ok(Self(a))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for HomothetyScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Constants after a D-homothety: `λ' = (λ + 2 - 2a)/a`, `ν' = 2n - λ'`.
pub fn homothety(c: &EtaConstants, a: &HomothetyScale) -> EtaConstants {
    let a = a.value();
    let lambda = (c.lambda() + q(2) - q(2) * a) / a;
    EtaConstants::from_lambda(c.n, lambda).expect("n already validated")
}

/// Scale `α = (λ+2)/(2n+2)` turning a positive structure Sasakian-Einstein.
pub fn einstein_scale(c: &EtaConstants) -> Result<HomothetyScale> {
    if c.sign() != SignClass::Positive {
        return Err(Error::NotPositiveClass(c.lambda.to_string()));
    }
    HomothetyScale::new((c.lambda() + q(2)) / q(2 * c.n as i64 + 2))
}

/// Metric relation satisfied by the Lorentzian Sasakian-Einstein structure.
pub const LORENTZIAN_RELATION: &str = "xi' = xi/a, -g' = a g + a(a-1) eta⊗eta";

/// Scale of the Lorentzian Sasakian-Einstein structure of a negative
/// η-Einstein manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LorentzianScale {
    /// `(λ+2)/(2+2n)`; negative.
    pub a: BigRational,
    pub relation: &'static str,
}

pub fn lorentzian_scale(c: &EtaConstants) -> Result<LorentzianScale> {
    if c.sign() != SignClass::Negative {
        return Err(Error::NotNegativeClass(c.lambda.to_string()));
    }
    Ok(LorentzianScale {
        a: (c.lambda() + q(2)) / q(2 + 2 * c.n as i64),
        relation: LORENTZIAN_RELATION,
    })
}

/// Deformation of a Sasakian-Einstein reference structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SquashClass {
    Squashed,
    Einstein,
    Stretched,
}

impl fmt::Display for SquashClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SquashClass::Squashed => "squashed",
            SquashClass::Einstein => "Einstein",
            SquashClass::Stretched => "stretched",
        })
    }
}

pub fn squash_class(a: &HomothetyScale) -> SquashClass {
    match a.value().cmp(&BigRational::one()) {
        std::cmp::Ordering::Less => SquashClass::Squashed,
        std::cmp::Ordering::Equal => SquashClass::Einstein,
        std::cmp::Ordering::Greater => SquashClass::Stretched,
    }
}

/// `s = 2n(λ + 1)`.
pub fn scalar_curvature(c: &EtaConstants) -> BigRational {
    q(2 * c.n as i64) * (c.lambda() + q(1))
}

/// Scale `a = λ + 2` giving `λ' = -1`, the scalar-flat member of the family.
pub fn scalar_flat_scale(c: &EtaConstants) -> Result<HomothetyScale> {
    if c.sign() != SignClass::Positive {
        return Err(Error::NotPositiveClass(c.lambda.to_string()));
    }
    HomothetyScale::new(c.lambda() + q(2))
}

/// The Einstein-Weyl pair `W± = (g, ±μη)`, stored as `μ²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EwPair {
    pub mu_squared: BigRational,
}

impl EwPair {
    /// `μ > 0` needs a square root; exact only when `μ²` is a rational square.
    pub fn mu_exact(&self) -> Option<BigRational> {
        let n = self.mu_squared.numer();
        let d = self.mu_squared.denom();
        let (rn, rd) = (n.sqrt(), d.sqrt());
        (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
    }

    pub fn mu_f64(&self) -> f64 {
        self.mu_squared.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

/// `μ² = -ν/(2n-1)`, defined when `ν < 0`.
pub fn ew_mu(c: &EtaConstants) -> Result<EwPair> {
    if !c.nu.is_negative() {
        return Err(Error::NoEwPair(c.nu.to_string()));
    }
    Ok(EwPair {
        mu_squared: -c.nu() / q(2 * c.n as i64 - 1),
    })
}

/// `α² = (2n+2)/(2n-1)` for the Heisenberg group `H(n)`; the associated
/// homothety scale is `1/α`.
pub fn heisenberg_alpha(n: u32) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidWeights("n must be positive".into()));
    }
    Ok(BigRational::new(
        BigInt::from(2 * n + 2),
        BigInt::from(2 * n - 1),
    ))
}
