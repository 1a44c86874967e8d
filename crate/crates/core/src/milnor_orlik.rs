//! Middle Betti number of a link via the Milnor-Orlik alternating subset sum.
//!
//! With `d / w_i = u_i / v_i` in lowest terms,
//!
//! ```text
//! b_{n-1}(L_f) = Σ_{S ⊆ {0..n}} (-1)^{n+1-|S|} Π_{i∈S} u_i / (Π_{i∈S} v_i · lcm_{i∈S} u_i)
//! ```
//!
//! The empty subset contributes `(-1)^{n+1}` (empty product 1, lcm 1).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::links::{bp_link, is_well_formed, BpExponents, WeightSystem};

/// Largest variable count accepted by [`betti`]; the sum has `2^nvars` terms.
pub const MAX_BETTI_VARS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiResult {
    pub middle_betti: BigUint,
    pub link_dim: usize,
    /// `(u_i, v_i)` with `u_i / v_i = d / w_i` in lowest terms.
    pub reduced_quotients: Vec<(BigUint, BigUint)>,
}

pub fn betti(ws: &WeightSystem) -> Result<BettiResult> {
    let nvars = ws.nvars();
    if nvars < 2 {
        return Err(Error::DimensionUnsupported {
            expected: "at least 2",
            got: nvars,
        });
    }
    if nvars > MAX_BETTI_VARS {
        return Err(Error::TooLarge(format!(
            "2^{nvars} subsets in the Betti sum"
        )));
    }
    let d = ws.degree();
    let quotients: Vec<(BigUint, BigUint)> = ws
        .weights()
        .iter()
        .map(|w| {
            let g = d.gcd(w);
            (d / &g, w / &g)
        })
        .collect();

    let mut total = BigRational::zero();
    for mask in 0u32..(1u32 << nvars) {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        let mut l = BigUint::one();
        for (i, (u, v)) in quotients.iter().enumerate() {
            if mask >> i & 1 == 1 {
                num *= u;
                den *= v;
                l = l.lcm(u);
            }
        }
        let s = mask.count_ones() as usize;
        let term = BigRational::new(BigInt::from(num), BigInt::from(den * l));
        if (nvars - s).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    if !total.is_integer() || total.is_negative() {
        return Err(Error::NonIntegerResult(total.to_string()));
    }
    Ok(BettiResult {
        middle_betti: total.to_integer().magnitude().clone(),
        link_dim: ws.link_dim(),
        reduced_quotients: quotients,
    })
}

pub fn is_rational_homology_sphere(ws: &WeightSystem) -> Result<bool> {
    Ok(betti(ws)?.middle_betti.is_zero())
}

/// Closed-form torsion of the middle homology, where one is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Torsion {
    TorsionFree,
    /// `Z_k ⊕ Z_k`
    ZkSquared(u64),
    Unknown,
}

impl fmt::Display for Torsion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Torsion::TorsionFree => f.write_str("torsion-free"),
            Torsion::ZkSquared(k) => write!(f, "Z_{k} + Z_{k}"),
            Torsion::Unknown => f.write_str("unknown"),
        }
    }
}

/// `L(3,3,3,k)` with `k` prime to 3 has `H_2 = Z_k ⊕ Z_k`; a well-formed
/// 4-variable link is torsion-free. Everything else is `Unknown`.
pub fn torsion_closed_form(a: &BpExponents) -> Torsion {
    let sorted = a.sorted();
    if sorted.len() == 4 {
        let threes = sorted.iter().filter(|&&x| x == 3).count();
        if threes == 3 {
            let k = *sorted.iter().find(|&&x| x != 3).unwrap();
            if k % 3 != 0 {
                return Torsion::ZkSquared(k);
            }
        }
    }
    weights_torsion(&match bp_link(a) {
        Ok(ws) => ws,
        Err(_) => return Torsion::Unknown,
    })
}

/// Torsion information available from the weights alone.
pub fn weights_torsion(ws: &WeightSystem) -> Torsion {
    match is_well_formed(ws) {
        Ok(true) => Torsion::TorsionFree,
        _ => Torsion::Unknown,
    }
}
