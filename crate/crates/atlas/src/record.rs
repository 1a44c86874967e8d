//! Catalog records: every invariant this crate knows how to compute for a
//! single link, in a serializable form.

use linkatlas_core::eta::{EtaConstants, EtaConstantsRepr};
use linkatlas_core::links::{classify_sign, LinkDescriptor, SignClass};
use linkatlas_core::milnor_orlik::{betti, torsion_closed_form, weights_torsion, Torsion};
use linkatlas_core::spheres::{
    bp8_class, brieskorn_signature, dim3_homology_sphere, kervaire_classify, kervaire_parameters,
    SphereKind, SphereVerdict,
};
use linkatlas_core::BpExponents;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AtlasError, Result};

pub const TOOL_VERSION: &str = concat!("atlas ", env!("CARGO_PKG_VERSION"));

/// η-Einstein constants attached to a link, with how they were chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsNote {
    #[serde(flatten)]
    pub constants: EtaConstantsRepr,
    pub normalization: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub key: String,
    pub sign: SignClass,
    pub middle_betti: u128,
    pub torsion: Torsion,
    pub sphere: SphereVerdict,
    pub signature: Option<i128>,
    pub constants_note: Option<ConstantsNote>,
    pub tool_version: String,
    pub timestamp: String,
}

impl InvariantRecord {
    /// Number of variables, read off the canonical key.
    pub fn nvars(&self) -> Option<usize> {
        let body = self.key.strip_prefix("bp:").or_else(|| {
            self.key
                .strip_prefix("w:")
                .and_then(|w| w.split('@').next())
        })?;
        Some(body.split(',').count())
    }

    /// True when both records carry the same mathematical content.
    pub fn same_invariants(&self, other: &InvariantRecord) -> bool {
        self.key == other.key
            && self.sign == other.sign
            && self.middle_betti == other.middle_betti
            && self.torsion == other.torsion
            && self.sphere == other.sphere
            && self.signature == other.signature
            && self.constants_note == other.constants_note
    }
}

fn constants_for(sign: SignClass, nvars: usize) -> Option<ConstantsNote> {
    // link of nvars variables has dimension 2n+1 with n = nvars - 2
    let n = u32::try_from(nvars.checked_sub(2)?)
        .ok()
        .filter(|&n| n >= 1)?;
    let (lambda, normalization) = match sign {
        SignClass::Positive => (2 * n as i64, "sasaki_einstein"),
        SignClass::Null => (-2, "null"),
        SignClass::Negative => return None,
    };
    let c = EtaConstants::from_lambda(n, BigInt::from(lambda).into()).ok()?;
    Some(ConstantsNote {
        constants: EtaConstantsRepr::from(&c),
        normalization: normalization.to_string(),
    })
}

fn bp_sphere(a: &BpExponents, betti_zero: bool) -> Result<SphereVerdict> {
    if a.nvars() == 3 && dim3_homology_sphere(a)? {
        return Ok(SphereVerdict::of(SphereKind::HomologySphere));
    }
    if let Some((r, odd)) = kervaire_parameters(a) {
        let (v, _) = kervaire_classify(&r, odd)?;
        if v.verdict != SphereKind::Undetermined {
            return Ok(v);
        }
    }
    if a.nvars() == 5 && betti_zero {
        return match bp8_class(a) {
            Ok(v) => Ok(v),
            Err(linkatlas_core::Error::NonDivisible(_)) => {
                Ok(SphereVerdict::of(SphereKind::RationalHomologySphere))
            }
            Err(e) => Err(e.into()),
        };
    }
    Ok(SphereVerdict::of(if betti_zero {
        SphereKind::RationalHomologySphere
    } else {
        SphereKind::NotASphere
    }))
}

/// Estimated elementary steps needed by [`compute_record`]: `2^nvars` for
/// the Betti sum plus `Π(a_i - 1)` for a signature.
pub fn record_cost(link: &LinkDescriptor) -> u128 {
    let betti_cost = 1u128.checked_shl(link.nvars() as u32).unwrap_or(u128::MAX);
    let sig_cost = match link.bp() {
        Some(a) if matches!(a.nvars(), 3 | 5) => lattice_size(a),
        _ => 0,
    };
    betti_cost.saturating_add(sig_cost)
}

/// `Π(a_i - 1)`, saturating.
pub fn lattice_size(a: &BpExponents) -> u128 {
    a.exponents()
        .iter()
        .fold(1u128, |acc, &e| acc.saturating_mul(u128::from(e - 1)))
}

/// Computes every invariant of `link`.
pub fn compute_record(link: &LinkDescriptor, timestamp: &str) -> Result<InvariantRecord> {
    let ws = link.weight_system()?;
    let sign = classify_sign(&ws);
    let b = betti(&ws)?.middle_betti;
    let middle_betti = b
        .to_u128()
        .ok_or_else(|| AtlasError::InvalidInput(format!("Betti number {b} exceeds 128 bits")))?;
    let (torsion, sphere, signature) = match link.bp() {
        Some(a) => {
            let signature = if matches!(a.nvars(), 3 | 5) {
                Some(brieskorn_signature(a)?.signature)
            } else {
                None
            };
            (
                torsion_closed_form(a),
                bp_sphere(a, b.is_zero())?,
                signature,
            )
        }
        None => (
            weights_torsion(&ws),
            SphereVerdict::of(if b.is_zero() {
                SphereKind::RationalHomologySphere
            } else {
                SphereKind::NotASphere
            }),
            None,
        ),
    };
    Ok(InvariantRecord {
        key: link.key()?,
        sign,
        middle_betti,
        torsion,
        sphere,
        signature,
        constants_note: constants_for(sign, ws.nvars()),
        tool_version: TOOL_VERSION.to_string(),
        timestamp: timestamp.to_string(),
    })
}

/// Recomputes a stored record from its key and reports whether it agrees.
pub fn reverify(record: &InvariantRecord) -> Result<bool> {
    let link: LinkDescriptor = record.key.parse()?;
    let fresh = compute_record(&link, &record.timestamp)?;
    Ok(fresh.same_invariants(record))
}

pub fn now_timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}
