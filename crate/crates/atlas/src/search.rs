//! Family enumeration with predicates, cost budgeting and parallel
//! evaluation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use linkatlas_core::links::{bp_link, LinkDescriptor, SignClass};
use linkatlas_core::milnor_orlik::betti;
use linkatlas_core::spheres::bp8_class;
use linkatlas_core::BpExponents;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AtlasError, Result};
use crate::record::{compute_record, lattice_size, record_cost, InvariantRecord};

/// Count of `m` in `5..=41` for `(2, 3, 7, m)` quoted in the literature;
/// enumeration of the coprimality condition finds one more.
pub const REFERENCE_237M_COUNT: usize = 27;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Every exponent vector in a box, up to permutation.
    BpBox { ranges: Vec<RangeInclusive<u64>> },
    /// `(2, 3, 7, m)`.
    Family237m { m: RangeInclusive<u64> },
    /// `(k, k, k+1, p)`.
    Kkk1p {
        k: RangeInclusive<u64>,
        p: RangeInclusive<u64>,
    },
    /// `(k, k, k, k+1, p)`.
    Kkkk1p {
        k: RangeInclusive<u64>,
        p: RangeInclusive<u64>,
    },
    /// `(p, q, r, pqr)` for pairwise coprime `p < q < r`.
    Pqrpqr {
        p: RangeInclusive<u64>,
        q: RangeInclusive<u64>,
        r: RangeInclusive<u64>,
    },
    /// `(2, 2r_1, 2r_2, a)` for coprime `r_1 < r_2`.
    Kervaire {
        r1: RangeInclusive<u64>,
        r2: RangeInclusive<u64>,
        a: RangeInclusive<u64>,
    },
}

fn check_range(name: &str, r: &RangeInclusive<u64>, min: u64) -> Result<()> {
    if r.is_empty() {
        return Err(AtlasError::InvalidInput(format!("empty range for {name}")));
    }
    if *r.start() < min {
        return Err(AtlasError::InvalidInput(format!(
            "{name} must be at least {min}, got {}",
            r.start()
        )));
    }
    Ok(())
}

fn coprime(a: u64, b: u64) -> bool {
    a.gcd(&b) == 1
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        match self {
            Family::BpBox { ranges } => {
                if ranges.is_empty() {
                    return Err(AtlasError::InvalidInput(
                        "box needs at least one range".into(),
                    ));
                }
                ranges
                    .iter()
                    .try_for_each(|r| check_range("exponent", r, 2))
            }
            Family::Family237m { m } => check_range("m", m, 2),
            Family::Kkk1p { k, p } | Family::Kkkk1p { k, p } => {
                check_range("k", k, 2)?;
                check_range("p", p, 2)
            }
            Family::Pqrpqr { p, q, r } => {
                check_range("p", p, 2)?;
                check_range("q", q, 2)?;
                check_range("r", r, 2)
            }
            Family::Kervaire { r1, r2, a } => {
                check_range("r1", r1, 1)?;
                check_range("r2", r2, 1)?;
                check_range("a", a, 2)
            }
        }
    }

    /// Lower bound on the cost of a search, computable without enumerating:
    /// box members are counted up to permutation, every member costs at least
    /// `2^nvars`.
    pub fn cost_floor(&self) -> u128 {
        let len = |r: &RangeInclusive<u64>| u128::from(r.end().saturating_sub(*r.start()) + 1);
        let (count, nvars) = match self {
            Family::BpBox { ranges } => {
                let raw = ranges.iter().map(len).fold(1u128, u128::saturating_mul);
                let perms = (1..=ranges.len() as u128).product::<u128>().max(1);
                (raw / perms, ranges.len())
            }
            _ => (0, 0),
        };
        count.saturating_mul(1u128 << nvars.min(100))
    }

    /// Members as exponent vectors, one per canonical key, in key order.
    pub fn members(&self) -> Result<Vec<BpExponents>> {
        self.validate()?;
        let mut raw: Vec<Vec<u64>> = Vec::new();
        match self {
            Family::BpBox { ranges } => {
                let mut cur = Vec::with_capacity(ranges.len());
                fn go(ranges: &[RangeInclusive<u64>], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
                    match ranges.split_first() {
                        None => out.push(cur.clone()),
                        Some((r, rest)) => {
                            for x in r.clone() {
                                cur.push(x);
                                go(rest, cur, out);
                                cur.pop();
                            }
                        }
                    }
                }
                go(ranges, &mut cur, &mut raw);
            }
            Family::Family237m { m } => raw.extend(m.clone().map(|m| vec![2, 3, 7, m])),
            Family::Kkk1p { k, p } => {
                for k in k.clone() {
                    raw.extend(p.clone().map(|p| vec![k, k, k + 1, p]));
                }
            }
            Family::Kkkk1p { k, p } => {
                for k in k.clone() {
                    raw.extend(p.clone().map(|p| vec![k, k, k, k + 1, p]));
                }
            }
            Family::Pqrpqr { p, q, r } => {
                for p in p.clone() {
                    for q in q.clone().filter(|&q| q > p && coprime(p, q)) {
                        for r in r
                            .clone()
                            .filter(|&r| r > q && coprime(p, r) && coprime(q, r))
                        {
                            raw.push(vec![p, q, r, p * q * r]);
                        }
                    }
                }
            }
            Family::Kervaire { r1, r2, a } => {
                for r1 in r1.clone() {
                    for r2 in r2.clone().filter(|&r2| r2 > r1 && coprime(r1, r2)) {
                        raw.extend(a.clone().map(|a| vec![2, 2 * r1, 2 * r2, a]));
                    }
                }
            }
        }
        let unique: BTreeSet<Vec<u64>> = raw
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                v
            })
            .collect();
        let mut out: Vec<Vec<u64>> = unique.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out.into_iter()
            .map(|v| BpExponents::new(v).map_err(AtlasError::from))
            .collect()
    }
}

/// Parses `a..b` or a single value `a`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>> {
    let bad = || AtlasError::InvalidInput(format!("bad range {s:?}; expected a..b or a"));
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok(parse(a)?..=parse(b)?)
        }
        None => {
            let v = parse(s)?;
            Ok(v..=v)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    Sign(SignClass),
    Betti(u128),
    RationalSphere,
    PairwiseCoprime,
    /// The last listed exponent of the family is coprime to at least this
    /// many of the others.
    CoprimeToAtLeast(usize),
}

impl FromStr for Predicate {
    type Err = AtlasError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || AtlasError::InvalidInput(format!("unknown predicate {s:?}"));
        match s.split_once('=') {
            Some(("sign", v)) => Ok(Predicate::Sign(v.parse()?)),
            Some(("betti", v)) => Ok(Predicate::Betti(v.parse().map_err(|_| bad())?)),
            Some(("coprime_to", v)) => {
                Ok(Predicate::CoprimeToAtLeast(v.parse().map_err(|_| bad())?))
            }
            None if s == "rational_sphere" => Ok(Predicate::RationalSphere),
            None if s == "pairwise_coprime" => Ok(Predicate::PairwiseCoprime),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Sign(s) => write!(f, "sign={s}"),
            Predicate::Betti(b) => write!(f, "betti={b}"),
            Predicate::RationalSphere => f.write_str("rational_sphere"),
            Predicate::PairwiseCoprime => f.write_str("pairwise_coprime"),
            Predicate::CoprimeToAtLeast(k) => write!(f, "coprime_to={k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    pub family: Family,
    pub predicates: Vec<Predicate>,
}

/// The exponent singled out by [`Predicate::CoprimeToAtLeast`]: the free
/// parameter of each family.
fn free_exponent(family: &Family, a: &BpExponents) -> u64 {
    let e = a.exponents();
    match family {
        Family::Family237m { .. } => {
            // m sits wherever sorting put it; the fixed part is {2, 3, 7}
            let mut rest = vec![2u64, 3, 7];
            for &x in e {
                if let Some(i) = rest.iter().position(|&y| y == x) {
                    rest.swap_remove(i);
                } else {
                    return x;
                }
            }
            7
        }
        Family::Pqrpqr { .. } => *e.iter().max().unwrap_or(&0),
        _ => *e.last().unwrap_or(&0),
    }
}

fn coprime_count(family: &Family, a: &BpExponents) -> usize {
    let free = free_exponent(family, a);
    let mut others = a.exponents().to_vec();
    if let Some(i) = others.iter().position(|&x| x == free) {
        others.remove(i);
    }
    others.iter().filter(|&&x| coprime(x, free)).count()
}

fn matches(spec: &SearchSpec, a: &BpExponents, rec: &InvariantRecord) -> bool {
    spec.predicates.iter().all(|p| match p {
        Predicate::Sign(s) => rec.sign == *s,
        Predicate::Betti(b) => rec.middle_betti == *b,
        Predicate::RationalSphere => rec.middle_betti == 0,
        Predicate::PairwiseCoprime => a.pairwise_coprime(),
        Predicate::CoprimeToAtLeast(k) => coprime_count(&spec.family, a) >= *k,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub enumerated: usize,
    pub matched: usize,
    pub by_sign: BTreeMap<String, usize>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub records: Vec<InvariantRecord>,
    pub summary: SearchSummary,
}

pub fn estimate_cost(members: &[BpExponents]) -> u128 {
    members
        .iter()
        .map(|a| record_cost(&LinkDescriptor::Bp(a.clone())))
        .fold(0u128, u128::saturating_add)
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        b = b.num_threads(t);
    }
    b.build()
        .map_err(|e| AtlasError::InvalidInput(format!("cannot start worker threads: {e}")))
}

/// Runs `spec`. Records carry `timestamp`; everything else depends only on
/// the spec.
pub fn run_search(
    spec: &SearchSpec,
    budget: u128,
    threads: Option<usize>,
    timestamp: &str,
) -> Result<SearchOutcome> {
    spec.family.validate()?;
    let floor = spec.family.cost_floor();
    if floor > budget {
        return Err(AtlasError::BoundsTooLarge {
            estimated: floor,
            budget,
        });
    }
    let members = spec.family.members()?;
    let estimated = estimate_cost(&members);
    if estimated > budget {
        return Err(AtlasError::BoundsTooLarge { estimated, budget });
    }
    let evaluated: Vec<Option<InvariantRecord>> = pool(threads)?.install(|| {
        members
            .par_iter()
            .map(|a| {
                let rec = compute_record(&LinkDescriptor::Bp(a.clone()), timestamp)?;
                Ok(matches(spec, a, &rec).then_some(rec))
            })
            .collect::<Result<_>>()
    })?;
    let records: Vec<InvariantRecord> = evaluated.into_iter().flatten().collect();
    let mut by_sign = BTreeMap::new();
    for r in &records {
        *by_sign.entry(r.sign.to_string()).or_insert(0) += 1;
    }
    let mut notes = Vec::new();
    if let Family::Family237m { m } = &spec.family {
        let coprime_query = spec
            .predicates
            .iter()
            .any(|p| matches!(p, Predicate::CoprimeToAtLeast(2)));
        if coprime_query && *m == (5..=41) {
            notes.push(format!(
                "reference count for 5 <= m <= 41 is {REFERENCE_237M_COUNT}; \
                 direct enumeration of the condition gives {}",
                records.len()
            ));
        }
    }
    Ok(SearchOutcome {
        summary: SearchSummary {
            enumerated: members.len(),
            matched: records.len(),
            by_sign,
            notes,
        },
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepWitness {
    pub k: u64,
    pub p: u64,
    pub middle_betti: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepResult {
    /// `bP_8` residue to the first `(k, p)` realizing it.
    pub witnesses: BTreeMap<u8, SweepWitness>,
    pub distinct: usize,
    pub examined: usize,
    pub rational_spheres: usize,
}

/// Sweeps `L(k, k, k, k+1, p)` for `2 <= k <= k_max`, `2 <= p <= p_max`
/// with `p` prime to `k` and `k+1`, recording the `bP_8` residue of every
/// rational homology sphere.
pub fn seven_sphere_sweep(
    k_max: u64,
    p_max: u64,
    budget: u128,
    threads: Option<usize>,
) -> Result<SweepResult> {
    if k_max < 2 || p_max < 2 {
        return Err(AtlasError::InvalidInput(
            "sweep bounds must be at least 2".into(),
        ));
    }
    let mut members = Vec::new();
    for k in 2..=k_max {
        for p in (2..=p_max).filter(|&p| coprime(p, k) && coprime(p, k + 1)) {
            members.push((k, p, BpExponents::new(vec![k, k, k, k + 1, p])?));
        }
    }
    let estimated = members
        .iter()
        .map(|(_, _, a)| 32u128.saturating_add(lattice_size(a)))
        .fold(0u128, u128::saturating_add);
    if estimated > budget {
        return Err(AtlasError::BoundsTooLarge { estimated, budget });
    }
    let residues: Vec<Option<u8>> = pool(threads)?.install(|| {
        members
            .par_iter()
            .map(|(_, _, a)| {
                let b = betti(&bp_link(a)?)?.middle_betti;
                if !b.is_zero() {
                    return Ok(None);
                }
                Ok(bp8_class(a)?.bp8_residue)
            })
            .collect::<std::result::Result<_, linkatlas_core::Error>>()
    })?;
    let mut witnesses = BTreeMap::new();
    let mut rational_spheres = 0;
    for ((k, p, a), r) in members.iter().zip(&residues) {
        let Some(r) = r else { continue };
        rational_spheres += 1;
        if witnesses.contains_key(r) {
            continue;
        }
        let b = betti(&bp_link(a)?)?.middle_betti;
        let middle_betti = u128::try_from(b)
            .map_err(|_| AtlasError::InvalidInput("witness Betti number out of range".into()))?;
        if middle_betti != 0 {
            return Err(AtlasError::Core(linkatlas_core::Error::NotASphere(
                middle_betti.to_string(),
            )));
        }
        witnesses.insert(
            *r,
            SweepWitness {
                k: *k,
                p: *p,
                middle_betti,
            },
        );
    }
    Ok(SweepResult {
        distinct: witnesses.len(),
        witnesses,
        examined: members.len(),
        rational_spheres,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TS: &str = "2026-01-01T00:00:00Z";

    fn spec(family: Family, predicates: Vec<Predicate>) -> SearchSpec {
        SearchSpec { family, predicates }
    }

    #[test]
    fn range_grammar() {
        assert_eq!(parse_range("5..41").unwrap(), 5..=41);
        assert_eq!(parse_range("5..=41").unwrap(), 5..=41);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("x..3").is_err());
    }

    #[test]
    fn predicate_grammar() {
        assert_eq!(
            "sign=null".parse::<Predicate>().unwrap(),
            Predicate::Sign(SignClass::Null)
        );
        assert_eq!(
            "betti=21".parse::<Predicate>().unwrap(),
            Predicate::Betti(21)
        );
        assert_eq!(
            "coprime_to=2".parse::<Predicate>().unwrap(),
            Predicate::CoprimeToAtLeast(2)
        );
        assert!("colour=red".parse::<Predicate>().is_err());
    }

    #[test]
    fn box_members_are_canonical() {
        let fam = Family::BpBox {
            ranges: vec![2..=3, 2..=3],
        };
        let keys: Vec<_> = fam.members().unwrap().iter().map(|a| a.key()).collect();
        assert_eq!(keys, ["bp:2,2", "bp:2,3", "bp:3,3"]);
    }

    #[test]
    fn empty_range_rejected() {
        #[allow(clippy::reversed_empty_ranges)]
        let fam = Family::Family237m { m: 9..=5 };
        assert!(matches!(fam.members(), Err(AtlasError::InvalidInput(_))));
    }

    #[test]
    fn family_237m_positive() {
        let out = run_search(
            &spec(
                Family::Family237m { m: 5..=41 },
                vec![Predicate::Sign(SignClass::Positive)],
            ),
            u128::MAX,
            Some(2),
            TS,
        )
        .unwrap();
        assert_eq!(out.summary.matched, 37);
    }

    #[test]
    fn free_exponent_of_237m() {
        let fam = Family::Family237m { m: 5..=41 };
        let a = BpExponents::new(vec![2, 3, 3, 7]).unwrap();
        assert_eq!(free_exponent(&fam, &a), 3);
        let a = BpExponents::new(vec![2, 3, 7, 7]).unwrap();
        assert_eq!(free_exponent(&fam, &a), 7);
    }

    #[test]
    fn budget_refuses() {
        let err = run_search(
            &spec(
                Family::Kkkk1p {
                    k: 2..=8,
                    p: 2..=600,
                },
                vec![],
            ),
            1000,
            None,
            TS,
        )
        .unwrap_err();
        assert!(matches!(err, AtlasError::BoundsTooLarge { .. }));
        assert!(matches!(
            seven_sphere_sweep(8, 600, 1000, None),
            Err(AtlasError::BoundsTooLarge { .. })
        ));
    }

    #[test]
    fn tiny_sweep_is_short_of_28() {
        let out = seven_sphere_sweep(2, 3, u128::MAX, Some(1)).unwrap();
        assert!(out.distinct < 28);
    }
}
