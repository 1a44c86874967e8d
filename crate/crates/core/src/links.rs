//! Weight systems of weighted homogeneous polynomials and the elementary
//! combinatorics of their links.
//!
//! A polynomial `f(z_0, ..., z_n)` is weighted homogeneous of degree `d` with
//! weights `w` when every monomial `z^m` in it satisfies `Σ m_j w_j = d`. The
//! link `L_f = f^{-1}(0) ∩ S^{2n+1}` is a `(2n-1)`-manifold whose Sasakian
//! structure has the sign of `|w| - d`. Everything here is exact: degrees of
//! Brieskorn-Pham links are lcms that overflow machine words quickly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Weights and degree of a weighted homogeneous polynomial, in canonical form:
/// divided by the gcd of the weights and sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightSystem {
    weights: Vec<BigUint>,
    degree: BigUint,
}

impl WeightSystem {
    /// Builds a canonical weight system. The weights are divided by their gcd
    /// (which must divide `degree`, otherwise no monomial has that degree)
    /// and sorted.
    pub fn new<W: Into<BigUint>, D: Into<BigUint>>(
        weights: impl IntoIterator<Item = W>,
        degree: D,
    ) -> Result<Self> {
        let mut weights: Vec<BigUint> = weights.into_iter().map(Into::into).collect();
        let degree: BigUint = degree.into();
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no weights".into()));
        }
        if weights.iter().any(Zero::is_zero) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        if degree.is_zero() {
            return Err(Error::InvalidWeights("degree must be positive".into()));
        }
        let g = weights.iter().fold(BigUint::zero(), |acc, w| acc.gcd(w));
        if !(&degree % &g).is_zero() {
            return Err(Error::InvalidWeights(format!(
                "gcd of weights {g} does not divide degree {degree}"
            )));
        }
        for w in &mut weights {
            *w = &*w / &g;
        }
        weights.sort();
        Ok(Self {
            weights,
            degree: degree / g,
        })
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn degree(&self) -> &BigUint {
        &self.degree
    }

    /// Number of variables `n + 1`.
    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    /// Dimension `2 nvars - 3` of the link.
    pub fn link_dim(&self) -> usize {
        2 * self.nvars() - 3
    }

    /// `|w| = w_0 + ... + w_n`.
    pub fn weight_sum(&self) -> BigUint {
        self.weights.iter().sum()
    }

    /// Canonical catalog key, `w:6,10,15@30`.
    pub fn key(&self) -> String {
        format!("w:{}@{}", join(&self.weights), self.degree)
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", join(&self.weights), self.degree)
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Exponents `a_0, ..., a_n` of a Brieskorn-Pham polynomial `Σ z_i^{a_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BpExponents(Vec<u64>);

impl BpExponents {
    pub fn new(exponents: impl Into<Vec<u64>>) -> Result<Self> {
        let exponents = exponents.into();
        if exponents.is_empty() {
            return Err(Error::InvalidWeights("no exponents".into()));
        }
        if let Some(&a) = exponents.iter().find(|&&a| a < 2) {
            return Err(Error::DegenerateExponent(a as i64));
        }
        Ok(Self(exponents))
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// Exponents sorted ascending; the permutation-invariant form.
    pub fn sorted(&self) -> Vec<u64> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }

    /// Canonical catalog key, `bp:2,3,5`.
    pub fn key(&self) -> String {
        format!("bp:{}", join(&self.sorted()))
    }

    /// `d = lcm(a_0, ..., a_n)`.
    pub fn degree(&self) -> BigUint {
        self.0
            .iter()
            .fold(BigUint::one(), |acc, &a| acc.lcm(&BigUint::from(a)))
    }

    /// `Σ 1/a_i` as an exact rational.
    pub fn reciprocal_sum(&self) -> BigRational {
        self.0
            .iter()
            .map(|&a| BigRational::new(1.into(), a.into()))
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// True when every pair of exponents is coprime.
    pub fn pairwise_coprime(&self) -> bool {
        pairwise_coprime(&self.0)
    }
}

impl fmt::Display for BpExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({})", join(&self.0))
    }
}

pub(crate) fn pairwise_coprime(values: &[u64]) -> bool {
    values
        .iter()
        .enumerate()
        .all(|(i, a)| values[i + 1..].iter().all(|b| a.gcd(b) == 1))
}

/// Sign of the basic first Chern class of the induced Sasakian structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignClass {
    Positive,
    Null,
    Negative,
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignClass::Positive => "positive",
            SignClass::Null => "null",
            SignClass::Negative => "negative",
        })
    }
}

impl FromStr for SignClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "positive" | "pos" | "+" => Ok(SignClass::Positive),
            "null" | "zero" | "0" => Ok(SignClass::Null),
            "negative" | "neg" | "-" => Ok(SignClass::Negative),
            other => Err(Error::Parse(format!("unknown sign class {other:?}"))),
        }
    }
}

/// Exponent vectors of the monomials of a polynomial, one row per monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    rows: Vec<Vec<u64>>,
}

impl MonomialMatrix {
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::InvalidMonomials("no monomials".into()));
        };
        let width = first.len();
        if width == 0 {
            return Err(Error::InvalidMonomials(
                "monomials have no variables".into(),
            ));
        }
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidMonomials("rows differ in length".into()));
        }
        Ok(Self { rows })
    }

    /// The diagonal matrix of `Σ z_i^{a_i}`.
    pub fn brieskorn_pham(a: &BpExponents) -> Self {
        let n = a.nvars();
        let rows = (0..n)
            .map(|i| {
                let mut row = vec![0; n];
                row[i] = a.exponents()[i];
                row
            })
            .collect();
        Self { rows }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn nvars(&self) -> usize {
        self.rows[0].len()
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| join(r)).collect();
        write!(f, "mono:[{}]", rows.join(";"))
    }
}

/// A link given either by Brieskorn-Pham exponents, by a weight system or by
/// the monomials of a polynomial.
///
/// Textual forms: `bp:5,3,2`, `w:13,43,101,158@316`,
/// `mono:[21,1,0,0;0,5,1,0;1,0,3,0;0,0,0,2]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LinkDescriptor {
    Bp(BpExponents),
    Weights(WeightSystem),
    Monomials(MonomialMatrix),
}

impl LinkDescriptor {
    pub fn weight_system(&self) -> Result<WeightSystem> {
        match self {
            LinkDescriptor::Bp(a) => bp_link(a),
            LinkDescriptor::Weights(ws) => Ok(ws.clone()),
            LinkDescriptor::Monomials(m) => solve_weights(m),
        }
    }

    pub fn bp(&self) -> Option<&BpExponents> {
        match self {
            LinkDescriptor::Bp(a) => Some(a),
            _ => None,
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            LinkDescriptor::Bp(a) => a.nvars(),
            LinkDescriptor::Weights(ws) => ws.nvars(),
            LinkDescriptor::Monomials(m) => m.nvars(),
        }
    }

    /// Canonical key: sorted exponents for Brieskorn-Pham links, the
    /// canonical weight system otherwise.
    pub fn key(&self) -> Result<String> {
        match self {
            LinkDescriptor::Bp(a) => Ok(a.key()),
            other => Ok(other.weight_system()?.key()),
        }
    }
}

impl fmt::Display for LinkDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkDescriptor::Bp(a) => write!(f, "bp:{}", join(a.exponents())),
            LinkDescriptor::Weights(ws) => f.write_str(&ws.key()),
            LinkDescriptor::Monomials(m) => m.fmt(f),
        }
    }
}

fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|_| Error::Parse(format!("not a nonnegative integer: {t:?}")))
        })
        .collect()
}

impl FromStr for LinkDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("bp:") {
            let a: Vec<u64> = parse_list(rest)?;
            return Ok(LinkDescriptor::Bp(BpExponents::new(a)?));
        }
        if let Some(rest) = s.strip_prefix("w:") {
            let (w, d) = rest
                .split_once('@')
                .ok_or_else(|| Error::Parse("weight system needs '@degree'".into()))?;
            let w: Vec<BigUint> = parse_list(w)?;
            let d: BigUint = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad degree {d:?}")))?;
            return Ok(LinkDescriptor::Weights(WeightSystem::new(w, d)?));
        }
        if let Some(rest) = s.strip_prefix("mono:") {
            let body = rest
                .trim()
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| Error::Parse("monomial matrix must be bracketed".into()))?;
            let rows = body
                .split(';')
                .map(parse_list::<u64>)
                .collect::<Result<Vec<_>>>()?;
            return Ok(LinkDescriptor::Monomials(MonomialMatrix::new(rows)?));
        }
        Err(Error::Parse(format!(
            "expected bp:..., w:...@d or mono:[...], got {s:?}"
        )))
    }
}

/// Weight system of the Brieskorn-Pham link `L(a)`: `d = lcm(a)`, `w_j = d / a_j`.
pub fn bp_link(a: &BpExponents) -> Result<WeightSystem> {
    let d = a.degree();
    let weights: Vec<BigUint> = a.exponents().iter().map(|&e| &d / e).collect();
    WeightSystem::new(weights, d)
}

/// Sign of `|w| - d`: positive when the weights outweigh the degree.
pub fn classify_sign(ws: &WeightSystem) -> SignClass {
    match ws.weight_sum().cmp(ws.degree()) {
        Ordering::Greater => SignClass::Positive,
        Ordering::Equal => SignClass::Null,
        Ordering::Less => SignClass::Negative,
    }
}

/// Solves `Σ_j m_ij w_j = d` for every monomial row and returns the unique
/// primitive positive solution.
pub fn solve_weights(m: &MonomialMatrix) -> Result<WeightSystem> {
    let n = m.nvars();
    // unknowns (w_0, ..., w_{n-1}, d)
    let system: Vec<Vec<BigRational>> = m
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&e| BigRational::from_integer(e.into()))
                .chain(std::iter::once(-BigRational::one()))
                .collect()
        })
        .collect();
    let kernel = linalg::kernel(system, n + 1);
    match kernel.len() {
        0 => Err(Error::NoPositiveSolution),
        1 => {
            let v = &kernel[0];
            let ints = linalg::primitive_integer(v);
            let sign = if ints[n].is_negative() { -1 } else { 1 };
            let ints: Vec<num_bigint::BigInt> = ints.into_iter().map(|x| x * sign).collect();
            if ints.iter().any(|x| !x.is_positive()) {
                return Err(Error::NoPositiveSolution);
            }
            let (w, d) = ints.split_at(n);
            let w: Vec<BigUint> = w.iter().map(|x| x.magnitude().clone()).collect();
            WeightSystem::new(w, d[0].magnitude().clone())
        }
        k => Err(Error::RankDeficient {
            rank: n + 1 - k,
            needed: n,
        }),
    }
}

/// Solves the monomial system and demands the given degree. Any integral
/// solution is a multiple of the primitive one, so the degree must be a
/// multiple of the primitive degree.
pub fn solve_weights_at_degree(m: &MonomialMatrix, degree: &BigUint) -> Result<WeightSystem> {
    let ws = solve_weights(m)?;
    if (degree % ws.degree()).is_zero() {
        Ok(ws)
    } else {
        Err(Error::NoPositiveSolution)
    }
}

/// Number of monomials `z^m` of weighted degree exactly `d`.
pub fn count_monomials(ws: &WeightSystem) -> Result<BigUint> {
    let d = ws
        .degree()
        .to_usize()
        .filter(|&d| d <= 100_000_000)
        .ok_or_else(|| Error::TooLarge(format!("degree {} too large to count", ws.degree())))?;
    let mut ways = vec![BigUint::zero(); d + 1];
    ways[0] = BigUint::one();
    for w in ws.weights() {
        let Some(w) = w.to_usize().filter(|&w| w <= d) else {
            continue;
        };
        for k in w..=d {
            let (lo, hi) = ways.split_at_mut(k);
            hi[0] += &lo[k - w];
        }
    }
    Ok(ways.swap_remove(d))
}

/// Well-formedness of a 4-variable weight system: every triple of weights is
/// coprime. A well-formed 5-dimensional link has torsion-free homology.
pub fn is_well_formed(ws: &WeightSystem) -> Result<bool> {
    if ws.nvars() != 4 {
        return Err(Error::DimensionUnsupported {
            expected: "4",
            got: ws.nvars(),
        });
    }
    let w = ws.weights();
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                if !w[i].gcd(&w[j]).gcd(&w[k]).is_one() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Fundamental group class of a 3-dimensional link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pi1Class {
    Finite,
    InfiniteNilpotent,
    Infinite,
}

pub fn pi1_class(ws: &WeightSystem) -> Result<Pi1Class> {
    if ws.nvars() != 3 {
        return Err(Error::DimensionUnsupported {
            expected: "3",
            got: ws.nvars(),
        });
    }
    Ok(match classify_sign(ws) {
        SignClass::Positive => Pi1Class::Finite,
        SignClass::Null => Pi1Class::InfiniteNilpotent,
        SignClass::Negative => Pi1Class::Infinite,
    })
}

/// Dynkin label of a positive 3-dimensional link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdeLabel {
    /// `z_0^p + z_1^2 + z_2^2`, labelled `A_{p-1}`.
    A(u64),
    /// `z_0^2 z_1 + z_1^m + z_2^2`.
    D(u64),
    E6,
    E7,
    E8,
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeLabel::A(k) => write!(f, "A_{k}"),
            AdeLabel::D(m) => write!(f, "D_{m}"),
            AdeLabel::E6 => f.write_str("E6"),
            AdeLabel::E7 => f.write_str("E7"),
            AdeLabel::E8 => f.write_str("E8"),
        }
    }
}

fn table_row(rows: Vec<Vec<u64>>) -> Option<WeightSystem> {
    MonomialMatrix::new(rows)
        .ok()
        .and_then(|m| solve_weights(&m).ok())
}

fn a_row(p: u64) -> Option<WeightSystem> {
    table_row(vec![vec![p, 0, 0], vec![0, 2, 0], vec![0, 0, 2]])
}

fn d_row(m: u64) -> Option<WeightSystem> {
    table_row(vec![vec![2, 1, 0], vec![0, m, 0], vec![0, 0, 2]])
}

/// Matches a weight system against the representative polynomials of the
/// spherical space forms `S^3/Γ`.
pub fn ade_match(ws: &WeightSystem) -> Option<AdeLabel> {
    if ws.nvars() != 3 || classify_sign(ws) != SignClass::Positive {
        return None;
    }
    let exceptional = [
        (
            AdeLabel::E6,
            vec![vec![4, 0, 0], vec![0, 3, 0], vec![0, 0, 2]],
        ),
        (
            AdeLabel::E7,
            vec![vec![3, 0, 0], vec![1, 3, 0], vec![0, 0, 2]],
        ),
        (
            AdeLabel::E8,
            vec![vec![5, 0, 0], vec![0, 3, 0], vec![0, 0, 2]],
        ),
    ];
    for (label, rows) in exceptional {
        if table_row(rows).as_ref() == Some(ws) {
            return Some(label);
        }
    }
    let d = ws.degree().to_u64()?;
    // A_{p-1} has degree p (p even) or 2p (p odd); D_m has degree 2m.
    for p in [d, d / 2] {
        if p >= 2 && a_row(p).as_ref() == Some(ws) {
            return Some(AdeLabel::A(p - 1));
        }
    }
    if d % 2 == 0 && d / 2 >= 3 && d_row(d / 2).as_ref() == Some(ws) {
        return Some(AdeLabel::D(d / 2));
    }
    None
}
