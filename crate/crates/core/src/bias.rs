//! Bias degrees, overlaps between graph states and Z-balanced graphs.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::VertexSet;
use crate::graphs::{canonical_form, Graph};
use crate::sign::Sign;
use crate::stab::parity_unchecked;
use crate::xchains::{factorize, xchain_group};

/// Largest vertex count accepted by [`enumerate_balanced`].
pub const CATALOG_MAX_N: usize = 5;

/// Exact value `sign · 2^{-half_log/2}` with `sign ∈ {-1, 0, +1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct DyadicReal {
    sign: i8,
    half_log: u32,
}

impl DyadicReal {
    pub const ZERO: DyadicReal = DyadicReal { sign: 0, half_log: 0 };
    pub const ONE: DyadicReal = DyadicReal { sign: 1, half_log: 0 };

    pub fn new(sign: Sign, half_log: u32) -> Self {
        Self { sign: sign.to_i8(), half_log }
    }

    /// `num / 2^log2_den`, which must be zero or of the form `±2^{-m/2}`.
    pub fn from_ratio(num: i128, log2_den: u32) -> Result<Self> {
        if num == 0 {
            return Ok(Self::ZERO);
        }
        let mag = num.unsigned_abs();
        if !mag.is_power_of_two() {
            return Err(Error::Invariant(format!("{num}/2^{log2_den} is not a power of two")));
        }
        let e = mag.trailing_zeros();
        if e > log2_den {
            return Err(Error::Invariant(format!("{num}/2^{log2_den} exceeds one")));
        }
        let sign = if num < 0 { Sign::Minus } else { Sign::Plus };
        Ok(Self::new(sign, 2 * (log2_den - e)))
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// `-1`, `0` or `+1`.
    pub fn signum(self) -> i8 {
        self.sign
    }

    pub fn half_log(self) -> u32 {
        self.half_log
    }

    /// Square of the value as an exact fraction.
    pub fn squared(self) -> Ratio<u128> {
        if self.is_zero() {
            Ratio::from_integer(0)
        } else {
            Ratio::new(1, 1u128 << self.half_log.min(127))
        }
    }

    /// Nearest `f64`, for display only.
    pub fn to_f64(self) -> f64 {
        self.sign as f64 * 2f64.powf(-(self.half_log as f64) / 2.0)
    }
}

impl Mul for DyadicReal {
    type Output = DyadicReal;
    fn mul(self, rhs: DyadicReal) -> DyadicReal {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self { sign: self.sign * rhs.sign, half_log: self.half_log + rhs.half_log }
    }
}

impl Neg for DyadicReal {
    type Output = DyadicReal;
    fn neg(self) -> DyadicReal {
        Self { sign: -self.sign, ..self }
    }
}

impl fmt::Display for DyadicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => f.write_str("0"),
            s => write!(f, "{}2^-{}/2", if s > 0 { '+' } else { '-' }, self.half_log),
        }
    }
}

impl FromStr for DyadicReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not of the form 0 or ±2^-m/2"));
        match s {
            "0" => return Ok(Self::ZERO),
            "1" | "+1" => return Ok(Self::ONE),
            "-1" => return Ok(-Self::ONE),
            _ => {}
        }
        let (sign, rest) = match s.as_bytes().first() {
            Some(b'+') => (Sign::Plus, &s[1..]),
            Some(b'-') => (Sign::Minus, &s[1..]),
            _ => return Err(bad()),
        };
        let m = rest
            .strip_prefix("2^-")
            .and_then(|r| r.strip_suffix("/2"))
            .ok_or_else(bad)?
            .parse::<u32>()
            .map_err(|_| bad())?;
        Ok(Self::new(sign, m))
    }
}

impl From<DyadicReal> for String {
    fn from(d: DyadicReal) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for DyadicReal {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// `β = ⟨0_X^⊗n|G⟩`.
pub fn bias_degree(g: &Graph) -> Result<DyadicReal> {
    if is_balanced(g) {
        return Ok(DyadicReal::ZERO);
    }
    let xd = factorize(g);
    Ok(DyadicReal::new(xd.alpha()?, xd.kappa.len() as u32))
}

/// `⟨G|H⟩ = β(G Δ H)`.
pub fn overlap(g: &Graph, h: &Graph) -> Result<DyadicReal> {
    bias_degree(&g.symmetric_difference(h)?)
}

/// Some X-chain generator has negative stabilizer parity.
pub fn is_balanced(g: &Graph) -> bool {
    odd_xchain(g).is_some()
}

fn odd_xchain(g: &Graph) -> Option<VertexSet> {
    xchain_group(g).rows().iter().copied().find(|&r| parity_unchecked(g, r).is_minus())
}

/// Number of negative Z-basis amplitudes, `2^{n-1}(1 - β)`.
pub fn negative_weight(g: &Graph) -> Result<u64> {
    let n = g.n();
    let beta = bias_degree(g)?;
    let half = 1u64 << (n - 1);
    if beta.is_zero() {
        return Ok(half);
    }
    let m = beta.half_log();
    if m % 2 != 0 || m / 2 > (n - 1) as u32 {
        return Err(Error::Invariant(format!("2^{}·β is not an integer (m = {m})", n - 1)));
    }
    let shift = 1u64 << (n as u32 - 1 - m / 2);
    Ok(if beta.signum() > 0 { half - shift } else { half + shift })
}

/// An isomorphism class of Z-balanced graphs with an odd-parity X-chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedClass {
    pub edges: Vec<(usize, usize)>,
    pub n: usize,
    pub witness_xchain: VertexSet,
    pub witness_edge_count: u32,
}

impl BalancedClass {
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.n, &self.edges).expect("catalog edges are valid")
    }
}

/// All isomorphism classes of Z-balanced graphs on `n` vertices, in canonical form.
pub fn enumerate_balanced(n: usize) -> Result<Vec<BalancedClass>> {
    if n > CATALOG_MAX_N {
        return Err(Error::TooLarge { what: "enumerate_balanced", max: CATALOG_MAX_N, n });
    }
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    let pairs = n * (n - 1) / 2;
    let mut seen = std::collections::BTreeMap::new();
    for mask in 0..1u64 << pairs {
        let g = Graph::from_pair_mask(n, mask)?;
        if !is_balanced(&g) {
            continue;
        }
        let (canon, _) = canonical_form(&g)?;
        seen.entry(canon.canonical_key()).or_insert(canon);
    }
    let mut out: Vec<BalancedClass> = seen
        .into_values()
        .map(|g| {
            let w = odd_xchain(&g).expect("balanced graphs carry an odd X-chain");
            BalancedClass { edges: g.edges(), n, witness_xchain: w, witness_edge_count: g.induced_edge_count(w) }
        })
        .collect();
    out.sort_by(|a, b| (a.edges.len(), &a.edges).cmp(&(b.edges.len(), &b.edges)));
    Ok(out)
}

/// `H = G Δ D` for balanced `D`, so that `⟨G|H⟩ = 0`.
pub fn orthogonal_partner(d: &Graph, g: &Graph) -> Result<Graph> {
    if !is_balanced(d) {
        return Err(Error::NotBalanced);
    }
    g.symmetric_difference(d)
}
