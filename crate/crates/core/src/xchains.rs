//! X-chain groups and the X-basis representation of graph states.
//!
//! An X-chain is a vertex subset `ξ` with empty correlation index, i.e. a vector
//! of the GF(2) kernel of the adjacency matrix. Splitting the subset group into
//! the X-chain group and a complementary correlation group yields the X-basis
//! expansion
//!
//! ```text
//! |G⟩ = α · 2^{-|K|/2} · Σ_{ξ ∈ ⟨K⟩} π(ξ) |x_Γ ⊕ c_ξ⟩
//! ```
//!
//! where `x_Γ` is the fundamental X-chain string and `α = ±1` a global sign.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, Basis, BitVec, VertexSet};
use crate::graphs::Graph;
use crate::sign::Sign;
use crate::stab::{correlation_index_unchecked, parity_unchecked};

/// The global sign is summed over `2^|K|` terms only up to this many correlation generators.
pub const ALPHA_MAX_KAPPA: usize = 20;

/// Largest graph for which [`measurement_support`] lists outcomes.
pub const SUPPORT_MAX_N: usize = 20;

/// Exact probability of a measurement outcome.
pub type Probability = Ratio<u64>;

/// Factorization of the subset group into X-chain and correlation generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XChainData {
    /// X-chain group in reduced row-echelon form.
    pub gamma: Basis,
    /// Exclusive vertex of each X-chain generator (its pivot), 1-indexed.
    pub exclusive: Vec<usize>,
    /// Vertices whose singletons generate the correlation group.
    pub kappa: Vec<usize>,
    /// Fundamental X-chain string.
    pub x_gamma: VertexSet,
    /// Global sign; `None` when the correlation group is too large to sum over.
    pub alpha: Option<Sign>,
}

impl XChainData {
    pub fn n(&self) -> usize {
        self.gamma.width()
    }

    /// Indicator of the correlation-generator vertices.
    pub fn kappa_mask(&self) -> VertexSet {
        BitVec::from_vertices(self.n(), &self.kappa).expect("kappa vertices are in range")
    }

    /// Span of the correlation generators.
    pub fn correlation_space(&self) -> Basis {
        let rows: Vec<BitVec> = self
            .kappa
            .iter()
            .map(|&v| BitVec::singleton(self.n(), v).expect("in range"))
            .collect();
        Basis::span_of(self.n(), &rows).expect("widths agree")
    }

    /// Representative of `ξ`'s coset modulo the X-chain group, inside the correlation space.
    pub fn representative(&self, xi: VertexSet) -> VertexSet {
        self.gamma.reduce(xi)
    }

    /// Elements of the correlation group, in coefficient order over `kappa`.
    pub fn correlation_elements(&self) -> impl Iterator<Item = VertexSet> + '_ {
        let mask = self.kappa_mask();
        let k = self.kappa.len();
        (0..1u64 << k).map(move |c| BitVec::masked(k, c as u32).expand(mask))
    }

    pub fn alpha(&self) -> Result<Sign> {
        self.alpha.ok_or(Error::AlphaDeferred(self.kappa.len()))
    }
}

/// X-chain group: the kernel of `A_G` over GF(2).
pub fn xchain_group(g: &Graph) -> Basis {
    gf2::kernel(&g.adjacency_matrix())
}

/// Whether `|N_v ∩ ξ|` is even for every vertex.
pub fn is_xchain(g: &Graph, xi: VertexSet) -> Result<bool> {
    if xi.width() != g.n() {
        return Err(Error::WidthMismatch { left: g.n(), right: xi.width() });
    }
    Ok(correlation_index_unchecked(g, xi).is_zero())
}

pub fn factorize(g: &Graph) -> XChainData {
    let n = g.n();
    let gamma = xchain_group(g);
    let exclusive: Vec<usize> = gamma.pivots().iter().map(|p| p + 1).collect();
    let kappa: Vec<usize> = (1..=n).filter(|v| !exclusive.contains(v)).collect();
    let mut x_gamma = BitVec::zero(n);
    for (row, &p) in gamma.rows().iter().zip(gamma.pivots()) {
        if parity_unchecked(g, *row).is_minus() {
            x_gamma = x_gamma.with_bit(p, true);
        }
    }
    let alpha = (kappa.len() <= ALPHA_MAX_KAPPA).then(|| global_sign(g, &kappa));
    XChainData { gamma, exclusive, kappa, x_gamma, alpha }
}

/// Sign of `Σ_{ξ ⊆ kappa} π(ξ)`, walked in Gray-code order.
fn global_sign(g: &Graph, kappa: &[usize]) -> Sign {
    let n = g.n();
    let mut xi = BitVec::zero(n);
    let mut parity = Sign::Plus;
    let mut sum: i64 = 1;
    for step in 1..1u64 << kappa.len() {
        let v = kappa[step.trailing_zeros() as usize];
        // toggling v changes the induced edge count by |N_v ∩ ξ| (v ∉ N_v)
        parity *= Sign::from_parity(g.neighbors(v).dot(xi));
        xi = xi.with_bit(v - 1, !xi.bit(v - 1));
        sum += parity.to_i8() as i64;
    }
    // the sum never vanished in exhaustive checks; a zero would surface in the oracle comparison
    if sum >= 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// X-chain state `ψ_∅(ξ) = π(ξ)·|x_Γ ⊕ c_ξ⟩`.
pub fn xchain_state(g: &Graph, xd: &XChainData, xi: VertexSet) -> Result<(Sign, BitVec)> {
    if xi.width() != g.n() {
        return Err(Error::WidthMismatch { left: g.n(), right: xi.width() });
    }
    Ok((parity_unchecked(g, xi), xd.x_gamma ^ correlation_index_unchecked(g, xi)))
}

/// Signed X-basis expansion `2^{-m/2} Σ ±|bits⟩` over an ordered list of qubits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XBasisExpansion {
    /// 1-indexed vertices, in the order of the ket characters.
    pub qubits: Vec<usize>,
    pub half_log_norm: u32,
    pub terms: BTreeMap<BitVec, Sign>,
}

impl XBasisExpansion {
    pub fn basis_state(qubits: Vec<usize>, bits: BitVec) -> Self {
        Self { qubits, half_log_norm: 0, terms: BTreeMap::from([(bits, Sign::Plus)]) }
    }

    /// Unit norm holds exactly when there are `2^m` terms.
    pub fn is_normalized(&self) -> bool {
        self.half_log_norm < 63 && self.terms.len() as u64 == 1u64 << self.half_log_norm
    }

    /// `Σ s_i t_i` over common kets; the inner product is this times
    /// `2^{-(m1+m2)/2}`.
    pub fn overlap_numerator(&self, other: &Self) -> i64 {
        self.terms
            .iter()
            .filter_map(|(k, s)| other.terms.get(k).map(|t| (*s * *t).to_i8() as i64))
            .sum()
    }

    pub fn negated(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, s)| (*k, -*s)).collect(),
            ..self.clone()
        }
    }

    pub fn scaled_by(&self, sign: Sign) -> Self {
        match sign {
            Sign::Plus => self.clone(),
            Sign::Minus => self.negated(),
        }
    }

    /// Coefficient prefix such as `1/2` or `1/sqrt(2)`; empty for `m = 0`.
    pub fn coefficient_string(&self) -> String {
        coefficient_string(self.half_log_norm)
    }

    pub fn terms_string(&self) -> String {
        let mut out = String::new();
        for (i, (bits, sign)) in self.terms.iter().enumerate() {
            match (i, sign) {
                (0, Sign::Plus) => {}
                (0, Sign::Minus) => out.push('-'),
                (_, Sign::Plus) => out.push_str(" + "),
                (_, Sign::Minus) => out.push_str(" - "),
            }
            out.push_str(&format!("|{bits}>"));
        }
        out
    }
}

/// `2^{-m/2}` written as a fraction, e.g. `1/2`, `1/sqrt(2)`, `1/(2sqrt(2))`.
pub fn coefficient_string(m: u32) -> String {
    match (m / 2, m % 2) {
        (0, 0) => String::new(),
        (0, _) => "1/sqrt(2)".to_string(),
        (h, 0) => format!("1/{}", 1u64 << h.min(63)),
        (h, _) => format!("1/({}sqrt(2))", 1u64 << h.min(63)),
    }
}

impl fmt::Display for XBasisExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeff = self.coefficient_string();
        if coeff.is_empty() && self.terms.len() == 1 {
            write!(f, "{}", self.terms_string())
        } else {
            write!(f, "{coeff}({})", self.terms_string())
        }
    }
}

/// `K`-correlation state `2^{-|K|/2} Σ_{ξ'∈⟨K⟩} ψ_∅(ξ Δ ξ')`.
///
/// `k` must lie in the correlation space of `xd`.
pub fn correlation_state(g: &Graph, xd: &XChainData, k: &Basis, xi: VertexSet) -> Result<XBasisExpansion> {
    if xi.width() != g.n() {
        return Err(Error::WidthMismatch { left: g.n(), right: xi.width() });
    }
    if k.width() != g.n() {
        return Err(Error::WidthMismatch { left: g.n(), right: k.width() });
    }
    let space = xd.correlation_space();
    if k.rows().iter().any(|r| !space.reduce(*r).is_zero()) {
        return Err(Error::NotSubspace);
    }
    let mut terms = BTreeMap::new();
    for shift in k.elements() {
        let (sign, bits) = xchain_state(g, xd, xi ^ shift)?;
        if terms.insert(bits, sign).is_some() {
            return Err(Error::TermCollision(bits.to_string()));
        }
    }
    Ok(XBasisExpansion { qubits: (1..=g.n()).collect(), half_log_norm: k.dim() as u32, terms })
}

/// The graph state in the X-basis, including the global sign.
pub fn x_representation(g: &Graph) -> Result<XBasisExpansion> {
    let xd = factorize(g);
    x_representation_with(g, &xd)
}

pub fn x_representation_with(g: &Graph, xd: &XChainData) -> Result<XBasisExpansion> {
    let alpha = xd.alpha()?;
    let mut terms = BTreeMap::new();
    for xi in xd.correlation_elements() {
        let (sign, bits) = xchain_state(g, xd, xi)?;
        if terms.insert(bits, alpha * sign).is_some() {
            return Err(Error::Invariant(format!("X-chain states collide at {bits}")));
        }
    }
    Ok(XBasisExpansion { qubits: (1..=g.n()).collect(), half_log_norm: xd.kappa.len() as u32, terms })
}

/// Outcomes of measuring every qubit in the X-basis, each with probability `2^{-|K|}`.
pub fn measurement_support(g: &Graph) -> Result<Vec<(BitVec, Probability)>> {
    if g.n() > SUPPORT_MAX_N {
        return Err(Error::TooLarge { what: "measurement_support", max: SUPPORT_MAX_N, n: g.n() });
    }
    let xd = factorize(g);
    let p = Probability::new(1, 1u64 << xd.kappa.len());
    let outcomes: BTreeSet<BitVec> = xd
        .correlation_elements()
        .map(|xi| xd.x_gamma ^ correlation_index_unchecked(g, xi))
        .collect();
    Ok(outcomes.into_iter().map(|b| (b, p)).collect())
}

/// Outcomes possible for only one of the two graph states.
pub fn distinguishing_outcomes(g: &Graph, h: &Graph) -> Result<(BTreeSet<BitVec>, BTreeSet<BitVec>)> {
    if g.n() != h.n() {
        return Err(Error::WidthMismatch { left: g.n(), right: h.n() });
    }
    let sg: BTreeSet<BitVec> = measurement_support(g)?.into_iter().map(|(b, _)| b).collect();
    let sh: BTreeSet<BitVec> = measurement_support(h)?.into_iter().map(|(b, _)| b).collect();
    Ok((sg.difference(&sh).copied().collect(), sh.difference(&sg).copied().collect()))
}
