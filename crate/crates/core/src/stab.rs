//! Graph-state stabilizers in the normal form `±σ_X^(x)·σ_Z^(z)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitVec, VertexSet};
use crate::graphs::Graph;
use crate::sign::Sign;

/// `phase · σ_X^(x_set) · σ_Z^(z_set)`, X factors to the left of Z factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliStabilizer {
    pub phase: Sign,
    pub x_set: VertexSet,
    pub z_set: VertexSet,
}

impl PauliStabilizer {
    pub fn identity(n: usize) -> Self {
        Self { phase: Sign::Plus, x_set: BitVec::zero(n), z_set: BitVec::zero(n) }
    }

    pub fn width(&self) -> usize {
        self.x_set.width()
    }

    pub fn is_identity(&self) -> bool {
        self.phase == Sign::Plus && self.x_set.is_zero() && self.z_set.is_zero()
    }

    /// Product `self · other` as Pauli operators.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.width() != other.width() {
            return Err(Error::WidthMismatch { left: self.width(), right: other.width() });
        }
        // moving Z^(z1) past X^(x2) costs (-1)^{|z1 ∩ x2|}
        let swap = Sign::from_parity(self.z_set.dot(other.x_set));
        Ok(Self {
            phase: self.phase * other.phase * swap,
            x_set: self.x_set ^ other.x_set,
            z_set: self.z_set ^ other.z_set,
        })
    }
}

impl fmt::Display for PauliStabilizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase)?;
        if self.x_set.is_zero() && self.z_set.is_zero() {
            return f.write_str("I");
        }
        if !self.x_set.is_zero() {
            write!(f, "X{}", self.x_set.to_set_string())?;
        }
        if !self.z_set.is_zero() {
            if !self.x_set.is_zero() {
                f.write_str(" ")?;
            }
            write!(f, "Z{}", self.z_set.to_set_string())?;
        }
        Ok(())
    }
}

fn check_set(g: &Graph, xi: VertexSet) -> Result<()> {
    if xi.width() == g.n() {
        Ok(())
    } else {
        Err(Error::WidthMismatch { left: g.n(), right: xi.width() })
    }
}

/// Generator `g_v = σ_X^(v) σ_Z^(N_v)`.
pub fn generator(g: &Graph, v: usize) -> Result<PauliStabilizer> {
    if v == 0 || v > g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    Ok(PauliStabilizer {
        phase: Sign::Plus,
        x_set: BitVec::singleton(g.n(), v)?,
        z_set: g.neighbors(v),
    })
}

/// `c_ξ = Δ_{v∈ξ} N_v`, i.e. `A_G·ξ` over GF(2).
pub fn correlation_index(g: &Graph, xi: VertexSet) -> Result<VertexSet> {
    check_set(g, xi)?;
    Ok(correlation_index_unchecked(g, xi))
}

pub(crate) fn correlation_index_unchecked(g: &Graph, xi: VertexSet) -> VertexSet {
    let mut c = BitVec::zero(g.n());
    for j in 0..g.n() {
        if xi.bit(j) {
            c ^= g.adjacency()[j];
        }
    }
    c
}

/// `π_G(ξ) = (-1)^{|E(G[ξ])|}`.
pub fn stabilizer_parity(g: &Graph, xi: VertexSet) -> Result<Sign> {
    check_set(g, xi)?;
    Ok(parity_unchecked(g, xi))
}

pub(crate) fn parity_unchecked(g: &Graph, xi: VertexSet) -> Sign {
    Sign::from_parity(g.induced_edge_count(xi) & 1 == 1)
}

/// The ξ-induced stabilizer `Π_{v∈ξ} g_v = π_G(ξ)·σ_X^(ξ)·σ_Z^(c_ξ)`.
pub fn induced_stabilizer(g: &Graph, xi: VertexSet) -> Result<PauliStabilizer> {
    check_set(g, xi)?;
    Ok(PauliStabilizer {
        phase: parity_unchecked(g, xi),
        x_set: xi,
        z_set: correlation_index_unchecked(g, xi),
    })
}

/// `|E_G(a:b)| mod 2`, taken as the bilinear form `aᵀ·A_G·b`.
pub fn cut_parity(g: &Graph, a: VertexSet, b: VertexSet) -> Result<bool> {
    check_set(g, a)?;
    check_set(g, b)?;
    Ok(cut_parity_unchecked(g, a, b))
}

pub(crate) fn cut_parity_unchecked(g: &Graph, a: VertexSet, b: VertexSet) -> bool {
    correlation_index_unchecked(g, a).dot(b)
}

/// Product of two induced stabilizers of `g`; equals `s(ξ1 Δ ξ2)`.
pub fn multiply(g: &Graph, s1: &PauliStabilizer, s2: &PauliStabilizer) -> Result<PauliStabilizer> {
    check_set(g, s1.x_set)?;
    check_set(g, s2.x_set)?;
    let cut = Sign::from_parity(cut_parity_unchecked(g, s1.x_set, s2.x_set));
    let out = PauliStabilizer {
        phase: s1.phase * s2.phase * cut,
        x_set: s1.x_set ^ s2.x_set,
        z_set: s1.z_set ^ s2.z_set,
    };
    debug_assert_eq!(Some(out), s1.product(s2).ok());
    Ok(out)
}
