//! Dense brute-force reference implementation in exact integer arithmetic.
//!
//! A [`DenseState`] stores `2^n` integer amplitudes with a scale `t`; the
//! represented vector is `amps · 2^{-t/2}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{CheckedMul, CheckedSub, Signed};

use crate::bias::DyadicReal;
use crate::error::{Error, Result};
use crate::gf2::{BitVec, VertexSet};
use crate::graphs::{Bipartition, Graph};
use crate::stab::{correlation_index_unchecked, PauliStabilizer};
use crate::xchains::{Probability, XBasisExpansion};

/// Largest graph the dense oracle accepts.
pub const ORACLE_MAX_N: usize = 14;

/// Largest graph [`brute_xchains`] enumerates.
pub const BRUTE_MAX_N: usize = 20;

/// Integer types usable as exact amplitudes.
pub trait Amplitude: Clone + Debug + PartialEq + Signed + From<i8> + CheckedMul + CheckedSub {}

impl<T: Clone + Debug + PartialEq + Signed + From<i8> + CheckedMul + CheckedSub> Amplitude for T {}

/// Basis the amplitudes are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Frame {
    Z,
    X,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState<T> {
    pub n: usize,
    pub amps: Vec<T>,
    pub scale: u32,
    pub frame: Frame,
}

impl<T: Amplitude> DenseState<T> {
    pub fn zeros(n: usize, scale: u32, frame: Frame) -> Result<Self> {
        check_n(n, "dense state")?;
        Ok(Self { n, amps: vec![T::zero(); 1 << n], scale, frame })
    }

    /// `Σ amps² = 2^scale`.
    pub fn is_normalized(&self) -> bool {
        let mut total = T::zero();
        for a in &self.amps {
            total = total + a.clone() * a.clone();
        }
        let mut target = T::one();
        for _ in 0..self.scale {
            target = target.clone() + target;
        }
        total == target
    }

    /// Removes common factors of two so equal vectors compare equal.
    pub fn canonical(mut self) -> Self {
        let two = T::from(2);
        while self.scale >= 2 && self.amps.iter().all(|a| (a.clone() % two.clone()).is_zero()) {
            for a in &mut self.amps {
                *a = a.clone() / two.clone();
            }
            self.scale -= 2;
        }
        self
    }

    pub fn same_state(&self, other: &Self) -> bool {
        self.n == other.n && self.frame == other.frame && self.clone().canonical() == other.clone().canonical()
    }

    pub fn negated(mut self) -> Self {
        for a in &mut self.amps {
            *a = -a.clone();
        }
        self
    }

    /// Nonzero amplitudes in index order.
    pub fn support(&self) -> Vec<(BitVec, T)> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (BitVec::masked(self.n, i as u32), a.clone()))
            .collect()
    }
}

fn check_n(n: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge { what, max: ORACLE_MAX_N, n });
    }
    Ok(())
}

fn parities(g: &Graph) -> Vec<bool> {
    // odd[ξ] = odd[ξ \ {j}] ⊕ |N_j ∩ (ξ \ {j})| for the lowest member j
    let size = 1usize << g.n();
    let mut odd = vec![false; size];
    for i in 1..size {
        let j = i.trailing_zeros() as usize;
        let rest = i & (i - 1);
        odd[i] = odd[rest] ^ ((g.adjacency()[j].bits() as usize & rest).count_ones() & 1 == 1);
    }
    odd
}

/// `amps[i^(ξ)] = π_G(ξ)` in the Z-basis, scale `n`.
pub fn dense_state_z<T: Amplitude>(g: &Graph) -> Result<DenseState<T>> {
    check_n(g.n(), "dense_state_z")?;
    let amps = parities(g)
        .into_iter()
        .map(|odd| if odd { -T::one() } else { T::one() })
        .collect();
    Ok(DenseState { n: g.n(), amps, scale: g.n() as u32, frame: Frame::Z })
}

/// Unnormalized Walsh-Hadamard transform on every qubit; scale grows by `n`.
pub fn dense_to_x<T: Amplitude>(s: &DenseState<T>) -> DenseState<T> {
    let mut amps = s.amps.clone();
    let mut h = 1;
    while h < amps.len() {
        for start in (0..amps.len()).step_by(2 * h) {
            for i in start..start + h {
                let (x, y) = (amps[i].clone(), amps[i + h].clone());
                amps[i] = x.clone() + y.clone();
                amps[i + h] = x - y;
            }
        }
        h *= 2;
    }
    let frame = match s.frame {
        Frame::Z => Frame::X,
        Frame::X => Frame::Z,
    };
    DenseState { n: s.n, amps, scale: s.scale + s.n as u32, frame }
}

/// `p·s` computed exactly.
pub fn apply_pauli<T: Amplitude>(s: &DenseState<T>, p: &PauliStabilizer) -> Result<DenseState<T>> {
    if p.width() != s.n {
        return Err(Error::WidthMismatch { left: s.n, right: p.width() });
    }
    let (x, z) = (p.x_set.bits() as usize, p.z_set.bits() as usize);
    let phase_minus = p.phase.is_minus();
    let amps = (0..s.amps.len())
        .map(|i| {
            // Z frame: (Pψ)[i] = ±(-1)^{(i⊕x)·z} ψ[i⊕x]; X frame: (Pψ)[i] = ±(-1)^{i·x} ψ[i⊕z]
            let (src, odd) = match s.frame {
                Frame::Z => (i ^ x, ((i ^ x) & z).count_ones() & 1 == 1),
                Frame::X => (i ^ z, (i & x).count_ones() & 1 == 1),
            };
            let v = s.amps[src].clone();
            if odd ^ phase_minus {
                -v
            } else {
                v
            }
        })
        .collect();
    Ok(DenseState { amps, ..s.clone() })
}

/// Whether `p` fixes `s` exactly.
pub fn check_stabilizer<T: Amplitude>(s: &DenseState<T>, p: &PauliStabilizer) -> Result<bool> {
    Ok(apply_pauli(s, p)?.amps == s.amps)
}

/// Entrywise sum of states with equal scale and frame.
pub fn add_states<T: Amplitude>(a: &DenseState<T>, b: &DenseState<T>) -> Result<DenseState<T>> {
    if a.n != b.n {
        return Err(Error::WidthMismatch { left: a.n, right: b.n });
    }
    if a.scale != b.scale || a.frame != b.frame {
        return Err(Error::Invariant("states differ in scale or frame".into()));
    }
    let amps = a.amps.iter().zip(&b.amps).map(|(x, y)| x.clone() + y.clone()).collect();
    Ok(DenseState { amps, ..a.clone() })
}

/// `⟨G|H⟩` from the Z-basis amplitudes.
pub fn dense_overlap(g: &Graph, h: &Graph) -> Result<DyadicReal> {
    if g.n() != h.n() {
        return Err(Error::WidthMismatch { left: g.n(), right: h.n() });
    }
    let a = dense_state_z::<i64>(g)?;
    let b = dense_state_z::<i64>(h)?;
    let dot: i64 = a.amps.iter().zip(&b.amps).map(|(x, y)| x * y).sum();
    DyadicReal::from_ratio(dot as i128, g.n() as u32)
}

/// Rank of a rectangular integer matrix by fraction-free elimination.
///
/// Returns `None` if an intermediate value overflows `T`.
pub fn bareiss_rank<T: Amplitude>(mut m: Vec<Vec<T>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let lhs = m[rank][col].checked_mul(&m[r][c])?;
                let rhs = m[r][col].checked_mul(&m[rank][c])?;
                m[r][c] = lhs.checked_sub(&rhs)? / prev.clone();
            }
            m[r][col] = T::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn reshape<T: Amplitude>(s: &DenseState<T>, rows_mask: VertexSet, cols_mask: VertexSet) -> Vec<Vec<T>> {
    let nr = 1usize << rows_mask.weight();
    let nc = 1usize << cols_mask.weight();
    (0..nr)
        .map(|r| {
            let hi = BitVec::masked(rows_mask.weight() as usize, r as u32).expand(rows_mask);
            (0..nc)
                .map(|c| {
                    let lo = BitVec::masked(cols_mask.weight() as usize, c as u32).expand(cols_mask);
                    s.amps[(hi | lo).bits() as usize].clone()
                })
                .collect()
        })
        .collect()
}

/// Exact rank of the amplitude matrix reshaped along the bipartition.
pub fn dense_schmidt_rank(g: &Graph, part: &Bipartition) -> Result<usize> {
    if part.n() != g.n() {
        return Err(Error::WidthMismatch { left: g.n(), right: part.n() });
    }
    let s = dense_state_z::<i64>(g)?;
    let (a, b) = (part.a(), part.b());
    let (rows, cols) = if a.weight() <= b.weight() { (a, b) } else { (b, a) };
    let m = reshape(&s, rows, cols);
    let small: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    if let Some(r) = bareiss_rank(small) {
        return Ok(r);
    }
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    bareiss_rank(big).ok_or_else(|| Error::Invariant("unbounded integers overflowed".into()))
}

/// All X-chains by direct enumeration.
pub fn brute_xchains(g: &Graph) -> Result<BTreeSet<VertexSet>> {
    if g.n() > BRUTE_MAX_N {
        return Err(Error::TooLarge { what: "brute_xchains", max: BRUTE_MAX_N, n: g.n() });
    }
    Ok((0..1u64 << g.n())
        .map(|i| BitVec::masked(g.n(), i as u32))
        .filter(|&xi| correlation_index_unchecked(g, xi).is_zero())
        .collect())
}

/// Born distribution of a full X-basis measurement.
pub fn x_distribution(g: &Graph) -> Result<BTreeMap<BitVec, Probability>> {
    let x = dense_to_x(&dense_state_z::<i64>(g)?);
    let den = 1u64 << x.scale;
    Ok(x
        .support()
        .into_iter()
        .map(|(k, a)| (k, Probability::new((a * a) as u64, den)))
        .collect())
}

/// Dense X-frame vector of an expansion over qubits drawn from `1..=n`.
pub fn expansion_to_dense<T: Amplitude>(e: &XBasisExpansion, n: usize) -> Result<DenseState<T>> {
    let mut out = DenseState::zeros(n, e.half_log_norm, Frame::X)?;
    let mask = BitVec::from_vertices(n, &e.qubits)?;
    if mask.weight() as usize != e.qubits.len() || e.qubits.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invariant("expansion qubits must be strictly increasing".into()));
    }
    for (bits, sign) in &e.terms {
        let idx = bits.expand(mask).bits() as usize;
        out.amps[idx] = if sign.is_minus() { -T::one() } else { T::one() };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::named;
    use crate::sign::Sign;
    use crate::stab::{generator, induced_stabilizer};

    fn g(s: &str) -> Graph {
        named(s).unwrap()
    }

    #[test]
    fn z_states() {
        let s = dense_state_z::<i64>(&g("empty:1")).unwrap();
        assert_eq!((s.amps.clone(), s.scale), (vec![1, 1], 1));
        let c3 = dense_state_z::<i64>(&g("cycle:3")).unwrap();
        assert_eq!(c3.amps.iter().filter(|&&a| a < 0).count(), 4);
        assert!(c3.is_normalized());
        let k4 = dense_state_z::<i64>(&g("k4minus1")).unwrap();
        assert_eq!(k4.amps.iter().filter(|&&a| a < 0).count(), 8);
        assert!(dense_state_z::<i64>(&Graph::empty(15).unwrap()).is_err());
    }

    #[test]
    fn x_transform() {
        let e = dense_to_x(&dense_state_z::<i64>(&g("empty:3")).unwrap()).canonical();
        assert_eq!(e.support(), vec![(BitVec::zero(3), 1)]);
        assert_eq!(e.scale, 0);

        let k4 = dense_state_z::<i64>(&g("k4minus1")).unwrap();
        let x = dense_to_x(&k4);
        assert!(x.is_normalized());
        let sup: Vec<(String, i64)> = x.clone().canonical().support().into_iter().map(|(b, a)| (b.to_string(), a)).collect();
        assert_eq!(
            sup,
            vec![("1000".into(), 1), ("0010".into(), 1), ("0101".into(), 1), ("1111".into(), -1)]
        );
        let back = dense_to_x(&x);
        assert_eq!(back.frame, Frame::Z);
        assert!(back.same_state(&k4));
    }

    #[test]
    fn stabilizer_checks() {
        for name in ["house", "k4minus1", "cycle:5", "star:4"] {
            let gr = g(name);
            let z = dense_state_z::<i64>(&gr).unwrap();
            let x = dense_to_x(&z);
            for v in 1..=gr.n() {
                let p = generator(&gr, v).unwrap();
                assert!(check_stabilizer(&z, &p).unwrap());
                assert!(check_stabilizer(&x, &p).unwrap());
                let neg = PauliStabilizer { phase: Sign::Minus, ..p };
                assert!(!check_stabilizer(&z, &neg).unwrap());
                assert!(!check_stabilizer(&x, &neg).unwrap());
            }
            for i in 0..1u32 << gr.n() {
                let s = induced_stabilizer(&gr, BitVec::masked(gr.n(), i)).unwrap();
                assert!(check_stabilizer(&z, &s).unwrap());
            }
        }
        let z = dense_state_z::<i64>(&g("star:3")).unwrap();
        assert!(check_stabilizer(&z, &PauliStabilizer::identity(4)).is_err());
    }

    #[test]
    fn overlaps() {
        assert_eq!(dense_overlap(&g("cycle:3"), &g("empty:3")).unwrap(), DyadicReal::ZERO);
        assert_eq!(dense_overlap(&g("house"), &g("house")).unwrap(), DyadicReal::ONE);
        assert_eq!(
            dense_overlap(&g("star:3"), &g("empty:3")).unwrap(),
            DyadicReal::new(Sign::Plus, 2)
        );
    }

    #[test]
    fn ranks() {
        let p = Bipartition::from_vertices(5, &[1, 2, 3]).unwrap();
        assert_eq!(dense_schmidt_rank(&g("house"), &p).unwrap(), 2);
        assert_eq!(dense_schmidt_rank(&g("empty:5"), &p).unwrap(), 1);
        assert_eq!(dense_schmidt_rank(&g("bistar"), &p).unwrap(), 2);
        let ghz_like = g("complete:6");
        let p = Bipartition::from_vertices(6, &[1, 2, 3]).unwrap();
        assert_eq!(dense_schmidt_rank(&ghz_like, &p).unwrap(), 2);
        let path = g("path:8");
        let p = Bipartition::from_vertices(8, &[1, 3, 5, 7]).unwrap();
        assert_eq!(dense_schmidt_rank(&path, &p).unwrap(), 16);
    }

    #[test]
    fn bareiss_generic() {
        let m: Vec<Vec<i64>> = vec![vec![2, 4, 6], vec![1, 2, 3], vec![0, 1, 1]];
        assert_eq!(bareiss_rank(m), Some(2));
        let big: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(5)]];
        assert_eq!(bareiss_rank(big), Some(2));
        let overflow: Vec<Vec<i8>> = vec![vec![100, 1], vec![1, 100]];
        assert_eq!(bareiss_rank(overflow), None);
        assert_eq!(bareiss_rank::<i64>(vec![]), Some(0));
    }

    #[test]
    fn brute_force_xchains() {
        let s3: Vec<String> = brute_xchains(&g("star:3")).unwrap().iter().map(|x| x.to_set_string()).collect();
        assert_eq!(s3, vec!["{}", "{2,3}"]);
        assert_eq!(brute_xchains(&g("star:4")).unwrap().len(), 4);
        assert_eq!(brute_xchains(&g("complete:3")).unwrap().len(), 2);
    }

    #[test]
    fn distributions() {
        let d = x_distribution(&g("cycle:3")).unwrap();
        let keys: Vec<String> = d.keys().map(|k| k.to_string()).collect();
        assert_eq!(keys, vec!["100", "010", "001", "111"]);
        assert!(d.values().all(|p| *p == Probability::new(1, 4)));
        let e = x_distribution(&g("empty:3")).unwrap();
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![(BitVec::zero(3), Probability::from_integer(1))]);
    }
}
