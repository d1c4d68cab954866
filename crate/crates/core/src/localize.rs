//! Entanglement localization by X-measurements on Alice's side.
//!
//! When Alice's Schmidt vectors are single X-basis strings they form a classical
//! code. A Z-error on one of her qubits flips the corresponding measurement bit
//! and is corrected by nearest-codeword decoding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitVec, VertexSet};
use crate::graphs::{Bipartition, Graph};
use crate::schmidt::{partition_groups, schmidt_vectors, PartitionGroups};
use crate::stab::correlation_index_unchecked;
use crate::xchains::XBasisExpansion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codeword {
    pub label: VertexSet,
    /// Bits over Alice's vertices in increasing order.
    pub word: BitVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationCode {
    pub part: Bipartition,
    pub codewords: Vec<Codeword>,
    /// Minimum pairwise Hamming distance; `|A| + 1` for a single codeword.
    pub distance: u32,
}

impl LocalizationCode {
    /// Number of bit flips the code always corrects.
    pub fn correctable(&self) -> u32 {
        (self.distance - 1) / 2
    }
}

fn extract_from(pg: &PartitionGroups, g: &Graph) -> Result<LocalizationCode> {
    if !pg.k_aa.is_empty() {
        return Err(Error::SuperposedCodewords("k_aa"));
    }
    if pg.has_simb() {
        return Err(Error::SuperposedCodewords("k_simb"));
    }
    let a = pg.part.a();
    let codewords: Vec<Codeword> = pg
        .k_harpoon
        .elements()
        .into_iter()
        .map(|xi| Codeword {
            label: xi,
            word: (pg.xchains.x_gamma ^ correlation_index_unchecked(g, xi)).restrict(a),
        })
        .collect();
    let mut distance = a.weight() + 1;
    for (i, c) in codewords.iter().enumerate() {
        for d in &codewords[i + 1..] {
            distance = distance.min((c.word ^ d.word).weight());
        }
    }
    if distance == 0 {
        return Err(Error::Invariant("two labels share a codeword".into()));
    }
    Ok(LocalizationCode { part: pg.part, codewords, distance })
}

pub fn extract_code(g: &Graph, part: &Bipartition) -> Result<LocalizationCode> {
    extract_from(&partition_groups(g, part)?, g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decoding {
    Unique { label: VertexSet, corrected: BitVec, flips: u32 },
    /// Several codewords at the same minimum distance.
    Ambiguous { flips: u32, candidates: Vec<VertexSet> },
}

impl Decoding {
    pub fn label(&self) -> Option<VertexSet> {
        match self {
            Decoding::Unique { label, .. } => Some(*label),
            Decoding::Ambiguous { .. } => None,
        }
    }
}

pub fn decode(code: &LocalizationCode, observed: BitVec) -> Result<Decoding> {
    let len = code.part.a().weight() as usize;
    if observed.width() != len {
        return Err(Error::WidthMismatch { left: len, right: observed.width() });
    }
    let flips = code
        .codewords
        .iter()
        .map(|c| (c.word ^ observed).weight())
        .min()
        .ok_or_else(|| Error::Invariant("empty code".into()))?;
    let nearest: Vec<&Codeword> = code.codewords.iter().filter(|c| (c.word ^ observed).weight() == flips).collect();
    Ok(match nearest.as_slice() {
        [c] => Decoding::Unique { label: c.label, corrected: c.word, flips },
        many => Decoding::Ambiguous { flips, candidates: many.iter().map(|c| c.label).collect() },
    })
}

/// One round of measurement, Z-errors and decoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationTrace {
    pub ideal: VertexSet,
    pub ideal_word: BitVec,
    pub noisy: BitVec,
    pub decoding: Decoding,
    /// Bob's Schmidt vector for the decoded label.
    pub bob_state: Option<XBasisExpansion>,
    pub success: bool,
}

/// Samples an ideal outcome from `seed`, flips the bits in `errors` and decodes.
pub fn simulate(g: &Graph, part: &Bipartition, errors: VertexSet, seed: u64) -> Result<LocalizationTrace> {
    if errors.width() != g.n() {
        return Err(Error::WidthMismatch { left: g.n(), right: errors.width() });
    }
    if !errors.is_subset(part.a()) {
        return Err(Error::Partition(format!("error positions {} are not on Alice's side", errors.to_set_string())));
    }
    let pg = partition_groups(g, part)?;
    let code = extract_from(&pg, g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ideal = code.codewords[rng.gen_range(0..code.codewords.len())];
    let noisy = ideal.word ^ errors.restrict(part.a());
    let decoding = decode(&code, noisy)?;
    let bob_state = match decoding.label() {
        Some(label) => Some(schmidt_vectors(g, &pg, label)?.vec_b),
        None => None,
    };
    Ok(LocalizationTrace {
        ideal: ideal.label,
        ideal_word: ideal.word,
        noisy,
        success: decoding.label() == Some(ideal.label),
        decoding,
        bob_state,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::named;

    fn bistar() -> (Graph, Bipartition) {
        (named("bistar").unwrap(), Bipartition::from_vertices(5, &[1, 2, 3]).unwrap())
    }

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    #[test]
    fn bistar_code() {
        let (g, p) = bistar();
        let code = extract_code(&g, &p).unwrap();
        let words: Vec<String> = code.codewords.iter().map(|c| c.word.to_string()).collect();
        assert_eq!(words, vec!["000", "111"]);
        assert_eq!(code.distance, 3);
        assert_eq!(code.correctable(), 1);
    }

    #[test]
    fn other_codes() {
        let e = named("empty:4").unwrap();
        let p = Bipartition::from_vertices(4, &[1, 2]).unwrap();
        let code = extract_code(&e, &p).unwrap();
        assert_eq!(code.codewords.len(), 1);
        assert_eq!(code.distance, 3);
        let house = named("house").unwrap();
        let p = Bipartition::from_vertices(5, &[1, 2, 3]).unwrap();
        assert_eq!(extract_code(&house, &p), Err(Error::SuperposedCodewords("k_aa")));
    }

    #[test]
    fn decoding() {
        let (g, p) = bistar();
        let code = extract_code(&g, &p).unwrap();
        let four = code.codewords[1].label;
        assert_eq!(decode(&code, bv("110")).unwrap(), Decoding::Unique { label: four, corrected: bv("111"), flips: 1 });
        assert_eq!(
            decode(&code, bv("000")).unwrap(),
            Decoding::Unique { label: BitVec::zero(5), corrected: bv("000"), flips: 0 }
        );
        assert_eq!(
            decode(&code, bv("100")).unwrap(),
            Decoding::Unique { label: BitVec::zero(5), corrected: bv("000"), flips: 1 }
        );
        assert!(decode(&code, bv("10")).is_err());
    }

    #[test]
    fn ties_are_reported() {
        let g = named("path:2").unwrap();
        let p = Bipartition::from_vertices(2, &[1]).unwrap();
        let code = extract_code(&g, &p).unwrap();
        assert_eq!(code.distance, 1);
        // a length-2 code {00, 11} leaves 01 equidistant
        let code = LocalizationCode {
            part: Bipartition::from_vertices(3, &[1, 2]).unwrap(),
            codewords: vec![
                Codeword { label: BitVec::zero(3), word: bv("00") },
                Codeword { label: bv("001"), word: bv("11") },
            ],
            distance: 2,
        };
        assert!(matches!(decode(&code, bv("10")).unwrap(), Decoding::Ambiguous { flips: 1, .. }));
    }

    #[test]
    fn simulations() {
        let (g, p) = bistar();
        for seed in 0..8 {
            let t = simulate(&g, &p, BitVec::from_vertices(5, &[3]).unwrap(), seed).unwrap();
            assert!(t.success);
            let t = simulate(&g, &p, BitVec::zero(5), seed).unwrap();
            assert!(t.success);
            assert_eq!(t.noisy, t.ideal_word);
            let t = simulate(&g, &p, BitVec::from_vertices(5, &[2, 3]).unwrap(), seed).unwrap();
            assert!(!t.success);
        }
        let a = simulate(&g, &p, BitVec::zero(5), 42).unwrap();
        assert_eq!(a, simulate(&g, &p, BitVec::zero(5), 42).unwrap());
        let t = simulate(&g, &p, BitVec::from_vertices(5, &[1]).unwrap(), 1).unwrap();
        assert_eq!(t.bob_state.unwrap().qubits, vec![4, 5]);
        assert!(simulate(&g, &p, BitVec::from_vertices(5, &[4]).unwrap(), 0).is_err());
    }
}
