//! Bipartite correlation subgroups and the Schmidt decomposition of graph states.
//!
//! For a bipartition `A|B` the correlation space `W` splits as
//! `⟨k_aa⟩ ⊕ ⟨k_simb⟩ ⊕ ⟨k_b⟩ ⊕ ⟨k_harpoon⟩`. The first three subgroups act on one
//! side only; the last indexes the Schmidt terms, all with coefficient
//! `2^{-dim k_harpoon/2}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bias::DyadicReal;
use crate::error::{Error, Result};
use crate::gf2::{self, Basis, BitMatrix, BitVec, VertexSet};
use crate::graphs::{Bipartition, Graph};
use crate::oracle::{Amplitude, DenseState, Frame};
use crate::sign::Sign;
use crate::stab::{correlation_index_unchecked, parity_unchecked};
use crate::xchains::{factorize, XBasisExpansion, XChainData};

/// Correlation subgroups of a bipartition; every basis lives in the correlation space `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionGroups {
    pub part: Bipartition,
    pub xchains: XChainData,
    /// Correlation index inside `B`.
    pub k_b: Basis,
    /// Cosets with a member inside `A` whose correlation index is inside `A`.
    pub k_aa: Basis,
    /// Completion of `k_aa` to the subgroup with index inside `A` and even cuts to `k_b`.
    pub k_simb: Basis,
    pub k_harpoon: Basis,
}

impl PartitionGroups {
    pub fn n(&self) -> usize {
        self.part.n()
    }

    /// `⟨k_aa ∪ k_simb⟩`, the group summed over on Alice's side.
    pub fn alice_group(&self) -> Basis {
        self.k_aa.sum(&self.k_simb).expect("same width")
    }

    pub fn has_simb(&self) -> bool {
        !self.k_simb.is_empty()
    }
}

fn pivot_rows(xd: &XChainData) -> Vec<BitVec> {
    xd.gamma.pivots().iter().map(|&p| BitVec::masked(xd.n(), 1 << p)).collect()
}

fn solve(n: usize, rows: Vec<BitVec>) -> Basis {
    gf2::kernel(&BitMatrix::new(n, rows).expect("rows share the graph width"))
}

pub fn partition_groups(g: &Graph, part: &Bipartition) -> Result<PartitionGroups> {
    let n = g.n();
    if part.n() != n {
        return Err(Error::WidthMismatch { left: n, right: part.n() });
    }
    let xd = factorize(g);
    let in_w = pivot_rows(&xd);
    let neighbors = |side: VertexSet| side.vertices().into_iter().map(|v| g.neighbors(v)).collect::<Vec<_>>();
    let units = |side: VertexSet| side.vertices().into_iter().map(|v| BitVec::masked(n, 1 << (v - 1))).collect::<Vec<_>>();

    let mut rows = neighbors(part.a());
    rows.extend(&in_w);
    let k_b = solve(n, rows);

    // subsets of A with index inside A, reduced to their W representatives
    let mut rows = neighbors(part.b());
    rows.extend(units(part.b()));
    let s_a = solve(n, rows);
    let reps: Vec<BitVec> = s_a.rows().iter().map(|&r| xd.representative(r)).collect();
    let k_aa = Basis::span_of(n, &reps)?;

    let mut rows = neighbors(part.b());
    rows.extend(k_b.rows().iter().map(|&beta| correlation_index_unchecked(g, beta)));
    rows.extend(&in_w);
    let u = solve(n, rows);
    let k_simb = gf2::complement_basis(&k_aa, &u)?;

    let one_sided = u.sum(&k_b)?;
    if one_sided.dim() != k_aa.dim() + k_simb.dim() + k_b.dim() {
        return Err(Error::Invariant("one-sided correlation subgroups overlap".into()));
    }
    let k_harpoon = gf2::complement_basis(&one_sided, &xd.correlation_space())?;
    Ok(PartitionGroups { part: *part, xchains: xd, k_b, k_aa, k_simb, k_harpoon })
}

/// One Schmidt term `sign · vec_a ⊗ vec_b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchmidtTerm {
    pub xi: VertexSet,
    pub sign: Sign,
    pub vec_a: XBasisExpansion,
    pub vec_b: XBasisExpansion,
}

fn side_expansion(
    g: &Graph,
    xd: &XChainData,
    group: &Basis,
    xi: VertexSet,
    side: VertexSet,
) -> Result<XBasisExpansion> {
    let mut terms = BTreeMap::new();
    for shift in group.elements() {
        let label = xi ^ shift;
        let bits = (xd.x_gamma ^ correlation_index_unchecked(g, label)).restrict(side);
        if terms.insert(bits, parity_unchecked(g, label)).is_some() {
            return Err(Error::TermCollision(bits.to_string()));
        }
    }
    Ok(XBasisExpansion { qubits: side.vertices(), half_log_norm: group.dim() as u32, terms })
}

/// The A⌋B-correlation state of `xi ∈ ⟨k_harpoon⟩` as a product of one vector per side.
pub fn schmidt_vectors(g: &Graph, pg: &PartitionGroups, xi: VertexSet) -> Result<SchmidtTerm> {
    if xi.width() != g.n() {
        return Err(Error::WidthMismatch { left: g.n(), right: xi.width() });
    }
    if !pg.k_harpoon.reduce(xi).is_zero() {
        return Err(Error::LabelOutsideGroup(xi.to_set_string()));
    }
    let xd = &pg.xchains;
    Ok(SchmidtTerm {
        xi,
        sign: parity_unchecked(g, xi),
        vec_a: side_expansion(g, xd, &pg.alice_group(), xi, pg.part.a())?,
        vec_b: side_expansion(g, xd, &pg.k_b, xi, pg.part.b())?,
    })
}

/// `|G⟩ = α · 2^{-k/2} Σ_ξ sign(ξ)·vec_a(ξ)⊗vec_b(ξ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchmidtDecomposition {
    pub part: Bipartition,
    pub alpha: Sign,
    pub coeff: DyadicReal,
    pub terms: Vec<SchmidtTerm>,
}

impl SchmidtDecomposition {
    pub fn log_rank(&self) -> u32 {
        self.coeff.half_log()
    }

    /// The reassembled graph state in the X frame.
    pub fn to_dense<T: Amplitude>(&self) -> Result<DenseState<T>> {
        let (a, b) = (self.part.a(), self.part.b());
        let Some(first) = self.terms.first() else {
            return Err(Error::Invariant("decomposition without terms".into()));
        };
        let scale = self.log_rank() + first.vec_a.half_log_norm + first.vec_b.half_log_norm;
        let mut out = DenseState::<T>::zeros(self.part.n(), scale, Frame::X)?;
        for t in &self.terms {
            for (ka, sa) in &t.vec_a.terms {
                for (kb, sb) in &t.vec_b.terms {
                    let idx = (ka.expand(a) | kb.expand(b)).bits() as usize;
                    let s = self.alpha * t.sign * *sa * *sb;
                    out.amps[idx] = out.amps[idx].clone() + T::from(s.to_i8());
                }
            }
        }
        Ok(out)
    }
}

pub fn schmidt_decomposition(g: &Graph, part: &Bipartition) -> Result<SchmidtDecomposition> {
    let pg = partition_groups(g, part)?;
    schmidt_decomposition_with(g, &pg)
}

pub fn schmidt_decomposition_with(g: &Graph, pg: &PartitionGroups) -> Result<SchmidtDecomposition> {
    let terms = pg
        .k_harpoon
        .elements()
        .into_iter()
        .map(|xi| schmidt_vectors(g, pg, xi))
        .collect::<Result<Vec<_>>>()?;
    Ok(SchmidtDecomposition {
        part: pg.part,
        alpha: pg.xchains.alpha()?,
        coeff: DyadicReal::new(Sign::Plus, pg.k_harpoon.dim() as u32),
        terms,
    })
}

/// Schmidt rank `2^k` and geometric measure `E_g = k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchmidtRank {
    pub rank: u64,
    pub log_rank: u32,
    pub geometric_measure: u32,
}

/// `|A| - dim k_aa - dim(Γ ∩ P(A))`.
pub fn alternative_log_rank(pg: &PartitionGroups) -> Result<u32> {
    let n = pg.n();
    let a = pg.part.a();
    let inside_a: Vec<BitVec> = a.vertices().into_iter().map(|v| BitVec::masked(n, 1 << (v - 1))).collect();
    let local_chains = gf2::intersect(&pg.xchains.gamma, &Basis::span_of(n, &inside_a)?)?;
    let k = a.weight() as i64 - pg.k_aa.dim() as i64 - local_chains.dim() as i64;
    u32::try_from(k).map_err(|_| Error::Invariant(format!("negative alternative rank {k}")))
}

pub fn schmidt_rank(g: &Graph, part: &Bipartition) -> Result<SchmidtRank> {
    let pg = partition_groups(g, part)?;
    schmidt_rank_with(&pg)
}

pub fn schmidt_rank_with(pg: &PartitionGroups) -> Result<SchmidtRank> {
    let k = pg.k_harpoon.dim() as u32;
    if pg.part.a().weight() <= pg.part.b().weight() {
        let alt = alternative_log_rank(pg)?;
        if alt != k {
            return Err(Error::Invariant(format!("rank formulas disagree: {k} vs {alt}")));
        }
    }
    Ok(SchmidtRank { rank: 1u64 << k, log_rank: k, geometric_measure: k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::named;
    use crate::oracle::{dense_state_z, dense_to_x};

    fn set(n: usize, v: &[usize]) -> VertexSet {
        BitVec::from_vertices(n, v).unwrap()
    }

    fn span(n: usize, sets: &[&[usize]]) -> Basis {
        let rows: Vec<BitVec> = sets.iter().map(|s| set(n, s)).collect();
        Basis::span_of(n, &rows).unwrap()
    }

    /// Spans compared modulo the X-chain group.
    fn same_mod_gamma(pg: &PartitionGroups, b: &Basis, expected: &Basis) -> bool {
        let lift = |x: &Basis| x.sum(&pg.xchains.gamma).unwrap();
        lift(b) == lift(expected)
    }

    fn kets(e: &XBasisExpansion) -> Vec<(String, Sign)> {
        e.terms.iter().map(|(k, s)| (k.to_string(), *s)).collect()
    }

    #[test]
    fn house_groups() {
        let g = named("house").unwrap();
        let part = Bipartition::from_vertices(5, &[1, 2, 3]).unwrap();
        let pg = partition_groups(&g, &part).unwrap();
        assert_eq!(pg.k_b, span(5, &[&[4, 5], &[2, 3, 4]]));
        assert_eq!(pg.k_aa, span(5, &[&[2, 3]]));
        assert!(pg.k_simb.is_empty());
        assert_eq!(pg.k_harpoon, span(5, &[&[2]]));
    }

    #[test]
    fn house_terms() {
        let g = named("house").unwrap();
        let part = Bipartition::from_vertices(5, &[1, 2, 3]).unwrap();
        let pg = partition_groups(&g, &part).unwrap();
        let t0 = schmidt_vectors(&g, &pg, BitVec::zero(5)).unwrap();
        assert_eq!(t0.vec_a.to_string(), "1/sqrt(2)(|100> - |111>)");
        let mut b = kets(&t0.vec_b);
        b.sort();
        assert_eq!(
            b,
            vec![("00".into(), Sign::Plus), ("01".into(), Sign::Minus), ("10".into(), Sign::Minus), ("11".into(), Sign::Minus)]
        );
        let t2 = schmidt_vectors(&g, &pg, set(5, &[2])).unwrap();
        assert_eq!(t2.sign, Sign::Plus);
        assert_eq!(t2.vec_a.to_string(), "1/sqrt(2)(|010> + |001>)");
        let mut b = kets(&t2.vec_b);
        b.sort();
        assert_eq!(
            b,
            vec![("00".into(), Sign::Minus), ("01".into(), Sign::Minus), ("10".into(), Sign::Minus), ("11".into(), Sign::Plus)]
        );
        assert!(matches!(schmidt_vectors(&g, &pg, set(5, &[3])), Err(Error::LabelOutsideGroup(_))));
    }

    #[test]
    fn bistar_groups_and_terms() {
        let g = named("bistar").unwrap();
        let part = Bipartition::from_vertices(5, &[1, 2, 3]).unwrap();
        let pg = partition_groups(&g, &part).unwrap();
        assert!(pg.k_aa.is_empty() && pg.k_simb.is_empty());
        assert!(same_mod_gamma(&pg, &pg.k_b, &span(5, &[&[1]])));
        assert!(same_mod_gamma(&pg, &pg.k_harpoon, &span(5, &[&[4]])));

        let d = schmidt_decomposition(&g, &part).unwrap();
        assert_eq!(d.coeff, DyadicReal::new(Sign::Plus, 1));
        let rendered: Vec<(Sign, String, String)> =
            d.terms.iter().map(|t| (t.sign, t.vec_a.to_string(), t.vec_b.to_string())).collect();
        assert_eq!(
            rendered,
            vec![
                (Sign::Plus, "|000>".into(), "1/sqrt(2)(|00> + |11>)".into()),
                (Sign::Plus, "|111>".into(), "1/sqrt(2)(|00> - |11>)".into()),
            ]
        );
    }

    #[test]
    fn reconstruction_and_rank() {
        for (name, a) in [("house", &[1, 2, 3][..]), ("bistar", &[1, 2, 3]), ("k4minus1", &[1]), ("cycle:5", &[1, 3])] {
            let g = named(name).unwrap();
            let part = Bipartition::from_vertices(g.n(), a).unwrap();
            let d = schmidt_decomposition(&g, &part).unwrap();
            let oracle = dense_to_x(&dense_state_z::<i64>(&g).unwrap());
            assert!(d.to_dense::<i64>().unwrap().same_state(&oracle), "{name}");
        }
        let g = named("house").unwrap();
        let part = Bipartition::from_vertices(5, &[1, 2, 3]).unwrap();
        assert_eq!(schmidt_rank(&g, &part).unwrap(), SchmidtRank { rank: 2, log_rank: 1, geometric_measure: 1 });
        let e = named("empty:4").unwrap();
        let part = Bipartition::from_vertices(4, &[2]).unwrap();
        assert_eq!(schmidt_rank(&e, &part).unwrap().rank, 1);
        let d = schmidt_decomposition(&e, &part).unwrap();
        assert_eq!(d.terms.len(), 1);
    }
}
