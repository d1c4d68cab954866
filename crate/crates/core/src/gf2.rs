//! Linear algebra over GF(2) on single-word bit vectors.
//!
//! Bit `j - 1` of a [`BitVec`] stands for vertex `j`, so a vector doubles as a
//! vertex subset. Printing follows the `i_1 i_2 … i_n` convention: vertex 1 is
//! the leftmost character.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, BitXorAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported width (one machine word of vertices).
pub const MAX_WIDTH: usize = 32;

/// Fixed-width bit vector over GF(2). Serialized as its `i_1 … i_n` string.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BitVec {
    width: u8,
    bits: u32,
}

/// A subset of the vertex set, encoded as its indicator vector.
pub type VertexSet = BitVec;

fn width_mask(width: usize) -> u32 {
    if width >= 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

impl BitVec {
    pub fn new(width: usize, bits: u32) -> Result<Self> {
        if width > MAX_WIDTH {
            return Err(Error::VertexCount(width));
        }
        if bits & !width_mask(width) != 0 {
            return Err(Error::BitsOutOfRange { bits: bits as u64, width });
        }
        Ok(Self { width: width as u8, bits })
    }

    /// Builds a vector from raw bits, dropping anything above `width`.
    pub fn masked(width: usize, bits: u32) -> Self {
        assert!(width <= MAX_WIDTH, "width {width} exceeds {MAX_WIDTH}");
        Self { width: width as u8, bits: bits & width_mask(width) }
    }

    pub fn zero(width: usize) -> Self {
        Self::masked(width, 0)
    }

    pub fn full(width: usize) -> Self {
        Self::masked(width, u32::MAX)
    }

    /// Unit vector of a 1-indexed vertex.
    pub fn singleton(width: usize, vertex: usize) -> Result<Self> {
        Self::from_vertices(width, &[vertex])
    }

    /// Indicator vector of a list of 1-indexed vertices.
    pub fn from_vertices(width: usize, vertices: &[usize]) -> Result<Self> {
        if width > MAX_WIDTH {
            return Err(Error::VertexCount(width));
        }
        let mut bits = 0u32;
        for &v in vertices {
            if v == 0 || v > width {
                return Err(Error::VertexOutOfRange { vertex: v, n: width });
            }
            bits |= 1 << (v - 1);
        }
        Ok(Self { width: width as u8, bits })
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Hamming weight.
    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Whether 1-indexed vertex `v` is in the set.
    pub fn contains(self, v: usize) -> bool {
        v >= 1 && v <= self.width() && self.bits >> (v - 1) & 1 == 1
    }

    /// Value of 0-indexed bit `j`.
    pub fn bit(self, j: usize) -> bool {
        self.bits >> j & 1 == 1
    }

    pub fn with_bit(self, j: usize, value: bool) -> Self {
        assert!(j < self.width(), "bit {j} outside width {}", self.width);
        let bits = if value { self.bits | 1 << j } else { self.bits & !(1 << j) };
        Self { bits, ..self }
    }

    /// Members as sorted 1-indexed vertices.
    pub fn vertices(self) -> Vec<usize> {
        (0..self.width()).filter(|&j| self.bit(j)).map(|j| j + 1).collect()
    }

    /// GF(2) dot product.
    pub fn dot(self, other: Self) -> bool {
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn complement(self) -> Self {
        Self { bits: !self.bits & width_mask(self.width()), ..self }
    }

    /// Lowest set bit, 0-indexed.
    pub fn lowest(self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    /// Packs the bits selected by `mask` into a shorter vector, keeping order.
    pub fn restrict(self, mask: Self) -> Self {
        let mut out = 0u32;
        let mut k = 0;
        for j in 0..self.width() {
            if mask.bit(j) {
                if self.bit(j) {
                    out |= 1 << k;
                }
                k += 1;
            }
        }
        Self::masked(k, out)
    }

    /// Inverse of [`BitVec::restrict`]: spreads `self` onto the positions of `mask`.
    pub fn expand(self, mask: Self) -> Self {
        let mut out = 0u32;
        let mut k = 0;
        for j in 0..mask.width() {
            if mask.bit(j) {
                if self.bit(k) {
                    out |= 1 << j;
                }
                k += 1;
            }
        }
        Self::masked(mask.width(), out)
    }

    /// Set notation, e.g. `{1,3}`.
    pub fn to_set_string(self) -> String {
        let inner: Vec<String> = self.vertices().iter().map(usize::to_string).collect();
        format!("{{{}}}", inner.join(","))
    }

    fn check_width(self, other: Self) {
        assert_eq!(self.width, other.width, "bit vector width mismatch");
    }
}

impl BitXor for BitVec {
    type Output = Self;
    fn bitxor(self, rhs: Self) -> Self {
        self.check_width(rhs);
        Self { bits: self.bits ^ rhs.bits, ..self }
    }
}

impl BitXorAssign for BitVec {
    fn bitxor_assign(&mut self, rhs: Self) {
        *self = *self ^ rhs;
    }
}

impl BitAnd for BitVec {
    type Output = Self;
    fn bitand(self, rhs: Self) -> Self {
        self.check_width(rhs);
        Self { bits: self.bits & rhs.bits, ..self }
    }
}

impl BitOr for BitVec {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        self.check_width(rhs);
        Self { bits: self.bits | rhs.bits, ..self }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.width() {
            f.write_str(if self.bit(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    /// Parses an `i_1 … i_n` string of `0`/`1` characters.
    fn from_str(s: &str) -> Result<Self> {
        if s.len() > MAX_WIDTH {
            return Err(Error::VertexCount(s.len()));
        }
        let mut bits = 0u32;
        for (j, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << j,
                _ => return Err(Error::Parse(format!("bad bit character `{c}` in `{s}`"))),
            }
        }
        Ok(Self::masked(s.len(), bits))
    }
}

impl From<BitVec> for String {
    fn from(v: BitVec) -> String {
        v.to_string()
    }
}

impl TryFrom<String> for BitVec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Ordered rows of equal width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    width: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(width: usize, rows: Vec<BitVec>) -> Result<Self> {
        if width > MAX_WIDTH {
            return Err(Error::VertexCount(width));
        }
        if let Some(r) = rows.iter().find(|r| r.width() != width) {
            return Err(Error::WidthMismatch { left: width, right: r.width() });
        }
        Ok(Self { width, rows })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    /// `M·x` over GF(2); bit `i` of the result is `row_i · x`.
    pub fn mul_vec(&self, x: BitVec) -> BitVec {
        let mut out = 0u32;
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(x) {
                out |= 1 << i;
            }
        }
        BitVec::masked(self.rows.len(), out)
    }
}

/// Canonical reduced row-echelon basis of a subspace.
///
/// Each row's pivot is its lowest set bit, pivots increase strictly, and a pivot
/// column is set only in its own row. Two bases of the same span compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Basis {
    width: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Basis {
    pub fn empty(width: usize) -> Self {
        Self { width, rows: Vec::new(), pivots: Vec::new() }
    }

    /// The whole space, spanned by unit vectors.
    pub fn full(width: usize) -> Self {
        Self {
            width,
            rows: (0..width).map(|j| BitVec::masked(width, 1 << j)).collect(),
            pivots: (0..width).collect(),
        }
    }

    /// Canonical basis of the span of arbitrary vectors.
    pub fn span_of(width: usize, vectors: &[BitVec]) -> Result<Self> {
        Ok(rref(&BitMatrix::new(width, vectors.to_vec())?).0)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    /// Pivot columns, 0-indexed.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Remainder of `v` after eliminating every pivot; zero iff `v` is in the span.
    pub fn reduce(&self, v: BitVec) -> BitVec {
        let mut v = v;
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if v.bit(p) {
                v ^= *r;
            }
        }
        v
    }

    /// Element of the span selected by the bits of `coeffs` (bit `i` picks row `i`).
    pub fn combine(&self, coeffs: u64) -> BitVec {
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| coeffs >> i & 1 == 1)
            .fold(BitVec::zero(self.width), |acc, (_, r)| acc ^ *r)
    }

    /// All `2^dim` elements of the span, indexed by coefficient pattern.
    pub fn elements(&self) -> Vec<BitVec> {
        assert!(self.dim() < 32, "span of dimension {} is too large to list", self.dim());
        (0..1u64 << self.dim()).map(|c| self.combine(c)).collect()
    }

    /// Canonical basis of `span(self) + span(other)`.
    pub fn sum(&self, other: &Basis) -> Result<Basis> {
        check_widths(self.width, other.width)?;
        let rows: Vec<BitVec> = self.rows.iter().chain(&other.rows).copied().collect();
        Basis::span_of(self.width, &rows)
    }
}

fn check_widths(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::WidthMismatch { left: a, right: b })
    }
}

/// Reduced row-echelon form of `m`, returned with its rank.
pub fn rref(m: &BitMatrix) -> (Basis, usize) {
    let width = m.width();
    let mut pending: Vec<BitVec> = m.rows().iter().copied().filter(|r| !r.is_zero()).collect();
    let mut rows: Vec<BitVec> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..width {
        let Some(idx) = pending.iter().position(|r| r.bit(col)) else {
            continue;
        };
        let p = pending.swap_remove(idx);
        for r in pending.iter_mut().chain(rows.iter_mut()) {
            if r.bit(col) {
                *r ^= p;
            }
        }
        pending.retain(|r| !r.is_zero());
        rows.push(p);
        pivots.push(col);
    }
    let rank = rows.len();
    (Basis { width, rows, pivots }, rank)
}

/// Basis of `{x : m·x = 0}`.
pub fn kernel(m: &BitMatrix) -> Basis {
    let width = m.width();
    let (echelon, _) = rref(m);
    let pivot_mask = echelon.pivots.iter().fold(0u32, |acc, &p| acc | 1 << p);
    let mut vectors = Vec::new();
    for free in (0..width).filter(|&j| pivot_mask >> j & 1 == 0) {
        let mut x = BitVec::masked(width, 1 << free);
        for (r, &p) in echelon.rows.iter().zip(&echelon.pivots) {
            if r.bit(free) {
                x = x.with_bit(p, true);
            }
        }
        vectors.push(x);
    }
    rref(&BitMatrix { width, rows: vectors }).0
}

/// Membership of `v` in the span of `b`.
pub fn contains(b: &Basis, v: BitVec) -> Result<bool> {
    check_widths(b.width, v.width())?;
    Ok(b.reduce(v).is_zero())
}

/// Completes `sub` to `sup`: returns `C` with `span(sub) ⊕ span(C) = span(sup)`.
///
/// Completion vectors are taken from the rows of `sup` in order, so the result is
/// deterministic for fixed inputs.
pub fn complement_basis(sub: &Basis, sup: &Basis) -> Result<Basis> {
    check_widths(sub.width, sup.width)?;
    if sub.rows.iter().any(|r| !sup.reduce(*r).is_zero()) {
        return Err(Error::NotSubspace);
    }
    let mut current = sub.clone();
    let mut chosen = Vec::new();
    for &r in &sup.rows {
        if !current.reduce(r).is_zero() {
            chosen.push(r);
            current = current.sum(&Basis::span_of(sup.width, &[r])?)?;
        }
    }
    Basis::span_of(sup.width, &chosen)
}

/// Orthogonal complement under the standard dot product.
pub fn orthogonal(b: &Basis) -> Basis {
    kernel(&BitMatrix { width: b.width, rows: b.rows.clone() })
}

/// Basis of `span(a) ∩ span(b)`, computed as `(a⊥ + b⊥)⊥`.
pub fn intersect(a: &Basis, b: &Basis) -> Result<Basis> {
    check_widths(a.width, b.width)?;
    let perp = orthogonal(a).sum(&orthogonal(b))?;
    Ok(orthogonal(&perp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    fn mat(rows: &[&str]) -> BitMatrix {
        let width = rows[0].len();
        BitMatrix::new(width, rows.iter().map(|r| bv(r)).collect()).unwrap()
    }

    fn span_set(b: &Basis) -> std::collections::BTreeSet<u32> {
        b.elements().into_iter().map(BitVec::bits).collect()
    }

    #[test]
    fn display_is_vertex_one_first() {
        let v = BitVec::from_vertices(4, &[1]).unwrap();
        assert_eq!(v.to_string(), "1000");
        assert_eq!(bv("0110").vertices(), vec![2, 3]);
        assert_eq!(bv("0110").to_set_string(), "{2,3}");
    }

    #[test]
    fn rref_examples() {
        let (b, rank) = rref(&mat(&["0110", "0101"]));
        assert_eq!(rank, 2);
        assert_eq!(b.rows(), &[bv("0101"), bv("0011")]);

        let (b, rank) = rref(&mat(&["000"]));
        assert_eq!(rank, 0);
        assert!(b.is_empty());

        let (b, rank) = rref(&mat(&["100", "100"]));
        assert_eq!(rank, 1);
        assert_eq!(b.rows(), &[bv("100")]);
    }

    #[test]
    fn kernel_examples() {
        // star S3 centered at vertex 1
        let k = kernel(&mat(&["011", "100", "100"]));
        assert_eq!(k.rows(), &[bv("011")]);
        assert!(kernel(&mat(&["100", "010", "001"])).is_empty());
        assert_eq!(kernel(&mat(&["000", "000", "000"])), Basis::full(3));
    }

    #[test]
    fn contains_examples() {
        let b = Basis::span_of(3, &[bv("011")]).unwrap();
        assert!(contains(&b, bv("011")).unwrap());
        assert!(!contains(&b, bv("010")).unwrap());
        let b = Basis::span_of(4, &[bv("0101"), bv("0011")]).unwrap();
        assert!(contains(&b, bv("0110")).unwrap());
        assert!(contains(&b, bv("011")).is_err());
    }

    #[test]
    fn complement_examples() {
        let sup = Basis::span_of(3, &[bv("100"), bv("010")]).unwrap();
        assert_eq!(complement_basis(&Basis::empty(3), &sup).unwrap(), sup);
        assert!(complement_basis(&Basis::full(3), &Basis::full(3)).unwrap().is_empty());

        let sub = Basis::span_of(3, &[bv("011")]).unwrap();
        let c = complement_basis(&sub, &Basis::full(3)).unwrap();
        assert_eq!(c.dim(), 2);
        // the four cosets c + span(sub) partition all 8 subsets
        let mut seen = std::collections::BTreeSet::new();
        for s in sub.elements() {
            for t in c.elements() {
                assert!(seen.insert((s ^ t).bits()));
            }
        }
        assert_eq!(seen.len(), 8);

        let line = Basis::span_of(3, &[bv("100")]).unwrap();
        let other = Basis::span_of(3, &[bv("010")]).unwrap();
        assert_eq!(complement_basis(&line, &other), Err(Error::NotSubspace));
    }

    #[test]
    fn intersect_examples() {
        let a = Basis::span_of(3, &[bv("110"), bv("001")]).unwrap();
        assert_eq!(intersect(&a, &a).unwrap(), a);
        let x = Basis::span_of(3, &[bv("100")]).unwrap();
        let y = Basis::span_of(3, &[bv("010")]).unwrap();
        assert!(intersect(&x, &y).unwrap().is_empty());

        let b = Basis::span_of(3, &[bv("010"), bv("001")]).unwrap();
        let brute: std::collections::BTreeSet<u32> =
            span_set(&a).intersection(&span_set(&b)).copied().collect();
        let got = intersect(&a, &b).unwrap();
        assert_eq!(span_set(&got), brute);
        assert_eq!(got.rows(), &[bv("001")]);
    }

    #[test]
    fn restrict_and_expand_are_inverse() {
        let mask = bv("10110");
        let v = bv("11011");
        assert_eq!(v.restrict(mask).to_string(), "101");
        assert_eq!(v.restrict(mask).expand(mask), v & mask);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BitVec::new(3, 0b1000).is_err());
        assert!(BitVec::new(33, 0).is_err());
        assert!(BitVec::from_vertices(3, &[0]).is_err());
        assert!("01a".parse::<BitVec>().is_err());
        assert!(BitMatrix::new(3, vec![bv("01")]).is_err());
    }
}
