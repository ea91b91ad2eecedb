//! Symmetric matrices over a [`FieldSpec`] with exact determinant, rank,
//! principal submatrix extraction, Schur complement, and the epr-preserving
//! transformations (scalar multiple, permutation similarity, diagonal
//! congruence, the ±1 normal form for AN-prefixed matrices).
//!
//! Entries are stored row-major as raw canonical field values; symmetry is
//! enforced at construction and preserved by every operation. The order is
//! capped at 64 so index sets fit in one machine word.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use std::fmt;
use std::sync::Arc;

pub const MAX_ORDER: usize = 64;

/// A sorted set of indices from [1, n], the α of B[α].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    indices: Vec<usize>, // strictly increasing, 1-based
}

impl IndexSet {
    pub fn new(mut indices: Vec<usize>) -> Result<IndexSet> {
        indices.sort_unstable();
        indices.dedup();
        if indices.first().is_some_and(|&i| i == 0) {
            return Err(Error::usage("index sets are 1-based; 0 is not a valid index"));
        }
        Ok(IndexSet { indices })
    }

    pub fn empty() -> IndexSet {
        IndexSet { indices: Vec::new() }
    }

    pub fn full(n: usize) -> IndexSet {
        IndexSet {
            indices: (1..=n).collect(),
        }
    }

    /// From a bitmask where bit i (0-based) selects index i+1.
    pub fn from_mask(mask: u64) -> IndexSet {
        let mut indices = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            indices.push(b + 1);
            m &= m - 1;
        }
        IndexSet { indices }
    }

    pub fn mask(&self) -> u64 {
        self.indices.iter().fold(0u64, |m, &i| m | 1 << (i - 1))
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// 1-based indices, strictly increasing.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet {
            indices: (1..=n).filter(|i| !self.contains(*i)).collect(),
        }
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut v: Vec<usize> = self.indices.iter().chain(&other.indices).copied().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet { indices: v }
    }

    fn check_range(&self, n: usize) -> Result<()> {
        if let Some(&max) = self.indices.last() {
            if max > n {
                return Err(Error::usage(format!("index {max} out of range for order {n}")));
            }
        }
        Ok(())
    }
}

/// A dense symmetric matrix over a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    spec: Arc<FieldSpec>,
    n: usize,
    entries: Vec<u32>, // row-major, n*n, mirrored
}

impl SymMatrix {
    /// Build from row-major raw values; rejects asymmetry naming the offending (i, j).
    pub fn new(spec: Arc<FieldSpec>, n: usize, entries: Vec<u32>) -> Result<SymMatrix> {
        if n > MAX_ORDER {
            return Err(Error::usage(format!("order {n} exceeds the cap of {MAX_ORDER}")));
        }
        if entries.len() != n * n {
            return Err(Error::usage(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(&v) = entries.iter().find(|&&v| v >= spec.q()) {
            return Err(Error::usage(format!(
                "entry value {v} out of range for GF({})",
                spec.name()
            )));
        }
        for i in 0..n {
            for j in i + 1..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::usage(format!(
                        "matrix is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(SymMatrix { spec, n, entries })
    }

    /// Build from the upper triangle (diagonal included), row by row.
    pub fn from_upper_triangle(spec: Arc<FieldSpec>, n: usize, upper: &[u32]) -> Result<SymMatrix> {
        if upper.len() != n * (n + 1) / 2 {
            return Err(Error::usage(format!(
                "expected {} upper-triangle entries for order {n}",
                n * (n + 1) / 2
            )));
        }
        let mut entries = vec![0u32; n * n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                entries[i * n + j] = upper[k];
                entries[j * n + i] = upper[k];
                k += 1;
            }
        }
        SymMatrix::new(spec, n, entries)
    }

    pub fn zero(spec: Arc<FieldSpec>, n: usize) -> SymMatrix {
        SymMatrix {
            spec,
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(spec: Arc<FieldSpec>, n: usize) -> SymMatrix {
        let mut m = SymMatrix::zero(spec, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Raw entry, 0-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn elem(&self, i: usize, j: usize) -> FieldElement {
        self.spec.elem(self.get(i, j)).expect("entries are canonical")
    }

    /// Exact determinant by pivoted Gaussian elimination. det of the empty
    /// matrix is 1 (empty product).
    pub fn det(&self) -> u32 {
        det_dense(&self.spec, self.n, &mut self.entries.clone())
    }

    pub fn det_elem(&self) -> FieldElement {
        self.spec.elem(self.det()).expect("canonical")
    }

    /// Rank by Gaussian elimination. By the principal-rank property of
    /// symmetric matrices this equals the largest order of a nonsingular
    /// principal submatrix (see [`SymMatrix::principal_rank_bruteforce`]).
    pub fn rank(&self) -> usize {
        let mut a = self.entries.clone();
        rank_dense(&self.spec, self.n, self.n, &mut a)
    }

    /// max{|γ| : det(B[γ]) ≠ 0} by enumeration of all 2^n subsets, the
    /// independent oracle for [`SymMatrix::rank`]. The maximum over the empty
    /// set is 0. Guarded to n ≤ 24.
    pub fn principal_rank_bruteforce(&self) -> Result<usize> {
        if self.n > 24 {
            return Err(Error::capacity(format!(
                "principal rank brute force is capped at order 24, got {}",
                self.n
            )));
        }
        let mut best = 0usize;
        for mask in 0u64..(1 << self.n) {
            let k = mask.count_ones() as usize;
            if k <= best {
                continue;
            }
            if self.minor(mask) != 0 {
                best = k;
            }
        }
        Ok(best)
    }

    /// Principal minor det(B[α]) for α given as a bitmask (bit i ⇒ index i+1).
    pub fn minor(&self, mask: u64) -> u32 {
        let k = mask.count_ones() as usize;
        if k == 0 {
            return 1;
        }
        let mut idx = [0usize; MAX_ORDER];
        let mut m = mask;
        for slot in idx.iter_mut().take(k) {
            let b = m.trailing_zeros() as usize;
            *slot = b;
            m &= m - 1;
        }
        let mut a = vec![0u32; k * k];
        for r in 0..k {
            for c in 0..k {
                a[r * k + c] = self.get(idx[r], idx[c]);
            }
        }
        det_dense(&self.spec, k, &mut a)
    }

    /// B[α], indexing order inherited from B.
    pub fn principal_submatrix(&self, alpha: &IndexSet) -> Result<SymMatrix> {
        alpha.check_range(self.n)?;
        let k = alpha.len();
        let idx: Vec<usize> = alpha.iter().map(|i| i - 1).collect();
        let mut entries = vec![0u32; k * k];
        for r in 0..k {
            for c in 0..k {
                entries[r * k + c] = self.get(idx[r], idx[c]);
            }
        }
        Ok(SymMatrix {
            spec: Arc::clone(&self.spec),
            n: k,
            entries,
        })
    }

    /// Schur complement B/B[α] = B[α^c] − B[α^c,α](B[α])⁻¹B[α,α^c],
    /// with indexing inherited from B. Requires B[α] nonsingular.
    pub fn schur_complement(&self, alpha: &IndexSet) -> Result<SymMatrix> {
        alpha.check_range(self.n)?;
        let f = &self.spec;
        let k = alpha.len();
        if k == 0 {
            return Ok(self.clone());
        }
        let a_idx: Vec<usize> = alpha.iter().map(|i| i - 1).collect();
        let c_idx: Vec<usize> = alpha.complement(self.n).iter().map(|i| i - 1).collect();
        let m = c_idx.len();

        // invert B[α] by Gauss-Jordan
        let mut block = vec![0u32; k * k];
        for r in 0..k {
            for c in 0..k {
                block[r * k + c] = self.get(a_idx[r], a_idx[c]);
            }
        }
        let inv = invert_dense(f, k, block)
            .ok_or_else(|| Error::usage("B[α] is singular; Schur complement undefined"))?;

        // S = B[c] − B[c,a] · inv · B[a,c]
        let mut entries = vec![0u32; m * m];
        // tmp = B[c,a] · inv  (m×k)
        let mut tmp = vec![0u32; m * k];
        for r in 0..m {
            for c in 0..k {
                let mut acc = 0u32;
                for t in 0..k {
                    acc = f.add(acc, f.mul(self.get(c_idx[r], a_idx[t]), inv[t * k + c]));
                }
                tmp[r * k + c] = acc;
            }
        }
        for r in 0..m {
            for c in 0..m {
                let mut acc = 0u32;
                for t in 0..k {
                    acc = f.add(acc, f.mul(tmp[r * k + t], self.get(a_idx[t], c_idx[c])));
                }
                entries[r * m + c] = f.sub(self.get(c_idx[r], c_idx[c]), acc);
            }
        }
        Ok(SymMatrix {
            spec: Arc::clone(&self.spec),
            n: m,
            entries,
        })
    }

    /// B⁻¹ (symmetric when B is). Errors when B is singular.
    pub fn inverse(&self) -> Result<SymMatrix> {
        let inv = invert_dense(&self.spec, self.n, self.entries.clone())
            .ok_or_else(|| Error::usage("matrix is singular"))?;
        Ok(SymMatrix {
            spec: Arc::clone(&self.spec),
            n: self.n,
            entries: inv,
        })
    }

    /// cB for nonzero c.
    pub fn scale(&self, c: u32) -> Result<SymMatrix> {
        if c == 0 {
            return Err(Error::usage("scaling by 0 is not epr-preserving"));
        }
        let f = &self.spec;
        let entries = self.entries.iter().map(|&v| f.mul(v, c)).collect();
        Ok(SymMatrix {
            spec: Arc::clone(&self.spec),
            n: self.n,
            entries,
        })
    }

    /// PᵀBP for the permutation π of [n] (1-based: new position i holds old
    /// index π(i)).
    pub fn permute(&self, pi: &[usize]) -> Result<SymMatrix> {
        let n = self.n;
        let mut seen = vec![false; n + 1];
        if pi.len() != n || pi.iter().any(|&v| v == 0 || v > n || std::mem::replace(&mut seen[v.min(n)], true)) {
            return Err(Error::usage(format!("not a permutation of [1, {n}]")));
        }
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.get(pi[i] - 1, pi[j] - 1);
            }
        }
        Ok(SymMatrix {
            spec: Arc::clone(&self.spec),
            n,
            entries,
        })
    }

    /// DBD for D = diag(d₁, …, d_n) with every d_i nonzero.
    pub fn diag_congruence(&self, d: &[u32]) -> Result<SymMatrix> {
        if d.len() != self.n {
            return Err(Error::usage(format!("expected {} diagonal scalars", self.n)));
        }
        if d.iter().any(|&v| v == 0) {
            return Err(Error::usage("diagonal congruence with a zero scalar is not epr-preserving"));
        }
        let f = &self.spec;
        let n = self.n;
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = f.mul(f.mul(d[i], d[j]), self.get(i, j));
            }
        }
        Ok(SymMatrix {
            spec: Arc::clone(&self.spec),
            n,
            entries,
        })
    }

    /// Whether the epr-sequence of B begins AN: every entry nonzero and every
    /// 2×2 principal minor zero.
    pub fn has_an_prefix(&self) -> bool {
        if self.n < 2 || self.entries.iter().any(|&v| v == 0) {
            return false;
        }
        let f = &self.spec;
        for i in 0..self.n {
            for j in i + 1..self.n {
                let det2 = f.sub(
                    f.mul(self.get(i, i), self.get(j, j)),
                    f.mul(self.get(i, j), self.get(i, j)),
                );
                if det2 != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// The ±1 normal form for an AN-prefixed matrix: same epr-sequence, every
    /// entry ±1, diagonal and first row/column all 1. Follows the
    /// D = diag(c₁₁⁻¹, c₁₂⁻¹, …) construction with C = b₁₁⁻¹B.
    pub fn normalize_an(&self) -> Result<SymMatrix> {
        if !self.has_an_prefix() {
            return Err(Error::usage("epr prefix is not AN (need all entries nonzero and every 2×2 principal minor zero)"));
        }
        let f = &self.spec;
        let c = self.scale(f.inv(self.get(0, 0))?)?;
        let d: Vec<u32> = (0..self.n)
            .map(|j| f.inv(c.get(0, j)).expect("AN prefix keeps entries nonzero"))
            .collect();
        c.diag_congruence(&d)
    }

    // ---- text format ----

    /// Parse the matrix text format: line 1 `q n`, then n rows of n entries;
    /// `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<SymMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(ln, l)| (ln + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse("line 1", "empty matrix file"))?;
        let mut parts = header.split_whitespace();
        let q = parts
            .next()
            .ok_or_else(|| Error::parse(format!("line {ln}"), "missing field order"))?;
        let spec = FieldSpec::parse(q)?;
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(format!("line {ln}"), "missing or bad matrix order"))?;
        if parts.next().is_some() {
            return Err(Error::parse(format!("line {ln}"), "trailing tokens after `q n`"));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in 0..n {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse("end of file", format!("expected {n} rows, got {row}")))?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != n {
                return Err(Error::parse(
                    format!("line {ln}"),
                    format!("expected {n} entries, got {}", tokens.len()),
                ));
            }
            for t in tokens {
                entries.push(spec.parse_value(t)?);
            }
        }
        if lines.next().is_some() {
            return Err(Error::parse("trailing line", "extra content after matrix rows"));
        }
        SymMatrix::new(spec, n, entries)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.spec.name(), self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| self.spec.format_value(self.get(i, j)))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Determinant of a dense k×k scratch buffer (destroyed).
pub(crate) fn det_dense(f: &FieldSpec, k: usize, a: &mut [u32]) -> u32 {
    let mut det = 1u32;
    for col in 0..k {
        let pivot_row = match (col..k).find(|&r| a[r * k + col] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot_row != col {
            for j in 0..k {
                a.swap(col * k + j, pivot_row * k + j);
            }
            det = f.neg(det);
        }
        let pivot = a[col * k + col];
        det = f.mul(det, pivot);
        let pinv = f.inv(pivot).expect("pivot nonzero");
        for r in col + 1..k {
            let factor = f.mul(a[r * k + col], pinv);
            if factor == 0 {
                continue;
            }
            for j in col..k {
                let v = f.sub(a[r * k + j], f.mul(factor, a[col * k + j]));
                a[r * k + j] = v;
            }
        }
    }
    det
}

/// Row-echelon rank of a dense rows×cols scratch buffer (destroyed).
pub(crate) fn rank_dense(f: &FieldSpec, rows: usize, cols: usize, a: &mut [u32]) -> usize {
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot_row = match (rank..rows).find(|&r| a[r * cols + col] != 0) {
            Some(r) => r,
            None => continue,
        };
        if pivot_row != rank {
            for j in 0..cols {
                a.swap(rank * cols + j, pivot_row * cols + j);
            }
        }
        let pinv = f.inv(a[rank * cols + col]).expect("pivot nonzero");
        for r in rank + 1..rows {
            let factor = f.mul(a[r * cols + col], pinv);
            if factor == 0 {
                continue;
            }
            for j in col..cols {
                let v = f.sub(a[r * cols + j], f.mul(factor, a[rank * cols + j]));
                a[r * cols + j] = v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Gauss-Jordan inverse of a dense k×k buffer; None when singular.
pub(crate) fn invert_dense(f: &FieldSpec, k: usize, mut a: Vec<u32>) -> Option<Vec<u32>> {
    let mut inv = vec![0u32; k * k];
    for i in 0..k {
        inv[i * k + i] = 1;
    }
    for col in 0..k {
        let pivot_row = (col..k).find(|&r| a[r * k + col] != 0)?;
        if pivot_row != col {
            for j in 0..k {
                a.swap(col * k + j, pivot_row * k + j);
                inv.swap(col * k + j, pivot_row * k + j);
            }
        }
        let pinv = f.inv(a[col * k + col]).expect("pivot nonzero");
        for j in 0..k {
            a[col * k + j] = f.mul(a[col * k + j], pinv);
            inv[col * k + j] = f.mul(inv[col * k + j], pinv);
        }
        for r in 0..k {
            if r == col {
                continue;
            }
            let factor = a[r * k + col];
            if factor == 0 {
                continue;
            }
            for j in 0..k {
                a[r * k + j] = f.sub(a[r * k + j], f.mul(factor, a[col * k + j]));
                inv[r * k + j] = f.sub(inv[r * k + j], f.mul(factor, inv[col * k + j]));
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn j_minus_i(q: u32, n: usize) -> SymMatrix {
        constructions::build_j_minus_k_i(&FieldSpec::by_order(q).unwrap(), n, 1).unwrap()
    }

    #[test]
    fn det_examples() {
        // det(J₄ − I₄) over GF(3): (−1)³·(4−1) = 0 mod 3
        assert_eq!(j_minus_i(3, 4).det(), 0);
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(SymMatrix::identity(f, 5).det(), 1);
        // GF(2): [[0,1],[1,0]] has det 1
        assert_eq!(j_minus_i(2, 2).det(), 1);
    }

    #[test]
    fn empty_submatrix_det_is_one() {
        let b = j_minus_i(3, 4);
        let empty = b.principal_submatrix(&IndexSet::empty()).unwrap();
        assert_eq!(empty.order(), 0);
        assert_eq!(empty.det(), 1);
        let full = b.principal_submatrix(&IndexSet::full(4)).unwrap();
        assert_eq!(full, b);
    }

    #[test]
    fn principal_submatrix_structure() {
        let b = j_minus_i(3, 3);
        let s = b
            .principal_submatrix(&IndexSet::new(vec![1, 2]).unwrap())
            .unwrap();
        assert_eq!(s, j_minus_i(3, 2));
        assert!(b.principal_submatrix(&IndexSet::new(vec![4]).unwrap()).is_err());
    }

    #[test]
    fn rank_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(SymMatrix::zero(Arc::clone(&f3), 4).rank(), 0);
        let b = j_minus_i(3, 4);
        assert_eq!(b.rank(), 3);
        assert_eq!(b.principal_rank_bruteforce().unwrap(), 3);
        let j = constructions::build_all_ones(&f3, 5);
        assert_eq!(j.rank(), 1);
    }

    #[test]
    fn rank_equals_principal_rank_exhaustive_small() {
        // fully exhaustive at n ≤ 3 over GF(2) and GF(3)
        for q in [2u32, 3] {
            let f = FieldSpec::by_order(q).unwrap();
            for n in 1..=3usize {
                let m = n * (n + 1) / 2;
                for code in 0..q.pow(m as u32) as u64 {
                    let mut upper = vec![0u32; m];
                    let mut c = code;
                    for u in upper.iter_mut() {
                        *u = (c % q as u64) as u32;
                        c /= q as u64;
                    }
                    let b = SymMatrix::from_upper_triangle(Arc::clone(&f), n, &upper).unwrap();
                    assert_eq!(b.rank(), b.principal_rank_bruteforce().unwrap());
                }
            }
        }
    }

    #[test]
    fn schur_trivial_cases() {
        let b = j_minus_i(3, 4);
        assert_eq!(b.schur_complement(&IndexSet::empty()).unwrap(), b);
        let f5 = FieldSpec::prime(5).unwrap();
        let i6 = SymMatrix::identity(Arc::clone(&f5), 6);
        let s = i6
            .schur_complement(&IndexSet::new(vec![2, 5]).unwrap())
            .unwrap();
        assert_eq!(s, SymMatrix::identity(f5, 4));
    }

    #[test]
    fn schur_determinant_identity_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let f = FieldSpec::prime(5).unwrap();
        let n = 6usize;
        let mut checked = 0;
        while checked < 50 {
            let upper: Vec<u32> = (0..n * (n + 1) / 2).map(|_| rng.gen_range(0..5)).collect();
            let b = SymMatrix::from_upper_triangle(Arc::clone(&f), n, &upper).unwrap();
            let alpha = IndexSet::new(vec![rng.gen_range(1..=3), rng.gen_range(4..=6)]).unwrap();
            let det_a = b.minor(alpha.mask());
            if det_a == 0 {
                continue;
            }
            let s = b.schur_complement(&alpha).unwrap();
            // det(S[γ])·det(B[α]) = det(B[γ∪α]) for every γ ⊆ α^c
            let comp: Vec<usize> = alpha.complement(n).iter().collect();
            for g in 0u64..(1 << comp.len()) {
                let gamma = IndexSet::new(
                    (0..comp.len()).filter(|&t| g >> t & 1 == 1).map(|t| comp[t]).collect(),
                )
                .unwrap();
                // S inherits indexing from B: position t in S corresponds to comp[t]
                let s_mask = (0..comp.len()).filter(|&t| g >> t & 1 == 1).fold(0u64, |m, t| m | 1 << t);
                let lhs = f.mul(s.minor(s_mask), det_a);
                let rhs = b.minor(gamma.union(&alpha).mask());
                assert_eq!(lhs, rhs);
            }
            checked += 1;
        }
    }

    #[test]
    fn transforms() {
        let b = j_minus_i(3, 3);
        assert_eq!(b.scale(1).unwrap(), b);
        assert!(b.scale(0).is_err());
        assert_eq!(b.permute(&[3, 1, 2]).unwrap(), b); // J−I is permutation-invariant
        assert!(b.permute(&[1, 1, 2]).is_err());
        assert!(b.diag_congruence(&[1, 0, 1]).is_err());
    }

    #[test]
    fn diag_congruence_normalizes_first_row() {
        let f = FieldSpec::prime(5).unwrap();
        let b = SymMatrix::new(
            Arc::clone(&f),
            3,
            vec![2, 3, 4, 3, 1, 2, 4, 2, 1],
        )
        .unwrap();
        let d = vec![1, f.inv(3).unwrap(), f.inv(4).unwrap()];
        let m = b.diag_congruence(&d).unwrap();
        assert_eq!(m.get(0, 1), 1);
        assert_eq!(m.get(0, 2), 1);
        assert_eq!(m.get(1, 0), 1);
    }

    #[test]
    fn normalize_an_cases() {
        let f3 = FieldSpec::prime(3).unwrap();
        let j4 = constructions::build_all_ones(&f3, 4);
        assert_eq!(j4.normalize_an().unwrap(), j4);
        let m = j4.scale(2).unwrap().normalize_an().unwrap();
        assert_eq!(m, j4);
        // a zero entry breaks the AN precondition
        let with_zero = SymMatrix::new(Arc::clone(&f3), 2, vec![1, 0, 0, 1]).unwrap();
        assert!(with_zero.normalize_an().is_err());
    }

    #[test]
    fn text_format_roundtrip_and_errors() {
        let b = j_minus_i(3, 3);
        let parsed = SymMatrix::parse_text(&b.to_text()).unwrap();
        assert_eq!(parsed, b);

        let asym = "3 2\n0 1\n2 0\n";
        let err = SymMatrix::parse_text(asym).unwrap_err().to_string();
        assert!(err.contains("(1, 2)"), "{err}");

        let commented = "# fixture\n3 2  # GF(3), order 2\n0 1\n1 0\n";
        assert!(SymMatrix::parse_text(commented).is_ok());
    }

    #[test]
    fn extension_field_text_roundtrip() {
        let f9 = FieldSpec::by_order(9).unwrap();
        let b = SymMatrix::new(Arc::clone(&f9), 2, vec![4, 7, 7, 2]).unwrap();
        let text = b.to_text();
        assert!(text.starts_with("3^2 2"));
        assert_eq!(SymMatrix::parse_text(&text).unwrap(), b);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FieldSpec::prime(7).unwrap();
        let b = SymMatrix::new(Arc::clone(&f), 3, vec![1, 2, 3, 2, 5, 1, 3, 1, 4]).unwrap();
        let inv = b.inverse().unwrap();
        // B · B⁻¹ = I, checked entrywise
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0;
                for t in 0..3 {
                    acc = f.add(acc, f.mul(b.get(i, t), inv.get(t, j)));
                }
                assert_eq!(acc, u32::from(i == j));
            }
        }
    }
}
