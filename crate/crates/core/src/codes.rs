//! Linear codes over GF(q): parity checks, weight enumerators, spark, and
//! the epr(HᵀH) minimum-distance bound.

use crate::epr::{self, Letter};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::{rank_dense, SymMatrix};
use crate::EprSequence;
use rand::Rng;
use std::fmt;
use std::sync::Arc;

/// q^k cap for codeword enumeration.
const ENUM_CAP: u64 = 1 << 24;
/// column cap for subset-based spark
const SPARK_CAP: usize = 20;

/// Rectangular matrix over a finite field, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    spec: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl Mat {
    pub fn new(spec: Arc<FieldSpec>, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::usage(format!(
                "expected {} entries for a {rows}×{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(&v) = entries.iter().find(|&&v| v >= spec.q()) {
            return Err(Error::usage(format!("entry {v} is not a GF({}) value", spec.q())));
        }
        Ok(Mat { spec, rows, cols, entries })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn rank(&self) -> usize {
        let mut a = self.entries.clone();
        rank_dense(&self.spec, self.rows, self.cols, &mut a)
    }

    pub fn transpose(&self) -> Mat {
        let mut entries = vec![0u32; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[j * self.rows + i] = self.get(i, j);
            }
        }
        Mat {
            spec: Arc::clone(&self.spec),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::usage(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.spec;
        let mut entries = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = 0u32;
                for t in 0..self.cols {
                    s = f.add(s, f.mul(self.get(i, t), other.get(t, j)));
                }
                entries[i * other.cols + j] = s;
            }
        }
        Ok(Mat {
            spec: Arc::clone(&self.spec),
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// Reduced row echelon form with zero rows dropped.
    pub fn rref(&self) -> Mat {
        let f = &self.spec;
        let mut a = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut r = 0;
        for col in 0..cols {
            let Some(p) = (r..rows).find(|&i| a[i * cols + col] != 0) else {
                continue;
            };
            for j in 0..cols {
                a.swap(r * cols + j, p * cols + j);
            }
            let inv = f.inv(a[r * cols + col]).expect("pivot nonzero");
            for j in 0..cols {
                a[r * cols + j] = f.mul(a[r * cols + j], inv);
            }
            for i in 0..rows {
                if i == r || a[i * cols + col] == 0 {
                    continue;
                }
                let factor = a[i * cols + col];
                for j in 0..cols {
                    let s = f.mul(factor, a[r * cols + j]);
                    a[i * cols + j] = f.sub(a[i * cols + j], s);
                }
            }
            r += 1;
            if r == rows {
                break;
            }
        }
        Mat {
            spec: Arc::clone(&self.spec),
            rows: r,
            cols,
            entries: a[..r * cols].to_vec(),
        }
    }

    /// Basis of the right kernel {x : self · x = 0}, one vector per row.
    pub fn nullspace(&self) -> Mat {
        let f = Arc::clone(&self.spec);
        let r = self.rref();
        let cols = self.cols;
        let mut pivot_col_of_row = Vec::new();
        let mut is_pivot = vec![false; cols];
        for i in 0..r.rows {
            let col = (0..cols).find(|&j| r.get(i, j) != 0).expect("rref rows nonzero");
            pivot_col_of_row.push(col);
            is_pivot[col] = true;
        }
        let free: Vec<usize> = (0..cols).filter(|&j| !is_pivot[j]).collect();
        let mut entries = Vec::with_capacity(free.len() * cols);
        for &fc in &free {
            let mut v = vec![0u32; cols];
            v[fc] = 1;
            for (row, &pc) in pivot_col_of_row.iter().enumerate() {
                v[pc] = f.neg(r.get(row, fc));
            }
            entries.extend(v);
        }
        Mat {
            spec: f,
            rows: free.len(),
            cols,
            entries,
        }
    }

    /// Parse the rectangular text format: line 1 `q k n`, then k rows of n
    /// entries; `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<Mat> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(ln, l)| (ln + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse("line 1", "empty generator file"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::parse(format!("line {ln}"), "header must be `q k n`"));
        }
        let spec = FieldSpec::parse(parts[0])?;
        let rows: usize = parts[1]
            .parse()
            .map_err(|_| Error::parse(format!("line {ln}"), "bad row count"))?;
        let cols: usize = parts[2]
            .parse()
            .map_err(|_| Error::parse(format!("line {ln}"), "bad column count"))?;
        let mut entries = Vec::with_capacity(rows * cols);
        for row in 0..rows {
            let (ln, line) = lines.next().ok_or_else(|| {
                Error::parse("end of file", format!("expected {rows} rows, got {row}"))
            })?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != cols {
                return Err(Error::parse(
                    format!("line {ln}"),
                    format!("expected {cols} entries, got {}", tokens.len()),
                ));
            }
            for t in tokens {
                entries.push(spec.parse_value(t)?);
            }
        }
        if lines.next().is_some() {
            return Err(Error::parse("trailing line", "extra content after matrix rows"));
        }
        Mat::new(spec, rows, cols, entries)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.spec.name(), self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.spec.format_value(self.get(i, j)))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A nonzero linear code, held by a full-row-rank reduced generator matrix.
#[derive(Debug, Clone)]
pub struct LinearCode {
    g: Mat,
}

impl LinearCode {
    pub fn new(generator: Mat) -> Result<LinearCode> {
        let g = generator.rref();
        if g.rows == 0 {
            return Err(Error::usage("zero code: generator has rank 0"));
        }
        Ok(LinearCode { g })
    }

    pub fn from_text(text: &str) -> Result<LinearCode> {
        LinearCode::new(Mat::parse_text(text)?)
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.g.spec
    }

    pub fn n(&self) -> usize {
        self.g.cols
    }

    pub fn k(&self) -> usize {
        self.g.rows
    }

    pub fn generator(&self) -> &Mat {
        &self.g
    }

    /// Generator of the dual code: rows span C^⊥. Empty (0×n) when k = n.
    pub fn parity_check(&self) -> Mat {
        self.g.nullspace()
    }

    fn check_enum_cap(&self) -> Result<()> {
        let size = (0..self.k()).try_fold(1u64, |acc, _| {
            acc.checked_mul(u64::from(self.g.spec.q()))
        });
        match size {
            Some(s) if s <= ENUM_CAP => Ok(()),
            _ => Err(Error::capacity(format!(
                "codeword enumeration needs q^k ≤ {ENUM_CAP}, got q = {} k = {}",
                self.g.spec.q(),
                self.k()
            ))),
        }
    }

    /// Visits every codeword once (including zero).
    pub fn for_each_codeword(&self, mut visit: impl FnMut(&[u32])) -> Result<()> {
        self.check_enum_cap()?;
        let f = &self.g.spec;
        let q = f.q();
        let (k, n) = (self.k(), self.n());
        let mut coeffs = vec![0u32; k];
        let mut word = vec![0u32; n];
        loop {
            visit(&word);
            let mut t = 0;
            loop {
                if t == k {
                    return Ok(());
                }
                // canonical values 0..q-1 enumerate every field element; step
                // the scalar by the field difference of consecutive values
                let old = coeffs[t];
                let new = if old + 1 < q { old + 1 } else { 0 };
                coeffs[t] = new;
                let delta = f.sub(new, old);
                for j in 0..n {
                    word[j] = f.add(word[j], f.mul(delta, self.g.get(t, j)));
                }
                if new != 0 {
                    break;
                }
                t += 1;
            }
        }
    }

    /// A_0 … A_n: number of codewords of each weight.
    pub fn weight_enumerator(&self) -> Result<Vec<u64>> {
        let mut a = vec![0u64; self.n() + 1];
        self.for_each_codeword(|w| {
            let weight = w.iter().filter(|&&v| v != 0).count();
            a[weight] += 1;
        })?;
        Ok(a)
    }

    pub fn min_distance(&self) -> Result<usize> {
        let a = self.weight_enumerator()?;
        a.iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(j, _)| j)
            .ok_or_else(|| Error::usage("zero code has no minimum distance"))
    }
}

/// Least s such that some s columns of H are linearly dependent, by
/// increasing-size subset rank tests.
pub fn spark(h: &Mat) -> Result<usize> {
    if h.rows == 0 || h.cols == 0 {
        return Err(Error::usage("spark needs a nonempty matrix"));
    }
    if h.cols <= h.rows {
        return Err(Error::usage(format!(
            "spark expects more columns than rows, got {}×{}",
            h.rows, h.cols
        )));
    }
    if h.cols > SPARK_CAP {
        return Err(Error::capacity(format!(
            "subset spark is capped at {SPARK_CAP} columns, got {}",
            h.cols
        )));
    }
    for s in 1..=h.cols {
        let mut found = false;
        epr::for_each_subset(h.cols, s, |mask| {
            let cols: Vec<usize> = (0..h.cols).filter(|&j| mask >> j & 1 == 1).collect();
            let mut sub = Vec::with_capacity(h.rows * s);
            for i in 0..h.rows {
                for &j in &cols {
                    sub.push(h.get(i, j));
                }
            }
            if rank_dense(&h.spec, h.rows, s, &mut sub) < s {
                found = true;
                return false;
            }
            true
        });
        if found {
            return Ok(s);
        }
    }
    // with cols > rows some dependent set exists by dimension count
    unreachable!("more columns than rows always has a dependent subset")
}

/// Spark as the least weight of a nonzero kernel vector; cross-check for
/// `spark`.
pub fn spark_kernel(h: &Mat) -> Result<usize> {
    if h.rows == 0 || h.cols == 0 {
        return Err(Error::usage("spark needs a nonempty matrix"));
    }
    if h.cols <= h.rows {
        return Err(Error::usage(format!(
            "spark expects more columns than rows, got {}×{}",
            h.rows, h.cols
        )));
    }
    let kernel = LinearCode::new(h.nullspace())?;
    kernel.min_distance()
}

#[derive(Debug)]
pub struct BoundReport {
    pub bound: usize,
    pub epr: EprSequence,
    pub min_distance: Option<usize>,
    pub tight: Option<bool>,
}

/// The minimum-distance bound min{j : ℓ_j ≠ A} of epr(HᵀH), H the reduced
/// dual basis. Also computes the true minimum distance when within capacity
/// and asserts the bound.
pub fn epr_distance_bound(c: &LinearCode) -> Result<BoundReport> {
    let h = c.parity_check();
    if h.rows == 0 {
        return Err(Error::usage(
            "full-space code: the parity-check matrix is empty, no bound available",
        ));
    }
    let hth = h.transpose().mul(&h)?;
    let sym = SymMatrix::new(Arc::clone(c.spec()), c.n(), hth.entries.clone())?;
    let e = epr::epr(&sym);
    let bound = (1..=c.n())
        .find(|&j| e.letter(j) != Letter::A)
        .expect("a nonzero code has a codeword weight j with letter j not A");
    let min_distance = c.min_distance().ok();
    if let Some(d) = min_distance {
        assert!(bound <= d, "distance bound {bound} exceeds min distance {d}");
    }
    Ok(BoundReport {
        bound,
        epr: e,
        min_distance,
        tight: min_distance.map(|d| d == bound),
    })
}

/// Uniform random generator matrix, re-drawn until the code is nonzero.
pub fn random_code(spec: &Arc<FieldSpec>, n: usize, k: usize, rng: &mut impl Rng) -> Result<LinearCode> {
    if k == 0 || k > n {
        return Err(Error::usage(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    loop {
        let entries: Vec<u32> = (0..k * n).map(|_| rng.gen_range(0..spec.q())).collect();
        let g = Mat::new(Arc::clone(spec), k, n, entries)?;
        if !g.is_zero() {
            return LinearCode::new(g);
        }
    }
}

#[derive(Debug)]
pub struct QCeilingReport {
    pub q: u32,
    pub samples: usize,
    pub seed: u64,
    /// histogram of min_distance − bound
    pub gap_histogram: std::collections::BTreeMap<usize, usize>,
    pub max_bound: usize,
    /// codes whose bound exceeded q (expected: none)
    pub violations: usize,
}

/// Samples random codes with k < n and checks the field-size ceiling on the
/// epr distance bound: min{j : ℓ_j ≠ A} ≤ q for q ∈ {2, 3}.
pub fn q_ceiling_audit(q: u32, samples: usize, seed: u64) -> Result<QCeilingReport> {
    if q != 2 && q != 3 {
        return Err(Error::usage(format!("the q-ceiling remark covers q ∈ {{2, 3}}, got {q}")));
    }
    use rand::SeedableRng;
    let spec = FieldSpec::by_order(q)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut gap_histogram = std::collections::BTreeMap::new();
    let mut max_bound = 0;
    let mut violations = 0;
    let mut done = 0;
    while done < samples {
        let n = rng.gen_range(3..=8);
        let k = rng.gen_range(1..n);
        let c = random_code(&spec, n, k, &mut rng)?;
        if c.k() == c.n() {
            continue; // rref promoted it to the full space; no parity check
        }
        let report = epr_distance_bound(&c)?;
        let d = report.min_distance.expect("within enumeration cap");
        *gap_histogram.entry(d - report.bound).or_insert(0) += 1;
        max_bound = max_bound.max(report.bound);
        if report.bound > q as usize {
            violations += 1;
        }
        done += 1;
    }
    Ok(QCeilingReport {
        q,
        samples,
        seed,
        gap_histogram,
        max_bound,
        violations,
    })
}
