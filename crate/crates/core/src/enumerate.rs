//! Exhaustive determination of the attainable epr-sequences over GF(2) and
//! GF(3) at small order, with symmetry pruning by the epr-preserving
//! transformations, plus two-sided catalog verification.
//!
//! Search-space iteration is packed-integer counting over the upper triangle.
//! Pruned mode enumerates canonical representatives only:
//!   1. scalar quotient (GF(3)): the diagonal has at least as many 1s as 2s,
//!      since 2B has them swapped and epr(2B) = epr(B);
//!   2. permutation: diagonal values non-increasing;
//!   3. diagonal congruence (GF(3), where d² = 1 keeps the diagonal fixed):
//!      matrices whose first row is free of zero off-diagonal entries are
//!      enumerated with that row normalized to all ones; the complementary
//!      branch (a zero somewhere in the first row) is enumerated raw.
//! Every matrix therefore reaches some enumerated representative with the
//! same epr-sequence; the reduction is validated against unpruned
//! enumeration at small orders in tests.
//!
//! Work is sharded by the packed value of the first row; the merge is a
//! set-union keeping, per sequence, the witness with the smallest packed
//! upper-triangle code, so reports are identical for any shard count.

use crate::epr;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::SymMatrix;
use crate::pattern::{Catalog, FormPattern};
use crate::{EprSequence, Letter};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

const MAX_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruningMode {
    /// Full enumeration below a size threshold, pruned above.
    Auto,
    Full,
    Pruned,
}

#[derive(Debug, Clone)]
pub struct EnumOptions {
    /// Report only sequences from {A, N}.
    pub alphabet_an_only: bool,
    pub mode: PruningMode,
    pub shards: usize,
    /// Allow orders beyond the desk-scale caps.
    pub big: bool,
    /// Persist per-shard results; completed shards are skipped on re-run.
    pub checkpoint: Option<PathBuf>,
    pub progress: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            alphabet_an_only: false,
            mode: PruningMode::Auto,
            shards: 1,
            big: false,
            checkpoint: None,
            progress: false,
        }
    }
}

/// The attained set at (q, n) with one witness per sequence and counters for
/// the work done.
#[derive(Debug)]
pub struct AttainabilityReport {
    pub q: u32,
    pub n: usize,
    pub attained: BTreeMap<EprSequence, SymMatrix>,
    /// matrices evaluated
    pub visited: u64,
    /// matrices skipped by canonical-representative pruning
    pub pruned: u64,
    pub alphabet_an_only: bool,
}

impl AttainabilityReport {
    pub fn sequences(&self) -> impl Iterator<Item = &EprSequence> {
        self.attained.keys()
    }
}

/// Both inclusion directions of a catalog check at (q, n).
#[derive(Debug)]
pub struct CatalogDiff {
    /// catalog ∖ attained
    pub missing: Vec<EprSequence>,
    /// attained ∖ catalog
    pub extra: Vec<EprSequence>,
    pub report: AttainabilityReport,
}

impl CatalogDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

// ---- letter coding for the fast kernels: 0 = A, 1 = S, 2 = N ----

const LET_A: u8 = 0;
const LET_S: u8 = 1;
const LET_N: u8 = 2;

fn decode_seq(n: usize, code: u32) -> EprSequence {
    let mut letters = Vec::with_capacity(n);
    let mut c = code;
    for _ in 0..n {
        letters.push(match c % 3 {
            0 => Letter::A,
            1 => Letter::S,
            _ => Letter::N,
        });
        c /= 3;
    }
    EprSequence::new(letters)
}

/// Subset masks per order, in lexicographic index-set order, built once per n.
struct SubsetTables {
    by_order: Vec<Vec<u8>>, // by_order[j-1] = masks of size j
}

impl SubsetTables {
    fn new(n: usize) -> SubsetTables {
        let mut by_order = Vec::with_capacity(n);
        for j in 1..=n {
            let mut masks = Vec::new();
            epr::for_each_subset(n, j, |m| {
                masks.push(m as u8);
                true
            });
            by_order.push(masks);
        }
        SubsetTables { by_order }
    }
}

// ---- GF(2) kernel: rows as bitmasks ----

fn gf2_rows(n: usize, entries: &[u8; 64]) -> [u8; MAX_N] {
    let mut rows = [0u8; MAX_N];
    for i in 0..n {
        let mut r = 0u8;
        for j in 0..n {
            r |= (entries[i * MAX_N + j] & 1) << j;
        }
        rows[i] = r;
    }
    rows
}

fn gf2_rank(n: usize, rows: &[u8; MAX_N]) -> usize {
    let mut a = *rows;
    let mut rank = 0;
    for col in 0..n {
        let bit = 1u8 << col;
        if let Some(p) = (rank..n).find(|&r| a[r] & bit != 0) {
            a.swap(rank, p);
            let pr = a[rank];
            for item in a.iter_mut().take(n).skip(rank + 1) {
                if *item & bit != 0 {
                    *item ^= pr;
                }
            }
            rank += 1;
        }
    }
    rank
}

fn gf2_minor_nonsingular(rows: &[u8; MAX_N], mask: u8) -> bool {
    let mut sub = [0u8; MAX_N];
    let mut k = 0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        sub[k] = rows[i] & mask;
        k += 1;
        m &= m - 1;
    }
    let mut r = 0;
    let mut cols = mask;
    while cols != 0 {
        let bit = 1u8 << cols.trailing_zeros();
        cols &= cols - 1;
        let mut piv = usize::MAX;
        for (t, &row) in sub.iter().enumerate().take(k).skip(r) {
            if row & bit != 0 {
                piv = t;
                break;
            }
        }
        if piv == usize::MAX {
            return false;
        }
        sub.swap(r, piv);
        let pr = sub[r];
        for item in sub.iter_mut().take(k).skip(r + 1) {
            if *item & bit != 0 {
                *item ^= pr;
            }
        }
        r += 1;
    }
    true
}

fn epr_gf2(n: usize, entries: &[u8; 64], tables: &SubsetTables) -> u32 {
    let rows = gf2_rows(n, entries);
    let rank = gf2_rank(n, &rows);
    let mut code = 0u32;
    let mut place = 1u32;
    for j in 1..=n {
        let letter = if j > rank {
            LET_N
        } else {
            let mut seen_zero = false;
            let mut seen_nonzero = false;
            for &mask in &tables.by_order[j - 1] {
                if gf2_minor_nonsingular(&rows, mask) {
                    seen_nonzero = true;
                } else {
                    seen_zero = true;
                }
                if seen_zero && seen_nonzero {
                    break;
                }
            }
            match (seen_nonzero, seen_zero) {
                (true, false) => LET_A,
                (true, true) => LET_S,
                (false, _) => LET_N,
            }
        };
        code += u32::from(letter) * place;
        place *= 3;
    }
    code
}

// ---- GF(3) kernel: byte entries with table arithmetic ----

const SUB3: [[u8; 3]; 3] = [[0, 2, 1], [1, 0, 2], [2, 1, 0]];
const MUL3: [[u8; 3]; 3] = [[0, 0, 0], [0, 1, 2], [0, 2, 1]];

fn gf3_rank(n: usize, entries: &[u8; 64]) -> usize {
    let mut a = [0u8; 64];
    for i in 0..n {
        for j in 0..n {
            a[i * MAX_N + j] = entries[i * MAX_N + j];
        }
    }
    let mut rank = 0;
    for col in 0..n {
        let mut piv = usize::MAX;
        for r in rank..n {
            if a[r * MAX_N + col] != 0 {
                piv = r;
                break;
            }
        }
        if piv == usize::MAX {
            continue;
        }
        if piv != rank {
            for j in 0..n {
                a.swap(rank * MAX_N + j, piv * MAX_N + j);
            }
        }
        // inv(x) = x in GF(3)
        let pinv = a[rank * MAX_N + col];
        for r in rank + 1..n {
            let f = MUL3[a[r * MAX_N + col] as usize][pinv as usize];
            if f == 0 {
                continue;
            }
            for j in col..n {
                let s = MUL3[f as usize][a[rank * MAX_N + j] as usize];
                a[r * MAX_N + j] = SUB3[a[r * MAX_N + j] as usize][s as usize];
            }
        }
        rank += 1;
    }
    rank
}

fn gf3_minor_nonsingular(n_entries: &[u8; 64], mask: u8) -> bool {
    let k = mask.count_ones() as usize;
    let mut idx = [0usize; MAX_N];
    let mut m = mask;
    for slot in idx.iter_mut().take(k) {
        *slot = m.trailing_zeros() as usize;
        m &= m - 1;
    }
    let mut sub = [0u8; 64];
    for r in 0..k {
        for c in 0..k {
            sub[r * MAX_N + c] = n_entries[idx[r] * MAX_N + idx[c]];
        }
    }
    for col in 0..k {
        let mut piv = usize::MAX;
        for r in col..k {
            if sub[r * MAX_N + col] != 0 {
                piv = r;
                break;
            }
        }
        if piv == usize::MAX {
            return false;
        }
        if piv != col {
            for j in col..k {
                sub.swap(col * MAX_N + j, piv * MAX_N + j);
            }
        }
        let pinv = sub[col * MAX_N + col];
        for r in col + 1..k {
            let f = MUL3[sub[r * MAX_N + col] as usize][pinv as usize];
            if f == 0 {
                continue;
            }
            for j in col..k {
                let s = MUL3[f as usize][sub[col * MAX_N + j] as usize];
                sub[r * MAX_N + j] = SUB3[sub[r * MAX_N + j] as usize][s as usize];
            }
        }
    }
    true
}

fn epr_gf3(n: usize, entries: &[u8; 64], tables: &SubsetTables) -> u32 {
    let rank = gf3_rank(n, entries);
    let mut code = 0u32;
    let mut place = 1u32;
    for j in 1..=n {
        let letter = if j > rank {
            LET_N
        } else {
            let mut seen_zero = false;
            let mut seen_nonzero = false;
            for &mask in &tables.by_order[j - 1] {
                if gf3_minor_nonsingular(entries, mask) {
                    seen_nonzero = true;
                } else {
                    seen_zero = true;
                }
                if seen_zero && seen_nonzero {
                    break;
                }
            }
            match (seen_nonzero, seen_zero) {
                (true, false) => LET_A,
                (true, true) => LET_S,
                (false, _) => LET_N,
            }
        };
        code += u32::from(letter) * place;
        place *= 3;
    }
    code
}

// ---- iteration ----

/// Upper-triangle positions (i ≤ j) in row-major order; the packed code of a
/// matrix reads its digits in this order, least significant first.
fn upper_positions(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            out.push((i, j));
        }
    }
    out
}

fn packed_code(q: u64, n: usize, entries: &[u8; 64]) -> u64 {
    let mut code = 0u64;
    for (i, j) in upper_positions(n).into_iter().rev() {
        code = code * q + u64::from(entries[i * MAX_N + j]);
    }
    code
}

fn matrix_from_code(spec: &Arc<FieldSpec>, n: usize, mut code: u64) -> SymMatrix {
    let q = u64::from(spec.q());
    let mut upper = Vec::with_capacity(n * (n + 1) / 2);
    for _ in 0..n * (n + 1) / 2 {
        upper.push((code % q) as u32);
        code /= q;
    }
    SymMatrix::from_upper_triangle(Arc::clone(spec), n, &upper).expect("decoded digits are canonical")
}

struct Accum {
    /// min packed code per sequence code; u64::MAX = unattained
    best: Vec<u64>,
    visited: u64,
}

impl Accum {
    fn new(n: usize) -> Accum {
        Accum {
            best: vec![u64::MAX; 3usize.pow(n as u32)],
            visited: 0,
        }
    }

    fn merge(&mut self, other: &Accum) {
        for (a, &b) in self.best.iter_mut().zip(&other.best) {
            *a = (*a).min(b);
        }
        self.visited += other.visited;
    }
}

struct Scan<'a> {
    q: u8,
    n: usize,
    eval: fn(usize, &[u8; 64], &SubsetTables) -> u32,
    tables: &'a SubsetTables,
    entries: [u8; 64],
    progress: bool,
}

impl Scan<'_> {
    #[inline]
    fn set(&mut self, i: usize, j: usize, v: u8) {
        self.entries[i * MAX_N + j] = v;
        self.entries[j * MAX_N + i] = v;
    }

    #[inline]
    fn emit(&mut self, acc: &mut Accum) {
        let seq = (self.eval)(self.n, &self.entries, self.tables) as usize;
        let code = packed_code(u64::from(self.q), self.n, &self.entries);
        if code < acc.best[seq] {
            acc.best[seq] = code;
        }
        acc.visited += 1;
        if self.progress && acc.visited % (1 << 22) == 0 {
            eprintln!("  … visited {} matrices", acc.visited);
        }
    }

    /// Odometer over the given positions (all q values each); calls emit for
    /// every assignment, including the initial all-zero one.
    fn scan_positions(&mut self, positions: &[(usize, usize)], acc: &mut Accum) {
        for &(i, j) in positions {
            self.set(i, j, 0);
        }
        let mut digits = vec![0u8; positions.len()];
        loop {
            self.emit(acc);
            let mut t = 0;
            loop {
                if t == digits.len() {
                    return;
                }
                digits[t] += 1;
                if digits[t] < self.q {
                    let (i, j) = positions[t];
                    self.set(i, j, digits[t]);
                    break;
                }
                digits[t] = 0;
                let (i, j) = positions[t];
                self.set(i, j, 0);
                t += 1;
            }
        }
    }
}

/// Non-increasing diagonal value vectors; for GF(3) additionally at least as
/// many 1s as 2s (scalar quotient).
fn canonical_diagonals(q: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    fn rec(q: u8, n: usize, pos: usize, max: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if pos == n {
            out.push(cur.clone());
            return;
        }
        for v in (0..=max).rev() {
            cur[pos] = v;
            rec(q, n, pos + 1, v, cur, out);
        }
    }
    rec(q, n, 0, q - 1, &mut cur, &mut out);
    if q == 3 {
        out.retain(|d| {
            let ones = d.iter().filter(|&&v| v == 1).count();
            let twos = d.iter().filter(|&&v| v == 2).count();
            ones >= twos
        });
    }
    out
}

fn shard_of(q: u64, n: usize, entries: &[u8; 64], shards: usize) -> usize {
    // packed first row, diagonal entry included
    let mut key = 0u64;
    for j in (0..n).rev() {
        key = key * q + u64::from(entries[j]);
    }
    (key % shards as u64) as usize
}

fn full_space(q: u64, n: usize) -> u64 {
    let m = (n * (n + 1) / 2) as u32;
    q.pow(m)
}

/// Full enumeration of one shard.
fn scan_full_shard(scan: &mut Scan, shard: usize, shards: usize, acc: &mut Accum) {
    let n = scan.n;
    let q = scan.q;
    // outer: first row (n digits), inner: the rest of the upper triangle
    let first_row: Vec<(usize, usize)> = (0..n).map(|j| (0, j)).collect();
    let rest: Vec<(usize, usize)> = upper_positions(n).into_iter().filter(|&(i, _)| i > 0).collect();
    let mut digits = vec![0u8; n];
    loop {
        for (t, &(i, j)) in first_row.iter().enumerate() {
            scan.set(i, j, digits[t]);
        }
        if shard_of(u64::from(q), n, &scan.entries, shards) == shard {
            scan.scan_positions(&rest, acc);
        }
        let mut t = 0;
        loop {
            if t == n {
                return;
            }
            digits[t] += 1;
            if digits[t] < q {
                break;
            }
            digits[t] = 0;
            t += 1;
        }
    }
}

/// Pruned enumeration of one shard: canonical diagonals, first-row branches.
fn scan_pruned_shard(scan: &mut Scan, shard: usize, shards: usize, acc: &mut Accum) {
    let n = scan.n;
    let q = scan.q;
    let rest: Vec<(usize, usize)> = upper_positions(n)
        .into_iter()
        .filter(|&(i, j)| i > 0 && i != j)
        .collect();
    for diag in canonical_diagonals(q, n) {
        for (i, &v) in diag.iter().enumerate() {
            scan.set(i, i, v);
        }
        if n == 1 {
            if shard_of(u64::from(q), n, &scan.entries, shards) == shard {
                scan.emit(acc);
            }
            continue;
        }
        // branch A: first row off-diagonal all ones (congruence-normalized)
        for j in 1..n {
            scan.set(0, j, 1);
        }
        if shard_of(u64::from(q), n, &scan.entries, shards) == shard {
            scan.scan_positions(&rest, acc);
        }
        // branch B: first row off-diagonal contains at least one zero
        let mut row = vec![0u8; n - 1];
        loop {
            if row.contains(&0) {
                for (t, &v) in row.iter().enumerate() {
                    scan.set(0, t + 1, v);
                }
                if shard_of(u64::from(q), n, &scan.entries, shards) == shard {
                    scan.scan_positions(&rest, acc);
                }
            }
            let mut t = 0;
            loop {
                if t == n - 1 {
                    // restore diag loop
                    row = Vec::new();
                    break;
                }
                row[t] += 1;
                if row[t] < q {
                    break;
                }
                row[t] = 0;
                t += 1;
            }
            if row.is_empty() {
                break;
            }
        }
    }
}

fn capacity_check(q: u32, n: usize, big: bool) -> Result<()> {
    if q != 2 && q != 3 {
        return Err(Error::capacity(format!(
            "enumeration supports GF(2) and GF(3); GF({q}) is not supported"
        )));
    }
    if n == 0 {
        return Err(Error::usage("order must be at least 1"));
    }
    let cap = match (q, big) {
        (2, false) => 7,
        (2, true) => 8,
        (3, false) => 5,
        (3, true) => 7,
        _ => unreachable!(),
    };
    if n > cap {
        return Err(Error::capacity(format!(
            "GF({q}) enumeration is capped at n ≤ {cap}{}",
            if big { "" } else { " (use --big for more)" }
        )));
    }
    Ok(())
}

#[derive(serde::Serialize, serde::Deserialize)]
struct ShardRecord {
    shard: usize,
    visited: u64,
    /// (sequence code, min packed matrix code)
    attained: Vec<(u32, u64)>,
}

fn load_checkpoint(path: &PathBuf, shards: usize, n: usize) -> Result<BTreeMap<usize, Accum>> {
    let mut done = BTreeMap::new();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(_) => return Ok(done),
    };
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let rec: ShardRecord = serde_json::from_str(line)
            .map_err(|e| Error::usage(format!("corrupt checkpoint file: {e}")))?;
        if rec.shard >= shards {
            return Err(Error::usage(
                "checkpoint was written with a different shard count; delete it to restart",
            ));
        }
        let mut acc = Accum::new(n);
        acc.visited = rec.visited;
        for (seq, code) in rec.attained {
            acc.best[seq as usize] = code;
        }
        done.insert(rec.shard, acc);
    }
    Ok(done)
}

fn append_checkpoint(path: &PathBuf, shard: usize, acc: &Accum) -> Result<()> {
    let rec = ShardRecord {
        shard,
        visited: acc.visited,
        attained: acc
            .best
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != u64::MAX)
            .map(|(s, &c)| (s as u32, c))
            .collect(),
    };
    let mut f = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::usage(format!("cannot open checkpoint file: {e}")))?;
    writeln!(f, "{}", serde_json::to_string(&rec).expect("serializable"))
        .map_err(|e| Error::usage(format!("cannot write checkpoint: {e}")))?;
    Ok(())
}

/// attained = { epr(B) : B symmetric over GF(q), order n }.
pub fn attainable(q: u32, n: usize, opts: &EnumOptions) -> Result<AttainabilityReport> {
    capacity_check(q, n, opts.big)?;
    let spec = FieldSpec::by_order(q)?;
    let shards = opts.shards.max(1);
    let space = full_space(u64::from(q), n);
    let pruned_mode = match opts.mode {
        PruningMode::Full => false,
        PruningMode::Pruned => true,
        PruningMode::Auto => space > 1 << 22,
    };
    let tables = SubsetTables::new(n);
    let eval = if q == 2 { epr_gf2 as fn(usize, &[u8; 64], &SubsetTables) -> u32 } else { epr_gf3 };

    let mut completed = match &opts.checkpoint {
        Some(path) => load_checkpoint(path, shards, n)?,
        None => BTreeMap::new(),
    };

    let mut total = Accum::new(n);
    for shard in 0..shards {
        if let Some(acc) = completed.remove(&shard) {
            total.merge(&acc);
            continue;
        }
        let mut acc = Accum::new(n);
        let mut scan = Scan {
            q: q as u8,
            n,
            eval,
            tables: &tables,
            entries: [0u8; 64],
            progress: opts.progress,
        };
        if pruned_mode {
            scan_pruned_shard(&mut scan, shard, shards, &mut acc);
        } else {
            scan_full_shard(&mut scan, shard, shards, &mut acc);
        }
        if let Some(path) = &opts.checkpoint {
            append_checkpoint(path, shard, &acc)?;
        }
        total.merge(&acc);
    }

    let mut attained = BTreeMap::new();
    for (seq_code, &mat_code) in total.best.iter().enumerate() {
        if mat_code == u64::MAX {
            continue;
        }
        let seq = decode_seq(n, seq_code as u32);
        if opts.alphabet_an_only && seq.contains_letter(Letter::S) {
            continue;
        }
        let witness = matrix_from_code(&spec, n, mat_code);
        // witness re-verification via the reference implementation
        assert_eq!(
            epr::epr(&witness),
            seq,
            "witness re-verification failed; enumeration kernel bug"
        );
        attained.insert(seq, witness);
    }

    Ok(AttainabilityReport {
        q,
        n,
        attained,
        visited: total.visited,
        pruned: space.saturating_sub(total.visited),
        alphabet_an_only: opts.alphabet_an_only,
    })
}

/// Two-sided catalog verification: success = both diffs empty. The catalog's
/// own alphabet restriction is applied to the attained side.
pub fn verify_catalog(q: u32, n: usize, catalog: &Catalog, opts: &EnumOptions) -> Result<CatalogDiff> {
    let mut opts = opts.clone();
    if catalog.alphabet.is_some() {
        opts.alphabet_an_only = true;
    }
    let report = attainable(q, n, &opts)?;
    let catalog_set = catalog.enumerate(n)?;
    let missing = catalog_set
        .iter()
        .filter(|s| !report.attained.contains_key(*s))
        .cloned()
        .collect();
    let extra = report
        .attained
        .keys()
        .filter(|s| !catalog_set.contains(*s))
        .cloned()
        .collect();
    Ok(CatalogDiff {
        missing,
        extra,
        report,
    })
}

/// The witness with the smallest packed code whose epr matches `pattern`, or
/// None. Deterministic for any shard count.
pub fn find_witness(q: u32, n: usize, pattern: &FormPattern, opts: &EnumOptions) -> Result<Option<SymMatrix>> {
    let report = attainable(q, n, opts)?;
    let mut best: Option<(u64, &SymMatrix)> = None;
    for (seq, witness) in &report.attained {
        if !pattern.matches(seq) {
            continue;
        }
        let code = {
            let mut e = [0u8; 64];
            for i in 0..n {
                for j in 0..n {
                    e[i * MAX_N + j] = witness.get(i, j) as u8;
                }
            }
            packed_code(u64::from(q), n, &e)
        };
        if best.is_none() || code < best.unwrap().0 {
            best = Some((code, witness));
        }
    }
    Ok(best.map(|(_, w)| w.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    #[test]
    fn gf2_n2_attained() {
        let r = attainable(2, 2, &opts()).unwrap();
        let got: Vec<String> = r.sequences().map(|s| s.to_string()).collect();
        // letter order A < S < N
        assert_eq!(got, vec!["AA", "AN", "SA", "SN", "NA", "NN"]);
        assert_eq!(r.visited, 8);
        // exactly the length-2 expansion of the F2 catalog
        let cat: Vec<String> = Catalog::f2()
            .enumerate(2)
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(got, cat);
    }

    #[test]
    fn gf3_n3_an_restricted() {
        let mut o = opts();
        o.alphabet_an_only = true;
        let r = attainable(3, 3, &o).unwrap();
        let got: Vec<String> = r.sequences().map(|s| s.to_string()).collect();
        assert_eq!(got, vec!["AAA", "AAN", "ANA", "ANN", "NAA", "NNN"]);
    }

    #[test]
    fn gf3_n3_contains_naa() {
        let r = attainable(3, 3, &opts()).unwrap();
        let seq: EprSequence = "NAA".parse().unwrap();
        assert!(r.attained.contains_key(&seq));
    }

    #[test]
    fn pruned_matches_full_small() {
        for (q, max_n) in [(2u32, 4usize), (3, 3)] {
            for n in 1..=max_n {
                let mut full = opts();
                full.mode = PruningMode::Full;
                let mut pruned = opts();
                pruned.mode = PruningMode::Pruned;
                let a = attainable(q, n, &full).unwrap();
                let b = attainable(q, n, &pruned).unwrap();
                let sa: Vec<_> = a.sequences().cloned().collect();
                let sb: Vec<_> = b.sequences().cloned().collect();
                assert_eq!(sa, sb, "q={q} n={n}");
                assert!(b.visited <= a.visited);
            }
        }
    }

    #[test]
    fn shard_counts_do_not_change_results() {
        for shards in [1usize, 2, 3, 5] {
            let mut o = opts();
            o.shards = shards;
            let r = attainable(3, 3, &o).unwrap();
            let base = attainable(3, 3, &opts()).unwrap();
            assert_eq!(
                r.attained, base.attained,
                "witnesses must be shard-count independent"
            );
            assert_eq!(r.visited, base.visited);
        }
    }

    #[test]
    fn find_witness_examples() {
        let p = FormPattern::parse("AANN").unwrap();
        let w = find_witness(3, 4, &p, &opts()).unwrap().unwrap();
        assert_eq!(epr::epr(&w).to_string(), "AANN");

        let p = FormPattern::parse("ANAN").unwrap();
        assert!(find_witness(3, 4, &p, &opts()).unwrap().is_none());

        let p = FormPattern::parse("NAN").unwrap();
        let w = find_witness(2, 3, &p, &opts()).unwrap().unwrap();
        assert_eq!(epr::epr(&w).to_string(), "NAN");
    }

    #[test]
    fn wrong_field_catalog_fails() {
        let diff = verify_catalog(3, 4, &Catalog::f2(), &opts()).unwrap();
        assert!(!diff.is_empty());
    }

    #[test]
    fn f2_catalog_verifies_at_n4() {
        let diff = verify_catalog(2, 4, &Catalog::f2(), &opts()).unwrap();
        assert!(diff.is_empty(), "missing {:?} extra {:?}", diff.missing, diff.extra);
    }

    #[test]
    fn f3_catalog_verifies_at_n4() {
        let diff = verify_catalog(3, 4, &Catalog::f3(), &opts()).unwrap();
        assert!(diff.is_empty(), "missing {:?} extra {:?}", diff.missing, diff.extra);
    }

    #[test]
    fn capacity_errors() {
        assert!(attainable(5, 3, &opts()).is_err());
        let err = attainable(3, 6, &opts()).unwrap_err().to_string();
        assert!(err.contains("n ≤ 5"), "{err}");
        assert!(attainable(2, 8, &opts()).is_err());
    }

    #[test]
    fn checkpoint_resume() {
        let dir = std::env::temp_dir().join(format!("eprseq-ckpt-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("state.jsonl");
        let _ = std::fs::remove_file(&path);
        let mut o = opts();
        o.shards = 3;
        o.checkpoint = Some(path.clone());
        let first = attainable(3, 3, &o).unwrap();
        // second run consumes the checkpoint without rescanning
        let second = attainable(3, 3, &o).unwrap();
        assert_eq!(first.attained, second.attained);
        assert_eq!(first.visited, second.visited);
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn fast_kernels_match_reference_exhaustively() {
        // every symmetric matrix, GF(2) n ≤ 3 and GF(3) n ≤ 3
        for q in [2u32, 3] {
            let spec = FieldSpec::by_order(q).unwrap();
            for n in 1..=3usize {
                let tables = SubsetTables::new(n);
                let m = n * (n + 1) / 2;
                for code in 0..u64::from(q).pow(m as u32) {
                    let mat = matrix_from_code(&spec, n, code);
                    let mut e = [0u8; 64];
                    for i in 0..n {
                        for j in 0..n {
                            e[i * MAX_N + j] = mat.get(i, j) as u8;
                        }
                    }
                    let fast = if q == 2 {
                        epr_gf2(n, &e, &tables)
                    } else {
                        epr_gf3(n, &e, &tables)
                    };
                    assert_eq!(decode_seq(n, fast), epr::epr(&mat), "q={q} code={code}");
                }
            }
        }
    }
}
