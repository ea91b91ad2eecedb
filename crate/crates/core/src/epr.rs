//! pr- and epr-sequences.
//!
//! `epr(B) = ℓ₁ℓ₂⋯ℓ_n` with ℓ_j = A/S/N according to whether all, some but
//! not all, or none of the order-j principal minors of B are nonzero.
//! `pr(B) = r₀r₁⋯r_n` with r_k recording the existence of a nonzero order-k
//! principal minor, and r₀ = 1 if and only if B has a 0 diagonal entry (the
//! convention implemented here verbatim; conventions differ across the
//! literature).
//!
//! Two optimizations are used by default, both justified by the principal
//! rank property: orders above rank(B) are N without enumerating minors, and
//! within an order the scan stops once both a zero and a nonzero minor have
//! been seen. [`epr_census`] disables both for oracle cross-checks.

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    S,
    N,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::S => 'S',
            Letter::N => 'N',
        }
    }

    pub fn from_char(c: char) -> Result<Letter> {
        match c {
            'A' => Ok(Letter::A),
            'S' => Ok(Letter::S),
            'N' => Ok(Letter::N),
            _ => Err(Error::usage(format!("invalid epr letter '{c}' (alphabet is A, S, N)"))),
        }
    }
}

/// A letter string over {A, S, N}; the length equals the matrix order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EprSequence(Vec<Letter>);

impl EprSequence {
    pub fn new(letters: Vec<Letter>) -> EprSequence {
        EprSequence(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// 1-based letter access: ℓ_j.
    pub fn letter(&self, j: usize) -> Letter {
        self.0[j - 1]
    }

    pub fn starts_with(&self, prefix: &[Letter]) -> bool {
        self.0.len() >= prefix.len() && self.0[..prefix.len()] == *prefix
    }

    pub fn contains_letter(&self, l: Letter) -> bool {
        self.0.contains(&l)
    }
}

impl fmt::Display for EprSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for EprSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<EprSequence> {
        s.chars().map(Letter::from_char).collect::<Result<Vec<_>>>().map(EprSequence)
    }
}

/// The bit string r₀r₁⋯r_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrSequence(Vec<bool>);

impl PrSequence {
    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// r_k, 0-based (r₀ is the diagonal-zero flag).
    pub fn bit(&self, k: usize) -> bool {
        self.0[k]
    }
}

impl fmt::Display for PrSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

/// Visit the order-j index subsets of [n] as bitmasks, in lexicographic order
/// of the sorted index vectors. The callback returns false to stop early.
pub(crate) fn for_each_subset(n: usize, j: usize, mut visit: impl FnMut(u64) -> bool) {
    debug_assert!(j >= 1 && j <= n);
    let mut idx: Vec<usize> = (0..j).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        if !visit(mask) {
            return;
        }
        // advance to the next combination in lex order
        let mut i = j;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - (j - i) {
                idx[i] += 1;
                for t in i + 1..j {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

fn letter_at_order(b: &SymMatrix, j: usize, census: bool) -> Letter {
    let mut seen_zero = false;
    let mut seen_nonzero = false;
    for_each_subset(b.order(), j, |mask| {
        if b.minor(mask) == 0 {
            seen_zero = true;
        } else {
            seen_nonzero = true;
        }
        census || !(seen_zero && seen_nonzero)
    });
    match (seen_nonzero, seen_zero) {
        (true, false) => Letter::A,
        (true, true) => Letter::S,
        (false, _) => Letter::N,
    }
}

/// The epr-sequence of B.
pub fn epr(b: &SymMatrix) -> EprSequence {
    epr_impl(b, b.order(), false)
}

/// Full-census epr: scans every principal minor of every order, with no
/// rank skip and no short-circuit on S. Oracle for [`epr`].
pub fn epr_census(b: &SymMatrix) -> EprSequence {
    epr_impl(b, b.order(), true)
}

/// The first m letters of epr(B).
pub fn epr_prefix(b: &SymMatrix, m: usize) -> Result<EprSequence> {
    if m < 1 || m > b.order() {
        return Err(Error::usage(format!(
            "prefix length {m} out of range [1, {}]",
            b.order()
        )));
    }
    Ok(epr_impl(b, m, false))
}

fn epr_impl(b: &SymMatrix, up_to: usize, census: bool) -> EprSequence {
    let rank = if census { b.order() } else { b.rank() };
    let mut letters = Vec::with_capacity(up_to);
    for j in 1..=up_to {
        if j > rank {
            letters.push(Letter::N);
        } else {
            letters.push(letter_at_order(b, j, census));
        }
    }
    EprSequence(letters)
}

/// The pr-sequence of B: r₀ per the diagonal-zero rule, r_k = 1 iff some
/// order-k principal minor is nonzero (so r_k = 0 ⇔ ℓ_k = N for k ≥ 1).
pub fn pr(b: &SymMatrix) -> PrSequence {
    let n = b.order();
    let r0 = (0..n).any(|i| b.get(i, i) == 0);
    let e = epr(b);
    let mut bits = Vec::with_capacity(n + 1);
    bits.push(r0);
    for j in 1..=n {
        bits.push(e.letter(j) != Letter::N);
    }
    PrSequence(bits)
}
