//! Named matrix builders with closed-form epr predictions, used as golden
//! fixtures throughout the crate.

use crate::epr::{EprSequence, Letter};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::SymMatrix;
use std::sync::Arc;

/// J_n − kI_n for nonzero k. Every order-i principal submatrix is J_i − kI_i,
/// so all order-i principal minors are equal and the epr-sequence has no S;
/// each minor equals (−k)^(i−1)(i − k).
pub fn build_j_minus_k_i(spec: &Arc<FieldSpec>, n: usize, k: u32) -> Result<SymMatrix> {
    if k == 0 || k >= spec.q() {
        return Err(Error::usage(format!(
            "k must be a nonzero element of GF({}), got {k}",
            spec.name()
        )));
    }
    let diag = spec.sub(1, k);
    let mut entries = vec![1u32; n * n];
    for i in 0..n {
        entries[i * n + i] = diag;
    }
    SymMatrix::new(Arc::clone(spec), n, entries)
}

/// Predicted epr of J_n − kI_n over a field of characteristic p:
/// ℓ_i ∈ {A, N}, with ℓ_i = N exactly when i ≡ k (mod p), since the common
/// order-i minor (−k)^(i−1)(i − k) vanishes exactly there.
pub fn predicted_epr_j_minus_k_i(p: u32, n: usize, k: u32) -> EprSequence {
    let letters = (1..=n as u32)
        .map(|i| if i % p == k % p { Letter::N } else { Letter::A })
        .collect();
    EprSequence::new(letters)
}

pub fn build_all_ones(spec: &Arc<FieldSpec>, n: usize) -> SymMatrix {
    SymMatrix::new(Arc::clone(spec), n, vec![1u32; n * n]).expect("J_n is symmetric")
}

/// Adjacency matrix of the graph with the given 1-based edge list, with a
/// fixed value on every edge.
pub fn adjacency(spec: &Arc<FieldSpec>, n: usize, edges: &[(usize, usize)], value: u32) -> Result<SymMatrix> {
    let mut entries = vec![0u32; n * n];
    for &(u, v) in edges {
        if u == 0 || v == 0 || u > n || v > n || u == v {
            return Err(Error::usage(format!("bad edge ({u}, {v}) for order {n}")));
        }
        entries[(u - 1) * n + v - 1] = value;
        entries[(v - 1) * n + u - 1] = value;
    }
    SymMatrix::new(Arc::clone(spec), n, entries)
}

pub const C5_EDGES: [(usize, usize); 5] = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)];
pub const C5_COMPLEMENT_EDGES: [(usize, usize); 5] = [(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)];

/// A(C₅) + 2A(C₅-complement) over GF(3): zero diagonal, every off-diagonal
/// entry in {1, 2}.
pub fn build_c5_composite() -> SymMatrix {
    let f3 = FieldSpec::prime(3).expect("3 is prime");
    let a = adjacency(&f3, 5, &C5_EDGES, 1).unwrap();
    let b = adjacency(&f3, 5, &C5_COMPLEMENT_EDGES, 2).unwrap();
    let entries: Vec<u32> = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(&x, &y)| f3.add(x, y))
        .collect();
    SymMatrix::new(f3, 5, entries).unwrap()
}

/// The three matrices printed with their epr-sequences as their names,
/// embedded entry for entry over GF(3).
pub struct ExamplesF3 {
    pub m_aana: SymMatrix,
    pub m_aann: SymMatrix,
    pub m_naaana: SymMatrix,
}

pub fn build_examples_f3() -> Result<ExamplesF3> {
    let f3 = FieldSpec::prime(3)?;
    let m_aana = SymMatrix::new(
        Arc::clone(&f3),
        4,
        vec![
            1, 0, 1, 1, //
            0, 1, 1, 1, //
            1, 1, 2, 0, //
            1, 1, 0, 2,
        ],
    )?;
    let m_aann = SymMatrix::new(
        Arc::clone(&f3),
        4,
        vec![
            1, 0, 1, 1, //
            0, 1, 1, 2, //
            1, 1, 2, 0, //
            1, 2, 0, 2,
        ],
    )?;
    let m_naaana = SymMatrix::new(
        Arc::clone(&f3),
        6,
        vec![
            0, 1, 1, 1, 1, 1, //
            1, 0, 1, 2, 2, 1, //
            1, 1, 0, 1, 2, 2, //
            1, 2, 1, 0, 1, 2, //
            1, 2, 2, 1, 0, 1, //
            1, 1, 2, 2, 1, 0,
        ],
    )?;
    Ok(ExamplesF3 {
        m_aana,
        m_aann,
        m_naaana,
    })
}

/// Basic fixtures: identity (epr A^n), zero (N^n), all-ones (ANN…N over any
/// field, n ≥ 2).
pub enum Basic {
    Identity,
    Zero,
    AllOnes,
}

pub fn build_basic(spec: &Arc<FieldSpec>, n: usize, which: Basic) -> SymMatrix {
    match which {
        Basic::Identity => SymMatrix::identity(Arc::clone(spec), n),
        Basic::Zero => SymMatrix::zero(Arc::clone(spec), n),
        Basic::AllOnes => build_all_ones(spec, n),
    }
}

/// Build a construction by CLI name. `k` is only consulted by `j-minus-ki`.
pub fn build_named(name: &str, spec: &Arc<FieldSpec>, n: usize, k: Option<u32>) -> Result<SymMatrix> {
    match name {
        "identity" => Ok(build_basic(spec, n, Basic::Identity)),
        "zero" => Ok(build_basic(spec, n, Basic::Zero)),
        "all-ones" => Ok(build_basic(spec, n, Basic::AllOnes)),
        "j-minus-ki" => {
            let k = k.ok_or_else(|| Error::usage("j-minus-ki needs --k"))?;
            build_j_minus_k_i(spec, n, k)
        }
        "c5-composite" => Ok(build_c5_composite()),
        "m-aana" => Ok(build_examples_f3()?.m_aana),
        "m-aann" => Ok(build_examples_f3()?.m_aann),
        "m-naaana" => Ok(build_examples_f3()?.m_naaana),
        _ => Err(Error::usage(format!(
            "unknown construction '{name}' (known: identity, zero, all-ones, j-minus-ki, c5-composite, m-aana, m-aann, m-naaana)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epr::epr;

    #[test]
    fn j_minus_ki_predictions() {
        let f3 = FieldSpec::prime(3).unwrap();
        let f2 = FieldSpec::prime(2).unwrap();
        // n ≡ 1 (mod 3): epr(J₇−I₇) = NAANAAN
        let b = build_j_minus_k_i(&f3, 7, 1).unwrap();
        assert_eq!(epr(&b).to_string(), "NAANAAN");
        assert_eq!(predicted_epr_j_minus_k_i(3, 7, 1).to_string(), "NAANAAN");
        // epr(J₅−2I₅) = ANAAN
        let b = build_j_minus_k_i(&f3, 5, 2).unwrap();
        assert_eq!(epr(&b).to_string(), "ANAAN");
        // char 2: alternating
        let b = build_j_minus_k_i(&f2, 4, 1).unwrap();
        assert_eq!(epr(&b).to_string(), "NANA");
        assert!(build_j_minus_k_i(&f3, 4, 0).is_err());
    }

    #[test]
    fn predictions_match_epr_for_all_small_cases() {
        for q in [2u32, 3, 5] {
            let f = FieldSpec::by_order(q).unwrap();
            for n in 1..=8usize {
                for k in 1..q {
                    let b = build_j_minus_k_i(&f, n, k).unwrap();
                    assert_eq!(
                        epr(&b),
                        predicted_epr_j_minus_k_i(f.p(), n, k),
                        "q={q} n={n} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn no_s_in_j_minus_ki() {
        // all order-i principal minors of J−kI are equal; spot-check n ≤ 6
        let f5 = FieldSpec::prime(5).unwrap();
        for k in 1..5 {
            let b = build_j_minus_k_i(&f5, 6, k).unwrap();
            let e = epr(&b);
            assert!(!e.contains_letter(crate::epr::Letter::S), "k={k}: {e}");
        }
    }

    #[test]
    fn basics() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(epr(&build_basic(&f3, 5, Basic::Identity)).to_string(), "AAAAA");
        assert_eq!(epr(&build_basic(&f3, 5, Basic::Zero)).to_string(), "NNNNN");
        assert_eq!(epr(&build_basic(&f3, 5, Basic::AllOnes)).to_string(), "ANNNN");
    }

    #[test]
    fn paper_fixture_eprs() {
        let ex = build_examples_f3().unwrap();
        assert_eq!(epr(&ex.m_aana).to_string(), "AANA");
        assert_eq!(epr(&ex.m_aann).to_string(), "AANN");
        assert_eq!(epr(&ex.m_naaana).to_string(), "NAAANA");
    }

    #[test]
    fn c5_composite_shape() {
        let m = build_c5_composite();
        for i in 0..5 {
            assert_eq!(m.get(i, i), 0);
            for j in 0..5 {
                if i != j {
                    assert!(m.get(i, j) == 1 || m.get(i, j) == 2);
                }
            }
        }
    }

    #[test]
    fn bordered_c5_composite_is_m_naaana_up_to_permutation() {
        let c = build_c5_composite();
        let f3 = FieldSpec::prime(3).unwrap();
        let mut entries = vec![0u32; 36];
        for j in 1..6 {
            entries[j] = 1;
            entries[j * 6] = 1;
        }
        for i in 0..5 {
            for j in 0..5 {
                entries[(i + 1) * 6 + j + 1] = c.get(i, j);
            }
        }
        let bordered = SymMatrix::new(f3, 6, entries).unwrap();
        let target = build_examples_f3().unwrap().m_naaana;
        // brute force over all 6! permutations
        let mut perm = [1usize, 2, 3, 4, 5, 6];
        let found = permutations(&mut perm, 0, &mut |p| bordered.permute(p).unwrap() == target);
        assert!(found);
    }

    fn permutations(arr: &mut [usize; 6], k: usize, check: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if k == arr.len() {
            return check(arr);
        }
        for i in k..arr.len() {
            arr.swap(k, i);
            if permutations(arr, k + 1, check) {
                arr.swap(k, i);
                return true;
            }
            arr.swap(k, i);
        }
        false
    }
}
