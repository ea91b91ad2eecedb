//! Executable forms of the structural theorems: forbidden-pattern scanners,
//! Ramsey-threshold constraint derivation, monochromatic principal submatrix
//! search, and the order-5 triangle-free census.

use crate::enumerate::{self, EnumOptions};
use crate::epr::{EprSequence, Letter};
use crate::error::{Error, Result};
use crate::matrix::{IndexSet, SymMatrix};
use std::collections::BTreeMap;

/// Known small Ramsey values and upper bounds. R(colors = m, clique = a) is
/// the least n such that every m-coloring of K_n's edges contains a
/// monochromatic K_a.
#[derive(Debug, Clone, Copy)]
pub struct RamseyBound {
    pub colors: u32,
    pub clique: u32,
    pub n: u32,
    pub exact: bool,
}

#[derive(Debug, Clone)]
pub struct RamseyTable {
    entries: Vec<RamseyBound>,
}

impl RamseyTable {
    pub fn standard() -> RamseyTable {
        RamseyTable {
            entries: vec![
                RamseyBound { colors: 2, clique: 3, n: 6, exact: true },
                RamseyBound { colors: 2, clique: 4, n: 18, exact: true },
                RamseyBound { colors: 2, clique: 5, n: 48, exact: false },
                RamseyBound { colors: 3, clique: 4, n: 230, exact: false },
                RamseyBound { colors: 4, clique: 3, n: 64, exact: false },
            ],
        }
    }

    pub fn threshold(&self, colors: u32, clique: u32) -> Option<RamseyBound> {
        self.entries
            .iter()
            .copied()
            .find(|e| e.colors == colors && e.clique == clique)
    }

    pub fn entries(&self) -> &[RamseyBound] {
        &self.entries
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionConstraint {
    /// 1-based position in the epr-sequence
    pub position: usize,
    /// allowed letters, sorted, nonempty
    pub allowed: Vec<Letter>,
    /// theorem and threshold the constraint came from
    pub provenance: String,
    /// false when any contributing table entry is only an upper bound
    pub from_exact_bound: bool,
}

impl PositionConstraint {
    pub fn permits(&self, l: Letter) -> bool {
        self.allowed.contains(&l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prefix {
    N,
    NA,
    AN,
}

impl Prefix {
    pub fn parse(s: &str) -> Result<Prefix> {
        match s {
            "N" => Ok(Prefix::N),
            "NA" => Ok(Prefix::NA),
            "AN" => Ok(Prefix::AN),
            _ => Err(Error::usage(format!(
                "unknown prefix '{s}' (known: N, NA, AN)"
            ))),
        }
    }

    pub fn letters(self) -> &'static [Letter] {
        match self {
            Prefix::N => &[Letter::N],
            Prefix::NA => &[Letter::N, Letter::A],
            Prefix::AN => &[Letter::A, Letter::N],
        }
    }
}

impl std::fmt::Display for Prefix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Prefix::N => "N",
            Prefix::NA => "NA",
            Prefix::AN => "AN",
        };
        write!(f, "{s}")
    }
}

// ---- forbidden-pattern scanner ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    /// 1-based position where the violation is witnessed
    pub position: usize,
    pub message: String,
}

/// Scans a sequence against the rules that hold over every field of
/// characteristic `p`: the NN rule (any field), the NAN/NAS rule (char ≠ 2),
/// and the odd-position rule for N-prefixed sequences in characteristic 2.
pub fn forbidden_scan(s: &EprSequence, p: u32) -> Vec<Violation> {
    let mut out = Vec::new();
    let ls = s.letters();
    let n = ls.len();

    if let Some(k) = (0..n.saturating_sub(1)).find(|&k| ls[k] == Letter::N && ls[k + 1] == Letter::N)
    {
        for (j, &l) in ls.iter().enumerate().skip(k) {
            if l != Letter::N {
                out.push(Violation {
                    rule: "NN",
                    position: j + 1,
                    message: format!(
                        "NN at positions {}-{} forces N from position {} on, but position {} is {}",
                        k + 1,
                        k + 2,
                        k + 1,
                        j + 1,
                        l.as_char()
                    ),
                });
            }
        }
    }

    if p != 2 {
        for k in 0..n.saturating_sub(2) {
            if ls[k] == Letter::N
                && ls[k + 1] == Letter::A
                && (ls[k + 2] == Letter::N || ls[k + 2] == Letter::S)
            {
                out.push(Violation {
                    rule: "NAN/NAS",
                    position: k + 1,
                    message: format!(
                        "NA{} at positions {}-{} cannot occur in characteristic {p}",
                        ls[k + 2].as_char(),
                        k + 1,
                        k + 3
                    ),
                });
            }
        }
    }

    if p == 2 && n > 0 && ls[0] == Letter::N {
        for j in (3..=n).step_by(2) {
            if ls[j - 1] != Letter::N {
                out.push(Violation {
                    rule: "char-2 odd positions",
                    position: j,
                    message: format!(
                        "N-prefixed sequence in characteristic 2 forces N at every odd position, but position {j} is {}",
                        ls[j - 1].as_char()
                    ),
                });
            }
        }
    }

    out
}

// ---- Ramsey-threshold constraint derivation ----

struct Derivation {
    /// least n at which the constraints apply
    threshold: u32,
    from_exact_bound: bool,
    provenance: String,
    /// (position, allowed)
    constraints: Vec<(usize, Vec<Letter>)>,
}

fn char_of(q: u32) -> Result<u32> {
    if q < 2 {
        return Err(Error::usage(format!("q = {q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    let p = if q % p == 0 { p } else { q };
    let mut m = q;
    while m % p == 0 {
        m /= p;
    }
    if m != 1 {
        return Err(Error::usage(format!("q = {q} is not a prime power")));
    }
    Ok(p)
}

fn derivations(prefix: Prefix, q: u32, table: &RamseyTable) -> Result<Vec<Derivation>> {
    let p = char_of(q)?;
    let mut out = Vec::new();
    match prefix {
        Prefix::N => {
            if p == 2 {
                // exact theorem, no Ramsey threshold: every odd position is N
                out.push(Derivation {
                    threshold: 3,
                    from_exact_bound: true,
                    provenance: "characteristic-2 theorem for N-prefixed sequences".into(),
                    constraints: (3..=64)
                        .step_by(2)
                        .map(|j| (j, vec![Letter::N]))
                        .collect(),
                });
            }
            for e in table.entries() {
                if e.colors != q || (e.clique - 1) % p != 0 {
                    continue;
                }
                let k = (e.clique - 1) / p;
                if k == 0 {
                    continue;
                }
                out.push(Derivation {
                    threshold: e.n,
                    from_exact_bound: e.exact,
                    provenance: format!(
                        "N-prefix Ramsey theorem with k = {k} via R_{}({}) {} {}",
                        e.colors,
                        e.clique,
                        if e.exact { "=" } else { "≤" },
                        e.n
                    ),
                    constraints: (1..=k as usize)
                        .map(|i| (i * p as usize + 1, vec![Letter::N, Letter::S]))
                        .collect(),
                });
            }
        }
        Prefix::NA => {
            let l3 = if p == 2 { Letter::N } else { Letter::A };
            out.push(Derivation {
                threshold: 3,
                from_exact_bound: true,
                provenance: format!(
                    "third-term observation for NA-prefixed sequences (characteristic {p})"
                ),
                constraints: vec![(3, vec![l3])],
            });
            for e in table.entries() {
                if e.colors != q - 1 {
                    continue;
                }
                let k = e.clique as usize;
                // positions 1-3 are covered by the prefix and the observation
                let constraints: Vec<(usize, Vec<Letter>)> = (4..=k + 1)
                    .map(|i| {
                        let allowed = if i % p as usize == 1 {
                            vec![Letter::N, Letter::S]
                        } else {
                            vec![Letter::A, Letter::S]
                        };
                        (i, allowed)
                    })
                    .collect();
                if constraints.is_empty() {
                    continue;
                }
                out.push(Derivation {
                    threshold: e.n + 1,
                    from_exact_bound: e.exact,
                    provenance: format!(
                        "NA-prefix Ramsey theorem with k = {k} via R_{}({}) {} {}",
                        e.colors,
                        e.clique,
                        if e.exact { "=" } else { "≤" },
                        e.n
                    ),
                    constraints,
                });
            }
        }
        Prefix::AN => {
            if q != 3 {
                return Err(Error::usage(format!(
                    "the AN-prefix theorem is stated for GF(3) only, not GF({q})"
                )));
            }
            for e in table.entries() {
                if e.colors != 2 || (e.clique - 1) % 3 != 0 {
                    continue;
                }
                let k = ((e.clique - 1) / 3) as usize;
                if k == 0 {
                    continue;
                }
                out.push(Derivation {
                    threshold: e.n + 1,
                    from_exact_bound: e.exact,
                    provenance: format!(
                        "AN-prefix Ramsey theorem with k = {k} via R({}, {}) {} {}",
                        e.clique,
                        e.clique,
                        if e.exact { "=" } else { "≤" },
                        e.n
                    ),
                    constraints: (1..=k).map(|i| (3 * i + 2, vec![Letter::N, Letter::S])).collect(),
                });
            }
        }
    }
    out.sort_by_key(|d| d.threshold);
    Ok(out)
}

/// Every position constraint derivable from the Ramsey table (and the exact
/// small theorems) for a sequence with the given prefix at order n.
/// Constraints at the same position are intersected.
pub fn ramsey_constraints(prefix: Prefix, q: u32, n: usize) -> Result<Vec<PositionConstraint>> {
    let table = RamseyTable::standard();
    let mut by_pos: BTreeMap<usize, PositionConstraint> = BTreeMap::new();
    for d in derivations(prefix, q, &table)? {
        if (n as u32) < d.threshold {
            continue;
        }
        for (pos, allowed) in d.constraints {
            if pos > n {
                continue;
            }
            match by_pos.get_mut(&pos) {
                None => {
                    by_pos.insert(
                        pos,
                        PositionConstraint {
                            position: pos,
                            allowed,
                            provenance: d.provenance.clone(),
                            from_exact_bound: d.from_exact_bound,
                        },
                    );
                }
                Some(existing) => {
                    let merged: Vec<Letter> = existing
                        .allowed
                        .iter()
                        .copied()
                        .filter(|l| allowed.contains(l))
                        .collect();
                    if merged.is_empty() || merged == existing.allowed {
                        continue;
                    }
                    existing.allowed = merged;
                    existing.provenance = format!("{}; {}", existing.provenance, d.provenance);
                    existing.from_exact_bound &= d.from_exact_bound;
                }
            }
        }
    }
    Ok(by_pos.into_values().collect())
}

/// Human-readable notes for derivations whose threshold exceeds n.
pub fn out_of_reach(prefix: Prefix, q: u32, n: usize) -> Result<Vec<String>> {
    let table = RamseyTable::standard();
    Ok(derivations(prefix, q, &table)?
        .into_iter()
        .filter(|d| (n as u32) < d.threshold)
        .map(|d| format!("not testable at n = {n}: {} needs n ≥ {}", d.provenance, d.threshold))
        .collect())
}

// ---- monochromatic principal submatrix ----

/// A size-k index set α with all off-diagonal entries of B[α] equal to one
/// value of T, or None. Precondition: every off-diagonal entry of B lies in T.
pub fn monochromatic_principal_submatrix(
    b: &SymMatrix,
    t: &[u32],
    k: usize,
) -> Result<Option<IndexSet>> {
    let n = b.order();
    for i in 0..n {
        for j in 0..n {
            if i != j && !t.contains(&b.get(i, j)) {
                return Err(Error::usage(format!(
                    "off-diagonal entry b[{},{}] = {} is outside T",
                    i + 1,
                    j + 1,
                    b.get(i, j)
                )));
            }
        }
    }
    if k <= 1 {
        return Ok(if k == 1 && n >= 1 {
            Some(IndexSet::new(vec![1])?)
        } else {
            None
        });
    }
    let mut colors: Vec<u32> = t.to_vec();
    colors.sort_unstable();
    colors.dedup();
    for c in colors {
        let mut current = Vec::new();
        if let Some(clique) = clique_search(b, c, k, 0, &mut current) {
            return Ok(Some(IndexSet::new(clique.iter().map(|&v| v + 1).collect())?));
        }
    }
    Ok(None)
}

fn clique_search(b: &SymMatrix, c: u32, k: usize, start: usize, current: &mut Vec<usize>) -> Option<Vec<usize>> {
    if current.len() == k {
        return Some(current.clone());
    }
    let n = b.order();
    // not enough vertices left to finish
    if n - start < k - current.len() {
        return None;
    }
    for v in start..n {
        if current.iter().all(|&u| b.get(u, v) == c) {
            current.push(v);
            if let Some(found) = clique_search(b, c, k, v + 1, current) {
                return Some(found);
            }
            current.pop();
        }
    }
    None
}

// ---- triangle-free order-5 census ----

#[derive(Debug)]
pub struct TriangleFreeCensus {
    /// each graph as a 10-bit edge mask over the edges of K₅
    pub graphs: Vec<u16>,
    pub count: usize,
}

pub const K5_EDGES: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

fn adjacency_of_mask(mask: u16) -> [[bool; 5]; 5] {
    let mut adj = [[false; 5]; 5];
    for (e, &(u, v)) in K5_EDGES.iter().enumerate() {
        if mask >> e & 1 == 1 {
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }
    adj
}

fn has_triangle(adj: &[[bool; 5]; 5]) -> bool {
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                if adj[a][b] && adj[b][c] && adj[a][c] {
                    return true;
                }
            }
        }
    }
    false
}

fn is_c5(adj: &[[bool; 5]; 5]) -> bool {
    // brute force over all vertex orderings: some cyclic order realizes C₅
    let mut perm = [0usize, 1, 2, 3, 4];
    permutations5(&mut perm, 0, &mut |p| {
        (0..5).all(|i| adj[p[i]][p[(i + 1) % 5]])
            && (0..5).all(|i| (0..5).all(|j| {
                let d = (5 + i) - j;
                adj[p[i]][p[j]] == (i != j && (d % 5 == 1 || d % 5 == 4))
            }))
    })
}

fn permutations5(arr: &mut [usize; 5], k: usize, check: &mut impl FnMut(&[usize; 5]) -> bool) -> bool {
    if k == 5 {
        return check(arr);
    }
    for i in k..5 {
        arr.swap(k, i);
        if permutations5(arr, k + 1, check) {
            arr.swap(k, i);
            return true;
        }
        arr.swap(k, i);
    }
    false
}

/// All labeled graphs G on 5 vertices with G and its complement triangle-free.
/// Asserts every one is isomorphic to C₅.
pub fn triangle_free_order5_census() -> TriangleFreeCensus {
    let mut graphs = Vec::new();
    for mask in 0u16..1 << 10 {
        let adj = adjacency_of_mask(mask);
        let co = adjacency_of_mask(!mask & 0x3ff);
        if !has_triangle(&adj) && !has_triangle(&co) {
            // independent structure checks before the isomorphism test
            let degs: Vec<usize> = (0..5).map(|v| (0..5).filter(|&u| adj[v][u]).count()).collect();
            assert!(degs.iter().all(|&d| d == 2), "census member not 2-regular");
            assert_eq!(mask.count_ones(), 5, "census member not 5 edges");
            assert!(is_c5(&adj), "census member not isomorphic to C5");
            graphs.push(mask);
        }
    }
    let count = graphs.len();
    TriangleFreeCensus { graphs, count }
}

// ---- empirical audit against the enumerator ----

#[derive(Debug)]
pub struct AuditReport {
    pub prefix: Prefix,
    pub q: u32,
    pub n: usize,
    pub constraints: Vec<PositionConstraint>,
    pub sequences_checked: usize,
    /// (sequence, violated position)
    pub violations: Vec<(EprSequence, usize)>,
    pub not_testable: Vec<String>,
}

/// Checks every attained sequence with the given prefix against every
/// applicable position constraint. Expected: no violations.
pub fn empirical_constraint_audit(q: u32, n: usize, prefix: Prefix, opts: &EnumOptions) -> Result<AuditReport> {
    let constraints = ramsey_constraints(prefix, q, n)?;
    let not_testable = out_of_reach(prefix, q, n)?;
    let report = enumerate::attainable(q, n, opts)?;
    let mut violations = Vec::new();
    let mut sequences_checked = 0;
    for seq in report.sequences() {
        if !seq.starts_with(prefix.letters()) {
            continue;
        }
        sequences_checked += 1;
        for c in &constraints {
            if !c.permits(seq.letter(c.position)) {
                violations.push((seq.clone(), c.position));
            }
        }
    }
    Ok(AuditReport {
        prefix,
        q,
        n,
        constraints,
        sequences_checked,
        violations,
        not_testable,
    })
}

// ---- structural scans over full attained sets ----

fn matches_unrolled(seq: &[Letter], base: &str, rep: &str, tail: &str) -> bool {
    let s: String = seq.iter().map(|l| l.as_char()).collect();
    if s.len() < base.len() + tail.len() {
        return false;
    }
    if !s.starts_with(base) || !s.ends_with(tail) {
        return false;
    }
    let mid = &s[base.len()..s.len() - tail.len()];
    if rep.is_empty() {
        return mid.is_empty();
    }
    mid.len() % rep.len() == 0 && mid.as_bytes().chunks(rep.len()).all(|c| c == rep.as_bytes())
}

/// Asserts the catalog-independent structural theorems over an attained set.
/// Returns descriptions of any violations (expected: none).
pub fn structural_audit(q: u32, sequences: &[EprSequence]) -> Result<Vec<String>> {
    let p = char_of(q)?;
    let mut out = Vec::new();
    for seq in sequences {
        let ls = seq.letters();
        let n = ls.len();
        for v in forbidden_scan(seq, p) {
            out.push(format!("{seq}: {} rule: {}", v.rule, v.message));
        }
        if q == 2
            && (0..n.saturating_sub(2)).any(|k| ls[k] == Letter::A && ls[k + 1] == Letter::A)
            && ls.iter().any(|&l| l != Letter::A)
        {
            out.push(format!("{seq}: AA within the first n-1 terms over GF(2) forces all A"));
        }
        if q == 3 {
            if seq.starts_with(&[Letter::A, Letter::A, Letter::A]) && ls.iter().any(|&l| l != Letter::A)
            {
                out.push(format!("{seq}: AAA over GF(3) forces all A"));
            }
            if seq.starts_with(&[Letter::A, Letter::A]) {
                for j in 3..=n.div_ceil(2) {
                    if ls[j - 1] == Letter::N {
                        out.push(format!("{seq}: AA start over GF(3) forbids N at position {j} ≤ ⌈n/2⌉"));
                    }
                }
            }
            if seq.starts_with(&[Letter::A, Letter::A, Letter::N]) {
                let s = seq.to_string();
                if !(s == "AAN" || s == "AANA" || s == "AANN") {
                    out.push(format!("{seq}: AAN start over GF(3) only allows AAN, AANA, AANN"));
                }
            }
            let has_naaa = (0..n.saturating_sub(3)).any(|k| {
                ls[k] == Letter::N && ls[k + 1] == Letter::A && ls[k + 2] == Letter::A && ls[k + 3] == Letter::A
            });
            if has_naaa {
                let s = seq.to_string();
                if !(s == "NAAA" || s == "NAAAN" || s == "NAAANA") {
                    out.push(format!("{seq}: NAAA over GF(3) only allows NAAA, NAAAN, NAAANA"));
                }
            }
            if seq.starts_with(&[Letter::N, Letter::A, Letter::A, Letter::N])
                && !(matches_unrolled(ls, "NAAN", "AAN", "")
                    || matches_unrolled(ls, "NAAN", "AAN", "A")
                    || matches_unrolled(ls, "NAAN", "AAN", "AA"))
            {
                out.push(format!("{seq}: NAAN start over GF(3) must continue in AAN period"));
            }
            if seq.starts_with(&[Letter::A, Letter::N, Letter::A])
                && !(matches_unrolled(ls, "ANA", "ANA", "")
                    || matches_unrolled(ls, "ANA", "ANA", "A")
                    || matches_unrolled(ls, "ANA", "ANA", "AN"))
            {
                out.push(format!("{seq}: ANA start over GF(3) must continue in ANA period"));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::field::FieldSpec;

    fn seq(s: &str) -> EprSequence {
        s.parse().unwrap()
    }

    #[test]
    fn forbidden_scan_examples() {
        assert!(!forbidden_scan(&seq("NNA"), 2).is_empty());
        assert!(!forbidden_scan(&seq("NNA"), 3).is_empty());
        assert!(!forbidden_scan(&seq("NAN"), 3).is_empty());
        assert!(forbidden_scan(&seq("NAN"), 2)
            .iter()
            .all(|v| v.rule != "NAN/NAS"));
        assert!(!forbidden_scan(&seq("ANAS"), 5).is_empty());
        assert!(forbidden_scan(&seq("NAANAAN"), 3).is_empty());
        // char-2: NANA is fine (odd positions N), NAA is not
        assert!(forbidden_scan(&seq("NANA"), 2).is_empty());
        assert!(!forbidden_scan(&seq("NAA"), 2).is_empty());
    }

    #[test]
    fn ramsey_constraints_na_f3() {
        // n = 19: ℓ₃ = A forced, ℓ₄ ∈ {N,S}, ℓ₅ ∈ {A,S}
        let cs = ramsey_constraints(Prefix::NA, 3, 19).unwrap();
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0].position, 3);
        assert_eq!(cs[0].allowed, vec![Letter::A]);
        assert_eq!(cs[1].position, 4);
        assert_eq!(cs[1].allowed, vec![Letter::N, Letter::S]);
        assert_eq!(cs[2].position, 5);
        assert_eq!(cs[2].allowed, vec![Letter::A, Letter::S]);

        // n = 6: below the n ≥ 7 threshold, only ℓ₃ = A
        let cs = ramsey_constraints(Prefix::NA, 3, 6).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].position, 3);
        assert_eq!(cs[0].allowed, vec![Letter::A]);

        // n = 49 additionally forces ℓ₆ ∈ {A,S}
        let cs = ramsey_constraints(Prefix::NA, 3, 49).unwrap();
        assert!(cs.iter().any(|c| c.position == 6 && c.allowed == vec![Letter::A, Letter::S]));
    }

    #[test]
    fn ramsey_constraints_an_f3() {
        let cs = ramsey_constraints(Prefix::AN, 3, 19).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].position, 5);
        assert_eq!(cs[0].allowed, vec![Letter::N, Letter::S]);
        assert!(ramsey_constraints(Prefix::AN, 3, 18).unwrap().is_empty());
        assert!(ramsey_constraints(Prefix::AN, 5, 19).is_err());
    }

    #[test]
    fn ramsey_constraints_n_prefix() {
        // GF(3): only R_3(4) ≤ 230 applies
        let cs = ramsey_constraints(Prefix::N, 3, 230).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].position, 4);
        assert_eq!(cs[0].allowed, vec![Letter::N, Letter::S]);
        assert!(!cs[0].from_exact_bound);
        assert!(ramsey_constraints(Prefix::N, 3, 229).unwrap().is_empty());

        // GF(2): the characteristic-2 theorem forces N at odd positions
        let cs = ramsey_constraints(Prefix::N, 2, 5).unwrap();
        let pos: Vec<usize> = cs.iter().map(|c| c.position).collect();
        assert_eq!(pos, vec![3, 5]);
        assert!(cs.iter().all(|c| c.allowed == vec![Letter::N]));

        // GF(5): NA corollary via R_4(3) ≤ 64: n ≥ 65 forces ℓ₄ ∈ {A,S}
        let cs = ramsey_constraints(Prefix::NA, 5, 65).unwrap();
        assert!(cs.iter().any(|c| c.position == 4 && c.allowed == vec![Letter::A, Letter::S]));
    }

    #[test]
    fn monochromatic_search() {
        let f3 = FieldSpec::prime(3).unwrap();
        // J − I is monochrome: α = [k]
        let b = constructions::build_j_minus_k_i(&f3, 6, 1).unwrap();
        let a = monochromatic_principal_submatrix(&b, &[1], 4).unwrap().unwrap();
        assert_eq!(a, IndexSet::new(vec![1, 2, 3, 4]).unwrap());
        // C₅ composite avoids a monochromatic triangle
        let c5 = constructions::build_c5_composite();
        assert!(monochromatic_principal_submatrix(&c5, &[1, 2], 3).unwrap().is_none());
        // precondition: off-diagonal entries must lie in T
        assert!(monochromatic_principal_submatrix(&c5, &[1], 3).is_err());
    }

    #[test]
    fn monochromatic_forced_at_exact_threshold() {
        // R(3,3) = 6: every 2-coloring of K₆ contains a monochromatic K₃
        use rand::{Rng, SeedableRng};
        let f3 = FieldSpec::prime(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut upper = Vec::new();
            for i in 0..6 {
                for j in i..6 {
                    upper.push(if i == j { 0 } else { rng.gen_range(1..3u32) });
                }
            }
            let b = SymMatrix::from_upper_triangle(f3.clone(), 6, &upper).unwrap();
            assert!(monochromatic_principal_submatrix(&b, &[1, 2], 3).unwrap().is_some());
        }
    }

    #[test]
    fn triangle_free_census_is_twelve_c5s() {
        let census = triangle_free_order5_census();
        assert_eq!(census.count, 12);
        assert!(!census.graphs.is_empty());
    }

    #[test]
    fn audit_examples() {
        let opts = EnumOptions::default();
        let r = empirical_constraint_audit(3, 4, Prefix::NA, &opts).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.sequences_checked > 0);
        assert!(r.constraints.iter().any(|c| c.position == 3 && c.allowed == vec![Letter::A]));

        let r = empirical_constraint_audit(2, 5, Prefix::N, &opts).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.sequences_checked > 0);

        let r = empirical_constraint_audit(3, 3, Prefix::AN, &opts).unwrap();
        assert_eq!(r.constraints.len(), 0);
        assert!(r.violations.is_empty());
        assert!(!r.not_testable.is_empty());
    }

    #[test]
    fn structural_audit_flags_bad_sequences() {
        assert!(structural_audit(3, &[seq("NAN")]).unwrap().len() == 1);
        assert!(structural_audit(3, &[seq("AANAA")]).unwrap().len() >= 1);
        assert!(structural_audit(3, &[seq("NAAAA")]).unwrap().len() >= 1);
        assert!(structural_audit(2, &[seq("AAN")]).unwrap().len() >= 1);
        assert!(structural_audit(3, &[seq("NAANAAN"), seq("ANAANA"), seq("AAAA")])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn structural_audit_over_attained_sets() {
        let opts = EnumOptions::default();
        for (q, n) in [(2u32, 5usize), (3, 4)] {
            let report = enumerate::attainable(q, n, &opts).unwrap();
            let seqs: Vec<EprSequence> = report.sequences().cloned().collect();
            let v = structural_audit(q, &seqs).unwrap();
            assert!(v.is_empty(), "q={q} n={n}: {v:?}");
        }
    }
}
