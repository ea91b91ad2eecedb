//! Sequence-form patterns and the two classification catalogs.
//!
//! A form is a string of letters from {A, S, N} with groups written `(…)*`,
//! each group meaning "this block repeated as many times as desired, or
//! omitted entirely". An optional side condition restricts the total length,
//! e.g. `ASSS(S)*AN ; n even`.

use crate::epr::{EprSequence, Letter};
use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Letter(Letter),
    /// A repeat-or-omit block of letters.
    Group(Vec<Letter>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideCondition {
    NEven,
    NOdd,
}

impl SideCondition {
    fn holds(self, n: usize) -> bool {
        match self {
            SideCondition::NEven => n % 2 == 0,
            SideCondition::NOdd => n % 2 == 1,
        }
    }
}

/// AST of one sequence form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormPattern {
    items: Vec<Item>,
    side_condition: Option<SideCondition>,
    /// catalog id + form number, when the pattern came from a catalog
    pub label: Option<String>,
}

impl FormPattern {
    /// Parse `letter+` with groups `(…)*` and an optional `; n even` /
    /// `; n odd` suffix.
    pub fn parse(text: &str) -> Result<FormPattern> {
        let (body, side) = match text.split_once(';') {
            Some((b, cond)) => {
                let side = match cond.trim() {
                    "n even" => SideCondition::NEven,
                    "n odd" => SideCondition::NOdd,
                    other => {
                        return Err(Error::parse(
                            format!("condition '{other}'"),
                            "supported conditions are 'n even' and 'n odd'",
                        ))
                    }
                };
                (b.trim(), Some(side))
            }
            None => (text.trim(), None),
        };
        let mut items = Vec::new();
        let chars: Vec<char> = body.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            match chars[i] {
                'A' | 'S' | 'N' => {
                    items.push(Item::Letter(Letter::from_char(chars[i])?));
                    i += 1;
                }
                '(' => {
                    let start = i;
                    i += 1;
                    let mut group = Vec::new();
                    while i < chars.len() && chars[i] != ')' {
                        group.push(Letter::from_char(chars[i]).map_err(|_| {
                            Error::parse(format!("position {}", i + 1), format!("unexpected '{}' inside group", chars[i]))
                        })?);
                        i += 1;
                    }
                    if i == chars.len() {
                        return Err(Error::parse(format!("position {}", start + 1), "unclosed group"));
                    }
                    if group.is_empty() {
                        return Err(Error::parse(format!("position {}", start + 1), "empty group"));
                    }
                    i += 1; // ')'
                    if i == chars.len() || chars[i] != '*' {
                        return Err(Error::parse(
                            format!("position {}", i + 1),
                            "group must be followed by '*'",
                        ));
                    }
                    i += 1;
                    items.push(Item::Group(group));
                }
                c if c.is_whitespace() => i += 1,
                c => {
                    return Err(Error::parse(
                        format!("position {}", i + 1),
                        format!("stray character '{c}'"),
                    ))
                }
            }
        }
        if items.is_empty() {
            return Err(Error::parse("input", "empty pattern"));
        }
        Ok(FormPattern {
            items,
            side_condition: side,
            label: None,
        })
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn side_condition(&self) -> Option<SideCondition> {
        self.side_condition
    }

    /// The sum of mandatory letters: the least length this form can generate.
    pub fn min_len(&self) -> usize {
        self.items
            .iter()
            .map(|it| match it {
                Item::Letter(_) => 1,
                Item::Group(_) => 0,
            })
            .sum()
    }

    /// True iff `s` is generated by this pattern with each group repeated
    /// ≥ 0 times and the side condition satisfied at n = |s|. Backtracking
    /// over group repetition counts; the result is strategy-independent.
    pub fn matches(&self, s: &EprSequence) -> bool {
        if let Some(sc) = self.side_condition {
            if !sc.holds(s.len()) {
                return false;
            }
        }
        fn rec(items: &[Item], s: &[Letter]) -> bool {
            match items.first() {
                None => s.is_empty(),
                Some(Item::Letter(l)) => s.first() == Some(l) && rec(&items[1..], &s[1..]),
                Some(Item::Group(g)) => {
                    let mut rest = s;
                    loop {
                        if rec(&items[1..], rest) {
                            return true;
                        }
                        if rest.len() >= g.len() && rest[..g.len()] == g[..] {
                            rest = &rest[g.len()..];
                        } else {
                            return false;
                        }
                    }
                }
            }
        }
        rec(&self.items, s.letters())
    }

    /// All length-n sequences this form generates.
    pub fn expand(&self, n: usize) -> BTreeSet<EprSequence> {
        let mut out = BTreeSet::new();
        if let Some(sc) = self.side_condition {
            if !sc.holds(n) {
                return out;
            }
        }
        fn rec(items: &[Item], prefix: &mut Vec<Letter>, n: usize, out: &mut BTreeSet<EprSequence>) {
            let min_rest: usize = items
                .iter()
                .map(|it| if matches!(it, Item::Letter(_)) { 1 } else { 0 })
                .sum();
            if prefix.len() + min_rest > n {
                return;
            }
            match items.first() {
                None => {
                    if prefix.len() == n {
                        out.insert(EprSequence::new(prefix.clone()));
                    }
                }
                Some(Item::Letter(l)) => {
                    prefix.push(*l);
                    rec(&items[1..], prefix, n, out);
                    prefix.pop();
                }
                Some(Item::Group(g)) => {
                    // zero repetitions
                    rec(&items[1..], prefix, n, out);
                    let mut pushed = 0;
                    while prefix.len() + g.len() <= n {
                        prefix.extend_from_slice(g);
                        pushed += g.len();
                        rec(&items[1..], prefix, n, out);
                    }
                    prefix.truncate(prefix.len() - pushed);
                }
            }
        }
        rec(&self.items, &mut Vec::new(), n, &mut out);
        out
    }
}

impl fmt::Display for FormPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for it in &self.items {
            match it {
                Item::Letter(l) => write!(f, "{}", l.as_char())?,
                Item::Group(g) => {
                    write!(f, "(")?;
                    for l in g {
                        write!(f, "{}", l.as_char())?;
                    }
                    write!(f, ")*")?;
                }
            }
        }
        match self.side_condition {
            Some(SideCondition::NEven) => write!(f, " ; n even")?,
            Some(SideCondition::NOdd) => write!(f, " ; n odd")?,
            None => {}
        }
        Ok(())
    }
}

/// A classification catalog: a list of numbered forms for one field, with an
/// optional alphabet/length scope restriction and a completeness flag
/// recording whether the source theorem is an "if and only if".
#[derive(Debug, Clone)]
pub struct Catalog {
    pub name: String,
    /// field order the catalog applies to
    pub q: u32,
    pub forms: Vec<(u32, FormPattern)>,
    pub complete: bool,
    /// restrict claims to sequences over this alphabet (None = all of {A,S,N})
    pub alphabet: Option<Vec<Letter>>,
    /// restrict claims to sequences of at least this length
    pub min_n: usize,
}

impl Catalog {
    /// Parse the shipped plain-text catalog format: `<id>. <pattern> [; condition]`,
    /// `#` comments.
    pub fn parse(name: &str, q: u32, complete: bool, alphabet: Option<Vec<Letter>>, min_n: usize, text: &str) -> Result<Catalog> {
        let mut forms = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (id, rest) = line.split_once('.').ok_or_else(|| {
                Error::parse(format!("line {}", ln + 1), "expected '<id>. <pattern>'")
            })?;
            let id: u32 = id
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("line {}", ln + 1), "bad form id"))?;
            if forms.iter().any(|(other, _)| *other == id) {
                return Err(Error::parse(format!("line {}", ln + 1), format!("duplicate form id {id}")));
            }
            let mut p = FormPattern::parse(rest.trim())?;
            p.label = Some(format!("{name} form {id}"));
            forms.push((id, p));
        }
        Ok(Catalog {
            name: name.to_string(),
            q,
            forms,
            complete,
            alphabet,
            min_n,
        })
    }

    /// The GF(2) classification: 20 forms, complete for all sequences.
    pub fn f2() -> Catalog {
        Catalog::parse("f2", 2, true, None, 1, include_str!("../catalogs/f2.txt"))
            .expect("built-in catalog parses")
    }

    /// The GF(3) classification for sequences from {A, N} of length ≥ 3:
    /// 16 forms, complete within that scope.
    pub fn f3() -> Catalog {
        Catalog::parse(
            "f3",
            3,
            true,
            Some(vec![Letter::A, Letter::N]),
            3,
            include_str!("../catalogs/f3.txt"),
        )
        .expect("built-in catalog parses")
    }

    pub fn by_name(name: &str) -> Result<Catalog> {
        match name {
            "f2" => Ok(Catalog::f2()),
            "f3" => Ok(Catalog::f3()),
            _ => Err(Error::usage(format!("unknown catalog '{name}' (known: f2, f3)"))),
        }
    }

    /// Ids of all forms matching `s`; empty means "not in catalog".
    pub fn matching_forms(&self, s: &EprSequence) -> Vec<u32> {
        self.forms
            .iter()
            .filter(|(_, p)| p.matches(s))
            .map(|(id, _)| *id)
            .collect()
    }

    /// Exactly the length-n sequences matching some form, deduplicated.
    pub fn enumerate(&self, n: usize) -> Result<BTreeSet<EprSequence>> {
        if n == 0 || n > 24 {
            return Err(Error::usage(format!("catalog expansion supports 1 ≤ n ≤ 24, got {n}")));
        }
        let mut out = BTreeSet::new();
        for (_, p) in &self.forms {
            out.extend(p.expand(n));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> EprSequence {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print_roundtrip() {
        for text in ["A(A)*", "(NS)*N(N)*", "ASSS(S)*AN ; n even", "NAAANA"] {
            let p = FormPattern::parse(text).unwrap();
            assert_eq!(p.to_string(), text);
            let again = FormPattern::parse(&p.to_string()).unwrap();
            assert_eq!(p, again);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(FormPattern::parse("()").is_err());
        assert!(FormPattern::parse("").is_err());
        assert!(FormPattern::parse("AXN").is_err());
        assert!(FormPattern::parse("A(SA").is_err());
        assert!(FormPattern::parse("A(SA)").is_err());
        assert!(FormPattern::parse("AN ; n prime").is_err());
    }

    #[test]
    fn matches_examples() {
        let p = FormPattern::parse("ASA(SA)*N").unwrap();
        assert!(p.matches(&seq("ASAN"))); // group taken 0 times
        assert!(p.matches(&seq("ASASAN")));
        assert!(!p.matches(&seq("AASN")));

        let even = FormPattern::parse("ASSS(S)*AN ; n even").unwrap();
        assert!(even.matches(&seq("ASSSAN")));
        assert!(!even.matches(&seq("ASSSSAN"))); // n = 7 odd

        let a_star = FormPattern::parse("A(A)*").unwrap();
        assert!(a_star.matches(&seq("A")));
        assert!(a_star.matches(&seq("AAAA")));
    }

    #[test]
    fn catalog_match_examples() {
        let f3 = Catalog::f3();
        assert_eq!(f3.matching_forms(&seq("NAA")), vec![9]);
        assert_eq!(f3.matching_forms(&seq("NNNN")), vec![16]);
        assert!(f3.matching_forms(&seq("SSSS")).is_empty());
    }

    #[test]
    fn catalog_shapes() {
        assert_eq!(Catalog::f2().forms.len(), 20);
        assert_eq!(Catalog::f3().forms.len(), 16);
    }

    #[test]
    fn enumerate_f3_n3() {
        let expected: BTreeSet<EprSequence> = ["AAA", "AAN", "ANA", "ANN", "NAA", "NNN"]
            .iter()
            .map(|s| seq(s))
            .collect();
        assert_eq!(Catalog::f3().enumerate(3).unwrap(), expected);
    }

    #[test]
    fn enumerate_f2_n1() {
        // forms with a single mandatory letter: 1 gives A, 11 gives N
        let expected: BTreeSet<EprSequence> = ["A", "N"].iter().map(|s| seq(s)).collect();
        assert_eq!(Catalog::f2().enumerate(1).unwrap(), expected);
        assert!(Catalog::f2().enumerate(0).is_err());
    }

    #[test]
    fn enumerate_equals_membership_scan() {
        // cross-check: enumerate(c, n) = { s : matching_forms(s) ≠ ∅ } for n ≤ 6
        for cat in [Catalog::f2(), Catalog::f3()] {
            for n in 1..=6usize {
                let enumerated = cat.enumerate(n).unwrap();
                let mut scanned = BTreeSet::new();
                let count = 3u64.pow(n as u32);
                for code in 0..count {
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
                    let s = EprSequence::new(letters);
                    if !cat.matching_forms(&s).is_empty() {
                        scanned.insert(s);
                    }
                }
                assert_eq!(enumerated, scanned, "{} n={n}", cat.name);
            }
        }
    }

    #[test]
    fn matches_agrees_with_unrolling_oracle() {
        // naive oracle: a pattern matches s iff s is among its length-|s| expansions
        for cat in [Catalog::f2(), Catalog::f3()] {
            for (_, p) in &cat.forms {
                for n in 1..=7usize {
                    let expanded = p.expand(n);
                    let count = 3u64.pow(n as u32);
                    for code in 0..count {
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
                        let s = EprSequence::new(letters);
                        assert_eq!(p.matches(&s), expanded.contains(&s), "{p} vs {s}");
                    }
                }
            }
        }
    }
}
