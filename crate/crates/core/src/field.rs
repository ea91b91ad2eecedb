//! Exact arithmetic in GF(q) for q = p^k ≤ 2^16.
//!
//! Prime fields use direct modular arithmetic. Extension fields represent an
//! element as its coefficient vector packed base p (low degree in the least
//! significant digit) and multiply through log/antilog tables built once at
//! spec construction.
//!
//! Fixed default moduli (low degree first) keep results reproducible:
//! GF(4): x^2+x+1, GF(8): x^3+x+1, GF(9): x^2+2x+2.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// A finite field GF(p^k). Immutable after construction; all operations on
/// raw canonical values (integers in `[0, q)`) are pure.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Monic degree-k modulus over GF(p), low degree first. Present iff k > 1.
    modulus: Option<Vec<u32>>,
    /// exp[i] = g^i for a fixed primitive element g; length q-1. Empty for k = 1.
    exp: Vec<u16>,
    /// log[v] = i with g^i = v, for v in [1, q). log[0] unused. Empty for k = 1.
    log: Vec<u16>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Arc<FieldSpec>> {
        if !is_prime(p) {
            return Err(Error::usage(format!("{p} is not prime")));
        }
        if p > 1 << 16 {
            return Err(Error::usage(format!("q = {p} exceeds the 2^16 cap")));
        }
        Ok(Arc::new(FieldSpec {
            p,
            k: 1,
            q: p,
            modulus: None,
            exp: Vec::new(),
            log: Vec::new(),
        }))
    }

    /// The extension field GF(p^k) with the given monic irreducible modulus
    /// (coefficients low degree first, length k+1).
    pub fn extension(p: u32, k: u32, modulus: Vec<u32>) -> Result<Arc<FieldSpec>> {
        if !is_prime(p) {
            return Err(Error::usage(format!("{p} is not prime")));
        }
        if k < 2 {
            return Err(Error::usage("extension degree must be at least 2".to_string()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= 1 << 16)
            .ok_or_else(|| Error::usage(format!("q = {p}^{k} exceeds the 2^16 cap")))?;
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
            return Err(Error::usage(format!(
                "modulus must be monic of degree {k} (got {} coefficients)",
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::usage("modulus coefficients must lie in [0, p)".to_string()));
        }
        if !poly_irreducible(p, &modulus) {
            return Err(Error::usage("modulus is reducible over GF(p)".to_string()));
        }
        let mut spec = FieldSpec {
            p,
            k,
            q,
            modulus: Some(modulus),
            exp: Vec::new(),
            log: Vec::new(),
        };
        spec.build_tables();
        Ok(Arc::new(spec))
    }

    /// A field by order, using the fixed default modulus for 4, 8, 9.
    /// Other prime powers with k > 1 need an explicit modulus.
    pub fn by_order(q: u32) -> Result<Arc<FieldSpec>> {
        match q {
            4 => FieldSpec::extension(2, 2, vec![1, 1, 1]),
            8 => FieldSpec::extension(2, 3, vec![1, 1, 0, 1]),
            9 => FieldSpec::extension(3, 2, vec![2, 2, 1]),
            _ if is_prime(q) => FieldSpec::prime(q),
            _ => {
                // find p, k with p^k = q
                for p in 2..q {
                    if !is_prime(p) {
                        continue;
                    }
                    let (mut v, mut k) = (q, 0);
                    while v % p == 0 {
                        v /= p;
                        k += 1;
                    }
                    if v == 1 && k > 1 {
                        return Err(Error::usage(format!(
                            "GF({q}) = GF({p}^{k}) needs an explicit modulus (no built-in default)"
                        )));
                    }
                    if v != 1 {
                        break;
                    }
                }
                Err(Error::usage(format!("{q} is not a prime power")))
            }
        }
    }

    /// Parse a field name as used in configs and matrix files: `q` or `p^k`.
    pub fn parse(text: &str) -> Result<Arc<FieldSpec>> {
        let text = text.trim();
        if let Some((p, k)) = text.split_once('^') {
            let p: u32 = p
                .trim()
                .parse()
                .map_err(|_| Error::parse(text, "bad characteristic"))?;
            let k: u32 = k.trim().parse().map_err(|_| Error::parse(text, "bad degree"))?;
            if k == 1 {
                return FieldSpec::prime(p);
            }
            let q = p
                .checked_pow(k)
                .ok_or_else(|| Error::usage(format!("q = {p}^{k} overflows")))?;
            FieldSpec::by_order(q)
        } else {
            let q: u32 = text.parse().map_err(|_| Error::parse(text, "bad field order"))?;
            FieldSpec::by_order(q)
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    pub fn name(&self) -> String {
        if self.k == 1 {
            format!("{}", self.p)
        } else {
            format!("{}^{}", self.p, self.k)
        }
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        // find a primitive element by trial
        'g: for g in 2..self.q {
            let mut exp = Vec::with_capacity(q - 1);
            let mut v = 1u32;
            for _ in 0..q - 1 {
                exp.push(v as u16);
                v = self.poly_mul(v, g);
                if v == 1 && exp.len() < q - 1 {
                    continue 'g; // order too small
                }
            }
            debug_assert_eq!(v, 1);
            let mut log = vec![0u16; q];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u16;
            }
            self.exp = exp;
            self.log = log;
            return;
        }
        unreachable!("every finite field has a primitive element");
    }

    /// Coefficient-wise polynomial multiplication mod the modulus, on packed values.
    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let k = self.k as usize;
        let modulus = self.modulus.as_ref().expect("extension field");
        let da = unpack(a, p, k);
        let db = unpack(b, p, k);
        let mut prod = vec![0u32; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // reduce by the monic modulus
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (j, &m) in modulus.iter().enumerate().take(k) {
                let idx = d - k + j;
                prod[idx] = (prod[idx] + c * (p - m) % p) % p;
            }
        }
        pack(&prod[..k], p)
    }

    // ---- raw arithmetic on canonical values in [0, q) ----

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else {
            self.add_ext(a, b)
        }
    }

    fn add_ext(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let mut out = 0u32;
        let (mut a, mut b) = (a, b);
        let mut place = 1u32;
        while a > 0 || b > 0 {
            let s = (a % p + b % p) % p;
            out += s * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let p = self.p;
            let mut out = 0u32;
            let mut a = a;
            let mut place = 1u32;
            while a > 0 {
                let d = a % p;
                if d != 0 {
                    out += (p - d) * place;
                }
                place *= p;
                a /= p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            a * b % self.p
        } else if a == 0 || b == 0 {
            0
        } else {
            let la = self.log[a as usize] as u32;
            let lb = self.log[b as usize] as u32;
            let mut s = la + lb;
            if s >= self.q - 1 {
                s -= self.q - 1;
            }
            self.exp[s as usize] as u32
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero("field inverse"));
        }
        if self.k == 1 {
            Ok(self.pow(a, self.p - 2))
        } else {
            let la = self.log[a as usize] as u32;
            let e = (self.q - 1 - la) % (self.q - 1);
            Ok(self.exp[e as usize] as u32)
        }
    }

    pub fn pow(&self, a: u32, mut e: u32) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Canonical value of the integer m (characteristic embedding of Z).
    pub fn from_int(&self, m: i64) -> u32 {
        let p = self.p as i64;
        let r = ((m % p) + p) % p;
        r as u32
    }

    /// All canonical values, 0..q.
    pub fn values(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// Wrap a raw value as a [`FieldElement`].
    pub fn elem(self: &Arc<Self>, value: u32) -> Result<FieldElement> {
        if value >= self.q {
            return Err(Error::usage(format!(
                "value {value} out of range for GF({})",
                self.name()
            )));
        }
        Ok(FieldElement {
            spec: Arc::clone(self),
            value,
        })
    }

    /// Render a canonical value in the matrix text format: a plain integer for
    /// prime fields, a k-digit base-p string (high degree first) otherwise.
    pub fn format_value(&self, v: u32) -> String {
        if self.k == 1 {
            return v.to_string();
        }
        let digits = unpack(v, self.p, self.k as usize);
        digits.iter().rev().map(|d| d.to_string()).collect()
    }

    /// Parse a value token in the matrix text format.
    pub fn parse_value(&self, token: &str) -> Result<u32> {
        if self.k == 1 {
            let v: u32 = token
                .parse()
                .map_err(|_| Error::parse(token, "expected an integer entry"))?;
            if v >= self.p {
                return Err(Error::parse(token, format!("entry not in [0, {})", self.p)));
            }
            Ok(v)
        } else {
            if token.len() != self.k as usize {
                return Err(Error::parse(
                    token,
                    format!("expected a {}-digit base-{} entry", self.k, self.p),
                ));
            }
            let mut digits = Vec::with_capacity(self.k as usize);
            for ch in token.chars().rev() {
                let d = ch
                    .to_digit(10)
                    .filter(|&d| d < self.p)
                    .ok_or_else(|| Error::parse(token, format!("digit not in [0, {})", self.p)))?;
                digits.push(d);
            }
            Ok(pack(&digits, self.p))
        }
    }
}

fn unpack(v: u32, p: u32, k: usize) -> Vec<u32> {
    let mut out = vec![0u32; k];
    let mut v = v;
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

fn pack(digits: &[u32], p: u32) -> u32 {
    let mut out = 0u32;
    for &d in digits.iter().rev() {
        out = out * p + d;
    }
    out
}

/// Irreducibility over GF(p) by trial division with all monic polynomials of
/// degree up to deg/2. Degrees here are tiny (k ≤ 16, p^(k/2) ≤ 256).
fn poly_irreducible(p: u32, modulus: &[u32]) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        // iterate monic polynomials of degree d: d free coefficients
        let count = p.pow(d as u32);
        for c in 0..count {
            let mut divisor = unpack(c, p, d);
            divisor.push(1);
            if poly_rem_is_zero(p, modulus, &divisor) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u32, num: &[u32], den: &[u32]) -> bool {
    let mut rem: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for (j, &m) in den.iter().enumerate() {
                let idx = shift + j;
                rem[idx] = (rem[idx] + lead * (p - m) % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

/// An element of a specific field, carrying its spec. Elements from different
/// specs never mix: every binary operation checks.
#[derive(Debug, Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    value: u32,
}

impl FieldElement {
    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }
    pub fn value(&self) -> u32 {
        self.value
    }
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.spec.as_ref() != other.spec.as_ref() {
            return Err(Error::MixedSpecs(self.spec.name(), other.spec.name()));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement {
            spec: Arc::clone(&self.spec),
            value: self.spec.add(self.value, other.value),
        })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement {
            spec: Arc::clone(&self.spec),
            value: self.spec.sub(self.value, other.value),
        })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement {
            spec: Arc::clone(&self.spec),
            value: self.spec.mul(self.value, other.value),
        })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            spec: Arc::clone(&self.spec),
            value: self.spec.neg(self.value),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement {
            spec: Arc::clone(&self.spec),
            value: self.spec.inv(self.value)?,
        })
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec.as_ref() == other.spec.as_ref() && self.value == other.value
    }
}
impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec.format_value(self.value))
    }
}
