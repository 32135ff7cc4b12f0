//! Exact arithmetic in finite fields GF(p^k).
//!
//! Elements are integer encodings in `[0, q)`: the base-p digits of the
//! encoding are the polynomial-basis coefficients, least significant digit
//! first. Encoding 0 is the additive identity and 1 the multiplicative
//! identity, and the ascending encoding order is the element enumeration
//! order used everywhere downstream.

use thiserror::Error;

use crate::poly::Poly;

/// Element of a finite field, as its integer encoding in `[0, q)`.
pub type Elem = u64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("modulus must be monic of degree {expected}, got degree {got:?}")]
    BadModulusDegree { expected: u32, got: Option<usize> },
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("field too large: p^k overflows the element encoding")]
    TooLarge,
}

/// A finite field GF(p^k) with a fixed irreducible modulus.
///
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible of degree k over GF(p), coefficients low-first.
    modulus: Vec<u64>,
    /// log/antilog tables for small fields; `tables[0]` maps a nonzero
    /// element to its discrete log base the stored generator, `tables[1]`
    /// is the inverse map.
    tables: Option<Box<MulTables>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct MulTables {
    log: Vec<u32>,    // indexed by encoding, log[0] unused
    antilog: Vec<u64>, // indexed by exponent in [0, q-1)
}

const TABLE_LIMIT: u64 = 256;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Builds GF(p^k). If `modulus` is `None` the lexicographically
    /// smallest monic irreducible of degree k is used.
    pub fn new(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<FieldSpec, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if k == 0 {
            return Err(GfError::BadDegree);
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q.checked_mul(p).ok_or(GfError::TooLarge)?;
        }
        let modulus = match modulus {
            Some(mut coeffs) => {
                while coeffs.last() == Some(&0) {
                    coeffs.pop();
                }
                if coeffs.len() != k as usize + 1 || coeffs[k as usize] != 1 {
                    return Err(GfError::BadModulusDegree {
                        expected: k,
                        got: if coeffs.is_empty() { None } else { Some(coeffs.len() - 1) },
                    });
                }
                if coeffs.iter().any(|&c| c >= p) {
                    return Err(GfError::ReducibleModulus { p });
                }
                if !mod_poly_is_irreducible(p, &coeffs) {
                    return Err(GfError::ReducibleModulus { p });
                }
                coeffs
            }
            None => find_irreducible_coeffs(p, k),
        };
        let mut f = FieldSpec { p, k, q, modulus, tables: None };
        if q <= TABLE_LIMIT {
            f.tables = Some(Box::new(f.build_tables()));
        }
        Ok(f)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, low-first, length k+1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn check(&self, a: Elem) -> Elem {
        assert!(a < self.q, "element encoding {} out of range for GF({})", a, self.q);
        a
    }

    fn digits(&self, a: Elem) -> Vec<u64> {
        let mut a = a;
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u64]) -> Elem {
        let mut out = 0;
        for &d in digits.iter().rev() {
            out = out * self.p + d;
        }
        out
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.check(a);
        self.check(b);
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += (a % self.p + b % self.p) % self.p * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.check(a);
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += (self.p - a % self.p) % self.p * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Product in the polynomial basis, reduced mod the field modulus.
    /// Backed by log/antilog tables for q ≤ 256; the direct path is kept
    /// as `mul_direct` and must agree on every pair.
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.check(a);
        self.check(b);
        if let Some(t) = &self.tables {
            if a == 0 || b == 0 {
                return 0;
            }
            let e = (t.log[a as usize] + t.log[b as usize]) % (self.q as u32 - 1);
            return t.antilog[e as usize];
        }
        self.mul_direct(a, b)
    }

    /// Table-free multiplication path.
    pub fn mul_direct(&self, a: Elem, b: Elem) -> Elem {
        self.check(a);
        self.check(b);
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce mod the monic modulus
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus.iter().enumerate().take(k) {
                let idx = i - k + j;
                prod[idx] = (prod[idx] + c * (self.p - m)) % self.p;
            }
        }
        self.undigits(&prod[..k])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        self.check(a);
        let mut base = a;
        let mut e = e;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        self.check(a);
        assert!(a != 0, "division by zero in GF({})", self.q);
        if let Some(t) = &self.tables {
            if a == 1 {
                return 1;
            }
            let e = (self.q as u32 - 1) - t.log[a as usize];
            return t.antilog[e as usize];
        }
        self.pow(a, self.q - 2)
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    /// All q elements, ascending by encoding. This order defines the
    /// coordinate order of codewords downstream.
    pub fn enumerate(&self) -> impl Iterator<Item = Elem> + '_ {
        0..self.q
    }

    fn build_tables(&self) -> MulTables {
        let g = self.find_generator();
        let mut log = vec![0u32; self.q as usize];
        let mut antilog = vec![0u64; self.q as usize - 1];
        let mut x: Elem = 1;
        for e in 0..(self.q - 1) {
            antilog[e as usize] = x;
            log[x as usize] = e as u32;
            x = self.mul_direct(x, g);
        }
        MulTables { log, antilog }
    }

    fn find_generator(&self) -> Elem {
        'cand: for g in 2..self.q {
            let mut x = g;
            let mut ord = 1;
            while x != 1 {
                x = self.mul_direct(x, g);
                ord += 1;
                if ord > self.q {
                    continue 'cand;
                }
            }
            if ord == self.q - 1 {
                return g;
            }
        }
        // GF(2) has generator 1
        1
    }
}

/// Lexicographically smallest (constant term first) monic irreducible of
/// degree k over GF(p), as a `Poly` over the prime field.
pub fn find_irreducible(p: u64, k: u32) -> Result<Poly, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if k == 0 {
        return Err(GfError::BadDegree);
    }
    Ok(Poly::new(find_irreducible_coeffs(p, k)))
}

fn find_irreducible_coeffs(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let total = p.pow(k as u32);
    // iterate coefficient tuples (c_0, ..., c_{k-1}) in lexicographic
    // order with the constant term most significant
    for i in 0..total {
        let mut coeffs = vec![0u64; k + 1];
        coeffs[k] = 1;
        for j in 0..k {
            coeffs[j] = (i / p.pow((k - 1 - j) as u32)) % p;
        }
        if mod_poly_is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("an irreducible of every degree exists over GF(p)")
}

/// Irreducibility over GF(p) by exhaustive trial division with monic
/// divisors of degree 1..=deg/2.
fn mod_poly_is_irreducible(p: u64, coeffs: &[u64]) -> bool {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for i in 0..count {
            let mut div = vec![0u64; d + 1];
            div[d] = 1;
            let mut rest = i;
            for c in div.iter_mut().take(d) {
                *c = rest % p;
                rest /= p;
            }
            if mod_poly_rem_is_zero(p, coeffs, &div) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `a` by monic `b` over GF(p), zero test only.
fn mod_poly_rem_is_zero(p: u64, a: &[u64], b: &[u64]) -> bool {
    let db = b.len() - 1;
    let mut r: Vec<u64> = a.to_vec();
    while r.len() > db {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let shift = r.len() - 1 - db;
            for (j, &bc) in b.iter().enumerate().take(db) {
                r[shift + j] = (r[shift + j] + lead * (p - bc)) % p;
            }
        }
        r.pop();
        while r.len() > db && r.last() == Some(&0) {
            r.pop();
        }
    }
    r.iter().all(|&c| c == 0)
}
