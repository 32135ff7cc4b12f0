//! Dense univariate polynomials over a `FieldSpec`.
//!
//! Coefficients are stored lowest degree first with no trailing zeros; the
//! zero polynomial is the empty coefficient list and its degree is `None`
//! rather than a number, so it can never leak into degree arithmetic.

use thiserror::Error;

use crate::gf::{Elem, FieldSpec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("operation undefined for the zero polynomial")]
    ZeroInput,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    /// Normalizes by dropping trailing zeros.
    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Poly {
        Poly { coeffs: vec![0, 1] }
    }

    /// `x - alpha`.
    pub fn x_minus(f: &FieldSpec, alpha: Elem) -> Poly {
        Poly::new(vec![f.neg(alpha), 1])
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    /// Base-q integer encoding; degree-compatible total order key.
    pub fn encoding(&self, f: &FieldSpec) -> u128 {
        let mut out: u128 = 0;
        for &c in self.coeffs.iter().rev() {
            out = out * f.q() as u128 + c as u128;
        }
        out
    }

    pub fn add(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(coeffs)
    }

    pub fn sub(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::new(coeffs)
    }

    pub fn mul(&self, other: &Poly, f: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly::new(coeffs)
    }

    pub fn scale(&self, c: Elem, f: &FieldSpec) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn eval(&self, x0: Elem, f: &FieldSpec) -> Elem {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x0), c);
        }
        acc
    }

    /// Monic associate and the leading scalar factored out.
    pub fn monicize(&self, f: &FieldSpec) -> Result<(Poly, Elem), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let lead = self.leading_coeff();
        Ok((self.scale(f.inv(lead), f), lead))
    }

    /// Quotient and remainder with `deg r < deg b`.
    pub fn divrem(&self, b: &Poly, f: &FieldSpec) -> Result<(Poly, Poly), PolyError> {
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let db = b.coeffs.len() - 1;
        let lead_inv = f.inv(b.leading_coeff());
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![0; rem.len() - db];
        while rem.len() > db {
            let lead = *rem.last().unwrap();
            let shift = rem.len() - 1 - db;
            if lead != 0 {
                let qc = f.mul(lead, lead_inv);
                quot[shift] = qc;
                for (j, &bc) in b.coeffs.iter().enumerate() {
                    rem[shift + j] = f.sub(rem[shift + j], f.mul(qc, bc));
                }
            }
            rem.pop();
            while rem.len() > db && rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly, f: &FieldSpec) -> Result<Poly, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b, f).expect("b is nonzero");
            a = b;
            b = r;
        }
        Ok(a.monicize(f).expect("a is nonzero").0)
    }

    /// True iff `d` divides `self` exactly.
    pub fn divisible_by(&self, d: &Poly, f: &FieldSpec) -> bool {
        matches!(self.divrem(d, f), Ok((_, r)) if r.is_zero())
    }

    /// Multiplicity of the irreducible `d` in `self` (self nonzero).
    pub fn ord_at(&self, d: &Poly, f: &FieldSpec) -> usize {
        assert!(!self.is_zero());
        let mut n = 0;
        let mut cur = self.clone();
        loop {
            match cur.divrem(d, f) {
                Ok((q, r)) if r.is_zero() => {
                    n += 1;
                    cur = q;
                }
                _ => return n,
            }
        }
    }

    /// Factorization into monic irreducibles by trial division against the
    /// sieved irreducible table. Returns (factors with multiplicities,
    /// sorted by (degree, encoding), leading scalar).
    pub fn factor(&self, f: &FieldSpec) -> Result<(Vec<(Poly, usize)>, Elem), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let (mut cur, lead) = self.monicize(f)?;
        let mut out: Vec<(Poly, usize)> = Vec::new();
        if cur.degree() == Some(0) {
            return Ok((out, lead));
        }
        // trial division needs irreducibles only up to half the degree:
        // whatever cofactor survives cannot split further
        let dmax = cur.degree().unwrap();
        for irr in irreducibles_up_to(f, dmax / 2) {
            if cur.degree() == Some(0) {
                break;
            }
            let mut mult = 0;
            loop {
                match cur.divrem(&irr, f) {
                    Ok((q, r)) if r.is_zero() => {
                        mult += 1;
                        cur = q;
                    }
                    _ => break,
                }
            }
            if mult > 0 {
                out.push((irr, mult));
            }
        }
        if cur.degree().unwrap() > 0 {
            out.push((cur, 1));
            out.sort_by(|(a, _), (b, _)| {
                (a.degree(), a.encoding(f)).cmp(&(b.degree(), b.encoding(f)))
            });
        }
        Ok((out, lead))
    }

    /// Render as a human-readable string in the variable `var`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => var.to_string(),
                (1, c) => format!("{c}{var}"),
                (i, 1) => format!("{var}^{i}"),
                (i, c) => format!("{c}{var}^{i}"),
            };
            terms.push(t);
        }
        terms.join("+")
    }
}

/// All monic polynomials of exact degree `d`, ascending by encoding.
pub fn monic_polys_of_degree(f: &FieldSpec, d: usize) -> Vec<Poly> {
    let q = f.q();
    let count = q.pow(d as u32);
    let mut out = Vec::with_capacity(count as usize);
    for i in 0..count {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = 1;
        let mut rest = i;
        for c in coeffs.iter_mut().take(d) {
            *c = rest % q;
            rest /= q;
        }
        out.push(Poly { coeffs });
    }
    out
}

/// All polynomials of degree ≤ `d` (including zero), ascending by encoding.
pub fn polys_up_to_degree(f: &FieldSpec, d: usize) -> Vec<Poly> {
    let q = f.q();
    let count = q.pow(d as u32 + 1);
    (0..count)
        .map(|i| {
            let mut coeffs = Vec::new();
            let mut rest = i;
            for _ in 0..=d {
                coeffs.push(rest % q);
                rest /= q;
            }
            Poly::new(coeffs)
        })
        .collect()
}

/// All monic irreducibles of degree ≤ `dmax`, sorted by (degree, encoding),
/// produced by sieving monic polynomials against smaller-degree entries.
pub fn irreducibles_up_to(f: &FieldSpec, dmax: usize) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    for d in 1..=dmax {
        for cand in monic_polys_of_degree(f, d) {
            let reducible = out
                .iter()
                .take_while(|irr| irr.degree().unwrap() <= d / 2)
                .any(|irr| cand.divisible_by(irr, f));
            if !reducible {
                out.push(cand);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: u32) -> FieldSpec {
        FieldSpec::new(p, k, None).unwrap()
    }

    #[test]
    fn mul_char2() {
        let f = gf(2, 1);
        let a = Poly::new(vec![1, 1]); // x+1
        assert_eq!(a.mul(&a, &f), Poly::new(vec![1, 0, 1])); // x^2+1
    }

    #[test]
    fn eval_mod5() {
        let f = gf(5, 1);
        let a = Poly::new(vec![1, 2]); // 2x+1
        assert_eq!(a.eval(3, &f), 2); // 7 mod 5
    }

    #[test]
    fn monicize_example() {
        let f = gf(5, 1);
        let a = Poly::new(vec![1, 0, 3]); // 3x^2+1
        let (m, s) = a.monicize(&f).unwrap();
        assert_eq!(m, Poly::new(vec![2, 0, 1])); // x^2+2
        assert_eq!(s, 3);
        assert_eq!(Poly::zero().monicize(&f), Err(PolyError::ZeroInput));
    }

    #[test]
    fn divrem_examples() {
        let f = gf(3, 1);
        let a = Poly::new(vec![1, 0, 1]); // x^2+1
        let b = Poly::new(vec![1, 1]); // x+1
        let (q, r) = a.divrem(&b, &f).unwrap();
        assert_eq!(q, Poly::new(vec![2, 1])); // x+2
        assert_eq!(r, Poly::constant(2));

        let (q, r) = Poly::x().divrem(&Poly::new(vec![0, 0, 1]), &f).unwrap();
        assert_eq!(q, Poly::zero());
        assert_eq!(r, Poly::x());

        let (q, r) = Poly::new(vec![0, 0, 1]).divrem(&Poly::x(), &f).unwrap();
        assert_eq!(q, Poly::x());
        assert_eq!(r, Poly::zero());

        assert_eq!(a.divrem(&Poly::zero(), &f), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        let f = gf(5, 1);
        let a = Poly::new(vec![4, 0, 1]); // x^2-1
        let b = Poly::new(vec![4, 1]); // x-1
        assert_eq!(a.gcd(&b, &f).unwrap(), Poly::new(vec![4, 1])); // x+4

        let f2 = gf(2, 1);
        assert_eq!(Poly::x().gcd(&Poly::new(vec![1, 1]), &f2).unwrap(), Poly::one());

        let c = Poly::new(vec![1, 0, 3]);
        assert_eq!(c.gcd(&Poly::zero(), &f).unwrap(), c.monicize(&f).unwrap().0);
        assert_eq!(Poly::zero().gcd(&Poly::zero(), &f), Err(PolyError::GcdOfZeros));
    }

    #[test]
    fn irreducibles_f2() {
        let f = gf(2, 1);
        let irr = irreducibles_up_to(&f, 2);
        assert_eq!(
            irr,
            vec![Poly::x(), Poly::new(vec![1, 1]), Poly::new(vec![1, 1, 1])]
        );
    }

    #[test]
    fn irreducibles_f3_linear() {
        let f = gf(3, 1);
        let irr = irreducibles_up_to(&f, 1);
        assert_eq!(irr.len(), 3);
        assert!(irr.iter().all(|p| p.degree() == Some(1) && p.is_monic()));
    }

    #[test]
    fn degree2_irreducible_count() {
        // (q^2 - q)/2 monic irreducible quadratics
        for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)] {
            let f = gf(p, k);
            let q = f.q();
            let n = irreducibles_up_to(&f, 2)
                .iter()
                .filter(|p| p.degree() == Some(2))
                .count() as u64;
            assert_eq!(n, (q * q - q) / 2, "q={}", q);
        }
    }

    #[test]
    fn factor_examples() {
        let f2 = gf(2, 1);
        let (factors, lead) = Poly::new(vec![0, 1, 1]).factor(&f2).unwrap(); // x^2+x
        assert_eq!(lead, 1);
        assert_eq!(factors, vec![(Poly::x(), 1), (Poly::new(vec![1, 1]), 1)]);

        let (factors, _) = Poly::new(vec![1, 0, 1]).factor(&f2).unwrap(); // x^2+1 = (x+1)^2
        assert_eq!(factors, vec![(Poly::new(vec![1, 1]), 2)]);

        let f3 = gf(3, 1);
        let (factors, _) = Poly::new(vec![1, 0, 1]).factor(&f3).unwrap(); // irreducible
        assert_eq!(factors, vec![(Poly::new(vec![1, 0, 1]), 1)]);
    }

    #[test]
    fn factor_roundtrip_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2)] {
            let f = gf(p, k);
            for _ in 0..40 {
                let deg = rng.gen_range(0..=8);
                let mut coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..f.q())).collect();
                if *coeffs.last().unwrap() == 0 {
                    *coeffs.last_mut().unwrap() = 1;
                }
                let a = Poly::new(coeffs);
                let (factors, lead) = a.factor(&f).unwrap();
                let mut prod = Poly::constant(lead);
                for (irr, mult) in &factors {
                    for _ in 0..*mult {
                        prod = prod.mul(irr, &f);
                    }
                }
                assert_eq!(prod, a);
            }
        }
    }
}
