//! The rational function field F = F_q(x): canonical rational functions,
//! places, evaluation at rational places, valuations, divisors with the
//! join/meet lattice operations, and Riemann-Roch spaces.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::gf::{Elem, FieldSpec};
use crate::poly::{Poly, PolyError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FuncFieldError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("valuation of the zero function is undefined")]
    ZeroFunction,
    #[error("divisor is not effective")]
    NotEffective,
    #[error("place polynomial must be monic irreducible")]
    BadPlace,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A place of F_q(x): a monic irreducible polynomial, or the infinite place.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn rational(f: &FieldSpec, alpha: Elem) -> Place {
        Place::Finite(Poly::x_minus(f, alpha))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().expect("place polynomial is nonzero"),
            Place::Infinity => 1,
        }
    }

    pub fn display(&self) -> String {
        match self {
            Place::Finite(p) => format!("P_({})", p.display("x")),
            Place::Infinity => "P_inf".to_string(),
        }
    }
}

/// A finitely supported integer map on places; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    support: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Place, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (p, n) in terms {
            d.add_term(p, n);
        }
        d
    }

    pub fn single(place: Place, n: i64) -> Divisor {
        Divisor::from_terms([(place, n)])
    }

    pub fn add_term(&mut self, place: Place, n: i64) {
        if n == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.support.entry(place) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += n;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(n);
            }
        }
    }

    pub fn coeff(&self, place: &Place) -> i64 {
        self.support.get(place).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.support.iter().map(|(p, &n)| (p, n))
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.support
            .iter()
            .map(|(p, &n)| n * p.degree() as i64)
            .sum()
    }

    pub fn is_effective(&self) -> bool {
        self.support.values().all(|&n| n >= 0)
    }

    fn pointwise(&self, other: &Divisor, f: impl Fn(i64, i64) -> i64) -> Divisor {
        let mut places: Vec<&Place> = self.support.keys().collect();
        places.extend(other.support.keys());
        places.sort();
        places.dedup();
        let mut out = Divisor::zero();
        for p in places {
            out.add_term(p.clone(), f(self.coeff(p), other.coeff(p)));
        }
        out
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        self.pointwise(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.pointwise(other, |a, b| a - b)
    }

    /// Pointwise maximum (the union G ∨ D).
    pub fn join(&self, other: &Divisor) -> Divisor {
        self.pointwise(other, i64::max)
    }

    /// Pointwise minimum (the intersection G ∧ D).
    pub fn meet(&self, other: &Divisor) -> Divisor {
        self.pointwise(other, i64::min)
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.support
            .iter()
            .map(|(p, n)| {
                if *n == 1 {
                    p.display()
                } else {
                    format!("{}*{}", n, p.display())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Value of a rational function at a rational place: an element of
/// Σ = F_q ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalValue {
    Fin(Elem),
    Inf,
}

impl EvalValue {
    pub fn is_inf(&self) -> bool {
        matches!(self, EvalValue::Inf)
    }
}

/// A rational place, identified with Σ: an element α of F_q (for P_α)
/// or ∞ (for P_∞).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RationalPlace {
    Alpha(Elem),
    Infinity,
}

impl RationalPlace {
    pub fn to_place(self, f: &FieldSpec) -> Place {
        match self {
            RationalPlace::Alpha(a) => Place::rational(f, a),
            RationalPlace::Infinity => Place::Infinity,
        }
    }

    /// All q+1 rational places in coordinate order: α ascending, then ∞.
    pub fn all(f: &FieldSpec) -> Vec<RationalPlace> {
        let mut out: Vec<RationalPlace> = f.enumerate().map(RationalPlace::Alpha).collect();
        out.push(RationalPlace::Infinity);
        out
    }
}

/// A rational function in canonical reduced form: gcd(num, den) = 1 and a
/// monic denominator, with zero stored as 0/1. Equality of canonical forms
/// is equality in F_q(x).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Canonicalizes g/h: divide out the gcd, make the denominator monic,
    /// folding its leading scalar into the numerator.
    pub fn new(g: Poly, h: Poly, f: &FieldSpec) -> Result<RatFun, FuncFieldError> {
        if h.is_zero() {
            return Err(FuncFieldError::ZeroDenominator);
        }
        if g.is_zero() {
            return Ok(RatFun { num: Poly::zero(), den: Poly::one() });
        }
        let d = g.gcd(&h, f)?;
        let (num, _) = g.divrem(&d, f)?;
        let (den, _) = h.divrem(&d, f)?;
        let (den, lead) = den.monicize(f)?;
        let num = num.scale(f.inv(lead), f);
        Ok(RatFun { num, den })
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn constant(c: Elem) -> RatFun {
        RatFun { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn zero() -> RatFun {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    /// Builds directly from an already-coprime pair (monic den); used by
    /// enumeration paths that construct canonical forms by design.
    pub(crate) fn from_canonical_parts(num: Poly, den: Poly) -> RatFun {
        debug_assert!(den.is_monic());
        RatFun { num, den }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFun, f: &FieldSpec) -> RatFun {
        let g = self
            .num
            .mul(&other.den, f)
            .add(&other.num.mul(&self.den, f), f);
        let h = self.den.mul(&other.den, f);
        RatFun::new(g, h, f).expect("denominator product is nonzero")
    }

    pub fn sub(&self, other: &RatFun, f: &FieldSpec) -> RatFun {
        let g = self
            .num
            .mul(&other.den, f)
            .sub(&other.num.mul(&self.den, f), f);
        let h = self.den.mul(&other.den, f);
        RatFun::new(g, h, f).expect("denominator product is nonzero")
    }

    /// Evaluation at a rational place, by the residue-class case analysis:
    /// at finite α it is g(α)/h(α) or ∞ when h(α) = 0 (never 0/0 in
    /// canonical form); at ∞ it is the leading-coefficient ratio when the
    /// degrees match, 0 when the numerator degree is smaller, ∞ when larger.
    pub fn evaluate(&self, at: RationalPlace, f: &FieldSpec) -> EvalValue {
        match at {
            RationalPlace::Alpha(a) => {
                let hv = self.den.eval(a, f);
                if hv == 0 {
                    EvalValue::Inf
                } else {
                    EvalValue::Fin(f.div(self.num.eval(a, f), hv))
                }
            }
            RationalPlace::Infinity => {
                if self.num.is_zero() {
                    return EvalValue::Fin(0);
                }
                let n = self.num.degree().unwrap();
                let m = self.den.degree().unwrap();
                match n.cmp(&m) {
                    std::cmp::Ordering::Equal => {
                        EvalValue::Fin(f.div(self.num.leading_coeff(), self.den.leading_coeff()))
                    }
                    std::cmp::Ordering::Less => EvalValue::Fin(0),
                    std::cmp::Ordering::Greater => EvalValue::Inf,
                }
            }
        }
    }

    /// Normalized discrete valuation ν_P(f). For a finite place it is the
    /// multiplicity in the numerator minus the one in the denominator; at
    /// P_∞ it is deg(den) − deg(num).
    pub fn valuation(&self, place: &Place, f: &FieldSpec) -> Result<i64, FuncFieldError> {
        if self.is_zero() {
            return Err(FuncFieldError::ZeroFunction);
        }
        Ok(match place {
            Place::Finite(p) => {
                self.num.ord_at(p, f) as i64 - self.den.ord_at(p, f) as i64
            }
            Place::Infinity => {
                self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64
            }
        })
    }

    /// The zero divisor (f)_0.
    pub fn zero_divisor(&self, f: &FieldSpec) -> Result<Divisor, FuncFieldError> {
        if self.is_zero() {
            return Err(FuncFieldError::ZeroFunction);
        }
        let mut d = Divisor::zero();
        let (factors, _) = self.num.factor(f)?;
        for (irr, mult) in factors {
            d.add_term(Place::Finite(irr), mult as i64);
        }
        let vinf = self.valuation(&Place::Infinity, f)?;
        if vinf > 0 {
            d.add_term(Place::Infinity, vinf);
        }
        Ok(d)
    }

    /// The pole divisor (f)_∞.
    pub fn pole_divisor(&self, f: &FieldSpec) -> Result<Divisor, FuncFieldError> {
        if self.is_zero() {
            return Err(FuncFieldError::ZeroFunction);
        }
        let mut d = Divisor::zero();
        let (factors, _) = self.den.factor(f)?;
        for (irr, mult) in factors {
            d.add_term(Place::Finite(irr), mult as i64);
        }
        let vinf = self.valuation(&Place::Infinity, f)?;
        if vinf < 0 {
            d.add_term(Place::Infinity, -vinf);
        }
        Ok(d)
    }

    /// The principal divisor (f) = (f)_0 − (f)_∞.
    pub fn principal_divisor(&self, f: &FieldSpec) -> Result<Divisor, FuncFieldError> {
        Ok(self.zero_divisor(f)?.sub(&self.pole_divisor(f)?))
    }

    pub fn display(&self) -> String {
        if self.den == Poly::one() {
            self.num.display("x")
        } else {
            format!("({})/({})", self.num.display("x"), self.den.display("x"))
        }
    }
}

/// Membership in the Riemann-Roch space L(D): f = 0, or (f) + D ≥ 0.
pub fn rr_member(fun: &RatFun, d: &Divisor, f: &FieldSpec) -> bool {
    if fun.is_zero() {
        return true;
    }
    let principal = fun.principal_divisor(f).expect("fun is nonzero");
    principal.add(d).is_effective()
}

/// Basis of L(G) for an effective divisor G: with G = Σ n_i·P_{p_i} + r·P_∞
/// the functions x^j / Π p_i^{n_i} for 0 ≤ j ≤ deg G. Exactly deg(G)+1
/// entries, each a member of L(G), linearly independent over F_q.
pub fn rr_basis(g: &Divisor, f: &FieldSpec) -> Result<Vec<RatFun>, FuncFieldError> {
    if !g.is_effective() {
        return Err(FuncFieldError::NotEffective);
    }
    let mut den = Poly::one();
    for (place, n) in g.support() {
        if let Place::Finite(p) = place {
            for _ in 0..n {
                den = den.mul(p, f);
            }
        }
    }
    let deg = g.degree();
    let mut out = Vec::with_capacity(deg as usize + 1);
    let mut xj = Poly::one();
    for _ in 0..=deg {
        out.push(RatFun::new(xj.clone(), den.clone(), f)?);
        xj = xj.mul(&Poly::x(), f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: u32) -> FieldSpec {
        FieldSpec::new(p, k, None).unwrap()
    }

    fn rf(g: &[u64], h: &[u64], f: &FieldSpec) -> RatFun {
        RatFun::new(Poly::new(g.to_vec()), Poly::new(h.to_vec()), f).unwrap()
    }

    #[test]
    fn ratfun_canonicalization() {
        let f2 = gf(2, 1);
        let r = rf(&[0, 1], &[0, 1], &f2); // x/x
        assert_eq!(r, RatFun::constant(1));

        let f5 = gf(5, 1);
        let r = rf(&[1, 1], &[2], &f5); // (x+1)/2
        assert_eq!(r.num(), &Poly::new(vec![3, 3]));
        assert_eq!(r.den(), &Poly::one());

        let r = rf(&[0], &[0, 0, 1], &f5); // 0/x^2
        assert_eq!(r, RatFun::zero());

        assert_eq!(
            RatFun::new(Poly::x(), Poly::zero(), &f5).unwrap_err(),
            FuncFieldError::ZeroDenominator
        );
    }

    #[test]
    fn evaluate_cases() {
        let f2 = gf(2, 1);
        let inv_x = rf(&[1], &[0, 1], &f2);
        assert_eq!(inv_x.evaluate(RationalPlace::Alpha(0), &f2), EvalValue::Inf);

        let f5 = gf(5, 1);
        let r = rf(&[1, 2], &[3, 1], &f5); // (2x+1)/(x+3)
        assert_eq!(r.evaluate(RationalPlace::Infinity, &f5), EvalValue::Fin(2));

        let f3 = gf(3, 1);
        let r = rf(&[0, 1], &[1, 0, 1], &f3); // x/(x^2+1)
        assert_eq!(r.evaluate(RationalPlace::Infinity, &f3), EvalValue::Fin(0));

        let x2 = RatFun::from_poly(Poly::new(vec![0, 0, 1]));
        assert_eq!(x2.evaluate(RationalPlace::Infinity, &f3), EvalValue::Inf);
    }

    #[test]
    fn valuation_examples() {
        let f2 = gf(2, 1);
        let inv_x = rf(&[1], &[0, 1], &f2);
        assert_eq!(inv_x.valuation(&Place::rational(&f2, 0), &f2).unwrap(), -1);

        let x2 = RatFun::from_poly(Poly::new(vec![0, 0, 1]));
        assert_eq!(x2.valuation(&Place::Infinity, &f2).unwrap(), -2);

        let p = Poly::new(vec![1, 1, 1]); // x^2+x+1
        let r = rf(&[1, 1, 1], &[0, 1], &f2);
        assert_eq!(r.valuation(&Place::Finite(p), &f2).unwrap(), 1);

        assert_eq!(
            RatFun::zero().valuation(&Place::Infinity, &f2),
            Err(FuncFieldError::ZeroFunction)
        );
    }

    #[test]
    fn divisors_of_function() {
        let f3 = gf(3, 1);
        let r = rf(&[1, 0, 1], &[0, 1], &f3); // (x^2+1)/x
        let poles = r.pole_divisor(&f3).unwrap();
        assert_eq!(
            poles,
            Divisor::from_terms([(Place::rational(&f3, 0), 1), (Place::Infinity, 1)])
        );
        let zeros = r.zero_divisor(&f3).unwrap();
        assert_eq!(
            zeros,
            Divisor::single(Place::Finite(Poly::new(vec![1, 0, 1])), 1)
        );

        let x = RatFun::from_poly(Poly::x());
        let principal = x.principal_divisor(&f3).unwrap();
        assert_eq!(
            principal,
            Divisor::from_terms([(Place::rational(&f3, 0), 1), (Place::Infinity, -1)])
        );
        assert_eq!(principal.degree(), 0);
    }

    #[test]
    fn divisor_lattice() {
        let f5 = gf(5, 1);
        let p0 = Place::rational(&f5, 0);
        let g = Divisor::from_terms([(p0.clone(), 2), (Place::Infinity, 1)]);
        let d = Divisor::from_terms([(p0.clone(), 1), (Place::Infinity, 3)]);
        let join = g.join(&d);
        let meet = g.meet(&d);
        assert_eq!(join, Divisor::from_terms([(p0.clone(), 2), (Place::Infinity, 3)]));
        assert_eq!(meet, Divisor::from_terms([(p0.clone(), 1), (Place::Infinity, 1)]));
        // degree identity
        assert_eq!(meet.degree() + join.degree(), g.degree() + d.degree());
        assert_eq!(g.join(&g), g);
        assert_eq!(g.meet(&g), g);
    }

    #[test]
    fn rr_member_examples() {
        let f2 = gf(2, 1);
        let p0 = Place::rational(&f2, 0);
        let inv_x = rf(&[1], &[0, 1], &f2);
        assert!(rr_member(&inv_x, &Divisor::single(p0.clone(), 1), &f2));

        let x2 = RatFun::from_poly(Poly::new(vec![0, 0, 1]));
        assert!(!rr_member(&x2, &Divisor::single(Place::Infinity, 1), &f2));

        let d = Divisor::from_terms([(p0, 1), (Place::Infinity, -1)]);
        assert!(rr_member(&inv_x, &d, &f2));
    }

    #[test]
    fn rr_basis_examples() {
        let f3 = gf(3, 1);
        let g = Divisor::single(Place::Infinity, 2);
        let basis = rr_basis(&g, &f3).unwrap();
        assert_eq!(basis.len(), 3);
        assert_eq!(basis[0], RatFun::constant(1));
        assert_eq!(basis[1], RatFun::from_poly(Poly::x()));
        assert_eq!(basis[2], RatFun::from_poly(Poly::new(vec![0, 0, 1])));

        let g = Divisor::from_terms([(Place::rational(&f3, 0), 1), (Place::Infinity, 1)]);
        let basis = rr_basis(&g, &f3).unwrap();
        assert_eq!(basis.len(), 3);
        assert_eq!(basis[0], rf(&[1], &[0, 1], &f3)); // 1/x
        assert_eq!(basis[1], RatFun::constant(1));
        assert_eq!(basis[2], RatFun::from_poly(Poly::x()));

        let f2 = gf(2, 1);
        let p = Poly::new(vec![1, 1, 1]);
        let g = Divisor::single(Place::Finite(p.clone()), 1);
        let basis = rr_basis(&g, &f2).unwrap();
        assert_eq!(basis.len(), 3); // deg G + 1 with deg P = 2
        for b in &basis {
            assert!(rr_member(b, &g, &f2));
        }

        let bad = Divisor::single(Place::Infinity, -1);
        assert_eq!(rr_basis(&bad, &f2).unwrap_err(), FuncFieldError::NotEffective);
    }
}
