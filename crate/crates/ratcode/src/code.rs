//! Construction of the nonlinear codes C_m over Σ = F_q ∪ {∞}: enumeration
//! of L_m, the evaluation map φ, exhaustive and sampled minimum-distance
//! measurement, and the rational AG/MDS codes used for comparison.

use std::collections::HashMap;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::funcfield::{Divisor, EvalValue, Place, RatFun, RationalPlace, rr_basis};
use crate::gf::FieldSpec;
use crate::poly::{Poly, monic_polys_of_degree, polys_up_to_degree};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("m must be positive")]
    MNotPositive,
    #[error("m = {m} violates the hypothesis m <= q/2 for q = {q}")]
    MTooLarge { m: u64, q: u64 },
    #[error("enumeration would produce about {estimate} words, over the limit {limit}")]
    WordLimit { estimate: BigUint, limit: u64 },
    #[error("scan would cover {pairs} pairs, over the limit {limit}")]
    PairLimit { pairs: u128, limit: u64 },
    #[error("codeword length mismatch: {a} vs {b}")]
    LengthMismatch { a: usize, b: usize },
    #[error("function is outside L_m: max(deg num, deg den) exceeds m = {m}")]
    NotInLm { m: u64 },
    #[error("divisor support overlaps the evaluation places")]
    SupportOverlap,
    #[error("divisor is not effective")]
    NotEffective,
    #[error("deg G = {deg} out of range for length {n}")]
    DegreeOutOfRange { deg: i64, n: usize },
    #[error("evaluation places must be distinct")]
    DuplicatePlace,
    #[error("sampling budget must be positive")]
    ZeroBudget,
}

/// Resource guards for enumeration and pairwise scans. Defaults make
/// q = 9, m = 2 reachable while far larger instances degrade to
/// formula-only reporting.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_words: u64,
    pub max_pairs: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_words: 2_000_000, max_pairs: 4_000_000_000 }
    }
}

/// Parameters of a C_m instance. Enumeration of L_m is meaningful for any
/// m ≥ 1; the construction hypothesis m ≤ q/2 is checked by
/// [`construct_code`], which needs the distance guarantee.
#[derive(Debug, Clone)]
pub struct CodeParams {
    field: FieldSpec,
    m: u64,
}

impl CodeParams {
    pub fn new(field: FieldSpec, m: u64) -> Result<CodeParams, CodeError> {
        if m == 0 {
            return Err(CodeError::MNotPositive);
        }
        Ok(CodeParams { field, m })
    }

    pub fn check_distance_hypothesis(&self) -> Result<(), CodeError> {
        if 2 * self.m > self.field.q() {
            return Err(CodeError::MTooLarge { m: self.m, q: self.field.q() });
        }
        Ok(())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.field.q() as usize + 1
    }

    /// Claimed minimum distance q+1-2m (saturating; meaningful under the
    /// hypothesis m ≤ q/2).
    pub fn claimed_distance(&self) -> u64 {
        (self.q() + 1).saturating_sub(2 * self.m)
    }
}

/// A length-(q+1) vector over Σ. Coordinate i < q is the place P_{α_{i+1}}
/// in field enumeration order; coordinate q is P_∞.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    symbols: Vec<EvalValue>,
}

impl Codeword {
    pub fn new(symbols: Vec<EvalValue>) -> Codeword {
        Codeword { symbols }
    }

    pub fn all_inf(n: usize) -> Codeword {
        Codeword { symbols: vec![EvalValue::Inf; n] }
    }

    pub fn symbols(&self) -> &[EvalValue] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn inf_count(&self) -> usize {
        self.symbols.iter().filter(|s| s.is_inf()).count()
    }

    /// Packed form for scan kernels: the element encoding, with ∞ = q.
    pub fn packed(&self, q: u64) -> Vec<u16> {
        self.symbols
            .iter()
            .map(|s| match s {
                EvalValue::Fin(e) => *e as u16,
                EvalValue::Inf => q as u16,
            })
            .collect()
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self
            .symbols
            .iter()
            .map(|s| match s {
                EvalValue::Fin(e) => e.to_string(),
                EvalValue::Inf => "inf".to_string(),
            })
            .collect();
        format!("({})", parts.join(","))
    }
}

/// Where a codeword came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Function(RatFun),
    AllInf,
    /// Loaded from a serialized code file; the generating function is gone.
    External,
}

/// A constructed code: deduplicated codewords with provenance. For C_m the
/// all-∞ word is present exactly once and duplicate codewords arising from
/// distinct functions are recorded, never silently merged.
#[derive(Debug, Clone)]
pub struct Code {
    field: FieldSpec,
    m: Option<u64>,
    n: usize,
    words: Vec<Codeword>,
    provenance: Vec<Provenance>,
    /// (kept function, later function mapping to the same word)
    duplicates: Vec<(RatFun, RatFun)>,
    packed: Vec<u16>,
}

impl Code {
    fn from_words(
        field: FieldSpec,
        m: Option<u64>,
        n: usize,
        words: Vec<Codeword>,
        provenance: Vec<Provenance>,
        duplicates: Vec<(RatFun, RatFun)>,
    ) -> Code {
        let q = field.q();
        let mut packed = Vec::with_capacity(words.len() * n);
        for w in &words {
            packed.extend(w.packed(q));
        }
        Code { field, m, n, words, provenance, duplicates, packed }
    }

    /// Rebuilds a code from deserialized words. All-∞ words keep their
    /// special marking; everything else is tagged as externally loaded.
    pub fn from_loaded(
        field: FieldSpec,
        m: Option<u64>,
        n: usize,
        words: Vec<Codeword>,
    ) -> Code {
        let all_inf = Codeword::all_inf(n);
        let provenance = words
            .iter()
            .map(|w| {
                if *w == all_inf {
                    Provenance::AllInf
                } else {
                    Provenance::External
                }
            })
            .collect();
        Code::from_words(field, m, n, words, provenance, Vec::new())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn m(&self) -> Option<u64> {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Codeword] {
        &self.words
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn duplicates(&self) -> &[(RatFun, RatFun)] {
        &self.duplicates
    }

    pub fn phi_injective(&self) -> bool {
        self.duplicates.is_empty()
    }

    fn packed_word(&self, i: usize) -> &[u16] {
        &self.packed[i * self.n..(i + 1) * self.n]
    }

    /// Maximum number of ∞ symbols over non-special words.
    pub fn max_pole_count(&self) -> usize {
        self.words
            .iter()
            .zip(&self.provenance)
            .filter(|(_, p)| !matches!(p, Provenance::AllInf))
            .map(|(w, _)| w.inf_count())
            .max()
            .unwrap_or(0)
    }

    /// Minimum distance from any non-special word to the all-∞ word.
    pub fn distance_to_allinf(&self) -> usize {
        let all_inf = Codeword::all_inf(self.n);
        self.words
            .iter()
            .zip(&self.provenance)
            .filter(|(_, p)| !matches!(p, Provenance::AllInf))
            .map(|(w, _)| hamming_distance(w, &all_inf).expect("equal length"))
            .min()
            .unwrap_or(self.n)
    }

    /// Exact minimum distance with a witness pair, by a full pairwise scan
    /// with per-pair early exit. The parallel kernel is deterministic: the
    /// witness is the lexicographically smallest achieving index pair
    /// regardless of worker count.
    pub fn min_distance_exact(
        &self,
        limits: &Limits,
    ) -> Result<(usize, (usize, usize)), CodeError> {
        let count = self.words.len();
        let pairs = count as u128 * (count as u128 - 1) / 2;
        if pairs > limits.max_pairs as u128 {
            return Err(CodeError::PairLimit { pairs, limit: limits.max_pairs });
        }
        assert!(count >= 2, "minimum distance needs at least two words");
        use std::sync::atomic::{AtomicUsize, Ordering};
        let bound = AtomicUsize::new(self.n + 1);
        let best = (0..count - 1)
            .into_par_iter()
            .map(|i| {
                let wi = self.packed_word(i);
                let mut local: Option<(usize, usize, usize)> = None;
                let mut prune = bound.load(Ordering::Relaxed);
                for j in i + 1..count {
                    let d = distance_bounded(wi, self.packed_word(j), prune);
                    if d < prune {
                        prune = d;
                        bound.fetch_min(d, Ordering::Relaxed);
                        local = Some((d, i, j));
                    }
                }
                local
            })
            .filter_map(|x| x)
            .min();
        let (d, i, j) = best.expect("at least one pair");
        // `best` may come from a row whose local minimum was pruned by a
        // tighter global bound discovered concurrently; a second pass over
        // rows is unnecessary because pruning only discards pairs with
        // distance >= the global minimum. Recover the lexicographically
        // smallest witness with one deterministic sweep at the final value.
        let witness = self.first_pair_at_distance(d).unwrap_or((i, j));
        Ok((d, witness))
    }

    fn first_pair_at_distance(&self, d: usize) -> Option<(usize, usize)> {
        let count = self.words.len();
        (0..count - 1)
            .into_par_iter()
            .filter_map(|i| {
                let wi = self.packed_word(i);
                (i + 1..count)
                    .find(|&j| distance_bounded(wi, self.packed_word(j), d + 1) == d)
                    .map(|j| (i, j))
            })
            .min()
    }

    /// Seeded pseudo-random pair sampling; returns an upper bound on the
    /// minimum distance. Deterministic given the seed.
    pub fn min_distance_sampled(
        &self,
        budget: u64,
        seed: u64,
    ) -> Result<(usize, (usize, usize)), CodeError> {
        if budget == 0 {
            return Err(CodeError::ZeroBudget);
        }
        let count = self.words.len();
        assert!(count >= 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = self.n + 1;
        let mut witness = (0, 1);
        for _ in 0..budget {
            let i = rng.gen_range(0..count);
            let mut j = rng.gen_range(0..count - 1);
            if j >= i {
                j += 1;
            }
            let (i, j) = (i.min(j), i.max(j));
            let d = distance_bounded(self.packed_word(i), self.packed_word(j), best);
            if d < best {
                best = d;
                witness = (i, j);
            }
        }
        Ok((best, witness))
    }

    /// Exhaustive nearest-codeword decode; ties resolve to the earliest
    /// word in enumeration order and are flagged.
    pub fn decode_nearest(&self, word: &Codeword) -> Result<(usize, usize, bool), CodeError> {
        if word.len() != self.n {
            return Err(CodeError::LengthMismatch { a: word.len(), b: self.n });
        }
        let target = word.packed(self.field.q());
        let mut best = usize::MAX;
        let mut best_idx = 0;
        let mut tie = false;
        for (i, _) in self.words.iter().enumerate() {
            let d = distance_bounded(&target, self.packed_word(i), usize::MAX);
            if d < best {
                best = d;
                best_idx = i;
                tie = false;
            } else if d == best {
                tie = true;
            }
        }
        Ok((best_idx, best, tie))
    }
}

/// Hamming distance over Σ; ∞ compares equal only to ∞.
pub fn hamming_distance(a: &Codeword, b: &Codeword) -> Result<usize, CodeError> {
    if a.len() != b.len() {
        return Err(CodeError::LengthMismatch { a: a.len(), b: b.len() });
    }
    Ok(a.symbols
        .iter()
        .zip(&b.symbols)
        .filter(|(x, y)| x != y)
        .count())
}

/// Packed-kernel distance, aborting once the count reaches `bound`.
/// Must agree with [`hamming_distance`] whenever it returns < bound.
fn distance_bounded(a: &[u16], b: &[u16], bound: usize) -> usize {
    let mut d = 0;
    for (x, y) in a.iter().zip(b) {
        if x != y {
            d += 1;
            if d >= bound {
                return d;
            }
        }
    }
    d
}

/// Enumerates L_m directly in canonical form: for every monic denominator
/// v of degree ≤ m (ascending by encoding) every numerator u of degree
/// ≤ m with gcd(u, v) = 1 (ascending by encoding). The zero function
/// appears once, as 0/1. Every element of L_m exactly once.
pub fn enumerate_lm(params: &CodeParams, limits: &Limits) -> Result<Vec<RatFun>, CodeError> {
    let estimate = lemma32_claimed_size(params.q(), params.m);
    if estimate > BigUint::from(limits.max_words) {
        return Err(CodeError::WordLimit { estimate, limit: limits.max_words });
    }
    let f = params.field();
    let m = params.m as usize;
    let numerators = polys_up_to_degree(f, m);
    let mut out = Vec::new();
    for d in 0..=m {
        for v in monic_polys_of_degree(f, d) {
            for u in &numerators {
                let coprime = if u.is_zero() {
                    v == Poly::one()
                } else {
                    u.gcd(&v, f).expect("not both zero") == Poly::one()
                };
                if coprime {
                    out.push(RatFun::from_canonical_parts(u.clone(), v.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// Diagnostics from the independent L_m oracle.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub functions: Vec<RatFun>,
    /// Representation-pair counts as the size-formula proof tallies the
    /// two classes: monic denominator of degree exactly m, and numerator
    /// of degree exactly m over a shorter monic denominator.
    pub s1_proof_count: BigUint,
    pub s2_proof_count: BigUint,
    /// Distinct canonical functions actually found in each class.
    pub s1_distinct: u64,
    pub s2_distinct: u64,
}

/// Independent oracle for L_m: canonicalize every pair (g, h) with
/// deg g ≤ m, h ≠ 0, deg h ≤ m and deduplicate by canonical form. Guarded
/// by the full pair-scan size q^{2(m+1)}.
pub fn enumerate_lm_oracle(
    params: &CodeParams,
    limits: &Limits,
) -> Result<OracleReport, CodeError> {
    let q = params.q();
    let m = params.m;
    let pair_count = BigUint::from(q).pow(2 * (m as u32 + 1));
    if pair_count > BigUint::from(limits.max_words) {
        return Err(CodeError::WordLimit { estimate: pair_count, limit: limits.max_words });
    }
    let f = params.field();
    let all = polys_up_to_degree(f, m as usize);
    let mut seen: HashMap<RatFun, ()> = HashMap::new();
    let mut functions = Vec::new();
    let mut s1_set: HashMap<RatFun, ()> = HashMap::new();
    let mut s2_set: HashMap<RatFun, ()> = HashMap::new();
    for h in &all {
        if h.is_zero() {
            continue;
        }
        for g in &all {
            let r = RatFun::new(g.clone(), h.clone(), f).expect("h nonzero");
            if h.is_monic() && h.degree() == Some(m as usize) {
                s1_set.entry(r.clone()).or_insert(());
            }
            if h.is_monic()
                && h.degree().map_or(false, |d| d < m as usize)
                && g.degree() == Some(m as usize)
            {
                s2_set.entry(r.clone()).or_insert(());
            }
            if seen.insert(r.clone(), ()).is_none() {
                functions.push(r);
            }
        }
    }
    let qm = BigUint::from(q).pow(m as u32);
    let qm1 = BigUint::from(q).pow(m as u32 + 1);
    let one = BigUint::from(1u32);
    // proof tallies: (q^{m+1}-1)·q^m + 1 and q^m·(q^m - 1)
    let s1_proof_count = (&qm1 - &one) * &qm + &one;
    let s2_proof_count = &qm * (&qm - &one);
    Ok(OracleReport {
        functions,
        s1_proof_count,
        s2_proof_count,
        s1_distinct: s1_set.len() as u64,
        s2_distinct: s2_set.len() as u64,
    })
}

/// The size formula claim for |L_m|: q^{2m+1} + q^{2m} - 2q^m + 1. A claim
/// under test, not a measurement.
pub fn lemma32_claimed_size(q: u64, m: u64) -> BigUint {
    let q = BigUint::from(q);
    let m = m as u32;
    q.pow(2 * m + 1) + q.pow(2 * m) - BigUint::from(2u32) * q.pow(m) + BigUint::from(1u32)
}

/// The evaluation map φ: f ↦ (f(P_{α_1}), …, f(P_{α_q}), f(P_∞)).
pub fn phi(fun: &RatFun, params: &CodeParams) -> Result<Codeword, CodeError> {
    let m = params.m as usize;
    let deg_ok = |p: &Poly| p.degree().map_or(true, |d| d <= m);
    if !deg_ok(fun.num()) || !deg_ok(fun.den()) {
        return Err(CodeError::NotInLm { m: params.m });
    }
    let f = params.field();
    let symbols = RationalPlace::all(f)
        .into_iter()
        .map(|pl| fun.evaluate(pl, f))
        .collect();
    Ok(Codeword::new(symbols))
}

/// Builds C_m: the image of φ over L_m, deduplicated with duplicates
/// recorded, plus the all-∞ word.
pub fn construct_code(params: &CodeParams, limits: &Limits) -> Result<Code, CodeError> {
    params.check_distance_hypothesis()?;
    let functions = enumerate_lm(params, limits)?;
    let n = params.n();
    let mut words: Vec<Codeword> = Vec::with_capacity(functions.len() + 1);
    let mut provenance: Vec<Provenance> = Vec::with_capacity(functions.len() + 1);
    let mut duplicates = Vec::new();
    let mut seen: HashMap<Codeword, usize> = HashMap::with_capacity(functions.len() + 1);
    for fun in functions {
        let w = phi(&fun, params).expect("enumerated function lies in L_m");
        match seen.get(&w) {
            Some(&idx) => {
                if let Provenance::Function(first) = &provenance[idx] {
                    duplicates.push((first.clone(), fun));
                }
            }
            None => {
                seen.insert(w.clone(), words.len());
                words.push(w);
                provenance.push(Provenance::Function(fun));
            }
        }
    }
    let all_inf = Codeword::all_inf(n);
    debug_assert!(!seen.contains_key(&all_inf), "phi image cannot be all poles");
    words.push(all_inf);
    provenance.push(Provenance::AllInf);
    Ok(Code::from_words(
        params.field().clone(),
        Some(params.m),
        n,
        words,
        provenance,
        duplicates,
    ))
}

/// The rational AG code C_L(D, G): evaluations of every F_q-linear
/// combination of the L(G) basis at the distinct rational places of D.
/// All symbols are finite because supp(G) avoids D.
pub fn ag_code(
    field: &FieldSpec,
    places: &[RationalPlace],
    g: &Divisor,
) -> Result<Code, CodeError> {
    if !g.is_effective() {
        return Err(CodeError::NotEffective);
    }
    let n = places.len();
    for i in 0..n {
        for j in i + 1..n {
            if places[i] == places[j] {
                return Err(CodeError::DuplicatePlace);
            }
        }
    }
    let deg = g.degree();
    if deg > n as i64 - 1 {
        return Err(CodeError::DegreeOutOfRange { deg, n });
    }
    for pl in places {
        if g.coeff(&pl.to_place(field)) != 0 {
            return Err(CodeError::SupportOverlap);
        }
    }
    let basis = rr_basis(g, field).expect("g is effective");
    let dim = basis.len();
    let q = field.q();
    let mut words = Vec::new();
    let mut provenance = Vec::new();
    let mut combo = vec![0u64; dim];
    loop {
        // assemble Σ c_i b_i as a single reduced fraction
        let mut fun = RatFun::zero();
        for (c, b) in combo.iter().zip(&basis) {
            if *c == 0 {
                continue;
            }
            let scaled = RatFun::new(b.num().scale(*c, field), b.den().clone(), field)
                .expect("basis denominator nonzero");
            fun = fun.add(&scaled, field);
        }
        let symbols: Vec<EvalValue> = places
            .iter()
            .map(|pl| fun.evaluate(*pl, field))
            .collect();
        debug_assert!(symbols.iter().all(|s| !s.is_inf()));
        words.push(Codeword::new(symbols));
        provenance.push(Provenance::Function(fun));
        // next coefficient vector
        let mut i = 0;
        loop {
            if i == dim {
                let code =
                    Code::from_words(field.clone(), None, n, words, provenance, Vec::new());
                return Ok(code);
            }
            combo[i] += 1;
            if combo[i] < q {
                break;
            }
            combo[i] = 0;
            i += 1;
        }
    }
}

/// The comparison MDS code of Remark-style alphabet extension: the
/// [q+1, 2m+1, q+1-2m] rational AG code with D all q+1 rational places and
/// G = m·P_{p₂} for the smallest monic irreducible quadratic p₂.
pub fn mds_comparison_code(field: &FieldSpec, m: u64) -> Result<Code, CodeError> {
    let q = field.q();
    if 2 * m > q - 1 {
        return Err(CodeError::MTooLarge { m, q });
    }
    let p2 = crate::poly::irreducibles_up_to(field, 2)
        .into_iter()
        .find(|p| p.degree() == Some(2))
        .expect("an irreducible quadratic exists over every finite field");
    let g = Divisor::single(Place::Finite(p2), m as i64);
    ag_code(field, &RationalPlace::all(field), &g)
}
