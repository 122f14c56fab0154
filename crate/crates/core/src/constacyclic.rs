//! Simple-root constacyclic codes through defining sets of roots of `x^n - λ`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{gcd, multiplicative_order, pow_mod};
use crate::field::{extension_field, nth_root_of_unity, Elem, Embedding, Field, FieldError};
use crate::lincode::{weight, CodeError, DistanceCertificate, LcdMethod, LinearCode};
use crate::matrix::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstaError {
    #[error("q = {q} is not coprime to rn = {rn}")]
    NotCoprime { q: u64, rn: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid defining set: {0}")]
    InvalidDefiningSet(String),
    #[error("generator polynomial has a coefficient outside the base field")]
    CoefficientNotInBaseField,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("construction not found: {0}")]
    ConstructionNotFound(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// q-cyclotomic cosets partitioning `1 + rZ_{rn}`, each sorted, ordered by least member.
pub fn cyclotomic_cosets(q: u64, r: u64, n: u64) -> Result<Vec<Vec<u64>>, ConstaError> {
    if r == 0 || n == 0 {
        return Err(ConstaError::InvalidParameters("r and n must be positive".into()));
    }
    let rn = r
        .checked_mul(n)
        .ok_or_else(|| ConstaError::InvalidParameters("rn overflows".into()))?;
    if gcd(q % rn, rn) != 1 && rn > 1 {
        return Err(ConstaError::NotCoprime { q, rn });
    }
    if (q - 1) % r != 0 {
        return Err(ConstaError::InvalidParameters(format!("r = {r} does not divide q - 1")));
    }
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for h in 0..n {
        if seen[h as usize] {
            continue;
        }
        let start = (1 + r * h) % rn;
        let mut coset = Vec::new();
        let mut x = start;
        loop {
            let idx = ((x + rn - 1) % rn / r) as usize;
            seen[idx] = true;
            coset.push(x);
            x = (x as u128 * q as u128 % rn as u128) as u64;
            if x == start {
                break;
            }
        }
        coset.sort_unstable();
        out.push(coset);
    }
    out.sort_unstable_by_key(|c| c[0]);
    Ok(out)
}

/// Length, twist and the root θ used to realize λ-constacyclic codes.
#[derive(Clone, Debug)]
pub struct ConstacyclicSpec {
    field: Field,
    pub n: u64,
    pub r: u64,
    pub lambda: Elem,
    pub m: u32,
    pub theta: Elem,
    embedding: Embedding,
}

impl ConstacyclicSpec {
    pub fn new(field: &Field, n: u64, lambda: Elem) -> Result<Self, ConstaError> {
        let p = field.characteristic();
        let q = field.order();
        if n == 0 || gcd(n, p) != 1 {
            return Err(ConstaError::InvalidParameters(format!("n = {n} must be coprime to p = {p}")));
        }
        let r = field.element_order(lambda)?;
        let rn = r
            .checked_mul(n)
            .ok_or_else(|| ConstaError::InvalidParameters("rn overflows".into()))?;
        let m = multiplicative_order(q % rn, rn).ok_or(ConstaError::NotCoprime { q, rn })?;
        let m = u32::try_from(m).map_err(|_| ConstaError::InvalidParameters("order too large".into()))?;
        let (big, embedding) = extension_field(field, m)?;
        let theta = nth_root_of_unity(&big, rn, embedding.apply(lambda), n)?;
        Ok(ConstacyclicSpec { field: field.clone(), n, r, lambda, m, theta, embedding })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn big_field(&self) -> &Field {
        self.embedding.big()
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn rn(&self) -> u64 {
        self.r * self.n
    }

    pub fn cosets(&self) -> Vec<Vec<u64>> {
        cyclotomic_cosets(self.field.order(), self.r, self.n).expect("checked at construction")
    }

    /// Check a claimed defining set and wrap it.
    pub fn defining_set(&self, elements: impl IntoIterator<Item = u64>) -> Result<DefiningSet, ConstaError> {
        let set: BTreeSet<u64> = elements.into_iter().collect();
        let rn = self.rn();
        if let Some(bad) = set.iter().find(|&&i| i >= rn || (i + rn - 1) % self.r != 0) {
            return Err(ConstaError::InvalidDefiningSet(format!("{bad} is not in 1 + {}Z_{rn}", self.r)));
        }
        let q = self.field.order();
        if let Some(bad) = set
            .iter()
            .find(|&&i| !set.contains(&((i as u128 * q as u128 % rn as u128) as u64)))
        {
            return Err(ConstaError::InvalidDefiningSet(format!("{bad} q mod {rn} is missing")));
        }
        Ok(DefiningSet { elements: set.into_iter().collect(), r: self.r, rn })
    }

    /// The λ-shift `(c_1..c_n) -> (λ c_n, c_1..c_{n-1})`.
    pub fn shift(&self, v: &[Elem]) -> Vec<Elem> {
        lambda_shift(&self.field, self.lambda, v)
    }

    /// `g(x) = prod_{i in P} (x - θ^i)`, low degree first, over the base field.
    pub fn generator_polynomial(&self, set: &DefiningSet) -> Result<Vec<Elem>, ConstaError> {
        let big = self.big_field();
        let mut g = vec![Elem::ONE];
        for &i in &set.elements {
            let root = big.pow(self.theta, i);
            let mut next = vec![Elem::ZERO; g.len() + 1];
            for (t, &c) in g.iter().enumerate() {
                next[t + 1] = big.add(next[t + 1], c);
                next[t] = big.sub(next[t], big.mul(c, root));
            }
            g = next;
        }
        g.iter()
            .map(|&c| self.embedding.preimage(c).ok_or(ConstaError::CoefficientNotInBaseField))
            .collect()
    }

    /// Code generated by the shifts `x^i g(x)`, `i < n - |P|`.
    pub fn code(&self, set: &DefiningSet) -> Result<LinearCode, ConstaError> {
        if set.rn != self.rn() || set.r != self.r {
            return Err(ConstaError::InvalidDefiningSet("built for a different length or twist".into()));
        }
        let g = self.generator_polynomial(set)?;
        let n = self.n as usize;
        let l = n - set.elements.len();
        let m = Matrix::from_fn(&self.field, l, n, |i, j| {
            if j >= i && j - i < g.len() {
                g[j - i]
            } else {
                Elem::ZERO
            }
        });
        let code = if l == 0 {
            LinearCode::from_generator(&Matrix::zeros(&self.field, 0, n))?
        } else {
            LinearCode::from_generator(&m)?
        };
        Ok(code.with_provenance(format!(
            "constacyclic n={} lambda={} P={:?}",
            self.n,
            self.field.format(self.lambda),
            set.elements
        )))
    }

    /// Whether every generator row stays in the code under the λ-shift.
    pub fn is_closed(&self, code: &LinearCode) -> bool {
        is_constacyclic(code, self.lambda)
    }
}

pub fn lambda_shift(field: &Field, lambda: Elem, v: &[Elem]) -> Vec<Elem> {
    let n = v.len();
    let mut out = Vec::with_capacity(n);
    if n > 0 {
        out.push(field.mul(lambda, v[n - 1]));
        out.extend_from_slice(&v[..n - 1]);
    }
    out
}

pub fn is_constacyclic(code: &LinearCode, lambda: Elem) -> bool {
    let g = code.generator();
    (0..g.rows()).all(|i| code.contains(&lambda_shift(code.field(), lambda, g.row(i))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSet {
    elements: Vec<u64>,
    r: u64,
    rn: u64,
}

impl DefiningSet {
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `δ` such that P contains `1 + rh, ..., 1 + r(h + δ - 2)` for some `h`; runs do not wrap.
    pub fn bch_bound(&self) -> usize {
        bch_lower_bound(&self.elements, self.r)
    }
}

pub fn bch_lower_bound(set: &[u64], r: u64) -> usize {
    let mut idx: Vec<u64> = set.iter().map(|&i| (i.saturating_sub(1)) / r).collect();
    idx.sort_unstable();
    idx.dedup();
    let (mut best, mut run) = (0, 0);
    for (t, &h) in idx.iter().enumerate() {
        run = if t > 0 && idx[t - 1] + 1 == h { run + 1 } else { 1 };
        best = best.max(run);
    }
    best + 1
}

/// `λ^(-p^(e-k))`, the twist of the k-Galois dual.
pub fn dual_constacyclic_unit(field: &Field, lambda: Elem, k: u32) -> Result<Elem, ConstaError> {
    let e = field.degree();
    if k >= e {
        return Err(CodeError::ParameterOutOfRange { k, e }.into());
    }
    Ok(field.inv(field.frobenius(lambda, e - k))?)
}

/// LCD test on the defining set: automatic when `λ^(1 + p^(e-k)) != 1`, otherwise
/// `-p^k P = P` modulo rn.
pub fn lcd_test_defining_set(spec: &ConstacyclicSpec, set: &DefiningSet, k: u32) -> Result<bool, ConstaError> {
    let f = spec.field();
    let e = f.degree();
    if k >= e {
        return Err(CodeError::ParameterOutOfRange { k, e }.into());
    }
    let twisted = f.mul(spec.lambda, f.frobenius(spec.lambda, e - k));
    if twisted != Elem::ONE {
        return Ok(true);
    }
    let rn = spec.rn();
    let pk = pow_mod(f.characteristic(), k as u64, rn);
    let image: BTreeSet<u64> = set
        .elements
        .iter()
        .map(|&i| (rn - (pk as u128 * i as u128 % rn as u128) as u64) % rn)
        .collect();
    Ok(image.into_iter().eq(set.elements.iter().copied()))
}

/// Output of a constacyclic family construction.
#[derive(Clone, Debug)]
pub struct ConstacyclicCode {
    pub spec: ConstacyclicSpec,
    pub defining_set: DefiningSet,
    pub code: LinearCode,
    pub certificate: DistanceCertificate,
}

fn bch_certificate(code: &LinearCode, set: &DefiningSet) -> DistanceCertificate {
    let cert = code.bch_certificate(set.bch_bound());
    debug_assert!(cert.witness.as_deref().is_none_or(|w| weight(w) == cert.d_upper));
    cert
}

fn precondition(ok: bool, what: impl FnOnce() -> String) -> Result<(), ConstaError> {
    if ok {
        Ok(())
    } else {
        Err(ConstaError::PreconditionViolated(what()))
    }
}

/// MDS k-Galois LCD λ-constacyclic code of length `(q-1)/r` with distance `d`.
pub fn family_ii(field: &Field, k: u32, r: u64, d: u64) -> Result<ConstacyclicCode, ConstaError> {
    let p = field.characteristic();
    let e = field.degree();
    let q = field.order();
    precondition(p % 2 == 1, || format!("p = {p} must be odd"))?;
    precondition(k < e, || format!("k = {k} must be below e = {e}"))?;
    precondition(r >= 1 && (q - 1) % r == 0, || format!("r = {r} must divide q - 1 = {}", q - 1))?;
    let sigma = pow_mod(p, (e - k) as u64, r);
    precondition((1 + sigma) % r != 0, || format!("r = {r} must not divide 1 + p^(e-k)"))?;
    let n = (q - 1) / r;
    precondition((2..=n).contains(&d), || format!("d = {d} must lie in [2, {n}]"))?;

    let alpha = field.primitive_element();
    let lambda = field.pow(alpha, (q - 1) / r);
    let spec = ConstacyclicSpec::new(field, n, lambda)?;
    let set = spec.defining_set((0..d - 1).map(|j| 1 + r * j))?;
    let code = spec.code(&set)?;
    let code = code.with_provenance(format!("family-ii q={q} k={k} r={r} d={d}"));
    let certificate = bch_certificate(&code, &set);
    Ok(ConstacyclicCode { spec, defining_set: set, code, certificate })
}

/// MDS 1-Galois LCD negacyclic code of length `(p-1)/2` over GF(p^e), found by searching
/// defining sets; `P` must be a run for the BCH bound to reach Singleton, so runs are
/// tried by increasing start.
pub fn family_iv(p: u64, e: u32, l: u64) -> Result<ConstacyclicCode, ConstaError> {
    precondition(crate::arith::is_prime(p) && p % 2 == 1, || format!("p = {p} must be an odd prime"))?;
    precondition(e >= 2, || format!("e = {e} must be at least 2"))?;
    let (max_l, size) = if p % 4 == 1 { ((p - 5) / 4, 2 * l) } else { ((p - 3) / 4, (2 * l).saturating_sub(1)) };
    precondition((1..=max_l).contains(&l), || format!("l = {l} must lie in [1, {max_l}] for p = {p}"))?;

    let field = crate::field::make_field(p, e)?;
    let n = (p - 1) / 2;
    let spec = ConstacyclicSpec::new(&field, n, field.from_int(-1))?;
    let k = 1;
    let r = spec.r;
    let starts: Vec<u64> = (0..=n - size).collect();
    let found = starts
        .par_iter()
        .map(|&h| -> Result<Option<DefiningSet>, ConstaError> {
            let Ok(set) = spec.defining_set((h..h + size).map(|j| 1 + r * j)) else {
                return Ok(None);
            };
            if set.bch_bound() as u64 != size + 1 || !lcd_test_defining_set(&spec, &set, k)? {
                return Ok(None);
            }
            Ok(Some(set))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .next();
    let Some(set) = found else {
        return Err(ConstaError::ConstructionNotFound(format!(
            "no negacyclic defining set of size {size} for p = {p}, e = {e}"
        )));
    };
    let code = spec.code(&set)?.with_provenance(format!("family-iv p={p} e={e} l={l}"));
    debug_assert!(code.is_k_galois_lcd(k, LcdMethod::Gram)?);
    let certificate = bch_certificate(&code, &set);
    Ok(ConstacyclicCode { spec, defining_set: set, code, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::lincode::DistanceMethod;

    #[test]
    fn coset_examples() {
        let c = cyclotomic_cosets(2, 1, 7).unwrap();
        assert_eq!(c, vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
        let c = cyclotomic_cosets(343, 3, 114).unwrap();
        assert_eq!(c.len(), 114);
        assert!(c.iter().all(|s| s.len() == 1));
        assert_eq!(c[1], vec![4]);
        assert_eq!(c[113], vec![340]);
        assert_eq!(
            cyclotomic_cosets(5, 1, 10).unwrap_err(),
            ConstaError::NotCoprime { q: 5, rn: 10 }
        );
        // oracle: orbit closure by direct multiplication
        for (q, r, n) in [(9, 2, 5), (25, 4, 3), (4, 1, 9), (7, 3, 4)] {
            let rn = r * n;
            let cs = cyclotomic_cosets(q, r, n).unwrap();
            assert_eq!(cs.iter().map(Vec::len).sum::<usize>(), n as usize);
            for s in &cs {
                for &x in s {
                    assert_eq!(x % r, 1 % r);
                    assert!(s.contains(&(x * q % rn)));
                }
            }
        }
    }

    #[test]
    fn defining_set_extremes() {
        let f = make_field(5, 1).unwrap();
        let spec = ConstacyclicSpec::new(&f, 4, f.from_int(-1)).unwrap();
        let empty = spec.defining_set([]).unwrap();
        let c = spec.code(&empty).unwrap();
        assert_eq!(c.dimension(), 4);
        assert_eq!(spec.generator_polynomial(&empty).unwrap(), vec![Elem::ONE]);
        let all = spec.defining_set([1, 3, 5, 7]).unwrap();
        assert_eq!(spec.code(&all).unwrap().dimension(), 0);
        let g = spec.generator_polynomial(&all).unwrap();
        // x^4 + 1
        let expect: Vec<Elem> = [1, 0, 0, 0, 1].iter().map(|&c| f.from_int(c)).collect();
        assert_eq!(g, expect);
        assert!(spec.defining_set([2]).is_err());
    }

    #[test]
    fn extension_roots_give_base_field_generators() {
        let f = make_field(3, 2).unwrap();
        let spec = ConstacyclicSpec::new(&f, 5, f.from_int(-1)).unwrap();
        assert_eq!(spec.m, 2);
        let big = spec.big_field();
        assert_eq!(big.pow(spec.theta, 5), big.from_int(-1));
        for coset in spec.cosets() {
            let set = spec.defining_set(coset.clone()).unwrap();
            let c = spec.code(&set).unwrap();
            assert_eq!(c.dimension(), 5 - coset.len());
            assert!(spec.is_closed(&c));
        }
    }

    #[test]
    fn bch_examples() {
        assert_eq!(bch_lower_bound(&[], 3), 1);
        assert_eq!(bch_lower_bound(&[1, 4], 3), 3);
        assert_eq!(bch_lower_bound(&[1, 4, 7, 13], 3), 4);
        // no wraparound: 10 and 1 are not consecutive for rn = 12
        assert_eq!(bch_lower_bound(&[1, 10], 3), 2);
    }

    #[test]
    fn dual_unit_examples() {
        let f = make_field(5, 2).unwrap();
        assert_eq!(dual_constacyclic_unit(&f, Elem::ONE, 1).unwrap(), Elem::ONE);
        let m1 = f.from_int(-1);
        assert_eq!(dual_constacyclic_unit(&f, m1, 1).unwrap(), m1);
        let lam = f.pow(f.primitive_element(), 6);
        assert_eq!(f.element_order(lam).unwrap(), 4);
        assert_eq!(dual_constacyclic_unit(&f, lam, 1).unwrap(), f.pow(lam, 3));
    }

    #[test]
    fn family_ii_q343() {
        let f = make_field(7, 3).unwrap();
        for (r, n) in [(3, 114), (6, 57)] {
            for d in [2, 3, 7, 12] {
                let out = family_ii(&f, 1, r, d).unwrap();
                assert_eq!(out.code.len() as u64, n);
                assert_eq!(out.code.dimension() as u64, n + 1 - d);
                assert_eq!(out.certificate.method, DistanceMethod::BchSingleton);
                assert_eq!(out.certificate.exact(), Some(d as usize));
                assert!(out.code.is_k_galois_lcd(1, LcdMethod::Gram).unwrap());
                assert!(out.spec.is_closed(&out.code));
            }
        }
        let set = family_ii(&f, 1, 3, 3).unwrap().defining_set;
        assert_eq!(set.elements(), &[1, 4]);
        assert!(matches!(family_ii(&f, 1, 2, 3), Err(ConstaError::PreconditionViolated(_))));
        assert!(matches!(family_ii(&f, 1, 3, 115), Err(ConstaError::PreconditionViolated(_))));
    }

    #[test]
    fn family_iv_small_primes() {
        for (p, l, n, dim, d, set) in
            [(13, 1, 6, 4, 3, vec![5, 7]), (13, 2, 6, 2, 5, vec![3, 5, 7, 9]), (11, 1, 5, 4, 2, vec![5])]
        {
            let out = family_iv(p, 2, l).unwrap();
            assert_eq!(out.defining_set.elements(), set.as_slice());
            assert_eq!((out.code.len(), out.code.dimension()), (n, dim));
            assert_eq!(out.certificate.exact(), Some(d));
            // 169^4 classes fit in a raised budget
            assert_eq!(out.code.min_distance(1_000_000_000).exact(), Some(d));
            assert!(out.code.is_k_galois_lcd(1, LcdMethod::Both).unwrap());
        }
        assert!(matches!(family_iv(13, 2, 3), Err(ConstaError::PreconditionViolated(_))));
        assert!(matches!(family_iv(13, 1, 1), Err(ConstaError::PreconditionViolated(_))));
    }

    #[test]
    fn asymmetric_negacyclic_set_is_not_lcd() {
        let f = make_field(3, 2).unwrap();
        let spec = ConstacyclicSpec::new(&f, 4, f.from_int(-1)).unwrap();
        let cosets = spec.cosets();
        let mut saw_false = false;
        for c in cosets {
            let set = spec.defining_set(c).unwrap();
            let by_set = lcd_test_defining_set(&spec, &set, 1).unwrap();
            let code = spec.code(&set).unwrap();
            assert_eq!(by_set, code.hull_dimension(1).unwrap() == 0);
            saw_false |= !by_set;
        }
        assert!(saw_false);
    }
}
