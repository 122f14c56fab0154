//! Generalized Reed-Solomon codes and the Galois LCD MDS families built from them.

use std::collections::HashSet;

use thiserror::Error;

use crate::arith::{gcd, pow_mod};
use crate::field::{Elem, Field, FieldError};
use crate::lincode::{CodeError, DistanceCertificate, LcdMethod, LinearCode};
use crate::matrix::{Matrix, MatrixError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrsError {
    #[error("invalid GRS data: {0}")]
    InvalidGrsData(String),
    #[error("no subgroup of order {l} in a field of size {q}")]
    SubgroupOrderInvalid { l: u64, q: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("LCD verification failed: {0}")]
    LcdVerificationFailed(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Evaluation points, column multipliers, dimension, and the optional extra columns:
/// `eta` puts `(η, 0, .., 0)ᵀ` (evaluation at 0) after the GRS block and `infinity`
/// appends `(0, .., 0, 1)ᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsData {
    pub a: Vec<Elem>,
    pub v: Vec<Elem>,
    pub l: usize,
    pub eta: Option<Elem>,
    pub infinity: bool,
}

impl GrsData {
    pub fn new(a: Vec<Elem>, v: Vec<Elem>, l: usize) -> Self {
        GrsData { a, v, l, eta: None, infinity: false }
    }

    pub fn extended(mut self) -> Self {
        self.infinity = true;
        self
    }

    pub fn len(&self) -> usize {
        self.a.len() + usize::from(self.eta.is_some()) + usize::from(self.infinity)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self, field: &Field) -> Result<(), GrsError> {
        let bad = |s: String| Err(GrsError::InvalidGrsData(s));
        if self.a.len() != self.v.len() {
            return bad(format!("{} points but {} multipliers", self.a.len(), self.v.len()));
        }
        if self.l == 0 || self.l > self.a.len() {
            return bad(format!("dimension {} outside [1, {}]", self.l, self.a.len()));
        }
        if let Some(x) = self.a.iter().chain(&self.v).find(|&&x| !field.is_valid(x)) {
            return bad(format!("{x:?} is not an element of {field}"));
        }
        let distinct: HashSet<Elem> = self.a.iter().copied().collect();
        if distinct.len() != self.a.len() {
            return bad("evaluation points are not distinct".into());
        }
        if self.v.iter().any(|x| x.is_zero()) {
            return bad("a column multiplier is zero".into());
        }
        match self.eta {
            Some(eta) if eta.is_zero() || !field.is_valid(eta) => bad("η must be a nonzero element".into()),
            Some(_) if distinct.contains(&Elem::ZERO) => bad("the η column needs 0 outside the points".into()),
            _ => Ok(()),
        }
    }

    /// `G_(a,v)`: row `i` is `(v_1 a_1^i, ..., v_n a_n^i)`.
    pub fn block(&self, field: &Field) -> Matrix {
        let n = self.a.len();
        let mut m = Matrix::zeros(field, self.l, n);
        for c in 0..n {
            let mut x = self.v[c];
            for i in 0..self.l {
                m.set(i, c, x);
                x = field.mul(x, self.a[c]);
            }
        }
        m
    }

    pub fn generator_matrix(&self, field: &Field) -> Result<Matrix, GrsError> {
        self.validate(field)?;
        let mut m = self.block(field);
        if let Some(eta) = self.eta {
            let mut col = Matrix::zeros(field, self.l, 1);
            col.set(0, 0, eta);
            m = m.hstack(&col)?;
        }
        if self.infinity {
            let mut col = Matrix::zeros(field, self.l, 1);
            col.set(self.l - 1, 0, Elem::ONE);
            m = m.hstack(&col)?;
        }
        Ok(m)
    }

    /// The code and its structural certificate `d = n - l + 1`.
    pub fn code(&self, field: &Field) -> Result<(LinearCode, DistanceCertificate), GrsError> {
        let code = LinearCode::from_generator(&self.generator_matrix(field)?)?;
        let cert = code.mds_certificate();
        Ok((code, cert))
    }
}

pub fn grs_code(field: &Field, data: &GrsData) -> Result<(LinearCode, DistanceCertificate), GrsError> {
    GrsData { eta: None, infinity: false, ..data.clone() }.code(field)
}

pub fn extended_grs_code(field: &Field, data: &GrsData) -> Result<(LinearCode, DistanceCertificate), GrsError> {
    GrsData { eta: None, infinity: true, ..data.clone() }.code(field)
}

/// `sum_j (δ β_j)^s` over the subgroup of order `l`.
pub fn power_sum_subgroup(field: &Field, l: u64, delta: Elem, s: u64) -> Result<Elem, GrsError> {
    let q = field.order();
    if l == 0 || (q - 1) % l != 0 {
        return Err(GrsError::SubgroupOrderInvalid { l, q });
    }
    if delta.is_zero() {
        return Err(GrsError::InvalidGrsData("δ must be nonzero".into()));
    }
    let beta = field.pow(field.primitive_element(), (q - 1) / l);
    let mut b = Elem::ONE;
    let mut acc = Elem::ZERO;
    for _ in 0..l {
        acc = field.add(acc, field.pow(field.mul(delta, b), s));
        b = field.mul(b, beta);
    }
    Ok(acc)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Family {
    I,
    III(u8),
}

/// A GRS-based construction together with what was chosen along the way.
#[derive(Clone, Debug)]
pub struct GrsConstruction {
    pub data: GrsData,
    pub family: Family,
    pub k: u32,
    pub alpha: Elem,
    /// Multiplier of the second block (family iii only).
    pub gamma: Option<Elem>,
    /// Candidates tested by the multiplier search (family i only).
    pub candidates: u64,
    pub code: LinearCode,
    pub certificate: DistanceCertificate,
}

fn precondition(ok: bool, what: impl FnOnce() -> String) -> Result<(), GrsError> {
    if ok {
        Ok(())
    } else {
        Err(GrsError::PreconditionViolated(what()))
    }
}

/// Whether the `G_(a,v) G_(a,v)‡` block has exactly one nonzero entry per row and column.
pub fn is_monomial(m: &Matrix) -> bool {
    let rows_ok = (0..m.rows()).all(|i| m.row(i).iter().filter(|x| !x.is_zero()).count() == 1);
    let cols_ok = (0..m.cols()).all(|j| (0..m.rows()).filter(|&i| !m.get(i, j).is_zero()).count() == 1);
    rows_ok && cols_ok
}

/// Points `(β_0..β_{l-1}, αβ_0..αβ_{l-1})` over the order-`l` subgroup and multipliers
/// `(1..1, γ..γ)` with `γ = α^(-(q-1)/(2(p^k+1)) - 1)`.
///
/// The second-block multiplier carries an extra `1/α` compared to
/// `α^(-(q-1)/(2(p^k+1)))`: with the latter, `γ^(1+p^(e-k)) = -1` and the (0,0) entry of
/// the Gram matrix is `l(1 - 1) = 0`, which leaves row 0 empty. With the extra factor
/// the entries are `l(1 - α^(i + p^(e-k) j - 1 - p^(e-k)))` on the monomial pattern,
/// all nonzero because `l ∤ 1 + p^(e-k)`.
pub fn family_iii_data(field: &Field, k: u32, l: u64) -> Result<(GrsData, Elem, Elem), GrsError> {
    let p = field.characteristic();
    let e = field.degree();
    let q = field.order();
    precondition(p % 2 == 1, || format!("p = {p} must be odd"))?;
    precondition(k < e, || format!("k = {k} must be below e = {e}"))?;
    precondition(l >= 1 && (q - 1) % l == 0, || format!("l = {l} must divide q - 1 = {}", q - 1))?;
    let pk = crate::arith::checked_pow(p, k).expect("p^k < q");
    precondition((pk + 1) % l != 0, || format!("l = {l} must not divide p^k + 1 = {}", pk + 1))?;
    precondition((q - 1) % (2 * (pk + 1)) == 0, || {
        format!("2(p^k + 1) = {} must divide q - 1 = {}", 2 * (pk + 1), q - 1)
    })?;
    precondition(l <= (q - 1) / 2, || format!("l = {l} must be at most (q - 1)/2 = {}", (q - 1) / 2))?;

    let alpha = field.primitive_element();
    let beta = field.pow(alpha, (q - 1) / l);
    let mut a = Vec::with_capacity(2 * l as usize);
    let mut b = Elem::ONE;
    for _ in 0..l {
        a.push(b);
        b = field.mul(b, beta);
    }
    let shifted: Vec<Elem> = a.iter().map(|&x| field.mul(alpha, x)).collect();
    a.extend(shifted);
    let base = field.pow(alpha, (q - 1) / (2 * (pk + 1)));
    let gamma = field.inv(field.mul(base, alpha))?;
    let mut v = vec![Elem::ONE; l as usize];
    v.extend(std::iter::repeat_n(gamma, l as usize));
    let data = GrsData::new(a, v, l as usize);
    data.validate(field)?;
    Ok((data, alpha, gamma))
}

/// k-Galois LCD MDS codes of lengths `2l`, `2l + 1` and `2l + 2` (cases 1, 2, 3).
pub fn family_iii(field: &Field, k: u32, l: u64, case: u8) -> Result<GrsConstruction, GrsError> {
    precondition((1..=3).contains(&case), || format!("case = {case} must be 1, 2 or 3"))?;
    let (mut data, alpha, gamma) = family_iii_data(field, k, l)?;
    let block = data.block(field);
    let block_gram = block.mul(&block.galois_conj_transpose(k)?)?;
    if !is_monomial(&block_gram) {
        return Err(GrsError::LcdVerificationFailed(
            "G G‡ of the GRS block is not monomial".into(),
        ));
    }
    match case {
        2 => data.infinity = true,
        3 => {
            // the η column adds ηη^(p^(e-k)) to the (0,0) Gram entry, which must stay nonzero
            let e = field.degree();
            let a00 = block_gram.get(0, 0);
            let eta = field
                .elements()
                .filter(|x| !x.is_zero())
                .find(|&x| !field.add(a00, field.mul(x, field.frobenius(x, e - k))).is_zero())
                .expect("q > 2 leaves a valid η");
            data.eta = Some(eta);
            data.infinity = true;
        }
        _ => {}
    }
    let (code, certificate) = data.code(field)?;
    let code = code.with_provenance(format!("family-iii case={case} q={} k={k} l={l}", field.order()));
    if !code.is_k_galois_lcd(k, LcdMethod::Gram)? {
        return Err(GrsError::LcdVerificationFailed(format!("case {case} Gram matrix is singular")));
    }
    Ok(GrsConstruction {
        data,
        family: Family::III(case),
        k,
        alpha,
        gamma: Some(gamma),
        candidates: 0,
        code,
        certificate,
    })
}

/// `t = (q-1)/gcd(p^(e-k)+1, q-1)`: multipliers `α^i` and `α^(i+t)` have the same
/// `v^(1+p^(e-k))`.
pub fn family_i_period(field: &Field, k: u32) -> u64 {
    let p = field.characteristic();
    let q = field.order();
    let sigma = pow_mod(p, (field.degree() - k) as u64, q - 1);
    (q - 1) / gcd(sigma + 1, q - 1)
}

/// k-Galois LCD MDS `[n, l]` GRS code found by searching column multipliers; requires
/// `l < min(t, n)` and `n <= q + 1`.
pub fn family_i(field: &Field, k: u32, n: usize, l: usize, budget: u64) -> Result<GrsConstruction, GrsError> {
    let t = family_i_period(field, k);
    precondition((l as u64) < t && l < n, || format!("l = {l} must be below min(t, n) = {}", t.min(n as u64)))?;
    family_i_search(field, k, n, l, budget)
}

/// The family i search without the `l < t` guard.
///
/// Multipliers are `(1, α^{i_2}, .., α^{i_m})` with exponents in colexicographic order
/// (`i_2` fastest). Acceptance only depends on each `i_c mod t`, so the first accepted
/// tuple has every exponent below `t` and only those tuples are visited. `budget`
/// counts visited tuples.
pub fn family_i_search(field: &Field, k: u32, n: usize, l: usize, budget: u64) -> Result<GrsConstruction, GrsError> {
    let q = field.order();
    let e = field.degree();
    precondition(k < e, || format!("k = {k} must be below e = {e}"))?;
    precondition(n >= 1 && n as u64 <= q + 1, || format!("n = {n} must lie in [1, q + 1 = {}]", q + 1))?;
    precondition(l <= n, || format!("l = {l} exceeds n = {n}"))?;
    let alpha = field.primitive_element();
    if l == 0 {
        let code = LinearCode::from_generator(&Matrix::zeros(field, 0, n))?
            .with_provenance(format!("family-i q={q} k={k} n={n} l=0"));
        let certificate = code.mds_certificate();
        let data = GrsData::new(Vec::new(), Vec::new(), 0);
        return Ok(GrsConstruction { data, family: Family::I, k, alpha, gamma: None, candidates: 0, code, certificate });
    }
    let infinity = n as u64 == q + 1;
    let points = if infinity { n - 1 } else { n };
    let a: Vec<Elem> = field.elements().take(points).collect();
    let t = family_i_period(field, k);
    let sigma_exp = e - k;

    // T_c[i][j] = a_c^i (a_c^j)^(p^(e-k)); the Gram matrix is sum_c w_c T_c (+ E_{l-1,l-1}).
    let terms: Vec<Vec<Elem>> = a
        .iter()
        .map(|&x| {
            let pw: Vec<Elem> = (0..l).map(|i| field.pow(x, i as u64)).collect();
            let pf: Vec<Elem> = pw.iter().map(|&y| field.frobenius(y, sigma_exp)).collect();
            (0..l * l).map(|idx| field.mul(pw[idx / l], pf[idx % l])).collect()
        })
        .collect();
    let weights: Vec<Elem> = (0..t)
        .map(|i| {
            let v = field.pow(alpha, i);
            field.mul(v, field.frobenius(v, sigma_exp))
        })
        .collect();
    let mut gram = vec![Elem::ZERO; l * l];
    for term in &terms {
        for (g, &x) in gram.iter_mut().zip(term) {
            *g = field.add(*g, x);
        }
    }
    if infinity {
        gram[l * l - 1] = field.add(gram[l * l - 1], Elem::ONE);
    }
    let free = points - 1;
    let mut digits = vec![0u64; free];
    let mut tested = 0u64;
    let space = (t as u128).checked_pow(free as u32);
    loop {
        if tested >= budget {
            return Err(GrsError::SearchExhausted(format!(
                "no LCD multipliers among the first {tested} candidates (q = {q}, k = {k}, n = {n}, l = {l})"
            )));
        }
        tested += 1;
        let det = Matrix::from_vec(field, l, l, gram.clone())?.det()?;
        if !det.is_zero() {
            break;
        }
        // advance; column c + 1 carries digit c
        let mut c = 0;
        loop {
            if c == free {
                let size = space.map_or("more than 2^128".to_string(), |s| s.to_string());
                return Err(GrsError::SearchExhausted(format!(
                    "all {size} reduced multiplier classes fail (q = {q}, k = {k}, n = {n}, l = {l})"
                )));
            }
            let old = weights[digits[c] as usize];
            digits[c] = (digits[c] + 1) % t;
            let new = weights[digits[c] as usize];
            let delta = field.sub(new, old);
            for (g, &x) in gram.iter_mut().zip(&terms[c + 1]) {
                *g = field.add(*g, field.mul(delta, x));
            }
            if digits[c] != 0 {
                break;
            }
            c += 1;
        }
    }
    let mut v = vec![Elem::ONE];
    v.extend(digits.iter().map(|&i| field.pow(alpha, i)));
    let mut data = GrsData::new(a, v, l);
    data.infinity = infinity;
    let (code, certificate) = data.code(field)?;
    let code = code.with_provenance(format!("family-i q={q} k={k} n={n} l={l}"));
    if !code.is_k_galois_lcd(k, LcdMethod::Both)? {
        return Err(GrsError::LcdVerificationFailed("accepted multipliers give a singular Gram matrix".into()));
    }
    Ok(GrsConstruction { data, family: Family::I, k, alpha, gamma: None, candidates: tested, code, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::lincode::DEFAULT_BUDGET;

    fn ints(f: &Field, xs: &[i64]) -> Vec<Elem> {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn grs_examples() {
        let f = make_field(5, 1).unwrap();
        let data = GrsData::new(ints(&f, &[1, 2, 3, 4]), ints(&f, &[1, 1, 1, 1]), 2);
        let (c, cert) = grs_code(&f, &data).unwrap();
        assert_eq!((c.len(), c.dimension()), (4, 2));
        assert_eq!(cert.exact(), Some(3));
        assert_eq!(c.min_distance(DEFAULT_BUDGET).exact(), Some(3));
        let (c, cert) = extended_grs_code(&f, &data).unwrap();
        assert_eq!((c.len(), c.dimension()), (5, 2));
        assert_eq!(cert.exact(), Some(4));
        assert_eq!(c.min_distance(DEFAULT_BUDGET).exact(), Some(4));

        let full = GrsData::new(ints(&f, &[0, 1, 2]), ints(&f, &[1, 1, 1]), 3);
        assert_eq!(grs_code(&f, &full).unwrap().0.min_distance(DEFAULT_BUDGET).exact(), Some(1));
        let rep = GrsData::new(ints(&f, &[0, 1, 2]), ints(&f, &[1, 1, 1]), 1);
        assert_eq!(grs_code(&f, &rep).unwrap().0.min_distance(DEFAULT_BUDGET).exact(), Some(3));
        let (ext, _) = extended_grs_code(&f, &rep).unwrap();
        assert_eq!(ext.generator().row(0), ints(&f, &[1, 1, 1, 1]).as_slice());
    }

    #[test]
    fn invalid_data() {
        let f = make_field(5, 1).unwrap();
        let dup = GrsData::new(ints(&f, &[1, 1]), ints(&f, &[1, 1]), 1);
        assert!(matches!(grs_code(&f, &dup), Err(GrsError::InvalidGrsData(_))));
        let zero_v = GrsData::new(ints(&f, &[1, 2]), ints(&f, &[1, 0]), 1);
        assert!(matches!(grs_code(&f, &zero_v), Err(GrsError::InvalidGrsData(_))));
        let big_l = GrsData::new(ints(&f, &[1, 2]), ints(&f, &[1, 1]), 3);
        assert!(matches!(grs_code(&f, &big_l), Err(GrsError::InvalidGrsData(_))));
    }

    #[test]
    fn power_sum_examples() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(power_sum_subgroup(&f5, 2, Elem::ONE, 0).unwrap(), f5.from_int(2));
        assert_eq!(power_sum_subgroup(&f5, 2, Elem::ONE, 1).unwrap(), Elem::ZERO);
        let f = make_field(5, 2).unwrap();
        let a = f.primitive_element();
        assert_eq!(power_sum_subgroup(&f, 4, a, 4).unwrap(), f.scale(4, f.pow(a, 4)));
        assert!(matches!(power_sum_subgroup(&f, 5, a, 1), Err(GrsError::SubgroupOrderInvalid { .. })));
    }

    #[test]
    fn literal_gamma_gives_singular_gram() {
        let f = make_field(5, 2).unwrap();
        let (k, l, q) = (1u32, 4u64, 25u64);
        let (mut data, alpha, _) = family_iii_data(&f, k, l).unwrap();
        let literal = f.inv(f.pow(alpha, (q - 1) / (2 * (5 + 1)))).unwrap();
        for v in data.v.iter_mut().skip(l as usize) {
            *v = literal;
        }
        let g = data.generator_matrix(&f).unwrap();
        let gram = g.mul(&g.galois_conj_transpose(k).unwrap()).unwrap();
        assert!(gram.row(0).iter().all(|x| x.is_zero()));
        assert!(gram.det().unwrap().is_zero());
    }

    #[test]
    fn family_iii_q25() {
        let f = make_field(5, 2).unwrap();
        for case in 1..=3u8 {
            let out = family_iii(&f, 1, 4, case).unwrap();
            let n = 8 + case as usize - 1;
            assert_eq!((out.code.len(), out.code.dimension()), (n, 4));
            assert!(out.code.is_k_galois_lcd(1, LcdMethod::Both).unwrap());
            // 25^4 = 390625 messages, within the default budget
            assert_eq!(out.code.min_distance(DEFAULT_BUDGET).exact(), Some(n - 3));
            assert_eq!(out.certificate.exact(), Some(n - 3));
        }
        assert!(matches!(family_iii(&f, 1, 3, 1), Err(GrsError::PreconditionViolated(_))));
        assert!(matches!(family_iii(&f, 1, 6, 1), Err(GrsError::PreconditionViolated(_))));
    }

    #[test]
    fn family_i_q25() {
        let f = make_field(5, 2).unwrap();
        assert_eq!(family_i_period(&f, 1), 4);
        let zero = family_i(&f, 1, 26, 0, 1000).unwrap();
        assert_eq!(zero.code.dimension(), 0);
        assert_eq!(zero.code.galois_dual(1).unwrap().dimension(), 26);
        for l in 1..=3 {
            let out = family_i(&f, 1, 26, l, 1_000_000).unwrap();
            assert_eq!((out.code.len(), out.code.dimension()), (26, l));
            assert!(out.data.infinity);
            assert_eq!(out.code.min_distance(DEFAULT_BUDGET).exact(), Some(27 - l));
        }
        assert!(matches!(family_i(&f, 1, 26, 4, 1000), Err(GrsError::PreconditionViolated(_))));
    }

    #[test]
    fn family_i_matches_unreduced_search() {
        // oracle: scan full exponent tuples in colex order over [0, q-1) for a short length
        let f = make_field(5, 2).unwrap();
        let (k, n, l) = (1, 4, 2);
        let out = family_i(&f, k, n, l, 100_000).unwrap();
        let a: Vec<Elem> = f.elements().take(n).collect();
        let alpha = f.primitive_element();
        let mut found = None;
        'scan: for idx in 0..24u64.pow(3) {
            let ex = [idx % 24, idx / 24 % 24, idx / 576];
            let mut v = vec![Elem::ONE];
            v.extend(ex.iter().map(|&i| f.pow(alpha, i)));
            let data = GrsData::new(a.clone(), v.clone(), l);
            let (c, _) = data.code(&f).unwrap();
            if c.is_k_galois_lcd(k, LcdMethod::Hull).unwrap() {
                found = Some(v);
                break 'scan;
            }
        }
        assert_eq!(found.unwrap(), out.data.v);
    }

    #[test]
    fn family_i_beyond_the_period_bound() {
        // l = t = 4 is outside the guarded range but a witness still exists
        let f = make_field(5, 2).unwrap();
        let out = family_i_search(&f, 1, 26, 4, 10_000).unwrap();
        assert_eq!(out.candidates, 22);
        assert!(out.code.is_k_galois_lcd(1, LcdMethod::Both).unwrap());
        assert_eq!(out.code.min_distance(DEFAULT_BUDGET).exact(), Some(23));
    }

    #[test]
    fn family_iii_large_field() {
        let f = make_field(7, 12).unwrap();
        for case in 1..=3u8 {
            let out = family_iii(&f, 2, 48, case).unwrap();
            assert_eq!((out.code.len(), out.code.dimension()), (95 + case as usize, 48));
        }
        let out = family_iii(&f, 3, 342, 2).unwrap();
        assert_eq!((out.code.len(), out.code.dimension()), (685, 342));
        assert_eq!(out.certificate.exact(), Some(344));
    }
}
