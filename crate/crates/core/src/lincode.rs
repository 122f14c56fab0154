//! Linear codes, Galois duals, hulls and minimum distance certificates.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::field::{Elem, Field};
use crate::matrix::{Matrix, MatrixError};

/// Default limit on `q^l` for exhaustive distance computation.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Random codewords drawn when the distance can only be bounded.
pub const DEFAULT_SAMPLES: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("generator matrix has no columns")]
    EmptyMatrix,
    #[error("Galois parameter {k} out of range for extension degree {e}")]
    ParameterOutOfRange { k: u32, e: u32 },
    #[error("gram test says LCD = {gram}, hull test says LCD = {hull}")]
    MethodDisagreement { gram: bool, hull: bool },
    #[error("distance is only bounded: {lower} <= d <= {upper}")]
    InexactDistance { lower: usize, upper: usize },
    #[error("distance certificate conflict: {0}")]
    CertificateMismatch(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DistanceMethod {
    Exhaustive,
    MdsStructural,
    BchSingleton,
    BoundsOnly,
}

impl DistanceMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DistanceMethod::Exhaustive => "exhaustive",
            DistanceMethod::MdsStructural => "mds-structural",
            DistanceMethod::BchSingleton => "bch-singleton",
            DistanceMethod::BoundsOnly => "bounds-only",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::Exhaustive, Self::MdsStructural, Self::BchSingleton, Self::BoundsOnly]
            .into_iter()
            .find(|m| m.as_str() == s)
    }
}

impl fmt::Display for DistanceMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceCertificate {
    pub method: DistanceMethod,
    pub d_lower: usize,
    pub d_upper: usize,
    pub witness: Option<Vec<Elem>>,
}

impl DistanceCertificate {
    pub fn is_exact(&self) -> bool {
        self.d_lower == self.d_upper
    }

    /// Exact distance, if proven.
    pub fn exact(&self) -> Option<usize> {
        self.is_exact().then_some(self.d_lower)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LcdMethod {
    Gram,
    Hull,
    Both,
}

#[derive(Clone, Debug)]
pub struct DistanceOptions {
    pub budget: u64,
    pub samples: usize,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions { budget: DEFAULT_BUDGET, samples: DEFAULT_SAMPLES, seed: 0, parallel: true }
    }
}

impl DistanceOptions {
    pub fn with_budget(budget: u64) -> Self {
        DistanceOptions { budget, ..Default::default() }
    }
}

pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Field,
    n: usize,
    generator: Matrix,
    parity_check: Matrix,
    provenance: String,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.generator == other.generator
    }
}

impl LinearCode {
    /// Code spanned by the rows of `m`. The stored generator is the RREF row basis.
    pub fn from_generator(m: &Matrix) -> Result<Self, CodeError> {
        if m.cols() == 0 {
            return Err(CodeError::EmptyMatrix);
        }
        let r = m.rref();
        let rows: Vec<usize> = (0..r.rank).collect();
        let generator = r.matrix.select_rows(&rows);
        let parity_check = generator.right_kernel();
        Ok(LinearCode {
            field: m.field().clone(),
            n: m.cols(),
            generator,
            parity_check,
            provenance: String::new(),
        })
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.parity_check
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    fn check_k(&self, k: u32) -> Result<(), CodeError> {
        let e = self.field.degree();
        if k >= e {
            Err(CodeError::ParameterOutOfRange { k, e })
        } else {
            Ok(())
        }
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        word.len() == self.n
            && (0..self.parity_check.rows()).all(|i| {
                let row = self.parity_check.row(i);
                row.iter()
                    .zip(word)
                    .fold(Elem::ZERO, |acc, (&h, &w)| self.field.add(acc, self.field.mul(h, w)))
                    .is_zero()
            })
    }

    /// Codeword `message · G`.
    pub fn encode(&self, message: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.n];
        for (i, &m) in message.iter().enumerate().take(self.dimension()) {
            if m.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.generator.row(i)) {
                *o = f.add(*o, f.mul(m, g));
            }
        }
        out
    }

    /// `C^(p^j)`: the code generated by the entrywise `p^j` power of `G`.
    pub fn galois_power_code(&self, j: u32) -> Result<LinearCode, CodeError> {
        self.check_k(j)?;
        LinearCode::from_generator(&self.generator.frobenius(j))
    }

    /// The k-Galois dual, as the Euclidean dual of `C^(p^(e-k))`.
    pub fn galois_dual(&self, k: u32) -> Result<LinearCode, CodeError> {
        self.check_k(k)?;
        let e = self.field.degree();
        let kernel = self.generator.frobenius(e - k).right_kernel();
        LinearCode::from_generator(&kernel)
    }

    /// `G · G‡` at parameter k.
    pub fn gram(&self, k: u32) -> Result<Matrix, CodeError> {
        self.check_k(k)?;
        Ok(self.generator.mul(&self.generator.galois_conj_transpose(k)?)?)
    }

    /// `dim(C ∩ C^{⊥k})` from the rank of the stacked generators.
    pub fn hull_dimension(&self, k: u32) -> Result<usize, CodeError> {
        let dual = self.galois_dual(k)?;
        let stacked = self.generator.vstack(&dual.generator)?;
        Ok(self.dimension() + dual.dimension() - stacked.rank())
    }

    pub fn is_k_galois_lcd(&self, k: u32, method: LcdMethod) -> Result<bool, CodeError> {
        let gram = || -> Result<bool, CodeError> { Ok(!self.gram(k)?.det()?.is_zero()) };
        let hull = || -> Result<bool, CodeError> { Ok(self.hull_dimension(k)? == 0) };
        match method {
            LcdMethod::Gram => gram(),
            LcdMethod::Hull => hull(),
            LcdMethod::Both => {
                let (g, h) = (gram()?, hull()?);
                if g != h {
                    return Err(CodeError::MethodDisagreement { gram: g, hull: h });
                }
                Ok(g)
            }
        }
    }

    /// Lightest row of the RREF generator; its weight never exceeds `n - l + 1`.
    pub fn lightest_generator_row(&self) -> Option<Vec<Elem>> {
        (0..self.dimension())
            .map(|i| self.generator.row(i).to_vec())
            .min_by_key(|r| weight(r))
    }

    /// Certificate `d = n - l + 1` for a code known to be MDS by construction.
    pub fn mds_certificate(&self) -> DistanceCertificate {
        let d = self.n + 1 - self.dimension();
        DistanceCertificate {
            method: DistanceMethod::MdsStructural,
            d_lower: d,
            d_upper: d,
            witness: self.lightest_generator_row(),
        }
    }

    /// Certificate from a designed lower bound and the lightest generator row.
    pub fn bch_certificate(&self, designed: usize) -> DistanceCertificate {
        let witness = self.lightest_generator_row();
        let upper = witness.as_deref().map_or(self.n + 1, weight);
        DistanceCertificate {
            method: DistanceMethod::BchSingleton,
            d_lower: designed.min(upper),
            d_upper: upper,
            witness,
        }
    }

    pub fn exhaustive_feasible(&self, budget: u64) -> bool {
        let q = self.field.order() as u128;
        let mut size = 1u128;
        for _ in 0..self.dimension() {
            size = size.saturating_mul(q);
            if size > budget as u128 {
                return false;
            }
        }
        true
    }

    pub fn min_distance(&self, budget: u64) -> DistanceCertificate {
        self.certify_distance(&DistanceOptions::with_budget(budget), None)
            .expect("no structural certificate to conflict with")
    }

    /// Exhaustive within budget; otherwise the supplied structural certificate, or
    /// sampled bounds. A structural certificate that contradicts an exhaustive result
    /// is an error.
    pub fn certify_distance(
        &self,
        opts: &DistanceOptions,
        structural: Option<DistanceCertificate>,
    ) -> Result<DistanceCertificate, CodeError> {
        if self.exhaustive_feasible(opts.budget) {
            let cert = self.exhaustive_distance(opts.parallel);
            if let Some(s) = &structural {
                if cert.d_lower < s.d_lower || cert.d_lower > s.d_upper {
                    return Err(CodeError::CertificateMismatch(format!(
                        "exhaustive d = {} but {} claims {}..={}",
                        cert.d_lower, s.method, s.d_lower, s.d_upper
                    )));
                }
            }
            return Ok(cert);
        }
        if let Some(s) = structural {
            return Ok(s);
        }
        Ok(self.sampled_bounds(opts.samples, opts.seed))
    }

    /// Exact distance by enumerating one codeword per projective message class.
    pub fn exhaustive_distance(&self, parallel: bool) -> DistanceCertificate {
        let l = self.dimension();
        if l == 0 {
            return DistanceCertificate {
                method: DistanceMethod::Exhaustive,
                d_lower: self.n + 1,
                d_upper: self.n + 1,
                witness: None,
            };
        }
        let search = ClassSearch::new(self);
        let tasks = search.tasks();
        let run = |(idx, task): (usize, &Task)| {
            let (w, v) = search.run(task);
            (w, idx, v)
        };
        let best = if parallel && tasks.len() > 1 {
            tasks.par_iter().enumerate().map(run).min_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)))
        } else {
            tasks.iter().enumerate().map(run).min_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)))
        };
        let (d, _, witness) = best.expect("at least one class");
        DistanceCertificate {
            method: DistanceMethod::Exhaustive,
            d_lower: d,
            d_upper: d,
            witness: Some(witness),
        }
    }

    /// Upper bound from seeded random codewords and the generator rows.
    pub fn sampled_bounds(&self, samples: usize, seed: u64) -> DistanceCertificate {
        let l = self.dimension();
        if l == 0 {
            return self.exhaustive_distance(false);
        }
        let mut best = self.lightest_generator_row().expect("l > 0");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = self.field.order();
        for _ in 0..samples {
            let msg: Vec<Elem> = (0..l).map(|_| self.field.from_index(rng.gen_range(0..q))).collect();
            if msg.iter().all(|m| m.is_zero()) {
                continue;
            }
            let c = self.encode(&msg);
            if weight(&c) < weight(&best) {
                best = c;
            }
        }
        DistanceCertificate {
            method: DistanceMethod::BoundsOnly,
            d_lower: 1,
            d_upper: weight(&best),
            witness: Some(best),
        }
    }

    /// `d = n - l + 1`, given an exact certificate.
    pub fn is_mds(&self, cert: &DistanceCertificate) -> Result<bool, CodeError> {
        match cert.exact() {
            Some(d) => Ok(d == self.n + 1 - self.dimension()),
            None => Err(CodeError::InexactDistance { lower: cert.d_lower, upper: cert.d_upper }),
        }
    }
}

/// One slice of the class enumeration: leading row `lead` has coefficient 1, and
/// optionally the next coefficient is pinned.
struct Task {
    lead: usize,
    pinned: Option<Elem>,
}

/// Projective class enumeration. Classes are messages whose first nonzero entry is 1.
/// The final coefficient is never enumerated: for a fixed prefix the best choice is the
/// most common value of `-p_j / g_j` over the last row's support.
struct ClassSearch<'a> {
    field: &'a Field,
    rows: Vec<Vec<Elem>>,
    elements: Vec<Elem>,
    last_inv: Vec<Option<Elem>>,
}

impl<'a> ClassSearch<'a> {
    fn new(code: &'a LinearCode) -> Self {
        let field = code.field();
        let rows = code.generator.row_vecs();
        let last_inv = rows
            .last()
            .expect("l > 0")
            .iter()
            .map(|&g| field.inv(g).ok())
            .collect();
        let elements = if rows.len() > 2 { field.elements().collect() } else { Vec::new() };
        ClassSearch { field, rows, elements, last_inv }
    }

    fn tasks(&self) -> Vec<Task> {
        let last = self.rows.len() - 1;
        let mut out = Vec::new();
        for lead in 0..=last {
            if lead + 1 < last {
                out.extend(self.elements.iter().map(|&a| Task { lead, pinned: Some(a) }));
            } else {
                out.push(Task { lead, pinned: None });
            }
        }
        out
    }

    fn axpy(&self, dst: &mut [Elem], base: &[Elem], a: Elem, row: &[Elem]) {
        for ((d, &b), &g) in dst.iter_mut().zip(base).zip(row) {
            *d = if a.is_zero() || g.is_zero() { b } else { self.field.add(b, self.field.mul(a, g)) };
        }
    }

    fn run(&self, task: &Task) -> (usize, Vec<Elem>) {
        let last = self.rows.len() - 1;
        let mut start = self.rows[task.lead].clone();
        if task.lead == last {
            return (weight(&start), start);
        }
        let mut level = task.lead + 1;
        if let Some(a) = task.pinned {
            let base = start.clone();
            self.axpy(&mut start, &base, a, &self.rows[level]);
            level += 1;
        }
        // partials[i] holds the prefix sum after choosing coefficients up to level + i - 1
        let depth = last - level;
        let n = start.len();
        let mut partials = vec![start];
        partials.extend((0..depth).map(|_| vec![Elem::ZERO; n]));
        let mut digits = vec![0usize; depth];
        let mut best: Option<(usize, Vec<Elem>)> = None;
        let mut scratch = Vec::with_capacity(n);
        // fill levels from `from` onward using the current digits
        let refill = |partials: &mut Vec<Vec<Elem>>, digits: &[usize], from: usize| {
            for i in from..depth {
                let (done, rest) = partials.split_at_mut(i + 1);
                self.axpy(&mut rest[0], &done[i], self.elements[digits[i]], &self.rows[level + i]);
            }
        };
        refill(&mut partials, &digits, 0);
        loop {
            let (w, v) = self.finish(&partials[depth], &mut scratch);
            if best.as_ref().is_none_or(|b| w < b.0) {
                best = Some((w, v));
            }
            // advance the mixed-radix counter, last digit fastest
            let mut i = depth;
            loop {
                if i == 0 {
                    return best.expect("nonempty");
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < self.elements.len() {
                    break;
                }
                digits[i] = 0;
            }
            refill(&mut partials, &digits, i);
        }
    }

    /// Best completion of prefix `p` by the last row.
    fn finish(&self, p: &[Elem], scratch: &mut Vec<Elem>) -> (usize, Vec<Elem>) {
        let f = self.field;
        let last = self.rows.last().expect("l > 0");
        scratch.clear();
        let mut fixed = 0;
        for (j, &x) in p.iter().enumerate() {
            match self.last_inv[j] {
                Some(inv) => scratch.push(f.neg(f.mul(x, inv))),
                None => fixed += usize::from(!x.is_zero()),
            }
        }
        scratch.sort_unstable();
        let (mut a, mut count) = (Elem::ZERO, 0);
        let mut i = 0;
        while i < scratch.len() {
            let mut j = i;
            while j < scratch.len() && scratch[j] == scratch[i] {
                j += 1;
            }
            if j - i > count {
                count = j - i;
                a = scratch[i];
            }
            i = j;
        }
        let mut v = p.to_vec();
        self.axpy(&mut v, p, a, last);
        (fixed + scratch.len() - count, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use std::collections::HashSet;

    fn code(f: &Field, rows: &[&[i64]]) -> LinearCode {
        let n = rows[0].len();
        let m: Vec<Vec<Elem>> = rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect();
        LinearCode::from_generator(&Matrix::from_rows(f, n, &m).unwrap()).unwrap()
    }

    /// All codewords, by full message enumeration.
    fn words(c: &LinearCode) -> Vec<Vec<Elem>> {
        let q = c.field().order();
        let l = c.dimension() as u32;
        (0..q.pow(l))
            .map(|mut t| {
                let msg: Vec<Elem> = (0..l)
                    .map(|_| {
                        let d = t % q;
                        t /= q;
                        c.field().from_index(d)
                    })
                    .collect();
                c.encode(&msg)
            })
            .collect()
    }

    fn brute_distance(c: &LinearCode) -> usize {
        words(c).iter().map(|w| weight(w)).filter(|&w| w > 0).min().unwrap_or(c.len() + 1)
    }

    #[test]
    fn from_generator_examples() {
        let f = make_field(5, 1).unwrap();
        let full = LinearCode::from_generator(&Matrix::identity(&f, 4)).unwrap();
        assert_eq!((full.len(), full.dimension()), (4, 4));
        assert_eq!(full.parity_check().rows(), 0);
        let rep = code(&f, &[&[1, 1, 1, 1]]);
        assert_eq!(rep.dimension(), 1);
        let prop = code(&f, &[&[1, 2, 3], &[2, 4, 1]]);
        assert_eq!(prop.dimension(), 1);
        assert!(prop.generator().mul(&prop.parity_check().transpose()).unwrap().is_zero());
        assert_eq!(
            LinearCode::from_generator(&Matrix::zeros(&f, 2, 0)).unwrap_err(),
            CodeError::EmptyMatrix
        );
    }

    #[test]
    fn power_code_preserves_weights() {
        let f = make_field(3, 2).unwrap();
        let a = f.generator();
        let pts: Vec<Elem> = [0, 1, 2, 3].iter().map(|&i| f.pow(a, i)).collect();
        let g = Matrix::from_fn(&f, 2, 4, |i, j| f.pow(pts[j], i as u64));
        let c = LinearCode::from_generator(&g).unwrap();
        let c1 = c.galois_power_code(1).unwrap();
        let mut w0: Vec<usize> = words(&c).iter().map(|w| weight(w)).collect();
        let mut w1: Vec<usize> = words(&c1).iter().map(|w| weight(w)).collect();
        w0.sort();
        w1.sort();
        assert_eq!(w0.len(), 81);
        assert_eq!(w0, w1);
        assert_eq!(c.galois_power_code(0).unwrap(), c);
        let p = make_field(7, 1).unwrap();
        let c = code(&p, &[&[1, 2, 3]]);
        assert_eq!(c.galois_power_code(0).unwrap(), c);
    }

    #[test]
    fn dual_examples() {
        let f = make_field(5, 1).unwrap();
        let full = LinearCode::from_generator(&Matrix::identity(&f, 3)).unwrap();
        assert_eq!(full.galois_dual(0).unwrap().dimension(), 0);
        let rep = code(&f, &[&[1, 1, 1, 1]]);
        let d = rep.galois_dual(0).unwrap();
        assert_eq!(d.dimension(), 3);
        for w in words(&d) {
            assert!(w.iter().fold(Elem::ZERO, |s, &x| f.add(s, x)).is_zero());
        }

        let f9 = make_field(3, 2).unwrap();
        let a = f9.generator();
        let c = LinearCode::from_generator(&Matrix::from_rows(&f9, 2, &[vec![Elem::ONE, a]]).unwrap())
            .unwrap();
        let d = c.galois_dual(1).unwrap();
        assert_eq!(d.dimension(), 1);
        // oracle: pair every pair of codewords under the Galois form with exponent 3
        let dw = words(&d);
        for x in words(&c) {
            for y in &dw {
                let s = x
                    .iter()
                    .zip(y)
                    .fold(Elem::ZERO, |s, (&xi, &yi)| f9.add(s, f9.mul(xi, f9.pow(yi, 3))));
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn hull_examples() {
        let f = make_field(5, 1).unwrap();
        let full = LinearCode::from_generator(&Matrix::identity(&f, 3)).unwrap();
        assert_eq!(full.hull_dimension(0).unwrap(), 0);
        let so = code(&f, &[&[1, 2]]);
        assert_eq!(so.hull_dimension(0).unwrap(), 1);
        assert!(!so.is_k_galois_lcd(0, LcdMethod::Both).unwrap());
        assert!(full.is_k_galois_lcd(0, LcdMethod::Both).unwrap());
    }

    #[test]
    fn hull_matches_enumeration_over_gf4() {
        let f = make_field(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = Matrix::from_fn(&f, 3, 6, |_, _| f.from_index(rng.gen_range(0..4)));
            let c = LinearCode::from_generator(&g).unwrap();
            let d = c.galois_dual(1).unwrap();
            let a: HashSet<Vec<Elem>> = words(&c).into_iter().collect();
            let meet = words(&d).into_iter().filter(|w| a.contains(w)).count();
            assert_eq!(meet, 4usize.pow(c.hull_dimension(1).unwrap() as u32));
        }
    }

    #[test]
    fn distance_examples() {
        let f = make_field(5, 1).unwrap();
        let rep = code(&f, &[&[1, 1, 1, 1]]);
        let cert = rep.min_distance(DEFAULT_BUDGET);
        assert_eq!(cert.exact(), Some(4));
        assert_eq!(cert.witness.unwrap(), vec![Elem::ONE; 4]);
        let full = LinearCode::from_generator(&Matrix::identity(&f, 4)).unwrap();
        assert_eq!(full.min_distance(DEFAULT_BUDGET).exact(), Some(1));
        assert!(full.is_mds(&full.min_distance(DEFAULT_BUDGET)).unwrap());
        // GRS [4,2] with a = (1,2,3,4), v = 1: rows are 1 and a
        let grs = code(&f, &[&[1, 1, 1, 1], &[1, 2, 3, 4]]);
        let cert = grs.min_distance(DEFAULT_BUDGET);
        assert_eq!(cert.exact(), Some(3));
        assert_eq!(brute_distance(&grs), 3);
        assert!(grs.is_mds(&cert).unwrap());
        let w = cert.witness.unwrap();
        assert_eq!(weight(&w), 3);
        assert!(grs.contains(&w));
    }

    #[test]
    fn exhaustive_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (p, e) in [(2, 2), (5, 1), (3, 2), (2, 3)] {
            let f = make_field(p, e).unwrap();
            for _ in 0..25 {
                let l = rng.gen_range(1..=4);
                let n = rng.gen_range(l..=7);
                let g = Matrix::from_fn(&f, l, n, |_, _| f.from_index(rng.gen_range(0..f.order())));
                let c = LinearCode::from_generator(&g).unwrap();
                let cert = c.exhaustive_distance(false);
                assert_eq!(cert.exact(), Some(brute_distance(&c)));
                assert_eq!(c.exhaustive_distance(true), cert);
                if let Some(w) = cert.witness {
                    assert!(c.contains(&w));
                    assert_eq!(weight(&w), cert.d_lower);
                }
            }
        }
    }

    #[test]
    fn bounds_when_over_budget() {
        let f = make_field(5, 1).unwrap();
        let grs = code(&f, &[&[1, 1, 1, 1], &[1, 2, 3, 4]]);
        let opts = DistanceOptions::with_budget(10);
        let cert = grs.certify_distance(&opts, None).unwrap();
        assert_eq!(cert.method, DistanceMethod::BoundsOnly);
        assert_eq!(cert.d_lower, 1);
        assert!(cert.d_upper >= 3);
        let cert = grs.certify_distance(&opts, Some(grs.mds_certificate())).unwrap();
        assert_eq!(cert.method, DistanceMethod::MdsStructural);
        assert_eq!(cert.exact(), Some(3));
        assert!(matches!(grs.is_mds(&grs.sampled_bounds(5, 0)), Err(CodeError::InexactDistance { .. })));
        // a false structural claim is caught when enumeration is affordable
        let wrong = DistanceCertificate { d_lower: 4, d_upper: 4, ..grs.mds_certificate() };
        assert!(matches!(
            grs.certify_distance(&DistanceOptions::default(), Some(wrong)),
            Err(CodeError::CertificateMismatch(_))
        ));
    }

    #[test]
    fn zero_code_convention() {
        let f = make_field(5, 1).unwrap();
        let z = LinearCode::from_generator(&Matrix::zeros(&f, 1, 3)).unwrap();
        assert_eq!(z.dimension(), 0);
        assert_eq!(z.min_distance(DEFAULT_BUDGET).exact(), Some(4));
    }
}
