//! Entanglement-assisted quantum code parameters derived from classical codes.

use std::fmt;

use thiserror::Error;

use crate::field::same_field;
use crate::lincode::{CodeError, DistanceCertificate, DistanceMethod, LcdMethod, LinearCode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EaError {
    #[error("codes have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("codes are over different fields")]
    FieldMismatch,
    #[error("logical dimension {0} is negative")]
    NegativeLogicalDimension(i64),
    #[error("code is not {k}-Galois LCD")]
    NotLcd { k: u32 },
    #[error("ebit count {computed} differs from n - l = {expected}")]
    RankMismatch { computed: usize, expected: usize },
    #[error("EA Singleton bound violated: slack {0}")]
    BoundViolated(i64),
    #[error("ebit count {c} outside [0, n - 1] for n = {n}")]
    EbitsOutOfRange { c: usize, n: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub mds_eaqecc: bool,
    pub maximal_entanglement: bool,
    pub ea_singleton_slack: usize,
}

/// `[[n, kq, d; c]]_q` with the certificate behind `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EaqeccCertificate {
    pub n: usize,
    pub kq: usize,
    pub d: usize,
    pub c: usize,
    pub q: u64,
    pub flags: Flags,
    pub distance: DistanceCertificate,
}

impl EaqeccCertificate {
    pub fn params(&self) -> [usize; 4] {
        [self.n, self.kq, self.d, self.c]
    }

    fn build(n: usize, kq: usize, c: usize, q: u64, distance: DistanceCertificate) -> Result<Self, EaError> {
        if c >= n {
            return Err(EaError::EbitsOutOfRange { c, n });
        }
        // an unproven distance contributes only its lower bound
        let d = distance.d_lower;
        let slack = ea_singleton_slack(n, kq, d, c)?;
        let flags = classify(n, kq, c, slack);
        Ok(EaqeccCertificate { n, kq, d, c, q, flags, distance })
    }
}

impl fmt::Display for EaqeccCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{};{}]]_{}", self.n, self.kq, self.d, self.c, self.q)
    }
}

/// `n - kq + c - 2(d - 1)`, which must be nonnegative.
pub fn ea_singleton_slack(n: usize, kq: usize, d: usize, c: usize) -> Result<usize, EaError> {
    let slack = n as i64 - kq as i64 + c as i64 - 2 * (d as i64 - 1);
    if slack < 0 {
        return Err(EaError::BoundViolated(slack));
    }
    Ok(slack as usize)
}

pub fn ea_singleton_check(cert: &EaqeccCertificate) -> Result<usize, EaError> {
    ea_singleton_slack(cert.n, cert.kq, cert.d, cert.c)
}

pub fn classify(n: usize, kq: usize, c: usize, slack: usize) -> Flags {
    Flags { mds_eaqecc: slack == 0, maximal_entanglement: c + kq == n, ea_singleton_slack: slack }
}

/// The weaker of two distance certificates, for `d = min(d1, d2)`.
fn weaker(a: &DistanceCertificate, b: &DistanceCertificate) -> DistanceCertificate {
    if a.is_exact() && b.is_exact() {
        return if a.d_lower <= b.d_lower { a.clone() } else { b.clone() };
    }
    let (lo, hi) = (a.d_lower.min(b.d_lower), a.d_upper.min(b.d_upper));
    let witness = if a.d_upper <= b.d_upper { a.witness.clone() } else { b.witness.clone() };
    DistanceCertificate { method: DistanceMethod::BoundsOnly, d_lower: lo, d_upper: hi, witness }
}

/// Parameters from two classical codes with `c = rank(H_1 H_2ᵀ)`.
pub fn derive_general(
    c1: &LinearCode,
    d1: &DistanceCertificate,
    c2: &LinearCode,
    d2: &DistanceCertificate,
) -> Result<EaqeccCertificate, EaError> {
    if c1.len() != c2.len() {
        return Err(EaError::LengthMismatch(c1.len(), c2.len()));
    }
    if !same_field(c1.field(), c2.field()) {
        return Err(EaError::FieldMismatch);
    }
    let n = c1.len();
    let c = ebits(c1, c2)?;
    let kq = c1.dimension() as i64 + c2.dimension() as i64 - n as i64 + c as i64;
    if kq < 0 {
        return Err(EaError::NegativeLogicalDimension(kq));
    }
    EaqeccCertificate::build(n, kq as usize, c, c1.field().order(), weaker(d1, d2))
}

/// `rank(H_1 H_2ᵀ)`.
pub fn ebits(c1: &LinearCode, c2: &LinearCode) -> Result<usize, EaError> {
    let (h1, h2) = (c1.parity_check(), c2.parity_check());
    if h1.rows() == 0 || h2.rows() == 0 {
        return Ok(0);
    }
    Ok(h1.mul(&h2.transpose()).map_err(CodeError::from)?.rank())
}

/// `rank(H (H^(p^(e-k)))ᵀ)`, the ebit count of the LCD construction.
pub fn galois_ebits(code: &LinearCode, k: u32) -> Result<usize, EaError> {
    let h = code.parity_check();
    if h.rows() == 0 {
        return Ok(0);
    }
    let conj = h.galois_conj_transpose(k).map_err(CodeError::from)?;
    Ok(h.mul(&conj).map_err(CodeError::from)?.rank())
}

/// `[[n, l, d; n - l]]` from a k-Galois LCD `[n, l, d]` code, with `c` computed by rank.
pub fn derive_from_lcd(code: &LinearCode, k: u32, distance: &DistanceCertificate) -> Result<EaqeccCertificate, EaError> {
    if !code.is_k_galois_lcd(k, LcdMethod::Gram)? {
        return Err(EaError::NotLcd { k });
    }
    let n = code.len();
    let l = code.dimension();
    let c = galois_ebits(code, k)?;
    if c != n - l {
        return Err(EaError::RankMismatch { computed: c, expected: n - l });
    }
    EaqeccCertificate::build(n, l, c, code.field().order(), distance.clone())
}

/// The k-Galois dual of an exactly measured MDS code together with its MDS certificate.
pub fn mds_dual(code: &LinearCode, k: u32, distance: &DistanceCertificate) -> Result<(LinearCode, DistanceCertificate), EaError> {
    if !code.is_mds(distance)? {
        return Err(CodeError::CertificateMismatch(format!(
            "dual certificate needs an MDS code, got d = {}",
            distance.d_lower
        ))
        .into());
    }
    let dual = code.galois_dual(k)?;
    let cert = dual.mds_certificate();
    if let Some(w) = &cert.witness {
        if crate::lincode::weight(w) != cert.d_upper {
            return Err(CodeError::CertificateMismatch("dual witness is lighter than n - l + 1".into()).into());
        }
    }
    Ok((dual, cert))
}
