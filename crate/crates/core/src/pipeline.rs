//! Family construction through to a certificate document.

use thiserror::Error;

use crate::certificate::{CodeRecord, Construction, Document, Side, Source};
use crate::constacyclic::{bch_lower_bound, family_ii, family_iv, ConstaError};
use crate::eaqecc::{derive_from_lcd, mds_dual, EaError};
use crate::field::{make_field, FieldError};
use crate::grs::{family_i, family_i_search, family_iii, GrsError};
use crate::lincode::{CodeError, DistanceCertificate, DistanceOptions, LinearCode};

/// Default number of multiplier candidates tried by the family i search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyParams {
    /// GRS with searched multipliers. `unchecked` drops the `l < t` requirement.
    I { n: usize, l: usize, search_budget: u64, unchecked: bool },
    /// Constacyclic of length `(q-1)/r` and distance `d`.
    II { r: u64, d: u64 },
    /// GRS over a subgroup and its coset, lengths `2l`, `2l+1`, `2l+2`.
    III { l: u64, case: u8 },
    /// Negacyclic of length `(p-1)/2`.
    IV { l: u64 },
}

impl FamilyParams {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyParams::I { .. } => "i",
            FamilyParams::II { .. } => "ii",
            FamilyParams::III { .. } => "iii",
            FamilyParams::IV { .. } => "iv",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Request {
    pub p: u64,
    pub e: u32,
    pub k: u32,
    pub family: FamilyParams,
    pub distance: DistanceOptions,
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction not found: {0}")]
    NotFound(String),
    #[error("{0}")]
    Internal(String),
}

impl PipelineError {
    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Precondition(_) => 2,
            PipelineError::NotFound(_) => 3,
            PipelineError::Internal(_) => 1,
        }
    }
}

impl From<FieldError> for PipelineError {
    fn from(e: FieldError) -> Self {
        PipelineError::Precondition(e.to_string())
    }
}

impl From<GrsError> for PipelineError {
    fn from(e: GrsError) -> Self {
        match e {
            GrsError::PreconditionViolated(s) => PipelineError::Precondition(s),
            GrsError::SubgroupOrderInvalid { .. } | GrsError::Field(_) => PipelineError::Precondition(e.to_string()),
            GrsError::SearchExhausted(_) => PipelineError::NotFound(e.to_string()),
            other => PipelineError::Internal(other.to_string()),
        }
    }
}

impl From<ConstaError> for PipelineError {
    fn from(e: ConstaError) -> Self {
        match e {
            ConstaError::PreconditionViolated(s) => PipelineError::Precondition(s),
            ConstaError::NotCoprime { .. } | ConstaError::InvalidParameters(_) | ConstaError::Field(_) => {
                PipelineError::Precondition(e.to_string())
            }
            ConstaError::ConstructionNotFound(s) => PipelineError::NotFound(s),
            other => PipelineError::Internal(other.to_string()),
        }
    }
}

impl From<CodeError> for PipelineError {
    fn from(e: CodeError) -> Self {
        PipelineError::Internal(e.to_string())
    }
}

impl From<EaError> for PipelineError {
    fn from(e: EaError) -> Self {
        PipelineError::Internal(e.to_string())
    }
}

/// A family output before any distance work: the code, its structural certificate and
/// how it was made.
pub struct FamilyCode {
    pub code: LinearCode,
    pub structural: DistanceCertificate,
    pub construction: Construction,
}

pub fn build_family(req: &Request) -> Result<FamilyCode, PipelineError> {
    let (p, e, k) = (req.p, req.e, req.k);
    match req.family {
        FamilyParams::I { n, l, search_budget, unchecked } => {
            let field = make_field(p, e)?;
            let out = if unchecked {
                family_i_search(&field, k, n, l, search_budget)?
            } else {
                family_i(&field, k, n, l, search_budget)?
            };
            Ok(FamilyCode { construction: (&out).into(), code: out.code, structural: out.certificate })
        }
        FamilyParams::II { r, d } => {
            let field = make_field(p, e)?;
            let out = family_ii(&field, k, r, d)?;
            Ok(FamilyCode { construction: (&out).into(), code: out.code, structural: out.certificate })
        }
        FamilyParams::III { l, case } => {
            let field = make_field(p, e)?;
            let out = family_iii(&field, k, l, case)?;
            Ok(FamilyCode { construction: (&out).into(), code: out.code, structural: out.certificate })
        }
        FamilyParams::IV { l } => {
            if k != 1 {
                return Err(PipelineError::Precondition(format!("family iv is 1-Galois, got k = {k}")));
            }
            let out = family_iv(p, e, l)?;
            Ok(FamilyCode { construction: (&out).into(), code: out.code, structural: out.certificate })
        }
    }
}

/// Structural distance certificate implied by the construction data for `code`.
///
/// GRS codes are MDS, constacyclic codes get the BCH bound of their defining set, and a
/// dual side is MDS whenever its base code is.
pub fn structural_certificate(
    construction: &Construction,
    side: Side,
    base: &LinearCode,
    code: &LinearCode,
) -> Result<DistanceCertificate, PipelineError> {
    let base_cert = match construction {
        Construction::Grs { .. } => base.mds_certificate(),
        Construction::Constacyclic { r, defining_set, .. } => base.bch_certificate(bch_lower_bound(defining_set, *r)),
    };
    match side {
        Side::Code => Ok(base_cert),
        Side::Dual => {
            if !base.is_mds(&base_cert).unwrap_or(false) {
                return Err(PipelineError::Internal("dual side needs a structurally MDS base code".into()));
            }
            Ok(code.mds_certificate())
        }
    }
}

fn document(
    code: &LinearCode,
    k: u32,
    distance: &DistanceCertificate,
    family: &str,
    side: Side,
    construction: &Construction,
) -> Result<Document, PipelineError> {
    let certificate = derive_from_lcd(code, k, distance)?;
    Ok(Document {
        certificate,
        source: Source {
            code: CodeRecord::from(code),
            k,
            lcd: true,
            family: family.to_string(),
            side,
            construction: construction.clone(),
        },
    })
}

/// Build the family code and emit one document per requested side.
///
/// Distances are exhaustive when `q^l` fits the budget, and the exhaustive value must then
/// agree with the structural certificate; otherwise the structural certificate is used.
pub fn construct(req: &Request, sides: &[Side]) -> Result<Vec<Document>, PipelineError> {
    let built = build_family(req)?;
    let family = req.family.name();
    let mut out = Vec::with_capacity(sides.len());
    let mut base_distance = None;
    for &side in sides {
        let base_distance = match &base_distance {
            Some(d) => d,
            None => base_distance.insert(built.code.certify_distance(&req.distance, Some(built.structural.clone()))?),
        };
        match side {
            Side::Code => {
                out.push(document(&built.code, req.k, base_distance, family, side, &built.construction)?);
            }
            Side::Dual => {
                let (dual, mds) = mds_dual(&built.code, req.k, base_distance)?;
                let distance = dual.certify_distance(&req.distance, Some(mds))?;
                out.push(document(&dual, req.k, &distance, family, side, &built.construction)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn request(p: u64, e: u32, k: u32, family: FamilyParams) -> Request {
        Request { p, e, k, family, distance: DistanceOptions::default() }
    }

    #[test]
    fn both_sides_of_a_grs_code() {
        let req = request(5, 2, 1, FamilyParams::I { n: 26, l: 3, search_budget: DEFAULT_SEARCH_BUDGET, unchecked: false });
        let docs = construct(&req, &[Side::Code, Side::Dual]).unwrap();
        assert_eq!(docs[0].certificate.params(), [26, 3, 24, 23]);
        assert_eq!(docs[1].certificate.params(), [26, 23, 4, 3]);
        assert_eq!(docs[0].certificate.distance.method.as_str(), "exhaustive");
        assert_eq!(docs[1].certificate.distance.method.as_str(), "mds-structural");
    }

    #[test]
    fn exit_codes() {
        let bad = request(5, 2, 1, FamilyParams::III { l: 3, case: 1 });
        assert_eq!(construct(&bad, &[Side::Code]).unwrap_err().exit_code(), 2);
        let bad = request(6, 1, 0, FamilyParams::II { r: 1, d: 2 });
        assert_eq!(construct(&bad, &[Side::Code]).unwrap_err().exit_code(), 2);
        let tiny = request(5, 2, 1, FamilyParams::I { n: 26, l: 2, search_budget: 1, unchecked: false });
        match construct(&tiny, &[Side::Code]) {
            Ok(docs) => assert_eq!(docs[0].certificate.params(), [26, 2, 25, 24]),
            Err(e) => assert_eq!(e.exit_code(), 3),
        }
        let wrong_k = request(13, 2, 0, FamilyParams::IV { l: 1 });
        assert_eq!(construct(&wrong_k, &[Side::Code]).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn rebuild_matches_for_every_family() {
        let reqs = [
            request(5, 2, 1, FamilyParams::III { l: 4, case: 3 }),
            request(7, 3, 1, FamilyParams::II { r: 6, d: 4 }),
            request(11, 2, 1, FamilyParams::IV { l: 1 }),
        ];
        for req in &reqs {
            for doc in construct(req, &[Side::Code, Side::Dual]).unwrap() {
                let rebuilt = doc.source.rebuild().unwrap();
                assert_eq!(rebuilt.generator(), &doc.source.code.generator);
            }
        }
    }
}
