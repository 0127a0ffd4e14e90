//! Recognizing monotone sweeps: every level is an embedded separating
//! curve and the region behind the curve only grows.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::surface::{FId, Surface};

use super::regions::{swept_faces, RegionError};
use super::verify::{verify_certificate, Certificate, VerifyError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonotoneError {
    #[error("certificate does not verify: {0}")]
    Invalid(#[from] VerifyError),
    #[error("level {level} is not an embedded separating curve: {source}")]
    NotAnIsotopy {
        level: usize,
        #[source]
        source: RegionError,
    },
}

pub struct MonotoneReport {
    pub monotone: bool,
    /// Swept faces per level, in replay order.
    pub swept: Vec<BTreeSet<FId>>,
    /// Faces in the order the sweep crossed them. Covers every internal face
    /// exactly once when the certificate is a monotone sweep-out.
    pub flip_order: Vec<FId>,
}

/// Replay a certificate and decide whether it is a monotone isotopy. Levels
/// that are not embedded separating curves are a hard error; a shrinking
/// swept region merely reports `monotone: false`.
pub fn is_monotone<W: Scalar>(
    surface: &Surface<W>,
    certificate: &Certificate,
) -> Result<MonotoneReport, MonotoneError> {
    let outcome = verify_certificate(surface, certificate)?;
    let mut monotone = true;
    let mut swept_chain: Vec<BTreeSet<FId>> = Vec::with_capacity(outcome.levels.len());
    let mut flip_order = Vec::new();
    for (level, curve) in outcome.levels.iter().enumerate() {
        let swept = swept_faces(surface, curve)
            .map_err(|source| MonotoneError::NotAnIsotopy { level, source })?;
        if let Some(prev) = swept_chain.last() {
            if !prev.is_subset(&swept) {
                monotone = false;
            }
            flip_order.extend(swept.difference(prev).copied());
        }
        swept_chain.push(swept);
    }
    Ok(MonotoneReport {
        monotone,
        swept: swept_chain,
        flip_order,
    })
}
