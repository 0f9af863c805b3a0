use std::fmt;

use num_bigint::BigInt;

use super::{Provenance, ShapeRecord};
use crate::multipoly::{antisymmetrize, source_shape, MPoly};
use crate::shiftops::apply_symword;

/// First record whose provenance does not reproduce its polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayFailure {
    pub id: usize,
    pub reason: String,
}

impl fmt::Display for ReplayFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shape {}: {}", self.id, self.reason)
    }
}

impl std::error::Error for ReplayFailure {}

/// Rebuilds record `idx` from its provenance and compares bit for bit.
pub fn check_record(records: &[ShapeRecord], idx: usize) -> Result<(), ReplayFailure> {
    let rec = &records[idx];
    let fail = |reason: String| ReplayFailure { id: rec.id, reason };
    let (n, d) = (rec.poly.particles(), rec.poly.dimension());
    let raw: MPoly = match &rec.provenance {
        Provenance::Root { .. } => source_shape(n, d).map_err(|e| fail(e.to_string()))?,
        Provenance::Derived { parent, word, .. } => {
            let Some(p) = records.iter().find(|r| r.id == *parent) else {
                return Err(fail(format!("unknown parent {parent}")));
            };
            if p.poly.particles() != n || p.poly.dimension() != d {
                return Err(fail(format!("parent {parent} lives in another space")));
            }
            if word.word.max_coordinate().is_some_and(|c| c >= d) {
                return Err(fail(format!("word {word} uses a coordinate beyond d = {d}")));
            }
            apply_symword(word, &p.poly)
        }
        Provenance::Oracle { slater, .. } => {
            if slater.rows().len() != n || slater.rows().iter().any(|r| r.len() != d) {
                return Err(fail("Slater label has the wrong shape".into()));
            }
            antisymmetrize(slater, d)
        }
    };
    let sign = rec.provenance.sign();
    if sign != 1 && sign != -1 {
        return Err(fail(format!("sign {sign} is not a unit")));
    }
    let factor = rec.provenance.content() * BigInt::from(sign);
    if raw != rec.poly.scale(&factor) {
        return Err(fail("replayed polynomial differs".into()));
    }
    if rec.poly.homogeneous_grade() != Some(rec.grade) {
        return Err(fail(format!("polynomial is not homogeneous of grade {}", rec.grade)));
    }
    Ok(())
}

/// Replays every record in order.
pub fn replay_provenance(records: &[ShapeRecord]) -> Result<(), ReplayFailure> {
    (0..records.len()).try_for_each(|i| check_record(records, i))
}
