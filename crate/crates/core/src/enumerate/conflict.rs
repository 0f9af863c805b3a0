use crate::error::{Error, Result};
use crate::multipoly::{source_shape, MPoly};
use crate::shiftops::{apply_symword, SymWord};

/// Two lowering paths from the source that meet at the same shape with
/// opposite signs.
#[derive(Debug, Clone, PartialEq)]
pub struct SignConflict {
    /// `lhs = sign * rhs`.
    pub sign: i8,
    pub lhs: MPoly,
    pub rhs: MPoly,
}

fn word(s: &str) -> SymWord {
    s.parse().expect("well-formed word")
}

/// Applies `v[-1]t[-2]` after `u[-1]t[-1]`, and `u[-1]t[-2]` after
/// `v[-1]t[-1]`, to the source shape of three particles in three dimensions
/// and compares the results.
pub fn verify_sign_conflict(n: usize, d: usize) -> Result<SignConflict> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("the conflict needs three coordinates, got d = {d}")));
    }
    let source = source_shape(n, d)?;
    let path = |outer: &str, inner: &str| apply_symword(&word(outer), &apply_symword(&word(inner), &source));
    let lhs = path("v[-1]t[-2]", "u[-1]t[-1]");
    let rhs = path("u[-1]t[-2]", "v[-1]t[-1]");
    if lhs.is_zero() || rhs.is_zero() {
        return Err(Error::NotationRegression(format!(
            "a conflict path vanished ({} and {} terms)",
            lhs.len(),
            rhs.len()
        )));
    }
    let sign = if lhs == rhs {
        1
    } else if lhs == rhs.neg() {
        -1
    } else {
        return Err(Error::NotationRegression("the two paths are not proportional by a sign".into()));
    };
    Ok(SignConflict { sign, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_particles_three_dimensions() {
        let c = verify_sign_conflict(3, 3).unwrap();
        assert_eq!(c.sign, -1);
        assert!(c.lhs.is_antisymmetric() && c.rhs.is_antisymmetric());
        assert_eq!(c.lhs.homogeneous_grade(), Some(4));
        assert_eq!(c.rhs.homogeneous_grade(), Some(4));
        assert_eq!(c.lhs.len(), 24);
    }

    #[test]
    fn even_dimension_rejected() {
        assert_eq!(verify_sign_conflict(3, 2).unwrap_err(), Error::InvalidArgument("the conflict needs three coordinates, got d = 2".into()));
        assert_eq!(verify_sign_conflict(3, 4).unwrap_err(), Error::OddDimensionRequired(4));
    }
}
