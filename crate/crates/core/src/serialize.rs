//! JSON interchange for algebras, involution actions, and verification
//! reports.
//!
//! The algebra document is self-describing: basis names, degrees, the
//! multiplication table as `[left, right, product]` triples over sums of
//! basis names (only pairs `i ≤ j` with nonzero product are listed, the
//! rest follows from commutativity), the unit as a name sum, and a
//! connectedness flag.  Round trips are bit-exact on the table.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::GradedAlgebra;
use crate::f2::{self, Fv};
use crate::spectral::InvolutionAction;
use crate::verify::TheoremReport;

#[derive(Debug, Error)]
pub enum SerializeError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("basis names are not unique: {0:?}")]
    DuplicateName(String),
    #[error("unknown basis name {0:?}")]
    UnknownName(String),
    #[error("basis/degrees length mismatch")]
    LengthMismatch,
    #[error("algebra rejected: {0}")]
    Invalid(#[from] crate::algebra::AlgebraError),
    #[error("action images cover {got} of {want} basis classes")]
    ActionShape { got: usize, want: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub basis: Vec<String>,
    pub degrees: Vec<u32>,
    pub mult: Vec<(String, String, String)>,
    pub unit: String,
    pub connected: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionDoc {
    pub base: AlgebraDoc,
    /// Image of each basis class, as a name sum, in basis order.
    pub images: Vec<String>,
}

fn name_sum(a: &GradedAlgebra, v: Fv) -> String {
    if v == 0 {
        return "0".to_string();
    }
    f2::support(v)
        .map(|i| a.name(i).to_string())
        .collect::<Vec<_>>()
        .join("+")
}

fn parse_sum(names: &[String], s: &str) -> Result<Fv, SerializeError> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(0);
    }
    let mut v = 0;
    for part in s.split('+') {
        let part = part.trim();
        let i = names
            .iter()
            .position(|n| n == part)
            .ok_or_else(|| SerializeError::UnknownName(part.to_string()))?;
        v ^= f2::basis_vec(i);
    }
    Ok(v)
}

pub fn to_doc(a: &GradedAlgebra) -> AlgebraDoc {
    let mut mult = Vec::new();
    for i in 0..a.dim() {
        for j in i..a.dim() {
            let p = a.mul_basis(i, j);
            if p != 0 {
                mult.push((a.name(i).to_string(), a.name(j).to_string(), name_sum(a, p)));
            }
        }
    }
    AlgebraDoc {
        basis: (0..a.dim()).map(|i| a.name(i).to_string()).collect(),
        degrees: a.degrees().to_vec(),
        mult,
        unit: name_sum(a, a.unit()),
        connected: a.is_connected(),
    }
}

pub fn from_doc(doc: &AlgebraDoc) -> Result<GradedAlgebra, SerializeError> {
    if doc.basis.len() != doc.degrees.len() {
        return Err(SerializeError::LengthMismatch);
    }
    for (i, n) in doc.basis.iter().enumerate() {
        if doc.basis[..i].contains(n) {
            return Err(SerializeError::DuplicateName(n.clone()));
        }
    }
    let n = doc.basis.len();
    let mut mult = vec![vec![0u64; n]; n];
    for (l, r, p) in &doc.mult {
        let i = doc
            .basis
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| SerializeError::UnknownName(l.clone()))?;
        let j = doc
            .basis
            .iter()
            .position(|x| x == r)
            .ok_or_else(|| SerializeError::UnknownName(r.clone()))?;
        let v = parse_sum(&doc.basis, p)?;
        mult[i][j] = v;
        mult[j][i] = v;
    }
    let unit = parse_sum(&doc.basis, &doc.unit)?;
    Ok(GradedAlgebra::new(
        doc.basis.clone(),
        doc.degrees.clone(),
        mult,
        unit,
    )?)
}

pub fn to_json(a: &GradedAlgebra) -> String {
    serde_json::to_string_pretty(&to_doc(a)).expect("document serializes")
}

pub fn from_json(s: &str) -> Result<GradedAlgebra, SerializeError> {
    from_doc(&serde_json::from_str(s)?)
}

pub fn action_to_json(action: &InvolutionAction) -> String {
    let doc = ActionDoc {
        base: to_doc(&action.base),
        images: (0..action.base.dim())
            .map(|i| name_sum(&action.base, action.images[i]))
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("document serializes")
}

pub fn action_from_json(s: &str) -> Result<InvolutionAction, SerializeError> {
    let doc: ActionDoc = serde_json::from_str(s)?;
    let base = from_doc(&doc.base)?;
    if doc.images.len() != base.dim() {
        return Err(SerializeError::ActionShape {
            got: doc.images.len(),
            want: base.dim(),
        });
    }
    let images = doc
        .images
        .iter()
        .map(|s| parse_sum(&doc.base.basis, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(InvolutionAction {
        base,
        images,
        preset: None,
    })
}

/// Machine-readable variant of a verification report, mirroring the text
/// one: `theorem`, `sound`, `complete`, `classes[]`, `unlisted[]` (full
/// algebra documents), plus `missing[]` and `notes[]`.
pub fn report_to_json(report: &TheoremReport) -> serde_json::Value {
    serde_json::json!({
        "theorem": report.theorem,
        "sound": report.sound,
        "complete": report.complete,
        "classes": report.classes,
        "missing": report.missing,
        "unlisted": report.unlisted.iter().map(to_doc).collect::<Vec<_>>(),
        "notes": report.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{disjoint_union, sphere, sum_of_projective, tensor, truncated};

    fn round_trips(a: &GradedAlgebra) {
        let b = from_json(&to_json(a)).expect("round trip parses");
        assert_eq!(a.dim(), b.dim());
        assert_eq!(a.degrees(), b.degrees());
        assert_eq!(a.unit(), b.unit());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert_eq!(a.mul_basis(i, j), b.mul_basis(i, j), "entry {i},{j}");
            }
        }
    }

    #[test]
    fn algebra_round_trip_is_bit_exact() {
        round_trips(&sphere(3));
        round_trips(&truncated(3, 2));
        round_trips(&tensor(&truncated(2, 1), &sphere(2)));
        round_trips(&sum_of_projective(3, 2, 1).unwrap());
        // Disconnected: the unit is a sum of two names.
        round_trips(&disjoint_union(&sphere(1), &truncated(2, 1)));
    }

    #[test]
    fn bad_documents_are_rejected() {
        assert!(from_json("{").is_err());
        let mut doc = to_doc(&sphere(1));
        doc.unit = "zz".to_string();
        assert!(from_doc(&doc).is_err());
        let mut doc = to_doc(&sphere(1));
        doc.basis[1] = doc.basis[0].clone();
        assert!(from_doc(&doc).is_err());
    }

    #[test]
    fn action_round_trip() {
        use crate::spectral::{action_preset, validate_action};
        let action = action_preset("shear-a", 2, 2, 4).unwrap();
        let back = action_from_json(&action_to_json(&action)).unwrap();
        assert_eq!(action.images, back.images);
        assert!(validate_action(&back).is_valid());
    }
}
