//! Matrix description files: parsing, validation and canonical emission.
//!
//! A description is a single JSON object with a `kind` of `"jacobi"`,
//! `"banded23"` or `"pbf-factors"`. Diagonals of the banded kind are keyed
//! by their offsets `"-3"` .. `"+2"`. Missing `nu`/`xi` entries default to
//! identity initial-condition matrices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::band::BandedMatrix;
use crate::error::{Error, Result};
use crate::jacobi::JacobiMatrix;
use crate::mixed::InitialConditions;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpecFile {
    pub kind: String,
    pub n_max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bands: Option<BTreeMap<String, Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lowers: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uppers: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<f64>,
    /// \[ν¹₁, ν¹₂, ν²₂\]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<f64>>,
    /// \[ξ₁\]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<f64>>,
}

/// A validated matrix: tridiagonal or banded (2,3).
pub enum MatrixInput {
    Jacobi(JacobiMatrix),
    Banded(BandedMatrix),
}

impl MatrixInput {
    pub fn kind(&self) -> &'static str {
        match self {
            MatrixInput::Jacobi(_) => "jacobi",
            MatrixInput::Banded(_) => "banded",
        }
    }

    pub fn to_banded(&self) -> Result<BandedMatrix> {
        match self {
            MatrixInput::Jacobi(j) => j.to_banded(),
            MatrixInput::Banded(b) => Ok(b.clone()),
        }
    }
}

/// Parses and validates a description from JSON bytes.
pub fn parse_input(bytes: &[u8]) -> Result<MatrixSpecFile> {
    let spec: MatrixSpecFile = serde_json::from_slice(bytes).map_err(|e| {
        Error::Invalid(format!(
            "JSON parse error at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    validate(&spec)?;
    Ok(spec)
}

/// Canonical JSON emission (stable field and key order, pretty-printed).
pub fn emit_input(spec: &MatrixSpecFile) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(spec).expect("serializable spec");
    bytes.push(b'\n');
    bytes
}

fn validate(spec: &MatrixSpecFile) -> Result<()> {
    if spec.n_max == 0 {
        return Err(Error::Invalid("n_max must be positive".into()));
    }
    if let Some(nu) = &spec.nu {
        if nu.len() != 3 {
            return Err(Error::Invalid(format!(
                "field nu needs exactly 3 entries, got {}",
                nu.len()
            )));
        }
    }
    if let Some(xi) = &spec.xi {
        if xi.len() != 1 {
            return Err(Error::Invalid(format!(
                "field xi needs exactly 1 entry, got {}",
                xi.len()
            )));
        }
    }
    let finite = |name: &str, vals: &[f64]| -> Result<()> {
        for (i, v) in vals.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::Invalid(format!("field {name}[{i}] is not finite")));
            }
        }
        Ok(())
    };
    match spec.kind.as_str() {
        "jacobi" => {
            let m = spec
                .m
                .as_ref()
                .ok_or_else(|| Error::Invalid("jacobi kind requires field m".into()))?;
            let ell = spec
                .ell
                .as_ref()
                .ok_or_else(|| Error::Invalid("jacobi kind requires field ell".into()))?;
            finite("m", m)?;
            finite("ell", ell)?;
            if m.len() < spec.n_max + 1 {
                return Err(Error::Invalid(format!(
                    "field m holds {} entries, needs n_max+1 = {}",
                    m.len(),
                    spec.n_max + 1
                )));
            }
            if ell.len() < spec.n_max {
                return Err(Error::Invalid(format!(
                    "field ell holds {} entries, needs n_max = {}",
                    ell.len(),
                    spec.n_max
                )));
            }
            for (i, &l) in ell.iter().enumerate() {
                if !(l > 0.0) {
                    return Err(Error::Invalid(format!(
                        "field ell[{i}] = {l} must be strictly positive"
                    )));
                }
            }
            if spec.bands.is_some() || spec.lowers.is_some() {
                return Err(Error::Invalid(
                    "jacobi kind must not carry bands or factor fields".into(),
                ));
            }
        }
        "banded23" => {
            let bands = spec
                .bands
                .as_ref()
                .ok_or_else(|| Error::Invalid("banded23 kind requires field bands".into()))?;
            for d in [-3i64, -2, -1, 0, 1, 2] {
                let key_plus = if d > 0 {
                    format!("+{d}")
                } else {
                    format!("{d}")
                };
                let band = bands
                    .get(&key_plus)
                    .or_else(|| bands.get(&d.to_string()))
                    .ok_or_else(|| {
                        Error::Invalid(format!("banded23 kind missing diagonal \"{key_plus}\""))
                    })?;
                finite(&format!("bands[{key_plus}]"), band)?;
                let need = (spec.n_max + 1).saturating_sub(d.unsigned_abs() as usize);
                if band.len() < need {
                    return Err(Error::Invalid(format!(
                        "diagonal \"{key_plus}\" holds {} entries, needs {need}",
                        band.len()
                    )));
                }
            }
            if spec.m.is_some() || spec.lowers.is_some() {
                return Err(Error::Invalid(
                    "banded23 kind must not carry jacobi or factor fields".into(),
                ));
            }
        }
        "pbf-factors" => {
            let lowers = spec
                .lowers
                .as_ref()
                .ok_or_else(|| Error::Invalid("pbf-factors kind requires field lowers".into()))?;
            let delta = spec
                .delta
                .as_ref()
                .ok_or_else(|| Error::Invalid("pbf-factors kind requires field delta".into()))?;
            let uppers = spec
                .uppers
                .as_ref()
                .ok_or_else(|| Error::Invalid("pbf-factors kind requires field uppers".into()))?;
            if lowers.len() != 3 {
                return Err(Error::Invalid(format!(
                    "pbf-factors needs 3 lower factors, got {}",
                    lowers.len()
                )));
            }
            if uppers.len() != 2 {
                return Err(Error::Invalid(format!(
                    "pbf-factors needs 2 upper factors, got {}",
                    uppers.len()
                )));
            }
            let positive = |name: String, vals: &[f64], need: usize| -> Result<()> {
                finite(&name, vals)?;
                if vals.len() < need {
                    return Err(Error::Invalid(format!(
                        "{name} holds {} entries, needs {need}",
                        vals.len()
                    )));
                }
                for (i, &v) in vals.iter().enumerate() {
                    if !(v > 0.0) {
                        return Err(Error::Invalid(format!(
                            "{name}[{i}] = {v} must be strictly positive"
                        )));
                    }
                }
                Ok(())
            };
            for (k, l) in lowers.iter().enumerate() {
                positive(format!("lowers[{k}]"), l, spec.n_max)?;
            }
            positive("delta".into(), delta, spec.n_max + 1)?;
            for (k, u) in uppers.iter().enumerate() {
                positive(format!("uppers[{k}]"), u, spec.n_max)?;
            }
            if spec.m.is_some() || spec.bands.is_some() {
                return Err(Error::Invalid(
                    "pbf-factors kind must not carry jacobi or band fields".into(),
                ));
            }
        }
        other => {
            return Err(Error::Invalid(format!(
                "unknown kind \"{other}\" (expected jacobi, banded23 or pbf-factors)"
            )));
        }
    }
    Ok(())
}

impl MatrixSpecFile {
    /// Initial condition matrices (identity when absent).
    pub fn initial_conditions(&self) -> InitialConditions {
        let nu = self.nu.clone().unwrap_or_else(|| vec![0.0, 0.0, 0.0]);
        let xi = self.xi.clone().unwrap_or_else(|| vec![0.0]);
        InitialConditions::new(nu[0], nu[1], nu[2], xi[0])
    }

    /// Builds the matrix, applying the optional shift to the main diagonal.
    pub fn to_matrix(&self) -> Result<MatrixInput> {
        let shift = self.shift.unwrap_or(0.0);
        match self.kind.as_str() {
            "jacobi" => {
                let mut m = self.m.clone().unwrap();
                for v in m.iter_mut() {
                    *v += shift;
                }
                Ok(MatrixInput::Jacobi(JacobiMatrix::new(
                    m,
                    self.ell.clone().unwrap(),
                    self.n_max,
                )?))
            }
            "banded23" => {
                let bands_map = self.bands.as_ref().unwrap();
                let mut bands = Vec::with_capacity(6);
                for d in [-3i64, -2, -1, 0, 1, 2] {
                    let key_plus = if d > 0 {
                        format!("+{d}")
                    } else {
                        format!("{d}")
                    };
                    let band = bands_map
                        .get(&key_plus)
                        .or_else(|| bands_map.get(&d.to_string()))
                        .unwrap()
                        .clone();
                    bands.push(band);
                }
                let b = BandedMatrix::new(2, 3, bands, self.n_max)?;
                Ok(MatrixInput::Banded(b.shift(shift)))
            }
            "pbf-factors" => {
                let b = BandedMatrix::from_bidiagonal_factors(
                    self.lowers.as_ref().unwrap(),
                    self.delta.as_ref().unwrap(),
                    self.uppers.as_ref().unwrap(),
                    self.n_max,
                )?;
                Ok(MatrixInput::Banded(b.shift(shift)))
            }
            _ => unreachable!("validated kind"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1_spec(n_max: usize) -> MatrixSpecFile {
        MatrixSpecFile {
            kind: "pbf-factors".into(),
            n_max,
            m: None,
            ell: None,
            bands: None,
            lowers: Some(vec![vec![1.0; n_max]; 3]),
            delta: Some(vec![1.0; n_max + 1]),
            uppers: Some(vec![vec![1.0; n_max]; 2]),
            shift: None,
            nu: None,
            xi: None,
        }
    }

    #[test]
    fn round_trip_is_stable() {
        let spec = t1_spec(6);
        let bytes = emit_input(&spec);
        let parsed = parse_input(&bytes).unwrap();
        assert_eq!(parsed, spec);
        assert_eq!(emit_input(&parsed), bytes);
    }

    #[test]
    fn jacobi_zero_ell_names_index() {
        let json = r#"{"kind":"jacobi","n_max":2,"m":[0,0,0],"ell":[1.0,0.0]}"#;
        let err = parse_input(json.as_bytes()).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("ell[1]"), "message: {msg}");
    }

    #[test]
    fn missing_nu_defaults_to_identity() {
        let spec = t1_spec(4);
        assert_eq!(spec.initial_conditions(), InitialConditions::identity());
    }

    #[test]
    fn shift_applies_to_diagonal() {
        let json = r#"{"kind":"jacobi","n_max":2,"m":[0,0,0],"ell":[1.0,1.0],"shift":2.0}"#;
        let spec = parse_input(json.as_bytes()).unwrap();
        match spec.to_matrix().unwrap() {
            MatrixInput::Jacobi(j) => {
                let t = j.truncate(1).unwrap();
                assert_eq!(t.get(0, 0), 2.0);
                assert_eq!(t.get(1, 1), 2.0);
                assert_eq!(t.get(0, 1), 1.0);
            }
            _ => panic!("expected jacobi"),
        }
    }

    #[test]
    fn malformed_inputs_rejected() {
        for bad in [
            "",
            "{",
            "[]",
            r#"{"kind":"nope","n_max":3}"#,
            r#"{"kind":"jacobi","n_max":0,"m":[1],"ell":[]}"#,
            r#"{"kind":"jacobi","n_max":2,"m":[0,0],"ell":[1,1]}"#,
            r#"{"kind":"banded23","n_max":3}"#,
            r#"{"kind":"pbf-factors","n_max":3,"lowers":[[1,1,1]],"delta":[1,1,1,1],"uppers":[[1,1,1],[1,1,1]]}"#,
            r#"{"kind":"jacobi","n_max":1,"m":[0,0],"ell":[1],"unknown_field":3}"#,
        ] {
            assert!(parse_input(bad.as_bytes()).is_err(), "accepted: {bad}");
        }
    }
}
