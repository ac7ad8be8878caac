//! Pair descriptions `(C, D)` in their JSON form, and their resolution into
//! typed curves and moduli.

use serde::{Deserialize, Serialize};

use crate::arith::{Gf, Rationals};
use crate::curve::{Curve, EPoint, EllipticCurve, P1Place, P1};
use crate::modulus::{Modulus, ModulusError};
use crate::syntax::CurveSyntax;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDescription {
    /// 0 for the rationals.
    pub characteristic: u32,
    #[serde(default = "one")]
    pub extension_degree: u32,
    pub curve: CurveDescriptor,
    pub modulus: Vec<ModulusEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_place: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum CurveDescriptor {
    P1,
    Elliptic { a: i64, b: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModulusEntry {
    pub place: String,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error("invalid pair description: {0}")]
    Schema(String),
}

/// A resolved pair.
#[derive(Debug, Clone)]
pub enum Pair {
    FiniteLine { curve: P1<Gf>, modulus: Modulus<P1Place<Gf>>, base: P1Place<Gf> },
    Elliptic { curve: EllipticCurve, modulus: Modulus<EPoint>, base: EPoint },
    RationalLine { curve: P1<Rationals>, modulus: Modulus<P1Place<Rationals>>, base: P1Place<Rationals> },
}

fn schema(msg: impl Into<String>) -> PairError {
    PairError::Schema(msg.into())
}

fn resolve_modulus<C: CurveSyntax>(curve: &C, entries: &[ModulusEntry]) -> Result<Modulus<C::Place>, PairError> {
    let mut comps = Vec::new();
    for e in entries {
        if e.mult == 0 {
            return Err(schema(format!("multiplicity of {:?} must be at least 1", e.place)));
        }
        let p = curve.parse_place(&e.place).map_err(schema)?;
        comps.push((p, e.mult));
    }
    Modulus::new(comps).map_err(|e| match e {
        ModulusError::ZeroMultiplicity => schema("multiplicity must be at least 1"),
        ModulusError::DuplicatePlace => schema("a place is listed twice in the modulus"),
    })
}

fn resolve_base<C: CurveSyntax>(curve: &C, text: &Option<String>, default: C::Place) -> Result<C::Place, PairError> {
    let base = match text {
        Some(s) => curve.parse_place(s).map_err(schema)?,
        None => default,
    };
    if curve.place_degree(&base) != 1 {
        return Err(schema(format!("base place {} is not rational", curve.fmt_place(&base))));
    }
    Ok(base)
}

impl PairDescription {
    pub fn from_json(text: &str) -> Result<Self, PairError> {
        serde_json::from_str(text).map_err(|e| schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn resolve(&self) -> Result<Pair, PairError> {
        if self.extension_degree == 0 {
            return Err(schema("extension_degree must be at least 1"));
        }
        if self.characteristic == 0 {
            if self.extension_degree != 1 {
                return Err(schema("characteristic 0 requires extension_degree 1"));
            }
            if self.curve != CurveDescriptor::P1 {
                return Err(schema("only the projective line is supported over the rationals"));
            }
            let curve = P1::new(Rationals);
            let modulus = resolve_modulus(&curve, &self.modulus)?;
            let base = resolve_base(&curve, &self.base_place, P1Place::Infinity)?;
            return Ok(Pair::RationalLine { curve, modulus, base });
        }
        let field = Gf::new(self.characteristic, self.extension_degree).map_err(|e| schema(e.to_string()))?;
        match self.curve {
            CurveDescriptor::P1 => {
                let curve = P1::new(field);
                let modulus = resolve_modulus(&curve, &self.modulus)?;
                let base = resolve_base(&curve, &self.base_place, P1Place::Infinity)?;
                Ok(Pair::FiniteLine { curve, modulus, base })
            }
            CurveDescriptor::Elliptic { a, b } => {
                if self.extension_degree != 1 {
                    return Err(schema("elliptic curves are supported over prime fields only"));
                }
                let curve = EllipticCurve::new(self.characteristic, a, b).map_err(|e| schema(e.to_string()))?;
                let modulus = resolve_modulus(&curve, &self.modulus)?;
                let base = resolve_base(&curve, &self.base_place, EPoint::Infinity)?;
                Ok(Pair::Elliptic { curve, modulus, base })
            }
        }
    }

    /// The same pair with places in normal form, the modulus in canonical
    /// order, the base place explicit and no seed.
    pub fn canonical(&self) -> Result<PairDescription, PairError> {
        let (modulus, base) = match self.resolve()? {
            Pair::FiniteLine { curve, modulus, base } => (modulus_entries(&curve, &modulus), curve.fmt_place(&base)),
            Pair::Elliptic { curve, modulus, base } => (modulus_entries(&curve, &modulus), curve.fmt_place(&base)),
            Pair::RationalLine { curve, modulus, base } => (modulus_entries(&curve, &modulus), curve.fmt_place(&base)),
        };
        Ok(PairDescription { modulus, base_place: Some(base), seed: None, ..self.clone() })
    }

    /// Short human-readable form.
    pub fn summary(&self) -> String {
        let field = match (self.characteristic, self.extension_degree) {
            (0, _) => "Q".to_string(),
            (p, 1) => format!("F_{p}"),
            (p, k) => format!("F_{p}^{k}"),
        };
        let curve = match &self.curve {
            CurveDescriptor::P1 => "P1".to_string(),
            CurveDescriptor::Elliptic { a, b } => {
                let mut rhs = "x^3".to_string();
                for (c, mono) in [(*a, "x"), (*b, "")] {
                    let sign = if c < 0 { '-' } else { '+' };
                    match (c.abs(), mono) {
                        (0, _) => {}
                        (1, "x") => rhs.push_str(&format!(" {sign} x")),
                        (m, _) => rhs.push_str(&format!(" {sign} {m}{mono}")),
                    }
                }
                format!("y^2 = {rhs}")
            }
        };
        let d: Vec<String> = self.modulus.iter().map(|e| format!("{}[{}]", e.mult, e.place)).collect();
        let d = if d.is_empty() { "0".to_string() } else { d.join(" + ") };
        format!("({curve}, {d}) over {field}")
    }
}

impl Pair {
    pub fn characteristic(&self) -> u64 {
        match self {
            Pair::FiniteLine { curve, .. } => curve.field().p() as u64,
            Pair::Elliptic { curve, .. } => curve.field().p() as u64,
            Pair::RationalLine { .. } => 0,
        }
    }
}

/// Describe a modulus back in entry form.
pub fn modulus_entries<C: Curve>(curve: &C, d: &Modulus<C::Place>) -> Vec<ModulusEntry> {
    d.components().iter().map(|(p, n)| ModulusEntry { place: curve.fmt_place(p), mult: *n }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_resolve() {
        let text = r#"{"characteristic": 3, "curve": {"kind": "P1"}, "modulus": [{"place": "t", "mult": 2}]}"#;
        let d = PairDescription::from_json(text).unwrap();
        assert_eq!(d.extension_degree, 1);
        match d.resolve().unwrap() {
            Pair::FiniteLine { modulus, base, .. } => {
                assert_eq!(modulus.components().len(), 1);
                assert_eq!(base, P1Place::Infinity);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(PairDescription::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn schema_violations() {
        let bad = [
            r#"{"characteristic": 3, "curve": {"kind": "P1"}, "modulus": [{"place": "t", "mult": 0}]}"#,
            r#"{"characteristic": 4, "curve": {"kind": "P1"}, "modulus": []}"#,
            r#"{"characteristic": 3, "curve": {"kind": "P2"}, "modulus": []}"#,
            r#"{"characteristic": 3, "curve": {"kind": "P1"}, "modulus": [], "extra": 1}"#,
            r#"{"characteristic": 0, "extension_degree": 2, "curve": {"kind": "P1"}, "modulus": []}"#,
            r#"{"characteristic": 5, "curve": {"kind": "Elliptic", "a": 0, "b": 0}, "modulus": []}"#,
            r#"{"characteristic": 3, "curve": {"kind": "P1"}, "modulus": [{"place": "t^2+1", "mult": 1}], "base_place": "t^2+1"}"#,
            r#"{"characteristic": 3, "curve": {"kind": "P1"}, "modulus": [{"place": "t", "mult": 1}, {"place": "t", "mult": 2}]}"#,
        ];
        for b in bad {
            let r = PairDescription::from_json(b).and_then(|d| d.resolve().map(|_| ()));
            assert!(matches!(r, Err(PairError::Schema(_))), "{b}");
        }
    }
}
