//! Structure and class reports for a pair, in machine and human form.

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::FinAbGroup;
use crate::curve::Curve;
use crate::local_units::LocalUnitError;
use crate::modulus::ZeroCycle;
use crate::pair::{Pair, PairDescription, PairError};
use crate::picard::{ModulusClass, PicardCurve, PicardError, PicardStructure};
use crate::picard_q::{PicardQ, QClass};
use crate::syntax::{parse_cycle, CurveSyntax, CycleError};

/// Errors surfaced by the command-line tool, each with its exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToolError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Bounds(String),
    #[error("{0}")]
    Support(String),
    #[error("{0}")]
    Failure(String),
}

impl ToolError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ToolError::Failure(_) => 1,
            ToolError::Parse(_) => 2,
            ToolError::Bounds(_) => 3,
            ToolError::Support(_) => 4,
        }
    }
}

impl From<PairError> for ToolError {
    fn from(e: PairError) -> Self {
        ToolError::Parse(e.to_string())
    }
}

impl From<PicardError> for ToolError {
    fn from(e: PicardError) -> Self {
        let msg = e.to_string();
        match e {
            PicardError::TooLarge(_)
            | PicardError::LocalUnits(LocalUnitError::TooLarge(_))
            | PicardError::Arith(crate::arith::ArithError::TooLarge(_)) => ToolError::Bounds(msg),
            PicardError::SupportCollision(_) => ToolError::Support(msg),
            PicardError::BadBase(_) | PicardError::Curve(_) => ToolError::Parse(msg),
            _ => ToolError::Failure(msg),
        }
    }
}

impl From<CycleError> for ToolError {
    fn from(e: CycleError) -> Self {
        ToolError::Parse(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupReport {
    pub pair: String,
    pub characteristic: u64,
    pub base_place: String,
    pub free_rank: usize,
    /// Invariant factors of the degree-0 part (finite fields).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finite_part: Option<FinAbGroup>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torus_rank: Option<usize>,
    pub unipotent: Value,
    pub torsion: Value,
    pub reduced: Value,
    pub checks: Value,
    pub generators: Vec<String>,
}

impl GroupReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("pair: {}\n", self.pair));
        s.push_str(&format!("base place: {}\n", self.base_place));
        s.push_str(&format!("free rank: {}\n", self.free_rank));
        if let Some(f) = &self.finite_part {
            s.push_str(&format!("degree-0 part: {f} (order {})\n", f.order()));
        }
        if let Some(r) = self.torus_rank {
            s.push_str(&format!("torus rank: {r}\n"));
        }
        let line = |v: &Value| serde_json::to_string(v).unwrap();
        s.push_str(&format!("unipotent part: {}\n", line(&self.unipotent)));
        s.push_str(&format!("torsion: {}\n", line(&self.torsion)));
        s.push_str(&format!("reduced modulus: {}\n", line(&self.reduced)));
        s.push_str(&format!("checks: {}\n", line(&self.checks)));
        if !self.generators.is_empty() {
            s.push_str("generators:\n");
            for g in &self.generators {
                s.push_str(&format!("  {g}\n"));
            }
        }
        s
    }
}

fn finite_group_report<C: PicardCurve>(
    desc: &PairDescription,
    s: &PicardStructure<C>,
) -> Result<GroupReport, ToolError> {
    let red = s.reduced_structure()?;
    let u = s.unipotent_part();
    let (pp, prime_to) = s.torsion_decomposition();
    let (_, red_prime_to) = red.torsion_decomposition();
    Ok(GroupReport {
        pair: desc.summary(),
        characteristic: s.characteristic(),
        base_place: s.curve().fmt_place(s.base()),
        free_rank: s.free_rank(),
        finite_part: Some(s.finite_part().clone()),
        torus_rank: None,
        unipotent: json!({ "invariants": u, "order": u.order().to_string() }),
        torsion: json!({ "p_primary": pp, "prime_to_p": prime_to }),
        reduced: json!({ "finite_part": red.finite_part(), "prime_to_p": red_prime_to }),
        checks: json!({
            "exactness": s.exactness_audit(&red),
            "lang_orders": s.lang_order_check(),
            "prime_to_p_match": prime_to == red_prime_to,
        }),
        generators: s.generator_dictionary(),
    })
}

fn rational_group_report(desc: &PairDescription, g: &PicardQ) -> GroupReport {
    let st = g.structure();
    GroupReport {
        pair: desc.summary(),
        characteristic: 0,
        base_place: g.line().fmt_place(g.base()),
        free_rank: st.free_rank,
        finite_part: None,
        torus_rank: Some(st.torus_rank),
        unipotent: json!({ "dimension": st.unipotent_dimension }),
        torsion: json!({ "torsion": st.torsion }),
        reduced: json!({ "torus_rank": st.torus_rank, "torsion": g.reduced().structure().torsion }),
        checks: json!({ "torsion_match": st.torsion == g.reduced().structure().torsion }),
        generators: g
            .modulus()
            .components()
            .iter()
            .map(|(p, n)| format!("units at {}: Q^* x Q^{}", g.line().fmt_place(p), n - 1))
            .collect(),
    }
}

pub fn group_report(desc: &PairDescription) -> Result<GroupReport, ToolError> {
    match desc.resolve()? {
        Pair::FiniteLine { curve, modulus, base } => {
            finite_group_report(desc, &PicardStructure::with_base(&curve, &modulus, base)?)
        }
        Pair::Elliptic { curve, modulus, base } => {
            finite_group_report(desc, &PicardStructure::with_base(&curve, &modulus, base)?)
        }
        Pair::RationalLine { modulus, base, .. } => {
            Ok(rational_group_report(desc, &PicardQ::with_base(&modulus, base)?))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassReport {
    pub pair: String,
    pub cycle: String,
    pub degree: i64,
    pub coordinates: Value,
    pub coordinate_moduli: Value,
    pub pi_coordinates: Value,
    pub in_unipotent: bool,
    pub is_zero: bool,
}

impl ClassReport {
    pub fn to_text(&self) -> String {
        let line = |v: &Value| serde_json::to_string(v).unwrap();
        format!(
            "pair: {}\ncycle: {}\ndegree: {}\ncoordinates: {} (moduli {})\npi image: {}\nin unipotent part: {}\nzero: {}\n",
            self.pair,
            self.cycle,
            self.degree,
            line(&self.coordinates),
            line(&self.coordinate_moduli),
            line(&self.pi_coordinates),
            self.in_unipotent,
            self.is_zero
        )
    }
}

fn finite_coords(c: &ModulusClass) -> Value {
    serde_json::to_value(c).unwrap()["coords"].clone()
}

fn finite_class_report<C: PicardCurve + CurveSyntax>(
    desc: &PairDescription,
    s: &PicardStructure<C>,
    z: &ZeroCycle<C::Place>,
) -> Result<ClassReport, ToolError> {
    let red = s.reduced_structure()?;
    let c = s.class_of(z)?;
    let pc = s.pi_map(&red, &c)?;
    let moduli: Vec<String> = s.coordinate_moduli().iter().map(|d| d.to_string()).collect();
    Ok(ClassReport {
        pair: desc.summary(),
        cycle: z.fmt_with(s.curve()),
        degree: c.degree,
        coordinates: finite_coords(&c),
        coordinate_moduli: json!(moduli),
        pi_coordinates: finite_coords(&pc),
        in_unipotent: s.in_unipotent(&red, &c)?,
        is_zero: c.is_zero(),
    })
}

fn rat_text(x: &BigRational) -> String {
    x.to_string()
}

pub fn qclass_value(c: &QClass) -> Value {
    json!({
        "torus": c.torus.iter().map(rat_text).collect::<Vec<_>>(),
        "unipotent": c.unipotent.iter().map(|v| v.iter().map(rat_text).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn parse_for<C: CurveSyntax>(curve: &C, text: &str) -> Result<ZeroCycle<C::Place>, ToolError> {
    Ok(parse_cycle(curve, text)?)
}

pub fn class_report(desc: &PairDescription, cycle: &str) -> Result<ClassReport, ToolError> {
    match desc.resolve()? {
        Pair::FiniteLine { curve, modulus, base } => {
            let z = parse_for(&curve, cycle)?;
            finite_class_report(desc, &PicardStructure::with_base(&curve, &modulus, base)?, &z)
        }
        Pair::Elliptic { curve, modulus, base } => {
            let z = parse_for(&curve, cycle)?;
            finite_class_report(desc, &PicardStructure::with_base(&curve, &modulus, base)?, &z)
        }
        Pair::RationalLine { curve, modulus, base } => {
            let z = parse_for(&curve, cycle)?;
            let g = PicardQ::with_base(&modulus, base)?;
            let red = g.reduced();
            let c = g.class_of(&z)?;
            let pc = g.pi_map(&red, &c)?;
            Ok(ClassReport {
                pair: desc.summary(),
                cycle: z.fmt_with(&curve),
                degree: c.degree,
                coordinates: qclass_value(&c),
                coordinate_moduli: json!({ "torus": "Q^*", "unipotent": "Q" }),
                pi_coordinates: qclass_value(&pc),
                in_unipotent: g.in_unipotent(&c),
                is_zero: c.is_zero(),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiReport {
    pub pair: String,
    pub source: Value,
    pub target: Value,
    pub kernel: Value,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassReport>,
}

impl PiReport {
    pub fn to_text(&self) -> String {
        let line = |v: &Value| serde_json::to_string(v).unwrap();
        let mut s = format!(
            "pair: {}\nsource degree-0 part: {}\ntarget degree-0 part: {}\nkernel (unipotent part): {}\nexact: {}\n",
            self.pair,
            line(&self.source),
            line(&self.target),
            line(&self.kernel),
            self.exact
        );
        if let Some(c) = &self.class {
            s.push_str(&c.to_text());
        }
        s
    }
}

fn finite_pi<C: PicardCurve>(s: &PicardStructure<C>) -> Result<(Value, Value, Value, bool), ToolError> {
    let red = s.reduced_structure()?;
    let u = s.unipotent_part();
    Ok((json!(s.finite_part()), json!(red.finite_part()), json!(u), s.exactness_audit(&red)))
}

pub fn pi_report(desc: &PairDescription, cycle: Option<&str>) -> Result<PiReport, ToolError> {
    let (source, target, kernel, exact) = match desc.resolve()? {
        Pair::FiniteLine { curve, modulus, base } => finite_pi(&PicardStructure::with_base(&curve, &modulus, base)?)?,
        Pair::Elliptic { curve, modulus, base } => finite_pi(&PicardStructure::with_base(&curve, &modulus, base)?)?,
        Pair::RationalLine { modulus, base, .. } => {
            let g = PicardQ::with_base(&modulus, base)?;
            let st = g.structure();
            (
                json!({ "torus_rank": st.torus_rank, "unipotent_dimension": st.unipotent_dimension }),
                json!({ "torus_rank": st.torus_rank, "unipotent_dimension": 0 }),
                json!({ "dimension": st.unipotent_dimension }),
                true,
            )
        }
    };
    let class = cycle.map(|c| class_report(desc, c)).transpose()?;
    Ok(PiReport { pair: desc.summary(), source, target, kernel, exact, class })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(text: &str) -> PairDescription {
        PairDescription::from_json(text).unwrap()
    }

    #[test]
    fn reports() {
        let d = desc(r#"{"characteristic": 3, "curve": {"kind": "P1"}, "modulus": [{"place": "t", "mult": 2}]}"#);
        let g = group_report(&d).unwrap();
        assert_eq!(g.finite_part, Some(FinAbGroup::cyclic(3)));
        assert_eq!(g.unipotent["order"], "3");
        let c = class_report(&d, "[t-1] - [t-2]").unwrap();
        assert_eq!(c.degree, 0);
        assert!(!c.is_zero);
        assert!(c.in_unipotent);
        assert!(class_report(&d, "div((t-1)/(t+1))").unwrap().degree == 0);
        assert_eq!(class_report(&d, "[t]").unwrap_err().exit_code(), 4);
        assert_eq!(class_report(&d, "[t").unwrap_err().exit_code(), 2);
        let q = desc(
            r#"{"characteristic": 0, "curve": {"kind": "P1"}, "modulus": [{"place": "t", "mult": 2}, {"place": "t-1", "mult": 3}]}"#,
        );
        let g = group_report(&q).unwrap();
        assert_eq!(g.unipotent["dimension"], 3);
        let big = desc(
            r#"{"characteristic": 5, "extension_degree": 2, "curve": {"kind": "P1"}, "modulus": [{"place": "t", "mult": 8}]}"#,
        );
        assert_eq!(group_report(&big).unwrap_err().exit_code(), 3);
    }
}
