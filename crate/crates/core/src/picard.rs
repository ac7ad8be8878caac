//! Relative Picard groups `Pic(C, D)` over finite fields: structure, class
//! map, the projection to the reduced modulus, and the unipotent part.
//!
//! `Pic(C, D) = Z [B] + Pic^0(C, D)` for a rational base place `B`. The
//! degree-0 part is presented on generators
//!
//! * one `κ(P)^*` generator and the principal-unit model generators at each
//!   component `(P, n)` of `D`,
//! * the Jacobian generators `[P_j] - [O]`,
//!
//! with relations coming from the local models, the constants `k^*`, and the
//! Jacobian relations made explicit by principal witnesses. A 0-cycle `z` of
//! degree `d` is sent to `(d, sum c_j x_j - λ(h))` where `c` are the
//! Abel-Jacobi coordinates of `z - d[B]` and
//! `div h = z - d[B] - sum c_j ([P_j] - [O])`; `λ(h)` collects the unit parts
//! `h u_P^{-v_P(h)} mod u_P^n`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{
    series, ArithError, ExtField, Field, FinAbGroup, FiniteField, Gf, IntMatrix, PresentedGroup, TabField,
};
use crate::curve::{Curve, CurveError, EGroup, EPoint, EllipticCurve, P1Place, RatFn, P1};
use crate::local_units::{principal_unit_model, to_tab, LocalUnitError, PrincipalUnitModel, MAX_MODEL_ORDER};
use crate::modulus::{Modulus, ZeroCycle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PicardError {
    #[error("size bound exceeded: {0}")]
    TooLarge(String),
    #[error("cycle support meets the modulus at {0}")]
    SupportCollision(String),
    #[error("base place must be rational: {0}")]
    BadBase(String),
    #[error("structures do not match: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    LocalUnits(#[from] LocalUnitError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Factored function `prod f_i^{e_i}`.
pub type Factored<F> = Vec<(F, i64)>;

/// `Pic^0` of the complete curve with explicit generators.
#[derive(Debug, Clone)]
pub struct JacobianData<P> {
    /// Degree-0 cycles whose classes generate.
    pub generator_cycles: Vec<ZeroCycle<P>>,
    pub relations: Vec<Vec<i64>>,
    pub structure: FinAbGroup,
}

/// Curves over a finite field whose Jacobian is modelled.
pub trait PicardCurve: Curve<K = Gf> {
    fn default_base(&self) -> Self::Place;
    fn jacobian(&self) -> Result<JacobianData<Self::Place>, PicardError>;
    /// Coordinates `c` of a degree-0 cycle with `w - sum c_j g_j` principal.
    fn abel_jacobi(&self, w: &ZeroCycle<Self::Place>) -> Result<Vec<i64>, PicardError>;
    /// A factored function with the given principal divisor.
    fn witness(&self, w: &ZeroCycle<Self::Place>) -> Result<Factored<Self::Fun>, PicardError>;
}

impl PicardCurve for P1<Gf> {
    fn default_base(&self) -> P1Place<Gf> {
        P1Place::Infinity
    }

    fn jacobian(&self) -> Result<JacobianData<P1Place<Gf>>, PicardError> {
        Ok(JacobianData { generator_cycles: Vec::new(), relations: Vec::new(), structure: FinAbGroup::trivial() })
    }

    fn abel_jacobi(&self, _w: &ZeroCycle<P1Place<Gf>>) -> Result<Vec<i64>, PicardError> {
        Ok(Vec::new())
    }

    fn witness(&self, w: &ZeroCycle<P1Place<Gf>>) -> Result<Factored<RatFn<Gf>>, PicardError> {
        if w.degree(self) != 0 {
            return Err(PicardError::Mismatch("divisor of nonzero degree is not principal".into()));
        }
        let f = self.field();
        Ok(w.terms()
            .iter()
            .filter_map(|(p, n)| match p {
                P1Place::Finite(poly) => Some((RatFn::from_poly(f, poly.clone()), *n)),
                P1Place::Infinity => None,
            })
            .collect())
    }
}

fn egroup(e: &EllipticCurve) -> Result<Arc<EGroup>, PicardError> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, u32), Arc<EGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (e.field().p(), e.a(), e.b());
    if let Some(g) = cache.lock().unwrap().get(&key) {
        return Ok(g.clone());
    }
    let g = Arc::new(e.group()?);
    cache.lock().unwrap().insert(key, g.clone());
    Ok(g)
}

impl PicardCurve for EllipticCurve {
    fn default_base(&self) -> EPoint {
        EPoint::Infinity
    }

    fn jacobian(&self) -> Result<JacobianData<EPoint>, PicardError> {
        let g = egroup(self)?;
        let generator_cycles =
            g.generators().into_iter().map(|p| ZeroCycle::new(vec![(p, 1), (EPoint::Infinity, -1)])).collect();
        Ok(JacobianData {
            generator_cycles,
            relations: g.model.relations.clone(),
            structure: g.model.structure().clone(),
        })
    }

    fn abel_jacobi(&self, w: &ZeroCycle<EPoint>) -> Result<Vec<i64>, PicardError> {
        let g = egroup(self)?;
        let sum = w.terms().iter().fold(EPoint::Infinity, |acc, (p, n)| self.add(&acc, &self.mul(p, *n)));
        Ok(g.coords(&sum))
    }

    fn witness(&self, w: &ZeroCycle<EPoint>) -> Result<Factored<crate::curve::EFn>, PicardError> {
        Ok(self.principal_witness(w.terms())?)
    }
}

/// One component `(P, n)` of the modulus with its slice of generators.
#[derive(Debug, Clone)]
struct Block<P> {
    place: P,
    level: usize,
    kappa: ExtField<Gf>,
    model: Arc<PrincipalUnitModel>,
    offset: usize,
}

impl<P> Block<P> {
    fn tab(&self) -> &TabField {
        self.model.field()
    }

    fn width(&self) -> usize {
        1 + self.model.group_model().generators.len()
    }

    fn unit_count(&self) -> u128 {
        (self.kappa.order() as u128 - 1) * self.model.order() as u128
    }
}

/// The group `Pic(C, D)` of a curve over a finite field.
#[derive(Debug, Clone)]
pub struct PicardStructure<C: PicardCurve> {
    curve: C,
    modulus: Modulus<C::Place>,
    base: C::Place,
    blocks: Vec<Block<C::Place>>,
    jacobian: JacobianData<C::Place>,
    jac_offset: usize,
    ngens: usize,
    relations: Vec<Vec<i64>>,
    presented: PresentedGroup,
    finite: FinAbGroup,
}

/// A class in `Pic(C, D)`: degree and canonical coordinates of the
/// degree-0 part, reduced modulo the invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ModulusClass {
    pub degree: i64,
    #[serde(serialize_with = "ser_bigints")]
    pub coords: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl ModulusClass {
    pub fn is_zero(&self) -> bool {
        self.degree == 0 && self.coords.iter().all(Zero::is_zero)
    }
}

impl std::fmt::Display for ModulusClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "deg {} ; ({})", self.degree, c.join(", "))
    }
}

/// Result of solving `n x = g` on the canonical generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub n: u64,
    pub divisible: bool,
    /// Invariant factors not prime to `n`.
    pub obstructions: Vec<u64>,
    /// `x_i` with `n x_i = e_i` where one exists, as a multiplier of `e_i`.
    pub roots: Vec<Option<u64>>,
}

/// Coarse size estimate used before any model is built.
pub fn estimated_size<C: PicardCurve>(curve: &C, d: &Modulus<C::Place>) -> Result<u128, PicardError> {
    let jac = curve.jacobian()?.structure.order();
    let mut units: u128 = 1;
    for (p, n) in d.components() {
        let q = curve.residue_field(p).order() as u128;
        let local = (q - 1).saturating_mul(q.saturating_pow(*n - 1));
        units = units.saturating_mul(local);
    }
    Ok(units.saturating_mul(jac))
}

impl<C: PicardCurve> PicardStructure<C> {
    pub fn new(curve: &C, modulus: &Modulus<C::Place>) -> Result<Self, PicardError> {
        Self::with_base(curve, modulus, curve.default_base())
    }

    pub fn with_base(curve: &C, modulus: &Modulus<C::Place>, base: C::Place) -> Result<Self, PicardError> {
        if curve.place_degree(&base) != 1 {
            return Err(PicardError::BadBase(curve.fmt_place(&base)));
        }
        let size = estimated_size(curve, modulus)?;
        if size > MAX_MODEL_ORDER as u128 {
            return Err(PicardError::TooLarge(format!("|(O_D)^*| |Pic^0| = {size}")));
        }
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (p, n) in modulus.components() {
            let kappa = curve.residue_field(p);
            let model = principal_unit_model(&kappa, *n as usize)?;
            let b = Block { place: p.clone(), level: *n as usize, kappa, model, offset };
            offset += b.width();
            blocks.push(b);
        }
        let jacobian = curve.jacobian()?;
        let jac_offset = offset;
        let ngens = offset + jacobian.generator_cycles.len();

        let mut s = PicardStructure {
            curve: curve.clone(),
            modulus: modulus.clone(),
            base,
            blocks,
            jacobian,
            jac_offset,
            ngens,
            relations: Vec::new(),
            presented: PresentedGroup::new(0, &IntMatrix::zeros(0, 0)),
            finite: FinAbGroup::trivial(),
        };
        let mut rows = Vec::new();
        for b in &s.blocks {
            let mut row = vec![0; ngens];
            row[b.offset] = b.kappa.order() as i64 - 1;
            rows.push(row);
            for r in &b.model.group_model().relations {
                let mut row = vec![0; ngens];
                row[b.offset + 1..b.offset + 1 + r.len()].copy_from_slice(r);
                rows.push(row);
            }
        }
        if !s.blocks.is_empty() {
            let f = curve.base_field();
            let tab = TabField::new(f)?;
            let gamma = f.index_to_elem(tab.generator() as u64);
            let mut row = vec![0; ngens];
            for b in &s.blocks {
                let g = b.kappa.embed(&gamma);
                row[b.offset] = b.tab().dlog(b.kappa.elem_to_index(&g) as u32).expect("unit") as i64;
            }
            rows.push(row);
        }
        for r in s.jacobian.relations.clone() {
            let cycle = s.combine_generators(&r);
            let h = curve.witness(&cycle)?;
            let mut row = s.unit_coords(&h)?;
            for (j, rj) in r.iter().enumerate() {
                row[jac_offset + j] += rj;
            }
            rows.push(row);
        }
        let presented = PresentedGroup::new(ngens, &IntMatrix::from_rows(ngens, &rows));
        if presented.free_rank() != 0 {
            return Err(PicardError::Mismatch("degree-0 presentation is not finite".into()));
        }
        s.finite = presented.torsion()?;
        s.presented = presented;
        s.relations = rows;
        Ok(s)
    }

    pub fn curve(&self) -> &C {
        &self.curve
    }

    pub fn modulus(&self) -> &Modulus<C::Place> {
        &self.modulus
    }

    pub fn base(&self) -> &C::Place {
        &self.base
    }

    /// Free rank of `Pic(C, D)`: the degree.
    pub fn free_rank(&self) -> usize {
        1
    }

    /// Torsion of `Pic(C, D)`, i.e. the degree-0 part.
    pub fn finite_part(&self) -> &FinAbGroup {
        &self.finite
    }

    pub fn jacobian_structure(&self) -> &FinAbGroup {
        &self.jacobian.structure
    }

    pub fn characteristic(&self) -> u64 {
        self.curve.base_field().characteristic()
    }

    /// `|(O_D)^*|`.
    pub fn unit_group_order(&self) -> u128 {
        self.blocks.iter().map(Block::unit_count).product()
    }

    pub fn base_field_order(&self) -> u128 {
        self.curve.base_field().order() as u128
    }

    pub fn presentation(&self) -> (usize, &[Vec<i64>]) {
        (self.ngens, &self.relations)
    }

    /// Human-readable description of each presentation generator.
    pub fn generator_dictionary(&self) -> Vec<String> {
        let mut out = Vec::new();
        for b in &self.blocks {
            let p = self.curve.fmt_place(&b.place);
            let tab = b.tab();
            out.push(format!("unit at {p}: primitive element #{} of κ, level {}", tab.generator(), b.level));
            for g in b.model.generator_series() {
                let terms: Vec<String> = g
                    .iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| format!("#{c} u^{i}"))
                    .collect();
                out.push(format!("principal unit at {p}: 1 + {}", terms.join(" + ")));
            }
        }
        for c in &self.jacobian.generator_cycles {
            out.push(format!("jacobian: {}", c.fmt_with(&self.curve)));
        }
        out
    }

    fn combine_generators(&self, coeffs: &[i64]) -> ZeroCycle<C::Place> {
        let mut z = ZeroCycle::zero();
        for (c, g) in coeffs.iter().zip(&self.jacobian.generator_cycles) {
            z = z.add(&g.scale(*c));
        }
        z
    }

    /// `λ` of a factored function, in presentation coordinates.
    fn unit_coords(&self, h: &Factored<C::Fun>) -> Result<Vec<i64>, PicardError> {
        let mut out = vec![0i64; self.ngens];
        for b in &self.blocks {
            let tab = b.tab();
            let modulus_kappa = b.kappa.order() as i64 - 1;
            for (f, e) in h {
                let (_, s) = self.curve.laurent(f, &b.place, b.level)?;
                let s = to_tab(&b.kappa, &s);
                let a0 = s[0];
                let l = tab.dlog(a0).ok_or(CurveError::ZeroFunction)? as i64;
                let pr = series::scale(tab, &s, &tab.inv(&a0).unwrap());
                let pc = b.model.coords_of(&pr)?;
                out[b.offset] = (out[b.offset] + e * l).rem_euclid(modulus_kappa);
                for (j, c) in pc.iter().enumerate() {
                    out[b.offset + 1 + j] += e * c;
                }
            }
        }
        Ok(out)
    }

    /// Presentation coordinates of the degree-0 part of `z` (not reduced).
    pub fn raw_class(&self, z: &ZeroCycle<C::Place>) -> Result<(i64, Vec<i64>), PicardError> {
        let hits = z.collisions(&self.modulus);
        if let Some(p) = hits.first() {
            return Err(PicardError::SupportCollision(self.curve.fmt_place(p)));
        }
        let d = z.degree(&self.curve);
        let w0 = z.sub(&ZeroCycle::point(self.base.clone()).scale(d));
        let c = self.curve.abel_jacobi(&w0)?;
        let w = w0.sub(&self.combine_generators(&c));
        let h = self.curve.witness(&w)?;
        let mut x: Vec<i64> = self.unit_coords(&h)?.into_iter().map(|v| -v).collect();
        for (j, cj) in c.iter().enumerate() {
            x[self.jac_offset + j] += cj;
        }
        Ok((d, x))
    }

    pub fn class_of(&self, z: &ZeroCycle<C::Place>) -> Result<ModulusClass, PicardError> {
        let (d, x) = self.raw_class(z)?;
        Ok(ModulusClass { degree: d, coords: self.presented.coordinates_i64(&x) })
    }

    /// Class of `div f`.
    pub fn class_of_function(&self, f: &Factored<C::Fun>) -> Result<ModulusClass, PicardError> {
        let z = crate::modulus::factored_divisor(&self.curve, f)?;
        self.class_of(&z)
    }

    pub fn zero(&self) -> ModulusClass {
        ModulusClass { degree: 0, coords: vec![BigInt::zero(); self.presented.coordinate_moduli().len()] }
    }

    pub fn add(&self, a: &ModulusClass, b: &ModulusClass) -> ModulusClass {
        let sum: Vec<BigInt> = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        ModulusClass { degree: a.degree + b.degree, coords: self.reduce(&sum) }
    }

    pub fn scale(&self, a: &ModulusClass, k: i64) -> ModulusClass {
        let v: Vec<BigInt> = a.coords.iter().map(|x| x * k).collect();
        ModulusClass { degree: a.degree * k, coords: self.reduce(&v) }
    }

    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter()
            .zip(self.presented.coordinate_moduli())
            .map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(&d) })
            .collect()
    }

    /// The projection to `Pic(C, D_red)`; `red` must be built on the same
    /// curve and base with the reduced modulus.
    pub fn pi_map(&self, red: &PicardStructure<C>, c: &ModulusClass) -> Result<ModulusClass, PicardError> {
        if red.modulus != self.modulus.reduced() || red.base != self.base {
            return Err(PicardError::Mismatch("target is not the reduced-modulus structure".into()));
        }
        let x = self.presented.lift(&c.coords);
        let mut y = vec![BigInt::zero(); red.ngens];
        for (b, rb) in self.blocks.iter().zip(&red.blocks) {
            y[rb.offset] = x[b.offset].clone();
        }
        for j in 0..self.jacobian.generator_cycles.len() {
            y[red.jac_offset + j] = x[self.jac_offset + j].clone();
        }
        Ok(ModulusClass { degree: c.degree, coords: red.presented.coordinates(&y) })
    }

    pub fn reduced_structure(&self) -> Result<PicardStructure<C>, PicardError> {
        PicardStructure::with_base(&self.curve, &self.modulus.reduced(), self.base.clone())
    }

    /// `⊕ (1 + m_P)/(1 + m_P^n)`, the kernel of the projection.
    pub fn unipotent_part(&self) -> FinAbGroup {
        self.blocks.iter().fold(FinAbGroup::trivial(), |acc, b| acc.direct_sum(b.model.structure()))
    }

    /// Image of the principal-unit generator `j` at block `i`, used to
    /// sample elements of the unipotent part.
    pub fn unipotent_generators(&self) -> Vec<ModulusClass> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for j in 0..b.width() - 1 {
                let mut x = vec![0; self.ngens];
                x[b.offset + 1 + j] = 1;
                out.push(ModulusClass { degree: 0, coords: self.presented.coordinates_i64(&x) });
            }
        }
        out
    }

    /// `(p-primary, prime-to-p)` parts of the degree-0 part.
    pub fn torsion_decomposition(&self) -> (FinAbGroup, FinAbGroup) {
        let p = self.characteristic();
        (self.finite.p_part(p), self.finite.prime_to_part(p))
    }

    /// `|Pic^0(C, D)| = |U| |Pic^0(C, D_red)|`.
    pub fn exactness_audit(&self, red: &PicardStructure<C>) -> bool {
        self.finite.order() == self.unipotent_part().order() * red.finite.order()
    }

    /// `|Pic^0(C, D)| = |Pic^0(C)| |(O_D)^*| / (q - 1)` for `D != 0`.
    pub fn lang_order_check(&self) -> bool {
        let expected = if self.blocks.is_empty() {
            self.jacobian.structure.order()
        } else {
            self.jacobian.structure.order() * self.unit_group_order() / (self.base_field_order() - 1)
        };
        self.finite.order() == expected
    }

    /// Solve `n x = e_i` on each canonical generator of the degree-0 part.
    pub fn divisibility_check(&self, n: u64) -> DivisibilityReport {
        divisibility_of(&self.finite, n)
    }

    /// Is `c` in the unipotent part, i.e. of degree 0 and killed by the
    /// projection.
    pub fn in_unipotent(&self, red: &PicardStructure<C>, c: &ModulusClass) -> Result<bool, PicardError> {
        Ok(c.degree == 0 && self.pi_map(red, c)?.is_zero())
    }

    pub fn coordinate_moduli(&self) -> Vec<BigInt> {
        self.presented.coordinate_moduli()
    }
}

pub fn divisibility_of(g: &FinAbGroup, n: u64) -> DivisibilityReport {
    let mut roots = Vec::new();
    let mut obstructions = Vec::new();
    for &d in g.invariant_factors() {
        let (nn, dd) = (BigInt::from(n), BigInt::from(d));
        let e = nn.extended_gcd(&dd);
        if e.gcd.is_one() {
            let r = e.x.mod_floor(&dd).to_u64().unwrap();
            debug_assert_eq!((r as u128 * n as u128) % d as u128, 1 % d as u128);
            roots.push(Some(r));
        } else {
            roots.push(None);
            obstructions.push(d);
        }
    }
    DivisibilityReport { n, divisible: obstructions.is_empty(), obstructions, roots }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(f: &Gf, a: i64) -> P1Place<Gf> {
        P1Place::rational(f, &f.from_int(a))
    }

    #[test]
    fn small_p1_structures() {
        let f7 = Gf::prime(7).unwrap();
        let line = P1::new(f7);
        let s = PicardStructure::new(&line, &Modulus::new(vec![(P1Place::Infinity, 1)]).unwrap()).unwrap();
        assert!(s.finite_part().is_trivial());
        let f3 = Gf::prime(3).unwrap();
        let line3 = P1::new(f3);
        let s = PicardStructure::new(&line3, &Modulus::new(vec![(at(&f3, 0), 2)]).unwrap()).unwrap();
        assert_eq!(s.finite_part(), &FinAbGroup::cyclic(3));
        assert_eq!(s.unipotent_part(), FinAbGroup::cyclic(3));
        let f5 = Gf::prime(5).unwrap();
        let line5 = P1::new(f5);
        let s = PicardStructure::new(&line5, &Modulus::new(vec![(at(&f5, 0), 1), (at(&f5, -1), 1)]).unwrap()).unwrap();
        assert_eq!(s.finite_part(), &FinAbGroup::cyclic(4));
        let (pp, prime_to) = s.torsion_decomposition();
        assert!(pp.is_trivial());
        assert_eq!(prime_to, FinAbGroup::cyclic(4));
    }

    #[test]
    fn class_example_on_p1() {
        let f3 = Gf::prime(3).unwrap();
        let line = P1::new(f3);
        let d = Modulus::new(vec![(at(&f3, 0), 2)]).unwrap();
        let s = PicardStructure::new(&line, &d).unwrap();
        let z = ZeroCycle::new(vec![(at(&f3, 1), 1), (at(&f3, 2), -1)]);
        let c = s.class_of(&z).unwrap();
        assert_eq!(c.degree, 0);
        assert!(!c.is_zero());
        let red = s.reduced_structure().unwrap();
        assert!(s.in_unipotent(&red, &c).unwrap());
        assert_eq!(s.class_of(&ZeroCycle::point(at(&f3, 0))), Err(PicardError::SupportCollision("t".into())));
    }

    #[test]
    fn elliptic_orders() {
        let e = EllipticCurve::new(5, 1, 0).unwrap();
        let d = Modulus::new(vec![(EPoint::Infinity, 2)]).unwrap();
        let s = PicardStructure::new(&e, &d).unwrap();
        assert_eq!(s.finite_part().order(), 20);
        assert!(s.lang_order_check());
        let red = s.reduced_structure().unwrap();
        assert_eq!(red.finite_part().order(), 4);
        assert!(s.exactness_audit(&red));
        let p = |x, y| e.point(x, y).unwrap();
        let z = ZeroCycle::new(vec![(p(2, 0), 2), (p(3, 0), -2)]);
        assert!(s.class_of(&z).unwrap().is_zero());
        let z1 = ZeroCycle::new(vec![(p(2, 0), 1), (p(3, 0), -1)]);
        let c1 = s.class_of(&z1).unwrap();
        assert_eq!(s.scale(&c1, 2), s.zero());
    }
}
