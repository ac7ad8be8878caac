//! The quotients `(1 + m_P) / (1 + m_P^n)`: enumerated finite models in
//! characteristic `p`, truncated log/exp in characteristic 0.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{
    decompose_dense, series, ArithError, ExtField, Field, FinAbGroup, FiniteField, FiniteGroupModel, Gf, Rationals,
    TabField,
};
use crate::curve::Curve;

/// Hard cap on enumerated model sizes.
pub const MAX_MODEL_ORDER: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalUnitError {
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("local unit group of order {0} exceeds the enumeration bound")]
    TooLarge(u128),
    #[error("not a principal unit (constant term must be 1)")]
    NotPrincipal,
    #[error("operation needs characteristic 0")]
    NeedsCharZero,
    #[error("operation needs positive characteristic")]
    NeedsCharP,
    #[error("no {n}-th roots in general: {n} is divisible by the characteristic")]
    NoRoot { n: u64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Shape of a local unit quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalUnitStructure {
    Finite(FinAbGroup),
    /// A vector space over the residue field.
    VectorSpace {
        dimension: usize,
    },
}

/// `(1 + m_P) / (1 + m_P^n)` at a place of a curve.
#[derive(Debug, Clone)]
pub struct LocalUnitGroup<P> {
    pub place: P,
    pub level: usize,
    pub model: LocalUnitModel,
}

#[derive(Debug, Clone)]
pub enum LocalUnitModel {
    Enumerated(Arc<PrincipalUnitModel>),
    LogModel { dimension: usize },
}

impl<P> LocalUnitGroup<P> {
    pub fn structure(&self) -> LocalUnitStructure {
        match &self.model {
            LocalUnitModel::Enumerated(m) => LocalUnitStructure::Finite(m.structure().clone()),
            LocalUnitModel::LogModel { dimension } => LocalUnitStructure::VectorSpace { dimension: *dimension },
        }
    }
}

/// Series encoding shared by the model: `1 + a_1 u + .. + a_{n-1} u^{n-1}`
/// has index `sum a_i q^{i-1}`.
#[derive(Debug, Clone)]
struct Codec {
    field: TabField,
    level: usize,
}

impl Codec {
    fn decode(&self, mut idx: usize) -> Vec<u32> {
        let q = self.field.order() as usize;
        let mut s = vec![1u32];
        for _ in 1..self.level {
            s.push((idx % q) as u32);
            idx /= q;
        }
        s
    }

    fn encode(&self, s: &[u32]) -> Result<usize, LocalUnitError> {
        if s.first() != Some(&1) {
            return Err(LocalUnitError::NotPrincipal);
        }
        let q = self.field.order() as usize;
        Ok((1..self.level).rev().fold(0, |acc, i| acc * q + s.get(i).copied().unwrap_or(0) as usize))
    }

    fn mul_index(&self, a: usize, b: usize) -> usize {
        let prod = series::mul(&self.field, &self.decode(a), &self.decode(b));
        self.encode(&prod).expect("principal units are closed under products")
    }
}

/// Enumerated principal units over a tabulated residue field.
#[derive(Debug)]
pub struct PrincipalUnitModel {
    codec: Codec,
    model: FiniteGroupModel,
}

impl PrincipalUnitModel {
    pub fn build(field: TabField, level: usize) -> Result<Self, LocalUnitError> {
        if level == 0 {
            return Err(LocalUnitError::ZeroLevel);
        }
        let q = field.order() as u128;
        let order = q.pow(level as u32 - 1);
        if order > MAX_MODEL_ORDER as u128 {
            return Err(LocalUnitError::TooLarge(order));
        }
        let codec = Codec { field, level };
        let model = decompose_dense(order as usize, 0, |a, b| codec.mul_index(a, b))?;
        Ok(PrincipalUnitModel { codec, model })
    }

    pub fn field(&self) -> &TabField {
        &self.codec.field
    }

    pub fn level(&self) -> usize {
        self.codec.level
    }

    pub fn order(&self) -> usize {
        self.model.order()
    }

    pub fn structure(&self) -> &FinAbGroup {
        self.model.structure()
    }

    pub fn group_model(&self) -> &FiniteGroupModel {
        &self.model
    }

    pub fn decode(&self, idx: usize) -> Vec<u32> {
        self.codec.decode(idx)
    }

    /// Index of a principal unit series; terms beyond the level are ignored.
    pub fn encode(&self, s: &[u32]) -> Result<usize, LocalUnitError> {
        self.codec.encode(s)
    }

    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.codec.mul_index(a, b)
    }

    pub fn pow_index(&self, a: usize, e: u64) -> usize {
        let s = series::pow(&self.codec.field, &self.decode(a), e);
        self.encode(&s).expect("principal")
    }

    /// Coordinates on the model generators.
    pub fn coords_of(&self, s: &[u32]) -> Result<Vec<i64>, LocalUnitError> {
        Ok(self.model.coords_of(self.encode(s)?))
    }

    pub fn generator_series(&self) -> Vec<Vec<u32>> {
        self.model.generators.iter().map(|&g| self.decode(g)).collect()
    }
}

fn model_cache() -> &'static Mutex<HashMap<(String, usize), Arc<PrincipalUnitModel>>> {
    static CACHE: OnceLock<Mutex<HashMap<(String, usize), Arc<PrincipalUnitModel>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The cached enumerated model of `(1 + m)/(1 + m^n)` with residue field `kappa`.
pub fn principal_unit_model<K: FiniteField>(kappa: &K, n: usize) -> Result<Arc<PrincipalUnitModel>, LocalUnitError> {
    if n == 0 {
        return Err(LocalUnitError::ZeroLevel);
    }
    let order = (kappa.order() as u128).checked_pow(n as u32 - 1).unwrap_or(u128::MAX);
    if order > MAX_MODEL_ORDER as u128 {
        return Err(LocalUnitError::TooLarge(order));
    }
    let key = (format!("{kappa:?}"), n);
    if let Some(m) = model_cache().lock().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let m = Arc::new(PrincipalUnitModel::build(TabField::new(kappa)?, n)?);
    model_cache().lock().unwrap().insert(key, m.clone());
    Ok(m)
}

/// Move a series over `kappa` to the tabulated representation.
pub fn to_tab<K: FiniteField>(kappa: &K, s: &[K::Elem]) -> Vec<u32> {
    s.iter().map(|c| kappa.elem_to_index(c) as u32).collect()
}

/// Base fields of curves for which local unit quotients are modelled.
pub trait LocalUnitField: Field {
    fn local_units(kappa: &ExtField<Self>, n: usize) -> Result<LocalUnitModel, LocalUnitError>;
}

impl LocalUnitField for Gf {
    fn local_units(kappa: &ExtField<Self>, n: usize) -> Result<LocalUnitModel, LocalUnitError> {
        Ok(LocalUnitModel::Enumerated(principal_unit_model(kappa, n)?))
    }
}

impl LocalUnitField for Rationals {
    fn local_units(_kappa: &ExtField<Self>, n: usize) -> Result<LocalUnitModel, LocalUnitError> {
        if n == 0 {
            return Err(LocalUnitError::ZeroLevel);
        }
        Ok(LocalUnitModel::LogModel { dimension: n - 1 })
    }
}

pub fn local_unit_group<C: Curve>(
    curve: &C,
    place: &C::Place,
    n: usize,
) -> Result<LocalUnitGroup<C::Place>, LocalUnitError>
where
    C::K: LocalUnitField,
{
    let model = C::K::local_units(&curve.residue_field(place), n)?;
    Ok(LocalUnitGroup { place: place.clone(), level: n, model })
}

/// Invariant factors in characteristic `p`, dimension over `κ(P)` in
/// characteristic 0.
pub fn local_unit_structure<C: Curve>(
    curve: &C,
    place: &C::Place,
    n: usize,
) -> Result<LocalUnitStructure, LocalUnitError>
where
    C::K: LocalUnitField,
{
    Ok(local_unit_group(curve, place, n)?.structure())
}

/// `log s` truncated below degree `n = s.len()`.
pub fn truncated_log<F: Field>(f: &F, s: &[F::Elem]) -> Result<Vec<F::Elem>, LocalUnitError> {
    if f.characteristic() != 0 {
        return Err(LocalUnitError::NeedsCharZero);
    }
    series::log1p(f, s).ok_or(LocalUnitError::NotPrincipal)
}

/// Inverse of [`truncated_log`] on series without constant term.
pub fn truncated_exp<F: Field>(f: &F, m: &[F::Elem]) -> Result<Vec<F::Elem>, LocalUnitError> {
    if f.characteristic() != 0 {
        return Err(LocalUnitError::NeedsCharZero);
    }
    series::exp(f, m).ok_or(LocalUnitError::NotPrincipal)
}

/// Smallest `m` with `p^m >= n`.
pub fn p_power_exponent(characteristic: u64, n: u64) -> Result<u32, LocalUnitError> {
    if characteristic == 0 {
        return Err(LocalUnitError::NeedsCharP);
    }
    let mut m = 0;
    let mut pm: u128 = 1;
    while pm < n as u128 {
        pm *= characteristic as u128;
        m += 1;
    }
    Ok(m)
}

/// The unique `x` in `(1 + m)/(1 + m^len)` with `x^n = s`.
pub fn nth_root_in_quotient<F: Field>(f: &F, s: &[F::Elem], n: u64) -> Result<Vec<F::Elem>, LocalUnitError> {
    if n == 0 {
        return Err(LocalUnitError::NoRoot { n });
    }
    if !s.first().is_some_and(|c| f.is_one(c)) {
        return Err(LocalUnitError::NotPrincipal);
    }
    let p = f.characteristic();
    if p == 0 {
        let l = truncated_log(f, s)?;
        let l = series::scale(f, &l, &f.inv(&f.from_int(n as i64)).unwrap());
        return truncated_exp(f, &l);
    }
    if n % p == 0 {
        return Err(LocalUnitError::NoRoot { n });
    }
    // the quotient is killed by p^m
    let m = p_power_exponent(p, s.len() as u64)?;
    let pm = (p as u128).pow(m);
    let inv = modinv_u128(n as u128 % pm, pm);
    Ok(series::pow(f, s, inv as u64))
}

fn modinv_u128(a: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(m as i128) as u128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::curve::{P1Place, P1};

    #[test]
    fn small_structures() {
        let f2 = Gf::prime(2).unwrap();
        let line = P1::new(f2);
        let t = P1Place::rational(&f2, &f2.zero());
        let s = |n| local_unit_structure(&line, &t, n).unwrap();
        assert_eq!(s(1), LocalUnitStructure::Finite(FinAbGroup::trivial()));
        assert_eq!(s(2), LocalUnitStructure::Finite(FinAbGroup::cyclic(2)));
        assert_eq!(s(4), LocalUnitStructure::Finite(FinAbGroup::from_invariants(vec![2, 4]).unwrap()));
        let q = P1::new(Rationals);
        let t0 = P1Place::rational(&Rationals, &rat(0, 1));
        assert_eq!(local_unit_structure(&q, &t0, 3).unwrap(), LocalUnitStructure::VectorSpace { dimension: 2 });
    }

    #[test]
    fn model_coordinates_are_homomorphic() {
        let k = ExtField::new(Gf::prime(2).unwrap(), crate::arith::Poly::from_ints(&Gf::prime(2).unwrap(), &[1, 1, 1]));
        let m = principal_unit_model(&k, 3).unwrap();
        assert_eq!(m.order(), 16);
        let moduli: Vec<i64> = m.group_model().relative_orders();
        for a in 0..m.order() {
            for b in 0..m.order() {
                let ab = m.mul_index(a, b);
                let (ca, cb, cab) =
                    (m.group_model().coords_of(a), m.group_model().coords_of(b), m.group_model().coords_of(ab));
                let lhs: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
                let pres = m.group_model().presented();
                let big = |v: &[i64]| pres.coordinates_i64(v);
                assert_eq!(big(&lhs), big(&cab), "{a} {b} {moduli:?}");
            }
        }
    }

    #[test]
    fn log_examples() {
        let q = Rationals;
        let s = vec![rat(1, 1), rat(1, 1), rat(0, 1)];
        assert_eq!(truncated_log(&q, &s).unwrap(), vec![rat(0, 1), rat(1, 1), rat(-1, 2)]);
        assert_eq!(truncated_log(&q, &series::one(&q, 4)).unwrap(), vec![rat(0, 1); 4]);
        assert_eq!(
            truncated_log(&Gf::prime(3).unwrap(), &series::one(&Gf::prime(3).unwrap(), 2)),
            Err(LocalUnitError::NeedsCharZero)
        );
    }

    #[test]
    fn p_power_exponents() {
        assert_eq!(p_power_exponent(2, 3), Ok(2));
        assert_eq!(p_power_exponent(5, 5), Ok(1));
        assert_eq!(p_power_exponent(7, 1), Ok(0));
        assert_eq!(p_power_exponent(0, 3), Err(LocalUnitError::NeedsCharP));
        let f2 = Gf::prime(2).unwrap();
        let s = vec![f2.one(), f2.one(), f2.zero()];
        assert_eq!(series::pow(&f2, &s, 4), series::one(&f2, 3));
    }

    #[test]
    fn roots() {
        let q = Rationals;
        let s = vec![rat(1, 1), rat(1, 1), rat(0, 1)];
        assert_eq!(nth_root_in_quotient(&q, &s, 2).unwrap(), vec![rat(1, 1), rat(1, 2), rat(-1, 8)]);
        assert_eq!(nth_root_in_quotient(&q, &s, 1).unwrap(), s);
        let f3 = Gf::prime(3).unwrap();
        let e = vec![f3.one(), f3.from_int(2), f3.one()];
        let x = nth_root_in_quotient(&f3, &e, 2).unwrap();
        assert_eq!(x, series::pow(&f3, &e, 2));
        assert_eq!(series::mul(&f3, &x, &x), e);
        assert_eq!(nth_root_in_quotient(&f3, &e, 3), Err(LocalUnitError::NoRoot { n: 3 }));
    }
}
