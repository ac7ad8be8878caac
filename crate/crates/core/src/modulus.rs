//! Moduli (effective divisors), 0-cycles, the modulus condition on
//! functions, and norms and pullbacks along finite maps `P^1 -> P^1`.

use std::collections::BTreeMap;

use crate::arith::{series, ExtField, Field, Poly};
use crate::curve::{Curve, CurveError, P1Place, PlaceField, RatFn, RatFnField, P1};

/// `D = sum n_i [P_i]` with distinct places and `n_i >= 1`, sorted by place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus<P> {
    components: Vec<(P, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModulusError {
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("place listed twice in a modulus")]
    DuplicatePlace,
}

impl<P: Clone + Ord> Modulus<P> {
    pub fn new(components: Vec<(P, u32)>) -> Result<Self, ModulusError> {
        if components.iter().any(|(_, n)| *n == 0) {
            return Err(ModulusError::ZeroMultiplicity);
        }
        let mut components = components;
        components.sort_by(|a, b| a.0.cmp(&b.0));
        if components.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(ModulusError::DuplicatePlace);
        }
        Ok(Modulus { components })
    }

    pub fn zero() -> Self {
        Modulus { components: Vec::new() }
    }

    pub fn components(&self) -> &[(P, u32)] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn support(&self) -> Vec<P> {
        self.components.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn contains(&self, p: &P) -> bool {
        self.components.binary_search_by(|(q, _)| q.cmp(p)).is_ok()
    }

    pub fn multiplicity(&self, p: &P) -> u32 {
        self.components.iter().find(|(q, _)| q == p).map_or(0, |(_, n)| *n)
    }

    /// `D_red`, every multiplicity set to 1.
    pub fn reduced(&self) -> Self {
        Modulus { components: self.components.iter().map(|(p, _)| (p.clone(), 1)).collect() }
    }

    pub fn is_reduced(&self) -> bool {
        self.components.iter().all(|(_, n)| *n == 1)
    }

    /// `D' <= D` componentwise.
    pub fn le(&self, other: &Self) -> bool {
        self.components.iter().all(|(p, n)| other.multiplicity(p) >= *n)
    }

    pub fn total_degree<C: Curve<Place = P>>(&self, curve: &C) -> u64 {
        self.components.iter().map(|(p, n)| *n as u64 * curve.place_degree(p) as u64).sum()
    }

    pub fn fmt_with<C: Curve<Place = P>>(&self, curve: &C) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.components.iter().map(|(p, n)| format!("{n}[{}]", curve.fmt_place(p))).collect();
        parts.join(" + ")
    }
}

/// A 0-cycle `sum m_i [P_i]`, normalised: sorted, merged, zeros dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCycle<P> {
    terms: Vec<(P, i64)>,
}

impl<P: Clone + Ord> ZeroCycle<P> {
    pub fn new(terms: impl IntoIterator<Item = (P, i64)>) -> Self {
        let mut acc: BTreeMap<P, i64> = BTreeMap::new();
        for (p, m) in terms {
            *acc.entry(p).or_insert(0) += m;
        }
        ZeroCycle { terms: acc.into_iter().filter(|(_, m)| *m != 0).collect() }
    }

    pub fn zero() -> Self {
        ZeroCycle { terms: Vec::new() }
    }

    pub fn point(p: P) -> Self {
        ZeroCycle { terms: vec![(p, 1)] }
    }

    pub fn terms(&self) -> &[(P, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.terms.iter().map(|(p, m)| (p.clone(), m * k)))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn degree<C: Curve<Place = P>>(&self, curve: &C) -> i64 {
        self.terms.iter().map(|(p, m)| m * curve.place_degree(p) as i64).sum()
    }

    /// Places shared with the support of `d`.
    pub fn collisions(&self, d: &Modulus<P>) -> Vec<P> {
        self.terms.iter().filter(|(p, _)| d.contains(p)).map(|(p, _)| p.clone()).collect()
    }

    /// Positive part.
    pub fn positive(&self) -> Self {
        ZeroCycle { terms: self.terms.iter().filter(|(_, m)| *m > 0).cloned().collect() }
    }

    pub fn fmt_with<C: Curve<Place = P>>(&self, curve: &C) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (p, m)) in self.terms.iter().enumerate() {
            let sign = if *m < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                s.push(' ');
            }
            s.push_str(sign);
            if i > 0 {
                s.push(' ');
            }
            if m.abs() != 1 {
                s.push_str(&format!("{}", m.abs()));
            }
            s.push_str(&format!("[{}]", curve.fmt_place(p)));
        }
        s
    }
}

pub fn divisor_of<C: Curve>(curve: &C, f: &C::Fun) -> Result<ZeroCycle<C::Place>, CurveError> {
    Ok(ZeroCycle::new(curve.divisor_of(f)?))
}

/// `f` is in `G(C, D)`: `v_P(f - 1) >= n` at every component `(P, n)`.
pub fn in_modulus_group<C: Curve>(curve: &C, f: &C::Fun, d: &Modulus<C::Place>) -> Result<bool, CurveError> {
    if curve.fun_is_zero(f) {
        return Err(CurveError::ZeroFunction);
    }
    let g = curve.fun_sub(f, &curve.fun_one());
    if curve.fun_is_zero(&g) {
        return Ok(true);
    }
    for (p, n) in d.components() {
        if curve.valuation(&g, p)? < *n as i64 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The modulus condition for a product `prod f_i^{e_i}` kept in factored
/// form: at each component the product is a unit whose expansion is
/// `1 + O(u^n)`.
pub fn factored_in_modulus_group<C: Curve>(
    curve: &C,
    factors: &[(C::Fun, i64)],
    d: &Modulus<C::Place>,
) -> Result<bool, CurveError> {
    for (p, n) in d.components() {
        let n = *n as usize;
        let kappa = curve.residue_field(p);
        let mut v = 0;
        let mut s = series::one(&kappa, n);
        for (f, e) in factors {
            let (vf, sf) = curve.laurent(f, p, n)?;
            v += vf * e;
            s = series::mul(&kappa, &s, &series::pow_signed(&kappa, &sf, *e).expect("unit series"));
        }
        if v != 0 || s != series::one(&kappa, n) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Divisor of `prod f_i^{e_i}`.
pub fn factored_divisor<C: Curve>(curve: &C, factors: &[(C::Fun, i64)]) -> Result<ZeroCycle<C::Place>, CurveError> {
    let mut terms = Vec::new();
    for (f, e) in factors {
        terms.extend(curve.divisor_of(f)?.into_iter().map(|(p, m)| (p, m * e)));
    }
    Ok(ZeroCycle::new(terms))
}

/// `Norm_{k(s)/k(t)} g` for the extension defined by `t = phi(s)`.
pub fn norm_along_cover<F: PlaceField>(field: &F, phi: &RatFn<F>, g: &RatFn<F>) -> Result<RatFn<F>, CurveError> {
    if g.is_zero() {
        return Err(CurveError::ZeroFunction);
    }
    if phi.is_constant() {
        return Err(CurveError::Unsupported("constant map".into()));
    }
    let kt = RatFnField { base: field.clone() };
    let t = RatFn::t(field);
    let d = phi.map_degree();
    // phi_n(s) - t phi_d(s) as a polynomial in s over k(t)
    let cover_coeffs: Vec<RatFn<F>> = (0..=d)
        .map(|i| {
            let a = RatFn::constant(field, phi.num().coeff(field, i));
            let b = RatFn::constant(field, phi.den().coeff(field, i));
            a.sub(&b.mul(&t, field), field)
        })
        .collect();
    let cover = Poly::new(&kt, cover_coeffs);
    let lc = cover.lc(&kt);
    let norm_poly = |p: &Poly<F>| -> RatFn<F> {
        let lifted = Poly::new(&kt, p.coeffs().iter().map(|c| RatFn::constant(field, c.clone())).collect());
        let res = cover.resultant(&lifted, &kt);
        res.div(&lc.pow(p.deg() as i64, field).unwrap(), field).unwrap()
    };
    Ok(norm_poly(g.num()).div(&norm_poly(g.den()), field).expect("nonzero norm"))
}

/// Image of a place of the source line under `phi`, with the residue degree.
pub fn image_place<F: PlaceField>(field: &F, phi: &RatFn<F>, q: &P1Place<F>) -> (P1Place<F>, usize) {
    match q {
        P1Place::Infinity => {
            let (dn, dd) = (phi.num().deg(), phi.den().deg());
            let place = if dn > dd {
                P1Place::Infinity
            } else if dn < dd {
                P1Place::rational(field, &field.zero())
            } else {
                P1Place::rational(field, &field.div(&phi.num().lc(field), &phi.den().lc(field)).unwrap())
            };
            (place, 1)
        }
        P1Place::Finite(qp) => {
            let kappa = ExtField::new(field.clone(), qp.clone());
            let den = kappa.from_poly(phi.den());
            if kappa.is_zero(&den) {
                return (P1Place::Infinity, qp.deg());
            }
            let alpha = kappa.mul(&kappa.from_poly(phi.num()), &kappa.inv(&den).unwrap());
            let m = kappa.min_poly(&alpha);
            let f = qp.deg() / m.deg();
            (P1Place::Finite(m), f)
        }
    }
}

/// `phi_*` on 0-cycles of the source line.
pub fn pushforward<F: PlaceField>(field: &F, phi: &RatFn<F>, z: &ZeroCycle<P1Place<F>>) -> ZeroCycle<P1Place<F>> {
    ZeroCycle::new(z.terms().iter().map(|(q, m)| {
        let (p, f) = image_place(field, phi, q);
        (p, m * f as i64)
    }))
}

/// `phi^* D = sum_P n_P sum_{Q | P} e(Q|P) [Q]`.
pub fn modulus_pullback<F: PlaceField>(
    field: &F,
    phi: &RatFn<F>,
    d: &Modulus<P1Place<F>>,
) -> Result<Modulus<P1Place<F>>, CurveError> {
    if phi.is_constant() {
        return Err(CurveError::Unsupported("constant map".into()));
    }
    let line = P1::new(field.clone());
    let mut comps = Vec::new();
    for (p, n) in d.components() {
        let pulled = line.uniformizer(p).compose(phi, field);
        for (q, e) in line.divisor_of(&pulled)? {
            if e > 0 {
                comps.push((q, e as u32 * n));
            }
        }
    }
    Ok(Modulus::new(comps).expect("fibres over distinct places are disjoint"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Gf;

    fn f5() -> Gf {
        Gf::prime(5).unwrap()
    }

    fn rf(f: &Gf, num: &[i64], den: &[i64]) -> RatFn<Gf> {
        RatFn::new(f, Poly::from_ints(f, num), Poly::from_ints(f, den))
    }

    fn at(f: &Gf, a: i64) -> P1Place<Gf> {
        P1Place::rational(f, &f.from_int(a))
    }

    #[test]
    fn modulus_condition_examples() {
        let f = f5();
        let c = P1::new(f);
        let d2 = Modulus::new(vec![(at(&f, 0), 2)]).unwrap();
        let d4 = Modulus::new(vec![(at(&f, 0), 4)]).unwrap();
        assert!(in_modulus_group(&c, &RatFn::one(&f), &d4).unwrap());
        let g = rf(&f, &[1, 0, 0, 1], &[1]);
        assert!(in_modulus_group(&c, &g, &d2).unwrap());
        assert!(!in_modulus_group(&c, &g, &d4).unwrap());
        let d = Modulus::new(vec![(at(&f, 0), 1), (P1Place::Infinity, 1)]).unwrap();
        // f(0) = (0-1)/(0-2) = 3 over F_5, and f(∞) = 1
        let h = rf(&f, &[-1, 1], &[-2, 1]);
        assert_eq!(h.eval(&f.zero(), &f), Some(f.from_int(3)));
        assert!(!in_modulus_group(&c, &h, &d).unwrap());
        assert!(in_modulus_group(&c, &h, &Modulus::zero()).unwrap());
    }

    #[test]
    fn modulus_validation() {
        let f = f5();
        assert_eq!(Modulus::new(vec![(at(&f, 0), 0)]), Err(ModulusError::ZeroMultiplicity));
        assert_eq!(Modulus::new(vec![(at(&f, 0), 1), (at(&f, 0), 2)]), Err(ModulusError::DuplicatePlace));
        let d = Modulus::new(vec![(P1Place::Infinity, 2), (at(&f, 1), 3)]).unwrap();
        assert_eq!(d.support(), vec![at(&f, 1), P1Place::Infinity]);
        assert_eq!(d.reduced().total_degree(&P1::new(f)), 2);
        assert!(d.reduced().le(&d));
    }

    #[test]
    fn divisors_on_p1() {
        let f = f5();
        let c = P1::new(f);
        let d = divisor_of(&c, &RatFn::t(&f)).unwrap();
        assert_eq!(d, ZeroCycle::new(vec![(at(&f, 0), 1), (P1Place::Infinity, -1)]));
        let f2 = Gf::prime(2).unwrap();
        let c2 = P1::new(f2);
        let g = rf(&f2, &[1, 1, 1], &[0, 0, 1]);
        let d = divisor_of(&c2, &g).unwrap();
        assert_eq!(d.degree(&c2), 0);
        assert_eq!(d.terms().len(), 2);
    }

    #[test]
    fn norm_examples() {
        let f = f5();
        let s2 = rf(&f, &[0, 0, 1], &[1]);
        assert_eq!(norm_along_cover(&f, &s2, &rf(&f, &[-1, 1], &[1])).unwrap(), rf(&f, &[1, -1], &[1]));
        assert_eq!(norm_along_cover(&f, &s2, &rf(&f, &[3], &[1])).unwrap(), rf(&f, &[4], &[1]));
        let id = RatFn::t(&f);
        let g = rf(&f, &[1, 2, 3], &[4, 0, 1]);
        assert_eq!(norm_along_cover(&f, &id, &g).unwrap(), g);
    }

    #[test]
    fn pullback_examples() {
        let f = f5();
        let s2 = rf(&f, &[0, 0, 1], &[1]);
        let d = Modulus::new(vec![(at(&f, 0), 1)]).unwrap();
        assert_eq!(modulus_pullback(&f, &s2, &d).unwrap(), Modulus::new(vec![(at(&f, 0), 2)]).unwrap());
        let d = Modulus::new(vec![(P1Place::Infinity, 1)]).unwrap();
        assert_eq!(modulus_pullback(&f, &s2, &d).unwrap(), Modulus::new(vec![(P1Place::Infinity, 2)]).unwrap());
        let d = Modulus::new(vec![(at(&f, 1), 3), (P1Place::Infinity, 1)]).unwrap();
        assert_eq!(modulus_pullback(&f, &RatFn::t(&f), &d).unwrap(), d);
    }

    #[test]
    fn pushforward_matches_norm_divisor() {
        let f = Gf::prime(3).unwrap();
        let c = P1::new(f);
        let phi = rf(&f, &[1, 0, 1, 1], &[0, 1]);
        let g = rf(&f, &[2, 1, 0, 1], &[1, 1]);
        let lhs = pushforward(&f, &phi, &divisor_of(&c, &g).unwrap());
        let rhs = divisor_of(&c, &norm_along_cover(&f, &phi, &g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
