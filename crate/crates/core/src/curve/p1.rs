//! The projective line over a finite field or over the rationals.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use num_rational::BigRational;

use super::{Curve, CurveError, PlaceField, RatFn, ResElem};
use crate::arith::{factor, series, ExtField, Field, Gf, Poly, Rationals};

#[derive(Clone, Debug, PartialEq)]
pub struct P1<F: Field> {
    field: F,
}

impl<F: PlaceField> P1<F> {
    pub fn new(field: F) -> Self {
        P1 { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
}

/// A closed point of `P^1`: a monic irreducible polynomial in `t`, or `∞`.
#[derive(Clone, Debug)]
pub enum P1Place<F: Field> {
    Finite(Poly<F>),
    Infinity,
}

impl<F: Field> PartialEq for P1Place<F> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (P1Place::Finite(a), P1Place::Finite(b)) => a == b,
            (P1Place::Infinity, P1Place::Infinity) => true,
            _ => false,
        }
    }
}

impl<F: Field> Eq for P1Place<F> {}

impl<F: Field> Hash for P1Place<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            P1Place::Finite(p) => {
                0u8.hash(state);
                p.hash(state);
            }
            P1Place::Infinity => 1u8.hash(state),
        }
    }
}

impl<F: Field> PartialOrd for P1Place<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite places by (degree, coefficients), then `∞`.
impl<F: Field> Ord for P1Place<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (P1Place::Finite(a), P1Place::Finite(b)) => a.cmp(b),
            (P1Place::Finite(_), P1Place::Infinity) => Ordering::Less,
            (P1Place::Infinity, P1Place::Finite(_)) => Ordering::Greater,
            (P1Place::Infinity, P1Place::Infinity) => Ordering::Equal,
        }
    }
}

impl<F: Field> P1Place<F> {
    /// The rational place `t = a`.
    pub fn rational(f: &F, a: &F::Elem) -> Self {
        P1Place::Finite(Poly::linear(f, a))
    }

    pub fn degree(&self) -> usize {
        match self {
            P1Place::Finite(p) => p.deg(),
            P1Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, P1Place::Infinity)
    }

    /// The point `a` for a rational finite place.
    pub fn rational_point(&self, f: &F) -> Option<F::Elem> {
        match self {
            P1Place::Finite(p) if p.deg() == 1 => Some(f.neg(&p.coeff(f, 0))),
            _ => None,
        }
    }
}

impl<F: PlaceField> P1Place<F> {
    /// A finite place from a monic irreducible polynomial.
    pub fn finite(f: &F, p: Poly<F>) -> Result<Self, CurveError> {
        if p.is_constant() || !p.is_monic(f) {
            return Err(CurveError::Unsupported(format!(
                "{} is not a monic nonconstant polynomial",
                p.fmt_with(f, "t")
            )));
        }
        let factors = f.place_factors(&p)?;
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(CurveError::Unsupported(format!("{} is not irreducible", p.fmt_with(f, "t"))));
        }
        Ok(P1Place::Finite(p))
    }
}

/// Places of `P^1` of bounded degree.
#[derive(Clone, Debug)]
pub enum P1Places<F: Field> {
    Listed(Vec<P1Place<F>>),
    /// All `t - a` for rational `a`, plus `∞`; produced on demand.
    RationalFamily,
}

impl<F: Field> P1Places<F> {
    /// The explicit list; empty for the rational family.
    pub fn listed(&self) -> Vec<P1Place<F>> {
        match self {
            P1Places::Listed(v) => v.clone(),
            P1Places::RationalFamily => Vec::new(),
        }
    }
}

impl P1Places<Rationals> {
    pub fn member(&self, a: &BigRational) -> P1Place<Rationals> {
        P1Place::rational(&Rationals, a)
    }
}

pub fn places_of_p1<F: PlaceField>(f: &F, d: usize) -> Result<P1Places<F>, CurveError> {
    f.places_up_to(d)
}

impl Gf {
    pub fn enumerate_places(&self, d: usize) -> Result<P1Places<Gf>, CurveError> {
        if d == 0 {
            return Err(CurveError::Unsupported("maximal degree must be at least 1".into()));
        }
        let mut out = Vec::new();
        for k in 1..=d {
            out.extend(factor::monic_irreducibles(self, k).into_iter().map(P1Place::Finite));
        }
        out.push(P1Place::Infinity);
        Ok(P1Places::Listed(out))
    }
}

fn hensel_root<F: Field>(f: &F, pi: &Poly<F>, n: usize) -> Poly<F> {
    let modulus = pi.pow(n as u64, f);
    let dpi = pi.derivative(f);
    let mut theta = Poly::x(f);
    loop {
        let val = pi.compose(&theta, f).rem(&modulus, f);
        if val.is_zero() {
            return theta;
        }
        let d = dpi.compose(&theta, f).inv_mod(&modulus, f).expect("separable place");
        theta = theta.sub(&val.mul_mod(&d, &modulus, f), f).rem(&modulus, f);
    }
}

/// First `n` digits of `poly` in the `pi`-adic expansion with coefficients
/// in the coefficient field lifted along `θ ↦ θ̃`.
fn pi_adic_digits<F: Field>(f: &F, kappa: &ExtField<F>, poly: &Poly<F>, pi: &Poly<F>, n: usize) -> Vec<ResElem<F>> {
    if n == 0 {
        return Vec::new();
    }
    let modulus = pi.pow(n as u64, f);
    let theta = hensel_root(f, pi, n);
    let mut r = poly.rem(&modulus, f);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let c = r.rem(pi, f);
        out.push(kappa.from_poly(&c));
        let lifted = c.compose(&theta, f).rem(&modulus, f);
        r = r.sub(&lifted, f).rem(&modulus, f).div_exact(pi, f).expect("digit is exact");
    }
    out
}

impl<F: PlaceField> Curve for P1<F> {
    type K = F;
    type Place = P1Place<F>;
    type Fun = RatFn<F>;

    fn base_field(&self) -> &F {
        &self.field
    }

    fn place_degree(&self, p: &P1Place<F>) -> usize {
        p.degree()
    }

    fn residue_field(&self, p: &P1Place<F>) -> ExtField<F> {
        match p {
            P1Place::Finite(pi) => ExtField::new(self.field.clone(), pi.clone()),
            P1Place::Infinity => ExtField::new(self.field.clone(), Poly::x(&self.field)),
        }
    }

    fn uniformizer(&self, p: &P1Place<F>) -> RatFn<F> {
        let f = &self.field;
        match p {
            P1Place::Finite(pi) => RatFn::from_poly(f, pi.clone()),
            P1Place::Infinity => RatFn::new(f, Poly::one(f), Poly::x(f)),
        }
    }

    fn valuation(&self, g: &RatFn<F>, p: &P1Place<F>) -> Result<i64, CurveError> {
        if g.is_zero() {
            return Err(CurveError::ZeroFunction);
        }
        let f = &self.field;
        Ok(match p {
            P1Place::Finite(pi) => g.num().split_power(pi, f).0 as i64 - g.den().split_power(pi, f).0 as i64,
            P1Place::Infinity => g.den().deg() as i64 - g.num().deg() as i64,
        })
    }

    fn laurent(&self, g: &RatFn<F>, p: &P1Place<F>, n: usize) -> Result<(i64, Vec<ResElem<F>>), CurveError> {
        if g.is_zero() {
            return Err(CurveError::ZeroFunction);
        }
        let f = &self.field;
        let kappa = self.residue_field(p);
        match p {
            P1Place::Finite(pi) => {
                let (vn, num) = g.num().split_power(pi, f);
                let (vd, den) = g.den().split_power(pi, f);
                let a = pi_adic_digits(f, &kappa, &num, pi, n);
                let b = pi_adic_digits(f, &kappa, &den, pi, n);
                let s = series::div(&kappa, &a, &b).unwrap_or_default();
                Ok((vn as i64 - vd as i64, s))
            }
            P1Place::Infinity => {
                let v = g.den().deg() as i64 - g.num().deg() as i64;
                let lift = |q: &Poly<F>| -> Vec<ResElem<F>> {
                    let rev = q.reverse(f);
                    (0..n).map(|i| kappa.embed(&rev.coeff(f, i))).collect()
                };
                let s = series::div(&kappa, &lift(g.num()), &lift(g.den())).unwrap_or_default();
                Ok((v, s))
            }
        }
    }

    fn divisor_of(&self, g: &RatFn<F>) -> Result<Vec<(P1Place<F>, i64)>, CurveError> {
        if g.is_zero() {
            return Err(CurveError::ZeroFunction);
        }
        let f = &self.field;
        let mut out: Vec<(P1Place<F>, i64)> = Vec::new();
        for (q, m) in f.place_factors(g.num())? {
            out.push((P1Place::Finite(q), m as i64));
        }
        for (q, m) in f.place_factors(g.den())? {
            out.push((P1Place::Finite(q), -(m as i64)));
        }
        let v_inf = g.den().deg() as i64 - g.num().deg() as i64;
        if v_inf != 0 {
            out.push((P1Place::Infinity, v_inf));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    fn fun_constant(&self, c: F::Elem) -> RatFn<F> {
        RatFn::constant(&self.field, c)
    }

    fn fun_mul(&self, a: &RatFn<F>, b: &RatFn<F>) -> RatFn<F> {
        a.mul(b, &self.field)
    }

    fn fun_inv(&self, a: &RatFn<F>) -> Option<RatFn<F>> {
        a.inv(&self.field)
    }

    fn fun_sub(&self, a: &RatFn<F>, b: &RatFn<F>) -> RatFn<F> {
        a.sub(b, &self.field)
    }

    fn fun_is_zero(&self, a: &RatFn<F>) -> bool {
        a.is_zero()
    }

    fn fun_pow(&self, a: &RatFn<F>, e: i64) -> Option<RatFn<F>> {
        a.pow(e, &self.field)
    }

    fn fmt_place(&self, p: &P1Place<F>) -> String {
        match p {
            P1Place::Infinity => "inf".to_string(),
            P1Place::Finite(pi) if pi.deg() == 1 => pi.fmt_with(&self.field, "t"),
            P1Place::Finite(pi) => format!("poly:{}", pi.fmt_with(&self.field, "t")),
        }
    }

    fn fmt_fun(&self, g: &RatFn<F>) -> String {
        g.fmt_with(&self.field, "t")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::arith::FiniteField;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rf(f: &Gf, num: &[i64], den: &[i64]) -> RatFn<Gf> {
        RatFn::new(f, Poly::from_ints(f, num), Poly::from_ints(f, den))
    }

    #[test]
    fn places_over_f2() {
        let f = Gf::prime(2).unwrap();
        let P1Places::Listed(places) = places_of_p1(&f, 2).unwrap() else { panic!() };
        let c = P1::new(f);
        let names: Vec<String> = places.iter().map(|p| c.fmt_place(p)).collect();
        assert_eq!(names, ["t", "t+1", "poly:t^2+t+1", "inf"]);
        // exhaustive oracle: a quadratic over F_2 is irreducible iff it has no root
        let quadratics = Poly::monic_of_degree(&f, 2);
        let rootless: Vec<_> =
            quadratics.iter().filter(|q| f.elements().iter().all(|a| !f.is_zero(&q.eval(a, &f)))).collect();
        assert_eq!(rootless.len(), 1);
    }

    #[test]
    fn places_over_f3_and_q() {
        let f = Gf::prime(3).unwrap();
        let P1Places::Listed(places) = places_of_p1(&f, 1).unwrap() else { panic!() };
        assert_eq!(places.len(), 4);
        assert!(matches!(places_of_p1(&Rationals, 1).unwrap(), P1Places::RationalFamily));
        assert!(places_of_p1(&Rationals, 2).is_err());
    }

    #[test]
    fn valuations() {
        let f = Gf::prime(3).unwrap();
        let c = P1::new(f);
        let g = rf(&f, &[0, 0, 1], &[1, 1]);
        assert_eq!(c.valuation(&g, &P1Place::rational(&f, &f.zero())).unwrap(), 2);
        assert_eq!(c.valuation(&g, &P1Place::Infinity).unwrap(), -1);
        assert_eq!(c.valuation(&RatFn::zero(&f), &P1Place::Infinity), Err(CurveError::ZeroFunction));
    }

    #[test]
    fn expansions() {
        let f5 = Gf::prime(5).unwrap();
        let c = P1::new(f5);
        let at0 = P1Place::rational(&f5, &f5.zero());
        let s = c.local_expansion(&rf(&f5, &[1], &[1, -1]), &at0, 3).unwrap();
        assert_eq!(s, vec![vec![f5.one()]; 3]);

        let f2 = Gf::prime(2).unwrap();
        let c2 = P1::new(f2);
        let s = c2.local_expansion(&rf(&f2, &[1, 0, 1], &[1]), &P1Place::rational(&f2, &f2.zero()), 2).unwrap();
        assert_eq!(s, vec![vec![f2.one()], vec![f2.zero()]]);

        let q = P1Place::Finite(Poly::from_ints(&f2, &[1, 1, 1]));
        let s = c2.local_expansion(&rf(&f2, &[1, 1], &[1]), &q, 1).unwrap();
        assert_eq!(s, vec![vec![f2.one(), f2.one()]]);
    }

    #[test]
    fn expansion_reconstructs_function() {
        // sum c_i(θ̃) π^i agrees with the function modulo π^n
        let f = Gf::prime(3).unwrap();
        let c = P1::new(f);
        let pi = Poly::from_ints(&f, &[1, 0, 1]);
        let place = P1Place::Finite(pi.clone());
        let g = rf(&f, &[2, 1, 0, 1, 1], &[1, 2]);
        let n = 4;
        let s = c.local_expansion(&g, &place, n).unwrap();
        let modulus = pi.pow(n as u64, &f);
        let theta = hensel_root(&f, &pi, n);
        let kappa = c.residue_field(&place);
        let mut acc = Poly::zero();
        for (i, ci) in s.iter().enumerate() {
            let lifted = kappa.to_poly(ci).compose(&theta, &f);
            acc = acc.add(&lifted.mul(&pi.pow(i as u64, &f), &f), &f).rem(&modulus, &f);
        }
        let lhs = acc.mul(g.den(), &f).rem(&modulus, &f);
        assert_eq!(lhs, g.num().rem(&modulus, &f));
    }

    #[test]
    fn divisor_and_degree_formula() {
        let f = Gf::prime(2).unwrap();
        let c = P1::new(f);
        let g = rf(&f, &[1, 1, 1], &[0, 0, 1]);
        let d = c.divisor_of(&g).unwrap();
        assert_eq!(
            d,
            vec![(P1Place::rational(&f, &f.zero()), -2), (P1Place::Finite(Poly::from_ints(&f, &[1, 1, 1])), 1)]
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f5 = Gf::prime(5).unwrap();
        let c5 = P1::new(f5);
        for _ in 0..50 {
            let num = Poly::random_below(&f5, rng.gen_range(1..7), &mut rng);
            let den = Poly::random_monic(&f5, rng.gen_range(0..6), &mut rng);
            if num.is_zero() {
                continue;
            }
            let g = RatFn::new(&f5, num, den);
            let d = c5.divisor_of(&g).unwrap();
            assert_eq!(d.iter().map(|(p, m)| m * p.degree() as i64).sum::<i64>(), 0);
            for (p, m) in &d {
                assert_eq!(c5.valuation(&g, p).unwrap(), *m);
            }
        }
    }

    #[test]
    fn multiplicativity_of_expansions() {
        let f = Gf::new(2, 2).unwrap();
        let c = P1::new(f);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let places = [
            P1Place::rational(&f, &f.generator()),
            P1Place::Infinity,
            P1Place::Finite(Poly::new(&f, vec![f.generator(), f.one(), f.one()])),
        ];
        for _ in 0..30 {
            let g = RatFn::from_poly(&f, Poly::random_below(&f, 4, &mut rng));
            let h = RatFn::new(&f, Poly::random_below(&f, 3, &mut rng), Poly::random_monic(&f, 2, &mut rng));
            if g.is_zero() || h.is_zero() {
                continue;
            }
            for p in &places {
                if !matches!(p, P1Place::Infinity) {
                    assert!(P1Place::finite(
                        &f,
                        match p {
                            P1Place::Finite(q) => q.clone(),
                            _ => unreachable!(),
                        }
                    )
                    .is_ok());
                }
                let (vg, sg) = c.laurent(&g, p, 4).unwrap();
                let (vh, sh) = c.laurent(&h, p, 4).unwrap();
                let (vgh, sgh) = c.laurent(&g.mul(&h, &f), p, 4).unwrap();
                let kappa = c.residue_field(p);
                assert_eq!(vg + vh, vgh);
                assert_eq!(series::mul(&kappa, &sg, &sh), sgh);
            }
        }
    }

    #[test]
    fn rational_places_over_q() {
        let c = P1::new(Rationals);
        let q = Rationals;
        let g = RatFn::new(&q, Poly::new(&q, vec![rat(-1, 1), rat(0, 1), rat(4, 1)]), Poly::x(&q));
        let d = c.divisor_of(&g).unwrap();
        assert_eq!(d.len(), 4);
        let irr = RatFn::from_poly(&q, Poly::new(&q, vec![rat(1, 1), rat(0, 1), rat(1, 1)]));
        assert!(matches!(c.divisor_of(&irr), Err(CurveError::NonRationalSupport(_))));
    }
}
