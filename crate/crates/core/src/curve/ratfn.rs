//! Rational functions in one variable, kept as reduced fractions with a
//! monic denominator.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::arith::{Field, Poly};

#[derive(Clone, Debug)]
pub struct RatFn<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> PartialEq for RatFn<F> {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl<F: Field> Eq for RatFn<F> {}

impl<F: Field> Hash for RatFn<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl<F: Field> PartialOrd for RatFn<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> Ord for RatFn<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.den.cmp(&other.den).then_with(|| self.num.cmp(&other.num))
    }
}

impl<F: Field> RatFn<F> {
    /// `num / den`, reduced. Panics on a zero denominator.
    pub fn new(f: &F, num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero(f);
        }
        let g = num.gcd(&den, f);
        let (mut num, mut den) = (num.div_exact(&g, f).unwrap(), den.div_exact(&g, f).unwrap());
        let lc_inv = f.inv(&den.lc(f)).unwrap();
        num = num.scale(&lc_inv, f);
        den = den.scale(&lc_inv, f);
        RatFn { num, den }
    }

    pub fn from_poly(f: &F, p: Poly<F>) -> Self {
        RatFn { num: p, den: Poly::one(f) }
    }

    pub fn zero(f: &F) -> Self {
        RatFn { num: Poly::zero(), den: Poly::one(f) }
    }

    pub fn one(f: &F) -> Self {
        Self::constant(f, f.one())
    }

    pub fn constant(f: &F, c: F::Elem) -> Self {
        Self::from_poly(f, Poly::constant(f, c))
    }

    /// The coordinate function `t`.
    pub fn t(f: &F) -> Self {
        Self::from_poly(f, Poly::x(f))
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value when the function is a constant.
    pub fn as_constant(&self, f: &F) -> Option<F::Elem> {
        self.is_constant().then(|| self.num.coeff(f, 0))
    }

    pub fn add(&self, o: &Self, f: &F) -> Self {
        if self.den == o.den {
            return Self::new(f, self.num.add(&o.num, f), self.den.clone());
        }
        Self::new(f, self.num.mul(&o.den, f).add(&o.num.mul(&self.den, f), f), self.den.mul(&o.den, f))
    }

    pub fn neg(&self, f: &F) -> Self {
        RatFn { num: self.num.neg(f), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self, f: &F) -> Self {
        self.add(&o.neg(f), f)
    }

    pub fn mul(&self, o: &Self, f: &F) -> Self {
        Self::new(f, self.num.mul(&o.num, f), self.den.mul(&o.den, f))
    }

    pub fn scale(&self, c: &F::Elem, f: &F) -> Self {
        Self::new(f, self.num.scale(c, f), self.den.clone())
    }

    pub fn inv(&self, f: &F) -> Option<Self> {
        (!self.is_zero()).then(|| Self::new(f, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self, f: &F) -> Option<Self> {
        o.inv(f).map(|oi| self.mul(&oi, f))
    }

    pub fn pow(&self, e: i64, f: &F) -> Option<Self> {
        let base = if e < 0 { self.inv(f)? } else { self.clone() };
        let k = e.unsigned_abs();
        Some(RatFn { num: base.num.pow(k, f), den: base.den.pow(k, f) })
    }

    /// Value at a point of the affine line, if it is not a pole.
    pub fn eval(&self, x: &F::Elem, f: &F) -> Option<F::Elem> {
        f.div(&self.num.eval(x, f), &self.den.eval(x, f))
    }

    /// `self(phi)` for a rational function `phi` (the pullback along `phi`).
    pub fn compose(&self, phi: &Self, f: &F) -> Self {
        let hom = |p: &Poly<F>, d: usize| {
            // sum c_i phi_n^i phi_d^(d-i)
            let mut acc = Poly::zero();
            for (i, c) in p.coeffs().iter().enumerate() {
                let term = phi.num.pow(i as u64, f).mul(&phi.den.pow((d - i) as u64, f), f).scale(c, f);
                acc = acc.add(&term, f);
            }
            acc
        };
        if self.is_zero() {
            return Self::zero(f);
        }
        let (dn, dd) = (self.num.deg(), self.den.deg());
        let hn = hom(&self.num, dn);
        let hd = hom(&self.den, dd);
        // self(phi) = phi_d^(dd - dn) * hn / hd
        let (num, den) = if dd >= dn {
            (hn.mul(&phi.den.pow((dd - dn) as u64, f), f), hd)
        } else {
            (hn, hd.mul(&phi.den.pow((dn - dd) as u64, f), f))
        };
        Self::new(f, num, den)
    }

    /// `max(deg num, deg den)`, the degree of the induced map of `P^1`.
    pub fn map_degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.deg())
    }

    pub fn fmt_with(&self, f: &F, var: &str) -> String {
        if self.den.is_one(f) {
            return self.num.fmt_with(f, var);
        }
        format!("({})/({})", self.num.fmt_with(f, var), self.den.fmt_with(f, var))
    }
}

/// The rational function field `F(t)` as a [`Field`], used for resultants
/// over it.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFnField<F: Field> {
    pub base: F,
}

impl<F: Field> Field for RatFnField<F> {
    type Elem = RatFn<F>;

    fn zero(&self) -> RatFn<F> {
        RatFn::zero(&self.base)
    }

    fn one(&self) -> RatFn<F> {
        RatFn::one(&self.base)
    }

    fn add(&self, a: &RatFn<F>, b: &RatFn<F>) -> RatFn<F> {
        a.add(b, &self.base)
    }

    fn neg(&self, a: &RatFn<F>) -> RatFn<F> {
        a.neg(&self.base)
    }

    fn mul(&self, a: &RatFn<F>, b: &RatFn<F>) -> RatFn<F> {
        a.mul(b, &self.base)
    }

    fn inv(&self, a: &RatFn<F>) -> Option<RatFn<F>> {
        a.inv(&self.base)
    }

    fn from_int(&self, n: i64) -> RatFn<F> {
        RatFn::constant(&self.base, self.base.from_int(n))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn fmt_elem(&self, a: &RatFn<F>) -> String {
        a.fmt_with(&self.base, "t")
    }
}
