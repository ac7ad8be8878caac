//! Simple algebraic extensions `F[θ]/(m(θ))`, used as residue fields of
//! places of degree greater than one.

use std::sync::Arc;

use super::field::{Field, FiniteField};
use super::poly::Poly;

#[derive(Debug)]
struct ExtInner<F: Field> {
    base: F,
    modulus: Poly<F>,
    degree: usize,
}

/// `F[θ]/(m)` for a monic irreducible `m`. Elements are coefficient vectors
/// of length `deg m` in the basis `1, θ, .., θ^{d-1}`.
#[derive(Clone, Debug)]
pub struct ExtField<F: Field> {
    inner: Arc<ExtInner<F>>,
}

impl<F: Field> PartialEq for ExtField<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl<F: Field> ExtField<F> {
    /// `modulus` must be monic irreducible over `base`; irreducibility is the
    /// caller's responsibility.
    pub fn new(base: F, modulus: Poly<F>) -> Self {
        let degree = modulus.degree().expect("nonzero modulus");
        assert!(degree >= 1 && modulus.is_monic(&base), "modulus must be monic of positive degree");
        ExtField { inner: Arc::new(ExtInner { base, modulus, degree }) }
    }

    pub fn base(&self) -> &F {
        &self.inner.base
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.inner.modulus
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn embed(&self, c: &F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.inner.base.zero(); self.inner.degree];
        v[0] = c.clone();
        v
    }

    /// The class of θ.
    pub fn theta(&self) -> Vec<F::Elem> {
        self.from_poly(&Poly::x(&self.inner.base))
    }

    pub fn from_poly(&self, p: &Poly<F>) -> Vec<F::Elem> {
        let f = &self.inner.base;
        let r = p.rem(&self.inner.modulus, f);
        let mut v = r.coeffs().to_vec();
        v.resize(self.inner.degree, f.zero());
        v
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> Poly<F> {
        Poly::new(&self.inner.base, a.to_vec())
    }

    /// Minimal polynomial of `a` over the base field.
    pub fn min_poly(&self, a: &[F::Elem]) -> Poly<F> {
        let f = &self.inner.base;
        let mut powers = vec![self.one()];
        loop {
            let next = self.mul(powers.last().unwrap(), &a.to_vec());
            if let Some(c) = solve_combination(f, &powers, &next) {
                let mut coeffs: Vec<F::Elem> = c.iter().map(|x| f.neg(x)).collect();
                coeffs.push(f.one());
                return Poly::new(f, coeffs);
            }
            powers.push(next);
        }
    }

    /// Value in the base field, when the element lies there.
    pub fn as_base(&self, a: &[F::Elem]) -> Option<F::Elem> {
        let f = &self.inner.base;
        a[1..].iter().all(|c| f.is_zero(c)).then(|| a[0].clone())
    }
}

/// Coefficients `c` with `sum c_i vecs[i] = target`, if any.
fn solve_combination<F: Field>(f: &F, vecs: &[Vec<F::Elem>], target: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let rows = target.len();
    let cols = vecs.len();
    // augmented matrix, one row per coordinate
    let mut m: Vec<Vec<F::Elem>> = (0..rows)
        .map(|r| {
            let mut row: Vec<F::Elem> = vecs.iter().map(|v| v[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else { continue };
        m.swap(r, pr);
        let inv = f.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in 0..=cols {
                    let v = f.sub(&m[i][j], &f.mul(&factor, &m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !f.is_zero(&row[cols])) {
        return None;
    }
    let mut out = vec![f.zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = m[i][cols].clone();
    }
    Some(out)
}

impl<F: Field> Field for ExtField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.inner.base.zero(); self.inner.degree]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.inner.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.inner.base;
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        let f = &self.inner.base;
        a.iter().map(|x| f.neg(x)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.inner.base;
        a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.inner.base;
        let d = self.inner.degree;
        if d == 1 {
            return vec![f.mul(&a[0], &b[0])];
        }
        let mut prod = vec![f.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
            }
        }
        let m = self.inner.modulus.coeffs();
        for deg in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut prod[deg], f.zero());
            if f.is_zero(&c) {
                continue;
            }
            for i in 0..d {
                prod[deg - d + i] = f.sub(&prod[deg - d + i], &f.mul(&c, &m[i]));
            }
        }
        prod.truncate(d);
        prod
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let f = &self.inner.base;
        if self.inner.degree == 1 {
            return f.inv(&a[0]).map(|x| vec![x]);
        }
        let p = self.to_poly(a);
        if p.is_zero() {
            return None;
        }
        p.inv_mod(&self.inner.modulus, f).map(|q| self.from_poly(&q))
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.embed(&self.inner.base.from_int(n))
    }

    fn characteristic(&self) -> u64 {
        self.inner.base.characteristic()
    }

    fn fmt_elem(&self, a: &Self::Elem) -> String {
        let f = &self.inner.base;
        if let Some(c) = self.as_base(a) {
            return f.fmt_elem(&c);
        }
        format!("({})", self.to_poly(a).fmt_with(f, "θ"))
    }
}

impl<F: FiniteField> FiniteField for ExtField<F> {
    fn order(&self) -> u64 {
        self.inner.base.order().pow(self.inner.degree as u32)
    }

    fn prime_degree(&self) -> u32 {
        self.inner.base.prime_degree() * self.inner.degree as u32
    }

    fn elem_to_index(&self, a: &Self::Elem) -> u64 {
        let f = &self.inner.base;
        let q = f.order();
        a.iter().rev().fold(0u64, |acc, c| acc * q + f.elem_to_index(c))
    }

    fn index_to_elem(&self, mut i: u64) -> Self::Elem {
        let f = &self.inner.base;
        let q = f.order();
        (0..self.inner.degree)
            .map(|_| {
                let c = f.index_to_elem(i % q);
                i /= q;
                c
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gf::Gf;

    #[test]
    fn f4_as_extension_of_f2() {
        let f2 = Gf::prime(2).unwrap();
        let m = Poly::from_ints(&f2, &[1, 1, 1]);
        let f4 = ExtField::new(f2, m);
        let els = f4.elements();
        assert_eq!(els.len(), 4);
        for a in &els {
            if !f4.is_zero(a) {
                assert!(f4.is_one(&f4.mul(a, &f4.inv(a).unwrap())));
                assert!(f4.is_one(&f4.pow(a, 3)));
            }
        }
    }

    #[test]
    fn min_poly_of_theta_squared() {
        // F_4 = F_2[θ]/(θ^2+θ+1): θ^2 = θ+1 has the same minimal polynomial
        let f2 = Gf::prime(2).unwrap();
        let m = Poly::from_ints(&f2, &[1, 1, 1]);
        let f4 = ExtField::new(f2, m.clone());
        let th = f4.theta();
        assert_eq!(f4.min_poly(&f4.mul(&th, &th)), m);
        assert_eq!(f4.min_poly(&f4.one()), Poly::from_ints(&f2, &[1, 1]));
    }

    #[test]
    fn tower_over_extension_base() {
        // F_9 over F_3, then a quadratic extension of F_9
        let f9 = Gf::new(3, 2).unwrap();
        // t^2 - a where a = generator is a non-square in F_9 (it is primitive)
        let a = f9.generator();
        let m = Poly::new(&f9, vec![f9.neg(&a), f9.zero(), f9.one()]);
        let f81 = ExtField::new(f9, m);
        assert_eq!(f81.order(), 81);
        let th = f81.theta();
        assert_eq!(f81.mul(&th, &th), f81.embed(&a));
        for i in [1u64, 17, 80] {
            assert_eq!(f81.elem_to_index(&f81.index_to_elem(i)), i);
        }
    }
}
