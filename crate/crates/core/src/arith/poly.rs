//! Dense univariate polynomials over an arbitrary [`Field`].

use std::cmp::Ordering;

use super::field::{Field, FiniteField};

/// Coefficients low to high with trailing zeros stripped; the zero
/// polynomial has no coefficients.
#[derive(Clone, Debug)]
pub struct Poly<F: Field> {
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> std::hash::Hash for Poly<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<F: Field> PartialOrd for Poly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the leading one downwards.
impl<F: Field> Ord for Poly<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<F: Field> Poly<F> {
    pub fn new(f: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(f: &F) -> Self {
        Poly { coeffs: vec![f.one()] }
    }

    pub fn constant(f: &F, c: F::Elem) -> Self {
        Self::new(f, vec![c])
    }

    /// The monomial `c * t^d`.
    pub fn monomial(f: &F, c: F::Elem, d: usize) -> Self {
        let mut coeffs = vec![f.zero(); d];
        coeffs.push(c);
        Self::new(f, coeffs)
    }

    pub fn x(f: &F) -> Self {
        Self::monomial(f, f.one(), 1)
    }

    /// `t - a`.
    pub fn linear(f: &F, a: &F::Elem) -> Self {
        Poly { coeffs: vec![f.neg(a), f.one()] }
    }

    pub fn from_ints(f: &F, ints: &[i64]) -> Self {
        Self::new(f, ints.iter().map(|&n| f.from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, f: &F, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self, f: &F) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self, f: &F) -> bool {
        self.coeffs.last().is_some_and(|c| f.is_one(c))
    }

    pub fn is_one(&self, f: &F) -> bool {
        self.coeffs.len() == 1 && f.is_one(&self.coeffs[0])
    }

    pub fn add(&self, other: &Self, f: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => out.push(f.add(a, b)),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Self::new(f, out)
    }

    pub fn neg(&self, f: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Self, f: &F) -> Self {
        self.add(&other.neg(f), f)
    }

    pub fn mul(&self, other: &Self, f: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn scale(&self, c: &F::Elem, f: &F) -> Self {
        Self::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize, f: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![f.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Keep only the terms of degree `< n`.
    pub fn truncate(&self, n: usize, f: &F) -> Self {
        Self::new(f, self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn pow(&self, mut e: u64, f: &F) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self, f: &F) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = f.inv(&divisor.lc(f)).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(&rem[i], &lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(&rem[i - dd + j], &f.mul(&c, d));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, divisor: &Self, f: &F) -> Self {
        self.div_rem(divisor, f).1
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self, f: &F) -> Option<Self> {
        let (q, r) = self.div_rem(divisor, f);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self, f: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = f.inv(&self.lc(f)).unwrap();
        self.scale(&inv, f)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self, f: &F) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns `(g, s, u)` with `s*self + u*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self, f: &F) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, f);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, f), f);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, f), f);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(&r0.lc(f)).unwrap();
        (r0.scale(&inv, f), s0.scale(&inv, f), t0.scale(&inv, f))
    }

    /// Inverse modulo `m`, when `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Self, f: &F) -> Option<Self> {
        let (g, s, _) = self.rem(m, f).xgcd(m, f);
        g.is_one(f).then(|| s.rem(m, f))
    }

    pub fn mul_mod(&self, other: &Self, m: &Self, f: &F) -> Self {
        self.mul(other, f).rem(m, f)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Self, f: &F) -> Self {
        let mut base = self.rem(m, f);
        let mut acc = Self::one(f).rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m, f);
            }
        }
        acc
    }

    pub fn derivative(&self, f: &F) -> Self {
        Self::new(f, self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_int(i as i64))).collect())
    }

    pub fn eval(&self, x: &F::Elem, f: &F) -> F::Elem {
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// `self(other(t))`.
    pub fn compose(&self, other: &Self, f: &F) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(other, f).add(&Self::constant(f, c.clone()), f);
        }
        acc
    }

    /// Evaluate with coefficients mapped into another field first.
    pub fn eval_in<G: Field>(&self, x: &G::Elem, g: &G, embed: impl Fn(&F::Elem) -> G::Elem) -> G::Elem {
        let mut acc = g.zero();
        for c in self.coeffs.iter().rev() {
            acc = g.add(&g.mul(&acc, x), &embed(c));
        }
        acc
    }

    /// `t^d * self(1/t)` for `d = deg self`.
    pub fn reverse(&self, f: &F) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(f, coeffs)
    }

    /// Multiplicity of `factor` (nonconstant) in `self` (nonzero), together
    /// with the cofactor.
    pub fn split_power(&self, factor: &Self, f: &F) -> (usize, Self) {
        let mut m = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(factor, f) {
            cur = q;
            m += 1;
        }
        (m, cur)
    }

    /// Resultant `Res(self, other)`, by the Euclidean recursion.
    pub fn resultant(&self, other: &Self, f: &F) -> F::Elem {
        if self.is_zero() || other.is_zero() {
            return f.zero();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = f.one();
        loop {
            let (m, n) = (a.deg(), b.deg());
            if n == 0 {
                return f.mul(&acc, &f.pow(&b.lc(f), m as u64));
            }
            if m == 0 {
                return f.mul(&acc, &f.pow(&a.lc(f), n as u64));
            }
            let r = a.rem(&b, f);
            if r.is_zero() {
                return f.zero();
            }
            if (m * n) % 2 == 1 {
                acc = f.neg(&acc);
            }
            acc = f.mul(&acc, &f.pow(&b.lc(f), (m - r.deg()) as u64));
            a = b;
            b = r;
        }
    }

    pub fn fmt_with(&self, f: &F, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.fmt_elem(c);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                cs
            } else if f.is_one(c) {
                mono
            } else {
                format!("{cs}*{mono}")
            };
            terms.push(term);
        }
        let mut s = String::new();
        for (i, t) in terms.iter().enumerate() {
            if i == 0 {
                s.push_str(t);
            } else if let Some(rest) = t.strip_prefix('-') {
                s.push('-');
                s.push_str(rest);
            } else {
                s.push('+');
                s.push_str(t);
            }
        }
        s
    }
}

impl<F: FiniteField> Poly<F> {
    /// The `p`-th root of a polynomial whose exponents are all multiples of `p`.
    pub fn pth_root(&self, f: &F) -> Self {
        let p = f.characteristic() as usize;
        Self::new(f, self.coeffs.iter().step_by(p).map(|c| f.pth_root(c)).collect())
    }

    /// All monic polynomials of exact degree `d`, in enumeration order.
    pub fn monic_of_degree(f: &F, d: usize) -> Vec<Self> {
        let q = f.order();
        let count = q.pow(d as u32);
        (0..count)
            .map(|mut idx| {
                let mut coeffs = Vec::with_capacity(d + 1);
                for _ in 0..d {
                    coeffs.push(f.index_to_elem(idx % q));
                    idx /= q;
                }
                coeffs.push(f.one());
                Poly { coeffs }
            })
            .collect()
    }

    pub fn random_monic<R: rand::Rng + ?Sized>(f: &F, d: usize, rng: &mut R) -> Self {
        let mut coeffs: Vec<F::Elem> = (0..d).map(|_| f.random(rng)).collect();
        coeffs.push(f.one());
        Poly { coeffs }
    }

    pub fn random_below<R: rand::Rng + ?Sized>(f: &F, d: usize, rng: &mut R) -> Self {
        Self::new(f, (0..d).map(|_| f.random(rng)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_matches_root_product() {
        // Res(s^2 - 3, s - 1) = 1 - 3 over Q-like small field F_7: 1^2 - 3 = -2
        let f = crate::arith::gf::Gf::prime(7).unwrap();
        let a = Poly::from_ints(&f, &[-3, 0, 1]);
        let b = Poly::from_ints(&f, &[-1, 1]);
        assert_eq!(a.resultant(&b, &f), f.from_int(-2));
        assert_eq!(b.resultant(&a, &f), f.from_int(-2));
        let c = Poly::from_ints(&f, &[2, 0, 1]);
        // Res(s^2-3, s^2+2): roots of s^2-3 give (3+2)^2 = 25 = 4
        assert_eq!(a.resultant(&c, &f), f.from_int(4));
    }
    use crate::arith::gf::Gf;
    use crate::arith::rational::Rationals;

    #[test]
    fn div_rem_reconstructs() {
        let f = Gf::prime(5).unwrap();
        let a = Poly::from_ints(&f, &[1, 2, 3, 4, 1]);
        let b = Poly::from_ints(&f, &[2, 0, 1]);
        let (q, r) = a.div_rem(&b, &f);
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        assert!(r.deg() < 2);
    }

    #[test]
    fn xgcd_bezout() {
        let f = Rationals;
        let a = Poly::from_ints(&f, &[-1, 0, 1]);
        let b = Poly::from_ints(&f, &[1, 1]);
        let (g, s, t) = a.xgcd(&b, &f);
        assert_eq!(g, Poly::from_ints(&f, &[1, 1]));
        assert_eq!(s.mul(&a, &f).add(&t.mul(&b, &f), &f), g);
    }

    #[test]
    fn reverse_drops_low_zeros() {
        let f = Gf::prime(3).unwrap();
        let a = Poly::from_ints(&f, &[0, 1, 2]);
        assert_eq!(a.reverse(&f), Poly::from_ints(&f, &[2, 1]));
    }

    #[test]
    fn ordering_is_degree_then_leading_coefficients() {
        let f = Gf::prime(2).unwrap();
        let t = Poly::from_ints(&f, &[0, 1]);
        let t1 = Poly::from_ints(&f, &[1, 1]);
        let q = Poly::from_ints(&f, &[1, 1, 1]);
        let mut v = vec![q.clone(), t1.clone(), t.clone()];
        v.sort();
        assert_eq!(v, vec![t, t1, q]);
    }

    #[test]
    fn pth_root_of_frobenius_image() {
        let f = Gf::new(3, 2).unwrap();
        let a = Poly::from_ints(&f, &[1, 2, 0, 1]);
        assert_eq!(a.pow(3, &f).pth_root(&f), a);
    }
}
