//! Finite fields `F_{p^k}` with `k <= 4`.

use std::fmt;

use super::field::{Field, FiniteField};
use super::ArithError;

pub const MAX_EXTENSION_DEGREE: u32 = 4;

/// Defining polynomials shipped with the crate, listed as
/// `(p, k, [c_0, .., c_{k-1}])` for the monic polynomial
/// `x^k + c_{k-1} x^{k-1} + .. + c_0`. These are the Conway polynomials for
/// the listed primes.
const DEFINING_POLYNOMIALS: &[(u32, u32, [u32; 4])] = &[
    (2, 2, [1, 1, 0, 0]),
    (2, 3, [1, 1, 0, 0]),
    (2, 4, [1, 1, 0, 0]),
    (3, 2, [2, 2, 0, 0]),
    (3, 3, [1, 2, 0, 0]),
    (3, 4, [2, 0, 0, 2]),
    (5, 2, [2, 4, 0, 0]),
    (5, 3, [3, 3, 0, 0]),
    (5, 4, [2, 4, 4, 0]),
    (7, 2, [3, 6, 0, 0]),
    (7, 3, [4, 0, 6, 0]),
    (7, 4, [3, 4, 5, 0]),
    (11, 2, [2, 7, 0, 0]),
    (11, 3, [9, 2, 0, 0]),
    (11, 4, [2, 10, 8, 0]),
    (13, 2, [2, 12, 0, 0]),
    (13, 3, [11, 2, 0, 0]),
    (13, 4, [2, 12, 3, 0]),
];

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Element of `F_{p^k}`: coordinates in the power basis of the generator,
/// each in `[0, p)`; unused slots are zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GfElem(pub [u32; 4]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gf {
    p: u32,
    k: u32,
    /// Low coefficients of the monic defining polynomial.
    modulus: [u32; 4],
}

impl Gf {
    pub fn new(p: u32, k: u32) -> Result<Self, ArithError> {
        if !is_prime(p as u64) || p >= 1 << 16 {
            return Err(ArithError::UnsupportedField(format!("characteristic {p} is not a supported prime")));
        }
        if k == 0 || k > MAX_EXTENSION_DEGREE {
            return Err(ArithError::UnsupportedField(format!("extension degree {k} outside 1..=4")));
        }
        if k == 1 {
            return Ok(Gf { p, k, modulus: [0; 4] });
        }
        let modulus = DEFINING_POLYNOMIALS
            .iter()
            .find(|(q, d, _)| *q == p && *d == k)
            .map(|(_, _, m)| *m)
            .unwrap_or_else(|| search_primitive(p, k));
        Ok(Gf { p, k, modulus })
    }

    pub fn prime(p: u32) -> Result<Self, ArithError> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Monic defining polynomial, low to high, including the leading 1.
    pub fn defining_polynomial(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.modulus[..self.k as usize].to_vec();
        v.push(1);
        v
    }

    /// The class of `x` in `F_p[x]/(m)`. For prime fields the defining
    /// polynomial is `x` itself, so this is 0.
    pub fn generator(&self) -> GfElem {
        let mut c = [0u32; 4];
        if self.k > 1 {
            c[1] = 1;
        }
        GfElem(c)
    }

    pub fn from_coeffs(&self, coeffs: &[i64]) -> GfElem {
        let mut c = [0u32; 4];
        for (i, &v) in coeffs.iter().enumerate().take(self.k as usize) {
            c[i] = v.rem_euclid(self.p as i64) as u32;
        }
        let mut out = GfElem(c);
        // reduce higher coefficients through the generator
        if coeffs.len() > self.k as usize {
            let g = self.generator();
            let mut gp = self.pow(&g, self.k as u64);
            for &v in &coeffs[self.k as usize..] {
                out = self.add(&out, &self.mul(&self.from_int(v), &gp));
                gp = self.mul(&gp, &g);
            }
        }
        out
    }

    /// Residue of the element as an integer, for prime fields.
    pub fn to_u32(&self, a: &GfElem) -> u32 {
        a.0[0]
    }
}

fn search_primitive(p: u32, k: u32) -> [u32; 4] {
    // lexicographically first monic polynomial of degree k whose root has
    // multiplicative order p^k - 1
    let order = (p as u64).pow(k);
    let n = order - 1;
    let primes: Vec<u64> = factor_u64(n).into_iter().map(|(r, _)| r).collect();
    for idx in 0..order {
        let mut m = [0u32; 4];
        let mut t = idx;
        for slot in m.iter_mut().take(k as usize) {
            *slot = (t % p as u64) as u32;
            t /= p as u64;
        }
        if m[0] == 0 {
            continue;
        }
        let f = Gf { p, k, modulus: m };
        let x = f.generator();
        if !f.is_one(&f.pow(&x, n)) {
            continue;
        }
        if primes.iter().all(|r| !f.is_one(&f.pow(&x, n / r))) {
            return m;
        }
    }
    unreachable!("a primitive polynomial always exists")
}

impl Field for Gf {
    type Elem = GfElem;

    fn zero(&self) -> GfElem {
        GfElem([0; 4])
    }

    fn one(&self) -> GfElem {
        GfElem([1, 0, 0, 0])
    }

    fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let mut c = [0u32; 4];
        for i in 0..self.k as usize {
            let s = a.0[i] + b.0[i];
            c[i] = if s >= self.p { s - self.p } else { s };
        }
        GfElem(c)
    }

    fn neg(&self, a: &GfElem) -> GfElem {
        let mut c = [0u32; 4];
        for i in 0..self.k as usize {
            c[i] = if a.0[i] == 0 { 0 } else { self.p - a.0[i] };
        }
        GfElem(c)
    }

    fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let p = self.p as u64;
        if self.k == 1 {
            return GfElem([((a.0[0] as u64 * b.0[0] as u64) % p) as u32, 0, 0, 0]);
        }
        let k = self.k as usize;
        let mut prod = [0u64; 7];
        for i in 0..k {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] += a.0[i] as u64 * b.0[j] as u64;
            }
        }
        for v in prod.iter_mut() {
            *v %= p;
        }
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            // x^k = -sum m_i x^i
            for i in 0..k {
                let m = self.modulus[i] as u64;
                if m != 0 {
                    prod[deg - k + i] = (prod[deg - k + i] + (p - m) * c) % p;
                }
            }
        }
        let mut out = [0u32; 4];
        for i in 0..k {
            out[i] = prod[i] as u32;
        }
        GfElem(out)
    }

    fn inv(&self, a: &GfElem) -> Option<GfElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.order() - 2))
    }

    fn from_int(&self, n: i64) -> GfElem {
        GfElem([n.rem_euclid(self.p as i64) as u32, 0, 0, 0])
    }

    fn characteristic(&self) -> u64 {
        self.p as u64
    }

    fn fmt_elem(&self, a: &GfElem) -> String {
        if self.k == 1 {
            return a.0[0].to_string();
        }
        let mut terms = Vec::new();
        for i in (0..self.k as usize).rev() {
            let c = a.0[i];
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, c) => format!("{c}*a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}*a^{i}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            format!("({})", terms.join("+"))
        }
    }
}

impl FiniteField for Gf {
    fn order(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    fn prime_degree(&self) -> u32 {
        self.k
    }

    fn elem_to_index(&self, a: &GfElem) -> u64 {
        let mut idx = 0u64;
        for i in (0..self.k as usize).rev() {
            idx = idx * self.p as u64 + a.0[i] as u64;
        }
        idx
    }

    fn index_to_elem(&self, mut i: u64) -> GfElem {
        let mut c = [0u32; 4];
        for slot in c.iter_mut().take(self.k as usize) {
            *slot = (i % self.p as u64) as u32;
            i /= self.p as u64;
        }
        GfElem(c)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.k)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn multiplicative_order(f: &Gf, a: &GfElem) -> u64 {
        let mut x = *a;
        let mut n = 1;
        while !f.is_one(&x) {
            x = f.mul(&x, a);
            n += 1;
        }
        n
    }

    #[test]
    fn shipped_polynomials_are_primitive() {
        for &(p, k, _) in DEFINING_POLYNOMIALS {
            let f = Gf::new(p, k).unwrap();
            let g = f.generator();
            assert_eq!(multiplicative_order(&f, &g), f.order() - 1, "F_{p}^{k}");
        }
    }

    #[test]
    fn searched_polynomial_for_unlisted_prime() {
        let f = Gf::new(17, 2).unwrap();
        assert_eq!(multiplicative_order(&f, &f.generator()), 288);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Gf::new(4, 1).is_err());
        assert!(Gf::new(3, 5).is_err());
        assert!(Gf::new(3, 0).is_err());
    }

    #[test]
    fn index_round_trip() {
        let f = Gf::new(3, 2).unwrap();
        for i in 0..9 {
            assert_eq!(f.elem_to_index(&f.index_to_elem(i)), i);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, k) in [(2, 2), (3, 2), (5, 1), (2, 3)] {
            let f = Gf::new(p, k).unwrap();
            let els = f.elements();
            for a in &els {
                if !f.is_zero(a) {
                    assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
                }
                for b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in els.iter().step_by(3) {
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f = Gf::new(5, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow(&f.pth_root(&a), 5), a);
        }
    }
}
