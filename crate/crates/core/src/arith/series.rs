//! Truncated power series `a_0 + a_1 u + .. + a_{n-1} u^{n-1}` over a field,
//! stored as coefficient vectors of fixed length `n`.

use super::field::Field;

pub fn one<F: Field>(f: &F, n: usize) -> Vec<F::Elem> {
    let mut s = vec![f.zero(); n];
    if n > 0 {
        s[0] = f.one();
    }
    s
}

/// Pad or cut to exactly `n` coefficients.
pub fn fit<F: Field>(f: &F, mut a: Vec<F::Elem>, n: usize) -> Vec<F::Elem> {
    a.resize(n, f.zero());
    a
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    a.iter().map(|x| f.mul(x, c)).collect()
}

/// Product truncated to the length of `a`.
pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len();
    let mut out = vec![f.zero(); n];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().take(n - i).enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

/// Inverse of a series with invertible constant term.
pub fn inv<F: Field>(f: &F, a: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = a.len();
    let c0 = f.inv(a.first()?)?;
    let mut out = vec![f.zero(); n];
    out[0] = c0.clone();
    for k in 1..n {
        let mut acc = f.zero();
        for i in 1..=k.min(a.len() - 1) {
            acc = f.add(&acc, &f.mul(&a[i], &out[k - i]));
        }
        out[k] = f.neg(&f.mul(&acc, &c0));
    }
    Some(out)
}

pub fn div<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    inv(f, b).map(|bi| mul(f, a, &bi))
}

pub fn pow<F: Field>(f: &F, a: &[F::Elem], mut e: u64) -> Vec<F::Elem> {
    let mut acc = one(f, a.len());
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(f, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base);
        }
    }
    acc
}

pub fn pow_signed<F: Field>(f: &F, a: &[F::Elem], e: i64) -> Option<Vec<F::Elem>> {
    if e >= 0 {
        Some(pow(f, a, e as u64))
    } else {
        inv(f, a).map(|ai| pow(f, &ai, e.unsigned_abs()))
    }
}

/// Index of the first nonzero coefficient.
pub fn order<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().position(|c| !f.is_zero(c))
}

/// Drop the first `k` coefficients and pad back to length `n`.
pub fn shift_down<F: Field>(f: &F, a: &[F::Elem], k: usize, n: usize) -> Vec<F::Elem> {
    fit(f, a.iter().skip(k).cloned().collect(), n)
}

/// `u^k * a`, truncated to length `n`.
pub fn shift_up<F: Field>(f: &F, a: &[F::Elem], k: usize, n: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); k.min(n)];
    out.extend(a.iter().take(n.saturating_sub(k)).cloned());
    fit(f, out, n)
}

/// Evaluate a polynomial with coefficients `coeffs` (low to high, already in
/// `f`) at a series.
pub fn eval_poly<F: Field>(f: &F, coeffs: &[F::Elem], x: &[F::Elem]) -> Vec<F::Elem> {
    let n = x.len();
    let mut acc = vec![f.zero(); n];
    for c in coeffs.iter().rev() {
        acc = mul(f, &acc, x);
        if n > 0 {
            acc[0] = f.add(&acc[0], c);
        }
    }
    acc
}

/// Square root of `a` with prescribed constant term `r0` (`r0^2 = a_0 != 0`),
/// in characteristic other than 2.
pub fn sqrt_with<F: Field>(f: &F, a: &[F::Elem], r0: &F::Elem) -> Option<Vec<F::Elem>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    if f.mul(r0, r0) != a[0] || f.is_zero(r0) {
        return None;
    }
    let two_r0_inv = f.inv(&f.add(r0, r0))?;
    let mut r = vec![f.zero(); n];
    r[0] = r0.clone();
    for k in 1..n {
        // coefficient k of r^2 is 2 r0 r_k + sum_{0<i<k} r_i r_{k-i}
        let mut acc = f.zero();
        for i in 1..k {
            acc = f.add(&acc, &f.mul(&r[i], &r[k - i]));
        }
        r[k] = f.mul(&f.sub(&a[k], &acc), &two_r0_inv);
    }
    Some(r)
}

/// Truncated logarithm of `1 + m`; needs `1, .., n-1` invertible.
pub fn log1p<F: Field>(f: &F, s: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = s.len();
    if n == 0 || !f.is_one(&s[0]) {
        return None;
    }
    let mut m = s.to_vec();
    m[0] = f.zero();
    let mut out = vec![f.zero(); n];
    let mut power = m.clone();
    for j in 1..n {
        let c = f.inv(&f.from_int(j as i64))?;
        let c = if j % 2 == 1 { c } else { f.neg(&c) };
        out = add(f, &out, &scale(f, &power, &c));
        power = mul(f, &power, &m);
    }
    Some(out)
}

/// Truncated exponential of a series without constant term.
pub fn exp<F: Field>(f: &F, m: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = m.len();
    if n == 0 || !f.is_zero(&m[0]) {
        return None;
    }
    let mut out = one(f, n);
    let mut term = one(f, n);
    for j in 1..n {
        let c = f.inv(&f.from_int(j as i64))?;
        term = scale(f, &mul(f, &term, m), &c);
        out = add(f, &out, &term);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gf::Gf;
    use crate::arith::rational::{rat, Rationals};

    #[test]
    fn geometric_inverse() {
        let f = Gf::prime(5).unwrap();
        let one_minus_u = vec![f.from_int(1), f.from_int(-1), f.zero()];
        let inv = inv(&f, &one_minus_u).unwrap();
        assert_eq!(inv, vec![f.one(); 3]);
    }

    #[test]
    fn sqrt_squares_back() {
        let q = Rationals;
        let a = vec![rat(4, 1), rat(1, 1), rat(0, 1), rat(3, 1)];
        let r = sqrt_with(&q, &a, &rat(2, 1)).unwrap();
        assert_eq!(mul(&q, &r, &r), a);
    }

    #[test]
    fn log_of_one_plus_u() {
        let q = Rationals;
        let l = log1p(&q, &[rat(1, 1), rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(l, vec![rat(0, 1), rat(1, 1), rat(-1, 2)]);
        let back = exp(&q, &l).unwrap();
        assert_eq!(back, vec![rat(1, 1), rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn shifts() {
        let f = Gf::prime(3).unwrap();
        let a = vec![f.zero(), f.zero(), f.one(), f.from_int(2)];
        assert_eq!(order(&f, &a), Some(2));
        assert_eq!(shift_down(&f, &a, 2, 3), vec![f.one(), f.from_int(2), f.zero()]);
        assert_eq!(shift_up(&f, &[f.one(), f.one()], 1, 3), vec![f.zero(), f.one(), f.one()]);
    }
}
