//! Factorisation of univariate polynomials over finite fields, plus rational
//! root extraction over the rationals.
//!
//! The finite-field path is squarefree decomposition, distinct-degree
//! factorisation and Cantor–Zassenhaus equal-degree splitting with a seeded
//! generator, so results are reproducible run to run. Squarefree pieces of
//! degree at most three over small fields are split by exhaustive root search
//! instead.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, FiniteField};
use super::gf::factor_u64;
use super::poly::Poly;
use super::rational::Rationals;
use super::ArithError;

const SPLITTER_SEED: u64 = 0x6d6f_6470_6963;
const EXHAUSTIVE_ROOT_LIMIT: u64 = 4096;

/// `leading * prod(factor^mult)`, factors monic irreducible and sorted by
/// degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<F: Field> {
    pub leading: F::Elem,
    pub factors: Vec<(Poly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    pub fn expand(&self, f: &F) -> Poly<F> {
        self.factors
            .iter()
            .fold(Poly::constant(f, self.leading.clone()), |acc, (g, m)| acc.mul(&g.pow(*m as u64, f), f))
    }
}

pub fn poly_factor<F: FiniteField>(poly: &Poly<F>, f: &F) -> Result<Factorization<F>, ArithError> {
    if poly.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let leading = poly.lc(f);
    let monic = poly.monic(f);
    let mut rng = ChaCha8Rng::seed_from_u64(SPLITTER_SEED);
    let mut factors: Vec<(Poly<F>, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic, f) {
        for (g, d) in distinct_degree(&part, f) {
            for h in split_equal_degree(&g, d, f, &mut rng) {
                factors.push((h, mult));
            }
        }
    }
    factors.sort();
    // merge repeated factors produced by separate squarefree layers
    let mut merged: Vec<(Poly<F>, usize)> = Vec::new();
    for (g, m) in factors {
        match merged.last_mut() {
            Some((h, n)) if *h == g => *n += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(Factorization { leading, factors: merged })
}

/// Yun-style squarefree decomposition of a monic polynomial over a finite
/// field; returns `(squarefree part, multiplicity)` pairs.
pub fn squarefree_decomposition<F: FiniteField>(poly: &Poly<F>, f: &F) -> Vec<(Poly<F>, usize)> {
    let mut out = Vec::new();
    if poly.deg() == 0 {
        return out;
    }
    let p = f.characteristic() as usize;
    let d = poly.derivative(f);
    if d.is_zero() {
        for (g, m) in squarefree_decomposition(&poly.pth_root(f), f) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = poly.gcd(&d, f);
    let mut w = poly.div_exact(&c, f).unwrap();
    let mut i = 1;
    while !w.is_one(f) {
        let y = w.gcd(&c, f);
        let z = w.div_exact(&y, f).unwrap();
        if !z.is_one(f) {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y, f).unwrap();
        w = y;
    }
    if !c.is_one(f) {
        for (g, m) in squarefree_decomposition(&c.pth_root(f), f) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorisation of a squarefree monic polynomial.
pub fn distinct_degree<F: FiniteField>(poly: &Poly<F>, f: &F) -> Vec<(Poly<F>, usize)> {
    let mut out = Vec::new();
    let q = f.order();
    let x = Poly::x(f);
    let mut rest = poly.clone();
    let mut h = x.rem(&rest, f);
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.pow_mod(q, &rest, f);
        let g = h.sub(&x, f).gcd(&rest, f);
        if !g.is_one(f) {
            rest = rest.div_exact(&g, f).unwrap();
            h = h.rem(&rest, f);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

fn split_equal_degree<F: FiniteField>(g: &Poly<F>, d: usize, f: &F, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
    let n = g.deg();
    if n == d {
        return vec![g.clone()];
    }
    if n <= 3 && f.order() <= EXHAUSTIVE_ROOT_LIMIT {
        return split_by_roots(g, f);
    }
    let q = f.order();
    let p = f.characteristic();
    loop {
        let a = Poly::random_below(f, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace map into F_2
            let steps = f.prime_degree() as usize * d;
            let mut acc = a.rem(g, f);
            let mut cur = acc.clone();
            for _ in 1..steps {
                cur = cur.mul_mod(&cur, g, f);
                acc = acc.add(&cur, f);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - 1) / 2;
            a.pow_mod(e, g, f).sub(&Poly::one(f), f)
        };
        let h = b.gcd(g, f);
        if h.deg() > 0 && h.deg() < n {
            let other = g.div_exact(&h, f).unwrap();
            let mut out = split_equal_degree(&h, d, f, rng);
            out.extend(split_equal_degree(&other, d, f, rng));
            return out;
        }
    }
}

fn split_by_roots<F: FiniteField>(g: &Poly<F>, f: &F) -> Vec<Poly<F>> {
    let mut out = Vec::new();
    let mut rest = g.clone();
    for a in f.elements() {
        if rest.deg() == 0 {
            break;
        }
        if f.is_zero(&rest.eval(&a, f)) {
            let lin = Poly::linear(f, &a);
            rest = rest.div_exact(&lin, f).unwrap();
            out.push(lin);
        }
    }
    if rest.deg() > 0 {
        out.push(rest);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible<F: FiniteField>(poly: &Poly<F>, f: &F) -> bool {
    let n = match poly.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let m = poly.monic(f);
    let q = f.order();
    let x = Poly::x(f);
    let frob_iter = |k: usize| {
        let mut h = x.rem(&m, f);
        for _ in 0..k {
            h = h.pow_mod(q, &m, f);
        }
        h
    };
    for (r, _) in factor_u64(n as u64) {
        let h = frob_iter(n / r as usize);
        if !h.sub(&x, f).gcd(&m, f).is_one(f) {
            return false;
        }
    }
    frob_iter(n) == x.rem(&m, f)
}

/// Monic irreducible polynomials of exact degree `d`, in canonical order.
pub fn monic_irreducibles<F: FiniteField>(f: &F, d: usize) -> Vec<Poly<F>> {
    let mut v: Vec<Poly<F>> = Poly::monic_of_degree(f, d).into_iter().filter(|g| is_irreducible(g, f)).collect();
    v.sort();
    v
}

/// Rational roots of a nonzero polynomial over the rationals, with
/// multiplicity, and the cofactor with no rational roots.
pub fn rational_roots(poly: &Poly<Rationals>) -> Result<(Vec<(BigRational, usize)>, Poly<Rationals>), ArithError> {
    let f = Rationals;
    if poly.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let mut rest = poly.clone();
    let mut roots = Vec::new();
    let zero = BigRational::zero();
    let (m0, r0) = rest.split_power(&Poly::linear(&f, &zero), &f);
    if m0 > 0 {
        roots.push((zero, m0));
        rest = r0;
    }
    if rest.deg() == 0 {
        return Ok((roots, rest));
    }
    let ints = integer_coefficients(&rest);
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let num_divs = divisors(&a0)?;
    let den_divs = divisors(&an)?;
    let mut candidates = Vec::new();
    for n in &num_divs {
        for d in &den_divs {
            let c = BigRational::new(n.clone(), d.clone());
            candidates.push(c.clone());
            candidates.push(-c);
        }
    }
    candidates.sort();
    candidates.dedup();
    for c in candidates {
        let (m, r) = rest.split_power(&Poly::linear(&f, &c), &f);
        if m > 0 {
            roots.push((c, m));
            rest = r;
        }
    }
    roots.sort();
    Ok((roots, rest))
}

fn integer_coefficients(p: &Poly<Rationals>) -> Vec<BigInt> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs().iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect()
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, ArithError> {
    let limit = BigInt::from(1_000_000_000_000i64);
    if n > &limit {
        return Err(ArithError::TooLarge("rational root search on a large constant term".into()));
    }
    let n: i64 = n.try_into().unwrap();
    let mut out = Vec::new();
    let mut d = 1i64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Ok(out)
}
