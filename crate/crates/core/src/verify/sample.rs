//! Random instances and random elements of modulus groups.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use super::GridConfig;
use crate::arith::{Field, FiniteField, Gf, Poly, Rationals};
use crate::curve::{Curve, EFn, EPoint, EllipticCurve, P1Place, RatFn, P1};
use crate::modulus::Modulus;
use crate::pair::{modulus_entries, CurveDescriptor, PairDescription};
use crate::picard::estimated_size;

fn describe<C: Curve>(
    characteristic: u32,
    k: u32,
    curve_desc: CurveDescriptor,
    curve: &C,
    d: &Modulus<C::Place>,
    base: Option<&C::Place>,
) -> PairDescription {
    PairDescription {
        characteristic,
        extension_degree: k,
        curve: curve_desc,
        modulus: modulus_entries(curve, d),
        base_place: base.map(|b| curve.fmt_place(b)),
        seed: None,
    }
}

/// Multiplicities for the chosen places with `sum n_i deg P_i <= weight`.
fn multiplicities<R: Rng>(degrees: &[usize], weight: usize, rng: &mut R) -> Option<Vec<u32>> {
    let mut left = weight.checked_sub(degrees.iter().sum())?;
    let mut out = Vec::new();
    for &d in degrees {
        let extra = rng.gen_range(0..=left / d);
        left -= extra * d;
        out.push(1 + extra as u32);
    }
    Some(out)
}

/// A base place outside `|D|` when one is rational, otherwise the default.
fn pick_base<P: Clone + Ord, R: Rng>(rational: &[P], d: &Modulus<P>, default: P, rng: &mut R) -> P {
    if !d.contains(&default) {
        return default;
    }
    let free: Vec<&P> = rational.iter().filter(|p| !d.contains(p)).collect();
    free.choose(rng).map(|p| (*p).clone()).unwrap_or(default)
}

pub fn line_pair<R: Rng>(grid: &GridConfig, rng: &mut R) -> PairDescription {
    loop {
        let p = *grid.primes.choose(rng).unwrap();
        let k = rng.gen_range(1..=grid.max_extension_degree);
        let field = Gf::new(p, k).expect("grid fields are valid");
        let curve = P1::new(field);
        let places = field.enumerate_places(grid.max_place_degree).expect("finite field").listed();
        let r = rng.gen_range(1..=grid.max_components);
        let chosen: Vec<P1Place<Gf>> = places.choose_multiple(rng, r).cloned().collect();
        let degrees: Vec<usize> = chosen.iter().map(P1Place::degree).collect();
        let Some(mults) = multiplicities(&degrees, grid.max_modulus_weight, rng) else { continue };
        let d = Modulus::new(chosen.into_iter().zip(mults).collect()).expect("distinct places");
        if estimated_size(&curve, &d).map_or(true, |s| s > grid.sweep_cap as u128) {
            continue;
        }
        let rational: Vec<P1Place<Gf>> = places.iter().filter(|p| p.degree() == 1).cloned().collect();
        let base = pick_base(&rational, &d, P1Place::Infinity, rng);
        let shown = (base != P1Place::Infinity).then_some(&base);
        return describe(p, k, CurveDescriptor::P1, &curve, &d, shown);
    }
}

pub fn elliptic_pair<R: Rng>(grid: &GridConfig, rng: &mut R) -> PairDescription {
    let spec = grid.elliptic_curves.choose(rng).expect("grid lists elliptic curves");
    let curve = EllipticCurve::new(spec.p, spec.a, spec.b).expect("grid curves are smooth");
    let points = curve.points();
    loop {
        let r = rng.gen_range(1..=grid.max_components.min(points.len()));
        let chosen: Vec<EPoint> = points.choose_multiple(rng, r).cloned().collect();
        let Some(mults) = multiplicities(&vec![1; r], grid.max_modulus_weight, rng) else { continue };
        let d = Modulus::new(chosen.into_iter().zip(mults).collect()).expect("distinct points");
        if estimated_size(&curve, &d).map_or(true, |s| s > grid.sweep_cap as u128) {
            continue;
        }
        let base = pick_base(&points, &d, EPoint::Infinity, rng);
        let shown = (base != EPoint::Infinity).then_some(&base);
        let desc = CurveDescriptor::Elliptic { a: spec.a, b: spec.b };
        return describe(spec.p, 1, desc, &curve, &d, shown);
    }
}

/// A finite-field grid instance: elliptic with the configured share.
pub fn finite_pair<R: Rng>(grid: &GridConfig, rng: &mut R) -> PairDescription {
    let [num, den] = grid.elliptic_share;
    if rng.gen_range(0..den) < num {
        elliptic_pair(grid, rng)
    } else {
        line_pair(grid, rng)
    }
}

pub fn small_rational<R: Rng>(rng: &mut R, range: i64) -> BigRational {
    let n = rng.gen_range(-range..=range);
    let d = rng.gen_range(1..=range.max(1));
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A modulus over the rationals on rational places with some `n_i >= 2`.
pub fn rational_pair<R: Rng>(grid: &GridConfig, rng: &mut R) -> PairDescription {
    let q = &grid.rational;
    let curve = P1::new(Rationals);
    let range = q.point_range;
    let mut places: Vec<P1Place<Rationals>> =
        (-range..=range).map(|a| P1Place::rational(&Rationals, &BigRational::from_integer(BigInt::from(a)))).collect();
    places.push(P1Place::Infinity);
    loop {
        let r = rng.gen_range(1..=q.max_components);
        let chosen: Vec<P1Place<Rationals>> = places.choose_multiple(rng, r).cloned().collect();
        let mults: Vec<u32> = (0..r).map(|_| rng.gen_range(1..=q.max_multiplicity)).collect();
        if mults.iter().all(|&n| n == 1) {
            continue;
        }
        let d = Modulus::new(chosen.into_iter().zip(mults).collect()).expect("distinct places");
        let base = pick_base(&places, &d, P1Place::Infinity, rng);
        let shown = (base != P1Place::Infinity).then_some(&base);
        return describe(0, 1, CurveDescriptor::P1, &curve, &d, shown);
    }
}

/// A random nonzero polynomial of degree below `d` (at least a constant).
fn random_nonzero_poly<R: Rng>(f: &Gf, d: usize, rng: &mut R) -> Poly<Gf> {
    loop {
        let g = Poly::random_below(f, d.max(1), rng);
        if !g.is_zero() {
            return g;
        }
    }
}

/// A random `1 + M g / A` in `G(P^1, D)`: `M` vanishes to order `n_P` at
/// the finite places and `deg A` is large enough for the order at infinity.
pub fn line_unit<R: Rng>(curve: &P1<Gf>, d: &Modulus<P1Place<Gf>>, rng: &mut R) -> RatFn<Gf> {
    let f = curve.field();
    let mut m = Poly::one(f);
    let mut n_inf = 0;
    for (p, n) in d.components() {
        match p {
            P1Place::Finite(pi) => m = m.mul(&pi.pow(*n as u64, f), f),
            P1Place::Infinity => n_inf = *n as usize,
        }
    }
    loop {
        let g = random_nonzero_poly(f, 3, rng);
        let min_a = if n_inf > 0 { m.deg() + g.deg() + n_inf } else { 0 };
        let a = Poly::random_monic(f, min_a + rng.gen_range(0..=2), rng);
        if !a.gcd(&m, f).is_one(f) {
            continue;
        }
        let num = a.add(&m.mul(&g, f), f);
        if num.is_zero() {
            continue;
        }
        return RatFn::new(f, num, a);
    }
}

/// A random `1 + (r_1 + r_2 y) prod (x - x_P)^{n_P} / (x - c)^k` in
/// `G(E, D)`.
pub fn elliptic_unit<R: Rng>(curve: &EllipticCurve, d: &Modulus<EPoint>, rng: &mut R) -> EFn {
    let f = curve.field();
    let mut m = Poly::one(f);
    let mut affine_weight = 0;
    let mut n_o = 0;
    let mut used = Vec::new();
    for (p, n) in d.components() {
        match p {
            EPoint::Affine(x, _) => {
                m = m.mul(&Poly::linear(f, x).pow(*n as u64, f), f);
                affine_weight += *n as i64;
                used.push(*x);
            }
            EPoint::Infinity => n_o = *n as i64,
        }
    }
    let free: Vec<_> = f.elements().into_iter().filter(|c| !used.contains(c)).collect();
    loop {
        let c = *free.choose(rng).expect("a free x-coordinate");
        let r1 = Poly::random_below(f, 3, rng);
        let r2 = if rng.gen_bool(0.5) { Poly::random_below(f, 2, rng) } else { Poly::zero() };
        if r1.is_zero() && r2.is_zero() {
            continue;
        }
        // -v_O of r_1 + r_2 y
        let pole = match (r1.is_zero(), r2.is_zero()) {
            (false, true) => 2 * r1.deg() as i64,
            (true, false) => 2 * r2.deg() as i64 + 3,
            _ => (2 * r1.deg() as i64).max(2 * r2.deg() as i64 + 3),
        };
        let needed = if n_o > 0 { (n_o + pole + 2 * affine_weight + 1) / 2 } else { 0 };
        let k = needed + rng.gen_range(0..=1);
        let den = Poly::linear(f, &c).pow(k as u64, f);
        let u = RatFn::new(f, r1.mul(&m, f), den.clone());
        let v = RatFn::new(f, r2.mul(&m, f), den);
        let h = curve.efn(u, v);
        let g = curve.fn_add(&curve.fun_one(), &h);
        if !g.is_zero() {
            return g;
        }
    }
}

/// Truncated series `1 + a_1 u + ...` of length `n` with small rational
/// coefficients.
pub fn principal_series<R: Rng>(n: usize, rng: &mut R) -> Vec<BigRational> {
    let mut s = vec![Rationals.one()];
    s.extend((1..n).map(|_| small_rational(rng, 5)));
    s
}

/// A nonconstant rational function of map degree between 1 and `max_deg`.
pub fn cover<R: Rng>(f: &Gf, max_deg: usize, rng: &mut R) -> RatFn<Gf> {
    loop {
        let d = rng.gen_range(1..=max_deg);
        let num = Poly::random_below(f, d + 1, rng);
        let den = if rng.gen_bool(0.4) { Poly::one(f) } else { Poly::random_monic(f, rng.gen_range(0..=d), rng) };
        if num.is_zero() {
            continue;
        }
        let phi = RatFn::new(f, num, den);
        if !phi.is_constant() {
            return phi;
        }
    }
}
