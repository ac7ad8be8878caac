//! The trial bodies. Each draws an instance, checks one property with an
//! oracle computed independently of the code under test where possible, and
//! reports what it saw.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::sample;
use super::{GridConfig, Suite};
use crate::arith::{series, Field, FiniteField, Gf, Poly, Rationals};
use crate::curve::{Curve, EPoint, EllipticCurve, P1Place, RatFn, P1};
use crate::local_units::{p_power_exponent, truncated_exp, truncated_log};
use crate::modulus::{
    divisor_of, factored_in_modulus_group, in_modulus_group, modulus_pullback, norm_along_cover, pushforward, Modulus,
    ZeroCycle,
};
use crate::pair::{Pair, PairDescription};
use crate::picard::{divisibility_of, ModulusClass, PicardCurve, PicardStructure};
use crate::picard_q::{PicardQ, QClass, QRoot};

pub(super) struct Trial {
    pub instance: Value,
    pub passed: bool,
    pub detail: String,
    pub observations: Value,
}

type Check = Result<(bool, String, Value), String>;

fn finish(instance: Value, check: Check) -> Trial {
    match check {
        Ok((passed, detail, observations)) => Trial { instance, passed, detail, observations },
        Err(e) => Trial { instance, passed: false, detail: format!("error: {e}"), observations: Value::Null },
    }
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

pub(super) fn run(suite: Suite, grid: &GridConfig, rng: &mut ChaCha8Rng, fault: bool) -> Trial {
    match suite {
        Suite::PPrimary => on_finite(grid, rng, |s, _| p_primary(s)),
        Suite::TorsionIso => on_finite(grid, rng, |s, _| torsion_iso(s, fault)),
        Suite::LangOrders => on_finite(grid, rng, |s, _| lang_orders(s)),
        Suite::NDivisible => on_finite(grid, rng, |s, _| n_divisible(s, grid.max_root_index)),
        Suite::UDivisible => on_finite(grid, rng, |s, _| u_divisible(s, grid.max_root_index)),
        Suite::PiKernel => pi_kernel(grid, rng),
        Suite::KeyLemP => key_lem_p(grid, rng),
        Suite::Char0Divisible => char0_divisible(grid, rng),
        Suite::KeyLem => key_lem(grid, rng),
        Suite::NormCompat => norm_compat(grid, rng),
    }
}

/// Run a structure-level check on a random finite grid instance.
fn on_finite(
    grid: &GridConfig,
    rng: &mut ChaCha8Rng,
    check: impl Fn(&dyn StructureView, &mut ChaCha8Rng) -> Check,
) -> Trial {
    let desc = sample::finite_pair(grid, rng);
    let instance = serde_json::to_value(&desc).unwrap();
    let result = match desc.resolve() {
        Ok(Pair::FiniteLine { curve, modulus, base }) => {
            View::build(&curve, &modulus, base, 1).and_then(|v| check(&v, rng))
        }
        Ok(Pair::Elliptic { curve, modulus, base }) => {
            let jac = brute_point_count(&curve);
            View::build(&curve, &modulus, base, jac).and_then(|v| check(&v, rng))
        }
        Ok(Pair::RationalLine { .. }) => Err("finite suite drew a rational instance".into()),
        Err(e) => Err(err(e)),
    };
    finish(instance, result)
}

/// `#E(F_p)` by counting solutions of the Weierstrass equation.
fn brute_point_count(e: &EllipticCurve) -> u128 {
    let f = e.field();
    let p = f.p() as i64;
    let (a, b) = (e.a() as i64, e.b() as i64);
    let mut count = 1;
    for x in 0..p {
        for y in 0..p {
            if (y * y - (x * x * x + a * x + b)).rem_euclid(p) == 0 {
                count += 1;
            }
        }
    }
    count
}

/// Curve-independent data of a structure and its reduced companion.
trait StructureView {
    fn characteristic(&self) -> u64;
    fn finite_part(&self) -> &crate::arith::FinAbGroup;
    fn reduced_finite_part(&self) -> &crate::arith::FinAbGroup;
    fn unipotent(&self) -> crate::arith::FinAbGroup;
    /// `(q_P, n_P)` for the components of `D`.
    fn local_data(&self) -> &[(u128, u32)];
    fn base_field_order(&self) -> u128;
    /// `#Pic^0` of the complete curve, counted independently.
    fn jacobian_oracle(&self) -> u128;
    fn lang(&self) -> bool;
    fn divisibility(&self, n: u64) -> crate::picard::DivisibilityReport;
}

struct View<C: PicardCurve> {
    s: PicardStructure<C>,
    red: PicardStructure<C>,
    local: Vec<(u128, u32)>,
    jac: u128,
}

impl<C: PicardCurve> View<C> {
    fn build(curve: &C, d: &Modulus<C::Place>, base: C::Place, jac: u128) -> Result<Self, String> {
        let s = PicardStructure::with_base(curve, d, base).map_err(err)?;
        let red = s.reduced_structure().map_err(err)?;
        let local = d.components().iter().map(|(p, n)| (curve.residue_field(p).order() as u128, *n)).collect();
        Ok(View { s, red, local, jac })
    }
}

impl<C: PicardCurve> StructureView for View<C> {
    fn characteristic(&self) -> u64 {
        self.s.characteristic()
    }
    fn finite_part(&self) -> &crate::arith::FinAbGroup {
        self.s.finite_part()
    }
    fn reduced_finite_part(&self) -> &crate::arith::FinAbGroup {
        self.red.finite_part()
    }
    fn unipotent(&self) -> crate::arith::FinAbGroup {
        self.s.unipotent_part()
    }
    fn local_data(&self) -> &[(u128, u32)] {
        &self.local
    }
    fn base_field_order(&self) -> u128 {
        self.s.base_field_order()
    }
    fn jacobian_oracle(&self) -> u128 {
        self.jac
    }
    fn lang(&self) -> bool {
        self.s.lang_order_check()
    }
    fn divisibility(&self, n: u64) -> crate::picard::DivisibilityReport {
        self.s.divisibility_check(n)
    }
}

fn p_primary(v: &dyn StructureView) -> Check {
    let p = v.characteristic() as u128;
    let u = v.unipotent();
    let oracle: u128 = v.local_data().iter().map(|(q, n)| q.pow(n - 1)).product();
    let mut e = 0;
    let mut rest = u.order();
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    let passed = rest == 1 && u.order() == oracle;
    let detail = format!("|U| = {} = {p}^{e}, expected {oracle}", u.order());
    Ok((passed, detail, json!({ "unipotent": u, "order": u.order().to_string() })))
}

fn torsion_iso(v: &dyn StructureView, fault: bool) -> Check {
    let p = v.characteristic();
    let ours = if fault { v.finite_part().clone() } else { v.finite_part().prime_to_part(p) };
    let theirs = v.reduced_finite_part().prime_to_part(p);
    let passed = ours == theirs;
    let detail = format!("prime-to-{p} parts: {ours} vs reduced {theirs}");
    Ok((passed, detail, json!({ "prime_to_p": ours, "reduced_prime_to_p": theirs })))
}

fn lang_orders(v: &dyn StructureView) -> Check {
    let units: u128 = v.local_data().iter().map(|(q, n)| (q - 1) * q.pow(n - 1)).product();
    let expected = if v.local_data().is_empty() {
        v.jacobian_oracle()
    } else {
        v.jacobian_oracle() * units / (v.base_field_order() - 1)
    };
    let got = v.finite_part().order();
    let passed = got == expected && v.lang();
    let detail = format!("|Pic^0(C, D)| = {got}, expected {expected}");
    Ok((passed, detail, json!({ "order": got.to_string(), "expected": expected.to_string() })))
}

fn coprime_indices(p: u64, max_n: u64) -> impl Iterator<Item = u64> {
    (1..=max_n).filter(move |n| n.gcd(&p) == 1)
}

fn n_divisible(v: &dyn StructureView, max_n: u64) -> Check {
    let p = v.characteristic();
    let mut failures = Vec::new();
    for n in coprime_indices(p, max_n) {
        let r = v.divisibility(n);
        if !r.divisible {
            failures.push(json!({ "n": n, "obstructions": r.obstructions }));
        }
    }
    let passed = failures.is_empty();
    let detail = if passed {
        format!("{} is n-divisible for every n <= {max_n} prime to {p}", v.finite_part())
    } else {
        format!("{} is not n-divisible for n in {}", v.finite_part(), serde_json::to_string(&failures).unwrap())
    };
    Ok((passed, detail, json!({ "finite_part": v.finite_part(), "failures": failures })))
}

fn u_divisible(v: &dyn StructureView, max_n: u64) -> Check {
    let p = v.characteristic();
    let u = v.unipotent();
    let order = u.order();
    let bad: Vec<u64> = coprime_indices(p, max_n)
        .filter(|&n| !divisibility_of(&u, n).divisible || (n as u128).gcd(&order) != 1)
        .collect();
    let passed = bad.is_empty();
    let detail = format!("U = {u}: uniquely n-divisible for n <= {max_n} prime to {p}; failing {bad:?}");
    Ok((passed, detail, json!({ "unipotent": u, "failing": bad })))
}

/// Random cycle of 1 to 3 terms supported away from `|D|`.
fn random_cycle<P: Clone + Ord>(places: &[P], d: &Modulus<P>, rng: &mut ChaCha8Rng) -> ZeroCycle<P> {
    let free: Vec<&P> = places.iter().filter(|p| !d.contains(p)).collect();
    if free.is_empty() {
        return ZeroCycle::zero();
    }
    let terms = rng.gen_range(1..=3);
    ZeroCycle::new((0..terms).map(|_| ((*free.choose(rng).unwrap()).clone(), rng.gen_range(-3..=3i64))))
}

fn pi_kernel(grid: &GridConfig, rng: &mut ChaCha8Rng) -> Trial {
    let desc = sample::finite_pair(grid, rng);
    let instance = serde_json::to_value(&desc).unwrap();
    let result = match desc.resolve() {
        Ok(Pair::FiniteLine { curve, modulus, base }) => pi_kernel_line(grid, &curve, &modulus, base, rng),
        Ok(Pair::Elliptic { curve, modulus, base }) => pi_kernel_elliptic(&curve, &modulus, base, rng),
        Ok(Pair::RationalLine { .. }) => Err("finite suite drew a rational instance".into()),
        Err(e) => Err(err(e)),
    };
    finish(instance, result)
}

/// `pi(class_D z) = class_{D_red} z` for a random cycle.
fn projection_agrees<C: PicardCurve>(
    s: &PicardStructure<C>,
    red: &PicardStructure<C>,
    z: &ZeroCycle<C::Place>,
) -> Result<bool, String> {
    let c = s.class_of(z).map_err(err)?;
    Ok(s.pi_map(red, &c).map_err(err)? == red.class_of(z).map_err(err)?)
}

fn pi_kernel_line(
    grid: &GridConfig,
    curve: &P1<Gf>,
    d: &Modulus<P1Place<Gf>>,
    base: P1Place<Gf>,
    rng: &mut ChaCha8Rng,
) -> Check {
    let s = PicardStructure::with_base(curve, d, base).map_err(err)?;
    let red = s.reduced_structure().map_err(err)?;
    let exact = s.exactness_audit(&red);

    let f = sample::line_unit(curve, d, rng);
    if !in_modulus_group(curve, &f, d).map_err(err)? {
        return Err(format!("sampled {} is not in G(D)", curve.fmt_fun(&f)));
    }
    let relation_zero = s.class_of_function(&vec![(f.clone(), 1)]).map_err(err)?.is_zero();

    // f in G(D_red) but not in G(D) lands in U and is nonzero
    let mut unipotent_ok = true;
    let mut kernel_witness = Value::Null;
    if !d.is_reduced() {
        let g = loop {
            let g = sample::line_unit(curve, &d.reduced(), rng);
            if !in_modulus_group(curve, &g, d).map_err(err)? {
                break g;
            }
        };
        let c = s.class_of_function(&vec![(g.clone(), 1)]).map_err(err)?;
        unipotent_ok = s.in_unipotent(&red, &c).map_err(err)? && !c.is_zero();
        kernel_witness = json!(curve.fmt_fun(&g));
    }

    let places = curve.field().enumerate_places(grid.max_place_degree).map_err(err)?.listed();
    let z = random_cycle(&places, d, rng);
    let agrees = projection_agrees(&s, &red, &z)?;

    let passed = exact && relation_zero && unipotent_ok && agrees;
    let detail = format!(
        "exactness {exact}, class of div f zero {relation_zero}, G(D_red) element in U {unipotent_ok}, projection agrees {agrees}"
    );
    let obs = json!({ "f": curve.fmt_fun(&f), "g": kernel_witness, "cycle": z.fmt_with(curve) });
    Ok((passed, detail, obs))
}

/// Order of a degree-0 class.
fn class_order<C: PicardCurve>(s: &PicardStructure<C>, c: &ModulusClass) -> u64 {
    let exp = s.finite_part().exponent();
    let mut best = exp;
    for (q, _) in crate::arith::gf::factor_u64(exp) {
        while best % q == 0 && s.scale(c, (best / q) as i64).is_zero() {
            best /= q;
        }
    }
    best
}

/// The constants `γ` with `γ h^e` in `G(D)`, checked on expansions.
fn constants_making_unit(
    curve: &EllipticCurve,
    h: &[(crate::curve::EFn, i64)],
    e: i64,
    d: &Modulus<EPoint>,
) -> Result<Vec<u32>, String> {
    let f = curve.field();
    let mut out = Vec::new();
    for g in f.elements().into_iter().filter(|g| !f.is_zero(g)) {
        let mut factors: Vec<(crate::curve::EFn, i64)> = h.iter().map(|(x, k)| (x.clone(), k * e)).collect();
        factors.push((curve.fun_constant(g), 1));
        if factored_in_modulus_group(curve, &factors, d).map_err(err)? {
            out.push(f.to_u32(&g));
        }
    }
    Ok(out)
}

/// A random principal divisor supported on rational points outside `|D|`.
fn random_principal(curve: &EllipticCurve, d: &Modulus<EPoint>, rng: &mut ChaCha8Rng) -> Option<ZeroCycle<EPoint>> {
    let free: Vec<EPoint> = curve.points().into_iter().filter(|p| !d.contains(p)).collect();
    if free.len() < 2 {
        return None;
    }
    for _ in 0..20 {
        let b = *free.choose(rng).unwrap();
        let mut w = ZeroCycle::zero();
        for _ in 0..rng.gen_range(1..=3) {
            w = w.add(&ZeroCycle::new(vec![(*free.choose(rng).unwrap(), rng.gen_range(-2..=2i64))]));
        }
        let deg = w.degree(curve);
        w = w.sub(&ZeroCycle::point(b).scale(deg));
        let sum = w.terms().iter().fold(EPoint::Infinity, |acc, (p, n)| curve.add(&acc, &curve.mul(p, *n)));
        let x = curve.add(&b, &curve.neg(&sum));
        if d.contains(&x) {
            continue;
        }
        w = w.add(&ZeroCycle::new(vec![(x, 1), (b, -1)]));
        if !w.is_zero() {
            return Some(w);
        }
    }
    None
}

fn pi_kernel_elliptic(curve: &EllipticCurve, d: &Modulus<EPoint>, base: EPoint, rng: &mut ChaCha8Rng) -> Check {
    let s = PicardStructure::with_base(curve, d, base).map_err(err)?;
    let red = s.reduced_structure().map_err(err)?;
    let exact = s.exactness_audit(&red);
    let mut relation_ok = true;
    let mut unipotent_ok = true;
    let mut obs = json!({});
    if let Some(w) = random_principal(curve, d, rng) {
        let h = curve.witness(&w).map_err(err)?;
        let c = s.class_of(&w).map_err(err)?;
        let e = class_order(&s, &c) as i64;
        // γ h^e in G(D) for some constant, and for no proper divisor of e
        let hits = constants_making_unit(curve, &h, e, d)?;
        relation_ok = !hits.is_empty();
        for (q, _) in crate::arith::gf::factor_u64(e as u64) {
            if !constants_making_unit(curve, &h, e / q as i64, d)?.is_empty() {
                relation_ok = false;
            }
        }
        let cr = red.class_of(&w).map_err(err)?;
        let er = class_order(&red, &cr) as i64;
        if constants_making_unit(curve, &h, er, &d.reduced())?.is_empty() {
            relation_ok = false;
        }
        // γ h^{e_red} in G(D_red): its class in Pic(C, D) is e_red c
        let ce = s.scale(&c, er);
        unipotent_ok = s.in_unipotent(&red, &ce).map_err(err)?;
        obs = json!({ "principal": w.fmt_with(curve), "order": e, "reduced_order": er, "constants": hits });
    }
    let z = random_cycle(&curve.points(), d, rng);
    let agrees = projection_agrees(&s, &red, &z)?;
    let passed = exact && relation_ok && unipotent_ok && agrees;
    let detail = format!(
        "exactness {exact}, relation orders certified {relation_ok}, G(D_red) element in U {unipotent_ok}, projection agrees {agrees}"
    );
    obs["cycle"] = json!(z.fmt_with(curve));
    Ok((passed, detail, obs))
}

/// `(1 + t)^{p^{m-1}}` misses `G(n[t])` while `(1 + t)^{p^m}` is in it.
fn sharpness_witness(p: u32, n: u32) -> Result<(u32, bool), String> {
    let f = Gf::prime(p).map_err(err)?;
    let line = P1::new(f);
    let d = Modulus::new(vec![(P1Place::rational(&f, &f.zero()), n)]).map_err(err)?;
    let m = p_power_exponent(p as u64, n as u64).map_err(err)?;
    let one_plus_t = RatFn::from_poly(&f, Poly::from_ints(&f, &[1, 1]));
    let at = |k: u32| -> Result<bool, String> {
        let g = one_plus_t.pow((p as i64).pow(k), &f).unwrap();
        in_modulus_group(&line, &g, &d).map_err(err)
    };
    Ok((m, at(m)? && m >= 1 && !at(m - 1)?))
}

fn key_lem_p(grid: &GridConfig, rng: &mut ChaCha8Rng) -> Trial {
    let desc = sample::finite_pair(grid, rng);
    let instance = serde_json::to_value(&desc).unwrap();
    let result = (|| -> Check {
        let pair = desc.resolve().map_err(err)?;
        let p = pair.characteristic();
        let (d_max, f_text, in_g) = match &pair {
            Pair::FiniteLine { curve, modulus, .. } => {
                let m = p_power_exponent(p, max_mult(modulus) as u64).map_err(err)?;
                let f = sample::line_unit(curve, &modulus.reduced(), rng);
                if !in_modulus_group(curve, &f, &modulus.reduced()).map_err(err)? {
                    return Err(format!("sampled {} is not in G(D_red)", curve.fmt_fun(&f)));
                }
                let g = f.pow((p as i64).pow(m), curve.field()).unwrap();
                (max_mult(modulus), curve.fmt_fun(&f), in_modulus_group(curve, &g, modulus).map_err(err)?)
            }
            Pair::Elliptic { curve, modulus, .. } => {
                let m = p_power_exponent(p, max_mult(modulus) as u64).map_err(err)?;
                let f = sample::elliptic_unit(curve, &modulus.reduced(), rng);
                if !in_modulus_group(curve, &f, &modulus.reduced()).map_err(err)? {
                    return Err(format!("sampled {} is not in G(D_red)", curve.fmt_fun(&f)));
                }
                let g = curve.fun_pow(&f, (p as i64).pow(m)).unwrap();
                (max_mult(modulus), curve.fmt_fun(&f), in_modulus_group(curve, &g, modulus).map_err(err)?)
            }
            Pair::RationalLine { .. } => return Err("finite suite drew a rational instance".into()),
        };
        let m = p_power_exponent(p, d_max as u64).map_err(err)?;
        let (wm, sharp) = sharpness_witness(p as u32, d_max.max(2))?;
        let passed = in_g && sharp;
        let detail = format!(
            "f^({p}^{m}) in G(D): {in_g}; witness (1+t) on {}[t]: exponent {p}^{wm} works and {p}^{} fails: {sharp}",
            d_max.max(2),
            wm - 1
        );
        Ok((passed, detail, json!({ "p": p, "m": m, "f": f_text, "witness_sharp": sharp })))
    })();
    finish(instance, result)
}

fn max_mult<P: Clone + Ord>(d: &Modulus<P>) -> u32 {
    d.components().iter().map(|(_, n)| *n).max().unwrap_or(1)
}

/// `x` with `x^n = s` by solving for one coefficient at a time.
fn coefficient_root(s: &[BigRational], n: u64) -> Vec<BigRational> {
    let q = Rationals;
    let mut x = vec![BigRational::zero(); s.len()];
    x[0] = BigRational::one();
    let nq = BigRational::from_integer(BigInt::from(n));
    for k in 1..s.len() {
        let c = series::pow(&q, &x, n);
        x[k] = (&s[k] - &c[k]) / &nq;
    }
    x
}

fn char0_divisible(grid: &GridConfig, rng: &mut ChaCha8Rng) -> Trial {
    let desc = sample::rational_pair(grid, rng);
    let instance = serde_json::to_value(&desc).unwrap();
    let result = (|| -> Check {
        let Pair::RationalLine { curve, modulus, base } = desc.resolve().map_err(err)? else {
            return Err("rational suite drew a finite instance".into());
        };
        let g = PicardQ::with_base(&modulus, base).map_err(err)?;
        let range = grid.rational.point_range;
        let mut places: Vec<P1Place<Rationals>> = Vec::new();
        for _ in 0..3 {
            let a = sample::small_rational(rng, range + 2);
            places.push(P1Place::rational(&Rationals, &a));
        }
        let z = random_cycle(&places, &modulus, rng);
        let c = g.class_of(&z).map_err(err)?;
        // the unipotent component of the class
        let u = QClass { degree: 0, torus: vec![BigRational::one(); c.torus.len()], unipotent: c.unipotent.clone() };
        let mut bad = Vec::new();
        for n in 1..=grid.max_root_index {
            match g.nth_root(&u, n as u32) {
                QRoot::Root(r) => {
                    let back = g.scale(&r, n as i64) == u;
                    let unique = (0..modulus.components().len())
                        .all(|i| coefficient_root(&g.principal_series(&u, i), n) == g.principal_series(&r, i));
                    if !(back && unique && g.in_unipotent(&r)) {
                        bad.push(n);
                    }
                }
                QRoot::Obstructed { .. } => bad.push(n),
            }
        }
        let passed = bad.is_empty();
        let detail = format!(
            "element of U from {}: roots for n <= {} exact and unique; failing {bad:?}",
            z.fmt_with(&curve),
            grid.max_root_index
        );
        Ok((passed, detail, json!({ "cycle": z.fmt_with(&curve), "failing": bad })))
    })();
    finish(instance, result)
}

fn key_lem(grid: &GridConfig, rng: &mut ChaCha8Rng) -> Trial {
    let q = Rationals;
    let n = rng.gen_range(1..=grid.max_series_precision);
    let s = sample::principal_series(n, rng);
    let s2 = sample::principal_series(n, rng);
    let show = |v: &[BigRational]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    let instance = json!({ "precision": n, "s": show(&s), "s2": show(&s2) });
    let result = (|| -> Check {
        let l = truncated_log(&q, &s).map_err(err)?;
        let l2 = truncated_log(&q, &s2).map_err(err)?;
        let round_trip = truncated_exp(&q, &l).map_err(err)? == s;
        let mut m = sample::principal_series(n, rng);
        m[0] = BigRational::zero();
        let back = truncated_log(&q, &truncated_exp(&q, &m).map_err(err)?).map_err(err)? == m;
        let hom = truncated_log(&q, &series::mul(&q, &s, &s2)).map_err(err)? == series::add(&q, &l, &l2);
        let hom_exp = truncated_exp(&q, &series::add(&q, &l, &m)).map_err(err)?
            == series::mul(&q, &s, &truncated_exp(&q, &m).map_err(err)?);
        let passed = round_trip && back && hom && hom_exp;
        let detail = format!("precision {n}: exp log = id {round_trip}, log exp = id {back}, log additive {hom}, exp multiplicative {hom_exp}");
        Ok((passed, detail, json!({ "log_s": show(&l) })))
    })();
    finish(instance, result)
}

fn norm_compat(grid: &GridConfig, rng: &mut ChaCha8Rng) -> Trial {
    let desc: PairDescription = sample::line_pair(grid, rng);
    let mut instance = serde_json::to_value(&desc).unwrap();
    let (curve, d) = match desc.resolve() {
        Ok(Pair::FiniteLine { curve, modulus, .. }) => (curve, modulus),
        Ok(_) => return finish(instance, Err("cover suite needs the projective line".into())),
        Err(e) => return finish(instance, Err(err(e))),
    };
    let f = *curve.field();
    let phi = sample::cover(&f, grid.max_cover_degree, rng);
    instance["cover"] = json!(curve.fmt_fun(&phi));
    let result = (|| -> Check {
        let pulled = modulus_pullback(&f, &phi, &d).map_err(err)?;
        let g = sample::line_unit(&curve, &pulled, rng);
        let g_ok = in_modulus_group(&curve, &g, &pulled).map_err(err)?;
        let norm = norm_along_cover(&f, &phi, &g).map_err(err)?;
        let pushed = pushforward(&f, &phi, &divisor_of(&curve, &g).map_err(err)?);
        let div_norm = divisor_of(&curve, &norm).map_err(err)?;
        let divisors_match = pushed == div_norm;
        let norm_ok = in_modulus_group(&curve, &norm, &d).map_err(err)?;
        let passed = g_ok && divisors_match && norm_ok;
        let detail = format!(
            "degree {} cover, pullback {}: g in G(pullback) {g_ok}, push div g = div Norm g {divisors_match}, Norm g in G(D) {norm_ok}",
            phi.map_degree(),
            pulled.fmt_with(&curve)
        );
        Ok((passed, detail, json!({ "g": curve.fmt_fun(&g), "norm": curve.fmt_fun(&norm) })))
    })();
    finish(instance, result)
}
