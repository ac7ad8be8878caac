//! `Pic(P^1, D)` over the rationals for moduli supported on rational places.
//!
//! The degree-0 part is `(O_D)^* / Q^*`: a torus `(Q^*)^r / Q^*` with
//! coordinates `a_i / a_1`, times the vector spaces `(1 + m_i)/(1 + m_i^{n_i})`
//! in logarithmic coordinates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{series, Field, FinAbGroup, Rationals};
use crate::curve::{Curve, P1Place, RatFn, P1};
use crate::local_units::{truncated_exp, truncated_log};
use crate::modulus::{Modulus, ZeroCycle};
use crate::picard::PicardError;

pub type QPlace = P1Place<Rationals>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QClass {
    pub degree: i64,
    /// `a_i / a_1` for `i >= 2`.
    pub torus: Vec<BigRational>,
    /// Logarithms of the principal parts, coefficients of `u^1 .. u^{n_i - 1}`.
    pub unipotent: Vec<Vec<BigRational>>,
}

impl QClass {
    pub fn is_zero(&self) -> bool {
        self.degree == 0 && self.torus.iter().all(One::is_one) && self.unipotent.iter().flatten().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QStructure {
    pub free_rank: usize,
    pub torus_rank: usize,
    pub unipotent_dimension: usize,
    pub torsion: FinAbGroup,
}

/// Outcome of extracting an `n`-th root of a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QRoot {
    Root(QClass),
    /// Torus coordinates (by index) that are not `n`-th powers, or a degree
    /// not divisible by `n`.
    Obstructed {
        torus: Vec<usize>,
        degree: bool,
    },
}

#[derive(Debug, Clone)]
pub struct PicardQ {
    line: P1<Rationals>,
    modulus: Modulus<QPlace>,
    base: QPlace,
}

impl PicardQ {
    pub fn new(modulus: &Modulus<QPlace>) -> Self {
        PicardQ { line: P1::new(Rationals), modulus: modulus.clone(), base: P1Place::Infinity }
    }

    pub fn with_base(modulus: &Modulus<QPlace>, base: QPlace) -> Result<Self, PicardError> {
        if base.degree() != 1 {
            return Err(PicardError::BadBase(P1::new(Rationals).fmt_place(&base)));
        }
        Ok(PicardQ { line: P1::new(Rationals), modulus: modulus.clone(), base })
    }

    pub fn line(&self) -> &P1<Rationals> {
        &self.line
    }

    pub fn modulus(&self) -> &Modulus<QPlace> {
        &self.modulus
    }

    pub fn base(&self) -> &QPlace {
        &self.base
    }

    pub fn structure(&self) -> QStructure {
        let r = self.modulus.components().len();
        let torus_rank = r.saturating_sub(1);
        QStructure {
            free_rank: 1,
            torus_rank,
            unipotent_dimension: self.modulus.components().iter().map(|(_, n)| *n as usize - 1).sum(),
            torsion: FinAbGroup::from_cyclic_orders(&vec![2; torus_rank]),
        }
    }

    pub fn reduced(&self) -> PicardQ {
        PicardQ { line: self.line.clone(), modulus: self.modulus.reduced(), base: self.base.clone() }
    }

    pub fn zero(&self) -> QClass {
        let r = self.modulus.components().len();
        QClass {
            degree: 0,
            torus: vec![BigRational::one(); r.saturating_sub(1)],
            unipotent: self
                .modulus
                .components()
                .iter()
                .map(|(_, n)| vec![BigRational::zero(); *n as usize - 1])
                .collect(),
        }
    }

    /// Unit parts `a_i` and principal logarithms of `prod f^e` at each component.
    fn lambda(&self, h: &[(RatFn<Rationals>, i64)]) -> Result<(Vec<BigRational>, Vec<Vec<BigRational>>), PicardError> {
        let q = Rationals;
        let mut units = Vec::new();
        let mut logs = Vec::new();
        for (p, n) in self.modulus.components() {
            let n = *n as usize;
            let mut a = BigRational::one();
            let mut l = vec![BigRational::zero(); n];
            for (f, e) in h {
                let (_, s) = self.line.laurent(f, p, n)?;
                let s: Vec<BigRational> = s.into_iter().map(|c| c[0].clone()).collect();
                let a0 = s[0].clone();
                let pr = series::scale(&q, &s, &q.inv(&a0).unwrap());
                let lg = truncated_log(&q, &pr)?;
                a *= q.pow_signed(&a0, *e).unwrap();
                l = series::add(&q, &l, &series::scale(&q, &lg, &BigRational::from_integer(BigInt::from(*e))));
            }
            units.push(a);
            logs.push(l[1..].to_vec());
        }
        Ok((units, logs))
    }

    pub fn class_of(&self, z: &ZeroCycle<QPlace>) -> Result<QClass, PicardError> {
        if let Some(p) = z.collisions(&self.modulus).first() {
            return Err(PicardError::SupportCollision(self.line.fmt_place(p)));
        }
        let d = z.degree(&self.line);
        let w = z.sub(&ZeroCycle::point(self.base.clone()).scale(d));
        let h: Vec<(RatFn<Rationals>, i64)> = w
            .terms()
            .iter()
            .filter_map(|(p, n)| match p {
                P1Place::Finite(poly) => Some((RatFn::from_poly(&Rationals, poly.clone()), *n)),
                P1Place::Infinity => None,
            })
            .collect();
        let (units, logs) = self.lambda(&h)?;
        // the class is -λ(h)
        let torus = units.iter().skip(1).map(|a| &units[0] / a).collect();
        let unipotent = logs.into_iter().map(|l| l.into_iter().map(|c| -c).collect()).collect();
        Ok(QClass { degree: d, torus, unipotent })
    }

    pub fn add(&self, a: &QClass, b: &QClass) -> QClass {
        QClass {
            degree: a.degree + b.degree,
            torus: a.torus.iter().zip(&b.torus).map(|(x, y)| x * y).collect(),
            unipotent: a
                .unipotent
                .iter()
                .zip(&b.unipotent)
                .map(|(x, y)| x.iter().zip(y).map(|(s, t)| s + t).collect())
                .collect(),
        }
    }

    pub fn scale(&self, a: &QClass, k: i64) -> QClass {
        let kq = BigRational::from_integer(BigInt::from(k));
        QClass {
            degree: a.degree * k,
            torus: a.torus.iter().map(|x| Rationals.pow_signed(x, k).expect("torus coordinates are nonzero")).collect(),
            unipotent: a.unipotent.iter().map(|v| v.iter().map(|c| c * &kq).collect()).collect(),
        }
    }

    pub fn pi_map(&self, red: &PicardQ, c: &QClass) -> Result<QClass, PicardError> {
        if red.modulus != self.modulus.reduced() || red.base != self.base {
            return Err(PicardError::Mismatch("target is not the reduced-modulus structure".into()));
        }
        Ok(QClass { degree: c.degree, torus: c.torus.clone(), unipotent: vec![Vec::new(); c.unipotent.len()] })
    }

    pub fn in_unipotent(&self, c: &QClass) -> bool {
        c.degree == 0 && c.torus.iter().all(One::is_one)
    }

    pub fn is_torsion(&self, c: &QClass) -> bool {
        c.degree == 0 && c.unipotent.iter().flatten().all(Zero::is_zero) && c.torus.iter().all(|t| t.abs().is_one())
    }

    /// The `n`-th root of a class, or the coordinates that obstruct it.
    pub fn nth_root(&self, c: &QClass, n: u32) -> QRoot {
        assert!(n >= 1);
        let mut bad = Vec::new();
        let mut torus = Vec::new();
        for (i, t) in c.torus.iter().enumerate() {
            match rational_nth_root(t, n) {
                Some(r) => torus.push(r),
                None => bad.push(i),
            }
        }
        let degree_bad = c.degree % n as i64 != 0;
        if !bad.is_empty() || degree_bad {
            return QRoot::Obstructed { torus: bad, degree: degree_bad };
        }
        let inv = BigRational::new(BigInt::one(), BigInt::from(n));
        QClass {
            degree: c.degree / n as i64,
            torus,
            unipotent: c.unipotent.iter().map(|v| v.iter().map(|x| x * &inv).collect()).collect(),
        }
        .into()
    }

    /// The principal unit series `exp` of the unipotent coordinates at
    /// component `i`, with constant term 1.
    pub fn principal_series(&self, c: &QClass, i: usize) -> Vec<BigRational> {
        let mut m = vec![BigRational::zero()];
        m.extend(c.unipotent[i].iter().cloned());
        truncated_exp(&Rationals, &m).expect("char 0")
    }
}

impl From<QClass> for QRoot {
    fn from(c: QClass) -> Self {
        QRoot::Root(c)
    }
}

/// Exact `n`-th root in `Q^*` if one exists.
pub fn rational_nth_root(x: &BigRational, n: u32) -> Option<BigRational> {
    if x.is_zero() {
        return None;
    }
    let neg = x.is_negative();
    if neg && n % 2 == 0 {
        return None;
    }
    let root = |v: &BigInt| -> Option<BigInt> {
        let r = v.abs().nth_root(n);
        (num_traits::pow(r.clone(), n as usize) == v.abs()).then_some(r)
    };
    let (a, b) = (root(x.numer())?, root(x.denom())?);
    let r = BigRational::new(a, b);
    Some(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn at(a: i64) -> QPlace {
        P1Place::rational(&Rationals, &rat(a, 1))
    }

    #[test]
    fn dimensions() {
        let d = Modulus::new(vec![(at(0), 2), (at(1), 3)]).unwrap();
        let g = PicardQ::new(&d);
        let s = g.structure();
        assert_eq!(s.unipotent_dimension, 3);
        assert_eq!(s.torus_rank, 1);
        assert_eq!(s.torsion, FinAbGroup::cyclic(2));
    }

    #[test]
    fn classes_and_roots() {
        let d = Modulus::new(vec![(at(0), 3), (at(1), 1)]).unwrap();
        let g = PicardQ::new(&d);
        let z = ZeroCycle::new(vec![(at(2), 1), (at(3), -1)]);
        let c = g.class_of(&z).unwrap();
        assert_eq!(c.degree, 0);
        let c2 = g.class_of(&z.scale(2)).unwrap();
        assert_eq!(g.scale(&c, 2), c2);
        match g.nth_root(&c2, 2) {
            QRoot::Root(r) => assert_eq!(g.scale(&r, 2), c2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(g.nth_root(&c, 2), QRoot::Obstructed { .. }));
        // div((t-2)/(t-3)) with f(1) = 1/2: only the torus is hit by a unit
        assert!(!g.in_unipotent(&c));
        let red = g.reduced();
        assert_eq!(g.pi_map(&red, &c).unwrap().torus, red.class_of(&z).unwrap().torus);
    }

    #[test]
    fn nth_roots_of_rationals() {
        assert_eq!(rational_nth_root(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(rational_nth_root(&rat(-4, 1), 2), None);
        assert_eq!(rational_nth_root(&rat(2, 1), 2), None);
    }
}
