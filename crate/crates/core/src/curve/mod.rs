//! Ambient proper curves: the projective line and elliptic curves, with
//! places, valuations, residue fields and local expansions.

pub mod elliptic;
pub mod p1;
pub mod ratfn;

use std::fmt::Debug;
use std::hash::Hash;

use crate::arith::{factor, ArithError, ExtField, Field, Gf, Poly, Rationals};

pub use elliptic::{EFn, EGroup, EPoint, EllipticCurve};
pub use p1::{places_of_p1, P1Place, P1Places, P1};
pub use ratfn::{RatFn, RatFnField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("the zero function has no valuation")]
    ZeroFunction,
    #[error("pole at {0}")]
    Pole(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("support outside the modelled places: {0}")]
    NonRationalSupport(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Element of a residue field `κ(P) = K[θ]/(m)`.
pub type ResElem<K> = Vec<<K as Field>::Elem>;

/// A smooth proper curve over `K` with a chosen set of places.
pub trait Curve: Clone + Debug + Send + Sync {
    type K: Field;
    type Place: Clone + Debug + Eq + Ord + Hash + Send + Sync;
    type Fun: Clone + Debug + PartialEq + Send + Sync;

    fn base_field(&self) -> &Self::K;
    fn place_degree(&self, p: &Self::Place) -> usize;
    fn residue_field(&self, p: &Self::Place) -> ExtField<Self::K>;
    /// The fixed uniformizer at `p`.
    fn uniformizer(&self, p: &Self::Place) -> Self::Fun;
    fn valuation(&self, f: &Self::Fun, p: &Self::Place) -> Result<i64, CurveError>;
    /// `v_P(f)` together with the first `n` coefficients of `f * u^{-v}` in
    /// the uniformizer `u`.
    fn laurent(&self, f: &Self::Fun, p: &Self::Place, n: usize) -> Result<(i64, Vec<ResElem<Self::K>>), CurveError>;
    /// The divisor, sorted by place.
    fn divisor_of(&self, f: &Self::Fun) -> Result<Vec<(Self::Place, i64)>, CurveError>;

    fn fun_one(&self) -> Self::Fun {
        self.fun_constant(self.base_field().one())
    }
    fn fun_constant(&self, c: <Self::K as Field>::Elem) -> Self::Fun;
    fn fun_mul(&self, a: &Self::Fun, b: &Self::Fun) -> Self::Fun;
    fn fun_inv(&self, a: &Self::Fun) -> Option<Self::Fun>;
    fn fun_sub(&self, a: &Self::Fun, b: &Self::Fun) -> Self::Fun;
    fn fun_is_zero(&self, a: &Self::Fun) -> bool;

    fn fun_pow(&self, a: &Self::Fun, e: i64) -> Option<Self::Fun> {
        let base = if e < 0 { self.fun_inv(a)? } else { a.clone() };
        let mut acc = self.fun_one();
        for _ in 0..e.unsigned_abs() {
            acc = self.fun_mul(&acc, &base);
        }
        Some(acc)
    }

    fn fmt_place(&self, p: &Self::Place) -> String;
    fn fmt_fun(&self, f: &Self::Fun) -> String;

    /// Expansion of a function without pole at `p`, to `n` terms.
    fn local_expansion(&self, f: &Self::Fun, p: &Self::Place, n: usize) -> Result<Vec<ResElem<Self::K>>, CurveError> {
        if self.fun_is_zero(f) {
            let kappa = self.residue_field(p);
            return Ok(vec![kappa.zero(); n]);
        }
        let (v, s) = self.laurent(f, p, n)?;
        if v < 0 {
            return Err(CurveError::Pole(self.fmt_place(p)));
        }
        let kappa = self.residue_field(p);
        Ok(crate::arith::series::shift_up(&kappa, &s, v as usize, n))
    }
}

/// Base fields over which places of the projective line can be enumerated
/// by factoring.
pub trait PlaceField: Field {
    /// Monic irreducible factors with multiplicity; an error when some
    /// factor lies outside the modelled places.
    fn place_factors(&self, p: &Poly<Self>) -> Result<Vec<(Poly<Self>, usize)>, CurveError>;
    fn is_finite(&self) -> bool;
    fn places_up_to(&self, d: usize) -> Result<P1Places<Self>, CurveError>;
}

impl PlaceField for Gf {
    fn place_factors(&self, p: &Poly<Self>) -> Result<Vec<(Poly<Self>, usize)>, CurveError> {
        if p.is_constant() {
            return Ok(Vec::new());
        }
        Ok(factor::poly_factor(p, self)?.factors)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn places_up_to(&self, d: usize) -> Result<P1Places<Self>, CurveError> {
        self.enumerate_places(d)
    }
}

impl PlaceField for Rationals {
    fn place_factors(&self, p: &Poly<Self>) -> Result<Vec<(Poly<Self>, usize)>, CurveError> {
        if p.is_constant() {
            return Ok(Vec::new());
        }
        let (roots, rest) = factor::rational_roots(p)?;
        if !rest.is_constant() {
            return Err(CurveError::NonRationalSupport(format!("irrational places of {}", rest.fmt_with(self, "t"))));
        }
        Ok(roots.into_iter().map(|(r, m)| (Poly::linear(self, &r), m)).collect())
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn places_up_to(&self, d: usize) -> Result<P1Places<Self>, CurveError> {
        match d {
            1 => Ok(P1Places::RationalFamily),
            _ => Err(CurveError::Unsupported("only rational places are modelled over the rationals".into())),
        }
    }
}
