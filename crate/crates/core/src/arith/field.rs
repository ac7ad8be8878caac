//! Field abstractions shared by every exact-arithmetic routine.
//!
//! Field descriptors are cheap to clone and carry whatever context the
//! arithmetic needs (characteristic, defining polynomial); elements are plain
//! values manipulated through the descriptor.

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;

pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + Eq + Ord + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under the canonical map from the integers.
    fn from_int(&self, n: i64) -> Self::Elem;
    /// 0 or a prime.
    fn characteristic(&self) -> u64;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer power allowing negative exponents; `None` for `0^e` with `e < 0`.
    fn pow_signed(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow(&ai, e.unsigned_abs()))
        }
    }
}

/// A finite field with an explicit bijection to `0..order()`.
///
/// The index of an element is its base-`p` digit expansion over the prime
/// field, which gives every finite field in the crate a canonical dense
/// enumeration.
pub trait FiniteField: Field {
    fn order(&self) -> u64;
    /// Absolute degree over the prime field.
    fn prime_degree(&self) -> u32;
    fn elem_to_index(&self, a: &Self::Elem) -> u64;
    fn index_to_elem(&self, i: u64) -> Self::Elem;

    fn elements(&self) -> Vec<Self::Elem> {
        (0..self.order()).map(|i| self.index_to_elem(i)).collect()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.index_to_elem(rng.gen_range(0..self.order()))
    }

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.index_to_elem(rng.gen_range(1..self.order()))
    }

    /// The unique `p`-th root, i.e. the inverse of Frobenius.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.order() / self.characteristic())
    }
}
