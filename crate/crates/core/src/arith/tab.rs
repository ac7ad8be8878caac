//! Log-table representation of small finite fields.
//!
//! Elements are the canonical indices of a [`FiniteField`] (base-`p` digit
//! strings over the prime field), so addition is digitwise and
//! multiplication goes through discrete-logarithm tables.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::field::{Field, FiniteField};
use super::gf::factor_u64;
use super::ArithError;

/// Largest field order accepted for tabulation.
pub const MAX_TABULATED_ORDER: u64 = 1 << 22;

#[derive(Debug)]
struct Tables {
    p: u32,
    dim: u32,
    order: u32,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct TabField {
    t: Arc<Tables>,
}

impl PartialEq for TabField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || (self.t.order == other.t.order && self.t.exp == other.t.exp)
    }
}

fn cache() -> &'static Mutex<HashMap<String, TabField>> {
    static CACHE: OnceLock<Mutex<HashMap<String, TabField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl TabField {
    /// Tabulate `k`. The primitive element is the smallest index of maximal
    /// multiplicative order, so the tables depend only on `k`.
    pub fn new<K: FiniteField>(k: &K) -> Result<Self, ArithError> {
        let q = k.order();
        if q > MAX_TABULATED_ORDER {
            return Err(ArithError::TooLarge(format!("residue field of order {q}")));
        }
        let key = format!("{k:?}");
        if let Some(t) = cache().lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let t = Self::build(k)?;
        cache().lock().unwrap().insert(key, t.clone());
        Ok(t)
    }

    fn build<K: FiniteField>(k: &K) -> Result<Self, ArithError> {
        let q = k.order();
        let p = k.characteristic() as u32;
        let dim = k.prime_degree();
        let n = q - 1;
        let primes: Vec<u64> = factor_u64(n).into_iter().map(|(r, _)| r).collect();
        let generator = (1..q)
            .find(|&i| {
                let a = k.index_to_elem(i);
                primes.iter().all(|&r| !k.is_one(&k.pow(&a, n / r)))
            })
            .ok_or_else(|| ArithError::UnsupportedField("no primitive element".into()))?;
        let g = k.index_to_elem(generator);
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = k.one();
        for i in 0..n {
            let idx = k.elem_to_index(&cur) as u32;
            exp.push(idx);
            log[idx as usize] = i as u32;
            cur = k.mul(&cur, &g);
        }
        Ok(TabField { t: Arc::new(Tables { p, dim, order: q as u32, generator: generator as u32, exp, log }) })
    }

    /// The chosen primitive element.
    pub fn generator(&self) -> u32 {
        self.t.generator
    }

    /// Discrete logarithm to the base [`Self::generator`].
    pub fn dlog(&self, a: u32) -> Option<u64> {
        match self.t.log[a as usize] {
            u32::MAX => None,
            l => Some(l as u64),
        }
    }

    pub fn exp_gen(&self, e: u64) -> u32 {
        self.t.exp[(e % (self.t.order as u64 - 1)) as usize]
    }

    pub fn unit_count(&self) -> u64 {
        self.t.order as u64 - 1
    }
}

impl Field for TabField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let p = self.t.p;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (*a, *b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.t.dim {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn neg(&self, a: &u32) -> u32 {
        let p = self.t.p;
        let mut a = *a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.t.dim {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let n = self.t.order as u64 - 1;
        let e = (self.t.log[*a as usize] as u64 + self.t.log[*b as usize] as u64) % n;
        self.t.exp[e as usize]
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let n = self.t.order as u64 - 1;
        let e = (n - self.t.log[*a as usize] as u64) % n;
        Some(self.t.exp[e as usize])
    }

    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.t.p as i64) as u32
    }

    fn characteristic(&self) -> u64 {
        self.t.p as u64
    }

    fn fmt_elem(&self, a: &u32) -> String {
        format!("#{a}")
    }
}

impl FiniteField for TabField {
    fn order(&self) -> u64 {
        self.t.order as u64
    }

    fn prime_degree(&self) -> u32 {
        self.t.dim
    }

    fn elem_to_index(&self, a: &u32) -> u64 {
        *a as u64
    }

    fn index_to_elem(&self, i: u64) -> u32 {
        i as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gf::Gf;

    #[test]
    fn agrees_with_source_field() {
        let k = Gf::new(3, 2).unwrap();
        let t = TabField::new(&k).unwrap();
        for i in 0..9u64 {
            for j in 0..9u64 {
                let (a, b) = (k.index_to_elem(i), k.index_to_elem(j));
                assert_eq!(t.mul(&(i as u32), &(j as u32)) as u64, k.elem_to_index(&k.mul(&a, &b)));
                assert_eq!(t.add(&(i as u32), &(j as u32)) as u64, k.elem_to_index(&k.add(&a, &b)));
            }
            assert_eq!(t.neg(&(i as u32)) as u64, k.elem_to_index(&k.neg(&k.index_to_elem(i))));
        }
    }

    #[test]
    fn dlog_round_trip() {
        let t = TabField::new(&Gf::prime(7).unwrap()).unwrap();
        for a in 1..7u32 {
            assert_eq!(t.exp_gen(t.dlog(a).unwrap()), a);
        }
        assert_eq!(t.dlog(0), None);
    }
}
