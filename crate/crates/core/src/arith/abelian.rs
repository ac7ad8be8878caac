//! Finite and finitely generated abelian groups: invariant factors,
//! presentations by generators and relations, and structure recovery for
//! groups given by an explicit element list.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gf::factor_u64;
use super::snf::{smith_normal_form, IntMatrix};
use super::ArithError;

/// `Z/d_1 + .. + Z/d_r` with `d_1 | d_2 | .. | d_r`, each `d_i >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FinAbGroup {
    invariant_factors: Vec<u64>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[n])
    }

    /// Validated construction from a divisibility chain.
    pub fn from_invariants(invariant_factors: Vec<u64>) -> Result<Self, ArithError> {
        if invariant_factors.iter().any(|&d| d < 2) || invariant_factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(ArithError::BadInvariants(invariant_factors));
        }
        Ok(FinAbGroup { invariant_factors })
    }

    /// Normal form of an arbitrary direct sum of cyclic groups `Z/n_i`
    /// (orders 0 and 1 are ignored).
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut by_prime: HashMap<u64, Vec<u64>> = HashMap::new();
        for &n in orders.iter().filter(|&&n| n > 1) {
            for (p, e) in factor_u64(n) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let longest = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut invariants = vec![1u64; longest];
        for powers in by_prime.values_mut() {
            powers.sort_unstable();
            let offset = longest - powers.len();
            for (i, q) in powers.iter().enumerate() {
                invariants[offset + i] *= q;
            }
        }
        FinAbGroup { invariant_factors: invariants }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut v = self.invariant_factors.clone();
        v.extend_from_slice(&other.invariant_factors);
        Self::from_cyclic_orders(&v)
    }

    /// The `p`-primary component.
    pub fn p_part(&self, p: u64) -> Self {
        let v: Vec<u64> = self.invariant_factors.iter().map(|&d| p_power_part(d, p)).collect();
        Self::from_cyclic_orders(&v)
    }

    /// The prime-to-`p` component.
    pub fn prime_to_part(&self, p: u64) -> Self {
        let v: Vec<u64> = self.invariant_factors.iter().map(|&d| d / p_power_part(d, p)).collect();
        Self::from_cyclic_orders(&v)
    }

    /// Invariant factors `d` for which multiplication by `n` is not surjective
    /// on `Z/d`, i.e. `gcd(n, d) > 1`.
    pub fn divisibility_obstructions(&self, n: u64) -> Vec<u64> {
        self.invariant_factors.iter().copied().filter(|&d| n.gcd(&d) > 1).collect()
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        self.invariant_factors.iter().all(|&d| p_power_part(d, p) == d)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn p_power_part(mut d: u64, p: u64) -> u64 {
    let mut out = 1;
    while d % p == 0 {
        d /= p;
        out *= p;
    }
    out
}

/// Cokernel of the relation lattice `Z^g / rowspan(relations)`, with the
/// Smith data needed to convert between generator coordinates and canonical
/// coordinates.
#[derive(Clone, Debug)]
pub struct PresentedGroup {
    generators: usize,
    /// Smith diagonal padded with zeros to length `generators`.
    diag: Vec<BigInt>,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl PresentedGroup {
    pub fn new(generators: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.cols(), generators, "relation width must match generator count");
        let s = smith_normal_form(relations);
        debug_assert!(s.check(relations));
        let mut diag = s.diagonal();
        diag.resize(generators, BigInt::zero());
        PresentedGroup { generators, diag, v: s.v, v_inv: s.v_inv }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn free_rank(&self) -> usize {
        self.diag.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion(&self) -> Result<FinAbGroup, ArithError> {
        let mut inv = Vec::new();
        for d in self.diag.iter().filter(|d| !d.is_zero() && !d.is_one()) {
            inv.push(d.to_u64().ok_or_else(|| ArithError::TooLarge(format!("invariant factor {d}")))?);
        }
        FinAbGroup::from_invariants(inv)
    }

    /// Moduli of the nontrivial canonical coordinates: torsion factors in
    /// chain order, then 0 for each free direction.
    pub fn coordinate_moduli(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Canonical coordinates of the element `sum x_i g_i`.
    pub fn coordinates(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.v.left_apply(x);
        y.into_iter()
            .zip(&self.diag)
            .filter(|(_, d)| !d.is_one())
            .map(|(yi, d)| if d.is_zero() { yi } else { yi.mod_floor(d) })
            .collect()
    }

    pub fn coordinates_i64(&self, x: &[i64]) -> Vec<BigInt> {
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.coordinates(&big)
    }

    /// A generator-coordinate vector representing the given canonical
    /// coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.generators];
        let mut it = coords.iter();
        for (yi, d) in y.iter_mut().zip(&self.diag) {
            if !d.is_one() {
                *yi = it.next().expect("coordinate count").clone();
            }
        }
        self.v_inv.left_apply(&y)
    }

    pub fn is_zero(&self, coords: &[BigInt]) -> bool {
        coords.iter().all(Zero::is_zero)
    }
}

/// `Z^g / rowspan(relations)` as (free rank, torsion).
pub fn group_from_relations(generators: usize, relations: &IntMatrix) -> Result<(usize, FinAbGroup), ArithError> {
    let g = PresentedGroup::new(generators, relations);
    Ok((g.free_rank(), g.torsion()?))
}

/// A finite abelian group on the element indices `0..order`, with chosen
/// generators, their relation lattice and a coordinate table.
#[derive(Clone, Debug)]
pub struct FiniteGroupModel {
    order: usize,
    /// Element indices of the generators, in selection order.
    pub generators: Vec<usize>,
    /// Relation rows over the generators.
    pub relations: Vec<Vec<i64>>,
    coords: Vec<u32>,
    presented: PresentedGroup,
    structure: FinAbGroup,
}

impl FiniteGroupModel {
    pub fn structure(&self) -> &FinAbGroup {
        &self.structure
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coordinates of an element with respect to `generators`.
    pub fn coords_of(&self, idx: usize) -> Vec<i64> {
        let g = self.generators.len();
        self.coords[idx * g..(idx + 1) * g].iter().map(|&c| c as i64).collect()
    }

    pub fn presented(&self) -> &PresentedGroup {
        &self.presented
    }

    /// Exponent of each generator modulo the subgroup spanned by the
    /// earlier ones; the diagonal of the triangular relation matrix.
    pub fn relative_orders(&self) -> Vec<i64> {
        self.relations.iter().enumerate().map(|(i, r)| r[i]).collect()
    }
}

/// Greedy structure recovery on a dense index set.
///
/// `mul` must implement an abelian group law on `0..order` with identity
/// `identity`. Generators are chosen greedily by maximal element order; each
/// new generator contributes one relation expressing its first power inside
/// the span of the earlier ones. The resulting triangular relation matrix is
/// reduced by Smith normal form.
pub fn decompose_dense(
    order: usize,
    identity: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<FiniteGroupModel, ArithError> {
    spot_check(order, identity, &mul)?;
    let n = order as u64;
    let primes: Vec<u64> = factor_u64(n).into_iter().map(|(p, _)| p).collect();
    let pow = |x: usize, mut e: u64| {
        let mut acc = identity;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = mul(base, base);
            }
        }
        acc
    };
    let element_order = |x: usize| {
        let mut ord = n;
        for &p in &primes {
            while ord % p == 0 && pow(x, ord / p) == identity {
                ord /= p;
            }
        }
        ord
    };
    let mut ranked: Vec<(u64, usize)> = (0..order).map(|x| (element_order(x), x)).collect();
    if ranked.iter().any(|&(o, x)| pow(x, o) != identity) {
        return Err(ArithError::MalformedGroup("element order does not divide the group order".into()));
    }
    ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut member: Vec<Option<u32>> = vec![None; order];
    // flattened coordinates, grown as generators are added
    let mut elements: Vec<usize> = vec![identity];
    let mut coord_rows: Vec<Vec<u32>> = vec![Vec::new()];
    member[identity] = Some(0);
    let mut generators = Vec::new();
    let mut relations: Vec<Vec<i64>> = Vec::new();

    for &(_, g) in &ranked {
        if elements.len() == order {
            break;
        }
        if member[g].is_some() {
            continue;
        }
        let k = generators.len();
        // smallest m with g^m in the current span
        let mut m = 1usize;
        let mut gm = g;
        while member[gm].is_none() {
            gm = mul(gm, g);
            m += 1;
        }
        let mut rel: Vec<i64> = coord_rows[member[gm].unwrap() as usize].iter().map(|&c| -(c as i64)).collect();
        rel.push(m as i64);
        for r in relations.iter_mut() {
            r.push(0);
        }
        relations.push(rel);
        generators.push(g);
        for row in coord_rows.iter_mut() {
            row.push(0);
        }
        let base_len = elements.len();
        let mut gj = identity;
        for j in 1..m {
            gj = mul(gj, g);
            for b in 0..base_len {
                let e = mul(gj, elements[b]);
                if member[e].is_some() {
                    return Err(ArithError::MalformedGroup("coset overlap while extending the span".into()));
                }
                let mut row = coord_rows[b].clone();
                row[k] = j as u32;
                member[e] = Some(elements.len() as u32);
                elements.push(e);
                coord_rows.push(row);
            }
        }
    }
    if elements.len() != order {
        return Err(ArithError::MalformedGroup("generators do not exhaust the element set".into()));
    }
    let g = generators.len();
    let mut coords = vec![0u32; order * g];
    for (pos, &e) in elements.iter().enumerate() {
        coords[e * g..(e + 1) * g].copy_from_slice(&coord_rows[pos]);
    }
    let rel_matrix = IntMatrix::from_rows(g, &relations);
    let presented = PresentedGroup::new(g, &rel_matrix);
    let structure = presented.torsion()?;
    if structure.order() != order as u128 {
        return Err(ArithError::MalformedGroup("relation lattice has the wrong index".into()));
    }
    Ok(FiniteGroupModel { order, generators, relations, coords, presented, structure })
}

fn spot_check(order: usize, identity: usize, mul: &impl Fn(usize, usize) -> usize) -> Result<(), ArithError> {
    if order == 0 || identity >= order {
        return Err(ArithError::MalformedGroup("empty element set or identity out of range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
    let samples = 64.min(order * order);
    for _ in 0..samples {
        let a = rng.gen_range(0..order);
        let b = rng.gen_range(0..order);
        let c = rng.gen_range(0..order);
        let ab = mul(a, b);
        if ab >= order {
            return Err(ArithError::MalformedGroup("product outside the element set".into()));
        }
        if ab != mul(b, a) {
            return Err(ArithError::MalformedGroup("multiplication is not commutative".into()));
        }
        if mul(ab, c) != mul(a, mul(b, c)) {
            return Err(ArithError::MalformedGroup("multiplication is not associative".into()));
        }
        if mul(a, identity) != a {
            return Err(ArithError::MalformedGroup("identity is not neutral".into()));
        }
    }
    Ok(())
}

/// Structure of a finite abelian group given by an explicit element list and
/// multiplication.
pub fn structure_of_finite_group<T: Clone + Eq + Hash>(
    elements: &[T],
    mul: impl Fn(&T, &T) -> T,
    identity: &T,
) -> Result<FinAbGroup, ArithError> {
    Ok(decompose_elements(elements, mul, identity)?.structure)
}

/// As [`structure_of_finite_group`], returning the full model over the
/// positions of `elements`.
pub fn decompose_elements<T: Clone + Eq + Hash>(
    elements: &[T],
    mul: impl Fn(&T, &T) -> T,
    identity: &T,
) -> Result<FiniteGroupModel, ArithError> {
    if elements.len() > 1_000_000 {
        return Err(ArithError::TooLarge(format!("{} elements", elements.len())));
    }
    let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    if index.len() != elements.len() {
        return Err(ArithError::MalformedGroup("duplicate elements".into()));
    }
    let id =
        *index.get(identity).ok_or_else(|| ArithError::MalformedGroup("identity not in the element set".into()))?;
    let closed = std::cell::Cell::new(true);
    let model = decompose_dense(elements.len(), id, |a, b| {
        let c = mul(&elements[a], &elements[b]);
        match index.get(&c) {
            Some(&i) => i,
            None => {
                closed.set(false);
                elements.len()
            }
        }
    });
    if !closed.get() {
        return Err(ArithError::MalformedGroup("set is not closed under multiplication".into()));
    }
    model
}

/// Modular inverse of `a` modulo `m`, when it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(m));
    e.gcd.abs().is_one().then(|| {
        let x = e.x.mod_floor(&BigInt::from(m));
        x.to_i64().unwrap()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_four_from_table() {
        let els: Vec<u32> = (0..4).collect();
        let g = structure_of_finite_group(&els, |a, b| (a + b) % 4, &0).unwrap();
        assert_eq!(g.invariant_factors(), &[4]);
    }

    #[test]
    fn klein_four() {
        let els: Vec<u32> = (0..4).collect();
        let g = structure_of_finite_group(&els, |a, b| a ^ b, &0).unwrap();
        assert_eq!(g.invariant_factors(), &[2, 2]);
    }

    #[test]
    fn units_mod_15() {
        // order census oracle: (Z/15)^* has elements of order 1,2,2,2,4,4,4,4,
        // so it is Z/2 + Z/4
        let els: Vec<u64> = (1..15).filter(|x| x.gcd(&15) == 1).collect();
        let orders: Vec<u64> =
            els.iter().map(|&x| (1..=8).find(|&k| (0..k).fold(1, |acc, _| acc * x % 15) == 1).unwrap()).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 4);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        let g = structure_of_finite_group(&els, |a, b| a * b % 15, &1).unwrap();
        assert_eq!(g.invariant_factors(), &[2, 4]);
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn non_closed_set_rejected() {
        let els: Vec<u64> = vec![1, 2, 4];
        let err = structure_of_finite_group(&els, |a, b| a * b % 7 + 10, &1).unwrap_err();
        assert!(matches!(err, ArithError::MalformedGroup(_)));
    }

    #[test]
    fn relations_examples() {
        let (r, g) = group_from_relations(1, &IntMatrix::from_rows(1, &[vec![5]])).unwrap();
        assert_eq!((r, g.invariant_factors().to_vec()), (0, vec![5]));
        let (r, g) = group_from_relations(2, &IntMatrix::from_rows(2, &[vec![2, 0]])).unwrap();
        assert_eq!((r, g.invariant_factors().to_vec()), (1, vec![2]));
        // oracle: det = 8 and the gcd of entries is 2, so the factors are 2 and 4
        let (r, g) = group_from_relations(2, &IntMatrix::from_rows(2, &[vec![2, 2], vec![0, 4]])).unwrap();
        assert_eq!((r, g.invariant_factors().to_vec()), (0, vec![2, 4]));
    }

    #[test]
    fn normal_form_from_cyclic_orders() {
        assert_eq!(FinAbGroup::from_cyclic_orders(&[4, 6, 1]).invariant_factors(), &[2, 12]);
        assert_eq!(FinAbGroup::from_cyclic_orders(&[3, 5]).invariant_factors(), &[15]);
        assert!(FinAbGroup::from_cyclic_orders(&[1, 0]).is_trivial());
    }

    #[test]
    fn primary_parts() {
        let g = FinAbGroup::from_invariants(vec![6, 12]).unwrap();
        assert_eq!(g.p_part(2).invariant_factors(), &[2, 4]);
        assert_eq!(g.prime_to_part(2).invariant_factors(), &[3, 3]);
        assert_eq!(g.divisibility_obstructions(5), Vec::<u64>::new());
        assert_eq!(g.divisibility_obstructions(4), vec![6, 12]);
        assert!(FinAbGroup::from_invariants(vec![4, 6]).is_err());
    }

    #[test]
    fn coordinates_and_lift_agree() {
        let rel = IntMatrix::from_rows(3, &[vec![2, 2, 0], vec![0, 4, 0]]);
        let g = PresentedGroup::new(3, &rel);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.torsion().unwrap().invariant_factors(), &[2, 4]);
        for x in [[1i64, 0, 0], [0, 1, 3], [5, -7, 2]] {
            let c = g.coordinates_i64(&x);
            let back = g.coordinates(&g.lift(&c));
            assert_eq!(c, back);
        }
        // relations map to zero
        assert!(g.is_zero(&g.coordinates_i64(&[2, 2, 0])));
        assert!(g.is_zero(&g.coordinates_i64(&[0, 4, 0])));
    }

    #[test]
    fn dense_model_coordinates_multiply() {
        // Z/3 x Z/9 as pairs
        let idx = |a: usize, b: usize| a * 9 + b;
        let model = decompose_dense(27, 0, |x, y| idx((x / 9 + y / 9) % 3, (x % 9 + y % 9) % 9)).unwrap();
        assert_eq!(model.structure().invariant_factors(), &[3, 9]);
        let p = model.presented();
        for x in 0..27 {
            for y in [1usize, 5, 13] {
                let z = idx((x / 9 + y / 9) % 3, (x % 9 + y % 9) % 9);
                let sum: Vec<i64> = model.coords_of(x).iter().zip(model.coords_of(y)).map(|(a, b)| a + b).collect();
                assert_eq!(p.coordinates_i64(&sum), p.coordinates_i64(&model.coords_of(z)));
            }
        }
    }
}
