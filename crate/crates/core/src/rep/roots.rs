//! Exact root-system data for the classical types A, B, C, D.
//!
//! Weights live in an exact-rational ambient space (the usual epsilon
//! coordinates; type A uses the sum-zero hyperplane of dimension rank+1).
//! On top of the raw data sit the Weyl dimension formula, the full weight
//! system with Freudenthal multiplicities, character arithmetic for the
//! antisymmetric square, and Klimyk's formula for tensor products.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::lie::AlgebraKind;
use crate::linalg::PrefactoredSolver;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootType {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootError {
    BadRank(RootType, usize),
    NotDominant,
    NotAWeight,
    NotACharacter,
    Internal(&'static str),
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::BadRank(t, r) => write!(f, "rank {r} invalid for type {t:?}"),
            RootError::NotDominant => write!(f, "weight is not dominant"),
            RootError::NotAWeight => write!(f, "vector is not a weight of the lattice"),
            RootError::NotACharacter => write!(f, "multiset is not the character of a module"),
            RootError::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, RootError>;

/// Ambient weight vector (exact rationals).
pub type Ambient = Vec<Rational>;

/// Dominant integral weight: non-negative coefficients over the
/// fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DominantWeight(pub Vec<i64>);

impl DominantWeight {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.iter().any(|&c| c < 0) {
            return Err(RootError::NotDominant);
        }
        Ok(DominantWeight(coeffs))
    }

    pub fn zero(rank: usize) -> Self {
        DominantWeight(vec![0; rank])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// Coefficientwise sum (highest weight of the Cartan product).
    pub fn plus(&self, other: &DominantWeight) -> DominantWeight {
        DominantWeight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// Decomposition of a tensor product: dominant weight -> multiplicity.
pub type DecompositionMultiset = BTreeMap<DominantWeight, u64>;

/// Weight multiset of a module (or virtual character): ambient -> mult.
pub type Character = BTreeMap<Ambient, i64>;

pub struct RootSystem {
    rtype: RootType,
    rank: usize,
    ambient_dim: usize,
    simple: Vec<Ambient>,
    fundamental: Vec<Ambient>,
    positive: Vec<Ambient>,
    rho: Ambient,
    /// Expresses ambient vectors over the simple roots (exact, factored once).
    root_coords: PrefactoredSolver,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({:?}, rank {})", self.rtype, self.rank)
    }
}

fn ip(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn unit(dim: usize, i: usize, sign: i64) -> Ambient {
    let mut v = vec![Rational::zero(); dim];
    v[i] = rational::int(sign);
    v
}

fn add(a: &[Rational], b: &[Rational]) -> Ambient {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> Ambient {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

fn scale(a: &[Rational], s: &Rational) -> Ambient {
    a.iter().map(|x| x * s).collect()
}

impl RootSystem {
    pub fn new(rtype: RootType, rank: usize) -> Result<RootSystem> {
        let ok = match rtype {
            RootType::A => rank >= 1,
            RootType::B => rank >= 2,
            RootType::C => rank >= 2,
            RootType::D => rank >= 3,
        };
        if !ok {
            return Err(RootError::BadRank(rtype, rank));
        }
        let dim = match rtype {
            RootType::A => rank + 1,
            _ => rank,
        };
        let mut simple: Vec<Ambient> = Vec::with_capacity(rank);
        for i in 0..rank.saturating_sub(1) {
            simple.push(sub(&unit(dim, i, 1), &unit(dim, i + 1, 1)));
        }
        match rtype {
            RootType::A => simple.push(sub(&unit(dim, rank - 1, 1), &unit(dim, rank, 1))),
            RootType::B => simple.push(unit(dim, rank - 1, 1)),
            RootType::C => simple.push(unit(dim, rank - 1, 2)),
            RootType::D => simple.push(add(&unit(dim, rank - 2, 1), &unit(dim, rank - 1, 1))),
        }

        let mut positive: Vec<Ambient> = Vec::new();
        match rtype {
            RootType::A => {
                for i in 0..dim {
                    for j in (i + 1)..dim {
                        positive.push(sub(&unit(dim, i, 1), &unit(dim, j, 1)));
                    }
                }
            }
            RootType::B => {
                for i in 0..rank {
                    for j in (i + 1)..rank {
                        positive.push(sub(&unit(dim, i, 1), &unit(dim, j, 1)));
                        positive.push(add(&unit(dim, i, 1), &unit(dim, j, 1)));
                    }
                    positive.push(unit(dim, i, 1));
                }
            }
            RootType::C => {
                for i in 0..rank {
                    for j in (i + 1)..rank {
                        positive.push(sub(&unit(dim, i, 1), &unit(dim, j, 1)));
                        positive.push(add(&unit(dim, i, 1), &unit(dim, j, 1)));
                    }
                    positive.push(unit(dim, i, 2));
                }
            }
            RootType::D => {
                for i in 0..rank {
                    for j in (i + 1)..rank {
                        positive.push(sub(&unit(dim, i, 1), &unit(dim, j, 1)));
                        positive.push(add(&unit(dim, i, 1), &unit(dim, j, 1)));
                    }
                }
            }
        }

        let half = rational::frac(1, 2);
        let mut rho = vec![Rational::zero(); dim];
        for p in &positive {
            rho = add(&rho, p);
        }
        rho = scale(&rho, &half);

        let fundamental = Self::fundamentals(rtype, rank, dim);

        // Factor the "express over simple roots" system once.
        let rows: Vec<Vec<Rational>> = (0..dim)
            .map(|r| simple.iter().map(|s| s[r].clone()).collect())
            .collect();
        let root_coords = PrefactoredSolver::factor(&rows);

        Ok(RootSystem {
            rtype,
            rank,
            ambient_dim: dim,
            simple,
            fundamental,
            positive,
            rho,
            root_coords,
        })
    }

    fn fundamentals(rtype: RootType, rank: usize, dim: usize) -> Vec<Ambient> {
        let mut out = Vec::with_capacity(rank);
        match rtype {
            RootType::A => {
                // e_1+..+e_i - i/(rank+1) * sum(e)
                for i in 1..=rank {
                    let mut v = vec![Rational::zero(); dim];
                    for k in 0..i {
                        v[k] = Rational::one();
                    }
                    let shift = rational::frac(i as i64, (rank + 1) as i64);
                    for x in v.iter_mut() {
                        *x -= &shift;
                    }
                    out.push(v);
                }
            }
            RootType::B => {
                for i in 1..rank {
                    let mut v = vec![Rational::zero(); dim];
                    for k in 0..i {
                        v[k] = Rational::one();
                    }
                    out.push(v);
                }
                let mut v = vec![rational::frac(1, 2); dim];
                v.truncate(dim);
                out.push(v);
            }
            RootType::C => {
                for i in 1..=rank {
                    let mut v = vec![Rational::zero(); dim];
                    for k in 0..i {
                        v[k] = Rational::one();
                    }
                    out.push(v);
                }
            }
            RootType::D => {
                for i in 1..=(rank - 2) {
                    let mut v = vec![Rational::zero(); dim];
                    for k in 0..i {
                        v[k] = Rational::one();
                    }
                    out.push(v);
                }
                let half = rational::frac(1, 2);
                let mut v1 = vec![half.clone(); dim];
                v1[rank - 1] = -half.clone();
                out.push(v1);
                out.push(vec![half; dim]);
            }
        }
        out
    }

    pub fn rtype(&self) -> RootType {
        self.rtype
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple_roots(&self) -> &[Ambient] {
        &self.simple
    }

    pub fn positive_roots(&self) -> &[Ambient] {
        &self.positive
    }

    pub fn fundamental_weights(&self) -> &[Ambient] {
        &self.fundamental
    }

    pub fn rho(&self) -> &Ambient {
        &self.rho
    }

    /// `<v, alpha_i^vee> = 2 (v, alpha_i) / (alpha_i, alpha_i)`.
    fn pairing(&self, v: &[Rational], i: usize) -> Rational {
        let a = &self.simple[i];
        rational::int(2) * ip(v, a) / ip(a, a)
    }

    /// Ambient coordinates of a dominant weight.
    pub fn ambient(&self, hw: &DominantWeight) -> Result<Ambient> {
        if hw.0.len() != self.rank {
            return Err(RootError::NotAWeight);
        }
        let mut v = vec![Rational::zero(); self.ambient_dim];
        for (c, w) in hw.0.iter().zip(&self.fundamental) {
            if *c != 0 {
                v = add(&v, &scale(w, &rational::int(*c)));
            }
        }
        Ok(v)
    }

    /// Fundamental-weight coefficients of a dominant ambient vector.
    pub fn dominant_from_ambient(&self, v: &[Rational]) -> Result<DominantWeight> {
        let mut coeffs = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let c = self.pairing(v, i);
            let ci = rational::to_i64(&c).ok_or(RootError::NotAWeight)?;
            if ci < 0 {
                return Err(RootError::NotDominant);
            }
            coeffs.push(ci);
        }
        // Round-trip check guards against vectors outside the weight lattice
        // span (relevant for type A's ambient quotient).
        let back = self.ambient(&DominantWeight(coeffs.clone()))?;
        if back != v {
            return Err(RootError::NotAWeight);
        }
        Ok(DominantWeight(coeffs))
    }

    /// Weyl dimension formula.
    pub fn weyl_dim(&self, hw: &DominantWeight) -> Result<u64> {
        let lam = self.ambient(hw)?;
        let lr = add(&lam, &self.rho);
        let mut num = Rational::one();
        let mut den = Rational::one();
        for a in &self.positive {
            num *= ip(&lr, a);
            den *= ip(&self.rho, a);
        }
        let q = num / den;
        let v = rational::to_i64(&q).ok_or(RootError::Internal("non-integral Weyl dimension"))?;
        if v <= 0 {
            return Err(RootError::Internal("non-positive Weyl dimension"));
        }
        Ok(v as u64)
    }

    /// Height of `lam - mu` over the simple roots; `None` if the difference
    /// is not in the non-negative root cone.
    fn drop_height(&self, lam: &[Rational], mu: &[Rational]) -> Option<i64> {
        let diff = sub(lam, mu);
        let coords = self.root_coords.solve(&diff)?;
        let mut h = Rational::zero();
        for c in &coords {
            if c.is_negative() {
                return None;
            }
            h += c;
        }
        rational::to_i64(&h)
    }

    /// Full weight system of the irreducible module with highest weight
    /// `hw`, with exact Freudenthal multiplicities.
    pub fn weight_multiplicities(&self, hw: &DominantWeight) -> Result<BTreeMap<Ambient, u64>> {
        let lam = self.ambient(hw)?;
        // Generate the weight set by saturating simple-root strings.
        let mut heights: BTreeMap<Ambient, i64> = BTreeMap::new();
        heights.insert(lam.clone(), 0);
        let mut queue: Vec<Ambient> = vec![lam.clone()];
        while let Some(mu) = queue.pop() {
            for (i, alpha) in self.simple.iter().enumerate() {
                let m = rational::to_i64(&self.pairing(&mu, i))
                    .ok_or(RootError::Internal("non-integral Cartan pairing"))?;
                if m > 0 {
                    let mut nu = mu.clone();
                    for _ in 0..m {
                        nu = sub(&nu, alpha);
                        if !heights.contains_key(&nu) {
                            let h = self
                                .drop_height(&lam, &nu)
                                .ok_or(RootError::Internal("weight escaped the root cone"))?;
                            heights.insert(nu.clone(), h);
                            queue.push(nu.clone());
                        }
                    }
                }
            }
        }
        // Order by height; Freudenthal recursion from the top.
        let mut by_height: Vec<(Ambient, i64)> = heights.iter().map(|(w, h)| (w.clone(), *h)).collect();
        by_height.sort_by(|a, b| a.1.cmp(&b.1));

        let lr = add(&lam, &self.rho);
        let lr2 = ip(&lr, &lr);
        let mut mults: BTreeMap<Ambient, Rational> = BTreeMap::new();
        for (mu, h) in &by_height {
            if *h == 0 {
                mults.insert(mu.clone(), Rational::one());
                continue;
            }
            let mr = add(mu, &self.rho);
            let denom = &lr2 - ip(&mr, &mr);
            if denom.is_zero() {
                return Err(RootError::Internal("Freudenthal denominator vanished"));
            }
            let mut acc = Rational::zero();
            for alpha in &self.positive {
                let mut nu = add(mu, alpha);
                while let Some(m) = mults.get(&nu) {
                    acc += m * ip(&nu, alpha);
                    nu = add(&nu, alpha);
                }
            }
            let m = rational::int(2) * acc / denom;
            mults.insert(mu.clone(), m);
        }
        let mut out = BTreeMap::new();
        for (w, m) in mults {
            let v = rational::to_i64(&m).ok_or(RootError::Internal("non-integral multiplicity"))?;
            if v <= 0 {
                return Err(RootError::Internal("non-positive multiplicity"));
            }
            out.insert(w, v as u64);
        }
        Ok(out)
    }

    /// Klimyk's formula: decomposition of `V(hw1) (x) V(hw2)`.
    ///
    /// For each weight `mu` of `V(hw1)` the shifted vector
    /// `mu + hw2 + rho` is reflected to the dominant chamber with the sign
    /// of the Weyl element (dropped on walls), contributing to the component
    /// at the reflected weight minus `rho`.
    pub fn klimyk_decompose(
        &self,
        hw1: &DominantWeight,
        hw2: &DominantWeight,
    ) -> Result<DecompositionMultiset> {
        // Iterate over the smaller weight system.
        let (small, big) = if self.weyl_dim(hw1)? <= self.weyl_dim(hw2)? {
            (hw1, hw2)
        } else {
            (hw2, hw1)
        };
        let weights = self.weight_multiplicities(small)?;
        let shift = add(&self.ambient(big)?, &self.rho);
        let mut acc: BTreeMap<DominantWeight, i64> = BTreeMap::new();
        'w: for (mu, mult) in &weights {
            let mut xi = add(mu, &shift);
            let mut sign = 1i64;
            loop {
                let mut moved = false;
                for i in 0..self.rank {
                    let p = self.pairing(&xi, i);
                    if p.is_zero() {
                        continue 'w; // on a wall
                    }
                    if p.is_negative() {
                        // reflect: xi - <xi, a^vee> a
                        xi = sub(&xi, &scale(&self.simple[i], &p));
                        sign = -sign;
                        moved = true;
                    }
                }
                if !moved {
                    break;
                }
            }
            let nu = sub(&xi, &self.rho);
            let dw = self.dominant_from_ambient(&nu)?;
            *acc.entry(dw).or_insert(0) += sign * (*mult as i64);
        }
        let mut out = DecompositionMultiset::new();
        for (w, m) in acc {
            if m < 0 {
                return Err(RootError::Internal("negative Klimyk multiplicity"));
            }
            if m > 0 {
                out.insert(w, m as u64);
            }
        }
        Ok(out)
    }

    /// Character of the antisymmetric square of a module given by its
    /// weight multiset: `(chi^2 - chi o 2) / 2` pointwise.
    pub fn wedge_square(weights: &BTreeMap<Ambient, u64>) -> Character {
        let entries: Vec<(&Ambient, &u64)> = weights.iter().collect();
        let mut sq: Character = BTreeMap::new();
        for (w1, m1) in &entries {
            for (w2, m2) in &entries {
                let s = add(w1, w2);
                *sq.entry(s).or_insert(0) += (**m1 as i64) * (**m2 as i64);
            }
        }
        for (w, m) in weights {
            let doubled = scale(w, &rational::int(2));
            *sq.entry(doubled).or_insert(0) -= *m as i64;
        }
        let mut out = Character::new();
        for (w, c) in sq {
            debug_assert!(c % 2 == 0);
            if c != 0 {
                out.insert(w, c / 2);
            }
        }
        out
    }

    /// Decomposes a genuine character into irreducible components by
    /// repeated highest-weight extraction.
    pub fn decompose_character(&self, chi: &Character) -> Result<DecompositionMultiset> {
        let mut work: Character = chi
            .iter()
            .filter(|(_, m)| **m != 0)
            .map(|(w, m)| (w.clone(), *m))
            .collect();
        let mut out = DecompositionMultiset::new();
        while !work.is_empty() {
            // A weight maximizing (mu, rho) is maximal in dominance order.
            let mu = work
                .keys()
                .max_by(|a, b| ip(a, &self.rho).cmp(&ip(b, &self.rho)))
                .cloned()
                .ok_or(RootError::Internal("empty character"))?;
            let mult = work[&mu];
            if mult < 0 {
                return Err(RootError::NotACharacter);
            }
            let dw = self
                .dominant_from_ambient(&mu)
                .map_err(|_| RootError::NotACharacter)?;
            let comp = self.weight_multiplicities(&dw)?;
            for (w, m) in &comp {
                let e = work.entry(w.clone()).or_insert(0);
                *e -= mult * (*m as i64);
                if *e == 0 {
                    work.remove(w);
                }
            }
            *out.entry(dw).or_insert(0) += mult as u64;
        }
        Ok(out)
    }

    /// Total dimension of a decomposition (for the product identity).
    pub fn total_dim(&self, dec: &DecompositionMultiset) -> Result<u64> {
        let mut acc = 0u64;
        for (w, m) in dec {
            acc += m * self.weyl_dim(w)?;
        }
        Ok(acc)
    }
}

/// Root system and adjoint highest weight for a classical algebra.
pub fn for_kind(kind: AlgebraKind) -> Result<(RootSystem, DominantWeight)> {
    match kind {
        AlgebraKind::SO(n) => {
            if n < 5 {
                return Err(RootError::BadRank(RootType::B, n / 2));
            }
            if n % 2 == 1 {
                let r = (n - 1) / 2;
                let rs = RootSystem::new(RootType::B, r)?;
                let mut hw = vec![0i64; r];
                if r == 2 {
                    hw[1] = 2;
                } else {
                    hw[1] = 1;
                }
                Ok((rs, DominantWeight(hw)))
            } else {
                let r = n / 2;
                let rs = RootSystem::new(RootType::D, r)?;
                let mut hw = vec![0i64; r];
                if r == 3 {
                    // so(6): highest root e1+e2 = w2 + w3
                    hw[1] = 1;
                    hw[2] = 1;
                } else {
                    hw[1] = 1;
                }
                Ok((rs, DominantWeight(hw)))
            }
        }
        AlgebraKind::SP(n) => {
            let rs = RootSystem::new(RootType::C, n)?;
            let mut hw = vec![0i64; n];
            hw[0] = 2;
            Ok((rs, DominantWeight(hw)))
        }
        AlgebraKind::SL(n) => {
            if n < 2 {
                return Err(RootError::BadRank(RootType::A, 0));
            }
            let r = n - 1;
            let rs = RootSystem::new(RootType::A, r)?;
            let mut hw = vec![0i64; r];
            if r == 1 {
                hw[0] = 2;
            } else {
                hw[0] = 1;
                hw[r - 1] = 1;
            }
            Ok((rs, DominantWeight(hw)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dw(c: &[i64]) -> DominantWeight {
        DominantWeight::new(c.to_vec()).unwrap()
    }

    #[test]
    fn adjoint_dimensions_match() {
        for (kind, expect) in [
            (AlgebraKind::SO(5), 10),
            (AlgebraKind::SO(6), 15),
            (AlgebraKind::SO(7), 21),
            (AlgebraKind::SO(8), 28),
            (AlgebraKind::SP(2), 10),
            (AlgebraKind::SP(3), 21),
            (AlgebraKind::SL(2), 3),
            (AlgebraKind::SL(3), 8),
            (AlgebraKind::SL(6), 35),
        ] {
            let (rs, adj) = for_kind(kind).unwrap();
            assert_eq!(rs.weyl_dim(&adj).unwrap(), expect, "{kind:?}");
        }
    }

    #[test]
    fn cartan_square_dimensions() {
        // B2 at twice the adjoint: 35; A2 at twice the adjoint: 27.
        let (rs, adj) = for_kind(AlgebraKind::SO(5)).unwrap();
        assert_eq!(rs.weyl_dim(&adj.plus(&adj)).unwrap(), 35);
        let (rs, adj) = for_kind(AlgebraKind::SL(3)).unwrap();
        assert_eq!(rs.weyl_dim(&adj.plus(&adj)).unwrap(), 27);
    }

    #[test]
    fn freudenthal_sl2_adjoint() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        let wm = rs.weight_multiplicities(&dw(&[2])).unwrap();
        assert_eq!(wm.len(), 3);
        assert!(wm.values().all(|&m| m == 1));
    }

    #[test]
    fn freudenthal_b2_adjoint_zero_weight() {
        let (rs, adj) = for_kind(AlgebraKind::SO(5)).unwrap();
        let wm = rs.weight_multiplicities(&adj).unwrap();
        let total: u64 = wm.values().sum();
        assert_eq!(total, 10);
        let zero = vec![Rational::zero(); 2];
        assert_eq!(wm[&zero], 2);
    }

    #[test]
    fn klimyk_sl2() {
        let rs = RootSystem::new(RootType::A, 1).unwrap();
        let dec = rs.klimyk_decompose(&dw(&[1]), &dw(&[1])).unwrap();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[&dw(&[2])], 1);
        assert_eq!(dec[&dw(&[0])], 1);
    }

    #[test]
    fn klimyk_a2_adjoint_square() {
        let (rs, adj) = for_kind(AlgebraKind::SL(3)).unwrap();
        let dec = rs.klimyk_decompose(&adj, &adj).unwrap();
        // 8 x 8 = 27 + 10 + 10bar + 8 + 8 + 1
        let mut dims: Vec<u64> = Vec::new();
        for (w, m) in &dec {
            for _ in 0..*m {
                dims.push(rs.weyl_dim(w).unwrap());
            }
        }
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 8, 8, 10, 10, 27]);
        // Cartan component has multiplicity exactly 1.
        assert_eq!(dec[&adj.plus(&adj)], 1);
    }

    #[test]
    fn klimyk_agrees_with_character_product_oracle() {
        // Brute force at small rank: multiply the weight multisets and
        // decompose the product character directly.
        for kind in [AlgebraKind::SL(3), AlgebraKind::SO(5)] {
            let (rs, adj) = for_kind(kind).unwrap();
            let w = rs.weight_multiplicities(&adj).unwrap();
            let mut product: Character = Character::new();
            for (w1, m1) in &w {
                for (w2, m2) in &w {
                    let s = add(w1, w2);
                    *product.entry(s).or_insert(0) += (*m1 as i64) * (*m2 as i64);
                }
            }
            let via_oracle = rs.decompose_character(&product).unwrap();
            let via_klimyk = rs.klimyk_decompose(&adj, &adj).unwrap();
            assert_eq!(via_oracle, via_klimyk, "{kind:?}");
        }
    }

    #[test]
    fn wedge_square_dimension() {
        for kind in [AlgebraKind::SO(7), AlgebraKind::SP(3), AlgebraKind::SL(4)] {
            let (rs, adj) = for_kind(kind).unwrap();
            let g = rs.weight_multiplicities(&adj).unwrap();
            let d: u64 = g.values().sum();
            let l2 = RootSystem::wedge_square(&g);
            let total: i64 = l2.values().sum();
            assert_eq!(total as u64, d * (d - 1) / 2, "{kind:?}");
            let dec = rs.decompose_character(&l2).unwrap();
            assert_eq!(rs.total_dim(&dec).unwrap(), d * (d - 1) / 2);
        }
    }
}
