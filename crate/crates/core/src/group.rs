//! Finite groups, subgroups, right-coset transversals and the right-coset
//! Weil identity.
//!
//! Elements are dense indices `0..order`. Abelian products are stored by
//! their invariants and multiplied in mixed radix; every other family is
//! stored as a full multiplication table. Finite groups are unimodular, so
//! modular functions and rho functions are identically 1 and never stored.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;

/// Largest order accepted for an abelian product.
pub const ABELIAN_CAP: usize = 1_000_000;
/// Largest order accepted for table-backed groups (the table is `n²` words).
pub const TABLE_CAP: usize = 4096;
/// Axioms are verified exhaustively up to this order, by sampling above it.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 512;
const AXIOM_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
enum Law {
    /// Componentwise addition mod `N_j`, mixed-radix encoded (last factor fastest).
    Product(Vec<usize>),
    Table(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroup {
    order: usize,
    law: Law,
    inv: Vec<u32>,
    id: usize,
    weight: f64,
    label: String,
    commutative: bool,
}

/// JSON description of a group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Abelian {
        invariants: Vec<usize>,
        #[serde(default = "unit_weight")]
        weight: f64,
    },
    Dihedral {
        n: usize,
    },
    Axb {
        p: u64,
        q: u64,
    },
    Heisenberg {
        p: u64,
    },
    Table {
        mul: Vec<Vec<usize>>,
        #[serde(default = "unit_weight")]
        weight: f64,
    },
}

fn unit_weight() -> f64 {
    1.0
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Abelian { invariants, weight } => FiniteGroup::abelian(invariants, *weight),
            GroupSpec::Dihedral { n } => FiniteGroup::dihedral(*n),
            GroupSpec::Axb { p, q } => FiniteGroup::semidirect_axb(*p, *q),
            GroupSpec::Heisenberg { p } => FiniteGroup::heisenberg(*p),
            GroupSpec::Table { mul, weight } => FiniteGroup::from_table(mul, *weight, "table"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_weight(weight: f64) -> Result<()> {
    if weight.is_finite() && weight > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("Haar weight must be positive, got {weight}")))
    }
}

/// Mixed-radix digits of `index` over `radices` (last digit fastest).
pub fn decode(index: usize, radices: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; radices.len()];
    let mut rest = index;
    for (d, &n) in digits.iter_mut().zip(radices).rev() {
        *d = rest % n;
        rest /= n;
    }
    digits
}

pub fn encode(digits: &[usize], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, &n)| acc * n + d)
}

impl FiniteGroup {
    /// `ℤ_{N₁} × … × ℤ_{N_k}` with the given Haar weight per element.
    pub fn abelian(invariants: &[usize], weight: f64) -> Result<Self> {
        check_weight(weight)?;
        if invariants.is_empty() {
            return Err(Error::InvalidParameter("at least one invariant is required".into()));
        }
        if let Some(&bad) = invariants.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidParameter(format!("invariant {bad} < 2")));
        }
        let order = invariants.iter().try_fold(1u128, |acc, &n| {
            let next = acc * n as u128;
            (next <= ABELIAN_CAP as u128).then_some(next).ok_or(next)
        });
        let order = match order {
            Ok(o) => o as usize,
            Err(o) => return Err(Error::SizeOverflow(o, ABELIAN_CAP)),
        };
        let inv = (0..order)
            .map(|x| {
                let neg: Vec<usize> = decode(x, invariants)
                    .iter()
                    .zip(invariants)
                    .map(|(&d, &n)| (n - d) % n)
                    .collect();
                encode(&neg, invariants) as u32
            })
            .collect();
        let label = invariants.iter().map(|n| format!("Z{n}")).collect::<Vec<_>>().join("xZ");
        let g = FiniteGroup {
            order,
            law: Law::Product(invariants.to_vec()),
            inv,
            id: 0,
            weight,
            label,
            commutative: true,
        };
        g.check_axioms()?;
        Ok(g)
    }

    /// Dihedral group of order `2n`; `r^k s^e` has index `e·n + k`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("dihedral n = {n} < 3")));
        }
        let order = 2 * n;
        Self::check_table_size(order)?;
        let elem = |i: usize| (i % n, i / n);
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            let (ka, ea) = elem(a);
            for b in 0..order {
                let (kb, eb) = elem(b);
                let k = if ea == 0 { (ka + kb) % n } else { (ka + n - kb) % n };
                mul[a * order + b] = (((ea + eb) % 2) * n + k) as u32;
            }
        }
        Self::from_flat_table(mul, order, 1.0, format!("D{n}"))
    }

    /// `ℤ_p ⋊ ℤ_q`: pairs `(a, b)` with `a` in the order-`q` subgroup of
    /// `(ℤ_p)ˣ`, product `(a,b)(c,d) = (ac, b + ad)`. Index is
    /// `position(a)·p + b` with multipliers sorted ascending, so `(1,0)` is 0.
    pub fn semidirect_axb(p: u64, q: u64) -> Result<Self> {
        for v in [p, q] {
            if !is_prime(v) {
                return Err(Error::NotPrime(v));
            }
        }
        if (p - 1) % q != 0 {
            return Err(Error::InvalidParameter(format!("{q} does not divide {p} - 1")));
        }
        let mults = Self::axb_multipliers(p, q);
        let (pu, qu) = (p as usize, q as usize);
        let order = pu * qu;
        Self::check_table_size(order)?;
        let pos = |a: u64| mults.iter().position(|&m| m == a).expect("closed multiplier set");
        let mut mul = vec![0u32; order * order];
        for x in 0..order {
            let (a, b) = (mults[x / pu], (x % pu) as u64);
            for y in 0..order {
                let (c, d) = (mults[y / pu], (y % pu) as u64);
                let prod_a = a * c % p;
                let prod_b = (b + a * d) % p;
                mul[x * order + y] = (pos(prod_a) * pu + prod_b as usize) as u32;
            }
        }
        Self::from_flat_table(mul, order, 1.0, format!("Z{p}:Z{q}"))
    }

    /// Elements of the order-`q` subgroup of `(ℤ_p)ˣ`, ascending.
    pub fn axb_multipliers(p: u64, q: u64) -> Vec<u64> {
        (1..p)
            .filter(|&a| (0..q).fold(1u64, |acc, _| acc * a % p) == 1)
            .collect()
    }

    /// Upper unitriangular 3×3 matrices over `ℤ_p`, `p ≤ 7`; `(x,y,z)` has
    /// index `x·p² + y·p + z`.
    pub fn heisenberg(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > 7 {
            return Err(Error::InvalidParameter(format!("heisenberg p = {p} > 7")));
        }
        let p = p as usize;
        let order = p * p * p;
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            let (x, y, z) = (a / (p * p), (a / p) % p, a % p);
            for b in 0..order {
                let (x2, y2, z2) = (b / (p * p), (b / p) % p, b % p);
                let r = ((x + x2) % p) * p * p + ((y + y2) % p) * p + (z + z2 + x * y2) % p;
                mul[a * order + b] = r as u32;
            }
        }
        Self::from_flat_table(mul, order, 1.0, format!("Heis{p}"))
    }

    /// Group from an explicit multiplication table (`mul[a][b]` = index of `a·b`).
    pub fn from_table(mul: &[Vec<usize>], weight: f64, label: &str) -> Result<Self> {
        let order = mul.len();
        if order == 0 {
            return Err(Error::InvalidParameter("empty multiplication table".into()));
        }
        Self::check_table_size(order)?;
        let mut flat = Vec::with_capacity(order * order);
        for row in mul {
            if row.len() != order {
                return Err(Error::DimensionMismatch { expected: order, found: row.len() });
            }
            for &v in row {
                if v >= order {
                    return Err(Error::IndexOutOfRange { index: v, size: order });
                }
                flat.push(v as u32);
            }
        }
        Self::from_flat_table(flat, order, weight, label.to_string())
    }

    fn check_table_size(order: usize) -> Result<()> {
        if order > TABLE_CAP {
            Err(Error::SizeOverflow(order as u128, TABLE_CAP))
        } else {
            Ok(())
        }
    }

    fn from_flat_table(mul: Vec<u32>, order: usize, weight: f64, label: String) -> Result<Self> {
        check_weight(weight)?;
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        let id = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::AxiomViolation("no two-sided identity".into()))?;
        let mut inv = vec![0u32; order];
        for (x, slot) in inv.iter_mut().enumerate() {
            let y = (0..order)
                .find(|&y| at(x, y) == id)
                .ok_or_else(|| Error::AxiomViolation(format!("element {x} has no inverse")))?;
            if at(y, x) != id {
                return Err(Error::AxiomViolation(format!("inverse of {x} is one-sided")));
            }
            *slot = y as u32;
        }
        let commutative = (0..order).all(|a| (0..a).all(|b| at(a, b) == at(b, a)));
        let g = FiniteGroup { order, law: Law::Table(mul), inv, id, weight, label, commutative };
        g.check_axioms()?;
        Ok(g)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        let assoc = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        let local = |a: usize| {
            self.mul(self.id, a) == a
                && self.mul(a, self.id) == a
                && self.mul(a, self.inv(a)) == self.id
                && self.mul(self.inv(a), a) == self.id
        };
        if n <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in 0..n {
                if !local(a) {
                    return Err(Error::AxiomViolation(format!("identity/inverse law fails at {a}")));
                }
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::AxiomViolation(format!("associativity fails at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a710);
            for _ in 0..AXIOM_SAMPLES {
                let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
                if !assoc(a, b, c) || !local(a) {
                    return Err(Error::AxiomViolation(format!("sampled axiom check fails at ({a},{b},{c})")));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Recorded invariants when built as an abelian product.
    pub fn abelian_invariants(&self) -> Option<&[usize]> {
        match &self.law {
            Law::Product(inv) => Some(inv),
            Law::Table(_) => None,
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.commutative
    }

    /// Copy of the group with a different Haar weight per element.
    pub fn with_weight(&self, weight: f64) -> Result<Self> {
        check_weight(weight)?;
        Ok(FiniteGroup { weight, ..self.clone() })
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.law {
            Law::Table(t) => t[a * self.order + b] as usize,
            Law::Product(radices) => {
                let mut out = 0;
                let mut scale = 1;
                let (mut ra, mut rb) = (a, b);
                for &n in radices.iter().rev() {
                    out += ((ra % n + rb % n) % n) * scale;
                    scale *= n;
                    ra /= n;
                    rb /= n;
                }
                out
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `a^k` by repeated multiplication.
    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.id, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: a, size: self.order })
        }
    }

    /// Dense multiplication table, row `a` holding `a·b` for every `b`.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }
}

/// A subgroup `H ≤ G` given by its sorted member list and its own Haar weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Subgroup {
    members: Vec<usize>,
    weight: f64,
    abelian: bool,
    parent_order: usize,
}

impl Subgroup {
    /// Smallest subgroup containing `generators`.
    pub fn generate(group: &FiniteGroup, generators: &[usize], weight: f64) -> Result<Self> {
        check_weight(weight)?;
        for &g in generators {
            group.check_index(g)?;
        }
        let mut inside = vec![false; group.order()];
        let mut members = vec![group.identity()];
        inside[group.identity()] = true;
        let mut frontier = 0;
        while frontier < members.len() {
            let x = members[frontier];
            frontier += 1;
            for &g in generators {
                let y = group.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
        }
        Ok(Self::assemble(group, members, weight))
    }

    /// Validates that `members` is closed under products and inverses.
    pub fn from_members(group: &FiniteGroup, members: &[usize], weight: f64) -> Result<Self> {
        check_weight(weight)?;
        let mut inside = vec![false; group.order()];
        for &m in members {
            group.check_index(m)?;
            inside[m] = true;
        }
        if !inside[group.identity()] {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in members {
            if !inside[group.inv(a)] {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in members {
                if !inside[group.mul(a, b)] {
                    return Err(Error::NotSubgroup(format!("{a}·{b} not a member")));
                }
            }
        }
        let members: Vec<usize> = (0..group.order()).filter(|&i| inside[i]).collect();
        Ok(Self::assemble(group, members, weight))
    }

    fn assemble(group: &FiniteGroup, mut members: Vec<usize>, weight: f64) -> Self {
        members.sort_unstable();
        let abelian = members
            .iter()
            .all(|&a| members.iter().all(|&b| group.mul(a, b) == group.mul(b, a)));
        Subgroup { members, weight, abelian, parent_order: group.order() }
    }

    pub fn whole(group: &FiniteGroup, weight: f64) -> Result<Self> {
        Self::from_members(group, &(0..group.order()).collect::<Vec<_>>(), weight)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn with_weight(&self, weight: f64) -> Result<Self> {
        check_weight(weight)?;
        Ok(Subgroup { weight, ..self.clone() })
    }

    pub(crate) fn belongs_to(&self, group: &FiniteGroup) -> Result<()> {
        if self.parent_order != group.order() {
            return Err(Error::ContextMismatch(format!(
                "subgroup of a group of order {} used with a group of order {}",
                self.parent_order,
                group.order()
            )));
        }
        Ok(())
    }
}

/// Right cosets `Hx` with a transversal `γ` and the factorization `g = ξ·γ(Hg)`.
///
/// Cosets are numbered by increasing minimal element, whatever the
/// representative policy, so two transversals of the same pair share
/// coset numbering.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetSpace {
    transversal: Vec<usize>,
    coset_of: Vec<usize>,
    h_part: Vec<usize>,
    weight: f64,
}

impl CosetSpace {
    /// Minimal-index representative per right coset.
    pub fn minimal(group: &FiniteGroup, sub: &Subgroup) -> Result<Self> {
        sub.belongs_to(group)?;
        let n = group.order();
        if n % sub.order() != 0 {
            return Err(Error::NotSubgroup(format!("|H| = {} does not divide |G| = {n}", sub.order())));
        }
        let mut coset_of = vec![usize::MAX; n];
        let mut h_part = vec![usize::MAX; n];
        let mut transversal = Vec::with_capacity(n / sub.order());
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = transversal.len();
            transversal.push(g);
            for &xi in sub.members() {
                let y = group.mul(xi, g);
                if coset_of[y] != usize::MAX {
                    return Err(Error::NotSubgroup("right cosets overlap".into()));
                }
                coset_of[y] = c;
                h_part[y] = xi;
            }
        }
        if transversal.len() * sub.order() != n {
            return Err(Error::NotSubgroup("coset count inconsistent with |H|".into()));
        }
        Ok(CosetSpace { transversal, coset_of, h_part, weight: group.weight() / sub.weight() })
    }

    /// Uniformly random representative per coset, reproducible from `seed`.
    pub fn randomized(group: &FiniteGroup, sub: &Subgroup, seed: u64) -> Result<Self> {
        let base = Self::minimal(group, sub)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let transversal: Vec<usize> = base
            .transversal
            .iter()
            .map(|&rep| group.mul(sub.members()[rng.random_range(0..sub.order())], rep))
            .collect();
        let h_part = (0..group.order())
            .map(|g| group.mul(g, group.inv(transversal[base.coset_of[g]])))
            .collect();
        Ok(CosetSpace { transversal, coset_of: base.coset_of, h_part, weight: base.weight })
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn coset_count(&self) -> usize {
        self.transversal.len()
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    pub fn h_part(&self, g: usize) -> usize {
        self.h_part[g]
    }

    /// Weight per coset, `w_G / w_H`.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn group_order(&self) -> usize {
        self.coset_of.len()
    }

    /// Checks `g = h_part(g)·γ(coset_of(g))` for every `g`; exact.
    pub fn factorization_holds(&self, group: &FiniteGroup) -> bool {
        (0..group.order()).all(|g| group.mul(self.h_part[g], self.transversal[self.coset_of[g]]) == g)
    }
}

/// `|Σ_G f·w_G − Σ_cosets Σ_{ξ∈H} f(ξγ(Hx))·w_H·w_{H\G}|`.
pub fn weil_check(group: &FiniteGroup, sub: &Subgroup, cosets: &CosetSpace, f: &[C64]) -> Result<f64> {
    sub.belongs_to(group)?;
    if f.len() != group.order() {
        return Err(Error::DimensionMismatch { expected: group.order(), found: f.len() });
    }
    let whole: C64 = f.iter().sum::<C64>() * group.weight();
    let iterated: C64 = cosets
        .transversal()
        .iter()
        .map(|&rep| {
            sub.members().iter().map(|&xi| f[group.mul(xi, rep)]).sum::<C64>() * sub.weight() * cosets.weight()
        })
        .sum();
    Ok((whole - iterated).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force isomorphism search by backtracking over images.
    fn isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
        if a.order() != b.order() {
            return false;
        }
        let n = a.order();
        fn extend(a: &FiniteGroup, b: &FiniteGroup, map: &mut Vec<usize>, used: &mut Vec<bool>, k: usize) -> bool {
            let n = a.order();
            if k == n {
                return (0..n).all(|x| (0..n).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])));
            }
            for img in 0..n {
                if used[img] || a.element_order(k) != b.element_order(img) {
                    continue;
                }
                map[k] = img;
                // partial homomorphism check against already-mapped elements
                let ok = (0..k).all(|x| {
                    let p = a.mul(x, k);
                    p > k || map[p] == b.mul(map[x], img)
                });
                if !ok {
                    continue;
                }
                used[img] = true;
                if extend(a, b, map, used, k + 1) {
                    return true;
                }
                used[img] = false;
            }
            false
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        // identity is index 0 in every family used here
        map[0] = b.identity();
        used[b.identity()] = true;
        extend(a, b, &mut map, &mut used, 1)
    }

    #[test]
    fn z2_smallest_case() {
        let g = FiniteGroup::abelian(&[2], 1.0).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn mixed_radix_encoding() {
        let g = FiniteGroup::abelian(&[4, 3], 1.0).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(encode(&[1, 2], &[4, 3]), 5);
        assert_eq!(decode(5, &[4, 3]), vec![1, 2]);
    }

    #[test]
    fn z6_addition() {
        let g = FiniteGroup::abelian(&[6], 1.0).unwrap();
        assert_eq!(g.mul(4, 5), 3);
    }

    #[test]
    fn abelian_errors() {
        assert!(matches!(FiniteGroup::abelian(&[1], 1.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(FiniteGroup::abelian(&[1000, 1001], 1.0), Err(Error::SizeOverflow(..))));
        assert!(FiniteGroup::abelian(&[2], 0.0).is_err());
    }

    #[test]
    fn dihedral_relations() {
        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(d3.order(), 6);
        assert!(!d3.is_abelian());
        assert_eq!(d3.pow(1, 3), d3.identity());
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let (r, s) = (1, 4);
        assert_eq!(d4.mul(d4.mul(s, r), s), d4.pow(r, 3));
        assert!(FiniteGroup::dihedral(2).is_err());
    }

    #[test]
    fn axb_family() {
        assert_eq!(FiniteGroup::axb_multipliers(7, 3), vec![1, 2, 4]);
        let g = FiniteGroup::semidirect_axb(7, 3).unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(g.identity(), 0);
        let s3 = FiniteGroup::semidirect_axb(3, 2).unwrap();
        assert!(isomorphic(&s3, &FiniteGroup::dihedral(3).unwrap()));
        assert!(matches!(FiniteGroup::semidirect_axb(7, 5), Err(Error::InvalidParameter(_))));
        assert!(matches!(FiniteGroup::semidirect_axb(9, 2), Err(Error::NotPrime(9))));
    }

    #[test]
    fn heisenberg_family() {
        let h2 = FiniteGroup::heisenberg(2).unwrap();
        assert!(isomorphic(&h2, &FiniteGroup::dihedral(4).unwrap()));
        let h3 = FiniteGroup::heisenberg(3).unwrap();
        assert_eq!(h3.order(), 27);
        assert_eq!(h3.center(), vec![0, 1, 2]);
        // (1,0,0)·(0,1,0) = (1,1,1)
        assert_eq!(h3.mul(9, 3), 9 + 3 + 1);
        assert!(matches!(FiniteGroup::heisenberg(4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn table_groups_validate() {
        let bad = vec![vec![0, 1], vec![0, 1]];
        assert!(FiniteGroup::from_table(&bad, 1.0, "bad").is_err());
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let g = FiniteGroup::from_table(&z3, 0.5, "z3").unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.inv(1), 2);
    }

    #[test]
    fn generation() {
        let z6 = FiniteGroup::abelian(&[6], 1.0).unwrap();
        assert_eq!(Subgroup::generate(&z6, &[2], 1.0).unwrap().members(), &[0, 2, 4]);
        assert_eq!(Subgroup::generate(&z6, &[], 1.0).unwrap().members(), &[0]);
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let rot = Subgroup::generate(&d3, &[1], 1.0).unwrap();
        assert_eq!(rot.members(), &[0, 1, 2]);
        assert!(rot.is_abelian());
        assert!(!Subgroup::whole(&d3, 1.0).unwrap().is_abelian());
        assert!(Subgroup::from_members(&z6, &[0, 2], 1.0).is_err());
    }

    #[test]
    fn transversals() {
        let z6 = FiniteGroup::abelian(&[6], 1.0).unwrap();
        let h = Subgroup::generate(&z6, &[3], 1.0).unwrap();
        assert_eq!(CosetSpace::minimal(&z6, &h).unwrap().transversal(), &[0, 1, 2]);
        let z4 = FiniteGroup::abelian(&[4], 1.0).unwrap();
        let h = Subgroup::generate(&z4, &[2], 1.0).unwrap();
        let c = CosetSpace::minimal(&z4, &h).unwrap();
        assert_eq!((c.coset_of(3), c.h_part(3)), (1, 2));
        let all = Subgroup::whole(&z4, 1.0).unwrap();
        assert_eq!(CosetSpace::minimal(&z4, &all).unwrap().transversal(), &[0]);
    }

    #[test]
    fn randomized_transversal_factorizes() {
        let d5 = FiniteGroup::dihedral(5).unwrap();
        let h = Subgroup::generate(&d5, &[5], 1.0).unwrap();
        let c = CosetSpace::randomized(&d5, &h, 7).unwrap();
        assert!(c.factorization_holds(&d5));
        assert_eq!(c.coset_count() * h.order(), d5.order());
    }

    #[test]
    fn weil_counting_identity() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let h = Subgroup::generate(&d4, &[2], 1.0).unwrap();
        let c = CosetSpace::minimal(&d4, &h).unwrap();
        let ones = vec![C64::new(1.0, 0.0); 8];
        assert!(weil_check(&d4, &h, &c, &ones).unwrap() < 1e-15);
        assert_eq!(weil_check(&d4, &h, &c, &[C64::new(0.0, 0.0); 8]).unwrap(), 0.0);
    }

    #[test]
    fn spec_round_trip() {
        let spec: GroupSpec = serde_json::from_str(r#"{"kind":"abelian","invariants":[4]}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 4);
        let spec: GroupSpec = serde_json::from_str(r#"{"kind":"heisenberg","p":2}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 8);
    }
}
