//! Characters, dual groups, Fourier transforms and annihilators on finite
//! abelian groups.
//!
//! A finite abelian group (or abelian subgroup of an arbitrary finite
//! group) is handled through an [`AbelianView`]: an explicit isomorphism
//! with `ℤ_{N₁} × … × ℤ_{N_k}` that lists, for every mixed-radix index,
//! the ambient element it stands for. Characters are indexed by the same
//! tuples, `χ_a(x) = exp(2πi Σ_j a_j x_j / N_j)`.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::group::{decode, encode, FiniteGroup, Subgroup};
use crate::linalg::C64;

const NOT_MEMBER: usize = usize::MAX;

/// Isomorphism between an abelian (sub)group and a product of cyclic groups.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelianView {
    invariants: Vec<usize>,
    elements: Vec<usize>,
    position: Vec<usize>,
    weight: f64,
}

impl AbelianView {
    /// View of a whole abelian group. Products keep their recorded
    /// invariants (identity view); abelian tables are decomposed.
    pub fn of_group(group: &FiniteGroup) -> Result<Self> {
        if let Some(inv) = group.abelian_invariants() {
            let elements: Vec<usize> = (0..group.order()).collect();
            return Ok(AbelianView {
                invariants: inv.to_vec(),
                position: elements.clone(),
                elements,
                weight: group.weight(),
            });
        }
        if !group.is_abelian() {
            return Err(Error::NotAbelian(format!("group {} has no abelian structure", group.label())));
        }
        let all: Vec<usize> = (0..group.order()).collect();
        Self::decomposed(group, &all, group.weight())
    }

    /// View of an abelian subgroup, with the subgroup's own Haar weight.
    pub fn of_subgroup(group: &FiniteGroup, sub: &Subgroup) -> Result<Self> {
        sub.belongs_to(group)?;
        if !sub.is_abelian() {
            return Err(Error::NotAbelian(format!("subgroup of order {} is not abelian", sub.order())));
        }
        if sub.order() == group.order() && group.abelian_invariants().is_some() {
            let mut v = Self::of_group(group)?;
            v.weight = sub.weight();
            return Ok(v);
        }
        Self::decomposed(group, sub.members(), sub.weight())
    }

    /// View from an explicit basis: `basis[j]` must have order `invariants[j]`
    /// and the resulting map must be a bijection onto `sub`.
    pub fn from_basis(group: &FiniteGroup, sub: &Subgroup, invariants: &[usize], basis: &[usize]) -> Result<Self> {
        sub.belongs_to(group)?;
        if invariants.len() != basis.len() {
            return Err(Error::DimensionMismatch { expected: invariants.len(), found: basis.len() });
        }
        let view = Self::assemble(group, invariants.to_vec(), basis, sub.weight());
        let ok = view.elements.len() == sub.order()
            && view.elements.iter().all(|&e| sub.contains(e))
            && view.position.iter().filter(|&&p| p != NOT_MEMBER).count() == sub.order()
            && basis.iter().zip(invariants).all(|(&b, &n)| group.element_order(b) == n);
        if !ok {
            return Err(Error::Consistency("basis does not parametrize the subgroup".into()));
        }
        Ok(view)
    }

    fn decomposed(group: &FiniteGroup, members: &[usize], weight: f64) -> Result<Self> {
        let (invariants, basis) = primary_decomposition(group, members)?;
        let view = Self::assemble(group, invariants, &basis, weight);
        let distinct = view.position.iter().filter(|&&p| p != NOT_MEMBER).count();
        if view.elements.len() != members.len() || distinct != members.len() {
            return Err(Error::Consistency("abelian decomposition is not a bijection".into()));
        }
        Ok(view)
    }

    fn assemble(group: &FiniteGroup, invariants: Vec<usize>, basis: &[usize], weight: f64) -> Self {
        let mut elements = vec![group.identity()];
        for (&b, &n) in basis.iter().zip(&invariants) {
            // mixed radix with the last factor fastest: expand each existing
            // element by the powers of the new basis element
            let mut next = Vec::with_capacity(elements.len() * n);
            for &e in &elements {
                let mut x = e;
                for _ in 0..n {
                    next.push(x);
                    x = group.mul(x, b);
                }
            }
            elements = next;
        }
        let mut position = vec![NOT_MEMBER; group.order()];
        for (k, &e) in elements.iter().enumerate() {
            position[e] = k;
        }
        AbelianView { invariants, elements, position, weight }
    }

    pub fn invariants(&self) -> &[usize] {
        &self.invariants
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Ambient element standing for local index `k`.
    pub fn element(&self, k: usize) -> usize {
        self.elements[k]
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Local index of an ambient element, if it belongs to the view.
    pub fn local(&self, ambient: usize) -> Option<usize> {
        self.position.get(ambient).copied().filter(|&p| p != NOT_MEMBER)
    }

    /// Ambient elements corresponding to the unit tuples.
    pub fn basis(&self) -> Vec<usize> {
        (0..self.invariants.len())
            .map(|j| {
                let mut digits = vec![0; self.invariants.len()];
                digits[j] = 1;
                self.elements[encode(&digits, &self.invariants)]
            })
            .collect()
    }
}

fn prime_factors(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Decomposes a finite abelian group into cyclic factors of prime-power
/// order, returning the factor orders and a generator for each.
///
/// Works one Sylow subgroup at a time. Inside a `p`-group, the next basis
/// element is an element of maximal order modulo the span `S` of the basis
/// so far, corrected by a combination of basis elements so that its order
/// equals its order modulo `S`.
fn primary_decomposition(group: &FiniteGroup, members: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut invariants = Vec::new();
    let mut basis = Vec::new();
    for (p, a) in prime_factors(members.len()) {
        let pa = p.pow(a);
        let sylow: Vec<usize> = members.iter().copied().filter(|&x| group.pow(x, pa) == group.identity()).collect();
        let mut span: HashMap<usize, Vec<usize>> = HashMap::from([(group.identity(), Vec::new())]);
        let mut local_basis: Vec<(usize, usize)> = Vec::new();
        while span.len() < sylow.len() {
            let mut best: Option<(usize, usize)> = None;
            for &x in &sylow {
                if span.contains_key(&x) {
                    continue;
                }
                let mut y = x;
                let mut e = 0;
                while !span.contains_key(&y) {
                    y = group.pow(y, p);
                    e += 1;
                }
                if best.is_none_or(|(_, be)| e > be) {
                    best = Some((x, e));
                }
            }
            let (x, e) = best.expect("span is a proper subgroup");
            let pe = p.pow(e as u32);
            let coords = span[&group.pow(x, pe)].clone();
            let mut lifted = x;
            for (&ci, &(b, _)) in coords.iter().zip(&local_basis) {
                if ci % pe != 0 {
                    return Err(Error::Consistency("basis lifting failed; group is not abelian".into()));
                }
                lifted = group.mul(lifted, group.pow(group.inv(b), ci / pe));
            }
            if group.pow(lifted, pe) != group.identity() {
                return Err(Error::Consistency("lifted basis element has wrong order".into()));
            }
            let mut grown = HashMap::with_capacity(span.len() * pe);
            for (s, cs) in &span {
                let mut y = *s;
                for m in 0..pe {
                    let mut c = cs.clone();
                    c.push(m);
                    grown.insert(y, c);
                    y = group.mul(y, lifted);
                }
            }
            span = grown;
            local_basis.push((lifted, pe));
        }
        for (b, n) in local_basis {
            basis.push(b);
            invariants.push(n);
        }
    }
    Ok((invariants, basis))
}

/// Dual group `Ĥ` with dual Haar weight `1/(|H|·w_H)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualGroup {
    invariants: Vec<usize>,
    digits: Vec<Vec<usize>>,
    lcm: usize,
    roots: Vec<C64>,
    base_weight: f64,
    weight: f64,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl DualGroup {
    pub fn new(invariants: &[usize], base_weight: f64) -> Self {
        let order: usize = invariants.iter().product();
        let lcm = invariants.iter().fold(1, |l, &n| l / gcd(l, n) * n);
        let roots = (0..lcm)
            .map(|t| {
                let theta = 2.0 * PI * t as f64 / lcm as f64;
                C64::new(theta.cos(), theta.sin())
            })
            .collect();
        DualGroup {
            invariants: invariants.to_vec(),
            digits: (0..order).map(|k| decode(k, invariants)).collect(),
            lcm,
            roots,
            base_weight,
            weight: 1.0 / (order as f64 * base_weight),
        }
    }

    pub fn order(&self) -> usize {
        self.digits.len()
    }

    pub fn invariants(&self) -> &[usize] {
        &self.invariants
    }

    /// Dual Haar weight per character.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn base_weight(&self) -> f64 {
        self.base_weight
    }

    /// Weight of the dual of the dual; equals the base weight.
    pub fn bidual_weight(&self) -> f64 {
        1.0 / (self.order() as f64 * self.weight)
    }

    /// `Σ_j a_j x_j · (L/N_j) mod L`, the exponent of `χ_a(x)` in units of `2π/L`.
    pub fn phase(&self, a: usize, x: usize) -> usize {
        let (da, dx) = (&self.digits[a], &self.digits[x]);
        let mut t = 0;
        for j in 0..self.invariants.len() {
            t += da[j] * dx[j] * (self.lcm / self.invariants[j]);
        }
        t % self.lcm
    }

    /// `χ_a(x)` for local indices.
    pub fn chi(&self, a: usize, x: usize) -> C64 {
        self.roots[self.phase(a, x)]
    }

    pub fn root(&self, t: usize) -> C64 {
        self.roots[t % self.lcm]
    }

    pub fn lcm(&self) -> usize {
        self.lcm
    }

    /// Index of `a⁻¹` (tuple negation).
    pub fn neg(&self, a: usize) -> usize {
        let d: Vec<usize> = self.digits[a].iter().zip(&self.invariants).map(|(&v, &n)| (n - v) % n).collect();
        encode(&d, &self.invariants)
    }

    /// Index of the product character `χ_a χ_b`.
    pub fn add(&self, a: usize, b: usize) -> usize {
        let d: Vec<usize> = (0..self.invariants.len())
            .map(|j| (self.digits[a][j] + self.digits[b][j]) % self.invariants[j])
            .collect();
        encode(&d, &self.invariants)
    }

    /// `f̂(α) = Σ_x f(x)·χ_α(x⁻¹)·w_H` for `f` in local order.
    pub fn fourier(&self, f: &[C64]) -> Result<Vec<C64>> {
        self.check_len(f.len())?;
        Ok((0..self.order())
            .map(|a| {
                f.iter()
                    .enumerate()
                    .map(|(x, v)| v * self.roots[(self.lcm - self.phase(a, x)) % self.lcm])
                    .sum::<C64>()
                    * self.base_weight
            })
            .collect())
    }

    /// `ǧ(x) = Σ_α g(α)·χ_α(x)·w_Ĥ`.
    pub fn fourier_inverse(&self, g: &[C64]) -> Result<Vec<C64>> {
        self.check_len(g.len())?;
        Ok((0..self.order())
            .map(|x| g.iter().enumerate().map(|(a, v)| v * self.chi(a, x)).sum::<C64>() * self.weight)
            .collect())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.order() {
            return Err(Error::DimensionMismatch { expected: self.order(), found: len });
        }
        Ok(())
    }

    /// `max_{a,b} |Σ_x χ_a(x) conj(χ_b(x)) w_H − δ_ab / w_Ĥ|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.order();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let s: C64 = (0..n).map(|x| self.chi(a, x) * self.chi(b, x).conj()).sum::<C64>() * self.base_weight;
                let target = if a == b { 1.0 / self.weight } else { 0.0 };
                worst = worst.max((s - target).norm() * self.weight);
            }
        }
        worst
    }
}

/// Characters of an abelian view.
pub fn characters(view: &AbelianView) -> DualGroup {
    DualGroup::new(view.invariants(), view.weight())
}

/// Characters of a whole group; fails for nonabelian groups.
pub fn group_characters(group: &FiniteGroup) -> Result<(AbelianView, DualGroup)> {
    let view = AbelianView::of_group(group)?;
    let dual = characters(&view);
    Ok((view, dual))
}

/// Fourier transform of a function on an abelian group, indexed by
/// ambient element order, into character order.
pub fn fourier(group: &FiniteGroup, f: &[C64]) -> Result<Vec<C64>> {
    let (view, dual) = group_characters(group)?;
    check_function(group, f)?;
    let local: Vec<C64> = view.elements().iter().map(|&e| f[e]).collect();
    dual.fourier(&local)
}

/// Inverse of [`fourier`], returning ambient element order.
pub fn fourier_inverse(group: &FiniteGroup, g: &[C64]) -> Result<Vec<C64>> {
    let (view, dual) = group_characters(group)?;
    let local = dual.fourier_inverse(g)?;
    let mut out = vec![C64::new(0.0, 0.0); group.order()];
    for (k, v) in local.into_iter().enumerate() {
        out[view.element(k)] = v;
    }
    Ok(out)
}

pub(crate) fn check_function(group: &FiniteGroup, f: &[C64]) -> Result<()> {
    if f.len() != group.order() {
        return Err(Error::DimensionMismatch { expected: group.order(), found: f.len() });
    }
    Ok(())
}

/// `H* = {κ ∈ Ĝ : κ|_H ≡ 1}` with the weight making `w_{H*}·w_Ĥ = w_Ĝ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Annihilator {
    members: Vec<usize>,
    weight: f64,
}

impl Annihilator {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// `1/(|G/H|·w_{G/H})` with `w_{G/H} = w_G / w_H`.
    pub fn weight(&self) -> f64 {
        self.weight
    }
}

/// Annihilator of `sub` inside the dual of the abelian group `group`.
pub fn annihilator(group: &FiniteGroup, sub: &Subgroup) -> Result<Annihilator> {
    sub.belongs_to(group)?;
    let (view, dual) = group_characters(group)?;
    let locals: Vec<usize> = sub.members().iter().map(|&h| view.local(h).expect("member of G")).collect();
    let members: Vec<usize> = (0..dual.order()).filter(|&k| locals.iter().all(|&x| dual.phase(k, x) == 0)).collect();
    if members.len() * sub.order() != group.order() {
        return Err(Error::Consistency(format!(
            "annihilator order {} times |H| = {} differs from |G| = {}",
            members.len(),
            sub.order(),
            group.order()
        )));
    }
    let quotient_weight = group.weight() / sub.weight();
    let weight = 1.0 / (members.len() as f64 * quotient_weight);
    Ok(Annihilator { members, weight })
}

/// Identification `Ĝ/H* ≅ Ĥ`: the transversal `β` (minimal character
/// index per coset) and the restriction map `ωH* ↦ ω|_H`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualQuotient {
    beta: Vec<usize>,
    coset_of_char: Vec<usize>,
    restriction: Vec<usize>,
    coset_of_restriction: Vec<usize>,
}

impl DualQuotient {
    /// `β(c)`, a character index of `Ĝ`.
    pub fn beta(&self, c: usize) -> usize {
        self.beta[c]
    }

    pub fn betas(&self) -> &[usize] {
        &self.beta
    }

    pub fn coset_count(&self) -> usize {
        self.beta.len()
    }

    pub fn coset_of_char(&self, omega: usize) -> usize {
        self.coset_of_char[omega]
    }

    /// Index in `Ĥ` of `ω|_H` for the coset `c`.
    pub fn restriction(&self, c: usize) -> usize {
        self.restriction[c]
    }

    /// Coset whose restriction is the `Ĥ` character `alpha`.
    pub fn coset_of_restriction(&self, alpha: usize) -> usize {
        self.coset_of_restriction[alpha]
    }
}

/// Index in `Ĥ` of the restriction of the `Ĝ` character `omega`.
pub fn restrict_character(
    g_view: &AbelianView,
    g_dual: &DualGroup,
    h_view: &AbelianView,
    h_dual: &DualGroup,
    omega: usize,
) -> Result<usize> {
    let digits: Vec<usize> = h_view
        .basis()
        .iter()
        .zip(h_dual.invariants())
        .map(|(&b, &n)| {
            let t = g_dual.phase(omega, g_view.local(b).expect("H inside G"));
            let scaled = t * n;
            if scaled % g_dual.lcm() != 0 {
                Err(Error::Consistency("restricted character is not a character of H".into()))
            } else {
                Ok(scaled / g_dual.lcm())
            }
        })
        .collect::<Result<_>>()?;
    let alpha = encode(&digits, h_dual.invariants());
    // confirm on every element, not only the basis
    for k in 0..h_view.order() {
        let g_side = g_dual.chi(omega, g_view.local(h_view.element(k)).expect("H inside G"));
        if (g_side - h_dual.chi(alpha, k)).norm() > 1e-9 {
            return Err(Error::Consistency("restriction disagrees off the basis".into()));
        }
    }
    Ok(alpha)
}

pub fn dual_quotient_iso(
    g_view: &AbelianView,
    g_dual: &DualGroup,
    h_view: &AbelianView,
    h_dual: &DualGroup,
    ann: &Annihilator,
) -> Result<DualQuotient> {
    let n = g_dual.order();
    let mut coset_of_char = vec![usize::MAX; n];
    let mut beta = Vec::new();
    for omega in 0..n {
        if coset_of_char[omega] != usize::MAX {
            continue;
        }
        let c = beta.len();
        beta.push(omega);
        for &kappa in ann.members() {
            coset_of_char[g_dual.add(omega, kappa)] = c;
        }
    }
    let restriction: Vec<usize> = beta
        .iter()
        .map(|&b| restrict_character(g_view, g_dual, h_view, h_dual, b))
        .collect::<Result<_>>()?;
    let mut coset_of_restriction = vec![usize::MAX; h_dual.order()];
    for (c, &alpha) in restriction.iter().enumerate() {
        if coset_of_restriction[alpha] != usize::MAX {
            return Err(Error::Consistency("restriction map is not injective".into()));
        }
        coset_of_restriction[alpha] = c;
    }
    if restriction.len() != h_dual.order() {
        return Err(Error::Consistency("restriction map is not surjective".into()));
    }
    Ok(DualQuotient { beta, coset_of_char, restriction, coset_of_restriction })
}

/// Finite Parseval identity for `f` on `Ĥ`:
/// `|Σ_x |Σ_α f(α) conj(α(x)) w_Ĥ|² w_H − Σ_α |f(α)|² w_Ĥ|`.
pub fn parseval_check(dual: &DualGroup, f: &[C64]) -> Result<f64> {
    dual.check_len(f.len())?;
    let n = dual.order();
    let lhs: f64 = (0..n)
        .map(|x| {
            let s: C64 = (0..n).map(|a| f[a] * dual.chi(a, x).conj()).sum::<C64>() * dual.weight();
            s.norm_sqr()
        })
        .sum::<f64>()
        * dual.base_weight();
    let rhs: f64 = f.iter().map(|v| v.norm_sqr()).sum::<f64>() * dual.weight();
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn zn(n: usize) -> FiniteGroup {
        FiniteGroup::abelian(&[n], 1.0).unwrap()
    }

    #[test]
    fn sign_and_quarter_characters() {
        let d2 = characters(&AbelianView::of_group(&zn(2)).unwrap());
        assert!((d2.chi(1, 1) - c(-1.0, 0.0)).norm() < 1e-15);
        let d4 = characters(&AbelianView::of_group(&zn(4)).unwrap());
        assert!((d4.chi(1, 1) - c(0.0, 1.0)).norm() < 1e-15);
        assert!((0..4).all(|x| d4.chi(0, x) == c(1.0, 0.0)));
    }

    #[test]
    fn nonabelian_has_no_characters() {
        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert!(matches!(group_characters(&d3), Err(Error::NotAbelian(_))));
        assert!(matches!(fourier(&d3, &[c(0.0, 0.0); 6]), Err(Error::NotAbelian(_))));
    }

    #[test]
    fn two_point_transforms() {
        let z2 = zn(2);
        let delta = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let hat = fourier(&z2, &delta).unwrap();
        assert!((hat[0] - c(1.0, 0.0)).norm() < 1e-15 && (hat[1] - c(1.0, 0.0)).norm() < 1e-15);
        let hat = fourier(&z2, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((hat[0] - c(2.0, 0.0)).norm() < 1e-15 && hat[1].norm() < 1e-15);
        let back = fourier_inverse(&z2, &delta).unwrap();
        assert!(back.iter().all(|v| (v - c(0.5, 0.0)).norm() < 1e-15));
        assert!(fourier(&z2, &[c(0.0, 0.0); 2]).unwrap().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn annihilators() {
        let z4 = zn(4);
        let h = Subgroup::generate(&z4, &[2], 1.0).unwrap();
        assert_eq!(annihilator(&z4, &h).unwrap().members(), &[0, 2]);
        let all = Subgroup::whole(&z4, 1.0).unwrap();
        assert_eq!(annihilator(&z4, &all).unwrap().members(), &[0]);
        let triv = Subgroup::generate(&z4, &[], 1.0).unwrap();
        assert_eq!(annihilator(&z4, &triv).unwrap().order(), 4);
    }

    #[test]
    fn quotient_identifications() {
        for (inv, gens, cosets) in [(vec![4], vec![2], 2), (vec![4], vec![1], 4), (vec![2, 2], vec![2], 2)] {
            let g = FiniteGroup::abelian(&inv, 1.0).unwrap();
            let h = Subgroup::generate(&g, &gens, 1.0).unwrap();
            let (gv, gd) = group_characters(&g).unwrap();
            let hv = AbelianView::of_subgroup(&g, &h).unwrap();
            let hd = characters(&hv);
            let ann = annihilator(&g, &h).unwrap();
            let q = dual_quotient_iso(&gv, &gd, &hv, &hd, &ann).unwrap();
            assert_eq!(q.coset_count(), cosets);
            let mut seen: Vec<usize> = (0..cosets).map(|c| q.restriction(c)).collect();
            seen.sort();
            assert_eq!(seen, (0..hd.order()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn decomposition_of_noncyclic_subgroups() {
        // Klein four inside D4: {1, r², s, r²s}
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let k = Subgroup::generate(&d4, &[2, 4], 1.0).unwrap();
        let v = AbelianView::of_subgroup(&d4, &k).unwrap();
        assert_eq!(v.invariants(), &[2, 2]);
        // Z2 x Z4 x Z3 as a table-free product decomposes into prime powers
        let g = FiniteGroup::abelian(&[2, 4, 3], 1.0).unwrap();
        let all = Subgroup::whole(&g, 1.0).unwrap();
        let v = AbelianView::decomposed(&g, all.members(), 1.0).unwrap();
        let mut inv = v.invariants().to_vec();
        inv.sort();
        assert_eq!(inv, vec![2, 3, 4]);
    }

    #[test]
    fn parseval_small_cases() {
        let d2 = DualGroup::new(&[2], 1.0);
        assert_eq!(parseval_check(&d2, &[c(0.0, 0.0); 2]).unwrap(), 0.0);
        assert!(parseval_check(&d2, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap() < 1e-15);
        assert!((d2.bidual_weight() - 1.0).abs() < 1e-15);
        assert!(d2.orthogonality_residual() < 1e-12);
    }
}
