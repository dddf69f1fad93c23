//! Zak transform over an abelian subgroup of an arbitrary finite group,
//! fiberization over the annihilator for abelian groups, and the
//! translation/modulation operators they diagonalize.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{CosetSpace, FiniteGroup, Subgroup};
use crate::harmonic::{
    annihilator, characters, check_function, dual_quotient_iso, AbelianView, Annihilator, DualGroup, DualQuotient,
};
use crate::linalg::{c, CMat, C64};

/// Abelian data attached to a context when `G` itself is abelian.
#[derive(Debug, Clone)]
pub struct AbelianSide {
    pub view: AbelianView,
    pub dual: DualGroup,
    pub annihilator: Annihilator,
    pub quotient: DualQuotient,
}

/// Everything a Zak transform depends on: `G`, the abelian subgroup `H`,
/// the transversal, and the dual `Ĥ`.
#[derive(Debug)]
pub struct ZakContext {
    group: Arc<FiniteGroup>,
    sub: Subgroup,
    cosets: CosetSpace,
    view: AbelianView,
    dual: DualGroup,
    abelian: Option<AbelianSide>,
}

impl ZakContext {
    pub fn new(group: Arc<FiniteGroup>, sub: Subgroup, cosets: CosetSpace) -> Result<Arc<Self>> {
        sub.belongs_to(&group)?;
        if cosets.group_order() != group.order() || cosets.coset_count() * sub.order() != group.order() {
            return Err(Error::ContextMismatch("coset space does not match (G, H)".into()));
        }
        let view = AbelianView::of_subgroup(&group, &sub)?;
        let dual = characters(&view);
        let abelian = if group.is_abelian() {
            let g_view = AbelianView::of_group(&group)?;
            let g_dual = characters(&g_view);
            let ann = annihilator(&group, &sub)?;
            let quotient = dual_quotient_iso(&g_view, &g_dual, &view, &dual, &ann)?;
            Some(AbelianSide { view: g_view, dual: g_dual, annihilator: ann, quotient })
        } else {
            None
        };
        Ok(Arc::new(ZakContext { group, sub, cosets, view, dual, abelian }))
    }

    /// Context with the minimal-index transversal.
    pub fn minimal(group: Arc<FiniteGroup>, sub: Subgroup) -> Result<Arc<Self>> {
        let cosets = CosetSpace::minimal(&group, &sub)?;
        Self::new(group, sub, cosets)
    }

    /// Context with a seeded random transversal.
    pub fn randomized(group: Arc<FiniteGroup>, sub: Subgroup, seed: u64) -> Result<Arc<Self>> {
        let cosets = CosetSpace::randomized(&group, &sub, seed)?;
        Self::new(group, sub, cosets)
    }

    /// Same context with a replacement abelian view of `H` (used when the
    /// character indexing of `Ĥ` must follow an external enumeration).
    pub fn with_view(group: Arc<FiniteGroup>, sub: Subgroup, cosets: CosetSpace, view: AbelianView) -> Result<Arc<Self>> {
        let base = Self::new(group, sub, cosets)?;
        let base = Arc::try_unwrap(base).expect("fresh context");
        if view.order() != base.sub.order() || !view.elements().iter().all(|&e| base.sub.contains(e)) {
            return Err(Error::ContextMismatch("view does not parametrize H".into()));
        }
        let dual = characters(&view);
        let abelian = match base.abelian {
            Some(side) => {
                let quotient = dual_quotient_iso(&side.view, &side.dual, &view, &dual, &side.annihilator)?;
                Some(AbelianSide { quotient, ..side })
            }
            None => None,
        };
        Ok(Arc::new(ZakContext { view, dual, abelian, ..base }))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }

    pub fn view(&self) -> &AbelianView {
        &self.view
    }

    pub fn dual(&self) -> &DualGroup {
        &self.dual
    }

    pub fn abelian(&self) -> Option<&AbelianSide> {
        self.abelian.as_ref()
    }

    pub fn require_abelian(&self) -> Result<&AbelianSide> {
        self.abelian
            .as_ref()
            .ok_or_else(|| Error::NotAbelian(format!("group {} is not abelian", self.group.label())))
    }

    /// `|Ĥ|`.
    pub fn fiber_count(&self) -> usize {
        self.dual.order()
    }

    /// `|H\G|`.
    pub fn coset_count(&self) -> usize {
        self.cosets.coset_count()
    }

    /// `w_Ĥ`.
    pub fn dual_weight(&self) -> f64 {
        self.dual.weight()
    }

    /// `w_{H\G} = w_G / w_H`.
    pub fn coset_weight(&self) -> f64 {
        self.cosets.weight()
    }

    fn same(self: &Arc<Self>, other: &Arc<Self>) -> Result<()> {
        if Arc::ptr_eq(self, other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch("arrays come from different Zak contexts".into()))
        }
    }

    /// `(Zf)(α)(Hx)`: Fourier transform over `H` of `ξ ↦ f(ξ·γ_c)`.
    pub fn zak(self: &Arc<Self>, f: &[C64]) -> Result<ZakArray> {
        check_function(&self.group, f)?;
        let (rows, cols) = (self.fiber_count(), self.coset_count());
        let mut values = CMat::zeros(rows, cols);
        for (col, &gamma) in self.cosets.transversal().iter().enumerate() {
            let restricted: Vec<C64> = self.view.elements().iter().map(|&xi| f[self.group.mul(xi, gamma)]).collect();
            for (a, v) in self.dual.fourier(&restricted)?.into_iter().enumerate() {
                values[(a, col)] = v;
            }
        }
        Ok(ZakArray { context: Arc::clone(self), values })
    }

    /// Inverse Zak transform: inverse Fourier over `Ĥ` per coset, placed at `ξ·γ_c`.
    pub fn zak_inverse(self: &Arc<Self>, z: &ZakArray) -> Result<Vec<C64>> {
        self.same(&z.context)?;
        let mut f = vec![c(0.0, 0.0); self.group.order()];
        for (col, &gamma) in self.cosets.transversal().iter().enumerate() {
            let column: Vec<C64> = z.values.column(col).iter().copied().collect();
            for (k, v) in self.dual.fourier_inverse(&column)?.into_iter().enumerate() {
                f[self.group.mul(self.view.element(k), gamma)] = v;
            }
        }
        Ok(f)
    }

    /// Zak array with the given values in this context.
    pub fn zak_array(self: &Arc<Self>, values: CMat) -> Result<ZakArray> {
        if values.nrows() != self.fiber_count() || values.ncols() != self.coset_count() {
            return Err(Error::DimensionMismatch {
                expected: self.fiber_count() * self.coset_count(),
                found: values.nrows() * values.ncols(),
            });
        }
        Ok(ZakArray { context: Arc::clone(self), values })
    }

    /// `(𝒯f)(ωH*)(κ) = f̂(β(ωH*)·κ)`.
    pub fn fiberize(self: &Arc<Self>, f: &[C64]) -> Result<FiberArray> {
        let side = self.require_abelian()?;
        check_function(&self.group, f)?;
        let local: Vec<C64> = side.view.elements().iter().map(|&e| f[e]).collect();
        let hat = side.dual.fourier(&local)?;
        let members = side.annihilator.members();
        let values = CMat::from_fn(side.quotient.coset_count(), members.len(), |r, k| {
            hat[side.dual.add(side.quotient.beta(r), members[k])]
        });
        Ok(FiberArray { context: Arc::clone(self), values })
    }

    /// Fiberization computed from the Zak transform: modulate each coset
    /// column by `β(ωH*)(γ_c⁻¹)`, then take the Fourier transform over
    /// `H\G` against `κ ∈ H*`.
    pub fn zak_to_fiber(self: &Arc<Self>, z: &ZakArray) -> Result<FiberArray> {
        self.same(&z.context)?;
        let side = self.require_abelian()?;
        let members = side.annihilator.members();
        let gammas: Vec<usize> = self
            .cosets
            .transversal()
            .iter()
            .map(|&g| side.view.local(self.group.inv(g)).expect("element of G"))
            .collect();
        let w = self.coset_weight();
        let values = CMat::from_fn(side.quotient.coset_count(), members.len(), |r, k| {
            let beta = side.quotient.beta(r);
            let alpha = side.quotient.restriction(r);
            gammas
                .iter()
                .enumerate()
                .map(|(col, &gi)| side.dual.chi(beta, gi) * side.dual.chi(members[k], gi) * z.values[(alpha, col)])
                .sum::<C64>()
                * w
        });
        Ok(FiberArray { context: Arc::clone(self), values })
    }

    /// `[f,g](α) = Σ_c Zf(α⁻¹,c)·conj(Zg(α⁻¹,c))·w_{H\G}`.
    pub fn translation_bracket(self: &Arc<Self>, f: &[C64], g: &[C64]) -> Result<Vec<C64>> {
        let (zf, zg) = (self.zak(f)?, self.zak(g)?);
        Ok(bracket_from_zaks(&zf, &zg))
    }

    /// Bracket read off the fiberization:
    /// `⟨𝒯f(ω⁻¹H*), 𝒯g(ω⁻¹H*)⟩` with weight `w_{H*}` on `H*`, where `ω|_H = α`.
    pub fn fiber_bracket(self: &Arc<Self>, f: &[C64], g: &[C64]) -> Result<Vec<C64>> {
        let side = self.require_abelian()?;
        let (tf, tg) = (self.fiberize(f)?, self.fiberize(g)?);
        let w = side.annihilator.weight();
        Ok((0..self.fiber_count())
            .map(|a| {
                let r = side.quotient.coset_of_restriction(self.dual.neg(a));
                tf.values.row(r).iter().zip(tg.values.row(r).iter()).map(|(x, y)| x * y.conj()).sum::<C64>() * w
            })
            .collect())
    }

    /// `L_y f` for `y ∈ G`.
    pub fn translate(&self, f: &[C64], y: usize) -> Result<Vec<C64>> {
        translate(&self.group, f, y)
    }

    /// `M_ω f` for a character index `ω` of `Ĝ` (abelian `G`).
    pub fn modulate(&self, f: &[C64], omega: usize) -> Result<Vec<C64>> {
        let side = self.require_abelian()?;
        modulate_with(&self.group, &side.view, &side.dual, f, omega)
    }

    /// Value of the character `ω ∈ Ĝ` at the ambient element `x`.
    pub fn g_character(&self, omega: usize, x: usize) -> Result<C64> {
        let side = self.require_abelian()?;
        Ok(side.dual.chi(omega, side.view.local(x).expect("element of G")))
    }

    /// `⟨Zf(α), Zg(α)⟩` in `L²(H\G)`, for every fiber.
    pub fn fiber_inner(&self, zf: &ZakArray, zg: &ZakArray) -> Vec<C64> {
        let w = self.coset_weight();
        (0..self.fiber_count())
            .map(|a| zf.values.row(a).iter().zip(zg.values.row(a).iter()).map(|(x, y)| x * y.conj()).sum::<C64>() * w)
            .collect()
    }
}

fn bracket_from_zaks(zf: &ZakArray, zg: &ZakArray) -> Vec<C64> {
    let ctx = &zf.context;
    let inner = ctx.fiber_inner(zf, zg);
    (0..ctx.fiber_count()).map(|a| inner[ctx.dual.neg(a)]).collect()
}

/// `(L_y f)(x) = f(y⁻¹x)`.
pub fn translate(group: &FiniteGroup, f: &[C64], y: usize) -> Result<Vec<C64>> {
    check_function(group, f)?;
    group.check_index(y)?;
    let yi = group.inv(y);
    Ok((0..group.order()).map(|x| f[group.mul(yi, x)]).collect())
}

/// `(M_ω f)(x) = ω(x)·f(x)` on an abelian group.
pub fn modulate(group: &FiniteGroup, f: &[C64], omega: usize) -> Result<Vec<C64>> {
    let view = AbelianView::of_group(group)?;
    let dual = characters(&view);
    modulate_with(group, &view, &dual, f, omega)
}

fn modulate_with(group: &FiniteGroup, view: &AbelianView, dual: &DualGroup, f: &[C64], omega: usize) -> Result<Vec<C64>> {
    check_function(group, f)?;
    if omega >= dual.order() {
        return Err(Error::IndexOutOfRange { index: omega, size: dual.order() });
    }
    Ok((0..group.order()).map(|x| f[x] * dual.chi(omega, view.local(x).expect("element of G"))).collect())
}

/// Zak transform values: rows `α ∈ Ĥ`, columns cosets of `H\G`.
#[derive(Debug, Clone)]
pub struct ZakArray {
    context: Arc<ZakContext>,
    values: CMat,
}

impl ZakArray {
    pub fn context(&self) -> &Arc<ZakContext> {
        &self.context
    }

    pub fn values(&self) -> &CMat {
        &self.values
    }

    pub fn into_values(self) -> CMat {
        self.values
    }

    /// The fiber `(Zf)(α)` as a vector over cosets.
    pub fn fiber(&self, alpha: usize) -> Vec<C64> {
        self.values.row(alpha).iter().copied().collect()
    }

    /// `Σ |values|²·w_Ĥ·w_{H\G}`.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.context.dual_weight() * self.context.coset_weight()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Fiberization values: rows `Ĝ/H*` cosets (by minimal representative),
/// columns `κ ∈ H*` in increasing index order.
#[derive(Debug, Clone)]
pub struct FiberArray {
    context: Arc<ZakContext>,
    values: CMat,
}

impl FiberArray {
    pub fn context(&self) -> &Arc<ZakContext> {
        &self.context
    }

    pub fn values(&self) -> &CMat {
        &self.values
    }

    pub fn fiber(&self, row: usize) -> Vec<C64> {
        self.values.row(row).iter().copied().collect()
    }

    /// `Σ |values|²·w_{H*}·w_Ĥ` (the quotient `Ĝ/H*` carries the weight of `Ĥ`).
    pub fn norm_sqr(&self) -> f64 {
        let side = self.context.abelian.as_ref().expect("fiber arrays exist only for abelian G");
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * side.annihilator.weight() * self.context.dual_weight()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, norm_sqr};
    use proptest::prelude::*;

    fn ctx(inv: &[usize], gens: &[usize]) -> Arc<ZakContext> {
        let g = Arc::new(FiniteGroup::abelian(inv, 1.0).unwrap());
        let h = Subgroup::generate(&g, gens, 1.0).unwrap();
        ZakContext::minimal(g, h).unwrap()
    }

    fn delta(n: usize, k: usize) -> Vec<C64> {
        (0..n).map(|i| c(if i == k { 1.0 } else { 0.0 }, 0.0)).collect()
    }

    fn vec_strategy(n: usize) -> impl Strategy<Value = Vec<C64>> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| c(a, b)), n)
    }

    #[test]
    fn delta_on_z4() {
        let k = ctx(&[4], &[2]);
        let z = k.zak(&delta(4, 0)).unwrap();
        for a in 0..2 {
            assert!((z.values()[(a, 0)] - c(1.0, 0.0)).norm() < 1e-15);
            assert!(z.values()[(a, 1)].norm() < 1e-15);
        }
        assert!(max_abs_diff(&k.zak_inverse(&z).unwrap(), &delta(4, 0)) < 1e-15);
        let t = k.fiberize(&delta(4, 0)).unwrap();
        assert!(t.values().iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-15));
        let t2 = k.zak_to_fiber(&z).unwrap();
        assert!((t.values() - t2.values()).camax() < 1e-14);
        let br = k.translation_bracket(&delta(4, 0), &delta(4, 0)).unwrap();
        assert!(br.iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn operators() {
        let g = FiniteGroup::abelian(&[4], 1.0).unwrap();
        assert_eq!(translate(&g, &delta(4, 0), 1).unwrap(), delta(4, 1));
        let z2 = FiniteGroup::abelian(&[2], 1.0).unwrap();
        let m = modulate(&z2, &[c(1.0, 0.0), c(1.0, 0.0)], 1).unwrap();
        assert!((m[1] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(modulate(&FiniteGroup::dihedral(3).unwrap(), &delta(6, 0), 0).is_err());
    }

    #[test]
    fn context_mismatch_is_reported() {
        let (a, b) = (ctx(&[4], &[2]), ctx(&[4], &[2]));
        let z = a.zak(&delta(4, 1)).unwrap();
        assert!(matches!(b.zak_inverse(&z), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn nonabelian_zak_is_unitary() {
        let g = Arc::new(FiniteGroup::dihedral(3).unwrap());
        let h = Subgroup::generate(&g, &[1], 1.0).unwrap();
        let k = ZakContext::minimal(g, h).unwrap();
        let f: Vec<C64> = (0..6).map(|i| c(i as f64, 1.0 - i as f64)).collect();
        let z = k.zak(&f).unwrap();
        assert!((z.norm_sqr() - norm_sqr(&f, 1.0)).abs() < 1e-12);
        assert!(k.fiberize(&f).is_err());
    }

    proptest! {
        #[test]
        fn zak_round_trip_and_norm(f in vec_strategy(12)) {
            let k = ctx(&[12], &[4]);
            let z = k.zak(&f).unwrap();
            let n = norm_sqr(&f, 1.0);
            prop_assert!((z.norm_sqr() - n).abs() <= 1e-12 * n.max(1.0));
            prop_assert!(max_abs_diff(&k.zak_inverse(&z).unwrap(), &f) < 1e-12);
            let t = k.fiberize(&f).unwrap();
            prop_assert!((t.norm_sqr() - n).abs() <= 1e-12 * n.max(1.0));
            prop_assert!((k.zak_to_fiber(&z).unwrap().values() - t.values()).camax() < 1e-10);
        }

        #[test]
        fn bracket_paths_agree(f in vec_strategy(8), g in vec_strategy(8)) {
            let k = ctx(&[2, 4], &[2]);
            let a = k.translation_bracket(&f, &g).unwrap();
            let b = k.fiber_bracket(&f, &g).unwrap();
            prop_assert!(max_abs_diff(&a, &b) < 1e-10);
            for &xi in k.subgroup().members() {
                let lhs = crate::linalg::inner(&f, &k.translate(&g, xi).unwrap(), 1.0);
                let rhs: C64 = (0..k.fiber_count())
                    .map(|al| a[al] * k.dual().chi(al, k.view().local(xi).unwrap()).conj())
                    .sum::<C64>() * k.dual_weight();
                prop_assert!((lhs - rhs).norm() < 1e-10);
            }
        }
    }
}
