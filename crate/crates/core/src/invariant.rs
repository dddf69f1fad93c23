//! Range functions and the fiberwise classification of translation
//! invariant (TI) and translation-modulation invariant (TMI) spaces, with
//! direct least-squares oracles.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, column_basis, column_basis_above, projector, from_columns, singular_values, CMat, C64, RANK_TOL};
use crate::zak::{FiberArray, ZakArray, ZakContext};

/// Per-fiber orthonormal bases `Q(α)` whose columns span `J(α)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeFunction {
    fiber_len: usize,
    bases: Vec<CMat>,
    tol_rank: f64,
}

impl RangeFunction {
    /// Range function spanned by the given fiber vectors: `vectors[t][α]`
    /// is the fiber of the `t`-th family member at `α`. The singular value
    /// cutoff is `tol_rank` times the largest singular value over all fibers.
    pub fn from_fiber_vectors(fiber_count: usize, fiber_len: usize, vectors: &[Vec<Vec<C64>>], tol_rank: f64) -> Self {
        let mats: Vec<CMat> = (0..fiber_count)
            .map(|a| {
                let cols: Vec<Vec<C64>> = vectors.iter().map(|v| v[a].clone()).collect();
                from_columns(fiber_len, &cols)
            })
            .collect();
        let smax = mats.iter().filter_map(|m| singular_values(m).first().copied()).fold(0.0, f64::max);
        let bases = mats.iter().map(|m| column_basis_above(m, tol_rank * smax)).collect();
        RangeFunction { fiber_len, bases, tol_rank }
    }

    /// Range function given directly by orthonormal bases.
    pub fn from_bases(fiber_len: usize, bases: Vec<CMat>) -> Result<Self> {
        for q in &bases {
            if q.nrows() != fiber_len {
                return Err(Error::DimensionMismatch { expected: fiber_len, found: q.nrows() });
            }
        }
        Ok(RangeFunction { fiber_len, bases, tol_rank: RANK_TOL })
    }

    pub fn fiber_count(&self) -> usize {
        self.bases.len()
    }

    pub fn fiber_len(&self) -> usize {
        self.fiber_len
    }

    pub fn tol_rank(&self) -> f64 {
        self.tol_rank
    }

    pub fn basis(&self, alpha: usize) -> &CMat {
        &self.bases[alpha]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|q| q.ncols()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.bases.iter().map(|q| q.ncols()).sum()
    }

    /// `P_{J(α)} v`.
    pub fn project_fiber(&self, alpha: usize, v: &[C64]) -> Vec<C64> {
        let q = &self.bases[alpha];
        let coeff = q.adjoint() * CMat::from_column_slice(v.len(), 1, v);
        (q * coeff).iter().copied().collect()
    }

    /// `max_α ‖Q(α)*Q(α) − I‖`.
    pub fn orthonormality_residual(&self) -> f64 {
        self.bases
            .iter()
            .map(|q| (q.adjoint() * q - CMat::identity(q.ncols(), q.ncols())).iter().map(|z| z.norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }

    /// Largest distance between the fiber projectors of two range functions.
    pub fn distance(&self, other: &RangeFunction) -> f64 {
        self.bases
            .iter()
            .zip(&other.bases)
            .map(|(p, q)| crate::linalg::op_norm(&(p * p.adjoint() - q * q.adjoint())))
            .fold(0.0, f64::max)
    }
}

/// `J(α) = span{(Zf)(α) : f ∈ 𝒜}`.
pub fn range_function(ctx: &Arc<ZakContext>, zaks: &[ZakArray]) -> Result<RangeFunction> {
    for z in zaks {
        if !Arc::ptr_eq(z.context(), ctx) {
            return Err(Error::ContextMismatch("Zak array from another context".into()));
        }
    }
    let vectors: Vec<Vec<Vec<C64>>> = zaks.iter().map(|z| (0..ctx.fiber_count()).map(|a| z.fiber(a)).collect()).collect();
    Ok(RangeFunction::from_fiber_vectors(ctx.fiber_count(), ctx.coset_count(), &vectors, RANK_TOL))
}

/// Range function of the family `𝒜`, computed through the Zak transform.
pub fn family_range_function(ctx: &Arc<ZakContext>, family: &[Vec<C64>]) -> Result<RangeFunction> {
    let zaks: Vec<ZakArray> = family.iter().map(|f| ctx.zak(f)).collect::<Result<_>>()?;
    range_function(ctx, &zaks)
}

/// `J̃(ωH*) = span{(𝒯f)(ωH*) : f ∈ 𝒜}` on the `Ĝ/H*` index set.
pub fn fiber_range_function(ctx: &Arc<ZakContext>, fibs: &[FiberArray]) -> Result<RangeFunction> {
    let side = ctx.require_abelian()?;
    for f in fibs {
        if !Arc::ptr_eq(f.context(), ctx) {
            return Err(Error::ContextMismatch("fiber array from another context".into()));
        }
    }
    let rows = side.quotient.coset_count();
    let vectors: Vec<Vec<Vec<C64>>> = fibs.iter().map(|f| (0..rows).map(|r| f.fiber(r)).collect()).collect();
    Ok(RangeFunction::from_fiber_vectors(rows, side.annihilator.order(), &vectors, RANK_TOL))
}

fn check_range(ctx: &ZakContext, j: &RangeFunction) -> Result<()> {
    if j.fiber_count() != ctx.fiber_count() || j.fiber_len() != ctx.coset_count() {
        return Err(Error::ContextMismatch("range function does not live on this Zak domain".into()));
    }
    Ok(())
}

/// Orthogonal projection onto `V_J`: project each Zak fiber onto `J(α)` and invert.
pub fn ti_projection(ctx: &Arc<ZakContext>, g: &[C64], j: &RangeFunction) -> Result<Vec<C64>> {
    check_range(ctx, j)?;
    let z = ctx.zak(g)?;
    let mut values = CMat::zeros(ctx.fiber_count(), ctx.coset_count());
    for a in 0..ctx.fiber_count() {
        for (col, v) in j.project_fiber(a, &z.fiber(a)).into_iter().enumerate() {
            values[(a, col)] = v;
        }
    }
    ctx.zak_inverse(&ctx.zak_array(values)?)
}

fn rel_error(f: &[C64], p: &[C64]) -> (f64, f64) {
    let diff: f64 = f.iter().zip(p).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
    let norm: f64 = f.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    (diff, norm)
}

/// `‖f − P_J f‖ ≤ tol·‖f‖`.
pub fn ti_membership(ctx: &Arc<ZakContext>, f: &[C64], j: &RangeFunction, tol: f64) -> Result<bool> {
    let p = ti_projection(ctx, f, j)?;
    let (diff, norm) = rel_error(f, &p);
    Ok(diff <= tol * norm)
}

/// Columns `L_ξ f_t` for `ξ ∈ H` (in member order), `t` outer.
pub fn translate_matrix(ctx: &ZakContext, family: &[Vec<C64>]) -> Result<CMat> {
    let mut cols = Vec::with_capacity(family.len() * ctx.subgroup().order());
    for f in family {
        for &xi in ctx.subgroup().members() {
            cols.push(ctx.translate(f, xi)?);
        }
    }
    Ok(from_columns(ctx.group().order(), &cols))
}

/// Columns `L_ξ M_κ f_t` for `ξ ∈ H`, `κ ∈ H*`.
pub fn gabor_matrix(ctx: &ZakContext, family: &[Vec<C64>]) -> Result<CMat> {
    let side = ctx.require_abelian()?;
    let mut cols = Vec::new();
    for f in family {
        for &kappa in side.annihilator.members() {
            let m = ctx.modulate(f, kappa)?;
            for &xi in ctx.subgroup().members() {
                cols.push(ctx.translate(&m, xi)?);
            }
        }
    }
    Ok(from_columns(ctx.group().order(), &cols))
}

/// Orthogonal projector `A·A⁺` onto the column space of `a`, singular
/// values below `tol·σ_max` dropped.
pub fn least_squares_projector(a: &CMat, tol: f64) -> CMat {
    let n = a.nrows();
    if a.ncols() == 0 {
        return CMat::zeros(n, n);
    }
    projector(&column_basis(a, tol))
}

/// Numerical rank with the range-function cutoff.
pub fn matrix_rank(a: &CMat, tol: f64) -> usize {
    let sv = singular_values(a);
    let smax = sv.first().copied().unwrap_or(0.0);
    sv.iter().filter(|&&s| s > (tol * smax).max(crate::linalg::RANK_FLOOR)).count()
}

/// Matrix of a linear operator on `ℂ^G` given by its action on basis vectors.
pub fn operator_matrix(n: usize, mut apply: impl FnMut(&[C64]) -> Result<Vec<C64>>) -> Result<CMat> {
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![c(0.0, 0.0); n];
        e[k] = c(1.0, 0.0);
        cols.push(apply(&e)?);
    }
    Ok(from_columns(n, &cols))
}

/// Support `E` of the Zak transforms of a family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TMISupport {
    mask: Vec<Vec<bool>>,
    threshold: f64,
}

impl TMISupport {
    pub fn contains(&self, alpha: usize, coset: usize) -> bool {
        self.mask[alpha][coset]
    }

    pub fn mask(&self) -> &[Vec<bool>] {
        &self.mask
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn size(&self) -> usize {
        self.mask.iter().map(|r| r.iter().filter(|&&b| b).count()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }
}

/// `E = {(α, Hx) : (Zf)(α, Hx) ≠ 0 for some f}`, "nonzero" meaning above
/// `1e-10` times the largest modulus over the family.
pub fn tmi_support(ctx: &Arc<ZakContext>, zaks: &[ZakArray]) -> Result<TMISupport> {
    ctx.require_abelian()?;
    for z in zaks {
        if !Arc::ptr_eq(z.context(), ctx) {
            return Err(Error::ContextMismatch("Zak array from another context".into()));
        }
    }
    let peak = zaks.iter().map(|z| z.max_abs()).fold(0.0, f64::max);
    let threshold = RANK_TOL * peak;
    let mask = (0..ctx.fiber_count())
        .map(|a| {
            (0..ctx.coset_count())
                .map(|col| peak > 0.0 && zaks.iter().any(|z| z.values()[(a, col)].norm() > threshold))
                .collect()
        })
        .collect();
    Ok(TMISupport { mask, threshold })
}

fn check_support(ctx: &ZakContext, e: &TMISupport) -> Result<()> {
    if e.mask.len() != ctx.fiber_count() || e.mask.iter().any(|r| r.len() != ctx.coset_count()) {
        return Err(Error::ContextMismatch("support set does not live on this Zak domain".into()));
    }
    Ok(())
}

/// Projection onto `M_E`: multiply the Zak transform by `1_E`.
pub fn tmi_projection(ctx: &Arc<ZakContext>, g: &[C64], e: &TMISupport) -> Result<Vec<C64>> {
    check_support(ctx, e)?;
    let z = ctx.zak(g)?;
    let values = CMat::from_fn(ctx.fiber_count(), ctx.coset_count(), |a, col| {
        if e.contains(a, col) {
            z.values()[(a, col)]
        } else {
            c(0.0, 0.0)
        }
    });
    ctx.zak_inverse(&ctx.zak_array(values)?)
}

/// `Zg` vanishes off `E`, up to `tol·‖g‖`.
pub fn tmi_membership(ctx: &Arc<ZakContext>, g: &[C64], e: &TMISupport, tol: f64) -> Result<bool> {
    check_support(ctx, e)?;
    let z = ctx.zak(g)?;
    let norm: f64 = g.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let outside = (0..ctx.fiber_count())
        .flat_map(|a| (0..ctx.coset_count()).map(move |col| (a, col)))
        .filter(|&(a, col)| !e.contains(a, col))
        .map(|(a, col)| z.values()[(a, col)].norm())
        .fold(0.0, f64::max);
    Ok(outside <= tol * norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, Subgroup};
    use crate::linalg::{op_norm, projector};

    fn ctx(inv: &[usize], gens: &[usize]) -> Arc<ZakContext> {
        let g = Arc::new(FiniteGroup::abelian(inv, 1.0).unwrap());
        let h = Subgroup::generate(&g, gens, 1.0).unwrap();
        ZakContext::minimal(g, h).unwrap()
    }

    fn delta(n: usize, k: usize) -> Vec<C64> {
        (0..n).map(|i| c(if i == k { 1.0 } else { 0.0 }, 0.0)).collect()
    }

    #[test]
    fn delta_family_on_z4() {
        let k = ctx(&[4], &[2]);
        let j = family_range_function(&k, &[delta(4, 0)]).unwrap();
        assert_eq!(j.dims(), vec![1, 1]);
        let j2 = family_range_function(&k, &[delta(4, 0), delta(4, 0).iter().map(|v| v * 2.0).collect()]).unwrap();
        assert!(j.distance(&j2) < 1e-12);
        assert_eq!(family_range_function(&k, &[]).unwrap().dims(), vec![0, 0]);
        assert!(ti_membership(&k, &delta(4, 2), &j, 1e-8).unwrap());
        assert!(!ti_membership(&k, &delta(4, 1), &j, 1e-8).unwrap());
        assert!(ti_membership(&k, &[c(0.0, 0.0); 4], &j, 1e-8).unwrap());
        let z = k.zak(&delta(4, 0)).unwrap();
        let e = tmi_support(&k, &[z]).unwrap();
        assert_eq!(e.mask(), &[vec![true, false], vec![true, false]]);
        assert!(tmi_support(&k, &[]).unwrap().is_empty());
    }

    #[test]
    fn projectors_agree_with_least_squares() {
        let k = ctx(&[12], &[6]);
        let fam: Vec<Vec<C64>> = (0..2)
            .map(|t| (0..12).map(|x| c(((x * 7 + t * 3) % 5) as f64 - 2.0, ((x * x + t) % 3) as f64)).collect())
            .collect();
        let j = family_range_function(&k, &fam).unwrap();
        let fiberwise = operator_matrix(12, |e| ti_projection(&k, e, &j)).unwrap();
        let a = translate_matrix(&k, &fam).unwrap();
        let direct = least_squares_projector(&a, RANK_TOL);
        assert!(op_norm(&(fiberwise - &direct)) < 1e-9);
        assert_eq!(j.total_dim(), matrix_rank(&a, RANK_TOL));
        assert!(op_norm(&(projector(&crate::linalg::column_basis(&a, RANK_TOL)) - direct)) < 1e-9);
    }

    #[test]
    fn fiber_side_dims_match() {
        let k = ctx(&[12], &[6]);
        let f: Vec<C64> = (0..12).map(|x| c((x % 4) as f64, (x % 3) as f64)).collect();
        let j = family_range_function(&k, std::slice::from_ref(&f)).unwrap();
        let jt = fiber_range_function(&k, &[k.fiberize(&f).unwrap()]).unwrap();
        let side = k.abelian().unwrap();
        for r in 0..jt.fiber_count() {
            assert_eq!(jt.dims()[r], j.dims()[side.quotient.restriction(r)]);
        }
    }
}
