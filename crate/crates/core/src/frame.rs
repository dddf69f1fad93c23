//! Frame and Riesz bounds of translate and Gabor systems, computed both
//! directly (dense eigenproblems on `L²(G)`) and fiberwise (per-fiber Gram
//! spectra in the Zak domain).

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariant::{gabor_matrix, tmi_support, translate_matrix, RangeFunction, TMISupport};
use crate::linalg::{hermitian_eigenvalues, CMat, C64, EIG_CUTOFF};
use crate::zak::{ZakArray, ZakContext};

/// Agreement tolerance for bounds, relative to `max(1, bound)`.
pub const BOUND_TOL: f64 = 1e-8;

/// Extremal eigenvalues of one fiber.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberBound {
    pub fiber: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coset: Option<usize>,
    pub lambda_min_nonzero: f64,
    pub lambda_max: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub is_frame_for_span: bool,
    pub is_riesz_sequence: bool,
    pub is_parseval: bool,
    pub is_orthonormal: bool,
}

/// Direct and fiberwise bounds of one system, with their discrepancy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub mode: String,
    #[serde(rename = "A_direct")]
    pub a_direct: Option<f64>,
    #[serde(rename = "B_direct")]
    pub b_direct: Option<f64>,
    #[serde(rename = "A_fiber")]
    pub a_fiber: Option<f64>,
    #[serde(rename = "B_fiber")]
    pub b_fiber: Option<f64>,
    pub span_dim: usize,
    pub per_fiber: Vec<FiberBound>,
    pub verdicts: Verdicts,
    /// Riesz verdicts of the two sides, when a Riesz test was run.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub riesz_direct: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub riesz_fiber: Option<bool>,
    pub residual: f64,
    pub degenerate: bool,
}

impl FrameReport {
    fn new(mode: &str, direct: Option<(f64, f64)>, fiber: Option<(f64, f64)>, span_dim: usize, per_fiber: Vec<FiberBound>) -> Self {
        let residual = match (direct, fiber) {
            (Some((a, b)), Some((c, d))) => (a - c).abs() + (b - d).abs(),
            (None, None) => 0.0,
            _ => f64::INFINITY,
        };
        let parseval = matches!(direct, Some((a, b)) if (a - 1.0).abs() <= BOUND_TOL && (b - 1.0).abs() <= BOUND_TOL);
        FrameReport {
            mode: mode.to_string(),
            a_direct: direct.map(|d| d.0),
            b_direct: direct.map(|d| d.1),
            a_fiber: fiber.map(|d| d.0),
            b_fiber: fiber.map(|d| d.1),
            span_dim,
            per_fiber,
            verdicts: Verdicts { is_frame_for_span: direct.is_some(), is_parseval: parseval, ..Verdicts::default() },
            riesz_direct: None,
            riesz_fiber: None,
            residual,
            degenerate: direct.is_none(),
        }
    }

    /// Both sides agree within `BOUND_TOL·max(1, bound)`.
    pub fn bounds_agree(&self) -> bool {
        let close = |x: Option<f64>, y: Option<f64>| match (x, y) {
            (Some(x), Some(y)) => (x - y).abs() <= BOUND_TOL * x.abs().max(y.abs()).max(1.0),
            (None, None) => true,
            _ => false,
        };
        close(self.a_direct, self.a_fiber) && close(self.b_direct, self.b_fiber)
    }

    /// Per-fiber table as CSV.
    pub fn per_fiber_csv(&self) -> String {
        let mut out = String::from("fiber,coset,lambda_min_nonzero,lambda_max\n");
        for r in &self.per_fiber {
            let coset = r.coset.map(|c| c.to_string()).unwrap_or_default();
            writeln!(out, "{},{},{:e},{:e}", r.fiber, coset, r.lambda_min_nonzero, r.lambda_max).expect("string write");
        }
        out
    }
}

/// Eigenvalues of `weight·A*A`, the nonzero spectrum of the frame operator
/// of the columns of `a` (analysis sum weighted by `weight`).
pub fn gram_eigenvalues(a: &CMat, weight: f64) -> Vec<f64> {
    if a.ncols() == 0 {
        return Vec::new();
    }
    let gram = if a.ncols() <= a.nrows() { a.adjoint() * a } else { a * a.adjoint() };
    hermitian_eigenvalues(&(gram * C64::new(weight, 0.0)))
}

/// Smallest nonzero and largest eigenvalue, with "nonzero" relative to the
/// largest eigenvalue; also the count of nonzero eigenvalues.
pub fn spectrum_bounds(eigs: &[f64]) -> (Option<(f64, f64)>, usize) {
    let top = eigs.iter().copied().fold(0.0, f64::max);
    let nz: Vec<f64> = eigs.iter().copied().filter(|&l| top > 0.0 && l > EIG_CUTOFF * top).collect();
    if nz.is_empty() {
        return (None, 0);
    }
    (Some((nz.iter().copied().fold(f64::INFINITY, f64::min), top)), nz.len())
}

/// Per-fiber bounds from per-fiber spectra; the cutoff for "nonzero" is
/// relative to the largest eigenvalue over all fibers.
pub fn fiber_spectrum_bounds(spectra: &[Vec<f64>]) -> (Option<(f64, f64)>, Vec<FiberBound>) {
    let top = spectra.iter().flatten().copied().fold(0.0, f64::max);
    let mut table = Vec::new();
    for (fiber, eigs) in spectra.iter().enumerate() {
        let nz: Vec<f64> = eigs.iter().copied().filter(|&l| top > 0.0 && l > EIG_CUTOFF * top).collect();
        if let Some(hi) = nz.iter().copied().reduce(f64::max) {
            let lo = nz.iter().copied().fold(f64::INFINITY, f64::min);
            table.push(FiberBound { fiber, coset: None, lambda_min_nonzero: lo, lambda_max: hi });
        }
    }
    let bounds = if table.is_empty() {
        None
    } else {
        Some((
            table.iter().map(|r| r.lambda_min_nonzero).fold(f64::INFINITY, f64::min),
            table.iter().map(|r| r.lambda_max).fold(0.0, f64::max),
        ))
    };
    (bounds, table)
}

/// Gram matrix `G_{st} = ⟨v_t, v_s⟩·weight` of fiber vectors.
pub fn fiber_gram(vectors: &[Vec<C64>], weight: f64) -> CMat {
    CMat::from_fn(vectors.len(), vectors.len(), |s, t| {
        vectors[t].iter().zip(&vectors[s]).map(|(x, y)| x * y.conj()).sum::<C64>() * weight
    })
}

/// Result of the direct translate oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectBounds {
    pub bounds: Option<(f64, f64)>,
    pub span_dim: usize,
}

/// Frame bounds of `{L_ξ f_t : ξ ∈ H, t}` on its span, with `w_H` on `H`
/// and `w_G` in the inner product.
pub fn direct_translate_bounds(ctx: &ZakContext, family: &[Vec<C64>]) -> Result<DirectBounds> {
    let a = translate_matrix(ctx, family)?;
    let eigs = gram_eigenvalues(&a, ctx.subgroup().weight() * ctx.group().weight());
    let (bounds, span_dim) = spectrum_bounds(&eigs);
    Ok(DirectBounds { bounds, span_dim })
}

fn zak_spectra(ctx: &ZakContext, zaks: &[ZakArray]) -> Vec<Vec<f64>> {
    (0..ctx.fiber_count())
        .map(|a| {
            let vecs: Vec<Vec<C64>> = zaks.iter().map(|z| z.fiber(a)).collect();
            if vecs.is_empty() {
                Vec::new()
            } else {
                hermitian_eigenvalues(&fiber_gram(&vecs, ctx.coset_weight()))
            }
        })
        .collect()
}

/// Fiberwise bounds: extremal nonzero eigenvalues of the Gram matrices
/// `⟨Zf_t(α), Zf_s(α)⟩_{L²(H\G)}`, minimized and maximized over fibers.
pub fn fiber_frame_bounds(
    ctx: &Arc<ZakContext>,
    zaks: &[ZakArray],
    j: &RangeFunction,
) -> Result<(Option<(f64, f64)>, Vec<FiberBound>)> {
    if j.fiber_count() != ctx.fiber_count() {
        return Err(Error::ContextMismatch("range function has a different fiber count".into()));
    }
    for z in zaks {
        if !Arc::ptr_eq(z.context(), ctx) {
            return Err(Error::ContextMismatch("Zak array from another context".into()));
        }
    }
    Ok(fiber_spectrum_bounds(&zak_spectra(ctx, zaks)))
}

/// Direct and fiberwise frame bounds of the translates of a family.
pub fn translate_frame_check(ctx: &Arc<ZakContext>, family: &[Vec<C64>]) -> Result<FrameReport> {
    let direct = direct_translate_bounds(ctx, family)?;
    let zaks: Vec<ZakArray> = family.iter().map(|f| ctx.zak(f)).collect::<Result<_>>()?;
    let j = crate::invariant::range_function(ctx, &zaks)?;
    let (fiber, table) = fiber_frame_bounds(ctx, &zaks, &j)?;
    let mut report = FrameReport::new("translate", direct.bounds, fiber, direct.span_dim, table);
    report.verdicts.is_riesz_sequence = direct.bounds.is_some() && direct.span_dim == family.len() * ctx.subgroup().order();
    report.verdicts.is_orthonormal = report.verdicts.is_riesz_sequence && report.verdicts.is_parseval;
    Ok(report)
}

/// Riesz test of the translates; requires counting measure on `H`.
pub fn riesz_check(ctx: &Arc<ZakContext>, family: &[Vec<C64>]) -> Result<FrameReport> {
    if (ctx.subgroup().weight() - 1.0).abs() > 1e-15 {
        return Err(Error::WeightNormalization(format!(
            "Riesz test needs counting measure on H, got weight {}",
            ctx.subgroup().weight()
        )));
    }
    let a = translate_matrix(ctx, family)?;
    let eigs = gram_eigenvalues_full(&a, ctx.group().weight());
    let direct = riesz_extremes(&[eigs]);
    let zaks: Vec<ZakArray> = family.iter().map(|f| ctx.zak(f)).collect::<Result<_>>()?;
    let spectra = zak_spectra(ctx, &zaks);
    let fiber = riesz_extremes(&spectra);
    Ok(riesz_report("riesz", direct, fiber, a.ncols(), &spectra))
}

/// Eigenvalues of the full Gram matrix `weight·A*A` (one per column).
pub fn gram_eigenvalues_full(a: &CMat, weight: f64) -> Vec<f64> {
    if a.ncols() == 0 {
        return Vec::new();
    }
    hermitian_eigenvalues(&(a.adjoint() * a * C64::new(weight, 0.0)))
}

/// `Some((λ_min, λ_max))` when every spectrum is nonempty and bounded away
/// from zero relative to the overall largest eigenvalue.
pub fn riesz_extremes(spectra: &[Vec<f64>]) -> Option<(f64, f64)> {
    let top = spectra.iter().flatten().copied().fold(0.0, f64::max);
    if top <= 0.0 || spectra.iter().any(|s| s.is_empty()) {
        return None;
    }
    let lo = spectra.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    (lo > EIG_CUTOFF * top).then_some((lo, top))
}

pub(crate) fn riesz_report(
    mode: &str,
    direct: Option<(f64, f64)>,
    fiber: Option<(f64, f64)>,
    count: usize,
    spectra: &[Vec<f64>],
) -> FrameReport {
    let (_, table) = fiber_spectrum_bounds(spectra);
    let mut report = FrameReport::new(mode, direct, fiber, if direct.is_some() { count } else { 0 }, table);
    report.degenerate = count == 0;
    report.verdicts.is_frame_for_span = direct.is_some();
    report.verdicts.is_riesz_sequence = direct.is_some();
    report.verdicts.is_orthonormal = direct.is_some() && report.verdicts.is_parseval;
    report.riesz_direct = Some(direct.is_some());
    report.riesz_fiber = Some(fiber.is_some());
    report
}

/// Gabor system `{L_ξ M_κ f_t : ξ ∈ H, κ ∈ H*}` at critical sampling:
/// direct frame bounds against the extremes of `Σ_t |Zf_t(α, Hx)|²` over
/// the support `E`.
pub fn gabor_frame_check(ctx: &Arc<ZakContext>, family: &[Vec<C64>]) -> Result<(FrameReport, TMISupport)> {
    let side = ctx.require_abelian()?;
    let a = gabor_matrix(ctx, family)?;
    let weight = ctx.subgroup().weight() * side.annihilator.weight() * ctx.group().weight();
    let (direct, span_dim) = spectrum_bounds(&gram_eigenvalues(&a, weight));
    let zaks: Vec<ZakArray> = family.iter().map(|f| ctx.zak(f)).collect::<Result<_>>()?;
    let support = tmi_support(ctx, &zaks)?;
    let mut table = Vec::new();
    for alpha in 0..ctx.fiber_count() {
        for coset in 0..ctx.coset_count() {
            if support.contains(alpha, coset) {
                let s: f64 = zaks.iter().map(|z| z.values()[(alpha, coset)].norm_sqr()).sum();
                table.push(FiberBound { fiber: alpha, coset: Some(coset), lambda_min_nonzero: s, lambda_max: s });
            }
        }
    }
    let fiber = if table.is_empty() {
        None
    } else {
        Some((
            table.iter().map(|r| r.lambda_min_nonzero).fold(f64::INFINITY, f64::min),
            table.iter().map(|r| r.lambda_max).fold(0.0, f64::max),
        ))
    };
    let mut report = FrameReport::new("gabor", direct, fiber, span_dim, table);
    report.verdicts.is_riesz_sequence = direct.is_some() && span_dim == a.ncols();
    report.verdicts.is_orthonormal = report.verdicts.is_riesz_sequence && report.verdicts.is_parseval;
    Ok((report, support))
}

/// Both sides of the Riesz inequality with fiber-dependent coefficients:
/// `lhs = Σ_t Σ_α |c_t(α)|² w_Ĥ`, `mid = Σ_α ‖Σ_t c_t(α)·Zf_t(α)‖² w_Ĥ`.
/// Returns `max(0, A·lhs − mid) + max(0, mid − B·lhs)` with the fiber
/// Riesz bounds `A, B`.
pub fn mixed_riesz_property_check(ctx: &Arc<ZakContext>, family: &[Vec<C64>], coeffs: &[Vec<C64>]) -> Result<f64> {
    if coeffs.len() != family.len() {
        return Err(Error::DimensionMismatch { expected: family.len(), found: coeffs.len() });
    }
    if let Some(bad) = coeffs.iter().find(|c| c.len() != ctx.fiber_count()) {
        return Err(Error::DimensionMismatch { expected: ctx.fiber_count(), found: bad.len() });
    }
    let report = riesz_check(ctx, family)?;
    let (a, b) = match (report.a_fiber, report.b_fiber) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Consistency("family is not a Riesz sequence".into())),
    };
    let zaks: Vec<ZakArray> = family.iter().map(|f| ctx.zak(f)).collect::<Result<_>>()?;
    let wd = ctx.dual_weight();
    let wc = ctx.coset_weight();
    let lhs: f64 = coeffs.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>() * wd;
    let mid: f64 = (0..ctx.fiber_count())
        .map(|alpha| {
            (0..ctx.coset_count())
                .map(|col| {
                    zaks.iter().zip(coeffs).map(|(z, cf)| cf[alpha] * z.values()[(alpha, col)]).sum::<C64>().norm_sqr()
                })
                .sum::<f64>()
                * wc
        })
        .sum::<f64>()
        * wd;
    Ok((a * lhs - mid).max(0.0) + (mid - b * lhs).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, Subgroup};
    use crate::linalg::c;

    fn ctx(inv: &[usize], gens: &[usize]) -> Arc<ZakContext> {
        let g = Arc::new(FiniteGroup::abelian(inv, 1.0).unwrap());
        let h = Subgroup::generate(&g, gens, 1.0).unwrap();
        ZakContext::minimal(g, h).unwrap()
    }

    fn delta(n: usize, k: usize) -> Vec<C64> {
        (0..n).map(|i| c(if i == k { 1.0 } else { 0.0 }, 0.0)).collect()
    }

    #[test]
    fn delta_translates() {
        let k = ctx(&[4], &[2]);
        let d = direct_translate_bounds(&k, &[delta(4, 0)]).unwrap();
        assert_eq!(d.span_dim, 2);
        let (a, b) = d.bounds.unwrap();
        assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
        let dup = direct_translate_bounds(&k, &[delta(4, 0), delta(4, 0)]).unwrap().bounds.unwrap();
        assert!((dup.0 - 2.0).abs() < 1e-12 && (dup.1 - 2.0).abs() < 1e-12);
        assert!(direct_translate_bounds(&k, &[vec![c(0.0, 0.0); 4]]).unwrap().bounds.is_none());
        let r = translate_frame_check(&k, &[delta(4, 0)]).unwrap();
        assert!(r.bounds_agree() && r.verdicts.is_orthonormal);
        assert!(translate_frame_check(&k, &[vec![c(0.0, 0.0); 4]]).unwrap().degenerate);
    }

    #[test]
    fn riesz_cases() {
        let k = ctx(&[4], &[2]);
        let r = riesz_check(&k, &[delta(4, 0)]).unwrap();
        assert_eq!((r.riesz_direct, r.riesz_fiber), (Some(true), Some(true)));
        assert!(r.bounds_agree());
        let r = riesz_check(&k, &[delta(4, 0), delta(4, 2)]).unwrap();
        assert_eq!((r.riesz_direct, r.riesz_fiber), (Some(false), Some(false)));
        let scaled: Vec<C64> = delta(4, 0).iter().map(|v| v * 3.0).collect();
        let r = riesz_check(&k, &[scaled]).unwrap();
        assert!((r.a_direct.unwrap() - 9.0).abs() < 1e-12 && (r.b_fiber.unwrap() - 9.0).abs() < 1e-12);
        let g = Arc::new(FiniteGroup::abelian(&[4], 1.0).unwrap());
        let h = Subgroup::generate(&g, &[2], 2.0).unwrap();
        let heavy = ZakContext::minimal(g, h).unwrap();
        assert!(matches!(riesz_check(&heavy, &[delta(4, 0)]), Err(Error::WeightNormalization(_))));
    }

    #[test]
    fn gabor_two_point() {
        let k = ctx(&[2], &[1]);
        let (r, e) = gabor_frame_check(&k, &[delta(2, 0)]).unwrap();
        assert_eq!(e.size(), 2);
        assert!(r.bounds_agree());
        assert!((r.a_fiber.unwrap() - 1.0).abs() < 1e-12);
        let (r, e) = gabor_frame_check(&k, &[vec![c(0.0, 0.0); 2]]).unwrap();
        assert!(r.degenerate && e.is_empty());
    }

    #[test]
    fn mixed_riesz_zero_coefficients() {
        let k = ctx(&[12], &[6]);
        let f: Vec<C64> = (0..12).map(|x| c(1.0 + x as f64, (x % 5) as f64)).collect();
        let res = mixed_riesz_property_check(&k, std::slice::from_ref(&f), &[vec![c(0.0, 0.0); 2]]).unwrap();
        assert_eq!(res, 0.0);
        let res = mixed_riesz_property_check(&k, &[f], &[vec![c(1.0, 0.0), c(0.0, -2.0)]]).unwrap();
        assert!(res < 1e-9);
    }
}
