//! Unitary representations of finite abelian groups: spectral projections,
//! the bracket, orthogonal generators, the fiber isometry `T`, orbit
//! frame/Riesz bounds, and the embedding of a representation as
//! translations on `L²(𝒢 × ℤ_K)`.

use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::frame::{fiber_gram, fiber_spectrum_bounds, gram_eigenvalues, riesz_extremes, riesz_report, spectrum_bounds, FrameReport};
use crate::group::{encode, CosetSpace, FiniteGroup, Subgroup};
use crate::harmonic::{characters, AbelianView, DualGroup};
use crate::invariant::{family_range_function, ti_membership, RangeFunction};
use crate::linalg::{c, column_basis, from_columns, hermitian_eigenvalues, op_norm, projector, CMat, C64, RANK_TOL};
use crate::zak::ZakContext;

/// Tolerance for relations, spectral identities and bracket identities.
pub const REP_TOL: f64 = 1e-10;

fn max_entry(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn matvec(m: &CMat, v: &[C64]) -> Vec<C64> {
    (m * CMat::from_column_slice(v.len(), 1, v)).iter().copied().collect()
}

/// `π : 𝒢 → U(d)` with its spectral projectors `P_α`.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    group: Arc<FiniteGroup>,
    view: AbelianView,
    dual: DualGroup,
    dim: usize,
    matrices: Vec<CMat>,
    projections: Vec<CMat>,
}

impl UnitaryRep {
    /// Representation determined by the images of the basis elements of
    /// the group's abelian view (the unit tuples).
    pub fn from_generator_images(group: Arc<FiniteGroup>, images: Vec<CMat>) -> Result<Self> {
        let view = AbelianView::of_group(&group)?;
        let inv = view.invariants().to_vec();
        if images.len() != inv.len() {
            return Err(Error::DimensionMismatch { expected: inv.len(), found: images.len() });
        }
        let dim = images.first().map(|m| m.nrows()).unwrap_or(0);
        for m in &images {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.nrows().max(m.ncols()) });
            }
        }
        let id = CMat::identity(dim, dim);
        let mut worst: f64 = 0.0;
        for (u, &n) in images.iter().zip(&inv) {
            worst = worst.max(max_entry(&(u.adjoint() * u - &id)));
            let mut p = id.clone();
            for _ in 0..n {
                p = &p * u;
            }
            worst = worst.max(max_entry(&(p - &id)));
        }
        for a in &images {
            for b in &images {
                worst = worst.max(max_entry(&(a * b - b * a)));
            }
        }
        if worst > REP_TOL {
            return Err(Error::RelationViolation(worst));
        }
        let mut matrices = vec![CMat::zeros(dim, dim); group.order()];
        let mut local = vec![id.clone()];
        for (u, &n) in images.iter().zip(&inv) {
            let mut next = Vec::with_capacity(local.len() * n);
            for m in &local {
                let mut x = m.clone();
                for _ in 0..n {
                    next.push(x.clone());
                    x = &x * u;
                }
            }
            local = next;
        }
        for (k, m) in local.into_iter().enumerate() {
            matrices[view.element(k)] = m;
        }
        Self::assemble(group, view, matrices)
    }

    /// Representation given by one matrix per group element.
    pub fn from_element_matrices(group: Arc<FiniteGroup>, matrices: Vec<CMat>) -> Result<Self> {
        let view = AbelianView::of_group(&group)?;
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch { expected: group.order(), found: matrices.len() });
        }
        let dim = matrices[0].nrows();
        if matrices.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: 0 });
        }
        Self::assemble(group, view, matrices)
    }

    fn assemble(group: Arc<FiniteGroup>, view: AbelianView, matrices: Vec<CMat>) -> Result<Self> {
        let dim = matrices[0].nrows();
        let n = group.order();
        let id = CMat::identity(dim, dim);
        let mut worst = max_entry(&(&matrices[group.identity()] - &id));
        for x in 0..n {
            worst = worst.max(max_entry(&(matrices[x].adjoint() * &matrices[x] - &id)));
            for y in 0..n {
                worst = worst.max(max_entry(&(&matrices[x] * &matrices[y] - &matrices[group.mul(x, y)])));
            }
        }
        if worst > REP_TOL {
            return Err(Error::RelationViolation(worst));
        }
        let dual = characters(&view);
        let projections = (0..dual.order())
            .map(|a| {
                let mut p = CMat::zeros(dim, dim);
                for k in 0..n {
                    p += &matrices[view.element(k)] * dual.chi(a, k).conj();
                }
                p / C64::new(n as f64, 0.0)
            })
            .collect();
        Ok(UnitaryRep { group, view, dual, dim, matrices, projections })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn view(&self) -> &AbelianView {
        &self.view
    }

    pub fn dual(&self) -> &DualGroup {
        &self.dual
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `π(x)` for an ambient element index.
    pub fn matrix(&self, x: usize) -> &CMat {
        &self.matrices[x]
    }

    pub fn projection(&self, alpha: usize) -> &CMat {
        &self.projections[alpha]
    }

    pub fn apply(&self, x: usize, v: &[C64]) -> Vec<C64> {
        matvec(&self.matrices[x], v)
    }

    /// Character of `α` at the ambient element `x`.
    pub fn chi(&self, alpha: usize, x: usize) -> C64 {
        self.dual.chi(alpha, self.view.local(x).expect("element of the group"))
    }

    /// Largest deviation in `Σ P_α = I`, `P_α P_β = δ P_α` and
    /// `π(x) = Σ χ_α(x) P_α`.
    pub fn spectral_residual(&self) -> f64 {
        let d = self.dim;
        let mut sum = CMat::zeros(d, d);
        let mut worst: f64 = 0.0;
        for (a, p) in self.projections.iter().enumerate() {
            sum += p;
            for (b, q) in self.projections.iter().enumerate() {
                let target = if a == b { p.clone() } else { CMat::zeros(d, d) };
                worst = worst.max(max_entry(&(p * q - target)));
            }
        }
        worst = worst.max(max_entry(&(sum - CMat::identity(d, d))));
        for x in 0..self.group.order() {
            let mut m = CMat::zeros(d, d);
            for (a, p) in self.projections.iter().enumerate() {
                m += p * self.chi(a, x);
            }
            worst = worst.max(max_entry(&(m - &self.matrices[x])));
        }
        worst
    }

    fn check_vec(&self, v: &[C64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(())
    }
}

/// The swap action of `ℤ₂` on `ℂ²`.
pub fn swap_rep() -> UnitaryRep {
    let group = Arc::new(FiniteGroup::abelian(&[2], 1.0).expect("valid group"));
    let swap = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    UnitaryRep::from_generator_images(group, vec![swap]).expect("swap is an involution")
}

/// Haar-random unitary from the QR factorization of a complex Gaussian matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> CMat {
    let g = CMat::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im)
    });
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..dim {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// `π(x) = Q·diag(χ_{a_1}(x), …, χ_{a_d}(x))·Q*` for the given characters
/// and a random unitary `Q`.
pub fn rep_from_characters(group: Arc<FiniteGroup>, chars: &[usize], rng: &mut impl Rng) -> Result<UnitaryRep> {
    let view = AbelianView::of_group(&group)?;
    let dual = characters(&view);
    if let Some(&bad) = chars.iter().find(|&&a| a >= dual.order()) {
        return Err(Error::IndexOutOfRange { index: bad, size: dual.order() });
    }
    let q = random_unitary(chars.len(), rng);
    let images = view
        .basis()
        .iter()
        .map(|&b| {
            let k = view.local(b).expect("basis element");
            let diag = CMat::from_fn(chars.len(), chars.len(), |i, j| if i == j { dual.chi(chars[i], k) } else { c(0.0, 0.0) });
            &q * diag * q.adjoint()
        })
        .collect();
    UnitaryRep::from_generator_images(group, images)
}

/// Random representation of dimension `dim` with uniformly drawn characters.
pub fn random_rep(group: Arc<FiniteGroup>, dim: usize, rng: &mut impl Rng) -> Result<UnitaryRep> {
    let n = group.order();
    let chars: Vec<usize> = (0..dim).map(|_| rng.random_range(0..n)).collect();
    rep_from_characters(group, &chars, rng)
}

/// `[φ,ψ](α) = ⟨P_α φ, ψ⟩ / w_𝒢̂`.
pub fn bracket(rep: &UnitaryRep, phi: &[C64], psi: &[C64]) -> Result<Vec<C64>> {
    rep.check_vec(phi)?;
    rep.check_vec(psi)?;
    let w = rep.dual.weight();
    Ok(rep
        .projections
        .iter()
        .map(|p| matvec(p, phi).iter().zip(psi).map(|(a, b)| a * b.conj()).sum::<C64>() / w)
        .collect())
}

/// `max_x |⟨φ, π(x)ψ⟩ − Σ_α [φ,ψ](α)·conj(α(x))·w_𝒢̂|`.
pub fn bracket_identity_residual(rep: &UnitaryRep, phi: &[C64], psi: &[C64]) -> Result<f64> {
    let br = bracket(rep, phi, psi)?;
    let w = rep.dual.weight();
    Ok((0..rep.group.order())
        .map(|x| {
            let lhs: C64 = phi.iter().zip(rep.apply(x, psi)).map(|(a, b)| a * b.conj()).sum();
            let rhs: C64 = br.iter().enumerate().map(|(a, v)| v * rep.chi(a, x).conj()).sum::<C64>() * w;
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max))
}

/// Orthonormal basis of the cyclic space `⟨θ⟩ = span{π(x)θ} = span{P_α θ}`.
pub fn cyclic_space(rep: &UnitaryRep, theta: &[C64]) -> CMat {
    let cols: Vec<Vec<C64>> = rep.projections.iter().map(|p| matvec(p, theta)).collect();
    column_basis(&from_columns(rep.dim, &cols), RANK_TOL)
}

/// Vectors with mutually orthogonal cyclic spaces summing to `ℂ^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorFamily {
    thetas: Vec<Vec<C64>>,
    self_brackets: Vec<Vec<f64>>,
    supports: Vec<Vec<bool>>,
}

/// Ω threshold relative to `max_α [θ_i,θ_i](α)`.
pub const TOL_POS: f64 = 1e-12;

impl GeneratorFamily {
    pub fn new(rep: &UnitaryRep, thetas: Vec<Vec<C64>>) -> Result<Self> {
        let mut self_brackets = Vec::with_capacity(thetas.len());
        let mut supports = Vec::with_capacity(thetas.len());
        for th in &thetas {
            let b: Vec<f64> = bracket(rep, th, th)?.iter().map(|v| v.re).collect();
            let top = b.iter().copied().fold(0.0, f64::max);
            supports.push(b.iter().map(|&v| v > TOL_POS * top && v > 0.0).collect());
            self_brackets.push(b);
        }
        Ok(GeneratorFamily { thetas, self_brackets, supports })
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn thetas(&self) -> &[Vec<C64>] {
        &self.thetas
    }

    /// `[θ_i,θ_i](α)`.
    pub fn self_bracket(&self, i: usize, alpha: usize) -> f64 {
        self.self_brackets[i][alpha]
    }

    /// `α ∈ Ω_i`.
    pub fn in_support(&self, i: usize, alpha: usize) -> bool {
        self.supports[i][alpha]
    }

    /// Largest `|[θ_i,θ_j](α)|` over `i ≠ j` and the dimension defect
    /// `|Σ dim⟨θ_i⟩ − d|`.
    pub fn validity(&self, rep: &UnitaryRep) -> Result<(f64, usize)> {
        let mut cross: f64 = 0.0;
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j {
                    let b = bracket(rep, &self.thetas[i], &self.thetas[j])?;
                    cross = cross.max(b.iter().map(|v| v.norm()).fold(0.0, f64::max));
                }
            }
        }
        let total: usize = self.thetas.iter().map(|t| cyclic_space(rep, t).ncols()).sum();
        Ok((cross, total.abs_diff(rep.dim)))
    }
}

/// Greedy orthogonal generators: walk the standard basis, keep the part of
/// `e_k` orthogonal to the cyclic spaces collected so far when its norm
/// exceeds `1e-10`.
pub fn orthogonal_generators(rep: &UnitaryRep) -> Result<GeneratorFamily> {
    let d = rep.dim;
    let mut collected = CMat::zeros(d, 0);
    let mut thetas = Vec::new();
    for k in 0..d {
        if collected.ncols() == d {
            break;
        }
        let mut e = vec![c(0.0, 0.0); d];
        e[k] = c(1.0, 0.0);
        let proj = matvec(&projector(&collected), &e);
        let r: Vec<C64> = e.iter().zip(&proj).map(|(a, b)| a - b).collect();
        if r.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt() <= REP_TOL {
            continue;
        }
        let cyc = cyclic_space(rep, &r);
        let mut cols: Vec<Vec<C64>> = (0..collected.ncols()).map(|j| collected.column(j).iter().copied().collect()).collect();
        cols.extend((0..cyc.ncols()).map(|j| cyc.column(j).iter().copied().collect::<Vec<_>>()));
        collected = column_basis(&from_columns(d, &cols), RANK_TOL);
        thetas.push(r);
    }
    GeneratorFamily::new(rep, thetas)
}

/// `T(φ)(α)_i = 1_{Ω_i}(α)·[φ,θ_i](α) / [θ_i,θ_i](α)^{1/2}`; rows `α`, columns `i`.
pub fn isometry_t(rep: &UnitaryRep, gens: &GeneratorFamily, phi: &[C64]) -> Result<CMat> {
    let n = rep.dual.order();
    let mut t = CMat::zeros(n, gens.len());
    for (i, theta) in gens.thetas.iter().enumerate() {
        let br = bracket(rep, phi, theta)?;
        for a in 0..n {
            if gens.in_support(i, a) {
                t[(a, i)] = br[a] / gens.self_bracket(i, a).sqrt();
            }
        }
    }
    Ok(t)
}

/// `T` as a Euclidean isometry `ℂ^d → ℂ^{|𝒢̂|·K}` (row `α·K + i`), scaled
/// by `w_𝒢̂^{1/2}`.
pub fn t_matrix(rep: &UnitaryRep, gens: &GeneratorFamily) -> Result<CMat> {
    let k = gens.len();
    let n = rep.dual.order();
    let s = rep.dual.weight().sqrt();
    let mut m = CMat::zeros(n * k, rep.dim);
    for col in 0..rep.dim {
        let mut e = vec![c(0.0, 0.0); rep.dim];
        e[col] = c(1.0, 0.0);
        let t = isometry_t(rep, gens, &e)?;
        for a in 0..n {
            for i in 0..k {
                m[(a * k + i, col)] = t[(a, i)] * s;
            }
        }
    }
    Ok(m)
}

fn t_fibers(rep: &UnitaryRep, gens: &GeneratorFamily, family: &[Vec<C64>]) -> Result<Vec<Vec<Vec<C64>>>> {
    family
        .iter()
        .map(|phi| {
            let t = isometry_t(rep, gens, phi)?;
            Ok((0..t.nrows()).map(|a| t.row(a).iter().copied().collect()).collect())
        })
        .collect()
}

/// `J(α) = span{Tφ(α)}` together with `J₀(α) = span{1_{Ω_i}(α)·δ_i}`.
#[derive(Debug, Clone)]
pub struct RepRange {
    pub j: RangeFunction,
    pub j0: RangeFunction,
    /// `max_α ‖(I − P_{J₀(α)}) Q_J(α)‖`.
    pub containment: f64,
}

pub fn rep_range_function(rep: &UnitaryRep, gens: &GeneratorFamily, family: &[Vec<C64>]) -> Result<RepRange> {
    let n = rep.dual.order();
    let k = gens.len();
    let fibers = t_fibers(rep, gens, family)?;
    let j = RangeFunction::from_fiber_vectors(n, k, &fibers, RANK_TOL);
    let j0_bases: Vec<CMat> = (0..n)
        .map(|a| {
            let idx: Vec<usize> = (0..k).filter(|&i| gens.in_support(i, a)).collect();
            CMat::from_fn(k, idx.len(), |r, col| if r == idx[col] { c(1.0, 0.0) } else { c(0.0, 0.0) })
        })
        .collect();
    let j0 = RangeFunction::from_bases(k, j0_bases)?;
    let containment = (0..n)
        .map(|a| {
            let q = j.basis(a);
            let p0 = projector(j0.basis(a));
            op_norm(&(q - p0 * q))
        })
        .fold(0.0, f64::max);
    if containment > 1e-9 {
        return Err(Error::Consistency(format!("range function leaves J0 by {containment:e}")));
    }
    Ok(RepRange { j, j0, containment })
}

fn orbit_matrix(rep: &UnitaryRep, family: &[Vec<C64>]) -> Result<CMat> {
    let mut cols = Vec::with_capacity(family.len() * rep.group.order());
    for phi in family {
        rep.check_vec(phi)?;
        for x in 0..rep.group.order() {
            cols.push(rep.apply(x, phi));
        }
    }
    Ok(from_columns(rep.dim, &cols))
}

fn t_spectra(fibers: &[Vec<Vec<C64>>], n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|a| {
            let vecs: Vec<Vec<C64>> = fibers.iter().map(|f| f[a].clone()).collect();
            if vecs.is_empty() {
                Vec::new()
            } else {
                hermitian_eigenvalues(&fiber_gram(&vecs, 1.0))
            }
        })
        .collect()
}

/// Frame bounds of the orbit `{π(x)φ_t}` on its span (weight `w_𝒢` per
/// `x`) against the per-fiber spectra of `Σ_t |Tφ_t(α)⟩⟨Tφ_t(α)|`.
pub fn rep_frame_check(rep: &UnitaryRep, gens: &GeneratorFamily, family: &[Vec<C64>]) -> Result<FrameReport> {
    let a = orbit_matrix(rep, family)?;
    let (direct, span_dim) = spectrum_bounds(&gram_eigenvalues(&a, rep.group.weight()));
    let fibers = t_fibers(rep, gens, family)?;
    let (fiber, table) = fiber_spectrum_bounds(&t_spectra(&fibers, rep.dual.order()));
    let residual = match (direct, fiber) {
        (Some((a0, b0)), Some((a1, b1))) => (a0 - a1).abs() + (b0 - b1).abs(),
        (None, None) => 0.0,
        _ => f64::INFINITY,
    };
    let parseval = matches!(direct, Some((x, y)) if (x - 1.0).abs() <= 1e-8 && (y - 1.0).abs() <= 1e-8);
    let riesz = direct.is_some() && span_dim == a.ncols();
    Ok(FrameReport {
        mode: "orbit".into(),
        a_direct: direct.map(|d| d.0),
        b_direct: direct.map(|d| d.1),
        a_fiber: fiber.map(|d| d.0),
        b_fiber: fiber.map(|d| d.1),
        span_dim,
        per_fiber: table,
        verdicts: crate::frame::Verdicts {
            is_frame_for_span: direct.is_some(),
            is_riesz_sequence: riesz,
            is_parseval: parseval,
            is_orthonormal: riesz && parseval,
        },
        riesz_direct: None,
        riesz_fiber: None,
        residual,
        degenerate: direct.is_none(),
    })
}

fn require_counting(rep: &UnitaryRep) -> Result<()> {
    if (rep.group.weight() - 1.0).abs() > 1e-15 {
        return Err(Error::WeightNormalization(format!(
            "orbit Riesz test needs counting measure on the group, got weight {}",
            rep.group.weight()
        )));
    }
    Ok(())
}

/// Riesz test of the orbit `{π(x)φ_t}` against per-fiber Riesz tests of `{Tφ_t(α)}`.
pub fn rep_riesz_check(rep: &UnitaryRep, gens: &GeneratorFamily, family: &[Vec<C64>]) -> Result<FrameReport> {
    require_counting(rep)?;
    let a = orbit_matrix(rep, family)?;
    let direct = riesz_extremes(&[crate::frame::gram_eigenvalues_full(&a, 1.0)]);
    let fibers = t_fibers(rep, gens, family)?;
    let spectra = t_spectra(&fibers, rep.dual.order());
    let fiber = riesz_extremes(&spectra);
    Ok(riesz_report("orbit-riesz", direct, fiber, a.ncols(), &spectra))
}

/// `[φ_i,φ_j](α) = δ_ij` for every `α`, within `REP_TOL`.
pub fn orthonormal_by_bracket(rep: &UnitaryRep, family: &[Vec<C64>]) -> Result<bool> {
    for (i, phi) in family.iter().enumerate() {
        for (j, psi) in family.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            if bracket(rep, phi, psi)?.iter().any(|v| (v - c(target, 0.0)).norm() > REP_TOL) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The orbit `{π(x)φ_t}` is orthonormal, within `REP_TOL`.
pub fn orthonormal_direct(rep: &UnitaryRep, family: &[Vec<C64>]) -> Result<bool> {
    require_counting(rep)?;
    let a = orbit_matrix(rep, family)?;
    let gram = a.adjoint() * &a;
    Ok(max_entry(&(gram - CMat::identity(a.ncols(), a.ncols()))) <= REP_TOL)
}

/// `P(E) = T_w*·diag(1_E(α)·P_{J(α)})·T_w`, the spectral measure of `E`
/// restricted to `V_J`.
pub fn pv_measure(rep: &UnitaryRep, gens: &GeneratorFamily, j: &RangeFunction, set: &[usize]) -> Result<CMat> {
    let n = rep.dual.order();
    let k = gens.len();
    if j.fiber_count() != n || j.fiber_len() != k {
        return Err(Error::ContextMismatch("range function does not match the generator family".into()));
    }
    if let Some(&bad) = set.iter().find(|&&a| a >= n) {
        return Err(Error::IndexOutOfRange { index: bad, size: n });
    }
    let tw = t_matrix(rep, gens)?;
    let mut d = CMat::zeros(n * k, n * k);
    for &a in set {
        let p = projector(j.basis(a));
        d.view_mut((a * k, a * k), (k, k)).copy_from(&p);
    }
    Ok(tw.adjoint() * d * tw)
}

/// Isometry of `ℂ^d` onto a translation invariant subspace of
/// `L²(𝒢 × ℤ_K)` intertwining `π` with translation by `𝒢 × {0}`.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub context: Arc<ZakContext>,
    /// Columns are the images of the standard basis vectors.
    pub matrix: CMat,
    /// `max_{x,k} ‖embed(π(x)e_k) − L_{(x,0)} embed(e_k)‖`.
    pub intertwining_residual: f64,
    /// `max_k |‖embed(e_k)‖ − 1|` and off-diagonal inner products.
    pub isometry_residual: f64,
    /// Translates of the image stay in the image, and its dimension is `d`.
    pub invariant: bool,
}

impl Embedding {
    pub fn group(&self) -> &FiniteGroup {
        self.context.group()
    }

    /// Ambient element `(x, 0)` for `x ∈ 𝒢`.
    pub fn lift(&self, rep: &UnitaryRep, x: usize) -> usize {
        let k = self.context.coset_count();
        rep.view.local(x).expect("element of the group") * k
    }

    pub fn embed(&self, phi: &[C64]) -> Vec<C64> {
        matvec(&self.matrix, phi)
    }
}

/// Embeds `π` as left translation on a `𝒢`-TI subspace of `L²(𝒢 × ℤ_K)`,
/// `K` the number of generators: `φ ↦ Z⁻¹(α ↦ Tφ(α⁻¹))` for the subgroup
/// `𝒢 × {0}`, whose cosets are indexed by `ℤ_K`.
pub fn embed_as_translation(rep: &UnitaryRep, gens: &GeneratorFamily) -> Result<Embedding> {
    let inv = rep.view.invariants().to_vec();
    let k = gens.len().max(1);
    let mut radices = inv.clone();
    if k > 1 {
        radices.push(k);
    }
    if radices.is_empty() {
        return Err(Error::InvalidParameter("trivial group cannot be embedded".into()));
    }
    let weight = rep.group.weight();
    let big = Arc::new(FiniteGroup::abelian(&radices, weight)?);
    let n = rep.view.order();
    let members: Vec<usize> = (0..n).map(|l| l * k).collect();
    let sub = Subgroup::from_members(&big, &members, weight)?;
    let basis: Vec<usize> = (0..inv.len())
        .map(|j| {
            let mut d = vec![0; inv.len()];
            d[j] = 1;
            encode(&d, &inv) * k
        })
        .collect();
    let view = AbelianView::from_basis(&big, &sub, &inv, &basis)?;
    let cosets = CosetSpace::minimal(&big, &sub)?;
    let ctx = ZakContext::with_view(big, sub, cosets, view)?;
    let dual = ctx.dual().clone();
    let mut cols = Vec::with_capacity(rep.dim);
    for col in 0..rep.dim {
        let mut e = vec![c(0.0, 0.0); rep.dim];
        e[col] = c(1.0, 0.0);
        let t = isometry_t(rep, gens, &e)?;
        let values = CMat::from_fn(n, k, |a, i| if i < t.ncols() { t[(dual.neg(a), i)] } else { c(0.0, 0.0) });
        cols.push(ctx.zak_inverse(&ctx.zak_array(values)?)?);
    }
    let matrix = from_columns(ctx.group().order(), &cols);
    let mut emb = Embedding { context: ctx, matrix, intertwining_residual: 0.0, isometry_residual: 0.0, invariant: false };
    let gram = emb.matrix.adjoint() * &emb.matrix * C64::new(weight, 0.0);
    emb.isometry_residual = max_entry(&(gram - CMat::identity(rep.dim, rep.dim)));
    let mut worst: f64 = 0.0;
    for x in 0..rep.group.order() {
        let y = emb.lift(rep, x);
        for col in 0..rep.dim {
            let moved = emb.embed(&rep.matrices[x].column(col).iter().copied().collect::<Vec<_>>());
            let translated = emb.context.translate(&cols[col], y)?;
            let diff = moved.iter().zip(&translated).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
            worst = worst.max(diff);
        }
    }
    emb.intertwining_residual = worst;
    let j = family_range_function(&emb.context, &cols)?;
    let mut invariant = j.total_dim() == rep.dim;
    'outer: for &h in emb.context.subgroup().members() {
        for f in &cols {
            if !ti_membership(&emb.context, &emb.context.translate(f, h)?, &j, 1e-8)? {
                invariant = false;
                break 'outer;
            }
        }
    }
    emb.invariant = invariant;
    Ok(emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(d: usize, k: usize) -> Vec<C64> {
        (0..d).map(|i| c(if i == k { 1.0 } else { 0.0 }, 0.0)).collect()
    }

    #[test]
    fn swap_bracket_table() {
        let rep = swap_rep();
        assert!(rep.spectral_residual() < 1e-12);
        let expect = [[[1.0, 1.0], [1.0, -1.0]], [[1.0, -1.0], [1.0, 1.0]]];
        for i in 0..2 {
            for j in 0..2 {
                let b = bracket(&rep, &e(2, i), &e(2, j)).unwrap();
                for a in 0..2 {
                    assert!((b[a] - c(expect[i][j][a], 0.0)).norm() < 1e-12);
                }
            }
        }
        let p0 = rep.projection(0);
        assert!((p0[(0, 1)] - c(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn swap_generators_and_t() {
        let rep = swap_rep();
        let gens = orthogonal_generators(&rep).unwrap();
        assert_eq!(gens.thetas(), &[e(2, 0)]);
        let t = isometry_t(&rep, &gens, &e(2, 0)).unwrap();
        assert!((t[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12 && (t[(1, 0)] - c(1.0, 0.0)).norm() < 1e-12);
        let r = rep_frame_check(&rep, &gens, &[e(2, 0)]).unwrap();
        assert!(r.residual < 1e-12 && (r.a_direct.unwrap() - 1.0).abs() < 1e-12);
        let r = rep_frame_check(&rep, &gens, &[vec![c(1.0, 0.0), c(1.0, 0.0)]]).unwrap();
        assert!((r.a_direct.unwrap() - 4.0).abs() < 1e-12 && (r.b_fiber.unwrap() - 4.0).abs() < 1e-12);
        let r = rep_riesz_check(&rep, &gens, &[e(2, 0), e(2, 1)]).unwrap();
        assert_eq!((r.riesz_direct, r.riesz_fiber), (Some(false), Some(false)));
        assert!(orthonormal_by_bracket(&rep, &[e(2, 0)]).unwrap());
        assert!(orthonormal_direct(&rep, &[e(2, 0)]).unwrap());
    }

    #[test]
    fn trivial_rep_has_two_generators() {
        let g = Arc::new(FiniteGroup::abelian(&[2], 1.0).unwrap());
        let rep = UnitaryRep::from_generator_images(g, vec![CMat::identity(2, 2)]).unwrap();
        let gens = orthogonal_generators(&rep).unwrap();
        assert_eq!(gens.len(), 2);
        let emb = embed_as_translation(&rep, &gens).unwrap();
        assert_eq!(emb.group().order(), 4);
        assert!(emb.intertwining_residual < 1e-9 && emb.invariant);
    }

    #[test]
    fn swap_embeds_onto_z2() {
        let rep = swap_rep();
        let gens = orthogonal_generators(&rep).unwrap();
        let emb = embed_as_translation(&rep, &gens).unwrap();
        assert_eq!(emb.group().order(), 2);
        assert!(emb.intertwining_residual < 1e-9 && emb.isometry_residual < 1e-12 && emb.invariant);
        assert!(emb.embed(&[c(0.0, 0.0); 2]).iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn pv_measure_of_swap() {
        let rep = swap_rep();
        let gens = orthogonal_generators(&rep).unwrap();
        let range = rep_range_function(&rep, &gens, gens.thetas()).unwrap();
        let p = pv_measure(&rep, &gens, &range.j, &[0]).unwrap();
        assert!((p - rep.projection(0)).iter().all(|v| v.norm() < 1e-12));
        let full = pv_measure(&rep, &gens, &range.j, &[0, 1]).unwrap();
        assert!((full - CMat::identity(2, 2)).iter().all(|v| v.norm() < 1e-12));
        assert!(pv_measure(&rep, &gens, &range.j, &[]).unwrap().iter().all(|v| v.norm() == 0.0));
        assert!(pv_measure(&rep, &gens, &range.j, &[2]).is_err());
    }

    #[test]
    fn noncommuting_images_are_rejected() {
        let g = Arc::new(FiniteGroup::abelian(&[2, 2], 1.0).unwrap());
        let x = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let z = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        assert!(matches!(UnitaryRep::from_generator_images(g, vec![x, z]), Err(Error::RelationViolation(_))));
    }

    #[test]
    fn random_reps_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Arc::new(FiniteGroup::abelian(&[2, 3], 1.0).unwrap());
        let rep = random_rep(g, 5, &mut rng).unwrap();
        assert!(rep.spectral_residual() < 1e-10);
        let gens = orthogonal_generators(&rep).unwrap();
        let (cross, defect) = gens.validity(&rep).unwrap();
        assert!(cross < 1e-10 && defect == 0);
        let phi = vec![c(0.3, -1.0), c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 1.0), c(0.5, 0.5)];
        assert!(bracket_identity_residual(&rep, &phi, &e(5, 2)).unwrap() < 1e-10);
        let emb = embed_as_translation(&rep, &gens).unwrap();
        assert!(emb.intertwining_residual < 1e-9 && emb.invariant);
    }
}
