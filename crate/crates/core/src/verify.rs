//! Acceptance runner: every criterion evaluated over the seeded instance
//! matrix, one [`CriterionResult`] per criterion.

use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{gabor_frame_check, riesz_check, translate_frame_check, FrameReport};
use crate::group::{weil_check, CosetSpace, FiniteGroup, Subgroup};
use crate::instances::{matrix, random_family, random_vector, rng_for, FamilyStyle, Instance, STYLES};
use crate::invariant::{
    family_range_function, fiber_range_function, gabor_matrix, least_squares_projector, matrix_rank, operator_matrix,
    ti_projection, tmi_projection, tmi_support, translate_matrix,
};
use crate::linalg::{c, column_basis, inner, max_abs_diff, norm_sqr, op_norm, projector, CMat, C64, RANK_TOL};
use crate::rep::{
    bracket, bracket_identity_residual, cyclic_space, embed_as_translation, isometry_t, orthogonal_generators,
    orthonormal_by_bracket, orthonormal_direct, pv_measure, rep_frame_check, rep_from_characters, rep_range_function,
    rep_riesz_check, swap_rep, UnitaryRep,
};
use crate::zak::{ZakArray, ZakContext};

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub instances: usize,
    /// Largest observed residual divided by its tolerance.
    pub worst_ratio: f64,
    #[serde(skip_serializing)]
    pub seconds: f64,
    pub failures: Vec<String>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {:<34} instances={:<4} worst/tol={:.3e} time={:.2}s",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.instances,
            self.worst_ratio,
            self.seconds
        )
    }
}

/// Named subsets of criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    All,
    Zak,
    Frames,
    Classification,
    Rep,
    Micro,
}

impl std::str::FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Scope::All,
            "zak" => Scope::Zak,
            "frames" => Scope::Frames,
            "classification" => Scope::Classification,
            "rep" => Scope::Rep,
            "micro" => Scope::Micro,
            _ => return Err(Error::InvalidParameter(format!("unknown scope {s:?}"))),
        })
    }
}

impl Scope {
    pub fn criteria(self) -> Vec<u8> {
        match self {
            Scope::All => (1..=10).collect(),
            Scope::Zak => vec![1, 2, 3, 4],
            Scope::Frames => vec![5, 6, 7],
            Scope::Classification => vec![8],
            Scope::Rep => vec![9],
            Scope::Micro => vec![10],
        }
    }
}

pub const NAMES: [&str; 10] = [
    "Zak unitarity and inversion",
    "intertwining identities",
    "Zak-fiberization link",
    "Weil identity and factorization",
    "translate frame bounds",
    "translate Riesz bounds",
    "Gabor critical sampling bounds",
    "TI/TMI classification",
    "representation bracket suite",
    "worked micro-cases",
];

pub fn run(scope: Scope, seed: u64) -> Result<Vec<CriterionResult>> {
    scope.criteria().into_iter().map(|id| run_criterion(id, seed)).collect()
}

pub fn run_criterion(id: u8, seed: u64) -> Result<CriterionResult> {
    let start = Instant::now();
    let (tally, minimum) = match id {
        1 => (zak_unitarity(seed)?, 40),
        2 => (intertwining(seed)?, 40),
        3 => (zak_fiber_link(seed)?, 20),
        4 => (weil(seed)?, 40),
        5 => (frames(seed)?, 200),
        6 => (riesz(seed)?, 40),
        7 => (gabor(seed)?, 50),
        8 => (classification(seed)?, 50),
        9 => (reps(seed)?, 100),
        10 => (micro()?, 1),
        _ => return Err(Error::InvalidParameter(format!("no criterion {id}"))),
    };
    let mut failures = tally.failures;
    failures.sort();
    if tally.count < minimum {
        failures.push(format!("only {} instances, need {minimum}", tally.count));
    }
    failures.truncate(20);
    Ok(CriterionResult {
        id,
        name: NAMES[(id - 1) as usize].to_string(),
        passed: failures.is_empty(),
        instances: tally.count,
        worst_ratio: tally.worst,
        seconds: start.elapsed().as_secs_f64(),
        failures,
    })
}

/// Running record of checks: instance count, worst residual/tolerance
/// ratio, and messages for failed checks.
#[derive(Debug, Default)]
struct Tally {
    count: usize,
    worst: f64,
    failures: Vec<String>,
}

impl Tally {
    fn instance() -> Self {
        Tally { count: 1, ..Tally::default() }
    }

    fn check(&mut self, label: &str, what: &str, value: f64, tol: f64) {
        let ratio = value / tol;
        if ratio.is_nan() || ratio > 1.0 {
            self.failures.push(format!("{label}: {what} = {value:e} > {tol:e}"));
        }
        if !ratio.is_nan() {
            self.worst = self.worst.max(ratio);
        } else {
            self.worst = f64::INFINITY;
        }
    }

    fn require(&mut self, label: &str, what: &str, ok: bool) {
        if !ok {
            self.failures.push(format!("{label}: {what}"));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.count += other.count;
        self.worst = self.worst.max(other.worst);
        self.failures.extend(other.failures);
        self
    }
}

fn fold(parts: Vec<Result<Tally>>) -> Result<Tally> {
    let mut acc = Tally::default();
    for p in parts {
        acc = acc.merge(p?);
    }
    Ok(acc)
}

fn over_matrix(seed: u64, salt: u64, f: impl Fn(&Instance, &mut rand_chacha::ChaCha8Rng) -> Result<Tally> + Sync) -> Result<Tally> {
    let parts: Vec<Result<Tally>> = matrix()
        .par_iter()
        .enumerate()
        .map(|(i, inst)| f(inst, &mut rng_for(seed, salt * 1000 + i as u64)))
        .collect();
    fold(parts)
}

fn norm(f: &[C64], w: f64) -> f64 {
    norm_sqr(f, w).sqrt()
}

fn zak_unitarity(seed: u64) -> Result<Tally> {
    over_matrix(seed, 1, |inst, rng| {
        let ctx = inst.context()?;
        let mut t = Tally::instance();
        let w = inst.group.weight();
        for _ in 0..100 {
            let f = random_vector(inst.group.order(), rng);
            let nf = norm(&f, w);
            let z = ctx.zak(&f)?;
            t.check(&inst.label, "Zak norm error", (z.norm_sqr().sqrt() - nf).abs() / nf, 1e-12);
            let back = ctx.zak_inverse(&z)?;
            let peak = f.iter().map(|v| v.norm()).fold(0.0, f64::max);
            t.check(&inst.label, "round trip error", max_abs_diff(&back, &f) / peak, 1e-12);
            if ctx.abelian().is_some() {
                let tf = ctx.fiberize(&f)?;
                t.check(&inst.label, "fiberization norm error", (tf.norm_sqr().sqrt() - nf).abs() / nf, 1e-12);
            }
        }
        Ok(t)
    })
}

fn scale(z: &ZakArray) -> f64 {
    z.max_abs().max(1.0)
}

fn intertwining(seed: u64) -> Result<Tally> {
    over_matrix(seed, 2, |inst, rng| {
        let ctx = inst.context()?;
        let mut t = Tally::instance();
        let f = random_vector(inst.group.order(), rng);
        let zf = ctx.zak(&f)?;
        let s = scale(&zf);
        let (nf, nc) = (ctx.fiber_count(), ctx.coset_count());
        for &xi in inst.sub.members() {
            let k = ctx.view().local(xi).expect("member of H");
            let moved = ctx.zak(&ctx.translate(&f, xi)?)?;
            let expect = CMat::from_fn(nf, nc, |a, col| ctx.dual().chi(a, k).conj() * zf.values()[(a, col)]);
            t.check(&inst.label, "Zak translation", (moved.values() - expect).camax() / s, 1e-12);
        }
        if let Some(side) = ctx.abelian() {
            let tf = ctx.fiberize(&f)?;
            let st = tf.values().camax().max(1.0);
            for &xi in inst.sub.members() {
                let moved = ctx.fiberize(&ctx.translate(&f, xi)?)?;
                let expect = CMat::from_fn(tf.values().nrows(), tf.values().ncols(), |r, k| {
                    ctx.g_character(side.quotient.beta(r), xi).expect("abelian").conj() * tf.values()[(r, k)]
                });
                t.check(&inst.label, "fiberization translation", (moved.values() - expect).camax() / st, 1e-12);
            }
            for &kappa in side.annihilator.members() {
                let modulated = ctx.modulate(&f, kappa)?;
                let kg: Vec<C64> =
                    ctx.cosets().transversal().iter().map(|&g| ctx.g_character(kappa, g).expect("abelian")).collect();
                for &xi in inst.sub.members() {
                    let k = ctx.view().local(xi).expect("member of H");
                    let moved = ctx.zak(&ctx.translate(&modulated, xi)?)?;
                    let expect = CMat::from_fn(nf, nc, |a, col| ctx.dual().chi(a, k).conj() * kg[col] * zf.values()[(a, col)]);
                    t.check(&inst.label, "Zak translation-modulation", (moved.values() - expect).camax() / s, 1e-12);
                }
            }
        }
        Ok(t)
    })
}

fn zak_fiber_link(seed: u64) -> Result<Tally> {
    over_matrix(seed, 3, |inst, rng| {
        if !inst.group.is_abelian() {
            return Ok(Tally::default());
        }
        let ctx = inst.context()?;
        let mut t = Tally::instance();
        for _ in 0..100 {
            let f = random_vector(inst.group.order(), rng);
            let a = ctx.zak_to_fiber(&ctx.zak(&f)?)?;
            let b = ctx.fiberize(&f)?;
            t.check(&inst.label, "Zak-to-fiber difference", (a.values() - b.values()).camax(), 1e-10);
        }
        Ok(t)
    })
}

fn weil(seed: u64) -> Result<Tally> {
    over_matrix(seed, 4, |inst, rng| {
        let mut t = Tally::instance();
        let minimal = CosetSpace::minimal(&inst.group, &inst.sub)?;
        let random = CosetSpace::randomized(&inst.group, &inst.sub, rng.random())?;
        t.require(&inst.label, "factorization with minimal transversal", minimal.factorization_holds(&inst.group));
        t.require(&inst.label, "factorization with random transversal", random.factorization_holds(&inst.group));
        t.require(
            &inst.label,
            "coset count",
            minimal.coset_count() * inst.sub.order() == inst.group.order(),
        );
        for _ in 0..100 {
            let f = random_vector(inst.group.order(), rng);
            t.check(&inst.label, "Weil residual", weil_check(&inst.group, &inst.sub, &minimal, &f)?, 1e-12);
        }
        Ok(t)
    })
}

fn bound_gap(x: Option<f64>, y: Option<f64>) -> f64 {
    match (x, y) {
        (Some(x), Some(y)) => (x - y).abs() / x.abs().max(y.abs()).max(1.0),
        (None, None) => 0.0,
        _ => f64::INFINITY,
    }
}

fn report_gap(r: &FrameReport) -> f64 {
    bound_gap(r.a_direct, r.a_fiber).max(bound_gap(r.b_direct, r.b_fiber))
}

fn frames(seed: u64) -> Result<Tally> {
    let items: Vec<(usize, FamilyStyle)> =
        (0..matrix().len()).flat_map(|i| STYLES.iter().copied().chain([FamilyStyle::Generic]).map(move |s| (i, s))).collect();
    let m = matrix();
    let parts: Vec<Result<Tally>> = items
        .par_iter()
        .enumerate()
        .map(|(n, &(i, style))| {
            let inst = &m[i];
            let mut rng = rng_for(seed, 5000 + n as u64);
            let ctx = inst.context()?;
            let size = rng.random_range(1..=4);
            let family = random_family(&ctx, size, style, &mut rng)?;
            let mut t = Tally::instance();
            let label = format!("{} {:?} x{}", inst.label, style, size);
            let r = translate_frame_check(&ctx, &family)?;
            t.check(&label, "frame bound gap", report_gap(&r), 1e-8);
            let alt = translate_frame_check(&inst.randomized_context(rng.random())?, &family)?;
            t.check(&label, "transversal dependence", bound_gap(r.a_fiber, alt.a_fiber).max(bound_gap(r.b_fiber, alt.b_fiber)), 1e-9);
            Ok(t)
        })
        .collect();
    fold(parts)
}

fn riesz(seed: u64) -> Result<Tally> {
    let m = matrix();
    let parts: Vec<Result<Tally>> = m
        .par_iter()
        .enumerate()
        .map(|(i, inst)| {
            let inst = inst.counting();
            let mut rng = rng_for(seed, 6000 + i as u64);
            let ctx = inst.context()?;
            let mut t = Tally::instance();
            let cosets = ctx.coset_count();
            let size = rng.random_range(1..=cosets.min(4));
            let family = random_family(&ctx, size, FamilyStyle::Generic, &mut rng)?;
            let r = riesz_check(&ctx, &family)?;
            let label = format!("{} independent x{size}", inst.label);
            t.require(&label, "verdicts differ", r.riesz_direct == r.riesz_fiber);
            t.require(&label, "generic family rejected", r.riesz_direct == Some(true));
            t.check(&label, "Riesz bound gap", report_gap(&r), 1e-8);
            let g = random_vector(inst.group.order(), &mut rng);
            let h = random_vector(inst.group.order(), &mut rng);
            let xi = *inst.sub.members().last().expect("nonempty");
            let dependent: Vec<(&str, Vec<Vec<C64>>)> = vec![
                ("translate duplicate", vec![g.clone(), ctx.translate(&g, xi)?]),
                ("linear combination", vec![g.clone(), h.clone(), g.iter().zip(&h).map(|(a, b)| a + b * 2.0).collect()]),
                ("zero member", vec![g.clone(), vec![c(0.0, 0.0); inst.group.order()]]),
                ("too many members", (0..=cosets).map(|_| random_vector(inst.group.order(), &mut rng)).collect()),
            ];
            for (kind, fam) in dependent {
                let r = riesz_check(&ctx, &fam)?;
                let label = format!("{} {kind}", inst.label);
                t.require(&label, "dependent system accepted", r.riesz_direct == Some(false) && r.riesz_fiber == Some(false));
            }
            Ok(t)
        })
        .collect();
    fold(parts)
}

fn gabor(seed: u64) -> Result<Tally> {
    let m: Vec<Instance> = matrix().into_iter().filter(|i| i.group.is_abelian()).collect();
    let items: Vec<(usize, FamilyStyle)> = (0..m.len()).flat_map(|i| STYLES.iter().map(move |&s| (i, s))).collect();
    let parts: Vec<Result<Tally>> = items
        .par_iter()
        .enumerate()
        .map(|(n, &(i, style))| {
            let inst = &m[i];
            let mut rng = rng_for(seed, 7000 + n as u64);
            let ctx = inst.context()?;
            let size = rng.random_range(1..=3);
            let family = random_family(&ctx, size, style, &mut rng)?;
            let (r, _) = gabor_frame_check(&ctx, &family)?;
            let mut t = Tally::instance();
            t.check(&format!("{} {:?} x{size}", inst.label, style), "Gabor bound gap", report_gap(&r), 1e-8);
            Ok(t)
        })
        .collect();
    fold(parts)
}

fn classification(seed: u64) -> Result<Tally> {
    let styles = [FamilyStyle::Generic, FamilyStyle::FiberMasked];
    let m = matrix();
    let items: Vec<(usize, FamilyStyle)> = (0..m.len()).flat_map(|i| styles.iter().map(move |&s| (i, s))).collect();
    let parts: Vec<Result<Tally>> = items
        .par_iter()
        .enumerate()
        .map(|(n, &(i, style))| {
            let inst = &m[i];
            let mut rng = rng_for(seed, 8000 + n as u64);
            let ctx = inst.context()?;
            let size = rng.random_range(1..=3);
            let family = random_family(&ctx, size, style, &mut rng)?;
            let label = format!("{} {:?} x{size}", inst.label, style);
            let mut t = Tally::instance();
            let order = inst.group.order();
            let j = family_range_function(&ctx, &family)?;
            let fiberwise = operator_matrix(order, |e| ti_projection(&ctx, e, &j))?;
            let a = translate_matrix(&ctx, &family)?;
            let direct = least_squares_projector(&a, RANK_TOL);
            t.check(&label, "TI projector gap", op_norm(&(&fiberwise - &direct)), 1e-9);
            t.require(&label, "dimension identity", j.total_dim() == matrix_rank(&a, RANK_TOL));
            let alt = inst.randomized_context(rng.random())?;
            let j_alt = family_range_function(&alt, &family)?;
            let alt_proj = operator_matrix(order, |e| ti_projection(&alt, e, &j_alt))?;
            t.require(&label, "transversal changes dimension", j_alt.total_dim() == j.total_dim());
            t.check(&label, "transversal changes projector", op_norm(&(&alt_proj - &fiberwise)), 1e-9);
            let xi = *inst.sub.members().last().expect("nonempty");
            let mut grown = family.clone();
            grown.push(ctx.translate(&family[0], xi)?);
            let j_grown = family_range_function(&ctx, &grown)?;
            t.require(&label, "translate changes dims", j_grown.dims() == j.dims());
            t.check(&label, "translate changes range", j_grown.distance(&j), 1e-9);
            if let Some(side) = ctx.abelian() {
                let fibs = family.iter().map(|f| ctx.fiberize(f)).collect::<Result<Vec<_>>>()?;
                let jt = fiber_range_function(&ctx, &fibs)?;
                let same = (0..jt.fiber_count()).all(|r| jt.dims()[r] == j.dims()[side.quotient.restriction(r)]);
                t.require(&label, "fiberization dims differ from Zak dims", same);
                let zaks = family.iter().map(|f| ctx.zak(f)).collect::<Result<Vec<_>>>()?;
                let e = tmi_support(&ctx, &zaks)?;
                let tmi = operator_matrix(order, |v| tmi_projection(&ctx, v, &e))?;
                let direct = least_squares_projector(&gabor_matrix(&ctx, &family)?, RANK_TOL);
                t.check(&label, "TMI projector gap", op_norm(&(tmi - direct)), 1e-9);
            }
            Ok(t)
        })
        .collect();
    fold(parts)
}

/// Abelian groups for the representation suite, all of order at most 24.
fn rep_groups() -> Vec<Arc<FiniteGroup>> {
    let mut out: Vec<Arc<FiniteGroup>> = [
        vec![2],
        vec![3],
        vec![4],
        vec![2, 2],
        vec![5],
        vec![6],
        vec![2, 4],
        vec![8],
        vec![3, 3],
        vec![2, 2, 2],
        vec![12],
        vec![2, 6],
        vec![4, 4],
        vec![3, 5],
        vec![2, 2, 3],
        vec![24],
        vec![2, 12],
    ]
    .iter()
    .map(|inv| Arc::new(FiniteGroup::abelian(inv, 1.0).expect("valid")))
    .collect();
    // the rotation-reflection Klein subgroup of D4 written as a raw table
    let d4 = FiniteGroup::dihedral(4).expect("valid");
    let klein = [0usize, 2, 4, 6];
    let pos = |x: usize| klein.iter().position(|&k| k == x).expect("closed");
    let table: Vec<Vec<usize>> = klein.iter().map(|&a| klein.iter().map(|&b| pos(d4.mul(a, b))).collect()).collect();
    out.push(Arc::new(FiniteGroup::from_table(&table, 1.0, "klein").expect("valid table")));
    out
}

fn unit(v: Vec<C64>) -> Vec<C64> {
    let n = norm(&v, 1.0);
    v.into_iter().map(|x| x / n).collect()
}

fn rep_instance(n: usize, seed: u64, groups: &[Arc<FiniteGroup>]) -> Result<Tally> {
    let mut rng = rng_for(seed, 9000 + n as u64);
    let group = Arc::clone(&groups[n % groups.len()]);
    let order = group.order();
    let full = n % 3 == 0;
    let mut chars: Vec<usize> = if full && order <= 16 { (0..order).collect() } else { Vec::new() };
    let extra = rng.random_range(if chars.is_empty() { 1 } else { 0 }..=16 - chars.len().min(16));
    chars.extend((0..extra).map(|_| rng.random_range(0..order)));
    chars.truncate(16);
    let rep = rep_from_characters(Arc::clone(&group), &chars, &mut rng)?;
    let d = rep.dim();
    let label = format!("rep #{n} |G|={order} d={d}");
    let mut t = Tally::instance();
    t.check(&label, "spectral calculus", rep.spectral_residual(), 1e-10);

    for _ in 0..10 {
        let phi = unit(random_vector(d, &mut rng));
        let psi = unit(random_vector(d, &mut rng));
        t.check(&label, "bracket identity", bracket_identity_residual(&rep, &phi, &psi)?, 1e-10);
        bracket_properties(&rep, &phi, &psi, &mut rng, &label, &mut t)?;
    }

    let gens = orthogonal_generators(&rep)?;
    let (cross, defect) = gens.validity(&rep)?;
    t.check(&label, "generator cross brackets", cross, 1e-10);
    t.require(&label, "generator dimension count", defect == 0);
    for _ in 0..3 {
        let phi = random_vector(d, &mut rng);
        let tp = isometry_t(&rep, &gens, &phi)?;
        let nt: f64 = tp.iter().map(|v| v.norm_sqr()).sum::<f64>() * rep.dual().weight();
        t.check(&label, "T isometry", (nt - norm_sqr(&phi, 1.0)).abs() / norm_sqr(&phi, 1.0), 1e-10);
        for x in 0..order {
            let moved = isometry_t(&rep, &gens, &rep.apply(x, &phi))?;
            let expect = CMat::from_fn(tp.nrows(), tp.ncols(), |a, i| rep.chi(a, x) * tp[(a, i)]);
            t.check(&label, "T intertwining", (moved - expect).camax(), 1e-10);
        }
    }
    for (i, theta) in gens.thetas().iter().enumerate() {
        let tt = isometry_t(&rep, &gens, theta)?;
        let worst = (0..tt.nrows())
            .flat_map(|a| (0..tt.ncols()).map(move |k| (a, k)))
            .map(|(a, k)| {
                let target = if k == i && gens.in_support(i, a) { gens.self_bracket(i, a).sqrt() } else { 0.0 };
                (tt[(a, k)] - c(target, 0.0)).norm()
            })
            .fold(0.0, f64::max);
        t.check(&label, "T of a generator", worst, 1e-10);
    }
    let gen_range = rep_range_function(&rep, &gens, gens.thetas())?;
    t.require(&label, "J0 dims", gen_range.j.dims() == gen_range.j0.dims());

    let size = rng.random_range(1..=3);
    let family: Vec<Vec<C64>> = (0..size).map(|_| random_vector(d, &mut rng)).collect();
    let range = rep_range_function(&rep, &gens, &family)?;
    let orbit: Vec<Vec<C64>> = family.iter().flat_map(|phi| (0..order).map(|x| rep.apply(x, phi)).collect::<Vec<_>>()).collect();
    let p_direct = least_squares_projector(&crate::linalg::from_columns(d, &orbit), RANK_TOL);
    for k in 0..4 {
        let v = if k % 2 == 0 {
            let mut v = vec![c(0.0, 0.0); d];
            for o in &orbit {
                let w = crate::instances::gaussian(&mut rng);
                for (a, b) in v.iter_mut().zip(o) {
                    *a += w * b;
                }
            }
            v
        } else {
            random_vector(d, &mut rng)
        };
        let nv = norm(&v, 1.0);
        let tv = isometry_t(&rep, &gens, &v)?;
        let fiber_out = (0..tv.nrows())
            .map(|a| {
                let row: Vec<C64> = tv.row(a).iter().copied().collect();
                let p = range.j.project_fiber(a, &row);
                row.iter().zip(&p).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>()
            })
            .sum::<f64>()
            * rep.dual().weight();
        let pv: Vec<C64> = (&p_direct * CMat::from_column_slice(d, 1, &v)).iter().copied().collect();
        let direct_out = max_abs_diff(&pv, &v);
        let fiber_in = fiber_out.sqrt() <= 1e-9 * nv;
        let direct_in = direct_out <= 1e-9 * nv;
        t.require(&label, "membership verdicts differ", fiber_in == direct_in);
    }

    let r = rep_frame_check(&rep, &gens, &family)?;
    t.check(&label, "orbit frame gap", report_gap(&r), 1e-8);
    let r = rep_riesz_check(&rep, &gens, &family)?;
    t.require(&label, "orbit Riesz verdicts differ", r.riesz_direct == r.riesz_fiber);
    t.check(&label, "orbit Riesz gap", report_gap(&r), 1e-8);

    orthonormality(&rep, &gens, &family, &label, &mut t)?;

    let all: Vec<usize> = (0..rep.dual().order()).collect();
    let p_all = pv_measure(&rep, &gens, &range.j, &all)?;
    t.check(&label, "P(all) is the projector onto V_J", op_norm(&(&p_all - &p_direct)), 1e-9);
    let subset: Vec<usize> = all.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
    let pe = pv_measure(&rep, &gens, &range.j, &subset)?;
    t.check(&label, "P(E) idempotent", (&pe * &pe - &pe).camax(), 1e-10);
    t.check(&label, "P(E) self-adjoint", (&pe - pe.adjoint()).camax(), 1e-10);
    let atoms: Vec<CMat> = all.iter().map(|&a| pv_measure(&rep, &gens, &range.j, &[a])).collect::<Result<_>>()?;
    for x in 0..order {
        let mut sum = CMat::zeros(d, d);
        for (a, p) in atoms.iter().enumerate() {
            sum += p * rep.chi(a, x);
        }
        t.check(&label, "spectral reconstruction on V_J", (rep.matrix(x) * &p_all - sum).camax(), 1e-10);
    }

    let emb = embed_as_translation(&rep, &gens)?;
    t.check(&label, "embedding intertwining", emb.intertwining_residual, 1e-9);
    t.check(&label, "embedding isometry", emb.isometry_residual, 1e-9);
    t.require(&label, "embedded image is not translation invariant", emb.invariant);
    Ok(t)
}

fn bracket_properties(
    rep: &UnitaryRep,
    phi: &[C64],
    psi: &[C64],
    rng: &mut impl Rng,
    label: &str,
    t: &mut Tally,
) -> Result<()> {
    let d = rep.dim();
    let pp = bracket(rep, phi, phi)?;
    let worst_neg = pp.iter().map(|v| (-v.re).max(0.0).max(v.im.abs())).fold(0.0, f64::max);
    t.check(label, "self bracket positivity", worst_neg, 1e-12);
    let chi = unit(random_vector(d, rng));
    let (a, b) = (crate::instances::gaussian(rng), crate::instances::gaussian(rng));
    let mix: Vec<C64> = phi.iter().zip(&chi).map(|(x, y)| a * x + b * y).collect();
    let lhs = bracket(rep, &mix, psi)?;
    let (b1, b2) = (bracket(rep, phi, psi)?, bracket(rep, &chi, psi)?);
    let rhs: Vec<C64> = b1.iter().zip(&b2).map(|(x, y)| a * x + b * y).collect();
    t.check(label, "sesquilinearity", max_abs_diff(&lhs, &rhs), 1e-12);
    let swapped: Vec<C64> = bracket(rep, psi, phi)?.iter().map(|v| v.conj()).collect();
    t.check(label, "Hermitian symmetry", max_abs_diff(&b1, &swapped), 1e-12);
    let qq = bracket(rep, psi, psi)?;
    let cs = (0..b1.len()).map(|k| b1[k].norm() - (pp[k].re.max(0.0) * qq[k].re.max(0.0)).sqrt()).fold(0.0, f64::max);
    t.check(label, "Cauchy-Schwarz excess", cs.max(0.0), 1e-10);
    for x in 0..rep.group().order() {
        let moved = bracket(rep, &rep.apply(x, phi), psi)?;
        let expect: Vec<C64> = b1.iter().enumerate().map(|(al, v)| rep.chi(al, x) * v).collect();
        t.check(label, "bracket modulation", max_abs_diff(&moved, &expect), 1e-10);
    }
    // orthogonality criterion: remove the component of phi in the cyclic space of psi
    let cyc = cyclic_space(rep, psi);
    let proj: Vec<C64> = (projector(&cyc) * CMat::from_column_slice(d, 1, phi)).iter().copied().collect();
    for candidate in [phi.iter().zip(&proj).map(|(x, y)| x - y).collect::<Vec<_>>(), phi.to_vec()] {
        let zero_bracket = bracket(rep, &candidate, psi)?.iter().all(|v| v.norm() <= 1e-9);
        let orth = (0..rep.group().order()).all(|x| inner(&candidate, &rep.apply(x, psi), 1.0).norm() <= 1e-9);
        t.require(label, "orthogonality criterion", zero_bracket == orth);
    }
    Ok(())
}

fn orthonormality(
    rep: &UnitaryRep,
    gens: &crate::rep::GeneratorFamily,
    family: &[Vec<C64>],
    label: &str,
    t: &mut Tally,
) -> Result<()> {
    let _ = gens;
    let d = rep.dim();
    let ranges: Vec<CMat> = (0..rep.dual().order()).map(|a| column_basis(rep.projection(a), RANK_TOL)).collect();
    let m = ranges.iter().map(|q| q.ncols()).min().unwrap_or(0);
    let mut cases: Vec<Vec<Vec<C64>>> = vec![family.to_vec()];
    if m > 0 {
        let s = rep.dual().weight().sqrt();
        let ortho: Vec<Vec<C64>> = (0..m)
            .map(|i| {
                let mut v = vec![c(0.0, 0.0); d];
                for q in &ranges {
                    for (r, slot) in v.iter_mut().enumerate() {
                        *slot += q[(r, i)] * s;
                    }
                }
                v
            })
            .collect();
        let mut bent = ortho.clone();
        for v in bent[0].iter_mut() {
            *v *= 1.1;
        }
        t.require(label, "constructed orthonormal family", orthonormal_by_bracket(rep, &ortho)?);
        cases.push(ortho);
        cases.push(bent);
    }
    for fam in cases {
        t.require(label, "orthonormality criterion", orthonormal_by_bracket(rep, &fam)? == orthonormal_direct(rep, &fam)?);
    }
    Ok(())
}

fn reps(seed: u64) -> Result<Tally> {
    let groups = rep_groups();
    let parts: Vec<Result<Tally>> = (0..120usize).into_par_iter().map(|n| rep_instance(n, seed, &groups)).collect();
    fold(parts)
}

/// Hand values for the smallest cases.
fn micro() -> Result<Tally> {
    let mut t = Tally::instance();
    let g = Arc::new(FiniteGroup::abelian(&[4], 1.0)?);
    let h = Subgroup::generate(&g, &[2], 1.0)?;
    let ctx = ZakContext::minimal(g, h)?;
    let delta: Vec<C64> = (0..4).map(|i| c(if i == 0 { 1.0 } else { 0.0 }, 0.0)).collect();
    let z = ctx.zak(&delta)?;
    let expect = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    t.check("Z4 delta", "Zak values", (z.values() - expect).camax(), 1e-12);
    let fib = ctx.fiberize(&delta)?;
    t.check("Z4 delta", "fiberization values", fib.values().map(|v| v - c(1.0, 0.0)).camax(), 1e-12);
    let r = translate_frame_check(&ctx, std::slice::from_ref(&delta))?;
    let bounds = [r.a_direct, r.b_direct, r.a_fiber, r.b_fiber];
    t.check("Z4 delta", "frame bounds", bounds.iter().map(|b| b.map_or(f64::INFINITY, |b| (b - 1.0).abs())).fold(0.0, f64::max), 1e-12);
    t.require("Z4 delta", "span dimension", r.span_dim == 2);
    let r = translate_frame_check(&ctx, &[delta.clone(), delta.clone()])?;
    t.check("Z4 delta twice", "frame bounds", (r.a_direct.unwrap_or(0.0) - 2.0).abs().max((r.b_fiber.unwrap_or(0.0) - 2.0).abs()), 1e-12);
    let br = ctx.translation_bracket(&delta, &delta)?;
    t.check("Z4 delta", "bracket", br.iter().map(|v| (v - c(1.0, 0.0)).norm()).fold(0.0, f64::max), 1e-12);

    let rep = swap_rep();
    let table = [[[1.0, 1.0], [1.0, -1.0]], [[1.0, -1.0], [1.0, 1.0]]];
    let e = |k: usize| (0..2).map(|i| c(if i == k { 1.0 } else { 0.0 }, 0.0)).collect::<Vec<_>>();
    for i in 0..2 {
        for j in 0..2 {
            let b = bracket(&rep, &e(i), &e(j))?;
            let gap = (0..2).map(|a| (b[a] - c(table[i][j][a], 0.0)).norm()).fold(0.0, f64::max);
            t.check("swap", "bracket table", gap, 1e-12);
        }
    }
    let gens = orthogonal_generators(&rep)?;
    let r = rep_frame_check(&rep, &gens, &[e(0)])?;
    t.check("swap e1", "orbit bounds", (r.a_direct.unwrap_or(0.0) - 1.0).abs().max((r.b_fiber.unwrap_or(0.0) - 1.0).abs()), 1e-12);
    let r = rep_frame_check(&rep, &gens, &[vec![c(1.0, 0.0), c(1.0, 0.0)]])?;
    t.check("swap e1+e2", "orbit bounds", (r.a_direct.unwrap_or(0.0) - 4.0).abs().max((r.b_fiber.unwrap_or(0.0) - 4.0).abs()), 1e-12);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn micro_criterion_passes() {
        let r = run_criterion(10, 1).unwrap();
        assert!(r.passed, "{:?}", r.failures);
    }

    #[test]
    fn scopes_parse() {
        assert_eq!("frames".parse::<Scope>().unwrap().criteria(), vec![5, 6, 7]);
        assert!("nope".parse::<Scope>().is_err());
    }
}
