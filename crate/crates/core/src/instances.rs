//! Seeded test instances: the `(G, H)` matrix used by the acceptance
//! runner, random functions and families, and the finite analogues of the
//! classical Zak transforms.
//!
//! Every random draw comes from `ChaCha8Rng::seed_from_u64(seed)` with the
//! stream set to the instance number, so a `(seed, instance)` pair always
//! reproduces the same data regardless of scheduling.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupSpec, Subgroup};
use crate::io::{to_pairs, FamilyFile, SubgroupSpec, SCHEMA};
use crate::linalg::{c, CMat, C64};
use crate::zak::ZakContext;

/// Generator for instance `stream` under `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im)
}

pub fn random_vector(n: usize, rng: &mut impl Rng) -> Vec<C64> {
    (0..n).map(|_| gaussian(rng)).collect()
}

/// A group, an abelian subgroup and their weights.
#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub spec: GroupSpec,
    pub group: Arc<FiniteGroup>,
    pub sub: Subgroup,
}

impl Instance {
    fn new(label: &str, spec: GroupSpec, gens: &[usize], w_g: f64, w_h: f64) -> Self {
        let group = Arc::new(spec.build().expect("matrix group").with_weight(w_g).expect("positive weight"));
        let sub = Subgroup::generate(&group, gens, w_h).expect("valid generators");
        Instance { label: label.to_string(), spec, group, sub }
    }

    pub fn context(&self) -> Result<Arc<ZakContext>> {
        ZakContext::minimal(Arc::clone(&self.group), self.sub.clone())
    }

    pub fn randomized_context(&self, seed: u64) -> Result<Arc<ZakContext>> {
        ZakContext::randomized(Arc::clone(&self.group), self.sub.clone(), seed)
    }

    /// Same instance with counting measure on `H`.
    pub fn counting(&self) -> Self {
        let sub = self.sub.with_weight(1.0).expect("unit weight");
        Instance { sub, ..self.clone() }
    }
}

fn ab(inv: &[usize]) -> GroupSpec {
    GroupSpec::Abelian { invariants: inv.to_vec(), weight: 1.0 }
}

/// The fixed `(G, H)` matrix: cyclic groups, products, dihedral groups
/// `D₃…D₆`, Heisenberg groups mod 2 and 3, and `ℤ_p ⋊ ℤ_q`.
pub fn matrix() -> Vec<Instance> {
    let d = |n| GroupSpec::Dihedral { n };
    let heis = |p| GroupSpec::Heisenberg { p };
    let axb = |p, q| GroupSpec::Axb { p, q };
    vec![
        Instance::new("Z2 > Z2", ab(&[2]), &[1], 1.0, 1.0),
        Instance::new("Z2 > 0", ab(&[2]), &[], 1.0, 1.0),
        Instance::new("Z4 > <2>", ab(&[4]), &[2], 1.0, 1.0),
        Instance::new("Z4 > Z4", ab(&[4]), &[1], 1.0, 1.0),
        Instance::new("Z6 > <3>", ab(&[6]), &[3], 1.0, 1.0),
        Instance::new("Z6 > <2>", ab(&[6]), &[2], 1.0, 1.0),
        Instance::new("Z8 > <4>", ab(&[8]), &[4], 1.0, 1.0),
        Instance::new("Z8 > <2> weighted", ab(&[8]), &[2], 0.5, 2.0),
        Instance::new("Z9 > <3>", ab(&[9]), &[3], 1.0, 1.0),
        Instance::new("Z12 > <6>", ab(&[12]), &[6], 1.0, 1.0),
        Instance::new("Z12 > <4>", ab(&[12]), &[4], 1.0, 1.0),
        Instance::new("Z12 > <3> weighted", ab(&[12]), &[3], 0.25, 1.0),
        Instance::new("Z16 > <4>", ab(&[16]), &[4], 1.0, 1.0),
        Instance::new("Z27 > <9>", ab(&[27]), &[9], 1.0, 1.0),
        Instance::new("Z30 > <5>", ab(&[30]), &[5], 1.0, 1.0),
        Instance::new("Z2xZ2 > <(1,0)>", ab(&[2, 2]), &[2], 1.0, 1.0),
        Instance::new("Z2xZ2 > <(1,1)>", ab(&[2, 2]), &[3], 1.0, 1.0),
        Instance::new("Z2xZ4 > <(0,2)>", ab(&[2, 4]), &[2], 1.0, 1.0),
        Instance::new("Z2xZ4 > <(1,2)>", ab(&[2, 4]), &[6], 1.0, 1.0),
        Instance::new("Z2xZ4 > <(0,1)>", ab(&[2, 4]), &[1], 1.0, 1.0),
        Instance::new("Z3xZ3 > <(1,1)>", ab(&[3, 3]), &[4], 1.0, 1.0),
        Instance::new("Z4xZ4 > <(2,0),(0,2)>", ab(&[4, 4]), &[8, 2], 1.0, 1.0),
        Instance::new("Z2xZ3xZ2 > <(1,0,0)>", ab(&[2, 3, 2]), &[6], 1.0, 1.0),
        Instance::new("Z4xZ3 > <(0,1)> weighted", ab(&[4, 3]), &[1], 2.0, 0.5),
        Instance::new("Z6xZ6 > <(2,3)>", ab(&[6, 6]), &[15], 1.0, 1.0),
        Instance::new("D3 > <r>", d(3), &[1], 1.0, 1.0),
        Instance::new("D3 > <s>", d(3), &[3], 1.0, 1.0),
        Instance::new("D4 > <r>", d(4), &[1], 1.0, 1.0),
        Instance::new("D4 > <r^2>", d(4), &[2], 1.0, 1.0),
        Instance::new("D4 > <r^2,s>", d(4), &[2, 4], 1.0, 1.0),
        Instance::new("D4 > <s>", d(4), &[4], 1.0, 1.0),
        Instance::new("D4 > <r> weighted", d(4), &[1], 0.5, 1.0),
        Instance::new("D5 > <r>", d(5), &[1], 1.0, 1.0),
        Instance::new("D5 > <rs>", d(5), &[6], 1.0, 1.0),
        Instance::new("D6 > <r>", d(6), &[1], 1.0, 1.0),
        Instance::new("D6 > <r^3>", d(6), &[3], 1.0, 1.0),
        Instance::new("D6 > <r^2>", d(6), &[2], 1.0, 1.0),
        Instance::new("D6 > <r^3,s>", d(6), &[3, 6], 1.0, 1.0),
        Instance::new("Heis2 > center", heis(2), &[1], 1.0, 1.0),
        Instance::new("Heis2 > <x>", heis(2), &[4], 1.0, 1.0),
        Instance::new("Heis3 > center", heis(3), &[1], 1.0, 1.0),
        Instance::new("Heis3 > <x,z>", heis(3), &[9, 1], 1.0, 1.0),
        Instance::new("Heis3 > <y,z>", heis(3), &[3, 1], 1.0, 1.0),
        Instance::new("Z7:Z3 > normal", axb(7, 3), &[1], 1.0, 1.0),
        Instance::new("Z7:Z3 > <(2,0)>", axb(7, 3), &[7], 1.0, 1.0),
        Instance::new("Z3:Z2 > normal", axb(3, 2), &[1], 1.0, 1.0),
        Instance::new("Z3:Z2 > <(2,0)>", axb(3, 2), &[3], 1.0, 1.0),
        Instance::new("Z5:Z2 > normal", axb(5, 2), &[1], 1.0, 1.0),
        Instance::new("Z5:Z2 > <(4,0)>", axb(5, 2), &[5], 1.0, 1.0),
    ]
}

/// How a random family is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyStyle {
    /// Independent complex Gaussian values.
    Generic,
    /// Gaussian values on a random half of `G`, zero elsewhere.
    Sparse,
    /// Zak transform supported on a random set of fibers.
    FiberMasked,
    /// Zak transform supported on a random set of `(α, coset)` cells.
    CellMasked,
}

pub const STYLES: [FamilyStyle; 4] = [FamilyStyle::Generic, FamilyStyle::Sparse, FamilyStyle::FiberMasked, FamilyStyle::CellMasked];

/// Random function of the given style on the context's group.
pub fn random_function(ctx: &Arc<ZakContext>, style: FamilyStyle, rng: &mut impl Rng) -> Result<Vec<C64>> {
    let n = ctx.group().order();
    match style {
        FamilyStyle::Generic => Ok(random_vector(n, rng)),
        FamilyStyle::Sparse => {
            let mut f = random_vector(n, rng);
            for v in f.iter_mut() {
                if rng.random_bool(0.5) {
                    *v = c(0.0, 0.0);
                }
            }
            Ok(f)
        }
        FamilyStyle::FiberMasked | FamilyStyle::CellMasked => {
            let (rows, cols) = (ctx.fiber_count(), ctx.coset_count());
            let fiber_keep: Vec<bool> = (0..rows).map(|_| rng.random_bool(0.6)).collect();
            let values = CMat::from_fn(rows, cols, |_, _| gaussian(rng));
            let mut masked = values.clone();
            for a in 0..rows {
                for col in 0..cols {
                    let keep = match style {
                        FamilyStyle::FiberMasked => fiber_keep[a],
                        _ => (a * 31 + col * 17 + rows) % 3 != 0 && fiber_keep[(a + col) % rows] || col == 0 && a == 0,
                    };
                    if !keep {
                        masked[(a, col)] = c(0.0, 0.0);
                    }
                }
            }
            ctx.zak_inverse(&ctx.zak_array(masked)?)
        }
    }
}

pub fn random_family(ctx: &Arc<ZakContext>, size: usize, style: FamilyStyle, rng: &mut impl Rng) -> Result<Vec<Vec<C64>>> {
    (0..size).map(|_| random_function(ctx, style, rng)).collect()
}

/// Parameters of the classical-example analogues.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleParams {
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub dims: usize,
    pub p: u64,
    pub k: u32,
    pub j: u32,
    pub q: u64,
    pub seed: u64,
    pub family_size: usize,
}

impl Default for ExampleParams {
    fn default() -> Self {
        ExampleParams { n: 12, d: 3, m: 1, dims: 2, p: 2, k: 4, j: 2, q: 3, seed: 1, family_size: 2 }
    }
}

pub const EXAMPLE_NAMES: [&str; 5] = ["line", "lattice", "plane", "padic", "axb"];

fn family_file(spec: GroupSpec, generators: Vec<usize>, params: &ExampleParams, stream: u64) -> Result<FamilyFile> {
    let group = spec.build()?;
    let mut rng = rng_for(params.seed, stream);
    let functions = (0..params.family_size).map(|_| to_pairs(&random_vector(group.order(), &mut rng))).collect();
    Ok(FamilyFile {
        schema: SCHEMA.to_string(),
        group: spec,
        subgroup: Some(SubgroupSpec { generators, weight: 1.0 }),
        functions,
    })
}

fn unit_tuple(radices: &[usize], j: usize, value: usize) -> usize {
    let mut d = vec![0; radices.len()];
    d[j] = value;
    crate::group::encode(&d, radices)
}

/// Finite analogues of the classical Zak transforms, as named family files:
/// `line` is `dℤ_N ⊂ ℤ_N`; `lattice` is `(dℤ_N)^m × 0 ⊂ ℤ_N^n`; `plane`
/// is `ℤ_N^m × 0 ⊂ ℤ_N^n`; `padic` is `p^jℤ_{p^k} ⊂ ℤ_{p^k}`; `axb` is
/// `ℤ_p ⋊ ℤ_q` with its normal subgroup and a non-normal complement.
pub fn example(name: &str, params: &ExampleParams) -> Result<Vec<(String, FamilyFile)>> {
    let bad = |msg: &str| Error::InvalidParameter(msg.to_string());
    match name {
        "line" => {
            if params.d == 0 || params.n % params.d != 0 {
                return Err(bad("line needs d dividing N"));
            }
            Ok(vec![("line".into(), family_file(ab(&[params.n]), vec![params.d % params.n], params, 0)?)])
        }
        "lattice" | "plane" => {
            if params.m > params.dims || params.dims == 0 {
                return Err(bad("need m <= n and n >= 1"));
            }
            let radices = vec![params.n; params.dims];
            let step = if name == "lattice" { params.d % params.n } else { 1 };
            if name == "lattice" && (params.d == 0 || params.n % params.d != 0) {
                return Err(bad("lattice needs d dividing N"));
            }
            let gens = (0..params.m).map(|j| unit_tuple(&radices, j, step)).collect();
            Ok(vec![(name.into(), family_file(ab(&radices), gens, params, 0)?)])
        }
        "padic" => {
            if params.j > params.k || params.k == 0 {
                return Err(bad("padic needs j <= k and k >= 1"));
            }
            if !crate::group::is_prime(params.p) {
                return Err(Error::NotPrime(params.p));
            }
            let order = (params.p as usize).checked_pow(params.k).ok_or_else(|| bad("p^k overflows"))?;
            let gen = (params.p as usize).pow(params.j) % order;
            Ok(vec![("padic".into(), family_file(ab(&[order]), vec![gen], params, 0)?)])
        }
        "axb" => {
            let spec = GroupSpec::Axb { p: params.p, q: params.q };
            spec.build()?;
            let p = params.p as usize;
            Ok(vec![
                ("axb_normal".into(), family_file(spec.clone(), vec![1], params, 0)?),
                ("axb_complement".into(), family_file(spec, vec![p], params, 1)?),
            ])
        }
        other => Err(bad(&format!("unknown example {other:?}; expected one of {}", EXAMPLE_NAMES.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_is_large_enough_and_valid() {
        let m = matrix();
        assert!(m.len() >= 40);
        for inst in &m {
            assert!(inst.group.order() <= 96, "{}", inst.label);
            assert!(inst.sub.is_abelian(), "{}", inst.label);
            inst.context().unwrap();
        }
        assert!(m.iter().any(|i| !i.group.is_abelian()));
    }

    #[test]
    fn examples_build() {
        let p = ExampleParams::default();
        for name in EXAMPLE_NAMES {
            let params = if name == "axb" { ExampleParams { p: 7, q: 3, ..p.clone() } } else { p.clone() };
            for (_, file) in example(name, &params).unwrap() {
                let g = file.group.build().unwrap();
                file.subgroup.as_ref().unwrap().build(&g).unwrap();
            }
        }
        assert!(example("torus", &p).is_err());
    }

    #[test]
    fn seeded_draws_repeat() {
        let a = random_vector(5, &mut rng_for(9, 3));
        let b = random_vector(5, &mut rng_for(9, 3));
        assert_eq!(a, b);
        assert_ne!(a, random_vector(5, &mut rng_for(9, 4)));
    }
}
