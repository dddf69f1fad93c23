//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use zakfiber_core::instances::{random_vector, rng_for};
use zakfiber_core::linalg::C64;
use zakfiber_core::zak::ZakContext;
use zakfiber_core::{FiniteGroup, Result, Subgroup};

/// `dℤ_N ⊂ ℤ_N` with counting measures and the minimal transversal.
pub fn cyclic(n: usize, d: usize) -> Result<Arc<ZakContext>> {
    let g = Arc::new(FiniteGroup::abelian(&[n], 1.0)?);
    let h = Subgroup::generate(&g, &[d], 1.0)?;
    ZakContext::minimal(g, h)
}

/// `ℤ_p ⋊ ℤ_q` over its normal subgroup `ℤ_p`.
pub fn axb(p: u64, q: u64) -> Result<Arc<ZakContext>> {
    let g = Arc::new(FiniteGroup::semidirect_axb(p, q)?);
    let h = Subgroup::generate(&g, &[1], 1.0)?;
    ZakContext::minimal(g, h)
}

pub fn family(ctx: &ZakContext, size: usize, seed: u64) -> Vec<Vec<C64>> {
    let mut rng = rng_for(seed, 0);
    (0..size).map(|_| random_vector(ctx.group().order(), &mut rng)).collect()
}
