//! Hand-sized cases compared against the frozen output of
//! `scripts/micro_oracle.py`.

use std::sync::Arc;

use serde_json::Value;
use zakfiber_core::frame::{gabor_frame_check, translate_frame_check};
use zakfiber_core::harmonic::{fourier, fourier_inverse, group_characters};
use zakfiber_core::linalg::{c, C64};
use zakfiber_core::rep::{bracket, isometry_t, rep_frame_check, swap_rep, GeneratorFamily};
use zakfiber_core::{FiniteGroup, Subgroup};
use zakfiber_core::zak::ZakContext;

const TOL: f64 = 1e-12;

fn oracle() -> Value {
    serde_json::from_str(include_str!("../../../scripts/micro_oracle.out.json")).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn pair(v: &Value) -> C64 {
    c(num(&v[0]), num(&v[1]))
}

fn close(a: f64, b: f64) {
    assert!((a - b).abs() <= TOL, "{a} vs {b}");
}

fn delta(n: usize) -> Vec<C64> {
    (0..n).map(|i| c(if i == 0 { 1.0 } else { 0.0 }, 0.0)).collect()
}

fn z4_context() -> Arc<ZakContext> {
    let g = Arc::new(FiniteGroup::abelian(&[4], 1.0).unwrap());
    let h = Subgroup::generate(&g, &[2], 1.0).unwrap();
    ZakContext::minimal(g, h).unwrap()
}

#[test]
fn z4_delta_zak_and_fourier() {
    let o = &oracle()["z4_delta0"];
    let ctx = z4_context();
    let z = ctx.zak(&delta(4)).unwrap();
    for a in 0..2 {
        for col in 0..2 {
            assert!((z.values()[(a, col)] - pair(&o["zak"][a][col])).norm() <= TOL);
        }
    }
    let fhat = fourier(ctx.group(), &delta(4)).unwrap();
    for (a, v) in fhat.iter().enumerate() {
        assert!((v - pair(&o["fhat"][a])).norm() <= TOL);
    }
}

#[test]
fn z4_delta_frame_bounds() {
    let o = &oracle()["z4_delta0"];
    let ctx = z4_context();
    let r = translate_frame_check(&ctx, &[delta(4)]).unwrap();
    for b in [r.a_direct, r.a_fiber] {
        close(b.unwrap(), num(&o["frame_A"]));
    }
    for b in [r.b_direct, r.b_fiber] {
        close(b.unwrap(), num(&o["frame_B"]));
    }
    assert_eq!(r.span_dim as u64, o["span_dim"].as_u64().unwrap());
    let r = translate_frame_check(&ctx, &[delta(4), delta(4)]).unwrap();
    close(r.a_direct.unwrap(), num(&o["dup_A"]));
    close(r.a_fiber.unwrap(), num(&o["dup_A"]));
    close(r.b_direct.unwrap(), num(&o["dup_B"]));
    close(r.b_fiber.unwrap(), num(&o["dup_B"]));
}

#[test]
fn z4_delta_bracket() {
    let o = &oracle()["z4_delta0"];
    let ctx = z4_context();
    let br = ctx.translation_bracket(&delta(4), &delta(4)).unwrap();
    for (a, v) in br.iter().enumerate() {
        assert!((v - c(num(&o["bracket"][a]), 0.0)).norm() <= TOL);
    }
}

#[test]
fn swap_rep_table_and_bounds() {
    let o = &oracle()["swap_rep"];
    let rep = swap_rep();
    let e = |k: usize| (0..2).map(|i| c(if i == k { 1.0 } else { 0.0 }, 0.0)).collect::<Vec<_>>();
    for i in 0..2 {
        for j in 0..2 {
            let b = bracket(&rep, &e(i), &e(j)).unwrap();
            for a in 0..2 {
                assert!((b[a] - c(num(&o["bracket_table"][i][j][a]), 0.0)).norm() <= TOL);
            }
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            close(rep.projection(0)[(i, j)].re, num(&o["P_chi0"][i][j]));
        }
    }
    let gens = GeneratorFamily::new(&rep, vec![e(0)]).unwrap();
    let t = isometry_t(&rep, &gens, &e(0)).unwrap();
    for a in 0..2 {
        assert!((t[(a, 0)] - c(num(&o["T_e1"][a]), 0.0)).norm() <= TOL);
    }
    let r = rep_frame_check(&rep, &gens, &[e(0)]).unwrap();
    close(r.a_direct.unwrap(), num(&o["orbit_e1_bounds"][0]));
    close(r.b_fiber.unwrap(), num(&o["orbit_e1_bounds"][1]));
    let r = rep_frame_check(&rep, &gens, &[vec![c(1.0, 0.0), c(1.0, 0.0)]]).unwrap();
    for b in [r.a_direct, r.a_fiber] {
        close(b.unwrap(), num(&o["orbit_sum_bounds"][0]));
    }
    for b in [r.b_direct, r.b_fiber] {
        close(b.unwrap(), num(&o["orbit_sum_bounds"][1]));
    }
}

#[test]
fn z2_gabor_bounds() {
    let o = &oracle()["z2_gabor"];
    let g = Arc::new(FiniteGroup::abelian(&[2], 1.0).unwrap());
    let h = Subgroup::generate(&g, &[1], 1.0).unwrap();
    let ctx = ZakContext::minimal(g, h).unwrap();
    let z = ctx.zak(&delta(2)).unwrap();
    for a in 0..2 {
        close(z.values()[(a, 0)].norm_sqr(), num(&o["S"][a]));
    }
    let (r, _) = gabor_frame_check(&ctx, &[delta(2)]).unwrap();
    close(r.a_direct.unwrap(), num(&o["direct"][0]));
    close(r.b_direct.unwrap(), num(&o["direct"][1]));
    close(r.a_fiber.unwrap(), num(&o["direct"][0]));
    close(r.b_fiber.unwrap(), num(&o["direct"][1]));
}

#[test]
fn small_facts() {
    let o = &oracle()["facts"];
    let z4 = FiniteGroup::abelian(&[4], 1.0).unwrap();
    let (_, dual) = group_characters(&z4).unwrap();
    assert!((dual.chi(1, 1) - pair(&o["z4_chi1_at_1"])).norm() <= TOL);
    let z6 = FiniteGroup::abelian(&[6], 1.0).unwrap();
    assert_eq!(z6.mul(4, 5) as u64, o["z6_4_plus_5"].as_u64().unwrap());
    let mults: Vec<u64> = o["axb_7_3_multipliers"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(FiniteGroup::axb_multipliers(7, 3), mults);
    let z2 = FiniteGroup::abelian(&[2], 1.0).unwrap();
    let inv = fourier_inverse(&z2, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
    for (x, v) in inv.iter().enumerate() {
        assert!((v - c(num(&o["z2_inverse_delta"][x]), 0.0)).norm() <= TOL);
    }
    let ones = fourier(&z2, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
    for (a, v) in ones.iter().enumerate() {
        assert!((v - c(num(&o["z2_fourier_ones"][a]), 0.0)).norm() <= TOL);
    }
}
