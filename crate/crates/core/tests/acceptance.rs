use zakfiber_core::verify::run_criterion;

const SEED: u64 = 1;

fn budget(id: u8) -> Option<f64> {
    match id {
        1 | 2 => Some(30.0),
        3 => Some(20.0),
        5 | 9 => Some(120.0),
        _ => None,
    }
}

fn criterion(id: u8) {
    let r = run_criterion(id, SEED).expect("criterion ran");
    println!("{}", r.line());
    for f in &r.failures {
        println!("    {f}");
    }
    if let Some(limit) = budget(id) {
        assert!(r.seconds <= limit, "criterion {id} took {:.1}s", r.seconds);
    }
    assert!(r.passed, "criterion {id} failed: {:?}", r.failures);
}

#[test]
fn criterion_01_zak_unitarity_and_inversion() {
    criterion(1);
}

#[test]
fn criterion_02_intertwining_identities() {
    criterion(2);
}

#[test]
fn criterion_03_zak_fiberization_link() {
    criterion(3);
}

#[test]
fn criterion_04_weil_identity_and_factorization() {
    criterion(4);
}

#[test]
fn criterion_05_translate_frame_bounds() {
    criterion(5);
}

#[test]
fn criterion_06_translate_riesz_bounds() {
    criterion(6);
}

#[test]
fn criterion_07_gabor_critical_sampling() {
    criterion(7);
}

#[test]
fn criterion_08_ti_tmi_classification() {
    criterion(8);
}

#[test]
fn criterion_09_representation_brackets() {
    criterion(9);
}

#[test]
fn criterion_10_micro_cases() {
    criterion(10);
}
