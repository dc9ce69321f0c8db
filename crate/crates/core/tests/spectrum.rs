use std::f64::consts::PI;

use oscbath::model::{CavityConfig, PhysParams};
use oscbath::spectrum::{
    column_orthonormality_defect, lorentzian_weight, orthonormality_defect, solve_spectrum, SpectrumMethod,
};
use proptest::prelude::*;

fn params(g: f64) -> PhysParams {
    PhysParams::new(1.0, g, 2.0, 1.0).unwrap()
}

#[test]
fn n512_finite_secular_is_exact() {
    let cfg = CavityConfig::new(40.0 * PI, 1.0, 512).unwrap();
    let p = params(0.1);
    let fin = solve_spectrum(&cfg, &p, SpectrumMethod::FiniteSecular).unwrap();
    let dense = solve_spectrum(&cfg, &p, SpectrumMethod::DenseEigenOracle).unwrap();
    assert!(fin.interlacing_holds());
    let defect = orthonormality_defect(&fin);
    assert!(defect < 1e-10, "row defect {defect:e}");
    assert!(column_orthonormality_defect(&fin) < 1e-10);
    assert!(orthonormality_defect(&dense) < 1e-10);
    let mut worst_res: f64 = 0.0;
    let mut worst_rel: f64 = 0.0;
    for r in 0..fin.len() {
        worst_res = worst_res.max(fin.residual(r).abs());
        worst_rel = worst_rel.max(((fin.omega(r) - dense.omega(r)) / dense.omega(r)).abs());
    }
    assert!(worst_res < 1e-12, "residual {worst_res:e}");
    assert!(worst_rel < 1e-9, "eigenfrequency mismatch {worst_rel:e}");
}

#[test]
fn n64_defect() {
    let cfg = CavityConfig::new(10.0 * PI, 1.0, 64).unwrap();
    let b = solve_spectrum(&cfg, &params(0.1), SpectrumMethod::FiniteSecular).unwrap();
    assert!(orthonormality_defect(&b) < 1e-10);
}

#[test]
fn n1024_defect() {
    let cfg = CavityConfig::new(80.0 * PI, 1.0, 1024).unwrap();
    let b = solve_spectrum(&cfg, &params(0.1), SpectrumMethod::FiniteSecular).unwrap();
    assert!(orthonormality_defect(&b) < 1e-10);
}

#[test]
fn dense_oracle_capped() {
    let cfg = CavityConfig::new(80.0 * PI, 1.0, 513).unwrap();
    assert!(solve_spectrum(&cfg, &params(0.1), SpectrumMethod::DenseEigenOracle).is_err());
}

#[test]
fn cotangent_closed_form_defect_is_reported() {
    let cfg = CavityConfig::new(40.0 * PI, 1.0, 256).unwrap();
    let b = solve_spectrum(&cfg, &params(0.1), SpectrumMethod::CavityCotangent).unwrap();
    let raw = b.raw_defect().unwrap();
    assert!(raw.is_finite() && raw > 0.0);
    // the cotangent roots approach the finite ones well below the cutoff
    let fin = solve_spectrum(&cfg, &params(0.1), SpectrumMethod::FiniteSecular).unwrap();
    let probe = (1.0 / cfg.delta_omega()) as usize;
    assert!((b.omega(probe) - fin.omega(probe)).abs() < 0.05 * cfg.delta_omega());
}

#[test]
fn discrete_weight_approaches_lorentzian() {
    // ω_max = 40, R = 200c: N = ⌈ω_max R/(πc)⌉
    let radius = 200.0;
    let n = (40.0 * radius / PI).ceil() as usize;
    let cfg = CavityConfig::new(radius, 1.0, n).unwrap();
    let p = params(0.1);
    let b = solve_spectrum(&cfg, &p, SpectrumMethod::FiniteSecular).unwrap();
    let w = b.discrete_weight();
    // the root nearest Ω = ω̄, compared against the Lorentzian at that root
    let &(omega, at) = w
        .iter()
        .min_by(|a, b| (a.0 - 1.0).abs().total_cmp(&(b.0 - 1.0).abs()))
        .unwrap();
    let exact = lorentzian_weight(omega, &p);
    assert!(((at - exact) / exact).abs() < 1e-3, "{at} vs {exact}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn interlacing_and_orthonormality(n in 1usize..48, radius in 1.0f64..60.0, g in 1e-4f64..0.6) {
        let cfg = CavityConfig::new(radius, 1.0, n).unwrap();
        let p = params(g);
        let b = solve_spectrum(&cfg, &p, SpectrumMethod::FiniteSecular).unwrap();
        prop_assert!(b.interlacing_holds());
        prop_assert!(orthonormality_defect(&b) < 1e-10);
        for r in 0..b.len() {
            prop_assert!(b.residual(r).abs() < 1e-12 * (1.0f64).max(b.omega(r).powi(2) * 1e-3));
        }
        let d = solve_spectrum(&cfg, &p, SpectrumMethod::DenseEigenOracle).unwrap();
        for r in 0..b.len() {
            prop_assert!(((b.omega(r) - d.omega(r)) / d.omega(r)).abs() < 1e-9);
        }
    }
}
