use givental_core::quad::*;
use num_complex::Complex64;

#[test]
fn spec_values_rank_two() {
    let cfg = QuadConfig::default();
    let s = givental_wavefunction_direct(2, &[0.0, 0.0], &[0.0, 0.0], &cfg).unwrap();
    assert!((s.value.re - 0.2277877).abs() < 1e-7);
    let k = macdonald_oracle(Complex64::new(0.0, 2.0), 2.0, 1e-14).unwrap();
    let s = givental_wavefunction_direct(2, &[1.0, -1.0], &[0.0, 0.0], &cfg).unwrap();
    assert!((s.value - k * 2.0).norm() < 1e-10 * s.value.norm());
}

#[test]
fn halving_changes_less_than_estimate() {
    let coarse = QuadConfig { panel_width: 1.0, max_halvings: 1, rel_tol: 0.0, ..QuadConfig::default() };
    let fine = QuadConfig { panel_width: 0.5, ..coarse.clone() };
    let (lam, x) = ([0.7, -0.4, 1.2], [0.2, -0.3, 0.1]);
    let a = givental_wavefunction_direct(3, &lam, &x, &coarse).unwrap();
    let b = givental_wavefunction_direct(3, &lam, &x, &fine).unwrap();
    assert!((a.value - b.value).norm() <= a.error, "{} vs {}", (a.value - b.value).norm(), a.error);
    assert!(a.is_consistent() && b.is_consistent());
}

#[test]
fn rank_three_translation_covariance() {
    let r = verify_translation_covariance(&[0.4, -0.9, 0.3], &[0.1, 0.0, -0.2], &[0.5], Method::Recursive, &QuadConfig::default(), 1e-8).unwrap();
    assert!(r.all_pass(), "{r}");
}

#[test]
fn rank_three_at_zero_spectrum() {
    let cfg = QuadConfig::default();
    let d = givental_wavefunction_direct(3, &[0.0; 3], &[0.0; 3], &cfg).unwrap();
    let r = wavefunction_recursive(3, &[0.0; 3], &[0.0; 3], &cfg).unwrap();
    assert!(d.value.re > 0.0 && d.value.im.abs() < 1e-15);
    assert!((d.value - r.value).norm() < 1e-6 * d.value.norm());
}

#[test]
fn rank_four_monte_carlo_runs() {
    let cfg = QuadConfig { qmc_points: 1 << 12, qmc_replicas: 4, ..QuadConfig::default() };
    let s = givental_wavefunction_direct(4, &[0.0; 4], &[0.0; 4], &cfg).unwrap();
    assert!(s.is_consistent() && s.value.re > 0.0);
    assert!(s.warning, "loose Monte Carlo estimate should carry a warning");
}

#[test]
fn eigencheck_rank_two_spec_example() {
    let r = eigencheck(2, &[1.0, -1.0], &[0.0, 0.0], &QuadConfig::default(), 0.02).unwrap();
    assert!(r.all_pass(), "{r}");
    assert!(r.entries[1].detail.contains("e2=-1.0"));
}
