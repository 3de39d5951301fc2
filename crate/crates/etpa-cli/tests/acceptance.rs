//! Acceptance suite: the release gate for the toolkit.
//!
//! Each test covers one criterion and prints one PASS/FAIL line per checked
//! item (run with `--nocapture` to see them). Tolerances are fixed here, not
//! tuned at runtime.

use std::process::Command;
use std::time::Instant;

use etpa_core::grid::FrequencyGrid;
use etpa_core::jsa::JointSpectralAmplitude;
use etpa_core::lineshape::LorentzianLine;
use etpa_core::overlap::{
    entanglement_time, eta_factors, f_epp, spectral_overlap, BOUND_SLACK,
};
use etpa_core::rates::{
    p_f_coherent, p_f_epp, qef_report, BeamParams, PfMode, PulseParams,
};
use etpa_core::shapes;
use etpa_core::units::{CrossSection2P, Hertz, RadPerSec, Seconds, SquareMeters};

struct Criterion {
    name: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        println!("criterion {name}");
        Self {
            name,
            failures: Vec::new(),
        }
    }

    fn check_rel(&mut self, what: &str, value: f64, target: f64, tol: f64) {
        let rel = (value - target).abs() / target.abs();
        self.check(
            what,
            rel <= tol,
            format!("{value:.6e} vs {target:.6e} (rel {rel:.2e}, tol {tol:.0e})"),
        );
    }

    fn check(&mut self, what: &str, ok: bool, detail: String) {
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("  [{verdict}] {what}: {detail}");
        if !ok {
            self.failures.push(format!("{what}: {detail}"));
        }
    }

    fn finish(self) {
        assert!(
            self.failures.is_empty(),
            "criterion {} failed:\n{}",
            self.name,
            self.failures.join("\n")
        );
    }
}

fn etpa_json(args: &[&str]) -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_etpa"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "etpa {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn criterion_1_dye_benchmark_numbers() {
    let mut c = Criterion::new("1: built-in dye benchmark reproduces the published chain");
    let start = Instant::now();
    let pulsed = etpa_json(&[
        "feasibility",
        "--golden-r6g",
        "--source",
        "pulsed",
        "--format",
        "json",
    ]);
    let cw = etpa_json(&["feasibility", "--golden-r6g", "--source", "cw", "--format", "json"]);
    let elapsed = start.elapsed();

    let get = |v: &serde_json::Value, key: &str| v[key].as_f64().unwrap();
    // Areas and volumes in the cgs units the published numbers use.
    c.check_rel(
        "beam area (cm²)",
        get(&pulsed, "beam_area_m2") * 1e4,
        8e-7,
        0.05,
    );
    c.check_rel(
        "focal volume (cm³)",
        get(&pulsed, "focal_volume_m3") * 1e6,
        1.2e-8,
        0.10,
    );
    c.check_rel(
        "molecules per mmol",
        get(&pulsed, "molecules_per_mmol"),
        7.0e9,
        0.05,
    );
    c.check_rel("bandwidth (Hz)", get(&pulsed, "bandwidth_hz"), 1.1e13, 0.05);
    c.check_rel(
        "per-pair absorption probability",
        get(&pulsed, "p_f_per_pair"),
        1.5e-24,
        0.15,
    );
    c.check_rel(
        "absorbed fraction per mmol",
        get(&pulsed, "absorbed_fraction_per_mmol"),
        1.1e-14,
        0.15,
    );
    c.check_rel(
        "pulsed event rate (1/s)",
        get(&pulsed, "event_rate_per_s"),
        8.8e-6,
        0.15,
    );
    c.check_rel("cw event rate (1/s)", get(&cw, "event_rate_per_s"), 11.0, 0.15);
    c.check_rel(
        "rate rule (1/GM/mmol/pair)",
        get(&pulsed, "rate_rule_per_gm_mmol_pair"),
        1.2e-15,
        0.15,
    );
    c.check(
        "runtime",
        elapsed.as_secs_f64() < 1.0,
        format!("{:.3}s < 1s", elapsed.as_secs_f64()),
    );
    c.finish();
}

#[test]
fn criterion_2_bound_suite() {
    let mut c = Criterion::new("2: overlap bounds over random spectra");
    let start = Instant::now();

    let omega_cap = 1.0e13;
    let bound = omega_cap / std::f64::consts::PI;
    let b_grid = shapes::grid_for_box(0.0, omega_cap, 1025, 1.25).unwrap();
    let n_grid = FrequencyGrid::spanning(0.0, 1e12, 513).unwrap();
    let psi_n = shapes::gaussian_spectrum(&n_grid, 1e11).unwrap();
    let gammas: Vec<f64> = [0.03, 0.3, 1.0, 10.0, 1e3]
        .iter()
        .map(|g| g * omega_cap)
        .collect();
    let lines: Vec<LorentzianLine> = gammas
        .iter()
        .map(|&g| LorentzianLine::new(0.0, g).unwrap())
        .collect();

    let mut worst_eta_b = 0.0f64;
    let mut worst_eta = 0.0f64;
    let mut violations = 0usize;
    for seed in 0..1000u64 {
        let psi_b = shapes::random_spectrum_on(&b_grid, omega_cap, seed, false).unwrap();
        for line in &lines {
            let f = eta_factors(&psi_n, &psi_b, line).unwrap();
            let eta = 2.0 * f.eta_n * f.eta_b_rad_per_s;
            worst_eta_b = worst_eta_b.max(f.eta_b_rad_per_s / bound);
            worst_eta = worst_eta.max(eta / (2.0 * bound));
            if f.eta_b_rad_per_s > bound * (1.0 + BOUND_SLACK)
                || eta > 2.0 * bound * (1.0 + BOUND_SLACK)
            {
                violations += 1;
            }
        }
    }
    c.check(
        "η_B ≤ Ω/π for 1000 random spectra × 5 linewidths",
        violations == 0,
        format!("0 violations required, got {violations}; worst η_B/(Ω/π) = {worst_eta_b:.12}"),
    );
    c.check(
        "η ≤ 2Ω/π throughout",
        worst_eta <= 1.0 + BOUND_SLACK,
        format!("worst η/(2Ω/π) = {worst_eta:.12}"),
    );

    // The flat-top spectrum saturates the bound under a broad line.
    let psi_b_box = shapes::box_spectrum(&b_grid, omega_cap).unwrap();
    let broad_line = LorentzianLine::new(0.0, 1e3 * omega_cap).unwrap();
    let f_box = eta_factors(&psi_n, &psi_b_box, &broad_line).unwrap();
    c.check(
        "flat-top η_B reaches 0.999·Ω/π at γ = 10³Ω",
        f_box.eta_b_rad_per_s >= 0.999 * bound
            && f_box.eta_b_rad_per_s <= bound * (1.0 + BOUND_SLACK),
        format!("η_B/(Ω/π) = {:.9}", f_box.eta_b_rad_per_s / bound),
    );

    let te = entanglement_time(&psi_b_box).unwrap();
    let f_val = f_epp(2.0 * f_box.eta_n * f_box.eta_b_rad_per_s, te.t_e_s);
    c.check(
        "f_EPP ≤ 2.001 for optimal inputs",
        f_val <= 2.001 && f_val >= 1.99,
        format!("f_EPP = {f_val:.6}"),
    );

    // The same sweep through the command-line interface must also hold.
    let out = Command::new(env!("CARGO_BIN_EXE_etpa"))
        .args([
            "bounds",
            "--omega-cap",
            "5e12:5e13:3",
            "--gamma",
            "1e14:1e16:3",
            "--psi-n-width",
            "1e11",
            "--random-psi-b",
            "25",
            "--seed",
            "123",
            "--grid-points",
            "513",
        ])
        .output()
        .unwrap();
    c.check(
        "command-line sweep asserts every row",
        out.status.success(),
        format!("exit {:?}", out.status.code()),
    );

    let elapsed = start.elapsed();
    c.check(
        "runtime",
        elapsed.as_secs_f64() < 30.0,
        format!("{:.1}s < 30s", elapsed.as_secs_f64()),
    );
    c.finish();
}

#[test]
fn criterion_3_closed_form_oracles() {
    let mut c = Criterion::new("3: closed-form oracle suite");

    // Flat-top transform matches the sinc envelope pointwise.
    let omega_cap = 2.0e13;
    let b_grid = shapes::grid_for_box(0.0, omega_cap, 8193, 1.5).unwrap();
    let psi_b = shapes::box_spectrum(&b_grid, omega_cap).unwrap();
    let tgrid = etpa_core::grid::TimeGrid::spanning(
        10.0 * std::f64::consts::PI / omega_cap,
        2001,
    )
    .unwrap();
    let phi = psi_b.to_time_domain(&tgrid);
    let peak = (omega_cap / std::f64::consts::PI).sqrt();
    let mut worst = 0.0f64;
    for (j, v) in phi.values().iter().enumerate() {
        let tau = tgrid.sample(j);
        let expected = peak * shapes::sinc(omega_cap * tau);
        worst = worst.max((v.re - expected).abs() / peak).max(v.im.abs() / peak);
    }
    c.check(
        "flat-top time profile = sqrt(Ω/π)·sinc(Ωτ) on |τ| ≤ 10π/Ω",
        worst <= 1e-6,
        format!("worst pointwise error {worst:.2e} of peak (tol 1e-6)"),
    );

    // Flat-line broad factor equals the time-domain peak value.
    let narrow_grid = FrequencyGrid::spanning(0.0, 1e12, 513).unwrap();
    let psi_n = shapes::gaussian_spectrum(&narrow_grid, 1e11).unwrap();
    let wide_line = LorentzianLine::new(0.0, 1e6 * omega_cap).unwrap();
    let f = eta_factors(&psi_n, &psi_b, &wide_line).unwrap();
    let phi0 = phi.at_zero().norm_sqr();
    let rel_flat = (f.eta_b_flat_line_rad_per_s - phi0).abs() / phi0;
    let rel_wide = (f.eta_b_rad_per_s - phi0).abs() / phi0;
    c.check(
        "η_B in the broad-line limit equals |φ_B(0)|²",
        rel_flat <= 1e-6 && rel_wide <= 1e-6,
        format!("flat rel {rel_flat:.2e}, γ=10⁶Ω rel {rel_wide:.2e} (tol 1e-6)"),
    );

    // Factorization identity in the broad-line regime.
    let grid = FrequencyGrid::spanning(1.77e15, 9.0e13, 513).unwrap();
    let (sum_grid, diff_grid) = JointSpectralAmplitude::factored_component_grids(&grid).unwrap();
    let psi_n2 = shapes::gaussian_spectrum(&sum_grid, 2e12).unwrap();
    let psi_b2 = shapes::gaussian_spectrum(&diff_grid, 1e13).unwrap();
    let jsa = JointSpectralAmplitude::from_factors(psi_n2.clone(), psi_b2.clone(), grid).unwrap();
    let line = LorentzianLine::new(2.0 * grid.center(), 1e3 * 9.0e13).unwrap();
    let report = spectral_overlap(&jsa, &line).unwrap();
    let factors = eta_factors(&psi_n2, &psi_b2, &line).unwrap();
    let product = 2.0 * factors.eta_n * factors.eta_b_rad_per_s;
    c.check_rel(
        "two-dimensional η equals 2·η_N·η_B (broad-line regime)",
        report.eta_rad_per_s,
        product,
        1e-4,
    );
    c.finish();
}

#[test]
fn criterion_4_duration_conventions() {
    let mut c = Criterion::new("4: duration-convention table");
    let rows = etpa_json(&["conventions", "--format", "json"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let shape = row["shape"].as_str().unwrap();
        let rel = row["rel_error"].as_f64().unwrap();
        let tol = match shape {
            "box" | "gaussian" => 1e-4,
            _ => 1e-2,
        };
        c.check(
            &format!("{shape} duration vs analytic"),
            rel < tol,
            format!("rel error {rel:.2e} (tol {tol:.0e})"),
        );
    }
    c.finish();
}

#[test]
fn criterion_5_rates_algebra() {
    let mut c = Criterion::new("5: rate-layer algebra");
    let beam = BeamParams {
        omega_0: RadPerSec(1.77e15),
        area: SquareMeters(7.85e-11),
        refractive_index: 1.33,
        bandwidth: Hertz(1.06e13),
        entanglement_area: None,
    };
    let sigma2 = CrossSection2P::from_gm(9.0);

    let mut worst = 0.0f64;
    for n_epp in [0.1, 0.3, 0.9] {
        for n_coh in [0.5, 1.0, 4.0] {
            for ratio in [1.0, 10.0, 1e3] {
                let pulse =
                    PulseParams::new(n_epp, n_coh, Seconds(1e-13 * ratio), Seconds(1e-13))
                        .unwrap()
                        .with_f_coh(0.8);
                let r = qef_report(&pulse, &beam, sigma2).unwrap();
                let rel = (r.qef_general * r.p_f_coh - r.p_f_epp).abs() / r.p_f_epp;
                worst = worst.max(rel);
            }
        }
    }
    c.check(
        "QEF × P_coh = P_epp over a 3×3×3 grid",
        worst <= 1e-12,
        format!("worst rel deviation {worst:.2e} (tol 1e-12)"),
    );

    let mut linear_ok = true;
    for n in [0.05, 0.2, 0.45] {
        let p1 = p_f_epp(n, &beam, sigma2, PfMode::BandwidthApprox)
            .unwrap()
            .probability;
        let p2 = p_f_epp(2.0 * n, &beam, sigma2, PfMode::BandwidthApprox)
            .unwrap()
            .probability;
        linear_ok &= (p2 / p1 - 2.0).abs() <= 1e-12;
    }
    c.check("pair probability linear in N", linear_ok, "ratio 2 at 3 points".into());

    let mut quad_ok = true;
    for n in [0.5, 2.0, 8.0] {
        let mk = |nc: f64| {
            let pulse = PulseParams::new(0.1, nc, Seconds(1e-13), Seconds(1e-14)).unwrap();
            p_f_coherent(&pulse, &beam, sigma2).unwrap()
        };
        quad_ok &= (mk(2.0 * n) / mk(n) - 4.0).abs() <= 1e-12;
    }
    c.check(
        "coherent probability quadratic in N",
        quad_ok,
        "ratio 4 at 3 points".into(),
    );
    c.finish();
}

#[test]
fn criterion_6_artifact_determinism() {
    let mut c = Criterion::new("6: byte-identical artifacts across runs");
    let dir = tempfile::tempdir().unwrap();

    let run_bounds = |path: &std::path::Path| {
        let out = Command::new(env!("CARGO_BIN_EXE_etpa"))
            .args([
                "bounds",
                "--omega-cap",
                "1e13:3e13:3",
                "--gamma",
                "1e15",
                "--psi-n-width",
                "1e11:3e11:2",
                "--random-psi-b",
                "4",
                "--seed",
                "99",
                "--grid-points",
                "257",
                "--output",
                path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
    };
    let (b1, b2) = (dir.path().join("s1.csv"), dir.path().join("s2.csv"));
    run_bounds(&b1);
    run_bounds(&b2);
    c.check(
        "bound-sweep CSV",
        std::fs::read(&b1).unwrap() == std::fs::read(&b2).unwrap(),
        "two seeded runs byte-compare equal".into(),
    );

    let run_jsa = |path: &std::path::Path| {
        let out = Command::new(env!("CARGO_BIN_EXE_etpa"))
            .args([
                "jsa",
                "--grid-points",
                "65",
                "--marginal",
                "--output",
                path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
    };
    let (j1, j2) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    run_jsa(&j1);
    run_jsa(&j2);
    let same = std::fs::read(&j1).unwrap() == std::fs::read(&j2).unwrap()
        && std::fs::read(dir.path().join("a.csv.json")).unwrap()
            == std::fs::read(dir.path().join("b.csv.json")).unwrap()
        && std::fs::read(dir.path().join("a.csv.marginal.csv")).unwrap()
            == std::fs::read(dir.path().join("b.csv.marginal.csv")).unwrap();
    c.check(
        "amplitude export CSV + sidecar + marginal",
        same,
        "two runs byte-compare equal".into(),
    );

    let f1 = etpa_json(&["feasibility", "--golden-r6g", "--format", "json"]);
    let f2 = etpa_json(&["feasibility", "--golden-r6g", "--format", "json"]);
    c.check(
        "feasibility JSON",
        f1 == f2,
        "two runs compare equal".into(),
    );
    c.finish();
}
