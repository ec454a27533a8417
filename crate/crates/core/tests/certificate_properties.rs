//! Certificate algebra, round trips and tamper resistance.

use nbcolor_core::certificate::{
    bound_formula, emit_certificate, lower_bound, optimal_r, verify_certificate, weighted_bound_at,
    weighted_lower_bound, GeneratorMetadata, LowerBoundCertificate, Weighting,
};
use nbcolor_core::deformed::{smallest_real_eig_b, ScanOptions};
use nbcolor_core::linalg::DenseMatrix;
use nbcolor_core::{classify, corpus, Error, Graph};
use proptest::prelude::*;

fn eligible_corpus() -> Vec<(&'static str, Graph)> {
    corpus::named().into_iter().filter(|(_, g)| classify(g).eligible()).collect()
}

fn certify(g: &Graph) -> LowerBoundCertificate {
    let loc = smallest_real_eig_b::<f64>(g, &ScanOptions::default()).unwrap();
    let r = optimal_r(g, loc.r_star).unwrap();
    let mut meta = GeneratorMetadata::new();
    meta.r_star = Some(loc.r_star);
    meta.r_method = Some(serde_json::to_value(loc.method).unwrap().as_str().unwrap().to_string());
    meta.grid_step = Some(loc.grid_used);
    emit_certificate(g, r, Weighting::Uniform, meta).unwrap()
}

#[test]
fn uniform_weighting_reproduces_the_plain_bound() {
    for (name, g) in eligible_corpus() {
        let n = g.n();
        let j = Weighting::from_dense(&DenseMatrix::filled(n, n, 1.0 / n as f64));
        let d = g.average_degree_f64();
        for r in [-(d - 1.0).sqrt(), -2.0, -3.5] {
            if let Ok(plain) = lower_bound(&g, r) {
                let w = weighted_bound_at(&g, &j, r).unwrap();
                assert!((w - plain).abs() <= 1e-12, "{name} r={r}: {w} vs {plain}");
                let u = weighted_bound_at(&g, &Weighting::Uniform, r).unwrap();
                assert!((u - plain).abs() <= 1e-12, "{name}");
            }
        }
        let r_star = smallest_real_eig_b::<f64>(&g, &ScanOptions::default()).unwrap().r_star;
        let (wb, wr) = weighted_lower_bound(&g, &j, r_star).unwrap();
        let r = optimal_r(&g, r_star).unwrap();
        assert!((wr - r).abs() < 1e-12);
        assert!((wb - lower_bound(&g, r).unwrap()).abs() <= 1e-12, "{name}");
    }
}

proptest! {
    #[test]
    fn bound_increases_towards_the_optimum(d in 1.2f64..40.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let peak = -(d - 1.0).sqrt();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        // r1 <= r2 <= peak
        let r1 = peak - 10.0 * (1.0 - lo) * (1.0 + d);
        let r2 = peak - 10.0 * (1.0 - hi) * (1.0 + d);
        prop_assert!(bound_formula(r1, d) <= bound_formula(r2, d) + 1e-12);
        prop_assert!(bound_formula(r2, d) <= bound_formula(peak, d) + 1e-12);
    }
}

#[test]
fn round_trip_on_every_eligible_corpus_graph() {
    for (name, g) in eligible_corpus() {
        let cert = certify(&g);
        let back = LowerBoundCertificate::from_json(&cert.to_json().unwrap()).unwrap();
        assert_eq!(back, cert, "{name}");
        let v = verify_certificate(&g, &back).unwrap();
        assert!(v.valid, "{name}: {:?}", v.failures);
        assert!(cert.claimed_bound >= 1.0);
    }
}

fn tampered(cert: &LowerBoundCertificate) -> Vec<(&'static str, LowerBoundCertificate)> {
    let mut out = Vec::new();
    let mut c = cert.clone();
    c.schema_version += 1;
    out.push(("schema_version", c));
    let mut c = cert.clone();
    c.r += 0.5;
    out.push(("r up", c));
    let mut c = cert.clone();
    c.r -= 0.5;
    out.push(("r down", c));
    let mut c = cert.clone();
    c.claimed_bound += 1e-6;
    out.push(("claimed_bound", c));
    let mut c = cert.clone();
    c.tolerances.psd_shift *= 1e3;
    out.push(("psd_shift", c));
    let mut c = cert.clone();
    c.tolerances.arithmetic = 1e-3;
    out.push(("arithmetic", c));
    let mut c = cert.clone();
    c.tolerances.trace = 1e-2;
    out.push(("trace", c));
    let mut c = cert.clone();
    c.weighting = Weighting::Explicit { n: 2, entries: vec![(0, 1, 1.0)] };
    out.push(("weighting", c));
    let mut c = cert.clone();
    c.generator_metadata.rng = "mt19937".into();
    out.push(("metadata rng", c));
    let mut c = cert.clone();
    c.generator_metadata.r_star = Some(cert.r - 1.0);
    out.push(("metadata r_star", c));
    let mut c = cert.clone();
    c.generator_metadata.boundary_case = !cert.generator_metadata.boundary_case;
    out.push(("metadata boundary", c));
    out
}

#[test]
fn every_single_field_tamper_is_rejected() {
    for (name, g) in eligible_corpus() {
        let cert = certify(&g);
        for (field, bad) in tampered(&cert) {
            let v = verify_certificate(&g, &bad).unwrap();
            assert!(!v.valid, "{name}: tampered {field} accepted");
        }
        let mut c = cert.clone();
        c.graph_digest = "0".repeat(64);
        assert!(matches!(verify_certificate(&g, &c), Err(Error::WrongGraph)), "{name}");
    }
}

#[test]
fn certificates_do_not_transfer_between_graphs() {
    let cert = certify(&corpus::petersen());
    assert!(matches!(verify_certificate(&corpus::dodecahedron(), &cert), Err(Error::WrongGraph)));
}
