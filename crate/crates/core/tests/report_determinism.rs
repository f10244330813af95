use geocipher::analysis::axioms::minkowski_axiom_audit;
use geocipher::analysis::completeness::{minkowski_full_cipher_audit, laguerre_completeness_audit, LagScope};
use geocipher::analysis::perfectness::minkowski_perfectness_audit;
use geocipher::field::{Field, FieldSpec};
use geocipher::laguerre_cipher::LagCipherConfig;
use geocipher::minkowski::MinkPoint;
use geocipher::minkowski_cipher::MinkowskiCipher;
use geocipher::report::{emit, Format};

fn twice<F: Fn() -> String>(f: F) {
    assert_eq!(f(), f());
}

#[test]
fn axiom_report_bytes_are_stable() {
    let f = Field::prime(3).unwrap();
    twice(|| emit(&minkowski_axiom_audit(&f, true), Format::Json).unwrap());
}

#[test]
fn perfectness_report_bytes_are_stable() {
    let f = Field::prime(5).unwrap();
    let c = MinkowskiCipher::new(f.clone());
    let pts = ["(0,1)", "(1,2)", "(2,4)"].map(|t| MinkPoint::from_text(&f, t).unwrap());
    let msg = c.message(pts).unwrap();
    for format in [Format::Json, Format::Csv, Format::Md] {
        twice(|| emit(&minkowski_perfectness_audit(&c, &msg).unwrap(), format).unwrap());
    }
}

#[test]
fn full_cipher_report_is_schedule_independent() {
    let c = MinkowskiCipher::new(Field::binary(2).unwrap());
    let serial = {
        std::env::set_var("GEOCIPHER_THREADS", "1");
        emit(&minkowski_full_cipher_audit(&c, 0, 0).unwrap(), Format::Json).unwrap()
    };
    std::env::set_var("GEOCIPHER_THREADS", "4");
    let parallel = emit(&minkowski_full_cipher_audit(&c, 0, 0).unwrap(), Format::Json).unwrap();
    std::env::remove_var("GEOCIPHER_THREADS");
    assert_eq!(serial, parallel);
}

#[test]
fn sampled_report_depends_only_on_seed() {
    let c = MinkowskiCipher::new(Field::binary(3).unwrap());
    let run = |seed| emit(&minkowski_full_cipher_audit(&c, 5_000, seed).unwrap(), Format::Json).unwrap();
    assert_eq!(run(11), run(11));
    assert_ne!(run(11), run(12));
}

#[test]
fn avalanche_csv_is_a_bit_grid() {
    let cfg = LagCipherConfig::with_default_generators(FieldSpec::binary(3).build().unwrap()).unwrap();
    let r = laguerre_completeness_audit(&cfg, LagScope::FixedGenerators).unwrap();
    let csv = emit(&r, Format::Csv).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.split(',').count() == 3 && r.split(',').all(|c| c == "0" || c == "1")));
}
