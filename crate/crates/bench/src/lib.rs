//! Shared inputs for the benchmarks.

use trscert::frontend::{parse_cert, parse_trs};
use trscert::{CarrierSpec, Certificate, Matrix, MatrixSpec, Rational, Scalar};

pub const HALF_TRS: &str = "(VAR x)\n(RULES\n)\n";
pub const HALF_CERT: &str = r#"{
  "problem": "ordered",
  "pairs": ["s(x) -> p(half(s(s(x))))"],
  "steps": [{
    "regime": "negconst", "carrier": "rat", "delta": "1/2",
    "interpretation": { "half": ["1/2", "1/2"], "p": ["-1", "1"], "s": ["1", "1"] },
    "strict": [0]
  }]
}"#;

pub fn half_certificate() -> Certificate {
    let trs = parse_trs(HALF_TRS).expect("valid TRS");
    parse_cert(HALF_CERT, &trs).expect("valid certificate")
}

/// A `dim`×`dim` rational matrix with small distinct entries.
pub fn rational_matrix(spec: &MatrixSpec, seed: i64) -> Matrix {
    let n = spec.dim();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let k = seed + (i * n + j) as i64;
                    Scalar::Rat(Rational::new(k % 7 - 3, k % 5 + 1).expect("nonzero denominator"))
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).expect("square")
}

pub fn rat_matrices(dim: usize) -> MatrixSpec {
    let base = CarrierSpec::rat(Rational::new(1, 3).expect("nonzero")).expect("positive delta");
    MatrixSpec::new(base, dim, None).expect("valid spec")
}
