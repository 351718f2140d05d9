//! Built-in germs with known invariants, and reference generator lists.

use crate::error::Result;
use crate::germ::Multigerm;
use crate::ksm::IndexValue;
use crate::liftgen::TargetVectorField;

/// Known values; `None` means "not asserted".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Expectation {
    pub delta: Option<usize>,
    pub gamma: Option<usize>,
    pub i1: Option<IndexValue>,
    pub i2: Option<IndexValue>,
    pub min_generators: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub key: &'static str,
    pub title: &'static str,
    pub n: usize,
    pub p: usize,
    pub branches: &'static [&'static [&'static str]],
    pub expect: Expectation,
}

impl CorpusEntry {
    pub fn germ(&self) -> Multigerm {
        let mut g = Multigerm::from_strings(self.n, self.p, self.branches).expect("built-in germ is valid");
        g.name = Some(self.key.to_string());
        g
    }
}

const fn exact(v: i64) -> Option<IndexValue> {
    Some(IndexValue::Exact(v))
}

const fn expect(
    delta: Option<usize>,
    gamma: Option<usize>,
    i1: Option<IndexValue>,
    i2: Option<IndexValue>,
    min_generators: Option<usize>,
) -> Expectation {
    Expectation {
        delta,
        gamma,
        i1,
        i2,
        min_generators,
    }
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        key: "fold-type-n2",
        title: "(x1, x2^3 + x1*x2)",
        n: 2,
        p: 2,
        branches: &[&["x1", "x2^3 + x1*x2"]],
        expect: expect(Some(3), Some(2), None, None, Some(2)),
    },
    CorpusEntry {
        key: "fold-type-n3",
        title: "(x1, x2, x3^4 + x1*x3 + x2*x3^2)",
        n: 3,
        p: 3,
        branches: &[&["x1", "x2", "x3^4 + x1*x3 + x2*x3^2"]],
        expect: expect(Some(4), Some(3), None, None, Some(3)),
    },
    CorpusEntry {
        key: "phi2",
        title: "(x1, x2^2, x1*x2)",
        n: 2,
        p: 3,
        branches: &[&["x1", "x2^2", "x1*x2"]],
        expect: expect(Some(2), Some(1), exact(0), exact(0), Some(4)),
    },
    CorpusEntry {
        key: "phi3",
        title: "(x1, x2, x3, x4^3 + x1*x4, x2*x4 + x3*x4^2)",
        n: 4,
        p: 5,
        branches: &[&["x1", "x2", "x3", "x4^3 + x1*x4", "x2*x4 + x3*x4^2"]],
        expect: expect(Some(3), Some(2), None, None, Some(7)),
    },
    CorpusEntry {
        key: "psi3",
        title: "(x1, x2, x3^2, x1*x3, x2*x3)",
        n: 3,
        p: 5,
        branches: &[&["x1", "x2", "x3^2", "x1*x3", "x2*x3"]],
        expect: expect(Some(2), Some(1), exact(0), exact(0), Some(11)),
    },
    CorpusEntry {
        key: "plane-curve-4-5",
        title: "(x1^4, x1^5 + x1^7)",
        n: 1,
        p: 2,
        branches: &[&["x1^4", "x1^5 + x1^7"]],
        expect: expect(Some(4), Some(3), exact(1), exact(1), Some(2)),
    },
    CorpusEntry {
        key: "two-cusps",
        title: "{(x1^2, x1^3), (x1^3, x1^2)}",
        n: 1,
        p: 2,
        branches: &[&["x1^2", "x1^3"], &["x1^3", "x1^2"]],
        expect: expect(Some(4), Some(2), exact(1), exact(1), Some(2)),
    },
    CorpusEntry {
        key: "axes-and-curve",
        title: "{(x1, 0), (0, x1), (x1^2, x1^3 + x1^4)}",
        n: 1,
        p: 2,
        branches: &[&["x1", "0"], &["0", "x1"], &["x1^2", "x1^3 + x1^4"]],
        expect: expect(Some(4), Some(1), exact(1), exact(1), Some(2)),
    },
    CorpusEntry {
        key: "lips-type",
        title: "(x1, x1*x2 + x2^5 + x2^7)",
        n: 2,
        p: 2,
        branches: &[&["x1", "x1*x2 + x2^5 + x2^7"]],
        expect: expect(Some(5), Some(4), exact(1), exact(1), Some(2)),
    },
    CorpusEntry {
        key: "large-corank-one",
        title: "(x1, x2, x3, x4^4 + x1*x4, x4^6 + x4^7 + x2*x4 + x3*x4^2)",
        n: 4,
        p: 5,
        branches: &[&["x1", "x2", "x3", "x4^4 + x1*x4", "x4^6 + x4^7 + x2*x4 + x3*x4^2"]],
        expect: expect(Some(4), Some(3), None, None, Some(17)),
    },
    CorpusEntry {
        key: "cusp",
        title: "(x1^2, x1^3)",
        n: 1,
        p: 2,
        branches: &[&["x1^2", "x1^3"]],
        expect: expect(Some(2), Some(1), exact(1), None, None),
    },
    CorpusEntry {
        key: "lines-2",
        title: "{(x1, 0), (0, x1)}",
        n: 1,
        p: 2,
        branches: &[&["x1", "0"], &["0", "x1"]],
        expect: expect(Some(2), Some(0), exact(0), exact(0), Some(2)),
    },
    CorpusEntry {
        key: "lines-3",
        title: "{(x1, 0), (x1, x1), (0, x1)}",
        n: 1,
        p: 2,
        branches: &[&["x1", "0"], &["x1", "x1"], &["0", "x1"]],
        expect: expect(Some(3), Some(0), exact(1), exact(0), None),
    },
    CorpusEntry {
        key: "lines-4",
        title: "{(x1, 0), (x1, x1), (x1, 2*x1), (0, x1)}",
        n: 1,
        p: 2,
        branches: &[&["x1", "0"], &["x1", "x1"], &["x1", "2*x1"], &["0", "x1"]],
        expect: expect(Some(4), Some(0), exact(2), exact(0), None),
    },
];

pub fn entry(key: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.key == key)
}

/// Reference generators for `phi2`.
pub const PHI2_GENERATORS: &[&[&str]] = &[
    &["X1", "0", "X3"],
    &["X3", "0", "X1*X2"],
    &["0", "2*X3", "X1^2"],
    &["0", "2*X2", "X3"],
];

/// Reference generators for `two-cusps`.
pub const TWO_CUSPS_GENERATORS: &[&[&str]] = &[
    &["6*X1*X2 - 6*X1^2*X2^2", "4*X2^2 + 5*X1^3 - 9*X1*X2^3"],
    &["4*X1^2 + 5*X2^3 - 9*X1^3*X2", "6*X1*X2 - 6*X1^2*X2^2"],
];

pub fn fields(list: &[&[&str]]) -> Result<Vec<TargetVectorField>> {
    list.iter().map(|c| TargetVectorField::parse(c)).collect()
}
