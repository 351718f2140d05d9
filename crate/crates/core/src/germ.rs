//! Multigerm model, input validation and stabilization of the pullback ideal.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ideal_in_jets, rank_of, JetBasis};
use crate::parse::parse_poly;
use crate::poly::{JetOrder, Monomial, Polynomial, RingTag};

/// One branch `f_j : (K^n, 0) -> (K^p, 0)`, written in a chart centered at its base point.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub label: String,
    pub components: Vec<Polynomial>,
}

/// A map germ `f : (K^n, S) -> (K^p, 0)` given by its branches.
#[derive(Clone, Debug, PartialEq)]
pub struct Multigerm {
    pub name: Option<String>,
    pub n: usize,
    pub p: usize,
    pub branches: Vec<Branch>,
}

/// JSON form of a branch: either `{"components": [...], "label": ...}` or a bare list.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BranchDocument {
    Full {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        components: Vec<String>,
    },
    Bare(Vec<String>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub p: usize,
    pub branches: Vec<BranchDocument>,
}

pub fn load_multigerm(text: &str) -> Result<Multigerm> {
    let doc: GermDocument =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    Multigerm::from_document(&doc)
}

impl Multigerm {
    pub fn from_document(doc: &GermDocument) -> Result<Multigerm> {
        if doc.n == 0 {
            return Err(Error::Schema("n must be at least 1".into()));
        }
        if doc.branches.is_empty() {
            return Err(Error::Schema("at least one branch is required".into()));
        }
        let src = RingTag::source(doc.n);
        let mut branches = Vec::with_capacity(doc.branches.len());
        for (j, b) in doc.branches.iter().enumerate() {
            let (label, comps) = match b {
                BranchDocument::Full { label, components } => (label.clone(), components),
                BranchDocument::Bare(c) => (None, c),
            };
            if comps.len() != doc.p {
                return Err(Error::Schema(format!(
                    "branch {j} has {} components, expected p = {}",
                    comps.len(),
                    doc.p
                )));
            }
            let components = comps
                .iter()
                .map(|s| parse_poly(s, src))
                .collect::<Result<Vec<_>>>()?;
            branches.push(Branch {
                label: label.unwrap_or_else(|| format!("s{}", j + 1)),
                components,
            });
        }
        Multigerm::new(doc.name.clone(), doc.n, doc.p, branches)
    }

    /// Validates and builds a multigerm.
    pub fn new(name: Option<String>, n: usize, p: usize, branches: Vec<Branch>) -> Result<Multigerm> {
        let g = Multigerm {
            name,
            n,
            p,
            branches,
        };
        for (j, b) in g.branches.iter().enumerate() {
            for (q, c) in b.components.iter().enumerate() {
                if c.ring() != RingTag::source(n) {
                    return Err(Error::RingMismatch {
                        left: RingTag::source(n).to_string(),
                        right: c.ring().to_string(),
                    });
                }
                if !c.constant_term().is_zero() {
                    return Err(Error::ConstantTerm {
                        branch: j,
                        component: q,
                    });
                }
            }
        }
        if n > p {
            return Err(Error::SourceExceedsTarget { n, p });
        }
        for j in 0..g.branches.len() {
            let c = g.branch_corank(j);
            if c > 1 {
                return Err(Error::CorankTooLarge {
                    corank: c,
                    branch: j,
                });
            }
        }
        Ok(g)
    }

    /// Parses a list of branches given as expression strings.
    pub fn from_strings(n: usize, p: usize, branches: &[&[&str]]) -> Result<Multigerm> {
        let doc = GermDocument {
            name: None,
            n,
            p,
            branches: branches
                .iter()
                .map(|b| BranchDocument::Bare(b.iter().map(|s| s.to_string()).collect()))
                .collect(),
        };
        Multigerm::from_document(&doc)
    }

    pub fn to_document(&self) -> GermDocument {
        GermDocument {
            name: self.name.clone(),
            n: self.n,
            p: self.p,
            branches: self
                .branches
                .iter()
                .map(|b| BranchDocument::Full {
                    label: Some(b.label.clone()),
                    components: b.components.iter().map(|c| c.to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn source_ring(&self) -> RingTag {
        RingTag::source(self.n)
    }

    pub fn target_ring(&self) -> RingTag {
        RingTag::target(self.p)
    }

    pub fn num_branches(&self) -> usize {
        self.branches.len()
    }

    /// `n - rank Jf_j(0)`.
    pub fn branch_corank(&self, j: usize) -> usize {
        let n = self.n;
        let rows = self.branches[j].components.iter().map(|c| {
            (0..n)
                .filter_map(|k| {
                    let x = c.coeff(&Monomial::var(n, k));
                    (!x.is_zero()).then_some((k as u32, x))
                })
                .collect()
        });
        n - rank_of(rows, n)
    }
}

/// Maximum over branches of `n - rank Jf_j(0)`.
pub fn corank(g: &Multigerm) -> usize {
    (0..g.num_branches())
        .map(|j| g.branch_corank(j))
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationResult {
    /// Largest per-branch stabilization order.
    pub ell: u32,
    pub ell_per_branch: Vec<u32>,
    pub delta_per_branch: Vec<usize>,
    pub delta: usize,
}

/// Per branch, finds the first `N` with `d_N = d_{N+1}`, where `d_N` is the
/// codimension of the pullback ideal in the jets of degree at most `N`; then
/// `m^{N+1}` lies in the ideal, `delta_j = d_N` and `ell_j = N + 1`.
pub fn stabilization(g: &Multigerm, max_order: u32) -> Result<StabilizationResult> {
    let mut ells = Vec::new();
    let mut deltas = Vec::new();
    for (j, b) in g.branches.iter().enumerate() {
        let (delta, ell) = branch_stabilization(g.n, &b.components, max_order)
            .ok_or(Error::DeltaNotFinite { branch: j, max_order })?;
        deltas.push(delta);
        ells.push(ell);
    }
    Ok(StabilizationResult {
        ell: ells.iter().copied().max().unwrap_or(1),
        delta: deltas.iter().sum(),
        ell_per_branch: ells,
        delta_per_branch: deltas,
    })
}

fn branch_stabilization(n: usize, comps: &[Polynomial], max_order: u32) -> Option<(usize, u32)> {
    let mut m = 2.min(max_order.max(1));
    loop {
        let basis = JetBasis::new(n, JetOrder(m));
        let ideal = ideal_in_jets(&basis, comps.iter().map(|c| basis.to_vec(c)));
        // rows with pivot of degree <= d truncate to an echelon basis of the degree-d truncation
        let mut pivots_up_to = vec![0usize; m as usize + 1];
        for c in ideal.pivots() {
            pivots_up_to[basis.degree_of(c) as usize] += 1;
        }
        let mut codim = Vec::with_capacity(m as usize + 1);
        let mut acc = 0;
        for d in 0..=m {
            acc += pivots_up_to[d as usize];
            codim.push(basis.count_up_to(d) - acc);
        }
        for d in 0..m {
            if codim[d as usize] == codim[d as usize + 1] {
                return Some((codim[d as usize], d + 1));
            }
        }
        if m >= max_order {
            return None;
        }
        m = (2 * m).min(max_order);
    }
}
