//! The reduced maps `iω̄f : m_0^i θ_0 / m_0^{i+1} θ_0 -> f^*m_0^i θ(f) / (TR_e(f) ∩ f^*m_0^i θ(f) + f^*m_0^{i+1} θ(f))`,
//! their kernels, and the indices `i1`, `i2`.
//!
//! Everything is computed modulo `f^*m_0^{i+1} θ(f)`, i.e. in `R_{i+1}^p` per branch.
//! A second, independent route on full jet spaces ([`omega_map_direct`]) is
//! kept for cross-checks on small germs.

use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::germ::Multigerm;
use crate::linalg::{intersect, kernel_of_images, Echelon, JetBasis, SparseVec};
use crate::liftgen::TargetVectorField;
use crate::localalg::{module_vector, predicted_graded, BranchQuotient, GermContext};
use crate::poly::{binomial, JetOrder, Monomial, Polynomial};

/// Matrix of `iω̄f` in quotient coordinates.
#[derive(Clone, Debug)]
pub struct OmegaMap {
    pub level: usize,
    /// Domain basis `X^alpha ∂/∂X_q`, `|alpha| = level`; alpha-major, lex-descending.
    pub domain: Vec<(Monomial, usize)>,
    /// `images[k]` holds the quotient coordinates of the image of `domain[k]`.
    pub images: Vec<SparseVec>,
    pub target_dim: usize,
    pub rank: usize,
    /// Kernel basis in reduced echelon form over the domain coordinates.
    pub kernel: Vec<SparseVec>,
}

impl OmegaMap {
    fn from_images(level: usize, domain: Vec<(Monomial, usize)>, images: Vec<SparseVec>, target_dim: usize) -> Self {
        let (rank, kernel) = kernel_of_images(&images, target_dim);
        OmegaMap {
            level,
            domain,
            images,
            target_dim,
            rank,
            kernel,
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.domain.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.target_dim
    }

    pub fn is_injective(&self) -> bool {
        self.kernel.is_empty()
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    /// The kernel basis as homogeneous vector fields of degree `level`.
    pub fn kernel_fields(&self, p: usize) -> Vec<TargetVectorField> {
        self.kernel
            .iter()
            .map(|v| domain_vector_to_field(&self.domain, v, p))
            .collect()
    }
}

/// `X^alpha ∂/∂X_q` for all `|alpha| = level`, alpha-major.
pub fn omega_domain(p: usize, level: usize) -> Vec<(Monomial, usize)> {
    Monomial::all_of_degree(p, level as u32)
        .into_iter()
        .flat_map(|a| (0..p).map(move |q| (a.clone(), q)))
        .collect()
}

pub fn domain_vector_to_field(domain: &[(Monomial, usize)], v: &[(u32, crate::Rational)], p: usize) -> TargetVectorField {
    let ring = crate::RingTag::target(p);
    let mut comps = vec![Polynomial::zero(ring); p];
    for (k, x) in v {
        let (m, q) = &domain[*k as usize];
        comps[*q].add_term(m.clone(), x.clone());
    }
    TargetVectorField::new(comps)
}

/// Coordinates of `V / W` where `W ⊂ V`: vectors of `V` are reduced modulo `W`
/// and read off at the pivots of the reduced basis of `V`.
struct QuotientCoords {
    w: Echelon,
    q: Echelon,
    pivots: Vec<u32>,
}

impl QuotientCoords {
    fn new(v: &Echelon, w: Echelon) -> Self {
        let q = Echelon::from_rows(v.ncols(), v.rows().into_iter().map(|r| w.reduce(r)));
        let pivots = q.pivots();
        QuotientCoords { w, q, pivots }
    }

    fn dim(&self) -> usize {
        self.pivots.len()
    }

    fn coords(&self, x: &[(u32, crate::Rational)], offset: u32) -> SparseVec {
        let r = self.w.reduce(x);
        debug_assert!(self.q.contains(&r));
        let mut out = Vec::new();
        let mut k = 0;
        for (c, a) in r {
            while k < self.pivots.len() && self.pivots[k] < c {
                k += 1;
            }
            if k < self.pivots.len() && self.pivots[k] == c {
                out.push((offset + k as u32, a));
            }
        }
        out
    }
}

/// Image of `f^*m_0^i θ(f)` and its intersection with `TR_e(f)` inside `R_K^p`.
fn level_spaces(bq: &BranchQuotient, i: usize) -> (Echelon, Echelon) {
    let v = bq.power_module(i);
    let w = intersect(&v, &bq.tangent);
    (v, w)
}

fn pullback_in_slot(bq: &BranchQuotient, alpha: &Monomial, q: usize) -> SparseVec {
    let dim = bq.dim();
    bq.pullback_monomial(alpha)
        .into_iter()
        .map(|(s, x)| ((q * dim) as u32 + s, x))
        .collect()
}

impl GermContext {
    /// `iω̄f` computed in the quotients `R_{i+1}`.
    pub fn omega_map(&self, i: usize) -> Result<OmegaMap> {
        let g = self.germ();
        let domain = omega_domain(g.p, i);
        let mut images = vec![Vec::new(); domain.len()];
        let mut offset = 0u32;
        for j in 0..g.num_branches() {
            let bq = self.quotient(j, i + 1)?;
            let (v, w) = level_spaces(&bq, i);
            let qc = QuotientCoords::new(&v, w);
            for (k, (alpha, q)) in domain.iter().enumerate() {
                let x = pullback_in_slot(&bq, alpha, *q);
                images[k].extend(qc.coords(&x, offset));
            }
            offset += qc.dim() as u32;
        }
        Ok(OmegaMap::from_images(i, domain, images, offset as usize))
    }

    /// Kernel dimension and basis of `iω̄f`.
    pub fn omega_kernel(&self, i: usize) -> Result<(usize, Vec<TargetVectorField>)> {
        let m = self.omega_map(i)?;
        Ok((m.kernel_dim(), m.kernel_fields(self.germ().p)))
    }

    /// Closed-form `dim ker(i+1 ω̄f)`, valid when `i+1 ω̄f` is surjective.
    pub fn predicted_kernel_dim(&self, i: usize) -> Result<usize> {
        if !self.omega_map(i + 1)?.is_surjective() {
            return Err(Error::Hypothesis(format!(
                "level {} map is not surjective, so the kernel formula does not apply",
                i + 1
            )));
        }
        let g = self.germ();
        Ok(kernel_formula(g.n, g.p, self.stabilization().delta, g.num_branches(), i))
    }

    /// Evaluates levels `0..=kmax` (stopping once both indices are settled).
    pub fn indices(&self, kmax: usize) -> Result<IndexReport> {
        let mut levels = Vec::new();
        let mut first_surjective = None;
        let mut first_non_injective = None;
        for i in 0..=kmax {
            let m = self.omega_map(i)?;
            levels.push(LevelSummary::of(&m));
            if m.is_surjective() && first_surjective.is_none() {
                first_surjective = Some(i);
            }
            if !m.is_injective() && first_non_injective.is_none() {
                first_non_injective = Some(i);
            }
            if first_surjective.is_some() && first_non_injective.is_some() {
                break;
            }
        }
        let i1 = match first_surjective {
            Some(i) => IndexValue::Exact(i as i64),
            None => IndexValue::NotFoundUpTo(kmax),
        };
        let i2 = match first_non_injective {
            Some(0) => IndexValue::NegativeInfinity,
            Some(i) => IndexValue::Exact(i as i64 - 1),
            None => IndexValue::AtLeast(kmax),
        };
        let well_behaved = match (i1, i2) {
            (IndexValue::Exact(a), IndexValue::Exact(b)) => Some(a - b),
            _ => None,
        };
        Ok(IndexReport {
            i1,
            i2,
            well_behaved,
            kmax,
            levels,
        })
    }

    /// Compares `f^*m_0 (TR_e ∩ f^*m_0^{i+1} θ)` with `TR_e ∩ f^*m_0^{i+2} θ`
    /// modulo `f^*m_0^{i+3} θ`.
    pub fn tangent_intersection_check(&self, i: usize) -> Result<SubspaceComparison> {
        let g = self.germ();
        let mut lhs_dim = 0;
        let mut rhs_dim = 0;
        let mut equal = true;
        for j in 0..g.num_branches() {
            let bq = self.quotient(j, i + 3)?;
            let dim = bq.dim();
            let (_, m1) = level_spaces(&bq, i + 1);
            let (_, m2) = level_spaces(&bq, i + 2);
            let mut lhs = Echelon::new(bq.p() * dim);
            for w in m1.rows() {
                for c in &bq.comps {
                    let parts = (0..bq.p()).map(|q| {
                        let slot: SparseVec = w
                            .iter()
                            .filter(|(col, _)| (*col as usize) / dim == q)
                            .map(|(col, x)| (col - (q * dim) as u32, x.clone()))
                            .collect();
                        bq.ring.mul(&slot, c)
                    });
                    lhs.insert(module_vector(parts, dim));
                }
            }
            lhs.make_reduced();
            lhs_dim += lhs.rank();
            rhs_dim += m2.rank();
            equal &= lhs.same_space(&m2);
        }
        Ok(SubspaceComparison {
            lhs_dim,
            rhs_dim,
            equal,
        })
    }
}

/// `p C(p+i, i+1) - ((p-n) δ_{i+1} + γ_{i+1} - γ_i)` with the graded values
/// from the closed formulas.
pub fn kernel_formula(n: usize, p: usize, delta: usize, branches: usize, i: usize) -> usize {
    let a = predicted_graded(n, delta, branches, i);
    let b = predicted_graded(n, delta, branches, i + 1);
    let dom = (p as u64 * binomial((p + i) as u64, (i + 1) as u64)) as i64;
    let target = ((p - n) * b.delta + b.gamma) as i64 - a.gamma as i64;
    (dom - target).max(0) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexValue {
    Exact(i64),
    NegativeInfinity,
    /// Injective at every level up to and including the bound.
    AtLeast(usize),
    /// Not surjective at any level up to and including the bound.
    NotFoundUpTo(usize),
}

impl IndexValue {
    pub fn exact(&self) -> Option<i64> {
        match self {
            IndexValue::Exact(v) => Some(*v),
            _ => None,
        }
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::Exact(v) => write!(f, "{v}"),
            IndexValue::NegativeInfinity => write!(f, "-inf"),
            IndexValue::AtLeast(k) => write!(f, ">= {k}"),
            IndexValue::NotFoundUpTo(k) => write!(f, "not found <= {k}"),
        }
    }
}

impl Serialize for IndexValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            IndexValue::Exact(v) => s.serialize_i64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub level: usize,
    pub domain_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub surjective: bool,
    pub injective: bool,
}

impl LevelSummary {
    pub fn of(m: &OmegaMap) -> Self {
        LevelSummary {
            level: m.level,
            domain_dim: m.domain_dim(),
            target_dim: m.target_dim,
            rank: m.rank,
            kernel_dim: m.kernel_dim(),
            surjective: m.is_surjective(),
            injective: m.is_injective(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub i1: IndexValue,
    pub i2: IndexValue,
    pub well_behaved: Option<i64>,
    pub kmax: usize,
    pub levels: Vec<LevelSummary>,
}

impl IndexReport {
    /// The level `i` with `i1 = i2 = i`, if any.
    pub fn bijective_level(&self) -> Option<usize> {
        match (self.i1, self.i2) {
            (IndexValue::Exact(a), IndexValue::Exact(b)) if a == b => Some(a as usize),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceComparison {
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub equal: bool,
}

pub fn omega_map(g: &Multigerm, i: usize) -> Result<OmegaMap> {
    GermContext::new(g)?.omega_map(i)
}

pub fn omega_kernel(g: &Multigerm, i: usize) -> Result<(usize, Vec<TargetVectorField>)> {
    GermContext::new(g)?.omega_kernel(i)
}

pub fn predicted_kernel_dim(g: &Multigerm, i: usize) -> Result<usize> {
    GermContext::new(g)?.predicted_kernel_dim(i)
}

/// Default level bound `ell + 2`.
pub fn default_kmax(ctx: &GermContext) -> usize {
    ctx.stabilization().ell as usize + 2
}

pub fn indices(g: &Multigerm, kmax: Option<usize>) -> Result<IndexReport> {
    let ctx = GermContext::new(g)?;
    let k = kmax.unwrap_or_else(|| default_kmax(&ctx));
    ctx.indices(k)
}

/// A subspace of `⊕_branches (jets of order N)^p`; column of
/// `(branch j, source monomial m, component q)` is `(j * |J_N| + m) * p + q`.
#[derive(Clone, Debug)]
pub struct JetSubspace {
    pub order: JetOrder,
    pub p: usize,
    pub branches: usize,
    basis_len: usize,
    pub echelon: Echelon,
}

impl JetSubspace {
    fn layout(g: &Multigerm, order: JetOrder) -> (JetBasis, usize) {
        let basis = JetBasis::new(g.n, order);
        let ncols = g.num_branches() * basis.len() * g.p;
        (basis, ncols)
    }

    fn column(&self, j: usize, m: u32, q: usize) -> u32 {
        ((j * self.basis_len + m as usize) * self.p + q) as u32
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.echelon.ncols()
    }

    pub fn contains(&self, other: &JetSubspace) -> bool {
        self.echelon.contains_space(&other.echelon)
    }

    pub fn intersection(&self, other: &JetSubspace) -> JetSubspace {
        JetSubspace {
            echelon: intersect(&self.echelon, &other.echelon),
            ..self.clone()
        }
    }

    pub fn sum(&self, other: &JetSubspace) -> JetSubspace {
        let rows = self
            .echelon
            .rows()
            .into_iter()
            .chain(other.echelon.rows())
            .cloned()
            .collect::<Vec<_>>();
        JetSubspace {
            echelon: Echelon::from_rows(self.ambient_dim(), rows),
            ..self.clone()
        }
    }
}

fn jet_module_vector(basis: &JetBasis, comps: &[Polynomial], col: impl Fn(u32, usize) -> u32) -> SparseVec {
    let mut out = Vec::new();
    for (q, c) in comps.iter().enumerate() {
        for (m, x) in basis.to_vec(c) {
            out.push((col(m, q), x));
        }
    }
    crate::linalg::collect_sparse(out)
}

/// Jets of `tf(θ_S(n))`: spanned by `(∂f/∂x_k) m` for source monomials `m`.
pub fn tr_e_jets(g: &Multigerm, order: JetOrder) -> JetSubspace {
    let (basis, ncols) = JetSubspace::layout(g, order);
    let mut e = Echelon::new(ncols);
    let blen = basis.len();
    for (j, b) in g.branches.iter().enumerate() {
        for k in 0..g.n {
            let partials: Vec<Polynomial> = b.components.iter().map(|c| c.partial(k)).collect();
            for m in basis.monomials() {
                let mono = Polynomial::monomial(g.source_ring(), m.clone(), crate::Rational::from(1));
                let comps: Vec<Polynomial> = partials.iter().map(|d| d.mul_truncated(&mono, Some(order))).collect();
                e.insert(jet_module_vector(&basis, &comps, |mc, q| ((j * blen + mc as usize) * g.p + q) as u32));
            }
        }
    }
    e.make_reduced();
    JetSubspace {
        order,
        p: g.p,
        branches: g.num_branches(),
        basis_len: blen,
        echelon: e,
    }
}

/// Jets of `f^*m_0^i θ(f)`.
pub fn pullback_power_jets(g: &Multigerm, i: usize, order: JetOrder) -> JetSubspace {
    let (basis, ncols) = JetSubspace::layout(g, order);
    let blen = basis.len();
    let mut sub = JetSubspace {
        order,
        p: g.p,
        branches: g.num_branches(),
        basis_len: blen,
        echelon: Echelon::new(ncols),
    };
    let mut e = Echelon::new(ncols);
    for (j, b) in g.branches.iter().enumerate() {
        let cap = Some(order);
        let gens: Vec<SparseVec> = Monomial::all_of_degree(g.p, i as u32)
            .into_iter()
            .map(|a| {
                let mut acc = Polynomial::one(g.source_ring());
                for (q, &x) in a.exponents().iter().enumerate() {
                    acc = acc.mul_truncated(&b.components[q].pow_truncated(x, cap), cap);
                }
                basis.to_vec(&acc)
            })
            .collect();
        let ideal = crate::linalg::ideal_in_jets(&basis, gens);
        for row in ideal.rows() {
            for q in 0..g.p {
                let v = row.iter().map(|(m, x)| (sub.column(j, *m, q), x.clone())).collect::<Vec<_>>();
                e.insert(crate::linalg::collect_sparse(v));
            }
        }
    }
    e.make_reduced();
    sub.echelon = e;
    sub
}

/// `iω̄f` computed on full jet spaces of order `N`; needs `m^{N+1} ⊂ f^*m_0^{i+1} C`
/// on every branch.
pub fn omega_map_direct(g: &Multigerm, i: usize, order: JetOrder) -> OmegaMap {
    let v = pullback_power_jets(g, i, order);
    let next = pullback_power_jets(g, i + 1, order);
    let w = tr_e_jets(g, order).intersection(&v).sum(&next);
    let qc = QuotientCoords::new(&v.echelon, w.echelon);
    let (basis, _) = JetSubspace::layout(g, order);
    let domain = omega_domain(g.p, i);
    let images = domain
        .iter()
        .map(|(alpha, q)| {
            let mut x = Vec::new();
            for (j, b) in g.branches.iter().enumerate() {
                let u = Polynomial::monomial(g.target_ring(), alpha.clone(), crate::Rational::from(1));
                let c = u.compose(&b.components, order).expect("validated germ");
                for (m, a) in basis.to_vec(&c) {
                    if !a.is_zero() {
                        x.push((v.column(j, m, *q), a));
                    }
                }
            }
            qc.coords(&crate::linalg::collect_sparse(x), 0)
        })
        .collect();
    OmegaMap::from_images(i, domain, images, qc.dim())
}
