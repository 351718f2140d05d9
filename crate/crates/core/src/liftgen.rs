//! Liftable vector fields: generator counts, explicit generators, liftability
//! checks and jet-level span comparisons.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::germ::Multigerm;
use crate::ksm::{kernel_formula, IndexReport};
use crate::linalg::{collect_sparse, kernel_of_images, solve_columns, Echelon, JetBasis, SparseVec};
use crate::localalg::{module_vector, GermContext};
use crate::parse::parse_poly;
use crate::poly::{JetOrder, Monomial, Polynomial, Rational, RingTag};

/// `sum_q components[q] d/dX_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetVectorField {
    pub components: Vec<Polynomial>,
}

impl TargetVectorField {
    /// # Panics
    /// If the components do not all live in `K[X1..Xp]` with `p = components.len()`.
    pub fn new(components: Vec<Polynomial>) -> Self {
        let ring = RingTag::target(components.len());
        assert!(components.iter().all(|c| c.ring() == ring), "components must be in {ring}");
        TargetVectorField { components }
    }

    pub fn zero(p: usize) -> Self {
        TargetVectorField::new(vec![Polynomial::zero(RingTag::target(p)); p])
    }

    /// `X^beta d/dX_q`.
    pub fn monomial(p: usize, beta: Monomial, q: usize) -> Self {
        let mut f = TargetVectorField::zero(p);
        f.components[q] = Polynomial::monomial(RingTag::target(p), beta, Rational::one());
        f
    }

    pub fn parse<S: AsRef<str>>(components: &[S]) -> Result<Self> {
        let ring = RingTag::target(components.len());
        let comps = components
            .iter()
            .map(|s| parse_poly(s.as_ref(), ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(TargetVectorField::new(comps))
    }

    pub fn p(&self) -> usize {
        self.components.len()
    }

    pub fn ring(&self) -> RingTag {
        RingTag::target(self.p())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Polynomial::degree).max()
    }

    pub fn order(&self) -> Option<u32> {
        self.components.iter().filter_map(Polynomial::order).min()
    }

    fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        TargetVectorField {
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn truncate(&self, order: JetOrder) -> Self {
        self.map(|c| c.truncate(order))
    }

    /// The part of degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        self.map(|c| Polynomial::from_terms(c.ring(), c.terms().filter(|(m, _)| m.degree() == d).map(|(m, x)| (m.clone(), x.clone()))))
    }

    pub fn scale(&self, a: &Rational) -> Self {
        self.map(|c| c.scale(a))
    }

    pub fn mul_poly(&self, u: &Polynomial, cap: Option<JetOrder>) -> Self {
        self.map(|c| u.mul_truncated(c, cap))
    }

    /// `xi ∘ f_j` as `p` source polynomials.
    pub fn compose(&self, branch: &[Polynomial], order: Option<JetOrder>) -> Result<Vec<Polynomial>> {
        self.components
            .iter()
            .map(|c| match order {
                Some(o) => c.compose(branch, o),
                None => c.compose_exact(branch),
            })
            .collect()
    }

    pub fn component_strings(&self) -> Vec<String> {
        self.components.iter().map(Polynomial::to_string).collect()
    }

    /// Coordinates in the jet space of `basis` (column `m * p + q`).
    pub fn to_jet_vec(&self, basis: &JetBasis) -> SparseVec {
        let p = self.p();
        let mut out = Vec::new();
        for (q, c) in self.components.iter().enumerate() {
            out.extend(basis.to_vec(c).into_iter().map(|(m, x)| (m * p as u32 + q as u32, x)));
        }
        collect_sparse(out)
    }

    pub fn from_jet_vec(basis: &JetBasis, p: usize, v: &[(u32, Rational)]) -> Self {
        let ring = RingTag::target(p);
        let mut comps = vec![Polynomial::zero(ring); p];
        for (c, x) in v {
            let (m, q) = (*c as usize / p, *c as usize % p);
            comps[q].add_term(basis.monomial(m as u32).clone(), x.clone());
        }
        TargetVectorField::new(comps)
    }
}

impl std::ops::Add for &TargetVectorField {
    type Output = TargetVectorField;
    fn add(self, rhs: &TargetVectorField) -> TargetVectorField {
        TargetVectorField::new(self.components.iter().zip(&rhs.components).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for TargetVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring();
        let mut first = true;
        for (q, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.len() == 1 {
                write!(f, "{c}*d/d{}", ring.var_name(q))?;
            } else {
                write!(f, "({c})*d/d{}", ring.var_name(q))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Degree of the lowest nonzero term of `xi ∘ f - tf(eta)`, or exact vanishing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residual {
    Exact,
    Order(u32),
}

impl Serialize for Residual {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Residual::Exact => s.serialize_str("exact"),
            Residual::Order(d) => s.serialize_u32(*d),
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Exact => write!(f, "exact"),
            Residual::Order(d) => write!(f, "order {d}"),
        }
    }
}

/// Source fields `eta_j` with `xi ∘ f_j ≡ tf_j(eta_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftWitness {
    /// `per_branch_eta[j][k]` is the `d/dx_k` coefficient on branch `j`.
    pub per_branch_eta: Vec<Vec<Polynomial>>,
    pub residual: Residual,
}

fn residual_of(g: &Multigerm, xi: &TargetVectorField, etas: &[Vec<Polynomial>]) -> Result<Residual> {
    let mut lowest: Option<u32> = None;
    for (b, eta) in g.branches.iter().zip(etas) {
        let comps = xi.compose(&b.components, None)?;
        for (q, c) in comps.iter().enumerate() {
            let mut r = c.clone();
            for (k, e) in eta.iter().enumerate() {
                r = &r - &(&b.components[q].partial(k) * e);
            }
            if let Some(o) = r.order() {
                lowest = Some(lowest.map_or(o, |l| l.min(o)));
            }
        }
    }
    Ok(lowest.map_or(Residual::Exact, Residual::Order))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftCheck {
    pub ok: bool,
    pub order: JetOrder,
    /// Present when `ok`.
    pub witness: Option<LiftWitness>,
    /// Branches where the linear system is inconsistent.
    pub failed_branches: Vec<usize>,
}

/// Solves `tf_j(eta_j) ≡ xi ∘ f_j` modulo terms of degree above `order` on
/// every branch, with `eta_j` of degree at most `order`.
pub fn verify_liftable(g: &Multigerm, xi: &TargetVectorField, order: JetOrder) -> Result<LiftCheck> {
    if xi.p() != g.p {
        return Err(Error::RingMismatch {
            left: g.target_ring().to_string(),
            right: xi.ring().to_string(),
        });
    }
    let basis = JetBasis::new(g.n, order);
    let len = basis.len();
    let (n, p) = (g.n, g.p);
    let mut etas = Vec::new();
    let mut failed = Vec::new();
    for (j, b) in g.branches.iter().enumerate() {
        let eq = |m: u32, q: usize| m * p as u32 + q as u32;
        let mut columns = Vec::with_capacity(n * len);
        for k in 0..n {
            let partials: Vec<SparseVec> = b.components.iter().map(|c| basis.to_vec(&c.partial(k))).collect();
            for m in 0..len as u32 {
                let mut col = Vec::new();
                for (q, d) in partials.iter().enumerate() {
                    for (a, x) in d {
                        if let Some(am) = basis.times(*a, m) {
                            col.push((eq(am, q), x.clone()));
                        }
                    }
                }
                columns.push(collect_sparse(col));
            }
        }
        let mut rhs = Vec::new();
        for (q, c) in xi.compose(&b.components, Some(order))?.iter().enumerate() {
            rhs.extend(basis.to_vec(c).into_iter().map(|(m, x)| (eq(m, q), x)));
        }
        match solve_columns(&columns, &[collect_sparse(rhs)], len * p).pop().flatten() {
            Some(sol) => {
                let mut eta = vec![Polynomial::zero(g.source_ring()); n];
                for (u, x) in sol {
                    let (k, m) = (u as usize / len, u % len as u32);
                    eta[k].add_term(basis.monomial(m).clone(), x);
                }
                etas.push(eta);
            }
            None => failed.push(j),
        }
    }
    if !failed.is_empty() {
        return Ok(LiftCheck {
            ok: false,
            order,
            witness: None,
            failed_branches: failed,
        });
    }
    let residual = residual_of(g, xi, &etas)?;
    Ok(LiftCheck {
        ok: true,
        order,
        witness: Some(LiftWitness {
            per_branch_eta: etas,
            residual,
        }),
        failed_branches: Vec::new(),
    })
}

/// Default order for [`verify_liftable`] when none is given.
pub fn default_verify_order(ctx: &GermContext) -> JetOrder {
    JetOrder(2 * ctx.stabilization().ell + 2)
}

/// Both computations of `dim ker(i+1 ω̄f)` at the bijective level `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinGenerators {
    pub level: usize,
    pub direct: usize,
    pub predicted: usize,
}

impl MinGenerators {
    pub fn agree(&self) -> bool {
        self.direct == self.predicted
    }
}

fn bijective_level(report: &IndexReport) -> Result<usize> {
    report.bijective_level().ok_or_else(|| {
        Error::Hypothesis(format!(
            "no bijective level up to {} (i1 = {}, i2 = {}); the generator count needs i1 = i2",
            report.kmax, report.i1, report.i2
        ))
    })
}

impl GermContext {
    pub fn min_generators_at(&self, report: &IndexReport) -> Result<MinGenerators> {
        let i = bijective_level(report)?;
        let m = self.omega_map(i + 1)?;
        let g = self.germ();
        // levels above i1 are surjective
        debug_assert!(m.is_surjective());
        Ok(MinGenerators {
            level: i,
            direct: m.kernel_dim(),
            predicted: kernel_formula(g.n, g.p, self.stabilization().delta, g.num_branches(), i),
        })
    }

    pub fn min_generators(&self, kmax: usize) -> Result<MinGenerators> {
        let report = self.indices(kmax)?;
        self.min_generators_at(&report)
    }

    /// Generators of the liftable fields, each a kernel basis element of
    /// `i+1 ω̄f` plus a correction of degrees `i+2..=degree`, liftable modulo
    /// `f^*m_0^{degree+1} θ(f)`.
    pub fn construct_generators(&self, level: usize, degree: u32) -> Result<GeneratorSet> {
        let g = self.germ();
        let (n, p) = (g.n, g.p);
        if (degree as usize) < level + 2 {
            return Err(Error::Hypothesis(format!(
                "output degree {degree} is below level + 2 = {}",
                level + 2
            )));
        }
        let kernel = self.omega_map(level + 1)?.kernel_fields(p);
        let power = degree as usize + 1;
        let quotients = (0..g.num_branches())
            .map(|j| self.quotient(j, power))
            .collect::<Result<Vec<_>>>()?;
        let offsets: Vec<u32> = quotients
            .iter()
            .scan(0u32, |acc, bq| {
                let o = *acc;
                *acc += (p * bq.dim()) as u32;
                Some(o)
            })
            .collect();
        let neq = quotients.iter().map(|bq| p * bq.dim()).sum::<usize>();

        // unknowns: eta (branch, k, standard monomial), then xi' (beta, q) degree-ascending
        let mut columns = Vec::new();
        let mut eta_index = Vec::new();
        for (j, bq) in quotients.iter().enumerate() {
            let dim = bq.dim();
            for k in 0..n {
                for s in 0..dim {
                    let v = module_vector(bq.partials[k].iter().map(|a| bq.ring.mul_standard(a, s)), dim);
                    columns.push(v.into_iter().map(|(c, x)| (offsets[j] + c, -x)).collect::<SparseVec>());
                    eta_index.push((j, k, s));
                }
            }
        }
        let n_eta = columns.len();
        let mut corrections = Vec::new();
        for d in level as u32 + 2..=degree {
            for beta in Monomial::all_of_degree(p, d) {
                for q in 0..p {
                    let mut col = Vec::new();
                    for (j, bq) in quotients.iter().enumerate() {
                        let dim = bq.dim() as u32;
                        col.extend(bq.pullback_monomial(&beta).into_iter().map(|(s, x)| (offsets[j] + q as u32 * dim + s, x)));
                    }
                    columns.push(col);
                    corrections.push((beta.clone(), q));
                }
            }
        }
        let rhs: Vec<SparseVec> = kernel
            .iter()
            .map(|xi| {
                let mut v = Vec::new();
                for (j, bq) in quotients.iter().enumerate() {
                    let dim = bq.dim();
                    let parts = xi.components.iter().map(|c| bq.pullback(c));
                    v.extend(module_vector(parts, dim).into_iter().map(|(c, x)| (offsets[j] + c, -x)));
                }
                v
            })
            .collect();
        let solutions = solve_columns(&columns, &rhs, neq);

        let mut generators = Vec::new();
        for (xi, sol) in kernel.iter().zip(solutions) {
            let sol = sol.ok_or(Error::Inconsistent { degree })?;
            let mut field = xi.clone();
            let mut etas = vec![vec![Polynomial::zero(g.source_ring()); n]; g.num_branches()];
            for (u, x) in sol {
                let u = u as usize;
                if u < n_eta {
                    let (j, k, s) = eta_index[u];
                    etas[j][k].add_term(quotients[j].ring.standard_monomial(s).clone(), x);
                } else {
                    let (beta, q) = &corrections[u - n_eta];
                    field.components[*q].add_term(beta.clone(), x);
                }
            }
            let residual = residual_of(g, &field, &etas)?;
            generators.push(Generator {
                field,
                witness: LiftWitness {
                    per_branch_eta: etas,
                    residual,
                },
            });
        }
        Ok(GeneratorSet {
            level,
            degree,
            generators,
        })
    }

    /// Target-field jets of degree at most `order` whose composition with
    /// `f` lies in `TR_e(f) + f^*m_0^{order+1} θ(f)`, with columns `m * p + q`.
    pub fn liftable_jets(&self, order: JetOrder) -> Result<Echelon> {
        let g = self.germ();
        let p = g.p;
        let basis = JetBasis::new(p, order);
        let mut images = vec![Vec::new(); basis.len() * p];
        let mut offset = 0u32;
        for j in 0..g.num_branches() {
            let bq = self.quotient(j, order.0 as usize + 1)?;
            let dim = bq.dim() as u32;
            for (m, beta) in basis.monomials().iter().enumerate() {
                let f_beta = bq.pullback_monomial(beta);
                for q in 0..p {
                    let v: SparseVec = f_beta.iter().map(|(s, x)| (q as u32 * dim + s, x.clone())).collect();
                    images[m * p + q].extend(bq.tangent.reduce(&v).into_iter().map(|(c, x)| (offset + c, x)));
                }
            }
            offset += p as u32 * dim;
        }
        let (_, kernel) = kernel_of_images(&images, offset as usize);
        Ok(Echelon::from_rows(basis.len() * p, kernel))
    }

    /// Compares the liftable jets of degree at most `order` with the jets of
    /// the module generated by `gens`.
    pub fn span_check(&self, gens: &[TargetVectorField], order: JetOrder) -> Result<SpanCheck> {
        let module = self.liftable_jets(order)?;
        let span = jet_span(gens, self.germ().p, order);
        Ok(SpanCheck {
            order,
            module_dim: module.rank(),
            span_dim: span.rank(),
            equal: module.same_space(&span),
        })
    }
}

/// Jets of degree at most `order` of the module generated by `gens`
/// (all `X^beta * generator`, truncated), columns `m * p + q`.
pub fn jet_span(gens: &[TargetVectorField], p: usize, order: JetOrder) -> Echelon {
    let basis = JetBasis::new(p, order);
    let p_ = p as u32;
    let mut e = Echelon::new(basis.len() * p);
    for gen in gens {
        let v = gen.to_jet_vec(&basis);
        for m in 0..basis.len() as u32 {
            let shifted: Vec<(u32, Rational)> = v
                .iter()
                .filter_map(|(c, x)| basis.times(c / p_, m).map(|cm| (cm * p_ + c % p_, x.clone())))
                .collect();
            if !shifted.is_empty() {
                e.insert(collect_sparse(shifted));
            }
        }
    }
    e.make_reduced();
    e
}

/// Whether two sets of fields generate the same module modulo degree above `order`.
pub fn same_jet_module(a: &[TargetVectorField], b: &[TargetVectorField], p: usize, order: JetOrder) -> bool {
    jet_span(a, p, order).same_space(&jet_span(b, p, order))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpanCheck {
    pub order: JetOrder,
    pub module_dim: usize,
    pub span_dim: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub field: TargetVectorField,
    pub witness: LiftWitness,
}

impl Generator {
    pub fn is_exact(&self) -> bool {
        self.witness.residual == Residual::Exact
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    pub level: usize,
    /// Highest degree allowed in the corrections.
    pub degree: u32,
    pub generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn rho(&self) -> usize {
        self.generators.len()
    }

    pub fn fields(&self) -> Vec<TargetVectorField> {
        self.generators.iter().map(|g| g.field.clone()).collect()
    }

    pub fn to_document(&self) -> GeneratorSetDocument {
        GeneratorSetDocument {
            level: self.level,
            rho: self.rho(),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorDocument {
                    components: g.field.component_strings(),
                    exact: g.is_exact(),
                    witnesses: g
                        .witness
                        .per_branch_eta
                        .iter()
                        .enumerate()
                        .map(|(j, eta)| WitnessDocument {
                            branch: j,
                            eta: eta.iter().map(Polynomial::to_string).collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub branch: usize,
    pub eta: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDocument {
    pub components: Vec<String>,
    #[serde(default)]
    pub exact: bool,
    #[serde(default)]
    pub witnesses: Vec<WitnessDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSetDocument {
    pub level: usize,
    pub rho: usize,
    pub generators: Vec<GeneratorDocument>,
}

/// Accepted layouts of a file of vector fields.
#[derive(Deserialize)]
#[serde(untagged)]
enum FieldsDocument {
    Set(GeneratorSetDocument),
    Wrapped { fields: Vec<FieldEntry> },
    List(Vec<FieldEntry>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FieldEntry {
    Full { components: Vec<String> },
    Bare(Vec<String>),
}

/// Reads vector fields from a generator-set document, `{"fields": [...]}` or a
/// bare list; each field is a list of `p` component strings.
pub fn load_fields(text: &str, p: usize) -> Result<Vec<TargetVectorField>> {
    let doc: FieldsDocument = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let entries: Vec<Vec<String>> = match doc {
        FieldsDocument::Set(s) => s.generators.into_iter().map(|g| g.components).collect(),
        FieldsDocument::Wrapped { fields } | FieldsDocument::List(fields) => fields
            .into_iter()
            .map(|f| match f {
                FieldEntry::Full { components } | FieldEntry::Bare(components) => components,
            })
            .collect(),
    };
    entries
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if c.len() != p {
                return Err(Error::Schema(format!("field {k} has {} components, expected p = {p}", c.len())));
            }
            TargetVectorField::parse(c)
        })
        .collect()
}

/// Default highest correction degree for generators at bijective level `i`.
pub fn default_degree(level: usize) -> u32 {
    level as u32 + 3
}

pub fn min_generators(g: &Multigerm, kmax: Option<usize>) -> Result<MinGenerators> {
    let ctx = GermContext::new(g)?;
    let k = kmax.unwrap_or_else(|| crate::ksm::default_kmax(&ctx));
    ctx.min_generators(k)
}

pub fn construct_generators(g: &Multigerm, degree: Option<u32>) -> Result<GeneratorSet> {
    let ctx = GermContext::new(g)?;
    let report = ctx.indices(crate::ksm::default_kmax(&ctx))?;
    let level = bijective_level(&report)?;
    ctx.construct_generators(level, degree.unwrap_or_else(|| default_degree(level)))
}

pub fn span_check(g: &Multigerm, gens: &[TargetVectorField], order: JetOrder) -> Result<SpanCheck> {
    GermContext::new(g)?.span_check(gens, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[&str]) -> TargetVectorField {
        TargetVectorField::parse(c).unwrap()
    }

    fn cusp() -> Multigerm {
        Multigerm::from_strings(1, 2, &[&["x1^2", "x1^3"]]).unwrap()
    }

    #[test]
    fn euler_field_lifts_on_cusp() {
        let r = verify_liftable(&cusp(), &field(&["2*X1", "3*X2"]), JetOrder(6)).unwrap();
        assert!(r.ok);
        let w = r.witness.unwrap();
        assert_eq!(w.per_branch_eta[0][0].to_string(), "x1");
        assert_eq!(w.residual, Residual::Exact);
    }

    #[test]
    fn constant_field_does_not_lift_on_cusp() {
        let r = verify_liftable(&cusp(), &field(&["1", "0"]), JetOrder(6)).unwrap();
        assert!(!r.ok);
        assert_eq!(r.failed_branches, vec![0]);
    }

    #[test]
    fn display_of_fields() {
        assert_eq!(field(&["X1", "0"]).to_string(), "X1*d/dX1");
        assert_eq!(field(&["2*X1", "X2 + X1^2"]).to_string(), "2*X1*d/dX1 + (X2 + X1^2)*d/dX2");
        assert_eq!(TargetVectorField::zero(2).to_string(), "0");
    }

    #[test]
    fn coordinate_axes_generators() {
        let g = Multigerm::from_strings(1, 2, &[&["x1", "0"], &["0", "x1"]]).unwrap();
        let set = construct_generators(&g, None).unwrap();
        assert_eq!(set.rho(), 2);
        let expected = [field(&["X1", "0"]), field(&["0", "X2"])];
        assert!(same_jet_module(&set.fields(), &expected, 2, JetOrder(3)));
        assert!(set.generators.iter().all(Generator::is_exact));
    }

    #[test]
    fn span_check_identity() {
        let g = Multigerm::from_strings(1, 1, &[&["x1"]]).unwrap();
        let ctx = GermContext::new(&g).unwrap();
        let r = ctx.span_check(&[field(&["1"])], JetOrder(4)).unwrap();
        assert!(r.equal);
        assert_eq!(r.module_dim, 5);
    }

    #[test]
    fn loads_fields_in_all_layouts() {
        let a = load_fields(r#"[["X1","0"],["0","X2"]]"#, 2).unwrap();
        let b = load_fields(r#"{"fields":[{"components":["X1","0"]},["0","X2"]]}"#, 2).unwrap();
        assert_eq!(a, b);
        assert!(matches!(load_fields(r#"[["X1"]]"#, 2), Err(Error::Schema(_))));
        assert!(matches!(load_fields(r#"[["x1","0"]]"#, 2), Err(Error::UnknownVariable { .. })));
    }
}
