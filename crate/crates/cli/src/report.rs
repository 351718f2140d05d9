//! Report documents produced by the subcommands.

use serde::Serialize;
use serde_json::Value;

use liftable_core::corpus::{fields, CorpusEntry, PHI2_GENERATORS, TWO_CUSPS_GENERATORS};
use liftable_core::germ::{GermDocument, Multigerm};
use liftable_core::ksm::{IndexReport, IndexValue};
use liftable_core::liftgen::{
    default_degree, default_verify_order, same_jet_module, verify_liftable, GeneratorSetDocument, MinGenerators,
    Residual, TargetVectorField, WitnessDocument,
};
use liftable_core::localalg::GermContext;
use liftable_core::{Error, JetOrder};

/// Why a command did not succeed; decides the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Bad file, bad document, or a germ outside the supported class.
    Input(String),
    /// The computation ran but a mathematical hypothesis does not hold.
    Hypothesis(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Hypothesis(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Hypothesis(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Hypothesis(_) | Error::Inconsistent { .. } => Failure::Hypothesis(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Flags shared by the subcommands.
#[derive(Clone, Copy, Debug, Default)]
pub struct Settings {
    pub max_index: Option<usize>,
    pub jet_order: Option<u32>,
    pub degree: Option<u32>,
}

impl Settings {
    pub fn context(&self, g: &Multigerm) -> Result<GermContext, Failure> {
        Ok(GermContext::with_options(
            g,
            liftable_core::localalg::DEFAULT_MAX_STABILIZATION_ORDER,
            self.jet_order.map(JetOrder),
        )?)
    }

    pub fn kmax(&self, ctx: &GermContext) -> usize {
        self.max_index.unwrap_or_else(|| liftable_core::ksm::default_kmax(ctx))
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelRow {
    pub i: usize,
    pub delta: usize,
    pub gamma: usize,
    pub domain_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub surjective: bool,
    pub injective: bool,
    /// Jet order of the quotient rings used at this level (largest branch).
    pub jet_order: JetOrder,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Stabilization {
    pub ell: u32,
    pub ell_per_branch: Vec<u32>,
    pub delta_per_branch: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GermReport {
    pub germ: GermDocument,
    pub delta: usize,
    pub gamma: usize,
    pub stabilization: Stabilization,
    pub kmax: usize,
    pub levels: Vec<LevelRow>,
    pub i1: IndexValue,
    pub i2: IndexValue,
    pub well_behaved_index: Option<i64>,
    pub min_generators: Option<MinGenerators>,
    pub note: Option<String>,
}

fn stabilization_of(ctx: &GermContext) -> Stabilization {
    let s = ctx.stabilization();
    Stabilization {
        ell: s.ell,
        ell_per_branch: s.ell_per_branch.clone(),
        delta_per_branch: s.delta_per_branch.clone(),
    }
}

pub fn analyze(g: &Multigerm, settings: &Settings) -> Result<GermReport, Failure> {
    let ctx = settings.context(g)?;
    let kmax = settings.kmax(&ctx);
    let indices = ctx.indices(kmax)?;
    let mut levels = Vec::with_capacity(indices.levels.len());
    for l in &indices.levels {
        let gr = ctx.graded(l.level)?;
        levels.push(LevelRow {
            i: l.level,
            delta: gr.delta,
            gamma: gr.gamma,
            domain_dim: l.domain_dim,
            target_dim: l.target_dim,
            rank: l.rank,
            kernel_dim: l.kernel_dim,
            surjective: l.surjective,
            injective: l.injective,
            jet_order: ctx.order_for_power(l.level + 1),
        });
    }
    let (min_generators, note) = match ctx.min_generators_at(&indices) {
        Ok(m) => (Some(m), None),
        Err(Error::Hypothesis(msg)) => (None, Some(msg)),
        Err(e) => return Err(e.into()),
    };
    Ok(GermReport {
        germ: g.to_document(),
        delta: ctx.stabilization().delta,
        gamma: ctx.graded_gamma(0)?,
        stabilization: stabilization_of(&ctx),
        kmax,
        levels,
        i1: indices.i1,
        i2: indices.i2,
        well_behaved_index: indices.well_behaved,
        min_generators,
        note,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MinGenReport {
    pub germ: Option<String>,
    pub i1: IndexValue,
    pub i2: IndexValue,
    /// Bijective level `i1 = i2` used for the count.
    pub level: Option<usize>,
    /// Kernel dimension of the next reduced map, computed by rank.
    pub direct: Option<usize>,
    /// The same dimension from the closed formula.
    pub predicted: Option<usize>,
    pub min_generators: Option<usize>,
    pub note: Option<String>,
}

impl MinGenReport {
    pub fn is_success(&self) -> bool {
        matches!((self.direct, self.predicted), (Some(a), Some(b)) if a == b)
    }
}

pub fn mingen(g: &Multigerm, settings: &Settings) -> Result<MinGenReport, Failure> {
    let ctx = settings.context(g)?;
    let indices = ctx.indices(settings.kmax(&ctx))?;
    let mut report = MinGenReport {
        germ: g.name.clone(),
        i1: indices.i1,
        i2: indices.i2,
        level: None,
        direct: None,
        predicted: None,
        min_generators: None,
        note: None,
    };
    match ctx.min_generators_at(&indices) {
        Ok(m) => {
            report.level = Some(m.level);
            report.direct = Some(m.direct);
            report.predicted = Some(m.predicted);
            if m.agree() {
                report.min_generators = Some(m.direct);
            } else {
                report.note = Some(format!(
                    "direct count {} disagrees with the formula {}",
                    m.direct, m.predicted
                ));
            }
        }
        Err(Error::Hypothesis(msg)) => report.note = Some(msg),
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

fn bijective_level(indices: &IndexReport) -> Result<usize, Failure> {
    indices.bijective_level().ok_or_else(|| {
        Failure::Hypothesis(format!(
            "no bijective level up to {} (i1 = {}, i2 = {}); generators are only constructed when i1 = i2",
            indices.kmax, indices.i1, indices.i2
        ))
    })
}

pub fn liftgen(g: &Multigerm, settings: &Settings) -> Result<GeneratorSetDocument, Failure> {
    let ctx = settings.context(g)?;
    let indices = ctx.indices(settings.kmax(&ctx))?;
    let level = bijective_level(&indices)?;
    let degree = settings.degree.unwrap_or_else(|| default_degree(level));
    if (degree as usize) < level + 2 {
        return Err(Failure::Input(format!(
            "--degree {degree} is below level + 2 = {} for this germ",
            level + 2
        )));
    }
    Ok(ctx.construct_generators(level, degree)?.to_document())
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FieldVerdict {
    pub components: Vec<String>,
    pub ok: bool,
    pub residual: Option<Residual>,
    pub witnesses: Vec<WitnessDocument>,
    pub failed_branches: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub order: JetOrder,
    pub all_ok: bool,
    pub fields: Vec<FieldVerdict>,
}

/// Checks each field at `--jet-order` (default `2 ell + 2`).
pub fn verify(g: &Multigerm, fields: &[TargetVectorField], settings: &Settings) -> Result<VerifyReport, Failure> {
    let ctx = GermContext::new(g)?;
    let order = settings.jet_order.map(JetOrder).unwrap_or_else(|| default_verify_order(&ctx));
    let mut verdicts = Vec::with_capacity(fields.len());
    for xi in fields {
        let check = verify_liftable(g, xi, order)?;
        let (residual, witnesses) = match &check.witness {
            Some(w) => (
                Some(w.residual),
                w.per_branch_eta
                    .iter()
                    .enumerate()
                    .map(|(j, eta)| WitnessDocument {
                        branch: j,
                        eta: eta.iter().map(|e| e.to_string()).collect(),
                    })
                    .collect(),
            ),
            None => (None, Vec::new()),
        };
        verdicts.push(FieldVerdict {
            components: xi.component_strings(),
            ok: check.ok,
            residual,
            witnesses,
            failed_branches: check.failed_branches,
        });
    }
    Ok(VerifyReport {
        order,
        all_ok: verdicts.iter().all(|v| v.ok),
        fields: verdicts,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, expected: impl Serialize, actual: impl Serialize) -> Check {
        let expected = serde_json::to_value(expected).expect("serializable");
        let actual = serde_json::to_value(actual).expect("serializable");
        Check {
            name: name.to_string(),
            pass: expected == actual,
            expected,
            actual,
        }
    }

    fn holds(name: &str, pass: bool) -> Check {
        Check::new(name, true, pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryResult {
    pub key: String,
    pub title: String,
    pub checks: Vec<Check>,
    pub note: Option<String>,
    pub pass: bool,
}

impl EntryResult {
    fn new(key: &str, title: &str, checks: Vec<Check>, note: Option<String>) -> Self {
        EntryResult {
            key: key.to_string(),
            title: title.to_string(),
            pass: note.is_none() && checks.iter().all(|c| c.pass),
            checks,
            note,
        }
    }

    fn error(key: &str, title: &str, f: Failure) -> Self {
        EntryResult {
            key: key.to_string(),
            title: title.to_string(),
            checks: Vec::new(),
            note: Some(f.message().to_string()),
            pass: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CorpusReport {
    pub entries: Vec<EntryResult>,
    pub fixtures: Vec<EntryResult>,
    pub passed: usize,
    pub total: usize,
    pub all_passed: bool,
}

impl CorpusReport {
    pub fn new(entries: Vec<EntryResult>, fixtures: Vec<EntryResult>) -> Self {
        let total = entries.len() + fixtures.len();
        let passed = entries.iter().chain(&fixtures).filter(|e| e.pass).count();
        CorpusReport {
            entries,
            fixtures,
            passed,
            total,
            all_passed: passed == total,
        }
    }
}

/// Compares one built-in germ against its expected invariants.
pub fn corpus_entry(e: &CorpusEntry, settings: &Settings) -> EntryResult {
    let run = || -> Result<EntryResult, Failure> {
        let ctx = settings.context(&e.germ())?;
        let indices = ctx.indices(settings.kmax(&ctx))?;
        let x = &e.expect;
        let mut checks = Vec::new();
        if let Some(d) = x.delta {
            checks.push(Check::new("delta", d, ctx.stabilization().delta));
        }
        if let Some(gm) = x.gamma {
            checks.push(Check::new("gamma", gm, ctx.graded_gamma(0)?));
        }
        if let Some(i1) = x.i1 {
            checks.push(Check::new("i1", i1, indices.i1));
        }
        if let Some(i2) = x.i2 {
            checks.push(Check::new("i2", i2, indices.i2));
        }
        let mut note = None;
        if let Some(mg) = x.min_generators {
            let actual = match ctx.min_generators_at(&indices) {
                Ok(m) if m.agree() => Value::from(m.direct),
                Ok(m) => {
                    note = Some(format!("direct {} vs formula {}", m.direct, m.predicted));
                    Value::from(m.direct)
                }
                Err(Error::Hypothesis(msg)) => {
                    note = Some(msg);
                    Value::Null
                }
                Err(err) => return Err(err.into()),
            };
            checks.push(Check::new("minGenerators", mg, actual));
        }
        Ok(EntryResult::new(e.key, e.title, checks, note))
    };
    run().unwrap_or_else(|f| EntryResult::error(e.key, e.title, f))
}

/// Reference generator sets: each field verifies, and a constructed set
/// spans the same jet module.
pub fn corpus_fixtures(settings: &Settings) -> Vec<EntryResult> {
    let psi2 = || -> Result<EntryResult, Failure> {
        let e = liftable_core::corpus::entry("phi2").expect("built-in");
        let g = e.germ();
        let ctx = GermContext::new(&g)?;
        let reference = fields(PHI2_GENERATORS)?;
        let order = default_verify_order(&ctx);
        let mut exact = true;
        for xi in &reference {
            let c = verify_liftable(&g, xi, order)?;
            exact &= c.ok && c.witness.is_some_and(|w| w.residual == Residual::Exact);
        }
        let set = constructed(&ctx, settings)?;
        let degree = JetOrder(set.degree);
        let checks = vec![
            Check::holds("reference fields lift exactly", exact),
            Check::new("constructed count", reference.len(), set.rho()),
            Check::holds("reference fields span the liftable jets", ctx.span_check(&reference, degree)?.equal),
            Check::holds("constructed and reference span the same jets", same_jet_module(&set.fields(), &reference, g.p, degree)),
        ];
        Ok(EntryResult::new("fixture-psi2", e.title, checks, None))
    };
    let two_cusps = || -> Result<EntryResult, Failure> {
        let e = liftable_core::corpus::entry("two-cusps").expect("built-in");
        let g = e.germ();
        let ctx = GermContext::new(&g)?;
        let reference = fields(TWO_CUSPS_GENERATORS)?;
        let order = JetOrder(12);
        let mut ok = true;
        for xi in &reference {
            let c = verify_liftable(&g, xi, order)?;
            ok &= c.ok
                && c.witness.is_some_and(|w| match w.residual {
                    Residual::Exact => true,
                    Residual::Order(d) => d > order.0,
                });
        }
        let set = constructed(&ctx, settings)?;
        let degree = JetOrder(set.degree);
        let checks = vec![
            Check::holds("reference fields lift to order 12", ok),
            Check::new("constructed count", reference.len(), set.rho()),
            Check::holds("constructed and reference span the same jets", same_jet_module(&set.fields(), &reference, g.p, degree)),
        ];
        Ok(EntryResult::new("fixture-two-cusps", e.title, checks, None))
    };
    vec![
        psi2().unwrap_or_else(|f| EntryResult::error("fixture-psi2", "(x1, x2^2, x1*x2)", f)),
        two_cusps().unwrap_or_else(|f| EntryResult::error("fixture-two-cusps", "{(x1^2, x1^3), (x1^3, x1^2)}", f)),
    ]
}

fn constructed(ctx: &GermContext, settings: &Settings) -> Result<liftable_core::liftgen::GeneratorSet, Failure> {
    let indices = ctx.indices(settings.kmax(ctx))?;
    let level = bijective_level(&indices)?;
    let degree = settings.degree.unwrap_or_else(|| default_degree(level)).max(level as u32 + 2);
    Ok(ctx.construct_generators(level, degree)?)
}
