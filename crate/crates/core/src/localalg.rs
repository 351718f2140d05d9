//! Finite quotient algebras `R_K = C / f^*m_0^K C` of each branch and the
//! graded invariants computed inside them.
//!
//! `R_K` is realized as the jet space of order `N` modulo the truncated ideal,
//! where `N` is chosen with `m^{N+1}` inside `f^*m_0^K C`. Since
//! `m^ell ⊂ f^*m_0 C` implies `m^{K ell} ⊂ f^*m_0^K C`, `N = K ell - 1` always
//! works. Elements of `R_K` are sparse vectors over the standard monomials (the
//! free columns of the reduced echelon form of the ideal).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::germ::{stabilization, Multigerm, StabilizationResult};
use crate::linalg::{collect_sparse, ideal_in_jets, Echelon, JetBasis, SparseVec};
use crate::poly::{binomial, JetOrder, Monomial, Polynomial, Rational, RingTag};

/// Default cap on the jet order used while searching for the stabilization order.
pub const DEFAULT_MAX_STABILIZATION_ORDER: u32 = 24;

const NOT_STANDARD: u32 = u32::MAX;

/// The algebra `C / f^*m_0^K C` of one branch.
#[derive(Clone, Debug)]
pub struct PowerQuotient {
    power: usize,
    basis: JetBasis,
    ideal: Echelon,
    std_cols: Vec<u32>,
    std_pos: Vec<u32>,
}

impl PowerQuotient {
    /// Builds `C / (comps)^K C` in jets of order `order`. The caller guarantees
    /// that `m^{order+1}` lies in the ideal.
    pub fn build(n: usize, comps: &[Polynomial], power: usize, order: JetOrder) -> Self {
        let basis = JetBasis::new(n, order);
        let gens: Vec<SparseVec> = if power == 0 {
            vec![basis.to_vec(&Polynomial::one(RingTag::source(n)))]
        } else {
            let cap = Some(order);
            let p = comps.len();
            Monomial::all_of_degree(p, power as u32)
                .into_iter()
                .map(|a| {
                    let mut acc = Polynomial::one(RingTag::source(n));
                    for (q, &e) in a.exponents().iter().enumerate() {
                        acc = acc.mul_truncated(&comps[q].pow_truncated(e, cap), cap);
                    }
                    basis.to_vec(&acc)
                })
                .collect()
        };
        let ideal = ideal_in_jets(&basis, gens);
        let std_cols = ideal.free_columns();
        let mut std_pos = vec![NOT_STANDARD; basis.len()];
        for (k, &c) in std_cols.iter().enumerate() {
            std_pos[c as usize] = k as u32;
        }
        PowerQuotient {
            power,
            basis,
            ideal,
            std_cols,
            std_pos,
        }
    }

    /// Builds at `order + 1` and checks that every monomial of that degree is
    /// in the ideal; by Nakayama this certifies `m^{order+1}` lies in it.
    pub fn build_certified(n: usize, comps: &[Polynomial], power: usize, order: JetOrder) -> Option<Self> {
        let top = JetOrder(order.0 + 1);
        let q = PowerQuotient::build(n, comps, power, top);
        let ok = q.basis.degree_range(top.0).all(|c| q.ideal.is_pivot(c));
        ok.then(|| PowerQuotient::build(n, comps, power, order))
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn order(&self) -> JetOrder {
        self.basis.order()
    }

    pub fn nvars(&self) -> usize {
        self.basis.nvars()
    }

    /// Dimension over the base field.
    pub fn dim(&self) -> usize {
        self.std_cols.len()
    }

    /// Standard monomial at position `s`.
    pub fn standard_monomial(&self, s: usize) -> &Monomial {
        self.basis.monomial(self.std_cols[s])
    }

    /// Normal form of the jet-space basis element `c`.
    fn nf_col(&self, c: u32, scale: &Rational, out: &mut Vec<(u32, Rational)>) {
        match self.std_pos[c as usize] {
            NOT_STANDARD => {
                let row = self.ideal.pivot_row(c).expect("column is a pivot");
                for (c2, x) in &row[1..] {
                    out.push((self.std_pos[*c2 as usize], -(x * scale)));
                }
            }
            s => out.push((s, scale.clone())),
        }
    }

    pub fn nf_jet(&self, v: &[(u32, Rational)]) -> SparseVec {
        let mut out = Vec::new();
        for (c, x) in v {
            self.nf_col(*c, x, &mut out);
        }
        collect_sparse(out)
    }

    pub fn nf_poly(&self, p: &Polynomial) -> SparseVec {
        self.nf_jet(&self.basis.to_vec(p))
    }

    /// `a * x^{m_s}` where `m_s` is the standard monomial at position `s`.
    pub fn mul_standard(&self, a: &[(u32, Rational)], s: usize) -> SparseVec {
        let cs = self.std_cols[s];
        let mut out = Vec::new();
        for (t, x) in a {
            if let Some(c) = self.basis.times(self.std_cols[*t as usize], cs) {
                self.nf_col(c, x, &mut out);
            }
        }
        collect_sparse(out)
    }

    pub fn mul(&self, a: &[(u32, Rational)], b: &[(u32, Rational)]) -> SparseVec {
        let mut out = Vec::new();
        for (s, y) in b {
            let cs = self.std_cols[*s as usize];
            for (t, x) in a {
                if let Some(c) = self.basis.times(self.std_cols[*t as usize], cs) {
                    self.nf_col(c, &(x * y), &mut out);
                }
            }
        }
        collect_sparse(out)
    }

    pub fn mul_var(&self, a: &[(u32, Rational)], v: usize) -> SparseVec {
        let mut out = Vec::new();
        for (t, x) in a {
            if let Some(c) = self.basis.times_var(self.std_cols[*t as usize], v) {
                self.nf_col(c, x, &mut out);
            }
        }
        collect_sparse(out)
    }

    pub fn unit(&self) -> SparseVec {
        self.nf_jet(&[(0, Rational::one())])
    }

    /// Polynomial representative supported on standard monomials.
    pub fn to_poly(&self, a: &[(u32, Rational)]) -> Polynomial {
        Polynomial::from_terms(
            RingTag::source(self.nvars()),
            a.iter()
                .map(|(s, x)| (self.standard_monomial(*s as usize).clone(), x.clone())),
        )
    }
}

/// `R_K` of one branch together with the images of the branch data in it.
#[derive(Debug)]
pub struct BranchQuotient {
    pub ring: PowerQuotient,
    /// Normal forms of the components `f_q`.
    pub comps: Vec<SparseVec>,
    /// `partials[k][q]` is the normal form of `d f_q / d x_k`.
    pub partials: Vec<Vec<SparseVec>>,
    /// Image of `tf(theta)` in `R_K^p`, coordinates `q * dim + s`.
    pub tangent: Echelon,
    monomial_powers: Mutex<HashMap<Monomial, SparseVec>>,
    power_ideals: Mutex<Vec<Arc<Echelon>>>,
}

impl BranchQuotient {
    fn new(ring: PowerQuotient, comps: &[Polynomial]) -> Self {
        let n = ring.nvars();
        let p = comps.len();
        let dim = ring.dim();
        let comps_nf: Vec<SparseVec> = comps.iter().map(|c| ring.nf_poly(c)).collect();
        let partials: Vec<Vec<SparseVec>> = (0..n)
            .map(|k| comps.iter().map(|c| ring.nf_poly(&c.partial(k))).collect())
            .collect();
        let mut tangent = Echelon::new(p * dim);
        for part in &partials {
            for s in 0..dim {
                let row = module_vector(part.iter().map(|a| ring.mul_standard(a, s)), dim);
                tangent.insert(row);
            }
        }
        tangent.make_reduced();
        BranchQuotient {
            ring,
            comps: comps_nf,
            partials,
            tangent,
            monomial_powers: Mutex::new(HashMap::new()),
            power_ideals: Mutex::new(Vec::new()),
        }
    }

    pub fn dim(&self) -> usize {
        self.ring.dim()
    }

    pub fn p(&self) -> usize {
        self.comps.len()
    }

    /// Normal form of `f^alpha` for a target monomial `alpha`.
    pub fn pullback_monomial(&self, alpha: &Monomial) -> SparseVec {
        if let Some(v) = self.monomial_powers.lock().unwrap().get(alpha) {
            return v.clone();
        }
        let v = match alpha.exponents().iter().position(|&e| e > 0) {
            None => self.ring.unit(),
            Some(q) => {
                let mut e = alpha.exponents().to_vec();
                e[q] -= 1;
                let rest = self.pullback_monomial(&Monomial::from_exponents(e));
                self.ring.mul(&rest, &self.comps[q])
            }
        };
        self.monomial_powers
            .lock()
            .unwrap()
            .insert(alpha.clone(), v.clone());
        v
    }

    /// Normal form of `u o f` for a target polynomial `u`.
    pub fn pullback(&self, u: &Polynomial) -> SparseVec {
        let mut out = Vec::new();
        for (m, c) in u.terms() {
            for (s, x) in self.pullback_monomial(m) {
                out.push((s, x * c));
            }
        }
        collect_sparse(out)
    }

    /// Image of `f^*m_0^i C` in this quotient (`i = 0` gives everything).
    pub fn power_ideal(&self, i: usize) -> Arc<Echelon> {
        let mut cache = self.power_ideals.lock().unwrap();
        while cache.len() <= i {
            let next = match cache.last() {
                None => {
                    let dim = self.dim();
                    Echelon::from_rows(dim, (0..dim).map(|s| vec![(s as u32, Rational::one())]))
                }
                Some(prev) => {
                    // (f^*m_0^{i-1}) * (f^*m_0) is spanned by products of basis elements with the f_q
                    let prods = prev
                        .rows()
                        .into_iter()
                        .flat_map(|a| self.comps.iter().map(move |c| (a, c)))
                        .map(|(a, c)| self.ring.mul(a, c))
                        .collect::<Vec<_>>();
                    Echelon::from_rows(self.dim(), prods)
                }
            };
            cache.push(Arc::new(next));
        }
        cache[i].clone()
    }

    /// Image of `f^*m_0^i theta(f)`, i.e. `p` copies of the power ideal.
    pub fn power_module(&self, i: usize) -> Echelon {
        let a = self.power_ideal(i);
        let dim = self.dim();
        let rows = (0..self.p()).flat_map(|q| {
            a.rows()
                .into_iter()
                .map(move |r| r.iter().map(|(s, x)| (q as u32 * dim as u32 + s, x.clone())).collect::<SparseVec>())
                .collect::<Vec<_>>()
        });
        Echelon::from_rows(self.p() * dim, rows)
    }
}

/// Assembles `p` elements of `R` into one vector of `R^p`.
pub fn module_vector(parts: impl IntoIterator<Item = SparseVec>, dim: usize) -> SparseVec {
    let mut out = Vec::new();
    for (q, part) in parts.into_iter().enumerate() {
        out.extend(part.into_iter().map(|(s, x)| ((q * dim) as u32 + s, x)));
    }
    out
}

/// Analysis state for one germ: stabilization data plus a cache of the
/// quotients `R_K` per branch. Results do not depend on evaluation order.
#[derive(Debug)]
pub struct GermContext {
    germ: Multigerm,
    stab: StabilizationResult,
    jet_order: Option<JetOrder>,
    quotients: Mutex<HashMap<(usize, usize), Arc<BranchQuotient>>>,
}

impl GermContext {
    pub fn new(germ: &Multigerm) -> Result<Self> {
        GermContext::with_options(germ, DEFAULT_MAX_STABILIZATION_ORDER, None)
    }

    /// `jet_order` overrides the truncation order of every quotient; an order
    /// below the automatic bound is accepted only when it can be certified.
    pub fn with_options(germ: &Multigerm, max_order: u32, jet_order: Option<JetOrder>) -> Result<Self> {
        let stab = stabilization(germ, max_order)?;
        Ok(GermContext {
            germ: germ.clone(),
            stab,
            jet_order,
            quotients: Mutex::new(HashMap::new()),
        })
    }

    pub fn germ(&self) -> &Multigerm {
        &self.germ
    }

    pub fn stabilization(&self) -> &StabilizationResult {
        &self.stab
    }

    /// Jet order guaranteeing `m^{N+1} ⊂ f^*m_0^K C` on branch `j`.
    pub fn sufficient_order(&self, j: usize, power: usize) -> JetOrder {
        let ell = self.stab.ell_per_branch[j];
        JetOrder((power as u32 * ell).saturating_sub(1))
    }

    /// Largest jet order used for `R_K` over all branches.
    pub fn order_for_power(&self, power: usize) -> JetOrder {
        (0..self.germ.num_branches())
            .map(|j| self.chosen_order(j, power))
            .max()
            .unwrap_or(JetOrder(0))
    }

    fn chosen_order(&self, j: usize, power: usize) -> JetOrder {
        match self.jet_order {
            Some(o) => o,
            None => self.sufficient_order(j, power),
        }
    }

    /// `R_K` of branch `j`, cached.
    pub fn quotient(&self, j: usize, power: usize) -> Result<Arc<BranchQuotient>> {
        if let Some(q) = self.quotients.lock().unwrap().get(&(j, power)) {
            return Ok(q.clone());
        }
        let comps = &self.germ.branches[j].components;
        let bound = self.sufficient_order(j, power);
        let ring = match self.jet_order {
            Some(o) if o < bound => PowerQuotient::build_certified(self.germ.n, comps, power, o)
                .ok_or(Error::JetOrderTooSmall {
                    order: o.0,
                    level: power.saturating_sub(1),
                    suggested: bound.0,
                })?,
            Some(o) => PowerQuotient::build(self.germ.n, comps, power, o),
            None => PowerQuotient::build(self.germ.n, comps, power, bound),
        };
        let q = Arc::new(BranchQuotient::new(ring, comps));
        self.quotients
            .lock()
            .unwrap()
            .entry((j, power))
            .or_insert(q.clone());
        Ok(q)
    }

    /// `i delta = dim f^*m_0^i C / f^*m_0^{i+1} C`.
    pub fn graded_delta(&self, i: usize) -> Result<usize> {
        let mut total = 0;
        for j in 0..self.germ.num_branches() {
            total += self.quotient(j, i + 1)?.power_ideal(i).rank();
        }
        Ok(total)
    }

    /// Kernel dimension of the map `iQ(f)^n -> iQ(f)^p` induced by `df`.
    pub fn graded_gamma(&self, i: usize) -> Result<usize> {
        let n = self.germ.n;
        let mut total = 0;
        for j in 0..self.germ.num_branches() {
            let bq = self.quotient(j, i + 1)?;
            let a = bq.power_ideal(i);
            let dim = bq.dim();
            let mut img = Echelon::new(bq.p() * dim);
            for row in a.rows() {
                for k in 0..n {
                    let v = module_vector(bq.partials[k].iter().map(|d| bq.ring.mul(row, d)), dim);
                    img.insert(v);
                }
            }
            total += n * a.rank() - img.rank();
        }
        Ok(total)
    }

    /// `dim theta(f) / TK_e(f)`.
    pub fn tke_codim(&self) -> Result<usize> {
        let mut total = 0;
        for j in 0..self.germ.num_branches() {
            let bq = self.quotient(j, 1)?;
            total += bq.p() * bq.dim() - bq.tangent.rank();
        }
        Ok(total)
    }

    pub fn graded(&self, i: usize) -> Result<GradedInvariants> {
        Ok(GradedInvariants {
            i,
            delta: self.graded_delta(i)?,
            gamma: self.graded_gamma(i)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GradedInvariants {
    pub i: usize,
    pub delta: usize,
    pub gamma: usize,
}

pub fn graded_delta(g: &Multigerm, i: usize, order: Option<JetOrder>) -> Result<usize> {
    GermContext::with_options(g, DEFAULT_MAX_STABILIZATION_ORDER, order)?.graded_delta(i)
}

pub fn graded_gamma(g: &Multigerm, i: usize, order: Option<JetOrder>) -> Result<usize> {
    GermContext::with_options(g, DEFAULT_MAX_STABILIZATION_ORDER, order)?.graded_gamma(i)
}

pub fn tke_codim(g: &Multigerm) -> Result<usize> {
    GermContext::new(g)?.tke_codim()
}

/// `(C(n+i-1, i) delta, C(n+i-1, i) (delta - |S|))` for corank-one germs.
pub fn predicted_graded(n: usize, delta: usize, branches: usize, i: usize) -> GradedInvariants {
    let b = binomial((n + i - 1) as u64, i as u64) as usize;
    GradedInvariants {
        i,
        delta: b * delta,
        gamma: b * (delta - branches),
    }
}

pub fn predicted_graded_for(g: &Multigerm, i: usize) -> Result<GradedInvariants> {
    let s = stabilization(g, DEFAULT_MAX_STABILIZATION_ORDER)?;
    Ok(predicted_graded(g.n, s.delta, g.num_branches(), i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(n: usize, p: usize, b: &[&[&str]]) -> Multigerm {
        Multigerm::from_strings(n, p, b).unwrap()
    }

    #[test]
    fn cusp_quotients() {
        let cusp = germ(1, 2, &[&["x1^2", "x1^3"]]);
        let ctx = GermContext::new(&cusp).unwrap();
        assert_eq!(ctx.quotient(0, 1).unwrap().dim(), 2);
        assert_eq!(ctx.quotient(0, 2).unwrap().dim(), 4);
        assert_eq!(ctx.graded_delta(0).unwrap(), 2);
        assert_eq!(ctx.graded_delta(1).unwrap(), 2);
        assert_eq!(ctx.graded_gamma(0).unwrap(), 1);
        assert_eq!(ctx.tke_codim().unwrap(), 3);
    }

    #[test]
    fn psi2_level_one() {
        let psi2 = germ(2, 3, &[&["x1", "x2^2", "x1*x2"]]);
        let ctx = GermContext::new(&psi2).unwrap();
        assert_eq!(ctx.graded_delta(1).unwrap(), 4);
        assert_eq!(ctx.graded_gamma(1).unwrap(), 2);
        assert_eq!(ctx.tke_codim().unwrap(), 3);
    }

    #[test]
    fn identity_is_trivial() {
        let id = germ(1, 1, &[&["x1"]]);
        let ctx = GermContext::new(&id).unwrap();
        for i in 0..3 {
            assert_eq!(ctx.graded_gamma(i).unwrap(), 0);
            assert_eq!(ctx.graded_delta(i).unwrap(), 1);
        }
        assert_eq!(ctx.tke_codim().unwrap(), 0);
    }

    #[test]
    fn example_three_six_gamma() {
        let g = germ(2, 2, &[&["x1", "x1*x2 + x2^5 + x2^7"]]);
        let ctx = GermContext::new(&g).unwrap();
        assert_eq!(ctx.graded_gamma(2).unwrap(), 12);
    }

    #[test]
    fn predictions() {
        assert_eq!(predicted_graded(2, 2, 1, 1), GradedInvariants { i: 1, delta: 4, gamma: 2 });
        assert_eq!(predicted_graded(4, 4, 1, 2), GradedInvariants { i: 2, delta: 40, gamma: 30 });
        assert_eq!(predicted_graded(3, 5, 2, 0), GradedInvariants { i: 0, delta: 5, gamma: 3 });
    }

    #[test]
    fn jet_order_override() {
        let cusp = germ(1, 2, &[&["x1^2", "x1^3"]]);
        let ctx = GermContext::with_options(&cusp, 24, Some(JetOrder(9))).unwrap();
        assert_eq!(ctx.graded_delta(1).unwrap(), 2);
        let ctx = GermContext::with_options(&cusp, 24, Some(JetOrder(1))).unwrap();
        assert!(matches!(
            ctx.graded_delta(1),
            Err(Error::JetOrderTooSmall { .. })
        ));
    }
}
