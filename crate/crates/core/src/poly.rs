//! Sparse multivariate polynomials over exact rationals.
//!
//! Every polynomial carries a [`RingTag`] naming its variable set: the source
//! chart of a branch (`x1..xn`) or the target (`X1..Xp`). Terms are stored
//! keyed by [`Monomial`], whose `Ord` is graded-lexicographic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use crate::rational::Rational;

/// Truncation degree: computations are done modulo every monomial of degree `> N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct JetOrder(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Source,
    Target,
}

/// Identifies the variable set of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingTag {
    pub kind: RingKind,
    pub nvars: usize,
}

impl RingTag {
    pub const fn source(n: usize) -> Self {
        RingTag { kind: RingKind::Source, nvars: n }
    }

    pub const fn target(p: usize) -> Self {
        RingTag { kind: RingKind::Target, nvars: p }
    }

    pub fn prefix(&self) -> char {
        match self.kind {
            RingKind::Source => 'x',
            RingKind::Target => 'X',
        }
    }

    pub fn var_name(&self, i: usize) -> String {
        format!("{}{}", self.prefix(), i + 1)
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prefix();
        write!(f, "K[{p}1..{p}{}]", self.nvars)
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically on the exponents (so `x1 > x2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Printing and jet-coordinate order: degree ascending, then lex descending.
    pub fn cmp_local(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }

    /// All monomials of exactly degree `d`, in lex-descending order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    pub fn write_with(&self, ring: &RingTag, f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            write!(f, "{}", ring.var_name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with exact rational coefficients; no zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingTag,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: RingTag) -> Self {
        Polynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: RingTag, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(Monomial::one(ring.nvars), c);
        p
    }

    pub fn one(ring: RingTag) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: RingTag, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars, i), Rational::one())
    }

    pub fn monomial(ring: RingTag, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars);
        let mut p = Self::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ring: RingTag, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lex ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.ring.nvars))
    }

    /// Highest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Lowest total degree of a nonzero term, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_truncated(other, None))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Product, dropping every term of degree above `cap` when given.
    pub fn mul_truncated(&self, other: &Polynomial, cap: Option<JetOrder>) -> Polynomial {
        let mut out = Polynomial::zero(self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(JetOrder(n)) = cap {
                    if ma.degree() + mb.degree() > n {
                        continue;
                    }
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn truncate(&self, order: JetOrder) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= order.0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn pow_truncated(&self, e: u32, cap: Option<JetOrder>) -> Polynomial {
        let mut acc = Polynomial::one(self.ring);
        for _ in 0..e {
            acc = acc.mul_truncated(self, cap);
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.0.clone();
            d[i] -= 1;
            out.add_term(Monomial(d), c * Rational::from(e as i64));
        }
        out
    }

    /// `truncate(self ∘ comps, N)`; `self` lives in the target ring and every
    /// component must vanish at the origin.
    pub fn compose(&self, comps: &[Polynomial], order: JetOrder) -> Result<Polynomial> {
        self.compose_inner(comps, Some(order))
    }

    /// Composition without truncation.
    pub fn compose_exact(&self, comps: &[Polynomial]) -> Result<Polynomial> {
        self.compose_inner(comps, None)
    }

    fn compose_inner(&self, comps: &[Polynomial], cap: Option<JetOrder>) -> Result<Polynomial> {
        if comps.len() != self.ring.nvars {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: format!("{} substituted components", comps.len()),
            });
        }
        let Some(first) = comps.first() else {
            return Ok(self.clone());
        };
        let src = first.ring;
        for (q, c) in comps.iter().enumerate() {
            if c.ring != src {
                return Err(Error::RingMismatch {
                    left: src.to_string(),
                    right: c.ring.to_string(),
                });
            }
            if !c.constant_term().is_zero() {
                return Err(Error::ConstantTerm {
                    branch: 0,
                    component: q,
                });
            }
        }
        // powers[q][e] = comps[q]^e, built lazily by repeated truncated multiplication
        let mut powers: Vec<Vec<Polynomial>> = comps
            .iter()
            .map(|_| vec![Polynomial::one(src)])
            .collect();
        let mut out = Polynomial::zero(src);
        for (m, c) in &self.terms {
            if let Some(JetOrder(n)) = cap {
                // each component has order >= 1
                if m.degree() > n {
                    continue;
                }
            }
            let mut term = Polynomial::constant(src, c.clone());
            for (q, &e) in m.0.iter().enumerate() {
                while powers[q].len() <= e as usize {
                    let next = powers[q].last().unwrap().mul_truncated(&comps[q], cap);
                    powers[q].push(next);
                }
                term = term.mul_truncated(&powers[q][e as usize], cap);
                if term.is_zero() {
                    break;
                }
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Same polynomial viewed in another ring with the same number of variables.
    pub fn retag(&self, ring: RingTag) -> Polynomial {
        assert_eq!(ring.nvars, self.ring.nvars);
        Polynomial {
            ring,
            terms: self.terms.clone(),
        }
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
    };
}
forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.cmp_local(b.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                m.write_with(&self.ring, f)?;
            }
        }
        Ok(())
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn src(n: usize) -> RingTag {
        RingTag::source(n)
    }

    fn p(s: &str, n: usize) -> Polynomial {
        parse_poly(s, src(n)).unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn arithmetic_examples() {
        assert!((&p("x1^2", 1) + &p("-x1^2", 1)).is_zero());
        assert_eq!(&p("x1+x2", 2) * &p("x1-x2", 2), p("x1^2 - x2^2", 2));
        assert_eq!(p("3*x1", 1).scale(&q(2, 3)), p("2*x1", 1));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = p("x1", 1);
        let b = Polynomial::var(RingTag::target(1), 0);
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(p("x1^5 + x1^3", 1).truncate(JetOrder(4)), p("x1^3", 1));
        let f = p("x1^2 + x1*x2", 2);
        assert_eq!(f.truncate(JetOrder(2)), f);
        assert_eq!(p("1 + x1", 1).truncate(JetOrder(0)), p("1", 1));
    }

    #[test]
    fn composition_examples() {
        let t = RingTag::target(2);
        let branch = vec![p("x1^2", 1), p("x1^3", 1)];
        let x2 = parse_poly("X2", t).unwrap();
        let x1x2 = parse_poly("X1*X2", t).unwrap();
        assert_eq!(x2.compose(&branch, JetOrder(10)).unwrap(), p("x1^3", 1));
        assert_eq!(x1x2.compose(&branch, JetOrder(10)).unwrap(), p("x1^5", 1));
        assert!(x1x2.compose(&branch, JetOrder(4)).unwrap().is_zero());
    }

    #[test]
    fn composition_rejects_constant_terms() {
        let t = RingTag::target(1);
        let u = parse_poly("X1", t).unwrap();
        let err = u.compose(&[p("1 + x1", 1)], JetOrder(3)).unwrap_err();
        assert!(matches!(err, Error::ConstantTerm { .. }));
    }

    #[test]
    fn partial_examples() {
        assert_eq!(p("x2^3 + x1*x2", 2).partial(1), p("3*x2^2 + x1", 2));
        assert!(p("7/3", 2).partial(0).is_zero());
        assert_eq!(p("x1^2*x2", 2).partial(0), p("2*x1*x2", 2));
    }

    #[test]
    fn canonical_print_ascends_in_degree() {
        let t = RingTag::target(2);
        let f = parse_poly("-9*X1*X2^3 + 5*X1^3 + 4*X2^2", t).unwrap();
        assert_eq!(f.to_string(), "4*X2^2 + 5*X1^3 - 9*X1*X2^3");
        assert_eq!(p("x2^2 + x1*x2 + x1^2", 2).to_string(), "x1^2 + x1*x2 + x2^2");
        assert_eq!(p("-1 - 3/2*x1", 1).to_string(), "-1 - 3/2*x1");
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_exponents(vec![2, 0]);
        let b = Monomial::from_exponents(vec![1, 1]);
        let c = Monomial::from_exponents(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert_eq!(Monomial::all_of_degree(2, 2), vec![a, b, Monomial::from_exponents(vec![0, 2])]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }
}
