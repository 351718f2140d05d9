//! Exact sparse row reduction over the rationals and the monomial basis of a jet space.

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Zero};

use crate::poly::{JetOrder, Monomial, Polynomial, Rational, RingTag};

/// Sparse row vector: strictly increasing column indices, no stored zeros.
pub type SparseVec = Vec<(u32, Rational)>;

const NO_ROW: u32 = u32::MAX;

/// Returns `v + a * w`.
pub fn axpy(v: &[(u32, Rational)], a: &Rational, w: &[(u32, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j == w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i == v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_w {
            out.push((w[j].0, a * &w[j].1));
            j += 1;
        } else {
            let s = &v[i].1 + a * &w[j].1;
            if !s.is_zero() {
                out.push((v[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_vec(v: &[(u32, Rational)], a: &Rational) -> SparseVec {
    if a.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(c, x)| (*c, x * a)).collect()
}

/// Sorts and merges an unordered list of entries into a sparse vector.
pub fn collect_sparse(mut entries: Vec<(u32, Rational)>) -> SparseVec {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (c, x) in entries {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx += x,
            _ => {
                if let Some((_, lx)) = out.last() {
                    if lx.is_zero() {
                        out.pop();
                    }
                }
                out.push((c, x));
            }
        }
    }
    if let Some((_, lx)) = out.last() {
        if lx.is_zero() {
            out.pop();
        }
    }
    out
}

/// Row space of a sparse matrix kept in row-echelon form: every row starts at
/// its pivot with coefficient one, and pivots are distinct. After
/// [`Echelon::make_reduced`] every pivot column is zero in all other rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: u32,
    rows: Vec<SparseVec>,
    pivot_row: Vec<u32>,
    reduced: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols: ncols as u32,
            rows: Vec::new(),
            pivot_row: vec![NO_ROW; ncols],
            reduced: true,
        }
    }

    /// Echelon form of the span of `rows`.
    pub fn from_rows(ncols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e.make_reduced();
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols as usize
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, c: u32) -> bool {
        self.pivot_row[c as usize] != NO_ROW
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn pivot_row(&self, c: u32) -> Option<&SparseVec> {
        match self.pivot_row[c as usize] {
            NO_ROW => None,
            r => Some(&self.rows[r as usize]),
        }
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<u32> {
        (0..self.ncols).filter(|&c| self.is_pivot(c)).collect()
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<u32> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Rows ordered by pivot column.
    pub fn rows(&self) -> Vec<&SparseVec> {
        self.pivot_row
            .iter()
            .filter(|&&r| r != NO_ROW)
            .map(|&r| &self.rows[r as usize])
            .collect()
    }

    /// Rows whose pivot lies in `range`, ordered by pivot.
    pub fn rows_with_pivot_in(&self, range: std::ops::Range<u32>) -> Vec<&SparseVec> {
        range
            .filter_map(|c| self.pivot_row(c))
            .collect()
    }

    fn reduce_semi(&self, v: SparseVec) -> SparseVec {
        let mut done: SparseVec = Vec::new();
        let mut rest = v;
        let mut k = 0;
        while k < rest.len() {
            let r = self.pivot_row[rest[k].0 as usize];
            if r == NO_ROW {
                k += 1;
                continue;
            }
            done.extend(rest.drain(..k));
            let a = -&rest[0].1;
            rest = axpy(&rest, &a, &self.rows[r as usize]);
            k = 0;
        }
        done.append(&mut rest);
        done
    }

    fn reduce_against_reduced(&self, v: &[(u32, Rational)]) -> SparseVec {
        let mut entries = Vec::with_capacity(v.len());
        for (c, a) in v {
            match self.pivot_row[*c as usize] {
                NO_ROW => entries.push((*c, a.clone())),
                r => {
                    for (c2, b) in &self.rows[r as usize][1..] {
                        entries.push((*c2, -(a * b)));
                    }
                }
            }
        }
        collect_sparse(entries)
    }

    /// Remainder of `v` modulo the row space. When the form is reduced this is
    /// the unique representative supported on free columns.
    pub fn reduce(&self, v: &[(u32, Rational)]) -> SparseVec {
        if self.reduced {
            self.reduce_against_reduced(v)
        } else {
            self.reduce_semi(v.to_vec())
        }
    }

    pub fn contains(&self, v: &[(u32, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space. Returns the pivot column of the new row, or
    /// `None` if `v` was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> Option<u32> {
        let mut v = self.reduce_semi(v);
        let (c, lead) = v.first()?.clone();
        if !lead.is_one() {
            let inv = lead.recip();
            for e in v.iter_mut() {
                e.1 *= &inv;
            }
        }
        self.pivot_row[c as usize] = self.rows.len() as u32;
        self.rows.push(v);
        self.reduced = false;
        Some(c)
    }

    /// The most recently inserted row.
    pub fn last_row(&self) -> Option<&SparseVec> {
        self.rows.last()
    }

    /// Brings the form to reduced row-echelon form by back substitution.
    pub fn make_reduced(&mut self) {
        if self.reduced {
            return;
        }
        let mut order: Vec<u32> = self.pivots();
        order.reverse();
        // rows with larger pivots are finished first; their entries only touch free columns
        let mut done = vec![false; self.ncols as usize];
        for c in order {
            let r = self.pivot_row[c as usize] as usize;
            let row = std::mem::take(&mut self.rows[r]);
            let mut entries = Vec::with_capacity(row.len());
            let mut it = row.into_iter();
            let head = it.next().unwrap();
            for (c2, a) in it {
                let pr = self.pivot_row[c2 as usize];
                if pr != NO_ROW {
                    debug_assert!(done[c2 as usize]);
                    for (c3, b) in &self.rows[pr as usize][1..] {
                        entries.push((*c3, -(&a * b)));
                    }
                } else {
                    entries.push((c2, a));
                }
            }
            let mut new_row = vec![head];
            new_row.extend(collect_sparse(entries));
            self.rows[r] = new_row;
            done[c as usize] = true;
        }
        self.reduced = true;
    }

    /// Whether the row space of `self` contains that of `other`.
    pub fn contains_space(&self, other: &Echelon) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn same_space(&self, other: &Echelon) -> bool {
        self.rank() == other.rank() && self.contains_space(other)
    }
}

/// Basis `w_1..w_m` of the kernel of the map `e_k -> images[k]`; the vectors
/// are returned in reduced echelon form over the domain coordinates.
pub fn kernel_of_images(images: &[SparseVec], target_cols: usize) -> (usize, Vec<SparseVec>) {
    let m = images.len();
    let mut e = Echelon::new(target_cols + m);
    for (k, img) in images.iter().enumerate() {
        let mut row = img.clone();
        row.push(((target_cols + k) as u32, Rational::one()));
        e.insert(row);
    }
    e.make_reduced();
    let rank = (0..target_cols as u32).filter(|&c| e.is_pivot(c)).count();
    let kernel = e
        .rows_with_pivot_in(target_cols as u32..(target_cols + m) as u32)
        .into_iter()
        .map(|r| {
            r.iter()
                .map(|(c, x)| (c - target_cols as u32, x.clone()))
                .collect()
        })
        .collect();
    (rank, kernel)
}

pub fn rank_of(rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Intersection of two row spaces in the same coordinates.
pub fn intersect(a: &Echelon, b: &Echelon) -> Echelon {
    let n = a.ncols();
    assert_eq!(n, b.ncols());
    let shift = |v: &SparseVec| -> SparseVec { v.iter().map(|(c, x)| (c + n as u32, x.clone())).collect() };
    let mut z = Echelon::new(2 * n);
    for r in a.rows() {
        let mut row = r.clone();
        row.extend(shift(r));
        z.insert(row);
    }
    for r in b.rows() {
        z.insert(r.clone());
    }
    z.make_reduced();
    let rows = z
        .rows_with_pivot_in(n as u32..(2 * n) as u32)
        .into_iter()
        .map(|r| r.iter().map(|(c, x)| (c - n as u32, x.clone())).collect::<SparseVec>())
        .collect::<Vec<_>>();
    Echelon::from_rows(n, rows)
}

/// Solves `A x = b_r` for several right-hand sides. `columns[u]` holds the
/// image of unknown `u` in equation coordinates `0..neq`. Returns one solution
/// per right-hand side (free unknowns set to zero) or `None` when inconsistent.
pub fn solve_columns(
    columns: &[SparseVec],
    rhs: &[SparseVec],
    neq: usize,
) -> Vec<Option<SparseVec>> {
    let nu = columns.len();
    let ncols = nu + rhs.len();
    let mut eq_rows: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); neq];
    for (u, col) in columns.iter().enumerate() {
        for (e, x) in col {
            eq_rows[*e as usize].push((u as u32, x.clone()));
        }
    }
    for (r, col) in rhs.iter().enumerate() {
        for (e, x) in col {
            eq_rows[*e as usize].push(((nu + r) as u32, x.clone()));
        }
    }
    let mut ech = Echelon::new(ncols);
    for row in eq_rows {
        if !row.is_empty() {
            ech.insert(row);
        }
    }
    ech.make_reduced();
    let consistency = ech.rows_with_pivot_in(nu as u32..ncols as u32);
    let solved = ech.rows_with_pivot_in(0..nu as u32);
    (0..rhs.len())
        .map(|r| {
            let col = (nu + r) as u32;
            let bad = consistency
                .iter()
                .any(|row| row.iter().any(|(c, _)| *c == col));
            if bad {
                return None;
            }
            let mut sol = Vec::new();
            for row in &solved {
                if let Ok(k) = row.binary_search_by_key(&col, |e| e.0) {
                    sol.push((row[0].0, row[k].1.clone()));
                }
            }
            Some(sol)
        })
        .collect()
}

/// Monomials of degree at most `N` in `n` variables, indexed degree-ascending
/// and lex-descending within a degree.
#[derive(Clone, Debug)]
pub struct JetBasis {
    nvars: usize,
    order: JetOrder,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    degree_start: Vec<usize>,
    var_mul: Vec<u32>,
}

impl JetBasis {
    pub fn new(nvars: usize, order: JetOrder) -> Self {
        let mut monos = Vec::new();
        let mut degree_start = Vec::new();
        for d in 0..=order.0 {
            degree_start.push(monos.len());
            monos.extend(Monomial::all_of_degree(nvars, d));
        }
        degree_start.push(monos.len());
        let index: HashMap<Monomial, u32> = monos
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k as u32))
            .collect();
        let mut var_mul = vec![NO_ROW; monos.len() * nvars];
        for (k, m) in monos.iter().enumerate() {
            if m.degree() == order.0 {
                continue;
            }
            for v in 0..nvars {
                let mv = m.mul(&Monomial::var(nvars, v));
                var_mul[k * nvars + v] = index[&mv];
            }
        }
        JetBasis {
            nvars,
            order,
            monos,
            index,
            degree_start,
            var_mul,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> JetOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomial(&self, k: u32) -> &Monomial {
        &self.monos[k as usize]
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn index_of(&self, m: &Monomial) -> Option<u32> {
        self.index.get(m).copied()
    }

    /// Column range holding the monomials of degree `d`.
    pub fn degree_range(&self, d: u32) -> std::ops::Range<u32> {
        if d > self.order.0 {
            let n = self.monos.len() as u32;
            return n..n;
        }
        self.degree_start[d as usize] as u32..self.degree_start[d as usize + 1] as u32
    }

    /// Number of monomials of degree at most `d`.
    pub fn count_up_to(&self, d: u32) -> usize {
        self.degree_start[(d.min(self.order.0) + 1) as usize]
    }

    pub fn degree_of(&self, k: u32) -> u32 {
        self.monos[k as usize].degree()
    }

    /// Index of `x_v * m_k`, or `None` when it exceeds the order.
    pub fn times_var(&self, k: u32, v: usize) -> Option<u32> {
        match self.var_mul[k as usize * self.nvars + v] {
            NO_ROW => None,
            r => Some(r),
        }
    }

    pub fn times(&self, a: u32, b: u32) -> Option<u32> {
        if self.degree_of(a) + self.degree_of(b) > self.order.0 {
            return None;
        }
        self.index_of(&self.monos[a as usize].mul(&self.monos[b as usize]))
    }

    /// Truncated coordinate vector of a polynomial.
    pub fn to_vec(&self, p: &Polynomial) -> SparseVec {
        let entries = p
            .terms()
            .filter(|(m, _)| m.degree() <= self.order.0)
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect();
        collect_sparse(entries)
    }

    pub fn to_poly(&self, v: &[(u32, Rational)], ring: RingTag) -> Polynomial {
        Polynomial::from_terms(
            ring,
            v.iter().map(|(c, x)| (self.monos[*c as usize].clone(), x.clone())),
        )
    }

    /// `x_v * v`, truncated.
    pub fn shift_by_var(&self, v: &[(u32, Rational)], var: usize) -> SparseVec {
        let entries = v
            .iter()
            .filter_map(|(c, x)| self.times_var(*c, var).map(|c2| (c2, x.clone())))
            .collect();
        collect_sparse(entries)
    }
}

/// Smallest subspace containing `gens` and closed under the linear maps
/// `shift(., v)` for `v < nshifts`, in reduced echelon form.
pub fn closure(
    ncols: usize,
    gens: impl IntoIterator<Item = SparseVec>,
    nshifts: usize,
    shift: impl Fn(&SparseVec, usize) -> SparseVec,
) -> Echelon {
    let mut e = Echelon::new(ncols);
    let mut queue = VecDeque::new();
    for g in gens {
        if e.insert(g).is_some() {
            queue.push_back(e.last_row().unwrap().clone());
        }
    }
    let mut next_cleanup = 64;
    while let Some(r) = queue.pop_front() {
        for v in 0..nshifts {
            let s = shift(&r, v);
            if !s.is_empty() && e.insert(s).is_some() {
                queue.push_back(e.last_row().unwrap().clone());
            }
        }
        if e.rank() >= next_cleanup {
            e.make_reduced();
            next_cleanup = e.rank() + e.rank() / 16 + 32;
        }
    }
    e.make_reduced();
    e
}

/// Truncation of the ideal generated by `gens` in the jet space of `basis`.
pub fn ideal_in_jets(basis: &JetBasis, gens: impl IntoIterator<Item = SparseVec>) -> Echelon {
    closure(basis.len(), gens, basis.nvars(), |r, v| basis.shift_by_var(r, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> Rational {
        Rational::from(a)
    }

    fn dense(v: &[i64]) -> SparseVec {
        v.iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(c, x)| (c as u32, q(*x)))
            .collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new(3);
        assert_eq!(e.insert(dense(&[1, 2, 3])), Some(0));
        assert_eq!(e.insert(dense(&[2, 4, 7])), Some(2));
        assert_eq!(e.insert(dense(&[0, 0, 5])), None);
        e.make_reduced();
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&dense(&[3, 6, 10])));
        assert!(!e.contains(&dense(&[0, 1, 0])));
        assert_eq!(e.pivot_row(0).unwrap(), &dense(&[1, 2, 0]));
    }

    #[test]
    fn kernel_and_rank() {
        let images = vec![dense(&[1, 0]), dense(&[0, 1]), dense(&[1, 1])];
        let (rank, ker) = kernel_of_images(&images, 2);
        assert_eq!(rank, 2);
        assert_eq!(ker, vec![dense(&[1, 1, -1])]);
    }

    #[test]
    fn intersection_of_planes() {
        let a = Echelon::from_rows(3, vec![dense(&[1, 0, 0]), dense(&[0, 1, 0])]);
        let b = Echelon::from_rows(3, vec![dense(&[0, 1, 0]), dense(&[0, 0, 1])]);
        let c = intersect(&a, &b);
        assert_eq!(c.rank(), 1);
        assert!(c.contains(&dense(&[0, 3, 0])));
    }

    #[test]
    fn solving_with_several_right_hand_sides() {
        // x0 + x1 = b0, x1 = b1
        let cols = vec![dense(&[1, 0]), dense(&[1, 1])];
        let sols = solve_columns(&cols, &[dense(&[3, 1]), dense(&[0, 2])], 2);
        assert_eq!(sols[0].as_ref().unwrap(), &dense(&[2, 1]));
        assert_eq!(sols[1].as_ref().unwrap(), &dense(&[-2, 2]));
        let none = solve_columns(&[dense(&[1, 1])], &[dense(&[1, 0])], 2);
        assert!(none[0].is_none());
    }

    #[test]
    fn jet_basis_layout() {
        let b = JetBasis::new(2, JetOrder(2));
        assert_eq!(b.len(), 6);
        assert_eq!(b.degree_range(1), 1..3);
        assert_eq!(b.monomial(1), &Monomial::from_exponents(vec![1, 0]));
        assert_eq!(b.times_var(1, 1), Some(4));
        assert_eq!(b.times_var(4, 0), None);
        assert_eq!(b.times(1, 2), Some(4));
    }
}
