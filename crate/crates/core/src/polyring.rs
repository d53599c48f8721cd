//! Sparse multivariate polynomials in the matrix-entry variables `a_{i,j}`
//! with exact rational coefficients.
//!
//! Monomials are ordered graded, then lexicographically along the row-major
//! variable order (`a_{1,1} > a_{1,2} > … > a_{n,n}`). The term map is kept
//! canonical at all times: no zero coefficients, no zero exponents, so
//! structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::Rat;

/// The coordinate `a_{row,col}`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarId {
    pub row: u16,
    pub col: u16,
}

impl VarId {
    pub fn new(row: usize, col: usize) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        VarId { row: row as u16, col: col as u16 }
    }

    /// Row-major position among the `n²` coordinates, 0-based.
    pub fn index(self, n: usize) -> usize {
        (self.row as usize - 1) * n + (self.col as usize - 1)
    }

    pub fn from_index(idx: usize, n: usize) -> Self {
        VarId::new(idx / n + 1, idx % n + 1)
    }

    pub fn in_range(self, n: usize) -> bool {
        self.row >= 1 && self.col >= 1 && (self.row as usize) <= n && (self.col as usize) <= n
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{},{}", self.row, self.col)
    }
}

/// Power product; exponents sorted by variable, all positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    pub fn from_exponents(mut exps: Vec<(VarId, u32)>) -> Self {
        exps.retain(|&(_, e)| e > 0);
        exps.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(VarId, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { exps: merged }
    }

    pub fn exponents(&self) -> &[(VarId, u32)] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map_or(0, |i| self.exps[i].1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (va, ea) = self.exps[i];
            let (vb, eb) = other.exps[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other
            .exps
            .iter()
            .map(|&(v, e)| (v, e - self.exponent(v)))
            .filter(|&(_, e)| e > 0)
            .collect();
        Monomial { exps }
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // the earlier variable is the more significant one
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial over `Q` in the `n²` entries of an `n × n` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Scale,
}

/// Right operand of [`poly_arith`].
pub enum Operand<'a> {
    Poly(&'a Poly),
    Rat(&'a Rat),
}

/// Checked arithmetic entry point; the operator impls on `&Poly` assume the
/// ambient sizes agree and panic otherwise.
pub fn poly_arith(op: ArithOp, lhs: &Poly, rhs: Operand<'_>) -> Result<Poly> {
    let as_poly = |rhs: Operand<'_>| -> Result<Poly> {
        match rhs {
            Operand::Poly(p) => {
                lhs.check_ambient(p)?;
                Ok(p.clone())
            }
            Operand::Rat(c) => Ok(Poly::constant(lhs.n, c.clone())),
        }
    };
    Ok(match op {
        ArithOp::Add => lhs + &as_poly(rhs)?,
        ArithOp::Sub => lhs - &as_poly(rhs)?,
        ArithOp::Mul => lhs * &as_poly(rhs)?,
        ArithOp::Neg => -lhs,
        ArithOp::Scale => match rhs {
            Operand::Rat(c) => lhs.scale(c),
            Operand::Poly(p) => {
                let c = p
                    .constant_value()
                    .ok_or_else(|| Error::Parameter("scale needs a constant operand".into()))?;
                lhs.scale(&c)
            }
        },
    })
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Poly::constant(n, Rat::one())
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { n, terms }
    }

    pub fn from_int(n: usize, c: i64) -> Self {
        Poly::constant(n, Rat::from_integer(c.into()))
    }

    pub fn var(n: usize, v: VarId) -> Self {
        debug_assert!(v.in_range(n), "{v} outside ambient size {n}");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), Rat::one());
        Poly { n, terms }
    }

    /// `a_{row,col}` in the ambient `n × n` matrix.
    pub fn entry(n: usize, row: usize, col: usize) -> Self {
        Poly::var(n, VarId::new(row, col))
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Poly::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ambient(&self) -> usize {
        self.n
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

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.coefficient(&Monomial::one()))
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> =
            self.terms.keys().flat_map(|m| m.exps.iter().map(|&(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ambient(&self, other: &Poly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "polynomials over {}x{} and {}x{} matrices",
                self.n, self.n, other.n, other.n
            )));
        }
        Ok(())
    }

    fn assert_ambient(&self, other: &Poly) {
        assert_eq!(self.n, other.n, "polynomials over different ambient sizes");
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: VarId) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let exps = m
                .exps
                .iter()
                .map(|&(w, k)| if w == v { (w, k - 1) } else { (w, k) })
                .filter(|&(_, k)| k > 0)
                .collect();
            out.add_term(Monomial { exps }, c * Rat::from_integer(e.into()));
        }
        out
    }

    /// Substitute rational values; every occurring variable must be assigned.
    pub fn eval(&self, assignment: &dyn Fn(VarId) -> Option<Rat>) -> Result<Rat> {
        let mut cache: HashMap<VarId, Rat> = HashMap::new();
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in &m.exps {
                let value = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = assignment(v).ok_or(Error::IncompleteAssignment(v))?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                term *= num_traits::pow(value, e as usize);
            }
            total += term;
        }
        Ok(total)
    }

    pub fn eval_map(&self, assignment: &BTreeMap<VarId, Rat>) -> Result<Rat> {
        self.eval(&|v| assignment.get(&v).cloned())
    }

    /// Evaluate with `a_{i,j}` set to the `(i-1, j-1)` entry of `point`.
    pub fn eval_matrix(&self, point: &Matrix<Rat>) -> Result<Rat> {
        self.eval(&|v| {
            let (i, j) = (v.row as usize, v.col as usize);
            (i >= 1 && j >= 1 && i <= point.rows() && j <= point.cols())
                .then(|| point[(i - 1, j - 1)].clone())
        })
    }

    /// Evaluate in floating point at a matrix point.
    pub fn eval_f64(&self, point: &Matrix<f64>) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(m, c)| {
                let coeff = c.to_f64().unwrap_or(f64::NAN);
                m.exps.iter().fold(coeff, |acc, &(v, e)| {
                    acc * point[(v.row as usize - 1, v.col as usize - 1)].powi(e as i32)
                })
            })
            .sum()
    }

    /// Multivariate division by a single divisor: `(quotient, remainder)` with
    /// no term of the remainder divisible by the leading monomial of `f`.
    pub fn div_rem(&self, f: &Poly) -> Result<(Poly, Poly)> {
        self.check_ambient(f)?;
        let (lm, lc) = f.leading_term().ok_or(Error::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rest = self.clone();
        let mut quot = Poly::zero(self.n);
        let mut rem = Poly::zero(self.n);
        while let Some((m, c)) = rest.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c / &lc;
                rest = &rest - &f.mul_monomial(&qm, &qc);
                quot.add_term(qm, qc);
            } else {
                rest.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
        Ok((quot, rem))
    }

    /// Normal form modulo the principal ideal `(f)`.
    pub fn reduce_mod(&self, f: &Poly) -> Result<Poly> {
        Ok(self.div_rem(f)?.1)
    }

    /// Exact quotient `self / f`, `None` when `f` does not divide `self`.
    pub fn exact_div(&self, f: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.div_rem(f)?;
        Ok(r.is_zero().then_some(q))
    }
}

/// Free function form of [`Poly::reduce_mod`].
pub fn reduce_mod_principal(p: &Poly, f: &Poly) -> Result<Poly> {
    p.reduce_mod(f)
}

/// Free function form of [`Poly::eval_map`].
pub fn eval_at_point(p: &Poly, assignment: &BTreeMap<VarId, Rat>) -> Result<Rat> {
    p.eval_map(assignment)
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_ambient(rhs);
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_ambient(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_ambient(rhs);
        let mut out = Poly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Which determinant [`determinant_minor`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetKind {
    Full,
    /// Unsigned minor of the 1-based entry `(i, j)`.
    Minor(usize, usize),
}

/// Determinant or unsigned minor of a square polynomial matrix.
pub fn determinant_minor(mat: &Matrix<Poly>, which: DetKind) -> Result<Poly> {
    if !mat.is_square() || mat.rows() == 0 {
        return Err(Error::Dimension(format!("determinant of a {}x{} matrix", mat.rows(), mat.cols())));
    }
    match which {
        DetKind::Full => Ok(poly_det(mat)),
        DetKind::Minor(i, j) => {
            let n = mat.rows();
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::Dimension(format!("minor ({i},{j}) of a {n}x{n} matrix")));
            }
            if n == 1 {
                return Ok(Poly::one(mat[(0, 0)].ambient()));
            }
            Ok(poly_det(&mat.delete(i - 1, j - 1)))
        }
    }
}

/// Cofactor expansion along successive rows with the sub-determinants of the
/// trailing rows memoized by column set.
pub fn poly_det(mat: &Matrix<Poly>) -> Poly {
    let n = mat.rows();
    assert!(mat.is_square() && n <= 63);
    let ambient = mat[(0, 0)].ambient();
    let mut memo: HashMap<u64, Poly> = HashMap::new();
    det_rec(mat, (1u64 << n) - 1, ambient, &mut memo)
}

fn det_rec(mat: &Matrix<Poly>, cols: u64, ambient: usize, memo: &mut HashMap<u64, Poly>) -> Poly {
    let k = cols.count_ones() as usize;
    if k == 0 {
        return Poly::one(ambient);
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let row = mat.rows() - k;
    let mut acc = Poly::zero(ambient);
    let mut sign_pos = 0;
    for c in 0..mat.cols() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &mat[(row, c)];
        if !entry.is_zero() {
            let sub = det_rec(mat, cols & !(1 << c), ambient, memo);
            let term = entry * &sub;
            acc = if sign_pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        sign_pos += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// The generic matrix `(a_{i,j})` of size `n`.
pub fn symbolic_matrix(n: usize) -> Matrix<Poly> {
    Matrix::from_fn(n, n, |i, j| Poly::entry(n, i + 1, j + 1))
}

/// A rational matrix lifted to constant polynomials over ambient size `ambient`.
pub fn constant_matrix(m: &Matrix<Rat>, ambient: usize) -> Matrix<Poly> {
    m.map(|x| Poly::constant(ambient, x.clone()))
}

/// Unsigned minors `A_{i,j}` of a square polynomial matrix, indexed 0-based.
pub fn all_minors(mat: &Matrix<Poly>) -> Matrix<Poly> {
    let n = mat.rows();
    Matrix::from_fn(n, n, |i, j| {
        determinant_minor(mat, DetKind::Minor(i + 1, j + 1)).expect("square matrix")
    })
}
