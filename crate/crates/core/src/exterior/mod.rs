//! Differential forms and vector fields with polynomial coefficients on the
//! coordinate space of `n × n` matrices.
//!
//! A [`Form`] of degree `k` is a sum `Σ P_I da_{i_1} ∧ … ∧ da_{i_k}` where each
//! generator tuple `I` is strictly increasing in row-major order. The
//! reference volume form is `V = da_{1,1} ∧ da_{1,2} ∧ … ∧ da_{n,n}`.

mod transport;
mod vfield;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polyring::{Poly, VarId};
use crate::Rat;

pub use transport::{covector_transport, Side};
pub use vfield::{vf_bracket, VField};

/// The 1-form `da_{row,col}`.
pub type Generator = VarId;

/// Products with more than this many term pairs are split across threads.
const PARALLEL_PAIRS: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    n: usize,
    degree: usize,
    terms: BTreeMap<Vec<Generator>, Poly>,
}

/// Sign of the shuffle merging two increasing tuples, or `None` if they share
/// a generator.
fn merge_sign(a: &[Generator], b: &[Generator]) -> Option<(Vec<Generator>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                inversions += a.len() - i;
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, inversions % 2 == 1))
}

impl Form {
    pub fn zero(n: usize, degree: usize) -> Self {
        Form { n, degree, terms: BTreeMap::new() }
    }

    /// Degree-0 form.
    pub fn scalar(p: Poly) -> Self {
        let mut f = Form::zero(p.ambient(), 0);
        f.add_term(Vec::new(), p);
        f
    }

    /// `da_v`.
    pub fn d(n: usize, v: Generator) -> Self {
        let mut f = Form::zero(n, 1);
        f.add_term(vec![v], Poly::one(n));
        f
    }

    /// `da_{row,col}`.
    pub fn da(n: usize, row: usize, col: usize) -> Self {
        Form::d(n, VarId::new(row, col))
    }

    /// `p · da_v`.
    pub fn monomial(p: Poly, v: Generator) -> Self {
        let mut f = Form::zero(p.ambient(), 1);
        f.add_term(vec![v], p);
        f
    }

    /// Builds a form from arbitrary (possibly unsorted) generator lists.
    pub fn from_terms(n: usize, degree: usize, terms: impl IntoIterator<Item = (Vec<Generator>, Poly)>) -> Result<Self> {
        let mut f = Form::zero(n, degree);
        for (gens, p) in terms {
            if gens.len() != degree {
                return Err(Error::Degree(format!("{} generators in a degree {degree} form", gens.len())));
            }
            if let Some(v) = gens.iter().find(|v| !v.in_range(n)) {
                return Err(Error::Dimension(format!("{v} outside ambient size {n}")));
            }
            let mut sorted = gens.clone();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let odd = permutation_parity(&gens);
            f.add_term(sorted, if odd { -p } else { p });
        }
        Ok(f)
    }

    /// Reference volume form `da_{1,1} ∧ … ∧ da_{n,n}`.
    pub fn volume(n: usize) -> Self {
        let gens = (0..n * n).map(|k| VarId::from_index(k, n)).collect();
        let mut f = Form::zero(n, n * n);
        f.add_term(gens, Poly::one(n));
        f
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Generator>, &Poly)> {
        self.terms.iter()
    }

    /// Coefficient of an increasing generator tuple.
    pub fn coefficient(&self, gens: &[Generator]) -> Poly {
        self.terms.get(gens).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    /// Coefficient of `da_v` in a 1-form.
    pub fn coefficient_of(&self, v: Generator) -> Poly {
        self.coefficient(&[v])
    }

    /// For a top-degree form `P · V`, returns `P`.
    pub fn top_coefficient(&self) -> Option<Poly> {
        (self.degree == self.n * self.n).then(|| {
            let gens: Vec<_> = (0..self.n * self.n).map(|k| VarId::from_index(k, self.n)).collect();
            self.coefficient(&gens)
        })
    }

    /// Value of a degree-0 form.
    pub fn as_scalar(&self) -> Option<Poly> {
        (self.degree == 0).then(|| self.coefficient(&[]))
    }

    fn add_term(&mut self, gens: Vec<Generator>, p: Poly) {
        if p.is_zero() {
            return;
        }
        debug_assert_eq!(gens.len(), self.degree);
        let sum = match self.terms.remove(&gens) {
            Some(old) => &old + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(gens, sum);
        }
    }

    fn check_same(&self, other: &Form) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("forms over ambient sizes {} and {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rat) -> Form {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn mul_poly(&self, f: &Poly) -> Form {
        self.map_coeffs(|p| p * f)
    }

    /// Apply `f` to every coefficient, dropping those that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Form {
        let mut out = Form::zero(self.n, self.degree);
        for (g, p) in &self.terms {
            out.add_term(g.clone(), f(p));
        }
        out
    }

    /// Coefficient-wise normal form modulo a principal ideal.
    pub fn reduce_mod(&self, f: &Poly) -> Result<Form> {
        let mut out = Form::zero(self.n, self.degree);
        for (g, p) in &self.terms {
            out.add_term(g.clone(), p.reduce_mod(f)?);
        }
        Ok(out)
    }

    /// Evaluate coefficients at a rational matrix point (constant coefficients).
    pub fn eval_matrix(&self, point: &Matrix<Rat>) -> Result<Form> {
        let mut out = Form::zero(self.n, self.degree);
        for (g, p) in &self.terms {
            out.add_term(g.clone(), Poly::constant(self.n, p.eval_matrix(point)?));
        }
        Ok(out)
    }

    /// Exterior product; panics when ambient sizes differ.
    pub fn wedge(&self, other: &Form) -> Form {
        self.wedge_checked(other, usize::MAX).expect("wedge of forms over different ambient sizes")
    }

    /// Exterior product that fails once the result exceeds `max_terms` terms.
    pub fn wedge_checked(&self, other: &Form, max_terms: usize) -> Result<Form> {
        self.check_same(other)?;
        let degree = self.degree + other.degree;
        if degree > self.n * self.n {
            return Ok(Form::zero(self.n, degree));
        }
        let lhs: Vec<_> = self.terms.iter().collect();
        let product_chunk = |chunk: &[(&Vec<Generator>, &Poly)]| -> Result<Form> {
            let mut out = Form::zero(self.n, degree);
            for (ga, pa) in chunk {
                for (gb, pb) in &other.terms {
                    if let Some((gens, odd)) = merge_sign(ga, gb) {
                        let prod = *pa * pb;
                        out.add_term(gens, if odd { -prod } else { prod });
                    }
                }
                if out.len() > max_terms {
                    return Err(Error::Resource { terms: out.len(), cap: max_terms });
                }
            }
            Ok(out)
        };
        let out = if lhs.len().saturating_mul(other.len()) < PARALLEL_PAIRS || lhs.len() < 2 {
            product_chunk(&lhs)?
        } else {
            let chunk = lhs.len().div_ceil(rayon::current_num_threads().max(1) * 4).max(1);
            let partials: Vec<Result<Form>> = lhs.par_chunks(chunk).map(product_chunk).collect();
            // merged in chunk order, so the result does not depend on scheduling
            let mut acc = Form::zero(self.n, degree);
            for part in partials {
                for (g, p) in part?.terms {
                    acc.add_term(g, p);
                }
            }
            acc
        };
        if out.len() > max_terms {
            return Err(Error::Resource { terms: out.len(), cap: max_terms });
        }
        Ok(out)
    }

    /// `self ∧ self ∧ … ∧ self` (`k` factors), by binary exponentiation.
    pub fn wedge_power(&self, k: usize) -> Form {
        self.wedge_power_checked(k, usize::MAX).expect("unbounded wedge power")
    }

    pub fn wedge_power_checked(&self, k: usize, max_terms: usize) -> Result<Form> {
        if k == 0 {
            return Err(Error::Parameter("wedge power exponent must be positive".into()));
        }
        let mut acc: Option<Form> = None;
        let mut base = self.clone();
        let mut e = k;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.wedge_checked(&base, max_terms)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.wedge_checked(&base, max_terms)?;
        }
        Ok(acc.expect("k > 0"))
    }

    /// Exterior derivative `d(P dx_I) = Σ_v ∂P/∂v dv ∧ dx_I`.
    pub fn ext_d(&self) -> Form {
        let mut out = Form::zero(self.n, self.degree + 1);
        if self.degree + 1 > self.n * self.n {
            return out;
        }
        for (gens, p) in &self.terms {
            for v in p.variables() {
                let Some((merged, odd)) = merge_sign(&[v], gens) else { continue };
                let dp = p.derivative(v);
                out.add_term(merged, if odd { -dp } else { dp });
            }
        }
        out
    }

    /// Pair a 1-form with a vector field.
    pub fn pair(&self, x: &VField) -> Result<Poly> {
        if self.degree != 1 {
            return Err(Error::Degree(format!("pairing needs a 1-form, got degree {}", self.degree)));
        }
        Ok(interior_product(x, self)?.as_scalar().expect("degree 0"))
    }
}

fn permutation_parity(gens: &[Generator]) -> bool {
    let mut odd = false;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if gens[i] > gens[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// Free function form of [`Form::wedge`].
pub fn wedge(f: &Form, g: &Form) -> Form {
    f.wedge(g)
}

pub fn wedge_power(f: &Form, k: usize) -> Form {
    f.wedge_power(k)
}

pub fn ext_d(f: &Form) -> Form {
    f.ext_d()
}

/// Contraction `i(X) f`, with the sign `(-1)^m` for the generator in slot `m`.
pub fn interior_product(x: &VField, f: &Form) -> Result<Form> {
    if f.degree == 0 {
        return Err(Error::Degree("interior product of a 0-form".into()));
    }
    if x.ambient() != f.n {
        return Err(Error::Dimension(format!("field over {} and form over {}", x.ambient(), f.n)));
    }
    let mut out = Form::zero(f.n, f.degree - 1);
    for (gens, p) in &f.terms {
        for (slot, v) in gens.iter().enumerate() {
            let c = x.component(*v);
            if c.is_zero() {
                continue;
            }
            let mut rest = gens.clone();
            rest.remove(slot);
            let prod = &c * p;
            out.add_term(rest, if slot % 2 == 1 { -prod } else { prod });
        }
    }
    Ok(out)
}

/// Lie derivative by Cartan's formula `L_X = i(X) d + d i(X)`.
pub fn lie_derivative(x: &VField, f: &Form) -> Form {
    let through_d = interior_product(x, &f.ext_d()).expect("degree of df is positive");
    if f.degree == 0 {
        return through_d;
    }
    let contracted = interior_product(x, f).expect("positive degree");
    &through_d + &contracted.ext_d()
}

impl<'a> Add<&'a Form> for &'a Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        assert!(self.n == rhs.n && self.degree == rhs.degree, "adding forms of different shape");
        let mut out = self.clone();
        for (g, p) in &rhs.terms {
            out.add_term(g.clone(), p.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Form> for &'a Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        assert!(self.n == rhs.n && self.degree == rhs.degree, "subtracting forms of different shape");
        let mut out = self.clone();
        for (g, p) in &rhs.terms {
            out.add_term(g.clone(), -p);
        }
        out
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.map_coeffs(|p| -p)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (gens, p)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})")?;
            for (s, g) in gens.iter().enumerate() {
                write!(f, "{}da{},{}", if s == 0 { "" } else { "^" }, g.row, g.col)?;
            }
        }
        Ok(())
    }
}
