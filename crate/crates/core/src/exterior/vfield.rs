use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::polyring::{Poly, VarId};
use crate::Rat;

/// Vector field `Σ c_v ∂_v` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VField {
    n: usize,
    coeffs: BTreeMap<VarId, Poly>,
}

impl VField {
    pub fn zero(n: usize) -> Self {
        VField { n, coeffs: BTreeMap::new() }
    }

    /// The coordinate derivation `∂_{row,col}`.
    pub fn partial(n: usize, v: VarId) -> Self {
        let mut f = VField::zero(n);
        f.add_component(v, Poly::one(n));
        f
    }

    pub fn from_components(n: usize, comps: impl IntoIterator<Item = (VarId, Poly)>) -> Self {
        let mut f = VField::zero(n);
        for (v, p) in comps {
            f.add_component(v, p);
        }
        f
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn component(&self, v: VarId) -> Poly {
        self.coeffs.get(&v).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    pub fn components(&self) -> impl Iterator<Item = (&VarId, &Poly)> {
        self.coeffs.iter()
    }

    pub fn add_component(&mut self, v: VarId, p: Poly) {
        if p.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&v) {
            Some(old) => &old + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.coeffs.insert(v, sum);
        }
    }

    /// Directional derivative `X(f) = Σ c_v ∂f/∂v`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(self.n);
        for (v, c) in &self.coeffs {
            let d = f.derivative(*v);
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> VField {
        VField::from_components(self.n, self.coeffs.iter().map(|(v, p)| (*v, p.scale(c))))
    }

    pub fn mul_poly(&self, f: &Poly) -> VField {
        VField::from_components(self.n, self.coeffs.iter().map(|(v, p)| (*v, p * f)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> VField {
        VField::from_components(self.n, self.coeffs.iter().map(|(v, p)| (*v, f(p))))
    }
}

/// Jacobi–Lie bracket `[X, Y]^v = X(Y^v) - Y(X^v)`.
pub fn vf_bracket(x: &VField, y: &VField) -> VField {
    assert_eq!(x.n, y.n, "vector fields over different ambient sizes");
    let mut out = VField::zero(x.n);
    for (v, yc) in &y.coeffs {
        out.add_component(*v, x.apply(yc));
    }
    for (v, xc) in &x.coeffs {
        out.add_component(*v, -y.apply(xc));
    }
    out
}

impl<'a> Add<&'a VField> for &'a VField {
    type Output = VField;
    fn add(self, rhs: &VField) -> VField {
        let mut out = self.clone();
        for (v, p) in &rhs.coeffs {
            out.add_component(*v, p.clone());
        }
        out
    }
}

impl<'a> Sub<&'a VField> for &'a VField {
    type Output = VField;
    fn sub(self, rhs: &VField) -> VField {
        let mut out = self.clone();
        for (v, p) in &rhs.coeffs {
            out.add_component(*v, -p);
        }
        out
    }
}

impl Neg for &VField {
    type Output = VField;
    fn neg(self) -> VField {
        self.map_coeffs(|p| -p)
    }
}

impl fmt::Display for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (v, p)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})∂{},{}", v.row, v.col)?;
        }
        Ok(())
    }
}
