use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polyring::{all_minors, Poly, VarId};
use crate::Rat;

use super::Form;

/// Which translation carries the identity to `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `b ↦ a b`, tangent map `V ↦ a V`.
    Left,
    /// `b ↦ b a`, tangent map `V ↦ V a`.
    Right,
}

/// Push a covector at the identity to the point `a` through the inverse
/// transpose of the translation's tangent map.
///
/// The inverse of `a` is replaced by its adjugate, i.e. `det a` is taken to
/// be 1; comparisons made with the result are only meaningful on `SL(n)` or
/// modulo `(Δ - 1)`.
pub fn covector_transport(a: &Matrix<Poly>, side: Side, base: &Form) -> Result<Form> {
    if !a.is_square() {
        return Err(Error::Dimension("translation by a non-square matrix".into()));
    }
    let n = a.rows();
    if base.degree() != 1 {
        return Err(Error::Degree(format!("transport needs a 1-form, got degree {}", base.degree())));
    }
    if base.ambient() != n {
        return Err(Error::Dimension(format!("{n}x{n} translation of a covector over size {}", base.ambient())));
    }
    let ambient = a[(0, 0)].ambient();
    let mut xi = Matrix::filled(n, n, Rat::zero());
    for (gens, p) in base.terms() {
        let c = p
            .constant_value()
            .ok_or_else(|| Error::Parameter("base covector must have constant coefficients".into()))?;
        xi[(gens[0].row as usize - 1, gens[0].col as usize - 1)] = c;
    }
    // adj(a)[k][i] = (-1)^{i+k} A_{i,k}
    let minors = all_minors(a);
    let adj = |k: usize, i: usize| -> Poly {
        let m = &minors[(i, k)];
        if (i + k) % 2 == 0 { m.clone() } else { -m }
    };
    let mut out = Form::zero(ambient, 1);
    for i in 0..n {
        for l in 0..n {
            let mut coeff = Poly::zero(ambient);
            match side {
                // ξ_a(W) = ξ(a^{-1} W): coefficient of da_{i,l} is Σ_k ξ_{k,l} adj_{k,i}
                Side::Left => {
                    for k in 0..n {
                        if !xi[(k, l)].is_zero() {
                            coeff = &coeff + &adj(k, i).scale(&xi[(k, l)]);
                        }
                    }
                }
                // ξ_a(W) = ξ(W a^{-1}): coefficient of da_{i,l} is Σ_m ξ_{i,m} adj_{l,m}
                Side::Right => {
                    for m in 0..n {
                        if !xi[(i, m)].is_zero() {
                            coeff = &coeff + &adj(l, m).scale(&xi[(i, m)]);
                        }
                    }
                }
            }
            if !coeff.is_zero() {
                out = &out + &Form::monomial(coeff, VarId::new(i + 1, l + 1));
            }
        }
    }
    Ok(out)
}
