//! The contact form `ω` on `SL(2p)` and its companions: the left-invariant
//! frame `X_{k,l}`, the right-invariant fields `Y_{k,l}`, the dual forms
//! `α_{k,l}`, and exact checks of the identities relating them.
//!
//! Indices are 1-based throughout this module. The frame is indexed by the
//! pairs of [`sl_frame_indices`]: `(k, k)` for `k < 2p` stands for the
//! traceless combination with the last diagonal entry.

mod contact;
mod halg;
mod invariance;
mod reeb;
mod sample;
mod suites;

use std::collections::BTreeMap;

use crate::exterior::{Form, VField};
use crate::polyring::{poly_det, symbolic_matrix, Poly, VarId};

pub use crate::liealg::sl_frame_indices;
pub use contact::{verify_contact_identity, ContactReport};
pub use halg::{h_algebra, SubalgebraResult};
pub use invariance::{invariance_loci, locus_equations};
pub use reeb::{reeb_field, ReebResult};
pub use sample::{sample_group_point, sample_group_points, Group};
pub use suites::{structural_checks, u_decomposition, u_table_entry};

/// Default cap on the number of terms in any intermediate product.
pub const DEFAULT_MAX_TERMS: usize = 5_000_000;

pub type FrameIndex = (usize, usize);

#[derive(Clone, Debug)]
pub struct SLFrame {
    pub p: usize,
    pub x: BTreeMap<FrameIndex, VField>,
    pub y: BTreeMap<FrameIndex, VField>,
    pub alpha: BTreeMap<FrameIndex, Form>,
    pub omega: Form,
    pub delta: Poly,
    pub d_delta: Form,
}

impl SLFrame {
    pub fn n(&self) -> usize {
        2 * self.p
    }

    pub fn indices(&self) -> Vec<FrameIndex> {
        sl_frame_indices(self.n())
    }
}

fn var(n: usize, i: usize, j: usize) -> Poly {
    Poly::entry(n, i, j)
}

/// `X_{k,l} = Σ_i a_{i,k} ∂_{i,l}`, with `X_{k,k}` made traceless against column `n`.
pub fn left_field(n: usize, k: usize, l: usize) -> VField {
    let mut x = VField::from_components(n, (1..=n).map(|i| (VarId::new(i, l), var(n, i, k))));
    if k == l {
        for i in 1..=n {
            x.add_component(VarId::new(i, n), -var(n, i, n));
        }
    }
    x
}

/// `Y_{k,l} = Σ_i a_{l,i} ∂_{k,i}`; `Y_{k,k}` is the row analogue of `X_{k,k}`.
pub fn right_field(n: usize, k: usize, l: usize) -> VField {
    let mut y = VField::from_components(n, (1..=n).map(|i| (VarId::new(k, i), var(n, l, i))));
    if k == l {
        for i in 1..=n {
            y.add_component(VarId::new(n, i), -var(n, n, i));
        }
    }
    y
}

/// Signed cofactors `(-1)^{i+j} A_{i,j}` of the generic matrix.
pub fn cofactors(n: usize) -> BTreeMap<(usize, usize), Poly> {
    let minors = crate::polyring::all_minors(&symbolic_matrix(n));
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let m = minors[(i, j)].clone();
            out.insert((i + 1, j + 1), if (i + j) % 2 == 0 { m } else { -m });
        }
    }
    out
}

/// `α_{k,l} = Σ_i (-1)^{i+k} A_{i,k} da_{i,l}`.
pub fn alpha_form(n: usize, cof: &BTreeMap<(usize, usize), Poly>, k: usize, l: usize) -> Form {
    let mut f = Form::zero(n, 1);
    for i in 1..=n {
        f = &f + &Form::monomial(cof[&(i, k)].clone(), VarId::new(i, l));
    }
    f
}

/// `ω = Σ_i Σ_{j≤p} a_{i,2j} da_{i,2j-1} - a_{i,2j-1} da_{i,2j}`.
pub fn omega_form(p: usize) -> Form {
    let n = 2 * p;
    let mut w = Form::zero(n, 1);
    for i in 1..=n {
        for j in 1..=p {
            w = &w + &Form::monomial(var(n, i, 2 * j), VarId::new(i, 2 * j - 1));
            w = &w - &Form::monomial(var(n, i, 2 * j - 1), VarId::new(i, 2 * j));
        }
    }
    w
}

pub fn build_frame(p: usize) -> SLFrame {
    assert!(p >= 1, "frame needs p >= 1");
    let n = 2 * p;
    let delta = poly_det(&symbolic_matrix(n));
    let d_delta = Form::scalar(delta.clone()).ext_d();
    let cof = cofactors(n);
    let mut x = BTreeMap::new();
    let mut y = BTreeMap::new();
    let mut alpha = BTreeMap::new();
    for (k, l) in sl_frame_indices(n) {
        let xf = left_field(n, k, l);
        let yf = right_field(n, k, l);
        assert!(xf.apply(&delta).is_zero(), "X_{{{k},{l}}} is not tangent to the level sets of det");
        assert!(yf.apply(&delta).is_zero(), "Y_{{{k},{l}}} is not tangent to the level sets of det");
        x.insert((k, l), xf);
        y.insert((k, l), yf);
        alpha.insert((k, l), alpha_form(n, &cof, k, l));
    }
    SLFrame { p, x, y, alpha, omega: omega_form(p), delta, d_delta }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::vf_bracket;

    #[test]
    fn frame_for_p1() {
        let f = build_frame(1);
        assert_eq!(f.omega.to_string(), "(a1,2)da1,1 + (-a1,1)da1,2 + (a2,2)da2,1 + (-a2,1)da2,2");
        let expected = Form::from_terms(
            2,
            1,
            [
                (vec![VarId::new(1, 1)], var(2, 2, 2)),
                (vec![VarId::new(1, 2)], -var(2, 2, 1)),
                (vec![VarId::new(2, 1)], -var(2, 1, 2)),
                (vec![VarId::new(2, 2)], var(2, 1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(f.d_delta, expected);
        assert_eq!(f.x.len(), 3);
    }

    #[test]
    fn all_fields_are_tangent_for_p2() {
        let f = build_frame(2);
        assert_eq!(f.x.len(), 15);
        for x in f.x.values().chain(f.y.values()) {
            assert!(x.apply(&f.delta).is_zero());
        }
    }

    #[test]
    fn frame_brackets_follow_matrix_units() {
        // X_{k,l} corresponds to E_{k,l}: [X_{1,2}, X_{2,3}] = X_{1,3}
        let n = 4;
        let b = vf_bracket(&left_field(n, 1, 2), &left_field(n, 2, 3));
        assert_eq!(b, left_field(n, 1, 3));
    }
}
