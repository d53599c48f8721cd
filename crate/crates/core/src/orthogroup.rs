//! Forms induced on `SO(n)` through the constraints
//! `f_{k,l} = Σ_j a_{j,k} a_{j,l} - δ_{k,l}`, and the contact check on `SO(3)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exterior::{covector_transport, Form, Side};
use crate::linalg::{rat, ratio, Matrix, RatMatrix};
use crate::polyring::{determinant_minor, symbolic_matrix, DetKind, Poly, VarId};
use crate::report::{poly_json, rat_json, Provenance, VerifyReport};
use crate::slcontact::{sample_group_points, Group};
use crate::Rat;

#[derive(Clone, Debug)]
pub struct SOConstraints {
    pub n: usize,
    /// `f_{k,l}` for `k ≤ l`, 1-based.
    pub f: BTreeMap<(usize, usize), Poly>,
    /// `∧_{k≤l} df_{k,l}` in lexicographic order.
    pub theta: Form,
    /// Rows `df_{k,l}` (halved when `k = l`), columns `da_{i,j}` in row-major order.
    pub jacobian: Matrix<Poly>,
}

impl SOConstraints {
    /// Lexicographic list of constraint indices.
    pub fn indices(&self) -> Vec<(usize, usize)> {
        self.f.keys().copied().collect()
    }

    /// `Θ_n` rebuilt from the maximal minors of the Jacobian: the `I`-th
    /// coefficient is `2^n M_I`, undoing the halved diagonal rows.
    pub fn theta_from_minors(&self) -> Result<Form> {
        let n = self.n;
        let rows = self.jacobian.rows();
        let cols = self.jacobian.cols();
        let scale = Rat::from_integer(num_bigint::BigInt::one() << n);
        let mut terms = Vec::new();
        for subset in combinations(cols, rows) {
            let m = self.jacobian.select_cols(&subset);
            let det = determinant_minor(&m, DetKind::Full)?;
            if !det.is_zero() {
                let gens = subset.iter().map(|&c| VarId::from_index(c, n)).collect();
                terms.push((gens, det.scale(&scale)));
            }
        }
        Form::from_terms(n, rows, terms)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn so_constraint_system(n: usize) -> Result<SOConstraints> {
    if n < 2 {
        return Err(Error::Parameter(format!("SO(n) constraints need n >= 2, got {n}")));
    }
    let a = |i, j| Poly::entry(n, i, j);
    let mut f = BTreeMap::new();
    for k in 1..=n {
        for l in k..=n {
            let mut s = Poly::zero(n);
            for j in 1..=n {
                s = &s + &(&a(j, k) * &a(j, l));
            }
            if k == l {
                s = &s - &Poly::one(n);
            }
            f.insert((k, l), s);
        }
    }
    let mut theta = Form::scalar(Poly::one(n));
    for p in f.values() {
        theta = theta.wedge(&Form::scalar(p.clone()).ext_d());
    }
    let half = ratio(1, 2);
    let jacobian = Matrix::from_fn(f.len(), n * n, |r, c| {
        let (&(k, l), p) = f.iter().nth(r).expect("row in range");
        let d = p.derivative(VarId::from_index(c, n));
        if k == l { d.scale(&half) } else { d }
    });
    Ok(SOConstraints { n, f, theta, jacobian })
}

/// The 6 × 9 Jacobian as displayed for `n = 3` (rows `½f_{1,1}, f_{1,2}, f_{1,3},
/// ½f_{2,2}, f_{2,3}, ½f_{3,3}`), kept verbatim for comparison.
pub fn reference_jacobian_so3() -> Matrix<Poly> {
    const TABLE: [[u8; 9]; 6] = [
        [11, 0, 0, 21, 0, 0, 31, 0, 0],
        [12, 11, 0, 22, 21, 0, 32, 31, 0],
        [13, 0, 11, 23, 0, 21, 33, 0, 31],
        [0, 12, 0, 0, 22, 0, 0, 32, 0],
        [0, 13, 12, 0, 23, 22, 0, 33, 32],
        [0, 0, 13, 0, 0, 23, 0, 0, 33],
    ];
    Matrix::from_fn(6, 9, |r, c| match TABLE[r][c] {
        0 => Poly::zero(3),
        ij => Poly::entry(3, (ij / 10) as usize, (ij % 10) as usize),
    })
}

/// Which coefficient reading of the `SO(3)` form to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiReading {
    /// `a_{1,1} da_{1,2} + a_{2,1} da_{2,2} + a_{3,1} da_{3,2}`.
    Column,
    /// `a_{1,1} da_{1,2} + a_{2,1} da_{1,2} + a_{3,1} da_{3,2}`, as printed.
    Printed,
}

pub fn so3_phi(reading: PhiReading) -> Form {
    let a = |i, j| Poly::entry(3, i, j);
    let second = match reading {
        PhiReading::Column => VarId::new(2, 2),
        PhiReading::Printed => VarId::new(1, 2),
    };
    let mut phi = Form::monomial(a(1, 1), VarId::new(1, 2));
    phi = &phi + &Form::monomial(a(2, 1), second);
    &phi + &Form::monomial(a(3, 1), VarId::new(3, 2))
}

#[derive(Clone, Debug)]
pub struct InducedFormReport {
    pub phi: Form,
    /// `φ ∧ dφ ∧ Θ₃` with `Θ₃ = ∧ df_{k,l}`.
    pub top_form: Form,
    /// `P` with `top_form = P V`.
    pub coefficient: Poly,
    /// `P` at each sampled `SO(3)` point.
    pub evaluations: Vec<(RatMatrix, Rat)>,
    pub report: VerifyReport,
}

fn top_coefficient(phi: &Form, theta: &Form) -> Poly {
    phi.wedge(&phi.ext_d()).wedge(theta).top_coefficient().expect("degree 9")
}

pub fn so3_contact_check(samples: usize, seed: u64) -> Result<InducedFormReport> {
    let sys = so_constraint_system(3)?;
    let phi = so3_phi(PhiReading::Column);
    let top_form = phi.wedge(&phi.ext_d()).wedge(&sys.theta);
    let coefficient = top_form.top_coefficient().expect("degree 9");
    let printed = top_coefficient(&so3_phi(PhiReading::Printed), &sys.theta);
    let mut report = VerifyReport::new("so3-check").param("samples", samples).param("seed", seed);

    report.assert_claim(
        "so3.jacobian",
        "the Jacobian of (½f_{1,1}, f_{1,2}, …, ½f_{3,3}) equals the displayed 6×9 matrix",
        json!(sys.jacobian == reference_jacobian_so3()),
        json!(true),
        Provenance::Published,
        sys.jacobian == reference_jacobian_so3(),
    );
    let from_minors = sys.theta_from_minors()?;
    report.assert_claim(
        "so3.theta-minors",
        "Θ₃ from 2³ × maximal minors agrees with the wedge expansion",
        json!(from_minors == sys.theta),
        json!(true),
        Provenance::Derived,
        from_minors == sys.theta,
    );

    let points = sample_group_points(Group::So(3), seed, samples)?;
    let mut evaluations = Vec::with_capacity(points.len());
    let mut on_variety = true;
    let mut invariant = true;
    let at_identity = phi.eval_matrix(&RatMatrix::identity(3))?;
    let transported = covector_transport(&symbolic_matrix(3), Side::Left, &at_identity)?;
    for a in points {
        for f in sys.f.values() {
            on_variety &= f.eval_matrix(&a)?.is_zero();
        }
        let diff = (&phi - &transported).eval_matrix(&a)?;
        invariant &= diff.wedge(&sys.theta.eval_matrix(&a)?).is_zero();
        let v = coefficient.eval_matrix(&a)?;
        evaluations.push((a, v));
    }
    report.assert_claim(
        "so3.samples-on-variety",
        "every f_{k,l} vanishes at the sampled points",
        json!(on_variety),
        json!(true),
        Provenance::Trivial,
        on_variety,
    );
    report.assert_claim(
        "so3.left-invariant",
        "(φ(a) - l_a φ(e)) ∧ Θ₃ = 0 at the sampled points",
        json!(invariant),
        json!(true),
        Provenance::Published,
        invariant,
    );

    let values: Vec<Rat> = evaluations.iter().map(|(_, v)| v.clone()).collect();
    let constant = values.windows(2).all(|w| w[0] == w[1]);
    let nonzero = values.iter().all(|v| !v.is_zero());
    report.assert_claim(
        "so3.contact",
        "φ∧dφ∧Θ₃ ≠ 0 at every sample, so φ induces a contact form on SO(3)",
        json!(values.iter().map(rat_json).collect::<Vec<_>>()),
        json!("nonzero"),
        Provenance::Published,
        nonzero && !values.is_empty(),
    );
    let expected_plain = rat(8);
    report.assert_claim(
        "so3.value",
        "P = 8 on SO(3) with Θ₃ = ∧ df_{k,l} (P = 1 with the halved diagonal rows)",
        values.first().map_or(json!(null), rat_json),
        rat_json(&expected_plain),
        Provenance::Derived,
        constant && values.first() == Some(&expected_plain),
    );
    let minus_one = -Rat::one();
    let half_scaled: Vec<Rat> = values.iter().map(|v| v / rat(8)).collect();
    report.report_claim(
        "so3.published-value",
        "φ∧dφ∧Θ₃ = -ΔV, i.e. P = -1 on SO(3)",
        json!({
            "plain": values.first().map_or(json!(null), rat_json),
            "halved": half_scaled.first().map_or(json!(null), rat_json),
        }),
        rat_json(&minus_one),
        Provenance::Published,
        Some(values.iter().all(|v| *v == minus_one) || half_scaled.iter().all(|v| *v == minus_one)),
    );
    let printed_values: Vec<Rat> =
        evaluations.iter().map(|(a, _)| printed.eval_matrix(a)).collect::<Result<_>>()?;
    report.report_claim(
        "so3.printed-reading",
        "P for the printed form a_{1,1}da_{1,2} + a_{2,1}da_{1,2} + a_{3,1}da_{3,2}",
        json!(printed_values.iter().take(5).map(rat_json).collect::<Vec<_>>()),
        json!(null),
        Provenance::Derived,
        None,
    );
    let off = Matrix::from_rows(vec![
        vec![rat(2), rat(0), rat(0)],
        vec![rat(0), rat(1), rat(0)],
        vec![rat(0), rat(0), ratio(1, 2)],
    ])?;
    report.report_claim(
        "so3.off-variety",
        "P at diag(2, 1, 1/2), outside SO(3)",
        rat_json(&coefficient.eval_matrix(&off)?),
        json!(null),
        Provenance::Trivial,
        None,
    );
    report.report_claim("so3.coefficient", "P as a polynomial", poly_json(&coefficient), json!(null), Provenance::Derived, None);
    Ok(InducedFormReport { phi, top_form, coefficient, evaluations, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraints_for_n2() {
        let s = so_constraint_system(2).unwrap();
        let a = |i, j| Poly::entry(2, i, j);
        let expected = &(&(&a(1, 1) * &a(1, 1)) + &(&a(2, 1) * &a(2, 1))) - &Poly::one(2);
        assert_eq!(s.f[&(1, 1)], expected);
        assert_eq!(s.f.len(), 3);
    }

    #[test]
    fn so3_shapes() {
        let s = so_constraint_system(3).unwrap();
        assert_eq!(s.theta.degree(), 6);
        assert_eq!(s.jacobian, reference_jacobian_so3());
        assert_eq!(s.theta_from_minors().unwrap(), s.theta);
        let row: Vec<Poly> = s.jacobian.row(0).to_vec();
        assert_eq!(row[0], Poly::entry(3, 1, 1));
        assert_eq!(row[3], Poly::entry(3, 2, 1));
        assert!(row[1].is_zero());
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(9, 6).len(), 84);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
