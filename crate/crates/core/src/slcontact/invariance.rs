use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exterior::{covector_transport, Side};
use crate::linalg::{symplectic_j, RatMatrix};
use crate::polyring::{symbolic_matrix, Poly, VarId};
use crate::report::{poly_json, Provenance, VerifyReport};

use super::{cofactors, omega_form, sample_group_points, Group};

/// Coefficients of `ω(a) - τ_a(ω(e))`, where `τ_a` transports covectors from
/// the identity by the left or right translation. They vanish exactly on the
/// points where `ω` agrees with its translate.
pub fn locus_equations(p: usize, side: Side) -> Result<Vec<(VarId, Poly)>> {
    let n = 2 * p;
    let omega = omega_form(p);
    let at_identity = omega.eval_matrix(&RatMatrix::identity(n))?;
    let moved = covector_transport(&symbolic_matrix(n), side, &at_identity)?;
    let diff = &omega - &moved;
    Ok((0..n * n)
        .map(|k| {
            let v = VarId::from_index(k, n);
            (v, diff.coefficient_of(v))
        })
        .collect())
}

fn holds_at(eqs: &[(VarId, Poly)], a: &RatMatrix) -> Result<bool> {
    for (_, e) in eqs {
        if !e.eval_matrix(a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Count of points where the equations hold, and where they fail.
fn tally(eqs: &[(VarId, Poly)], points: &[RatMatrix]) -> Result<(usize, usize)> {
    let mut hold = 0;
    for a in points {
        if holds_at(eqs, a)? {
            hold += 1;
        }
    }
    Ok((hold, points.len() - hold))
}

pub fn invariance_loci(p: usize, samples: usize, seed: u64) -> Result<VerifyReport> {
    if !(1..=3).contains(&p) {
        return Err(Error::Parameter(format!("invariance loci are computed for p in 1..=3, got {p}")));
    }
    let n = 2 * p;
    let mut report = VerifyReport::new("invariance").param("p", p).param("samples", samples).param("seed", seed);

    let left = locus_equations(p, Side::Left)?;
    let cof = cofactors(n);
    let targets: Vec<Poly> = (0..n * n)
        .map(|k| {
            let w = VarId::from_index(k, n);
            let (i, j) = (w.row as usize, w.col as usize);
            &Poly::entry(n, i, j) - &cof[&(i, j)]
        })
        .collect();
    let same = |e: &Poly, t: &Poly| e == t || *e == -t;
    let shape_ok = left.iter().all(|(_, e)| targets.iter().any(|t| same(e, t)))
        && targets.iter().all(|t| left.iter().any(|(_, e)| same(e, t)));
    report.assert_claim(
        "left.equations",
        "left locus equations are ±(a_{i,j} - (-1)^{i+j} A_{i,j})",
        json!(left.iter().map(|(_, e)| poly_json(e)).collect::<Vec<_>>()),
        json!("a = cofactor matrix, i.e. aᵀa = Id on SL(2p)"),
        Provenance::Derived,
        shape_ok,
    );

    let so_points = sample_group_points(Group::So(n), seed, samples)?;
    let (hold, fail) = tally(&left, &so_points)?;
    report.assert_claim(
        "left.so-points",
        "ω is invariant under left translation by SO(2p)",
        json!({ "hold": hold, "fail": fail }),
        json!({ "hold": samples, "fail": 0 }),
        Provenance::Published,
        fail == 0,
    );

    let id = RatMatrix::identity(n);
    let sl_points = sample_group_points(Group::Sl(n), seed.wrapping_add(1), samples)?;
    let non_orthogonal: Vec<_> = sl_points
        .into_iter()
        .filter(|a| a.transpose().mul(a).map(|m| m != id).unwrap_or(true))
        .collect();
    let (hold, fail) = tally(&left, &non_orthogonal)?;
    report.assert_claim(
        "left.maximal",
        "every sampled SL point with aᵀa ≠ Id violates a left equation",
        json!({ "points": non_orthogonal.len(), "hold": hold, "fail": fail }),
        json!({ "hold": 0 }),
        Provenance::Published,
        hold == 0 && !non_orthogonal.is_empty(),
    );

    let right = locus_equations(p, Side::Right)?;
    let h_points = sample_group_points(Group::H(p), seed.wrapping_add(2), samples)?;
    let (hold, fail) = tally(&right, &h_points)?;
    report.assert_claim(
        "right.h-points",
        "ω is invariant under right translation by H",
        json!({ "hold": hold, "fail": fail }),
        json!({ "hold": samples, "fail": 0 }),
        Provenance::Published,
        fail == 0,
    );

    let j = symplectic_j(p);
    let sl_points = sample_group_points(Group::Sl(n), seed.wrapping_add(3), samples)?;
    if p == 1 {
        let (hold, fail) = tally(&right, &sl_points)?;
        report.assert_claim(
            "right.sl2",
            "for p = 1 the right locus is all of SL(2) (H = SL(2))",
            json!({ "hold": hold, "fail": fail }),
            json!({ "hold": samples, "fail": 0 }),
            Provenance::Published,
            fail == 0,
        );
    } else {
        let outside: Vec<_> = sl_points
            .into_iter()
            .filter(|a| a.transpose().mul(&j).and_then(|m| m.mul(a)).map(|m| m != j).unwrap_or(true))
            .collect();
        let (hold, fail) = tally(&right, &outside)?;
        report.assert_claim(
            "right.maximal",
            "every sampled SL point with aᵀJa ≠ J violates a right equation",
            json!({ "points": outside.len(), "hold": hold, "fail": fail }),
            json!({ "hold": 0 }),
            Provenance::Published,
            hold == 0 && !outside.is_empty(),
        );
    }
    Ok(report)
}
