use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exterior::{interior_product, VField};
use crate::linalg::rat;
use crate::polyring::{Poly, VarId};
use crate::report::{form_json, poly_json, rat_json, Provenance, VerifyReport};
use crate::Rat;

use super::{build_frame, cofactors};

/// The published Reeb candidate `R = S / (4Δ)`, kept as the polynomial
/// field `S` over the denominator `4Δ`.
#[derive(Clone, Debug)]
pub struct ReebResult {
    pub p: usize,
    /// `S = Σ_i Σ_j (-1)^{i+1} (A_{i,2j} ∂_{i,2j-1} + A_{i,2j-1} ∂_{i,2j})`.
    pub numerator: VField,
    pub denominator: Poly,
    /// `ω(R)`, a constant.
    pub pairing: Rat,
    /// `λ` with `ω(λR) = 1`.
    pub lambda: Rat,
    /// Numerator of the normalized field `λR` over the same denominator.
    pub normalized_numerator: VField,
    pub report: VerifyReport,
}

pub fn reeb_field(p: usize) -> Result<ReebResult> {
    if p == 0 {
        return Err(Error::Parameter("p must be positive".into()));
    }
    let frame = build_frame(p);
    let n = 2 * p;
    let cof = cofactors(n);
    let mut s = VField::zero(n);
    for i in 1..=n {
        // (-1)^{i+1} A_{i,c} = (-1)^{c+1} × signed cofactor
        let minor = |c: usize| {
            let signed = &cof[&(i, c)];
            if (i + c) % 2 == 0 { signed.clone() } else { -signed }
        };
        let sign = if i % 2 == 1 { rat(1) } else { rat(-1) };
        for j in 1..=p {
            s.add_component(VarId::new(i, 2 * j - 1), minor(2 * j).scale(&sign));
            s.add_component(VarId::new(i, 2 * j), minor(2 * j - 1).scale(&sign));
        }
    }
    let delta = &frame.delta;
    let denominator = delta.scale(&rat(4));
    let mut report = VerifyReport::new("reeb").param("p", p);

    // ω(S) = 4Δ ω(R)
    let omega_s = frame.omega.pair(&s)?;
    let pairing = omega_s
        .exact_div(&denominator)?
        .and_then(|q| q.constant_value());
    let expected_pairing = Rat::new((-(p as i64)).into(), 2.into());
    report.assert_claim(
        "reeb.pairing-value",
        "Δ·ω(R) = -(p/2)Δ, so ω(R) = -p/2",
        pairing.as_ref().map_or_else(|| poly_json(&omega_s), rat_json),
        rat_json(&expected_pairing),
        Provenance::Derived,
        pairing.as_ref() == Some(&expected_pairing),
    );
    let Some(pairing) = pairing else {
        return Err(Error::Parameter("ω(R) is not constant, cannot normalize".into()));
    };
    if pairing.is_zero() {
        return Err(Error::Parameter("ω(R) vanishes identically, cannot normalize".into()));
    }
    report.report_claim(
        "reeb.normalization",
        "the published field satisfies ω(R) = 1",
        rat_json(&pairing),
        json!("1"),
        Provenance::Published,
        Some(pairing == rat(1)),
    );

    // 2Δ·i(R)dω = i(S)dω / 2
    let d_omega = frame.omega.ext_d();
    let contracted = interior_product(&s, &d_omega)?;
    let discrepancy = &contracted.scale(&Rat::new(1.into(), 2.into())) - &frame.d_delta;
    report.assert_claim(
        "reeb.contraction",
        "2Δ·i(R)dω - dΔ = 0",
        form_json(&discrepancy),
        json!([]),
        Provenance::Derived,
        discrepancy.is_zero(),
    );

    let lambda = pairing.recip();
    let normalized_numerator = s.scale(&lambda);
    let normalized_pairing = frame.omega.pair(&normalized_numerator)?;
    let unit_ok = (&normalized_pairing - &denominator).is_zero();
    report.assert_claim(
        "reeb.normalized-pairing",
        "ω(λR) = 1 with λ = -2/p",
        poly_json(&normalized_pairing),
        poly_json(&denominator),
        Provenance::Derived,
        unit_ok && lambda == Rat::new((-2).into(), (p as i64).into()),
    );
    let kernel = interior_product(&normalized_numerator, &d_omega)?.wedge(&frame.d_delta);
    report.assert_claim(
        "reeb.normalized-kernel",
        "i(λR)dω ∧ dΔ = 0, so i(λR)dω vanishes on SL(2p)",
        form_json(&kernel),
        json!([]),
        Provenance::Derived,
        kernel.is_zero(),
    );
    Ok(ReebResult { p, numerator: s, denominator, pairing, lambda, normalized_numerator, report })
}
