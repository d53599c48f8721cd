use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::{lie_derivative, vf_bracket, Form};
use crate::polyring::Poly;
use crate::report::{form_json, poly_json, Provenance, VerifyReport};

use super::{build_frame, FrameIndex, SLFrame};

fn check_p(p: usize) -> Result<()> {
    if (1..=2).contains(&p) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("this suite is exact for p in 1..=2, got {p}")))
    }
}

fn label((k, l): FrameIndex) -> String {
    format!("{k},{l}")
}

fn delta_minus_one(frame: &SLFrame) -> Poly {
    &frame.delta - &Poly::one(frame.n())
}

/// Brackets `[X, Y]`, Lie derivatives `L_Y α` and the pairing `α(X)`.
pub fn structural_checks(p: usize) -> Result<VerifyReport> {
    check_p(p)?;
    let frame = build_frame(p);
    let ideal = delta_minus_one(&frame);
    let idx = frame.indices();
    let mut report = VerifyReport::new("structural").param("p", p);

    let mut nonzero_brackets = Vec::new();
    for a in &idx {
        for b in &idx {
            if !vf_bracket(&frame.x[a], &frame.y[b]).is_zero() {
                nonzero_brackets.push(json!([label(*a), label(*b)]));
            }
        }
    }
    let pairs = idx.len() * idx.len();
    report.assert_claim(
        "structural.brackets",
        "[X_{i,j}, Y_{k,l}] = 0 for all index pairs",
        json!({ "pairs": pairs, "nonzero": nonzero_brackets }),
        json!({ "nonzero": [] }),
        Provenance::Published,
        nonzero_brackets.is_empty(),
    );

    let mut nonzero_lie = Vec::new();
    let mut exactly_zero = true;
    for b in &idx {
        for a in &idx {
            let l = lie_derivative(&frame.y[b], &frame.alpha[a]);
            if !l.is_zero() {
                exactly_zero = false;
            }
            if !l.reduce_mod(&ideal)?.is_zero() {
                nonzero_lie.push(json!([label(*b), label(*a)]));
            }
        }
    }
    report.assert_claim(
        "structural.lie-derivatives",
        "L_{Y_{k,l}} α_{i,j} ≡ 0 mod (Δ-1)",
        json!({ "pairs": pairs, "nonzero": nonzero_lie, "exactly_zero": exactly_zero }),
        json!({ "nonzero": [] }),
        Provenance::Published,
        nonzero_lie.is_empty(),
    );

    // pattern[α index][X index]
    let mut pattern: Vec<Vec<Value>> = Vec::new();
    let mut unit_entries = true;
    let mut identity = true;
    for a in &idx {
        let mut row = Vec::new();
        for b in &idx {
            let v = frame.alpha[a].pair(&frame.x[b])?.reduce_mod(&ideal)?;
            match v.constant_value() {
                Some(c) => {
                    let ok = c.is_zero() || c.is_one() || (-&c).is_one();
                    unit_entries &= ok;
                    identity &= if a == b { c.is_one() } else { c.is_zero() };
                    row.push(json!(c.to_string()));
                }
                None => {
                    unit_entries = false;
                    identity = false;
                    row.push(poly_json(&v));
                }
            }
        }
        pattern.push(row);
    }
    report.assert_claim(
        "structural.duality-units",
        "every pairing α_{k,l}(X_{m,n}) mod (Δ-1) lies in {0, ±1}",
        json!({ "order": idx.iter().map(|i| label(*i)).collect::<Vec<_>>(), "pattern": pattern }),
        json!("entries in {0, 1, -1}"),
        Provenance::Derived,
        unit_entries,
    );
    report.assert_claim(
        "structural.duality-identity",
        "α_{k,l}(X_{m,n}) ≡ δ_{(k,l),(m,n)} mod (Δ-1)",
        json!(identity),
        json!(true),
        Provenance::Derived,
        identity,
    );
    Ok(report)
}

/// `⟨C_i, C_j⟩ = Σ_r a_{r,i} a_{r,j}`.
fn column_product(n: usize, i: usize, j: usize) -> Poly {
    let mut s = Poly::zero(n);
    for r in 1..=n {
        s = &s + &(&Poly::entry(n, r, i) * &Poly::entry(n, r, j));
    }
    s
}

/// The published inner-product table for `u_{k,l}`, or `None` for indices it
/// does not cover.
pub fn u_table_entry(p: usize, k: usize, l: usize) -> Option<Poly> {
    let n = 2 * p;
    let ip = |i, j| column_product(n, i, j);
    let last = ip(n - 1, n);
    if k == l {
        return Some(if k % 2 == 1 { &ip(k, k + 1) + &last } else { &last - &ip(k - 1, k) });
    }
    let even = l % 2 == 0;
    if k < l || (even && k > l) || (!even && k > l + 1) {
        Some(if even { -ip(k, l - 1) } else { ip(k, l + 1) })
    } else {
        None
    }
}

/// `u_{i,j} = ω(X_{i,j})` and the decomposition of `ω` in the frame `α`.
pub fn u_decomposition(p: usize) -> Result<VerifyReport> {
    check_p(p)?;
    let frame = build_frame(p);
    let n = frame.n();
    let ideal = delta_minus_one(&frame);
    let idx = frame.indices();
    let mut report = VerifyReport::new("u-decomp").param("p", p);

    let mut u = BTreeMap::new();
    for i in &idx {
        u.insert(*i, frame.omega.pair(&frame.x[i])?);
    }

    if p == 1 {
        let ip = |i, j| column_product(2, i, j);
        let published = [
            ((1, 1), ip(1, 2).scale(&crate::linalg::rat(2)), "u_{1,1} = 2⟨C_1,C_2⟩"),
            ((1, 2), -ip(1, 1), "u_{1,2} = -⟨C_1,C_1⟩"),
            ((2, 1), ip(2, 2), "u_{2,1} = ⟨C_2,C_2⟩"),
        ];
        for (i, expected, statement) in published {
            report.assert_claim(
                &format!("u.formula.{}", label(i)),
                statement,
                poly_json(&u[&i]),
                poly_json(&expected),
                Provenance::Published,
                u[&i] == expected,
            );
        }
    }

    let mut mismatches = Vec::new();
    let mut uncovered = Vec::new();
    for i in &idx {
        match u_table_entry(p, i.0, i.1) {
            Some(t) if t == u[i] => {}
            Some(t) => mismatches.push(json!({ "index": label(*i), "table": poly_json(&t), "computed": poly_json(&u[i]) })),
            None => uncovered.push(json!({ "index": label(*i), "computed": poly_json(&u[i]) })),
        }
    }
    report.report_claim(
        "u.table",
        "general inner-product table for u_{k,l}",
        json!({ "mismatches": mismatches, "uncovered": uncovered }),
        json!({ "mismatches": [] }),
        Provenance::Published,
        Some(mismatches.is_empty()),
    );

    let mut sum = Form::zero(n, 1);
    for i in &idx {
        sum = &sum + &frame.alpha[i].mul_poly(&u[i]);
    }
    let diff = &sum - &frame.omega;

    // restriction to SL(2p): the frame X spans every tangent space
    let mut off = Vec::new();
    for i in &idx {
        let v = diff.pair(&frame.x[i])?.reduce_mod(&ideal)?;
        if !v.is_zero() {
            off.push(json!({ "index": label(*i), "value": poly_json(&v) }));
        }
    }
    report.assert_claim(
        "u.reconstruction",
        "Σ u_{i,j} α_{i,j} ≡ ω on SL(2p), tested against every X_{m,n} mod (Δ-1)",
        json!(off),
        json!([]),
        Provenance::Published,
        off.is_empty(),
    );

    // ambient form of the same identity, with the normal component w = ω(Σ_i a_{i,n} ∂_{i,n})
    let w = normal_component(&frame)?;
    let ambient = &(&frame.omega.mul_poly(&frame.delta) - &sum) - &frame.d_delta.mul_poly(&w);
    report.assert_claim(
        "u.ambient-identity",
        "Δ·ω = Σ u_{i,j} α_{i,j} + ω(E_n) dΔ, E_n = Σ_i a_{i,2p} ∂_{i,2p}",
        form_json(&ambient),
        json!([]),
        Provenance::Derived,
        ambient.is_zero(),
    );
    let coefficientwise = diff.reduce_mod(&ideal)?;
    report.report_claim(
        "u.coefficientwise",
        "Σ u_{i,j} α_{i,j} - ω reduced coefficient by coefficient mod (Δ-1); any remainder is a multiple of dΔ",
        form_json(&coefficientwise),
        json!([]),
        Provenance::Derived,
        Some(coefficientwise.is_zero()),
    );
    Ok(report)
}

/// `ω(Σ_i a_{i,n} ∂_{i,n}) = -⟨C_{n-1}, C_n⟩`.
fn normal_component(frame: &SLFrame) -> Result<Poly> {
    let n = frame.n();
    let e = crate::exterior::VField::from_components(
        n,
        (1..=n).map(|i| (crate::polyring::VarId::new(i, n), Poly::entry(n, i, n))),
    );
    frame.omega.pair(&e)
}
