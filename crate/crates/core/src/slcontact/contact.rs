use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::Result;
use crate::exterior::Form;
use crate::polyring::Poly;
use crate::report::{form_json, poly_json, rat_json, Provenance, VerifyReport};
use crate::Rat;

use super::omega_form;

#[derive(Clone, Debug)]
pub struct ContactReport {
    pub p: usize,
    /// `T = ω ∧ (dω)^{2p²-1} ∧ dΔ`.
    pub top_form: Form,
    /// `T / (Δ V)`, when the division is exact.
    pub quotient: Option<Poly>,
    /// The scalar `C` with `T = C Δ V`.
    pub c: Option<Rat>,
    /// `-2^{2p²+p-1}`.
    pub published_constant: Rat,
    /// `K` with `(dω)^{2p²} = K V`.
    pub power_volume: Rat,
    pub contact: bool,
    pub notes: Vec<String>,
}

impl ContactReport {
    /// `C` equals the published constant when `Θ` is the coordinate volume.
    pub fn matches_volume_reading(&self) -> bool {
        self.c.as_ref() == Some(&self.published_constant)
    }

    /// `C` equals the published constant times `K` when `Θ = (dω)^{2p²}`.
    pub fn matches_power_reading(&self) -> bool {
        self.c.as_ref() == Some(&(&self.published_constant * &self.power_volume))
    }

    pub fn to_report(&self) -> VerifyReport {
        let mut r = VerifyReport::new("verify-contact").param("p", self.p);
        let c = self.c.as_ref().map_or(json!(null), rat_json);
        r.assert_claim(
            "contact-identity.divisible",
            "ω∧(dω)^(2p²-1)∧dΔ is Δ times a constant multiple of V",
            match &self.quotient {
                Some(q) => poly_json(q),
                None => form_json(&self.top_form),
            },
            json!("nonzero constant"),
            Provenance::Derived,
            self.c.is_some(),
        );
        r.assert_claim(
            "contact-identity.contact",
            "ω induces a contact form on SL(2p)",
            json!(self.contact),
            json!(true),
            Provenance::Published,
            self.contact,
        );
        let closed_form = predicted_constant(self.p);
        r.assert_claim(
            "contact-identity.constant",
            "C = -2^(2p²) (2p²-1)! p",
            c.clone(),
            rat_json(&closed_form),
            Provenance::Derived,
            self.c.as_ref() == Some(&closed_form),
        );
        r.report_claim(
            "contact-identity.theta-volume",
            "published constant -2^(2p²+p-1), reading Θ as the coordinate volume",
            c.clone(),
            rat_json(&self.published_constant),
            Provenance::Published,
            Some(self.matches_volume_reading()),
        );
        r.report_claim(
            "contact-identity.theta-power",
            "published constant -2^(2p²+p-1), reading Θ as (dω)^(2p²)",
            c,
            rat_json(&(&self.published_constant * &self.power_volume)),
            Provenance::Published,
            Some(self.matches_power_reading()),
        );
        r.report_claim(
            "contact-identity.power-volume",
            "(dω)^(2p²) = K V",
            rat_json(&self.power_volume),
            json!(null),
            Provenance::Derived,
            None,
        );
        r
    }
}

fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc * k)
}

/// Closed form of `C` from expanding by hand. With `σ_q = da_{i,2j-1}∧da_{i,2j}`
/// over the `m = 2p²` pairs, `dω = -2 Σ σ_q` and
/// `(dω)^{m-1} = (-2)^{m-1} (m-1)! Σ_q Π_{q'≠q} σ_{q'}`, while the `σ_q`
/// components of `ω∧dΔ` add up to `2pΔ`. Hence `C = -2^m (m-1)! p`.
pub fn predicted_constant(p: usize) -> Rat {
    let m = 2 * p * p;
    let v = (BigInt::one() << m) * factorial(m - 1) * p;
    Rat::from_integer(-v)
}

pub fn verify_contact_identity(p: usize, max_terms: usize) -> Result<ContactReport> {
    if p == 0 {
        return Err(crate::Error::Parameter("p must be positive".into()));
    }
    let n = 2 * p;
    let m = 2 * p * p;
    let omega = omega_form(p);
    let d_omega = omega.ext_d();
    let delta = crate::polyring::poly_det(&crate::polyring::symbolic_matrix(n));
    let d_delta = Form::scalar(delta.clone()).ext_d();

    let power = d_omega.wedge_power_checked(m - 1, max_terms)?;
    let top_form = omega.wedge_checked(&power, max_terms)?.wedge_checked(&d_delta, max_terms)?;
    let full_power = power.wedge_checked(&d_omega, max_terms)?;
    let power_volume = full_power
        .top_coefficient()
        .and_then(|c| c.constant_value())
        .expect("(dω)^(2p²) has a constant top coefficient");

    let mut notes = Vec::new();
    let coefficient = top_form.top_coefficient().expect("top degree");
    let quotient = coefficient.exact_div(&delta)?;
    let c = match &quotient {
        Some(q) => match q.constant_value() {
            Some(c) if !c.is_zero() => Some(c),
            Some(_) => {
                notes.push("quotient by Δ is zero".into());
                None
            }
            None => {
                notes.push("quotient by Δ is not constant".into());
                None
            }
        },
        None => {
            notes.push("top coefficient is not divisible by Δ".into());
            None
        }
    };
    let published_constant = Rat::from_integer(-(BigInt::one() << (m + p - 1)));
    Ok(ContactReport {
        p,
        contact: c.is_some(),
        top_form,
        quotient,
        c,
        published_constant,
        power_volume,
        notes,
    })
}
