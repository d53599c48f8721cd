//! Floating point Cartan class of 1-forms given by coefficient functions on a
//! chart, with analytic partial derivatives supplied by the constructor.

use std::f64::consts::TAU;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::extalg::ConstForm;
use crate::liealg::{class_from_pointwise, sample_rng};
use crate::linalg::{Matrix, RatMatrix};
use crate::polyring::VarId;
use crate::report::{Provenance, VerifyReport};
use crate::Rat;

pub const DEFAULT_TOL: f64 = 1e-9;

type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// `α = Σ_i coeff_i(x) dx_i` with `partial[i][j] = ∂coeff_i/∂x_j`.
#[derive(Clone)]
pub struct FormFn {
    pub name: String,
    dim: usize,
    coeff: Vec<ScalarFn>,
    partial: Vec<Vec<ScalarFn>>,
}

impl std::fmt::Debug for FormFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FormFn({}, dim {})", self.name, self.dim)
    }
}

fn zero_fn() -> ScalarFn {
    Arc::new(|_| 0.0)
}

impl FormFn {
    pub fn new(name: &str, coeff: Vec<ScalarFn>, partial: Vec<Vec<ScalarFn>>) -> Result<Self> {
        let dim = coeff.len();
        if dim > 9 {
            return Err(Error::Dimension(format!("charts of dimension {dim} exceed the supported 9")));
        }
        if partial.len() != dim || partial.iter().any(|row| row.len() != dim) {
            return Err(Error::Dimension("partials must form a dim × dim table".into()));
        }
        Ok(FormFn { name: name.to_string(), dim, coeff, partial })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, i: usize, x: &[f64]) -> f64 {
        (self.coeff[i])(x)
    }

    pub fn partial(&self, i: usize, j: usize, x: &[f64]) -> f64 {
        (self.partial[i][j])(x)
    }

    /// The zero form.
    pub fn zero(dim: usize) -> Self {
        FormFn::new("zero", vec![zero_fn(); dim], vec![vec![zero_fn(); dim]; dim]).expect("square table")
    }

    /// `dx_k` on a chart of dimension `dim`.
    pub fn coordinate(dim: usize, k: usize) -> Self {
        let mut coeff = vec![zero_fn(); dim];
        coeff[k] = Arc::new(|_| 1.0);
        FormFn::new(&format!("dtheta{}", k + 1), coeff, vec![vec![zero_fn(); dim]; dim]).expect("square table")
    }

    /// `cos(n₁θ₁) dθ₂ + sin(n₁θ₁) dθ₃` on the 3-torus.
    pub fn t3(n1: i64) -> Self {
        let k = n1 as f64;
        let mut coeff = vec![zero_fn(); 3];
        let mut partial = vec![vec![zero_fn(); 3]; 3];
        coeff[1] = Arc::new(move |x| (k * x[0]).cos());
        coeff[2] = Arc::new(move |x| (k * x[0]).sin());
        partial[1][0] = Arc::new(move |x| -k * (k * x[0]).sin());
        partial[2][0] = Arc::new(move |x| k * (k * x[0]).cos());
        FormFn::new(&format!("t3(n1={n1})"), coeff, partial).expect("square table")
    }

    /// The contact form on the 5-torus built from the Lutz construction:
    /// `sinθ₂cosθ₂ dθ₁ - sinθ₁cosθ₁ dθ₂ + cosθ₁cosθ₂ dθ₃
    ///  + (sinθ₁cosθ₃ - sinθ₂sinθ₃) dθ₄ + (sinθ₁sinθ₃ + sinθ₂cosθ₃) dθ₅`.
    pub fn t5_lutz() -> Self {
        let (s, c) = (f64::sin, f64::cos);
        let mut coeff = vec![zero_fn(); 5];
        let mut partial = vec![vec![zero_fn(); 5]; 5];
        coeff[0] = Arc::new(move |x| s(x[1]) * c(x[1]));
        partial[0][1] = Arc::new(move |x| c(2.0 * x[1]));
        coeff[1] = Arc::new(move |x| -s(x[0]) * c(x[0]));
        partial[1][0] = Arc::new(move |x| -c(2.0 * x[0]));
        coeff[2] = Arc::new(move |x| c(x[0]) * c(x[1]));
        partial[2][0] = Arc::new(move |x| -s(x[0]) * c(x[1]));
        partial[2][1] = Arc::new(move |x| -c(x[0]) * s(x[1]));
        coeff[3] = Arc::new(move |x| s(x[0]) * c(x[2]) - s(x[1]) * s(x[2]));
        partial[3][0] = Arc::new(move |x| c(x[0]) * c(x[2]));
        partial[3][1] = Arc::new(move |x| -c(x[1]) * s(x[2]));
        partial[3][2] = Arc::new(move |x| -s(x[0]) * s(x[2]) - s(x[1]) * c(x[2]));
        coeff[4] = Arc::new(move |x| s(x[0]) * s(x[2]) + s(x[1]) * c(x[2]));
        partial[4][0] = Arc::new(move |x| c(x[0]) * s(x[2]));
        partial[4][1] = Arc::new(move |x| c(x[1]) * c(x[2]));
        partial[4][2] = Arc::new(move |x| s(x[0]) * c(x[2]) - s(x[1]) * s(x[2]));
        FormFn::new("t5-lutz", coeff, partial).expect("square table")
    }

    /// A polynomial 1-form on `n × n` matrices, chart coordinates in row-major order.
    pub fn from_poly_form(form: &Form) -> Result<Self> {
        if form.degree() != 1 {
            return Err(Error::Degree(format!("expected a 1-form, got degree {}", form.degree())));
        }
        let n = form.ambient();
        let dim = n * n;
        let as_matrix = move |x: &[f64]| Matrix::from_fn(n, n, |i, j| x[i * n + j]);
        let mut coeff: Vec<ScalarFn> = Vec::with_capacity(dim);
        let mut partial: Vec<Vec<ScalarFn>> = Vec::with_capacity(dim);
        for i in 0..dim {
            let p = form.coefficient_of(VarId::from_index(i, n));
            coeff.push(Arc::new({
                let p = p.clone();
                move |x| p.eval_f64(&as_matrix(x))
            }));
            partial.push(
                (0..dim)
                    .map(|j| {
                        let dp = p.derivative(VarId::from_index(j, n));
                        Arc::new(move |x: &[f64]| dp.eval_f64(&as_matrix(x))) as ScalarFn
                    })
                    .collect(),
            );
        }
        FormFn::new("polynomial", coeff, partial)
    }

    /// `α(x)` and `dα(x) = Σ_{j<i} (∂_j c_i - ∂_i c_j) dx_j ∧ dx_i`.
    fn at(&self, x: &[f64]) -> (ConstForm<f64>, ConstForm<f64>) {
        let alpha: Vec<f64> = (0..self.dim).map(|i| self.coeff(i, x)).collect();
        let d = ConstForm::two_form(self.dim, |j, i| self.partial(i, j, x) - self.partial(j, i, x));
        (ConstForm::one_form(&alpha), d)
    }

    /// Largest discrepancy between the supplied partials and central differences.
    pub fn partials_self_test(&self, x: &[f64]) -> f64 {
        let h = 1e-6;
        let mut worst: f64 = 0.0;
        for j in 0..self.dim {
            let mut plus = x.to_vec();
            let mut minus = x.to_vec();
            plus[j] += h;
            minus[j] -= h;
            for i in 0..self.dim {
                let fd = (self.coeff(i, &plus) - self.coeff(i, &minus)) / (2.0 * h);
                worst = worst.max((fd - self.partial(i, j, x)).abs());
            }
        }
        worst
    }
}

fn norm(f: &ConstForm<f64>) -> f64 {
    f.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointClassReport {
    pub point: Vec<f64>,
    pub class: usize,
    /// `‖α ∧ (dα)^p‖` at the largest admissible `p`.
    pub magnitude: f64,
    pub tol: f64,
}

pub fn pointwise_class(f: &FormFn, point: &[f64], tol: f64) -> Result<PointClassReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    if point.len() != f.dim {
        return Err(Error::Dimension(format!("point of length {} on a chart of dimension {}", point.len(), f.dim)));
    }
    let (alpha, d_alpha) = f.at(point);
    let mut power = ConstForm::one(f.dim, 1.0);
    let mut p = 0;
    while 2 * (p + 1) <= f.dim {
        let next = power.wedge(&d_alpha);
        if norm(&next) <= tol {
            break;
        }
        power = next;
        p += 1;
    }
    let top = alpha.wedge(&power);
    let magnitude = norm(&top);
    let class = if magnitude > tol { 2 * p + 1 } else { 2 * p };
    Ok(PointClassReport { point: point.to_vec(), class, magnitude, tol })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Points {
    /// `k` evenly spaced values of each coordinate in `[0, 2π)`.
    Grid(usize),
    /// `count` uniform points of `[0, 2π)^dim`.
    Random { count: usize, seed: u64 },
    Explicit(Vec<Vec<f64>>),
}

impl Points {
    pub fn realize(&self, dim: usize) -> Vec<Vec<f64>> {
        match self {
            Points::Grid(k) => {
                let total = k.pow(dim as u32);
                (0..total)
                    .map(|mut idx| {
                        (0..dim)
                            .map(|_| {
                                let v = idx % k;
                                idx /= k;
                                TAU * v as f64 / *k as f64
                            })
                            .collect()
                    })
                    .collect()
            }
            Points::Random { count, seed } => (0..*count as u64)
                .map(|i| {
                    let mut rng = sample_rng(*seed, i);
                    (0..dim).map(|_| rng.gen_range(0.0..TAU)).collect()
                })
                .collect(),
            Points::Explicit(pts) => pts.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub form: String,
    pub points: usize,
    pub tol: f64,
    pub min_class: usize,
    pub max_class: usize,
    /// Smallest `‖α ∧ (dα)^p‖` among points of maximal class.
    pub min_magnitude: f64,
    pub sub_maximal_count: usize,
    /// Up to 20 points whose class is below the maximum.
    pub sub_maximal: Vec<Vec<f64>>,
    pub classes: Vec<usize>,
}

pub fn contact_scan(f: &FormFn, points: &Points, tol: f64) -> Result<ScanReport> {
    let pts = points.realize(f.dim);
    if pts.is_empty() {
        return Err(Error::Parameter("scan needs at least one point".into()));
    }
    let results: Vec<PointClassReport> = pts.par_iter().map(|x| pointwise_class(f, x, tol)).collect::<Result<_>>()?;
    let classes: Vec<usize> = results.iter().map(|r| r.class).collect();
    let max_class = *classes.iter().max().expect("nonempty");
    let min_class = *classes.iter().min().expect("nonempty");
    let min_magnitude =
        results.iter().filter(|r| r.class == max_class).map(|r| r.magnitude).fold(f64::INFINITY, f64::min);
    let below: Vec<&PointClassReport> = results.iter().filter(|r| r.class < max_class).collect();
    Ok(ScanReport {
        form: f.name.clone(),
        points: pts.len(),
        tol,
        min_class,
        max_class,
        min_magnitude,
        sub_maximal_count: below.len(),
        sub_maximal: below.iter().take(20).map(|r| r.point.clone()).collect(),
        classes,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularReport {
    pub form: String,
    /// Chart axes spanning `J`, 0-based.
    pub j_axes: Vec<usize>,
    pub points: usize,
    pub tol: f64,
    /// Largest change of any coefficient or partial under shifts along `J`.
    pub max_invariance_diff: f64,
    /// Points where `φ = (α(∂_j))_{j∈J}` is below `tol`.
    pub sigma_count: usize,
    pub min_rank_on_sigma: Option<usize>,
    pub min_rank_off_sigma: Option<usize>,
}

/// Numerical rank by Gaussian elimination with partial pivoting.
fn numeric_rank(mut rows: Vec<Vec<f64>>, tol: f64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).max_by(|&a, &b| rows[a][c].abs().total_cmp(&rows[b][c].abs())) else {
            break;
        };
        if rows[pivot][c].abs() <= tol {
            continue;
        }
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            let factor = rows[r][c] / rows[rank][c];
            for k in c..cols {
                rows[r][k] -= factor * rows[rank][k];
            }
        }
        rank += 1;
    }
    rank
}

pub fn singular_scan(f: &FormFn, j_axes: &[usize], points: &Points, tol: f64, seed: u64) -> Result<SingularReport> {
    if j_axes.iter().any(|&j| j >= f.dim) {
        return Err(Error::Dimension("J direction outside the chart".into()));
    }
    let pts = points.realize(f.dim);
    let per_point: Vec<(f64, bool, usize)> = pts
        .par_iter()
        .enumerate()
        .map(|(idx, x)| {
            let mut rng = sample_rng(seed, idx as u64);
            let mut shifted = x.clone();
            for &j in j_axes {
                shifted[j] += rng.gen_range(0.0..TAU);
            }
            let mut diff: f64 = 0.0;
            for i in 0..f.dim {
                diff = diff.max((f.coeff(i, x) - f.coeff(i, &shifted)).abs());
                for k in 0..f.dim {
                    diff = diff.max((f.partial(i, k, x) - f.partial(i, k, &shifted)).abs());
                }
            }
            let phi_norm = j_axes.iter().map(|&j| f.coeff(j, x).abs()).fold(0.0, f64::max);
            let jac: Vec<Vec<f64>> = j_axes.iter().map(|&j| (0..f.dim).map(|k| f.partial(j, k, x)).collect()).collect();
            (diff, phi_norm < tol, numeric_rank(jac, tol))
        })
        .collect();
    let max_invariance_diff = per_point.iter().map(|r| r.0).fold(0.0, f64::max);
    let on: Vec<usize> = per_point.iter().filter(|r| r.1).map(|r| r.2).collect();
    let off: Vec<usize> = per_point.iter().filter(|r| !r.1).map(|r| r.2).collect();
    Ok(SingularReport {
        form: f.name.clone(),
        j_axes: j_axes.to_vec(),
        points: pts.len(),
        tol,
        max_invariance_diff,
        sigma_count: on.len(),
        min_rank_on_sigma: on.iter().copied().min(),
        min_rank_off_sigma: off.iter().copied().min(),
    })
}

/// Class verdicts for each tolerance; stable when all rows agree.
pub fn tolerance_stability(f: &FormFn, points: &Points, tols: &[f64]) -> Result<(bool, Vec<ScanReport>)> {
    let scans: Vec<ScanReport> = tols.iter().map(|&t| contact_scan(f, points, t)).collect::<Result<_>>()?;
    let stable = scans.windows(2).all(|w| w[0].classes == w[1].classes);
    Ok((stable, scans))
}

/// The points where `sin θ₁ = sin θ₂ = 0` on the 5-torus (the singular set of
/// the Lutz form), with `θ₃, θ₄, θ₅` spread over `k` values.
pub fn t5_sigma_points(k: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for a in [0.0, std::f64::consts::PI] {
        for b in [0.0, std::f64::consts::PI] {
            for t in 0..k {
                let s = TAU * t as f64 / k as f64;
                out.push(vec![a, b, s, 0.5 * s, 0.25 * s]);
            }
        }
    }
    out
}

/// Contact scan, parity, `J`-invariance, singular set and tolerance
/// stability for a torus form. `j_axes` are the chart axes spanning `J`;
/// `sigma_probes` are optional points known to lie in `Σ`.
pub fn torus_suite(
    f: &FormFn,
    j_axes: &[usize],
    points: &Points,
    sigma_probes: &[Vec<f64>],
    tol: f64,
    seed: u64,
) -> Result<VerifyReport> {
    let scan = contact_scan(f, points, tol)?;
    let params = match points {
        Points::Grid(k) => json!({ "grid": k }),
        Points::Random { count, seed } => json!({ "random": count, "seed": seed }),
        Points::Explicit(p) => json!({ "explicit": p.len() }),
    };
    let mut report = VerifyReport::new("scan").param("form", f.name.as_str()).param("points", params).param("tol", tol);
    let summary = json!({
        "points": scan.points,
        "min_class": scan.min_class,
        "max_class": scan.max_class,
        "min_magnitude": scan.min_magnitude,
        "sub_maximal_count": scan.sub_maximal_count,
        "sub_maximal": scan.sub_maximal,
    });
    report.assert_claim(
        "scan.contact",
        &format!("class {} (contact) at every sampled point", f.dim),
        summary,
        json!({ "min_class": f.dim }),
        Provenance::Published,
        scan.min_class == f.dim,
    );
    let even = scan.classes.iter().filter(|c| *c % 2 == 0).count();
    report.assert_claim(
        "scan.parity",
        "class is odd at every sampled point",
        json!({ "even_points": even }),
        json!({ "even_points": 0 }),
        Provenance::Published,
        even == 0,
    );

    let k = j_axes.len();
    let p = (f.dim - 1) / 2;
    let sing = singular_scan(f, j_axes, points, tol, seed)?;
    report.assert_claim(
        "scan.j-invariance",
        "coefficients and partials do not change along J",
        json!(sing.max_invariance_diff),
        json!({ "below": DEFAULT_TOL }),
        Provenance::Published,
        sing.max_invariance_diff < DEFAULT_TOL,
    );
    let rank_ok = sing.min_rank_off_sigma.map_or(true, |r| r + 1 >= k) && sing.min_rank_on_sigma.map_or(true, |r| r == k);
    report.assert_claim(
        "scan.phi-rank",
        "φ = (ω(Y_i)) has rank ≥ dim J - 1 off Σ and rank dim J on Σ",
        json!({
            "j_axes": sing.j_axes,
            "min_rank_on_sigma": sing.min_rank_on_sigma,
            "min_rank_off_sigma": sing.min_rank_off_sigma,
        }),
        json!({ "off_sigma_at_least": k - 1, "on_sigma": k }),
        Provenance::Published,
        rank_ok,
    );
    if k <= p + 1 {
        report.assert_claim(
            "scan.sigma-sampled",
            "no sampled point lies in Σ (dim J ≤ p + 1)",
            json!({ "sigma_count": sing.sigma_count }),
            json!({ "sigma_count": 0 }),
            Provenance::Published,
            sing.sigma_count == 0,
        );
    }
    if !sigma_probes.is_empty() {
        // points where φ vanishes by construction; the form is still contact there
        let probes = Points::Explicit(sigma_probes.to_vec());
        let on = singular_scan(f, j_axes, &probes, tol, seed)?;
        let cls = contact_scan(f, &probes, tol)?;
        let found = on.sigma_count > 0 && cls.min_class == f.dim;
        report.report_claim(
            "scan.sigma-empty",
            "Σ = ∅ whenever dim J ≤ p + 1",
            json!({
                "probes": on.points,
                "sigma_points": on.sigma_count,
                "min_class_at_probes": cls.min_class,
                "rank_on_sigma": on.min_rank_on_sigma,
            }),
            json!({ "sigma_points": 0 }),
            Provenance::Published,
            Some(!(k <= p + 1 && found)),
        );
    }

    let tols = [1e-6, 1e-9, 1e-12];
    let (stable, scans) = tolerance_stability(f, points, &tols)?;
    report.assert_claim(
        "scan.tolerance-stability",
        "class verdicts agree for tolerances 1e-6, 1e-9 and 1e-12",
        json!(scans.iter().map(|s| json!({ "tol": s.tol, "min_class": s.min_class, "max_class": s.max_class })).collect::<Vec<_>>()),
        json!("identical classes at every point"),
        Provenance::Derived,
        stable,
    );
    Ok(report)
}

/// Exact class of a polynomial 1-form at a rational point, from the value of
/// the form and of its differential there.
pub fn symbolic_pointwise_class(form: &Form, point: &RatMatrix) -> Result<usize> {
    if form.degree() != 1 {
        return Err(Error::Degree(format!("expected a 1-form, got degree {}", form.degree())));
    }
    let n = form.ambient();
    let dim = n * n;
    let alpha: Vec<Rat> =
        (0..dim).map(|i| form.coefficient_of(VarId::from_index(i, n)).eval_matrix(point)).collect::<Result<_>>()?;
    let d = form.ext_d().eval_matrix(point)?;
    let mut b = RatMatrix::zeros(dim, dim);
    for (gens, c) in d.terms() {
        let (i, j) = (gens[0].index(n), gens[1].index(n));
        let v = c.constant_value().expect("evaluated");
        b[(j, i)] = -v.clone();
        b[(i, j)] = v;
    }
    class_from_pointwise(&alpha, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_suites_pass() {
        let pts = Points::Random { count: 200, seed: 5 };
        let r = torus_suite(&FormFn::t3(1), &[1, 2], &pts, &[], DEFAULT_TOL, 5).unwrap();
        assert!(r.passed(), "{}", r.summary());
        let r = torus_suite(&FormFn::t5_lutz(), &[3, 4], &pts, &t5_sigma_points(4), DEFAULT_TOL, 5).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.claim("scan.sigma-empty").unwrap().matches, Some(false));
    }

    #[test]
    fn classes_of_builtins() {
        assert_eq!(pointwise_class(&FormFn::t3(1), &[0.3, 0.1, 0.2], DEFAULT_TOL).unwrap().class, 3);
        assert_eq!(pointwise_class(&FormFn::zero(4), &[0.0; 4], DEFAULT_TOL).unwrap().class, 0);
        assert_eq!(pointwise_class(&FormFn::coordinate(3, 0), &[1.0, 2.0, 3.0], DEFAULT_TOL).unwrap().class, 1);
        assert_eq!(pointwise_class(&FormFn::t5_lutz(), &[0.4, 1.1, 2.0, 0.3, 5.0], DEFAULT_TOL).unwrap().class, 5);
    }

    #[test]
    fn vanishing_form_with_nonzero_differential() {
        // a_{1,1} a_{1,2} da_{1,1} at a_{1,2} = 0: α = 0 but dα ≠ 0, class 2
        use crate::polyring::{Monomial, Poly};
        let f = Poly::from_terms(2, [(Monomial::from_exponents(vec![(VarId::new(1, 1), 1), (VarId::new(1, 2), 1)]), Rat::from_integer(4.into()))]);
        let form = Form::scalar(Poly::from_terms(2, [(Monomial::from_exponents(vec![(VarId::new(1, 1), 1)]), Rat::from_integer(1.into()))]))
            .ext_d()
            .mul_poly(&f);
        let point = Matrix::from_i64(&[&[1, 0], &[-2, 1]]);
        assert_eq!(symbolic_pointwise_class(&form, &point).unwrap(), 2);
        let numeric = FormFn::from_poly_form(&form).unwrap();
        assert_eq!(pointwise_class(&numeric, &[1.0, 0.0, -2.0, 1.0], DEFAULT_TOL).unwrap().class, 2);
    }

    #[test]
    fn t3_magnitude_is_n1() {
        for n1 in [1, 3] {
            let r = pointwise_class(&FormFn::t3(n1), &[0.7, 0.0, 0.0], DEFAULT_TOL).unwrap();
            assert!((r.magnitude - n1 as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn tolerance_must_be_positive() {
        assert!(pointwise_class(&FormFn::t3(1), &[0.0; 3], 0.0).is_err());
        assert!(pointwise_class(&FormFn::t3(1), &[0.0; 3], -1.0).is_err());
        assert!(pointwise_class(&FormFn::t3(1), &[0.0; 2], 1e-9).is_err());
    }

    #[test]
    fn builtin_partials_match_differences() {
        let x = [0.3, 1.2, 2.1, 0.4, 5.5];
        assert!(FormFn::t5_lutz().partials_self_test(&x) < 1e-6);
        assert!(FormFn::t3(2).partials_self_test(&x[..3]) < 1e-6);
    }

    #[test]
    fn grid_covers_the_cube() {
        let g = Points::Grid(3).realize(2);
        assert_eq!(g.len(), 9);
        assert_eq!(g[1], vec![TAU / 3.0, 0.0]);
    }

    #[test]
    fn rank_by_elimination() {
        assert_eq!(numeric_rank(vec![vec![1.0, 2.0], vec![2.0, 4.0]], 1e-12), 1);
        assert_eq!(numeric_rank(vec![vec![0.0, 1.0], vec![1.0, 0.0]], 1e-12), 2);
    }

    #[test]
    fn lutz_singular_set() {
        let r = singular_scan(&FormFn::t5_lutz(), &[3, 4], &Points::Explicit(t5_sigma_points(3)), 1e-9, 1).unwrap();
        assert_eq!(r.sigma_count, 12);
        assert_eq!(r.min_rank_on_sigma, Some(2));
    }
}
