//! Lie algebras given by structure constants, and the Cartan class of linear
//! forms on them.
//!
//! For `α ∈ 𝔤*` the differential is `dα(X, Y) = -α([X, Y])`. The class is
//! computed two independent ways: by exact rank/row-space elimination on the
//! matrix `B[i][j] = α([e_i, e_j])` ([`cartan_class`]) and by expanding wedge
//! powers of `dα` ([`cartan_class_wedge`]).

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::extalg::ConstForm;
use crate::linalg::{rat, Matrix, RatMatrix};
use crate::report::{Provenance, VerifyReport};
use crate::Rat;

/// Structural family, used to decide which parity claims apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Sl(usize),
    So(usize),
    Heisenberg(usize),
    Custom,
}

impl Family {
    /// Compact real forms and nilpotent algebras: every nonzero form has odd class.
    pub fn odd_class_expected(self) -> bool {
        matches!(self, Family::So(_) | Family::Heisenberg(_))
    }

    /// Rank of the classical families (`None` for nilpotent and custom algebras).
    pub fn classical_rank(self) -> Option<usize> {
        match self {
            Family::Sl(n) => Some(n - 1),
            Family::So(n) => Some(n / 2),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    Sl(usize),
    So(usize),
    /// Dimension `2p + 1`.
    Heisenberg(usize),
    FromFile(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlg {
    dim: usize,
    /// `c[(i * dim + j) * dim + k]`: coefficient of `e_k` in `[e_i, e_j]`.
    c: Vec<Rat>,
    label: String,
    family: Family,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covector(pub Vec<Rat>);

impl Covector {
    pub fn from_ints(v: &[i64]) -> Self {
        Covector(v.iter().map(|&x| rat(x)).collect())
    }

    /// Dual basis vector `e_i*` (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        Covector((0..dim).map(|k| if k == i { Rat::one() } else { Rat::zero() }).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Covector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn build_algebra(spec: &AlgebraSpec) -> Result<LieAlg> {
    match spec {
        AlgebraSpec::Sl(n) => sl(*n),
        AlgebraSpec::So(n) => so(*n),
        AlgebraSpec::Heisenberg(d) => heisenberg(*d),
        AlgebraSpec::FromFile(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            LieAlg::parse(&text, &path.display().to_string())
        }
    }
}

/// Index pairs of the `sl(n)` frame in row-major order with `(n, n)` omitted;
/// `(k, k)` stands for `E_{k,k} - E_{n,n}`. 1-based.
pub fn sl_frame_indices(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|k| (1..=n).map(move |l| (k, l)))
        .filter(|&(k, l)| !(k == n && l == n))
        .collect()
}

fn elementary(n: usize, i: usize, j: usize) -> RatMatrix {
    Matrix::from_fn(n, n, |r, c| if r == i && c == j { Rat::one() } else { Rat::zero() })
}

pub fn sl(n: usize) -> Result<LieAlg> {
    if n < 2 {
        return Err(Error::Parameter(format!("sl(n) needs n >= 2, got {n}")));
    }
    let basis = sl_frame_indices(n)
        .into_iter()
        .map(|(k, l)| {
            if k == l {
                elementary(n, k - 1, k - 1).sub(&elementary(n, n - 1, n - 1)).expect("same shape")
            } else {
                elementary(n, k - 1, l - 1)
            }
        })
        .collect();
    LieAlg::from_matrix_basis(basis, format!("sl({n})"), Family::Sl(n))
}

/// `E_{i,j} - E_{j,i}` for `i < j` in lexicographic order.
pub fn so(n: usize) -> Result<LieAlg> {
    if n < 3 {
        return Err(Error::Parameter(format!("so(n) needs n >= 3, got {n}")));
    }
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            basis.push(elementary(n, i, j).sub(&elementary(n, j, i)).expect("same shape"));
        }
    }
    LieAlg::from_matrix_basis(basis, format!("so({n})"), Family::So(n))
}

/// `[e_{2i-1}, e_{2i}] = e_{2p+1}`.
pub fn heisenberg(dim: usize) -> Result<LieAlg> {
    if dim < 3 || dim % 2 == 0 {
        return Err(Error::Parameter(format!("heisenberg dimension must be odd and >= 3, got {dim}")));
    }
    let mut entries = Vec::new();
    for i in 0..(dim - 1) / 2 {
        entries.push((2 * i, 2 * i + 1, dim - 1, Rat::one()));
    }
    LieAlg::from_structure_constants(dim, entries, format!("heisenberg({dim})"), Family::Heisenberg(dim))
}

impl LieAlg {
    /// From the brackets `[e_i, e_j]` with `i < j` (0-based); the rest follows
    /// by antisymmetry. Fails unless the Jacobi identity holds exactly.
    pub fn from_structure_constants(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rat)>,
        label: String,
        family: Family,
    ) -> Result<Self> {
        let mut c = vec![Rat::zero(); dim * dim * dim];
        for (i, j, k, v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!("index out of range for dimension {dim}")));
            }
            if i == j {
                if !v.is_zero() {
                    return Err(Error::InvalidAlgebra(format!("[e{},e{}] must vanish", i + 1, j + 1)));
                }
                continue;
            }
            c[(i * dim + j) * dim + k] = v.clone();
            c[(j * dim + i) * dim + k] = -v;
        }
        let g = LieAlg { dim, c, label, family };
        g.check_jacobi()?;
        Ok(g)
    }

    /// Structure constants of the span of linearly independent matrices closed
    /// under the commutator.
    pub fn from_matrix_basis(basis: Vec<RatMatrix>, label: String, family: Family) -> Result<Self> {
        let dim = basis.len();
        let n = basis.first().map_or(0, Matrix::rows);
        let mut commutators = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let ab = basis[i].mul(&basis[j])?;
                let ba = basis[j].mul(&basis[i])?;
                commutators.push((i, j, ab.sub(&ba)?));
            }
        }
        let ncols = dim + commutators.len();
        let mut aug = Matrix::from_fn(n * n, ncols, |r, col| {
            let m = if col < dim { &basis[col] } else { &commutators[col - dim].2 };
            m[(r / n, r % n)].clone()
        });
        let pivots = aug.rref();
        if pivots.len() < dim || pivots[..dim] != (0..dim).collect::<Vec<_>>()[..] {
            return Err(Error::InvalidAlgebra("matrix basis is linearly dependent".into()));
        }
        if pivots.len() > dim {
            return Err(Error::InvalidAlgebra("span is not closed under the commutator".into()));
        }
        let mut entries = Vec::new();
        for (t, (i, j, _)) in commutators.iter().enumerate() {
            for k in 0..dim {
                let v = aug[(k, dim + t)].clone();
                if !v.is_zero() {
                    entries.push((*i, *j, k, v));
                }
            }
        }
        LieAlg::from_structure_constants(dim, entries, label, family)
    }

    /// Text format: `dim n`, then lines `i j k value` (1-based, `i < j`)
    /// giving the `e_k` component of `[e_i, e_j]`. `#` starts a comment.
    pub fn parse(text: &str, label: &str) -> Result<Self> {
        let mut dim: Option<usize> = None;
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: lineno + 1, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match dim {
                None => {
                    if fields.len() != 2 || fields[0] != "dim" {
                        return Err(err(format!("expected `dim <n>`, found `{line}`")));
                    }
                    let n: usize = fields[1].parse().map_err(|_| err(format!("bad dimension `{}`", fields[1])))?;
                    if n == 0 {
                        return Err(err("dimension must be positive".into()));
                    }
                    dim = Some(n);
                }
                Some(n) => {
                    if fields.len() != 4 {
                        return Err(err(format!("expected `i j k value`, found `{line}`")));
                    }
                    let idx = |s: &str| -> Result<usize> {
                        let v: usize = s.parse().map_err(|_| err(format!("bad index `{s}`")))?;
                        if v == 0 || v > n {
                            return Err(err(format!("index {v} outside 1..={n}")));
                        }
                        Ok(v - 1)
                    };
                    let (i, j, k) = (idx(fields[0])?, idx(fields[1])?, idx(fields[2])?);
                    if i >= j {
                        return Err(err(format!("need i < j, found {} {}", i + 1, j + 1)));
                    }
                    let value: Rat = fields[3].parse().map_err(|_| err(format!("bad rational `{}`", fields[3])))?;
                    entries.push((i, j, k, value));
                }
            }
        }
        let dim = dim.ok_or(Error::Parse { line: 1, msg: "missing `dim` header".into() })?;
        LieAlg::from_structure_constants(dim, entries, label.to_string(), Family::Custom)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Coefficient of `e_k` in `[e_i, e_j]`, 0-based.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let n = self.dim;
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += &s * c;
                    }
                }
            }
        }
        out
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in 0..n {
                        let mut s = Rat::zero();
                        for m in 0..n {
                            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                                let x = self.c(a, b, m);
                                if !x.is_zero() {
                                    let y = self.c(m, c, l);
                                    if !y.is_zero() {
                                        s += x * y;
                                    }
                                }
                            }
                        }
                        if !s.is_zero() {
                            return Err(Error::InvalidAlgebra(format!(
                                "Jacobi identity fails on (e{}, e{}, e{})",
                                i + 1,
                                j + 1,
                                k + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `B[i][j] = α([e_i, e_j]) = -dα(e_i, e_j)`.
    pub fn form_matrix(&self, alpha: &Covector) -> Result<RatMatrix> {
        self.check_covector(alpha)?;
        let n = self.dim;
        Ok(Matrix::from_fn(n, n, |i, j| {
            let mut s = Rat::zero();
            for (k, a) in alpha.0.iter().enumerate() {
                let c = self.c(i, j, k);
                if !c.is_zero() && !a.is_zero() {
                    s += c * a;
                }
            }
            s
        }))
    }

    /// Matrix of `ad X` (column `j` holds `[X, e_j]`).
    pub fn ad_matrix(&self, x: &[Rat]) -> RatMatrix {
        let n = self.dim;
        Matrix::from_fn(n, n, |k, j| {
            let mut s = Rat::zero();
            for (i, xi) in x.iter().enumerate() {
                let c = self.c(i, j, k);
                if !c.is_zero() && !xi.is_zero() {
                    s += xi * c;
                }
            }
            s
        })
    }

    fn check_covector(&self, alpha: &Covector) -> Result<()> {
        if alpha.len() != self.dim {
            return Err(Error::Dimension(format!(
                "covector of length {} on {} of dimension {}",
                alpha.len(),
                self.label,
                self.dim
            )));
        }
        Ok(())
    }
}

/// Class of a 1-form from its value `alpha` and the antisymmetric matrix `b`
/// of its differential at one point (the sign of `b` is irrelevant).
pub fn class_from_pointwise(alpha: &[Rat], b: &RatMatrix) -> Result<usize> {
    if b.rows() != alpha.len() || b.cols() != alpha.len() {
        return Err(Error::Dimension("pointwise class: matrix and covector sizes differ".into()));
    }
    let r = b.rank();
    // B antisymmetric: row space = annihilator of the radical
    let in_row_space = b.transpose().is_consistent(alpha)?;
    Ok(if in_row_space { r } else { r + 1 })
}

/// Cartan class by exact elimination: `rank B`, plus one when `α` does not
/// vanish on the radical of `B`.
pub fn cartan_class(g: &LieAlg, alpha: &Covector) -> Result<usize> {
    let b = g.form_matrix(alpha)?;
    class_from_pointwise(&alpha.0, &b)
}

fn clear_denominators(values: &[Rat]) -> Vec<BigInt> {
    let lcm = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    values.iter().map(|v| (v * Rat::from_integer(lcm.clone())).to_integer()).collect()
}

/// Class from the first `p` with `(dα)^{p+1} = 0`: `2p + 1` if
/// `α ∧ (dα)^p ≠ 0`, else `2p`.
pub fn class_by_wedge_powers(alpha: &[Rat], b: &RatMatrix) -> usize {
    let n = alpha.len();
    // integer multiples do not change which products vanish
    let alpha_int = clear_denominators(alpha);
    let upper: Vec<Rat> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| -b[(i, j)].clone()).collect();
    let upper_int = clear_denominators(&upper);
    let small = |v: &[BigInt]| v.iter().map(i128::try_from).collect::<std::result::Result<Vec<_>, _>>().ok();
    if let (Some(a), Some(u)) = (small(&alpha_int), small(&upper_int)) {
        if let Some(class) = wedge_class(n, a, u, |x, y| x.try_wedge(y)) {
            return class;
        }
    }
    wedge_class(n, alpha_int, upper_int, |x, y| Some(x.wedge(y))).expect("exact arithmetic")
}

fn wedge_class<T: crate::extalg::Coeff + One>(
    n: usize,
    alpha: Vec<T>,
    upper: Vec<T>,
    wedge: impl Fn(&ConstForm<T>, &ConstForm<T>) -> Option<ConstForm<T>>,
) -> Option<usize> {
    let alpha = ConstForm::one_form(&alpha);
    // upper is listed row by row over i < j
    let d_alpha = ConstForm::two_form(n, |i, j| upper[i * (2 * n - i - 1) / 2 + (j - i - 1)].clone());
    let mut power = ConstForm::one(n, T::one());
    let mut p = 0;
    loop {
        let next = wedge(&power, &d_alpha)?;
        if next.is_zero() {
            break;
        }
        power = next;
        p += 1;
    }
    Some(if wedge(&alpha, &power)?.is_zero() { 2 * p } else { 2 * p + 1 })
}

/// Cartan class through wedge powers of `dα = -Σ_{i<j} α([e_i, e_j]) e_i* ∧ e_j*`.
pub fn cartan_class_wedge(g: &LieAlg, alpha: &Covector) -> Result<usize> {
    let b = g.form_matrix(alpha)?;
    Ok(class_by_wedge_powers(&alpha.0, &b))
}

/// Seeded generator for the `index`-th draw; independent of evaluation order.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Nonzero covector with integer coordinates in `[-9, 9]`.
pub fn random_covector(dim: usize, rng: &mut impl Rng) -> Covector {
    loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-9..=9)).collect();
        if v.iter().any(|&x| x != 0) {
            return Covector::from_ints(&v);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSurvey {
    pub algebra: String,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub rank_hint: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub min_class: usize,
    pub max_class: usize,
    /// `n - r + 1`.
    pub upper_bound: usize,
    pub upper_bound_holds: bool,
    /// Only for compact and nilpotent families.
    pub all_odd: Option<bool>,
    /// `2r`, reported but not asserted: sampling bounds the maximum only.
    pub lower_bound: usize,
    pub lower_bound_reached: bool,
    /// Smallest `dim ker(ad X)` over random `X`.
    pub generic_centralizer_dim: usize,
}

pub fn class_survey(g: &LieAlg, rank_hint: usize, samples: usize, seed: u64) -> Result<ClassSurvey> {
    if samples == 0 {
        return Err(Error::Parameter("survey needs at least one sample".into()));
    }
    let n = g.dim();
    let classes: Vec<usize> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let alpha = random_covector(n, &mut sample_rng(seed, i));
            cartan_class(g, &alpha)
        })
        .collect::<Result<_>>()?;
    let centralizer = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let x = random_covector(n, &mut sample_rng(seed, (1 << 32) + i));
            n - g.ad_matrix(&x.0).rank()
        })
        .min()
        .expect("samples > 0");
    let mut histogram = BTreeMap::new();
    for &c in &classes {
        *histogram.entry(c).or_insert(0) += 1;
    }
    let min_class = *classes.iter().min().expect("samples > 0");
    let max_class = *classes.iter().max().expect("samples > 0");
    let upper_bound = (n + 1).saturating_sub(rank_hint);
    Ok(ClassSurvey {
        algebra: g.label().to_string(),
        dim: n,
        samples,
        seed,
        rank_hint,
        min_class,
        max_class,
        upper_bound,
        upper_bound_holds: max_class <= upper_bound,
        all_odd: g.family().odd_class_expected().then(|| classes.iter().all(|c| c % 2 == 1)),
        lower_bound: 2 * rank_hint,
        lower_bound_reached: min_class >= 2 * rank_hint,
        generic_centralizer_dim: centralizer,
        histogram,
    })
}

/// Class of one covector, computed both ways, with the parity and rank
/// bound claims that apply to the algebra's family.
pub fn class_report(g: &LieAlg, alpha: &Covector) -> Result<VerifyReport> {
    let class = cartan_class(g, alpha)?;
    let wedge = cartan_class_wedge(g, alpha)?;
    let form: Vec<String> = alpha.0.iter().map(|x| x.to_string()).collect();
    let mut report = VerifyReport::new("cartan-class").param("algebra", g.label()).param("form", form);
    report.assert_claim(
        "class.routes",
        "class from rank of dα agrees with class from wedge powers",
        json!({ "rank_route": class, "wedge_route": wedge }),
        json!("equal"),
        Provenance::Derived,
        class == wedge,
    );
    if let Some(r) = g.family().classical_rank() {
        let bound = (g.dim() + 1).saturating_sub(r);
        report.assert_claim(
            "class.upper-bound",
            "cl(α) ≤ n - r + 1",
            json!(class),
            json!({ "at_most": bound }),
            Provenance::Published,
            class <= bound,
        );
    }
    if g.family().odd_class_expected() && !alpha.is_zero() {
        report.assert_claim(
            "class.odd",
            "every nonzero linear form has odd class",
            json!(class),
            json!("odd"),
            Provenance::Published,
            class % 2 == 1,
        );
    }
    Ok(report)
}

/// [`class_survey`] as a report: the upper bound and parity are asserted,
/// the lower bound `2r` is only reported.
pub fn survey_report(g: &LieAlg, rank_hint: usize, samples: usize, seed: u64) -> Result<VerifyReport> {
    let s = class_survey(g, rank_hint, samples, seed)?;
    let mut report = VerifyReport::new("class-survey")
        .param("algebra", g.label())
        .param("rank", rank_hint)
        .param("samples", samples)
        .param("seed", seed);
    let histogram: BTreeMap<String, usize> = s.histogram.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    report.assert_claim(
        "survey.upper-bound",
        "cl(α) ≤ n - r + 1 for every sampled covector",
        json!({ "histogram": histogram, "max_class": s.max_class }),
        json!({ "at_most": s.upper_bound }),
        Provenance::Published,
        s.upper_bound_holds,
    );
    if let Some(odd) = s.all_odd {
        report.assert_claim(
            "survey.odd",
            "every sampled nonzero covector has odd class",
            json!(histogram),
            json!("odd classes only"),
            Provenance::Published,
            odd,
        );
    }
    report.report_claim(
        "survey.lower-bound",
        "cl(α) ≥ 2r for sampled covectors",
        json!({ "min_class": s.min_class }),
        json!({ "at_least": s.lower_bound }),
        Provenance::Published,
        Some(s.lower_bound_reached),
    );
    report.report_claim(
        "survey.centralizer",
        "smallest sampled centralizer dimension, which equals the rank",
        json!(s.generic_centralizer_dim),
        json!(rank_hint),
        Provenance::Trivial,
        Some(s.generic_centralizer_dim == rank_hint),
    );
    Ok(report)
}
