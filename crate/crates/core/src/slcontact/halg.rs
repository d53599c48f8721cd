use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{symplectic_j, Matrix, RatMatrix};
use crate::report::{Provenance, VerifyReport};
use crate::Rat;

/// Solution space of `J Y + Yᵀ J = 0` in `2p × 2p` matrices.
#[derive(Clone, Debug)]
pub struct SubalgebraResult {
    pub p: usize,
    /// Coefficient matrix of the linear system in the row-major entries of `Y`.
    pub system: RatMatrix,
    pub basis: Vec<RatMatrix>,
    pub dim: usize,
    pub closed: bool,
    pub report: VerifyReport,
}

fn defining_system(p: usize) -> RatMatrix {
    let n = 2 * p;
    let j = symplectic_j(p);
    // row (r, c) of J Y + Yᵀ J: Σ_k J_{r,k} Y_{k,c} + Σ_k Y_{k,r} J_{k,c}
    let mut sys = RatMatrix::zeros(n * n, n * n);
    for r in 0..n {
        for c in 0..n {
            for k in 0..n {
                sys[(r * n + c, k * n + c)] += &j[(r, k)];
                sys[(r * n + c, k * n + r)] += &j[(k, c)];
            }
        }
    }
    sys
}

pub(crate) fn h_basis(p: usize) -> Vec<RatMatrix> {
    let n = 2 * p;
    defining_system(p)
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_fn(n, n, |r, c| v[r * n + c].clone()))
        .collect()
}

fn block(m: &RatMatrix, i: usize, j: usize) -> RatMatrix {
    Matrix::from_fn(2, 2, |r, c| m[(2 * i + r, 2 * j + c)].clone())
}

fn commutator(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

fn matrix_json(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| json!(m.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>())).collect())
}

pub fn h_algebra(p: usize) -> Result<SubalgebraResult> {
    if p == 0 {
        return Err(Error::Parameter("p must be positive".into()));
    }
    let n = 2 * p;
    let system = defining_system(p);
    let basis = h_basis(p);
    let dim = basis.len();
    let j = symplectic_j(p);
    let mut report = VerifyReport::new("h-algebra").param("p", p);

    let satisfied = basis.iter().all(|y| {
        let lhs = j.mul(y).and_then(|jy| jy.add(&y.transpose().mul(&j)?));
        lhs.map(|m| m.is_zero()).unwrap_or(false)
    });
    report.assert_claim(
        "h.equations",
        "every basis element satisfies J Y + Yᵀ J = 0",
        json!(satisfied),
        json!(true),
        Provenance::Trivial,
        satisfied,
    );
    report.assert_claim(
        "h.dimension",
        "dim 𝔥 = p(2p+1)",
        json!(dim),
        json!(p * (2 * p + 1)),
        Provenance::Published,
        dim == p * (2 * p + 1),
    );

    // closure: every commutator lies in the span of the basis
    let span = Matrix::from_fn(n * n, dim, |r, c| basis[c][(r / n, r % n)].clone());
    let mut closed = true;
    'outer: for a in 0..dim {
        for b in a + 1..dim {
            let c = commutator(&basis[a], &basis[b])?;
            let rhs: Vec<Rat> = c.iter().cloned().collect();
            if !span.is_consistent(&rhs)? {
                closed = false;
                break 'outer;
            }
        }
    }
    report.assert_claim(
        "h.closure",
        "𝔥 is closed under the commutator",
        json!(closed),
        json!(true),
        Provenance::Derived,
        closed,
    );

    let traceless = basis.iter().all(|y| (0..n).fold(Rat::zero(), |s, i| s + &y[(i, i)]).is_zero());
    report.assert_claim("h.traceless", "𝔥 ⊂ sl(2p)", json!(traceless), json!(true), Provenance::Derived, traceless);

    // block description, J₂ = [[0, 1], [-1, 0]]
    let j2 = symplectic_j(1);
    let diag_traceless = basis
        .iter()
        .all(|y| (0..p).all(|i| (&block(y, i, i)[(0, 0)] + &block(y, i, i)[(1, 1)]).is_zero()));
    report.assert_claim(
        "h.diagonal-blocks",
        "diagonal 2×2 blocks are traceless",
        json!(diag_traceless),
        json!(true),
        Provenance::Published,
        diag_traceless,
    );
    let mut transposed_ok = true;
    let mut published_counterexample: Option<RatMatrix> = None;
    for y in &basis {
        for i in 0..p {
            for k in i + 1..p {
                let m_ik = block(y, i, k);
                let m_ki = block(y, k, i);
                if j2.mul(&m_ik.transpose())?.mul(&j2)? != m_ki {
                    transposed_ok = false;
                }
                if published_counterexample.is_none() && j2.mul(&m_ik)?.mul(&j2)? != m_ki {
                    published_counterexample = Some(y.clone());
                }
            }
        }
    }
    report.assert_claim(
        "h.off-diagonal-blocks",
        "M_{j,i} = J₂ M_{i,j}ᵀ J₂ for i < j",
        json!(transposed_ok),
        json!(true),
        Provenance::Derived,
        transposed_ok,
    );
    report.report_claim(
        "h.published-block-relation",
        "M_{j,i} = J₂ M_{i,j} J₂ for i < j holds on 𝔥",
        published_counterexample.as_ref().map_or(json!("holds"), matrix_json),
        json!("holds"),
        Provenance::Published,
        Some(published_counterexample.is_none()),
    );

    Ok(SubalgebraResult { p, system, basis, dim, closed, report })
}
