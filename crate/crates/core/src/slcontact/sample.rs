use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::liealg::sample_rng;
use crate::linalg::{ratio, Matrix, RatMatrix};
use crate::Rat;

use super::halg::h_basis;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Sl(usize),
    So(usize),
    /// `{a : aᵀ J a = J}` inside `SL(2p)`.
    H(usize),
}

const MAX_ATTEMPTS: usize = 64;

fn small_rational(rng: &mut impl Rng) -> Rat {
    ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// `(I - S)(I + S)^{-1}`, or `None` at a pole.
pub fn cayley(s: &RatMatrix) -> Option<RatMatrix> {
    let id = RatMatrix::identity(s.rows());
    let inv = id.add(s).ok()?.inverse().ok()??;
    id.sub(s).ok()?.mul(&inv).ok()
}

fn sample_with(group: Group, rng: &mut impl Rng) -> Result<RatMatrix> {
    match group {
        Group::Sl(n) => {
            let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => Rat::one(),
                std::cmp::Ordering::Greater => Rat::from_integer(rng.gen_range(-3..=3).into()),
                std::cmp::Ordering::Less => Rat::zero(),
            });
            let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => Rat::one(),
                std::cmp::Ordering::Less => Rat::from_integer(rng.gen_range(-3..=3).into()),
                std::cmp::Ordering::Greater => Rat::zero(),
            });
            lower.mul(&upper)
        }
        Group::So(n) => {
            for _ in 0..MAX_ATTEMPTS {
                let mut s = RatMatrix::zeros(n, n);
                for i in 0..n {
                    for j in i + 1..n {
                        let v = small_rational(rng);
                        s[(j, i)] = -v.clone();
                        s[(i, j)] = v;
                    }
                }
                if let Some(a) = cayley(&s) {
                    return Ok(a);
                }
            }
            Err(Error::Parameter("no regular Cayley sample found".into()))
        }
        Group::H(p) => {
            let basis = h_basis(p);
            for _ in 0..MAX_ATTEMPTS {
                let mut y = RatMatrix::zeros(2 * p, 2 * p);
                for b in &basis {
                    y = y.add(&b.scale(&small_rational(rng)))?;
                }
                if let Some(a) = cayley(&y) {
                    return Ok(a);
                }
            }
            Err(Error::Parameter("no regular Cayley sample found".into()))
        }
    }
}

fn check_size(group: Group) -> Result<()> {
    let ok = match group {
        Group::Sl(n) | Group::So(n) => n >= 1,
        Group::H(p) => p >= 1,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Parameter(format!("invalid group size {group:?}")))
    }
}

/// One exact rational point of the group.
pub fn sample_group_point(group: Group, seed: u64) -> Result<RatMatrix> {
    check_size(group)?;
    sample_with(group, &mut sample_rng(seed, 0))
}

/// `count` points, the `i`-th drawn from its own stream.
pub fn sample_group_points(group: Group, seed: u64, count: usize) -> Result<Vec<RatMatrix>> {
    check_size(group)?;
    (0..count as u64).map(|i| sample_with(group, &mut sample_rng(seed, i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::symplectic_j;

    #[test]
    fn samples_lie_on_their_groups() {
        for seed in 0..5 {
            let a = sample_group_point(Group::Sl(2), seed).unwrap();
            assert!(a.det().unwrap().is_one());
            let o = sample_group_point(Group::So(3), seed).unwrap();
            assert_eq!(o.transpose().mul(&o).unwrap(), RatMatrix::identity(3));
            assert!(o.det().unwrap().is_one());
            let h = sample_group_point(Group::H(2), seed).unwrap();
            let j = symplectic_j(2);
            assert_eq!(h.transpose().mul(&j).unwrap().mul(&h).unwrap(), j);
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a = sample_group_points(Group::So(4), 9, 3).unwrap();
        let b = sample_group_points(Group::So(4), 9, 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
    }
}
