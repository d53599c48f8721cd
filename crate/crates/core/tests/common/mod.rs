//! Independent oracle for the integration tests: a bitmask exterior algebra
//! over the rationals with constant coefficients, and determinants by
//! elimination. Nothing here calls into the library's algebra.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Constant-coefficient form; bit `k` of a key is the generator `k`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Ext {
    pub terms: BTreeMap<u32, Q>,
}

impl Ext {
    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(0, Q::one());
        Ext { terms }
    }

    pub fn gen(k: usize, c: Q) -> Self {
        let mut e = Ext::default();
        e.add(1 << k, c);
        e
    }

    pub fn add(&mut self, key: u32, c: Q) {
        let slot = self.terms.entry(key).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn plus(&self, other: &Ext) -> Ext {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add(k, c.clone());
        }
        out
    }

    pub fn times(&self, c: &Q) -> Ext {
        let mut out = Ext::default();
        for (&k, v) in &self.terms {
            out.add(k, v * c);
        }
        out
    }

    pub fn wedge(&self, other: &Ext) -> Ext {
        let mut out = Ext::default();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                // transpositions needed to merge: pairs (i in a, j in b) with i > j
                let mut swaps = 0;
                for j in 0..32 {
                    if b >> j & 1 == 1 {
                        swaps += ((a as u64) >> (j + 1)).count_ones();
                    }
                }
                let c = ca * cb;
                out.add(a | b, if swaps % 2 == 0 { c } else { -c });
            }
        }
        out
    }

    pub fn coefficient(&self, key: u32) -> Q {
        self.terms.get(&key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Index of `d a_{i,j}` (1-based) in row-major order.
pub fn g(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

pub fn full_mask(n: usize) -> u32 {
    ((1u64 << (n * n)) - 1) as u32
}

pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if piv != c {
            a.swap(piv, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    d
}

/// Unsigned minor: delete row `i`, column `j` (1-based).
pub fn minor(m: &[Vec<Q>], i: usize, j: usize) -> Q {
    let sub: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .filter(|(r, _)| *r != i - 1)
        .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != j - 1).map(|(_, v)| v.clone()).collect())
        .collect();
    det(&sub)
}

pub fn cofactor(m: &[Vec<Q>], i: usize, j: usize) -> Q {
    let v = minor(m, i, j);
    if (i + j) % 2 == 0 { v } else { -v }
}

/// Matrix with small random rational entries.
pub fn random_matrix(n: usize, seed: u64) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (0..n).map(|_| qr(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect()).collect()
}

/// `ω(a) = Σ_i Σ_j a_{i,2j} d_{i,2j-1} - a_{i,2j-1} d_{i,2j}`.
pub fn omega_at(a: &[Vec<Q>]) -> Ext {
    let n = a.len();
    let mut w = Ext::default();
    for i in 1..=n {
        for j in 1..=n / 2 {
            w = w.plus(&Ext::gen(g(n, i, 2 * j - 1), a[i - 1][2 * j - 1].clone()));
            w = w.plus(&Ext::gen(g(n, i, 2 * j), -a[i - 1][2 * j - 2].clone()));
        }
    }
    w
}

/// `dω = 2 Σ d_{i,2j} ∧ d_{i,2j-1}`, the same at every point.
pub fn d_omega(n: usize) -> Ext {
    let mut w = Ext::default();
    for i in 1..=n {
        for j in 1..=n / 2 {
            w = w.plus(&Ext::gen(g(n, i, 2 * j), q(2)).wedge(&Ext::gen(g(n, i, 2 * j - 1), q(1))));
        }
    }
    w
}

/// `dΔ(a) = Σ (-1)^{i+j} A_{i,j} d_{i,j}`.
pub fn d_delta_at(a: &[Vec<Q>]) -> Ext {
    let n = a.len();
    let mut w = Ext::default();
    for i in 1..=n {
        for j in 1..=n {
            w = w.plus(&Ext::gen(g(n, i, j), cofactor(a, i, j)));
        }
    }
    w
}

pub fn power(f: &Ext, k: usize) -> Ext {
    let mut out = Ext::one();
    for _ in 0..k {
        out = out.wedge(f);
    }
    out
}

/// Coefficient of `V` in `ω ∧ (dω)^{2p²-1} ∧ dΔ` at `a`.
pub fn contact_top_at(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let m = n * n / 2;
    let top = omega_at(a).wedge(&power(&d_omega(n), m - 1)).wedge(&d_delta_at(a));
    top.coefficient(full_mask(n))
}

/// `K` with `(dω)^{2p²} = K V`.
pub fn power_volume(p: usize) -> Q {
    let n = 2 * p;
    power(&d_omega(n), 2 * p * p).coefficient(full_mask(n))
}

/// Components of the published Reeb numerator `S` at `a`, indexed like `g`.
pub fn reeb_numerator_at(a: &[Vec<Q>]) -> Vec<Q> {
    let n = a.len();
    let mut s = vec![Q::zero(); n * n];
    for i in 1..=n {
        let sign = if i % 2 == 1 { q(1) } else { q(-1) };
        for j in 1..=n / 2 {
            s[g(n, i, 2 * j - 1)] = &sign * minor(a, i, 2 * j);
            s[g(n, i, 2 * j)] = &sign * minor(a, i, 2 * j - 1);
        }
    }
    s
}

pub fn pair(f: &Ext, v: &[Q]) -> Q {
    let mut s = Q::zero();
    for (&k, c) in &f.terms {
        assert_eq!(k.count_ones(), 1);
        s += c * &v[k.trailing_zeros() as usize];
    }
    s
}

/// `i(v) f` for a 2-form `f`, as a 1-form.
pub fn contract2(f: &Ext, v: &[Q]) -> Ext {
    let mut out = Ext::default();
    for (&k, c) in &f.terms {
        assert_eq!(k.count_ones(), 2);
        let lo = k.trailing_zeros() as usize;
        let hi = 31 - k.leading_zeros() as usize;
        // i(v)(e_lo ∧ e_hi) = v_lo e_hi - v_hi e_lo
        out = out.plus(&Ext::gen(hi, c * &v[lo]));
        out = out.plus(&Ext::gen(lo, -(c * &v[hi])));
    }
    out
}

/// `P` in `φ ∧ dφ ∧ df_{1,1} ∧ df_{1,2} ∧ … ∧ df_{3,3} = P V` at `a`, with
/// `φ = a_{1,1} d_{1,2} + a_{2,1} d_{2,2} + a_{3,1} d_{3,2}`. With `halved`,
/// the diagonal constraints enter as `½ df_{k,k}`.
pub fn so3_coefficient_at(a: &[Vec<Q>], halved: bool) -> Q {
    let n = 3;
    let mut phi = Ext::default();
    let mut dphi = Ext::default();
    for i in 1..=3 {
        phi = phi.plus(&Ext::gen(g(n, i, 2), a[i - 1][0].clone()));
        dphi = dphi.plus(&Ext::gen(g(n, i, 1), q(1)).wedge(&Ext::gen(g(n, i, 2), q(1))));
    }
    let mut theta = Ext::one();
    for k in 1..=3 {
        for l in k..=3 {
            // f_{k,l} = Σ_j a_{j,k} a_{j,l} - δ
            let mut df = Ext::default();
            for j in 1..=3 {
                df = df.plus(&Ext::gen(g(n, j, k), a[j - 1][l - 1].clone()));
                df = df.plus(&Ext::gen(g(n, j, l), a[j - 1][k - 1].clone()));
            }
            if halved && k == l {
                df = df.times(&qr(1, 2));
            }
            theta = theta.wedge(&df);
        }
    }
    phi.wedge(&dphi).wedge(&theta).coefficient(full_mask(n))
}

/// Rotation by the Cayley transform of the skew matrix with entries `x, y, z`.
pub fn rotation(x: Q, y: Q, z: Q) -> Vec<Vec<Q>> {
    // (I - S)(I + S)^{-1} through the Rodrigues closed form
    let s = vec![vec![q(0), -z.clone(), y.clone()], vec![z.clone(), q(0), -x.clone()], vec![-y.clone(), x.clone(), q(0)]];
    let nsq = &x * &x + &y * &y + &z * &z;
    let denom = q(1) + nsq.clone();
    let mut out = vec![vec![q(0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s2 = q(0);
            for k in 0..3 {
                s2 += &s[i][k] * &s[k][j];
            }
            let id = if i == j { q(1) } else { q(0) };
            // (I - S)(I + S)^{-1} = I + (-2S + 2S²) / (1 + |s|²)
            out[i][j] = id + (q(-2) * &s[i][j] + q(2) * s2) / &denom;
        }
    }
    out
}

pub fn is_rotation(a: &[Vec<Q>]) -> bool {
    for i in 0..3 {
        for j in 0..3 {
            let mut s = q(0);
            for k in 0..3 {
                s += &a[k][i] * &a[k][j];
            }
            if s != if i == j { q(1) } else { q(0) } {
                return false;
            }
        }
    }
    det(a) == q(1)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}
