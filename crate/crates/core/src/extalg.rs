//! Exterior algebra with constant coefficients on a vector space of dimension
//! at most 64, with basis monomials stored as bitmasks.
//!
//! This is the pointwise counterpart of [`crate::exterior::Form`]: used for
//! forms on a Lie algebra and for forms evaluated at a point.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

use num_traits::Zero;

pub trait Coeff: Clone + Zero + Add<Output = Self> + Mul<Output = Self> + Neg<Output = Self> + Send + Sync {}

impl<T> Coeff for T where T: Clone + Zero + Add<Output = T> + Mul<Output = T> + Neg<Output = T> + Send + Sync {}

/// Coefficients with overflow-checked arithmetic.
pub trait CheckedCoeff: Coeff {
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
}

impl CheckedCoeff for i128 {
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstForm<T> {
    dim: usize,
    terms: BTreeMap<u64, T>,
}

/// Parity of the shuffle placing the bits of `b` after those of `a`.
fn shuffle_is_odd(a: u64, b: u64) -> bool {
    let mut count = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        // bits of `a` above position j have to be jumped over
        let above = if j >= 63 { 0 } else { a >> (j + 1) };
        count += above.count_ones();
        rest &= rest - 1;
    }
    count % 2 == 1
}

impl<T: Coeff> ConstForm<T> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 64, "constant forms support at most 64 generators");
        ConstForm { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize, unit: T) -> Self {
        let mut f = ConstForm::zero(dim);
        f.add_term(0, unit);
        f
    }

    /// `Σ c_i e_i`.
    pub fn one_form(coeffs: &[T]) -> Self {
        let mut f = ConstForm::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(1 << i, c.clone());
        }
        f
    }

    /// `Σ_{i<j} m(i,j) e_i ∧ e_j`.
    pub fn two_form(dim: usize, m: impl Fn(usize, usize) -> T) -> Self {
        let mut f = ConstForm::zero(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                f.add_term((1 << i) | (1 << j), m(i, j));
            }
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &T)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: u64) -> T {
        self.terms.get(&mask).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, mask: u64, c: T) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&mask) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(mask, sum);
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = ConstForm::zero(self.dim);
        for (&ma, ca) in &self.terms {
            for (&mb, cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let prod = ca.clone() * cb.clone();
                out.add_term(ma | mb, if shuffle_is_odd(ma, mb) { -prod } else { prod });
            }
        }
        out
    }

    /// Exterior product, or `None` if a coefficient overflows.
    pub fn try_wedge(&self, other: &Self) -> Option<Self>
    where
        T: CheckedCoeff,
    {
        assert_eq!(self.dim, other.dim);
        let mut out: BTreeMap<u64, T> = BTreeMap::new();
        for (&ma, ca) in &self.terms {
            for (&mb, cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let mut prod = ca.checked_mul(cb)?;
                if shuffle_is_odd(ma, mb) {
                    prod = prod.checked_neg()?;
                }
                let slot = out.entry(ma | mb).or_insert_with(T::zero);
                *slot = slot.checked_add(&prod)?;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Some(ConstForm { dim: self.dim, terms: out })
    }

    /// Drop terms for which `keep` is false (used to discard numerical noise).
    pub fn retain(&mut self, keep: impl Fn(&T) -> bool) {
        self.terms.retain(|_, c| keep(c));
    }
}
