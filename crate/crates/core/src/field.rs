//! Exact coefficient fields for homology ranks: the rationals and prime fields.

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub trait Field {
    type Elem: Clone;

    fn embed(&self, x: i64) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn embed(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }

    fn sub(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y
    }

    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }

    fn inv(&self, x: &BigRational) -> BigRational {
        BigRational::one() / x
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn embed(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }

    fn sub(&self, x: &u64, y: &u64) -> u64 {
        (x + self.p - y) % self.p
    }

    fn mul(&self, x: &u64, y: &u64) -> u64 {
        ((*x as u128 * *y as u128) % self.p as u128) as u64
    }

    fn inv(&self, x: &u64) -> u64 {
        self.pow(*x, self.p - 2)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank by Gaussian elimination. Rows may be ragged only if empty.
pub fn rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col]);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if field.is_zero(&row[col]) {
                continue;
            }
            let factor = field.mul(&row[col], &inv);
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = field.sub(x, &field.mul(&factor, p));
            }
        }
        rank += 1;
    }
    rank
}

/// A coefficient field named by its characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(into = "u64")]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

impl From<FieldChoice> for u64 {
    fn from(f: FieldChoice) -> u64 {
        f.characteristic()
    }
}

impl FieldChoice {
    pub fn from_char(c: u64) -> Result<Self> {
        if c == 0 {
            Ok(FieldChoice::Rationals)
        } else {
            PrimeField::new(c).map(|f| FieldChoice::Prime(f.p()))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldChoice::Rationals => 0,
            FieldChoice::Prime(p) => *p,
        }
    }

    pub fn rank(&self, rows: &[Vec<i64>]) -> usize {
        match self {
            FieldChoice::Rationals => lift_rank(&Rationals, rows),
            FieldChoice::Prime(p) => lift_rank(&PrimeField { p: *p }, rows),
        }
    }

    /// True when the integer matrix vanishes over this field.
    pub fn is_zero_matrix(&self, rows: &[Vec<i64>]) -> bool {
        let c = self.characteristic() as i64;
        rows.iter()
            .flatten()
            .all(|&x| if c == 0 { x == 0 } else { x.rem_euclid(c) == 0 })
    }
}

fn lift_rank<F: Field>(field: &F, rows: &[Vec<i64>]) -> usize {
    rank(
        field,
        rows.iter()
            .map(|r| r.iter().map(|&x| field.embed(x)).collect())
            .collect(),
    )
}
