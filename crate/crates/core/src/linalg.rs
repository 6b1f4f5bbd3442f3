//! Exact matrix ranks over `Q` and prime fields.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Zero};

/// Integers with overflow-checked arithmetic, as needed by fraction-free
/// elimination.
pub trait CheckedRing: Clone + PartialEq + Zero + One + CheckedMul + CheckedSub + CheckedDiv {}

impl<T> CheckedRing for T where T: Clone + PartialEq + Zero + One + CheckedMul + CheckedSub + CheckedDiv {}

/// Scalars supporting exact division by non-zero elements.
pub trait Field:
    Clone + PartialEq + Zero + One + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
}

impl<T> Field for T where
    T: Clone + PartialEq + Zero + One + Sub<Output = T> + Mul<Output = T> + Div<Output = T>
{
}

/// Rank by Bareiss fraction-free elimination. `None` on overflow.
pub fn bareiss_rank<T: CheckedRing>(mut m: Vec<Vec<T>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let a = pivot_row[c].checked_mul(&row[j])?;
                let b = lead.checked_mul(&pivot_row[j])?;
                row[j] = a.checked_sub(&b)?.checked_div(&prev)?;
            }
            row[c] = T::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    Some(r)
}

/// Rank by Gaussian elimination over a field.
pub fn field_rank<F: Field>(mut m: Vec<Vec<F>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = F::one() / m[r][c].clone();
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone() * inv.clone();
            for j in c..cols {
                row[j] = row[j].clone() - factor.clone() * pivot_row[j].clone();
            }
        }
        r += 1;
    }
    r
}

/// Rank over `F_p` for a runtime prime `p < 2^32`.
pub fn rank_mod_p(m: &[Vec<i64>], p: u64) -> usize {
    assert!((2..1 << 32).contains(&p), "modulus out of range");
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], p - 2, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let factor = row[c] * inv % p;
            for j in c..cols {
                row[j] = (row[j] + p - factor * pivot_row[j] % p) % p;
            }
        }
        r += 1;
    }
    r
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Modulus for the characteristic-zero shortcut.
const SHORTCUT_PRIME: u64 = 2_147_483_647;

/// Rank over `Q`.
///
/// A full rank modulo a prime is already the rational rank; otherwise the
/// matrix goes through fraction-free elimination, first in `i64` and then
/// in arbitrary precision.
pub fn rational_rank(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return 0;
    }
    if rank_mod_p(m, SHORTCUT_PRIME) == rows.min(cols) {
        return rows.min(cols);
    }
    if let Some(r) = bareiss_rank(m.to_vec()) {
        return r;
    }
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    bareiss_rank(big).expect("arbitrary precision never overflows")
}

/// Rank in characteristic `p`, where `0` means `Q`.
pub fn rank_in_characteristic(m: &[Vec<i64>], p: u64) -> usize {
    if p == 0 {
        rational_rank(m)
    } else {
        rank_mod_p(m, p)
    }
}

/// An element of `F_P` for a compile-time prime `P < 2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(x: i64) -> Self {
        Fp(x.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn inverse(self) -> Option<Self> {
        (self.0 != 0).then(|| Fp(pow_mod(self.0, P - 2, P)))
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in a prime field")
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}
