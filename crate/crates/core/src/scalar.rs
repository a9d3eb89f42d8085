//! Integer scalar abstraction shared by every exact routine in the crate.
//!
//! All geometry is carried out over an exact integer type `I` (with
//! rationals built as `Ratio<I>` where needed). Arithmetic goes through the
//! checked helpers below so that a fixed-width instantiation such as `i64`
//! panics loudly instead of wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Exact signed integer usable as the scalar of lattice vectors.
pub trait Int:
    Clone
    + Debug
    + Display
    + Ord
    + Hash
    + Send
    + Sync
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + ToBigInt
    + 'static
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("value does not fit the scalar type")
    }

    fn from_bigint(v: &BigInt) -> Self;

    fn to_big(&self) -> BigInt {
        self.to_bigint().expect("integer converts to BigInt")
    }
}

impl Int for i64 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_i64().expect("integer overflow converting to i64")
    }
}

impl Int for i128 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_i128().expect("integer overflow converting to i128")
    }
}

impl Int for BigInt {
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
}

#[inline]
pub fn add<I: Int>(a: &I, b: &I) -> I {
    a.checked_add(b).expect("integer overflow in addition")
}

#[inline]
pub fn sub<I: Int>(a: &I, b: &I) -> I {
    a.checked_sub(b).expect("integer overflow in subtraction")
}

#[inline]
pub fn mul<I: Int>(a: &I, b: &I) -> I {
    a.checked_mul(b).expect("integer overflow in multiplication")
}

pub fn dot<I: Int>(a: &[I], b: &[I]) -> I {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(I::zero(), |acc, (x, y)| add(&acc, &mul(x, y)))
}

/// `alpha * a + beta * b`, entrywise.
pub fn combine<I: Int>(alpha: &I, a: &[I], beta: &I, b: &[I]) -> Vec<I> {
    a.iter()
        .zip(b)
        .map(|(x, y)| add(&mul(alpha, x), &mul(beta, y)))
        .collect()
}

pub fn content<I: Int>(v: &[I]) -> I {
    v.iter().fold(I::zero(), |g, x| g.gcd(x))
}

pub fn is_zero_vec<I: Int>(v: &[I]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive<I: Int>(v: Vec<I>) -> Vec<I> {
    let g = content(&v);
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / g.clone()).collect()
}

/// Primitive representative of the line through `v`, with first nonzero entry positive.
pub fn primitive_line<I: Int>(v: Vec<I>) -> Vec<I> {
    let mut p = primitive(v);
    if let Some(first) = p.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            p.iter_mut().for_each(|x| *x = -x.clone());
        }
    }
    p
}

pub fn neg_vec<I: Int>(v: &[I]) -> Vec<I> {
    v.iter().map(|x| -x.clone()).collect()
}

pub fn sign<I: Int>(x: &I) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn to_rational<I: Int>(x: &I) -> BigRational {
    BigRational::from_integer(x.to_big())
}

pub fn vec_from_i64<I: Int>(v: &[i64]) -> Vec<I> {
    v.iter().map(|&x| I::from_i64_exact(x)).collect()
}

/// Converts a rational vector to a positive integer multiple of it, made primitive.
pub fn clear_denominators<I: Int>(v: &[BigRational]) -> Vec<I> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive(ints).iter().map(I::from_bigint).collect()
}

pub fn lex_cmp<I: Int>(a: &[I], b: &[I]) -> std::cmp::Ordering {
    a.cmp(b)
}
