//! The exact scalar abstraction shared by every module.

use std::fmt;

use num_traits::{Num, Signed};

/// An exact ordered field element.
///
/// All decision procedures in this crate branch on exact zero and sign
/// tests, so implementors must be exact: `num_rational::BigRational` is the
/// intended instantiation, `Ratio<i64>`/`Ratio<i128>` work for small inputs
/// (and panic on overflow). Floating point types do not implement `Ord` and
/// are intentionally excluded.
pub trait Scalar:
    Clone + Ord + Num + Signed + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone + Ord + Num + Signed + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn sum<'a, T: Scalar>(xs: impl IntoIterator<Item = &'a T>) -> T {
    xs.into_iter().fold(T::zero(), |acc, x| acc + x.clone())
}

/// `T` from a small integer, without requiring `FromPrimitive`.
pub fn from_int<T: Scalar>(n: i64) -> T {
    let mut acc = T::zero();
    let mut base = T::one();
    let mut m = n.unsigned_abs();
    while m > 0 {
        if m & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        m >>= 1;
    }
    if n < 0 {
        -acc
    } else {
        acc
    }
}
