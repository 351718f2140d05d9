//! Exact rationals stored as `Ratio<i64>` while they fit, promoted to
//! arbitrary precision on overflow.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

/// Invariant: the `Big` variant never holds a value representable as `Small`,
/// so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

fn demote(b: BigRational) -> Rational {
    match (b.numer().to_i64(), b.denom().to_i64()) {
        (Some(n), Some(d)) => Rational::Small(Ratio::new_raw(n, d)),
        _ => Rational::Big(Box::new(b)),
    }
}

fn big_of(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        demote(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        demote(BigRational::from_integer(n.into()))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(r) => big_of(r),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(r) => BigInt::from(*r.numer()),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(r) => BigInt::from(*r.denom()),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_integer(),
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_negative(),
            Rational::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rational {
        match self {
            Rational::Small(r) if *r.numer() != i64::MIN => Rational::Small(r.recip()),
            _ => demote(self.to_big().recip()),
        }
    }
}

macro_rules! small_or_big {
    ($a:expr, $b:expr, $checked:ident, $op:tt) => {
        match ($a, $b) {
            (Rational::Small(x), Rational::Small(y)) => match x.$checked(y) {
                Some(r) => Rational::Small(r),
                None => demote(big_of(x) $op big_of(y)),
            },
            (x, y) => demote(x.to_big() $op y.to_big()),
        }
    };
}

/// Both operands as integers, when they are small integers.
fn small_ints(a: &Rational, b: &Rational) -> Option<(i64, i64)> {
    match (a, b) {
        (Rational::Small(x), Rational::Small(y)) if *x.denom() == 1 && *y.denom() == 1 => {
            Some((*x.numer(), *y.numer()))
        }
        _ => None,
    }
}

fn int(n: i64) -> Rational {
    Rational::Small(Ratio::new_raw(n, 1))
}

fn add_ref(a: &Rational, b: &Rational) -> Rational {
    if let Some(s) = small_ints(a, b).and_then(|(x, y)| x.checked_add(y)) {
        return int(s);
    }
    small_or_big!(a, b, checked_add, +)
}

fn sub_ref(a: &Rational, b: &Rational) -> Rational {
    if let Some(s) = small_ints(a, b).and_then(|(x, y)| x.checked_sub(y)) {
        return int(s);
    }
    small_or_big!(a, b, checked_sub, -)
}

fn mul_ref(a: &Rational, b: &Rational) -> Rational {
    if let Some(s) = small_ints(a, b).and_then(|(x, y)| x.checked_mul(y)) {
        return int(s);
    }
    small_or_big!(a, b, checked_mul, *)
}

fn div_ref(a: &Rational, b: &Rational) -> Rational {
    assert!(!b.is_zero(), "division by zero");
    small_or_big!(a, b, checked_div, /)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $f:ident, $tra:ident, $ma:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $f(self, rhs)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $f(self, &rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $f(&self, rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $f(&self, &rhs)
            }
        }
        impl $tra<&Rational> for Rational {
            fn $ma(&mut self, rhs: &Rational) {
                *self = $f(self, rhs);
            }
        }
        impl $tra<Rational> for Rational {
            fn $ma(&mut self, rhs: Rational) {
                *self = $f(self, &rhs);
            }
        }
    };
}

binop!(Add, add, add_ref, AddAssign, add_assign);
binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
binop!(Mul, mul, mul_ref, MulAssign, mul_assign);
binop!(Div, div, div_ref, DivAssign, div_assign);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(r) if *r.numer() != i64::MIN => Rational::Small(-r),
            _ => demote(-self.to_big()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::Small(Ratio::zero())
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(r) if r.is_zero())
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::Small(Ratio::one())
    }
    fn is_one(&self) -> bool {
        matches!(self, Rational::Small(r) if r.is_one())
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a), Rational::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::Small(Ratio::from_integer(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic() {
        let a = Rational::new(1, 2);
        let b = Rational::new(1, 3);
        assert_eq!(&a + &b, Rational::new(5, 6));
        assert_eq!(&a - &b, Rational::new(1, 6));
        assert_eq!(&a * &b, Rational::new(1, 6));
        assert_eq!(&a / &b, Rational::new(3, 2));
        assert_eq!((-&a).abs(), a);
        assert_eq!(b.recip(), Rational::from(3));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from(i64::MAX);
        let sum = &big + &big;
        assert!(matches!(sum, Rational::Big(_)));
        let back = &sum - &big;
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(_)));
        let m = Rational::from(i64::MIN);
        assert_eq!(-(-&m), m);
        assert_eq!(m.recip() * &m, Rational::one());
    }

    #[test]
    fn display() {
        assert_eq!(Rational::new(-6, 4).to_string(), "-3/2");
        assert_eq!(Rational::from(7).to_string(), "7");
    }
}
