use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Non-negative fraction kept unreduced between operations; reduction costs
/// a gcd and the sweeps only multiply and compare.
#[derive(Clone, Debug)]
pub(crate) struct Frac {
    num: BigUint,
    den: BigUint,
}

impl Frac {
    pub fn one() -> Self {
        Self { num: BigUint::one(), den: BigUint::one() }
    }

    pub fn reduced(num: BigUint, den: BigUint) -> Self {
        debug_assert!(!den.is_zero());
        let g = num.gcd(&den);
        if g.is_one() || g.is_zero() {
            Self { num, den }
        } else {
            Self { num: num / &g, den: den / g }
        }
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn mul(&self, other: &Frac) -> Frac {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        Frac { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    pub fn mul_ratio(&self, num: u64, den: u64) -> Frac {
        Frac::reduced(&self.num * num, &self.den * den)
    }

    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num.clone()), BigInt::from(self.den.clone()))
    }

    pub fn cmp(&self, other: &Frac) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

/// Whether finite `x` beats the running minimum `best` (`None` is +∞).
pub(crate) fn improves(x: &Frac, best: &Option<Frac>) -> bool {
    match best {
        None => true,
        Some(y) => x.cmp(y) == Ordering::Less,
    }
}
