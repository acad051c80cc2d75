use std::fmt;
use std::ops::{Add, AddAssign, Mul};

/// An element of `Z/2`: the super-degree of a homogeneous element or map.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parity(u8);

impl Parity {
    pub const EVEN: Parity = Parity(0);
    pub const ODD: Parity = Parity(1);

    pub fn new(v: usize) -> Parity {
        Parity((v % 2) as u8)
    }

    pub fn value(self) -> usize {
        self.0 as usize
    }

    pub fn is_odd(self) -> bool {
        self.0 == 1
    }

    pub fn sum<I: IntoIterator<Item = Parity>>(it: I) -> Parity {
        it.into_iter().fold(Parity::EVEN, |a, b| a + b)
    }

    pub fn both() -> [Parity; 2] {
        [Parity::EVEN, Parity::ODD]
    }
}

impl Add for Parity {
    type Output = Parity;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Parity) -> Parity {
        Parity(self.0 ^ rhs.0)
    }
}

impl AddAssign for Parity {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Parity) {
        self.0 ^= rhs.0;
    }
}

/// Product in `Z/2`; `(a * b).is_odd()` is the Koszul sign `(-1)^{ab}`.
impl Mul for Parity {
    type Output = Parity;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Parity) -> Parity {
        Parity(self.0 & rhs.0)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
