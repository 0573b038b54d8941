use std::fmt;
use std::ops::{Add, Neg};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// An element of Q/Z, kept as `num/den` in lowest terms with
/// `0 <= num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QZ {
    num: u64,
    den: u64,
}

impl QZ {
    pub const ZERO: QZ = QZ { num: 0, den: 1 };

    pub fn new(num: i128, den: u64) -> QZ {
        assert!(den > 0, "zero denominator");
        let r = num.rem_euclid(den as i128) as u64;
        let g = r.gcd(&den);
        QZ { num: r / g, den: den / g }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Additive order.
    pub fn order(self) -> u64 {
        self.den
    }
}

impl Add for QZ {
    type Output = QZ;
    fn add(self, rhs: QZ) -> QZ {
        let den = self.den.lcm(&rhs.den);
        let num = self.num as i128 * (den / self.den) as i128 + rhs.num as i128 * (den / rhs.den) as i128;
        QZ::new(num, den)
    }
}

impl Neg for QZ {
    type Output = QZ;
    fn neg(self) -> QZ {
        QZ::new(-(self.num as i128), self.den)
    }
}

impl fmt::Display for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = QZ::new(1, 2);
        assert_eq!(a + a, QZ::ZERO);
        assert_eq!(QZ::new(1, 3) + QZ::new(1, 6), a);
        assert_eq!(-QZ::new(1, 3), QZ::new(2, 3));
        assert_eq!(QZ::new(-4, 6).to_string(), "1/3");
        assert_eq!(QZ::new(3, 4).order(), 4);
    }
}
