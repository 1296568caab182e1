use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Ground ring: the integers (characteristic 0) or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Coefficients {
    characteristic: u32,
}

impl Coefficients {
    pub const INTEGERS: Coefficients = Coefficients { characteristic: 0 };
    pub const F2: Coefficients = Coefficients { characteristic: 2 };
    pub const F3: Coefficients = Coefficients { characteristic: 3 };

    pub fn new(characteristic: u32) -> Result<Self> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(Coefficients { characteristic })
        } else {
            Err(Error::BadCharacteristic(characteristic))
        }
    }

    pub fn characteristic(self) -> u32 {
        self.characteristic
    }

    /// Canonical representative: unchanged over the integers, in `0..p` mod p.
    pub fn reduce(self, c: i64) -> i64 {
        match self.characteristic {
            0 => c,
            p => c.rem_euclid(p as i64),
        }
    }

    pub fn mul(self, a: i64, b: i64) -> i64 {
        match self.characteristic {
            0 => a.checked_mul(b).expect("integer coefficient overflow"),
            p => ((a as i128 * b as i128).rem_euclid(p as i128)) as i64,
        }
    }

    pub fn add(self, a: i64, b: i64) -> i64 {
        match self.characteristic {
            0 => a.checked_add(b).expect("integer coefficient overflow"),
            _ => self.reduce(a + b),
        }
    }
}

impl Default for Coefficients {
    fn default() -> Self {
        Coefficients::INTEGERS
    }
}

impl TryFrom<u32> for Coefficients {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Coefficients::new(p)
    }
}

impl From<Coefficients> for u32 {
    fn from(c: Coefficients) -> u32 {
        c.characteristic
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d: &u32| d * d <= n).all(|d| n % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_zero_and_primes_only() {
        assert!(Coefficients::new(0).is_ok());
        assert!(Coefficients::new(2).is_ok());
        assert!(Coefficients::new(7).is_ok());
        assert_eq!(Coefficients::new(4), Err(Error::BadCharacteristic(4)));
        assert_eq!(Coefficients::new(1), Err(Error::BadCharacteristic(1)));
    }

    #[test]
    fn reduction() {
        assert_eq!(Coefficients::F3.reduce(-1), 2);
        assert_eq!(Coefficients::F2.add(1, 1), 0);
        assert_eq!(Coefficients::INTEGERS.reduce(-5), -5);
    }
}
