use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::Coefficients;
use crate::{Error, Result};

/// Finite linear combination of basis elements with integer or prime-field
/// coefficients. Zero coefficients are never stored; iteration follows the
/// basis order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalSum<B: Ord> {
    coeffs: Coefficients,
    terms: BTreeMap<B, i64>,
}

impl<B: Ord> FormalSum<B> {
    pub fn zero(coeffs: Coefficients) -> Self {
        FormalSum { coeffs, terms: BTreeMap::new() }
    }

    pub fn single(coeffs: Coefficients, basis: B) -> Self {
        Self::term(coeffs, basis, 1)
    }

    pub fn term(coeffs: Coefficients, basis: B, coeff: i64) -> Self {
        let mut s = Self::zero(coeffs);
        s.add_term(basis, coeff);
        s
    }

    pub fn from_terms(coeffs: Coefficients, terms: impl IntoIterator<Item = (B, i64)>) -> Self {
        let mut s = Self::zero(coeffs);
        for (b, c) in terms {
            s.add_term(b, c);
        }
        s
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeffs
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

    pub fn coeff(&self, basis: &B) -> i64 {
        self.terms.get(basis).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, i64> {
        self.terms.iter()
    }

    pub fn basis(&self) -> btree_map::Keys<'_, B, i64> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, basis: B, coeff: i64) {
        let coeff = self.coeffs.reduce(coeff);
        if coeff == 0 {
            return;
        }
        match self.terms.entry(basis) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                let c = self.coeffs.add(*o.get(), coeff);
                if c == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = c;
                }
            }
        }
    }

    /// `self += scale * other`.
    ///
    /// # Panics
    /// If the characteristics differ.
    pub fn add_scaled(&mut self, other: &Self, scale: i64)
    where
        B: Clone,
    {
        assert_eq!(self.coeffs, other.coeffs, "characteristic mismatch");
        for (b, &c) in &other.terms {
            self.add_term(b.clone(), self.coeffs.mul(c, scale));
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self>
    where
        B: Clone,
    {
        self.check(other)?;
        let mut s = self.clone();
        s.add_scaled(other, 1);
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self>
    where
        B: Clone,
    {
        self.check(other)?;
        let mut s = self.clone();
        s.add_scaled(other, -1);
        Ok(s)
    }

    pub fn scale(&self, c: i64) -> Self
    where
        B: Clone,
    {
        Self::from_terms(
            self.coeffs,
            self.terms.iter().map(|(b, &x)| (b.clone(), self.coeffs.mul(x, c))),
        )
    }

    pub fn neg(&self) -> Self
    where
        B: Clone,
    {
        self.scale(-1)
    }

    /// Linear extension of a basis map.
    pub fn map_basis<C: Ord>(&self, mut f: impl FnMut(&B) -> C) -> FormalSum<C> {
        FormalSum::from_terms(self.coeffs, self.terms.iter().map(|(b, &c)| (f(b), c)))
    }

    /// Linear extension of a map from basis elements to sums.
    pub fn flat_map<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> FormalSum<C>) -> FormalSum<C> {
        let mut out = FormalSum::zero(self.coeffs);
        for (b, &c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Drop terms failing the predicate.
    pub fn filter(&self, mut keep: impl FnMut(&B) -> bool) -> Self
    where
        B: Clone,
    {
        FormalSum {
            coeffs: self.coeffs,
            terms: self.terms.iter().filter(|(b, _)| keep(b)).map(|(b, &c)| (b.clone(), c)).collect(),
        }
    }

    /// Reinterpret over another characteristic (reducing integer coefficients).
    pub fn with_coefficients(&self, coeffs: Coefficients) -> Result<Self>
    where
        B: Clone,
    {
        if self.coeffs.characteristic() != 0 && self.coeffs != coeffs {
            return Err(Error::CharacteristicMismatch(
                self.coeffs.characteristic(),
                coeffs.characteristic(),
            ));
        }
        Ok(Self::from_terms(coeffs, self.terms.iter().map(|(b, &c)| (b.clone(), c))))
    }

    pub fn sum_of_coefficients(&self) -> i64 {
        self.terms.values().fold(0, |acc, &c| self.coeffs.add(acc, c))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.coeffs == other.coeffs {
            Ok(())
        } else {
            Err(Error::CharacteristicMismatch(
                self.coeffs.characteristic(),
                other.coeffs.characteristic(),
            ))
        }
    }
}

impl<B: Ord> IntoIterator for FormalSum<B> {
    type Item = (B, i64);
    type IntoIter = btree_map::IntoIter<B, i64>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, B: Ord> IntoIterator for &'a FormalSum<B> {
    type Item = (&'a B, &'a i64);
    type IntoIter = btree_map::Iter<'a, B, i64>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<B: Ord + fmt::Debug> fmt::Debug for FormalSum<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match *c {
                1 if i == 0 => write!(f, "{b:?}")?,
                1 => write!(f, "+ {b:?}")?,
                -1 => write!(f, "- {b:?}")?,
                c if c < 0 => write!(f, "- {}·{b:?}", -c)?,
                c if i == 0 => write!(f, "{c}·{b:?}")?,
                c => write!(f, "+ {c}·{b:?}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Term<B> {
    coeff: i64,
    basis: B,
}

impl<B: Ord + Serialize> Serialize for FormalSum<B> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<Term<&B>> =
            self.terms.iter().map(|(basis, &coeff)| Term { coeff, basis }).collect();
        let mut st = s.serialize_struct("FormalSum", 2)?;
        st.serialize_field("characteristic", &self.coeffs.characteristic())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de, B: Ord + Deserialize<'de>> Deserialize<'de> for FormalSum<B> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw<B> {
            #[serde(default)]
            characteristic: u32,
            terms: Vec<Term<B>>,
        }
        let raw = Raw::<B>::deserialize(d)?;
        let coeffs = Coefficients::new(raw.characteristic).map_err(de::Error::custom)?;
        Ok(FormalSum::from_terms(coeffs, raw.terms.into_iter().map(|t| (t.basis, t.coeff))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z() -> Coefficients {
        Coefficients::INTEGERS
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = FormalSum::term(z(), "b", 2);
        let b = FormalSum::term(z(), "b", -2);
        assert!(a.add(&b).unwrap().is_zero());
        assert!(a.scale(0).is_zero());
    }

    #[test]
    fn mod_two_doubling_vanishes() {
        let a = FormalSum::single(Coefficients::F2, 7u32);
        assert!(a.add(&a).unwrap().is_zero());
    }

    #[test]
    fn characteristic_mismatch_is_an_error() {
        let a = FormalSum::single(Coefficients::F2, 1u32);
        let b = FormalSum::single(Coefficients::F3, 1u32);
        assert_eq!(a.add(&b), Err(Error::CharacteristicMismatch(2, 3)));
    }

    #[test]
    fn json_envelope_is_sorted() {
        let s = FormalSum::from_terms(z(), [(vec![2, 1], -1), (vec![1, 2], 3)]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"characteristic":0,"terms":[{"coeff":3,"basis":[1,2]},{"coeff":-1,"basis":[2,1]}]}"#
        );
        let back: FormalSum<Vec<u32>> = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }

    fn sum_strategy() -> impl Strategy<Value = FormalSum<u8>> {
        prop::collection::vec((0u8..6, -4i64..5), 0..8)
            .prop_map(|ts| FormalSum::from_terms(Coefficients::INTEGERS, ts))
    }

    proptest! {
        #[test]
        fn abelian_group(a in sum_strategy(), b in sum_strategy(), c in sum_strategy()) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(
                a.add(&b).unwrap().add(&c).unwrap(),
                a.add(&b.add(&c).unwrap()).unwrap()
            );
            prop_assert!(a.add(&a.neg()).unwrap().is_zero());
        }

        #[test]
        fn map_basis_is_linear(a in sum_strategy(), b in sum_strategy(), k in -3i64..4) {
            let f = |x: &u8| x % 3;
            let lhs = a.scale(k).add(&b).unwrap().map_basis(f);
            let rhs = a.map_basis(f).scale(k).add(&b.map_basis(f)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
