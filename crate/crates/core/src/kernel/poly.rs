use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::CycloScalar;
use super::word::Word;

/// An element of the free algebra: a finite map from words to nonzero scalars.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct NcPoly {
    terms: BTreeMap<Word, CycloScalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::monomial(CycloScalar::one(), Word::empty())
    }

    pub fn constant(c: CycloScalar) -> Self {
        NcPoly::monomial(c, Word::empty())
    }

    pub fn word(w: Word) -> Self {
        NcPoly::monomial(CycloScalar::one(), w)
    }

    pub fn monomial(c: CycloScalar, w: Word) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, &c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, CycloScalar)>) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, CycloScalar)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, w: &Word) -> CycloScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: &CycloScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Word, CycloScalar)> {
        self.terms.pop_last()
    }

    /// Largest term in the monomial order.
    pub fn leading(&self) -> Option<(&Word, &CycloScalar)> {
        self.terms.last_key_value()
    }

    /// `Some(d)` when every term has degree `d`; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|w| w.degree() == d).then_some(d)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|w| w.degree()).max()
    }

    pub fn scale(&self, c: &CycloScalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> NcPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => NcPoly::zero(),
        }
    }

    /// `left · self · right` for words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.sandwich(left, right), c.clone()))
                .collect(),
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = match c.as_rational() {
                Some(r) if r < num::Zero::zero() => (true, -c),
                _ => (false, c.clone()),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if w.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&w.display_with(names));
            } else {
                out.push_str(&format!("{}*{}", mag, w.display_with(names)));
            }
        }
        out
    }
}

impl<'b> Add<&'b NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &'b NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl<'b> Sub<&'b NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &'b NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&CycloScalar::from_i64(-1))
    }
}

impl<'b> Mul<&'b NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &'b NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in self.terms() {
            for (v, b) in rhs.terms() {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }
}

impl Add for NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: NcPoly) -> NcPoly {
        &self + &rhs
    }
}

impl Sub for NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: NcPoly) -> NcPoly {
        &self - &rhs
    }
}

impl Mul for NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: NcPoly) -> NcPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: [u32; 2] = [1, 1];

    #[test]
    fn cancellation_drops_terms() {
        let x = NcPoly::word(Word::letter(0, &D));
        let zero = &x - &x;
        assert!(zero.is_zero());
        assert_eq!(zero.homogeneous_degree(), None);
    }

    #[test]
    fn multiplication_concatenates() {
        let x = NcPoly::word(Word::letter(0, &D));
        let y = NcPoly::word(Word::letter(1, &D));
        let comm = &(&x * &y) - &(&y * &x);
        assert_eq!(comm.len(), 2);
        assert_eq!(comm.homogeneous_degree(), Some(2));
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(comm.display_with(&names), "x*y - y*x");
    }
}
