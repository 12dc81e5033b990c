use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Letters = SmallVec<[u16; 12]>;

/// A monomial of the free algebra: a sequence of generator indices.
///
/// Words are ordered by weighted degree, then length, then lexicographically
/// with *lower* generator indices taking precedence (index 0 is the largest
/// letter). The order is a well-order compatible with concatenation on both
/// sides, including when some generators have degree 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    degree: u32,
    letters: Letters,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn new(letters: &[u16], degrees: &[u32]) -> Self {
        let degree = letters.iter().map(|&l| degrees[l as usize]).sum();
        Word {
            degree,
            letters: Letters::from_slice(letters),
        }
    }

    pub fn letter(l: u16, degrees: &[u32]) -> Self {
        Word::new(&[l], degrees)
    }

    pub(crate) fn from_parts(degree: u32, letters: Letters) -> Self {
        Word { degree, letters }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            degree: self.degree + other.degree,
            letters,
        }
    }

    /// `left · self · right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Word {
        let mut letters = Letters::with_capacity(left.len() + self.len() + right.len());
        letters.extend_from_slice(&left.letters);
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&right.letters);
        Word {
            degree: left.degree + self.degree + right.degree,
            letters,
        }
    }

    /// Subword `letters[start..end]`.
    pub fn slice(&self, start: usize, end: usize, degrees: &[u32]) -> Word {
        Word::new(&self.letters[start..end], degrees)
    }

    /// Recomputes the degree from the letters.
    pub fn recomputed_degree(&self, degrees: &[u32]) -> u32 {
        self.letters.iter().map(|&l| degrees[l as usize]).sum()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&names[l as usize]);
            if run > 1 {
                out.push_str(&format!("^{run}"));
            }
            i += run;
        }
        out
    }
}

/// Degree-then-length-then-lex comparison of two words.
pub fn deglex_compare(u: &Word, v: &Word) -> Ordering {
    u.cmp(v)
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.letters.len().cmp(&other.letters.len()))
            .then_with(|| {
                for (a, b) in self.letters.iter().zip(other.letters.iter()) {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.letters.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: [u32; 2] = [1, 1];

    fn w(s: &[u16]) -> Word {
        Word::new(s, &D)
    }

    #[test]
    fn degree_dominates() {
        assert_eq!(deglex_compare(&w(&[0]), &w(&[0, 0])), Ordering::Less);
    }

    #[test]
    fn lex_tie_break_with_x_above_y() {
        // x = 0, y = 1
        assert_eq!(deglex_compare(&w(&[0, 1]), &w(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn empty_words_equal() {
        assert_eq!(deglex_compare(&Word::empty(), &Word::empty()), Ordering::Equal);
        assert_eq!(Word::empty().degree(), 0);
    }

    #[test]
    fn compatible_with_concatenation() {
        let a = w(&[1, 0, 1]);
        let b = w(&[0, 1, 1]);
        let c = w(&[1, 1]);
        assert_eq!(a.cmp(&b), a.concat(&c).cmp(&b.concat(&c)));
        assert_eq!(a.cmp(&b), c.concat(&a).cmp(&c.concat(&b)));
    }

    #[test]
    fn degree_zero_letters_use_length() {
        let degs = [1u32, 0];
        let g = Word::new(&[1], &degs);
        let gg = Word::new(&[1, 1], &degs);
        assert!(g < gg);
        assert!(Word::empty() < g);
        assert!(Word::new(&[0], &degs) > Word::new(&[1, 1, 1], &degs));
    }

    #[test]
    fn display_collapses_powers() {
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(w(&[0, 0, 1]).display_with(&names), "x^2*y");
        assert_eq!(Word::empty().display_with(&names), "1");
    }
}
