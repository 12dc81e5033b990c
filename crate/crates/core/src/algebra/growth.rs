//! Hilbert series reconstruction and GK-dimension estimates.

use std::collections::VecDeque;
use std::fmt;

use num::{BigInt, BigRational, ToPrimitive, Zero};

use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::kernel::upoly::{berlekamp_massey, UPoly};
use crate::kernel::CycloScalar;

/// Largest power of `1 − t` tried by the pole-only fallback.
const FALLBACK_MAX_POLE: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Confidence {
    Heuristic,
    Reconstructed,
    Certified,
}

impl Confidence {
    pub fn as_str(self) -> &'static str {
        match self {
            Confidence::Certified => "CERTIFIED",
            Confidence::Reconstructed => "RECONSTRUCTED",
            Confidence::Heuristic => "HEURISTIC",
        }
    }
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GkDim {
    Exact(u32),
    /// Exponential growth.
    Infinite,
    /// The zero module.
    NegInfinity,
    Approx(f64),
    Unknown,
}

impl GkDim {
    pub fn exact(self) -> Option<u32> {
        match self {
            GkDim::Exact(d) => Some(d),
            _ => None,
        }
    }

    /// Value usable in differences: `−∞` is `None`, approximations are rounded.
    pub fn as_f64(self) -> Option<f64> {
        match self {
            GkDim::Exact(d) => Some(d as f64),
            GkDim::Approx(x) => Some(x),
            GkDim::Infinite => Some(f64::INFINITY),
            GkDim::NegInfinity | GkDim::Unknown => None,
        }
    }
}

impl fmt::Display for GkDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GkDim::Exact(d) => write!(f, "{d}"),
            GkDim::Infinite => f.write_str("inf"),
            GkDim::NegInfinity => f.write_str("-inf"),
            GkDim::Approx(x) => write!(f, "~{x:.3}"),
            GkDim::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// Dimension counts of an algebra or module generated in degrees
    /// `≤ max_generator_degree`; a zero run that long certifies a zero tail.
    Hilbert { max_generator_degree: u32 },
    Trace,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthEstimate {
    pub coeffs: Vec<CycloScalar>,
    /// Reduced `(numerator, denominator)` with `denominator(0) = 1`.
    pub rational: Option<(UPoly, UPoly)>,
    pub pole_order_at_1: Option<u32>,
    pub gkdim: GkDim,
    pub confidence: Confidence,
    pub finite_dimensional: bool,
}

impl GrowthEstimate {
    /// Re-expands the rational function over the stored window.
    pub fn re_expands(&self) -> bool {
        match &self.rational {
            Some((n, d)) => n.series_div(d, self.coeffs.len()) == self.coeffs,
            None => true,
        }
    }
}

/// Reconstruction for a dimension sequence of an algebra generated in degree 1.
pub fn hilbert_reconstruct(coeffs: &[CycloScalar], guard: usize) -> Result<GrowthEstimate> {
    reconstruct_series(
        coeffs,
        guard,
        SeriesKind::Hilbert {
            max_generator_degree: 1,
        },
    )
}

/// Finds an exact rational generating function for a window of coefficients.
///
/// Berlekamp–Massey runs on all but the final `guard` terms and must predict
/// them. Failing that, series of the form `P(t)/(1−t)^k` whose numerator
/// vanishes on the last `guard` positions are accepted. Otherwise the growth
/// is estimated from a log-log fit of the partial sums.
pub fn reconstruct_series(
    coeffs: &[CycloScalar],
    guard: usize,
    kind: SeriesKind,
) -> Result<GrowthEstimate> {
    if coeffs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let coeffs = coeffs.to_vec();
    let len = coeffs.len();
    let hilbert = matches!(kind, SeriesKind::Hilbert { .. });

    let last_nonzero = coeffs.iter().rposition(|c| !c.is_zero());
    if hilbert {
        let max_gen = match kind {
            SeriesKind::Hilbert {
                max_generator_degree,
            } => max_generator_degree.max(1) as usize,
            SeriesKind::Trace => unreachable!(),
        };
        let zeros = match last_nonzero {
            Some(k) => len - 1 - k,
            None => len,
        };
        if last_nonzero.is_none() {
            return Ok(GrowthEstimate {
                coeffs,
                rational: Some((UPoly::zero(), UPoly::one())),
                pole_order_at_1: Some(0),
                gkdim: GkDim::NegInfinity,
                confidence: if zeros >= max_gen {
                    Confidence::Certified
                } else {
                    Confidence::Reconstructed
                },
                finite_dimensional: true,
            });
        }
        if zeros >= max_gen {
            let num = UPoly::new(coeffs.clone());
            return Ok(GrowthEstimate {
                coeffs,
                rational: Some((num, UPoly::one())),
                pole_order_at_1: Some(0),
                gkdim: GkDim::Exact(0),
                confidence: Confidence::Certified,
                finite_dimensional: true,
            });
        }
    }

    if let Some((num, den)) = fit_berlekamp_massey(&coeffs, guard).or_else(|| fit_pole_only(&coeffs, guard)) {
        return Ok(finish_rational(coeffs, num, den, hilbert, Confidence::Reconstructed));
    }

    Ok(GrowthEstimate {
        gkdim: if hilbert {
            log_regression(&coeffs).map_or(GkDim::Unknown, GkDim::Approx)
        } else {
            GkDim::Unknown
        },
        coeffs,
        rational: None,
        pole_order_at_1: None,
        confidence: Confidence::Heuristic,
        finite_dimensional: false,
    })
}

fn finish_rational(
    coeffs: Vec<CycloScalar>,
    num: UPoly,
    den: UPoly,
    hilbert: bool,
    confidence: Confidence,
) -> GrowthEstimate {
    let g = num.gcd(&den);
    let mut num = num.div_exact(&g).expect("gcd divides numerator");
    let mut den = den.div_exact(&g).expect("gcd divides denominator");
    let c0 = den.coeff(0).inv().expect("denominator constant term");
    num = num.scale(&c0);
    den = den.scale(&c0);
    let pole = den.multiplicity_at_one();
    let polynomial = den.degree() == Some(0);
    let gkdim = if num.is_zero() {
        GkDim::NegInfinity
    } else if !hilbert || den.is_cyclotomic_product() {
        GkDim::Exact(pole)
    } else {
        GkDim::Infinite
    };
    GrowthEstimate {
        coeffs,
        rational: Some((num, den)),
        pole_order_at_1: Some(pole),
        gkdim,
        confidence,
        finite_dimensional: polynomial,
    }
}

fn fit_berlekamp_massey(coeffs: &[CycloScalar], guard: usize) -> Option<(UPoly, UPoly)> {
    let len = coeffs.len();
    if len <= guard {
        return None;
    }
    let fit = &coeffs[..len - guard];
    let (c, l) = berlekamp_massey(fit);
    if 2 * l > fit.len() {
        return None;
    }
    let num = UPoly::new(coeffs.to_vec()).mul(&c).truncate(l.max(1));
    (num.series_div(&c, len) == coeffs).then_some((num, c))
}

fn fit_pole_only(coeffs: &[CycloScalar], guard: usize) -> Option<(UPoly, UPoly)> {
    let len = coeffs.len();
    if len <= guard {
        return None;
    }
    let s = UPoly::new(coeffs.to_vec());
    let mut den = UPoly::one();
    for _ in 0..=FALLBACK_MAX_POLE {
        let p = s.mul(&den).truncate(len);
        if p.degree().is_none_or(|d| d < len - guard) {
            return Some((p, den));
        }
        den = den.mul(&UPoly::one_minus_t());
    }
    None
}

fn log_regression(coeffs: &[CycloScalar]) -> Option<f64> {
    let mut partial = BigRational::zero();
    let mut pts = Vec::new();
    let len = coeffs.len();
    let start = (len - len / 3).max(1);
    for (k, c) in coeffs.iter().enumerate() {
        partial += c.as_rational()?;
        if k >= start && partial > BigRational::zero() {
            pts.push(((k as f64).ln(), partial.to_f64()?.ln()));
        }
    }
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// GK-dimension of a presented algebra from its Hilbert function.
///
/// When the rewriting system is complete in every degree, normal words are
/// counted exactly far beyond the window with an automaton over the leading
/// words, which makes the reconstructed series certified.
pub fn gk_estimate(a: &GradedAlgebra, guard: usize) -> Result<GrowthEstimate> {
    let dims: Vec<CycloScalar> = a
        .dims()?
        .into_iter()
        .map(|d| CycloScalar::from_i64(d as i64))
        .collect();
    let kind = SeriesKind::Hilbert {
        max_generator_degree: a.max_generator_degree(),
    };
    let windowed = reconstruct_series(&dims, guard, kind)?;
    if windowed.confidence == Confidence::Certified
        || a.has_degree_zero_generators()
        || !a.rewriting_system().is_fully_complete()
    {
        return Ok(windowed);
    }
    let leads: Vec<&[u16]> = a.rewriting_system().leads().map(|w| w.letters()).collect();
    let automaton = Automaton::build(&leads, a.num_generators());
    let alive = automaton.alive_count();
    let terms = 2 * alive * a.max_generator_degree().max(1) as usize + guard + 2;
    let counts = automaton.count_by_degree(a.degrees(), terms.max(dims.len()));
    let long: Vec<CycloScalar> = counts
        .into_iter()
        .map(|c| CycloScalar::from_rational(BigRational::from_integer(c)))
        .collect();
    if long[..dims.len()] != dims[..] {
        return Err(Error::Inconsistent(
            "automaton word counts disagree with normal-word bases".into(),
        ));
    }
    let (c, l) = berlekamp_massey(&long);
    let num = UPoly::new(long.clone()).mul(&c).truncate(l.max(1));
    let mut est = finish_rational(long, num, c, true, Confidence::Certified);
    if !est.re_expands() {
        return Err(Error::Inconsistent("exact series failed to re-expand".into()));
    }
    est.coeffs = dims;
    Ok(est)
}

/// Aho–Corasick automaton recognising words that avoid a set of patterns.
struct Automaton {
    next: Vec<Vec<usize>>,
    dead: Vec<bool>,
}

impl Automaton {
    fn build(patterns: &[&[u16]], alphabet: usize) -> Automaton {
        let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet]];
        let mut terminal = vec![false];
        for p in patterns {
            let mut v = 0;
            for &l in p.iter() {
                v = match children[v][l as usize] {
                    Some(c) => c,
                    None => {
                        children.push(vec![None; alphabet]);
                        terminal.push(false);
                        let c = children.len() - 1;
                        children[v][l as usize] = Some(c);
                        c
                    }
                };
            }
            terminal[v] = true;
        }
        let n = children.len();
        let mut fail = vec![0usize; n];
        let mut next = vec![vec![0usize; alphabet]; n];
        let mut dead = terminal.clone();
        let mut queue = VecDeque::new();
        for c in 0..alphabet {
            match children[0][c] {
                Some(v) => {
                    next[0][c] = v;
                    queue.push_back(v);
                }
                None => next[0][c] = 0,
            }
        }
        while let Some(v) = queue.pop_front() {
            dead[v] = dead[v] || dead[fail[v]];
            for c in 0..alphabet {
                match children[v][c] {
                    Some(u) => {
                        fail[u] = next[fail[v]][c];
                        next[v][c] = u;
                        queue.push_back(u);
                    }
                    None => next[v][c] = next[fail[v]][c],
                }
            }
        }
        Automaton { next, dead }
    }

    fn alive_count(&self) -> usize {
        self.dead.iter().filter(|d| !**d).count()
    }

    /// Number of pattern-avoiding words of each weighted degree `0..terms`.
    fn count_by_degree(&self, degrees: &[u32], terms: usize) -> Vec<BigInt> {
        let n = self.next.len();
        let mut f: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; terms];
        if !self.dead[0] {
            f[0][0] = BigInt::from(1);
        }
        for d in 0..terms {
            for s in 0..n {
                if self.dead[s] || f[d][s].is_zero() {
                    continue;
                }
                let val = f[d][s].clone();
                for (l, &dl) in degrees.iter().enumerate() {
                    let t = self.next[s][l];
                    let nd = d + dl as usize;
                    if self.dead[t] || nd >= terms || dl == 0 {
                        continue;
                    }
                    f[nd][t] += &val;
                }
            }
        }
        f.into_iter().map(|row| row.into_iter().sum()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<CycloScalar> {
        v.iter().map(|&x| CycloScalar::from_i64(x)).collect()
    }

    #[test]
    fn recovers_down_up_series() {
        let den = UPoly::one_minus_t().pow(2).mul(&UPoly::from_i64(&[1, 0, -1]));
        let s = UPoly::one().series_div(&den, 15);
        let est = hilbert_reconstruct(&s, 5).unwrap();
        assert_eq!(est.pole_order_at_1, Some(3));
        assert_eq!(est.gkdim, GkDim::Exact(3));
        assert_eq!(est.rational.as_ref().unwrap().1, den);
        assert_eq!(est.confidence, Confidence::Reconstructed);
        assert!(est.re_expands());
    }

    #[test]
    fn alternating_trace_series() {
        let s = ints(&[1, 0, -1, 0, 1, 0, -1, 0, 1, 0, -1, 0, 1]);
        let est = reconstruct_series(&s, 5, SeriesKind::Trace).unwrap();
        assert_eq!(est.pole_order_at_1, Some(0));
        assert_eq!(est.rational.unwrap().1, UPoly::from_i64(&[1, 0, 1]));
    }

    #[test]
    fn zero_tail_certifies() {
        let est = hilbert_reconstruct(&ints(&[1, 1, 0, 0, 0]), 5).unwrap();
        assert_eq!(est.gkdim, GkDim::Exact(0));
        assert_eq!(est.confidence, Confidence::Certified);
        assert!(est.finite_dimensional);
    }

    #[test]
    fn zero_module() {
        let est = hilbert_reconstruct(&ints(&[0, 0, 0]), 5).unwrap();
        assert_eq!(est.gkdim, GkDim::NegInfinity);
    }

    #[test]
    fn exponential_growth_is_infinite() {
        let s: Vec<i64> = (0..14).map(|n| 1i64 << n).collect();
        let est = hilbert_reconstruct(&ints(&s), 5).unwrap();
        assert_eq!(est.gkdim, GkDim::Infinite);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(hilbert_reconstruct(&[], 5), Err(Error::EmptyInput));
    }

    #[test]
    fn pole_only_fallback() {
        // 1 + 2t + 3t^2 + ... with a short numerator perturbation at degree 3
        let mut s: Vec<i64> = (1..=11).collect();
        s[3] += 1;
        let est = hilbert_reconstruct(&ints(&s), 5).unwrap();
        assert_eq!(est.pole_order_at_1, Some(2));
        assert!(est.re_expands());
    }

    #[test]
    fn heuristic_when_nothing_fits() {
        let s: Vec<i64> = vec![1, 3, 2, 7, 1, 8, 2, 8, 1, 8, 2, 8];
        let est = hilbert_reconstruct(&ints(&s), 5).unwrap();
        assert_eq!(est.confidence, Confidence::Heuristic);
        assert!(matches!(est.gkdim, GkDim::Approx(_)));
    }

    #[test]
    fn automaton_counts_avoiding_words() {
        // avoid "yx" over {x, y}: words x^a y^b
        let aut = Automaton::build(&[&[1, 0]], 2);
        let counts = aut.count_by_degree(&[1, 1], 6);
        let expect: Vec<BigInt> = (1..=6).map(BigInt::from).collect();
        assert_eq!(counts, expect);
    }
}
