//! Univariate polynomials and power series over cyclotomic fields.

use std::fmt;

use super::scalar::CycloScalar;

/// Dense univariate polynomial, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<CycloScalar>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<CycloScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UPoly::new(coeffs.iter().map(|&c| CycloScalar::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        UPoly::default()
    }

    pub fn one() -> Self {
        UPoly::from_i64(&[1])
    }

    /// `1 − t`.
    pub fn one_minus_t() -> Self {
        UPoly::from_i64(&[1, -1])
    }

    pub fn coeffs(&self) -> &[CycloScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> CycloScalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![CycloScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &CycloScalar) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, k: u32) -> UPoly {
        let mut out = UPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![CycloScalar::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &(&c * dj);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Exact quotient if `d` divides `self`.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Normalized so the constant term is 1 when nonzero, otherwise monic.
    pub fn normalized(&self) -> UPoly {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) if !self.coeffs[0].is_zero() => self.scale(&c.inv().unwrap()),
            Some(_) => self.scale(&self.coeffs.last().unwrap().inv().unwrap()),
            None => UPoly::zero(),
        }
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.normalized()
    }

    pub fn eval(&self, x: &CycloScalar) -> CycloScalar {
        let mut acc = CycloScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Multiplicity of `t = 1` as a root.
    pub fn multiplicity_at_one(&self) -> u32 {
        if self.is_zero() {
            return 0;
        }
        let mut p = self.clone();
        let mut k = 0;
        let f = UPoly::one_minus_t();
        while let Some(q) = p.div_exact(&f) {
            p = q;
            k += 1;
        }
        k
    }

    /// Whether every root is a root of unity, checked by stripping the
    /// rational cyclotomic factors `Φ_k` up to degree.
    pub fn is_cyclotomic_product(&self) -> bool {
        let Some(deg) = self.degree() else {
            return false;
        };
        if !self.is_rational() || self.coeffs[0].is_zero() {
            return false;
        }
        let mut p = self.clone();
        let mut k = 1u32;
        while p.degree().unwrap_or(0) > 0 {
            if k as usize > 8 * deg.max(1) * deg.max(1) + 2 {
                return false;
            }
            let phi = UPoly::from_i64(&super::scalar::cyclotomic_polynomial(k));
            if phi.degree().unwrap() <= p.degree().unwrap() {
                if let Some(q) = p.div_exact(&phi) {
                    p = q;
                    continue;
                }
            }
            k += 1;
        }
        true
    }

    /// First `n` coefficients of the power series `self / den`.
    pub fn series_div(&self, den: &UPoly, n: usize) -> Vec<CycloScalar> {
        let d0 = den.coeff(0).inv().expect("denominator with zero constant term");
        let mut out: Vec<CycloScalar> = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = self.coeff(i);
            for j in 1..=i.min(den.degree().unwrap_or(0)) {
                let dj = den.coeff(j);
                if !dj.is_zero() {
                    s -= &(&dj * &out[i - j]);
                }
            }
            out.push(&s * &d0);
        }
        out
    }

    /// Truncates to terms of degree below `n`.
    pub fn truncate(&self, n: usize) -> UPoly {
        UPoly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let s = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if c == &CycloScalar::from_i64(-1) {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            parts.push(s);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Berlekamp–Massey: shortest connection polynomial `C` (with `C(0) = 1`)
/// such that `Σ_j C_j s_{i-j} = 0` for all `i ≥ deg`, together with its
/// linear complexity `ℓ`.
pub fn berlekamp_massey(s: &[CycloScalar]) -> (UPoly, usize) {
    let mut c = vec![CycloScalar::one()];
    let mut b = vec![CycloScalar::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = CycloScalar::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            if !c[i].is_zero() {
                d += &(&c[i] * &s[n - i]);
            }
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d * &bd.inv().unwrap();
        let t = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, CycloScalar::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            if !bi.is_zero() {
                c[i + m] -= &(&coef * bi);
            }
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = t;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.truncate(l + 1);
    (UPoly::new(c), l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = UPoly::from_i64(&[1, 0, -1]); // 1 - t^2
        let b = UPoly::one_minus_t();
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, UPoly::from_i64(&[1, 1]));
        assert_eq!(a.gcd(&UPoly::from_i64(&[1, -2, 1])), b);
    }

    #[test]
    fn multiplicity_at_one() {
        let p = UPoly::one_minus_t().pow(2).mul(&UPoly::from_i64(&[1, 0, -1]));
        assert_eq!(p.multiplicity_at_one(), 3);
        assert_eq!(UPoly::from_i64(&[1, 0, 1]).multiplicity_at_one(), 0);
    }

    #[test]
    fn cyclotomic_products() {
        assert!(UPoly::from_i64(&[1, 0, 1]).is_cyclotomic_product());
        assert!(UPoly::one_minus_t().pow(3).is_cyclotomic_product());
        assert!(!UPoly::from_i64(&[1, -2]).is_cyclotomic_product());
        assert!(!UPoly::from_i64(&[1, -1, -1]).is_cyclotomic_product());
    }

    #[test]
    fn berlekamp_massey_recovers_denominator() {
        let den = UPoly::one_minus_t().pow(2).mul(&UPoly::from_i64(&[1, 0, -1]));
        let s = UPoly::one().series_div(&den, 16);
        let (c, l) = berlekamp_massey(&s);
        assert_eq!(l, 4);
        assert_eq!(c, den);
    }

    #[test]
    fn series_display() {
        assert_eq!(UPoly::from_i64(&[1, -1, 0, 2]).to_string(), "1 - t + 2*t^3");
    }
}
