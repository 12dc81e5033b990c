//! Exact elements of cyclotomic fields `Q(ζ_m)`.
//!
//! A [`CycloScalar`] stores its coefficients in the power basis
//! `1, ζ, …, ζ^{φ(m)-1}` reduced modulo the cyclotomic polynomial `Φ_m`.
//! Values of different orders combine by embedding both operands into
//! `Q(ζ_lcm)`, so a scalar only carries the smallest order it was built in.
//! Rational values always have order 1.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::rc::Rc;

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

thread_local! {
    static CYCLOTOMIC: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Coefficients (constant term first) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Rc<Vec<i64>> {
    assert!(m >= 1, "cyclotomic order must be positive");
    if let Some(p) = CYCLOTOMIC.with(|c| c.borrow().get(&m).cloned()) {
        return p;
    }
    // x^m - 1 = prod_{d | m} Φ_d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = exact_monic_division(&num, &div);
        }
    }
    let rc = Rc::new(num);
    CYCLOTOMIC.with(|c| c.borrow_mut().insert(m, rc.clone()));
    rc
}

fn exact_monic_division(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Reduces a coefficient vector modulo `Φ_m` in place and trims trailing zeros.
fn reduce(mut p: Vec<Rational>, m: u32) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(m);
    let deg = phi.len() - 1;
    if p.len() > deg {
        for top in (deg..p.len()).rev() {
            let c = std::mem::replace(&mut p[top], Rational::zero());
            if c.is_zero() {
                continue;
            }
            let base = top - deg;
            for (j, &pj) in phi.iter().take(deg).enumerate() {
                if pj != 0 {
                    p[base + j] -= &c * Rational::from_integer(BigInt::from(pj));
                }
            }
        }
        p.truncate(deg);
    }
    trim(&mut p);
    p
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// An exact element of `Q(ζ_order)`.
#[derive(Clone)]
pub struct CycloScalar {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycloScalar {
    fn from_parts(order: u32, coeffs: Vec<Rational>) -> Self {
        let coeffs = reduce(coeffs, order);
        let order = if coeffs.len() <= 1 { 1 } else { order };
        CycloScalar { order, coeffs }
    }

    pub fn zero() -> Self {
        CycloScalar {
            order: 1,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: Rational) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            CycloScalar {
                order: 1,
                coeffs: vec![r],
            }
        }
    }

    /// `ζ_m^k` for a primitive m-th root of unity `ζ_m = e^{2πi/m}`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1, "root of unity order must be positive");
        let k = k.rem_euclid(m as i64) as usize;
        let mut p = vec![Rational::zero(); k + 1];
        p[k] = Rational::one();
        Self::from_parts(m, p)
    }

    /// Cyclotomic order of the field this value is stored in (1 for rationals).
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        let r = self.as_rational()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Coefficient vector of `self` viewed inside `Q(ζ_target)`; `self.order` must divide `target`.
    pub fn embed(&self, target: u32) -> Vec<Rational> {
        if self.order == target || self.coeffs.len() <= 1 {
            return self.coeffs.clone();
        }
        debug_assert_eq!(target % self.order, 0);
        let step = (target / self.order) as usize;
        let mut p = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        reduce(p, target)
    }

    fn aligned(&self, other: &Self) -> (u32, Vec<Rational>, Vec<Rational>) {
        let l = lcm(self.order, other.order);
        (l, self.embed(l), other.embed(l))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.coeffs.len() == 1 {
            return Some(Self::from_rational(self.coeffs[0].recip()));
        }
        let m = self.order;
        let modulus: Vec<Rational> = cyclotomic_polynomial(m)
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        // extended Euclid tracking only the cofactor of `self`
        let mut r0 = modulus;
        let mut r1 = self.coeffs.clone();
        let mut t0: Vec<Rational> = Vec::new();
        let mut t1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let qt = poly_mul(&q, &t1);
            let t2 = poly_sub(&t0, &qt);
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        debug_assert_eq!(r0.len(), 1, "cyclotomic polynomial is irreducible");
        let c = r0[0].recip();
        let inv: Vec<Rational> = t0.into_iter().map(|x| x * &c).collect();
        Some(Self::from_parts(m, inv))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Integer power; negative exponents invert (panics on zero).
    pub fn powi(&self, exp: i64) -> Self {
        if exp >= 0 {
            self.pow(exp as u32)
        } else {
            self.inv().expect("negative power of zero").pow((-exp) as u32)
        }
    }

    /// Multiplicative order if `self` is a root of unity of order dividing `bound`.
    pub fn root_order(&self, bound: u32) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// A fixed total order on field elements: lexicographic on the
    /// coefficient vectors embedded into a common cyclotomic field.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        let (_, a, b) = self.aligned(other);
        let n = a.len().max(b.len());
        let zero = Rational::zero();
        for i in 0..n {
            let x = a.get(i).unwrap_or(&zero);
            let y = b.get(i).unwrap_or(&zero);
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// A square root of a rational number inside a cyclotomic field, built from
    /// `i = ζ_4`, `√2 = ζ_8 + ζ_8^{-1}` and quadratic Gauss sums for odd primes.
    pub fn sqrt_rational(r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Ok(Self::zero());
        }
        // √(n/d) = √(n·d) / d
        let d = r.denom().clone();
        let nd = r.numer() * &d;
        let negative = nd.is_negative();
        let mut rest = nd.abs();
        let mut square = BigInt::one();
        let mut free_primes: Vec<u64> = Vec::new();
        let mut p = BigInt::from(2u32);
        while &p * &p <= rest {
            let mut count = 0u32;
            while (&rest % &p).is_zero() {
                rest /= &p;
                count += 1;
            }
            for _ in 0..count / 2 {
                square *= &p;
            }
            if count % 2 == 1 {
                free_primes.push(p.to_u64().ok_or(Error::Unsupported(
                    "square root of a rational with a huge prime factor".into(),
                ))?);
            }
            p += 1u32;
        }
        if rest > BigInt::one() {
            free_primes.push(rest.to_u64().ok_or(Error::Unsupported(
                "square root of a rational with a huge prime factor".into(),
            ))?);
        }
        let mut root = Self::from_rational(Rational::new(square, d));
        if negative {
            root = &root * &Self::root_of_unity(4, 1);
        }
        for p in free_primes {
            root = &root * &Self::sqrt_prime(p)?;
        }
        Ok(root)
    }

    fn sqrt_prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Ok(&Self::root_of_unity(8, 1) + &Self::root_of_unity(8, 7));
        }
        if p > 10_000 {
            return Err(Error::Unsupported(format!(
                "square root of prime {p} needs a cyclotomic field that is too large"
            )));
        }
        let m = p as u32;
        let mut gauss = Self::zero();
        for a in 1..p {
            let legendre = if is_quadratic_residue(a, p) { 1 } else { -1 };
            gauss = &gauss + &(&Self::root_of_unity(m, a as i64) * &Self::from_i64(legendre));
        }
        // gauss^2 = (-1)^{(p-1)/2} p
        if p % 4 == 1 {
            Ok(gauss)
        } else {
            Ok(&gauss * &Self::root_of_unity(4, 3))
        }
    }
}

fn is_quadratic_residue(a: u64, p: u64) -> bool {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result == 1
}

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let dn = den.len() - 1;
    let lead_inv = den[dn].recip();
    let mut quot = vec![Rational::zero(); rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dn] * &lead_inv;
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
        }
        quot[i] = c;
    }
    rem.truncate(dn);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(x - y);
    }
    trim(&mut out);
    out
}

impl Default for CycloScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.aligned(other);
        a == b
    }
}

impl Eq for CycloScalar {}

impl From<i64> for CycloScalar {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl From<Rational> for CycloScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'b> Add<&'b CycloScalar> for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &'b CycloScalar) -> CycloScalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.order == rhs.order || self.is_rational() || rhs.is_rational() {
            let order = self.order.max(rhs.order);
            let n = self.coeffs.len().max(rhs.coeffs.len());
            let mut out = Vec::with_capacity(n);
            for i in 0..n {
                let v = match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                };
                out.push(v);
            }
            trim(&mut out);
            let order = if out.len() <= 1 { 1 } else { order };
            return CycloScalar { order, coeffs: out };
        }
        let (l, mut a, b) = self.aligned(rhs);
        if a.len() < b.len() {
            a.resize(b.len(), Rational::zero());
        }
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        CycloScalar::from_parts(l, a)
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(mut self) -> CycloScalar {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl<'b> Sub<&'b CycloScalar> for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &'b CycloScalar) -> CycloScalar {
        self + &(-rhs)
    }
}

impl<'b> Mul<&'b CycloScalar> for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &'b CycloScalar) -> CycloScalar {
        if self.is_zero() || rhs.is_zero() {
            return CycloScalar::zero();
        }
        if self.coeffs.len() == 1 {
            let c = &self.coeffs[0];
            return CycloScalar {
                order: rhs.order,
                coeffs: rhs.coeffs.iter().map(|x| x * c).collect(),
            };
        }
        if rhs.coeffs.len() == 1 {
            let c = &rhs.coeffs[0];
            return CycloScalar {
                order: self.order,
                coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            };
        }
        if self.order == rhs.order {
            return CycloScalar::from_parts(self.order, poly_mul(&self.coeffs, &rhs.coeffs));
        }
        let (l, a, b) = self.aligned(rhs);
        CycloScalar::from_parts(l, poly_mul(&a, &b))
    }
}

impl<'b> Div<&'b CycloScalar> for &CycloScalar {
    type Output = CycloScalar;
    fn div(self, rhs: &'b CycloScalar) -> CycloScalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: &'b CycloScalar) -> CycloScalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<CycloScalar> for &CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: CycloScalar) -> CycloScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        if rhs.is_zero() {
            return;
        }
        if self.order == rhs.order || rhs.is_rational() {
            if self.coeffs.len() < rhs.coeffs.len() {
                self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
            }
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
            trim(&mut self.coeffs);
            if self.coeffs.len() <= 1 {
                self.order = 1;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: &CycloScalar) {
        if rhs.is_zero() {
            return;
        }
        if self.order == rhs.order || rhs.is_rational() {
            if self.coeffs.len() < rhs.coeffs.len() {
                self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
            }
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
            trim(&mut self.coeffs);
            if self.coeffs.len() <= 1 {
                self.order = 1;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycloScalar> for CycloScalar {
    fn mul_assign(&mut self, rhs: &CycloScalar) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycloScalar {
    /// Renders in the job-file expression grammar, e.g. `(1/2 + 3*zeta(4)^1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coeffs.len() {
            0 => write!(f, "0"),
            1 => fmt_rational(&self.coeffs[0], f),
            _ => {
                write!(f, "(")?;
                let mut first = true;
                for (k, c) in self.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if first {
                        if c.is_negative() {
                            write!(f, "-")?;
                        }
                    } else if c.is_negative() {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    first = false;
                    let a = c.abs();
                    if k == 0 {
                        fmt_rational(&a, f)?;
                    } else {
                        if !a.is_one() {
                            fmt_rational(&a, f)?;
                            write!(f, "*")?;
                        }
                        write!(f, "zeta({})^{}", self.order, k)?;
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The ambient coefficient field `Q(ζ_m)` of a computation session.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycloField {
    order: u32,
}

impl CycloField {
    pub fn new(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::IncompatibleField(
                "cyclotomic order must be positive".into(),
            ));
        }
        Ok(CycloField { order })
    }

    /// Smallest field containing roots of unity of all the given orders.
    pub fn containing(orders: impl IntoIterator<Item = u32>) -> Self {
        CycloField {
            order: orders.into_iter().fold(1, lcm),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `ζ_m^k`; `m` must divide the session order.
    pub fn root_of_unity(&self, m: u32, k: i64) -> Result<CycloScalar> {
        if m == 0 || self.order % m != 0 {
            return Err(Error::IncompatibleField(format!(
                "zeta({m}) does not lie in Q(zeta({}))",
                self.order
            )));
        }
        Ok(CycloScalar::root_of_unity(m, k))
    }

    pub fn contains(&self, x: &CycloScalar) -> bool {
        self.order % x.order() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(60), 16);
        assert_eq!(cyclotomic_polynomial(60).len() as u32 - 1, 16);
    }

    #[test]
    fn roots_of_unity_basics() {
        assert!(CycloScalar::root_of_unity(1, 0).is_one());
        let i = CycloScalar::root_of_unity(4, 1);
        assert_eq!(&i * &i, CycloScalar::root_of_unity(2, 1));
        assert_eq!(CycloScalar::root_of_unity(2, 1), CycloScalar::from_i64(-1));
        let w = CycloScalar::root_of_unity(3, 1);
        let lhs = &(&w * &w) + &w;
        assert_eq!(lhs + CycloScalar::one(), CycloScalar::zero());
        assert_eq!(CycloScalar::root_of_unity(6, 2).root_order(12), Some(3));
    }

    #[test]
    fn mixed_orders_embed() {
        let i = CycloScalar::root_of_unity(4, 1);
        let w = CycloScalar::root_of_unity(3, 1);
        let z12 = CycloScalar::root_of_unity(12, 1);
        // ζ12 = ζ4^{-1}·ζ3^{... }: check ζ12^4 = ζ3 and ζ12^3 = ζ4
        assert_eq!(z12.pow(4), w);
        assert_eq!(z12.pow(3), i);
        assert_eq!(&i * &w, CycloScalar::root_of_unity(12, 7));
        assert_eq!(CycloScalar::root_of_unity(8, 2), i);
    }

    #[test]
    fn inverses() {
        let a = &CycloScalar::root_of_unity(5, 1) + &CycloScalar::from_i64(3);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert!(CycloScalar::zero().inv().is_none());
    }

    #[test]
    fn square_roots() {
        for r in [5i64, -1, 2, -3, 12, 7, 1, -20] {
            let q = Rational::from_integer(BigInt::from(r));
            let s = CycloScalar::sqrt_rational(&q).unwrap();
            assert_eq!(&s * &s, CycloScalar::from_i64(r), "sqrt({r})");
        }
        let q = Rational::new(BigInt::from(3), BigInt::from(8));
        let s = CycloScalar::sqrt_rational(&q).unwrap();
        assert_eq!(&s * &s, CycloScalar::from_rational(q));
    }

    #[test]
    fn session_field_rejects_foreign_roots() {
        let f = CycloField::new(4).unwrap();
        assert!(f.root_of_unity(4, 1).is_ok());
        assert!(f.root_of_unity(2, 1).is_ok());
        assert!(matches!(f.root_of_unity(3, 1), Err(Error::IncompatibleField(_))));
    }

    #[test]
    fn display_uses_expression_grammar() {
        assert_eq!(CycloScalar::from_ratio(-3, 4).to_string(), "-3/4");
        let x = &CycloScalar::root_of_unity(4, 1) * &CycloScalar::from_i64(2);
        assert_eq!((&x + &CycloScalar::one()).to_string(), "(1 + 2*zeta(4)^1)");
    }
}
