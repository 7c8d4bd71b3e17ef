//! Exact univariate polynomials and rational-function interpolation.
//!
//! The verification suites recover closed forms from grids of exact values:
//! reduction coefficients as polynomials in the rank parameter, the critical
//! parameter as a rational function of it, and the composition-law
//! coefficients as polynomials in the homogeneity weight. Everything here is
//! exact; an interpolant is only returned if it reproduces every sample.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::linalg::RowReducer;
use crate::rational::{self, Rational};

/// Dense polynomial, coefficients by ascending power, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// Convenience: integer coefficients by ascending power.
    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, f: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * f).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::new(out)
    }

    /// Human-readable form like `-1/2*x^2 + 3*x + 1` with `var` as the name.
    pub fn display(&self, var: &str) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !s.is_empty() {
                s.push_str(if c >= &Rational::zero() { " + " } else { " - " });
            } else if c < &Rational::zero() {
                s.push('-');
            }
            let a = if c < &Rational::zero() { -c.clone() } else { c.clone() };
            let coeff_one = a.is_one();
            match k {
                0 => {
                    let _ = write!(s, "{}", rational::format(&a));
                }
                1 => {
                    if coeff_one {
                        let _ = write!(s, "{var}");
                    } else {
                        let _ = write!(s, "{}*{var}", rational::format(&a));
                    }
                }
                _ => {
                    if coeff_one {
                        let _ = write!(s, "{var}^{k}");
                    } else {
                        let _ = write!(s, "{}*{var}^{k}", rational::format(&a));
                    }
                }
            }
        }
        s
    }
}

/// Lowest-degree polynomial through the samples, capped at `max_degree`.
/// Returns `None` if no polynomial of that degree fits all samples exactly.
pub fn interpolate(samples: &[(Rational, Rational)], max_degree: usize) -> Option<Poly> {
    for d in 0..=max_degree {
        if let Some(p) = interpolate_exact_degree(samples, d) {
            return Some(p);
        }
    }
    None
}

fn interpolate_exact_degree(samples: &[(Rational, Rational)], d: usize) -> Option<Poly> {
    if samples.len() < d + 1 {
        return None;
    }
    // Solve the Vandermonde system on the first d+1 samples, then verify all.
    let mut reducer = RowReducer::new(d + 2);
    for (x, y) in samples.iter().take(d + 1) {
        let mut row = Vec::with_capacity(d + 2);
        let mut p = Rational::one();
        for _ in 0..=d {
            row.push(p.clone());
            p *= x;
        }
        row.push(y.clone());
        reducer.offer(row);
    }
    // Coefficients from the kernel of [V | y]: kernel vector with last
    // coordinate -1 gives V c = y.
    let kernel = reducer.kernel();
    let k = kernel.into_iter().find(|v| !v[d + 1].is_zero())?;
    let scale = -Rational::one() / k[d + 1].clone();
    let poly = Poly::new(k[..=d].iter().map(|c| c * &scale).collect());
    for (x, y) in samples {
        if &poly.eval(x) != y {
            return None;
        }
    }
    Some(poly)
}

/// A ratio of polynomials, canonicalized with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let lead = den.coeffs().last().unwrap().clone();
        let inv = Rational::one() / lead;
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn display(&self, var: &str) -> String {
        let mut s = String::from("(");
        s.push_str(&self.num.display(var));
        s.push_str(") / (");
        s.push_str(&self.den.display(var));
        s.push(')');
        s
    }
}

/// Lowest total-degree rational function `p/q` through the samples:
/// searches total degree 0, 1, ... up to `max_total`, trying every split.
/// The candidate must reproduce every sample with a nonvanishing denominator.
pub fn interpolate_rational(
    samples: &[(Rational, Rational)],
    max_total: usize,
) -> Option<RationalFunction> {
    for total in 0..=max_total {
        for dq in 0..=total {
            let dp = total - dq;
            if let Some(rf) = try_rational_fit(samples, dp, dq) {
                return Some(rf);
            }
        }
    }
    None
}

fn try_rational_fit(
    samples: &[(Rational, Rational)],
    dp: usize,
    dq: usize,
) -> Option<RationalFunction> {
    let unknowns = dp + 1 + dq + 1;
    if samples.len() < unknowns.saturating_sub(1) {
        return None;
    }
    // p(x) - y q(x) = 0 at every sample; nontrivial kernel vector wanted.
    let mut reducer = RowReducer::new(unknowns);
    for (x, y) in samples {
        let mut row = Vec::with_capacity(unknowns);
        let mut p = Rational::one();
        for _ in 0..=dp {
            row.push(p.clone());
            p *= x;
        }
        let mut q = Rational::one();
        for _ in 0..=dq {
            row.push(-(y * &q));
            q *= x;
        }
        reducer.offer(row);
    }
    for k in reducer.kernel() {
        let num = Poly::new(k[..=dp].to_vec());
        let den = Poly::new(k[dp + 1..].to_vec());
        if den.is_zero() {
            continue;
        }
        if samples.iter().any(|(x, _)| den.eval(x).is_zero()) {
            continue;
        }
        let rf = RationalFunction::new(num, den);
        if samples
            .iter()
            .all(|(x, y)| rf.eval(x).as_ref() == Some(y))
        {
            return Some(rf);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn poly_eval_and_display() {
        let p = Poly::from_ints(&[1, 0, -2]); // 1 - 2x^2
        assert_eq!(p.eval(&int(3)), int(-17));
        assert_eq!(p.display("x"), "-2*x^2 + 1");
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn interpolation_picks_lowest_degree() {
        let samples: Vec<_> = (0..5).map(|k| (int(k), int(2 * k + 1))).collect();
        let p = interpolate(&samples, 4).unwrap();
        assert_eq!(p, Poly::from_ints(&[1, 2]));
        // Inconsistent with any cubic:
        let bad = vec![
            (int(0), int(0)),
            (int(1), int(1)),
            (int(2), int(4)),
            (int(3), int(9)),
            (int(4), int(17)),
        ];
        assert!(interpolate(&bad, 3).is_none());
    }

    #[test]
    fn rational_interpolation_recovers_closed_form() {
        // f(n) = -(n-4) / (4(n-1)(n-2))
        let f = |n: i64| frac(-(n - 4), 4 * (n - 1) * (n - 2));
        let samples: Vec<_> = (5..=9).map(|n| (int(n), f(n))).collect();
        let rf = interpolate_rational(&samples, 6).unwrap();
        // Expected in monic-denominator form: num = (-n+4)/4, den = (n-1)(n-2)
        let expect = RationalFunction::new(
            Poly::from_ints(&[4, -1]).scale(&frac(1, 4)),
            Poly::from_ints(&[2, -3, 1]),
        );
        assert_eq!(rf, expect);
        assert_eq!(rf.eval(&int(6)).unwrap(), frac(-1, 40));
    }
}
