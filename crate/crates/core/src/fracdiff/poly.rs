//! Dense univariate polynomials over a field, plus a floating root finder.
//!
//! The field operations are generic so the same code runs on `C64` and on
//! exact `Complex<BigRational>` / `BigRational` coefficients.

use std::ops::Neg;

use num_traits::Num;

use crate::error::{Error, Result};
use crate::numkernel::C64;

/// Arithmetic needed by the polynomial and partial-fraction code.
pub trait Field: Clone + Num + Neg<Output = Self> {}
impl<T: Clone + Num + Neg<Output = T>> Field for T {}

/// Polynomial with coefficients in ascending order. Trailing zeros are
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// x − a
    pub fn linear_root(a: F) -> Self {
        Poly::new(vec![-a, F::one()])
    }

    pub fn from_roots<'a, I>(roots: I) -> Self
    where
        I: IntoIterator<Item = &'a (F, usize)>,
        F: 'a,
    {
        let mut p = Poly::constant(F::one());
        for (a, m) in roots {
            for _ in 0..*m {
                p = p.mul(&Poly::linear_root(a.clone()));
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[F], i: usize| v.get(i).cloned().unwrap_or_else(F::zero);
        Poly::new((0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn derivative(&self) -> Self {
        let mut k = F::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + F::one();
        }
        Poly::new(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::new(Vec::new()), Poly::new(Vec::new()));
        };
        if nd < dd {
            return (Poly::new(Vec::new()), self.clone());
        }
        let mut quot = vec![F::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = F::one() / l.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor. Only meaningful over an exact field.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free factorisation: pairs (gᵢ, i) with self = c·∏ gᵢ^i,
    /// each gᵢ monic and square-free. Exact fields only.
    pub fn square_free(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_rem(&a0).0;
        let mut c = d.div_rem(&a0).0;
        let mut dd = c.add(&b.derivative().scale(&-F::one()));
        let mut i = 1;
        loop {
            let a = b.gcd(&dd);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = dd.div_rem(&a).0;
            dd = c.add(&b.derivative().scale(&-F::one()));
            i += 1;
        }
        out
    }

    /// First `m` Taylor coefficients about `a`: self(a + w) = Σ cₖ wᵏ.
    pub fn taylor_at(&self, a: &F, m: usize) -> Vec<F> {
        let mut work = self.coeffs.clone();
        let mut out = Vec::with_capacity(m);
        for _ in 0..m {
            if work.is_empty() {
                out.push(F::zero());
                continue;
            }
            // synthetic division by (x − a): remainder is the next coefficient
            let mut carry = F::zero();
            for c in work.iter_mut().rev() {
                let next = c.clone() + carry.clone() * a.clone();
                *c = carry;
                carry = next;
            }
            out.push(carry);
            work.pop();
        }
        out
    }
}

impl Poly<C64> {
    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }
}

const ROOT_RESIDUAL: f64 = 1e-13;

/// Roots of a real polynomial (ascending coefficients) by Aberth–Ehrlich
/// iteration, each polished by Newton steps until the relative residual
/// |p(r)| / Σ|cₖ||r|ᵏ is at most 1e-13. Near-real roots are snapped to the
/// real axis and complex roots are returned as exact conjugate pairs.
pub fn real_poly_roots(coeffs: &[f64]) -> Result<Vec<C64>> {
    let p = Poly::from_real(coeffs);
    let Some(n) = p.degree() else {
        return Err(Error::Degenerate("zero polynomial has no roots".into()));
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    let dp = p.derivative();
    let lead = p.coeffs[n].norm();
    let bound = 1.0 + p.coeffs[..n].iter().map(|c| c.norm() / lead).fold(0.0, f64::max);
    let radius = bound.min(
        // geometric-mean estimate is far tighter for well-scaled inputs
        (p.coeffs[0].norm() / lead).powf(1.0 / n as f64).max(1e-3),
    );
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0_f64;
        for k in 0..n {
            let pk = p.eval(&z[k]);
            let dk = dp.eval(&z[k]);
            if pk.norm() == 0.0 {
                continue;
            }
            let ratio = pk / dk;
            let s: C64 = (0..n).filter(|&j| j != k).map(|j| C64::new(1.0, 0.0) / (z[k] - z[j])).sum();
            let w = ratio / (C64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / z[k].norm().max(1e-300));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    let mut roots = Vec::with_capacity(n);
    for r0 in z {
        let mut r = r0;
        for _ in 0..8 {
            let step = p.eval(&r) / dp.eval(&r);
            if !step.is_finite() || step.norm() <= 1e-17 * r.norm() {
                break;
            }
            r -= step;
        }
        if r.im.abs() <= 1e-10 * r.norm().max(1e-300) {
            r.im = 0.0;
        }
        let scale: f64 = p.coeffs.iter().rev().fold(0.0, |acc, c| acc * r.norm() + c.norm());
        let value = p.eval(&r).norm();
        let resid = if value == 0.0 { 0.0 } else { value / scale };
        if !(resid <= ROOT_RESIDUAL) {
            return Err(Error::RootCondition(format!(
                "root near {} has relative residual {resid:.2e}",
                crate::numkernel::format_c(r)
            )));
        }
        roots.push(r);
    }
    pair_conjugates(&mut roots);
    Ok(roots)
}

/// Replace each complex root in the lower half plane by the conjugate of its
/// partner, and order: real roots ascending, then upper-half roots ascending
/// by real part each followed by its conjugate.
fn pair_conjugates(roots: &mut Vec<C64>) {
    let mut real: Vec<C64> = roots.iter().copied().filter(|r| r.im == 0.0).collect();
    let mut upper: Vec<C64> = roots.iter().copied().filter(|r| r.im > 0.0).collect();
    let mut lower: Vec<C64> = roots.iter().copied().filter(|r| r.im < 0.0).collect();
    real.sort_by(|a, b| a.re.total_cmp(&b.re));
    upper.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots.clear();
    roots.extend(real);
    for u in upper {
        // average with the nearest lower-half partner
        if let Some((idx, _)) = lower
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1.conj() - u).norm().total_cmp(&(b.1.conj() - u).norm()))
        {
            let l = lower.swap_remove(idx);
            let m = (u + l.conj()) * 0.5;
            roots.push(m);
            roots.push(m.conj());
        } else {
            roots.push(u);
        }
    }
    roots.extend(lower);
}


#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn taylor_coefficients() {
        // x³ about 2: 8 + 12w + 6w² + w³
        let p = Poly::new(vec![q(0), q(0), q(0), q(1)]);
        assert_eq!(p.taylor_at(&q(2), 5), vec![q(8), q(12), q(6), q(1), q(0)]);
    }

    #[test]
    fn yun_separates_multiplicities() {
        let p = Poly::from_roots(&[(q(1), 3), (q(-2), 1), (q(5), 2)]);
        let sf = p.square_free();
        let degs: Vec<(usize, usize)> = sf.iter().map(|(g, i)| (g.degree().unwrap(), *i)).collect();
        assert_eq!(degs, vec![(1, 1), (1, 2), (1, 3)]);
        assert_eq!(sf[2].0, Poly::linear_root(q(1)));
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = Poly::new(vec![q(3), q(-1), q(4), q(1), q(-5)]);
        let b = Poly::new(vec![q(2), q(0), q(1)]);
        let (d, r) = a.div_rem(&b);
        assert_eq!(d.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn finds_quadratic_and_real_roots() {
        // (x − 1)(x + 3)(x² + 2x + 5) = x⁴ + 4x³ + 6x² + 4x − 15
        let roots = real_poly_roots(&[-15.0, 4.0, 6.0, 4.0, 1.0]).unwrap();
        assert_eq!(roots.len(), 4);
        assert!((roots[0] - C64::new(-3.0, 0.0)).norm() < 1e-13);
        assert!((roots[1] - C64::new(1.0, 0.0)).norm() < 1e-13);
        assert!((roots[2] - C64::new(-1.0, 2.0)).norm() < 1e-13);
        assert_eq!(roots[3], roots[2].conj());
    }
}
