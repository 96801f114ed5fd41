//! Partial fractions over the complex numbers.

use num_traits::Zero;

use super::poly::{Field, Poly};
use crate::error::{Error, Result};
use crate::numkernel::C64;

/// P(z) / ∏ (z − aⱼ)^{mⱼ}. The denominator is monic.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction<F> {
    num: Poly<F>,
    poles: Vec<(F, usize)>,
}

/// coeff / (z − pole)^order
#[derive(Debug, Clone, PartialEq)]
pub struct PfdTerm<F> {
    pub pole: F,
    pub order: usize,
    pub coeff: F,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num_coeffs: Vec<F>, poles: Vec<(F, usize)>) -> Result<Self> {
        if poles.iter().any(|(_, m)| *m == 0) {
            return Err(Error::Degenerate("pole multiplicity must be positive".into()));
        }
        for (i, (a, _)) in poles.iter().enumerate() {
            if poles[..i].iter().any(|(b, _)| b == a) {
                return Err(Error::Degenerate("repeated pole in the pole list".into()));
            }
        }
        let num = Poly::new(num_coeffs);
        let den_deg: usize = poles.iter().map(|(_, m)| m).sum();
        if let Some(d) = num.degree() {
            if d >= den_deg {
                return Err(Error::Degree {
                    numerator: d,
                    denominator: den_deg,
                });
            }
        }
        Ok(RationalFunction { num, poles })
    }

    pub fn numerator(&self) -> &Poly<F> {
        &self.num
    }

    pub fn poles(&self) -> &[(F, usize)] {
        &self.poles
    }

    pub fn denominator(&self) -> Poly<F> {
        Poly::from_roots(&self.poles)
    }

    pub fn eval(&self, z: &F) -> F {
        let mut den = F::one();
        for (a, m) in &self.poles {
            for _ in 0..*m {
                den = den * (z.clone() - a.clone());
            }
        }
        self.num.eval(z) / den
    }
}

fn small<F: Field>(n: usize) -> F {
    (0..n).fold(F::zero(), |acc, _| acc + F::one())
}

/// Truncated product of two power series.
fn series_mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| (0..=k).fold(F::zero(), |acc, i| acc + a[i].clone() * b[k - i].clone()))
        .collect()
}

/// First `n` coefficients of (d + w)^{−m}.
fn inverse_power_series<F: Field>(d: &F, m: usize, n: usize) -> Vec<F> {
    let mut c0 = F::one();
    for _ in 0..m {
        c0 = c0 / d.clone();
    }
    let mut out = Vec::with_capacity(n);
    out.push(c0);
    for k in 1..n {
        let prev = out[k - 1].clone();
        let num = -small::<F>(m + k - 1);
        out.push(prev * num / (small::<F>(k) * d.clone()));
    }
    out
}

/// Complex partial fractions by the residue rule: for a pole a of
/// multiplicity m, b_{m−k} = (1/k!)·dᵏ/dzᵏ[(z−a)^m P/Q] at a, read off as the
/// Taylor coefficients of that product. Exact when `F` is exact.
///
/// Terms are listed pole by pole in input order, orders ascending.
pub fn complex_pfd<F: Field>(rf: &RationalFunction<F>) -> Vec<PfdTerm<F>> {
    let mut terms = Vec::new();
    for (i, (a, m)) in rf.poles.iter().enumerate() {
        let m = *m;
        let mut h = rf.num.taylor_at(a, m);
        for (j, (b, mj)) in rf.poles.iter().enumerate() {
            if i != j {
                let d = a.clone() - b.clone();
                h = series_mul(&h, &inverse_power_series(&d, *mj, m));
            }
        }
        for order in 1..=m {
            terms.push(PfdTerm {
                pole: a.clone(),
                order,
                coeff: h[m - order].clone(),
            });
        }
    }
    terms
}

/// Σ coeff/(z − pole)^order.
pub fn eval_terms<F: Field>(terms: &[PfdTerm<F>], z: &F) -> F {
    terms.iter().fold(F::zero(), |acc, t| {
        let mut den = F::one();
        for _ in 0..t.order {
            den = den * (z.clone() - t.pole.clone());
        }
        acc + t.coeff.clone() / den
    })
}

/// Real partial-fraction data:
/// Σᵢ Σᵣ a_{ir}/(z−xᵢ)^r + Σⱼ Σₛ (β_{js} z + γ_{js})/((z−zⱼ)(z−z̄ⱼ))^s.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RealPartialFractions {
    pub real_poles: Vec<f64>,
    /// a_{ir}, r = 1, 2, … for each real pole
    pub a: Vec<Vec<f64>>,
    /// one representative zⱼ of each conjugate pair
    pub complex_poles: Vec<C64>,
    pub beta: Vec<Vec<f64>>,
    pub gamma: Vec<Vec<f64>>,
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Convert real partial fractions to complex ones through
/// ω = 1/(z − z̄) = 1/(2i·Im z):
///
/// b_r = Σ_{s≥r} [(β_s z + γ_s) ω^r |ω|^{2(s−r)} C(2s−r−1, s−r)
///              + β_s ω^{r+1} |ω|^{2(s−r−1)} C(2s−r−2, s−r−1)],
///
/// the second bracket present only for s > r. Terms at z̄ are the conjugates.
pub fn pfd_from_real_form(data: &RealPartialFractions) -> Result<Vec<PfdTerm<C64>>> {
    if data.real_poles.len() != data.a.len() {
        return Err(Error::Dimension(format!(
            "{} real poles but {} coefficient lists",
            data.real_poles.len(),
            data.a.len()
        )));
    }
    let n = data.complex_poles.len();
    if data.beta.len() != n || data.gamma.len() != n {
        return Err(Error::Dimension(format!(
            "{n} complex poles but {} beta and {} gamma lists",
            data.beta.len(),
            data.gamma.len()
        )));
    }
    let mut terms = Vec::new();
    for (x, coeffs) in data.real_poles.iter().zip(&data.a) {
        for (r, a) in coeffs.iter().enumerate() {
            terms.push(PfdTerm {
                pole: C64::new(*x, 0.0),
                order: r + 1,
                coeff: C64::new(*a, 0.0),
            });
        }
    }
    for ((z, beta), gamma) in data.complex_poles.iter().zip(&data.beta).zip(&data.gamma) {
        if beta.len() != gamma.len() {
            return Err(Error::Dimension(format!(
                "beta has {} entries but gamma has {}",
                beta.len(),
                gamma.len()
            )));
        }
        if z.im == 0.0 {
            return Err(Error::domain("pfd_from_real_form", "complex poles need Im z != 0"));
        }
        let omega = C64::new(0.0, -0.5 / z.im);
        let w2 = omega.norm_sqr();
        let l = beta.len();
        let mut upper = Vec::with_capacity(l);
        for r in 1..=l {
            let mut b = C64::zero();
            for s in r..=l {
                let (bs, gs) = (beta[s - 1], gamma[s - 1]);
                b += (*z * bs + gs) * omega.powu(r as u32) * w2.powi((s - r) as i32) * binom(2 * s - r - 1, s - r);
                if s > r {
                    b += bs * omega.powu(r as u32 + 1) * w2.powi((s - r - 1) as i32) * binom(2 * s - r - 2, s - r - 1);
                }
            }
            upper.push(PfdTerm {
                pole: *z,
                order: r,
                coeff: b,
            });
        }
        let lower: Vec<_> = upper
            .iter()
            .map(|t| PfdTerm {
                pole: t.pole.conj(),
                order: t.order,
                coeff: t.coeff.conj(),
            })
            .collect();
        terms.extend(upper);
        terms.extend(lower);
    }
    Ok(terms)
}

impl<F: Field> PfdTerm<F> {
    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> PfdTerm<G> {
        PfdTerm {
            pole: f(&self.pole),
            order: self.order,
            coeff: f(&self.coeff),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ExactComplex;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ec(re: (i64, i64), im: (i64, i64)) -> ExactComplex {
        ExactComplex::new(r(re.0, re.1), r(im.0, im.1))
    }

    fn example() -> RationalFunction<ExactComplex> {
        RationalFunction::new(
            vec![ec((1, 1), (0, 1)), ec((2, 1), (0, 1))],
            vec![(ec((-3, 1), (1, 1)), 3), (ec((-3, 1), (-1, 1)), 3)],
        )
        .unwrap()
    }

    #[test]
    fn worked_example_is_exact() {
        let terms = complex_pfd(&example());
        assert_eq!(terms.len(), 6);
        assert_eq!(terms[0].coeff, ec((0, 1), (15, 16)));
        assert_eq!(terms[1].coeff, ec((15, 16), (-1, 8)));
        assert_eq!(terms[2].coeff, ec((-1, 4), (-5, 8)));
        for k in 0..3 {
            assert_eq!(terms[k + 3].coeff, terms[k].coeff.conj());
        }
    }

    #[test]
    fn exact_recombination() {
        let rf = example();
        let terms = complex_pfd(&rf);
        for z in [ec((0, 1), (0, 1)), ec((1, 1), (0, 1)), ec((-1, 1), (0, 1)), ec((2, 3), (5, 7))] {
            assert_eq!(eval_terms(&terms, &z), rf.eval(&z));
        }
    }

    #[test]
    fn cover_up_cases() {
        let one = C64::new(1.0, 0.0);
        let rf = RationalFunction::new(vec![one], vec![(one, 1), (one * 2.0, 1)]).unwrap();
        let t = complex_pfd(&rf);
        assert_eq!(t[0].coeff, -one);
        assert_eq!(t[1].coeff, one);
        let rf = RationalFunction::new(vec![one], vec![(one, 1)]).unwrap();
        assert_eq!(complex_pfd(&rf)[0].coeff, one);
    }

    #[test]
    fn precondition_errors() {
        let one = C64::new(1.0, 0.0);
        assert!(matches!(
            RationalFunction::new(vec![one], vec![(one, 1), (one, 2)]),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            RationalFunction::new(vec![one, one], vec![(one, 1)]),
            Err(Error::Degree { numerator: 1, denominator: 1 })
        ));
        let bad = RealPartialFractions {
            real_poles: vec![1.0],
            ..Default::default()
        };
        assert!(matches!(pfd_from_real_form(&bad), Err(Error::Dimension(_))));
    }

    #[test]
    fn real_form_matches_residue_rule() {
        let z = C64::new(-3.0, 1.0);
        let data = RealPartialFractions {
            complex_poles: vec![z],
            beta: vec![vec![0.0, 0.0, 2.0]],
            gamma: vec![vec![0.0, 0.0, 1.0]],
            ..Default::default()
        };
        let from_real = pfd_from_real_form(&data).unwrap();
        let expect = [
            C64::new(0.0, 15.0 / 16.0),
            C64::new(15.0 / 16.0, -1.0 / 8.0),
            C64::new(-0.25, -5.0 / 8.0),
        ];
        for (t, e) in from_real.iter().zip(expect) {
            assert!((t.coeff - e).norm() < 1e-12, "{:?} vs {e}", t.coeff);
        }
    }

    #[test]
    fn real_form_mixed_orders() {
        // 1/(z−2) + 3/(z−2)² + (z+4)/(z²+1) + (2z−1)/(z²+1)²
        let data = RealPartialFractions {
            real_poles: vec![2.0],
            a: vec![vec![1.0, 3.0]],
            complex_poles: vec![C64::new(0.0, 1.0)],
            beta: vec![vec![1.0, 2.0]],
            gamma: vec![vec![4.0, -1.0]],
        };
        let terms = pfd_from_real_form(&data).unwrap();
        for x in [0.3, -1.7, 5.0] {
            let zc = C64::new(x, 0.0);
            let q = x * x + 1.0;
            let direct = 1.0 / (x - 2.0) + 3.0 / ((x - 2.0) * (x - 2.0)) + (x + 4.0) / q + (2.0 * x - 1.0) / (q * q);
            assert!((eval_terms(&terms, &zc) - direct).norm() < 1e-13 * direct.abs().max(1.0));
        }
    }
}
