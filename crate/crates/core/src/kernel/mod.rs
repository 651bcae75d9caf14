//! Spectral parameters of B, the kernel coefficients c_m and the
//! hypergeometric kernel series.

pub mod meijer;
pub mod tables;

use std::time::Instant;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::bernstein::{a_ratio, b_tilde_roots, case_b_poly, case_key, described_roots, leading_constant};
use crate::error::{Error, Result};
use crate::jordan::CaseDescriptor;
use crate::rational::{fmt_q, fmt_q_list, pochhammer, qi, to_f64, Q};
use crate::report::CheckReport;
use crate::sl2::eta0_of;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// B(1 − η₀) = 0
    OneF2,
    /// B(1 − η₀) ≠ 0
    TwoF3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralParams {
    pub case_id: u32,
    pub q: Vec<Q>,
    pub eta0: Q,
    pub kind: SeriesKind,
    /// OneF2: (α₂, α₃), the roots of B other than 0 and 1 − η₀.
    /// TwoF3: (α₁′, α₂′, α₃′), the roots other than one 0.
    /// Sorted decreasingly.
    pub roots: Vec<Q>,
    /// Roots b_j of B̃(α) = ∏B_i(α − n_i/(k_i r_i)).
    pub b_roots: Vec<Q>,
}

fn remove_one(v: &mut Vec<Q>, x: &Q) -> bool {
    match v.iter().position(|y| y == x) {
        Some(i) => {
            v.remove(i);
            true
        }
        None => false,
    }
}

pub fn spectral_params(c: &CaseDescriptor, qv: &[Q]) -> Result<SpectralParams> {
    let eta0 = eta0_of(c, qv)?;
    let b = case_b_poly(c);
    let one_minus = Q::one() - &eta0;
    let mut roots = described_roots(c);
    let kind = if b.eval(&one_minus).is_zero() { SeriesKind::OneF2 } else { SeriesKind::TwoF3 };
    remove_one(&mut roots, &Q::zero());
    if kind == SeriesKind::OneF2 {
        remove_one(&mut roots, &one_minus);
    }
    roots.sort_by(|a, b| b.cmp(a));
    Ok(SpectralParams { case_id: c.case_id, q: qv.to_vec(), eta0, kind, roots, b_roots: b_tilde_roots(c) })
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelSeries {
    pub case_id: u32,
    pub q: Vec<Q>,
    pub kind: SeriesKind,
    pub numerator: Vec<Q>,
    pub denominator: Vec<Q>,
    pub coeffs: Vec<Q>,
}

impl KernelSeries {
    /// c_{m+1}/c_m from the Pochhammer parameters.
    pub fn ratio(&self, m: usize) -> Q {
        let mq = qi(m as i64);
        let num: Q = self.numerator.iter().map(|a| a + &mq).product();
        let den: Q = self.denominator.iter().map(|a| a + &mq).product::<Q>() * (&mq + Q::one());
        num / den
    }
}

/// Pochhammer parameters: OneF2 has (η₀+1; η₀+α₂, η₀+α₃), TwoF3 has
/// (η₀+1, 1; η₀+α₁′, η₀+α₂′, η₀+α₃′); c_m carries an extra 1/m!.
pub fn series_params(sp: &SpectralParams) -> (Vec<Q>, Vec<Q>) {
    let e = &sp.eta0;
    let mut num = vec![e + Q::one()];
    if sp.kind == SeriesKind::TwoF3 {
        num.push(Q::one());
    }
    (num, sp.roots.iter().map(|a| e + a).collect())
}

/// Closed-form c_m = ∏(num)_m / (∏(den)_m m!).
pub fn c_closed(num: &[Q], den: &[Q], m: usize) -> Result<Q> {
    let d: Q = den.iter().map(|a| pochhammer(a, m)).product::<Q>() * pochhammer(&Q::one(), m);
    if d.is_zero() {
        return Err(Error::Degenerate(format!("Pochhammer denominator vanishes at m = {m}")));
    }
    Ok(num.iter().map(|a| pochhammer(a, m)).product::<Q>() / d)
}

/// c_{m+1}/c_m = (m+η₀)(m+η₀+1)·A / B(−m−η₀), straight from B.
pub fn c_ratio_from_b(c: &CaseDescriptor, eta0: &Q, m: usize) -> Result<Q> {
    let x = qi(m as i64) + eta0;
    let b = case_b_poly(c).eval(&-x.clone());
    if b.is_zero() {
        return Err(Error::Degenerate(format!("B(−m−η₀) = 0 at m = {m}")));
    }
    Ok(&x * (&x + Q::one()) * leading_constant(c) / b)
}

pub fn c_sequence(c: &CaseDescriptor, qv: &[Q], m_max: usize) -> Result<KernelSeries> {
    let sp = spectral_params(c, qv)?;
    let (num, den) = series_params(&sp);
    for a in &den {
        if a.is_integer() && !a.is_positive() {
            return Err(Error::Degenerate(format!("denominator parameter {} is a non-positive integer", fmt_q(a))));
        }
    }
    let coeffs = (0..=m_max).map(|m| c_closed(&num, &den, m)).collect::<Result<Vec<_>>>()?;
    Ok(KernelSeries { case_id: c.case_id, q: qv.to_vec(), kind: sp.kind, numerator: num, denominator: den, coeffs })
}

/// Closed form against the recurrence from B, and positivity, for m ≤ m_max.
pub fn c_sequence_check(c: &CaseDescriptor, qv: &[Q], m_max: usize) -> CheckReport {
    let start = Instant::now();
    let id = format!("kernel.cm.{}.{}", case_key(c), fmt_q_list(qv));
    let base = CheckReport::new(id).case(c.case_id).q(qv);
    let run = || -> Result<(bool, String)> {
        let s = c_sequence(c, qv, m_max)?;
        let eta0 = eta0_of(c, qv)?;
        let mut rec = Q::one();
        for m in 0..=m_max {
            if rec != s.coeffs[m] {
                return Ok((false, format!("closed form {} != recurrence {} at m = {m}", fmt_q(&s.coeffs[m]), fmt_q(&rec))));
            }
            if !s.coeffs[m].is_positive() {
                return Ok((false, format!("c_{m} = {} is not positive", fmt_q(&s.coeffs[m]))));
            }
            rec *= c_ratio_from_b(c, &eta0, m)?;
        }
        Ok((
            true,
            format!(
                "{:?}: num ({}), den ({}); c_1 = {}",
                s.kind,
                fmt_q_list(&s.numerator),
                fmt_q_list(&s.denominator),
                s.coeffs.get(1).map(fmt_q).unwrap_or_default()
            ),
        ))
    };
    match run() {
        Ok((ok, d)) => base.residual(if ok { "0" } else { "nonzero" }).details(d).pass_if(ok).timed(start),
        Err(e) => base.details(e.to_string()).pass_if(false).timed(start),
    }
}

/// Exact identity 1/(c·a)_m = ∏(η₀+b_j)_m / ((η₀)_m (η₀+1)_m), with
/// a_m/a_0 accumulated from the a_{m+1}/a_m ratio.
pub fn ca_identity_check(c: &CaseDescriptor, qv: &[Q], m_max: usize) -> CheckReport {
    let start = Instant::now();
    let id = format!("kernel.ca.{}.{}", case_key(c), fmt_q_list(qv));
    let base = CheckReport::new(id).case(c.case_id).q(qv);
    let run = || -> Result<Option<usize>> {
        let s = c_sequence(c, qv, m_max)?;
        let sp = spectral_params(c, qv)?;
        let e = &sp.eta0;
        let mut a = Q::one();
        for m in 0..=m_max {
            let ca = &s.coeffs[m] * &a;
            let den = pochhammer(e, m) * pochhammer(&(e + Q::one()), m);
            if ca.is_zero() || den.is_zero() {
                return Err(Error::Degenerate(format!("(c a)_m or (η₀)_m (η₀+1)_m vanishes at m = {m}")));
            }
            let num: Q = sp.b_roots.iter().map(|b| pochhammer(&(e + b), m)).product();
            if ca.recip() != num / den {
                return Ok(Some(m));
            }
            a *= a_ratio(c, qv, m as u64)?;
        }
        Ok(None)
    };
    match run() {
        Ok(None) => base.residual("0").details(format!("m <= {m_max}")).pass_if(true).timed(start),
        Ok(Some(m)) => base.residual("nonzero").details(format!("first mismatch at m = {m}")).pass_if(false).timed(start),
        Err(e) => base.details(e.to_string()).pass_if(false).timed(start),
    }
}

/// Σ c_m u^m with a ratio-test tail bound.
#[derive(Clone, Copy, Debug)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms: usize,
    pub tail_bound: f64,
}

pub fn kernel_eval(s: &KernelSeries, u: Complex64, max_terms: usize, tol: f64) -> Result<SeriesValue> {
    let au = u.norm();
    let mut c = Q::one();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pow = Complex64::new(1.0, 0.0);
    for m in 0..max_terms {
        let term = pow * to_f64(&c);
        sum += term;
        let r = s.ratio(m);
        let rf = to_f64(&r).abs() * au;
        // ratios are eventually decreasing in m, so once r·|u| < 1 and
        // decreasing the tail after this term is bounded geometrically
        let next = to_f64(&s.ratio(m + 1)).abs() * au;
        if rf < 1.0 && next <= rf {
            let bound = term.norm() * rf / (1.0 - rf);
            if bound <= tol * sum.norm().max(1e-300) {
                return Ok(SeriesValue { value: sum, terms: m + 1, tail_bound: bound });
            }
        }
        c *= r;
        pow *= u;
    }
    Err(Error::Truncation(format!("tail bound not reached in {max_terms} terms at |u| = {au}")))
}

/// K(ξ, ξ′) for rank-one products: F(u)·K_q with u = ∏H_i^{k_i}(w_i w̄′_i)^{k_i}
/// and K_q = ∏H_i^{q_i}(w_i w̄′_i)^{q_i}, H_i(z, z′) = 1 + z z̄′.
pub fn full_kernel(
    c: &CaseDescriptor,
    qv: &[Q],
    xi: &[(Complex64, Complex64)],
    xi2: &[(Complex64, Complex64)],
) -> Result<Complex64> {
    if !c.is_rank1_product() {
        return Err(Error::UnsupportedFamily("full kernel evaluation is implemented for rank-one products".into()));
    }
    if xi.len() != c.factors.len() || xi2.len() != c.factors.len() {
        return Err(Error::DimensionMismatch { expected: c.factors.len(), got: xi.len().min(xi2.len()) });
    }
    let s = c_sequence(c, qv, 0)?;
    let mut u = Complex64::new(1.0, 0.0);
    let mut kq = Complex64::new(1.0, 0.0);
    for ((f, qi_), ((w, z), (w2, z2))) in c.factors.iter().zip(qv).zip(xi.iter().zip(xi2)) {
        let hz = Complex64::new(1.0, 0.0) + z * z2.conj();
        let base = hz * w * w2.conj();
        u *= base.powu(f.k);
        kq *= base.powf(to_f64(qi_));
    }
    Ok(kernel_eval(&s, u, 400, 1e-15)?.value * kq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{case, default_params, CaseParams};
    use crate::rational::q;

    fn c(id: u32) -> CaseDescriptor {
        case(id, default_params(id)).unwrap()
    }

    #[test]
    fn spectral_examples() {
        let s = spectral_params(&c(1), &[qi(0)]).unwrap();
        assert_eq!(s.eta0, q(1, 4));
        assert_eq!(s.kind, SeriesKind::OneF2);
        assert_eq!(s.roots, vec![q(1, 2), q(1, 4)]);
        let c9 = case(9, CaseParams { d: 1, ..Default::default() }).unwrap();
        let s = spectral_params(&c9, &[qi(0)]).unwrap();
        assert_eq!(s.eta0, q(5, 2));
        assert_eq!(s.roots, vec![q(-1, 2), qi(-1)]);
        let s = spectral_params(&c(5), &vec![qi(3); 4]).unwrap();
        assert_eq!((s.eta0.clone(), s.kind), (qi(4), SeriesKind::TwoF3));
        assert_eq!(s.roots, vec![qi(0); 3]);
    }

    #[test]
    fn c_examples() {
        let s = c_sequence(&c(1), &[qi(0)], 5).unwrap();
        assert_eq!(s.coeffs[0], qi(1));
        assert_eq!(s.coeffs[1], q(10, 3));
        for m in 0..=5 {
            let expect = pochhammer(&q(5, 4), m) / (pochhammer(&q(3, 4), m) * pochhammer(&q(1, 2), m) * pochhammer(&qi(1), m));
            assert_eq!(s.coeffs[m], expect);
        }
        // (2)_m/((1)_m)² · 1/m! = (m+1)/(m!)², the product of the ratios (m+2)/(m+1)³
        let s = c_sequence(&c(5), &vec![qi(0); 4], 6).unwrap();
        let mut prod = qi(1);
        for m in 0..=6usize {
            let f = pochhammer(&qi(1), m);
            assert_eq!(s.coeffs[m], qi(m as i64 + 1) / (&f * &f));
            assert_eq!(s.coeffs[m], prod);
            prod *= qi(m as i64 + 2) / num_traits::pow(qi(m as i64 + 1), 3);
        }
        assert!(c_sequence_check(&c(1), &[qi(4)], 50).passed());
        assert!(ca_identity_check(&c(1), &[qi(0)], 10).passed());
        assert!(ca_identity_check(&c(5), &vec![qi(1); 4], 10).passed());
    }

    #[test]
    fn series_values() {
        let s = c_sequence(&c(5), &vec![qi(0); 4], 0).unwrap();
        let v = kernel_eval(&s, Complex64::new(0.0, 0.0), 10, 1e-15).unwrap();
        assert_eq!(v.value, Complex64::new(1.0, 0.0));
        // Σ (m+1)/(m!)² summed directly
        let mut direct = 0.0;
        let mut f = 1.0f64;
        for m in 0..30 {
            if m > 0 {
                f *= m as f64;
            }
            direct += (m as f64 + 1.0) / (f * f);
        }
        let v = kernel_eval(&s, Complex64::new(1.0, 0.0), 100, 1e-15).unwrap();
        assert!((v.value.re - direct).abs() < 1e-13);
        assert!((v.value.re - 3.870_222_156_973_4).abs() < 1e-12);
        let c1 = c(1);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let k = full_kernel(&c1, &[qi(0)], &[(one, zero)], &[(one, zero)]).unwrap();
        let s1 = c_sequence(&c1, &[qi(0)], 0).unwrap();
        assert!((k - kernel_eval(&s1, one, 100, 1e-15).unwrap().value).norm() < 1e-14);
    }
}
