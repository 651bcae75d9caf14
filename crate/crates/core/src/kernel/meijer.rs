//! Meijer G parameters, Mellin–Barnes evaluation on (0, ∞), moments, the
//! pseudo-Bergman weight and its sign changes.

use std::time::Instant;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bernstein::{a_ratio, b_tilde_roots, case_key};
use crate::error::{Error, Result};
use crate::jordan::CaseDescriptor;
use crate::rational::{binomial, fmt_q_list, qi, to_f64, Q};
use crate::report::{CheckReport, Status};
use crate::sl2::eta0_of;
use crate::special::{digamma, integrate_semi_infinite, ln_gamma, ln_gamma_c};

use super::c_sequence;

#[derive(Clone, Debug, PartialEq)]
pub struct MeijerParams {
    pub case_id: u32,
    pub q: Vec<Q>,
    pub eta0: Q,
    /// (η₀ − 1, η₀)
    pub alpha: Vec<Q>,
    /// η₀ + b_j − 1 over the roots b_j of B̃, sorted.
    pub beta: Vec<Q>,
}

impl MeijerParams {
    /// Parameters after cancelling every equal (α, β) pair.
    pub fn reduced(&self) -> (Vec<Q>, Vec<Q>) {
        let mut b = self.beta.clone();
        let mut a = Vec::new();
        for x in &self.alpha {
            match b.iter().position(|y| y == x) {
                Some(i) => {
                    b.remove(i);
                }
                None => a.push(x.clone()),
            }
        }
        (a, b)
    }

    /// ln of the Mellin transform ∏Γ(β_j + s)/∏Γ(α_j + s) at real s, with
    /// its sign. Uses the full, uncancelled parameter lists.
    pub fn ln_mellin(&self, s: f64) -> (f64, f64) {
        let mut lv = 0.0;
        let mut sign = 1.0;
        for (xs, e) in [(&self.beta, 1.0), (&self.alpha, -1.0)] {
            for x in xs {
                let v = to_f64(x) + s;
                lv += e * ln_gamma(v);
                if v < 0.0 && (v.floor() as i64) % 2 != 0 {
                    sign = -sign;
                }
            }
        }
        (lv, sign)
    }
}

pub fn meijer_params(c: &CaseDescriptor, qv: &[Q]) -> Result<MeijerParams> {
    let eta0 = eta0_of(c, qv)?;
    let beta = b_tilde_roots(c).iter().map(|b| &eta0 + b - Q::one()).collect();
    Ok(MeijerParams { case_id: c.case_id, q: qv.to_vec(), alpha: vec![&eta0 - Q::one(), eta0.clone()], eta0, beta })
}

/// Working precision ceiling for the f64 Γ implementation.
pub const MAX_PRECISION: u32 = 11;

#[derive(Clone, Copy, Debug)]
pub struct GValue {
    pub value: f64,
    /// Quadrature error estimate, absolute.
    pub error: f64,
    /// |Φ(c)| u^{−c}/π; errors are controlled relative to this scale.
    pub scale: f64,
    pub contour: f64,
}

/// G^{m,0}_{p,m}(u | a; b) with all b_j in the Mellin numerator.
#[derive(Clone, Debug)]
pub struct MeijerG {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl MeijerG {
    pub fn from_params(mp: &MeijerParams) -> Self {
        let (a, b) = mp.reduced();
        MeijerG { a: a.iter().map(to_f64).collect(), b: b.iter().map(to_f64).collect() }
    }

    fn ln_phi(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for b in &self.b {
            acc += ln_gamma_c(s + b);
        }
        for a in &self.a {
            acc -= ln_gamma_c(s + a);
        }
        acc
    }

    fn min_b(&self) -> f64 {
        self.b.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Contour abscissa: root of Σψ(b+c) − Σ ln(1 + max(a+c, 0)) = ln u on
    /// (−min b, ∞). The α terms are smoothed because ψ(a+c) has poles where
    /// 1/Γ(a+s) merely vanishes; the contour is valid for any c > −min b.
    fn contour(&self, ln_u: f64) -> f64 {
        let lo0 = -self.min_b();
        let h = |c: f64| {
            let num: f64 = self.b.iter().map(|b| digamma(b + c)).sum();
            let den: f64 = self.a.iter().map(|a| (1.0 + (a + c).max(0.0)).ln()).sum();
            num - den - ln_u
        };
        let floor = lo0 + 1e-4;
        if h(floor) >= 0.0 {
            return floor;
        }
        let mut hi = lo0 + 1.0;
        while h(hi) < 0.0 {
            hi = lo0 + 2.0 * (hi - lo0);
        }
        let mut lo = floor;
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if h(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-10 * (1.0 + hi.abs()) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// G(u) = (1/π) ∫_0^∞ Re[Φ(c+it) u^{−c−it}] dt, integrated in panels
    /// that double in width until the integrand has dropped by e^{−45}.
    pub fn eval(&self, u: f64, precision: u32) -> Result<GValue> {
        if !(u > 0.0) || !u.is_finite() {
            return Err(Error::Invalid(format!("G needs u > 0, got {u}")));
        }
        if self.b.is_empty() || self.b.len() <= self.a.len() {
            return Err(Error::Degenerate("contour integral needs more β than α parameters".into()));
        }
        let digits = precision.clamp(1, MAX_PRECISION);
        let tol = 10f64.powi(-(digits as i32)) * 0.1;
        let ln_u = u.ln();
        let c = self.contour(ln_u);
        let log_int = |t: f64| {
            let s = Complex64::new(c, t);
            self.ln_phi(s) - s * ln_u
        };
        // normalise by the largest modulus on a coarse scan near t = 0
        let peak = (0..=30).map(|i| log_int(0.1 * i as f64).re).fold(f64::NEG_INFINITY, f64::max);
        if !peak.is_finite() {
            return Err(Error::Degenerate(format!("Mellin integrand is not finite on Re s = {c}")));
        }
        let f = |t: f64| {
            let v = (log_int(t) - peak).exp().re;
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        let mut width = (c + self.min_b()).clamp(1e-3, 1.0);
        let mut t0 = 0.0;
        let mut sum = 0.0;
        let mut err = 0.0;
        for _ in 0..400 {
            let out = quadrature::integrate(f, t0, t0 + width, tol);
            if !out.integral.is_finite() {
                return Err(Error::Quadrature(format!("non-finite panel [{t0}, {}] at u = {u}", t0 + width)));
            }
            sum += out.integral;
            err += out.error_estimate;
            t0 += width;
            width = (2.0 * width).min(1.0);
            if t0 > 1.0 && log_int(t0).re - peak < -45.0 {
                let scale = peak.exp() / std::f64::consts::PI;
                if err > 10.0 * tol {
                    return Err(Error::Quadrature(format!(
                        "contour quadrature error {err:.2e} above {tol:.1e} at u = {u}"
                    )));
                }
                return Ok(GValue { value: sum * scale, error: err * scale, scale, contour: c });
            }
        }
        Err(Error::Quadrature(format!("integrand did not decay along Re s = {c} at u = {u}")))
    }
}

/// Evaluate G for (case, q) parameters at u > 0.
pub fn meijer_eval(mp: &MeijerParams, u: f64, precision: u32) -> Result<GValue> {
    MeijerG::from_params(mp).eval(u, precision)
}

/// ∫_0^∞ G(u) u^m du for m = 0..=m_max via x = ln u and the trapezoid rule,
/// which converges geometrically for this analytic, decaying integrand. The
/// error estimate is the step-halving difference plus the truncated tails.
pub fn moments_by_quadrature(mp: &MeijerParams, m_max: usize, precision: u32) -> Result<Vec<(f64, f64)>> {
    let g = MeijerG::from_params(mp);
    let min_b = g.min_b();
    if min_b + 1.0 <= 0.0 {
        return Err(Error::Degenerate("moment integral diverges at u = 0 (min β ≤ −1)".into()));
    }
    let h = 0.125;
    let x_lo = -(36.0 / (min_b + 1.0)).ceil();
    let mut x_hi = 8.0;
    let eval_at = |xs: &[f64]| -> Result<Vec<f64>> {
        xs.par_iter().map(|&x| g.eval(x.exp(), precision).map(|v| v.value)).collect()
    };
    let mut xs: Vec<f64> = (0..).map(|i| x_lo + h * i as f64).take_while(|&x| x <= x_hi + 1e-12).collect();
    let mut gs = eval_at(&xs)?;
    // extend the upper end until every moment integrand is negligible there
    loop {
        let last = *xs.last().unwrap();
        let big = xs
            .iter()
            .zip(&gs)
            .map(|(x, v)| (v * ((m_max as f64 + 1.0) * x).exp()).abs())
            .fold(0.0, f64::max);
        let tail = (gs.last().unwrap() * ((m_max as f64 + 1.0) * last).exp()).abs();
        if tail <= 1e-18 * big || last > 80.0 {
            break;
        }
        x_hi += 4.0;
        let more: Vec<f64> = (1..).map(|i| last + h * i as f64).take_while(|&x| x <= x_hi + 1e-12).collect();
        gs.extend(eval_at(&more)?);
        xs.extend(more);
    }
    let mut out = Vec::new();
    for m in 0..=m_max {
        let w = |x: f64| ((m as f64 + 1.0) * x).exp();
        let terms: Vec<f64> = xs.iter().zip(&gs).map(|(x, v)| v * w(*x)).collect();
        let fine: f64 = h * terms.iter().sum::<f64>();
        let coarse: f64 = 2.0 * h * terms.iter().step_by(2).sum::<f64>();
        // G ~ K u^{min β} near 0: the left tail is f(x_lo)/(min β + m + 1)
        let left = (terms[0] / (min_b + m as f64 + 1.0)).abs();
        let right = terms.last().unwrap().abs();
        out.push((fine, (fine - coarse).abs() + left + right));
    }
    Ok(out)
}

/// (c·a)_m from the kernel coefficients and the a-ratio product, a_0 = 1.
pub fn ca_values(c: &CaseDescriptor, qv: &[Q], m_max: usize) -> Result<Vec<Q>> {
    let s = c_sequence(c, qv, m_max)?;
    let mut a = Q::one();
    let mut out = Vec::new();
    for m in 0..=m_max {
        out.push(&s.coeffs[m] * &a);
        a *= a_ratio(c, qv, m as u64)?;
    }
    Ok(out)
}

pub const MOMENT_TOL: f64 = 1e-6;

/// Quadrature moments against ∏Γ(β+m+1)/∏Γ(α+m+1) and against
/// (C·(c·a)_m)⁻¹ with C fitted at m = 0. One report per m.
pub fn moment_check(c: &CaseDescriptor, qv: &[Q], m_max: usize, precision: u32) -> Vec<CheckReport> {
    let start = Instant::now();
    let key = format!("{}.{}", case_key(c), fmt_q_list(qv));
    let fail_all = |msg: String| {
        (0..=m_max)
            .map(|m| {
                CheckReport::new(format!("meijer.moment.{key}.{m}")).case(c.case_id).q(qv).details(msg.clone()).pass_if(false)
            })
            .collect()
    };
    let mp = match meijer_params(c, qv) {
        Ok(m) => m,
        Err(e) => return fail_all(e.to_string()),
    };
    let quad = match moments_by_quadrature(&mp, m_max, precision) {
        Ok(v) => v,
        Err(e) => return fail_all(e.to_string()),
    };
    let ca = match ca_values(c, qv, m_max) {
        Ok(v) => v,
        Err(e) => return fail_all(e.to_string()),
    };
    let fitted = 1.0 / (quad[0].0 * to_f64(&ca[0]));
    let mut out = Vec::new();
    for m in 0..=m_max {
        let (lv, sign) = mp.ln_mellin(m as f64 + 1.0);
        let gamma_ratio = sign * lv.exp();
        let (val, est) = quad[m];
        let rel_gamma = ((val - gamma_ratio) / gamma_ratio).abs();
        let predicted = 1.0 / (fitted * to_f64(&ca[m]));
        let rel_ca = ((val - predicted) / predicted).abs();
        let ok = rel_gamma <= MOMENT_TOL && rel_ca <= MOMENT_TOL;
        out.push(
            CheckReport::new(format!("meijer.moment.{key}.{m}"))
                .case(c.case_id)
                .q(qv)
                .tolerance(format!("{MOMENT_TOL:e}"))
                .residual(format!("{:.3e}", rel_gamma.max(rel_ca)))
                .details(format!(
                    "quadrature {val:.12e} (est. error {est:.1e}); Gamma ratio {gamma_ratio:.12e}; \
                     1/(C (c a)_m) {predicted:.12e} with C = {fitted:.12e}"
                ))
                .pass_if(ok)
                .timed(start),
        );
    }
    out
}

/// Sign changes of G on a log-spaced grid over [u_min, u_max].
pub fn sign_scan(mp: &MeijerParams, u_min: f64, u_max: f64, points: usize, precision: u32) -> Result<Vec<(f64, f64)>> {
    let grid = log_grid(u_min, u_max, points);
    let g = MeijerG::from_params(mp);
    let vals: Vec<f64> = grid.par_iter().map(|&u| g.eval(u, precision).map(|v| v.value)).collect::<Result<_>>()?;
    Ok(grid
        .windows(2)
        .zip(vals.windows(2))
        .filter(|(_, v)| v[0] * v[1] < 0.0)
        .map(|(u, _)| (u[0], u[1]))
        .collect())
}

pub fn log_grid(u_min: f64, u_max: f64, points: usize) -> Vec<f64> {
    let n = points.max(2);
    let (a, b) = (u_min.ln(), u_max.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// (u, G(u)) pairs on a log grid.
pub fn weight_profile(mp: &MeijerParams, u_min: f64, u_max: f64, points: usize, precision: u32) -> Result<Vec<(f64, f64)>> {
    let g = MeijerG::from_params(mp);
    log_grid(u_min, u_max, points).into_par_iter().map(|u| g.eval(u, precision).map(|v| (u, v.value))).collect()
}

/// Passes when G changes sign on the grid; no sign change is inconclusive
/// rather than a failure, since positivity is allowed.
pub fn sign_scan_check(c: &CaseDescriptor, qv: &[Q], points: usize, precision: u32) -> CheckReport {
    let start = Instant::now();
    let base = CheckReport::new(format!("weight.sign.{}.{}", case_key(c), fmt_q_list(qv))).case(c.case_id).q(qv);
    let res = meijer_params(c, qv).and_then(|mp| sign_scan(&mp, 1e-3, 1e4, points, precision));
    match res {
        Ok(iv) => {
            let listed: Vec<String> = iv.iter().map(|(a, b)| format!("({a:.4e}, {b:.4e})")).collect();
            base.residual(iv.len().to_string())
                .details(format!("{} sign change(s) on [1e-3, 1e4]: {}", iv.len(), listed.join(", ")))
                .status(if iv.is_empty() { Status::Inconclusive } else { Status::Pass })
                .timed(start)
        }
        Err(e) => base.details(e.to_string()).pass_if(false).timed(start),
    }
}

/// p(w, z) = C·G(∏|w_i|² H_i(z_i)^{k_i})·∏H_i(z_i)^{k_i} for rank-one
/// products, H_i(z) = 1 + |z|², with C = 1/∫G (the m = 0 moment, taken here
/// from its Γ-ratio value).
pub fn weight_eval(c: &CaseDescriptor, qv: &[Q], w: &[Complex64], z: &[Complex64], precision: u32) -> Result<f64> {
    if !c.is_rank1_product() {
        return Err(Error::UnsupportedFamily("weight evaluation at points is implemented for rank-one products".into()));
    }
    let s = c.factors.len();
    if w.len() != s || z.len() != s {
        return Err(Error::DimensionMismatch { expected: s, got: w.len().min(z.len()) });
    }
    let mp = meijer_params(c, qv)?;
    let (lv, sign) = mp.ln_mellin(1.0);
    let cst = sign * (-lv).exp();
    let mut u = 1.0;
    let mut hk = 1.0;
    for ((f, wi), zi) in c.factors.iter().zip(w).zip(z) {
        let h = (1.0 + zi.norm_sqr()).powi(f.k as i32);
        u *= wi.norm_sqr() * h;
        hk *= h;
    }
    if u == 0.0 {
        return Err(Error::Invalid("G at u = 0 is a limit; pass w ≠ 0".into()));
    }
    Ok(cst * meijer_eval(&mp, u, precision)?.value * hk)
}

pub const BERGMAN_TOL: f64 = 1e-4;

/// A polynomial φ(W, z) = Σ coeff·z^j W^m on C×C for case (1), with
/// W = w⁴ the coordinate in which the weight has Lebesgue measure.
pub type Bergman = Vec<(usize, u32, f64)>;

/// ‖φ‖² for case (1), q = 0, two ways: the graded sum Σ|coeff|²/(c_m binom(4m, j))
/// from exact c_m, and the integral of |φ|²·p over (W, z).
///
/// After the angular integrals only (t, s) = (|W|², |z|²) remain, and the
/// integral factorizes: ∫ t^m G(t(1+s)^4) dt = (1+s)^{−4m−4} M_m, so with the
/// weight's (1+s)^4 and the measure's (1+s)^{−2} a monomial contributes
/// (M_m/M_0)·∫ s^j (1+s)^{−4m−2} ds. Both integrals are done by quadrature.
pub fn bergman_norm_case1(qv: &[Q], phi: &Bergman, precision: u32) -> CheckReport {
    let start = Instant::now();
    let base = CheckReport::new("bergman.case1").case(1).q(qv).tolerance(format!("{BERGMAN_TOL:e}"));
    let run = || -> Result<(f64, f64)> {
        let c = crate::jordan::case(1, crate::jordan::default_params(1))?;
        if qv.len() != 1 || !qv[0].is_zero() {
            return Err(Error::UnsupportedFamily("the weighted-integral route is implemented for q = 0".into()));
        }
        let m_max = phi.iter().map(|t| t.0).max().unwrap_or(0);
        let s = c_sequence(&c, qv, m_max)?;
        let mut exact = 0.0;
        for &(m, j, coeff) in phi {
            let n = 4 * m as u64;
            if j as u64 > n {
                return Err(Error::Invalid(format!("z^{j} is not in the m = {m} graded piece")));
            }
            exact += coeff * coeff / (to_f64(&s.coeffs[m]) * to_f64(&Q::from(binomial(n, j as u64))));
        }
        let mp = meijer_params(&c, qv)?;
        let moments = moments_by_quadrature(&mp, m_max, precision)?;
        let mut numeric = 0.0;
        for &(m, j, coeff) in phi {
            let n = 4 * m as i32;
            let radial = integrate_semi_infinite(|x| x.powi(j as i32) * (1.0 + x).powi(-n - 2), 1e-13)?;
            numeric += coeff * coeff * moments[m].0 / moments[0].0 * radial;
        }
        Ok((exact, numeric))
    };
    match run() {
        Ok((exact, numeric)) => {
            let rel = ((numeric - exact) / exact).abs();
            base.residual(format!("{rel:.3e}"))
                .details(format!("graded sum {exact:.12e}; weighted integral {numeric:.12e}"))
                .pass_if(rel <= BERGMAN_TOL)
                .timed(start)
        }
        Err(e) => base.details(e.to_string()).pass_if(false).timed(start),
    }
}

/// Quadrature a_m = ∫_0^∞ (1+s)^{−N−2} ds for case (1), N = 4m + q,
/// against 1/(N+1).
pub fn radial_a_check(qv: &[Q], m_max: usize, tol: f64) -> CheckReport {
    let start = Instant::now();
    let base = CheckReport::new(format!("kernel.a_quad.1.{}", fmt_q_list(qv))).case(1).q(qv).tolerance(format!("{tol:e}"));
    let Some(qn) = crate::rational::to_u64(&qv[0]) else {
        return base.details("q must be a non-negative integer").pass_if(false).timed(start);
    };
    let mut worst = 0.0f64;
    for m in 0..=m_max as u64 {
        let n = 4 * m + qn;
        match crate::fock::radial_a(n) {
            Ok(v) => {
                let expect = to_f64(&(Q::one() / qi(n as i64 + 1)));
                worst = worst.max(((v - expect) / expect).abs());
            }
            Err(e) => return base.details(e.to_string()).pass_if(false).timed(start),
        }
    }
    base.residual(format!("{worst:.3e}")).details(format!("m <= {m_max}")).pass_if(worst <= tol).timed(start)
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
    fn params_examples() {
        let mp = meijer_params(&c(5), &vec![qi(0); 4]).unwrap();
        assert_eq!(mp.alpha, vec![qi(0), qi(1)]);
        assert_eq!(mp.beta, vec![qi(1); 4]);
        assert_eq!(mp.reduced(), (vec![qi(0)], vec![qi(1); 3]));
        let mp = meijer_params(&c(1), &[qi(4)]).unwrap();
        assert_eq!(mp.alpha, vec![q(1, 4), q(5, 4)]);
        assert_eq!(mp.beta, vec![q(1, 2), q(3, 4), qi(1), q(5, 4)]);
    }

    #[test]
    fn g_closed_forms() {
        // G^{1,0}_{0,1}(u | b) = u^b e^{−u}
        let g = MeijerG { a: vec![], b: vec![0.5] };
        for u in [0.01, 0.7, 3.0, 20.0] {
            let v = g.eval(u, 11).unwrap();
            let expect = u.powf(0.5) * (-u).exp();
            assert!((v.value - expect).abs() < 1e-10 * v.scale.max(expect), "{u}: {} vs {expect}", v.value);
        }
        // G^{2,0}_{0,2}(u | 0, 1/2) = √π e^{−2√u}
        let g = MeijerG { a: vec![], b: vec![0.0, 0.5] };
        for u in [0.05, 1.0, 9.0] {
            let v = g.eval(u, 11).unwrap();
            let expect = std::f64::consts::PI.sqrt() * (-2.0 * u.sqrt()).exp();
            assert!((v.value - expect).abs() < 1e-10 * expect.max(1e-3), "{u}: {} vs {expect}", v.value);
        }
        // as many α as β: no decay along vertical lines
        assert!(MeijerG { a: vec![2.5], b: vec![0.0] }.eval(0.5, 10).is_err());
    }

    #[test]
    fn case5_moments() {
        let mp = meijer_params(&c(5), &vec![qi(0); 4]).unwrap();
        let m = moments_by_quadrature(&mp, 2, 11).unwrap();
        for (got, want) in m.iter().zip([1.0, 8.0, 108.0]) {
            assert!((got.0 - want).abs() < 1e-8 * want, "{} vs {want}", got.0);
        }
        assert!(moment_check(&c(5), &vec![qi(1); 4], 3, 11).iter().all(|r| r.passed()));
    }

    #[test]
    fn case1_sign_change_and_bergman() {
        let mp = meijer_params(&c(1), &[qi(0)]).unwrap();
        let iv = sign_scan(&mp, 1e-3, 1e4, 120, 10).unwrap();
        assert!(!iv.is_empty());
        let r = bergman_norm_case1(&[qi(0)], &vec![(1, 0, 1.0)], 11);
        assert!(r.passed(), "{}", r.details);
        assert!(r.details.contains("3.000000000000e-1"));
        let c9 = case(9, CaseParams { d: 1, ..Default::default() }).unwrap();
        assert!(moment_check(&c9, &[qi(0)], 2, 11).iter().all(|r| r.passed()));
        assert!(radial_a_check(&[qi(0)], 4, 1e-8).passed());
    }

    #[test]
    fn weight_at_points() {
        let c1 = c(1);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mp = meijer_params(&c1, &[qi(0)]).unwrap();
        let (lv, sign) = mp.ln_mellin(1.0);
        let g1 = meijer_eval(&mp, 1.0, 11).unwrap().value;
        let p = weight_eval(&c1, &[qi(0)], &[one], &[zero], 11).unwrap();
        assert!((p - sign * (-lv).exp() * g1).abs() < 1e-12 * p.abs());
        // |z| = 1 doubles H: u = 16|w|², factor 16
        let p2 = weight_eval(&c1, &[qi(0)], &[Complex64::new(0.25, 0.0)], &[one], 11).unwrap();
        assert!((p2 - 16.0 * p).abs() < 1e-9 * p.abs());
    }
}
