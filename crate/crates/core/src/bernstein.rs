//! Bernstein polynomials b_i, B_i, B and B̃, the Bernstein identity, and the
//! exact a_m ratios in their two forms.

use std::fmt;
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::jordan::{determinant_poly, dual_determinant_poly, CaseDescriptor, Family, SimpleFactor};
use crate::polyalg::{apply_diff_op, poly_eval, MultiPoly};
use crate::rational::{fmt_q, fmt_q_list, pochhammer, q, qi, Q};
use crate::report::CheckReport;

/// Univariate polynomial in α, coefficients from low to high degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// a·α + b
    pub fn linear(a: Q, b: Q) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Q::zero();
        Self::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Self::new(r)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// p(a·α + b)
    pub fn compose_affine(&self, a: &Q, b: &Q) -> Self {
        let lin = Self::linear(a.clone(), b.clone());
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc.mul(&lin).add(&Self::constant(c.clone())))
    }

    /// lead·∏(α − ρ)
    pub fn from_roots(roots: &[Q], lead: &Q) -> Self {
        roots
            .iter()
            .fold(Self::constant(lead.clone()), |acc, r| acc.mul(&Self::linear(Q::one(), -r.clone())))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            let body = if mono.is_empty() {
                fmt_q(&c.abs())
            } else if c.abs().is_one() {
                mono
            } else {
                format!("{}*{}", fmt_q(&c.abs()), mono)
            };
            parts.push((c.is_negative(), body));
        }
        for (i, (neg, body)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// b(α) = α(α + d/2)…(α + (r−1)d/2)
pub fn b_poly(f: &SimpleFactor) -> UniPoly {
    (0..f.rank).fold(UniPoly::one(), |acc, j| acc.mul(&UniPoly::linear(Q::one(), q((j * f.degree) as i64, 2))))
}

/// B_i(α) = b(kα) b(kα − 1) … b(kα − k + 1)
pub fn big_b_poly(f: &SimpleFactor) -> UniPoly {
    let b = b_poly(f);
    let k = qi(f.k as i64);
    (0..f.k).fold(UniPoly::one(), |acc, t| acc.mul(&b.compose_affine(&k, &qi(-(t as i64)))))
}

/// B(α) = ∏ B_i(α)
pub fn case_b_poly(c: &CaseDescriptor) -> UniPoly {
    c.factors.iter().fold(UniPoly::one(), |acc, f| acc.mul(&big_b_poly(f)))
}

/// n_i/(k_i r_i)
pub fn shift_of(f: &SimpleFactor) -> Q {
    q(f.dim as i64, (f.k * f.rank) as i64)
}

/// B̃(α) = ∏ B_i(α − n_i/(k_i r_i)), normalised to be monic.
pub fn b_tilde_poly(c: &CaseDescriptor) -> UniPoly {
    let p = c
        .factors
        .iter()
        .fold(UniPoly::one(), |acc, f| acc.mul(&big_b_poly(f).compose_affine(&Q::one(), &-shift_of(f))));
    let lead = p.leading();
    p.scale(&lead.recip())
}

/// A = ∏ k_i^{k_i r_i}
pub fn leading_constant(c: &CaseDescriptor) -> Q {
    c.factors.iter().fold(Q::one(), |acc, f| acc * num_traits::pow(qi(f.k as i64), (f.k * f.rank) as usize))
}

/// Roots of B from the description x/k_i − y d_i/(2k_i), 0 ≤ x < k_i, 0 ≤ y < r_i.
pub fn described_roots(c: &CaseDescriptor) -> Vec<Q> {
    let mut roots = Vec::new();
    for f in &c.factors {
        for x in 0..f.k {
            for y in 0..f.rank {
                roots.push(q(x as i64, f.k as i64) - q((y * f.degree) as i64, (2 * f.k) as i64));
            }
        }
    }
    roots.sort();
    roots
}

/// Roots b_1..b_4 of B̃, i.e. n_i/(k_i r_i) + x/k_i − y d_i/(2k_i).
pub fn b_tilde_roots(c: &CaseDescriptor) -> Vec<Q> {
    let mut roots = Vec::new();
    for f in &c.factors {
        let s = shift_of(f);
        for x in 0..f.k {
            for y in 0..f.rank {
                roots.push(&s + q(x as i64, f.k as i64) - q((y * f.degree) as i64, (2 * f.k) as i64));
            }
        }
    }
    roots.sort();
    roots
}

/// Exact check of deg B = 4, B(0) = 0, lead = A and B = A∏(α − ρ) over the
/// described roots, plus the same factorization for B̃.
pub fn roots_check(c: &CaseDescriptor) -> CheckReport {
    let start = Instant::now();
    let b = case_b_poly(c);
    let a = leading_constant(c);
    let roots = described_roots(c);
    let factored = UniPoly::from_roots(&roots, &a);
    let bt = b_tilde_poly(c);
    let bt_factored = UniPoly::from_roots(&b_tilde_roots(c), &Q::one());
    let mut problems = Vec::new();
    if b.degree() != Some(4) {
        problems.push(format!("deg B = {:?}", b.degree()));
    }
    if !b.eval(&Q::zero()).is_zero() {
        problems.push("B(0) != 0".into());
    }
    if b.leading() != a {
        problems.push(format!("lead {} != A {}", fmt_q(&b.leading()), fmt_q(&a)));
    }
    if b != factored {
        problems.push("B differs from A·∏(α−ρ)".into());
    }
    if bt != bt_factored {
        problems.push("B̃ differs from ∏(α−b_j)".into());
    }
    let residual = b.sub(&factored);
    CheckReport::new(format!("bernstein.roots.{}", case_key(c)))
        .case(c.case_id)
        .residual(residual.to_string())
        .details(if problems.is_empty() {
            format!("B = {b}; roots {}", roots.iter().map(fmt_q).collect::<Vec<_>>().join(","))
        } else {
            problems.join("; ")
        })
        .pass_if(problems.is_empty())
        .timed(start)
}

/// "9.d2" style key for parametrized rows; plain id otherwise.
pub fn case_key(c: &CaseDescriptor) -> String {
    match c.case_id {
        2 | 6 | 7 => format!("{}.p{}", c.case_id, c.params.p),
        8 => format!("8.p{}_{}", c.params.p1, c.params.p2),
        9 | 10 => format!("{}.d{}", c.case_id, c.params.d),
        id => id.to_string(),
    }
}

/// How the Bernstein identity is checked for a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BernsteinMode {
    Symbolic,
    /// Exact evaluation at this many deterministic rational points.
    Points(usize),
}

/// Symbolic expansion for small factors, point evaluation for 10 or more variables.
pub fn default_mode(f: &SimpleFactor) -> BernsteinMode {
    if f.dim >= 10 {
        BernsteinMode::Points(5)
    } else {
        BernsteinMode::Symbolic
    }
}

/// The constant C with Δ^k(∂)Δ^{kα} = C·B(α)·Δ^{kα−k}, computed symbolically.
/// Errors when the two sides are not proportional.
pub fn bernstein_constant_symbolic(f: &SimpleFactor, alpha: u32) -> Result<Q> {
    if alpha == 0 {
        return Err(Error::Invalid("alpha must be positive".into()));
    }
    let delta = determinant_poly(f)?;
    let symbol = dual_determinant_poly(f)?.pow(f.k);
    let lhs = apply_diff_op(&symbol, &delta.pow(f.k * alpha))?;
    let base = delta.pow(f.k * alpha - f.k).scale(&big_b_poly(f).eval(&qi(alpha as i64)));
    proportionality(&lhs, &base)
}

fn proportionality(lhs: &MultiPoly, base: &MultiPoly) -> Result<Q> {
    let Some((e, b0)) = base.terms().iter().next() else {
        return Err(Error::Degenerate("right-hand side vanishes".into()));
    };
    let c = lhs.coeff(e) / b0;
    if lhs.sub(&base.scale(&c)).is_zero() {
        Ok(c)
    } else {
        Err(Error::Degenerate("sides are not proportional".into()))
    }
}

/// Deterministic integer points with Δ(z) ≠ 0.
pub fn sample_points(f: &SimpleFactor, count: usize, seed: u64) -> Result<Vec<Vec<Q>>> {
    let delta = determinant_poly(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::new();
    while pts.len() < count {
        let p: Vec<Q> = (0..f.dim).map(|_| qi(rng.gen_range(-3..=3))).collect();
        if !poly_eval(&delta, &p)?.is_zero() {
            pts.push(p);
        }
    }
    Ok(pts)
}

/// Δ^k(∂)(Δ^{kα}) evaluated at z0 from the jet of Δ at z0: only the
/// degree-kr part of Δ(z0 + h)^{kα} in h contributes.
pub fn bernstein_lhs_at(f: &SimpleFactor, alpha: u32, z0: &[Q]) -> Result<Q> {
    let delta = determinant_poly(f)?;
    let order = f.k * f.rank;
    let jet = delta.shift(z0).truncate_degree(order);
    let power = jet.pow_truncated(f.k * alpha, order).homogeneous_part(order);
    let symbol = dual_determinant_poly(f)?.pow(f.k);
    let r = apply_diff_op(&symbol, &power)?;
    Ok(r.coeff(&vec![0; f.dim as usize]))
}

/// One Bernstein identity check at α, against a constant calibrated at the
/// smallest α of the run (`calibrated`), or self-calibrated when None.
pub fn verify_bernstein_identity(f: &SimpleFactor, alpha: u32, calibrated: Option<&Q>) -> (CheckReport, Option<Q>) {
    let start = Instant::now();
    let id = format!("bernstein.identity.{}.{}", f.label(), alpha);
    let mode = default_mode(f);
    let result: Result<(Q, String)> = (|| {
        if alpha == 0 || (f.k * alpha) < f.k {
            return Err(Error::Invalid("need kα − k ≥ 0".into()));
        }
        match mode {
            BernsteinMode::Symbolic => {
                let c = bernstein_constant_symbolic(f, alpha)?;
                Ok((c, "symbolic".into()))
            }
            BernsteinMode::Points(n) => {
                let delta = determinant_poly(f)?;
                let b = big_b_poly(f).eval(&qi(alpha as i64));
                let mut c_seen: Option<Q> = None;
                for z0 in sample_points(f, n, 0x5eed ^ f.dim as u64)? {
                    let lhs = bernstein_lhs_at(f, alpha, &z0)?;
                    let rhs_base = &b * num_traits::pow(poly_eval(&delta, &z0)?, (f.k * alpha - f.k) as usize);
                    if rhs_base.is_zero() {
                        return Err(Error::Degenerate("B(α)Δ(z0)^(kα−k) vanishes".into()));
                    }
                    let c = lhs / rhs_base;
                    match &c_seen {
                        None => c_seen = Some(c),
                        Some(c0) if *c0 == c => {}
                        Some(c0) => {
                            return Err(Error::Degenerate(format!(
                                "constant varies across points: {} vs {}",
                                fmt_q(c0),
                                fmt_q(&c)
                            )))
                        }
                    }
                }
                Ok((c_seen.unwrap(), format!("{n} points")))
            }
        }
    })();
    match result {
        Ok((c, how)) => {
            let ok = calibrated.is_none_or(|c0| *c0 == c);
            let rep = CheckReport::new(id)
                .residual(match calibrated {
                    Some(c0) => fmt_q(&(&c - c0)),
                    None => "0".into(),
                })
                .details(format!("C = {} ({how}, {:?})", fmt_q(&c), f.family))
                .pass_if(ok)
                .timed(start);
            (rep, Some(c))
        }
        Err(e) => (CheckReport::new(id).details(e.to_string()).pass_if(false).timed(start), None),
    }
}

/// Checks α = alphas[0], alphas[1], … with the constant fixed at the first.
pub fn bernstein_family_checks(f: &SimpleFactor, alphas: &[u32]) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut c0: Option<Q> = None;
    for &a in alphas {
        let (rep, c) = verify_bernstein_identity(f, a, c0.as_ref());
        if c0.is_none() {
            c0 = c;
        }
        out.push(rep);
    }
    out
}

/// Expected constant in our coordinates: 4^k for Spin, 1 otherwise.
pub fn expected_constant(f: &SimpleFactor) -> Q {
    if f.family == Family::Spin {
        num_traits::pow(qi(4), f.k as usize)
    } else {
        Q::one()
    }
}

/// Γ_Ω(λ + shift)/Γ_Ω(λ) = ∏_j (λ − (j−1)d/2)_shift
pub fn gindikin_ratio(f: &SimpleFactor, lambda: &Q, shift: u32) -> Result<Q> {
    let mut acc = Q::one();
    for j in 0..f.rank {
        let a = lambda - q((j * f.degree) as i64, 2);
        // A pole of Γ_Ω at a non-positive integer argument would be crossed.
        if a.is_integer() && !a.is_positive() {
            return Err(Error::Degenerate(format!("Γ_Ω pole at {}", fmt_q(lambda))));
        }
        acc *= pochhammer(&a, shift as usize);
    }
    Ok(acc)
}

fn check_q(c: &CaseDescriptor, qv: &[Q]) -> Result<()> {
    if qv.len() != c.factors.len() {
        return Err(Error::DimensionMismatch { expected: c.factors.len(), got: qv.len() });
    }
    Ok(())
}

/// a_{m+1}/a_m = ∏B_i(−m−q_i/k_i−n_i/(k_i r_i)) / ∏B_i(−m−q_i/k_i−2n_i/(k_i r_i))
pub fn a_ratio(c: &CaseDescriptor, qv: &[Q], m: u64) -> Result<Q> {
    check_q(c, qv)?;
    let mq = qi(m as i64);
    let mut num = Q::one();
    let mut den = Q::one();
    for (f, qi_) in c.factors.iter().zip(qv) {
        let b = big_b_poly(f);
        let base = -&mq - qi_ / qi(f.k as i64);
        num *= b.eval(&(&base - shift_of(f)));
        den *= b.eval(&(&base - shift_of(f) * qi(2)));
    }
    if den.is_zero() {
        return Err(Error::Degenerate(format!("a_ratio denominator vanishes at m = {m}")));
    }
    Ok(num / den)
}

/// The same ratio from Gindikin gamma functions:
/// ∏ [Γ_Ω(N_i+k_i+n_i/r_i)/Γ_Ω(N_i+n_i/r_i)] / [Γ_Ω(N_i+k_i+2n_i/r_i)/Γ_Ω(N_i+2n_i/r_i)], N_i = k_i m + q_i.
pub fn a_ratio_gindikin(c: &CaseDescriptor, qv: &[Q], m: u64) -> Result<Q> {
    check_q(c, qv)?;
    let mut acc = Q::one();
    for (f, qi_) in c.factors.iter().zip(qv) {
        let n = qi((f.k as u64 * m) as i64) + qi_;
        let nr = f.n_over_r();
        let num = gindikin_ratio(f, &(&n + &nr), f.k)?;
        let den = gindikin_ratio(f, &(&n + &nr * qi(2)), f.k)?;
        if den.is_zero() {
            return Err(Error::Degenerate("Gindikin denominator vanishes".into()));
        }
        acc *= num / den;
    }
    Ok(acc)
}

/// Both a_{m+1}/a_m expressions agree exactly for m ≤ m_max.
pub fn a_ratio_check(c: &CaseDescriptor, qv: &[Q], m_max: u64) -> CheckReport {
    let start = Instant::now();
    let base = CheckReport::new(format!("bernstein.aratio.{}.{}", case_key(c), fmt_q_list(qv))).case(c.case_id).q(qv);
    for m in 0..=m_max {
        match (a_ratio(c, qv, m), a_ratio_gindikin(c, qv, m)) {
            (Ok(x), Ok(y)) if x == y => {}
            (Ok(x), Ok(y)) => {
                return base
                    .residual(fmt_q(&(x.clone() - &y)))
                    .details(format!("m = {m}: B-ratio {} vs Gindikin {}", fmt_q(&x), fmt_q(&y)))
                    .pass_if(false)
                    .timed(start)
            }
            (Err(e), _) | (_, Err(e)) => return base.details(format!("m = {m}: {e}")).pass_if(false).timed(start),
        }
    }
    base.residual("0").details(format!("m <= {m_max}")).pass_if(true).timed(start)
}

/// a_m for products of Rank1 factors, where Γ_Ω = Γ: ∏ 1/(k_i m + q_i + 1).
pub fn a_value_rank1(c: &CaseDescriptor, qv: &[Q], m: u64) -> Result<Q> {
    check_q(c, qv)?;
    if !c.is_rank1_product() {
        return Err(Error::UnsupportedFamily("a_m values are closed-form for Rank1 products only".into()));
    }
    Ok(c.factors.iter().zip(qv).fold(Q::one(), |acc, (f, qi_)| {
        acc / (qi((f.k as u64 * m) as i64) + qi_ + Q::one())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{case, default_params};

    #[test]
    fn b_examples() {
        assert_eq!(b_poly(&SimpleFactor::rank1(1)), UniPoly::linear(qi(1), qi(0)));
        let full4 = b_poly(&SimpleFactor::full(4, 1));
        assert_eq!(full4, UniPoly::from_roots(&[qi(0), qi(-1), qi(-2), qi(-3)], &qi(1)));
        assert_eq!(b_poly(&SimpleFactor::spin(4, 1)), UniPoly::from_roots(&[qi(0), qi(-1)], &qi(1)));
        let c1 = case(1, default_params(1)).unwrap();
        let b = case_b_poly(&c1);
        let expect = UniPoly::from_roots(&[qi(0), q(1, 4), q(1, 2), q(3, 4)], &qi(256));
        assert_eq!(b, expect);
        assert_eq!(b.eval(&qi(2)), qi(1680));
        let c5 = case(5, default_params(5)).unwrap();
        assert_eq!(case_b_poly(&c5), UniPoly::from_roots(&vec![qi(0); 4], &qi(1)));
    }

    #[test]
    fn identity_examples() {
        assert_eq!(bernstein_constant_symbolic(&SimpleFactor::rank1(4), 2).unwrap(), qi(1));
        assert_eq!(bernstein_constant_symbolic(&SimpleFactor::full(2, 1), 1).unwrap(), qi(1));
        assert_eq!(bernstein_constant_symbolic(&SimpleFactor::spin(3, 1), 2).unwrap(), qi(4));
        assert_eq!(bernstein_constant_symbolic(&SimpleFactor::sym(2, 1), 2).unwrap(), qi(1));
    }

    #[test]
    fn jet_matches_symbolic() {
        let f = SimpleFactor::sym(3, 1);
        let z0 = vec![qi(1), qi(2), qi(-1), qi(3), qi(0), qi(2)];
        let lhs = bernstein_lhs_at(&f, 2, &z0).unwrap();
        let delta = determinant_poly(&f).unwrap();
        let sym = apply_diff_op(&dual_determinant_poly(&f).unwrap(), &delta.pow(2)).unwrap();
        assert_eq!(lhs, poly_eval(&sym, &z0).unwrap());
    }

    #[test]
    fn gindikin_examples() {
        assert_eq!(gindikin_ratio(&SimpleFactor::rank1(1), &qi(1), 4).unwrap(), qi(24));
        assert_eq!(gindikin_ratio(&SimpleFactor::full(2, 1), &qi(2), 1).unwrap(), qi(2));
        assert_eq!(gindikin_ratio(&SimpleFactor::spin(4, 1), &qi(3), 2).unwrap(), qi(72));
    }

    #[test]
    fn a_ratio_examples() {
        let c1 = case(1, default_params(1)).unwrap();
        assert_eq!(a_ratio(&c1, &[qi(0)], 0).unwrap(), q(1, 5));
        let c5 = case(5, default_params(5)).unwrap();
        for m in 0..5u64 {
            let r = q(m as i64 + 1, m as i64 + 2);
            assert_eq!(a_ratio(&c5, &vec![qi(0); 4], m).unwrap(), num_traits::pow(r, 4));
        }
    }
}
