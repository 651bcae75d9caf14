//! Graded Fock spaces for products of rank-one factors, with the operators
//! M, D, ρ(H), π(σ), ρ(E), ρ(F) acting exactly on monomials.
//!
//! A basis vector of O_m is z^j w^{km+q} with 0 ≤ j_i ≤ N_i = k_i m + q_i; it
//! is keyed by (m, j). The w part is implied by m.

use std::collections::{BTreeMap, VecDeque};
use std::time::Instant;

use num_traits::{One, Signed, Zero};

use crate::bernstein::case_key;
use crate::error::{Error, Result};
use crate::jordan::CaseDescriptor;
use crate::linalg::{axpy, Echelon, Mat, SparseVec};
use crate::rational::{binomial, falling, fmt_q, fmt_q_list, qi, to_f64, to_u64, Q};
use crate::report::CheckReport;
use crate::sl2::{delta_value, eta0_of, KappaConvention};
use crate::special::integrate_semi_infinite;

pub type Key = (u32, Vec<u32>);
pub type Vector = SparseVec<Key>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    M,
    D,
    RhoH,
    Sigma,
    RhoE,
    RhoF,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DkGen {
    E,
    F,
    H,
}

/// A rank-one-product case at a fixed integral q, with δ fixed by κ.
#[derive(Clone, Debug)]
pub struct FockModel {
    pub case: CaseDescriptor,
    pub q: Vec<u64>,
    pub k: Vec<u64>,
    pub eta0: Q,
    pub kappa: Q,
}

impl FockModel {
    pub fn new(c: &CaseDescriptor, qv: &[Q], conv: KappaConvention) -> Result<Self> {
        if !c.is_rank1_product() {
            return Err(Error::UnsupportedFamily(format!("case {} is not a product of rank-one factors", c.case_id)));
        }
        let eta0 = eta0_of(c, qv)?;
        let q = qv
            .iter()
            .map(|x| to_u64(x).ok_or_else(|| Error::Invalid(format!("q component {} is not a non-negative integer", fmt_q(x)))))
            .collect::<Result<Vec<_>>>()?;
        let k = c.factors.iter().map(|f| f.k as u64).collect();
        Ok(FockModel { case: c.clone(), q, k, eta0, kappa: conv.value(c) })
    }

    pub fn n(&self, m: u32) -> Vec<u64> {
        self.k.iter().zip(&self.q).map(|(k, q)| k * m as u64 + q).collect()
    }

    pub fn delta(&self, m: i64) -> Q {
        delta_value(&self.kappa, &self.eta0, m)
    }

    /// Monomial basis of O_m.
    pub fn basis(&self, m: u32) -> Vec<Key> {
        let n = self.n(m);
        let mut out = vec![Vec::new()];
        for ni in n {
            out = out
                .into_iter()
                .flat_map(|e: Vec<u32>| (0..=ni as u32).map(move |j| {
                    let mut e = e.clone();
                    e.push(j);
                    e
                }))
                .collect();
        }
        out.into_iter().map(|e| (m, e)).collect()
    }

    pub fn basis_up_to(&self, m_max: u32) -> Vec<Key> {
        (0..=m_max).flat_map(|m| self.basis(m)).collect()
    }

    fn block_sign(&self, m: u32) -> Q {
        let total: u64 = self.n(m).iter().sum();
        if total % 2 == 0 {
            Q::one()
        } else {
            -Q::one()
        }
    }

    fn apply_key(&self, op: Op, key: &Key) -> Vector {
        let (m, j) = key;
        let mut out = Vector::new();
        match op {
            Op::M => {
                out.insert((m + 1, j.clone()), Q::one());
            }
            Op::D => {
                if *m == 0 || j.iter().zip(&self.k).any(|(ji, ki)| (*ji as u64) < *ki) {
                    return out;
                }
                let c: Q = j.iter().zip(&self.k).map(|(ji, ki)| falling(&qi(*ji as i64), *ki as usize)).product();
                let e = j.iter().zip(&self.k).map(|(ji, ki)| ji - *ki as u32).collect();
                out.insert((m - 1, e), c);
            }
            Op::RhoH => {
                let s: i64 = j.iter().map(|x| *x as i64).sum();
                let n: u64 = self.n(*m).iter().sum();
                let w = qi(s) - qi(n as i64) / qi(2);
                if !w.is_zero() {
                    out.insert(key.clone(), w);
                }
            }
            Op::Sigma => {
                // z^j ↦ ∏(−z_i)^{N_i}(−1/z_i)^{j_i} = (−1)^{ΣN+Σj} z^{N−j}
                let n = self.n(*m);
                let e: Vec<u32> = n.iter().zip(j).map(|(ni, ji)| *ni as u32 - ji).collect();
                let parity = n.iter().sum::<u64>() + j.iter().map(|x| *x as u64).sum::<u64>();
                out.insert((*m, e), if parity % 2 == 0 { Q::one() } else { -Q::one() });
            }
            Op::RhoF => {
                out = self.apply_key(Op::M, key);
                let d = self.apply_key(Op::D, key);
                axpy(&mut out, &-self.delta(*m as i64 - 1), &d);
            }
            Op::RhoE => {
                out = self.apply(Op::Sigma, &self.apply(Op::RhoF, &self.sigma_inv(key)));
            }
        }
        out
    }

    /// σ⁻¹ = (−1)^{ΣN}·σ on O_m, since σ² is that sign.
    fn sigma_inv(&self, key: &Key) -> Vector {
        let s = self.apply_key(Op::Sigma, key);
        s.into_iter().map(|(k, x)| (k, x * self.block_sign(key.0))).collect()
    }

    pub fn apply(&self, op: Op, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (k, c) in v {
            axpy(&mut out, c, &self.apply_key(op, k));
        }
        out
    }

    /// Per-factor sl₂ of translations, dilations and conjugate translations:
    /// e = ∂_i, h = 2z_i∂_i − N_i, f = z_i²∂_i − N_i z_i. Here e lowers the
    /// h-weight: [e,f] = h, [h,e] = −2e, [h,f] = 2f, so (f, −e, h) is the
    /// standard triple.
    pub fn dk(&self, factor: usize, g: DkGen, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for ((m, j), c) in v {
            let n = self.n(*m)[factor] as i64;
            let ji = j[factor] as i64;
            let mut put = |e: Vec<u32>, x: Q| axpy(&mut out, c, &[((*m, e), x)].into_iter().collect());
            match g {
                DkGen::E => {
                    if ji > 0 {
                        let mut e = j.clone();
                        e[factor] -= 1;
                        put(e, qi(ji));
                    }
                }
                DkGen::H => {
                    if 2 * ji - n != 0 {
                        put(j.clone(), qi(2 * ji - n));
                    }
                }
                DkGen::F => {
                    if ji - n != 0 {
                        let mut e = j.clone();
                        e[factor] += 1;
                        put(e, qi(ji - n));
                    }
                }
            }
        }
        out
    }

    pub fn operator_matrix(&self, op: Op, m: u32) -> OperatorMatrix {
        let cols = self.basis(m);
        let images: Vec<Vector> = cols.iter().map(|k| self.apply_key(op, k)).collect();
        let mut rows: Vec<Key> = images.iter().flat_map(|v| v.keys().cloned()).collect();
        rows.sort();
        rows.dedup();
        let index: BTreeMap<&Key, usize> = rows.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut entries = vec![vec![Q::zero(); cols.len()]; rows.len()];
        for (c, v) in images.iter().enumerate() {
            for (k, x) in v {
                entries[index[k]][c] = x.clone();
            }
        }
        OperatorMatrix { op, rows, cols, entries }
    }
}

/// Matrix of an operator restricted to O_m, rows indexed by the keys its
/// image touches.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub op: Op,
    pub rows: Vec<Key>,
    pub cols: Vec<Key>,
    pub entries: Mat,
}

fn unit(k: &Key) -> Vector {
    [(k.clone(), Q::one())].into_iter().collect()
}

fn sub(a: &Vector, b: &Vector) -> Vector {
    let mut out = a.clone();
    axpy(&mut out, &-Q::one(), b);
    out
}

fn scaled(a: &Vector, c: &Q) -> Vector {
    a.iter().map(|(k, x)| (k.clone(), x * c)).filter(|(_, x)| !x.is_zero()).collect()
}

/// Worst violation of the three sl₂ relations on one basis vector; None when
/// all hold.
fn relation_failure(model: &FockModel, key: &Key) -> Option<String> {
    let v = unit(key);
    let (e, f, h) = (Op::RhoE, Op::RhoF, Op::RhoH);
    let ap = |o: Op, x: &Vector| model.apply(o, x);
    let he = sub(&ap(h, &ap(e, &v)), &ap(e, &ap(h, &v)));
    if he != scaled(&ap(e, &v), &qi(2)) {
        return Some(format!("[H,E] != 2E at {key:?}"));
    }
    let hf = sub(&ap(h, &ap(f, &v)), &ap(f, &ap(h, &v)));
    if hf != scaled(&ap(f, &v), &qi(-2)) {
        return Some(format!("[H,F] != -2F at {key:?}"));
    }
    let ef = sub(&ap(e, &ap(f, &v)), &ap(f, &ap(e, &v)));
    let diff = sub(&ef, &ap(h, &v));
    if !diff.is_empty() {
        let (k, x) = diff.iter().next().unwrap();
        return Some(format!("[E,F] - H at {key:?} has component {} on {k:?}", fmt_q(x)));
    }
    None
}

/// Relations on interior blocks 1..m_trunc−1, plus a report on block 0.
pub fn commutator_check(c: &CaseDescriptor, qv: &[Q], m_trunc: u32, conv: KappaConvention) -> CheckReport {
    let start = Instant::now();
    let id = format!("fock.comm.{}.{}", case_key(c), fmt_q_list(qv));
    let base = CheckReport::new(id).case(c.case_id).q(qv);
    let model = match FockModel::new(c, qv, conv) {
        Ok(m) => m,
        Err(e) => return base.details(e.to_string()).pass_if(false).timed(start),
    };
    let mut failure = None;
    let mut checked = 0usize;
    'outer: for m in 1..m_trunc {
        for key in model.basis(m) {
            checked += 1;
            if let Some(f) = relation_failure(&model, &key) {
                failure = Some(f);
                break 'outer;
            }
        }
    }
    let lowest = model.basis(0).iter().filter_map(|k| relation_failure(&model, k)).count();
    let details = format!(
        "kappa = {} ({}), eta0 = {}, {} interior basis vectors checked; lowest block: {} vectors violate a relation{}",
        fmt_q(&model.kappa),
        conv.name(),
        fmt_q(&model.eta0),
        checked,
        lowest,
        failure.as_ref().map(|f| format!("; first interior failure: {f}")).unwrap_or_default()
    );
    base.residual(if failure.is_none() { "0" } else { "nonzero" }).details(details).pass_if(failure.is_none()).timed(start)
}

/// Picks the κ convention under which case (1), q = 0 satisfies the
/// relations; None when neither does.
pub fn calibrate_kappa(c1: &CaseDescriptor) -> Option<KappaConvention> {
    [KappaConvention::InverseA, KappaConvention::A]
        .into_iter()
        .find(|conv| commutator_check(c1, &[Q::zero()], 4, *conv).passed())
}

/// Span generated from the constant 1 ∈ O_0 under the per-factor sl₂'s and
/// ρ(E), ρ(F), restricted to blocks ≤ m_trunc. Passes when every basis vector
/// of blocks 0..m_trunc−1 is in the span.
pub fn cyclicity_check(c: &CaseDescriptor, qv: &[Q], m_trunc: u32, conv: KappaConvention) -> CheckReport {
    let start = Instant::now();
    let id = format!("fock.cyclic.{}.{}", case_key(c), fmt_q_list(qv));
    let base = CheckReport::new(id).case(c.case_id).q(qv);
    let model = match FockModel::new(c, qv, conv) {
        Ok(m) => m,
        Err(e) => return base.details(e.to_string()).pass_if(false).timed(start),
    };
    let nf = model.k.len();
    let mut span: Echelon<Key> = Echelon::new();
    let mut queue: VecDeque<Vector> = VecDeque::new();
    let seed = unit(&(0, vec![0; nf]));
    span.insert(&seed);
    queue.push_back(seed);
    while let Some(v) = queue.pop_front() {
        let mut images = Vec::new();
        for i in 0..nf {
            for g in [DkGen::E, DkGen::F, DkGen::H] {
                images.push(model.dk(i, g, &v));
            }
        }
        if v.keys().all(|(m, _)| *m < m_trunc) {
            images.push(model.apply(Op::RhoE, &v));
            images.push(model.apply(Op::RhoF, &v));
        }
        for w in images {
            let r = span.reduce(&w);
            if !r.is_empty() && span.insert(&r) {
                queue.push_back(r);
            }
        }
    }
    let target = model.basis_up_to(m_trunc.saturating_sub(1));
    let missing = target.iter().filter(|k| !span.contains(&unit(k))).count();
    base.residual(format!("{missing}"))
        .details(format!(
            "span dimension {} over blocks 0..={}, {} of {} basis vectors in blocks 0..{} missing",
            span.rank(),
            m_trunc,
            missing,
            target.len(),
            m_trunc
        ))
        .pass_if(missing == 0)
        .timed(start)
}

/// ‖z^j‖²_m for case (1): exact 1/binomial(N, j) and the radial quadrature
/// (1/a_m)∫_0^∞ t^j (1+t)^{−N−2} dt with a_m = ∫_0^∞ (1+t)^{−N−2} dt.
pub fn monomial_norms(c: &CaseDescriptor, qv: &[Q], m: u32) -> Result<Vec<(u32, Q, f64)>> {
    if c.case_id != 1 {
        return Err(Error::UnsupportedFamily("radial norm quadrature is implemented for case (1)".into()));
    }
    let model = FockModel::new(c, qv, KappaConvention::InverseA)?;
    let n = model.n(m)[0];
    let a_m = radial_a(n)?;
    let mut out = Vec::new();
    for j in 0..=n {
        let exact = Q::from(binomial(n, j)).recip();
        let integral = integrate_semi_infinite(|t| t.powi(j as i32) * (1.0 + t).powi(-(n as i32) - 2), 1e-14)?;
        out.push((j as u32, exact, integral / a_m));
    }
    Ok(out)
}

/// a_m = ∫_C (1+|z|²)^{−N−2} dLeb/π by radial quadrature.
pub fn radial_a(n: u64) -> Result<f64> {
    integrate_semi_infinite(|t| (1.0 + t).powi(-(n as i32) - 2), 1e-14)
}

pub fn norm_check(m_max: u32, qv: &[Q], tol: f64) -> CheckReport {
    let start = Instant::now();
    let c = crate::jordan::case(1, crate::jordan::default_params(1)).expect("case 1");
    let base = CheckReport::new("fock.norm.case1").case(1).q(qv).tolerance(format!("{tol:e} relative"));
    let mut worst = 0.0f64;
    for m in 0..=m_max {
        match monomial_norms(&c, qv, m) {
            Ok(rows) => {
                for (_, exact, num) in rows {
                    let e = to_f64(&exact);
                    worst = worst.max((num - e).abs() / e);
                }
            }
            Err(e) => return base.details(e.to_string()).pass_if(false).timed(start),
        }
    }
    base.residual(format!("{worst:.3e}"))
        .details(format!("max relative deviation over m <= {m_max}, all j"))
        .pass_if(worst <= tol)
        .timed(start)
}

/// σ² on O_m as a multiple of the identity; None if it is not one.
pub fn sigma_square_sign(model: &FockModel, m: u32) -> Option<Q> {
    let mut sign = None;
    for k in model.basis(m) {
        let v = model.apply(Op::Sigma, &model.apply(Op::Sigma, &unit(&k)));
        let x = v.get(&k)?.clone();
        if v.len() != 1 || !x.abs().is_one() || sign.as_ref().is_some_and(|s: &Q| *s != x) {
            return None;
        }
        sign = Some(x);
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{case, default_params};

    fn model(id: u32, q: &[i64]) -> FockModel {
        let c = case(id, default_params(id)).unwrap();
        let qv: Vec<Q> = q.iter().map(|x| qi(*x)).collect();
        FockModel::new(&c, &qv, KappaConvention::InverseA).unwrap()
    }

    fn img(m: &FockModel, op: Op, k: Key) -> Vector {
        m.apply(op, &unit(&k))
    }

    #[test]
    fn basic_operators() {
        let m1 = model(1, &[0]);
        assert_eq!(img(&m1, Op::M, (0, vec![0])), unit(&(1, vec![0])));
        assert_eq!(img(&m1, Op::M, (1, vec![3])), unit(&(2, vec![3])));
        assert!(!m1.basis(0).contains(&(0, vec![2])));
        assert_eq!(img(&m1, Op::D, (1, vec![4])), [((0, vec![0]), qi(24))].into_iter().collect());
        assert!(img(&m1, Op::D, (1, vec![3])).is_empty());
        assert!(img(&m1, Op::RhoH, (1, vec![2])).is_empty());
        assert_eq!(img(&m1, Op::RhoH, (1, vec![4])), [((1, vec![4]), qi(2))].into_iter().collect());
        assert_eq!(img(&m1, Op::Sigma, (1, vec![0])), unit(&(1, vec![4])));
        assert_eq!(img(&m1, Op::Sigma, (1, vec![4])), unit(&(1, vec![0])));
        let m5 = model(5, &[0, 0, 0, 0]);
        assert_eq!(img(&m5, Op::M, (0, vec![0; 4])), unit(&(1, vec![0; 4])));
        assert_eq!(img(&m5, Op::D, (1, vec![1; 4])), unit(&(0, vec![0; 4])));
        assert!(img(&m5, Op::RhoH, (0, vec![0; 4])).is_empty());
        // σ(z1) at m = 1: (−1)^{4+1} z2 z3 z4
        assert_eq!(img(&m5, Op::Sigma, (1, vec![1, 0, 0, 0])), [((1, vec![0, 1, 1, 1]), qi(-1))].into_iter().collect());
        assert_eq!(img(&m5, Op::RhoF, (0, vec![0; 4])), unit(&(1, vec![0; 4])));
    }

    #[test]
    fn weights_and_sigma() {
        let m1 = model(1, &[0]);
        // ρ(E)1 on O_0 lands in O_1 with H-weight +2
        let e1 = img(&m1, Op::RhoE, (0, vec![0]));
        assert!(!e1.is_empty());
        for k in e1.keys() {
            assert_eq!(k.0, 1);
            assert_eq!(img(&m1, Op::RhoH, k.clone()), unit(k).into_iter().map(|(k, _)| (k, qi(2))).collect());
        }
        let m5 = model(5, &[1, 1, 1, 1]);
        for m in 0..3 {
            assert!(sigma_square_sign(&m1, m).is_some());
            assert!(sigma_square_sign(&m5, m).is_some());
        }
    }

    #[test]
    fn dk_is_sl2() {
        let m3 = model(3, &[0, 0]);
        for k in m3.basis(2) {
            let v = unit(&k);
            for i in 0..2 {
                let ef = sub(&m3.dk(i, DkGen::E, &m3.dk(i, DkGen::F, &v)), &m3.dk(i, DkGen::F, &m3.dk(i, DkGen::E, &v)));
                assert_eq!(ef, m3.dk(i, DkGen::H, &v));
                let he = sub(&m3.dk(i, DkGen::H, &m3.dk(i, DkGen::E, &v)), &m3.dk(i, DkGen::E, &m3.dk(i, DkGen::H, &v)));
                assert_eq!(he, scaled(&m3.dk(i, DkGen::E, &v), &qi(-2)));
                let hf = sub(&m3.dk(i, DkGen::H, &m3.dk(i, DkGen::F, &v)), &m3.dk(i, DkGen::F, &m3.dk(i, DkGen::H, &v)));
                assert_eq!(hf, scaled(&m3.dk(i, DkGen::F, &v), &qi(2)));
                // commutes with the other factor
                let j = 1 - i;
                let x = sub(&m3.dk(i, DkGen::F, &m3.dk(j, DkGen::E, &v)), &m3.dk(j, DkGen::E, &m3.dk(i, DkGen::F, &v)));
                assert!(x.is_empty());
            }
        }
        let m1 = model(1, &[0]);
        assert_eq!(m1.dk(0, DkGen::H, &unit(&(1, vec![0]))), [((1, vec![0]), qi(-4))].into_iter().collect());
        assert_eq!(m1.dk(0, DkGen::E, &unit(&(1, vec![1]))), unit(&(1, vec![0])));
    }

    #[test]
    fn commutators_small() {
        let c1 = case(1, default_params(1)).unwrap();
        assert_eq!(calibrate_kappa(&c1), Some(KappaConvention::InverseA));
        assert!(!commutator_check(&c1, &[qi(0)], 4, KappaConvention::A).passed());
        let c5 = case(5, default_params(5)).unwrap();
        let r = commutator_check(&c5, &vec![qi(2); 4], 3, KappaConvention::InverseA);
        assert!(r.passed(), "{}", r.details);
    }

    #[test]
    fn cyclic_small() {
        let c1 = case(1, default_params(1)).unwrap();
        let r = cyclicity_check(&c1, &[qi(0)], 3, KappaConvention::InverseA);
        assert!(r.passed(), "{}", r.details);
    }

    #[test]
    fn norms_case1() {
        let c1 = case(1, default_params(1)).unwrap();
        let rows = monomial_norms(&c1, &[qi(0)], 1).unwrap();
        assert_eq!(rows[0].1, qi(1));
        assert_eq!(rows[2].1, crate::rational::q(1, 6));
        assert_eq!(rows[4].1, qi(1));
        for (_, e, n) in rows {
            assert!((n - to_f64(&e)).abs() < 1e-9);
        }
        assert!(norm_check(3, &[qi(0)], 1e-8).passed());
    }
}
