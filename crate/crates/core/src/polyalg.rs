//! Exact multivariate polynomials over the rationals, their use as constant
//! coefficient differential operators, and the Euler operator.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::{Family, SimpleFactor};
use crate::rational::{falling, fmt_q, qi, Q};

/// A polynomial variable; `factor` groups variables by simple Jordan factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    pub factor: usize,
}

impl Var {
    pub fn new(name: impl Into<String>, factor: usize) -> Self {
        Var { name: name.into(), factor }
    }
}

pub fn vars(names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| Var::new(*n, 0)).collect()
}

pub type Exps = Vec<u32>;

/// Sparse polynomial: exponent vector -> nonzero rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Exps, Q>,
}

impl MultiPoly {
    pub fn zero(vars: Vec<Var>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<Var>, c: Q) -> Self {
        let mut p = Self::zero(vars);
        let n = p.nvars();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(vars: Vec<Var>) -> Self {
        Self::constant(vars, Q::one())
    }

    /// The coordinate function of variable `i`.
    pub fn var(vars: Vec<Var>, i: usize) -> Self {
        let n = vars.len();
        assert!(i < n, "variable index out of range");
        let mut e = vec![0; n];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, Q::one());
        p
    }

    pub fn monomial(vars: Vec<Var>, exps: Exps, c: Q) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(vars: Vec<Var>, terms: impl IntoIterator<Item = (Exps, Q)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.nvars());
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Exps, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds c·z^e, keeping the no-zero-terms invariant.
    pub fn add_term(&mut self, e: Exps, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variable lists");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut r = Self::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.vars.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Keeps only the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of total degree above `d`.
    pub fn truncate_degree(&self, d: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product truncated at total degree `d`; used for jets at a point.
    pub fn mul_truncated(&self, other: &Self, d: u32) -> Self {
        self.check_same(other);
        let mut r = Self::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            if d1 > d {
                continue;
            }
            for (e2, c2) in &other.terms {
                if d1 + e2.iter().sum::<u32>() > d {
                    continue;
                }
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow_truncated(&self, k: u32, d: u32) -> Self {
        let mut r = Self::one(self.vars.clone());
        for _ in 0..k {
            r = r.mul_truncated(self, d);
        }
        r
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            r.add_term(f, c * qi(e[i] as i64));
        }
        r
    }

    /// Variables renamed/regrouped without touching the terms.
    pub fn with_vars(&self, vars: Vec<Var>) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        MultiPoly { vars, terms: self.terms.clone() }
    }

    /// Embeds into a larger variable list: variable j of self goes to slot `slots[j]`.
    pub fn embed(&self, vars: Vec<Var>, slots: &[usize]) -> Self {
        assert_eq!(slots.len(), self.nvars());
        let n = vars.len();
        let mut r = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut f = vec![0; n];
            for (j, &s) in slots.iter().enumerate() {
                f[s] += e[j];
            }
            r.add_term(f, c.clone());
        }
        r
    }

    /// Substitutes polynomial `subs[i]` (all over a common variable list) for variable i.
    pub fn compose(&self, subs: &[MultiPoly]) -> Self {
        assert_eq!(subs.len(), self.nvars());
        let target_vars = subs
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_default();
        let mut cache: Vec<Vec<MultiPoly>> = subs.iter().map(|s| vec![MultiPoly::one(target_vars.clone()), s.clone()]).collect();
        let mut r = Self::zero(target_vars.clone());
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target_vars.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap().mul(&subs[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][k as usize]);
            }
            r = r.add(&t);
        }
        r
    }

    /// p(z + a) as a polynomial in z.
    pub fn shift(&self, a: &[Q]) -> Self {
        assert_eq!(a.len(), self.nvars());
        let subs: Vec<MultiPoly> = (0..self.nvars())
            .map(|i| {
                MultiPoly::var(self.vars.clone(), i).add(&MultiPoly::constant(self.vars.clone(), a[i].clone()))
            })
            .collect();
        self.compose(&subs)
    }

    /// Content: positive gcd of numerators over lcm of denominators, so p / content is primitive.
    pub fn content(&self) -> Q {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            Q::one()
        } else {
            Q::new(g, l)
        }
    }

    pub fn leading_coeff(&self) -> Q {
        self.terms.iter().next_back().map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
    }

    /// Coefficient vector over a fixed monomial list.
    pub fn coeff_vector(&self, monomials: &[Exps]) -> Vec<Q> {
        monomials.iter().map(|m| self.coeff(m)).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].name.clone() } else { format!("{}^{}", self.vars[i].name, k) })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_q(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Exact value of `p` at `point`.
pub fn poly_eval(p: &MultiPoly, point: &[Q]) -> Result<Q> {
    if point.len() != p.nvars() {
        return Err(Error::DimensionMismatch { expected: p.nvars(), got: point.len() });
    }
    // Powers are cached per variable; each term is a product of cached powers.
    let maxdeg: Vec<u32> = (0..p.nvars()).map(|i| p.degree_in(i).unwrap_or(0)).collect();
    let powers: Vec<Vec<Q>> = point
        .iter()
        .zip(&maxdeg)
        .map(|(x, &d)| {
            let mut v = Vec::with_capacity(d as usize + 1);
            let mut acc = Q::one();
            v.push(acc.clone());
            for _ in 0..d {
                acc *= x;
                v.push(acc.clone());
            }
            v
        })
        .collect();
    let mut total = Q::zero();
    for (e, c) in p.terms() {
        let mut t = c.clone();
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                t *= &powers[i][k as usize];
            }
        }
        total += t;
    }
    Ok(total)
}

/// symbol(∂/∂z) applied to `target`.
pub fn apply_diff_op(symbol: &MultiPoly, target: &MultiPoly) -> Result<MultiPoly> {
    if symbol.nvars() != target.nvars() {
        return Err(Error::DimensionMismatch { expected: target.nvars(), got: symbol.nvars() });
    }
    let mut r = MultiPoly::zero(target.vars.clone());
    for (es, cs) in symbol.terms() {
        for (et, ct) in target.terms() {
            if es.iter().zip(et).any(|(a, b)| a > b) {
                continue;
            }
            let mut c = cs * ct;
            let mut f = et.clone();
            for i in 0..f.len() {
                if es[i] > 0 {
                    c *= falling(&qi(et[i] as i64), es[i] as usize);
                    f[i] -= es[i];
                }
            }
            r.add_term(f, c);
        }
    }
    Ok(r)
}

/// Σ_v z_v ∂p/∂z_v.
pub fn euler(p: &MultiPoly) -> MultiPoly {
    let mut r = MultiPoly::zero(p.vars.clone());
    for (e, c) in p.terms() {
        let d: u32 = e.iter().sum();
        r.add_term(e.clone(), c * qi(d as i64));
    }
    r
}

/// Euler operator restricted to the variables of one factor group.
pub fn euler_factor(p: &MultiPoly, factor: usize) -> MultiPoly {
    let mut r = MultiPoly::zero(p.vars.clone());
    for (e, c) in p.terms() {
        let d: u32 = e.iter().zip(p.vars()).filter(|(_, v)| v.factor == factor).map(|(k, _)| *k).sum();
        r.add_term(e.clone(), c * qi(d as i64));
    }
    r
}

/// numerator / denominator, normalised by coefficient content only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
}

impl RationalFn {
    pub fn new(numerator: MultiPoly, denominator: MultiPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let mut r = RationalFn { numerator, denominator };
        r.normalize();
        Ok(r)
    }

    fn normalize(&mut self) {
        // Make the denominator primitive with positive leading coefficient.
        let mut c = self.denominator.content();
        if self.denominator.leading_coeff().is_negative() {
            c = -c;
        }
        let inv = c.recip();
        self.denominator = self.denominator.scale(&inv);
        self.numerator = self.numerator.scale(&inv);
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> RationalFn {
        let mut r = RationalFn { numerator: self.numerator.mul(p), denominator: self.denominator.clone() };
        r.normalize();
        r
    }

    /// Exact division when the denominator is a single monomial c·z^e.
    pub fn try_into_poly(&self) -> Option<MultiPoly> {
        if self.denominator.len() != 1 {
            return None;
        }
        let (de, dc) = self.denominator.terms().iter().next().unwrap();
        let mut r = MultiPoly::zero(self.numerator.vars.clone());
        for (e, c) in self.numerator.terms() {
            if e.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let f: Exps = e.iter().zip(de).map(|(a, b)| a - b).collect();
            r.add_term(f, c / dc);
        }
        Some(r)
    }
}

/// p(−1/z_v) for a single variable index, returned as numerator / z_v^D.
pub fn substitute_negative_inverse_var(p: &MultiPoly, v: usize) -> RationalFn {
    let d = p.degree_in(v).unwrap_or(0);
    let mut num = MultiPoly::zero(p.vars.clone());
    for (e, c) in p.terms() {
        let j = e[v];
        let mut f = e.clone();
        f[v] = d - j;
        let sign = if j % 2 == 1 { -Q::one() } else { Q::one() };
        num.add_term(f, c * sign);
    }
    let mut de = vec![0; p.nvars()];
    de[v] = d;
    let den = MultiPoly::monomial(p.vars.clone(), de, Q::one());
    RationalFn::new(num, den).expect("monomial denominator is nonzero")
}

/// p(−z⁻¹) for a rank-one factor (one complex variable).
pub fn substitute_negative_inverse(p: &MultiPoly, factor: &SimpleFactor) -> Result<RationalFn> {
    if factor.family != Family::Rank1 {
        return Err(Error::UnsupportedFamily(format!("{:?}: negative inverse is implemented for Rank1 only", factor.family)));
    }
    if p.nvars() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: p.nvars() });
    }
    Ok(substitute_negative_inverse_var(p, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn z1() -> Vec<Var> {
        vars(&["z"])
    }

    #[test]
    fn eval_examples() {
        let z = MultiPoly::var(z1(), 0);
        assert_eq!(poly_eval(&z.pow(4), &[qi(2)]).unwrap(), qi(16));
        let v = vars(&["z1", "z2", "z3", "z4"]);
        let p = (0..4).fold(MultiPoly::one(v.clone()), |acc, i| acc.mul(&MultiPoly::var(v.clone(), i)));
        assert_eq!(poly_eval(&p, &[qi(1), qi(1), qi(1), qi(1)]).unwrap(), qi(1));
        let v3 = vars(&["z1", "z2", "z3"]);
        let phi = (0..3).fold(MultiPoly::zero(v3.clone()), |acc, i| acc.add(&MultiPoly::var(v3.clone(), i).pow(2)));
        assert_eq!(poly_eval(&phi, &[qi(1), qi(2), qi(3)]).unwrap(), qi(14));
        assert!(matches!(poly_eval(&phi, &[qi(1)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn diff_op_examples() {
        let z = MultiPoly::var(z1(), 0);
        let r = apply_diff_op(&z.pow(4), &z.pow(4)).unwrap();
        assert_eq!(r, MultiPoly::constant(z1(), qi(24)));
        let r = apply_diff_op(&z.pow(4), &z.pow(8)).unwrap();
        assert_eq!(r, z.pow(4).scale(&qi(1680)));
        let v = vars(&["z1", "z2"]);
        let a = MultiPoly::var(v.clone(), 0);
        let b = MultiPoly::var(v.clone(), 1);
        let r = apply_diff_op(&a.mul(&b), &a.pow(2).mul(&b.pow(2))).unwrap();
        assert_eq!(r, a.mul(&b).scale(&qi(4)));
    }

    #[test]
    fn euler_examples() {
        let z = MultiPoly::var(z1(), 0);
        assert_eq!(euler(&z.pow(3)), z.pow(3).scale(&qi(3)));
        assert!(euler(&MultiPoly::one(z1())).is_zero());
        let v = vars(&["z1", "z2"]);
        let p = MultiPoly::var(v.clone(), 0).pow(2).mul(&MultiPoly::var(v.clone(), 1));
        assert_eq!(euler(&p), p.scale(&qi(3)));
    }

    #[test]
    fn negative_inverse_examples() {
        let f = SimpleFactor::rank1(1);
        let z = MultiPoly::var(z1(), 0);
        let r = substitute_negative_inverse(&z, &f).unwrap();
        assert_eq!(r.numerator, MultiPoly::constant(z1(), qi(-1)));
        assert_eq!(r.denominator, z);
        let p = z.pow(2).add(&MultiPoly::one(z1()));
        let r = substitute_negative_inverse(&p, &f).unwrap();
        assert_eq!(r.numerator, p);
        assert_eq!(r.denominator, z.pow(2));
        let r = substitute_negative_inverse(&MultiPoly::one(z1()), &f).unwrap();
        assert_eq!(r.try_into_poly().unwrap(), MultiPoly::one(z1()));
        assert!(substitute_negative_inverse(&z, &SimpleFactor::spin(3, 1)).is_err());
    }

    #[test]
    fn shift_and_compose() {
        let z = MultiPoly::var(z1(), 0);
        let p = z.pow(2);
        let s = p.shift(&[qi(1)]);
        assert_eq!(s, z.pow(2).add(&z.scale(&qi(2))).add(&MultiPoly::one(z1())));
        assert_eq!(poly_eval(&s, &[q(1, 2)]).unwrap(), q(9, 4));
    }
}
