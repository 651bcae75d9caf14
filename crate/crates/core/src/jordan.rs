//! Simple Jordan factors, the eleven cases, determinant polynomials, the
//! polynomial Q and the Hermitian kernels H_i.

use serde::{Deserialize, Serialize};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyalg::{poly_eval, MultiPoly, Var};
use crate::rational::{q, qi, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Rank1,
    Spin,
    SymMat,
    FullMat,
    SkewMat,
    ExceptionalHerm3O,
}

/// One simple factor V_i with its multiplicity k_i in Q.
///
/// `size` is p for Spin(p), the matrix size for SymMat/FullMat/SkewMat and 1
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleFactor {
    pub family: Family,
    pub size: u32,
    pub rank: u32,
    pub degree: u32,
    pub dim: u32,
    pub k: u32,
}

impl SimpleFactor {
    pub fn rank1(k: u32) -> Self {
        SimpleFactor { family: Family::Rank1, size: 1, rank: 1, degree: 0, dim: 1, k }
    }

    pub fn spin(p: u32, k: u32) -> Self {
        assert!(p >= 2, "Spin(p) needs p >= 2");
        SimpleFactor { family: Family::Spin, size: p, rank: 2, degree: p - 2, dim: p, k }
    }

    pub fn sym(m: u32, k: u32) -> Self {
        SimpleFactor { family: Family::SymMat, size: m, rank: m, degree: 1, dim: m * (m + 1) / 2, k }
    }

    pub fn full(m: u32, k: u32) -> Self {
        SimpleFactor { family: Family::FullMat, size: m, rank: m, degree: 2, dim: m * m, k }
    }

    /// Skew(2m): `two_m` is the matrix size.
    pub fn skew(two_m: u32, k: u32) -> Self {
        assert!(two_m % 2 == 0, "Skew(n) needs even n");
        SimpleFactor { family: Family::SkewMat, size: two_m, rank: two_m / 2, degree: 4, dim: two_m * (two_m - 1) / 2, k }
    }

    pub fn herm3o(k: u32) -> Self {
        SimpleFactor { family: Family::ExceptionalHerm3O, size: 3, rank: 3, degree: 8, dim: 27, k }
    }

    pub fn with_k(&self, k: u32) -> Self {
        SimpleFactor { k, ..self.clone() }
    }

    pub fn n_over_r(&self) -> Q {
        q(self.dim as i64, self.rank as i64)
    }

    /// n/r = 1 + (r-1)d/2 for r >= 2; Rank1 has r = n = 1.
    pub fn structure_identity_holds(&self) -> bool {
        if self.rank == 1 {
            return self.dim == 1;
        }
        self.n_over_r() == qi(1) + q(((self.rank - 1) * self.degree) as i64, 2)
    }

    pub fn is_symbolic(&self) -> bool {
        self.family != Family::ExceptionalHerm3O
    }

    pub fn label(&self) -> String {
        let base = match self.family {
            Family::Rank1 => "Rank1".to_string(),
            Family::Spin => format!("Spin{}", self.size),
            Family::SymMat => format!("Sym{}", self.size),
            Family::FullMat => format!("M{}", self.size),
            Family::SkewMat => format!("Skew{}", self.size),
            Family::ExceptionalHerm3O => "Herm3O".to_string(),
        };
        if self.k == 1 {
            base
        } else {
            format!("{base}^{}", self.k)
        }
    }

    /// Matrix positions (a, b) of the coordinates, in variable order.
    fn positions(&self) -> Vec<(usize, usize)> {
        let m = self.size as usize;
        match self.family {
            Family::SymMat => (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect(),
            Family::FullMat => (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).collect(),
            Family::SkewMat => (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect(),
            _ => Vec::new(),
        }
    }

    /// Variables of this factor, tagged with factor index `idx`.
    pub fn variables(&self, idx: usize) -> Vec<Var> {
        match self.family {
            Family::Rank1 => vec![Var::new(format!("z{}", idx + 1), idx)],
            Family::Spin => (1..=self.size).map(|a| Var::new(format!("x{}_{}", idx + 1, a), idx)).collect(),
            Family::SymMat | Family::FullMat | Family::SkewMat => self
                .positions()
                .into_iter()
                .map(|(a, b)| Var::new(format!("z{}_{}{}", idx + 1, a + 1, b + 1), idx))
                .collect(),
            Family::ExceptionalHerm3O => (1..=27).map(|a| Var::new(format!("h{}_{}", idx + 1, a), idx)).collect(),
        }
    }
}

fn unsupported(f: &SimpleFactor, what: &str) -> Error {
    Error::UnsupportedFamily(format!("{}: {what}", f.label()))
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
fn det_entries(m: &[Vec<MultiPoly>], vars: &[Var]) -> MultiPoly {
    fn rec(m: &[Vec<MultiPoly>], rows: &[usize], cols: &[usize], vars: &[Var]) -> MultiPoly {
        if rows.is_empty() {
            return MultiPoly::one(vars.to_vec());
        }
        let r = rows[0];
        let mut acc = MultiPoly::zero(vars.to_vec());
        for (ci, &c) in cols.iter().enumerate() {
            if m[r][c].is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = rec(m, &rows[1..], &rest, vars);
            let t = m[r][c].mul(&minor);
            acc = if ci % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }
    let n = m.len();
    let idx: Vec<usize> = (0..n).collect();
    rec(m, &idx, &idx, vars)
}

/// Pfaffian of a skew matrix of polynomials, expanding along the first index.
fn pfaffian_entries(m: &[Vec<MultiPoly>], vars: &[Var]) -> MultiPoly {
    fn rec(m: &[Vec<MultiPoly>], idx: &[usize], vars: &[Var]) -> MultiPoly {
        if idx.is_empty() {
            return MultiPoly::one(vars.to_vec());
        }
        let a = idx[0];
        let mut acc = MultiPoly::zero(vars.to_vec());
        for j in 1..idx.len() {
            let b = idx[j];
            let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != a && x != b).collect();
            let t = m[a][b].mul(&rec(m, &rest, vars));
            acc = if j % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }
    let idx: Vec<usize> = (0..m.len()).collect();
    rec(m, &idx, vars)
}

/// The symbolic matrix of a matrix-family factor; off-diagonal symmetric
/// entries are scaled by `offdiag_scale`.
fn symbolic_matrix(f: &SimpleFactor, vars: &[Var], offdiag_scale: &Q) -> Vec<Vec<MultiPoly>> {
    let m = f.size as usize;
    let zero = MultiPoly::zero(vars.to_vec());
    let mut mat = vec![vec![zero; m]; m];
    for (i, (a, b)) in f.positions().into_iter().enumerate() {
        let v = MultiPoly::var(vars.to_vec(), i);
        match f.family {
            Family::SymMat => {
                let v = if a == b { v } else { v.scale(offdiag_scale) };
                mat[a][b] = v.clone();
                mat[b][a] = v;
            }
            Family::FullMat => mat[a][b] = v,
            Family::SkewMat => {
                mat[b][a] = v.neg();
                mat[a][b] = v;
            }
            _ => unreachable!(),
        }
    }
    mat
}

fn determinant_with(f: &SimpleFactor, vars: Vec<Var>, offdiag_scale: &Q) -> Result<MultiPoly> {
    match f.family {
        Family::Rank1 => Ok(MultiPoly::var(vars, 0)),
        Family::Spin => {
            let mut p = MultiPoly::var(vars.clone(), 0).pow(2);
            for a in 1..f.size as usize {
                p = p.sub(&MultiPoly::var(vars.clone(), a).pow(2));
            }
            Ok(p)
        }
        Family::SymMat | Family::FullMat => Ok(det_entries(&symbolic_matrix(f, &vars, offdiag_scale), &vars)),
        Family::SkewMat => Ok(pfaffian_entries(&symbolic_matrix(f, &vars, offdiag_scale), &vars)),
        Family::ExceptionalHerm3O => Err(unsupported(f, "determinant is catalog metadata only")),
    }
}

/// Δ_i in the factor's own variables (factor index 0).
pub fn determinant_poly(f: &SimpleFactor) -> Result<MultiPoly> {
    determinant_poly_in(f, 0)
}

pub fn determinant_poly_in(f: &SimpleFactor, idx: usize) -> Result<MultiPoly> {
    determinant_with(f, f.variables(idx), &Q::one())
}

/// The symbol whose differential operator is Δ(∂) for the trace pairing.
/// For Sym(n) the off-diagonal coordinates pair with weight 2, so their
/// derivatives enter with a factor 1/2; other families are unchanged.
pub fn dual_determinant_poly(f: &SimpleFactor) -> Result<MultiPoly> {
    let scale = if f.family == Family::SymMat { q(1, 2) } else { Q::one() };
    determinant_with(f, f.variables(0), &scale)
}

/// Determinant of the symbolic skew matrix (used to check Pf² = det).
pub fn skew_matrix_det(f: &SimpleFactor) -> Result<MultiPoly> {
    if f.family != Family::SkewMat {
        return Err(unsupported(f, "not a skew family"));
    }
    let vars = f.variables(0);
    Ok(det_entries(&symbolic_matrix(f, &vars, &Q::one()), &vars))
}

/// The table form φ_p for Spin factors; Δ for everything else.
pub fn table_factor_poly(f: &SimpleFactor) -> Result<MultiPoly> {
    if f.family != Family::Spin {
        return determinant_poly(f);
    }
    let vars = f.variables(0);
    Ok((0..f.size as usize).fold(MultiPoly::zero(vars.clone()), |acc, a| acc.add(&MultiPoly::var(vars.clone(), a).pow(2))))
}

/// The linear change from table coordinates to Jordan coordinates for Spin
/// factors is diag(1, i, ..., i); it is stored through the squares of its
/// entries. Polynomials that are even in every Spin variable transform
/// rationally under it.
pub fn spin_change_squares(f: &SimpleFactor) -> Vec<Q> {
    (0..f.size).map(|a| if a == 0 { Q::one() } else { -Q::one() }).collect()
}

/// Applies the diagonal change with squared entries `squares` to a polynomial
/// even in every variable.
pub fn apply_even_diagonal_change(p: &MultiPoly, squares: &[Q]) -> Result<MultiPoly> {
    let mut r = MultiPoly::zero(p.vars().to_vec());
    for (e, c) in p.terms() {
        let mut c = c.clone();
        for (i, &k) in e.iter().enumerate() {
            if squares[i].is_one() {
                continue;
            }
            if k % 2 == 1 {
                return Err(Error::Invalid("polynomial is not even in the rescaled variables".into()));
            }
            c *= num_traits::pow(squares[i].clone(), (k / 2) as usize);
        }
        r.add_term(e.clone(), c);
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseParams {
    pub p: u32,
    pub p1: u32,
    pub p2: u32,
    pub d: u32,
}

impl Default for CaseParams {
    fn default() -> Self {
        CaseParams { p: 3, p1: 2, p2: 2, d: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseDescriptor {
    pub case_id: u32,
    pub label: String,
    pub params: CaseParams,
    pub factors: Vec<SimpleFactor>,
    pub q_display: String,
    pub expected_k_name: String,
    pub expected_g_name: String,
    pub expected_gr_name: String,
    pub expected_g_dim: u32,
    /// Corrections to the classification table row, with the reason.
    pub errata: Vec<String>,
}

impl CaseDescriptor {
    pub fn dim_v(&self) -> u32 {
        self.factors.iter().map(|f| f.dim).sum()
    }

    pub fn is_symbolic(&self) -> bool {
        self.factors.iter().all(|f| f.is_symbolic())
    }

    pub fn is_rank1_product(&self) -> bool {
        self.factors.iter().all(|f| f.family == Family::Rank1)
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.k * f.rank).sum()
    }

    /// Variables of all factors, concatenated.
    pub fn variables(&self) -> Vec<Var> {
        self.factors.iter().enumerate().flat_map(|(i, f)| f.variables(i)).collect()
    }

    /// Offsets of each factor's variables in `variables()`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.factors.len());
        let mut acc = 0;
        for f in &self.factors {
            off.push(acc);
            acc += f.dim as usize;
        }
        off
    }
}

fn lie_sum(parts: &[&str]) -> String {
    parts.join("+")
}

/// Builds case `id` (1..=11) with parameters; p, p1, p2 and d are used by the
/// parametrized rows only.
pub fn case(id: u32, params: CaseParams) -> Result<CaseDescriptor> {
    let p = params.p;
    let (p1, p2) = (params.p1, params.p2);
    let mut errata = Vec::new();
    let (label, factors, q_display, kn, gn, grn): (String, Vec<SimpleFactor>, String, String, String, String) = match id {
        1 => ("C".into(), vec![SimpleFactor::rank1(4)], "z^4".into(), "sl(2,C)".into(), "sl(3,C)".into(), "sl(3,R)".into()),
        2 => {
            if p < 2 {
                return Err(Error::Invalid("case 2 needs p >= 2".into()));
            }
            (
                format!("C^{p}"),
                vec![SimpleFactor::spin(p, 2)],
                format!("phi_{p}(z)^2"),
                format!("so({},C)", p + 2),
                format!("sl({},C)", p + 2),
                format!("sl({},R)", p + 2),
            )
        }
        3 => {
            errata.push(
                "g column reads so(7,C), but g_R = so(3,3) has complex form so(6,C); dimension count k + W = 6 + 9 = 15 confirms so(6,C)"
                    .into(),
            );
            (
                "C+C".into(),
                vec![SimpleFactor::rank1(2), SimpleFactor::rank1(2)],
                "z1^2 z2^2".into(),
                "so(3,C)+so(3,C)".into(),
                "so(6,C)".into(),
                "so(3,3)".into(),
            )
        }
        4 => (
            "C+C+C".into(),
            vec![SimpleFactor::rank1(2), SimpleFactor::rank1(1), SimpleFactor::rank1(1)],
            "z1^2 z2 z3".into(),
            "sl(2,C)^3".into(),
            "so(7,C)".into(),
            "so(3,4)".into(),
        ),
        5 => {
            errata.push("g_R column reads so(4,2), which has dimension 15; the real form of so(8,C) here is so(4,4)".into());
            (
                "C+C+C+C".into(),
                vec![SimpleFactor::rank1(1); 4],
                "z1 z2 z3 z4".into(),
                "sl(2,C)^4".into(),
                "so(8,C)".into(),
                "so(4,4)".into(),
            )
        }
        6 => {
            if p < 2 {
                return Err(Error::Invalid("case 6 needs p >= 2".into()));
            }
            (
                format!("C^{p}+C"),
                vec![SimpleFactor::spin(p, 1), SimpleFactor::rank1(2)],
                format!("phi_{p}(z) z'^2"),
                lie_sum(&[&format!("so({},C)", p + 2), "so(3,C)"]),
                format!("so({},C)", p + 5),
                format!("so({},3)", p + 2),
            )
        }
        7 => {
            if p < 2 {
                return Err(Error::Invalid("case 7 needs p >= 2".into()));
            }
            (
                format!("C^{p}+C+C"),
                vec![SimpleFactor::spin(p, 1), SimpleFactor::rank1(1), SimpleFactor::rank1(1)],
                format!("phi_{p}(z) z' z''"),
                lie_sum(&[&format!("so({},C)", p + 2), "sl(2,C)^2"]),
                format!("so({},C)", p + 6),
                format!("so({},4)", p + 2),
            )
        }
        8 => {
            if p1 < 2 || p2 < 2 {
                return Err(Error::Invalid("case 8 needs p1, p2 >= 2".into()));
            }
            (
                format!("C^{p1}+C^{p2}"),
                vec![SimpleFactor::spin(p1, 1), SimpleFactor::spin(p2, 1)],
                format!("phi_{p1}(z) phi_{p2}(z')"),
                lie_sum(&[&format!("so({},C)", p1 + 2), &format!("so({},C)", p2 + 2)]),
                format!("so({},C)", p1 + p2 + 4),
                format!("so({},{})", p1 + 2, p2 + 2),
            )
        }
        9 => match params.d {
            1 => ("Sym(4)".into(), vec![SimpleFactor::sym(4, 1)], "det z".into(), "sp(8,C)".into(), "e6".into(), "e6(6)".into()),
            2 => ("M(4)".into(), vec![SimpleFactor::full(4, 1)], "det z".into(), "sl(8,C)".into(), "e7".into(), "e7(7)".into()),
            4 => ("Skew(8)".into(), vec![SimpleFactor::skew(8, 1)], "Pfaff(z)".into(), "so(16,C)".into(), "e8".into(), "e8(8)".into()),
            d => return Err(Error::Invalid(format!("case 9 needs d in {{1,2,4}}, got {d}"))),
        },
        10 => {
            let (lab, f, qd, kn, gn, grn) = match params.d {
                1 => ("Sym(3)+C", SimpleFactor::sym(3, 1), "det z1 z2", "sp(6,C)+sl(2,C)", "f4", "f4(4)"),
                2 => ("M(3)+C", SimpleFactor::full(3, 1), "det z1 z2", "sl(6,C)+sl(2,C)", "e6", "e6(2)"),
                4 => ("Skew(6)+C", SimpleFactor::skew(6, 1), "Pfaff(z1) z2", "so(12,C)+sl(2,C)", "e7", "e7(-5)"),
                8 => ("Herm(3,O)+C", SimpleFactor::herm3o(1), "det z1 z2", "e7+sl(2,C)", "e8", "e8(-24)"),
                d => return Err(Error::Invalid(format!("case 10 needs d in {{1,2,4,8}}, got {d}"))),
            };
            (lab.into(), vec![f, SimpleFactor::rank1(1)], qd.into(), kn.into(), gn.into(), grn.into())
        }
        11 => (
            "C+C".into(),
            vec![SimpleFactor::rank1(3), SimpleFactor::rank1(1)],
            "z1^3 z2".into(),
            "sl(2,C)+sl(2,C)".into(),
            "g2".into(),
            "g2(2)".into(),
        ),
        _ => return Err(Error::Invalid(format!("case id must be 1..=11, got {id}"))),
    };
    let expected_g_dim = lie_algebra_dim(&gn).ok_or_else(|| Error::Invalid(format!("unparsed Lie algebra {gn}")))?;
    let c = CaseDescriptor {
        case_id: id,
        label,
        params,
        factors,
        q_display,
        expected_k_name: kn,
        expected_g_name: gn,
        expected_gr_name: grn,
        expected_g_dim,
        errata,
    };
    debug_assert_eq!(c.degree(), 4);
    Ok(c)
}

/// Parameter values each case is instantiated at by default.
pub fn default_params(id: u32) -> CaseParams {
    match id {
        2 => CaseParams { p: 4, ..Default::default() },
        6 => CaseParams { p: 3, ..Default::default() },
        7 => CaseParams { p: 2, ..Default::default() },
        8 => CaseParams { p1: 4, p2: 2, ..Default::default() },
        _ => CaseParams::default(),
    }
}

/// All eleven cases at default parameters.
pub fn catalog() -> Vec<CaseDescriptor> {
    (1..=11).map(|id| case(id, default_params(id)).expect("default parameters are valid")).collect()
}

/// Every row of the classification table: cases 9 and 10 expand into their
/// variants.
pub fn table_rows() -> Vec<CaseDescriptor> {
    let mut rows = Vec::new();
    for id in 1..=11 {
        let ds: Vec<u32> = match id {
            9 => vec![1, 2, 4],
            10 => vec![1, 2, 4, 8],
            _ => vec![1],
        };
        for d in ds {
            rows.push(case(id, CaseParams { d, ..default_params(id) }).unwrap());
        }
    }
    rows
}

/// Q = ∏ Δ_i^{k_i} on the concatenated variables.
pub fn q_polynomial(c: &CaseDescriptor) -> Result<MultiPoly> {
    let vars = c.variables();
    let off = c.offsets();
    let mut acc = MultiPoly::one(vars.clone());
    for (i, f) in c.factors.iter().enumerate() {
        let d = determinant_poly_in(f, i)?;
        let slots: Vec<usize> = (0..f.dim as usize).map(|a| off[i] + a).collect();
        acc = acc.mul(&d.embed(vars.clone(), &slots).pow(f.k));
    }
    Ok(acc)
}

/// Q as printed in the classification table (φ_p for Spin factors).
pub fn table_q_polynomial(c: &CaseDescriptor) -> Result<MultiPoly> {
    let vars = c.variables();
    let off = c.offsets();
    let mut acc = MultiPoly::one(vars.clone());
    for (i, f) in c.factors.iter().enumerate() {
        let d = table_factor_poly(f)?.with_vars(f.variables(i));
        let slots: Vec<usize> = (0..f.dim as usize).map(|a| off[i] + a).collect();
        acc = acc.mul(&d.embed(vars.clone(), &slots).pow(f.k));
    }
    Ok(acc)
}

/// Squares of the diagonal table-to-Jordan change on all variables of a case.
pub fn case_change_squares(c: &CaseDescriptor) -> Vec<Q> {
    c.factors
        .iter()
        .flat_map(|f| if f.family == Family::Spin { spin_change_squares(f) } else { vec![Q::one(); f.dim as usize] })
        .collect()
}

/// Variables (z_1..z_n, ζ_1..ζ_n) with ζ standing for the conjugate of z'.
pub fn kernel_vars(f: &SimpleFactor) -> Vec<Var> {
    let mut v = f.variables(0);
    let n = v.len();
    for a in 0..n {
        let name = format!("{}'", v[a].name);
        v.push(Var::new(name, 0));
    }
    v
}

/// H(z, z') as a polynomial in z and ζ = conj(z').
pub fn hermitian_kernel(f: &SimpleFactor) -> Result<MultiPoly> {
    let vars = kernel_vars(f);
    let n = f.dim as usize;
    match f.family {
        Family::Rank1 => Ok(MultiPoly::one(vars.clone()).add(&MultiPoly::var(vars.clone(), 0).mul(&MultiPoly::var(vars, 1)))),
        Family::Spin => {
            let d = determinant_poly(f)?;
            let dz = d.embed(vars.clone(), &(0..n).collect::<Vec<_>>());
            let dzeta = d.embed(vars.clone(), &(n..2 * n).collect::<Vec<_>>());
            let mut h = MultiPoly::one(vars.clone()).add(&dz.mul(&dzeta));
            for a in 0..n {
                let t = MultiPoly::var(vars.clone(), a).mul(&MultiPoly::var(vars.clone(), n + a));
                h = h.add(&t.scale(&qi(2)));
            }
            Ok(h)
        }
        _ => Err(unsupported(f, "Hermitian kernel is built for Rank1 and Spin only")),
    }
}

/// Jordan product; Rank1 and Spin only.
pub fn jordan_product(f: &SimpleFactor, x: &[Q], y: &[Q]) -> Result<Vec<Q>> {
    check_len(f, x)?;
    check_len(f, y)?;
    match f.family {
        Family::Rank1 => Ok(vec![&x[0] * &y[0]]),
        Family::Spin => {
            let mut r = Vec::with_capacity(x.len());
            let dot: Q = x.iter().zip(y).skip(1).map(|(a, b)| a * b).sum();
            r.push(&x[0] * &y[0] + dot);
            for a in 1..x.len() {
                r.push(&x[0] * &y[a] + &y[0] * &x[a]);
            }
            Ok(r)
        }
        _ => Err(unsupported(f, "Jordan product is implemented for Rank1 and Spin only")),
    }
}

fn check_len(f: &SimpleFactor, x: &[Q]) -> Result<()> {
    if x.len() != f.dim as usize {
        return Err(Error::DimensionMismatch { expected: f.dim as usize, got: x.len() });
    }
    Ok(())
}

/// z ↦ z⁻¹; Rank1, with Spin as the extension (a1, -a')/Δ(a).
pub fn jordan_inverse(f: &SimpleFactor, z: &[Q]) -> Result<Vec<Q>> {
    check_len(f, z)?;
    match f.family {
        Family::Rank1 => {
            if z[0].is_zero() {
                return Err(Error::Singular("z = 0".into()));
            }
            Ok(vec![z[0].recip()])
        }
        Family::Spin => {
            let det = poly_eval(&determinant_poly(f)?, z)?;
            if det.is_zero() {
                return Err(Error::Singular("Δ(z) = 0".into()));
            }
            Ok(z.iter().enumerate().map(|(a, x)| if a == 0 { x / &det } else { -x / &det }).collect())
        }
        _ => Err(unsupported(f, "inverse is implemented for Rank1 and Spin only")),
    }
}

/// The identity element e of a Rank1 or Spin factor.
pub fn identity_element(f: &SimpleFactor) -> Vec<Q> {
    (0..f.dim).map(|a| if a == 0 { Q::one() } else { Q::zero() }).collect()
}

/// Dimension of a complex or real simple Lie algebra written like
/// "sl(3,C)", "so(3,3)", "sp(8,C)", "e7(-5)", "sl(2,C)^3" or sums joined by '+'.
pub fn lie_algebra_dim(name: &str) -> Option<u32> {
    let mut total = 0;
    for part in name.split('+') {
        let part = part.trim();
        let (base, mult) = match part.rsplit_once('^') {
            Some((b, m)) if !b.ends_with(')') || b.contains('(') => (b, m.trim().parse::<u32>().ok()?),
            _ => (part, 1),
        };
        total += mult * simple_lie_dim(base.trim())?;
    }
    Some(total)
}

fn simple_lie_dim(name: &str) -> Option<u32> {
    let (head, args) = match name.split_once('(') {
        Some((h, rest)) => (h, rest.strip_suffix(')')?),
        None => (name, ""),
    };
    match head {
        "e6" => return Some(78),
        "e7" => return Some(133),
        "e8" => return Some(248),
        "f4" => return Some(52),
        "g2" => return Some(14),
        _ => {}
    }
    let args: Vec<&str> = args.split(',').map(str::trim).collect();
    let n: u32 = args.first()?.parse().ok()?;
    let second = args.get(1).copied().unwrap_or("C");
    match head {
        "sl" => Some(n * n - 1),
        "so" => {
            let total = match second.parse::<u32>() {
                Ok(m) => n + m,
                Err(_) => n,
            };
            Some(total * (total - 1) / 2)
        }
        "sp" => {
            let h = n / 2;
            Some(h * (2 * h + 1))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::euler;

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant_poly(&SimpleFactor::rank1(1)).unwrap().to_string(), "z1");
        let d = determinant_poly(&SimpleFactor::full(2, 1)).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(poly_eval(&d, &[qi(1), qi(2), qi(3), qi(4)]).unwrap(), qi(-2));
        let f = SimpleFactor::skew(4, 1);
        let pf = determinant_poly(&f).unwrap();
        // z12 z34 - z13 z24 + z14 z23 in the order (12,13,14,23,24,34)
        assert_eq!(poly_eval(&pf, &[qi(1), qi(0), qi(0), qi(0), qi(0), qi(1)]).unwrap(), qi(1));
        assert_eq!(poly_eval(&pf, &[qi(0), qi(1), qi(0), qi(0), qi(1), qi(0)]).unwrap(), qi(-1));
        assert_eq!(poly_eval(&pf, &[qi(0), qi(0), qi(1), qi(1), qi(0), qi(0)]).unwrap(), qi(1));
        assert_eq!(pf.pow(2), skew_matrix_det(&f).unwrap());
        assert!(determinant_poly(&SimpleFactor::herm3o(1)).is_err());
    }

    #[test]
    fn determinants_are_homogeneous_of_rank() {
        for f in [
            SimpleFactor::rank1(1),
            SimpleFactor::spin(3, 1),
            SimpleFactor::sym(3, 1),
            SimpleFactor::full(3, 1),
            SimpleFactor::skew(6, 1),
        ] {
            let d = determinant_poly(&f).unwrap();
            assert_eq!(euler(&d), d.scale(&qi(f.rank as i64)), "{}", f.label());
            assert!(f.structure_identity_holds());
        }
        assert!(SimpleFactor::herm3o(1).structure_identity_holds());
    }

    #[test]
    fn q_polynomials() {
        let c1 = case(1, default_params(1)).unwrap();
        assert_eq!(q_polynomial(&c1).unwrap().to_string(), "z1^4");
        let c5 = case(5, default_params(5)).unwrap();
        assert_eq!(q_polynomial(&c5).unwrap().to_string(), "z1*z2*z3*z4");
        let c3 = case(3, default_params(3)).unwrap();
        assert_eq!(q_polynomial(&c3).unwrap().to_string(), "z1^2*z2^2");
        for c in table_rows().iter().filter(|c| c.is_symbolic()) {
            let qp = q_polynomial(c).unwrap();
            assert_eq!(euler(&qp), qp.scale(&qi(4)), "case {}", c.case_id);
            let t = table_q_polynomial(c).unwrap();
            assert_eq!(apply_even_diagonal_change(&t, &case_change_squares(c)).unwrap(), qp);
        }
    }

    #[test]
    fn spin_table_form_converts() {
        let c = case(2, CaseParams { p: 3, ..Default::default() }).unwrap();
        let t = table_q_polynomial(&c).unwrap();
        let j = apply_even_diagonal_change(&t, &case_change_squares(&c)).unwrap();
        assert_eq!(j, q_polynomial(&c).unwrap());
    }

    #[test]
    fn rank1_kernel_values() {
        let h = hermitian_kernel(&SimpleFactor::rank1(1)).unwrap();
        assert_eq!(poly_eval(&h, &[qi(0), qi(0)]).unwrap(), qi(1));
        assert_eq!(poly_eval(&h, &[q(3, 2), q(3, 2)]).unwrap(), q(13, 4));
    }

    #[test]
    fn inverse_examples() {
        let f = SimpleFactor::rank1(1);
        assert_eq!(jordan_inverse(&f, &[qi(2)]).unwrap(), vec![q(1, 2)]);
        assert_eq!(jordan_inverse(&f, &[qi(-1)]).unwrap(), vec![qi(-1)]);
        assert_eq!(jordan_inverse(&f, &[q(1, 3)]).unwrap(), vec![qi(3)]);
        assert!(matches!(jordan_inverse(&f, &[qi(0)]), Err(Error::Singular(_))));
        let s = SimpleFactor::spin(3, 1);
        let a = vec![qi(3), qi(1), q(1, 2)];
        let inv = jordan_inverse(&s, &a).unwrap();
        assert_eq!(jordan_product(&s, &a, &inv).unwrap(), identity_element(&s));
    }

    #[test]
    fn lie_dims() {
        assert_eq!(lie_algebra_dim("sl(3,C)"), Some(8));
        assert_eq!(lie_algebra_dim("so(8,C)"), Some(28));
        assert_eq!(lie_algebra_dim("so(3,3)"), Some(15));
        assert_eq!(lie_algebra_dim("sp(8,C)"), Some(36));
        assert_eq!(lie_algebra_dim("sl(2,C)^3"), Some(9));
        assert_eq!(lie_algebra_dim("e7+sl(2,C)"), Some(136));
        assert_eq!(lie_algebra_dim("e7(-5)"), Some(133));
        assert_eq!(lie_algebra_dim("so(12,C)+sl(2,C)"), Some(69));
    }

    #[test]
    fn catalog_shape() {
        let cat = catalog();
        assert_eq!(cat.len(), 11);
        for c in table_rows() {
            assert_eq!(c.degree(), 4);
            assert_eq!(lie_algebra_dim(&c.expected_gr_name), Some(c.expected_g_dim), "case {}", c.case_id);
        }
        let json = serde_json::to_string(&cat[4]).unwrap();
        assert!(json.contains("so(8,C)"));
    }
}
