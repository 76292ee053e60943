//! Leibniz algebras (right convention), derivations, representations and the
//! standard constructions of LeibDer pairs.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Report, Result};
use crate::exactlin::{add_vec, axpy, int, is_zero_vec, sub_vec, unit_vec, zero_vec, Matrix, Scalar, Vector};
use crate::tensor::{basis_value, eval, tuples};

/// Structure constants `c[(i*d + j)*d + k]` with `[e_i, e_j] = sum_k c e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeibnizAlgebra {
    dim: usize,
    c: Vec<Scalar>,
}

impl LeibnizAlgebra {
    pub fn new(dim: usize, constants: Vec<Scalar>) -> Result<Self> {
        if constants.len() != dim * dim * dim {
            return Err(Error::Dimension(format!(
                "dimension {dim} needs {} structure constants, got {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        Ok(LeibnizAlgebra { dim, c: constants })
    }

    pub fn abelian(dim: usize) -> Self {
        LeibnizAlgebra { dim, c: zero_vec(dim * dim * dim) }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        let c = tuples(dim, 3).map(|t| f(t[0], t[1], t[2])).collect();
        LeibnizAlgebra { dim, c }
    }

    /// Builds from nonzero entries `(i, j, k, c)`, 0-based.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, i64)]) -> Self {
        let mut a = Self::abelian(dim);
        for &(i, j, k, v) in entries {
            a.c[(i * dim + j) * dim + k] += int(v);
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coef(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// `[e_i, e_j]` as a coordinate slice.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        basis_value(&self.c, &[self.dim, self.dim], self.dim, &[i, j])
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        eval(&self.c, &[self.dim, self.dim], self.dim, &[x, y])
    }

    /// Matrix of `y -> [y, x]`.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.bracket(&unit_vec(self.dim, j), x)).collect();
        Matrix::from_columns(self.dim, &cols).expect("square")
    }

    /// Matrix of `y -> [x, y]`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.bracket(x, &unit_vec(self.dim, j))).collect();
        Matrix::from_columns(self.dim, &cols).expect("square")
    }

    pub fn is_skew(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| add_vec(self.basis_bracket(i, j), self.basis_bracket(j, i)).iter().all(Zero::is_zero))
        })
    }

    /// Transports the structure along the basis `f_j = sum_i p[i][j] e_i`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let inv = p.inverse().ok_or_else(|| Error::Invalid("basis change is singular".into()))?;
        let cols: Vec<Vector> = (0..self.dim).map(|j| p.column(j)).collect();
        let mut c = Vec::with_capacity(self.c.len());
        for a in 0..self.dim {
            for b in 0..self.dim {
                c.extend(inv.mul_vec(&self.bracket(&cols[a], &cols[b])));
            }
        }
        Ok(LeibnizAlgebra { dim: self.dim, c })
    }

    pub fn direct_sum(&self, other: &LeibnizAlgebra) -> Self {
        let (d1, d2) = (self.dim, other.dim);
        LeibnizAlgebra::from_fn(d1 + d2, |i, j, k| match (i < d1, j < d1, k < d1) {
            (true, true, true) => self.coef(i, j, k).clone(),
            (false, false, false) => other.coef(i - d1, j - d1, k - d1).clone(),
            _ => Scalar::zero(),
        })
    }
}

pub fn check_leibniz(a: &LeibnizAlgebra) -> Report {
    let d = a.dim;
    let mut report = Report::new();
    for t in tuples(d, 3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let (ei, ek) = (unit_vec(d, i), unit_vec(d, k));
        let ej = unit_vec(d, j);
        let lhs = a.bracket(a.basis_bracket(i, j), &ek);
        let r1 = a.bracket(a.basis_bracket(i, k), &ej);
        let r2 = a.bracket(&ei, a.basis_bracket(j, k));
        if lhs != add_vec(&r1, &r2) {
            report.record("leibniz", &t);
            break;
        }
    }
    report
}

fn require_square(m: &Matrix, n: usize, what: &str) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::Dimension(format!("{what} must be {n}x{n}, got {}x{}", m.rows(), m.cols())));
    }
    Ok(())
}

/// `D[x, y] - [Dx, y] - [x, Dy]` on basis vectors.
fn derivation_defect(a: &LeibnizAlgebra, dm: &Matrix, i: usize, j: usize) -> Vector {
    let lhs = dm.mul_vec(a.basis_bracket(i, j));
    let r1 = a.bracket(&dm.column(i), &unit_vec(a.dim, j));
    let r2 = a.bracket(&unit_vec(a.dim, i), &dm.column(j));
    sub_vec(&sub_vec(&lhs, &r1), &r2)
}

pub fn check_derivation(a: &LeibnizAlgebra, dm: &Matrix) -> Result<Report> {
    require_square(dm, a.dim, "derivation")?;
    let mut report = Report::new();
    for t in tuples(a.dim, 2) {
        if !is_zero_vec(&derivation_defect(a, dm, t[0], t[1])) {
            report.record("derivation", &t);
            break;
        }
    }
    Ok(report)
}

/// Basis of the derivation algebra `Der(a)` (echelon basis of the solution space).
pub fn derivations(a: &LeibnizAlgebra) -> Vec<Matrix> {
    let d = a.dim;
    let n = d * d;
    let cols: Vec<Vector> = (0..n)
        .map(|p| {
            let e = Matrix::from_vec(d, d, unit_vec(n, p)).expect("shape");
            tuples(d, 2).flat_map(|t| derivation_defect(a, &e, t[0], t[1])).collect()
        })
        .collect();
    let system = Matrix::from_columns(d * d * d, &cols).expect("shape");
    system.kernel_basis().into_iter().map(|v| Matrix::from_vec(d, d, v).expect("shape")).collect()
}

/// Matrix of `y -> [y, x]`, a derivation whenever `a` is Leibniz.
pub fn inner_derivation(a: &LeibnizAlgebra, x: &[Scalar]) -> Result<Matrix> {
    if x.len() != a.dim {
        return Err(Error::Dimension(format!("vector of length {} for dimension {}", x.len(), a.dim)));
    }
    Ok(a.right_mult(x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibDerPair {
    pub algebra: LeibnizAlgebra,
    pub phi: Matrix,
}

impl LeibDerPair {
    pub fn new(algebra: LeibnizAlgebra, phi: Matrix) -> Result<Self> {
        require_square(&phi, algebra.dim, "phi")?;
        Ok(LeibDerPair { algebra, phi })
    }

    pub fn zero(algebra: LeibnizAlgebra) -> Self {
        let d = algebra.dim;
        LeibDerPair { algebra, phi: Matrix::zeros(d, d) }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    /// Leibniz identity and derivation law.
    pub fn check(&self) -> Report {
        let mut r = check_leibniz(&self.algebra);
        r.merge(check_derivation(&self.algebra, &self.phi).expect("shape checked in new"));
        r
    }

    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let inv = p.inverse().ok_or_else(|| Error::Invalid("basis change is singular".into()))?;
        Ok(LeibDerPair { algebra: self.algebra.change_basis(p)?, phi: &(&inv * &self.phi) * p })
    }
}

/// Actions of `base` on an `mdim`-dimensional module:
/// `left[(i*m + a)*m + b]` is the coefficient of `f_b` in `[e_i, f_a]`,
/// `right[(a*d + i)*m + b]` the coefficient of `f_b` in `[f_a, e_i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub base: LeibnizAlgebra,
    mdim: usize,
    left: Vec<Scalar>,
    right: Vec<Scalar>,
}

impl Representation {
    pub fn new(base: LeibnizAlgebra, mdim: usize, left: Vec<Scalar>, right: Vec<Scalar>) -> Result<Self> {
        let need = base.dim * mdim * mdim;
        if left.len() != need || right.len() != need {
            return Err(Error::Dimension(format!(
                "actions of a {}-dimensional algebra on a {mdim}-dimensional module need {need} entries each",
                base.dim
            )));
        }
        Ok(Representation { base, mdim, left, right })
    }

    pub fn trivial(base: LeibnizAlgebra, mdim: usize) -> Self {
        let n = base.dim * mdim * mdim;
        Representation { base, mdim, left: zero_vec(n), right: zero_vec(n) }
    }

    /// `M = g` with both actions the bracket.
    pub fn adjoint(base: &LeibnizAlgebra) -> Self {
        let d = base.dim;
        let c = base.c.clone();
        let right = tuples(d, 3).map(|t| base.coef(t[0], t[1], t[2]).clone()).collect();
        Representation { base: base.clone(), mdim: d, left: c, right }
    }

    /// `M = g` with `[x, m] = 0` and `[m, x]` the bracket.
    pub fn right_adjoint(base: &LeibnizAlgebra) -> Self {
        let mut r = Self::adjoint(base);
        r.left = zero_vec(r.left.len());
        r
    }

    /// `M = g` with `[x, m] = -[m, x]` and `[m, x]` the bracket.
    pub fn symmetric_adjoint(base: &LeibnizAlgebra) -> Self {
        let d = base.dim;
        let mut r = Self::adjoint(base);
        r.left = tuples(d, 3).map(|t| -base.coef(t[1], t[0], t[2])).collect();
        r
    }

    pub fn mdim(&self) -> usize {
        self.mdim
    }

    pub fn gdim(&self) -> usize {
        self.base.dim
    }

    pub fn left_data(&self) -> &[Scalar] {
        &self.left
    }

    pub fn right_data(&self) -> &[Scalar] {
        &self.right
    }

    /// `[x, m]`.
    pub fn act_left(&self, x: &[Scalar], m: &[Scalar]) -> Vector {
        eval(&self.left, &[self.base.dim, self.mdim], self.mdim, &[x, m])
    }

    /// `[m, x]`.
    pub fn act_right(&self, m: &[Scalar], x: &[Scalar]) -> Vector {
        eval(&self.right, &[self.mdim, self.base.dim], self.mdim, &[m, x])
    }

    /// Re-expresses the module in the basis `f'_b = sum_a q[a][b] f_a`.
    pub fn change_module_basis(&self, q: &Matrix) -> Result<Self> {
        let inv = q.inverse().ok_or_else(|| Error::Invalid("module basis change is singular".into()))?;
        let (d, m) = (self.base.dim, self.mdim);
        let qc: Vec<Vector> = (0..m).map(|a| q.column(a)).collect();
        let mut left = Vec::with_capacity(d * m * m);
        for i in 0..d {
            for a in 0..m {
                left.extend(inv.mul_vec(&self.act_left(&unit_vec(d, i), &qc[a])));
            }
        }
        let mut right = Vec::with_capacity(d * m * m);
        for a in 0..m {
            for i in 0..d {
                right.extend(inv.mul_vec(&self.act_right(&qc[a], &unit_vec(d, i))));
            }
        }
        Ok(Representation { base: self.base.clone(), mdim: m, left, right })
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::Invalid("direct sum of representations over different algebras".into()));
        }
        let d = self.base.dim;
        let (m1, m2) = (self.mdim, other.mdim);
        let m = m1 + m2;
        let block = |t: &[Scalar], t2: &[Scalar], outer_g: bool| {
            let mut out = zero_vec(d * m * m);
            for x in 0..d {
                for a in 0..m {
                    for b in 0..m {
                        let v = match (a < m1, b < m1) {
                            (true, true) => {
                                let i = if outer_g { (x * m1 + a) * m1 + b } else { (a * d + x) * m1 + b };
                                t[i].clone()
                            }
                            (false, false) => {
                                let (a2, b2) = (a - m1, b - m1);
                                let i = if outer_g { (x * m2 + a2) * m2 + b2 } else { (a2 * d + x) * m2 + b2 };
                                t2[i].clone()
                            }
                            _ => continue,
                        };
                        let pos = if outer_g { (x * m + a) * m + b } else { (a * d + x) * m + b };
                        out[pos] = v;
                    }
                }
            }
            out
        };
        Ok(Representation {
            base: self.base.clone(),
            mdim: m,
            left: block(&self.left, &other.left, true),
            right: block(&self.right, &other.right, false),
        })
    }
}

/// Checks (MLL) `[[m,x],y] = [[m,y],x] + [m,[x,y]]`, (LML) `[[x,m],y] =
/// [[x,y],m] + [x,[m,y]]` and (LLM) `[[x,y],m] = [[x,m],y] + [x,[y,m]]`.
/// Witnesses list the arguments in the order they appear in the axiom.
pub fn check_representation(r: &Representation) -> Report {
    let (d, m) = (r.base.dim, r.mdim);
    let mut report = Report::new();
    let g = |i| unit_vec(d, i);
    let v = |a| unit_vec(m, a);
    for t in tuples(d, 2) {
        let (i, j) = (t[0], t[1]);
        let (x, y) = (g(i), g(j));
        let xy = r.base.basis_bracket(i, j);
        for a in 0..m {
            let ma = v(a);
            let mll_l = r.act_right(&r.act_right(&ma, &x), &y);
            let mll_r = add_vec(&r.act_right(&r.act_right(&ma, &y), &x), &r.act_right(&ma, xy));
            if mll_l != mll_r {
                report.record("MLL", &[a, i, j]);
            }
            let lml_l = r.act_right(&r.act_left(&x, &ma), &y);
            let lml_r = add_vec(&r.act_left(xy, &ma), &r.act_left(&x, &r.act_right(&ma, &y)));
            if lml_l != lml_r {
                report.record("LML", &[i, a, j]);
            }
            let llm_l = r.act_left(xy, &ma);
            let llm_r = add_vec(&r.act_right(&r.act_left(&x, &ma), &y), &r.act_left(&x, &r.act_left(&y, &ma)));
            if llm_l != llm_r {
                report.record("LLM", &[i, j, a]);
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibDerRepresentation {
    pub rep: Representation,
    pub phi_m: Matrix,
}

impl LeibDerRepresentation {
    pub fn new(rep: Representation, phi_m: Matrix) -> Result<Self> {
        require_square(&phi_m, rep.mdim, "phi_M")?;
        Ok(LeibDerRepresentation { rep, phi_m })
    }

    pub fn adjoint(p: &LeibDerPair) -> Self {
        LeibDerRepresentation { rep: Representation::adjoint(&p.algebra), phi_m: p.phi.clone() }
    }

    pub fn trivial(base: &LeibnizAlgebra, phi_m: Matrix) -> Result<Self> {
        let m = phi_m.rows();
        Self::new(Representation::trivial(base.clone(), m), phi_m)
    }

    pub fn mdim(&self) -> usize {
        self.rep.mdim
    }

    pub fn change_module_basis(&self, q: &Matrix) -> Result<Self> {
        let inv = q.inverse().ok_or_else(|| Error::Invalid("module basis change is singular".into()))?;
        Ok(LeibDerRepresentation { rep: self.rep.change_module_basis(q)?, phi_m: &(&inv * &self.phi_m) * q })
    }

    pub fn direct_sum(&self, other: &LeibDerRepresentation) -> Result<Self> {
        Ok(LeibDerRepresentation { rep: self.rep.direct_sum(&other.rep)?, phi_m: self.phi_m.direct_sum(&other.phi_m) })
    }
}

pub(crate) fn require_same_base(p: &LeibDerPair, r: &LeibDerRepresentation) -> Result<()> {
    if r.rep.base != p.algebra {
        return Err(Error::Invalid("representation is over a different algebra than the pair".into()));
    }
    Ok(())
}

/// Representation axioms plus `phi_M[x,m] = [phi x, m] + [x, phi_M m]` and
/// `phi_M[m,x] = [phi_M m, x] + [m, phi x]`.
pub fn check_leibder_representation(p: &LeibDerPair, r: &LeibDerRepresentation) -> Result<Report> {
    require_same_base(p, r)?;
    let mut report = check_representation(&r.rep);
    let (d, m) = (p.dim(), r.mdim());
    for i in 0..d {
        let x = unit_vec(d, i);
        let px = p.phi.column(i);
        for a in 0..m {
            let ma = unit_vec(m, a);
            let pm = r.phi_m.column(a);
            let l = r.phi_m.mul_vec(&r.rep.act_left(&x, &ma));
            if l != add_vec(&r.rep.act_left(&px, &ma), &r.rep.act_left(&x, &pm)) {
                report.record("phi_M left", &[i, a]);
            }
            let rr = r.phi_m.mul_vec(&r.rep.act_right(&ma, &x));
            if rr != add_vec(&r.rep.act_right(&pm, &x), &r.rep.act_right(&ma, &px)) {
                report.record("phi_M right", &[a, i]);
            }
        }
    }
    Ok(report)
}

/// `g + M` with `[(x,m),(y,n)] = ([x,y], [x,n] + [m,y])` and `phi + phi_M`.
pub fn semidirect_product(p: &LeibDerPair, r: &LeibDerRepresentation) -> Result<LeibDerPair> {
    check_leibder_representation(p, r)?.into_result("semidirect product needs a representation")?;
    let (d, m) = (p.dim(), r.mdim());
    let n = d + m;
    let algebra = LeibnizAlgebra::from_fn(n, |i, j, k| match (i < d, j < d, k < d) {
        (true, true, true) => p.algebra.coef(i, j, k).clone(),
        (true, false, false) => r.rep.left[(i * m + (j - d)) * m + (k - d)].clone(),
        (false, true, false) => r.rep.right[((i - d) * d + j) * m + (k - d)].clone(),
        _ => Scalar::zero(),
    });
    LeibDerPair::new(algebra, p.phi.direct_sum(&r.phi_m))
}

/// The quotient of a LeibDer pair by `S = span{[x,x]}`.
#[derive(Clone, Debug)]
pub struct Lieization {
    pub pair: LeibDerPair,
    /// Basis of `S` in reduced echelon form.
    pub kernel: Vec<Vector>,
    /// Original basis indices whose images form the quotient basis.
    pub quotient_basis: Vec<usize>,
    /// `dim(quotient) x dim(g)` matrix of the projection.
    pub projection: Matrix,
    /// Whether `phi(S)` lies in `S`.
    pub phi_preserves_kernel: bool,
}

pub fn lieization(p: &LeibDerPair) -> Lieization {
    let a = &p.algebra;
    let d = a.dim;
    let mut span = Vec::new();
    for i in 0..d {
        span.push(a.basis_bracket(i, i).to_vec());
        for j in i + 1..d {
            span.push(add_vec(a.basis_bracket(i, j), a.basis_bracket(j, i)));
        }
    }
    let rref = Matrix::from_rows(&span).map(|m| m.rref());
    let (rows, pivots) = match rref {
        Ok(r) if d > 0 => {
            let rows: Vec<Vector> = (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect();
            (rows, r.pivots)
        }
        _ => (Vec::new(), Vec::new()),
    };
    let reduce = |v: &[Scalar]| {
        let mut v = v.to_vec();
        for (row, &piv) in rows.iter().zip(&pivots) {
            let c = v[piv].clone();
            if !c.is_zero() {
                axpy(&mut v, &-c, row);
            }
        }
        v
    };
    let quotient_basis: Vec<usize> = (0..d).filter(|j| !pivots.contains(j)).collect();
    let q = quotient_basis.len();
    let project = |v: &[Scalar]| -> Vector {
        let r = reduce(v);
        quotient_basis.iter().map(|&j| r[j].clone()).collect()
    };
    let projection =
        Matrix::from_columns(q, &(0..d).map(|j| project(&unit_vec(d, j))).collect::<Vec<_>>()).expect("shape");
    let mut c = Vec::with_capacity(q * q * q);
    for &i in &quotient_basis {
        for &j in &quotient_basis {
            c.extend(project(a.basis_bracket(i, j)));
        }
    }
    let algebra = LeibnizAlgebra { dim: q, c };
    let phi_cols: Vec<Vector> = quotient_basis.iter().map(|&j| project(&p.phi.column(j))).collect();
    let phi = Matrix::from_columns(q, &phi_cols).expect("shape");
    let phi_preserves_kernel = rows.iter().all(|r| is_zero_vec(&reduce(&p.phi.mul_vec(r))));
    Lieization { pair: LeibDerPair { algebra, phi }, kernel: rows, quotient_basis, projection, phi_preserves_kernel }
}

/// Two products `x -| y` and `x |- y` stored like Leibniz structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dialgebra {
    pub dim: usize,
    pub left: Vec<Scalar>,
    pub right: Vec<Scalar>,
}

impl Dialgebra {
    fn prod(t: &[Scalar], d: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
        eval(t, &[d, d], d, &[x, y])
    }

    pub fn dashv(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        Self::prod(&self.left, self.dim, x, y)
    }

    pub fn vdash(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        Self::prod(&self.right, self.dim, x, y)
    }
}

/// The five dialgebra axioms, named `D1`..`D5`:
/// `(x-|y)-|z = x-|(y-|z)`, `(x-|y)-|z = x-|(y|-z)`, `(x|-y)-|z = x|-(y-|z)`,
/// `(x-|y)|-z = x|-(y|-z)`, `(x|-y)|-z = x|-(y|-z)`.
pub fn check_dialgebra(a: &Dialgebra) -> Result<Report> {
    let d = a.dim;
    if a.left.len() != d * d * d || a.right.len() != d * d * d {
        return Err(Error::Dimension("dialgebra products need dim^3 constants each".into()));
    }
    let mut report = Report::new();
    for t in tuples(d, 3) {
        let (x, y, z) = (unit_vec(d, t[0]), unit_vec(d, t[1]), unit_vec(d, t[2]));
        let checks = [
            (a.dashv(&a.dashv(&x, &y), &z), a.dashv(&x, &a.dashv(&y, &z))),
            (a.dashv(&a.dashv(&x, &y), &z), a.dashv(&x, &a.vdash(&y, &z))),
            (a.dashv(&a.vdash(&x, &y), &z), a.vdash(&x, &a.dashv(&y, &z))),
            (a.vdash(&a.dashv(&x, &y), &z), a.vdash(&x, &a.vdash(&y, &z))),
            (a.vdash(&a.vdash(&x, &y), &z), a.vdash(&x, &a.vdash(&y, &z))),
        ];
        for (n, (l, r)) in checks.iter().enumerate() {
            if l != r {
                report.record(&format!("D{}", n + 1), &t);
            }
        }
    }
    Ok(report)
}

/// `[x, y] = x -| y - y |- x` with `dm` a derivation of both products.
pub fn from_dialgebra(a: &Dialgebra, dm: &Matrix) -> Result<LeibDerPair> {
    check_dialgebra(a)?.into_result("not a dialgebra")?;
    require_square(dm, a.dim, "derivation")?;
    let d = a.dim;
    let mut report = Report::new();
    for t in tuples(d, 2) {
        let (x, y) = (unit_vec(d, t[0]), unit_vec(d, t[1]));
        let (dx, dy) = (dm.column(t[0]), dm.column(t[1]));
        for (name, prod) in [
            ("derivation of -|", Dialgebra::dashv as fn(&Dialgebra, &[Scalar], &[Scalar]) -> Vector),
            ("derivation of |-", Dialgebra::vdash),
        ] {
            let lhs = dm.mul_vec(&prod(a, &x, &y));
            if lhs != add_vec(&prod(a, &dx, &y), &prod(a, &x, &dy)) {
                report.record(name, &t);
            }
        }
    }
    report.into_result("not a dialgebra derivation")?;
    let mut c = Vec::with_capacity(d * d * d);
    for t in tuples(d, 2) {
        let (x, y) = (unit_vec(d, t[0]), unit_vec(d, t[1]));
        c.extend(sub_vec(&a.dashv(&x, &y), &a.vdash(&y, &x)));
    }
    LeibDerPair::new(LeibnizAlgebra::new(d, c)?, dm.clone())
}

/// An n-ary bracket with constants indexed by `(x_1, .., x_n, out)` row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NLeibniz {
    pub dim: usize,
    pub arity: usize,
    pub c: Vec<Scalar>,
}

impl NLeibniz {
    pub fn new(dim: usize, arity: usize, c: Vec<Scalar>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Invalid("n-Leibniz arity must be at least 2".into()));
        }
        let need = dim.checked_pow(arity as u32 + 1).ok_or_else(|| Error::Invalid("n-ary bracket too large".into()))?;
        if c.len() != need {
            return Err(Error::Dimension(format!("{arity}-ary bracket on dimension {dim} needs {need} constants")));
        }
        Ok(NLeibniz { dim, arity, c })
    }

    pub fn bracket(&self, args: &[&[Scalar]]) -> Vector {
        eval(&self.c, &vec![self.dim; self.arity], self.dim, args)
    }
}

/// Checks `[[x_1..x_n], y_1..y_{n-1}] = sum_i [x_1.., [x_i, y_1..y_{n-1}], .., x_n]`
/// and, for `dm`, the n-ary derivation law.
pub fn check_n_leibniz(l: &NLeibniz, dm: &Matrix) -> Result<Report> {
    require_square(dm, l.dim, "derivation")?;
    let (d, n) = (l.dim, l.arity);
    let mut report = Report::new();
    for t in tuples(d, 2 * n - 1) {
        let xs: Vec<Vector> = t[..n].iter().map(|&i| unit_vec(d, i)).collect();
        let ys: Vec<Vector> = t[n..].iter().map(|&i| unit_vec(d, i)).collect();
        let inner = l.bracket(&xs.iter().map(Vec::as_slice).collect::<Vec<_>>());
        let mut outer_args: Vec<&[Scalar]> = vec![&inner];
        outer_args.extend(ys.iter().map(Vec::as_slice));
        let lhs = l.bracket(&outer_args);
        let mut rhs = zero_vec(d);
        for i in 0..n {
            let mut args: Vec<&[Scalar]> = vec![&xs[i]];
            args.extend(ys.iter().map(Vec::as_slice));
            let xi_y = l.bracket(&args);
            let mut args2: Vec<&[Scalar]> = xs.iter().map(Vec::as_slice).collect();
            args2[i] = &xi_y;
            rhs = add_vec(&rhs, &l.bracket(&args2));
        }
        if lhs != rhs {
            report.record("n-leibniz", &t);
            break;
        }
    }
    for t in tuples(d, n) {
        let xs: Vec<Vector> = t.iter().map(|&i| unit_vec(d, i)).collect();
        let lhs = dm.mul_vec(&l.bracket(&xs.iter().map(Vec::as_slice).collect::<Vec<_>>()));
        let mut rhs = zero_vec(d);
        for i in 0..n {
            let dx = dm.column(t[i]);
            let mut args: Vec<&[Scalar]> = xs.iter().map(Vec::as_slice).collect();
            args[i] = &dx;
            rhs = add_vec(&rhs, &l.bracket(&args));
        }
        if lhs != rhs {
            report.record("n-derivation", &t);
            break;
        }
    }
    Ok(report)
}

/// The induced LeibDer pair on `L^{(n-1)}`, basis tuples in row-major order.
pub fn from_n_leibniz(l: &NLeibniz, dm: &Matrix) -> Result<LeibDerPair> {
    check_n_leibniz(l, dm)?.into_result("not an n-Leibniz algebra with derivation")?;
    let (d, k) = (l.dim, l.arity - 1);
    let big = d.checked_pow(k as u32).ok_or_else(|| Error::Invalid("tensor power too large".into()))?;
    let words: Vec<Vec<usize>> = tuples(d, k).collect();
    let index = |w: &[usize]| w.iter().fold(0, |acc, &x| acc * d + x);
    let mut c = zero_vec(big * big * big);
    for (xi, x) in words.iter().enumerate() {
        for (yi, y) in words.iter().enumerate() {
            for i in 0..k {
                let mut args: Vec<Vector> = vec![unit_vec(d, x[i])];
                args.extend(y.iter().map(|&j| unit_vec(d, j)));
                let v = l.bracket(&args.iter().map(Vec::as_slice).collect::<Vec<_>>());
                for (s, coef) in v.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let mut w = x.clone();
                    w[i] = s;
                    c[(xi * big + yi) * big + index(&w)] += coef;
                }
            }
        }
    }
    let mut phi = Matrix::zeros(big, big);
    for (xi, x) in words.iter().enumerate() {
        for i in 0..k {
            for s in 0..d {
                let coef = &dm[(s, x[i])];
                if coef.is_zero() {
                    continue;
                }
                let mut w = x.clone();
                w[i] = s;
                phi[(index(&w), xi)] += coef;
            }
        }
    }
    LeibDerPair::new(LeibnizAlgebra::new(big, c)?, phi)
}

/// The free Leibniz algebra on `V` truncated to words of length at most `cap`,
/// with the derivation induced by a map `d: V -> V`. Basis words are ordered by
/// length, then lexicographically.
#[derive(Clone, Debug)]
pub struct TruncatedFreeLeibniz {
    pub base_dim: usize,
    pub cap: usize,
    pub words: Vec<Vec<usize>>,
    pub pair: LeibDerPair,
    index: HashMap<Vec<usize>, usize>,
}

type Sparse = BTreeMap<Vec<usize>, Scalar>;

fn sparse_add(acc: &mut Sparse, w: Vec<usize>, c: Scalar) {
    let e = acc.entry(w).or_insert_with(Scalar::zero);
    *e += c;
}

/// Free bracket of two homogeneous combinations: `[x, v] = x v` and
/// `[x, y v] = [x, y] v - [x v, y]`.
fn free_bracket(x: &Sparse, y: &[usize]) -> Sparse {
    let mut out = Sparse::new();
    let (v, rest) = y.split_last().expect("nonempty word");
    if rest.is_empty() {
        for (w, c) in x {
            let mut w2 = w.clone();
            w2.push(*v);
            sparse_add(&mut out, w2, c.clone());
        }
        return out;
    }
    for (w, c) in free_bracket(x, rest) {
        let mut w2 = w;
        w2.push(*v);
        sparse_add(&mut out, w2, c);
    }
    let xv: Sparse = x
        .iter()
        .map(|(w, c)| {
            let mut w2 = w.clone();
            w2.push(*v);
            (w2, c.clone())
        })
        .collect();
    for (w, c) in free_bracket(&xv, rest) {
        sparse_add(&mut out, w, -c);
    }
    out
}

impl TruncatedFreeLeibniz {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn index_of(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.words[i].len()
    }
}

pub fn free_truncated(base_dim: usize, cap: usize, dm: &Matrix) -> Result<TruncatedFreeLeibniz> {
    if cap == 0 {
        return Err(Error::Invalid("degree cap must be at least 1".into()));
    }
    require_square(dm, base_dim, "d")?;
    let mut words = Vec::new();
    for len in 1..=cap {
        words.extend(tuples(base_dim, len));
    }
    let index: HashMap<Vec<usize>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let n = words.len();
    let mut c = zero_vec(n * n * n);
    for (i, u) in words.iter().enumerate() {
        for (j, w) in words.iter().enumerate() {
            if u.len() + w.len() > cap {
                continue;
            }
            let x: Sparse = [(u.clone(), Scalar::one())].into_iter().collect();
            for (word, coef) in free_bracket(&x, w) {
                c[(i * n + j) * n + index[&word]] += coef;
            }
        }
    }
    let mut phi = Matrix::zeros(n, n);
    for (j, w) in words.iter().enumerate() {
        for pos in 0..w.len() {
            for s in 0..base_dim {
                let coef = &dm[(s, w[pos])];
                if coef.is_zero() {
                    continue;
                }
                let mut w2 = w.clone();
                w2[pos] = s;
                phi[(index[&w2], j)] += coef;
            }
        }
    }
    let pair = LeibDerPair::new(LeibnizAlgebra::new(n, c)?, phi)?;
    Ok(TruncatedFreeLeibniz { base_dim, cap, words, pair, index })
}

/// Identities of the truncated free pair restricted to homogeneous tuples of
/// total degree at most the cap.
pub fn check_free_truncated(f: &TruncatedFreeLeibniz) -> Report {
    let a = &f.pair.algebra;
    let n = f.dim();
    let mut report = Report::new();
    for t in tuples(n, 3) {
        if f.degree(t[0]) + f.degree(t[1]) + f.degree(t[2]) > f.cap {
            continue;
        }
        let (ei, ej, ek) = (unit_vec(n, t[0]), unit_vec(n, t[1]), unit_vec(n, t[2]));
        let lhs = a.bracket(a.basis_bracket(t[0], t[1]), &ek);
        let rhs = add_vec(&a.bracket(a.basis_bracket(t[0], t[2]), &ej), &a.bracket(&ei, a.basis_bracket(t[1], t[2])));
        if lhs != rhs {
            report.record("leibniz", &t);
        }
    }
    for t in tuples(n, 2) {
        if f.degree(t[0]) + f.degree(t[1]) > f.cap {
            continue;
        }
        if !is_zero_vec(&derivation_defect(a, &f.pair.phi, t[0], t[1])) {
            report.record("derivation", &t);
        }
    }
    report
}

/// The bracket extension of `f: V -> g` to the truncated free algebra.
#[derive(Clone, Debug)]
pub struct UniversalExtension {
    /// `dim g x dim F` matrix sending a word `v_1..v_n` to `[..[f v_1, f v_2].., f v_n]`.
    pub map: Matrix,
    /// Morphism and derivation-compatibility identities on degree-bounded tuples.
    pub report: Report,
}

pub fn free_universal_extend(f: &TruncatedFreeLeibniz, p: &LeibDerPair, map: &Matrix) -> Result<UniversalExtension> {
    if map.rows() != p.dim() || map.cols() != f.base_dim {
        return Err(Error::Dimension("f must be dim(g) x dim(V)".into()));
    }
    let dm = f.pair.phi.submatrix(0..f.base_dim, 0..f.base_dim);
    if &p.phi * map != map * &dm {
        return Err(Error::Invalid("f does not intertwine d and phi".into()));
    }
    let g = &p.algebra;
    let cols: Vec<Vector> = f
        .words
        .iter()
        .map(|w| {
            let mut acc = map.column(w[0]);
            for &v in &w[1..] {
                acc = g.bracket(&acc, &map.column(v));
            }
            acc
        })
        .collect();
    let ext = Matrix::from_columns(p.dim(), &cols)?;
    let a = &f.pair.algebra;
    let mut report = Report::new();
    for t in tuples(f.dim(), 2) {
        if f.degree(t[0]) + f.degree(t[1]) > f.cap {
            continue;
        }
        let lhs = ext.mul_vec(a.basis_bracket(t[0], t[1]));
        if lhs != g.bracket(&cols[t[0]], &cols[t[1]]) {
            report.record("morphism", &t);
        }
    }
    let lhs = &ext * &f.pair.phi;
    let rhs = &p.phi * &ext;
    for j in 0..f.dim() {
        if lhs.column(j) != rhs.column(j) {
            report.record("derivation compatibility", &[j]);
        }
    }
    Ok(UniversalExtension { map: ext, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scale_vec;

    fn lambda2() -> LeibnizAlgebra {
        LeibnizAlgebra::from_entries(2, &[(1, 1, 0, 1)])
    }

    #[test]
    fn leibniz_examples() {
        assert!(check_leibniz(&LeibnizAlgebra::abelian(2)).passed());
        assert!(check_leibniz(&lambda2()).passed());
        let bad = LeibnizAlgebra::from_entries(2, &[(0, 1, 1, 1), (1, 0, 1, 1)]);
        let r = check_leibniz(&bad);
        assert!(!r.passed());
        // [[e2,e2],e1] = 0 but [[e2,e1],e2] + [e2,[e2,e1]] = 2 e2 (0-based (1,1,0)).
        let t = &r.first().unwrap().witness;
        let (i, j, k) = (t[0], t[1], t[2]);
        let lhs = bad.bracket(bad.basis_bracket(i, j), &unit_vec(2, k));
        let rhs = add_vec(
            &bad.bracket(bad.basis_bracket(i, k), &unit_vec(2, j)),
            &bad.bracket(&unit_vec(2, i), bad.basis_bracket(j, k)),
        );
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn derivation_examples() {
        let a = lambda2();
        assert!(check_derivation(&a, &Matrix::zeros(2, 2)).unwrap().passed());
        assert!(check_derivation(&LeibnizAlgebra::abelian(2), &Matrix::from_i64(&[&[1, 7], &[-3, 2]]))
            .unwrap()
            .passed());
        assert!(check_derivation(&a, &Matrix::from_i64(&[&[2, 0], &[0, 1]])).unwrap().passed());
        assert!(!check_derivation(&a, &Matrix::identity(2)).unwrap().passed());
        assert!(check_derivation(&a, &Matrix::identity(3)).is_err());
        // Der(lambda2): D e1 = 2b e1, D e2 = a e1 + b e2.
        let ders = derivations(&a);
        assert_eq!(ders.len(), 2);
        for dm in &ders {
            assert_eq!(dm[(0, 0)], int(2) * &dm[(1, 1)]);
            assert!(dm[(1, 0)].is_zero());
        }
    }

    #[test]
    fn inner_derivation_examples() {
        let a = lambda2();
        let dm = inner_derivation(&a, &unit_vec(2, 1)).unwrap();
        assert_eq!(dm, Matrix::from_i64(&[&[0, 1], &[0, 0]]));
        assert!(inner_derivation(&LeibnizAlgebra::abelian(3), &[int(1), int(2), int(3)]).unwrap().is_zero());
        assert!(inner_derivation(&a, &[int(1)]).is_err());
    }

    #[test]
    fn representation_examples() {
        let a = lambda2();
        assert!(check_representation(&Representation::adjoint(&a)).passed());
        assert!(check_representation(&Representation::trivial(a.clone(), 2)).passed());
        assert!(check_representation(&Representation::right_adjoint(&a)).passed());
        assert!(check_representation(&Representation::symmetric_adjoint(&a)).passed());
        // [e2, m] = m, right action zero.
        let left = vec![int(0), int(1)];
        let r = Representation::new(a.clone(), 1, left, zero_vec(2)).unwrap();
        let rep = check_representation(&r);
        assert!(rep.violates("LLM"));
        assert_eq!(rep.violations.iter().find(|v| v.rule == "LLM").unwrap().witness, vec![1, 1, 0]);
    }

    #[test]
    fn leibder_representation_examples() {
        let a = lambda2();
        let p = LeibDerPair::new(a.clone(), Matrix::from_i64(&[&[2, 5], &[0, 1]])).unwrap();
        assert!(check_leibder_representation(&p, &LeibDerRepresentation::adjoint(&p)).unwrap().passed());
        let triv = LeibDerRepresentation::trivial(&a, Matrix::from_i64(&[&[3]])).unwrap();
        assert!(check_leibder_representation(&p, &triv).unwrap().passed());
        // With phi = 0 the compatibility laws only ask phi_M to commute with
        // the actions, which the identity does.
        let p0 = LeibDerPair::zero(a.clone());
        let id = LeibDerRepresentation::new(Representation::adjoint(&a), Matrix::identity(2)).unwrap();
        assert!(check_leibder_representation(&p0, &id).unwrap().passed());
        let p1 = LeibDerPair::new(a.clone(), Matrix::identity(2)).unwrap();
        let bad = check_leibder_representation(&p1, &id).unwrap();
        assert!(bad.violates("phi_M left") && bad.violates("phi_M right"));
        let other = LeibDerRepresentation::adjoint(&LeibDerPair::zero(LeibnizAlgebra::abelian(2)));
        assert!(check_leibder_representation(&p0, &other).is_err());
    }

    #[test]
    fn semidirect_examples() {
        let p = LeibDerPair::zero(LeibnizAlgebra::abelian(2));
        let r = LeibDerRepresentation::trivial(&p.algebra, Matrix::zeros(1, 1)).unwrap();
        let s = semidirect_product(&p, &r).unwrap();
        assert_eq!(s.algebra, LeibnizAlgebra::abelian(3));
        let p = LeibDerPair::zero(lambda2());
        let s = semidirect_product(&p, &LeibDerRepresentation::adjoint(&p)).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(s.check().passed());
    }

    #[test]
    fn lieization_examples() {
        let p = LeibDerPair::zero(lambda2());
        let l = lieization(&p);
        assert_eq!(l.pair.dim(), 1);
        assert_eq!(l.kernel, vec![vec![int(1), int(0)]]);
        assert!(l.pair.algebra.constants().iter().all(Zero::is_zero));
        let lie = LeibnizAlgebra::from_entries(2, &[(0, 1, 1, 1), (1, 0, 1, -1)]);
        let l = lieization(&LeibDerPair::zero(lie.clone()));
        assert!(l.kernel.is_empty());
        assert_eq!(l.pair.algebra, lie);
        assert!(l.phi_preserves_kernel);
    }

    #[test]
    fn dialgebra_examples() {
        // K[x]/(x^2): basis 1, x, with both products the commutative product.
        let mut prod = zero_vec(8);
        prod[0] = int(1); // 1*1 = 1
        prod[3] = int(1); // 1*x = x
        prod[5] = int(1); // x*1 = x
        let dia = Dialgebra { dim: 2, left: prod.clone(), right: prod };
        let p = from_dialgebra(&dia, &Matrix::zeros(2, 2)).unwrap();
        assert!(p.algebra.constants().iter().all(Zero::is_zero));
        let zero = Dialgebra { dim: 2, left: zero_vec(8), right: zero_vec(8) };
        assert_eq!(from_dialgebra(&zero, &Matrix::identity(2)).unwrap().algebra, LeibnizAlgebra::abelian(2));
        let mut broken = zero_vec(8);
        broken[0] = int(1); // 1 -| 1 = 1 with |- zero breaks D2
        let dia = Dialgebra { dim: 2, left: broken, right: zero_vec(8) };
        assert!(check_dialgebra(&dia).unwrap().violates("D2"));
        assert!(from_dialgebra(&dia, &Matrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn n_leibniz_examples() {
        let a = lambda2();
        let l2 = NLeibniz::new(2, 2, a.constants().to_vec()).unwrap();
        let p = from_n_leibniz(&l2, &Matrix::zeros(2, 2)).unwrap();
        assert_eq!(p.algebra, a);

        let ab = NLeibniz::new(2, 3, zero_vec(16)).unwrap();
        let dm = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let p = from_n_leibniz(&ab, &dm).unwrap();
        assert_eq!(p.algebra, LeibnizAlgebra::abelian(4));
        // d (x) id + id (x) d in row-major tuple order.
        let kron = |a: &Matrix, b: &Matrix| Matrix::from_fn(4, 4, |i, j| &a[(i / 2, j / 2)] * &b[(i % 2, j % 2)]);
        assert_eq!(p.phi, &kron(&dm, &Matrix::identity(2)) + &kron(&Matrix::identity(2), &dm));

        let mut c = zero_vec(16);
        c[((1 * 2 + 1) * 2 + 1) * 2] = int(1); // [e2,e2,e2] = e1
        let l3 = NLeibniz::new(2, 3, c).unwrap();
        let p = from_n_leibniz(&l3, &Matrix::zeros(2, 2)).unwrap();
        assert_eq!(p.dim(), 4);
        assert!(check_leibniz(&p.algebra).passed());
    }

    #[test]
    fn free_examples() {
        let f = free_truncated(1, 2, &Matrix::zeros(1, 1)).unwrap();
        assert_eq!(f.words, vec![vec![0], vec![0, 0]]);
        assert_eq!(f.pair.algebra.basis_bracket(0, 0), &[int(0), int(1)]);
        assert!(f.pair.algebra.basis_bracket(0, 1).iter().all(Zero::is_zero));
        assert!(f.pair.phi.is_zero());

        let f = free_truncated(1, 3, &Matrix::identity(1)).unwrap();
        for (i, w) in f.words.iter().enumerate() {
            assert_eq!(f.pair.phi.column(i), scale_vec(&int(w.len() as i64), &unit_vec(3, i)));
        }
        assert!(check_free_truncated(&f).passed());

        let f = free_truncated(2, 3, &Matrix::from_i64(&[&[1, -1], &[2, 0]])).unwrap();
        assert!(check_free_truncated(&f).passed());
        assert!(free_truncated(2, 0, &Matrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn universal_extension_examples() {
        let f = free_truncated(1, 3, &Matrix::zeros(1, 1)).unwrap();
        let p = LeibDerPair::zero(lambda2());
        let zero = free_universal_extend(&f, &p, &Matrix::zeros(2, 1)).unwrap();
        assert!(zero.map.is_zero() && zero.report.passed());
        let ext = free_universal_extend(&f, &p, &Matrix::from_i64(&[&[0], &[1]])).unwrap();
        assert_eq!(ext.map.column(f.index_of(&[0, 0]).unwrap()), vec![int(1), int(0)]);
        assert!(ext.report.passed());
        let f = free_truncated(1, 2, &Matrix::identity(1)).unwrap();
        assert!(free_universal_extend(&f, &p, &Matrix::from_i64(&[&[0], &[1]])).is_err());
        let p = LeibDerPair::new(lambda2(), Matrix::from_i64(&[&[2, 0], &[0, 1]])).unwrap();
        let ext = free_universal_extend(&f, &p, &Matrix::from_i64(&[&[0], &[1]])).unwrap();
        assert!(ext.report.passed());
    }

    #[test]
    fn basis_change_preserves_validity() {
        let p = LeibDerPair::new(lambda2(), Matrix::from_i64(&[&[2, 5], &[0, 1]])).unwrap();
        let q = Matrix::from_i64(&[&[1, 1], &[1, 2]]);
        let p2 = p.change_basis(&q).unwrap();
        assert!(p2.check().passed());
        assert_eq!(p2.change_basis(&q.inverse().unwrap()).unwrap(), p);
    }
}
