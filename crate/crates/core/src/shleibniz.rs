//! Two-term sh Leibniz algebras `A1 --d--> A0`, homotopy derivations, their
//! morphisms, the skeletal and strict dictionaries, and the 2-vector space
//! presentation `V1 = A0 + A1`.

use num_traits::Zero;

use crate::cohomology::{partial, Cochain, LeibDerCochain};
use crate::error::{Error, Report, Result};
use crate::exactlin::{add_vec, sub_vec, unit_vec, zero_vec, Matrix, Scalar, Vector};
use crate::leibniz::{
    check_leibder_representation, check_representation, LeibDerPair, LeibDerRepresentation, LeibnizAlgebra,
    Representation,
};
use crate::tensor::{box_tuples, Multilinear};

fn sum(terms: &[(i64, Vector)]) -> Vector {
    let n = terms[0].1.len();
    terms.iter().fold(zero_vec(n), |acc, (s, v)| if *s > 0 { add_vec(&acc, v) } else { sub_vec(&acc, v) })
}

fn neg(v: &[Scalar]) -> Vector {
    v.iter().map(|c| -c).collect()
}

fn require_shape(m: &Multilinear, sizes: &[usize], out: usize, what: &str) -> Result<()> {
    if m.sizes() != sizes || m.out() != out {
        return Err(Error::Dimension(format!("{what} must have shape {sizes:?} -> {out}")));
    }
    Ok(())
}

fn require_matrix(m: &Matrix, rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::Dimension(format!("{what} must be {rows}x{cols}, got {}x{}", m.rows(), m.cols())));
    }
    Ok(())
}

/// `d: A1 -> A0`, `l2` split as `A0 x A0 -> A0`, `A0 x A1 -> A1`,
/// `A1 x A0 -> A1`, and `l3: A0^3 -> A1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermShLeibniz {
    n0: usize,
    n1: usize,
    d: Matrix,
    l2_00: Multilinear,
    l2_01: Multilinear,
    l2_10: Multilinear,
    l3: Multilinear,
}

impl TwoTermShLeibniz {
    pub fn new(d: Matrix, l2_00: Multilinear, l2_01: Multilinear, l2_10: Multilinear, l3: Multilinear) -> Result<Self> {
        let (n0, n1) = (d.rows(), d.cols());
        require_shape(&l2_00, &[n0, n0], n0, "l2 on A0 x A0")?;
        require_shape(&l2_01, &[n0, n1], n1, "l2 on A0 x A1")?;
        require_shape(&l2_10, &[n1, n0], n1, "l2 on A1 x A0")?;
        require_shape(&l3, &[n0, n0, n0], n1, "l3")?;
        Ok(TwoTermShLeibniz { n0, n1, d, l2_00, l2_01, l2_10, l3 })
    }

    pub fn zero(n0: usize, n1: usize) -> Self {
        TwoTermShLeibniz {
            n0,
            n1,
            d: Matrix::zeros(n0, n1),
            l2_00: Multilinear::zeros(vec![n0, n0], n0),
            l2_01: Multilinear::zeros(vec![n0, n1], n1),
            l2_10: Multilinear::zeros(vec![n1, n0], n1),
            l3: Multilinear::zeros(vec![n0, n0, n0], n1),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n0, self.n1)
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn l2_00(&self) -> &Multilinear {
        &self.l2_00
    }

    pub fn l2_01(&self) -> &Multilinear {
        &self.l2_01
    }

    pub fn l2_10(&self) -> &Multilinear {
        &self.l2_10
    }

    pub fn l3(&self) -> &Multilinear {
        &self.l3
    }

    pub fn is_skeletal(&self) -> bool {
        self.d.is_zero()
    }

    pub fn is_strict(&self) -> bool {
        self.l3.is_zero()
    }

    fn b00(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.l2_00.eval(&[x, y])
    }

    fn b01(&self, x: &[Scalar], m: &[Scalar]) -> Vector {
        self.l2_01.eval(&[x, m])
    }

    fn b10(&self, m: &[Scalar], x: &[Scalar]) -> Vector {
        self.l2_10.eval(&[m, x])
    }

    fn t3(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        self.l3.eval(&[x, y, z])
    }

    fn dm(&self, m: &[Scalar]) -> Vector {
        self.d.mul_vec(m)
    }

    fn e0(&self, i: usize) -> Vector {
        unit_vec(self.n0, i)
    }

    fn e1(&self, i: usize) -> Vector {
        unit_vec(self.n1, i)
    }
}

/// Evaluates the eight identities on basis tuples; rules `identity 1..8`.
/// In 4-7 the ternary bracket measures the Leibniz defect with the sign that
/// makes `J_{x,y,z} = ([[x, y], z], l3(x, y, z))` end at `[[x, z], y] + [x, [y, z]]`:
/// `d l3(x, y, z) = [[x, z], y] + [x, [y, z]] - [[x, y], z]`.
pub fn check_sh(s: &TwoTermShLeibniz) -> Report {
    let mut report = Report::new();
    let (n0, n1) = s.dims();
    for i in 0..n0 {
        let x = s.e0(i);
        for a in 0..n1 {
            let m = s.e1(a);
            if s.dm(&s.b01(&x, &m)) != s.b00(&x, &s.dm(&m)) {
                report.record("identity 1", &[i, a]);
            }
            if s.dm(&s.b10(&m, &x)) != s.b00(&s.dm(&m), &x) {
                report.record("identity 2", &[a, i]);
            }
        }
    }
    for a in 0..n1 {
        for b in 0..n1 {
            let (m, n) = (s.e1(a), s.e1(b));
            if s.b01(&s.dm(&m), &n) != s.b10(&m, &s.dm(&n)) {
                report.record("identity 3", &[a, b]);
            }
        }
    }
    for t in box_tuples(&[n0, n0, n0]) {
        let (x, y, z) = (s.e0(t[0]), s.e0(t[1]), s.e0(t[2]));
        let rhs =
            sum(&[(1, s.b00(&s.b00(&x, &y), &z)), (-1, s.b00(&s.b00(&x, &z), &y)), (-1, s.b00(&x, &s.b00(&y, &z)))]);
        if s.dm(&s.t3(&x, &y, &z)) != neg(&rhs) {
            report.record("identity 4", &t);
        }
    }
    for t in box_tuples(&[n0, n0, n1]) {
        let (x, y, m) = (s.e0(t[0]), s.e0(t[1]), s.e1(t[2]));
        let dm = s.dm(&m);
        let rhs5 =
            sum(&[(1, s.b01(&s.b00(&x, &y), &m)), (-1, s.b10(&s.b01(&x, &m), &y)), (-1, s.b01(&x, &s.b01(&y, &m)))]);
        if s.t3(&x, &y, &dm) != neg(&rhs5) {
            report.record("identity 5", &t);
        }
        let rhs6 =
            sum(&[(1, s.b10(&s.b01(&x, &m), &y)), (-1, s.b01(&s.b00(&x, &y), &m)), (-1, s.b01(&x, &s.b10(&m, &y)))]);
        if s.t3(&x, &dm, &y) != neg(&rhs6) {
            report.record("identity 6", &[t[0], t[2], t[1]]);
        }
        let rhs7 =
            sum(&[(1, s.b10(&s.b10(&m, &x), &y)), (-1, s.b10(&s.b10(&m, &y), &x)), (-1, s.b10(&m, &s.b00(&x, &y)))]);
        if s.t3(&dm, &x, &y) != neg(&rhs7) {
            report.record("identity 7", &[t[2], t[0], t[1]]);
        }
    }
    for t in box_tuples(&[n0, n0, n0, n0]) {
        let (x, y, z, w) = (s.e0(t[0]), s.e0(t[1]), s.e0(t[2]), s.e0(t[3]));
        let lhs = sum(&[
            (1, s.b01(&x, &s.t3(&y, &z, &w))),
            (1, s.b10(&s.t3(&x, &z, &w), &y)),
            (-1, s.b10(&s.t3(&x, &y, &w), &z)),
            (1, s.b10(&s.t3(&x, &y, &z), &w)),
        ]);
        let rhs = sum(&[
            (1, s.t3(&s.b00(&x, &y), &z, &w)),
            (-1, s.t3(&s.b00(&x, &z), &y, &w)),
            (1, s.t3(&s.b00(&x, &w), &y, &z)),
            (-1, s.t3(&x, &s.b00(&y, &z), &w)),
            (1, s.t3(&x, &s.b00(&y, &w), &z)),
            (1, s.t3(&x, &y, &s.b00(&z, &w))),
        ]);
        if lhs != rhs {
            report.record("identity 8", &t);
        }
    }
    report
}

fn require_sh(s: &TwoTermShLeibniz) -> Result<()> {
    check_sh(s).into_result("2-term sh Leibniz algebra")
}

/// `theta0: A0 -> A0`, `theta1: A1 -> A1`, `theta2: A0 x A0 -> A1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyDerivation {
    pub theta0: Matrix,
    pub theta1: Matrix,
    pub theta2: Multilinear,
}

impl HomotopyDerivation {
    pub fn zero(n0: usize, n1: usize) -> Self {
        HomotopyDerivation {
            theta0: Matrix::zeros(n0, n0),
            theta1: Matrix::zeros(n1, n1),
            theta2: Multilinear::zeros(vec![n0, n0], n1),
        }
    }

    fn require_fits(&self, s: &TwoTermShLeibniz) -> Result<()> {
        let (n0, n1) = s.dims();
        require_matrix(&self.theta0, n0, n0, "theta0")?;
        require_matrix(&self.theta1, n1, n1, "theta1")?;
        require_shape(&self.theta2, &[n0, n0], n1, "theta2")
    }

    fn t2(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.theta2.eval(&[x, y])
    }
}

/// Chain-map condition and items (a)-(d).
pub fn check_homotopy_derivation(s: &TwoTermShLeibniz, th: &HomotopyDerivation) -> Result<Report> {
    require_sh(s)?;
    th.require_fits(s)?;
    let (n0, n1) = s.dims();
    let (t0, t1) = (&th.theta0, &th.theta1);
    let mut report = Report::new();
    if &s.d * t1 != t0 * &s.d {
        report.record("chain map", &[]);
    }
    for i in 0..n0 {
        for j in 0..n0 {
            let (x, y) = (s.e0(i), s.e0(j));
            let rhs = sum(&[
                (1, t0.mul_vec(&s.b00(&x, &y))),
                (-1, s.b00(&t0.mul_vec(&x), &y)),
                (-1, s.b00(&x, &t0.mul_vec(&y))),
            ]);
            if s.dm(&th.t2(&x, &y)) != rhs {
                report.record("(a)", &[i, j]);
            }
        }
        for a in 0..n1 {
            let (x, m) = (s.e0(i), s.e1(a));
            let rhs_b = sum(&[
                (1, t1.mul_vec(&s.b01(&x, &m))),
                (-1, s.b01(&t0.mul_vec(&x), &m)),
                (-1, s.b01(&x, &t1.mul_vec(&m))),
            ]);
            if th.t2(&x, &s.dm(&m)) != rhs_b {
                report.record("(b)", &[i, a]);
            }
            let rhs_c = sum(&[
                (1, t1.mul_vec(&s.b10(&m, &x))),
                (-1, s.b10(&t1.mul_vec(&m), &x)),
                (-1, s.b10(&m, &t0.mul_vec(&x))),
            ]);
            if th.t2(&s.dm(&m), &x) != rhs_c {
                report.record("(c)", &[a, i]);
            }
        }
    }
    for t in box_tuples(&[n0, n0, n0]) {
        let (lhs, rhs) = item_d_sides(s, th, &t);
        if lhs != rhs {
            report.record("(d)", &t);
        }
    }
    Ok(report)
}

/// Both sides of item (d) on basis elements `t`.
fn item_d_sides(s: &TwoTermShLeibniz, th: &HomotopyDerivation, t: &[usize]) -> (Vector, Vector) {
    let (t0, t1) = (&th.theta0, &th.theta1);
    let (x, y, z) = (s.e0(t[0]), s.e0(t[1]), s.e0(t[2]));
    let lhs = sum(&[
        (1, s.t3(&t0.mul_vec(&x), &y, &z)),
        (1, s.t3(&x, &t0.mul_vec(&y), &z)),
        (1, s.t3(&x, &y, &t0.mul_vec(&z))),
        (-1, t1.mul_vec(&s.t3(&x, &y, &z))),
    ]);
    let rhs = sum(&[
        (1, s.b10(&th.t2(&x, &y), &z)),
        (-1, s.b10(&th.t2(&x, &z), &y)),
        (-1, s.b01(&x, &th.t2(&y, &z))),
        (1, th.t2(&s.b00(&x, &y), &z)),
        (-1, th.t2(&s.b00(&x, &z), &y)),
        (-1, th.t2(&x, &s.b00(&y, &z))),
    ]);
    (lhs, rhs)
}

/// `f0: A0 -> A0'`, `f1: A1 -> A1'`, `f2: A0 x A0 -> A1'` and, for morphisms
/// respecting homotopy derivations, `b: A0 -> A1'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShMorphism {
    pub f0: Matrix,
    pub f1: Matrix,
    pub f2: Multilinear,
    pub b: Option<Matrix>,
}

impl ShMorphism {
    pub fn identity(s: &TwoTermShLeibniz, with_b: bool) -> Self {
        let (n0, n1) = s.dims();
        ShMorphism {
            f0: Matrix::identity(n0),
            f1: Matrix::identity(n1),
            f2: Multilinear::zeros(vec![n0, n0], n1),
            b: with_b.then(|| Matrix::zeros(n1, n0)),
        }
    }

    fn f2v(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.f2.eval(&[x, y])
    }

    /// `self` after `first`: `f2 = f1' f2 + f2'(f0 ., f0 .)`, `B = B' f0 + f1' B`.
    pub fn after(&self, first: &ShMorphism) -> Result<ShMorphism> {
        let (n0, _) = (first.f0.cols(), first.f1.cols());
        let f0 = self.f0.try_mul(&first.f0)?;
        let f1 = self.f1.try_mul(&first.f1)?;
        let out = self.f1.rows();
        let f2 = Multilinear::from_fn(vec![n0, n0], out, |t| {
            let (x, y) = (unit_vec(n0, t[0]), unit_vec(n0, t[1]));
            add_vec(&self.f1.mul_vec(&first.f2v(&x, &y)), &self.f2v(&first.f0.mul_vec(&x), &first.f0.mul_vec(&y)))
        });
        let b = match (&self.b, &first.b) {
            (Some(b2), Some(b1)) => Some(&b2.try_mul(&first.f0)? + &self.f1.try_mul(b1)?),
            (None, None) => None,
            _ => return Err(Error::Invalid("cannot compose a morphism with B and one without".into())),
        };
        Ok(ShMorphism { f0, f1, f2, b })
    }
}

/// Morphism identities M1-M4 and, when `b` is present, B1-B3 against the
/// homotopy derivations `derivs = (theta, theta')`.
pub fn check_sh_morphism(
    s: &TwoTermShLeibniz,
    t: &TwoTermShLeibniz,
    f: &ShMorphism,
    derivs: Option<(&HomotopyDerivation, &HomotopyDerivation)>,
) -> Result<Report> {
    require_sh(s)?;
    require_sh(t)?;
    let ((n0, n1), (p0, p1)) = (s.dims(), t.dims());
    require_matrix(&f.f0, p0, n0, "f0")?;
    require_matrix(&f.f1, p1, n1, "f1")?;
    require_shape(&f.f2, &[n0, n0], p1, "f2")?;
    let mut report = Report::new();
    if &t.d * &f.f1 != &f.f0 * &s.d {
        report.record("chain map", &[]);
    }
    for i in 0..n0 {
        let x = s.e0(i);
        let fx = f.f0.mul_vec(&x);
        for j in 0..n0 {
            let y = s.e0(j);
            let rhs = sub_vec(&f.f0.mul_vec(&s.b00(&x, &y)), &t.b00(&fx, &f.f0.mul_vec(&y)));
            if t.dm(&f.f2v(&x, &y)) != rhs {
                report.record("M1", &[i, j]);
            }
        }
        for a in 0..n1 {
            let m = s.e1(a);
            let fm = f.f1.mul_vec(&m);
            if f.f2v(&x, &s.dm(&m)) != sub_vec(&f.f1.mul_vec(&s.b01(&x, &m)), &t.b01(&fx, &fm)) {
                report.record("M2", &[i, a]);
            }
            if f.f2v(&s.dm(&m), &x) != sub_vec(&f.f1.mul_vec(&s.b10(&m, &x)), &t.b10(&fm, &fx)) {
                report.record("M3", &[a, i]);
            }
        }
    }
    for tup in box_tuples(&[n0, n0, n0]) {
        let (x, y, z) = (s.e0(tup[0]), s.e0(tup[1]), s.e0(tup[2]));
        let (fx, fy, fz) = (f.f0.mul_vec(&x), f.f0.mul_vec(&y), f.f0.mul_vec(&z));
        let total = sum(&[
            (1, f.f1.mul_vec(&s.t3(&x, &y, &z))),
            (1, t.b10(&f.f2v(&x, &y), &fz)),
            (-1, t.b10(&f.f2v(&x, &z), &fy)),
            (-1, t.b01(&fx, &f.f2v(&y, &z))),
            (1, f.f2v(&s.b00(&x, &y), &z)),
            (-1, f.f2v(&s.b00(&x, &z), &y)),
            (-1, f.f2v(&x, &s.b00(&y, &z))),
            (-1, t.t3(&fx, &fy, &fz)),
        ]);
        if total.iter().any(|v| !v.is_zero()) {
            report.record("M4", &tup);
        }
    }
    let Some(b) = &f.b else {
        return Ok(report);
    };
    let Some((th, tt)) = derivs else {
        return Err(Error::Invalid("B identities need homotopy derivations on both sides".into()));
    };
    th.require_fits(s)?;
    tt.require_fits(t)?;
    require_matrix(b, p1, n0, "B")?;
    if &(&f.f0 * &th.theta0) - &(&tt.theta0 * &f.f0) != &t.d * b {
        report.record("B1", &[]);
    }
    if &(&f.f1 * &th.theta1) - &(&tt.theta1 * &f.f1) != b * &s.d {
        report.record("B2", &[]);
    }
    for i in 0..n0 {
        for j in 0..n0 {
            let (x, y) = (s.e0(i), s.e0(j));
            let (fx, fy) = (f.f0.mul_vec(&x), f.f0.mul_vec(&y));
            let lhs = sub_vec(&f.f1.mul_vec(&th.t2(&x, &y)), &tt.t2(&fx, &fy));
            let rhs = sum(&[
                (1, tt.theta1.mul_vec(&f.f2v(&x, &y))),
                (-1, f.f2v(&th.theta0.mul_vec(&x), &y)),
                (-1, f.f2v(&x, &th.theta0.mul_vec(&y))),
                (1, b.mul_vec(&s.b00(&x, &y))),
                (-1, t.b10(&b.mul_vec(&x), &fy)),
                (-1, t.b01(&fx, &b.mul_vec(&y))),
            ]);
            if lhs != rhs {
                report.record("B3", &[i, j]);
            }
        }
    }
    Ok(report)
}

/// Transports `(s, th)` along `f0 = id`, `f1 = id` and the given `f2`; the
/// returned morphism goes from `s` to the new structure.
pub fn gauge_by_f2(
    s: &TwoTermShLeibniz,
    th: &HomotopyDerivation,
    f2: &Multilinear,
) -> Result<(TwoTermShLeibniz, HomotopyDerivation, ShMorphism)> {
    let (n0, n1) = s.dims();
    require_shape(f2, &[n0, n0], n1, "f2")?;
    let f = |x: &[Scalar], y: &[Scalar]| f2.eval(&[x, y]);
    let l2_00 = Multilinear::from_fn(vec![n0, n0], n0, |t| {
        let (x, y) = (s.e0(t[0]), s.e0(t[1]));
        sub_vec(&s.b00(&x, &y), &s.dm(&f(&x, &y)))
    });
    let l2_01 = Multilinear::from_fn(vec![n0, n1], n1, |t| {
        let (x, m) = (s.e0(t[0]), s.e1(t[1]));
        sub_vec(&s.b01(&x, &m), &f(&x, &s.dm(&m)))
    });
    let l2_10 = Multilinear::from_fn(vec![n1, n0], n1, |t| {
        let (m, x) = (s.e1(t[0]), s.e0(t[1]));
        sub_vec(&s.b10(&m, &x), &f(&s.dm(&m), &x))
    });
    let partial_s = TwoTermShLeibniz::new(s.d.clone(), l2_00, l2_01, l2_10, Multilinear::zeros(vec![n0, n0, n0], n1))?;
    let l3 = Multilinear::from_fn(vec![n0, n0, n0], n1, |t| {
        let (x, y, z) = (s.e0(t[0]), s.e0(t[1]), s.e0(t[2]));
        sum(&[
            (1, s.t3(&x, &y, &z)),
            (1, partial_s.b10(&f(&x, &y), &z)),
            (-1, partial_s.b10(&f(&x, &z), &y)),
            (-1, partial_s.b01(&x, &f(&y, &z))),
            (1, f(&s.b00(&x, &y), &z)),
            (-1, f(&s.b00(&x, &z), &y)),
            (-1, f(&x, &s.b00(&y, &z))),
        ])
    });
    let out = TwoTermShLeibniz { l3, ..partial_s };
    let theta2 = Multilinear::from_fn(vec![n0, n0], n1, |t| {
        let (x, y) = (s.e0(t[0]), s.e0(t[1]));
        sum(&[
            (1, th.t2(&x, &y)),
            (-1, th.theta1.mul_vec(&f(&x, &y))),
            (1, f(&th.theta0.mul_vec(&x), &y)),
            (1, f(&x, &th.theta0.mul_vec(&y))),
        ])
    });
    let th2 = HomotopyDerivation { theta0: th.theta0.clone(), theta1: th.theta1.clone(), theta2 };
    let morphism = ShMorphism {
        f0: Matrix::identity(n0),
        f1: Matrix::identity(n1),
        f2: f2.clone(),
        b: Some(Matrix::zeros(n1, n0)),
    };
    Ok((out, th2, morphism))
}

/// A homotopy derivation equivalent to `th` through the identity morphism
/// with the given `B: A0 -> A1`.
pub fn gauge_by_b(
    s: &TwoTermShLeibniz,
    th: &HomotopyDerivation,
    b: &Matrix,
) -> Result<(HomotopyDerivation, ShMorphism)> {
    let (n0, n1) = s.dims();
    require_matrix(b, n1, n0, "B")?;
    let theta0 = &th.theta0 - &(&s.d * b);
    let theta1 = &th.theta1 - &(b * &s.d);
    let theta2 = Multilinear::from_fn(vec![n0, n0], n1, |t| {
        let (x, y) = (s.e0(t[0]), s.e0(t[1]));
        sum(&[
            (1, th.t2(&x, &y)),
            (-1, b.mul_vec(&s.b00(&x, &y))),
            (1, s.b10(&b.mul_vec(&x), &y)),
            (1, s.b01(&x, &b.mul_vec(&y))),
        ])
    });
    let mut morphism = ShMorphism::identity(s, true);
    morphism.b = Some(b.clone());
    Ok((HomotopyDerivation { theta0, theta1, theta2 }, morphism))
}

/// A LeibDer pair, a LeibDer representation and a LeibDer 3-cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub pair: LeibDerPair,
    pub rep: LeibDerRepresentation,
    pub cocycle: LeibDerCochain,
}

/// `d = 0`: `(A0, theta0)`, `(A1, theta1)` with actions from `l2`, and `(l3, -theta2)`.
pub fn skeletal_to_triple(s: &TwoTermShLeibniz, th: &HomotopyDerivation) -> Result<Triple> {
    if !s.is_skeletal() {
        return Err(Error::Invalid("structure is not skeletal (d != 0)".into()));
    }
    check_homotopy_derivation(s, th)?.into_result("homotopy derivation")?;
    let (n0, n1) = s.dims();
    let algebra = LeibnizAlgebra::new(n0, s.l2_00.data().to_vec())?;
    let pair = LeibDerPair::new(algebra.clone(), th.theta0.clone())?;
    let rep = Representation::new(algebra, n1, s.l2_01.data().to_vec(), s.l2_10.data().to_vec())?;
    let rep = LeibDerRepresentation::new(rep, th.theta1.clone())?;
    let top = Cochain::new(3, n0, n1, s.l3.data().to_vec())?;
    let shadow = Cochain::new(2, n0, n1, th.theta2.data().to_vec())?.neg();
    let cocycle = LeibDerCochain::new(top, Some(shadow))?;
    if !partial(&pair, &rep, &cocycle)?.is_zero() {
        return Err(Error::Invalid("(l3, -theta2) is not a cocycle".into()));
    }
    Ok(Triple { pair, rep, cocycle })
}

pub fn triple_to_skeletal(t: &Triple) -> Result<(TwoTermShLeibniz, HomotopyDerivation)> {
    t.pair.check().into_result("pair")?;
    check_leibder_representation(&t.pair, &t.rep)?.into_result("representation")?;
    let (n0, n1) = (t.pair.dim(), t.rep.mdim());
    if t.cocycle.degree() != 3 || t.cocycle.gdim() != n0 || t.cocycle.mdim() != n1 {
        return Err(Error::Dimension("cocycle must be a 3-cochain with values in the module".into()));
    }
    if !partial(&t.pair, &t.rep, &t.cocycle)?.is_zero() {
        return Err(Error::Invalid("triple cochain is not a cocycle".into()));
    }
    let s = TwoTermShLeibniz::new(
        Matrix::zeros(n0, n1),
        Multilinear::new(vec![n0, n0], n0, t.pair.algebra.constants().to_vec())?,
        Multilinear::new(vec![n0, n1], n1, t.rep.rep.left_data().to_vec())?,
        Multilinear::new(vec![n1, n0], n1, t.rep.rep.right_data().to_vec())?,
        Multilinear::new(vec![n0, n0, n0], n1, t.cocycle.top.values().to_vec())?,
    )?;
    let shadow = t.cocycle.shadow.as_ref().expect("degree 3");
    let theta2 = Multilinear::new(vec![n0, n0], n1, shadow.neg().into_values())?;
    Ok((s, HomotopyDerivation { theta0: t.pair.phi.clone(), theta1: t.rep.phi_m.clone(), theta2 }))
}

/// `dt: g -> h` with actions of `h` on `g`, stored as a representation of
/// `h` with module `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    pub g: LeibDerPair,
    pub h: LeibDerPair,
    pub dt: Matrix,
    pub action: Representation,
}

/// Structure checks plus axioms (a)-(d).
pub fn check_crossed(c: &CrossedModule) -> Result<Report> {
    let (ng, nh) = (c.g.dim(), c.h.dim());
    require_matrix(&c.dt, nh, ng, "dt")?;
    if c.action.base != c.h.algebra || c.action.mdim() != ng {
        return Err(Error::Dimension("action must be a representation of h on g".into()));
    }
    let mut report = Report::new();
    report.merge_prefixed("g: ", c.g.check());
    report.merge_prefixed("h: ", c.h.check());
    report.merge_prefixed("action: ", check_representation(&c.action));
    let gb = |m: &[Scalar], n: &[Scalar]| c.g.algebra.bracket(m, n);
    let hb = |x: &[Scalar], y: &[Scalar]| c.h.algebra.bracket(x, y);
    let left = |x: &[Scalar], m: &[Scalar]| c.action.act_left(x, m);
    let right = |m: &[Scalar], x: &[Scalar]| c.action.act_right(m, x);
    let (pg, ph) = (&c.g.phi, &c.h.phi);
    if &c.dt * pg != ph * &c.dt {
        report.record("dt phi", &[]);
    }
    for a in 0..ng {
        let m = unit_vec(ng, a);
        let dm = c.dt.mul_vec(&m);
        for b in 0..ng {
            let n = unit_vec(ng, b);
            let mn = gb(&m, &n);
            if c.dt.mul_vec(&mn) != hb(&dm, &c.dt.mul_vec(&n)) {
                report.record("dt bracket", &[a, b]);
            }
            if left(&dm, &n) != mn {
                report.record("(b) left", &[a, b]);
            }
            if right(&m, &c.dt.mul_vec(&n)) != mn {
                report.record("(b) right", &[a, b]);
            }
            for i in 0..nh {
                let x = unit_vec(nh, i);
                if right(&mn, &x) != add_vec(&gb(&right(&m, &x), &n), &gb(&m, &right(&n, &x))) {
                    report.record("(c) 1", &[a, b, i]);
                }
                if gb(&left(&x, &m), &n) != add_vec(&gb(&left(&x, &n), &m), &left(&x, &mn)) {
                    report.record("(c) 2", &[i, a, b]);
                }
                if gb(&right(&m, &x), &n) != add_vec(&right(&mn, &x), &gb(&m, &left(&x, &n))) {
                    report.record("(c) 3", &[a, i, b]);
                }
            }
        }
        for i in 0..nh {
            let x = unit_vec(nh, i);
            if c.dt.mul_vec(&left(&x, &m)) != hb(&x, &dm) {
                report.record("(a) left", &[i, a]);
            }
            if c.dt.mul_vec(&right(&m, &x)) != hb(&dm, &x) {
                report.record("(a) right", &[a, i]);
            }
            let phx = ph.mul_vec(&x);
            let pgm = pg.mul_vec(&m);
            if pg.mul_vec(&left(&x, &m)) != add_vec(&left(&phx, &m), &left(&x, &pgm)) {
                report.record("(d) left", &[i, a]);
            }
            if pg.mul_vec(&right(&m, &x)) != add_vec(&right(&pgm, &x), &right(&m, &phx)) {
                report.record("(d) right", &[a, i]);
            }
        }
    }
    Ok(report)
}

/// `g = A1` with `[m, n] = l2(dm, n)`, `h = A0`, `dt = d`, derivations `theta1`, `theta0`.
pub fn strict_to_crossed(s: &TwoTermShLeibniz, th: &HomotopyDerivation) -> Result<CrossedModule> {
    if !s.is_strict() || !th.theta2.is_zero() {
        return Err(Error::Invalid("structure is not strict (l3 or theta2 nonzero)".into()));
    }
    check_homotopy_derivation(s, th)?.into_result("homotopy derivation")?;
    let (n0, n1) = s.dims();
    let g_bracket = LeibnizAlgebra::from_fn(n1, |a, b, k| s.b01(&s.dm(&s.e1(a)), &s.e1(b))[k].clone());
    let h_algebra = LeibnizAlgebra::new(n0, s.l2_00.data().to_vec())?;
    let action = Representation::new(h_algebra.clone(), n1, s.l2_01.data().to_vec(), s.l2_10.data().to_vec())?;
    let c = CrossedModule {
        g: LeibDerPair::new(g_bracket, th.theta1.clone())?,
        h: LeibDerPair::new(h_algebra, th.theta0.clone())?,
        dt: s.d.clone(),
        action,
    };
    check_crossed(&c)?.into_result("crossed module")?;
    Ok(c)
}

pub fn crossed_to_strict(c: &CrossedModule) -> Result<(TwoTermShLeibniz, HomotopyDerivation)> {
    check_crossed(c)?.into_result("crossed module")?;
    let (n1, n0) = (c.g.dim(), c.h.dim());
    let s = TwoTermShLeibniz::new(
        c.dt.clone(),
        Multilinear::new(vec![n0, n0], n0, c.h.algebra.constants().to_vec())?,
        Multilinear::new(vec![n0, n1], n1, c.action.left_data().to_vec())?,
        Multilinear::new(vec![n1, n0], n1, c.action.right_data().to_vec())?,
        Multilinear::zeros(vec![n0, n0, n0], n1),
    )?;
    let th = HomotopyDerivation {
        theta0: c.h.phi.clone(),
        theta1: c.g.phi.clone(),
        theta2: Multilinear::zeros(vec![n0, n0], n1),
    };
    check_homotopy_derivation(&s, &th)?.into_result("strict homotopy derivation")?;
    Ok((s, th))
}

/// Objects `V0 = A0`, morphisms `V1 = A0 + A1` with `s(x + m) = x`,
/// `t(x + m) = x + dm`, the bracket on both levels and the Jacobiator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoVectorSpace {
    pub n0: usize,
    pub n1: usize,
    pub source: Matrix,
    pub target: Matrix,
    pub object_bracket: Multilinear,
    pub bracket: Multilinear,
    /// `J_{x,y,z}`, a morphism of `V1` for each triple of objects.
    pub jacobiator: Multilinear,
}

fn inject0(n1: usize, x: &[Scalar]) -> Vector {
    let mut v = x.to_vec();
    v.extend(zero_vec(n1));
    v
}

fn inject1(n0: usize, m: &[Scalar]) -> Vector {
    let mut v = zero_vec(n0);
    v.extend_from_slice(m);
    v
}

fn split(n0: usize, v: &[Scalar]) -> (Vector, Vector) {
    (v[..n0].to_vec(), v[n0..].to_vec())
}

/// `[x + m, y + n] = l2(x, y) + (l2(x, n) + l2(m, y) + l2(m, dn))` and
/// `J_{x,y,z} = ([[x, y], z], l3(x, y, z))`.
pub fn to_two_vector(s: &TwoTermShLeibniz) -> Result<TwoVectorSpace> {
    require_sh(s)?;
    let (n0, n1) = s.dims();
    let v = n0 + n1;
    let source = Matrix::identity(n0).hcat(&Matrix::zeros(n0, n1))?;
    let target = Matrix::identity(n0).hcat(&s.d)?;
    let bracket = Multilinear::from_fn(vec![v, v], v, |t| {
        let (x, m) = split(n0, &unit_vec(v, t[0]));
        let (y, n) = split(n0, &unit_vec(v, t[1]));
        let mut out = s.b00(&x, &y);
        out.extend(sum(&[(1, s.b01(&x, &n)), (1, s.b10(&m, &y)), (1, s.b10(&m, &s.dm(&n)))]));
        out
    });
    let jacobiator = Multilinear::from_fn(vec![n0, n0, n0], v, |t| {
        let (x, y, z) = (s.e0(t[0]), s.e0(t[1]), s.e0(t[2]));
        let mut out = s.b00(&s.b00(&x, &y), &z);
        out.extend(s.t3(&x, &y, &z));
        out
    });
    Ok(TwoVectorSpace { n0, n1, source, target, object_bracket: s.l2_00.clone(), bracket, jacobiator })
}

/// Reads `ker s = A1`, `d = t|_{A1}` and the structure maps back off the
/// standard presentation, rejecting data that is not of that form.
pub fn from_two_vector(v: &TwoVectorSpace) -> Result<TwoTermShLeibniz> {
    let (n0, n1) = (v.n0, v.n1);
    let nv = n0 + n1;
    require_matrix(&v.source, n0, nv, "source")?;
    require_matrix(&v.target, n0, nv, "target")?;
    require_shape(&v.object_bracket, &[n0, n0], n0, "object bracket")?;
    require_shape(&v.bracket, &[nv, nv], nv, "morphism bracket")?;
    require_shape(&v.jacobiator, &[n0, n0, n0], nv, "jacobiator")?;
    let mut report = Report::new();
    if v.source != Matrix::identity(n0).hcat(&Matrix::zeros(n0, n1))? {
        report.record("source is the projection", &[]);
    }
    if v.target.submatrix(0..n0, 0..n0) != Matrix::identity(n0) {
        report.record("target is identity on objects", &[]);
    }
    let d = v.target.submatrix(0..n0, n0..nv);
    let l2_01 = Multilinear::from_fn(vec![n0, n1], n1, |t| split(n0, v.bracket.at(&[t[0], n0 + t[1]])).1);
    let l2_10 = Multilinear::from_fn(vec![n1, n0], n1, |t| split(n0, v.bracket.at(&[n0 + t[0], t[1]])).1);
    let l3 = Multilinear::from_fn(vec![n0, n0, n0], n1, |t| split(n0, v.jacobiator.at(t)).1);
    let s = TwoTermShLeibniz::new(d, v.object_bracket.clone(), l2_01, l2_10, l3)?;
    for i in 0..n0 {
        for j in 0..n0 {
            let expected = inject0(n1, v.object_bracket.at(&[i, j]));
            if v.bracket.at(&[i, j]) != expected.as_slice() {
                report.record("bracket on identities", &[i, j]);
            }
        }
    }
    for a in 0..n1 {
        for i in 0..n0 {
            if split(n0, v.bracket.at(&[i, n0 + a])).0.iter().any(|x| !x.is_zero())
                || split(n0, v.bracket.at(&[n0 + a, i])).0.iter().any(|x| !x.is_zero())
            {
                report.record("mixed bracket lies in A1", &[i, a]);
            }
        }
        for b in 0..n1 {
            let expected = inject1(n0, &s.b10(&s.e1(a), &s.dm(&s.e1(b))));
            if v.bracket.at(&[n0 + a, n0 + b]) != expected.as_slice() {
                report.record("bracket on A1", &[a, b]);
            }
        }
    }
    for t in box_tuples(&[n0, n0, n0]) {
        let (x, y, z) = (s.e0(t[0]), s.e0(t[1]), s.e0(t[2]));
        if split(n0, v.jacobiator.at(&t)).0 != s.b00(&s.b00(&x, &y), &z) {
            report.record("jacobiator source", &t);
        }
    }
    report.into_result("standard 2-vector space presentation")?;
    Ok(s)
}

/// `D0` on objects, `D1` on morphisms and the natural map
/// `nat_{x,y}: [D0 x, y] + [x, D0 y] -> D0[x, y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoDerivation {
    pub d0: Matrix,
    pub d1: Matrix,
    pub nat: Multilinear,
}

/// `D0 = theta0`, `D1 = theta0 + theta1`,
/// `nat_{x,y} = (l2(theta0 x, y) + l2(x, theta0 y), theta2(x, y))`.
pub fn to_two_derivation(s: &TwoTermShLeibniz, th: &HomotopyDerivation) -> Result<TwoDerivation> {
    check_homotopy_derivation(s, th)?.into_result("homotopy derivation")?;
    let (n0, n1) = s.dims();
    let nat = Multilinear::from_fn(vec![n0, n0], n0 + n1, |t| {
        let (x, y) = (s.e0(t[0]), s.e0(t[1]));
        let mut out = add_vec(&s.b00(&th.theta0.mul_vec(&x), &y), &s.b00(&x, &th.theta0.mul_vec(&y)));
        out.extend(th.t2(&x, &y));
        out
    });
    Ok(TwoDerivation { d0: th.theta0.clone(), d1: th.theta0.direct_sum(&th.theta1), nat })
}

/// Checks functoriality of `D` and the source/target of `nat`, then reads
/// off `theta0 = D0`, `theta1 = D1|_{A1}`, `theta2 = pr(nat)`.
pub fn from_two_derivation(v: &TwoVectorSpace, dd: &TwoDerivation) -> Result<HomotopyDerivation> {
    let s = from_two_vector(v)?;
    let (n0, n1) = (v.n0, v.n1);
    let nv = n0 + n1;
    require_matrix(&dd.d0, n0, n0, "D0")?;
    require_matrix(&dd.d1, nv, nv, "D1")?;
    require_shape(&dd.nat, &[n0, n0], nv, "natural map")?;
    let mut report = Report::new();
    if &v.source * &dd.d1 != &dd.d0 * &v.source {
        report.record("D commutes with source", &[]);
    }
    if &v.target * &dd.d1 != &dd.d0 * &v.target {
        report.record("D commutes with target", &[]);
    }
    if !dd.d1.submatrix(n0..nv, 0..n0).is_zero() {
        report.record("D preserves identities", &[]);
    }
    let th = HomotopyDerivation {
        theta0: dd.d0.clone(),
        theta1: dd.d1.submatrix(n0..nv, n0..nv),
        theta2: Multilinear::from_fn(vec![n0, n0], n1, |t| split(n0, dd.nat.at(t)).1),
    };
    for i in 0..n0 {
        for j in 0..n0 {
            let (x, y) = (s.e0(i), s.e0(j));
            let arrow = dd.nat.at(&[i, j]);
            let split_side = add_vec(&s.b00(&dd.d0.mul_vec(&x), &y), &s.b00(&x, &dd.d0.mul_vec(&y)));
            if v.source.mul_vec(arrow) != split_side {
                report.record("natural map source", &[i, j]);
            }
            if v.target.mul_vec(arrow) != dd.d0.mul_vec(&s.b00(&x, &y)) {
                report.record("natural map target", &[i, j]);
            }
        }
    }
    report.into_result("2-derivation")?;
    Ok(th)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cohomology, delta_l};
    use crate::corpus::{lambda2, sh_from_entries as sh, sh_mutants as mutants, sparse_multilinear as ml};
    use crate::leibniz::derivations;

    #[test]
    fn mutants_violate_exactly_their_identity() {
        for (k, s) in mutants().iter().enumerate() {
            assert_eq!(check_sh(s).rules(), vec![format!("identity {}", k + 1)], "mutant {}", k + 1);
        }
    }

    #[test]
    fn basic_structures_pass() {
        assert!(check_sh(&TwoTermShLeibniz::zero(2, 2)).passed());
        let a = lambda2();
        let s = TwoTermShLeibniz::new(
            Matrix::zeros(2, 0),
            Multilinear::new(vec![2, 2], 2, a.constants().to_vec()).unwrap(),
            Multilinear::zeros(vec![2, 0], 0),
            Multilinear::zeros(vec![0, 2], 0),
            Multilinear::zeros(vec![2, 2, 2], 0),
        )
        .unwrap();
        assert!(check_sh(&s).passed());
        let th = HomotopyDerivation::zero(2, 0);
        assert!(check_homotopy_derivation(&s, &th).unwrap().passed());
        let bad = HomotopyDerivation { theta0: Matrix::identity(2), ..th };
        assert_eq!(check_homotopy_derivation(&s, &bad).unwrap().rules(), vec!["(a)"]);
    }

    fn lambda2_identity_strict(dd: &Matrix) -> (TwoTermShLeibniz, HomotopyDerivation) {
        let c = lambda2().constants().to_vec();
        let s = TwoTermShLeibniz::new(
            Matrix::identity(2),
            Multilinear::new(vec![2, 2], 2, c.clone()).unwrap(),
            Multilinear::new(vec![2, 2], 2, c.clone()).unwrap(),
            Multilinear::new(vec![2, 2], 2, c).unwrap(),
            Multilinear::zeros(vec![2, 2, 2], 2),
        )
        .unwrap();
        let th =
            HomotopyDerivation { theta0: dd.clone(), theta1: dd.clone(), theta2: Multilinear::zeros(vec![2, 2], 2) };
        (s, th)
    }

    #[test]
    fn strict_crossed_round_trip() {
        for dd in derivations(&lambda2()) {
            let (s, th) = lambda2_identity_strict(&dd);
            assert!(check_sh(&s).passed());
            let c = strict_to_crossed(&s, &th).unwrap();
            assert_eq!(c.dt, Matrix::identity(2));
            assert_eq!(c.g.algebra, lambda2());
            assert_eq!(crossed_to_strict(&c).unwrap(), (s, th));
        }
        let z = TwoTermShLeibniz::zero(1, 1);
        let c = strict_to_crossed(&z, &HomotopyDerivation::zero(1, 1)).unwrap();
        assert!(c.g.algebra.constants().iter().all(Zero::is_zero));
        assert_eq!(crossed_to_strict(&c).unwrap().0, z);
    }

    #[test]
    fn skeletal_triple_round_trip_over_lambda2() {
        let pair = LeibDerPair::zero(lambda2());
        let rep = LeibDerRepresentation::trivial(&pair.algebra, Matrix::zeros(1, 1)).unwrap();
        let z = cohomology(&pair, &rep, 3).unwrap();
        assert!(!z.cocycles.is_empty());
        for c in z.cocycles {
            let t = Triple { pair: pair.clone(), rep: rep.clone(), cocycle: c };
            let (s, th) = triple_to_skeletal(&t).unwrap();
            assert!(check_sh(&s).passed());
            assert!(check_homotopy_derivation(&s, &th).unwrap().passed());
            assert_eq!(skeletal_to_triple(&s, &th).unwrap(), t);
        }
        let zero = TwoTermShLeibniz::zero(1, 1);
        let t = skeletal_to_triple(&zero, &HomotopyDerivation::zero(1, 1)).unwrap();
        assert!(t.cocycle.is_zero());
        assert!(skeletal_to_triple(&sh(1, 1, &[(0, 0)], &[], &[], &[], &[]), &HomotopyDerivation::zero(1, 1)).is_err());
    }

    #[test]
    fn identity_eight_is_the_cocycle_equation() {
        // Skeletal with the trivial 1-dim module over lambda2: identity 8 holds iff dL l3 = 0.
        let pair = LeibDerPair::zero(lambda2());
        let rep = Representation::trivial(pair.algebra.clone(), 1);
        for (k, _) in (0..8).enumerate() {
            let l3 = Cochain::new(3, 2, 1, unit_vec(8, k)).unwrap();
            let s = TwoTermShLeibniz::new(
                Matrix::zeros(2, 1),
                Multilinear::new(vec![2, 2], 2, pair.algebra.constants().to_vec()).unwrap(),
                Multilinear::zeros(vec![2, 1], 1),
                Multilinear::zeros(vec![1, 2], 1),
                Multilinear::new(vec![2, 2, 2], 1, l3.values().to_vec()).unwrap(),
            )
            .unwrap();
            let cocycle = delta_l(&rep, &l3).unwrap().is_zero();
            assert_eq!(check_sh(&s).passed(), cocycle, "basis 3-cochain {k}");
        }
    }

    /// Skeletal over lambda2 with a nonzero derivation, trivial coefficients
    /// and the sum of the echelon 3-cocycles.
    fn skeletal_instance() -> (TwoTermShLeibniz, HomotopyDerivation) {
        let a = lambda2();
        let pair =
            LeibDerPair::new(a.clone(), derivations(&a).iter().fold(Matrix::zeros(2, 2), |acc, m| &acc + m)).unwrap();
        let rep = LeibDerRepresentation::trivial(&a, Matrix::from_i64(&[&[3]])).unwrap();
        let z = cohomology(&pair, &rep, 3).unwrap();
        let cocycle = z.cocycles.iter().fold(LeibDerCochain::zero(3, 2, 1), |acc, c| acc.add(c).unwrap());
        assert!(!cocycle.shadow.as_ref().unwrap().is_zero());
        triple_to_skeletal(&Triple { pair, rep, cocycle }).unwrap()
    }

    #[test]
    fn morphisms_and_gauges() {
        let (s, th) = skeletal_instance();
        let id = ShMorphism::identity(&s, true);
        assert!(check_sh_morphism(&s, &s, &id, Some((&th, &th))).unwrap().passed());
        let f2 = ml(vec![2, 2], 1, &[(&[0, 1], 0, 1), (&[1, 1], 0, -2)]);
        let (s2, th2, f) = gauge_by_f2(&s, &th, &f2).unwrap();
        assert_ne!((&s2, &th2), (&s, &th));
        assert!(check_sh(&s2).passed());
        assert!(check_homotopy_derivation(&s2, &th2).unwrap().passed());
        assert!(check_sh_morphism(&s, &s2, &f, Some((&th, &th2))).unwrap().passed());
        let b = Matrix::from_i64(&[&[1, -1]]);
        let (th3, g) = gauge_by_b(&s2, &th2, &b).unwrap();
        assert!(check_homotopy_derivation(&s2, &th3).unwrap().passed());
        assert!(check_sh_morphism(&s2, &s2, &g, Some((&th2, &th3))).unwrap().passed());
        let comp = g.after(&f).unwrap();
        assert!(check_sh_morphism(&s, &s2, &comp, Some((&th, &th3))).unwrap().passed());
        assert_eq!(id.after(&id).unwrap(), id);
        assert_eq!(comp.after(&id).unwrap(), comp);

        // Structure-level gauge with d = id.
        let dd = &derivations(&lambda2())[0];
        let (s, th) = lambda2_identity_strict(dd);
        let f2 = ml(vec![2, 2], 2, &[(&[0, 1], 0, 1), (&[1, 1], 1, -2)]);
        let (s2, _, f) = gauge_by_f2(&s, &th, &f2).unwrap();
        assert!(!s2.is_strict());
        assert!(check_sh(&s2).passed());
        let plain = ShMorphism { b: None, ..f };
        assert!(check_sh_morphism(&s, &s2, &plain, None).unwrap().passed());

        // A perturbed f2 on a strict structure breaks M1.
        let mut bad = ShMorphism::identity(&s, false);
        bad.f2 = f2;
        assert!(check_sh_morphism(&s, &s, &bad, None).unwrap().violates("M1"));
    }

    #[test]
    fn gauges_with_invertible_d() {
        let dd = &derivations(&lambda2())[0];
        let (s, th) = lambda2_identity_strict(dd);
        let f2 = ml(vec![2, 2], 2, &[(&[0, 1], 0, 1), (&[1, 1], 1, -2)]);
        let (s2, th2, f) = gauge_by_f2(&s, &th, &f2).unwrap();
        assert!(!s2.is_strict());
        assert!(check_homotopy_derivation(&s2, &th2).unwrap().passed());
        let (th3, g) = gauge_by_b(&s2, &th2, &Matrix::from_i64(&[&[0, 1], &[2, -1]])).unwrap();
        assert!(check_homotopy_derivation(&s2, &th3).unwrap().passed());
        let comp = g.after(&f).unwrap();
        assert!(check_sh_morphism(&s, &s2, &comp, Some((&th, &th3))).unwrap().passed());
        // Item (d) alone pins the sign of theta2 once d is invertible.
        let flipped =
            HomotopyDerivation { theta2: Multilinear::from_fn(vec![2, 2], 2, |t| neg(th2.theta2.at(t))), ..th2 };
        assert!(!check_homotopy_derivation(&s2, &flipped).unwrap().passed());
        for t in box_tuples(&[2, 2, 2]) {
            let (lhs, rhs) = item_d_sides(&s2, &th3, &t);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn two_vector_round_trip() {
        let z = TwoTermShLeibniz::zero(1, 2);
        let v = to_two_vector(&z).unwrap();
        assert_eq!(v.source, v.target);
        assert_eq!(from_two_vector(&v).unwrap(), z);

        let dd = &derivations(&lambda2())[1];
        let (s, th) = lambda2_identity_strict(dd);
        let f2 = ml(vec![2, 2], 2, &[(&[1, 1], 0, 1), (&[0, 1], 1, 1)]);
        let (g, _, _) = gauge_by_f2(&s, &th, &f2).unwrap();
        assert!(!g.is_strict());
        let v = to_two_vector(&g).unwrap();
        for k in 0..4 {
            let e = unit_vec(4, k);
            let diff = sub_vec(&v.target.mul_vec(&e), &v.source.mul_vec(&e));
            assert_eq!(diff, g.d.mul_vec(&e[2..]));
        }
        assert_eq!(from_two_vector(&v).unwrap(), g);

        for (s, th) in [lambda2_identity_strict(dd), skeletal_instance()] {
            let v = to_two_vector(&s).unwrap();
            let dv = to_two_derivation(&s, &th).unwrap();
            assert_eq!(from_two_derivation(&v, &dv).unwrap(), th);
        }

        let mut broken = v.clone();
        broken.source = broken.target.clone();
        assert!(from_two_vector(&broken).is_err());
    }

    mod props {
        use super::*;
        use crate::corpus::{
            random_cochain, random_crossed, random_multilinear, random_pair, random_representation, random_skeletal,
        };
        use proptest::prelude::*;
        use rand::rngs::StdRng;
        use rand::SeedableRng;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn identity_eight_matches_delta_l(seed in any::<u64>()) {
                let mut rng = StdRng::seed_from_u64(seed);
                let p = random_pair(&mut rng, 2);
                let r = random_representation(&mut rng, &p, 2);
                let (n0, n1) = (p.dim(), r.mdim());
                let l3 = random_cochain(&mut rng, 3, n0, n1);
                let s = TwoTermShLeibniz::new(
                    Matrix::zeros(n0, n1),
                    Multilinear::new(vec![n0, n0], n0, p.algebra.constants().to_vec()).unwrap(),
                    Multilinear::new(vec![n0, n1], n1, r.rep.left_data().to_vec()).unwrap(),
                    Multilinear::new(vec![n1, n0], n1, r.rep.right_data().to_vec()).unwrap(),
                    Multilinear::new(vec![n0, n0, n0], n1, l3.values().to_vec()).unwrap(),
                ).unwrap();
                let report = check_sh(&s);
                prop_assert!(report.rules().iter().all(|r| *r == "identity 8"));
                prop_assert_eq!(report.passed(), delta_l(&r.rep, &l3).unwrap().is_zero());
            }

            #[test]
            fn skeletal_round_trips(seed in any::<u64>()) {
                let mut rng = StdRng::seed_from_u64(seed);
                let (s, th) = random_skeletal(&mut rng);
                prop_assert!(check_sh(&s).passed());
                let t = skeletal_to_triple(&s, &th).unwrap();
                prop_assert_eq!(triple_to_skeletal(&t).unwrap(), (s, th));
            }

            #[test]
            fn crossed_round_trips(seed in any::<u64>()) {
                let mut rng = StdRng::seed_from_u64(seed);
                let c = random_crossed(&mut rng);
                let (s, th) = crossed_to_strict(&c).unwrap();
                for a in 0..s.n1 {
                    for b in 0..s.n1 {
                        prop_assert_eq!(s.b01(&s.dm(&s.e1(a)), &s.e1(b)), s.b10(&s.e1(a), &s.dm(&s.e1(b))));
                    }
                }
                prop_assert_eq!(strict_to_crossed(&s, &th).unwrap(), c);
            }

            #[test]
            fn two_vector_transport(seed in any::<u64>()) {
                let mut rng = StdRng::seed_from_u64(seed);
                let (s, th) = if seed % 2 == 0 {
                    random_skeletal(&mut rng)
                } else {
                    let (s, th) = crossed_to_strict(&random_crossed(&mut rng)).unwrap();
                    let (n0, n1) = s.dims();
                    let (s, th, _) = gauge_by_f2(&s, &th, &random_multilinear(&mut rng, vec![n0, n0], n1)).unwrap();
                    let (th, _) = gauge_by_b(&s, &th, &crate::corpus::random_matrix(&mut rng, n1, n0)).unwrap();
                    (s, th)
                };
                let v = to_two_vector(&s).unwrap();
                prop_assert_eq!(&from_two_vector(&v).unwrap(), &s);
                let back = from_two_derivation(&v, &to_two_derivation(&s, &th).unwrap()).unwrap();
                prop_assert!(check_homotopy_derivation(&s, &back).unwrap().passed());
                prop_assert_eq!(back, th);
            }
        }
    }
}
