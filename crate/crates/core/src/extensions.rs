//! Central and abelian extensions of LeibDer pairs, their cocycles and
//! equivalences, and the obstruction to extending a pair of derivations.

use num_traits::Zero;

use crate::cohomology::{
    delta_l, delta_phi, partial, solve_coboundary, solve_leibniz_coboundary, Cochain, LeibDerCochain,
};
use crate::error::{Error, Report, Result};
use crate::exactlin::{sub_vec, unit_vec, Matrix, Scalar, Vector};
use crate::leibniz::{
    check_derivation, check_leibder_representation, check_leibniz, require_same_base, LeibDerPair,
    LeibDerRepresentation, LeibnizAlgebra, Representation,
};

/// `0 -> M --i--> h --p--> g -> 0`, optionally with a section `s` of `p`.
/// `phi_h` is absent for extensions of plain Leibniz algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDiagram {
    pub h: LeibnizAlgebra,
    pub phi_h: Option<Matrix>,
    pub i: Matrix,
    pub p: Matrix,
    pub s: Option<Matrix>,
}

impl ExtensionDiagram {
    pub fn pair(&self) -> Result<LeibDerPair> {
        let phi = self.phi_h.clone().ok_or_else(|| Error::Invalid("extension has no derivation on h".into()))?;
        LeibDerPair::new(self.h.clone(), phi)
    }

    pub fn fiber_dim(&self) -> usize {
        self.i.cols()
    }

    /// The same extension in the basis `f_j = sum_k q[k][j] e_k` of `h`.
    pub fn change_basis(&self, q: &Matrix) -> Result<Self> {
        let inv = q.inverse().ok_or_else(|| Error::Invalid("basis change is singular".into()))?;
        Ok(ExtensionDiagram {
            h: self.h.change_basis(q)?,
            phi_h: self.phi_h.as_ref().map(|m| &(&inv * m) * q),
            i: &inv * &self.i,
            p: &self.p * q,
            s: self.s.as_ref().map(|s| &inv * s),
        })
    }

    pub fn with_section(&self, s: Matrix) -> Self {
        ExtensionDiagram { s: Some(s), ..self.clone() }
    }
}

/// Left inverse of an injective map, refusing vectors outside its image.
struct Pullback<'a> {
    i: &'a Matrix,
    left: Matrix,
}

impl<'a> Pullback<'a> {
    fn new(i: &'a Matrix) -> Result<Self> {
        let it = i.transpose();
        let gram = (&it * i).inverse().ok_or_else(|| Error::Invalid("i is not injective".into()))?;
        Ok(Pullback { i, left: &gram * &it })
    }

    fn apply(&self, w: &[Scalar]) -> Result<Vector> {
        let v = self.left.mul_vec(w);
        if self.i.mul_vec(&v) != w {
            return Err(Error::Invalid("value does not lie in the image of i".into()));
        }
        Ok(v)
    }

    fn apply_matrix(&self, m: &Matrix) -> Result<Matrix> {
        let cols = (0..m.cols()).map(|j| self.apply(&m.column(j))).collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(self.i.cols(), &cols)
    }
}

/// Structural checks on a diagram over `base`. With `phi_g` the derivation
/// compatibility of `p` is checked too; `central` adds centrality.
pub fn check_diagram(
    e: &ExtensionDiagram,
    base: &LeibnizAlgebra,
    phi_g: Option<&Matrix>,
    central: bool,
) -> Result<Report> {
    let (n, d, m) = (e.h.dim(), base.dim(), e.fiber_dim());
    if e.i.rows() != n || e.p.rows() != d || e.p.cols() != n {
        return Err(Error::Dimension(format!(
            "diagram maps do not fit: h has dim {n}, g has dim {d}, i is {}x{}, p is {}x{}",
            e.i.rows(),
            e.i.cols(),
            e.p.rows(),
            e.p.cols()
        )));
    }
    if let Some(s) = &e.s {
        if s.rows() != n || s.cols() != d {
            return Err(Error::Dimension("section must be a map g -> h".into()));
        }
    }
    if let Some(phi) = &e.phi_h {
        if phi.rows() != n || phi.cols() != n {
            return Err(Error::Dimension("phi_h must be square of the dimension of h".into()));
        }
    }
    let mut report = Report::new();
    if !(&e.p * &e.i).is_zero() {
        report.record("p i = 0", &[]);
    }
    if e.i.rank() != m {
        report.record("i injective", &[]);
    }
    if e.p.rank() != d {
        report.record("p surjective", &[]);
    }
    if m + d != n {
        report.record("exact at h", &[]);
    }
    if let Some(s) = &e.s {
        if &e.p * s != Matrix::identity(d) {
            report.record("section", &[]);
        }
    }
    for u in 0..n {
        for v in 0..n {
            let pu = e.p.column(u);
            let pv = e.p.column(v);
            if e.p.mul_vec(e.h.basis_bracket(u, v)) != base.bracket(&pu, &pv) {
                report.record("p bracket", &[u, v]);
            }
        }
    }
    for a in 0..m {
        let ia = e.i.column(a);
        for u in 0..n {
            let hu = unit_vec(n, u);
            let left = e.h.bracket(&hu, &ia);
            let right = e.h.bracket(&ia, &hu);
            if central && !(left.iter().all(Zero::is_zero) && right.iter().all(Zero::is_zero)) {
                report.record("central", &[a, u]);
            }
        }
        for b in 0..m {
            if e.h.bracket(&ia, &e.i.column(b)).iter().any(|x| !x.is_zero()) {
                report.record("abelian kernel", &[a, b]);
            }
        }
    }
    if let (Some(phi_h), Some(phi_g)) = (&e.phi_h, phi_g) {
        if &e.p * phi_h != phi_g * &e.p {
            report.record("p phi", &[]);
        }
        let image = &e.i;
        let moved = phi_h * image;
        if image.hcat(&moved)?.rank() != image.rank() {
            report.record("phi_h preserves kernel", &[]);
        }
    }
    Ok(report)
}

/// Some section of `p`, preferring the one stored in the diagram.
pub fn section_of(e: &ExtensionDiagram) -> Result<Matrix> {
    if let Some(s) = &e.s {
        return Ok(s.clone());
    }
    let d = e.p.rows();
    let cols = (0..d)
        .map(|j| e.p.solve(&unit_vec(d, j))?.ok_or_else(|| Error::Invalid("p is not surjective".into())))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(e.p.cols(), &cols)
}

/// Cocycle, induced representation and section read off an extension.
#[derive(Clone, Debug)]
pub struct Extracted {
    pub cocycle: LeibDerCochain,
    pub rep: LeibDerRepresentation,
    pub section: Matrix,
}

/// `f = i^-1([sx, sy] - s[x, y])`, `f_bar = i^-1(phi_h s - s phi_g)`, actions
/// `[x, m] = i^-1[sx, im]`, `[m, x] = i^-1[im, sx]` and `phi_M = i^-1 phi_h i`.
pub fn extract(e: &ExtensionDiagram, base: &LeibDerPair, section: Option<&Matrix>) -> Result<Extracted> {
    let e = match section {
        Some(s) => e.with_section(s.clone()),
        None => e.clone(),
    };
    let phi_h = e.phi_h.clone().ok_or_else(|| Error::Invalid("extension has no derivation on h".into()))?;
    check_diagram(&e, &base.algebra, Some(&base.phi), false)?.into_result("extension diagram")?;
    let s = section_of(&e)?;
    let pull = Pullback::new(&e.i)?;
    let (d, m, n) = (base.dim(), e.fiber_dim(), e.h.dim());
    let g = &base.algebra;
    let mut values = Vec::with_capacity(d * d * m);
    for x in 0..d {
        for y in 0..d {
            let w = sub_vec(&e.h.bracket(&s.column(x), &s.column(y)), &s.mul_vec(g.basis_bracket(x, y)));
            values.extend(pull.apply(&w)?);
        }
    }
    let f = Cochain::new(2, d, m, values)?;
    let fbar = pull.apply_matrix(&(&(&phi_h * &s) - &(&s * &base.phi)))?;
    let mut left = Vec::with_capacity(d * m * m);
    for x in 0..d {
        for a in 0..m {
            left.extend(pull.apply(&e.h.bracket(&s.column(x), &e.i.column(a)))?);
        }
    }
    let mut right = Vec::with_capacity(d * m * m);
    for a in 0..m {
        for x in 0..d {
            right.extend(pull.apply(&e.h.bracket(&e.i.column(a), &s.column(x)))?);
        }
    }
    let phi_m = pull.apply_matrix(&(&phi_h * &e.i))?;
    let rep = LeibDerRepresentation::new(Representation::new(g.clone(), m, left, right)?, phi_m)?;
    debug_assert_eq!(n, d + m);
    Ok(Extracted { cocycle: LeibDerCochain::new(f, Some(Cochain::from_linear_map(&fbar)))?, rep, section: s })
}

/// Abelian extension data: a LeibDer representation and a 2-cochain `(f, f_bar)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianExtensionData {
    pub base: LeibDerPair,
    pub rep: LeibDerRepresentation,
    pub cocycle: LeibDerCochain,
}

/// Central extension data over the abelian pair `(K^k, phi_a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtensionData {
    pub base: LeibDerPair,
    pub phi_a: Matrix,
    pub psi: Cochain,
    pub chi: Cochain,
}

/// The trivial representation on `(K^k, phi_a)`.
pub fn trivial_coefficients(base: &LeibDerPair, phi_a: &Matrix) -> Result<LeibDerRepresentation> {
    LeibDerRepresentation::trivial(&base.algebra, phi_a.clone())
}

impl CentralExtensionData {
    pub fn cocycle(&self) -> Result<LeibDerCochain> {
        LeibDerCochain::new(self.psi.clone(), Some(self.chi.clone()))
    }

    pub fn as_abelian(&self) -> Result<AbelianExtensionData> {
        Ok(AbelianExtensionData {
            base: self.base.clone(),
            rep: trivial_coefficients(&self.base, &self.phi_a)?,
            cocycle: self.cocycle()?,
        })
    }
}

fn check_cocycle(p: &LeibDerPair, r: &LeibDerRepresentation, c: &LeibDerCochain) -> Result<Report> {
    if c.degree() != 2 {
        return Err(Error::Invalid("extension cocycles have degree 2".into()));
    }
    let dc = partial(p, r, c)?;
    let mut report = Report::new();
    if !dc.top.is_zero() {
        report.record("dL f = 0", &[]);
    }
    if !dc.shadow.as_ref().is_some_and(Cochain::is_zero) {
        report.record("dL f_bar + delta f = 0", &[]);
    }
    Ok(report)
}

/// `h = g + M` with `[(x,m),(y,n)] = ([x,y], [x,n] + [m,y] + f(x,y))` and
/// `phi_h(x,m) = (phi x, phi_M m + f_bar x)`; section `x -> (x, 0)`.
pub fn build_abelian_extension(data: &AbelianExtensionData) -> Result<ExtensionDiagram> {
    let (p, r, c) = (&data.base, &data.rep, &data.cocycle);
    require_same_base(p, r)?;
    if c.gdim() != p.dim() || c.mdim() != r.mdim() {
        return Err(Error::Dimension("cocycle does not match base and module".into()));
    }
    p.check().into_result("base pair")?;
    check_leibder_representation(p, r)?.into_result("representation")?;
    check_cocycle(p, r, c)?.into_result("cocycle")?;
    let (d, m) = (p.dim(), r.mdim());
    let n = d + m;
    let f = &c.top;
    let left = r.rep.left_data();
    let right = r.rep.right_data();
    let h = LeibnizAlgebra::from_fn(n, |i, j, k| match (i < d, j < d, k < d) {
        (true, true, true) => p.algebra.coef(i, j, k).clone(),
        (true, true, false) => f.at(&[i, j])[k - d].clone(),
        (true, false, false) => left[(i * m + (j - d)) * m + (k - d)].clone(),
        (false, true, false) => right[((i - d) * d + j) * m + (k - d)].clone(),
        _ => Scalar::zero(),
    });
    let fbar = c.shadow.as_ref().expect("degree 2").to_linear_map()?;
    let phi_h = Matrix::from_fn(n, n, |i, j| match (i < d, j < d) {
        (true, true) => p.phi[(i, j)].clone(),
        (false, true) => fbar[(i - d, j)].clone(),
        (false, false) => r.phi_m[(i - d, j - d)].clone(),
        (true, false) => Scalar::zero(),
    });
    let i = Matrix::from_fn(n, m, |k, a| if k == d + a { Scalar::from_integer(1.into()) } else { Scalar::zero() });
    let proj = Matrix::from_fn(d, n, |x, k| if k == x { Scalar::from_integer(1.into()) } else { Scalar::zero() });
    let s = proj.transpose();
    Ok(ExtensionDiagram { h, phi_h: Some(phi_h), i, p: proj, s: Some(s) })
}

pub fn build_central_extension(data: &CentralExtensionData) -> Result<ExtensionDiagram> {
    build_abelian_extension(&data.as_abelian()?)
}

fn require_central(e: &ExtensionDiagram, base: &LeibDerPair) -> Result<()> {
    check_diagram(e, &base.algebra, Some(&base.phi), true)?.into_result("central extension")
}

/// `(psi, chi)` read off a central extension through the section `s`.
pub fn cocycle_from_section(e: &ExtensionDiagram, base: &LeibDerPair, s: &Matrix) -> Result<LeibDerCochain> {
    let e = e.with_section(s.clone());
    require_central(&e, base)?;
    Ok(extract(&e, base, None)?.cocycle)
}

/// Verdict on a pair of extensions plus the witness `eta: h1 -> h2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub equivalent: bool,
    /// `v` with `c1 - c2 = dv`.
    pub primitive: Option<Cochain>,
    pub witness: Option<Matrix>,
}

fn compare(
    e1: &ExtensionDiagram,
    e2: &ExtensionDiagram,
    base: &LeibDerPair,
    rep: &LeibDerRepresentation,
) -> Result<Comparison> {
    let x1 = extract(e1, base, None)?;
    let x2 = extract(e2, base, None)?;
    for x in [&x1, &x2] {
        if &x.rep != rep {
            return Err(Error::Invalid("extension induces a different representation".into()));
        }
    }
    let diff = x1.cocycle.sub(&x2.cocycle)?;
    let Some(v) = solve_coboundary(base, rep, &diff)? else {
        return Ok(Comparison { equivalent: false, primitive: None, witness: None });
    };
    let eta = witness_map(e1, e2, &x1.section, &x2.section, &v.top)?;
    check_extension_map(&eta, e1, e2)?.into_result("extension equivalence witness")?;
    Ok(Comparison { equivalent: true, primitive: Some(v.top), witness: Some(eta) })
}

/// `eta(s1 x + i1 a) = s2 x + i2 (a + v x)`.
fn witness_map(e1: &ExtensionDiagram, e2: &ExtensionDiagram, s1: &Matrix, s2: &Matrix, v: &Cochain) -> Result<Matrix> {
    let v = v.to_linear_map()?;
    let d = s1.cols();
    let m = e1.fiber_dim();
    let frame1 = s1.hcat(&e1.i)?;
    let inv = frame1.inverse().ok_or_else(|| Error::Invalid("section and injection do not span h".into()))?;
    let shear = Matrix::identity(d).vcat(&v)?.hcat(&Matrix::zeros(d, m).vcat(&Matrix::identity(m))?)?;
    let frame2 = s2.hcat(&e2.i)?;
    Ok(&(&frame2 * &shear) * &inv)
}

/// `eta` is a LeibDer isomorphism with `eta i1 = i2` and `p2 eta = p1`.
pub fn check_extension_map(eta: &Matrix, e1: &ExtensionDiagram, e2: &ExtensionDiagram) -> Result<Report> {
    let n = e1.h.dim();
    if eta.rows() != e2.h.dim() || eta.cols() != n {
        return Err(Error::Dimension("witness must map h1 to h2".into()));
    }
    let mut report = Report::new();
    if eta.inverse().is_none() {
        report.record("invertible", &[]);
    }
    for u in 0..n {
        for v in 0..n {
            let lhs = eta.mul_vec(e1.h.basis_bracket(u, v));
            if lhs != e2.h.bracket(&eta.column(u), &eta.column(v)) {
                report.record("bracket", &[u, v]);
            }
        }
    }
    if let (Some(a), Some(b)) = (&e1.phi_h, &e2.phi_h) {
        if eta * a != b * eta {
            report.record("phi", &[]);
        }
    }
    if eta * &e1.i != e2.i {
        report.record("fixes fiber", &[]);
    }
    if &e2.p * eta != e1.p {
        report.record("over base", &[]);
    }
    Ok(report)
}

pub fn is_isomorphic_extension(
    e1: &ExtensionDiagram,
    e2: &ExtensionDiagram,
    base: &LeibDerPair,
    phi_a: &Matrix,
) -> Result<Comparison> {
    require_central(e1, base)?;
    require_central(e2, base)?;
    compare(e1, e2, base, &trivial_coefficients(base, phi_a)?)
}

pub fn is_equivalent_abelian(
    e1: &ExtensionDiagram,
    e2: &ExtensionDiagram,
    base: &LeibDerPair,
    rep: &LeibDerRepresentation,
) -> Result<Comparison> {
    compare(e1, e2, base, rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub cocycle: LeibDerCochain,
    /// `u` with `du = cocycle`; present exactly when the class is zero.
    pub primitive: Option<LeibDerCochain>,
}

pub fn classify_abelian_extension(
    e: &ExtensionDiagram,
    base: &LeibDerPair,
    rep: &LeibDerRepresentation,
) -> Result<Classification> {
    let x = extract(e, base, None)?;
    if &x.rep != rep {
        return Err(Error::Invalid("extension induces a different representation".into()));
    }
    check_cocycle(base, rep, &x.cocycle)?.into_result("extracted cocycle")?;
    let primitive = solve_coboundary(base, rep, &x.cocycle)?;
    Ok(Classification { cocycle: x.cocycle, primitive })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub ob: Cochain,
    /// `lambda` with `dL lambda = ob`; present exactly when the class vanishes.
    pub lambda: Option<Cochain>,
}

/// `Ob(x, y) = phi_a psi(x, y) - psi(phi_g x, y) - psi(x, phi_g y)` for a
/// central extension of plain Leibniz algebras.
pub fn obstruction_class(
    e: &ExtensionDiagram,
    base: &LeibnizAlgebra,
    phi_g: &Matrix,
    phi_a: &Matrix,
) -> Result<Obstruction> {
    check_derivation(base, phi_g)?.into_result("phi_g")?;
    let m = e.fiber_dim();
    if phi_a.rows() != m || phi_a.cols() != m {
        return Err(Error::Dimension("phi_a must act on the fiber".into()));
    }
    check_leibniz(&e.h).into_result("h")?;
    check_diagram(e, base, None, true)?.into_result("central extension")?;
    let plain = ExtensionDiagram { phi_h: None, ..e.clone() };
    let s = section_of(&plain)?;
    let pull = Pullback::new(&e.i)?;
    let d = base.dim();
    let mut values = Vec::with_capacity(d * d * m);
    for x in 0..d {
        for y in 0..d {
            let w = sub_vec(&e.h.bracket(&s.column(x), &s.column(y)), &s.mul_vec(base.basis_bracket(x, y)));
            values.extend(pull.apply(&w)?);
        }
    }
    let psi = Cochain::new(2, d, m, values)?;
    let pair = LeibDerPair::new(base.clone(), phi_g.clone())?;
    let rep = trivial_coefficients(&pair, phi_a)?;
    let ob = delta_phi(&pair, &rep, &psi)?.neg();
    if !delta_l(&rep.rep, &ob)?.is_zero() {
        return Err(Error::Invalid("obstruction is not a cocycle".into()));
    }
    let lambda = solve_leibniz_coboundary(&rep.rep, &ob)?;
    Ok(Obstruction { ob, lambda })
}

/// `phi_h(s x + i a) = s(phi_g x) + i(lambda x) + i(phi_a a)` when the
/// obstruction vanishes.
pub fn extend_derivation_pair(
    e: &ExtensionDiagram,
    base: &LeibnizAlgebra,
    phi_g: &Matrix,
    phi_a: &Matrix,
) -> Result<Option<Matrix>> {
    let ob = obstruction_class(e, base, phi_g, phi_a)?;
    let Some(lambda) = ob.lambda else {
        return Ok(None);
    };
    let plain = ExtensionDiagram { phi_h: None, ..e.clone() };
    let s = section_of(&plain)?;
    let lam = lambda.to_linear_map()?;
    let frame = s.hcat(&e.i)?;
    let inv = frame.inverse().ok_or_else(|| Error::Invalid("section and injection do not span h".into()))?;
    let images = (&(&s * phi_g) + &(&e.i * &lam)).hcat(&(&e.i * phi_a))?;
    let phi_h = &images * &inv;
    check_derivation(&e.h, &phi_h)?.into_result("extended derivation")?;
    let pair = LeibDerPair::new(base.clone(), phi_g.clone())?;
    let full = ExtensionDiagram { phi_h: Some(phi_h.clone()), ..e.clone() };
    check_diagram(&full, base, Some(&pair.phi), true)?.into_result("extended derivation")?;
    if &phi_h * &e.i != &e.i * phi_a {
        return Err(Error::Invalid("extended derivation does not restrict to phi_a".into()));
    }
    Ok(Some(phi_h))
}
