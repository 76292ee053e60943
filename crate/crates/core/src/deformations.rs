//! Formal deformations of LeibDer pairs truncated at `t^{N+1}`.

use num_traits::Zero;

use crate::cohomology::{gbracket, partial, solve_coboundary, Cochain, LeibDerCochain};
use crate::error::{Error, Report, Result};
use crate::exactlin::{add_vec, frac, sub_vec, unit_vec, zero_vec, Matrix, Scalar, Vector};
use crate::leibniz::{LeibDerPair, LeibDerRepresentation};
use crate::tensor::tuples;

/// `mu[n]` and `phi[n]` are the coefficients of `t^n`, `n = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    base: LeibDerPair,
    mu: Vec<Cochain>,
    phi: Vec<Matrix>,
}

impl Deformation {
    pub fn new(base: LeibDerPair, mu: Vec<Cochain>, phi: Vec<Matrix>) -> Result<Self> {
        let d = base.dim();
        if mu.is_empty() || mu.len() != phi.len() {
            return Err(Error::Invalid("mu and phi need the same nonzero number of orders".into()));
        }
        for (n, (m, p)) in mu.iter().zip(&phi).enumerate() {
            if m.degree() != 2 || m.gdim() != d || m.mdim() != d {
                return Err(Error::Dimension(format!("mu[{n}] must be a bilinear map on a {d}-dimensional space")));
            }
            if p.rows() != d || p.cols() != d {
                return Err(Error::Dimension(format!("phi[{n}] must be {d}x{d}")));
            }
        }
        if mu[0] != Cochain::from_algebra(&base.algebra) {
            return Err(Error::Invalid("mu[0] differs from the base bracket".into()));
        }
        if phi[0] != base.phi {
            return Err(Error::Invalid("phi[0] differs from the base derivation".into()));
        }
        Ok(Deformation { base, mu, phi })
    }

    pub fn constant(base: LeibDerPair, order: usize) -> Self {
        let d = base.dim();
        let mut mu = vec![Cochain::from_algebra(&base.algebra)];
        let mut phi = vec![base.phi.clone()];
        for _ in 0..order {
            mu.push(Cochain::zero(2, d, d));
            phi.push(Matrix::zeros(d, d));
        }
        Deformation { base, mu, phi }
    }

    pub fn base(&self) -> &LeibDerPair {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.mu.len() - 1
    }

    pub fn mu(&self) -> &[Cochain] {
        &self.mu
    }

    pub fn phi(&self) -> &[Matrix] {
        &self.phi
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn term(&self, n: usize) -> Result<LeibDerCochain> {
        LeibDerCochain::new(self.mu[n].clone(), Some(Cochain::from_linear_map(&self.phi[n])))
    }

    /// Drops the orders above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let k = (order + 1).min(self.mu.len());
        Deformation { base: self.base.clone(), mu: self.mu[..k].to_vec(), phi: self.phi[..k].to_vec() }
    }

    pub fn is_constant(&self) -> bool {
        self.mu[1..].iter().all(Cochain::is_zero) && self.phi[1..].iter().all(Matrix::is_zero)
    }

    /// First order `n >= 1` with `(mu_n, phi_n) != 0`.
    pub fn leading_order(&self) -> Option<usize> {
        (1..=self.order()).find(|&n| !self.mu[n].is_zero() || !self.phi[n].is_zero())
    }

    fn adjoint(&self) -> LeibDerRepresentation {
        LeibDerRepresentation::adjoint(&self.base)
    }
}

/// Order-`n` defects of the bracket and derivation equations, as a
/// trilinear and a bilinear map.
fn order_defects(mu: &[Cochain], phi: &[Matrix], n: usize) -> (Cochain, Cochain) {
    let d = mu[0].gdim();
    let bracket = Cochain::from_fn(3, d, d, |t| {
        let (x, y, z) = (unit_vec(d, t[0]), unit_vec(d, t[1]), unit_vec(d, t[2]));
        let mut acc = zero_vec(d);
        for i in 0..=n {
            let (mi, mj) = (&mu[i], &mu[n - i]);
            let l = mi.eval(&[&mj.eval(&[&x, &y]), &z]);
            let r1 = mi.eval(&[&mj.eval(&[&x, &z]), &y]);
            let r2 = mi.eval(&[&x, &mj.eval(&[&y, &z])]);
            acc = sub_vec(&sub_vec(&add_vec(&acc, &l), &r1), &r2);
        }
        acc
    });
    let derivation = Cochain::from_fn(2, d, d, |t| {
        let (x, y) = (unit_vec(d, t[0]), unit_vec(d, t[1]));
        let mut acc = zero_vec(d);
        for i in 0..=n {
            let (pi, mj) = (&phi[i], &mu[n - i]);
            let (mi, pj) = (&mu[i], &phi[n - i]);
            let l = pi.mul_vec(&mj.eval(&[&x, &y]));
            let r1 = mi.eval(&[&pj.mul_vec(&x), &y]);
            let r2 = mi.eval(&[&x, &pj.mul_vec(&y)]);
            acc = sub_vec(&sub_vec(&add_vec(&acc, &l), &r1), &r2);
        }
        acc
    });
    (bracket, derivation)
}

fn first_nonzero(c: &Cochain) -> Option<Vec<usize>> {
    tuples(c.gdim(), c.degree()).find(|t| c.at(t).iter().any(|x| !x.is_zero()))
}

fn order_rules(n: usize) -> (String, String) {
    (format!("order {n} bracket"), format!("order {n} derivation"))
}

/// Elementwise check of both equation families, orders `0..=N`.
pub fn check_deformation(def: &Deformation) -> Report {
    let mut report = Report::new();
    for n in 0..=def.order() {
        let (b, p) = order_defects(&def.mu, &def.phi, n);
        let (rb, rp) = order_rules(n);
        if let Some(t) = first_nonzero(&b) {
            report.record(&rb, &t);
        }
        if let Some(t) = first_nonzero(&p) {
            report.record(&rp, &t);
        }
    }
    report
}

/// The same equations written with the graded bracket:
/// `[[mu, mu_n]] = -1/2 sum [[mu_i, mu_j]]` and
/// `-[[phi, mu_n]] + [[mu, phi_n]] = sum [[phi_i, mu_j]]` over `i + j = n`, `i, j > 0`.
pub fn check_deformation_brackets(def: &Deformation) -> Result<Report> {
    let mut report = Report::new();
    let phis: Vec<Cochain> = def.phi.iter().map(Cochain::from_linear_map).collect();
    let (mu0, phi0) = (&def.mu[0], &phis[0]);
    for n in 0..=def.order() {
        let (rb, rp) = order_rules(n);
        let (lb, lp) = if n == 0 {
            (gbracket(mu0, mu0)?, gbracket(phi0, mu0)?)
        } else {
            let mut lb = gbracket(mu0, &def.mu[n])?;
            let mut lp = gbracket(mu0, &phis[n])?.sub(&gbracket(phi0, &def.mu[n])?)?;
            for i in 1..n {
                lb = lb.add(&gbracket(&def.mu[i], &def.mu[n - i])?.scale(&frac(1, 2)))?;
                lp = lp.sub(&gbracket(&phis[i], &def.mu[n - i])?)?;
            }
            (lb, lp)
        };
        if let Some(t) = first_nonzero(&lb) {
            report.record(&rb, &t);
        }
        if let Some(t) = first_nonzero(&lp) {
            report.record(&rp, &t);
        }
    }
    Ok(report)
}

fn require_valid(def: &Deformation) -> Result<()> {
    check_deformation(def).into_result("deformation")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infinitesimal {
    pub order: usize,
    pub term: LeibDerCochain,
    pub cocycle: bool,
}

/// `(mu_1, phi_1)` and whether it is a 2-cocycle.
pub fn infinitesimal(def: &Deformation) -> Result<Infinitesimal> {
    require_valid(def)?;
    if def.order() < 1 {
        return Err(Error::Invalid("infinitesimal needs a deformation of order at least 1".into()));
    }
    leading(def, 1)
}

/// The first nonzero term `(mu_n, phi_n)` (order 1 for constant deformations).
pub fn leading_term(def: &Deformation) -> Result<Infinitesimal> {
    require_valid(def)?;
    if def.order() < 1 {
        return Err(Error::Invalid("leading term needs a deformation of order at least 1".into()));
    }
    leading(def, def.leading_order().unwrap_or(1))
}

fn leading(def: &Deformation, n: usize) -> Result<Infinitesimal> {
    let term = def.term(n)?;
    let cocycle = partial(&def.base, &def.adjoint(), &term)?.is_zero();
    Ok(Infinitesimal { order: n, term, cocycle })
}

/// `psi_t = sum t^n psi_n` with `psi_0 = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalIsomorphism {
    psi: Vec<Matrix>,
}

impl FormalIsomorphism {
    pub fn new(psi: Vec<Matrix>) -> Result<Self> {
        let Some(first) = psi.first() else {
            return Err(Error::Invalid("formal isomorphism needs psi_0".into()));
        };
        if !first.is_square() || *first != Matrix::identity(first.rows()) {
            return Err(Error::Invalid("psi_0 must be the identity".into()));
        }
        if psi.iter().any(|m| m.rows() != first.rows() || m.cols() != first.rows()) {
            return Err(Error::Dimension("all psi_n must be square of the same size".into()));
        }
        Ok(FormalIsomorphism { psi })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        let mut psi = vec![Matrix::identity(dim)];
        psi.extend((0..order).map(|_| Matrix::zeros(dim, dim)));
        FormalIsomorphism { psi }
    }

    /// `id + t^n u`, truncated at `order`.
    pub fn elementary(u: &Matrix, n: usize, order: usize) -> Self {
        let mut f = Self::identity(u.rows(), order);
        if n <= order {
            f.psi[n] = u.clone();
        }
        f
    }

    pub fn order(&self) -> usize {
        self.psi.len() - 1
    }

    pub fn coefficients(&self) -> &[Matrix] {
        &self.psi
    }

    /// `chi_0 = id`, `chi_n = -sum_{k=1..n} psi_k chi_{n-k}`.
    pub fn inverse(&self) -> Self {
        let mut chi = vec![self.psi[0].clone()];
        for n in 1..self.psi.len() {
            let mut acc = Matrix::zeros(self.psi[0].rows(), self.psi[0].rows());
            for k in 1..=n {
                acc = &acc - &(&self.psi[k] * &chi[n - k]);
            }
            chi.push(acc);
        }
        FormalIsomorphism { psi: chi }
    }

    /// `(self . other)_n = sum_{a+b=n} self_a other_b`.
    pub fn compose(&self, other: &FormalIsomorphism) -> Result<Self> {
        if self.psi.len() != other.psi.len() || self.psi[0].rows() != other.psi[0].rows() {
            return Err(Error::Dimension("formal isomorphisms of different shape".into()));
        }
        let n = self.psi.len();
        let dim = self.psi[0].rows();
        let psi = (0..n)
            .map(|k| (0..=k).fold(Matrix::zeros(dim, dim), |acc, a| &acc + &(&self.psi[a] * &other.psi[k - a])))
            .collect();
        Ok(FormalIsomorphism { psi })
    }
}

/// `(x, y) -> m(a x, b y)`.
fn precompose(m: &Cochain, a: &Matrix, b: &Matrix) -> Cochain {
    let d = m.gdim();
    Cochain::from_fn(2, d, m.mdim(), |t| m.eval(&[&a.column(t[0]), &b.column(t[1])]))
}

fn postcompose(p: &Matrix, m: &Cochain) -> Cochain {
    Cochain::from_fn(m.degree(), m.gdim(), p.rows(), |t| p.mul_vec(m.at(t)))
}

/// `mu' = psi . mu . (chi x chi)` and `phi' = psi . phi . chi` with `chi = psi^-1`.
pub fn apply_equivalence(def: &Deformation, iso: &FormalIsomorphism) -> Result<Deformation> {
    let n = def.order();
    let d = def.dim();
    if iso.order() != n || iso.psi[0].rows() != d {
        return Err(Error::Dimension("formal isomorphism does not match the deformation".into()));
    }
    let chi = iso.inverse();
    let mut mu = Vec::with_capacity(n + 1);
    let mut phi = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut m = Cochain::zero(2, d, d);
        let mut p = Matrix::zeros(d, d);
        for a in 0..=k {
            for b in 0..=k - a {
                let inner_phi = &def.phi[b] * &chi.psi[k - a - b];
                p = &p + &(&iso.psi[a] * &inner_phi);
                for c in 0..=k - a - b {
                    let e = k - a - b - c;
                    let inner = precompose(&def.mu[b], &chi.psi[c], &chi.psi[e]);
                    m = m.add(&postcompose(&iso.psi[a], &inner))?;
                }
            }
        }
        mu.push(m);
        phi.push(p);
    }
    let base = LeibDerPair::new(mu[0].to_algebra()?, phi[0].clone())?;
    Deformation::new(base, mu, phi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrivializeStep {
    AlreadyConstant,
    /// `psi = id + t^order u` kills every order up to `order`.
    Step {
        order: usize,
        iso: FormalIsomorphism,
        result: Deformation,
    },
    /// The leading term is a cocycle with nonzero class.
    Obstructed {
        order: usize,
        class: LeibDerCochain,
    },
}

/// Solves `du = (mu_n, phi_n)` for the leading order `n` and conjugates by
/// `id + t^n u`, which removes that order.
pub fn trivialize_step(def: &Deformation) -> Result<TrivializeStep> {
    require_valid(def)?;
    let Some(n) = def.leading_order() else {
        return Ok(TrivializeStep::AlreadyConstant);
    };
    let term = def.term(n)?;
    match solve_coboundary(&def.base, &def.adjoint(), &term)? {
        None => Ok(TrivializeStep::Obstructed { order: n, class: term }),
        Some(u) => {
            let iso = FormalIsomorphism::elementary(&u.top.to_linear_map()?, n, def.order());
            let result = apply_equivalence(def, &iso)?;
            debug_assert!(result.mu[n].is_zero() && result.phi[n].is_zero());
            Ok(TrivializeStep::Step { order: n, iso, result })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivialization {
    /// Composite of the steps taken, mapping the input to `result`.
    pub iso: FormalIsomorphism,
    pub result: Deformation,
    pub obstructed_at: Option<usize>,
}

/// Iterates `trivialize_step` until the deformation is constant or obstructed.
pub fn trivialize(def: &Deformation) -> Result<Trivialization> {
    let mut iso = FormalIsomorphism::identity(def.dim(), def.order());
    let mut cur = def.clone();
    loop {
        match trivialize_step(&cur)? {
            TrivializeStep::AlreadyConstant => return Ok(Trivialization { iso, result: cur, obstructed_at: None }),
            TrivializeStep::Obstructed { order, .. } => {
                return Ok(Trivialization { iso, result: cur, obstructed_at: Some(order) })
            }
            TrivializeStep::Step { iso: step, result, .. } => {
                iso = step.compose(&iso)?;
                cur = result;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionCocycle {
    /// `(Ob3, Ob2)` as a LeibDer 3-cochain.
    pub ob: LeibDerCochain,
    pub cocycle: bool,
}

/// `Ob3 = 1/2 sum [[mu_i, mu_j]]`, `Ob2 = sum [[phi_i, mu_j]]` over
/// `i + j = N + 1`, `i, j > 0`.
pub fn obstruction(def: &Deformation) -> Result<ObstructionCocycle> {
    require_valid(def)?;
    let (n, d) = (def.order() + 1, def.dim());
    let mut ob3 = Cochain::zero(3, d, d);
    let mut ob2 = Cochain::zero(2, d, d);
    for i in 1..n {
        ob3 = ob3.add(&gbracket(&def.mu[i], &def.mu[n - i])?.scale(&frac(1, 2)))?;
        ob2 = ob2.add(&gbracket(&Cochain::from_linear_map(&def.phi[i]), &def.mu[n - i])?)?;
    }
    let ob = LeibDerCochain::new(ob3, Some(ob2))?;
    let cocycle = partial(&def.base, &def.adjoint(), &ob)?.is_zero();
    Ok(ObstructionCocycle { ob, cocycle })
}

fn with_next(def: &Deformation, mu: Cochain, phi: Matrix) -> Result<Deformation> {
    let mut mus = def.mu.clone();
    let mut phis = def.phi.clone();
    mus.push(mu);
    phis.push(phi);
    Deformation::new(def.base.clone(), mus, phis)
}

/// Solves `d(mu_{N+1}, phi_{N+1}) = (Ob3, Ob2)`.
pub fn extend_deformation(def: &Deformation) -> Result<Option<Deformation>> {
    let ob = obstruction(def)?;
    if !ob.cocycle {
        return Err(Error::Invalid("obstruction is not a cocycle".into()));
    }
    let Some(next) = solve_coboundary(&def.base, &def.adjoint(), &ob.ob)? else {
        return Ok(None);
    };
    let phi = next.shadow.as_ref().expect("degree 2").to_linear_map()?;
    let out = with_next(def, next.top, phi)?;
    check_deformation(&out).into_result("extended deformation")?;
    Ok(Some(out))
}

/// Second route: the order-`N+1` equations are affine in
/// `(mu_{N+1}, phi_{N+1})`; solve that system directly.
pub fn extend_by_linear_system(def: &Deformation) -> Result<Option<Deformation>> {
    require_valid(def)?;
    let d = def.dim();
    let n = def.order() + 1;
    let (nm, np) = (d * d * d, d * d);
    let residual = |v: &[Scalar]| -> Result<Vector> {
        let mu = Cochain::new(2, d, d, v[..nm].to_vec())?;
        let phi = Matrix::from_vec(d, d, v[nm..].to_vec())?;
        let mut mus = def.mu.clone();
        let mut phis = def.phi.clone();
        mus.push(mu);
        phis.push(phi);
        let (b, p) = order_defects(&mus, &phis, n);
        let mut out = b.into_values();
        out.extend(p.into_values());
        Ok(out)
    };
    let r0 = residual(&zero_vec(nm + np))?;
    let cols = (0..nm + np).map(|k| Ok(sub_vec(&residual(&unit_vec(nm + np, k))?, &r0))).collect::<Result<Vec<_>>>()?;
    let a = Matrix::from_columns(r0.len(), &cols)?;
    let rhs: Vector = r0.iter().map(|x| -x).collect();
    let Some(sol) = a.solve(&rhs)? else {
        return Ok(None);
    };
    let out = with_next(def, Cochain::new(2, d, d, sol[..nm].to_vec())?, Matrix::from_vec(d, d, sol[nm..].to_vec())?)?;
    check_deformation(&out).into_result("extended deformation")?;
    Ok(Some(out))
}
