//! Cochains, the Leibniz coboundary, the LeibDer complex and the graded
//! brackets on cochains.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{add_vec, axpy, int, is_zero_vec, sub_vec, unit_vec, zero_vec, Matrix, Scalar, Vector};
use crate::leibniz::{require_same_base, LeibDerPair, LeibDerRepresentation, LeibnizAlgebra, Representation};
use crate::tensor::{eval, flat_index, tuples};

/// A multilinear map `g^n -> M`; `values[flat(tuple) * m + k]` is the `k`-th
/// coordinate of the value on the basis tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    gdim: usize,
    mdim: usize,
    values: Vec<Scalar>,
}

fn cochain_len(degree: usize, gdim: usize, mdim: usize) -> Result<usize> {
    gdim.checked_pow(degree as u32)
        .and_then(|n| n.checked_mul(mdim))
        .ok_or_else(|| Error::Invalid("cochain space too large".into()))
}

impl Cochain {
    pub fn new(degree: usize, gdim: usize, mdim: usize, values: Vec<Scalar>) -> Result<Self> {
        let need = cochain_len(degree, gdim, mdim)?;
        if values.len() != need {
            return Err(Error::Dimension(format!(
                "degree-{degree} cochain with dims ({gdim}, {mdim}) needs {need} values, got {}",
                values.len()
            )));
        }
        Ok(Cochain { degree, gdim, mdim, values })
    }

    pub fn zero(degree: usize, gdim: usize, mdim: usize) -> Self {
        let n = cochain_len(degree, gdim, mdim).expect("cochain size");
        Cochain { degree, gdim, mdim, values: zero_vec(n) }
    }

    pub fn from_fn(degree: usize, gdim: usize, mdim: usize, mut f: impl FnMut(&[usize]) -> Vector) -> Self {
        let mut values = Vec::new();
        for t in tuples(gdim, degree) {
            let v = f(&t);
            assert_eq!(v.len(), mdim, "cochain value length");
            values.extend(v);
        }
        if gdim == 0 && degree > 0 {
            values.clear();
        }
        Cochain { degree, gdim, mdim, values }
    }

    /// The bracket of `a` viewed as a 2-cochain with adjoint coefficients.
    pub fn from_algebra(a: &LeibnizAlgebra) -> Self {
        Cochain { degree: 2, gdim: a.dim(), mdim: a.dim(), values: a.constants().to_vec() }
    }

    /// A linear map `g -> M` given as an `m x d` matrix.
    pub fn from_linear_map(m: &Matrix) -> Self {
        Self::from_fn(1, m.cols(), m.rows(), |t| m.column(t[0]))
    }

    pub fn to_linear_map(&self) -> Result<Matrix> {
        if self.degree != 1 {
            return Err(Error::Invalid("only 1-cochains are linear maps".into()));
        }
        Ok(Matrix::from_fn(self.mdim, self.gdim, |k, i| self.values[i * self.mdim + k].clone()))
    }

    /// Reads a 2-cochain with `gdim == mdim` as structure constants.
    pub fn to_algebra(&self) -> Result<LeibnizAlgebra> {
        if self.degree != 2 || self.gdim != self.mdim {
            return Err(Error::Invalid("only adjoint 2-cochains are brackets".into()));
        }
        LeibnizAlgebra::new(self.gdim, self.values.clone())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gdim(&self) -> usize {
        self.gdim
    }

    pub fn mdim(&self) -> usize {
        self.mdim
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Scalar> {
        self.values
    }

    pub fn at(&self, tuple: &[usize]) -> &[Scalar] {
        let i = flat_index(&vec![self.gdim; self.degree], tuple);
        &self.values[i * self.mdim..(i + 1) * self.mdim]
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[&[Scalar]]) -> Vector {
        eval(&self.values, &vec![self.gdim; self.degree], self.mdim, args)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.values)
    }

    pub fn same_shape(&self, other: &Cochain) -> bool {
        (self.degree, self.gdim, self.mdim) == (other.degree, other.gdim, other.mdim)
    }

    fn require_shape(&self, other: &Cochain) -> Result<()> {
        if !self.same_shape(other) {
            return Err(Error::Dimension(format!(
                "cochain shapes differ: ({}, {}, {}) vs ({}, {}, {})",
                self.degree, self.gdim, self.mdim, other.degree, other.gdim, other.mdim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.require_shape(other)?;
        Ok(Cochain { values: add_vec(&self.values, &other.values), ..self.clone() })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.require_shape(other)?;
        Ok(Cochain { values: sub_vec(&self.values, &other.values), ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain { values: self.values.iter().map(|x| c * x).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-Scalar::one())
    }

    fn sign(&self, s: i64) -> Cochain {
        if s >= 0 {
            self.clone()
        } else {
            self.neg()
        }
    }
}

/// `(f, f_bar)` in `C^n(g, M) x C^{n-1}(g, M)`; the shadow is absent in degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeibDerCochain {
    pub top: Cochain,
    pub shadow: Option<Cochain>,
}

impl LeibDerCochain {
    pub fn new(top: Cochain, shadow: Option<Cochain>) -> Result<Self> {
        let n = top.degree;
        if n == 0 {
            return Err(Error::Invalid("LeibDer cochains start in degree 1".into()));
        }
        match (&shadow, n) {
            (None, 1) => {}
            (Some(_), 1) => return Err(Error::Invalid("degree-1 LeibDer cochains have no shadow".into())),
            (None, _) => return Err(Error::Invalid(format!("degree-{n} LeibDer cochain needs a shadow"))),
            (Some(s), _) => {
                if s.degree + 1 != n || s.gdim != top.gdim || s.mdim != top.mdim {
                    return Err(Error::Dimension("shadow must be a cochain of one degree lower".into()));
                }
            }
        }
        Ok(LeibDerCochain { top, shadow })
    }

    pub fn zero(degree: usize, gdim: usize, mdim: usize) -> Self {
        let shadow = (degree >= 2).then(|| Cochain::zero(degree - 1, gdim, mdim));
        LeibDerCochain { top: Cochain::zero(degree, gdim, mdim), shadow }
    }

    pub fn degree(&self) -> usize {
        self.top.degree
    }

    pub fn gdim(&self) -> usize {
        self.top.gdim
    }

    pub fn mdim(&self) -> usize {
        self.top.mdim
    }

    /// Dimension of `C^n_LeibDer`.
    pub fn space_dim(degree: usize, gdim: usize, mdim: usize) -> Result<usize> {
        if degree == 0 {
            return Ok(0);
        }
        let top = cochain_len(degree, gdim, mdim)?;
        let shadow = if degree >= 2 { cochain_len(degree - 1, gdim, mdim)? } else { 0 };
        top.checked_add(shadow).ok_or_else(|| Error::Invalid("cochain space too large".into()))
    }

    /// Top values followed by shadow values.
    pub fn flatten(&self) -> Vector {
        let mut v = self.top.values.clone();
        if let Some(s) = &self.shadow {
            v.extend_from_slice(&s.values);
        }
        v
    }

    pub fn from_flat(degree: usize, gdim: usize, mdim: usize, v: &[Scalar]) -> Result<Self> {
        let top_len = cochain_len(degree, gdim, mdim)?;
        if v.len() != Self::space_dim(degree, gdim, mdim)? {
            return Err(Error::Dimension("flat LeibDer cochain has the wrong length".into()));
        }
        let top = Cochain::new(degree, gdim, mdim, v[..top_len].to_vec())?;
        let shadow =
            if degree >= 2 { Some(Cochain::new(degree - 1, gdim, mdim, v[top_len..].to_vec())?) } else { None };
        Self::new(top, shadow)
    }

    pub fn is_zero(&self) -> bool {
        self.top.is_zero() && self.shadow.as_ref().is_none_or(Cochain::is_zero)
    }

    pub fn add(&self, other: &LeibDerCochain) -> Result<Self> {
        let shadow = match (&self.shadow, &other.shadow) {
            (Some(a), Some(b)) => Some(a.add(b)?),
            (None, None) => None,
            _ => return Err(Error::Dimension("LeibDer cochain degrees differ".into())),
        };
        Ok(LeibDerCochain { top: self.top.add(&other.top)?, shadow })
    }

    pub fn sub(&self, other: &LeibDerCochain) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        LeibDerCochain { top: self.top.scale(c), shadow: self.shadow.as_ref().map(|s| s.scale(c)) }
    }
}

fn require_rep(r: &Representation, f: &Cochain) -> Result<()> {
    if f.gdim != r.gdim() || f.mdim != r.mdim() {
        return Err(Error::Dimension(format!(
            "cochain dims ({}, {}) do not match representation dims ({}, {})",
            f.gdim,
            f.mdim,
            r.gdim(),
            r.mdim()
        )));
    }
    Ok(())
}

/// Loday-Pirashvili coboundary:
/// `(dL f)(x_1..x_{n+1}) = [x_1, f(x_2..)] + sum_{i>=2} (-1)^i [f(..^x_i..), x_i]
///  + sum_{i<j} (-1)^{j+1} f(x_1..x_{i-1}, [x_i, x_j], x_{i+1}..^x_j..)`.
pub fn delta_l(r: &Representation, f: &Cochain) -> Result<Cochain> {
    require_rep(r, f)?;
    if f.degree == 0 {
        return Err(Error::Invalid("degree-0 Leibniz cochains are not supported".into()));
    }
    let (d, m, n) = (f.gdim, f.mdim, f.degree);
    let g = &r.base;
    Ok(Cochain::from_fn(n + 1, d, m, |x| {
        let mut acc = r.act_left(&unit_vec(d, x[0]), f.at(&x[1..]));
        for i in 1..=n {
            // 0-based slot i is x_{i+1}, sign (-1)^{i+1}.
            let rest: Vec<usize> = x.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
            let term = r.act_right(f.at(&rest), &unit_vec(d, x[i]));
            if i % 2 == 1 {
                acc = add_vec(&acc, &term);
            } else {
                acc = sub_vec(&acc, &term);
            }
        }
        let mut tuple = vec![0; n];
        for i in 0..=n {
            for j in i + 1..=n {
                // 1-based j+1, sign (-1)^{j+2}.
                let sign = if j % 2 == 0 { int(1) } else { int(-1) };
                let bracket = g.basis_bracket(x[i], x[j]);
                let mut pos = 0;
                for (k, &v) in x.iter().enumerate() {
                    if k != j {
                        tuple[pos] = v;
                        pos += 1;
                    }
                }
                for (s, c) in bracket.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    tuple[i] = s;
                    axpy(&mut acc, &(&sign * c), f.at(&tuple));
                }
            }
        }
        acc
    }))
}

fn require_leibder(p: &LeibDerPair, r: &LeibDerRepresentation, f: &Cochain) -> Result<()> {
    require_same_base(p, r)?;
    require_rep(&r.rep, f)
}

/// `(delta f)(x_1..x_n) = sum_i f(.., phi x_i, ..) - phi_M f(x_1..x_n)`.
pub fn delta_phi(p: &LeibDerPair, r: &LeibDerRepresentation, f: &Cochain) -> Result<Cochain> {
    require_leibder(p, r, f)?;
    let (d, m, n) = (f.gdim, f.mdim, f.degree);
    Ok(Cochain::from_fn(n, d, m, |x| {
        let mut acc = r.phi_m.mul_vec(f.at(x)).iter().map(|v| -v).collect::<Vector>();
        let mut t = x.to_vec();
        for i in 0..n {
            for s in 0..d {
                let c = &p.phi[(s, x[i])];
                if c.is_zero() {
                    continue;
                }
                t[i] = s;
                axpy(&mut acc, c, f.at(&t));
            }
            t[i] = x[i];
        }
        acc
    }))
}

/// LeibDer coboundary: `d f = (dL f, -delta f)` in degree 1 and
/// `d (f, f_bar) = (dL f, dL f_bar + (-1)^n delta f)` above.
pub fn partial(p: &LeibDerPair, r: &LeibDerRepresentation, c: &LeibDerCochain) -> Result<LeibDerCochain> {
    require_leibder(p, r, &c.top)?;
    let n = c.degree();
    let top = delta_l(&r.rep, &c.top)?;
    let df = delta_phi(p, r, &c.top)?;
    let shadow = match &c.shadow {
        None => df.neg(),
        Some(s) => delta_l(&r.rep, s)?.add(&df.sign(if n % 2 == 0 { 1 } else { -1 }))?,
    };
    LeibDerCochain::new(top, Some(shadow))
}

fn require_adjoint(f: &Cochain) -> Result<()> {
    if f.gdim != f.mdim {
        return Err(Error::Invalid("graded brackets need coefficients in the algebra itself".into()));
    }
    Ok(())
}

fn pow_sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Insertion product: for each slot `i` and each way of choosing `n-1` of the
/// trailing slots (kept in order, sign of the shuffle), insert `g` at slot `i`
/// with sign `(-1)^{(i-1)(n-1)}`.
pub fn bullet(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    require_adjoint(f)?;
    require_adjoint(g)?;
    if f.gdim != g.gdim {
        return Err(Error::Dimension("bullet of cochains over different algebras".into()));
    }
    let (m, n, d) = (f.degree, g.degree, f.gdim);
    if m == 0 || n == 0 {
        return Err(Error::Invalid("bullet needs cochains of degree at least 1".into()));
    }
    let p = m + n - 1;
    // Subsets of size n-1 among the trailing slots, per insertion slot.
    let choices: Vec<Vec<(Vec<usize>, Vec<usize>, i64)>> = (0..m)
        .map(|i| {
            let trailing = p - i - 1;
            subsets(trailing, n - 1)
                .into_iter()
                .map(|chosen| {
                    let inv: usize = chosen.iter().enumerate().map(|(k, &pos)| pos - k).sum();
                    let rest: Vec<usize> = (0..trailing).filter(|q| !chosen.contains(q)).collect();
                    (chosen, rest, pow_sign(inv))
                })
                .collect()
        })
        .collect();
    Ok(Cochain::from_fn(p, d, d, |x| {
        let mut acc = zero_vec(d);
        let mut ftuple = vec![0; m];
        let mut gtuple = vec![0; n];
        for i in 0..m {
            let slot_sign = pow_sign(i * (n - 1));
            ftuple[..i].copy_from_slice(&x[..i]);
            let tail = &x[i + 1..];
            for (chosen, rest, sh) in &choices[i] {
                gtuple[0] = x[i];
                for (k, &c) in chosen.iter().enumerate() {
                    gtuple[k + 1] = tail[c];
                }
                for (k, &r) in rest.iter().enumerate() {
                    ftuple[i + 1 + k] = tail[r];
                }
                let inner = g.at(&gtuple);
                let sign = int(slot_sign * sh);
                for (s, c) in inner.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    ftuple[i] = s;
                    axpy(&mut acc, &(&sign * c), f.at(&ftuple));
                }
            }
        }
        acc
    }))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `[[f, g]] = f . g - (-1)^{(m-1)(n-1)} g . f`.
pub fn gbracket(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let fg = bullet(f, g)?;
    let gf = bullet(g, f)?;
    fg.sub(&gf.sign(pow_sign((f.degree - 1) * (g.degree - 1))))
}

/// `[[(f, f_bar), (g, g_bar)]]~ = ([[f, g]], (-1)^{m+1} [[f, g_bar]] + [[f_bar, g]])`.
pub fn tilde_bracket(a: &LeibDerCochain, b: &LeibDerCochain) -> Result<LeibDerCochain> {
    let (m, n) = (a.degree(), b.degree());
    let top = gbracket(&a.top, &b.top)?;
    let deg = m + n - 1;
    if deg == 1 {
        return LeibDerCochain::new(top, None);
    }
    let mut shadow = Cochain::zero(deg - 1, a.gdim(), a.mdim());
    if let Some(gb) = &b.shadow {
        shadow = shadow.add(&gbracket(&a.top, gb)?.sign(pow_sign(m + 1)))?;
    }
    if let Some(fb) = &a.shadow {
        shadow = shadow.add(&gbracket(fb, &b.top)?)?;
    }
    LeibDerCochain::new(top, Some(shadow))
}

/// The Maurer-Cartan element `(mu, phi)` of a pair.
pub fn structure_cochain(p: &LeibDerPair) -> LeibDerCochain {
    LeibDerCochain { top: Cochain::from_algebra(&p.algebra), shadow: Some(Cochain::from_linear_map(&p.phi)) }
}

/// Matrix of `partial: C^n_LeibDer -> C^{n+1}_LeibDer` in the flattened bases.
pub fn partial_matrix(p: &LeibDerPair, r: &LeibDerRepresentation, n: usize) -> Result<Matrix> {
    require_same_base(p, r)?;
    let (d, m) = (p.dim(), r.mdim());
    let src = LeibDerCochain::space_dim(n, d, m)?;
    let dst = LeibDerCochain::space_dim(n + 1, d, m)?;
    if n == 0 {
        return Ok(Matrix::zeros(dst, 0));
    }
    let cols = (0..src)
        .map(|k| Ok(partial(p, r, &LeibDerCochain::from_flat(n, d, m, &unit_vec(src, k))?)?.flatten()))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(dst, &cols)
}

/// Matrix of `dL: C^n -> C^{n+1}` (plain Leibniz cochains).
pub fn delta_l_matrix(r: &Representation, n: usize) -> Result<Matrix> {
    let (d, m) = (r.gdim(), r.mdim());
    let src = cochain_len(n, d, m)?;
    let dst = cochain_len(n + 1, d, m)?;
    let cols = (0..src)
        .map(|k| Ok(delta_l(r, &Cochain::new(n, d, m, unit_vec(src, k))?)?.values))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(dst, &cols)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohomologyDims {
    pub z: usize,
    pub b: usize,
    pub h: usize,
}

#[derive(Clone, Debug)]
pub struct Cohomology {
    pub dims: CohomologyDims,
    /// Echelon basis of the cocycles.
    pub cocycles: Vec<LeibDerCochain>,
    /// Cocycles whose classes form a basis of the cohomology.
    pub classes: Vec<LeibDerCochain>,
}

/// Cocycle basis vectors that are independent modulo the coboundary image.
fn class_representatives(image: &Matrix, cocycles: &[Vector]) -> Vec<usize> {
    let mut span: Vec<Vector> = (0..image.cols()).map(|j| image.column(j)).collect();
    let mut rank = if span.is_empty() { 0 } else { image.rank() };
    let mut picked = Vec::new();
    for (k, z) in cocycles.iter().enumerate() {
        span.push(z.clone());
        let len = z.len();
        let r = Matrix::from_columns(len, &span).expect("shape").rank();
        if r > rank {
            rank = r;
            picked.push(k);
        } else {
            span.pop();
        }
    }
    picked
}

pub fn cohomology_dim(p: &LeibDerPair, r: &LeibDerRepresentation, n: usize) -> Result<CohomologyDims> {
    if n == 0 {
        return Ok(CohomologyDims { z: 0, b: 0, h: 0 });
    }
    let dn = partial_matrix(p, r, n)?;
    let z = dn.cols() - dn.rank();
    let b = if n == 1 { 0 } else { partial_matrix(p, r, n - 1)?.rank() };
    Ok(CohomologyDims { z, b, h: z - b })
}

pub fn cohomology(p: &LeibDerPair, r: &LeibDerRepresentation, n: usize) -> Result<Cohomology> {
    if n == 0 {
        return Ok(Cohomology { dims: CohomologyDims { z: 0, b: 0, h: 0 }, cocycles: vec![], classes: vec![] });
    }
    let (d, m) = (p.dim(), r.mdim());
    let kernel = partial_matrix(p, r, n)?.kernel_basis();
    let image =
        if n == 1 { Matrix::zeros(LeibDerCochain::space_dim(1, d, m)?, 0) } else { partial_matrix(p, r, n - 1)? };
    let b = if image.cols() == 0 { 0 } else { image.rank() };
    let picked = class_representatives(&image, &kernel);
    let to_cochain = |v: &Vector| LeibDerCochain::from_flat(n, d, m, v);
    let cocycles = kernel.iter().map(to_cochain).collect::<Result<Vec<_>>>()?;
    let classes = picked.iter().map(|&k| cocycles[k].clone()).collect();
    let z = kernel.len();
    Ok(Cohomology { dims: CohomologyDims { z, b, h: z - b }, cocycles, classes })
}

/// Some `u` with `partial u = c`, or `None` when `c` is not exact.
pub fn solve_coboundary(
    p: &LeibDerPair,
    r: &LeibDerRepresentation,
    c: &LeibDerCochain,
) -> Result<Option<LeibDerCochain>> {
    let n = c.degree();
    if n < 2 {
        return Err(Error::Invalid("coboundaries start in degree 2".into()));
    }
    if !partial(p, r, c)?.is_zero() {
        return Err(Error::Invalid("cochain is not a cocycle".into()));
    }
    let a = partial_matrix(p, r, n - 1)?;
    match a.solve(&c.flatten())? {
        None => Ok(None),
        Some(u) => Ok(Some(LeibDerCochain::from_flat(n - 1, p.dim(), r.mdim(), &u)?)),
    }
}

/// Plain Leibniz cohomology starting at `C^1`: `B^1 = 0`.
pub fn leibniz_cohomology_dim(r: &Representation, n: usize) -> Result<CohomologyDims> {
    if n == 0 {
        return Ok(CohomologyDims { z: 0, b: 0, h: 0 });
    }
    let dn = delta_l_matrix(r, n)?;
    let z = dn.cols() - dn.rank();
    let b = if n == 1 { 0 } else { delta_l_matrix(r, n - 1)?.rank() };
    Ok(CohomologyDims { z, b, h: z - b })
}

/// Some `u` with `dL u = c` for a plain Leibniz cocycle `c` of degree at least 2.
pub fn solve_leibniz_coboundary(r: &Representation, c: &Cochain) -> Result<Option<Cochain>> {
    if c.degree < 2 {
        return Err(Error::Invalid("coboundaries start in degree 2".into()));
    }
    if !delta_l(r, c)?.is_zero() {
        return Err(Error::Invalid("cochain is not a cocycle".into()));
    }
    let a = delta_l_matrix(r, c.degree - 1)?;
    match a.solve(&c.values)? {
        None => Ok(None),
        Some(u) => Ok(Some(Cochain::new(c.degree - 1, c.gdim, c.mdim, u)?)),
    }
}
