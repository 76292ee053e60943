//! JSON interchange. Scalars are strings `"p/q"` (or `"p"`), with bare JSON
//! integers accepted on input. Every parser reports the JSON path of the
//! offending field.

use serde::de::{DeserializeOwned, Deserializer, Error as _};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::cohomology::{Cochain, LeibDerCochain};
use crate::deformations::Deformation;
use crate::error::{Error, Result};
use crate::exactlin::{format_scalar, parse_scalar, Matrix, Scalar};
use crate::extensions::ExtensionDiagram;
use crate::leibniz::{LeibDerPair, LeibDerRepresentation, LeibnizAlgebra, Representation};
use crate::shleibniz::{CrossedModule, HomotopyDerivation, TwoTermShLeibniz};
use crate::tensor::Multilinear;

/// Largest accepted algebra, module or fiber dimension.
pub const MAX_DIM: usize = 8;
/// Largest accepted number of coefficients in a single cochain.
pub const MAX_COCHAIN_LEN: usize = 1 << 16;
const MAX_SCALAR_CHARS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Scalar);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d).map_err(|_| D::Error::custom("expected a rational string \"p/q\" or an integer"))? {
            Raw::Int(n) => Ok(Q(Scalar::from_integer(n.into()))),
            Raw::Text(t) if t.len() > MAX_SCALAR_CHARS => Err(D::Error::custom("rational literal too long")),
            Raw::Text(t) => parse_scalar(&t).map(Q).map_err(D::Error::custom),
        }
    }
}

pub type Rows = Vec<Vec<Q>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDto {
    pub dim: usize,
    /// `bracket[i][j]` lists the coefficients of `[e_i, e_j]`.
    pub bracket: Vec<Vec<Vec<Q>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDto {
    pub dim: usize,
    pub bracket: Vec<Vec<Vec<Q>>>,
    pub phi: Rows,
}

/// `left[i][a]` is `[e_i, m_a]`, `right[a][i]` is `[m_a, e_i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDto {
    pub mdim: usize,
    pub left: Vec<Vec<Vec<Q>>>,
    pub right: Vec<Vec<Vec<Q>>>,
    #[serde(rename = "phi_M", default, skip_serializing_if = "Option::is_none")]
    pub phi_m: Option<Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainDto {
    pub degree: usize,
    pub gdim: usize,
    pub mdim: usize,
    pub values: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeibDerCochainDto {
    pub top: CochainDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shadow: Option<CochainDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationDto {
    pub base: PairDto,
    pub order: usize,
    pub mu: Vec<CochainDto>,
    pub phi: Vec<Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDto {
    pub h: AlgebraDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_h: Option<Rows>,
    pub i: Rows,
    pub p: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaDto {
    pub theta0: Rows,
    pub theta1: Rows,
    pub theta2: Vec<Vec<Vec<Q>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShDto {
    pub n0: usize,
    pub n1: usize,
    pub d: Rows,
    pub l2_00: Vec<Vec<Vec<Q>>>,
    pub l2_01: Vec<Vec<Vec<Q>>>,
    pub l2_10: Vec<Vec<Vec<Q>>>,
    pub l3: Vec<Vec<Vec<Vec<Q>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<ThetaDto>,
}

/// `left[x][m]` is the action of `h` on `g` from the left, `right[m][x]` from the right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedDto {
    pub g: PairDto,
    pub h: PairDto,
    pub dt: Rows,
    pub left: Vec<Vec<Vec<Q>>>,
    pub right: Vec<Vec<Vec<Q>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralBuildDto {
    pub base: PairDto,
    pub phi_a: Rows,
    pub psi: CochainDto,
    pub chi: CochainDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralClassifyDto {
    pub base: PairDto,
    pub phi_a: Rows,
    pub extension: ExtensionDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralPairDto {
    pub base: PairDto,
    pub phi_a: Rows,
    pub first: ExtensionDto,
    pub second: ExtensionDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianBuildDto {
    pub base: PairDto,
    pub rep: RepresentationDto,
    pub cocycle: LeibDerCochainDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianClassifyDto {
    pub base: PairDto,
    pub rep: RepresentationDto,
    pub extension: ExtensionDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtendDerivationDto {
    pub base: AlgebraDto,
    pub phi_g: Rows,
    pub phi_a: Rows,
    pub extension: ExtensionDto,
}

/// Deserializes `text` as `T`, reporting the JSON path on failure.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Parse { path, msg: e.into_inner().to_string() }
    })?;
    Ok(value)
}

/// Compact JSON in struct field order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("DTOs always serialize")
}

fn bad(path: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Parse { path: path.into(), msg: msg.into() }
}

fn at(path: &str, field: &str) -> String {
    if path.is_empty() {
        field.to_string()
    } else {
        format!("{path}.{field}")
    }
}

fn rewrap(path: &str, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => bad(if path.is_empty() { "." } else { path }, other.to_string()),
    }
}

fn check_dim(path: &str, n: usize) -> Result<()> {
    if n > MAX_DIM {
        return Err(bad(path, format!("dimension {n} exceeds the limit {MAX_DIM}")));
    }
    Ok(())
}

fn vector(path: &str, v: &[Q], len: usize) -> Result<Vec<Scalar>> {
    if v.len() != len {
        return Err(bad(path, format!("expected {len} entries, found {}", v.len())));
    }
    Ok(v.iter().map(|q| q.0.clone()).collect())
}

fn matrix(path: &str, rows: &[Vec<Q>], r: usize, c: usize) -> Result<Matrix> {
    if rows.len() != r {
        return Err(bad(path, format!("expected {r} rows, found {}", rows.len())));
    }
    let mut data = Vec::with_capacity(r * c);
    for (i, row) in rows.iter().enumerate() {
        data.extend(vector(&format!("{path}[{i}]"), row, c)?);
    }
    Matrix::from_vec(r, c, data).map_err(|e| rewrap(path, e))
}

/// Flattens `t[i][j]` (each a list of `out` coefficients) in row-major order.
fn block2(path: &str, t: &[Vec<Vec<Q>>], a: usize, b: usize, out: usize) -> Result<Vec<Scalar>> {
    if t.len() != a {
        return Err(bad(path, format!("expected {a} entries, found {}", t.len())));
    }
    let mut data = Vec::with_capacity(a * b * out);
    for (i, row) in t.iter().enumerate() {
        if row.len() != b {
            return Err(bad(format!("{path}[{i}]"), format!("expected {b} entries, found {}", row.len())));
        }
        for (j, v) in row.iter().enumerate() {
            data.extend(vector(&format!("{path}[{i}][{j}]"), v, out)?);
        }
    }
    Ok(data)
}

fn block3(path: &str, t: &[Vec<Vec<Vec<Q>>>], n: usize, out: usize) -> Result<Vec<Scalar>> {
    if t.len() != n {
        return Err(bad(path, format!("expected {n} entries, found {}", t.len())));
    }
    let mut data = Vec::with_capacity(n * n * n * out);
    for (i, plane) in t.iter().enumerate() {
        data.extend(block2(&format!("{path}[{i}]"), plane, n, n, out)?);
    }
    Ok(data)
}

fn rows_of(m: &Matrix) -> Rows {
    (0..m.rows()).map(|i| m.row(i).iter().cloned().map(Q).collect()).collect()
}

fn nest2_sized(data: &[Scalar], a: usize, b: usize, out: usize) -> Vec<Vec<Vec<Q>>> {
    (0..a)
        .map(|i| {
            (0..b).map(|j| data[(i * b + j) * out..(i * b + j + 1) * out].iter().cloned().map(Q).collect()).collect()
        })
        .collect()
}

impl AlgebraDto {
    pub fn from_algebra(a: &LeibnizAlgebra) -> Self {
        let d = a.dim();
        AlgebraDto { dim: d, bracket: nest2_sized(a.constants(), d, d, d) }
    }

    pub fn to_algebra(&self, path: &str) -> Result<LeibnizAlgebra> {
        check_dim(&at(path, "dim"), self.dim)?;
        let c = block2(&at(path, "bracket"), &self.bracket, self.dim, self.dim, self.dim)?;
        LeibnizAlgebra::new(self.dim, c).map_err(|e| rewrap(path, e))
    }
}

impl PairDto {
    pub fn from_pair(p: &LeibDerPair) -> Self {
        let a = AlgebraDto::from_algebra(&p.algebra);
        PairDto { dim: a.dim, bracket: a.bracket, phi: rows_of(&p.phi) }
    }

    pub fn to_pair(&self, path: &str) -> Result<LeibDerPair> {
        let algebra = AlgebraDto { dim: self.dim, bracket: self.bracket.clone() }.to_algebra(path)?;
        let phi = matrix(&at(path, "phi"), &self.phi, self.dim, self.dim)?;
        LeibDerPair::new(algebra, phi).map_err(|e| rewrap(path, e))
    }
}

impl RepresentationDto {
    pub fn from_representation(r: &Representation, phi_m: Option<&Matrix>) -> Self {
        let (d, m) = (r.gdim(), r.mdim());
        RepresentationDto {
            mdim: m,
            left: nest2_sized(r.left_data(), d, m, m),
            right: nest2_sized(r.right_data(), m, d, m),
            phi_m: phi_m.map(rows_of),
        }
    }

    pub fn from_leibder(r: &LeibDerRepresentation) -> Self {
        Self::from_representation(&r.rep, Some(&r.phi_m))
    }

    pub fn to_representation(&self, path: &str, base: &LeibnizAlgebra) -> Result<Representation> {
        check_dim(&at(path, "mdim"), self.mdim)?;
        let (d, m) = (base.dim(), self.mdim);
        let left = block2(&at(path, "left"), &self.left, d, m, m)?;
        let right = block2(&at(path, "right"), &self.right, m, d, m)?;
        Representation::new(base.clone(), m, left, right).map_err(|e| rewrap(path, e))
    }

    /// `phi_M` is required here.
    pub fn to_leibder(&self, path: &str, base: &LeibnizAlgebra) -> Result<LeibDerRepresentation> {
        let rep = self.to_representation(path, base)?;
        let Some(rows) = &self.phi_m else {
            return Err(bad(at(path, "phi_M"), "missing field `phi_M`"));
        };
        let phi_m = matrix(&at(path, "phi_M"), rows, self.mdim, self.mdim)?;
        LeibDerRepresentation::new(rep, phi_m).map_err(|e| rewrap(path, e))
    }
}

impl CochainDto {
    pub fn from_cochain(c: &Cochain) -> Self {
        CochainDto {
            degree: c.degree(),
            gdim: c.gdim(),
            mdim: c.mdim(),
            values: c.values().iter().cloned().map(Q).collect(),
        }
    }

    pub fn to_cochain(&self, path: &str) -> Result<Cochain> {
        check_dim(&at(path, "gdim"), self.gdim)?;
        check_dim(&at(path, "mdim"), self.mdim)?;
        let len = u32::try_from(self.degree)
            .ok()
            .and_then(|n| self.gdim.checked_pow(n))
            .and_then(|n| n.checked_mul(self.mdim))
            .filter(|&n| n <= MAX_COCHAIN_LEN)
            .ok_or_else(|| bad(at(path, "degree"), "cochain too large"))?;
        let values = vector(&at(path, "values"), &self.values, len)?;
        Cochain::new(self.degree, self.gdim, self.mdim, values).map_err(|e| rewrap(path, e))
    }
}

impl LeibDerCochainDto {
    pub fn from_cochain(c: &LeibDerCochain) -> Self {
        LeibDerCochainDto {
            top: CochainDto::from_cochain(&c.top),
            shadow: c.shadow.as_ref().map(CochainDto::from_cochain),
        }
    }

    pub fn to_cochain(&self, path: &str) -> Result<LeibDerCochain> {
        let top = self.top.to_cochain(&at(path, "top"))?;
        let shadow = self.shadow.as_ref().map(|s| s.to_cochain(&at(path, "shadow"))).transpose()?;
        LeibDerCochain::new(top, shadow).map_err(|e| rewrap(path, e))
    }
}

impl DeformationDto {
    pub fn from_deformation(def: &Deformation) -> Self {
        DeformationDto {
            base: PairDto::from_pair(def.base()),
            order: def.order(),
            mu: def.mu().iter().map(CochainDto::from_cochain).collect(),
            phi: def.phi().iter().map(rows_of).collect(),
        }
    }

    pub fn to_deformation(&self, path: &str) -> Result<Deformation> {
        let base = self.base.to_pair(&at(path, "base"))?;
        let d = base.dim();
        let n = self.order + 1;
        if self.mu.len() != n {
            return Err(bad(
                at(path, "mu"),
                format!("expected {n} terms for order {}, found {}", self.order, self.mu.len()),
            ));
        }
        if self.phi.len() != n {
            return Err(bad(
                at(path, "phi"),
                format!("expected {n} terms for order {}, found {}", self.order, self.phi.len()),
            ));
        }
        let mu = self
            .mu
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_cochain(&format!("{}[{k}]", at(path, "mu"))))
            .collect::<Result<Vec<_>>>()?;
        let phi = self
            .phi
            .iter()
            .enumerate()
            .map(|(k, m)| matrix(&format!("{}[{k}]", at(path, "phi")), m, d, d))
            .collect::<Result<Vec<_>>>()?;
        Deformation::new(base, mu, phi).map_err(|e| rewrap(path, e))
    }
}

impl ExtensionDto {
    pub fn from_diagram(e: &ExtensionDiagram) -> Self {
        ExtensionDto {
            h: AlgebraDto::from_algebra(&e.h),
            phi_h: e.phi_h.as_ref().map(rows_of),
            i: rows_of(&e.i),
            p: rows_of(&e.p),
            s: e.s.as_ref().map(rows_of),
        }
    }

    /// `base_dim` and `fiber_dim` fix the shapes of `p`, `s` and `i`.
    pub fn to_diagram(&self, path: &str, base_dim: usize, fiber_dim: usize) -> Result<ExtensionDiagram> {
        let h = self.h.to_algebra(&at(path, "h"))?;
        let n = h.dim();
        let phi_h = self.phi_h.as_ref().map(|m| matrix(&at(path, "phi_h"), m, n, n)).transpose()?;
        let i = matrix(&at(path, "i"), &self.i, n, fiber_dim)?;
        let p = matrix(&at(path, "p"), &self.p, base_dim, n)?;
        let s = self.s.as_ref().map(|m| matrix(&at(path, "s"), m, n, base_dim)).transpose()?;
        Ok(ExtensionDiagram { h, phi_h, i, p, s })
    }
}

impl ShDto {
    pub fn from_sh(s: &TwoTermShLeibniz, th: Option<&HomotopyDerivation>) -> Self {
        let (n0, n1) = s.dims();
        let l3 = (0..n0)
            .map(|i| nest2_sized(&s.l3().data()[i * n0 * n0 * n1..(i + 1) * n0 * n0 * n1], n0, n0, n1))
            .collect();
        ShDto {
            n0,
            n1,
            d: rows_of(s.d()),
            l2_00: nest2_sized(s.l2_00().data(), n0, n0, n0),
            l2_01: nest2_sized(s.l2_01().data(), n0, n1, n1),
            l2_10: nest2_sized(s.l2_10().data(), n1, n0, n1),
            l3,
            theta: th.map(|t| ThetaDto {
                theta0: rows_of(&t.theta0),
                theta1: rows_of(&t.theta1),
                theta2: nest2_sized(t.theta2.data(), n0, n0, n1),
            }),
        }
    }

    pub fn to_sh(&self, path: &str) -> Result<(TwoTermShLeibniz, Option<HomotopyDerivation>)> {
        let (n0, n1) = (self.n0, self.n1);
        check_dim(&at(path, "n0"), n0)?;
        check_dim(&at(path, "n1"), n1)?;
        let ml = |sizes: Vec<usize>, out: usize, data: Vec<Scalar>| {
            Multilinear::new(sizes, out, data).map_err(|e| rewrap(path, e))
        };
        let s = TwoTermShLeibniz::new(
            matrix(&at(path, "d"), &self.d, n0, n1)?,
            ml(vec![n0, n0], n0, block2(&at(path, "l2_00"), &self.l2_00, n0, n0, n0)?)?,
            ml(vec![n0, n1], n1, block2(&at(path, "l2_01"), &self.l2_01, n0, n1, n1)?)?,
            ml(vec![n1, n0], n1, block2(&at(path, "l2_10"), &self.l2_10, n1, n0, n1)?)?,
            ml(vec![n0, n0, n0], n1, block3(&at(path, "l3"), &self.l3, n0, n1)?)?,
        )
        .map_err(|e| rewrap(path, e))?;
        let th = match &self.theta {
            None => None,
            Some(t) => {
                let p = at(path, "theta");
                Some(HomotopyDerivation {
                    theta0: matrix(&at(&p, "theta0"), &t.theta0, n0, n0)?,
                    theta1: matrix(&at(&p, "theta1"), &t.theta1, n1, n1)?,
                    theta2: ml(vec![n0, n0], n1, block2(&at(&p, "theta2"), &t.theta2, n0, n0, n1)?)?,
                })
            }
        };
        Ok((s, th))
    }
}

impl CrossedDto {
    pub fn from_crossed(c: &CrossedModule) -> Self {
        let r = RepresentationDto::from_representation(&c.action, None);
        CrossedDto {
            g: PairDto::from_pair(&c.g),
            h: PairDto::from_pair(&c.h),
            dt: rows_of(&c.dt),
            left: r.left,
            right: r.right,
        }
    }

    pub fn to_crossed(&self, path: &str) -> Result<CrossedModule> {
        let g = self.g.to_pair(&at(path, "g"))?;
        let h = self.h.to_pair(&at(path, "h"))?;
        let dt = matrix(&at(path, "dt"), &self.dt, h.dim(), g.dim())?;
        let rep = RepresentationDto { mdim: g.dim(), left: self.left.clone(), right: self.right.clone(), phi_m: None };
        let action = rep.to_representation(path, &h.algebra)?;
        Ok(CrossedModule { g, h, dt, action })
    }
}

pub fn matrix_from_rows(path: &str, rows: &[Vec<Q>], r: usize, c: usize) -> Result<Matrix> {
    matrix(path, rows, r, c)
}

pub fn matrix_to_rows(m: &Matrix) -> Rows {
    rows_of(m)
}

/// Square matrix whose size is read off the number of rows.
pub fn square_matrix(path: &str, rows: &[Vec<Q>]) -> Result<Matrix> {
    check_dim(path, rows.len())?;
    matrix(path, rows, rows.len(), rows.len())
}

pub fn parse_algebra(text: &str) -> Result<LeibnizAlgebra> {
    from_json::<AlgebraDto>(text)?.to_algebra("")
}

pub fn parse_pair(text: &str) -> Result<LeibDerPair> {
    from_json::<PairDto>(text)?.to_pair("")
}

pub fn parse_cochain(text: &str) -> Result<Cochain> {
    from_json::<CochainDto>(text)?.to_cochain("")
}

pub fn parse_leibder_cochain(text: &str) -> Result<LeibDerCochain> {
    from_json::<LeibDerCochainDto>(text)?.to_cochain("")
}

pub fn parse_deformation(text: &str) -> Result<Deformation> {
    from_json::<DeformationDto>(text)?.to_deformation("")
}

pub fn parse_sh(text: &str) -> Result<(TwoTermShLeibniz, Option<HomotopyDerivation>)> {
    from_json::<ShDto>(text)?.to_sh("")
}

pub fn parse_crossed(text: &str) -> Result<CrossedModule> {
    from_json::<CrossedDto>(text)?.to_crossed("")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{lambda2, random_deformation, random_pair, random_representation, random_skeletal};
    use crate::exactlin::frac;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn lambda2_text() {
        let text = r#"{"dim":2,"bracket":[[["0","0"],["0","0"]],[["0","0"],["1","0"]]]}"#;
        assert_eq!(parse_algebra(text).unwrap(), lambda2());
        assert_eq!(to_json(&AlgebraDto::from_algebra(&lambda2())), text);
        let ints = r#"{"dim":2,"bracket":[[[0,0],[0,0]],[[1,0],[0,0]]]}"#;
        assert_eq!(parse_algebra(ints).unwrap().coef(1, 0, 0), &frac(1, 1));
    }

    #[test]
    fn errors_name_the_path() {
        let cases = [
            (r#"{"dim":2,"bracket":[[["0","0"],["0","x"]],[["0","0"],["1","0"]]]}"#, "bracket[0][1][1]"),
            (r#"{"dim":2,"bracket":[[["0","0"],["0"]],[["0","0"],["1","0"]]]}"#, "bracket[0][1]"),
            (r#"{"dim":2,"bracket":[[["0","0"],["0","0"]]]}"#, "bracket"),
            (r#"{"dim":2}"#, "."),
            (r#"{"dim":9,"bracket":[]}"#, "dim"),
            (r#"{"dim":1,"bracket":[[["1/0"]]]}"#, "bracket[0][0][0]"),
            (r#"{"dim":1,"bracket":[[[0.5]]]}"#, "bracket[0][0][0]"),
            (r#"{"dim":1,"bracket":[[["0"]]],"extra":1}"#, "extra"),
        ];
        for (text, path) in cases {
            match parse_algebra(text) {
                Err(Error::Parse { path: p, .. }) => assert_eq!(p, path, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        let huge = r#"{"degree":40,"gdim":8,"mdim":8,"values":[]}"#;
        assert!(matches!(parse_cochain(huge), Err(Error::Parse { path, .. }) if path == "degree"));
    }

    #[test]
    fn round_trips() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..10 {
            let p = random_pair(&mut rng, 3);
            let text = to_json(&PairDto::from_pair(&p));
            assert_eq!(parse_pair(&text).unwrap(), p);
            let r = random_representation(&mut rng, &p, 2);
            let dto = RepresentationDto::from_leibder(&r);
            let back: RepresentationDto = from_json(&to_json(&dto)).unwrap();
            assert_eq!(back.to_leibder("", &p.algebra).unwrap(), r);
            let def = random_deformation(&mut rng, 2, 2);
            let text = to_json(&DeformationDto::from_deformation(&def));
            assert_eq!(parse_deformation(&text).unwrap(), def);
            let (s, th) = random_skeletal(&mut rng);
            let text = to_json(&ShDto::from_sh(&s, Some(&th)));
            assert_eq!(parse_sh(&text).unwrap(), (s, Some(th)));
        }
        let c = crate::corpus::random_crossed(&mut rng);
        assert_eq!(parse_crossed(&to_json(&CrossedDto::from_crossed(&c))).unwrap(), c);
    }
}
