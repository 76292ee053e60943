//! Argument parsing and dispatch for the `leibder` binary. Every command
//! reads JSON files and prints one compact JSON report on stdout.
//!
//! Exit codes: 0 success or passing check, 1 a checked negative verdict,
//! 2 unusable input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use leibder::cohomology::cohomology;
use leibder::deformations::{check_deformation, extend_deformation, infinitesimal, obstruction, trivialize};
use leibder::extensions::{
    build_abelian_extension, build_central_extension, classify_abelian_extension, extend_derivation_pair,
    is_isomorphic_extension, obstruction_class, trivial_coefficients, AbelianExtensionData, CentralExtensionData,
};
use leibder::formats::{
    from_json, matrix_from_rows, matrix_to_rows, square_matrix, AbelianBuildDto, AbelianClassifyDto, AlgebraDto,
    CentralBuildDto, CentralClassifyDto, CentralPairDto, CochainDto, CrossedDto, DeformationDto, ExtendDerivationDto,
    ExtensionDto, LeibDerCochainDto, PairDto, RepresentationDto, Rows, ShDto, Q,
};
use leibder::leibniz::{
    check_derivation, check_leibder_representation, check_leibniz, check_representation, LeibDerRepresentation,
};
use leibder::shleibniz::{
    check_crossed, check_homotopy_derivation, check_sh, skeletal_to_triple, strict_to_crossed, to_two_derivation,
    to_two_vector,
};
use leibder::tensor::Multilinear;
use leibder::{Error, Matrix, Report};

#[derive(Parser, Debug)]
#[command(
    name = "leibder",
    version,
    about = "Cohomology, extensions and deformations of Leibniz algebras with derivations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Axiom checks.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        file: PathBuf,
    },
    /// Dimensions of Z, B and H in one degree.
    Cohomology {
        /// A LeibDer pair.
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        /// `adjoint`, `trivial` (one dimension, zero derivation) or a path to a representation with `phi_M`.
        #[arg(long, default_value = "adjoint")]
        rep: String,
        /// Also print cocycles whose classes form a basis of H.
        #[arg(long)]
        representatives: bool,
    },
    /// Central extensions by a pair (a, phi_a) with trivial actions.
    Central {
        #[arg(value_enum)]
        mode: CentralMode,
        file: PathBuf,
    },
    /// Abelian extensions by a LeibDer representation.
    Abelian {
        #[arg(value_enum)]
        mode: AbelianMode,
        file: PathBuf,
    },
    /// Decides whether (phi_g, phi_a) extends to a central extension.
    ExtendDerivation { file: PathBuf },
    /// One-parameter formal deformations truncated at a fixed order.
    Deform {
        #[arg(value_enum)]
        mode: DeformMode,
        file: PathBuf,
    },
    /// 2-term sh Leibniz algebras with a homotopy derivation.
    Sh {
        #[arg(value_enum)]
        mode: ShMode,
        file: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CheckKind {
    Algebra,
    Derivation,
    Representation,
    Pair,
    Sh,
    Crossed,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CentralMode {
    Build,
    Classify,
    Isomorphic,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum AbelianMode {
    Build,
    Classify,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum DeformMode {
    Check,
    Infinitesimal,
    Obstruction,
    Extend,
    Trivialize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ShMode {
    Skeletal,
    Strict,
    TwoVector,
}

/// A finished command: exit code plus the JSON report.
struct Outcome {
    code: i32,
    json: String,
}

fn ok<T: Serialize>(v: &T) -> Outcome {
    Outcome { code: 0, json: leibder::formats::to_json(v) }
}

fn verdict<T: Serialize>(pass: bool, v: &T) -> Outcome {
    Outcome { code: if pass { 0 } else { 1 }, json: leibder::formats::to_json(v) }
}

#[derive(Serialize)]
struct ViolationJson {
    rule: String,
    witness: Vec<usize>,
}

fn violations(r: &Report) -> Vec<ViolationJson> {
    r.violations.iter().map(|v| ViolationJson { rule: v.rule.clone(), witness: v.witness.clone() }).collect()
}

#[derive(Serialize)]
struct ErrorJson {
    error: ErrorBody,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
    message: String,
}

fn error_json(e: &Error) -> String {
    let body = match e {
        Error::Parse { path, msg } => ErrorBody { kind: "parse", path: Some(path.clone()), message: msg.clone() },
        Error::Dimension(m) => ErrorBody { kind: "dimension", path: None, message: m.clone() },
        Error::Invalid(m) => ErrorBody { kind: "invalid", path: None, message: m.clone() },
    };
    leibder::formats::to_json(&ErrorJson { error: body })
}

fn read(path: &Path) -> leibder::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> leibder::Result<T> {
    from_json(&read(path)?)
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out`; diagnostics go to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(o) => {
            let _ = writeln!(out, "{}", o.json);
            o.code
        }
        Err(e) => {
            let _ = writeln!(out, "{}", error_json(&e));
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cmd: &Command) -> leibder::Result<Outcome> {
    match cmd {
        Command::Check { what, file } => check(*what, file),
        Command::Cohomology { file, degree, rep, representatives } => {
            cohomology_cmd(file, *degree, rep, *representatives)
        }
        Command::Central { mode, file } => central(*mode, file),
        Command::Abelian { mode, file } => abelian(*mode, file),
        Command::ExtendDerivation { file } => extend_derivation(file),
        Command::Deform { mode, file } => deform(*mode, file),
        Command::Sh { mode, file } => sh(*mode, file),
    }
}

#[derive(Serialize)]
struct CheckJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    leibniz: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    derivation: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    representation: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sh: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    homotopy_derivation: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    crossed: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violations: Vec<ViolationJson>,
}

impl CheckJson {
    fn empty() -> Self {
        CheckJson {
            leibniz: None,
            derivation: None,
            representation: None,
            sh: None,
            homotopy_derivation: None,
            crossed: None,
            violations: Vec::new(),
        }
    }
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct RepBundle {
    base: PairDto,
    rep: RepresentationDto,
}

fn check(what: CheckKind, file: &Path) -> leibder::Result<Outcome> {
    let mut j = CheckJson::empty();
    let mut all = Report::new();
    match what {
        CheckKind::Algebra => {
            let a = load::<AlgebraDto>(file)?.to_algebra("")?;
            let r = check_leibniz(&a);
            j.leibniz = Some(r.passed());
            all.merge(r);
        }
        CheckKind::Derivation => {
            let p = load::<PairDto>(file)?.to_pair("")?;
            let r = check_derivation(&p.algebra, &p.phi)?;
            j.derivation = Some(r.passed());
            all.merge(r);
        }
        CheckKind::Pair => {
            let p = load::<PairDto>(file)?.to_pair("")?;
            let leib = check_leibniz(&p.algebra);
            let der = check_derivation(&p.algebra, &p.phi)?;
            j.leibniz = Some(leib.passed());
            j.derivation = Some(der.passed());
            all.merge(leib);
            all.merge(der);
        }
        CheckKind::Representation => {
            let b: RepBundle = load(file)?;
            let base = b.base.to_pair("base")?;
            let r = if b.rep.phi_m.is_some() {
                let rep = b.rep.to_leibder("rep", &base.algebra)?;
                check_leibder_representation(&base, &rep)?
            } else {
                check_representation(&b.rep.to_representation("rep", &base.algebra)?)
            };
            j.representation = Some(r.passed());
            all.merge(r);
        }
        CheckKind::Sh => {
            let (s, th) = load::<ShDto>(file)?.to_sh("")?;
            let r = check_sh(&s);
            j.sh = Some(r.passed());
            let passed = r.passed();
            all.merge(r);
            if let (Some(th), true) = (&th, passed) {
                let r = check_homotopy_derivation(&s, th)?;
                j.homotopy_derivation = Some(r.passed());
                all.merge(r);
            }
        }
        CheckKind::Crossed => {
            let c = load::<CrossedDto>(file)?.to_crossed("")?;
            let r = check_crossed(&c)?;
            j.crossed = Some(r.passed());
            all.merge(r);
        }
    }
    j.violations = violations(&all);
    Ok(verdict(all.passed(), &j))
}

#[derive(Serialize)]
struct CohomologyJson {
    #[serde(rename = "Z")]
    z: usize,
    #[serde(rename = "B")]
    b: usize,
    #[serde(rename = "H")]
    h: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    representatives: Option<Vec<LeibDerCochainDto>>,
}

/// Largest cochain-space dimension the cohomology command will eliminate over.
const MAX_COHOMOLOGY_SPACE: usize = 4096;

fn cohomology_cmd(file: &Path, degree: usize, rep: &str, representatives: bool) -> leibder::Result<Outcome> {
    let p = load::<PairDto>(file)?.to_pair("")?;
    let r = match rep {
        "adjoint" => LeibDerRepresentation::adjoint(&p),
        "trivial" => LeibDerRepresentation::trivial(&p.algebra, Matrix::zeros(1, 1))?,
        path => load::<RepresentationDto>(Path::new(path))?.to_leibder("", &p.algebra)?,
    };
    if degree == 0 {
        return Err(Error::Invalid("degree must be at least 1".into()));
    }
    u32::try_from(degree + 1)
        .ok()
        .and_then(|n| p.dim().checked_pow(n))
        .and_then(|n| n.checked_mul(r.mdim()))
        .filter(|&n| n <= MAX_COHOMOLOGY_SPACE)
        .ok_or_else(|| Error::Invalid(format!("degree {degree} is too large for dimension {}", p.dim())))?;
    let c = cohomology(&p, &r, degree)?;
    let reps = representatives.then(|| c.classes.iter().map(LeibDerCochainDto::from_cochain).collect());
    Ok(ok(&CohomologyJson { z: c.dims.z, b: c.dims.b, h: c.dims.h, representatives: reps }))
}

#[derive(Serialize)]
struct ExtensionJson {
    extension: ExtensionDto,
}

#[derive(Serialize)]
struct ClassJson {
    cocycle: LeibDerCochainDto,
    class_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    primitive: Option<LeibDerCochainDto>,
}

#[derive(Serialize)]
struct IsomorphicJson {
    isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    primitive: Option<CochainDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Rows>,
}

fn central(mode: CentralMode, file: &Path) -> leibder::Result<Outcome> {
    match mode {
        CentralMode::Build => {
            let b: CentralBuildDto = load(file)?;
            let base = b.base.to_pair("base")?;
            let phi_a = square_matrix("phi_a", &b.phi_a)?;
            let data =
                CentralExtensionData { base, phi_a, psi: b.psi.to_cochain("psi")?, chi: b.chi.to_cochain("chi")? };
            let e = build_central_extension(&data)?;
            Ok(ok(&ExtensionJson { extension: ExtensionDto::from_diagram(&e) }))
        }
        CentralMode::Classify => {
            let b: CentralClassifyDto = load(file)?;
            let base = b.base.to_pair("base")?;
            let phi_a = square_matrix("phi_a", &b.phi_a)?;
            let e = b.extension.to_diagram("extension", base.dim(), phi_a.rows())?;
            let rep = trivial_coefficients(&base, &phi_a)?;
            let c = classify_abelian_extension(&e, &base, &rep)?;
            Ok(ok(&ClassJson {
                cocycle: LeibDerCochainDto::from_cochain(&c.cocycle),
                class_zero: c.primitive.is_some(),
                primitive: c.primitive.as_ref().map(LeibDerCochainDto::from_cochain),
            }))
        }
        CentralMode::Isomorphic => {
            let b: CentralPairDto = load(file)?;
            let base = b.base.to_pair("base")?;
            let phi_a = square_matrix("phi_a", &b.phi_a)?;
            let e1 = b.first.to_diagram("first", base.dim(), phi_a.rows())?;
            let e2 = b.second.to_diagram("second", base.dim(), phi_a.rows())?;
            let c = is_isomorphic_extension(&e1, &e2, &base, &phi_a)?;
            Ok(verdict(
                c.equivalent,
                &IsomorphicJson {
                    isomorphic: c.equivalent,
                    primitive: c.primitive.as_ref().map(CochainDto::from_cochain),
                    witness: c.witness.as_ref().map(matrix_to_rows),
                },
            ))
        }
    }
}

fn abelian(mode: AbelianMode, file: &Path) -> leibder::Result<Outcome> {
    match mode {
        AbelianMode::Build => {
            let b: AbelianBuildDto = load(file)?;
            let base = b.base.to_pair("base")?;
            let rep = b.rep.to_leibder("rep", &base.algebra)?;
            let cocycle = b.cocycle.to_cochain("cocycle")?;
            let e = build_abelian_extension(&AbelianExtensionData { base, rep, cocycle })?;
            Ok(ok(&ExtensionJson { extension: ExtensionDto::from_diagram(&e) }))
        }
        AbelianMode::Classify => {
            let b: AbelianClassifyDto = load(file)?;
            let base = b.base.to_pair("base")?;
            let rep = b.rep.to_leibder("rep", &base.algebra)?;
            let e = b.extension.to_diagram("extension", base.dim(), rep.mdim())?;
            let c = classify_abelian_extension(&e, &base, &rep)?;
            Ok(ok(&ClassJson {
                cocycle: LeibDerCochainDto::from_cochain(&c.cocycle),
                class_zero: c.primitive.is_some(),
                primitive: c.primitive.as_ref().map(LeibDerCochainDto::from_cochain),
            }))
        }
    }
}

#[derive(Serialize)]
struct ExtendJson {
    extensible: bool,
    obstruction_class_nonzero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi_h: Option<Rows>,
}

fn extend_derivation(file: &Path) -> leibder::Result<Outcome> {
    let b: ExtendDerivationDto = load(file)?;
    let base = b.base.to_algebra("base")?;
    let d = base.dim();
    let phi_g = matrix_from_rows("phi_g", &b.phi_g, d, d)?;
    let phi_a = square_matrix("phi_a", &b.phi_a)?;
    let e = b.extension.to_diagram("extension", d, phi_a.rows())?;
    let ob = obstruction_class(&e, &base, &phi_g, &phi_a)?;
    let phi_h = extend_derivation_pair(&e, &base, &phi_g, &phi_a)?;
    debug_assert_eq!(ob.lambda.is_some(), phi_h.is_some());
    let extensible = phi_h.is_some();
    Ok(verdict(
        extensible,
        &ExtendJson { extensible, obstruction_class_nonzero: !extensible, phi_h: phi_h.as_ref().map(matrix_to_rows) },
    ))
}

#[derive(Serialize)]
struct DeformCheckJson {
    deformation: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violations: Vec<ViolationJson>,
}

#[derive(Serialize)]
struct InfinitesimalJson {
    order: usize,
    cocycle: bool,
    term: LeibDerCochainDto,
}

#[derive(Serialize)]
struct ObstructionJson {
    cocycle: bool,
    extensible: bool,
    obstruction: LeibDerCochainDto,
}

#[derive(Serialize)]
struct DeformExtendJson {
    extensible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    deformation: Option<DeformationDto>,
}

#[derive(Serialize)]
struct TrivializeJson {
    trivialized: bool,
    obstructed_at: Option<usize>,
    iso: Vec<Rows>,
    result: DeformationDto,
}

fn deform(mode: DeformMode, file: &Path) -> leibder::Result<Outcome> {
    let dto: DeformationDto = load(file)?;
    let def = dto.to_deformation("")?;
    match mode {
        DeformMode::Check => {
            let r = check_deformation(&def);
            Ok(verdict(r.passed(), &DeformCheckJson { deformation: r.passed(), violations: violations(&r) }))
        }
        DeformMode::Infinitesimal => {
            let i = infinitesimal(&def)?;
            Ok(verdict(
                i.cocycle,
                &InfinitesimalJson {
                    order: i.order,
                    cocycle: i.cocycle,
                    term: LeibDerCochainDto::from_cochain(&i.term),
                },
            ))
        }
        DeformMode::Obstruction => {
            let ob = obstruction(&def)?;
            let extensible = extend_deformation(&def)?.is_some();
            Ok(ok(&ObstructionJson {
                cocycle: ob.cocycle,
                extensible,
                obstruction: LeibDerCochainDto::from_cochain(&ob.ob),
            }))
        }
        DeformMode::Extend => {
            let next = extend_deformation(&def)?;
            Ok(verdict(
                next.is_some(),
                &DeformExtendJson {
                    extensible: next.is_some(),
                    deformation: next.as_ref().map(DeformationDto::from_deformation),
                },
            ))
        }
        DeformMode::Trivialize => {
            let t = trivialize(&def)?;
            let done = t.obstructed_at.is_none();
            Ok(verdict(
                done,
                &TrivializeJson {
                    trivialized: done,
                    obstructed_at: t.obstructed_at,
                    iso: t.iso.coefficients().iter().map(matrix_to_rows).collect(),
                    result: DeformationDto::from_deformation(&t.result),
                },
            ))
        }
    }
}

#[derive(Serialize)]
struct TripleJson {
    pair: PairDto,
    rep: RepresentationDto,
    cocycle: LeibDerCochainDto,
}

#[derive(Serialize)]
struct TwoVectorJson {
    source: Rows,
    target: Rows,
    object_bracket: Vec<Vec<Vec<Q>>>,
    bracket: Vec<Vec<Vec<Q>>>,
    jacobiator: Vec<Vec<Vec<Vec<Q>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    derivation: Option<TwoDerivationJson>,
}

#[derive(Serialize)]
struct TwoDerivationJson {
    d0: Rows,
    d1: Rows,
    natural: Vec<Vec<Vec<Q>>>,
}

fn nested(m: &Multilinear) -> Vec<Vec<Vec<Q>>> {
    let sizes = m.sizes();
    (0..sizes[0]).map(|i| (0..sizes[1]).map(|j| m.at(&[i, j]).iter().cloned().map(Q).collect()).collect()).collect()
}

fn nested3(m: &Multilinear) -> Vec<Vec<Vec<Vec<Q>>>> {
    let n = m.sizes()[0];
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| m.at(&[i, j, k]).iter().cloned().map(Q).collect()).collect()).collect())
        .collect()
}

fn sh(mode: ShMode, file: &Path) -> leibder::Result<Outcome> {
    let (s, th) = load::<ShDto>(file)?.to_sh("")?;
    let need_theta =
        || th.clone().ok_or_else(|| Error::Invalid("this command needs a homotopy derivation (`theta`)".into()));
    match mode {
        ShMode::Skeletal => {
            let t = skeletal_to_triple(&s, &need_theta()?)?;
            Ok(ok(&TripleJson {
                pair: PairDto::from_pair(&t.pair),
                rep: RepresentationDto::from_leibder(&t.rep),
                cocycle: LeibDerCochainDto::from_cochain(&t.cocycle),
            }))
        }
        ShMode::Strict => {
            let c = strict_to_crossed(&s, &need_theta()?)?;
            Ok(ok(&CrossedDto::from_crossed(&c)))
        }
        ShMode::TwoVector => {
            let v = to_two_vector(&s)?;
            let derivation = th.as_ref().map(|th| to_two_derivation(&s, th)).transpose()?.map(|d| TwoDerivationJson {
                d0: matrix_to_rows(&d.d0),
                d1: matrix_to_rows(&d.d1),
                natural: nested(&d.nat),
            });
            Ok(ok(&TwoVectorJson {
                source: matrix_to_rows(&v.source),
                target: matrix_to_rows(&v.target),
                object_bracket: nested(&v.object_bracket),
                bracket: nested(&v.bracket),
                jacobiator: nested3(&v.jacobiator),
                derivation,
            }))
        }
    }
}
