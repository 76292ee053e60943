//! Named small algebras and seeded random generators for valid and
//! corrupted structures.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cohomology::{cohomology, Cochain, LeibDerCochain};
use crate::deformations::{apply_equivalence, extend_deformation, Deformation, FormalIsomorphism};
use crate::exactlin::{frac, int, zero_vec, Matrix, Scalar};
use crate::leibniz::{
    check_leibder_representation, check_leibniz, derivations, LeibDerPair, LeibDerRepresentation, LeibnizAlgebra,
    Representation,
};
use crate::shleibniz::{
    gauge_by_b, gauge_by_f2, triple_to_skeletal, CrossedModule, HomotopyDerivation, Triple, TwoTermShLeibniz,
};
use crate::tensor::{flat_index, Multilinear};

/// `[e_2, e_2] = e_1`, the smallest non-Lie Leibniz algebra.
pub fn lambda2() -> LeibnizAlgebra {
    LeibnizAlgebra::from_entries(2, &[(1, 1, 0, 1)])
}

/// The non-abelian 2-dimensional Lie algebra `[e_1, e_2] = e_1`.
pub fn lie2() -> LeibnizAlgebra {
    LeibnizAlgebra::from_entries(2, &[(0, 1, 0, 1), (1, 0, 0, -1)])
}

/// `[e_1, e_2] = e_1` with every other bracket zero.
pub fn half_lie2() -> LeibnizAlgebra {
    LeibnizAlgebra::from_entries(2, &[(0, 1, 0, 1)])
}

/// Basis `(e, f, h)`.
pub fn sl2() -> LeibnizAlgebra {
    LeibnizAlgebra::from_entries(
        3,
        &[(0, 1, 2, 1), (1, 0, 2, -1), (2, 0, 0, 2), (0, 2, 0, -2), (2, 1, 1, -2), (1, 2, 1, 2)],
    )
}

pub fn heisenberg() -> LeibnizAlgebra {
    LeibnizAlgebra::from_entries(3, &[(0, 1, 2, 1), (1, 0, 2, -1)])
}

/// `[e_2, e_2] = [e_3, e_3] = e_1`.
pub fn nilpotent3() -> LeibnizAlgebra {
    LeibnizAlgebra::from_entries(3, &[(1, 1, 0, 1), (2, 2, 0, 1)])
}

pub fn seed_algebras(max_dim: usize) -> Vec<(&'static str, LeibnizAlgebra)> {
    let all = vec![
        ("abelian1", LeibnizAlgebra::abelian(1)),
        ("abelian2", LeibnizAlgebra::abelian(2)),
        ("lambda2", lambda2()),
        ("lie2", lie2()),
        ("half_lie2", half_lie2()),
        ("abelian3", LeibnizAlgebra::abelian(3)),
        ("sl2", sl2()),
        ("heisenberg", heisenberg()),
        ("nilpotent3", nilpotent3()),
        ("lambda2+k", lambda2().direct_sum(&LeibnizAlgebra::abelian(1))),
    ];
    all.into_iter().filter(|(_, a)| a.dim() <= max_dim).collect()
}

pub fn small_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    match rng.gen_range(0..10) {
        0 => frac(rng.gen_range(-3..=3), 2),
        _ => int(rng.gen_range(-2..=2)),
    }
}

/// About half the entries zero.
pub fn sparse_scalars<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| if rng.gen_bool(0.5) { int(0) } else { small_scalar(rng) }).collect()
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_vec(rows, cols, sparse_scalars(rng, rows * cols)).expect("shape")
}

/// Unit lower times unit upper triangular, so always invertible.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let l = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => int(1),
        std::cmp::Ordering::Greater => int(rng.gen_range(-1..=1)),
        std::cmp::Ordering::Less => int(0),
    });
    let u = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => int(if rng.gen_bool(0.2) { 2 } else { 1 }),
        std::cmp::Ordering::Less => int(rng.gen_range(-1..=1)),
        std::cmp::Ordering::Greater => int(0),
    });
    &l * &u
}

/// A seed algebra of dimension at most `max_dim` in a random basis.
pub fn random_algebra<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> LeibnizAlgebra {
    let seeds = seed_algebras(max_dim);
    let (_, a) = seeds.choose(rng).expect("at least one seed");
    let p = random_invertible(rng, a.dim());
    let b = a.change_basis(&p).expect("invertible");
    debug_assert!(check_leibniz(&b).passed());
    b
}

pub fn random_derivation<R: Rng + ?Sized>(rng: &mut R, a: &LeibnizAlgebra) -> Matrix {
    let d = a.dim();
    let mut acc = Matrix::zeros(d, d);
    for basis in derivations(a) {
        if rng.gen_bool(0.6) {
            acc = &acc + &basis.scale(&int(rng.gen_range(-2..=2)));
        }
    }
    acc
}

pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> LeibDerPair {
    let a = random_algebra(rng, max_dim);
    let phi = random_derivation(rng, &a);
    LeibDerPair::new(a, phi).expect("square")
}

/// A LeibDer representation of `p` of dimension at most `max_m`.
pub fn random_representation<R: Rng + ?Sized>(rng: &mut R, p: &LeibDerPair, max_m: usize) -> LeibDerRepresentation {
    let d = p.dim();
    let pick = if d <= max_m { rng.gen_range(0..5) } else { 0 };
    let r = match pick {
        1 => LeibDerRepresentation::adjoint(p),
        2 => LeibDerRepresentation::new(Representation::right_adjoint(&p.algebra), p.phi.clone()).expect("square"),
        3 => LeibDerRepresentation::new(Representation::symmetric_adjoint(&p.algebra), p.phi.clone()).expect("square"),
        4 if d < max_m => {
            let t = trivial_rep(rng, p, 1);
            LeibDerRepresentation::adjoint(p).direct_sum(&t).expect("same base")
        }
        _ => {
            let m = rng.gen_range(1..=max_m.max(1));
            trivial_rep(rng, p, m)
        }
    };
    let q = random_invertible(rng, r.mdim());
    let r = r.change_module_basis(&q).expect("invertible");
    debug_assert!(check_leibder_representation(p, &r).expect("same base").passed());
    r
}

fn trivial_rep<R: Rng + ?Sized>(rng: &mut R, p: &LeibDerPair, m: usize) -> LeibDerRepresentation {
    LeibDerRepresentation::trivial(&p.algebra, random_matrix(rng, m, m)).expect("square")
}

pub fn random_cochain<R: Rng + ?Sized>(rng: &mut R, degree: usize, gdim: usize, mdim: usize) -> Cochain {
    let n = gdim.pow(degree as u32) * mdim;
    Cochain::new(degree, gdim, mdim, sparse_scalars(rng, n)).expect("length")
}

pub fn random_leibder_cochain<R: Rng + ?Sized>(rng: &mut R, degree: usize, gdim: usize, mdim: usize) -> LeibDerCochain {
    let top = random_cochain(rng, degree, gdim, mdim);
    let shadow = (degree >= 2).then(|| random_cochain(rng, degree - 1, gdim, mdim));
    LeibDerCochain::new(top, shadow).expect("shape")
}

/// A bracket that fails the Leibniz identity, found by rejection from
/// random perturbations of a seed.
pub fn corrupted_algebra<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> LeibnizAlgebra {
    loop {
        let a = random_algebra(rng, max_dim);
        let d = a.dim();
        let mut c = a.constants().to_vec();
        let k = rng.gen_range(0..c.len());
        c[k] += int(if rng.gen_bool(0.5) { 1 } else { -1 });
        let b = LeibnizAlgebra::new(d, c).expect("length");
        if !check_leibniz(&b).passed() {
            return b;
        }
    }
}

/// A valid algebra with a map that is not a derivation of it.
pub fn corrupted_pair<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> LeibDerPair {
    loop {
        let a = random_algebra(rng, max_dim);
        let d = a.dim();
        let m = random_matrix(rng, d, d);
        if !crate::leibniz::check_derivation(&a, &m).expect("square").passed() {
            return LeibDerPair::new(a, m).expect("square");
        }
    }
}

/// A random combination of the echelon 2-cocycles with adjoint coefficients.
pub fn random_adjoint_cocycle<R: Rng + ?Sized>(rng: &mut R, p: &LeibDerPair) -> LeibDerCochain {
    let d = p.dim();
    let z = cohomology(p, &LeibDerRepresentation::adjoint(p), 2).expect("adjoint representation");
    let mut acc = LeibDerCochain::zero(2, d, d);
    for c in z.cocycles {
        if rng.gen_bool(0.5) {
            acc = acc.add(&c.scale(&int(rng.gen_range(-1..=1)))).expect("same shape");
        }
    }
    acc
}

pub fn random_iso<R: Rng + ?Sized>(rng: &mut R, d: usize, order: usize) -> FormalIsomorphism {
    let mut psi = vec![Matrix::identity(d)];
    psi.extend((0..order).map(|_| random_matrix(rng, d, d)));
    FormalIsomorphism::new(psi).expect("psi_0 = id")
}

/// A valid order-`order` deformation: grown one order at a time from random
/// cocycles (restarting from the constant deformation when obstructed), then conjugated by
/// a random formal isomorphism.
pub fn random_deformation<R: Rng + ?Sized>(rng: &mut R, max_dim: usize, order: usize) -> Deformation {
    let base = random_pair(rng, max_dim);
    let d = base.dim();
    let mut def = Deformation::constant(base.clone(), 0);
    for _ in 0..order {
        let z = random_adjoint_cocycle(rng, &base);
        let grown = extend_deformation(&def).expect("valid deformation").map(|next| {
            let n = next.order();
            let mut mu = next.mu().to_vec();
            let mut phi = next.phi().to_vec();
            mu[n] = mu[n].add(&z.top).expect("same shape");
            phi[n] = &phi[n] + &z.shadow.as_ref().expect("degree 2").to_linear_map().expect("degree 1");
            Deformation::new(base.clone(), mu, phi).expect("shapes")
        });
        def = grown.unwrap_or_else(|| Deformation::constant(base.clone(), def.order() + 1));
    }
    apply_equivalence(&def, &random_iso(rng, d, order)).expect("matching order")
}

pub fn random_multilinear<R: Rng + ?Sized>(rng: &mut R, sizes: Vec<usize>, out: usize) -> Multilinear {
    let n = sizes.iter().product::<usize>() * out;
    Multilinear::new(sizes, out, sparse_scalars(rng, n)).expect("length")
}

/// A random triple over a pair of dimension at most 2 with a random
/// combination of the echelon 3-cocycles.
pub fn random_triple<R: Rng + ?Sized>(rng: &mut R) -> Triple {
    let pair = random_pair(rng, 2);
    let rep = random_representation(rng, &pair, 2);
    let (d, m) = (pair.dim(), rep.mdim());
    let z = cohomology(&pair, &rep, 3).expect("valid representation");
    let mut cocycle = LeibDerCochain::zero(3, d, m);
    for c in z.cocycles {
        cocycle = cocycle.add(&c.scale(&small_scalar(rng))).expect("same shape");
    }
    Triple { pair, rep, cocycle }
}

/// A skeletal structure from a random triple, moved by random `f2` and `B` gauges.
pub fn random_skeletal<R: Rng + ?Sized>(rng: &mut R) -> (TwoTermShLeibniz, HomotopyDerivation) {
    let (s, th) = triple_to_skeletal(&random_triple(rng)).expect("cocycle");
    let (n0, n1) = s.dims();
    let (s, th, _) = gauge_by_f2(&s, &th, &random_multilinear(rng, vec![n0, n0], n1)).expect("shape");
    let (th, _) = gauge_by_b(&s, &th, &random_matrix(rng, n1, n0)).expect("shape");
    (s, th)
}

/// One of: `g = h` with `dt = id` and adjoint actions (in a random basis of
/// `g`), or `dt = 0` with `g` abelian carrying a random representation.
pub fn random_crossed<R: Rng + ?Sized>(rng: &mut R) -> CrossedModule {
    let h = random_pair(rng, 2);
    if rng.gen_bool(0.5) {
        let p = random_invertible(rng, h.dim());
        CrossedModule {
            g: h.change_basis(&p).expect("invertible"),
            dt: p.clone(),
            action: Representation::adjoint(&h.algebra).change_module_basis(&p).expect("invertible"),
            h,
        }
    } else {
        let rep = random_representation(rng, &h, 2);
        CrossedModule {
            g: LeibDerPair::new(LeibnizAlgebra::abelian(rep.mdim()), rep.phi_m.clone()).expect("square"),
            dt: Matrix::zeros(h.dim(), rep.mdim()),
            action: rep.rep,
            h,
        }
    }
}

/// Sparse `(tuple, coordinate, value)` entries.
pub type Entries<'a> = &'a [(&'a [usize], usize, i64)];

pub fn sparse_multilinear(sizes: Vec<usize>, out: usize, entries: Entries) -> Multilinear {
    let mut data = zero_vec(sizes.iter().product::<usize>() * out);
    for (t, k, v) in entries {
        data[flat_index(&sizes, t) * out + k] = int(*v);
    }
    Multilinear::new(sizes, out, data).expect("length")
}

/// `d` lists the unit entries of the differential.
pub fn sh_from_entries(
    n0: usize,
    n1: usize,
    d: &[(usize, usize)],
    l00: Entries,
    l01: Entries,
    l10: Entries,
    l3: Entries,
) -> TwoTermShLeibniz {
    let mut dm = Matrix::zeros(n0, n1);
    for &(i, a) in d {
        dm[(i, a)] = int(1);
    }
    TwoTermShLeibniz::new(
        dm,
        sparse_multilinear(vec![n0, n0], n0, l00),
        sparse_multilinear(vec![n0, n1], n1, l01),
        sparse_multilinear(vec![n1, n0], n1, l10),
        sparse_multilinear(vec![n0, n0, n0], n1, l3),
    )
    .expect("shapes")
}

/// One structure per identity of `check_sh`, each violating only that identity.
pub fn sh_mutants() -> Vec<TwoTermShLeibniz> {
    vec![
        sh_from_entries(2, 1, &[(1, 0)], &[(&[0, 1], 0, -1)], &[], &[], &[]),
        sh_from_entries(2, 1, &[(0, 0)], &[(&[0, 1], 0, -1)], &[], &[], &[]),
        sh_from_entries(1, 2, &[(0, 1)], &[], &[(&[0, 1], 0, -1)], &[], &[]),
        sh_from_entries(1, 1, &[], &[(&[0, 0], 0, -1)], &[], &[], &[]),
        sh_from_entries(1, 1, &[], &[], &[(&[0, 0], 0, 1)], &[], &[]),
        sh_from_entries(1, 2, &[], &[], &[(&[0, 0], 1, 1)], &[(&[0, 0], 0, -1)], &[]),
        sh_from_entries(2, 1, &[], &[(&[1, 1], 0, 1)], &[], &[(&[0, 0], 0, -1)], &[]),
        sh_from_entries(2, 1, &[], &[], &[], &[(&[0, 1], 0, -1)], &[(&[0, 0, 1], 0, 1)]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn seeds_are_leibniz_except_half_lie_variants() {
        for (name, a) in seed_algebras(3) {
            assert!(check_leibniz(&a).passed(), "{name}");
        }
        // The mirror image of half_lie2 is only a left Leibniz algebra.
        let mirror = LeibnizAlgebra::from_entries(2, &[(1, 0, 0, 1)]);
        assert!(!check_leibniz(&mirror).passed());
    }

    #[test]
    fn generators_produce_valid_structures() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..30 {
            let p = random_pair(&mut rng, 3);
            assert!(p.check().passed());
            let r = random_representation(&mut rng, &p, 2);
            assert!(r.mdim() <= 2);
            assert!(check_leibder_representation(&p, &r).unwrap().passed());
            let q = random_invertible(&mut rng, 3);
            assert!(q.inverse().is_some());
        }
        for _ in 0..10 {
            assert!(!check_leibniz(&corrupted_algebra(&mut rng, 3)).passed());
            assert!(!corrupted_pair(&mut rng, 3).check().passed());
        }
        for _ in 0..20 {
            let (s, th) = random_skeletal(&mut rng);
            assert!(crate::shleibniz::check_homotopy_derivation(&s, &th).unwrap().passed());
            let c = random_crossed(&mut rng);
            assert!(
                crate::shleibniz::check_crossed(&c).unwrap().passed(),
                "{:?}",
                crate::shleibniz::check_crossed(&c).unwrap().rules()
            );
        }
        for _ in 0..5 {
            let def = random_deformation(&mut rng, 2, 2);
            assert!(crate::deformations::check_deformation(&def).passed());
        }
    }
}
