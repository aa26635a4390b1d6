//! Fixtures and random transformations shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use realpi0::intlattice::{IntMatrix, RatMatrix};
use realpi0::realform::{e7_preset, involution_from_matrix, E7Form, Involution};
use realpi0::rootdata::{
    build_preset, CartanType, DisplayWeight, Isogeny, NamedVector, PresetSpec, RootDatum, SimpleReal,
};

pub fn preset(spec: PresetSpec) -> (RootDatum, Involution) {
    let (rd, inv) = build_preset(&spec).unwrap_or_else(|e| panic!("{spec:?}: {e}"));
    (rd, inv.expect("preset with a real form"))
}

pub fn simple(cartan: CartanType, rank: usize, isogeny: Isogeny, real: SimpleReal) -> (RootDatum, Involution) {
    preset(PresetSpec::Simple { cartan, rank, isogeny, real: Some(real) })
}

/// Every group appearing in the fixed criteria, with its named real form.
pub fn fixtures() -> Vec<(RootDatum, Involution)> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push(preset(PresetSpec::Gl { n }));
    }
    for n in 2..=9 {
        for p in 0..=n / 2 {
            out.push(preset(PresetSpec::So { p, q: n - p }));
        }
    }
    for n in (2..=10).step_by(2) {
        for p in 0..=n / 2 {
            out.push(preset(PresetSpec::Pso { p, q: n - p }));
        }
    }
    for form in [E7Form::EV, E7Form::EVI, E7Form::EVII] {
        out.push(e7_preset(form).unwrap());
    }
    for (t, r) in [(CartanType::G, 2), (CartanType::F, 4), (CartanType::E, 6), (CartanType::E, 7), (CartanType::E, 8)] {
        out.push(simple(t, r, Isogeny::SimplyConnected, SimpleReal::Split));
    }
    out.push(simple(CartanType::E, 6, Isogeny::Adjoint, SimpleReal::Split));
    for n in 1..=5 {
        out.push(preset(PresetSpec::TorusSplit { n }));
        out.push(preset(PresetSpec::TorusCompact { n }));
    }
    out.push(preset(PresetSpec::TorusWeil));
    out
}

/// A random element of GL(n, ℤ) and its inverse.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut g = IntMatrix::identity(n);
    if n > 1 {
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            match rng.gen_range(0..6) {
                0 => g.swap_rows(i, j),
                1 => g.negate_row(i),
                _ => {
                    let c = BigInt::from(rng.gen_range(-2i64..=2));
                    g.add_row_multiple(i, j, &c);
                }
            }
        }
    } else if n == 1 && rng.gen_bool(0.5) {
        g = g.neg();
    }
    let gi = RatMatrix::from_int(&g).inverse().expect("invertible").to_int().expect("unimodular");
    (g, gi)
}

/// The same group written in the basis of `X∨` given by `g`: cocharacters
/// `ν ↦ gν`, weights `λ ↦ g⁻ᵀλ`, `θ ↦ gθg⁻¹`.
pub fn change_basis(rd: &RootDatum, inv: &Involution, g: &IntMatrix, gi: &IntMatrix) -> (RootDatum, Involution) {
    let git = gi.transpose();
    let coroots = rd.coroot_generators().iter().map(|v| g.apply_rational(v).unwrap()).collect();
    let weights = rd
        .display_weights()
        .iter()
        .map(|w| DisplayWeight { label: w.label.clone(), weight: git.apply_rational(&w.weight).unwrap() })
        .collect();
    let named = rd
        .named_vectors()
        .iter()
        .map(|v| NamedVector { name: v.name.clone(), vector: g.apply_rational(&v.vector).unwrap() })
        .collect();
    let mut out = RootDatum::new(rd.name(), rd.kind(), rd.rank(), coroots)
        .unwrap()
        .with_display_weights(weights)
        .unwrap()
        .with_named_vectors(named)
        .unwrap();
    if let Some(note) = rd.lift_note() {
        out = out.with_lift_note(note);
    }
    let theta = g.checked_mul(inv.theta()).unwrap().checked_mul(gi).unwrap();
    let inv = involution_from_matrix(&out, &theta).unwrap_or_else(|e| panic!("{}: {e}", rd.name()));
    (out, inv)
}

/// A random involution of ℤⁿ: a conjugate of a block sum of `1`, `−1` and
/// the swap `[[0,1],[1,0]]`, which covers every conjugacy class.
pub fn random_torus_involution<R: Rng>(rng: &mut R, n: usize) -> (RootDatum, Involution) {
    let mut d = IntMatrix::zeros(0, 0);
    let mut left = n;
    while left > 0 {
        let block = match rng.gen_range(0..3) {
            0 => IntMatrix::identity(1),
            1 => IntMatrix::identity(1).neg(),
            _ if left >= 2 => IntMatrix::from_rows(2, &[[0, 1], [1, 0]]).unwrap(),
            _ => IntMatrix::identity(1).neg(),
        };
        left -= block.rows();
        d = d.block_diag(&block);
    }
    let (g, gi) = random_unimodular(rng, n, 3 * n + 2);
    let rd = RootDatum::torus(format!("random torus of rank {n}"), n);
    let theta = g.checked_mul(&d).unwrap().checked_mul(&gi).unwrap();
    let inv = involution_from_matrix(&rd, &theta).unwrap();
    (rd, inv)
}
