mod common;

use common::*;
use georenyi::channels::{max_entangled, pauli_z, swap, BipartiteChannel, Channel};
use georenyi::divergences::{channel_belavkin_staszewski, channel_geometric, channel_max_relative, geometric, Divergence};
use georenyi::linalg::{self, c, kron, partial_trace, CMatrix, Hermitian};
use proptest::prelude::*;

fn value(d: Divergence) -> f64 {
    d.finite().expect("finite divergence")
}

fn assert_choi(n: &Channel, kraus: &[CMatrix]) {
    assert!(max_abs_diff(n.choi().matrix(), &choi_from_kraus(kraus)) < 1e-12);
}

fn marginal_is_identity(n: &Channel) -> bool {
    let m = partial_trace(n.choi().matrix(), &n.dims(), &[1]).unwrap();
    max_abs_diff(&m, &CMatrix::identity(n.d_in(), n.d_in())) < 1e-9
}

fn op(rows: usize, cols: usize, r: usize, col: usize, v: f64) -> CMatrix {
    let mut m = CMatrix::zeros(rows, cols);
    m[(r, col)] = c(v, 0.0);
    m
}

#[test]
fn zoo_matches_kraus_oracles() {
    let p: f64 = 0.3;
    let id2 = CMatrix::identity(2, 2);
    let x = linalg::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let y = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    let z = pauli_z();
    let s = |w: f64| c(w.sqrt(), 0.0);
    assert_choi(
        &Channel::depolarizing(2, p).unwrap(),
        &[&id2 * s(1.0 - 3.0 * p / 4.0), &x * s(p / 4.0), &y * s(p / 4.0), &z * s(p / 4.0)],
    );
    assert_choi(&Channel::dephasing(p).unwrap(), &[&id2 * s(1.0 - p), &z * s(p)]);
    let embed = linalg::from_real(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    assert_choi(
        &Channel::erasure(2, p).unwrap(),
        &[&embed * s(1.0 - p), op(3, 2, 2, 0, p.sqrt()), op(3, 2, 2, 1, p.sqrt())],
    );
    let q: f64 = 0.2;
    assert_choi(
        &Channel::dephrasure(p, q).unwrap(),
        &[
            &embed * s((1.0 - p) * (1.0 - q)),
            &embed * &z * s(p * (1.0 - q)),
            op(3, 2, 2, 0, q.sqrt()),
            op(3, 2, 2, 1, q.sqrt()),
        ],
    );
    let (g, n): (f64, f64) = (0.4, 0.3);
    let a1 = linalg::from_real(2, 2, &[1.0, 0.0, 0.0, (1.0 - g).sqrt()]) * s(1.0 - n);
    let a2 = op(2, 2, 0, 1, (g * (1.0 - n)).sqrt());
    let a3 = linalg::from_real(2, 2, &[(1.0 - g).sqrt(), 0.0, 0.0, 1.0]) * s(n);
    let a4 = op(2, 2, 1, 0, (g * n).sqrt());
    let sum = [&a1, &a2, &a3, &a4].iter().fold(CMatrix::zeros(2, 2), |acc, k| acc + k.adjoint() * *k);
    assert!(max_abs_diff(&sum, &id2) < 1e-12);
    assert_choi(&Channel::generalized_amplitude_damping(g, n).unwrap(), &[a1, a2, a3, a4]);
}

#[test]
fn endpoint_channels() {
    let full = Channel::depolarizing(2, 1.0).unwrap();
    assert!(max_abs_diff(full.choi().matrix(), &(CMatrix::identity(4, 4) * c(0.5, 0.0))) < 1e-14);
    let clean = Channel::erasure(2, 0.0).unwrap();
    assert!(marginal_is_identity(&clean));
    assert_eq!(clean.choi().eigh().rank(), 1);
    assert!(max_abs_diff(Channel::identity(3).choi().matrix(), &max_entangled(3)) < 1e-14);
}

#[test]
fn swap_dephase_matches_kraus_oracle() {
    let (p, phi): (f64, f64) = (0.5, std::f64::consts::PI);
    let e = num_complex::Complex64::from_polar(1.0, phi);
    let u = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), e, e, e * e]));
    let kraus = [swap(2) * c(p.sqrt(), 0.0), &u * swap(2) * c((1.0 - p).sqrt(), 0.0)];
    let b = BipartiteChannel::swap_dephase(p, phi).unwrap();
    assert!(max_abs_diff(b.channel().choi().matrix(), &choi_from_kraus(&kraus)) < 1e-12);
    let pure = BipartiteChannel::swap_dephase(1.0, 1.0).unwrap();
    let flat = BipartiteChannel::swap_dephase(0.3, 0.0).unwrap();
    let swap_choi = choi_from_kraus(&[swap(2)]);
    assert!(max_abs_diff(pure.channel().choi().matrix(), &swap_choi) < 1e-12);
    assert!(max_abs_diff(flat.channel().choi().matrix(), &swap_choi) < 1e-12);
    let m = partial_trace(b.channel().choi().matrix(), &b.dims(), &[2, 3]).unwrap();
    assert!(max_abs_diff(&m, &CMatrix::identity(4, 4)) < 1e-9);
}

#[test]
fn composition_matches_basis_application() {
    let p = 0.35;
    let first = Channel::amplitude_damping(p).unwrap();
    let second = Channel::dephasing(p).unwrap();
    let both = second.after(&first).unwrap();
    for i in 0..2 {
        for k in 0..2 {
            let unit = op(2, 2, i, k, 1.0);
            let expect = second.apply_operator(&first.apply_operator(&unit));
            assert!(max_abs_diff(&both.apply_operator(&unit), &expect) < 1e-13);
        }
    }
    let n = Channel::generalized_amplitude_damping(0.2, 0.4).unwrap();
    assert!(max_abs_diff(Channel::identity(2).after(&n).unwrap().choi().matrix(), n.choi().matrix()) < 1e-14);
    assert!(max_abs_diff(n.after(&Channel::identity(2)).unwrap().choi().matrix(), n.choi().matrix()) < 1e-14);
    assert!(Channel::erasure(2, 0.1).unwrap().after(&Channel::erasure(2, 0.1).unwrap()).is_err());
}

#[test]
fn tensor_dimensions_and_action() {
    let mut r = rng(21);
    let k1 = random_kraus(&mut r, 2, 3, 2);
    let k2 = random_kraus(&mut r, 2, 2, 2);
    let n1 = Channel::from_kraus(&k1).unwrap();
    let n2 = Channel::from_kraus(&k2).unwrap();
    let t = n1.tensor(&n2).unwrap();
    assert_eq!((t.d_in(), t.d_out()), (4, 6));
    assert_eq!(t.choi().dim(), 24);
    let joint: Vec<CMatrix> = k1.iter().flat_map(|a| k2.iter().map(move |b| kron(a, b))).collect();
    assert!(max_abs_diff(t.choi().matrix(), &choi_from_kraus(&joint)) < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_channels_preserve_trace(seed in any::<u64>(), d_in in 1usize..=3, d_out in 1usize..=3, k in 1usize..=3) {
        let mut r = rng(seed);
        let k = k.max(d_in.div_ceil(d_out));
        let kraus = random_kraus(&mut r, d_in, d_out, k);
        let n = Channel::from_kraus(&kraus).unwrap();
        prop_assert!(marginal_is_identity(&n));
        prop_assert!(max_abs_diff(n.choi().matrix(), &choi_from_kraus(&kraus)) < 1e-12);
        let rho = random_state(&mut r, 2 * d_in);
        let out = n.apply(&rho, 2).unwrap();
        let expect = apply_kraus(
            &kraus.iter().map(|a| kron(&CMatrix::identity(2, 2), a)).collect::<Vec<_>>(),
            rho.matrix(),
        );
        prop_assert!(max_abs_diff(out.matrix(), &expect) < 1e-12);
        prop_assert!((out.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn geometric_channel_divergence_is_additive(seed in any::<u64>(), alpha in 1.0f64..=2.0) {
        prop_assume!(alpha > 1.0);
        let mut r = rng(seed);
        let (n1, m1) = (random_channel(&mut r, 2, 2, 2), full_rank_channel(&mut r, 2, 0.3));
        let (n2, m2) = (random_channel(&mut r, 2, 2, 2), full_rank_channel(&mut r, 2, 0.3));
        let joint = value(channel_geometric(&n1.tensor(&n2).unwrap(), &m1.tensor(&m2).unwrap(), alpha).unwrap());
        let parts = value(channel_geometric(&n1, &m1, alpha).unwrap()) + value(channel_geometric(&n2, &m2, alpha).unwrap());
        prop_assert!((joint - parts).abs() <= 1e-8, "{joint} vs {parts}");
    }

    #[test]
    fn chain_rule(seed in any::<u64>(), alpha in 1.0f64..=2.0) {
        prop_assume!(alpha > 1.0);
        let mut r = rng(seed);
        let rho = random_state(&mut r, 4);
        let sigma = random_state(&mut r, 4);
        let n = random_channel(&mut r, 2, 2, 2);
        let m = full_rank_channel(&mut r, 2, 0.3);
        let lhs = value(geometric(&n.apply(&rho, 2).unwrap(), &m.apply(&sigma, 2).unwrap(), alpha).unwrap());
        let rhs = value(geometric(&rho, &sigma, alpha).unwrap()) + value(channel_geometric(&n, &m, alpha).unwrap());
        prop_assert!(lhs <= rhs + 1e-8);
    }

    #[test]
    fn subadditive_under_composition(seed in any::<u64>(), alpha in 1.0f64..=2.0) {
        prop_assume!(alpha > 1.0);
        let mut r = rng(seed);
        let (n1, m1) = (random_channel(&mut r, 2, 2, 2), full_rank_channel(&mut r, 2, 0.3));
        let (n2, m2) = (random_channel(&mut r, 2, 2, 2), full_rank_channel(&mut r, 2, 0.3));
        let lhs = value(channel_geometric(&n2.after(&n1).unwrap(), &m2.after(&m1).unwrap(), alpha).unwrap());
        let rhs = value(channel_geometric(&n1, &m1, alpha).unwrap()) + value(channel_geometric(&n2, &m2, alpha).unwrap());
        prop_assert!(lhs <= rhs + 1e-8);
    }

    #[test]
    fn channel_divergence_ordering(seed in any::<u64>(), alpha in 1.0f64..=2.0) {
        prop_assume!(alpha > 1.0);
        let mut r = rng(seed);
        let n = random_channel(&mut r, 2, 2, 2);
        let m = full_rank_channel(&mut r, 2, 0.2);
        let hat = value(channel_geometric(&n, &m, alpha).unwrap());
        prop_assert!(hat <= value(channel_max_relative(&n, &m).unwrap()) + 1e-9);
        prop_assert!(value(channel_belavkin_staszewski(&n, &m).unwrap()) <= hat + 1e-8);
    }
}

#[test]
fn channel_divergence_examples() {
    let d1 = Channel::depolarizing(2, 0.1).unwrap();
    let d2 = Channel::depolarizing(2, 0.2).unwrap();
    let hat = value(channel_geometric(&d1, &d2, 1.5).unwrap());
    let max = value(channel_max_relative(&d1, &d2).unwrap());
    assert!(hat > 0.0 && hat <= max);
    assert_eq!(value(channel_geometric(&d1, &d1, 1.7).unwrap()).abs() < 1e-12, true);
    let id = Channel::identity(2);
    let ad = Channel::amplitude_damping(1.0).unwrap();
    assert_eq!(channel_geometric(&id, &ad, 1.5).unwrap(), Divergence::Infinite);
    assert_eq!(channel_max_relative(&id, &ad).unwrap(), Divergence::Infinite);
    let _ = Hermitian::identity(1);
}
