//! Property-based invariant suite over randomized operators and states.

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use hamsim_core::classical::{poisson_bracket, PhaseSpaceState};
use hamsim_core::infogeo::{fidelity, relative_entropy, von_neumann_entropy, RelEntropy};
use hamsim_core::tensor::{
    commutator_norm, exp_minus_iht, herm_eig, kron, ComplexMatrix, DensityOperator,
    HermitianOperator,
};

fn c64_strategy() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C64::new(re, im))
}

fn matrix_strategy(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(c64_strategy(), dim * dim).prop_map(move |entries| {
        ComplexMatrix::from_fn(dim, dim, |i, j| entries[i * dim + j])
    })
}

fn hermitian_strategy(dim: usize) -> impl Strategy<Value = HermitianOperator> {
    matrix_strategy(dim).prop_map(|a| {
        let sym = a
            .add(&a.conjugate_transpose())
            .unwrap()
            .scale(C64::new(0.5, 0.0));
        HermitianOperator::new(sym).unwrap()
    })
}

fn density_strategy(dim: usize) -> impl Strategy<Value = DensityOperator> {
    matrix_strategy(dim).prop_map(move |a| {
        let psd = a
            .matmul(&a.conjugate_transpose())
            .unwrap()
            .add(&ComplexMatrix::identity(dim).scale(C64::new(0.05, 0.0)))
            .unwrap();
        let tr = psd.trace().re;
        DensityOperator::single(psd.scale(C64::new(1.0 / tr, 0.0))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Tensor algebra ---------------------------------------------------------

    #[test]
    fn kron_is_associative(
        a in matrix_strategy(2),
        b in matrix_strategy(2),
        c in matrix_strategy(2),
    ) {
        let left = kron(&kron(&a, &b).unwrap(), &c).unwrap();
        let right = kron(&a, &kron(&b, &c).unwrap()).unwrap();
        prop_assert!(left.sub(&right).unwrap().max_abs_entry() <= 1e-12);
    }

    #[test]
    fn kron_respects_multiplication(
        a in matrix_strategy(2),
        b in matrix_strategy(2),
        c in matrix_strategy(2),
        d in matrix_strategy(2),
    ) {
        // (A (x) B)(C (x) D) = AC (x) BD
        let lhs = kron(&a, &b).unwrap().matmul(&kron(&c, &d).unwrap()).unwrap();
        let rhs = kron(
            &a.matmul(&c).unwrap(),
            &b.matmul(&d).unwrap(),
        ).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().max_abs_entry() <= 1e-10);
    }

    #[test]
    fn commutator_norm_is_symmetric_and_zero_on_self(
        h in hermitian_strategy(3),
        k in hermitian_strategy(3),
    ) {
        let hk = commutator_norm(&h, &k).unwrap();
        let kh = commutator_norm(&k, &h).unwrap();
        prop_assert!((hk - kh).abs() <= 1e-12);
        prop_assert!(commutator_norm(&h, &h).unwrap() <= 1e-12);
    }

    #[test]
    fn eigendecomposition_reconstructs(h in hermitian_strategy(4)) {
        let (vals, vecs) = herm_eig(&h).unwrap();
        // H = V diag(vals) V^dagger
        let diag = ComplexMatrix::from_fn(4, 4, |i, j| {
            if i == j { C64::new(vals[i], 0.0) } else { C64::new(0.0, 0.0) }
        });
        let rebuilt = vecs
            .matmul(&diag)
            .unwrap()
            .matmul(&vecs.conjugate_transpose())
            .unwrap();
        prop_assert!(rebuilt.sub(h.matrix()).unwrap().max_abs_entry() <= 1e-10);
        // Ascending order.
        for w in vals.windows(2) {
            prop_assert!(w[0] <= w[1] + 1e-12);
        }
    }

    #[test]
    fn matrix_exponential_group_property(h in hermitian_strategy(3), t in 0.0f64..2.0) {
        // e^{-iH t} e^{-iH t} = e^{-iH 2t}
        let u = exp_minus_iht(&h, t).unwrap();
        let uu = u.matmul(&u).unwrap();
        let u2 = exp_minus_iht(&h, 2.0 * t).unwrap();
        prop_assert!(uu.sub(&u2).unwrap().max_abs_entry() <= 1e-8);
        // Unitarity.
        let gram = u.conjugate_transpose().matmul(&u).unwrap();
        prop_assert!(
            gram.sub(&ComplexMatrix::identity(3)).unwrap().max_abs_entry() <= 1e-10
        );
    }

    #[test]
    fn unitary_conjugation_preserves_spectrum(
        h in hermitian_strategy(3),
        g in hermitian_strategy(3),
    ) {
        let u = exp_minus_iht(&g, 0.7).unwrap();
        let rotated = HermitianOperator::new(
            u.matmul(h.matrix()).unwrap().matmul(&u.conjugate_transpose()).unwrap(),
        ).unwrap();
        let (a, _) = herm_eig(&h).unwrap();
        let (b, _) = herm_eig(&rotated).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }

    // Density operators ------------------------------------------------------

    #[test]
    fn partial_trace_preserves_trace_and_positivity(rho in density_strategy(4)) {
        let rho = DensityOperator::new(rho.matrix().clone(), vec![2, 2]).unwrap();
        for keep in [&[0usize][..], &[1][..]] {
            let red = rho.partial_trace(keep).unwrap();
            prop_assert!((red.matrix().trace().re - 1.0).abs() <= 1e-9);
            let evs = red.eigenvalues().unwrap();
            prop_assert!(evs.iter().all(|v| *v >= -1e-9));
        }
    }

    #[test]
    fn entropy_is_nonnegative_and_bounded(rho in density_strategy(3)) {
        let s = von_neumann_entropy(&rho).unwrap();
        prop_assert!(s >= -1e-12);
        prop_assert!(s <= (3.0f64).ln() + 1e-9);
    }

    #[test]
    fn fidelity_is_symmetric_and_normalized(
        rho in density_strategy(3),
        sigma in density_strategy(3),
    ) {
        let f_rs = fidelity(&rho, &sigma).unwrap();
        let f_sr = fidelity(&sigma, &rho).unwrap();
        prop_assert!((f_rs - f_sr).abs() <= 1e-8);
        prop_assert!((-1e-9..=1.0 + 1e-9).contains(&f_rs));
        prop_assert!((fidelity(&rho, &rho).unwrap() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn relative_entropy_nonnegative(
        rho in density_strategy(3),
        sigma in density_strategy(3),
    ) {
        match relative_entropy(&rho, &sigma).unwrap() {
            RelEntropy::Finite(v) => prop_assert!(v >= -1e-10),
            RelEntropy::Infinite => {}
        }
        prop_assert!(relative_entropy(&rho, &rho).unwrap().finite().unwrap().abs() <= 1e-9);
    }

    // Classical bracket ------------------------------------------------------

    #[test]
    fn poisson_bracket_is_antisymmetric(
        q in proptest::collection::vec(-2.0f64..2.0, 2),
        p in proptest::collection::vec(-2.0f64..2.0, 2),
    ) {
        let s = PhaseSpaceState::new(q, p).unwrap();
        let f = |st: &PhaseSpaceState| st.q[0] * st.q[0] + st.p[1].sin();
        let g = |st: &PhaseSpaceState| st.q[1] * st.p[0];
        let fg = poisson_bracket(&f, &g, &s, 1e-5).unwrap();
        let gf = poisson_bracket(&g, &f, &s, 1e-5).unwrap();
        prop_assert!((fg + gf).abs() <= 2e-8);
    }

    #[test]
    fn canonical_pairs_bracket_to_one(
        q in proptest::collection::vec(-2.0f64..2.0, 2),
        p in proptest::collection::vec(-2.0f64..2.0, 2),
    ) {
        let s = PhaseSpaceState::new(q, p).unwrap();
        let q0 = |st: &PhaseSpaceState| st.q[0];
        let p0 = |st: &PhaseSpaceState| st.p[0];
        let q1 = |st: &PhaseSpaceState| st.q[1];
        prop_assert!((poisson_bracket(&q0, &p0, &s, 1e-5).unwrap() - 1.0).abs() <= 1e-6);
        prop_assert!(poisson_bracket(&q0, &q1, &s, 1e-5).unwrap().abs() <= 1e-8);
    }
}
