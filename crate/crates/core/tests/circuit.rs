use ising_ces::circuit::{
    c_form, circuit_from_h, expansion_amplitude, h_matrix, pauli_product, q_matrix,
    simulate_amplitude, validate_real_circuit, Angle, Circuit, Gate, Pauli,
};
use ising_ces::random::{random_real_circuit, random_real_gate};
use ising_ces::{BitVector, Caps, Error};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Dense = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The complex Pauli product as a dense matrix, qubit `q` on bit `q`.
fn dense_pauli(g: &Gate) -> Dense {
    let n = g.qubits();
    let dim = 1 << n;
    let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
    for y in 0..dim {
        let mut x = y;
        let mut amp = c(1.0, 0.0);
        for q in 0..n {
            let bit = (y >> q) & 1;
            match g.pauli(q) {
                Pauli::I => {}
                Pauli::X => x ^= 1 << q,
                Pauli::Z => {
                    if bit == 1 {
                        amp = -amp;
                    }
                }
                Pauli::Y => {
                    x ^= 1 << q;
                    amp *= if bit == 0 { c(0.0, 1.0) } else { c(0.0, -1.0) };
                }
            }
        }
        m[x][y] = amp;
    }
    m
}

/// `(-i)^{#Y} sigma_b`, which is real.
fn dense_tilde(g: &Gate) -> Dense {
    let phase = c(0.0, -1.0).powu(g.y_count() as u32);
    dense_pauli(g)
        .into_iter()
        .map(|row| row.into_iter().map(|z| z * phase).collect())
        .collect()
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn dense_amplitude(circ: &Circuit) -> Complex64 {
    let dim = 1 << circ.qubits();
    let (cos, sin) = circ.angle().half_cos_sin();
    let mut u: Dense = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| c(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    for g in circ.gates() {
        let o = if g.y_count() % 4 == 1 { 1.0 } else { -1.0 };
        let p = dense_pauli(g);
        let gate: Dense = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let id = if i == j { cos } else { 0.0 };
                        c(id, 0.0) + c(0.0, -o * sin) * p[i][j]
                    })
                    .collect()
            })
            .collect();
        u = mul(&gate, &u);
    }
    u[0][0]
}

#[test]
fn statevector_matches_dense_matrices() {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let circ = random_real_circuit(&mut rng, 4, 6);
        let dense = dense_amplitude(&circ);
        assert!(dense.im.abs() < 1e-12, "dense amplitude not real: {dense}");
        let sv = simulate_amplitude(&circ, &caps).unwrap();
        assert!((sv - dense.re).abs() < 1e-12, "{sv} vs {dense}");
    }
}

#[test]
fn expansion_matches_statevector() {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let circ = random_real_circuit(&mut rng, 6, 8);
        let sv = simulate_amplitude(&circ, &caps).unwrap();
        let ex = expansion_amplitude(&h_matrix(&circ), circ.lambda(), &caps).unwrap();
        assert!((sv - ex).abs() < 1e-12, "{sv} vs {ex} for {circ:?}");
    }
}

#[test]
fn second_branch_flips_sign_per_gate() {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let n = rng.random_range(1..=4);
        let count = rng.random_range(1..=6);
        let gates: Vec<Gate> = (0..count).map(|_| random_real_gate(&mut rng, n)).collect();
        let theta = 2.0 * std::f64::consts::PI + rng.random_range(0.1..3.0);
        let circ = Circuit::new(n, gates, Angle::Theta(theta)).unwrap();
        assert!(circ.angle().is_lambda_compatible());
        let sv = simulate_amplitude(&circ, &caps).unwrap();
        let ex = expansion_amplitude(&h_matrix(&circ), circ.lambda(), &caps).unwrap();
        let sign = if count % 2 == 1 { -1.0 } else { 1.0 };
        assert!((sv - sign * ex).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn real_pauli_product_rule(n in 1usize..=3, a in any::<u64>(), b in any::<u64>()) {
        let la = BitVector::from_mask(a, 2 * n);
        let lb = BitVector::from_mask(b, 2 * n);
        let ga = Gate::from_label(la.clone()).unwrap();
        let gb = Gate::from_label(lb.clone()).unwrap();
        let (sign, lab) = pauli_product(&la, &lb).unwrap();
        let gab = Gate::from_label(lab).unwrap();
        let lhs = mul(&dense_tilde(&ga), &dense_tilde(&gb));
        let rhs = dense_tilde(&gab);
        for (r1, r2) in lhs.iter().zip(&rhs) {
            for (x, y) in r1.iter().zip(r2) {
                prop_assert!((x - *y * sign as f64).norm() < 1e-12);
            }
        }
        prop_assert_eq!(sign == -1, c_form(&la, &lb));
    }

    #[test]
    fn h_matrix_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let circ = random_real_circuit(&mut rng, 6, 8);
        let h = h_matrix(&circ);
        prop_assert_eq!(circuit_from_h(&h, circ.angle()).unwrap(), circ.clone());
        let q = q_matrix(&h);
        for j in 0..h.gates() {
            for k in 0..h.gates() {
                let expect = j > k && c_form(&h.column(j), &h.column(k));
                prop_assert_eq!(q.get(j, k), expect);
            }
        }
        let reparsed = Circuit::parse(&circ.to_text()).unwrap();
        prop_assert_eq!(reparsed, circ);
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    let bad = "circuit 2\nlambda 0.5\n\ngate XQ\n";
    match Circuit::parse(bad) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        Circuit::parse("circuit 2\nlambda -1\n"),
        Err(Error::Parse { line: 2, .. })
    ));
    assert!(matches!(
        Circuit::parse("circuit 2\nlambda 1\ngate XYZ\n"),
        Err(Error::Parse { line: 3, .. })
    ));
    let ok = Circuit::parse("# comment\ncircuit 1\ntheta 1.0 # radians\ngate Y\n").unwrap();
    assert_eq!(ok.angle(), Angle::Theta(1.0));
}

#[test]
fn even_y_gates_are_diagnosed() {
    let circ = Circuit::from_strings(2, &["XY", "YY", "ZZ"], Angle::Lambda(0.5)).unwrap();
    let d = validate_real_circuit(&circ);
    assert_eq!(d.even_y_gates, vec![(1, 2), (2, 0)]);
    assert!(simulate_amplitude(&circ, &Caps::default()).is_err());
    let neg = Circuit::from_strings(1, &["Y"], Angle::Theta(-1.0)).unwrap();
    assert!(validate_real_circuit(&neg).angle_problem.is_some());
}

#[test]
fn qubit_cap_is_enforced() {
    let caps = Caps {
        max_qubits: 3,
        ..Caps::default()
    };
    let circ = Circuit::from_strings(4, &["YIII"], Angle::Lambda(0.5)).unwrap();
    assert!(matches!(
        simulate_amplitude(&circ, &caps),
        Err(Error::Cap {
            module: "circuit",
            ..
        })
    ));
}
