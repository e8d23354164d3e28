// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Circuits whose H-matrix is a graph incidence matrix, and the bond
//! distributions that make their amplitude an Ising partition function.
//!
//! For kernel vectors `a` of `CH` the amplitude carries signs
//! `(-1)^{a^t Q a}`; the partition function carries `(-1)^{a.w}`. A bond
//! distribution `w` with `a.w = a^t Q a` on the whole kernel equates the
//! two sums term by term. Writing `K` for a kernel basis and `M = K^t Q K`,
//! such a `w` exists iff `M` is symmetric, and then it solves
//! `K^t w = diag(M)`.

use serde::{Deserialize, Serialize};

use crate::circuit::{h_matrix, q_matrix, validate_real_circuit, Angle, Circuit, HMatrix};
use crate::error::{Error, Result};
use crate::gf2::{for_each_in_span, BitMatrix, BitVector};
use crate::graph::{euler_quick_pass, has_minor, is_planar, Graph, MinorWitness};
use crate::ising::{partition_from_sum, planar_even_subgraph_sum, signed_even_subgraph_sum};
use crate::Caps;

/// A bond distribution together with the concrete circuit it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WSolution {
    pub w: BitVector,
    pub h: HMatrix,
    /// Dimension of the affine solution space the tie-break chose from.
    pub solution_space_dim: usize,
}

/// Largest kernel dimension for the exhaustive certificate check.
const CERTIFY_NULLITY: usize = 20;

/// The graph whose incidence matrix is the reduced `CH`. Each column needs
/// an odd number of Y factors and exactly two X/Y factors.
pub fn circuit_to_graph(h: &HMatrix) -> Result<Graph> {
    let ch = h.flip_rows();
    let mut edges = Vec::with_capacity(h.gates());
    for k in 0..h.gates() {
        let col = h.column(k);
        let y = (0..h.qubits())
            .filter(|&q| col.get(2 * q) && col.get(2 * q + 1))
            .count();
        if y % 2 == 0 {
            return Err(Error::EvenYColumn {
                column: k,
                count: y,
            });
        }
        let ends: Vec<usize> = ch.column(k).iter_ones().collect();
        if ends.len() != 2 {
            return Err(Error::HypergraphColumn {
                column: k,
                ones: ends.len(),
            });
        }
        edges.push((ends[0], ends[1]));
    }
    Graph::new(h.qubits(), edges)
}

fn kernel(h: &HMatrix) -> Vec<BitVector> {
    h.flip_rows().nullspace_vectors()
}

/// True iff `a.w = a^t Q a` for every `a` in the kernel of `CH`, checked by
/// enumeration.
pub fn satisfies_bond_condition(h: &HMatrix, w: &BitVector, caps: &Caps) -> Result<bool> {
    let basis = kernel(h);
    let cap = caps.max_nullity.min(CERTIFY_NULLITY);
    if basis.len() > cap {
        return Err(Error::Cap {
            module: "mapping",
            what: "kernel dimension for certificate check",
            value: basis.len(),
            cap,
        });
    }
    let q = q_matrix(h);
    let mut ok = true;
    for_each_in_span(&basis, h.gates(), |a| {
        ok &= a.dot(w) == q.quadratic_form(a);
    });
    Ok(ok)
}

fn certify(sol: &WSolution) {
    if kernel(&sol.h).len() <= CERTIFY_NULLITY {
        let caps = Caps::default();
        assert!(
            satisfies_bond_condition(&sol.h, &sol.w, &caps).unwrap(),
            "solver returned a bond distribution that fails the kernel check"
        );
    }
}

/// `w` for the given H-matrix, lexicographically smallest among solutions.
pub fn solve_w_fixed(h: &HMatrix) -> Result<Option<WSolution>> {
    let g = circuit_to_graph(h)?;
    let basis = kernel(h);
    let k = BitMatrix::from_columns(&basis, g.edge_count());
    let kt = k.transpose();
    let m = kt.mul(&q_matrix(h).mul(&k)?)?;
    if !m.is_symmetric() {
        return Ok(None);
    }
    let Some(sol) = kt.solve_lexicographic(&m.diagonal())? else {
        return Ok(None);
    };
    let out = WSolution {
        w: sol.x,
        h: h.clone(),
        solution_space_dim: sol.dimension,
    };
    certify(&out);
    Ok(Some(out))
}

/// Builds the H-matrix for `g` from first-bit values `f[k][i]` (gate `k`,
/// qubit `i`). Second bits are the edge endpoints.
fn h_from_first_bits(g: &Graph, first: impl Fn(usize, usize) -> bool) -> HMatrix {
    let n = g.vertex_count();
    let mut m = BitMatrix::zeros(2 * n, g.edge_count());
    for (k, &(u, v)) in g.edges().iter().enumerate() {
        m.set(2 * u + 1, k, true);
        m.set(2 * v + 1, k, true);
        for i in 0..n {
            if first(k, i) {
                m.set(2 * i, k, true);
            }
        }
    }
    HMatrix::new(m).expect("2n rows")
}

/// Decides whether some circuit over `g` admits a bond distribution.
///
/// Endpoint roles (which end carries the Y) and Z placements are all
/// first bits of H, and every entry `Q[j][k] = f_j(u_k) + f_j(v_k)` is
/// linear in them. Symmetry of `M`, the diagonal system and the one-Y rule
/// are then a single linear system over (first bits, `w`). Variables are
/// ordered gate-major by qubit, then `w`; the lexicographically smallest
/// solution is returned.
pub fn solve_w_joint(g: &Graph) -> Option<WSolution> {
    let n = g.vertex_count();
    let e = g.edge_count();
    let nvars = e * n + e;
    let f = |k: usize, i: usize| k * n + i;
    let wv = |j: usize| e * n + j;
    let basis = g.cycle_space().basis;
    let mut rows: Vec<BitVector> = Vec::new();
    let mut rhs: Vec<bool> = Vec::new();

    for (k, &(u, v)) in g.edges().iter().enumerate() {
        let mut r = BitVector::zeros(nvars);
        r.flip(f(k, u));
        r.flip(f(k, v));
        rows.push(r);
        rhs.push(true);
    }
    // a_p^t Q a_q as a linear form.
    let m_form = |p: &BitVector, q: &BitVector| {
        let mut r = BitVector::zeros(nvars);
        for j in p.iter_ones() {
            for k in q.iter_ones().take_while(|&k| k < j) {
                let (u, v) = g.edge(k);
                r.flip(f(j, u));
                r.flip(f(j, v));
            }
        }
        r
    };
    for (p, ap) in basis.iter().enumerate() {
        for aq in &basis[p + 1..] {
            rows.push(m_form(ap, aq).xor(&m_form(aq, ap)));
            rhs.push(false);
        }
        let mut r = m_form(ap, ap);
        for j in ap.iter_ones() {
            r.flip(wv(j));
        }
        rows.push(r);
        rhs.push(false);
    }

    let a = BitMatrix::from_row_vectors(&rows, nvars);
    let sol = a
        .solve_lexicographic(&BitVector::from_bools(&rhs))
        .expect("dimensions agree")?;
    let x = sol.x;
    let h = h_from_first_bits(g, |k, i| x.get(f(k, i)));
    let w = BitVector::from_bools(&(0..e).map(|j| x.get(wv(j))).collect::<Vec<_>>());
    let out = WSolution {
        w,
        h,
        solution_space_dim: sol.dimension,
    };
    certify(&out);
    Some(out)
}

/// Exhaustive cross-check of [`solve_w_joint`] for tiny graphs: every X/Y
/// role assignment, every reachable right-hand side `Mw`, and a linear
/// solve for the Z placements. `|E| <= 8` and `|V| <= 6`.
pub fn solve_w_enumerate(g: &Graph) -> Result<Option<WSolution>> {
    let n = g.vertex_count();
    let e = g.edge_count();
    if e > 8 {
        return Err(Error::Cap {
            module: "mapping",
            what: "edge count for enumeration",
            value: e,
            cap: 8,
        });
    }
    if n > 6 {
        return Err(Error::Cap {
            module: "mapping",
            what: "vertex count for enumeration",
            value: n,
            cap: 6,
        });
    }
    let basis = g.cycle_space().basis;
    let mut kernel = Vec::new();
    for_each_in_span(&basis, e, |a| kernel.push(a.clone()));
    let kmat = BitMatrix::from_row_vectors(&kernel, e);

    let mut targets: Vec<(BitVector, BitVector)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for mask in 0..1u64 << e {
        let w = BitVector::from_mask(mask, e);
        let d = kmat.mul_vec(&w)?;
        if seen.insert(d.to_bit_string()) {
            targets.push((d, w));
        }
    }

    let mut zslot = vec![vec![usize::MAX; n]; e];
    let mut nz = 0;
    for (k, &(u, v)) in g.edges().iter().enumerate() {
        for i in 0..n {
            if i != u && i != v {
                zslot[k][i] = nz;
                nz += 1;
            }
        }
    }

    for roles in 0..1u64 << e {
        let y_at_first = |k: usize| roles >> k & 1 == 1;
        // f_j(i) as (constant, optional z variable).
        let slot = |j: usize, i: usize| -> (bool, Option<usize>) {
            let (u, v) = g.edge(j);
            if i == u {
                (y_at_first(j), None)
            } else if i == v {
                (!y_at_first(j), None)
            } else {
                (false, Some(zslot[j][i]))
            }
        };
        let mut forms = Vec::with_capacity(kernel.len());
        for a in &kernel {
            let mut lin = BitVector::zeros(nz);
            let mut c = false;
            for j in a.iter_ones() {
                for k in a.iter_ones().take_while(|&k| k < j) {
                    let (u, v) = g.edge(k);
                    for i in [u, v] {
                        match slot(j, i) {
                            (b, None) => c ^= b,
                            (_, Some(z)) => lin.flip(z),
                        }
                    }
                }
            }
            forms.push((lin, c));
        }
        let zmat = BitMatrix::from_row_vectors(
            &forms.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>(),
            nz,
        );
        for (d, _) in &targets {
            let b: Vec<bool> = forms
                .iter()
                .enumerate()
                .map(|(i, (_, c))| d.get(i) ^ c)
                .collect();
            let Some(zs) = zmat.solve(&BitVector::from_bools(&b))? else {
                continue;
            };
            let h = h_from_first_bits(g, |k, i| match slot(k, i) {
                (b, None) => b,
                (_, Some(z)) => zs.x.get(z),
            });
            let sol = kmat
                .solve_lexicographic(d)?
                .expect("target is in the image of the kernel matrix");
            let out = WSolution {
                w: sol.x,
                h,
                solution_space_dim: sol.dimension,
            };
            certify(&out);
            return Ok(Some(out));
        }
    }
    Ok(None)
}

/// The weaker requirement that the amplitude and partition polynomials
/// agree: per Hamming weight, the numbers of `+` and `-` signs from
/// `a^t Q a` and from `a.w` coincide.
pub fn general_w_check(h: &HMatrix, w: &BitVector, caps: &Caps) -> Result<bool> {
    let basis = kernel(h);
    let cap = caps.max_nullity.min(CERTIFY_NULLITY);
    if basis.len() > cap {
        return Err(Error::Cap {
            module: "mapping",
            what: "kernel dimension for general check",
            value: basis.len(),
            cap,
        });
    }
    if w.len() != h.gates() {
        return Err(Error::Dimension(format!(
            "bond vector has length {}, circuit has {} gates",
            w.len(),
            h.gates()
        )));
    }
    let q = q_matrix(h);
    let mut balance = vec![0i64; h.gates() + 1];
    for_each_in_span(&basis, h.gates(), |a| {
        let s_q = if q.quadratic_form(a) { -1 } else { 1 };
        let s_w = if a.dot(w) { -1 } else { 1 };
        balance[a.weight()] += s_q - s_w;
    });
    Ok(balance.iter().all(|&b| b == 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluator {
    /// Kasteleyn/Pfaffian on a planar embedding.
    Planar,
    /// Enumeration of the cycle space.
    Kernel,
    /// Enumeration of spin configurations.
    Spins,
}

/// The signed even-subgraph sum by the planar route when possible,
/// otherwise by kernel enumeration.
pub fn even_subgraph_sum_auto(
    g: &Graph,
    w: &BitVector,
    lambda: f64,
    caps: &Caps,
) -> Result<(f64, Evaluator)> {
    match is_planar(g) {
        Some(rot) => Ok((
            planar_even_subgraph_sum(g, w, lambda, &rot)?,
            Evaluator::Planar,
        )),
        None => Ok((
            signed_even_subgraph_sum(g, w, lambda, caps)?,
            Evaluator::Kernel,
        )),
    }
}

/// `(1 + lambda^2)^(-|E|/2) S`: the amplitude of any circuit over `g`
/// that `w` solves.
pub fn amplitude_via_partition(g: &Graph, w: &BitVector, lambda: f64, caps: &Caps) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let (s, _) = even_subgraph_sum_auto(g, w, lambda, caps)?;
    Ok(s * (1.0 + lambda * lambda).powf(-(g.edge_count() as f64) / 2.0))
}

/// Conversions between the gate angle and the Ising parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaTheta {
    pub theta: f64,
    pub lambda: f64,
    /// `tan(theta/2) > 0`.
    pub compatible: bool,
    /// `lambda < 1`, so a real `beta J = atanh(lambda)` exists.
    pub physical: bool,
    pub beta_j: Option<f64>,
}

/// From a `theta` (radians) the principal conversion is reported as is;
/// from a `lambda` the angle is `2 atan(lambda)`.
pub fn lambda_theta(angle: Angle) -> Result<LambdaTheta> {
    let (theta, lambda) = match angle {
        Angle::Theta(t) => (t, (t / 2.0).tan()),
        Angle::Lambda(l) => {
            if !(l > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "lambda must be positive, got {l}"
                )));
            }
            (2.0 * l.atan(), l)
        }
    };
    let compatible = angle.is_lambda_compatible();
    // tan(pi/4) rounds just below 1; treat that as the boundary.
    let physical = compatible && lambda < 1.0 - 1e-12;
    Ok(LambdaTheta {
        theta,
        lambda,
        compatible,
        physical,
        beta_j: physical.then(|| lambda.atanh()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ForbiddenMinor {
    K4,
    K33MinusEdge,
}

impl ForbiddenMinor {
    pub fn graph(self) -> Graph {
        match self {
            ForbiddenMinor::K4 => Graph::complete(4),
            ForbiddenMinor::K33MinusEdge => Graph::k33_minus_edge(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CesCertificate {
    pub graph: Graph,
    pub solution: WSolution,
    pub lambda: f64,
    pub evaluator: Evaluator,
    pub even_subgraph_sum: f64,
    pub amplitude: f64,
    /// `Z` at `tanh(beta J) = lambda`, when `lambda < 1`.
    pub partition_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CesVerdict {
    Ces(Box<CesCertificate>),
    Rejected {
        graph: Graph,
        minor: ForbiddenMinor,
        witness: MinorWitness,
        euler_quick_pass: bool,
    },
    Unknown {
        reason: String,
        /// A bond distribution meeting the weaker per-weight condition,
        /// found by brute force on small circuits.
        general_w: Option<BitVector>,
    },
}

impl CesVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            CesVerdict::Ces(_) => "CES",
            CesVerdict::Rejected { .. } => "REJECTED",
            CesVerdict::Unknown { .. } => "UNKNOWN",
        }
    }
}

/// Largest gate count for the brute-force search over the general condition.
const GENERAL_SEARCH_GATES: usize = 10;

fn unknown(reason: impl Into<String>) -> CesVerdict {
    CesVerdict::Unknown {
        reason: reason.into(),
        general_w: None,
    }
}

/// Runs the full decision pipeline. Failures are verdicts, never errors.
pub fn ces_decide(c: &Circuit, caps: &Caps) -> CesVerdict {
    let diag = validate_real_circuit(c);
    if !diag.is_clean() {
        return unknown(format!("not a lambda-compatible real circuit: {diag}"));
    }
    let h = h_matrix(c);
    let g = match circuit_to_graph(&h) {
        Ok(g) => g,
        Err(e) => return unknown(format!("outside the graph-backed class: {e}")),
    };
    let euler = euler_quick_pass(&g);
    for minor in [ForbiddenMinor::K4, ForbiddenMinor::K33MinusEdge] {
        match has_minor(&g, &minor.graph(), caps.minor_budget) {
            Ok(Some(witness)) => {
                return CesVerdict::Rejected {
                    graph: g,
                    minor,
                    witness,
                    euler_quick_pass: euler,
                }
            }
            Ok(None) => {}
            Err(e) => return unknown(format!("minor search failed: {e}")),
        }
    }
    let solution = match solve_w_fixed(&h) {
        Ok(Some(s)) => s,
        Ok(None) => {
            let general_w = if h.gates() <= GENERAL_SEARCH_GATES {
                (0..1u64 << h.gates())
                    .map(|m| BitVector::from_mask(m, h.gates()))
                    .find(|w| general_w_check(&h, w, caps).unwrap_or(false))
            } else {
                None
            };
            return CesVerdict::Unknown {
                reason: "no bond distribution solves the cycle-parity system for this circuit"
                    .into(),
                general_w,
            };
        }
        Err(e) => return unknown(e.to_string()),
    };
    let rot = is_planar(&g).expect("graphs without K4 minors are planar");
    let lambda = c.lambda();
    let s = match planar_even_subgraph_sum(&g, &solution.w, lambda, &rot) {
        Ok(s) => s,
        Err(e) => return unknown(e.to_string()),
    };
    // On the second branch cos(theta/2) < 0 and each gate contributes a
    // factor -1 relative to the normal form.
    let (cos, _) = c.angle().half_cos_sin();
    let branch = if cos < 0.0 && g.edge_count() % 2 == 1 {
        -1.0
    } else {
        1.0
    };
    let amplitude = branch * s * (1.0 + lambda * lambda).powf(-(g.edge_count() as f64) / 2.0);
    let partition_value = partition_from_sum(&g, s, lambda).ok();
    CesVerdict::Ces(Box::new(CesCertificate {
        graph: g,
        solution,
        lambda,
        evaluator: Evaluator::Planar,
        even_subgraph_sum: s,
        amplitude,
        partition_value,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::simulate_amplitude;

    fn necklace_h() -> HMatrix {
        let c = Circuit::from_strings(
            6,
            &["YXIIII", "IXYIII", "IIYXII", "IIIYXI", "IIIXIY", "IYIIIX"],
            Angle::Lambda(0.5),
        )
        .unwrap();
        h_matrix(&c)
    }

    #[test]
    fn graph_from_h() {
        let g = circuit_to_graph(&necklace_h()).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (1, 5)]);
        let single = Circuit::from_strings(2, &["YX"], Angle::Lambda(0.5)).unwrap();
        let g = circuit_to_graph(&h_matrix(&single)).unwrap();
        assert_eq!((g.vertex_count(), g.edges()), (2, &[(0, 1)][..]));
        let hyper = Circuit::from_strings(3, &["ZZY"], Angle::Lambda(0.5)).unwrap();
        assert_eq!(
            circuit_to_graph(&h_matrix(&hyper)),
            Err(Error::HypergraphColumn { column: 0, ones: 1 })
        );
    }

    #[test]
    fn fixed_solver() {
        let tree = Circuit::from_strings(3, &["YXI", "IYX"], Angle::Lambda(0.5)).unwrap();
        let s = solve_w_fixed(&h_matrix(&tree)).unwrap().unwrap();
        assert!(s.w.is_zero());
        assert_eq!(s.solution_space_dim, 2);
        let s = solve_w_fixed(&necklace_h()).unwrap().unwrap();
        let cycle = BitVector::parse_bit_string("011011").unwrap();
        let q = q_matrix(&s.h);
        assert_eq!(cycle.dot(&s.w), q.quadratic_form(&cycle));
    }

    #[test]
    fn k4_circuits_have_no_fixed_solution() {
        // One Z-free representation per role choice; none admits w.
        let g = Graph::complete(4);
        for roles in 0..64u64 {
            let h = h_from_first_bits(&g, |k, i| {
                let (u, v) = g.edge(k);
                (i == u && roles >> k & 1 == 1) || (i == v && roles >> k & 1 == 0)
            });
            assert!(solve_w_fixed(&h).unwrap().is_none());
        }
    }

    #[test]
    fn joint_solver_obstructions() {
        assert!(solve_w_joint(&Graph::complete(4)).is_none());
        assert!(solve_w_joint(&Graph::k33_minus_edge()).is_none());
        assert!(solve_w_joint(&Graph::complete_bipartite(2, 3)).is_some());
        assert!(solve_w_joint(&Graph::cycle(3)).is_some());
    }

    #[test]
    fn enumeration_agrees() {
        assert!(solve_w_enumerate(&Graph::complete(4)).unwrap().is_none());
        let tri = solve_w_enumerate(&Graph::cycle(3)).unwrap().unwrap();
        assert!(satisfies_bond_condition(&tri.h, &tri.w, &Caps::default()).unwrap());
        let edge = solve_w_enumerate(&Graph::path(2)).unwrap().unwrap();
        assert!(edge.w.is_zero());
        assert!(solve_w_enumerate(&Graph::complete(5)).is_err());
    }

    #[test]
    fn general_check() {
        let caps = Caps::default();
        let s = solve_w_fixed(&necklace_h()).unwrap().unwrap();
        assert!(general_w_check(&s.h, &s.w, &caps).unwrap());
        let mut flipped = s.w.clone();
        flipped.flip(1);
        assert!(!general_w_check(&s.h, &flipped, &caps).unwrap());
    }

    #[test]
    fn amplitude_examples() {
        let caps = Caps::default();
        let a = amplitude_via_partition(&Graph::path(2), &BitVector::zeros(1), 0.5, &caps).unwrap();
        assert!((a - 0.894427190999916).abs() < 1e-12);
        let h = necklace_h();
        let s = solve_w_fixed(&h).unwrap().unwrap();
        let g = circuit_to_graph(&h).unwrap();
        let c = crate::circuit::circuit_from_h(&h, Angle::Lambda(0.5)).unwrap();
        let a = amplitude_via_partition(&g, &s.w, 0.5, &caps).unwrap();
        assert!((a - simulate_amplitude(&c, &caps).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn lambda_theta_examples() {
        let r = lambda_theta(Angle::Theta(2.0 * 0.8f64.asin())).unwrap();
        assert!((r.lambda - 4.0 / 3.0).abs() < 1e-12 && r.compatible && !r.physical);
        let r = lambda_theta(Angle::Lambda(0.5)).unwrap();
        assert!((r.beta_j.unwrap() - 0.5493061443340549).abs() < 1e-12);
        assert!((r.beta_j.unwrap().tanh() - 0.5).abs() < 1e-15);
        let r = lambda_theta(Angle::Theta(std::f64::consts::FRAC_PI_2)).unwrap();
        assert!((r.lambda - 1.0).abs() < 1e-12 && r.compatible && !r.physical);
        assert!(lambda_theta(Angle::Lambda(0.0)).is_err());
    }

    #[test]
    fn decide_examples() {
        let caps = Caps::default();
        let c = crate::circuit::circuit_from_h(&necklace_h(), Angle::Lambda(0.5)).unwrap();
        match ces_decide(&c, &caps) {
            CesVerdict::Ces(cert) => {
                assert!((cert.amplitude - simulate_amplitude(&c, &caps).unwrap()).abs() < 1e-9);
                assert!(cert.partition_value.is_some());
            }
            v => panic!("{v:?}"),
        }
        let k4 = Circuit::from_strings(
            4,
            &["YXII", "YIXI", "YIIX", "IYXI", "IYIX", "IIYX"],
            Angle::Lambda(0.5),
        )
        .unwrap();
        match ces_decide(&k4, &caps) {
            CesVerdict::Rejected {
                minor,
                witness,
                graph,
                ..
            } => {
                assert_eq!(minor, ForbiddenMinor::K4);
                assert!(crate::graph::is_isomorphic(
                    &witness.replay(&graph).unwrap(),
                    &Graph::complete(4)
                ));
            }
            v => panic!("{v:?}"),
        }
        let hyper = Circuit::from_strings(3, &["YZZ", "ZZY"], Angle::Lambda(0.5)).unwrap();
        assert_eq!(ces_decide(&hyper, &caps).label(), "UNKNOWN");
    }
}
