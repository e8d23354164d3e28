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

//! Pauli-rotation circuits in the real-gate convention.
//!
//! A gate is labelled by a vector `b` of `2n` bits, two per qubit, with
//! `00 = I`, `01 = X`, `10 = Z`, `11 = Y` (first bit, second bit). The bits
//! of qubit `i` sit at positions `2i` and `2i + 1`. Every gate acts as
//! `cos(t/2) I + sin(t/2) s_b` where `s_b = (-i)^{#Y} sigma_b` is real,
//! which requires an odd number of `Y` factors.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gf2::{for_each_in_span, BitMatrix, BitVector};
use crate::Caps;

/// One single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Z,
    Y,
}

impl Pauli {
    /// `(first, second)` bits of the encoding.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (false, true),
            Pauli::Z => (true, false),
            Pauli::Y => (true, true),
        }
    }

    pub fn from_bits(first: bool, second: bool) -> Self {
        match (first, second) {
            (false, false) => Pauli::I,
            (false, true) => Pauli::X,
            (true, false) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | 'i' => Some(Pauli::I),
            'X' | 'x' => Some(Pauli::X),
            'Y' | 'y' => Some(Pauli::Y),
            'Z' | 'z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A rotation gate, stored as its `2n`-bit label.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    label: BitVector,
}

impl Gate {
    pub fn from_label(label: BitVector) -> Result<Self> {
        if label.len() % 2 != 0 {
            return Err(Error::Dimension(format!(
                "gate label must have even length, got {}",
                label.len()
            )));
        }
        Ok(Self { label })
    }

    pub fn from_paulis(ops: &[Pauli]) -> Self {
        let mut label = BitVector::zeros(2 * ops.len());
        for (i, p) in ops.iter().enumerate() {
            let (f, s) = p.bits();
            label.set(2 * i, f);
            label.set(2 * i + 1, s);
        }
        Self { label }
    }

    pub fn label(&self) -> &BitVector {
        &self.label
    }

    pub fn qubits(&self) -> usize {
        self.label.len() / 2
    }

    pub fn pauli(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.label.get(2 * qubit), self.label.get(2 * qubit + 1))
    }

    pub fn paulis(&self) -> Vec<Pauli> {
        (0..self.qubits()).map(|q| self.pauli(q)).collect()
    }

    pub fn y_count(&self) -> usize {
        (0..self.qubits())
            .filter(|&q| self.pauli(q) == Pauli::Y)
            .count()
    }

    pub fn is_real(&self) -> bool {
        self.y_count() % 2 == 1
    }

    /// Qubits carrying X or Y (the second bit).
    pub fn flip_mask(&self) -> u64 {
        (0..self.qubits())
            .filter(|&q| self.label.get(2 * q + 1))
            .fold(0, |m, q| m | (1 << q))
    }

    /// Qubits carrying Z or Y (the first bit).
    pub fn phase_mask(&self) -> u64 {
        (0..self.qubits())
            .filter(|&q| self.label.get(2 * q))
            .fold(0, |m, q| m | (1 << q))
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ops = s
            .chars()
            .map(|c| {
                Pauli::from_char(c)
                    .ok_or_else(|| Error::InvalidParameter(format!("bad Pauli letter {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_paulis(&ops))
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.paulis() {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gate({self})")
    }
}

/// The shared rotation angle, given either directly as `lambda = tan(theta/2)`
/// or as `theta` in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Lambda(f64),
    Theta(f64),
}

impl Angle {
    pub fn lambda(self) -> f64 {
        match self {
            Angle::Lambda(l) => l,
            Angle::Theta(t) => (t / 2.0).tan(),
        }
    }

    /// `(cos(theta/2), sin(theta/2))`. For a bare lambda the first branch
    /// `theta/2 in (0, pi/2)` is used.
    pub fn half_cos_sin(self) -> (f64, f64) {
        match self {
            Angle::Lambda(l) => {
                let g = (1.0 + l * l).sqrt();
                (1.0 / g, l / g)
            }
            Angle::Theta(t) => {
                let h = t / 2.0;
                (h.cos(), h.sin())
            }
        }
    }

    /// True when `theta mod 4pi` lies in `(0, pi) u (2pi, 3pi)`, i.e. `lambda > 0`.
    pub fn is_lambda_compatible(self) -> bool {
        match self {
            Angle::Lambda(l) => l > 0.0 && l.is_finite(),
            Angle::Theta(t) => theta_in_compatible_range(t),
        }
    }
}

pub fn theta_in_compatible_range(theta: f64) -> bool {
    use std::f64::consts::PI;
    if !theta.is_finite() {
        return false;
    }
    let r = theta.rem_euclid(4.0 * PI);
    (r > 0.0 && r < PI) || (r > 2.0 * PI && r < 3.0 * PI)
}

/// An ordered list of rotation gates sharing one angle; gate 0 acts first.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    qubits: usize,
    gates: Vec<Gate>,
    angle: Angle,
}

impl Circuit {
    pub fn new(qubits: usize, gates: Vec<Gate>, angle: Angle) -> Result<Self> {
        if qubits > 64 {
            return Err(Error::InvalidParameter(format!(
                "{qubits} qubits; at most 64 are supported"
            )));
        }
        if let Some((k, g)) = gates.iter().enumerate().find(|(_, g)| g.qubits() != qubits) {
            return Err(Error::Dimension(format!(
                "gate {k} acts on {} qubits, circuit has {qubits}",
                g.qubits()
            )));
        }
        Ok(Self {
            qubits,
            gates,
            angle,
        })
    }

    pub fn from_strings(qubits: usize, gates: &[&str], angle: Angle) -> Result<Self> {
        let gates = gates
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Gate>>>()?;
        Self::new(qubits, gates, angle)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn angle(&self) -> Angle {
        self.angle
    }

    pub fn lambda(&self) -> f64 {
        self.angle.lambda()
    }

    /// Parses the circuit text format:
    ///
    /// ```text
    /// circuit 3
    /// lambda 0.5
    /// gate ZXY
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut qubits = None;
        let mut angle = None;
        let mut gates = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let key = parts.next().unwrap_or_default();
            let value = parts.next();
            if parts.next().is_some() {
                return Err(err(format!("trailing tokens in {line:?}")));
            }
            let value = value.ok_or_else(|| err(format!("`{key}` needs a value")))?;
            match key {
                "circuit" => {
                    if qubits.is_some() {
                        return Err(err("duplicate `circuit` header".into()));
                    }
                    let n: usize = value
                        .parse()
                        .map_err(|_| err(format!("bad qubit count {value:?}")))?;
                    if n > 64 {
                        return Err(err(format!("{n} qubits; at most 64 are supported")));
                    }
                    qubits = Some(n);
                }
                "lambda" | "theta" => {
                    if qubits.is_none() {
                        return Err(err("`circuit <n>` must come first".into()));
                    }
                    if angle.is_some() {
                        return Err(err("angle given twice".into()));
                    }
                    let x: f64 = value
                        .parse()
                        .map_err(|_| err(format!("bad number {value:?}")))?;
                    if !x.is_finite() {
                        return Err(err(format!("non-finite angle {value:?}")));
                    }
                    angle = Some(if key == "lambda" {
                        if x <= 0.0 {
                            return Err(err(format!("lambda must be positive, got {x}")));
                        }
                        Angle::Lambda(x)
                    } else {
                        Angle::Theta(x)
                    });
                }
                "gate" => {
                    let n = qubits.ok_or_else(|| err("`circuit <n>` must come first".into()))?;
                    if angle.is_none() {
                        return Err(err("angle line must precede gates".into()));
                    }
                    let g: Gate = value.parse().map_err(|e: Error| err(e.to_string()))?;
                    if g.qubits() != n {
                        return Err(err(format!(
                            "gate {value:?} has length {}, expected {n}",
                            g.qubits()
                        )));
                    }
                    gates.push(g);
                }
                other => return Err(err(format!("unknown directive {other:?}"))),
            }
        }
        let qubits = qubits.ok_or(Error::Parse {
            line: 1,
            message: "missing `circuit <n>` header".into(),
        })?;
        let angle = angle.ok_or(Error::Parse {
            line: 2,
            message: "missing `lambda` or `theta` line".into(),
        })?;
        Circuit::new(qubits, gates, angle)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("circuit {}\n", self.qubits);
        match self.angle {
            Angle::Lambda(l) => out.push_str(&format!("lambda {l}\n")),
            Angle::Theta(t) => out.push_str(&format!("theta {t}\n")),
        }
        for g in &self.gates {
            out.push_str(&format!("gate {g}\n"));
        }
        out
    }
}

/// The `2n x N` matrix whose column `k` is the label of gate `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HMatrix(BitMatrix);

impl HMatrix {
    pub fn new(matrix: BitMatrix) -> Result<Self> {
        if matrix.rows() % 2 != 0 {
            return Err(Error::Dimension(format!(
                "H-matrix needs an even row count, got {}",
                matrix.rows()
            )));
        }
        Ok(Self(matrix))
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.0
    }

    pub fn qubits(&self) -> usize {
        self.0.rows() / 2
    }

    pub fn gates(&self) -> usize {
        self.0.cols()
    }

    pub fn column(&self, k: usize) -> BitVector {
        self.0.column(k)
    }

    /// The nonzero rows of `CH`: row `i` holds the second bit of qubit `i`
    /// in every column. The interleaved zero rows are dropped.
    pub fn flip_rows(&self) -> BitMatrix {
        let n = self.qubits();
        let mut out = BitMatrix::zeros(n, self.gates());
        for q in 0..n {
            for k in self.0.row(2 * q + 1).iter_ones() {
                out.set(q, k, true);
            }
        }
        out
    }
}

pub fn h_matrix(c: &Circuit) -> HMatrix {
    let cols: Vec<BitVector> = c.gates.iter().map(|g| g.label.clone()).collect();
    HMatrix(BitMatrix::from_columns(&cols, 2 * c.qubits))
}

/// Decodes an H-matrix back into a circuit. Every column must carry an odd
/// number of `Y` factors.
pub fn circuit_from_h(h: &HMatrix, angle: Angle) -> Result<Circuit> {
    let gates = (0..h.gates())
        .map(|k| {
            let g = Gate::from_label(h.column(k))?;
            if !g.is_real() {
                return Err(Error::EvenYColumn {
                    column: k,
                    count: g.y_count(),
                });
            }
            Ok(g)
        })
        .collect::<Result<Vec<_>>>()?;
    Circuit::new(h.qubits(), gates, angle)
}

/// `b1^t C b2` with `C` the block diagonal of `[[0,1],[0,0]]`: the parity of
/// qubits where `b1` has its first bit set and `b2` its second.
pub fn c_form(b1: &BitVector, b2: &BitVector) -> bool {
    debug_assert_eq!(b1.len(), b2.len());
    (0..b1.len() / 2).fold(false, |acc, q| acc ^ (b1.get(2 * q) & b2.get(2 * q + 1)))
}

/// The product rule for real Paulis: `s_b1 s_b2 = sign * s_{b1 xor b2}`.
pub fn pauli_product(b1: &BitVector, b2: &BitVector) -> Result<(i8, BitVector)> {
    if b1.len() != b2.len() || b1.len() % 2 != 0 {
        return Err(Error::Dimension(format!(
            "labels of length {} and {}",
            b1.len(),
            b2.len()
        )));
    }
    let sign = if c_form(b1, b2) { -1 } else { 1 };
    Ok((sign, b1.xor(b2)))
}

/// `Q = lwtr(H^t C H)`, strictly lower triangular:
/// `Q[j][k] = b_j^t C b_k` for `j > k`, zero elsewhere.
pub fn q_matrix(h: &HMatrix) -> BitMatrix {
    let cols = h.matrix().columns();
    let n = cols.len();
    let mut q = BitMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..j {
            if c_form(&cols[j], &cols[k]) {
                q.set(j, k, true);
            }
        }
    }
    q
}

/// `<0...0| g_N ... g_1 |0...0>` by dense statevector evolution.
///
/// Gates are applied as `exp(-i o sigma_b theta/2)` with orientation
/// `o = +1` when the gate has `1 mod 4` Y factors and `-1` otherwise, in
/// complex arithmetic; the result must come out real.
pub fn simulate_amplitude(c: &Circuit, caps: &Caps) -> Result<f64> {
    if c.qubits > caps.max_qubits {
        return Err(Error::Cap {
            module: "circuit",
            what: "qubit count",
            value: c.qubits,
            cap: caps.max_qubits,
        });
    }
    if let Some((k, g)) = c.gates.iter().enumerate().find(|(_, g)| !g.is_real()) {
        return Err(Error::EvenYColumn {
            column: k,
            count: g.y_count(),
        });
    }
    let dim = 1usize << c.qubits;
    let (cos, sin) = c.angle.half_cos_sin();
    let mut psi = vec![Complex64::new(0.0, 0.0); dim];
    let mut next = psi.clone();
    psi[0] = Complex64::new(1.0, 0.0);
    for g in &c.gates {
        let flip = g.flip_mask() as usize;
        let phase = g.phase_mask() as usize;
        let y = g.y_count();
        let orientation = if y % 4 == 1 { 1.0 } else { -1.0 };
        // -i * o * sin * i^{#Y}
        let i_pow = Complex64::i().powu(y as u32);
        let coeff = Complex64::new(0.0, -orientation * sin) * i_pow;
        for (x, slot) in next.iter_mut().enumerate() {
            *slot = psi[x] * cos;
        }
        for (x, amp) in psi.iter().enumerate() {
            let sign = if (x & phase).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            next[x ^ flip] += coeff * sign * amp;
        }
        std::mem::swap(&mut psi, &mut next);
    }
    let amp = psi[0];
    if amp.im.abs() > 1e-12 {
        return Err(Error::NonReal(amp.im));
    }
    Ok(amp.re)
}

/// The kernel-sum form of the amplitude:
/// `(1 + l^2)^{-N/2} * sum_{a in ker CH} (-1)^{a^t Q a} l^{|a|}`.
pub fn expansion_amplitude(h: &HMatrix, lambda: f64, caps: &Caps) -> Result<f64> {
    let ch = h.flip_rows();
    let basis = ch.nullspace_vectors();
    if basis.len() > caps.max_nullity {
        return Err(Error::Cap {
            module: "circuit",
            what: "kernel dimension of CH",
            value: basis.len(),
            cap: caps.max_nullity,
        });
    }
    let q = q_matrix(h);
    let n = h.gates();
    let mut sum = 0.0;
    for_each_in_span(&basis, n, |a| {
        let term = lambda.powi(a.weight() as i32);
        if q.quadratic_form(a) {
            sum -= term;
        } else {
            sum += term;
        }
    });
    Ok(sum * (1.0 + lambda * lambda).powf(-(n as f64) / 2.0))
}

/// Problems that keep a circuit outside the real, lambda-compatible class.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics {
    /// `(gate index, Y count)` for every gate with an even number of Y's.
    pub even_y_gates: Vec<(usize, usize)>,
    /// Set when the angle does not give `tan(theta/2) > 0`.
    pub angle_problem: Option<String>,
}

impl Diagnostics {
    pub fn is_clean(&self) -> bool {
        self.even_y_gates.is_empty() && self.angle_problem.is_none()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return write!(f, "ok");
        }
        let mut parts = Vec::new();
        for (k, y) in &self.even_y_gates {
            parts.push(format!("gate {k} has {y} Y factors (needs an odd count)"));
        }
        if let Some(p) = &self.angle_problem {
            parts.push(p.clone());
        }
        write!(f, "{}", parts.join("; "))
    }
}

pub fn validate_real_circuit(c: &Circuit) -> Diagnostics {
    let even_y_gates = c
        .gates
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_real())
        .map(|(k, g)| (k, g.y_count()))
        .collect();
    let angle_problem = (!c.angle.is_lambda_compatible()).then(|| match c.angle {
        Angle::Lambda(l) => format!("lambda = {l} is not positive"),
        Angle::Theta(t) => format!(
            "theta = {t} gives tan(theta/2) = {:.6}, outside the positive range",
            (t / 2.0).tan()
        ),
    });
    Diagnostics {
        even_y_gates,
        angle_problem,
    }
}
