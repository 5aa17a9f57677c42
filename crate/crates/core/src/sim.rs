//! Dense state-vector simulation for `Z_d` digit registers.
//!
//! States are complex amplitude arrays over `Z_d^V` in the mixed-radix
//! enumeration fixed by [`crate::group::enumerate_group`] (first vertex
//! most significant). Gates act in place through strided index
//! arithmetic; no gate matrix is ever materialized for a single gate
//! application. Unitary assembly applies a circuit to every basis state
//! and is capped at `d^v <= 4096`; plain state runs are capped at
//! `d^v <= 2^20`.

use crate::circuit::{Circuit, Gate};
use crate::graph::WeightedGraph;
use crate::group::MultiIndex;
use crate::linmap::LinearMap;
use ndarray::Array2;
use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

/// Amplitude cap for plain state runs.
pub const STATE_CAP: usize = 1 << 20;
/// Amplitude cap for assembling a full circuit unitary.
pub const UNITARY_CAP: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("register of {digits} digits at d={d} exceeds the cap of {cap} amplitudes")]
    RegisterTooLarge { digits: usize, d: u32, cap: usize },
    #[error("circuit is over {circuit} digits but the state holds {state}")]
    RegisterSizeMismatch { circuit: usize, state: usize },
    #[error("circuit has d={circuit} but the state has d={state}")]
    LevelMismatch { circuit: u32, state: u32 },
    #[error("gate digit index {index} out of range for register size {register}")]
    IndexOutOfRange { index: usize, register: usize },
    #[error("amplitude count {got} does not match register dimension {expected}")]
    AmplitudeCountMismatch { expected: usize, got: usize },
    #[error("vertex {0} appears in both the state and the embedded set")]
    OverlappingVertices(usize),
    #[error("vertex {0} is not part of the register")]
    NotInRegister(usize),
    #[error("level count mismatch: {0} vs {1}")]
    MixedLevels(u32, u32),
    #[error("vertex {0} listed twice in a register")]
    DuplicateVertex(usize),
}

fn checked_dim(digits: usize, d: u32, cap: usize) -> Result<usize, SimError> {
    let mut dim = 1usize;
    for _ in 0..digits {
        dim = dim
            .checked_mul(d as usize)
            .filter(|&n| n <= cap)
            .ok_or(SimError::RegisterTooLarge { digits, d, cap })?;
    }
    Ok(dim)
}

fn checked_register(vertices: &[usize], d: u32, cap: usize) -> Result<usize, SimError> {
    crate::group::check_distinct(vertices).map_err(|e| match e {
        crate::group::GroupError::DuplicateVertex(v) => SimError::DuplicateVertex(v),
        _ => unreachable!("check_distinct only reports duplicates"),
    })?;
    checked_dim(vertices.len(), d, cap)
}

/// The `d`-th roots of unity, `roots[k] = exp(2*pi*i*k/d)`.
pub(crate) fn unit_roots(d: u32) -> Vec<Complex64> {
    (0..d)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / d as f64))
        .collect()
}

/// A pure state (or unnormalized vector) on a labeled digit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    d: u32,
    vertices: Vec<usize>,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The ground state `|0...0>`.
    pub fn ground(vertices: Vec<usize>, d: u32) -> Result<Self, SimError> {
        let dim = checked_register(&vertices, d, STATE_CAP)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { d, vertices, amps })
    }

    /// The computational basis state for a digit configuration.
    pub fn basis(config: &MultiIndex) -> Result<Self, SimError> {
        let mut state = Self::ground(config.vertices().to_vec(), config.modulus())?;
        state.amps[0] = Complex64::new(0.0, 0.0);
        state.amps[config.rank()] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    pub fn from_amplitudes(
        vertices: Vec<usize>,
        d: u32,
        amps: Vec<Complex64>,
    ) -> Result<Self, SimError> {
        let dim = checked_register(&vertices, d, STATE_CAP)?;
        if amps.len() != dim {
            return Err(SimError::AmplitudeCountMismatch { expected: dim, got: amps.len() });
        }
        Ok(StateVector { d, vertices, amps })
    }

    pub fn level_count(&self) -> u32 {
        self.d
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn num_digits(&self) -> usize {
        self.vertices.len()
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for a in &mut out.amps {
            *a *= factor;
        }
        out
    }

    /// Replaces the vertex labels without touching amplitudes.
    pub fn relabeled(&self, vertices: Vec<usize>) -> Result<Self, SimError> {
        if vertices.len() != self.vertices.len() {
            return Err(SimError::RegisterSizeMismatch {
                circuit: vertices.len(),
                state: self.vertices.len(),
            });
        }
        Ok(StateVector { d: self.d, vertices, amps: self.amps.clone() })
    }

    /// Largest absolute amplitude difference against another state on the
    /// same register.
    pub fn max_amp_diff(&self, other: &StateVector) -> f64 {
        assert_eq!(self.vertices, other.vertices, "register mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn stride(&self, position: usize) -> usize {
        (self.d as usize).pow((self.num_digits() - 1 - position) as u32)
    }

    // The gather/scatter loops below mirror the strided index arithmetic;
    // iterator forms would split each gather from its scatter.
    #[allow(clippy::needless_range_loop)]
    fn apply_gate_in_place(&mut self, gate: &Gate, roots: &[Complex64]) {
        let d = self.d as usize;
        match *gate {
            Gate::Fourier(p) => self.fourier_in_place(p, roots, false),
            Gate::FourierInv(p) => self.fourier_in_place(p, roots, true),
            Gate::CShift { control, target, power } => {
                let sc = self.stride(control);
                let st = self.stride(target);
                let block = st * d;
                let mut temp = vec![Complex64::new(0.0, 0.0); d];
                let mut base_hi = 0;
                while base_hi < self.amps.len() {
                    for lo in 0..st {
                        let base = base_hi + lo;
                        let g_c = (base / sc) % d;
                        let shift = (power as usize * g_c) % d;
                        if shift == 0 {
                            continue;
                        }
                        for g in 0..d {
                            temp[g] = self.amps[base + g * st];
                        }
                        for g in 0..d {
                            self.amps[base + (g + shift) % d * st] = temp[g];
                        }
                    }
                    base_hi += block;
                }
            }
            Gate::CPhase { a, b, power } => {
                let sa = self.stride(a);
                let sb = self.stride(b);
                for (idx, amp) in self.amps.iter_mut().enumerate() {
                    let g_a = (idx / sa) % d;
                    let g_b = (idx / sb) % d;
                    *amp *= roots[power as usize * g_a * g_b % d];
                }
            }
        }
    }

    #[allow(clippy::needless_range_loop)]
    fn fourier_in_place(&mut self, position: usize, roots: &[Complex64], inverse: bool) {
        let d = self.d as usize;
        let stride = self.stride(position);
        let block = stride * d;
        let scale = 1.0 / (d as f64).sqrt();
        let mut temp = vec![Complex64::new(0.0, 0.0); d];
        let mut base_hi = 0;
        while base_hi < self.amps.len() {
            for lo in 0..stride {
                let base = base_hi + lo;
                for g in 0..d {
                    temp[g] = self.amps[base + g * stride];
                }
                for h in 0..d {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for g in 0..d {
                        let w = roots[g * h % d];
                        acc += temp[g] * if inverse { w.conj() } else { w };
                    }
                    self.amps[base + h * stride] = acc * scale;
                }
            }
            base_hi += block;
        }
    }

    /// Applies a single gate, returning the new state.
    pub fn apply_gate(&self, gate: &Gate) -> Result<StateVector, SimError> {
        let (a, b) = gate.support();
        for index in [Some(a), b].into_iter().flatten() {
            if index >= self.num_digits() {
                return Err(SimError::IndexOutOfRange {
                    index,
                    register: self.num_digits(),
                });
            }
        }
        let mut out = self.clone();
        out.apply_gate_in_place(gate, &unit_roots(self.d));
        Ok(out)
    }

    /// One line per basis element: `<digits> <re> <im>`, digits in
    /// enumeration order, 17 significant digits. Digits of two or more
    /// decimal places (d > 10) are comma-separated.
    pub fn dump(&self) -> String {
        let d = self.d as usize;
        let n = self.num_digits();
        let mut out = String::new();
        let mut digits = vec![0usize; n];
        for (rank, amp) in self.amps.iter().enumerate() {
            let mut rest = rank;
            for pos in (0..n).rev() {
                digits[pos] = rest % d;
                rest /= d;
            }
            let key: String = if d <= 10 {
                digits.iter().map(|g| g.to_string()).collect()
            } else {
                let parts: Vec<String> = digits.iter().map(|g| g.to_string()).collect();
                parts.join(",")
            };
            out.push_str(&format!("{key} {:.16e} {:.16e}\n", amp.re, amp.im));
        }
        out
    }
}

/// A Haar-agnostic random normalized state: uniform complex box
/// amplitudes, then normalized. Deterministic for a given generator
/// state.
pub fn random_state<R: rand::Rng>(
    vertices: Vec<usize>,
    d: u32,
    rng: &mut R,
) -> Result<StateVector, SimError> {
    let dim = checked_dim(vertices.len(), d, STATE_CAP)?;
    let mut amps: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(vertices, d, amps)
}

/// Runs a circuit over a state, gates applied in list order. The input
/// state is untouched.
pub fn run(circuit: &Circuit, state: &StateVector) -> Result<StateVector, SimError> {
    if circuit.level_count() != state.level_count() {
        return Err(SimError::LevelMismatch {
            circuit: circuit.level_count(),
            state: state.level_count(),
        });
    }
    if circuit.register_size() != state.num_digits() {
        return Err(SimError::RegisterSizeMismatch {
            circuit: circuit.register_size(),
            state: state.num_digits(),
        });
    }
    let roots = unit_roots(state.level_count());
    let mut out = state.clone();
    for gate in circuit.gates() {
        out.apply_gate_in_place(gate, &roots);
    }
    Ok(out)
}

/// Assembles the full unitary of a circuit by applying it to every basis
/// state; columns follow the register enumeration. Desk scale only.
pub fn circuit_unitary(circuit: &Circuit) -> Result<LinearMap, SimError> {
    let q = circuit.register_size();
    let d = circuit.level_count();
    let dim = checked_dim(q, d, UNITARY_CAP)?;
    let wires: Vec<usize> = (0..q).collect();
    let roots = unit_roots(d);
    let mut mat = Array2::zeros((dim, dim));
    for col in 0..dim {
        let config = MultiIndex::from_rank(wires.clone(), d, col)
            .expect("rank within register dimension");
        let mut state = StateVector::basis(&config)?;
        for gate in circuit.gates() {
            state.apply_gate_in_place(gate, &roots);
        }
        for (row, amp) in state.amps.iter().enumerate() {
            mat[[row, col]] = *amp;
        }
    }
    LinearMap::from_matrix(wires.clone(), wires, d, mat)
}

/// The closed-form cluster state of a weighted graph: amplitude
/// `d^(-|V|/2) * prod_(i<j) chi(g_i, g_j)^w(i,j)` at configuration `g`.
/// Independent of any circuit.
pub fn cluster_state(graph: &WeightedGraph) -> Result<StateVector, SimError> {
    let d = graph.level_count();
    let v = graph.vertex_count();
    let dim = checked_dim(v, d, STATE_CAP)?;
    let roots = unit_roots(d);
    let edges: Vec<(usize, usize, i64)> = graph
        .edges()
        .map(|(i, j, w)| (i, j, w.rem_euclid(d as i64)))
        .collect();
    let scale = (d as f64).sqrt().powi(-(v as i32));
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let mut digits = vec![0usize; v];
    for (rank, amp) in amps.iter_mut().enumerate() {
        let mut rest = rank;
        for pos in (0..v).rev() {
            digits[pos] = rest % d as usize;
            rest /= d as usize;
        }
        let mut exponent = 0usize;
        for &(i, j, w) in &edges {
            exponent += w as usize * digits[i] * digits[j] % d as usize;
        }
        *amp = roots[exponent % d as usize] * scale;
    }
    StateVector::from_amplitudes(graph.vertices(), d, amps)
}

/// Tensors the all-zero state on `zeros` onto a state; the result is laid
/// out on the ascending union of both vertex sets.
pub fn embed_ground(state: &StateVector, zeros: &[usize]) -> Result<StateVector, SimError> {
    for &k in zeros {
        if state.vertices.contains(&k) {
            return Err(SimError::OverlappingVertices(k));
        }
    }
    let mut vertices: Vec<usize> = state.vertices.iter().copied().chain(zeros.iter().copied()).collect();
    vertices.sort_unstable();
    let d = state.d;
    let dim = checked_dim(vertices.len(), d, STATE_CAP)?;
    // Position of each original digit inside the merged register.
    let positions: Vec<usize> = state
        .vertices
        .iter()
        .map(|v| vertices.iter().position(|u| u == v).expect("member of union"))
        .collect();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let total = vertices.len();
    let mut scatter = vec![0usize; state.num_digits()];
    for (rank, amp) in state.amps.iter().enumerate() {
        let mut rest = rank;
        for pos in (0..state.num_digits()).rev() {
            scatter[pos] = rest % d as usize;
            rest /= d as usize;
        }
        let mut target = 0usize;
        for (pos, &digit) in positions.iter().zip(&scatter) {
            target += digit * (d as usize).pow((total - 1 - pos) as u32);
        }
        amps[target] = *amp;
    }
    StateVector::from_amplitudes(vertices, d, amps)
}

/// Projects the digits named by `outcome` onto that configuration and
/// drops them from the register. Returns the unnormalized remainder and
/// the branch probability (its squared norm).
pub fn postselect(
    state: &StateVector,
    outcome: &MultiIndex,
) -> Result<(StateVector, f64), SimError> {
    if outcome.modulus() != state.d {
        return Err(SimError::MixedLevels(outcome.modulus(), state.d));
    }
    let d = state.d as usize;
    let measured: Vec<(usize, u32)> = outcome
        .vertices()
        .iter()
        .zip(outcome.digits())
        .map(|(&vertex, &digit)| {
            state
                .vertices
                .iter()
                .position(|&u| u == vertex)
                .map(|pos| (pos, digit))
                .ok_or(SimError::NotInRegister(vertex))
        })
        .collect::<Result<_, _>>()?;
    let keep: Vec<usize> = (0..state.num_digits())
        .filter(|p| !measured.iter().any(|&(mp, _)| mp == *p))
        .collect();
    let vertices: Vec<usize> = keep.iter().map(|&p| state.vertices[p]).collect();
    let dim = checked_dim(vertices.len(), state.d, STATE_CAP)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let total = state.num_digits();
    let mut digits = vec![0usize; total];
    'outer: for (rank, amp) in state.amps.iter().enumerate() {
        let mut rest = rank;
        for pos in (0..total).rev() {
            digits[pos] = rest % d;
            rest /= d;
        }
        for &(pos, digit) in &measured {
            if digits[pos] != digit as usize {
                continue 'outer;
            }
        }
        let mut target = 0usize;
        for &pos in &keep {
            target = target * d + digits[pos];
        }
        amps[target] = *amp;
    }
    let probability: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    Ok((
        StateVector::from_amplitudes(vertices, state.d, amps)?,
        probability,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate_group;

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_amps(state: &StateVector, expected: &[Complex64]) {
        assert_eq!(state.dim(), expected.len());
        for (got, want) in state.amplitudes().iter().zip(expected) {
            assert!(
                (got - want).norm() < 1e-12,
                "amplitudes differ: {got} vs {want}"
            );
        }
    }

    #[test]
    fn ground_states() {
        let s = StateVector::ground(vec![0], 2).unwrap();
        assert_amps(&s, &[c(1.0, 0.0), c(0.0, 0.0)]);
        let s = StateVector::ground(vec![0, 1], 2).unwrap();
        assert_eq!(s.dim(), 4);
        assert_amps(&s, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let s = StateVector::ground(vec![0], 3).unwrap();
        assert_amps(&s, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn fourier_is_hadamard_at_d2() {
        let s = StateVector::ground(vec![0], 2).unwrap();
        let out = s.apply_gate(&Gate::Fourier(0)).unwrap();
        assert_amps(&out, &[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]);
    }

    #[test]
    fn cshift_is_cnot_at_d2() {
        let config = MultiIndex::new(vec![0, 1], vec![1, 0], 2).unwrap();
        let s = StateVector::basis(&config).unwrap();
        let out = s
            .apply_gate(&Gate::CShift { control: 0, target: 1, power: 1 })
            .unwrap();
        // |10> -> |11>
        assert_amps(&out, &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn cphase_multiplies_by_chi() {
        let config = MultiIndex::new(vec![0, 1], vec![1, 2], 3).unwrap();
        let s = StateVector::basis(&config).unwrap();
        let out = s.apply_gate(&Gate::cphase(0, 1, 1)).unwrap();
        let expected = Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI / 3.0);
        assert!((out.amplitudes()[config.rank()] - expected).norm() < 1e-12);
    }

    #[test]
    fn run_empty_circuit_is_identity() {
        let s = StateVector::ground(vec![0, 1], 3).unwrap();
        let out = run(&Circuit::new(3, 2), &s).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn run_single_edge_cluster_circuit() {
        let mut circuit = Circuit::new(2, 2);
        circuit.push(Gate::Fourier(0));
        circuit.push(Gate::CShift { control: 0, target: 1, power: 1 });
        circuit.push(Gate::Fourier(1));
        let out = run(&circuit, &StateVector::ground(vec![0, 1], 2).unwrap()).unwrap();
        assert_amps(&out, &[c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)]);
    }

    #[test]
    fn unitary_of_single_fourier_is_dft() {
        let mut circuit = Circuit::new(2, 1);
        circuit.push(Gate::Fourier(0));
        let u = circuit_unitary(&circuit).unwrap();
        let m = u.matrix();
        for (row, col, want) in [
            (0, 0, 1.0),
            (0, 1, 1.0),
            (1, 0, 1.0),
            (1, 1, -1.0),
        ] {
            assert!((m[[row, col]] - c(want * FRAC_1_SQRT_2, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn run_rejects_mismatched_registers() {
        let s = StateVector::ground(vec![0], 2).unwrap();
        assert_eq!(
            run(&Circuit::new(2, 2), &s).unwrap_err(),
            SimError::RegisterSizeMismatch { circuit: 2, state: 1 }
        );
        assert_eq!(
            run(&Circuit::new(3, 1), &s).unwrap_err(),
            SimError::LevelMismatch { circuit: 3, state: 2 }
        );
    }

    #[test]
    fn cluster_state_examples() {
        let edgeless = WeightedGraph::new(2, 3, &[], &[]).unwrap();
        let s = cluster_state(&edgeless).unwrap();
        let amp = 1.0 / (8.0f64).sqrt();
        for a in s.amplitudes() {
            assert!((a - c(amp, 0.0)).norm() < 1e-12);
        }

        let edge = WeightedGraph::new(2, 2, &[(0, 1, 1)], &[]).unwrap();
        let s = cluster_state(&edge).unwrap();
        assert_amps(&s, &[c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)]);

        let edge3 = WeightedGraph::new(3, 2, &[(0, 1, 1)], &[]).unwrap();
        let s = cluster_state(&edge3).unwrap();
        let config = MultiIndex::new(vec![0, 1], vec![2, 2], 3).unwrap();
        let expected = Complex64::from_polar(1.0 / 3.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((s.amplitudes()[config.rank()] - expected).norm() < 1e-12);
    }

    #[test]
    fn gate_powers_cycle_to_identity() {
        // Fourier^4 = 1 and CShift^d = 1, exhaustively at small d.
        for d in 2..=5u32 {
            for config in enumerate_group(&[0, 1], d).unwrap() {
                let start = StateVector::basis(&config).unwrap();
                let mut s = start.clone();
                for _ in 0..4 {
                    s = s.apply_gate(&Gate::Fourier(0)).unwrap();
                }
                assert!(s.max_amp_diff(&start) < 1e-12);

                let mut s = start.clone();
                for _ in 0..d {
                    s = s
                        .apply_gate(&Gate::CShift { control: 0, target: 1, power: 1 })
                        .unwrap();
                }
                assert!(s.max_amp_diff(&start) < 1e-12);
            }
        }
    }

    #[test]
    fn embed_ground_examples() {
        let amps = vec![c(0.6, 0.0), c(0.8, 0.0)];
        let s = StateVector::from_amplitudes(vec![1], 2, amps).unwrap();
        let embedded = embed_ground(&s, &[0]).unwrap();
        assert_eq!(embedded.vertices(), &[0, 1]);
        assert_amps(
            &embedded,
            &[c(0.6, 0.0), c(0.8, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        assert!((embedded.norm() - s.norm()).abs() < 1e-12);

        let unchanged = embed_ground(&s, &[]).unwrap();
        assert_eq!(unchanged.amplitudes(), s.amplitudes());

        assert_eq!(
            embed_ground(&s, &[1]).unwrap_err(),
            SimError::OverlappingVertices(1)
        );
    }

    #[test]
    fn postselect_product_state() {
        let amps = vec![c(0.6, 0.0), c(0.8, 0.0)];
        let s = StateVector::from_amplitudes(vec![1], 2, amps).unwrap();
        let full = embed_ground(&s, &[0]).unwrap();

        let zero = MultiIndex::zero(vec![0], 2).unwrap();
        let (reduced, p) = postselect(&full, &zero).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert_eq!(reduced.vertices(), &[1]);
        assert_amps(&reduced, s.amplitudes());

        let one = MultiIndex::new(vec![0], vec![1], 2).unwrap();
        let (reduced, p) = postselect(&full, &one).unwrap();
        assert!(p.abs() < 1e-12);
        assert!(reduced.amplitudes().iter().all(|a| a.norm() < 1e-12));
    }

    #[test]
    fn postselect_cluster_state_probability() {
        let edge = WeightedGraph::new(2, 2, &[(0, 1, 1)], &[]).unwrap();
        let s = cluster_state(&edge).unwrap();
        let zero = MultiIndex::zero(vec![0], 2).unwrap();
        let (_, p) = postselect(&s, &zero).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn embed_then_postselect_is_the_identity() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5E);
        for d in [2u32, 3, 5] {
            for _ in 0..10 {
                let state = random_state(vec![1, 4], d, &mut rng).unwrap();
                let embedded = embed_ground(&state, &[0, 3]).unwrap();
                assert_eq!(embedded.vertices(), &[0, 1, 3, 4]);
                let zeros = MultiIndex::zero(vec![0, 3], d).unwrap();
                let (back, p) = postselect(&embedded, &zeros).unwrap();
                assert!((p - 1.0).abs() < 1e-12);
                assert!(back.max_amp_diff(&state) < 1e-12);
            }
        }
    }

    #[test]
    fn postselect_probabilities_are_complete() {
        let graph = WeightedGraph::new(3, 3, &[(0, 1, 1), (1, 2, 2)], &[]).unwrap();
        let s = cluster_state(&graph).unwrap();
        let mut total = 0.0;
        for outcome in enumerate_group(&[0, 2], 3).unwrap() {
            let (_, p) = postselect(&s, &outcome).unwrap();
            total += p;
        }
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn dump_format() {
        let s = StateVector::ground(vec![0, 1], 2).unwrap();
        let dump = s.dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "00 1.0000000000000000e0 0.0000000000000000e0");
        assert_eq!(lines[3], "11 0.0000000000000000e0 0.0000000000000000e0");
    }

    #[test]
    fn unitary_cap_enforced() {
        let circuit = Circuit::new(2, 13); // 8192 > 4096
        assert!(matches!(
            circuit_unitary(&circuit).unwrap_err(),
            SimError::RegisterTooLarge { .. }
        ));
    }
}
