//! Dense complex matrices between labeled digit registers, plus the
//! closed-form operators used as independent references: Fourier layers,
//! ground-state embeddings, shift and multiplier operators and the
//! diagonal edge-phase operator of a weighted graph.
//!
//! Everything here is built entrywise from definitions, never by running
//! a circuit, so these maps can stand on the other side of an identity
//! check from the simulator.

use crate::graph::WeightedGraph;
use crate::group::MultiIndex;
use crate::sim::{SimError, StateVector, UNITARY_CAP};
use ndarray::Array2;
use num_complex::Complex64;

fn checked_dim(digits: usize, d: u32) -> Result<usize, SimError> {
    let mut dim = 1usize;
    for _ in 0..digits {
        dim = dim
            .checked_mul(d as usize)
            .filter(|&n| n <= UNITARY_CAP)
            .ok_or(SimError::RegisterTooLarge { digits, d, cap: UNITARY_CAP })?;
    }
    Ok(dim)
}

fn digits_of(mut rank: usize, len: usize, d: usize) -> Vec<usize> {
    let mut digits = vec![0usize; len];
    for pos in (0..len).rev() {
        digits[pos] = rank % d;
        rank /= d;
    }
    digits
}

/// A dense complex matrix from the register `domain` to the register
/// `codomain` (row index runs over the codomain enumeration).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    d: u32,
    domain: Vec<usize>,
    codomain: Vec<usize>,
    mat: Array2<Complex64>,
}

impl LinearMap {
    pub fn from_matrix(
        domain: Vec<usize>,
        codomain: Vec<usize>,
        d: u32,
        mat: Array2<Complex64>,
    ) -> Result<Self, SimError> {
        let dom_dim = checked_dim(domain.len(), d)?;
        let cod_dim = checked_dim(codomain.len(), d)?;
        assert_eq!(
            mat.dim(),
            (cod_dim, dom_dim),
            "matrix shape does not match the registers"
        );
        Ok(LinearMap { d, domain, codomain, mat })
    }

    pub fn identity(register: Vec<usize>, d: u32) -> Result<Self, SimError> {
        let dim = checked_dim(register.len(), d)?;
        Ok(LinearMap {
            d,
            domain: register.clone(),
            codomain: register,
            mat: Array2::eye(dim),
        })
    }

    pub fn level_count(&self) -> u32 {
        self.d
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn codomain(&self) -> &[usize] {
        &self.codomain
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.mat
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.d, other.d, "level count mismatch");
        assert_eq!(
            self.domain, other.codomain,
            "composition registers do not match"
        );
        LinearMap {
            d: self.d,
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            mat: self.mat.dot(&other.mat),
        }
    }

    pub fn adjoint(&self) -> LinearMap {
        let mut mat = Array2::zeros((self.mat.ncols(), self.mat.nrows()));
        for ((r, c), value) in self.mat.indexed_iter() {
            mat[[c, r]] = value.conj();
        }
        LinearMap {
            d: self.d,
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            mat,
        }
    }

    pub fn scaled(&self, factor: Complex64) -> LinearMap {
        LinearMap {
            d: self.d,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            mat: self.mat.mapv(|v| v * factor),
        }
    }

    /// Multiplies row `r` by `diag[r]`.
    pub fn scale_rows(&self, diag: &[Complex64]) -> LinearMap {
        assert_eq!(diag.len(), self.mat.nrows());
        let mut mat = self.mat.clone();
        for (r, mut row) in mat.rows_mut().into_iter().enumerate() {
            for value in row.iter_mut() {
                *value *= diag[r];
            }
        }
        LinearMap {
            d: self.d,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            mat,
        }
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector, SimError> {
        assert_eq!(state.vertices(), self.domain.as_slice(), "register mismatch");
        if state.level_count() != self.d {
            return Err(SimError::MixedLevels(state.level_count(), self.d));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.mat.nrows()];
        for (r, out) in amps.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (c, amp) in state.amplitudes().iter().enumerate() {
                acc += self.mat[[r, c]] * amp;
            }
            *out = acc;
        }
        StateVector::from_amplitudes(self.codomain.clone(), self.d, amps)
    }

    /// Column `c` extracted as a state on the codomain register.
    pub fn column(&self, c: usize) -> StateVector {
        let amps: Vec<Complex64> = (0..self.mat.nrows()).map(|r| self.mat[[r, c]]).collect();
        StateVector::from_amplitudes(self.codomain.clone(), self.d, amps)
            .expect("codomain register fits the cap")
    }

    pub fn max_abs_diff(&self, other: &LinearMap) -> f64 {
        assert_eq!(self.mat.dim(), other.mat.dim(), "shape mismatch");
        self.mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from the identity matrix.
    pub fn deviation_from_identity(&self) -> f64 {
        let (rows, cols) = self.mat.dim();
        assert_eq!(rows, cols, "identity deviation of a rectangular map");
        let mut dev: f64 = 0.0;
        for ((r, c), value) in self.mat.indexed_iter() {
            let want = if r == c { 1.0 } else { 0.0 };
            dev = dev.max((value - Complex64::new(want, 0.0)).norm());
        }
        dev
    }

    fn positions_of(&self, vertices: &[usize], of_domain: bool) -> Result<Vec<usize>, SimError> {
        let register = if of_domain { &self.domain } else { &self.codomain };
        vertices
            .iter()
            .map(|&v| {
                register
                    .iter()
                    .position(|&u| u == v)
                    .ok_or(SimError::NotInRegister(v))
            })
            .collect()
    }

    /// Left-multiplies by the Fourier layer on the named codomain digits
    /// (its adjoint when `adjoint` is set), exploiting the tensor factor
    /// structure instead of a full matrix product.
    #[allow(clippy::needless_range_loop)]
    pub fn fourier_rows(&self, vertices: &[usize], adjoint: bool) -> Result<LinearMap, SimError> {
        let positions = self.positions_of(vertices, false)?;
        let mut out = self.clone();
        let d = self.d as usize;
        let roots = crate::sim::unit_roots(self.d);
        let scale = 1.0 / (d as f64).sqrt();
        let rows = out.mat.nrows();
        let mut temp = vec![Complex64::new(0.0, 0.0); d];
        for &p in &positions {
            let stride = d.pow((self.codomain.len() - 1 - p) as u32);
            let block = stride * d;
            for col in 0..out.mat.ncols() {
                let mut base_hi = 0;
                while base_hi < rows {
                    for lo in 0..stride {
                        let base = base_hi + lo;
                        for g in 0..d {
                            temp[g] = out.mat[[base + g * stride, col]];
                        }
                        for h in 0..d {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for g in 0..d {
                                let w = roots[g * h % d];
                                acc += temp[g] * if adjoint { w.conj() } else { w };
                            }
                            out.mat[[base + h * stride, col]] = acc * scale;
                        }
                    }
                    base_hi += block;
                }
            }
        }
        Ok(out)
    }

    /// Right-multiplies by the Fourier layer on the named domain digits
    /// (its adjoint when `adjoint` is set).
    #[allow(clippy::needless_range_loop)]
    pub fn fourier_cols(&self, vertices: &[usize], adjoint: bool) -> Result<LinearMap, SimError> {
        let positions = self.positions_of(vertices, true)?;
        let mut out = self.clone();
        let d = self.d as usize;
        let roots = crate::sim::unit_roots(self.d);
        let scale = 1.0 / (d as f64).sqrt();
        let cols = out.mat.ncols();
        let mut temp = vec![Complex64::new(0.0, 0.0); d];
        for &p in &positions {
            let stride = d.pow((self.domain.len() - 1 - p) as u32);
            let block = stride * d;
            for row in 0..out.mat.nrows() {
                let mut base_hi = 0;
                while base_hi < cols {
                    for lo in 0..stride {
                        let base = base_hi + lo;
                        for g in 0..d {
                            temp[g] = out.mat[[row, base + g * stride]];
                        }
                        // (M F)[., g'] = sum_g M[., g] F[g, g']
                        for h in 0..d {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for g in 0..d {
                                let w = roots[g * h % d];
                                acc += temp[g] * if adjoint { w.conj() } else { w };
                            }
                            out.mat[[row, base + h * stride]] = acc * scale;
                        }
                    }
                    base_hi += block;
                }
            }
        }
        Ok(out)
    }
}

/// The Fourier layer `F_K` on a register, built entrywise from the
/// bicharacter; identity on digits outside `K`.
pub fn fourier_on(register: &[usize], k: &[usize], d: u32) -> Result<LinearMap, SimError> {
    LinearMap::identity(register.to_vec(), d)?.fourier_rows(k, false)
}

/// The isometry tensoring the all-zero state onto the digits in `K`;
/// maps the register without `K` into the full register.
pub fn ground_embedding(register: &[usize], k: &[usize], d: u32) -> Result<LinearMap, SimError> {
    let mut positions = Vec::with_capacity(k.len());
    for &vertex in k {
        let p = register
            .iter()
            .position(|&u| u == vertex)
            .ok_or(SimError::NotInRegister(vertex))?;
        positions.push(p);
    }
    let rest: Vec<usize> = register
        .iter()
        .copied()
        .filter(|v| !k.contains(v))
        .collect();
    let cod_dim = checked_dim(register.len(), d)?;
    let dom_dim = checked_dim(rest.len(), d)?;
    let keep: Vec<usize> = (0..register.len())
        .filter(|p| !positions.contains(p))
        .collect();
    let mut mat = Array2::zeros((cod_dim, dom_dim));
    let du = d as usize;
    for col in 0..dom_dim {
        let digits = digits_of(col, rest.len(), du);
        let mut row = 0usize;
        for (slot, &p) in keep.iter().enumerate() {
            row += digits[slot] * du.pow((register.len() - 1 - p) as u32);
        }
        mat[[row, col]] = Complex64::new(1.0, 0.0);
    }
    LinearMap::from_matrix(rest, register.to_vec(), d, mat)
}

/// The shift operator `u(h)` adding `h` to the digits it names; a
/// permutation of the register basis.
pub fn shift_operator(register: &[usize], h: &MultiIndex) -> Result<LinearMap, SimError> {
    let d = h.modulus();
    let dim = checked_dim(register.len(), d)?;
    let mut offsets = vec![0u32; register.len()];
    for (&vertex, &digit) in h.vertices().iter().zip(h.digits()) {
        let p = register
            .iter()
            .position(|&u| u == vertex)
            .ok_or(SimError::NotInRegister(vertex))?;
        offsets[p] = digit;
    }
    let du = d as usize;
    let mut mat = Array2::zeros((dim, dim));
    for col in 0..dim {
        let digits = digits_of(col, register.len(), du);
        let mut row = 0usize;
        for (pos, &g) in digits.iter().enumerate() {
            row = row * du + (g + offsets[pos] as usize) % du;
        }
        mat[[row, col]] = Complex64::new(1.0, 0.0);
    }
    LinearMap::from_matrix(register.to_vec(), register.to_vec(), d, mat)
}

/// The multiplier operator `u_hat(h)`, diagonal with entries
/// `chi(h | g)` over the digits it names; the Fourier conjugate of
/// [`shift_operator`].
pub fn multiplier_operator(register: &[usize], h: &MultiIndex) -> Result<LinearMap, SimError> {
    let d = h.modulus();
    let dim = checked_dim(register.len(), d)?;
    let mut weights = vec![0u32; register.len()];
    for (&vertex, &digit) in h.vertices().iter().zip(h.digits()) {
        let p = register
            .iter()
            .position(|&u| u == vertex)
            .ok_or(SimError::NotInRegister(vertex))?;
        weights[p] = digit;
    }
    let du = d as usize;
    let roots = crate::sim::unit_roots(d);
    let mut mat = Array2::zeros((dim, dim));
    for idx in 0..dim {
        let digits = digits_of(idx, register.len(), du);
        let mut exponent = 0usize;
        for (pos, &g) in digits.iter().enumerate() {
            exponent += weights[pos] as usize * g % du;
        }
        mat[[idx, idx]] = roots[exponent % du];
    }
    LinearMap::from_matrix(register.to_vec(), register.to_vec(), d, mat)
}

/// The diagonal edge-phase operator of a graph: entry
/// `prod_(i<j) chi(g_i, g_j)^w(i,j)` at configuration `g`, equal to
/// `d^(|V|/2)` times the cluster amplitude.
pub fn phase_operator(graph: &WeightedGraph) -> Result<LinearMap, SimError> {
    let d = graph.level_count();
    let v = graph.vertex_count();
    let dim = checked_dim(v, d)?;
    let du = d as usize;
    let roots = crate::sim::unit_roots(d);
    let edges: Vec<(usize, usize, usize)> = graph
        .edges()
        .map(|(i, j, w)| (i, j, w.rem_euclid(d as i64) as usize))
        .collect();
    let mut mat = Array2::zeros((dim, dim));
    for idx in 0..dim {
        let digits = digits_of(idx, v, du);
        let mut exponent = 0usize;
        for &(i, j, w) in &edges {
            exponent += w * digits[i] * digits[j] % du;
        }
        mat[[idx, idx]] = roots[exponent % du];
    }
    let register = graph.vertices();
    LinearMap::from_matrix(register.clone(), register, d, mat)
}

/// The cluster creation operator as a matrix: the edge-phase operator
/// composed after the Fourier layer on every digit.
pub fn creation_operator(graph: &WeightedGraph) -> Result<LinearMap, SimError> {
    let register = graph.vertices();
    let d = graph.level_count();
    let fourier_all = fourier_on(&register, &register, d)?;
    let phases = phase_operator(graph)?;
    let diag: Vec<Complex64> = (0..fourier_all.matrix().nrows())
        .map(|i| phases.matrix()[[i, i]])
        .collect();
    Ok(fourier_all.scale_rows(&diag))
}
