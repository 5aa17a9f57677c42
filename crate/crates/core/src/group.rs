//! Arithmetic over the cyclic group `Z_d`, the bicharacter phase `chi`,
//! and enumeration of multi-digit configurations.
//!
//! Every register in this crate is a tuple of digits over a common level
//! count `d`. The bicharacter `chi(g, h) = exp(2*pi*i*g*h/d)` is the single
//! phase primitive everything else (cluster amplitudes, Fourier and phase
//! gates, multiplier operators) is built from.

use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("digit value {value} out of range for modulus {modulus}")]
    DigitOutOfRange { value: u32, modulus: u32 },
    #[error("multi-indices are keyed by different vertex lists")]
    KeyMismatch,
    #[error("digit count {digits} does not match vertex count {vertices}")]
    LengthMismatch { digits: usize, vertices: usize },
    #[error("vertex {0} listed twice in a multi-index key")]
    DuplicateVertex(usize),
}

pub(crate) fn check_distinct(vertices: &[usize]) -> Result<(), GroupError> {
    for (pos, &v) in vertices.iter().enumerate() {
        if vertices[..pos].contains(&v) {
            return Err(GroupError::DuplicateVertex(v));
        }
    }
    Ok(())
}

/// An element of `Z_d` together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Digit {
    value: u32,
    modulus: u32,
}

impl Digit {
    pub fn new(value: u32, modulus: u32) -> Result<Self, GroupError> {
        if modulus < 2 {
            return Err(GroupError::InvalidModulus(modulus));
        }
        if value >= modulus {
            return Err(GroupError::DigitOutOfRange { value, modulus });
        }
        Ok(Digit { value, modulus })
    }

    /// Builds a digit from an arbitrary integer, reduced into `[0, d)`.
    pub fn reduce(value: i64, modulus: u32) -> Result<Self, GroupError> {
        if modulus < 2 {
            return Err(GroupError::InvalidModulus(modulus));
        }
        let value = value.rem_euclid(modulus as i64) as u32;
        Ok(Digit { value, modulus })
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }
}

/// Sum of two digits modulo their common `d`.
pub fn add_mod(a: Digit, b: Digit) -> Result<Digit, GroupError> {
    if a.modulus != b.modulus {
        return Err(GroupError::ModulusMismatch(a.modulus, b.modulus));
    }
    Ok(Digit {
        value: (a.value + b.value) % a.modulus,
        modulus: a.modulus,
    })
}

/// The unit phase `exp(2*pi*i*k/d)`. The exponent is reduced modulo `d`
/// in exact integer arithmetic before touching floating point.
pub fn phase(exponent: i64, d: u32) -> Complex64 {
    let k = exponent.rem_euclid(d as i64) as f64;
    Complex64::from_polar(1.0, TAU * k / d as f64)
}

/// The bicharacter `chi(g, h) = exp(2*pi*i*g*h/d)`.
pub fn chi(g: Digit, h: Digit) -> Result<Complex64, GroupError> {
    if g.modulus != h.modulus {
        return Err(GroupError::ModulusMismatch(g.modulus, h.modulus));
    }
    Ok(phase(g.value as i64 * h.value as i64, g.modulus))
}

/// A tuple of digits keyed by an ordered list of vertex identifiers.
///
/// The first vertex in the list is the most significant digit of the
/// mixed-radix rank used throughout the crate; see [`enumerate_group`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndex {
    d: u32,
    vertices: Vec<usize>,
    digits: Vec<u32>,
}

impl MultiIndex {
    pub fn new(vertices: Vec<usize>, digits: Vec<u32>, d: u32) -> Result<Self, GroupError> {
        if d < 2 {
            return Err(GroupError::InvalidModulus(d));
        }
        if vertices.len() != digits.len() {
            return Err(GroupError::LengthMismatch {
                digits: digits.len(),
                vertices: vertices.len(),
            });
        }
        check_distinct(&vertices)?;
        for &g in &digits {
            if g >= d {
                return Err(GroupError::DigitOutOfRange { value: g, modulus: d });
            }
        }
        Ok(MultiIndex { d, vertices, digits })
    }

    /// The all-zero tuple on the given vertices.
    pub fn zero(vertices: Vec<usize>, d: u32) -> Result<Self, GroupError> {
        let digits = vec![0; vertices.len()];
        Self::new(vertices, digits, d)
    }

    /// The tuple at the given mixed-radix rank, first vertex most significant.
    pub fn from_rank(vertices: Vec<usize>, d: u32, mut rank: usize) -> Result<Self, GroupError> {
        if d < 2 {
            return Err(GroupError::InvalidModulus(d));
        }
        check_distinct(&vertices)?;
        let mut digits = vec![0u32; vertices.len()];
        for slot in digits.iter_mut().rev() {
            *slot = (rank % d as usize) as u32;
            rank /= d as usize;
        }
        Ok(MultiIndex { d, vertices, digits })
    }

    pub fn modulus(&self) -> u32 {
        self.d
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&g| g == 0)
    }

    /// Digit attached to a vertex, if the vertex is part of this index.
    pub fn digit(&self, vertex: usize) -> Option<u32> {
        self.vertices
            .iter()
            .position(|&v| v == vertex)
            .map(|p| self.digits[p])
    }

    /// Mixed-radix rank; inverse of [`MultiIndex::from_rank`].
    pub fn rank(&self) -> usize {
        self.digits
            .iter()
            .fold(0usize, |acc, &g| acc * self.d as usize + g as usize)
    }

    /// Digits concatenated as text, e.g. `(1,0)` prints as `10`.
    /// Digits of two or more decimal places are comma-separated.
    pub fn digit_string(&self) -> String {
        if self.d <= 10 {
            self.digits.iter().map(|g| g.to_string()).collect()
        } else {
            let parts: Vec<String> = self.digits.iter().map(|g| g.to_string()).collect();
            parts.join(",")
        }
    }
}

/// Product of per-digit bicharacter phases,
/// `chi(h | h') = prod_k chi(h_k, h'_k)`.
pub fn chi_tuple(h: &MultiIndex, h2: &MultiIndex) -> Result<Complex64, GroupError> {
    if h.d != h2.d {
        return Err(GroupError::ModulusMismatch(h.d, h2.d));
    }
    if h.vertices != h2.vertices {
        return Err(GroupError::KeyMismatch);
    }
    let mut exponent = 0i64;
    for (a, b) in h.digits.iter().zip(&h2.digits) {
        exponent += *a as i64 * *b as i64;
    }
    Ok(phase(exponent, h.d))
}

/// All `d^|V|` tuples in mixed-radix order, first listed vertex most
/// significant. The empty vertex list yields the single empty tuple.
pub fn enumerate_group(vertices: &[usize], d: u32) -> Result<Vec<MultiIndex>, GroupError> {
    if d < 2 {
        return Err(GroupError::InvalidModulus(d));
    }
    let count = (d as usize).pow(vertices.len() as u32);
    (0..count)
        .map(|rank| MultiIndex::from_rank(vertices.to_vec(), d, rank))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn add_mod_examples() {
        let d2 = |v| Digit::new(v, 2).unwrap();
        assert_eq!(add_mod(d2(1), d2(1)).unwrap().value(), 0);
        let d3 = |v| Digit::new(v, 3).unwrap();
        assert_eq!(add_mod(d3(2), d3(2)).unwrap().value(), 1);
        for d in 2..=7 {
            for g in 0..d {
                let zero = Digit::new(0, d).unwrap();
                let g = Digit::new(g, d).unwrap();
                assert_eq!(add_mod(zero, g).unwrap(), g);
            }
        }
    }

    #[test]
    fn add_mod_rejects_mixed_moduli() {
        let a = Digit::new(1, 2).unwrap();
        let b = Digit::new(1, 3).unwrap();
        assert_eq!(add_mod(a, b), Err(GroupError::ModulusMismatch(2, 3)));
    }

    #[test]
    fn chi_examples() {
        let one2 = Digit::new(1, 2).unwrap();
        assert!(close(chi(one2, one2).unwrap(), Complex64::new(-1.0, 0.0)));
        for d in 2..=7 {
            let zero = Digit::new(0, d).unwrap();
            for h in 0..d {
                let h = Digit::new(h, d).unwrap();
                assert!(close(chi(zero, h).unwrap(), Complex64::new(1.0, 0.0)));
            }
        }
        let g = Digit::new(1, 3).unwrap();
        let h = Digit::new(2, 3).unwrap();
        let expected = Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI / 3.0);
        assert!(close(chi(g, h).unwrap(), expected));
    }

    #[test]
    fn chi_bicharacter_law_exhaustive() {
        for d in 2..=7u32 {
            for g in 0..d {
                for g2 in 0..d {
                    for h in 0..d {
                        let dig = |v| Digit::new(v, d).unwrap();
                        let sum = add_mod(dig(g), dig(g2)).unwrap();
                        let lhs = chi(sum, dig(h)).unwrap();
                        let rhs = chi(dig(g), dig(h)).unwrap() * chi(dig(g2), dig(h)).unwrap();
                        assert!(close(lhs, rhs), "d={d} g={g} g'={g2} h={h}");
                    }
                }
            }
        }
    }

    #[test]
    fn chi_symmetry_and_order() {
        for d in 2..=7u32 {
            for g in 0..d {
                for h in 0..d {
                    let a = chi(Digit::new(g, d).unwrap(), Digit::new(h, d).unwrap()).unwrap();
                    let b = chi(Digit::new(h, d).unwrap(), Digit::new(g, d).unwrap()).unwrap();
                    assert!(close(a, b));
                    let mut pow = Complex64::new(1.0, 0.0);
                    for _ in 0..d {
                        pow *= a;
                    }
                    assert!(close(pow, Complex64::new(1.0, 0.0)));
                }
            }
        }
    }

    #[test]
    fn chi_tuple_examples() {
        let zero = MultiIndex::zero(vec![0, 1], 2).unwrap();
        for rank in 0..4 {
            let other = MultiIndex::from_rank(vec![0, 1], 2, rank).unwrap();
            assert!(close(chi_tuple(&zero, &other).unwrap(), Complex64::new(1.0, 0.0)));
        }

        let h = MultiIndex::new(vec![0, 1], vec![1, 1], 2).unwrap();
        let h2 = MultiIndex::new(vec![0, 1], vec![1, 0], 2).unwrap();
        assert!(close(chi_tuple(&h, &h2).unwrap(), Complex64::new(-1.0, 0.0)));

        let a = MultiIndex::new(vec![0, 1], vec![1, 1], 3).unwrap();
        let expected = Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI / 3.0);
        assert!(close(chi_tuple(&a, &a).unwrap(), expected));
    }

    #[test]
    fn chi_tuple_rejects_key_mismatch() {
        let a = MultiIndex::zero(vec![0, 1], 2).unwrap();
        let b = MultiIndex::zero(vec![0, 2], 2).unwrap();
        assert_eq!(chi_tuple(&a, &b), Err(GroupError::KeyMismatch));
    }

    #[test]
    fn enumerate_ordering() {
        let single = enumerate_group(&[0], 2).unwrap();
        let digits: Vec<_> = single.iter().map(|m| m.digits().to_vec()).collect();
        assert_eq!(digits, vec![vec![0], vec![1]]);

        let pair = enumerate_group(&[0, 1], 2).unwrap();
        let digits: Vec<_> = pair.iter().map(|m| m.digits().to_vec()).collect();
        assert_eq!(
            digits,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
        );

        let nine = enumerate_group(&[0, 1], 3).unwrap();
        assert_eq!(nine.len(), 9);
        assert_eq!(nine[0].digits(), &[0, 0]);
        assert_eq!(nine[8].digits(), &[2, 2]);
    }

    #[test]
    fn digit_strings() {
        let m = MultiIndex::new(vec![0, 1], vec![1, 0], 2).unwrap();
        assert_eq!(m.digit_string(), "10");
        let wide = MultiIndex::new(vec![0, 1], vec![11, 3], 12).unwrap();
        assert_eq!(wide.digit_string(), "11,3");
    }

    #[test]
    fn multi_index_rejects_duplicate_vertices() {
        assert_eq!(
            MultiIndex::zero(vec![0, 0], 2).unwrap_err(),
            GroupError::DuplicateVertex(0)
        );
    }

    #[test]
    fn enumerate_empty_vertex_list() {
        let all = enumerate_group(&[], 3).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn enumerate_has_no_duplicates() {
        for d in 2..=4u32 {
            for v in 0..=3usize {
                let vertices: Vec<usize> = (0..v).collect();
                let all = enumerate_group(&vertices, d).unwrap();
                assert_eq!(all.len(), (d as usize).pow(v as u32));
                let mut seen: Vec<Vec<u32>> = all.iter().map(|m| m.digits().to_vec()).collect();
                seen.sort();
                seen.dedup();
                assert_eq!(seen.len(), all.len());
                for (rank, m) in all.iter().enumerate() {
                    assert_eq!(m.rank(), rank);
                }
            }
        }
    }
}
