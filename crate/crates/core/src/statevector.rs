//! Dense complex state vectors and the primitive unitaries everything else
//! composes.
//!
//! Conventions, fixed globally:
//!
//! * Little-endian bit order: bit `j` of basis index `i` is the value of
//!   qubit `j`, and qubit 0 is the least significant bit.
//! * All unitaries follow `U(theta) = exp(-i * theta * H)`.
//! * Amplitudes are double-precision complex pairs; there is no
//!   single-precision mode.
//! * Qubit counts are capped at 26 (1 GiB of amplitudes), erroring above.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on qubit count: 2^26 complex doubles is 1 GiB.
pub const MAX_QUBITS: usize = 26;

/// Magic bytes of the binary state dump format.
pub const STATE_DUMP_MAGIC: &[u8; 4] = b"AOAS";
/// Version field of the binary state dump format.
pub const STATE_DUMP_VERSION: u32 = 1;

/// A dense vector of 2^n complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

/// A table of real cost values f(x) for all 2^n bitstrings.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalCost {
    n: usize,
    values: Vec<f64>,
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    Ok(())
}

impl StateVector {
    /// The uniform superposition: every amplitude equals 2^(-n/2).
    pub fn uniform(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        let amp = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self {
            n,
            amps: vec![amp; dim],
        })
    }

    /// The computational basis state |x>.
    pub fn basis(n: usize, x: u64) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        if x >= dim as u64 {
            return Err(Error::IndexOutOfRange { index: x, n });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[x as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Build from raw amplitudes; the caller is responsible for
    /// normalization. Length must be a power of two within the qubit cap.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::Format(format!(
                "amplitude array length {dim} is not a power of two"
            )));
        }
        let n = dim.trailing_zeros() as usize;
        check_qubits(n)?;
        Ok(Self { n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
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

    /// Multiply the amplitude at x by exp(-i * gamma * f(x)).
    pub fn apply_diagonal_phase(&mut self, cost: &DiagonalCost, gamma: f64) -> Result<()> {
        if cost.n != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: cost.n,
            });
        }
        if gamma == 0.0 {
            return Ok(());
        }
        for (a, &f) in self.amps.iter_mut().zip(&cost.values) {
            *a *= Complex64::from_polar(1.0, -gamma * f);
        }
        Ok(())
    }

    /// Multiply the single amplitude at `target` by exp(-i * gamma).
    ///
    /// Identical to `apply_diagonal_phase` with f = indicator of `target`;
    /// kept separate so oracle-style phases don't pay a full 2^n pass.
    pub fn apply_indicator_phase(&mut self, target: u64, gamma: f64) -> Result<()> {
        if target >= self.dim() as u64 {
            return Err(Error::IndexOutOfRange {
                index: target,
                n: self.n,
            });
        }
        self.amps[target as usize] *= Complex64::from_polar(1.0, -gamma);
        Ok(())
    }

    /// Apply exp(-i * beta * X_j) to every qubit j, i.e. exp(-i beta sum_j X_j).
    pub fn apply_rx_all(&mut self, beta: f64) {
        let (c, s) = (beta.cos(), beta.sin());
        for j in 0..self.n {
            self.rotate_pairs(j, c, s);
        }
    }

    /// Apply exp(-i * beta * X_j) on one qubit.
    pub fn apply_rx(&mut self, j: usize, beta: f64) -> Result<()> {
        if j >= self.n {
            return Err(Error::InvalidQubitPair {
                i: j,
                j,
                n: self.n,
            });
        }
        let (c, s) = (beta.cos(), beta.sin());
        self.rotate_pairs(j, c, s);
        Ok(())
    }

    // [[c, -is], [-is, c]] on the (|0_j>, |1_j>) pair of every basis index.
    fn rotate_pairs(&mut self, j: usize, c: f64, s: f64) {
        let bit = 1usize << j;
        let dim = self.amps.len();
        let mis = Complex64::new(0.0, -s);
        let mut base = 0;
        while base < dim {
            for i0 in base..base + bit {
                let i1 = i0 | bit;
                let a = self.amps[i0];
                let b = self.amps[i1];
                self.amps[i0] = c * a + mis * b;
                self.amps[i1] = mis * a + c * b;
            }
            base += bit << 1;
        }
    }

    /// Apply exp(-i * beta * (X_i X_j + Y_i Y_j) / 2).
    ///
    /// The pair Hamiltonian (XX+YY)/2 swaps |01> and |10> and annihilates
    /// |00> and |11>, so the unitary is the identity on the equal-bit
    /// sectors and rotates within span{|01>, |10>}:
    ///
    /// ```text
    ///   |01> -> cos(beta)|01> - i sin(beta)|10>
    ///   |10> -> cos(beta)|10> - i sin(beta)|01>
    /// ```
    ///
    /// With this normalization beta = pi/2 is a full population transfer.
    pub fn apply_xy_pair(&mut self, i: usize, j: usize, beta: f64) -> Result<()> {
        if i == j || i >= self.n || j >= self.n {
            return Err(Error::InvalidQubitPair { i, j, n: self.n });
        }
        let (c, s) = (beta.cos(), beta.sin());
        let mis = Complex64::new(0.0, -s);
        let bi = 1u64 << i;
        let bj = 1u64 << j;
        let dim = self.amps.len() as u64;
        // Walk indices with bit_i = 1, bit_j = 0; the partner swaps the bits.
        for x in 0..dim {
            if x & bi != 0 && x & bj == 0 {
                let y = (x & !bi) | bj;
                let a = self.amps[x as usize];
                let b = self.amps[y as usize];
                self.amps[x as usize] = c * a + mis * b;
                self.amps[y as usize] = mis * a + c * b;
            }
        }
        Ok(())
    }

    /// sum_x |amp_x|^2 * f(x).
    pub fn expectation(&self, cost: &DiagonalCost) -> Result<f64> {
        if cost.n != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: cost.n,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&cost.values)
            .map(|(a, &f)| a.norm_sqr() * f)
            .sum())
    }

    /// Probability mass on basis states satisfying the predicate.
    pub fn subspace_probability(&self, predicate: impl Fn(u64) -> bool) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(x, _)| predicate(*x as u64))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// |<x|state>|^2.
    pub fn probability(&self, x: u64) -> f64 {
        self.amps[x as usize].norm_sqr()
    }

    /// Binary dump: magic "AOAS", version u32, n u32, then 2^(n+1)
    /// little-endian f64 values (interleaved re, im).
    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(STATE_DUMP_MAGIC)?;
        w.write_all(&STATE_DUMP_VERSION.to_le_bytes())?;
        w.write_all(&(self.n as u32).to_le_bytes())?;
        for a in &self.amps {
            w.write_all(&a.re.to_le_bytes())?;
            w.write_all(&a.im.to_le_bytes())?;
        }
        Ok(())
    }

    /// Read a state previously produced by [`StateVector::write_to`].
    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != STATE_DUMP_MAGIC {
            return Err(Error::Format("bad state dump magic".into()));
        }
        let mut word = [0u8; 4];
        r.read_exact(&mut word)?;
        let version = u32::from_le_bytes(word);
        if version != STATE_DUMP_VERSION {
            return Err(Error::Format(format!("unsupported dump version {version}")));
        }
        r.read_exact(&mut word)?;
        let n = u32::from_le_bytes(word) as usize;
        check_qubits(n)?;
        let dim = 1usize << n;
        let mut amps = Vec::with_capacity(dim);
        let mut f = [0u8; 8];
        for _ in 0..dim {
            r.read_exact(&mut f)?;
            let re = f64::from_le_bytes(f);
            r.read_exact(&mut f)?;
            let im = f64::from_le_bytes(f);
            amps.push(Complex64::new(re, im));
        }
        Ok(Self { n, amps })
    }
}

impl DiagonalCost {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        check_qubits(n)?;
        if values.len() != 1usize << n {
            return Err(Error::Format(format!(
                "cost table length {} does not match 2^{n}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Format("cost table contains non-finite entries".into()));
        }
        Ok(Self { n, values })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Shift every entry by a constant.
    pub fn shifted(&self, c: f64) -> Self {
        Self {
            n: self.n,
            values: self.values.iter().map(|v| v + c).collect(),
        }
    }
}
