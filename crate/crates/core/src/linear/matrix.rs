use alloc::vec::Vec;

use crate::arith::{coprimes_of, totient};
use crate::error::{Error, Result};
use crate::sieve::PrimeTable;

/// Prime coverage of the `phi(n) x phi(n)` matrix with entries
/// `a_i + j*n`, `a_i` the i-th residue coprime to n and `1 <= j <= phi(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixReport {
    pub n: u64,
    pub residues: Vec<u64>,
    /// First prime in each row.
    pub row_witnesses: Vec<Option<u64>>,
    /// First prime in each column.
    pub col_witnesses: Vec<Option<u64>>,
}

impl MatrixReport {
    pub fn phi(&self) -> u64 {
        self.residues.len() as u64
    }

    /// Entry at row `i`, column `j`, both 0-based.
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.residues[i] + (j as u64 + 1) * self.n
    }

    pub fn rows_ok(&self) -> Vec<bool> {
        self.row_witnesses.iter().map(Option::is_some).collect()
    }

    pub fn cols_ok(&self) -> Vec<bool> {
        self.col_witnesses.iter().map(Option::is_some).collect()
    }

    pub fn all_ok(&self) -> bool {
        self.row_witnesses.iter().chain(&self.col_witnesses).all(Option::is_some)
    }
}

pub fn matrix_prime_check(table: &PrimeTable, n: u64) -> Result<MatrixReport> {
    if n < 2 {
        return Err(Error::InvalidInput("n must be at least 2"));
    }
    let phi = totient(n);
    phi.checked_mul(n)
        .and_then(|v| v.checked_add(n))
        .ok_or(Error::Overflow)?;
    let residues = coprimes_of(n);
    let size = residues.len();
    let mut report = MatrixReport {
        n,
        residues,
        row_witnesses: Vec::with_capacity(size),
        col_witnesses: Vec::with_capacity(size),
    };
    for i in 0..size {
        let w = (0..size).map(|j| report.entry(i, j)).find(|&v| table.is_prime(v));
        report.row_witnesses.push(w);
    }
    for j in 0..size {
        let w = (0..size).map(|i| report.entry(i, j)).find(|&v| table.is_prime(v));
        report.col_witnesses.push(w);
    }
    Ok(report)
}
