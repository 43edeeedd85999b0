use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Strictly increasing 1D coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    coords: Vec<f64>,
}

impl Grid1D {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 || coords.iter().any(|c| !c.is_finite()) || coords.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Grid);
        }
        Ok(Self { coords })
    }

    /// `n` equal intervals on `[a, b]`.
    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Grid);
        }
        let h = (b - a) / n as f64;
        let mut c: Vec<f64> = (0..=n).map(|i| a + h * i as f64).collect();
        c[n] = b;
        Self::new(c)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn n_intervals(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn interval(&self, i: usize) -> (f64, f64) {
        (self.coords[i], self.coords[i + 1])
    }

    pub fn width(&self, i: usize) -> f64 {
        self.coords[i + 1] - self.coords[i]
    }

    pub fn first(&self) -> f64 {
        self.coords[0]
    }

    pub fn last(&self) -> f64 {
        self.coords[self.coords.len() - 1]
    }

    /// Grid with every interval bisected at its midpoint.
    pub fn bisect(&self) -> Self {
        let mut c = Vec::with_capacity(2 * self.coords.len() - 1);
        for w in self.coords.windows(2) {
            c.push(w[0]);
            c.push(0.5 * (w[0] + w[1]));
        }
        c.push(self.last());
        Self { coords: c }
    }

    /// Index of the interval containing `x`; at interior breakpoints the lower
    /// interval is returned.
    pub fn locate(&self, x: f64) -> Result<usize> {
        let n = self.n_intervals();
        if !(x >= self.first() && x <= self.last()) {
            return Err(Error::Domain { x, lo: self.first(), hi: self.last() });
        }
        // first index with coords[k] >= x
        let k = self.coords.partition_point(|&c| c < x);
        Ok(if k == 0 { 0 } else { (k - 1).min(n - 1) })
    }

    /// Coordinates with indices `lo..=hi`, taking every `step`-th entry.
    pub fn sub(&self, lo: usize, hi: usize, step: usize) -> Result<Self> {
        let c: Vec<f64> = (lo..=hi).step_by(step).map(|i| self.coords[i]).collect();
        Self::new(c)
    }
}
