//! Functions on simplices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Values indexed by the global simplex order, or by the simplices of one dimension
/// when `degree` is set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cochain<T = f64> {
    pub degree: Option<usize>,
    pub values: Vec<T>,
}

impl<T> Cochain<T> {
    pub fn new(degree: Option<usize>, values: Vec<T>) -> Self {
        Self { degree, values }
    }

    /// Ungraded cochain on the whole complex.
    pub fn total(values: Vec<T>) -> Self {
        Self { degree: None, values }
    }

    pub fn graded(p: usize, values: Vec<T>) -> Self {
        Self { degree: Some(p), values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl Cochain<f64> {
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn to_complex(&self) -> Cochain<Complex64> {
        Cochain { degree: self.degree, values: self.values.iter().map(|&x| Complex64::new(x, 0.0)).collect() }
    }
}

impl Cochain<Complex64> {
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn re(&self) -> Cochain<f64> {
        Cochain { degree: self.degree, values: self.values.iter().map(|z| z.re).collect() }
    }
}
