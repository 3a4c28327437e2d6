use nalgebra::DVector;
use num_complex::Complex;

pub type C64 = Complex<f64>;

/// A complex function on a finite group, indexed by the group's
/// lexicographic element enumeration.
#[derive(Clone, Debug, PartialEq)]
pub struct SignalVector(DVector<C64>);

impl SignalVector {
    pub fn new(values: Vec<C64>) -> Self {
        SignalVector(DVector::from_vec(values))
    }

    pub fn zeros(len: usize) -> Self {
        SignalVector(DVector::zeros(len))
    }

    /// Point mass at element index `at`.
    pub fn delta(len: usize, at: usize) -> Self {
        let mut v = DVector::zeros(len);
        v[at] = C64::new(1.0, 0.0);
        SignalVector(v)
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        self.0.as_slice()
    }

    pub fn values(&self) -> &DVector<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DVector<C64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// `<self, other>`, linear in the first argument.
    pub fn inner(&self, other: &SignalVector) -> C64 {
        other.0.dotc(&self.0)
    }

    pub fn scale(&self, a: C64) -> SignalVector {
        SignalVector(&self.0 * a)
    }

    pub fn max_abs_diff(&self, other: &SignalVector) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl From<DVector<C64>> for SignalVector {
    fn from(v: DVector<C64>) -> Self {
        SignalVector(v)
    }
}

impl std::ops::Index<usize> for SignalVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl std::ops::Add for &SignalVector {
    type Output = SignalVector;
    fn add(self, rhs: &SignalVector) -> SignalVector {
        SignalVector(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &SignalVector {
    type Output = SignalVector;
    fn sub(self, rhs: &SignalVector) -> SignalVector {
        SignalVector(&self.0 - &rhs.0)
    }
}
