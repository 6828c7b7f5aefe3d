use super::Objective;
use crate::element::ElementId;
use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-9;

/// Log-determinant DPP objective `f(S) = log(det(X_S) + 1)` over a PSD Gram matrix `X`.
#[derive(Clone, Debug)]
pub struct GramInstance {
    n: usize,
    gram: Vec<f64>,
}

impl GramInstance {
    /// `gram` is row-major `n × n`.
    pub fn new(n: usize, gram: Vec<f64>) -> Result<Self> {
        if gram.len() != n * n {
            return Err(Error::input(format!(
                "gram matrix has {} entries, expected {}",
                gram.len(),
                n * n
            )));
        }
        if gram.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("gram matrix has non-finite entries"));
        }
        for i in 0..n {
            for j in 0..i {
                let (a, b) = (gram[i * n + j], gram[j * n + i]);
                if (a - b).abs() > SYMMETRY_TOL * 1f64.max(a.abs()).max(b.abs()) {
                    return Err(Error::input(format!("gram matrix not symmetric at ({i}, {j})")));
                }
            }
            if gram[i * n + i] < -SYMMETRY_TOL {
                return Err(Error::input(format!("negative diagonal entry at {i}")));
            }
        }
        Ok(Self { n, gram })
    }

    /// Gram matrix of the row vectors of `features` (inner products).
    pub fn from_features(features: &[Vec<f64>]) -> Result<Self> {
        let n = features.len();
        let p = features.first().map_or(0, Vec::len);
        if features.iter().any(|r| r.len() != p) {
            return Err(Error::input("feature rows have differing lengths"));
        }
        let mut gram = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let dot: f64 = features[i].iter().zip(&features[j]).map(|(a, b)| a * b).sum();
                gram[i * n + j] = dot;
                gram[j * n + i] = dot;
            }
        }
        Self::new(n, gram)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.gram[i * self.n + j]
    }

    /// Row-major principal submatrix indexed by `set`.
    pub fn principal(&self, set: &[ElementId]) -> Vec<f64> {
        let d = set.len();
        let mut m = Vec::with_capacity(d * d);
        for a in set {
            for b in set {
                m.push(self.gram[a.0 * self.n + b.0]);
            }
        }
        m
    }
}

impl Objective for GramInstance {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        let m = self.principal(set);
        log_det_plus_one(&m, set.len()).expect("gram entries validated at construction")
    }

    fn kind(&self) -> &'static str {
        "logdet"
    }
}

/// `log(max(det(M), 0) + 1)` for a row-major `dim × dim` symmetric matrix.
///
/// The determinant comes from Gaussian elimination with partial pivoting.
/// The empty matrix has determinant 1.
pub fn log_det_plus_one(m: &[f64], dim: usize) -> Result<f64> {
    if m.len() != dim * dim {
        return Err(Error::input(format!(
            "matrix has {} entries, expected {}",
            m.len(),
            dim * dim
        )));
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::input("matrix has non-finite entries"));
    }
    let det = determinant(m.to_vec(), dim);
    Ok((det.max(0.0) + 1.0).ln())
}

fn determinant(mut a: Vec<f64>, dim: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..dim {
        let mut pivot = col;
        let mut best = a[col * dim + col].abs();
        for row in col + 1..dim {
            let v = a[row * dim + col].abs();
            if v > best {
                best = v;
                pivot = row;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..dim {
                a.swap(col * dim + j, pivot * dim + j);
            }
            det = -det;
        }
        let p = a[col * dim + col];
        det *= p;
        for row in col + 1..dim {
            let factor = a[row * dim + col] / p;
            if factor != 0.0 {
                for j in col + 1..dim {
                    a[row * dim + j] -= factor * a[col * dim + j];
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    // cofactor expansion along the first row
    fn cofactor_det(m: &[f64], dim: usize) -> f64 {
        if dim == 0 {
            return 1.0;
        }
        let mut total = 0.0;
        for c in 0..dim {
            let minor: Vec<f64> = (1..dim)
                .flat_map(|r| (0..dim).filter(move |&j| j != c).map(move |j| (r, j)))
                .map(|(r, j)| m[r * dim + j])
                .collect();
            let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
            total += sign * m[c] * cofactor_det(&minor, dim - 1);
        }
        total
    }

    #[test]
    fn log_det_examples() {
        assert!((log_det_plus_one(&[], 0).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((log_det_plus_one(&[3.0], 1).unwrap() - 4f64.ln()).abs() < 1e-15);
        let m = [2.0, 1.0, 1.0, 2.0];
        assert_eq!(cofactor_det(&m, 2), 3.0);
        assert!((log_det_plus_one(&m, 2).unwrap() - 4f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(log_det_plus_one(&[f64::NAN], 1).is_err());
        assert!(log_det_plus_one(&[1.0, f64::INFINITY, 0.0, 1.0], 2).is_err());
    }

    #[test]
    fn singular_and_roundoff_clamp_to_zero() {
        // rank one: det 0 up to roundoff
        let m = [1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 3.0, 6.0, 9.0];
        let v = log_det_plus_one(&m, 3).unwrap();
        assert!(v.abs() < 1e-9);
    }

    #[test]
    fn elimination_matches_cofactor_expansion() {
        let feats: Vec<Vec<f64>> = (0..5)
            .map(|i| (0..4).map(|j| ((i * 7 + j * 3) % 5) as f64 - 1.5).collect())
            .collect();
        let g = GramInstance::from_features(&feats).unwrap();
        let all: Vec<ElementId> = (0..4).map(ElementId).collect();
        let m = g.principal(&all);
        let det = cofactor_det(&m, 4);
        let v = log_det_plus_one(&m, 4).unwrap();
        assert!((v - (det.max(0.0) + 1.0).ln()).abs() < 1e-9);
    }

    #[test]
    fn validates_symmetry() {
        assert!(GramInstance::new(2, vec![1.0, 0.5, 0.4, 1.0]).is_err());
        assert!(GramInstance::new(2, vec![1.0, 0.5, 0.5]).is_err());
    }
}
