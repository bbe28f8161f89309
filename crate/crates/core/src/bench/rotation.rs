use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Square orthogonal matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl OrthogonalMatrix {
    /// Random orthogonal matrix: QR factorization of a standard-normal matrix,
    /// with the columns of Q flipped so that R has a positive diagonal. The
    /// sign fix makes the result a function of the random draws alone (and
    /// Haar-distributed).
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        if dim == 0 {
            return Err(Error::arg("rotation dimension must be at least 1"));
        }
        let gaussian: Vec<f64> = (0..dim * dim).map(|_| rng.sample(StandardNormal)).collect();
        let a = DMatrix::from_row_slice(dim, dim, &gaussian);
        let qr = a.qr();
        let mut q = qr.q();
        let r = qr.r();
        for j in 0..dim {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        let entries = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .map(|(i, j)| q[(i, j)])
            .collect();
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::arg("rotation dimension must be at least 1"));
        }
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1.0;
        }
        Ok(Self { dim, entries })
    }

    /// Wraps row-major entries, checking the orthogonality tolerances.
    pub fn from_rows(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::arg(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let m = Self { dim, entries };
        let err = m.orthogonality_error();
        if err.is_nan() || err > 1e-10 {
            return Err(Error::arg(format!("matrix is not orthogonal (max |M^T M - I| = {err:e})")));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks_exact(self.dim)
    }

    /// `out = M x`
    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        for (o, row) in out.iter_mut().zip(self.rows()) {
            *o = row.iter().zip(x).map(|(m, v)| m * v).sum();
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.apply_into(x, &mut out);
        out
    }

    /// `Mᵀ x`, the inverse rotation.
    pub fn apply_transpose(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (row, xi) in self.rows().zip(x) {
            for (o, m) in out.iter_mut().zip(row) {
                *o += m * xi;
            }
        }
        out
    }

    /// `max |MᵀM − I|` over all entries.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|k| self.entry(k, i) * self.entry(k, j)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    pub fn determinant(&self) -> f64 {
        DMatrix::from_row_slice(self.dim, self.dim, &self.entries).determinant()
    }

    /// Text form: `dim` on the first line, then one row per line with 17
    /// significant digits per value.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.dim);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> std::result::Result<Self, String> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let dim: usize = lines
            .next()
            .ok_or("empty rotation file")?
            .trim()
            .parse()
            .map_err(|e| format!("bad dimension line: {e}"))?;
        let mut entries = Vec::with_capacity(dim * dim);
        for (r, line) in lines.enumerate() {
            let row: Vec<f64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| format!("row {}: {e}", r + 1))?;
            if row.len() != dim {
                return Err(format!("row {} has {} values, expected {dim}", r + 1, row.len()));
            }
            entries.extend(row);
        }
        if entries.len() != dim * dim {
            return Err(format!("expected {dim} rows, got {}", entries.len() / dim.max(1)));
        }
        Self::from_rows(dim, entries).map_err(|e| e.to_string())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text).map_err(|message| Error::Parse {
            path: path.to_path_buf(),
            message,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng_from_seed;

    #[test]
    fn one_dimensional_is_plus_or_minus_one() {
        for seed in 0..20 {
            let m = OrthogonalMatrix::random(1, &mut rng_from_seed(seed)).unwrap();
            assert_eq!(m.entry(0, 0).abs(), 1.0);
        }
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert!(OrthogonalMatrix::random(0, &mut rng_from_seed(0)).is_err());
        assert!(OrthogonalMatrix::identity(0).is_err());
    }

    #[test]
    fn orthogonal_and_unit_determinant() {
        let mut rng = rng_from_seed(7);
        for dim in [2, 5, 10, 30] {
            let m = OrthogonalMatrix::random(dim, &mut rng).unwrap();
            assert!(m.orthogonality_error() <= 1e-10);
            assert!((m.determinant().abs() - 1.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn same_seed_same_matrix() {
        let a = OrthogonalMatrix::random(6, &mut rng_from_seed(42)).unwrap();
        let b = OrthogonalMatrix::random(6, &mut rng_from_seed(42)).unwrap();
        let c = OrthogonalMatrix::random(6, &mut rng_from_seed(43)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn transpose_inverts() {
        let m = OrthogonalMatrix::random(8, &mut rng_from_seed(3)).unwrap();
        let x: Vec<f64> = (0..8).map(|i| i as f64 - 3.5).collect();
        let back = m.apply_transpose(&m.apply(&x));
        for (a, b) in back.iter().zip(&x) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn text_round_trip_is_exact() {
        let m = OrthogonalMatrix::random(5, &mut rng_from_seed(11)).unwrap();
        let text = m.to_text();
        assert_eq!(text.lines().count(), 6);
        assert_eq!(text.lines().next(), Some("5"));
        assert_eq!(OrthogonalMatrix::from_text(&text).unwrap(), m);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.rot");
        let m = OrthogonalMatrix::random(4, &mut rng_from_seed(5)).unwrap();
        m.save(&path).unwrap();
        assert_eq!(OrthogonalMatrix::load(&path).unwrap(), m);
    }

    #[test]
    fn malformed_text_is_rejected() {
        assert!(OrthogonalMatrix::from_text("2\n1 0\n").is_err());
        assert!(OrthogonalMatrix::from_text("2\n1 0\n0 2\n").is_err());
        assert!(OrthogonalMatrix::from_text("x\n").is_err());
    }
}
