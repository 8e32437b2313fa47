//! Symmetric viscosity tensors `a^{ij}`, constant or gridded.
//!
//! Tensors enter the drift as `div(a·∇u)` and carry a provenance flag
//! recording whether an Itô correction has already been folded in.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{TorusGrid, MAX_DIM};

/// Dense symmetric `d×d` matrix, stored row-major in a fixed buffer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    pub dim: usize,
    pub entries: [[f64; MAX_DIM]; MAX_DIM],
}

impl SymMatrix {
    pub fn zero(dim: usize) -> Self {
        SymMatrix { dim, entries: [[0.0; MAX_DIM]; MAX_DIM] }
    }

    pub fn isotropic(dim: usize, nu: f64) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i][i] = nu;
        }
        m
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.entries[i][j] += other.entries[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.entries[i][j] -= other.entries[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> SymMatrix {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.entries[i][j] *= s;
            }
        }
        out
    }

    pub fn symmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.entries[i][j] - self.entries[j][i]).abs());
            }
        }
        worst
    }

    /// Smallest eigenvalue; closed form for the 2×2 case, trigonometric
    /// formula for 3×3.
    pub fn min_eigenvalue(&self) -> f64 {
        let a = &self.entries;
        match self.dim {
            2 => {
                let tr = a[0][0] + a[1][1];
                let disc = ((a[0][0] - a[1][1]).powi(2) + 4.0 * a[0][1] * a[1][0]).max(0.0);
                0.5 * (tr - disc.sqrt())
            }
            3 => {
                let p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
                if p1 == 0.0 {
                    return a[0][0].min(a[1][1]).min(a[2][2]);
                }
                let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
                let p2 = (a[0][0] - q).powi(2)
                    + (a[1][1] - q).powi(2)
                    + (a[2][2] - q).powi(2)
                    + 2.0 * p1;
                let p = (p2 / 6.0).sqrt();
                let mut b = [[0.0f64; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        b[i][j] = (a[i][j] - if i == j { q } else { 0.0 }) / p;
                    }
                }
                let detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
                    - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
                    + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
                let r = (detb / 2.0).clamp(-1.0, 1.0);
                let phi = r.acos() / 3.0;
                q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos()
            }
            _ => unreachable!("dim checked at construction"),
        }
    }
}

/// Where the tensor came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TensorProvenance {
    Direct,
    ItoCorrectionIncluded,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
enum TensorData {
    Constant(SymMatrix),
    /// One symmetric matrix per grid point.
    Gridded { grid: TorusGrid, values: Vec<SymMatrix> },
}

/// Viscosity tensor field `a(x)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ViscosityTensor {
    data: TensorData,
    pub provenance: TensorProvenance,
}

impl ViscosityTensor {
    pub fn constant_isotropic(dim: usize, nu: f64) -> Self {
        ViscosityTensor {
            data: TensorData::Constant(SymMatrix::isotropic(dim, nu)),
            provenance: TensorProvenance::Direct,
        }
    }

    pub fn constant(matrix: SymMatrix) -> Result<Self> {
        if matrix.symmetry_residual() > 1e-12 {
            return Err(Error::config("viscosity tensor must be symmetric"));
        }
        Ok(ViscosityTensor { data: TensorData::Constant(matrix), provenance: TensorProvenance::Direct })
    }

    pub fn gridded(grid: TorusGrid, values: Vec<SymMatrix>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::config("gridded tensor length does not match grid"));
        }
        if values.iter().any(|m| m.symmetry_residual() > 1e-12) {
            return Err(Error::config("viscosity tensor must be symmetric"));
        }
        Ok(ViscosityTensor {
            data: TensorData::Gridded { grid, values },
            provenance: TensorProvenance::Direct,
        })
    }

    pub fn dim(&self) -> usize {
        match &self.data {
            TensorData::Constant(m) => m.dim,
            TensorData::Gridded { values, .. } => values[0].dim,
        }
    }

    pub fn is_constant(&self) -> Option<SymMatrix> {
        match &self.data {
            TensorData::Constant(m) => Some(*m),
            TensorData::Gridded { .. } => None,
        }
    }

    /// `Some(ν̄)` when the tensor is a constant multiple of the identity.
    pub fn constant_isotropic_value(&self) -> Option<f64> {
        let m = self.is_constant()?;
        let nu = m.entries[0][0];
        for i in 0..m.dim {
            for j in 0..m.dim {
                let expect = if i == j { nu } else { 0.0 };
                if (m.entries[i][j] - expect).abs() > 1e-14 {
                    return None;
                }
            }
        }
        Some(nu)
    }

    pub fn at(&self, idx: usize) -> SymMatrix {
        match &self.data {
            TensorData::Constant(m) => *m,
            TensorData::Gridded { values, .. } => values[idx],
        }
    }

    /// Smallest eigenvalue over the whole domain.
    pub fn min_eigenvalue(&self) -> f64 {
        match &self.data {
            TensorData::Constant(m) => m.min_eigenvalue(),
            TensorData::Gridded { values, .. } => {
                values.iter().map(|m| m.min_eigenvalue()).fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Pointwise sum, materializing on the grid if either side is gridded.
    pub fn add(&self, other: &ViscosityTensor) -> Result<ViscosityTensor> {
        let provenance = if self.provenance == TensorProvenance::ItoCorrectionIncluded
            || other.provenance == TensorProvenance::ItoCorrectionIncluded
        {
            TensorProvenance::ItoCorrectionIncluded
        } else {
            TensorProvenance::Direct
        };
        let data = match (&self.data, &other.data) {
            (TensorData::Constant(a), TensorData::Constant(b)) => TensorData::Constant(a.add(b)),
            (TensorData::Constant(a), TensorData::Gridded { grid, values }) => TensorData::Gridded {
                grid: *grid,
                values: values.iter().map(|m| m.add(a)).collect(),
            },
            (TensorData::Gridded { grid, values }, TensorData::Constant(b)) => TensorData::Gridded {
                grid: *grid,
                values: values.iter().map(|m| m.add(b)).collect(),
            },
            (
                TensorData::Gridded { grid: ga, values: va },
                TensorData::Gridded { grid: gb, values: vb },
            ) => {
                if ga != gb {
                    return Err(Error::config("cannot add tensors on different grids"));
                }
                TensorData::Gridded {
                    grid: *ga,
                    values: va.iter().zip(vb).map(|(a, b)| a.add(b)).collect(),
                }
            }
        };
        Ok(ViscosityTensor { data, provenance })
    }

    pub(crate) fn mark_ito_included(&mut self) {
        self.provenance = TensorProvenance::ItoCorrectionIncluded;
    }
}
