//! The three Hilbert spaces in play — functions on the point space,
//! formal combinations of group elements, and their tensor product (the
//! hybrid space) — together with the measure-orthonormal coordinate
//! convention.
//!
//! Internally every vector stores f̃(x) = f(x)·√μ(x), so the standard
//! complex dot product reproduces the measure-weighted inner product and
//! adjoints of operators are plain conjugate transposes.  Raw
//! coordinates (the values f(x) themselves) exist only at the I/O
//! boundary via the conversion helpers here.
//!
//! Hybrid layout is group-major: coefficient (g, x) sits at index
//! g·|X| + x, so hybrid operators are |G|×|G| grids of |X|×|X| blocks.

use alloc::vec;
use alloc::vec::Vec;

use crate::base_space::MeasureSpace;
use crate::error::Error;
use crate::linalg::{cabs, vdot, vnorm, Complex64};

/// Which space a vector or operator lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// Functions on the point space; dimension |X|.
    X { n: usize },
    /// Formal combinations of group elements; dimension |G|.
    G { n: usize },
    /// The tensor product, group-major; dimension |G|·|X|.
    Hybrid { nx: usize, ng: usize },
}

impl Space {
    pub fn dim(&self) -> usize {
        match *self {
            Space::X { n } | Space::G { n } => n,
            Space::Hybrid { nx, ng } => nx * ng,
        }
    }

    /// Flat hybrid index of coefficient (g, x).
    pub fn hybrid_index(&self, g: usize, x: usize) -> usize {
        match *self {
            Space::Hybrid { nx, .. } => g * nx + x,
            _ => panic!("hybrid_index on a non-hybrid space"),
        }
    }
}

/// A vector in internal (measure-orthonormal) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct HVector {
    pub space: Space,
    pub coeffs: Vec<Complex64>,
}

impl HVector {
    pub fn zero(space: Space) -> Self {
        HVector {
            space,
            coeffs: vec![Complex64::new(0.0, 0.0); space.dim()],
        }
    }

    pub fn from_internal(space: Space, coeffs: Vec<Complex64>) -> Result<Self, Error> {
        if coeffs.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: coeffs.len(),
            });
        }
        Ok(HVector { space, coeffs })
    }

    pub fn norm(&self) -> f64 {
        vnorm(&self.coeffs)
    }

    pub fn scale(&self, s: Complex64) -> HVector {
        HVector {
            space: self.space,
            coeffs: self.coeffs.iter().map(|z| z * s).collect(),
        }
    }
}

/// ⟨v₁|v₂⟩, conjugate-linear in the first argument.
pub fn inner_product(v1: &HVector, v2: &HVector) -> Result<Complex64, Error> {
    if v1.space != v2.space {
        return Err(Error::DimensionMismatch {
            expected: v1.space.dim(),
            got: v2.space.dim(),
        });
    }
    Ok(vdot(&v1.coeffs, &v2.coeffs))
}

/// Build a point-space vector from raw values f(x): stores f(x)·√μ(x).
pub fn x_from_raw(ms: &MeasureSpace, raw: &[Complex64]) -> Result<HVector, Error> {
    if raw.len() != ms.len() {
        return Err(Error::DimensionMismatch {
            expected: ms.len(),
            got: raw.len(),
        });
    }
    let coeffs = raw
        .iter()
        .enumerate()
        .map(|(x, &f)| f * libm::sqrt(ms.mass(x)))
        .collect();
    Ok(HVector {
        space: Space::X { n: ms.len() },
        coeffs,
    })
}

/// Recover raw values f(x) from internal storage.  On zero-mass points
/// the raw value is reported as 0 (it is irrelevant almost everywhere).
pub fn x_to_raw(ms: &MeasureSpace, v: &HVector) -> Result<Vec<Complex64>, Error> {
    match v.space {
        Space::X { n } if n == ms.len() => {}
        _ => {
            return Err(Error::DimensionMismatch {
                expected: ms.len(),
                got: v.space.dim(),
            })
        }
    }
    Ok((0..ms.len())
        .map(|x| {
            let m = ms.mass(x);
            if m > 0.0 {
                v.coeffs[x] / libm::sqrt(m)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect())
}

/// A group-side vector (the |g⟩ basis is orthonormal; no weights).
pub fn g_from_coeffs(coeffs: Vec<Complex64>) -> HVector {
    HVector {
        space: Space::G { n: coeffs.len() },
        coeffs,
    }
}

/// The basis vector |g⟩.
pub fn g_basis(ng: usize, g: usize) -> HVector {
    let mut v = HVector::zero(Space::G { n: ng });
    v.coeffs[g] = Complex64::new(1.0, 0.0);
    v
}

/// Tensor product of a point-space vector and a group vector, in the
/// group-major hybrid layout.
pub fn tensor(fx: &HVector, fg: &HVector) -> Result<HVector, Error> {
    let (nx, ng) = match (fx.space, fg.space) {
        (Space::X { n: nx }, Space::G { n: ng }) => (nx, ng),
        _ => {
            return Err(Error::DimensionMismatch {
                expected: fx.space.dim(),
                got: fg.space.dim(),
            })
        }
    };
    let space = Space::Hybrid { nx, ng };
    let mut coeffs = vec![Complex64::new(0.0, 0.0); nx * ng];
    for g in 0..ng {
        for x in 0..nx {
            coeffs[g * nx + x] = fg.coeffs[g] * fx.coeffs[x];
        }
    }
    Ok(HVector { space, coeffs })
}

/// Build a hybrid vector from raw coefficients f(g, x) in group-major
/// order: stores f(g,x)·√μ(x).
pub fn hybrid_from_raw(ms: &MeasureSpace, ng: usize, raw: &[Complex64]) -> Result<HVector, Error> {
    let nx = ms.len();
    if raw.len() != nx * ng {
        return Err(Error::DimensionMismatch {
            expected: nx * ng,
            got: raw.len(),
        });
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); nx * ng];
    for g in 0..ng {
        for x in 0..nx {
            coeffs[g * nx + x] = raw[g * nx + x] * libm::sqrt(ms.mass(x));
        }
    }
    Ok(HVector {
        space: Space::Hybrid { nx, ng },
        coeffs,
    })
}

/// Recover raw hybrid coefficients; zero on zero-mass points.
pub fn hybrid_to_raw(ms: &MeasureSpace, v: &HVector) -> Result<Vec<Complex64>, Error> {
    let (nx, ng) = match v.space {
        Space::Hybrid { nx, ng } if nx == ms.len() => (nx, ng),
        _ => {
            return Err(Error::DimensionMismatch {
                expected: ms.len(),
                got: v.space.dim(),
            })
        }
    };
    let mut raw = vec![Complex64::new(0.0, 0.0); nx * ng];
    for g in 0..ng {
        for x in 0..nx {
            let m = ms.mass(x);
            raw[g * nx + x] = if m > 0.0 {
                v.coeffs[g * nx + x] / libm::sqrt(m)
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
    }
    Ok(raw)
}

/// The raw-coordinate inner product Σ f₁*(g,x)·f₂(g,x)·μ(x) — used only
/// to cross-check the coordinate convention.
pub fn raw_inner_product_hybrid(
    ms: &MeasureSpace,
    ng: usize,
    raw1: &[Complex64],
    raw2: &[Complex64],
) -> Complex64 {
    let nx = ms.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for g in 0..ng {
        for x in 0..nx {
            acc += raw1[g * nx + x].conj() * raw2[g * nx + x] * ms.mass(x);
        }
    }
    acc
}

/// Euclidean distance between two vectors on the same space.
pub fn distance(v1: &HVector, v2: &HVector) -> f64 {
    debug_assert_eq!(v1.space, v2.space);
    let mut acc = 0.0;
    for (a, b) in v1.coeffs.iter().zip(v2.coeffs.iter()) {
        let d = cabs(*a - *b);
        acc += d * d;
    }
    libm::sqrt(acc)
}
