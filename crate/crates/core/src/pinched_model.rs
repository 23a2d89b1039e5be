//! Pinched discs, curlings and singular pinched solid tori.
//!
//! A singular pinched solid torus is the mapping torus of a homeomorphism of
//! a `k`-pinched disc that permutes its `k` discs. Up to homeomorphism it only
//! depends on the permutation, so that is all we store. Each cycle of order
//! `d` of the permutation gives one sheet, a `d`-curling, and one boundary
//! torus.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PinchedError {
    /// A permutation needs at least one element.
    Empty,
    /// The images are not a bijection of `{1..k}`.
    NotBijection { images: Vec<usize> },
    /// Sheet index past the number of sheets.
    SheetOutOfRange { index: usize, sheets: usize },
    /// A singular curve needs at least one branch.
    NoBranches { curve: String },
    /// Branch degrees are positive.
    ZeroDegree { curve: String },
}

impl fmt::Display for PinchedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PinchedError::Empty => f.write_str("permutation must act on at least one element"),
            PinchedError::NotBijection { images } => {
                write!(
                    f,
                    "images {images:?} are not a bijection of 1..={}",
                    images.len()
                )
            }
            PinchedError::SheetOutOfRange { index, sheets } => {
                write!(f, "sheet index {index} out of range ({sheets} sheets)")
            }
            PinchedError::NoBranches { curve } => {
                write!(f, "curve {curve:?} has no branches")
            }
            PinchedError::ZeroDegree { curve } => {
                write!(f, "curve {curve:?} has a branch of degree 0")
            }
        }
    }
}

impl core::error::Error for PinchedError {}

/// Permutation of `{1..k}` stored as its 1-based image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PinchedError> {
        let k = images.len();
        if k == 0 {
            return Err(PinchedError::Empty);
        }
        let mut seen = vec![false; k];
        for &x in &images {
            if x == 0 || x > k || core::mem::replace(&mut seen[x - 1], true) {
                return Err(PinchedError::NotBijection { images });
            }
        }
        Ok(Permutation { images })
    }

    /// Identity on `{1..k}`. Panics if `k == 0`.
    pub fn identity(k: usize) -> Self {
        assert!(k > 0, "permutation must act on at least one element");
        Permutation {
            images: (1..=k).collect(),
        }
    }

    /// Product of disjoint cycles on consecutive blocks:
    /// `(1 .. d_1)(d_1+1 .. d_1+d_2)...`.
    pub fn from_cycle_lengths(lengths: &[usize]) -> Result<Self, PinchedError> {
        let mut images = Vec::with_capacity(lengths.iter().sum());
        let mut start = 1;
        for &d in lengths {
            for i in 0..d {
                images.push(start + (i + 1) % d);
            }
            start += d;
        }
        Permutation::new(images)
    }

    pub fn k(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `i`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.k()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.k(), other.k(), "permutations act on different sets");
        Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate_by(&self, by: &Permutation) -> Permutation {
        by.compose(self).compose(&by.inverse())
    }

    /// Disjoint cycles, each starting at its smallest element, sorted by that
    /// element.
    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let k = self.k();
        let mut visited = vec![false; k];
        let mut cycles = Vec::new();
        for start in 1..=k {
            if visited[start - 1] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !visited[x - 1] {
                visited[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            cycles.push(cycle);
        }
        CycleDecomposition { cycles }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn orders(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

/// One sheet of a pinched torus: a curling of the given order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sheet {
    pub order: usize,
}

/// Meridian/parallel basis `(m_j, l_j)` of the boundary torus of sheet `j`,
/// oriented so that `m ∩ l = +1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryFraming {
    pub sheet: usize,
    pub sheet_degree: usize,
}

/// Classes of a boundary basis in `π_1(N) = Z·l_σ`, as multiples of the core.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryClasses {
    pub meridian: usize,
    pub parallel: usize,
}

/// `T(k(D), c)`, the mapping torus of the pinched-disc homeomorphism with
/// monodromy `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SingularPinchedTorus {
    monodromy: Permutation,
}

impl SingularPinchedTorus {
    pub fn new(monodromy: Permutation) -> Self {
        SingularPinchedTorus { monodromy }
    }

    pub fn k(&self) -> usize {
        self.monodromy.k()
    }

    pub fn monodromy(&self) -> &Permutation {
        &self.monodromy
    }

    /// With a single disc the core is not a singular point and the space is
    /// an ordinary solid torus.
    pub fn is_singular(&self) -> bool {
        self.k() >= 2
    }

    pub fn sheets(&self) -> Vec<Sheet> {
        self.monodromy
            .cycle_decomposition()
            .orders()
            .into_iter()
            .map(|order| Sheet { order })
            .collect()
    }

    pub fn boundary_framings(&self) -> Vec<BoundaryFraming> {
        self.sheets()
            .into_iter()
            .enumerate()
            .map(|(sheet, s)| BoundaryFraming {
                sheet,
                sheet_degree: s.order,
            })
            .collect()
    }

    /// The meridian of a sheet bounds a disc; any parallel wraps `d_j` times
    /// around the core.
    pub fn boundary_class_map(&self, sheet: usize) -> Result<BoundaryClasses, PinchedError> {
        let sheets = self.sheets();
        let s = sheets.get(sheet).ok_or(PinchedError::SheetOutOfRange {
            index: sheet,
            sheets: sheets.len(),
        })?;
        Ok(BoundaryClasses {
            meridian: 0,
            parallel: s.order,
        })
    }
}

/// A singular curve σ with the degrees `d_1..d_n` of the normalization over
/// the branches above it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SingularCurveData {
    name: String,
    branch_degrees: Vec<usize>,
}

impl SingularCurveData {
    pub fn new(name: impl Into<String>, branch_degrees: Vec<usize>) -> Result<Self, PinchedError> {
        let name = name.into();
        if branch_degrees.is_empty() {
            return Err(PinchedError::NoBranches { curve: name });
        }
        if branch_degrees.contains(&0) {
            return Err(PinchedError::ZeroDegree { curve: name });
        }
        Ok(SingularCurveData {
            name,
            branch_degrees,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn branch_degrees(&self) -> &[usize] {
        &self.branch_degrees
    }

    /// `n(σ)`
    pub fn branch_count(&self) -> usize {
        self.branch_degrees.len()
    }

    /// `k(σ) = Σ d_j`
    pub fn total_degree(&self) -> usize {
        self.branch_degrees.iter().sum()
    }

    /// Only curves of total degree > 1 are visible as singular points of the
    /// link.
    pub fn is_topologically_singular(&self) -> bool {
        self.total_degree() > 1
    }

    /// Neighbourhood model of the curve; sheet `j` has order `d_j`.
    pub fn pinched_torus(&self) -> SingularPinchedTorus {
        SingularPinchedTorus::new(
            Permutation::from_cycle_lengths(&self.branch_degrees)
                .expect("branch degrees are positive"),
        )
    }
}
