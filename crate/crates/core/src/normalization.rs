//! Singular links and the link of their normalization.
//!
//! A singular link `L_X` is cut along the boundary of a regular
//! neighbourhood of its singular circles: the exterior is a plumbed manifold
//! with one boundary torus per sheet, and each singular circle has a pinched
//! torus neighbourhood. Attachments say which arrow each sheet is glued to
//! and how the curling basis `(m, l)` reads in the arrow framing `(μ, λ)`.
//!
//! Curves of total degree 1 are glued the same way; their neighbourhood is an
//! ordinary solid torus.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::pinched_model::{PinchedError, SingularCurveData};
use crate::plumbing::{GraphError, PlumbingGraph, Reduction, S3Verdict, Slope};
use crate::zlattice::{cokernel, kernel_rank, AbelianGroup, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkError {
    Graph(GraphError),
    Pinched(PinchedError),
    DuplicateCurve {
        name: String,
    },
    UnknownCurve {
        name: String,
    },
    SheetOutOfRange {
        curve: String,
        sheet: usize,
        sheets: usize,
    },
    SheetAttachedTwice {
        curve: String,
        sheet: usize,
    },
    SheetUnattached {
        curve: String,
        sheet: usize,
    },
    UnknownArrow {
        label: String,
    },
    ArrowReused {
        label: String,
    },
    ArrowUnused {
        label: String,
    },
    NotUnimodular {
        curve: String,
        sheet: usize,
        det: i128,
    },
    /// The exterior is not connected, so the germ is reducible and the
    /// homology bounds do not apply.
    ReducibleGerm {
        components: usize,
    },
    /// A computed result contradicts a proven property. Indicates a bug.
    InvariantViolation(String),
}

impl fmt::Display for LinkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkError::Graph(e) => write!(f, "exterior: {e}"),
            LinkError::Pinched(e) => write!(f, "curve: {e}"),
            LinkError::DuplicateCurve { name } => write!(f, "curve {name:?} declared twice"),
            LinkError::UnknownCurve { name } => write!(f, "attachment names unknown curve {name:?}"),
            LinkError::SheetOutOfRange { curve, sheet, sheets } => write!(
                f,
                "curve {curve:?} has {sheets} sheet(s), attachment uses sheet {sheet}"
            ),
            LinkError::SheetAttachedTwice { curve, sheet } => {
                write!(f, "sheet {sheet} of curve {curve:?} is attached twice")
            }
            LinkError::SheetUnattached { curve, sheet } => {
                write!(f, "sheet {sheet} of curve {curve:?} is not attached to any arrow")
            }
            LinkError::UnknownArrow { label } => {
                write!(f, "attachment names unknown arrow {label:?}")
            }
            LinkError::ArrowReused { label } => write!(f, "arrow {label:?} is used twice"),
            LinkError::ArrowUnused { label } => {
                write!(f, "exterior arrow {label:?} is not attached to any sheet")
            }
            LinkError::NotUnimodular { curve, sheet, det } => write!(
                f,
                "attachment matrix of curve {curve:?} sheet {sheet} has determinant {det}, expected ±1"
            ),
            LinkError::ReducibleGerm { components } => write!(
                f,
                "hypothesis violated: germ reducible (exterior has {components} components, expected 1)"
            ),
            LinkError::InvariantViolation(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for LinkError {}

impl From<GraphError> for LinkError {
    fn from(e: GraphError) -> Self {
        LinkError::Graph(e)
    }
}

impl From<PinchedError> for LinkError {
    fn from(e: PinchedError) -> Self {
        LinkError::Pinched(e)
    }
}

/// Gluing of one sheet boundary to one exterior arrow.
///
/// Columns of `matrix` are the curling meridian `m` and parallel `l` written
/// in the arrow framing: `m = a·μ + c·λ`, `l = b·μ + d·λ` for
/// `matrix = [[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Attachment {
    pub curve: String,
    pub sheet: usize,
    pub arrow: String,
    pub matrix: [[i64; 2]; 2],
}

impl Attachment {
    pub fn new(
        curve: impl Into<String>,
        sheet: usize,
        arrow: impl Into<String>,
        matrix: [[i64; 2]; 2],
    ) -> Self {
        Attachment {
            curve: curve.into(),
            sheet,
            arrow: arrow.into(),
            matrix,
        }
    }

    pub fn determinant(&self) -> i128 {
        let [[a, b], [c, d]] = self.matrix.map(|r| r.map(i128::from));
        a * d - b * c
    }

    /// `(a, c)`: coefficients of the curling meridian on `(μ, λ)`.
    pub fn meridian(&self) -> (i64, i64) {
        (self.matrix[0][0], self.matrix[1][0])
    }

    /// `(b, d)`: coefficients of the curling parallel on `(μ, λ)`.
    pub fn parallel(&self) -> (i64, i64) {
        (self.matrix[0][1], self.matrix[1][1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLinkDescription {
    exterior: PlumbingGraph,
    curves: Vec<SingularCurveData>,
    attachments: Vec<Attachment>,
    /// arrow index -> (attachment index, curve index)
    by_arrow: Vec<(usize, usize)>,
}

impl SingularLinkDescription {
    pub fn new(
        exterior: PlumbingGraph,
        curves: Vec<SingularCurveData>,
        attachments: Vec<Attachment>,
    ) -> Result<Self, LinkError> {
        let mut curve_index = BTreeMap::new();
        for (i, c) in curves.iter().enumerate() {
            if curve_index.insert(c.name(), i).is_some() {
                return Err(LinkError::DuplicateCurve {
                    name: c.name().into(),
                });
            }
        }
        let mut used_sheets: Vec<Vec<bool>> = curves
            .iter()
            .map(|c| vec![false; c.branch_count()])
            .collect();
        let mut by_arrow = vec![None; exterior.arrows().len()];
        for (ai, att) in attachments.iter().enumerate() {
            let &ci =
                curve_index
                    .get(att.curve.as_str())
                    .ok_or_else(|| LinkError::UnknownCurve {
                        name: att.curve.clone(),
                    })?;
            let sheets = curves[ci].branch_count();
            if att.sheet >= sheets {
                return Err(LinkError::SheetOutOfRange {
                    curve: att.curve.clone(),
                    sheet: att.sheet,
                    sheets,
                });
            }
            if core::mem::replace(&mut used_sheets[ci][att.sheet], true) {
                return Err(LinkError::SheetAttachedTwice {
                    curve: att.curve.clone(),
                    sheet: att.sheet,
                });
            }
            let arrow =
                exterior
                    .arrow_index(&att.arrow)
                    .ok_or_else(|| LinkError::UnknownArrow {
                        label: att.arrow.clone(),
                    })?;
            if by_arrow[arrow].replace((ai, ci)).is_some() {
                return Err(LinkError::ArrowReused {
                    label: att.arrow.clone(),
                });
            }
            let det = att.determinant();
            if det.abs() != 1 {
                return Err(LinkError::NotUnimodular {
                    curve: att.curve.clone(),
                    sheet: att.sheet,
                    det,
                });
            }
        }
        for (ci, used) in used_sheets.iter().enumerate() {
            if let Some(sheet) = used.iter().position(|u| !u) {
                return Err(LinkError::SheetUnattached {
                    curve: curves[ci].name().into(),
                    sheet,
                });
            }
        }
        let by_arrow = by_arrow
            .into_iter()
            .enumerate()
            .map(|(i, slot)| {
                slot.ok_or_else(|| LinkError::ArrowUnused {
                    label: exterior.arrows()[i].label.clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SingularLinkDescription {
            exterior,
            curves,
            attachments,
            by_arrow,
        })
    }

    pub fn exterior(&self) -> &PlumbingGraph {
        &self.exterior
    }

    pub fn curves(&self) -> &[SingularCurveData] {
        &self.curves
    }

    pub fn attachments(&self) -> &[Attachment] {
        &self.attachments
    }

    /// Curves of total degree > 1 (the components of Σ₊).
    pub fn singular_curves(&self) -> impl Iterator<Item = &SingularCurveData> {
        self.curves.iter().filter(|c| c.is_topologically_singular())
    }

    /// True iff no curve has total degree > 1.
    pub fn is_topological_manifold(&self) -> bool {
        self.singular_curves().next().is_none()
    }

    /// The exterior closed up by filling every arrow along its curling
    /// meridian. Arrows are filled in exterior order.
    pub fn closed_exterior(&self) -> Result<PlumbingGraph, LinkError> {
        let mut g = self.exterior.clone();
        for (arrow, &(ai, _)) in self.exterior.arrows().iter().zip(&self.by_arrow) {
            let (p, q) = self.attachments[ai].meridian();
            let slope = Slope::new(p, q)?;
            g = g.dehn_fill(&arrow.label, slope)?;
        }
        Ok(g)
    }

    /// The link of the normalization, one reduced component per irreducible
    /// component of the germ.
    pub fn normalize(&self) -> Result<NormalizationResult, LinkError> {
        let closed = self.closed_exterior()?;
        let parts = closed.components();
        let expected = self.exterior.component_count();
        if parts.len() != expected {
            return Err(LinkError::InvariantViolation(alloc::format!(
                "normalization has {} components, exterior has {expected}",
                parts.len()
            )));
        }
        let components = parts
            .into_iter()
            .map(|filled| {
                let reduction = filled.reduce()?;
                let certificate = filled.is_s3_certificate()?;
                Ok(NormalizedComponent {
                    filled,
                    reduction,
                    certificate,
                })
            })
            .collect::<Result<Vec<_>, GraphError>>()?;
        Ok(NormalizationResult { components })
    }

    /// Relation matrix of `coker Δ_1`: the exterior presentation, one extra
    /// generator `l_σ` per curve, and for every sheet the relations
    /// `ψ(m_j) = 0` and `ψ(l_j) = d_j·l_σ`.
    pub fn gluing_presentation(&self) -> IntMatrix {
        let pres = self.exterior.h1_presentation();
        let base = pres.generators.len();
        let mut rel = pres.relations.clone();
        rel.push_zero_rows(self.curves.len());
        let pad = |mut v: Vec<BigInt>| {
            v.resize(base + self.curves.len(), BigInt::from(0));
            v
        };
        for (arrow, &(ai, ci)) in self.by_arrow.iter().enumerate() {
            let att = &self.attachments[ai];
            let degree = self.curves[ci].branch_degrees()[att.sheet];
            let (a, c) = att.meridian();
            rel.push_column(&pad(pres.curve_class(arrow, a, c)));
            let (b, d) = att.parallel();
            let mut l = pad(pres.curve_class(arrow, b, d));
            l[base + ci] -= degree;
            rel.push_column(&l);
        }
        rel
    }

    /// `Δ_0`: boundary tori to components of the exterior and of the curve
    /// neighbourhoods.
    pub fn component_incidence(&self) -> IntMatrix {
        let comp = self.exterior.vertex_components();
        let ext = self.exterior.component_count();
        let mut m = IntMatrix::zeros(ext + self.curves.len(), self.by_arrow.len());
        for (arrow, &(_, ci)) in self.by_arrow.iter().enumerate() {
            let v = self.exterior.arrows()[arrow].vertex;
            m[(comp[v], arrow)] += 1;
            m[(ext + ci, arrow)] -= 1;
        }
        m
    }

    /// `H_1(L_X) = coker Δ_1 ⊕ ker Δ_0`; the extension splits since the
    /// kernel is free.
    pub fn h1_singular_link(&self) -> AbelianGroup {
        let coker = cokernel(&self.gluing_presentation());
        coker.direct_sum(&AbelianGroup::free(kernel_rank(
            &self.component_incidence(),
        )))
    }

    /// Lower bound on `H_1` forced by the singular curves. Only meaningful for
    /// irreducible germs, so a disconnected exterior is refused.
    pub fn obstruction_report(&self) -> Result<ObstructionReport, LinkError> {
        let components = self.exterior.component_count();
        if components != 1 {
            return Err(LinkError::ReducibleGerm { components });
        }
        let h1 = self.h1_singular_link();
        let mut most_branches: Option<&SingularCurveData> = None;
        let mut highest_degree: Option<&SingularCurveData> = None;
        for c in self.singular_curves() {
            if most_branches.is_none_or(|m| c.branch_count() > m.branch_count()) {
                most_branches = Some(c);
            }
            if highest_degree.is_none_or(|m| c.total_degree() > m.total_degree()) {
                highest_degree = Some(c);
            }
        }
        let obstruction = match (most_branches, highest_degree) {
            (None, _) | (_, None) => Obstruction::Manifold,
            (Some(c), _) if c.branch_count() > 1 => {
                let bound = c.branch_count() - 1;
                if h1.rank() < bound {
                    return Err(LinkError::InvariantViolation(alloc::format!(
                        "rank of H_1 = {h1} is below {bound}"
                    )));
                }
                Obstruction::RankBound {
                    curve: c.name().into(),
                    bound,
                }
            }
            (_, Some(c)) => {
                let bound = c.total_degree();
                if h1.order().is_some_and(|o| o < BigInt::from(bound)) {
                    return Err(LinkError::InvariantViolation(alloc::format!(
                        "order of H_1 = {h1} is below {bound}"
                    )));
                }
                Obstruction::OrderBound {
                    curve: c.name().into(),
                    bound,
                }
            }
        };
        Ok(ObstructionReport { obstruction, h1 })
    }

    /// Smoothness of the normalization for an irreducible germ: singular
    /// curves force a non-simply-connected link, otherwise the closed exterior
    /// must be certified as `S³`.
    pub fn check_smooth(&self) -> Result<SmoothVerdict, LinkError> {
        let report = self.obstruction_report()?;
        if report.obstruction != Obstruction::Manifold {
            return Ok(SmoothVerdict::NotSimplyConnected(Witness::Obstruction(
                report.obstruction,
            )));
        }
        let closed = self.closed_exterior()?;
        Ok(match closed.is_s3_certificate()? {
            S3Verdict::Yes => SmoothVerdict::Smooth,
            S3Verdict::No => SmoothVerdict::NotSimplyConnected(Witness::NontrivialH1(closed.h1())),
            S3Verdict::Undetermined => SmoothVerdict::Undetermined,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedComponent {
    /// Closed graph straight out of the Dehn fillings.
    pub filled: PlumbingGraph,
    pub reduction: Reduction,
    pub certificate: S3Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationResult {
    pub components: Vec<NormalizedComponent>,
}

impl NormalizationResult {
    pub fn reduced_graphs(&self) -> impl Iterator<Item = &PlumbingGraph> {
        self.components.iter().map(|c| &c.reduction.graph)
    }

    /// `H_1` of the normalized link (sum over components).
    pub fn h1(&self) -> AbelianGroup {
        self.components
            .iter()
            .fold(AbelianGroup::trivial(), |acc, c| {
                acc.direct_sum(&c.filled.h1())
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Obstruction {
    Manifold,
    /// `rank H_1 >= bound`, from a curve with several branches.
    RankBound {
        curve: String,
        bound: usize,
    },
    /// `|H_1| >= bound` or infinite, from a one-branch curve of degree `bound`.
    OrderBound {
        curve: String,
        bound: usize,
    },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Manifold => f.write_str("manifold"),
            Obstruction::RankBound { bound, .. } => write!(f, "rank_bound({bound})"),
            Obstruction::OrderBound { bound, .. } => write!(f, "order_bound({bound})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub obstruction: Obstruction,
    pub h1: AbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Obstruction(Obstruction),
    NontrivialH1(AbelianGroup),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Obstruction(o) => write!(f, "{o}"),
            Witness::NontrivialH1(g) => write!(f, "h1({g})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothVerdict {
    Smooth,
    NotSimplyConnected(Witness),
    Undetermined,
}

impl fmt::Display for SmoothVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmoothVerdict::Smooth => f.write_str("smooth"),
            SmoothVerdict::NotSimplyConnected(w) => write!(f, "not_simply_connected({w})"),
            SmoothVerdict::Undetermined => f.write_str("undetermined"),
        }
    }
}
