//! Tensor-product Greville collocation grid, geometry map and boundary
//! classification.
//!
//! Points are flattened x-fastest: `k = j * ν_x + i` for the pair `(i, j)` of
//! 0-based Greville indices.

use alloc::vec::Vec;
use core::fmt;

use crate::math;
use crate::splines::SplineBasis1D;
use crate::{Error, Result};

/// Affine or identity map from the parametric square to physical space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum GeometryMap {
    #[default]
    Identity,
    Affine { a: [[f64; 2]; 2], b: [f64; 2] },
}

impl GeometryMap {
    /// `x = A ξ + b`; rejects `|det A| <= 1e-14`.
    pub fn affine(a: [[f64; 2]; 2], b: [f64; 2]) -> Result<Self> {
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if !(det.abs() > 1e-14) {
            return Err(Error::SingularMap(det));
        }
        Ok(GeometryMap::Affine { a, b })
    }

    pub fn map_point(&self, xi: [f64; 2]) -> [f64; 2] {
        match *self {
            GeometryMap::Identity => xi,
            GeometryMap::Affine { a, b } => [
                a[0][0] * xi[0] + a[0][1] * xi[1] + b[0],
                a[1][0] * xi[0] + a[1][1] * xi[1] + b[1],
            ],
        }
    }

    pub fn jacobian(&self) -> [[f64; 2]; 2] {
        match *self {
            GeometryMap::Identity => [[1.0, 0.0], [0.0, 1.0]],
            GeometryMap::Affine { a, .. } => a,
        }
    }

    pub fn inverse_jacobian(&self) -> [[f64; 2]; 2] {
        let a = self.jacobian();
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        [
            [a[1][1] / det, -a[0][1] / det],
            [-a[1][0] / det, a[0][0] / det],
        ]
    }

    /// Metric `G = A⁻¹ A⁻ᵀ`: the physical Laplacian is `Σ G_ab ∂_a ∂_b` in
    /// parametric derivatives.
    pub fn laplacian_metric(&self) -> [[f64; 2]; 2] {
        let inv = self.inverse_jacobian();
        let mut g = [[0.0; 2]; 2];
        for (r, row) in g.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = inv[r][0] * inv[c][0] + inv[r][1] * inv[c][1];
            }
        }
        g
    }

    /// Physical unit outward normal for a parametric edge normal.
    pub fn physical_normal(&self, parametric: [f64; 2]) -> [f64; 2] {
        let inv = self.inverse_jacobian();
        // A⁻ᵀ n̂
        let n = [
            inv[0][0] * parametric[0] + inv[1][0] * parametric[1],
            inv[0][1] * parametric[0] + inv[1][1] * parametric[1],
        ];
        let len = math::hypot(n[0], n[1]);
        [n[0] / len, n[1] / len]
    }

    /// Coefficients `w` with `∂u/∂n = w_0 ∂_ξ u + w_1 ∂_η u` on the given edge.
    pub fn normal_derivative_weights(&self, parametric: [f64; 2]) -> [f64; 2] {
        let inv = self.inverse_jacobian();
        let n = self.physical_normal(parametric);
        [
            inv[0][0] * n[0] + inv[0][1] * n[1],
            inv[1][0] * n[0] + inv[1][1] * n[1],
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
    Absorbing,
}

impl BoundaryCondition {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryCondition::Dirichlet => "dirichlet",
            BoundaryCondition::Neumann => "neumann",
            BoundaryCondition::Absorbing => "abc",
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    Left,
    Right,
    Bottom,
    Top,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::Left, Edge::Right, Edge::Bottom, Edge::Top];

    /// Outward unit normal of the parametric square.
    pub fn normal(self) -> [f64; 2] {
        match self {
            Edge::Left => [-1.0, 0.0],
            Edge::Right => [1.0, 0.0],
            Edge::Bottom => [0.0, -1.0],
            Edge::Top => [0.0, 1.0],
        }
    }
}

/// Per-edge boundary conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundaryConfig {
    pub left: BoundaryCondition,
    pub right: BoundaryCondition,
    pub bottom: BoundaryCondition,
    pub top: BoundaryCondition,
}

impl BoundaryConfig {
    pub fn uniform(bc: BoundaryCondition) -> Self {
        Self {
            left: bc,
            right: bc,
            bottom: bc,
            top: bc,
        }
    }

    pub fn edge(&self, edge: Edge) -> BoundaryCondition {
        match edge {
            Edge::Left => self.left,
            Edge::Right => self.right,
            Edge::Bottom => self.bottom,
            Edge::Top => self.top,
        }
    }

    /// The common condition when all four edges agree.
    pub fn as_uniform(&self) -> Option<BoundaryCondition> {
        let bc = self.left;
        (self.right == bc && self.bottom == bc && self.top == bc).then_some(bc)
    }
}

impl fmt::Display for BoundaryConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_uniform() {
            Some(bc) => write!(f, "{bc}"),
            None => write!(
                f,
                "left={}/right={}/bottom={}/top={}",
                self.left, self.right, self.bottom, self.top
            ),
        }
    }
}

/// Which block of the collocated system a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointClass {
    Interior,
    Dirichlet,
    Neumann,
    Absorbing,
}

/// The one or two edges a boundary point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Facets {
    pub first: Edge,
    pub second: Option<Edge>,
}

impl Facets {
    pub fn iter(&self) -> impl Iterator<Item = Edge> {
        core::iter::once(self.first).chain(self.second)
    }

    pub fn count(&self) -> usize {
        1 + usize::from(self.second.is_some())
    }

    pub fn is_corner(&self) -> bool {
        self.second.is_some()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollocationGrid {
    basis_x: SplineBasis1D,
    basis_y: SplineBasis1D,
    bc: BoundaryConfig,
    xs: Vec<f64>,
    ys: Vec<f64>,
    classes: Vec<PointClass>,
    facets: Vec<Option<Facets>>,
}

/// Builds the tensor Greville grid and classifies every point.
///
/// Corners touching a Dirichlet edge are Dirichlet. Other corners keep both
/// edge normals; a corner between a Neumann and an absorbing edge is filed
/// under [`PointClass::Absorbing`] and its absorbing term is weighted by the
/// share of absorbing facets.
pub fn build_grid(basis_x: &SplineBasis1D, basis_y: &SplineBasis1D, bc: BoundaryConfig) -> CollocationGrid {
    let xs = basis_x.greville();
    let ys = basis_y.greville();
    let (nx, ny) = (xs.len(), ys.len());
    let mut classes = Vec::with_capacity(nx * ny);
    let mut facets = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let mut on: [Option<Edge>; 2] = [None, None];
            let horizontal = if i == 0 {
                Some(Edge::Left)
            } else if i == nx - 1 {
                Some(Edge::Right)
            } else {
                None
            };
            let vertical = if j == 0 {
                Some(Edge::Bottom)
            } else if j == ny - 1 {
                Some(Edge::Top)
            } else {
                None
            };
            match (horizontal, vertical) {
                (Some(h), Some(v)) => on = [Some(h), Some(v)],
                (Some(e), None) | (None, Some(e)) => on[0] = Some(e),
                (None, None) => {}
            }
            match on {
                [None, _] => {
                    classes.push(PointClass::Interior);
                    facets.push(None);
                }
                [Some(first), second] => {
                    let f = Facets { first, second };
                    classes.push(classify(&f, &bc));
                    facets.push(Some(f));
                }
            }
        }
    }
    CollocationGrid {
        basis_x: basis_x.clone(),
        basis_y: basis_y.clone(),
        bc,
        xs,
        ys,
        classes,
        facets,
    }
}

fn classify(facets: &Facets, bc: &BoundaryConfig) -> PointClass {
    let mut has_neumann = false;
    let mut has_absorbing = false;
    for edge in facets.iter() {
        match bc.edge(edge) {
            BoundaryCondition::Dirichlet => return PointClass::Dirichlet,
            BoundaryCondition::Neumann => has_neumann = true,
            BoundaryCondition::Absorbing => has_absorbing = true,
        }
    }
    match (has_neumann, has_absorbing) {
        (_, true) => PointClass::Absorbing,
        _ => PointClass::Neumann,
    }
}

impl CollocationGrid {
    pub fn basis_x(&self) -> &SplineBasis1D {
        &self.basis_x
    }

    pub fn basis_y(&self) -> &SplineBasis1D {
        &self.basis_y
    }

    pub fn boundary_config(&self) -> &BoundaryConfig {
        &self.bc
    }

    pub fn nx(&self) -> usize {
        self.xs.len()
    }

    pub fn ny(&self) -> usize {
        self.ys.len()
    }

    pub fn dof(&self) -> usize {
        self.xs.len() * self.ys.len()
    }

    pub fn greville_x(&self) -> &[f64] {
        &self.xs
    }

    pub fn greville_y(&self) -> &[f64] {
        &self.ys
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx() + i
    }

    pub fn coords(&self, k: usize) -> (usize, usize) {
        (k % self.nx(), k / self.nx())
    }

    /// Parametric location of point `k`.
    pub fn point(&self, k: usize) -> [f64; 2] {
        let (i, j) = self.coords(k);
        [self.xs[i], self.ys[j]]
    }

    pub fn class(&self, k: usize) -> PointClass {
        self.classes[k]
    }

    pub fn classes(&self) -> &[PointClass] {
        &self.classes
    }

    pub fn facets(&self, k: usize) -> Option<Facets> {
        self.facets[k]
    }

    /// Indices of all points in the given class, ascending.
    pub fn indices(&self, class: PointClass) -> Vec<usize> {
        (0..self.dof()).filter(|&k| self.classes[k] == class).collect()
    }

    /// Share of the point's facets carrying the absorbing condition.
    pub fn absorbing_fraction(&self, k: usize) -> f64 {
        match self.facets[k] {
            Some(f) => {
                let absorbing = f
                    .iter()
                    .filter(|&e| self.bc.edge(e) == BoundaryCondition::Absorbing)
                    .count();
                absorbing as f64 / f.count() as f64
            }
            None => 0.0,
        }
    }

    pub fn degree(&self) -> usize {
        self.basis_x.degree()
    }

    pub fn regularity(&self) -> usize {
        self.basis_x.knots().regularity()
    }

    pub fn elements(&self) -> usize {
        self.basis_x.knots().elements()
    }
}
