//! Radial toy model: a homeomorphism `h` of `S^d` with an attractor/repeller
//! decomposition `(l⁻, l⁺)` and its skew product on `S^d × R`. The lower end
//! of the skew product is an isolated invariant set in dimension `d + 1`
//! whose index representatives are the actions of `h` on the reduced
//! homology of `l⁻`, shifted up by one degree.

use alloc::vec;
use alloc::vec::Vec;

use crate::conley::{ConleyIndexData, Orientation};
use crate::error::{bail, Result};
use crate::finite_map::FiniteMap;
use crate::linalg::RationalMatrix;
use crate::perm_endo::reduced_perm_endo_matrix;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialModel {
    base_dim: usize,
    orientation: Orientation,
    actions: Vec<RationalMatrix>,
}

impl RadialModel {
    /// `actions[r]` acts on `H̃_r(l⁻)`, `r = 0..=base_dim`.
    pub fn new(base_dim: usize, orientation: Orientation, actions: Vec<RationalMatrix>) -> Result<Self> {
        if actions.len() != base_dim + 1 {
            bail!(
                Dimension,
                "base dimension {base_dim} needs {} actions, got {}",
                base_dim + 1,
                actions.len()
            );
        }
        for (r, a) in actions.iter().enumerate() {
            if !a.is_square() {
                bail!(Dimension, "action in degree {r} is {}x{}, not square", a.rows(), a.cols());
            }
        }
        Ok(Self {
            base_dim,
            orientation,
            actions,
        })
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn actions(&self) -> &[RationalMatrix] {
        &self.actions
    }
}

/// Index data of the lower end: `reps[0]` trivial, `reps[r + 1] = A_r`.
pub fn induced_conley_data(m: &RadialModel) -> ConleyIndexData {
    let reps = core::iter::once(RationalMatrix::empty())
        .chain(m.actions.iter().cloned())
        .collect();
    ConleyIndexData::new(m.base_dim + 1, m.orientation, reps)
        .expect("actions are square and of the right count")
}

/// Model on `S²` from the action `φ⁻` of `h` on the components of `l⁻` and
/// the action `ψ⁺` of `h⁻¹` on the components of `l⁺`. The degree-one
/// action is the Alexander dual of `ψ⁺`.
pub fn model_from_attractor_repeller_perms(
    phi_minus: &FiniteMap,
    psi_plus: &FiniteMap,
    orientation: Orientation,
) -> Result<RadialModel> {
    if phi_minus.size() == 0 || psi_plus.size() == 0 {
        bail!(Domain, "attractor and repeller need at least one component each");
    }
    let a0 = reduced_perm_endo_matrix(phi_minus)?;
    let a1 = reduced_perm_endo_matrix(psi_plus)?
        .transpose()
        .scale(&orientation.as_rational());
    RadialModel::new(2, orientation, vec![a0, a1, RationalMatrix::empty()])
}

/// Model on `S³` whose attractor is a solid torus mapped with degree `−m`
/// on its core.
pub fn solenoidal_model(m: usize) -> Result<RadialModel> {
    if m < 2 {
        bail!(Domain, "solenoidal degree must be at least 2, got {m}");
    }
    let degree = Rational::from_i64(-(m as i64));
    RadialModel::new(
        3,
        Orientation::Reversing,
        vec![
            RationalMatrix::empty(),
            RationalMatrix::scalar(degree),
            RationalMatrix::empty(),
            RationalMatrix::empty(),
        ],
    )
}
