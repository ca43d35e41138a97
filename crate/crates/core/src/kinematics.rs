//! Kinematic chain of a 6-DOF serial arm described by DH parameters.
//!
//! Each joint contributes the twist-first (modified) DH transform
//!
//! ```text
//! A_i(q) = Rx(alpha_i) * Tx(a_i) * Rz(theta_i + q_i) * Tz(d_i)
//! ```
//!
//! i.e. the link twist and link length precede the joint rotation, and the
//! joint variable enters as an additive offset to `theta`. All joints are
//! revolute. Units are meters and radians.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::num::{conv, Real};

/// One row of a DH table: link length `a`, twist `alpha`, joint-angle offset
/// `theta`, link offset `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DhRow<T> {
    pub a: T,
    pub alpha: T,
    pub theta: T,
    pub d: T,
}

impl<T: Real> DhRow<T> {
    pub fn new(a: T, alpha: T, theta: T, d: T) -> Result<Self> {
        for v in [a, alpha, theta, d] {
            if !v.is_finite() {
                return Err(Error::NonFinite { context: "DhRow" });
            }
        }
        Ok(Self { a, alpha, theta, d })
    }
}

/// DH parameters of a 6-joint chain.
#[derive(Debug, Clone, PartialEq)]
pub struct DhTable<T> {
    rows: [DhRow<T>; 6],
}

impl<T: Real> DhTable<T> {
    pub fn new(rows: [DhRow<T>; 6]) -> Self {
        Self { rows }
    }

    pub fn rows(&self) -> &[DhRow<T>; 6] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &DhRow<T> {
        &self.rows[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut DhRow<T> {
        &mut self.rows[i]
    }

    /// Flattens to 24 scalars in `(a, alpha, theta, d)` order per joint.
    pub fn flatten(&self) -> [T; 24] {
        let mut out = [T::zero(); 24];
        for (i, r) in self.rows.iter().enumerate() {
            out[4 * i] = r.a;
            out[4 * i + 1] = r.alpha;
            out[4 * i + 2] = r.theta;
            out[4 * i + 3] = r.d;
        }
        out
    }

    /// Inverse of [`DhTable::flatten`].
    pub fn from_flat(values: &[T; 24]) -> Self {
        let mut rows = [DhRow {
            a: T::zero(),
            alpha: T::zero(),
            theta: T::zero(),
            d: T::zero(),
        }; 6];
        for (i, r) in rows.iter_mut().enumerate() {
            r.a = values[4 * i];
            r.alpha = values[4 * i + 1];
            r.theta = values[4 * i + 2];
            r.d = values[4 * i + 3];
        }
        Self { rows }
    }

    /// Nominal table of a Denso VS060 arm (manufacturer values).
    pub fn denso_vs060() -> Self {
        let mm = |v: f64| conv::<T>(v * 1e-3);
        let deg = |v: f64| conv::<T>(v.to_radians());
        Self::new([
            DhRow { a: mm(0.0), alpha: deg(0.0), theta: deg(0.0), d: mm(345.0) },
            DhRow { a: mm(0.0), alpha: deg(-90.0), theta: deg(-90.0), d: mm(0.0) },
            DhRow { a: mm(305.0), alpha: deg(0.0), theta: deg(90.0), d: mm(0.0) },
            DhRow { a: mm(-10.0), alpha: deg(90.0), theta: deg(0.0), d: mm(300.0) },
            DhRow { a: mm(0.0), alpha: deg(-90.0), theta: deg(0.0), d: mm(0.0) },
            DhRow { a: mm(0.0), alpha: deg(90.0), theta: deg(0.0), d: mm(70.0) },
        ])
    }
}

/// Six joint angles in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointVector<T>(pub [T; 6]);

impl<T: Real> JointVector<T> {
    pub fn new(q: [T; 6]) -> Result<Self> {
        if q.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { context: "JointVector" });
        }
        Ok(Self(q))
    }

    pub fn zeros() -> Self {
        Self([T::zero(); 6])
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }
}

/// Rigid transform: orthonormal rotation plus translation.
#[derive(Debug, Clone, PartialEq)]
pub struct RigidTransform<T> {
    pub rotation: Matrix3<T>,
    pub translation: Vector3<T>,
}

impl<T: Real> RigidTransform<T> {
    /// Builds a transform, rejecting rotations that are not proper within
    /// the scalar type's tolerance.
    pub fn new(rotation: Matrix3<T>, translation: Vector3<T>) -> Result<Self> {
        let t = Self {
            rotation,
            translation,
        };
        let tol = orthonormality_tolerance::<T>();
        if t.orthonormality_error() > tol || (t.rotation.determinant() - T::one()).abs() > tol {
            return Err(Error::NonFinite {
                context: "RigidTransform rotation is not a proper rotation",
            });
        }
        Ok(t)
    }

    /// Builds without validation; callers guarantee `rotation` is proper.
    pub fn from_parts_unchecked(rotation: Matrix3<T>, translation: Vector3<T>) -> Self {
        Self {
            rotation,
            translation,
        }
    }

    pub fn identity() -> Self {
        Self {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    /// `self` followed in the chain by `rhs` (i.e. `self * rhs` on points).
    pub fn compose(&self, rhs: &Self) -> Self {
        Self {
            rotation: self.rotation * rhs.rotation,
            translation: self.rotation * rhs.translation + self.translation,
        }
    }

    pub fn transform_point(&self, p: &Vector3<T>) -> Vector3<T> {
        self.rotation * p + self.translation
    }

    pub fn inverse(&self) -> Self {
        let rt = self.rotation.transpose();
        Self {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }

    /// Max-norm of `R^T R - I`.
    pub fn orthonormality_error(&self) -> T {
        let e = self.rotation.transpose() * self.rotation - Matrix3::identity();
        e.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Geodesic angle between this rotation and `other`'s.
    pub fn rotation_angle_to(&self, other: &Self) -> T {
        let r = self.rotation.transpose() * other.rotation;
        let two = conv::<T>(2.0);
        let c = ((r.trace() - T::one()) / two).clamp(-T::one(), T::one());
        c.acos()
    }
}

fn orthonormality_tolerance<T: Real>() -> T {
    conv::<T>(1e-10).max(T::default_epsilon() * conv::<T>(1e3))
}

/// Homogeneous transform of one joint under the twist-first DH convention.
pub fn dh_transform<T: Real>(row: &DhRow<T>, joint_angle: T) -> RigidTransform<T> {
    let phi = row.theta + joint_angle;
    let (sp, cp) = phi.sin_cos();
    let (sa, ca) = row.alpha.sin_cos();
    let rotation = Matrix3::new(
        cp, -sp, T::zero(),
        sp * ca, cp * ca, -sa,
        sp * sa, cp * sa, ca,
    );
    let translation = Vector3::new(row.a, -row.d * sa, row.d * ca);
    RigidTransform {
        rotation,
        translation,
    }
}

/// Pose of the flange in the base frame: the ordered product of the six
/// per-joint transforms.
pub fn forward_kinematics<T: Real>(table: &DhTable<T>, joints: &JointVector<T>) -> RigidTransform<T> {
    let mut pose = RigidTransform::identity();
    for (row, &q) in table.rows().iter().zip(joints.0.iter()) {
        pose = pose.compose(&dh_transform(row, q));
    }
    pose
}

/// Tool-tip offset expressed in the flange frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToolOffset<T>(pub Vector3<T>);

impl<T: Real> ToolOffset<T> {
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        if ![x, y, z].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "ToolOffset",
            });
        }
        Ok(Self(Vector3::new(x, y, z)))
    }

    pub fn zero() -> Self {
        Self(Vector3::zeros())
    }
}

/// Tool-tip position in the base frame.
pub fn tool_tip_position<T: Real>(
    table: &DhTable<T>,
    joints: &JointVector<T>,
    tool: &ToolOffset<T>,
) -> Vector3<T> {
    forward_kinematics(table, joints).transform_point(&tool.0)
}
