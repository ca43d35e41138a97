//! 2D laser range finder model: extrinsic pose on the flange, profile points,
//! outlier filtering and a linear bootstrap for the extrinsic estimate.
//!
//! Profile points live in the laser frame's x-z plane: a measurement `(u, w)`
//! embeds as the 3D point `(u, 0, w)` with `w` the range coordinate.

use nalgebra::{DMatrix, DVector, Matrix3, Rotation3, Unit, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::kinematics::{forward_kinematics, DhTable, JointVector, RigidTransform};
use crate::num::{conv, Real};

/// Pose of the laser frame relative to the robot flange.
///
/// The rotation is stored as axis-angle with a unit axis whose z-component is
/// kept non-negative; `axis.z` is always recomputed as
/// `sqrt(1 - axis.x^2 - axis.y^2)` so the dependent component is canonical.
#[derive(Debug, Clone, PartialEq)]
pub struct LaserExtrinsics<T> {
    axis: Vector3<T>,
    angle: T,
    position: Vector3<T>,
}

impl<T: Real> LaserExtrinsics<T> {
    pub fn new(axis: Vector3<T>, angle: T, position: Vector3<T>) -> Result<Self> {
        if !axis.iter().all(|v| v.is_finite())
            || !angle.is_finite()
            || !position.iter().all(|v| v.is_finite())
        {
            return Err(Error::NonFinite {
                context: "LaserExtrinsics",
            });
        }
        let tol = conv::<T>(1e-8).max(T::default_epsilon() * conv::<T>(1e3));
        if (axis.norm() - T::one()).abs() > tol {
            return Err(Error::InvalidInput(
                "laser rotation axis must have unit norm".into(),
            ));
        }
        if axis.z < -tol {
            return Err(Error::InvalidInput(
                "laser rotation axis z-component must be non-negative".into(),
            ));
        }
        let unit = axis.normalize();
        Ok(Self {
            axis: canonical_axis(unit.x, unit.y),
            angle,
            position,
        })
    }

    /// Builds from free components, recomputing the dependent `axis.z`.
    pub fn from_free(axis_x: T, axis_y: T, angle: T, position: Vector3<T>) -> Result<Self> {
        let norm_sq = axis_x * axis_x + axis_y * axis_y;
        if norm_sq > T::one() + conv::<T>(1e-12) {
            return Err(Error::OutOfDomain {
                norm_sq: norm_sq.to_subset().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            axis: canonical_axis(axis_x, axis_y),
            angle,
            position,
        })
    }

    /// Extracts axis-angle from a rotation matrix, canonicalized to a
    /// non-negative axis z-component.
    pub fn from_rotation(rotation: &Matrix3<T>, position: Vector3<T>) -> Self {
        let rot = Rotation3::from_matrix_unchecked(*rotation);
        let (axis, angle) = match rot.axis_angle() {
            Some((axis, angle)) => (axis.into_inner(), angle),
            None => (Vector3::z(), T::zero()),
        };
        // R(-u, 2*pi - t) describes the same rotation as R(u, t); flip when
        // the axis points into the lower hemisphere.
        let (axis, angle) = if axis.z < T::zero() {
            (-axis, T::two_pi() - angle)
        } else {
            (axis, angle)
        };
        Self {
            axis: canonical_axis(axis.x, axis.y),
            angle,
            position,
        }
    }

    pub fn axis(&self) -> Vector3<T> {
        self.axis
    }

    pub fn angle(&self) -> T {
        self.angle
    }

    pub fn position(&self) -> Vector3<T> {
        self.position
    }

    pub fn rotation(&self) -> Matrix3<T> {
        Rotation3::from_axis_angle(&Unit::new_unchecked(self.axis), self.angle).into_inner()
    }

    /// The rigid transform from laser frame to flange frame.
    pub fn transform(&self) -> RigidTransform<T> {
        RigidTransform::from_parts_unchecked(self.rotation(), self.position)
    }
}

fn canonical_axis<T: Real>(x: T, y: T) -> Vector3<T> {
    let z2 = T::one() - x * x - y * y;
    Vector3::new(x, y, z2.max(T::zero()).sqrt())
}

/// One point of a laser profile in the measurement plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint<T> {
    /// Lateral coordinate (meters).
    pub u: T,
    /// Range coordinate (meters).
    pub w: T,
}

impl<T: Real> ScanPoint<T> {
    pub fn new(u: T, w: T) -> Result<Self> {
        if !u.is_finite() || !w.is_finite() {
            return Err(Error::NonFinite {
                context: "ScanPoint",
            });
        }
        Ok(Self { u, w })
    }

    /// Embedding into the laser frame: the profile lives in the x-z plane.
    pub fn embed(&self) -> Vector3<T> {
        Vector3::new(self.u, T::zero(), self.w)
    }
}

/// A laser reading: the plate it saw, the robot pose, and the profile points.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord<T> {
    pub plane_index: usize,
    pub joints: JointVector<T>,
    pub points: Vec<ScanPoint<T>>,
}

impl<T: Real> ScanRecord<T> {
    pub fn new(plane_index: usize, joints: JointVector<T>, points: Vec<ScanPoint<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("scan record has no points".into()));
        }
        Ok(Self {
            plane_index,
            joints,
            points,
        })
    }
}

/// Base-frame pose of the laser for a given robot configuration.
pub fn laser_to_base<T: Real>(
    table: &DhTable<T>,
    joints: &JointVector<T>,
    ext: &LaserExtrinsics<T>,
) -> RigidTransform<T> {
    forward_kinematics(table, joints).compose(&ext.transform())
}

/// Maps a profile point into the robot base frame.
pub fn laser_point_to_base<T: Real>(
    table: &DhTable<T>,
    joints: &JointVector<T>,
    ext: &LaserExtrinsics<T>,
    pt: &ScanPoint<T>,
) -> Vector3<T> {
    laser_to_base(table, joints, ext).transform_point(&pt.embed())
}

/// Keeps the profile points consistent with the dominant line.
///
/// Classic RANSAC with two-point hypotheses over `iterations` seeded trials;
/// the winning hypothesis is refined by a total-least-squares fit to its
/// inliers and the returned indices are the points within
/// `inlier_threshold` perpendicular distance of the refined line, sorted
/// ascending. Deterministic for a fixed seed.
pub fn ransac_line_filter<T: Real>(
    profile: &[ScanPoint<T>],
    inlier_threshold: T,
    iterations: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    if profile.len() < 2 {
        return Err(Error::InvalidInput(
            "ransac_line_filter needs at least 2 points".into(),
        ));
    }
    if inlier_threshold <= T::zero() {
        return Err(Error::InvalidInput(
            "inlier threshold must be positive".into(),
        ));
    }
    let first = profile[0];
    if profile.iter().all(|p| p.u == first.u && p.w == first.w) {
        return Err(Error::DegenerateProfile);
    }

    let n = profile.len();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut best: Option<(usize, T, Vec<usize>)> = None; // (count, sq-dist sum, inliers)

    for _ in 0..iterations.max(1) {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let (p, q) = (profile[i], profile[j]);
        let du = q.u - p.u;
        let dw = q.w - p.w;
        let len = (du * du + dw * dw).sqrt();
        if len == T::zero() {
            continue; // coincident sample, no line hypothesis
        }
        let (du, dw) = (du / len, dw / len);

        let mut inliers = Vec::new();
        let mut sq_sum = T::zero();
        for (k, pt) in profile.iter().enumerate() {
            let d = perpendicular_distance(pt, (p.u, p.w), (du, dw));
            if d <= inlier_threshold {
                inliers.push(k);
                sq_sum += d * d;
            }
        }
        let better = match &best {
            None => true,
            Some((count, sum, _)) => {
                inliers.len() > *count || (inliers.len() == *count && sq_sum < *sum)
            }
        };
        if better {
            best = Some((inliers.len(), sq_sum, inliers));
        }
    }

    let (_, _, hypothesis_inliers) = best.ok_or(Error::DegenerateProfile)?;

    // Total-least-squares refit on the winning consensus set, then re-select.
    let (origin, dir) = line_tls(profile, &hypothesis_inliers);
    let mut refined: Vec<usize> = profile
        .iter()
        .enumerate()
        .filter(|(_, pt)| perpendicular_distance(pt, origin, dir) <= inlier_threshold)
        .map(|(k, _)| k)
        .collect();
    refined.sort_unstable();
    Ok(refined)
}

fn perpendicular_distance<T: Real>(pt: &ScanPoint<T>, origin: (T, T), dir: (T, T)) -> T {
    let ru = pt.u - origin.0;
    let rw = pt.w - origin.1;
    (ru * dir.1 - rw * dir.0).abs()
}

/// Total-least-squares line through the selected points: centroid plus the
/// principal direction of the 2x2 scatter matrix.
fn line_tls<T: Real>(profile: &[ScanPoint<T>], indices: &[usize]) -> ((T, T), (T, T)) {
    let count = conv::<T>(indices.len() as f64);
    let mut cu = T::zero();
    let mut cw = T::zero();
    for &k in indices {
        cu += profile[k].u;
        cw += profile[k].w;
    }
    cu /= count;
    cw /= count;

    let mut suu = T::zero();
    let mut suw = T::zero();
    let mut sww = T::zero();
    for &k in indices {
        let du = profile[k].u - cu;
        let dw = profile[k].w - cw;
        suu += du * du;
        suw += du * dw;
        sww += dw * dw;
    }
    // Largest-eigenvalue direction of [[suu, suw], [suw, sww]].
    let half_tr = (suu + sww) / conv::<T>(2.0);
    let det = suu * sww - suw * suw;
    let disc = (half_tr * half_tr - det).max(T::zero()).sqrt();
    let lambda = half_tr + disc;
    let (mut du, mut dw) = if suw.abs() > T::default_epsilon() {
        (lambda - sww, suw)
    } else if suu >= sww {
        (T::one(), T::zero())
    } else {
        (T::zero(), T::one())
    };
    let norm = (du * du + dw * dw).sqrt();
    if norm > T::zero() {
        du /= norm;
        dw /= norm;
    }
    ((cu, cw), (du, dw))
}

/// Total-least-squares plane fit: returns `(normal, offset)` with
/// `normal . p = offset` for points `p` on the plane.
pub fn fit_plane<T: Real>(points: &[Vector3<T>]) -> Result<(Vector3<T>, T)> {
    if points.len() < 3 {
        return Err(Error::InvalidInput(
            "plane fit needs at least 3 points".into(),
        ));
    }
    let count = conv::<T>(points.len() as f64);
    let centroid = points.iter().fold(Vector3::zeros(), |acc, p| acc + p) / count;
    let mut scatter = Matrix3::zeros();
    for p in points {
        let d = p - centroid;
        scatter += d * d.transpose();
    }
    let eig = nalgebra::SymmetricEigen::new(scatter);
    let mut min_idx = 0;
    for i in 1..3 {
        if eig.eigenvalues[i] < eig.eigenvalues[min_idx] {
            min_idx = i;
        }
    }
    let normal = eig.eigenvectors.column(min_idx).into_owned();
    let normal = normal.normalize();
    Ok((normal, normal.dot(&centroid)))
}

/// Bootstraps the laser extrinsics from the scans of a single plate location.
///
/// Three steps: (1) estimate the plate plane using the seed extrinsics,
/// (2) with the plane held fixed, solve the planar constraint as a linear
/// least-squares system for the observable entries of the laser transform
/// (the profile's y-coordinate is identically zero, so the rotation's second
/// column never enters the data; the remaining two columns and the
/// translation give 9 unknowns), (3) complete the rotation by orthogonality
/// and project onto the nearest proper rotation before converting back to
/// the canonical axis-angle form.
pub fn initial_extrinsics_linear<T: Real>(
    records: &[ScanRecord<T>],
    table: &DhTable<T>,
    seed_ext: &LaserExtrinsics<T>,
) -> Result<LaserExtrinsics<T>> {
    let total_points: usize = records.iter().map(|r| r.points.len()).sum();
    if total_points < 9 {
        return Err(Error::RankDeficient {
            rank: total_points,
            needed: 9,
        });
    }

    // Step 1: plane estimate from the seed extrinsics.
    let mapped: Vec<Vector3<T>> = records
        .iter()
        .flat_map(|r| {
            let to_base = laser_to_base(table, &r.joints, seed_ext);
            r.points
                .iter()
                .map(move |pt| to_base.transform_point(&pt.embed()))
        })
        .collect();
    let (normal, offset) = fit_plane(&mapped)?;

    // Step 2: linear system over [col1(A); col3(A); b].
    let mut rows = DMatrix::<T>::zeros(total_points, 9);
    let mut rhs = DVector::<T>::zeros(total_points);
    let mut row = 0;
    for record in records {
        let flange = forward_kinematics(table, &record.joints);
        let m = flange.rotation.transpose() * normal;
        let constant = offset - normal.dot(&flange.translation);
        for pt in &record.points {
            for axis in 0..3 {
                rows[(row, axis)] = pt.u * m[axis];
                rows[(row, 3 + axis)] = pt.w * m[axis];
                rows[(row, 6 + axis)] = m[axis];
            }
            rhs[row] = constant;
            row += 1;
        }
    }

    let svd = rows.svd(true, true);
    let sigma_max = svd.singular_values[0];
    let eps = sigma_max * conv::<T>(1e-10);
    let rank = svd.rank(eps);
    if rank < 9 {
        return Err(Error::RankDeficient { rank, needed: 9 });
    }
    let solution = svd
        .solve(&rhs, eps)
        .map_err(|_| Error::SingularNormalEquations)?;

    let col1 = Vector3::new(solution[0], solution[1], solution[2]);
    let col3 = Vector3::new(solution[3], solution[4], solution[5]);
    let position = Vector3::new(solution[6], solution[7], solution[8]);
    let col2 = col3.cross(&col1);
    let mut linear = Matrix3::zeros();
    linear.set_column(0, &col1);
    linear.set_column(1, &col2);
    linear.set_column(2, &col3);

    let rotation = nearest_rotation(&linear)?;
    Ok(LaserExtrinsics::from_rotation(&rotation, position))
}

/// Orthogonal Procrustes projection onto the nearest proper rotation.
fn nearest_rotation<T: Real>(m: &Matrix3<T>) -> Result<Matrix3<T>> {
    let svd = m.svd(true, true);
    let u = svd.u.ok_or(Error::SingularNormalEquations)?;
    let v_t = svd.v_t.ok_or(Error::SingularNormalEquations)?;
    let det = (u * v_t).determinant();
    let mut d = Matrix3::identity();
    d[(2, 2)] = if det < T::zero() { -T::one() } else { T::one() };
    Ok(u * d * v_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{DhRow, ToolOffset};
    use nalgebra::Matrix4;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn identity_table() -> DhTable<f64> {
        DhTable::new([DhRow::new(0.0, 0.0, 0.0, 0.0).unwrap(); 6])
    }

    fn identity_ext() -> LaserExtrinsics<f64> {
        LaserExtrinsics::new(Vector3::z(), 0.0, Vector3::zeros()).unwrap()
    }

    fn nominal_ext() -> LaserExtrinsics<f64> {
        LaserExtrinsics::new(Vector3::z(), 3.14, Vector3::new(-0.1275, -0.033, 0.1015)).unwrap()
    }

    // Rodrigues formula written out by hand, used as an oracle.
    fn rodrigues(axis: Vector3<f64>, angle: f64) -> Matrix3<f64> {
        let (s, c) = angle.sin_cos();
        let k = Matrix3::new(
            0.0, -axis.z, axis.y,
            axis.z, 0.0, -axis.x,
            -axis.y, axis.x, 0.0,
        );
        Matrix3::identity() + k * s + k * k * (1.0 - c)
    }

    #[test]
    fn identity_everything_embeds_the_point() {
        let p = laser_point_to_base(
            &identity_table(),
            &JointVector::zeros(),
            &identity_ext(),
            &ScanPoint::new(0.1, 0.05).unwrap(),
        );
        assert_eq!(p, Vector3::new(0.1, 0.0, 0.05));
    }

    #[test]
    fn zero_point_lands_on_extrinsic_position() {
        let p = laser_point_to_base(
            &identity_table(),
            &JointVector::zeros(),
            &nominal_ext(),
            &ScanPoint::new(0.0, 0.0).unwrap(),
        );
        assert_eq!(p, Vector3::new(-0.1275, -0.033, 0.1015));
    }

    #[test]
    fn mapping_matches_two_stage_homogeneous_oracle() {
        let table = DhTable::<f64>::denso_vs060();
        let ext = nominal_ext();
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        for _ in 0..20 {
            let q = JointVector(std::array::from_fn(|_| rng.random_range(-2.0..2.0)));
            let pt = ScanPoint::new(rng.random_range(-0.05..0.05), rng.random_range(0.1..0.3))
                .unwrap();

            let fk = forward_kinematics(&table, &q);
            let mut flange = Matrix4::identity();
            flange.fixed_view_mut::<3, 3>(0, 0).copy_from(&fk.rotation);
            flange
                .fixed_view_mut::<3, 1>(0, 3)
                .copy_from(&fk.translation);
            let mut laser = Matrix4::identity();
            laser
                .fixed_view_mut::<3, 3>(0, 0)
                .copy_from(&rodrigues(Vector3::z(), 3.14));
            laser
                .fixed_view_mut::<3, 1>(0, 3)
                .copy_from(&ext.position());
            let h = flange * laser * nalgebra::Vector4::new(pt.u, 0.0, pt.w, 1.0);

            let p = laser_point_to_base(&table, &q, &ext, &pt);
            assert!((p - Vector3::new(h[0], h[1], h[2])).norm() < 1e-12);
        }
    }

    #[test]
    fn mapping_is_affine_in_the_scan_point() {
        let table = DhTable::<f64>::denso_vs060();
        let ext = nominal_ext();
        let q = JointVector([0.3, -0.4, 0.9, 0.2, -0.7, 1.1]);
        let a = ScanPoint::new(-0.03, 0.12).unwrap();
        let b = ScanPoint::new(0.04, 0.28).unwrap();
        let mid = ScanPoint::new((a.u + b.u) / 2.0, (a.w + b.w) / 2.0).unwrap();
        let pa = laser_point_to_base(&table, &q, &ext, &a);
        let pb = laser_point_to_base(&table, &q, &ext, &b);
        let pm = laser_point_to_base(&table, &q, &ext, &mid);
        assert!((pm - (pa + pb) / 2.0).norm() < 1e-14);
    }

    #[test]
    fn extrinsics_canonicalize_axis_into_upper_hemisphere() {
        let raw_axis = Vector3::new(0.3, -0.4, -(1.0f64 - 0.25).sqrt());
        let rot = rodrigues(raw_axis, 1.2);
        let ext = LaserExtrinsics::from_rotation(&rot, Vector3::zeros());
        assert!(ext.axis().z >= 0.0);
        assert!((ext.rotation() - rot).abs().max() < 1e-12, "same rotation");
        let n = ext.axis().norm();
        assert!((n - 1.0).abs() < 1e-12);
    }

    #[test]
    fn from_free_rejects_out_of_domain_axis() {
        let err = LaserExtrinsics::<f64>::from_free(0.9, 0.9, 1.0, Vector3::zeros());
        assert!(matches!(err, Err(Error::OutOfDomain { .. })));
    }

    fn collinear_profile(n: usize) -> Vec<ScanPoint<f64>> {
        (0..n)
            .map(|i| {
                let t = i as f64 / n as f64;
                ScanPoint::new(-0.04 + 0.08 * t, 0.15 + 0.02 * t).unwrap()
            })
            .collect()
    }

    #[test]
    fn ransac_keeps_all_collinear_points() {
        let profile = collinear_profile(40);
        let inliers = ransac_line_filter(&profile, 1e-4, 200, 7).unwrap();
        assert_eq!(inliers, (0..40).collect::<Vec<_>>());
    }

    #[test]
    fn ransac_rejects_displaced_outliers() {
        let mut profile = collinear_profile(38);
        // displace two points 5 mm perpendicular to the line
        let dir = Vector3::new(0.08, 0.0, 0.02).normalize();
        let perp = Vector3::new(-dir.z, 0.0, dir.x);
        for (slot, base) in [(5usize, 10usize), (20, 30)] {
            let p = profile[base];
            profile.insert(slot, ScanPoint::new(p.u + 0.005 * perp.x, p.w + 0.005 * perp.z).unwrap());
        }
        let inliers = ransac_line_filter(&profile, 0.5e-3, 200, 9).unwrap();
        assert_eq!(inliers.len(), 38);
        assert!(!inliers.contains(&5));
        assert!(!inliers.contains(&20));

        // exhaustive check against the known line
        for &k in &inliers {
            let p = profile[k];
            let r = Vector3::new(p.u + 0.04, 0.0, p.w - 0.15);
            let d = (r - dir * r.dot(&dir)).norm();
            assert!(d < 0.5e-3, "selected point {k} is {d} m off the true line");
        }
    }

    #[test]
    fn ransac_two_points_are_both_inliers() {
        let profile = vec![
            ScanPoint::new(0.0, 0.1).unwrap(),
            ScanPoint::new(0.01, 0.12).unwrap(),
        ];
        let inliers = ransac_line_filter(&profile, 1e-6, 50, 3).unwrap();
        assert_eq!(inliers, vec![0, 1]);
    }

    #[test]
    fn ransac_coincident_profile_is_degenerate() {
        let profile = vec![ScanPoint::new(0.01, 0.2).unwrap(); 5];
        assert!(matches!(
            ransac_line_filter(&profile, 1e-4, 50, 3),
            Err(Error::DegenerateProfile)
        ));
    }

    #[test]
    fn ransac_is_deterministic_and_order_insensitive_as_a_point_set() {
        let mut profile = collinear_profile(30);
        let p = profile[4];
        profile.push(ScanPoint::new(p.u + 0.004, p.w - 0.006).unwrap());

        let a = ransac_line_filter(&profile, 0.5e-3, 200, 42).unwrap();
        let b = ransac_line_filter(&profile, 0.5e-3, 200, 42).unwrap();
        assert_eq!(a, b, "same seed, same result");

        let mut shuffled: Vec<(usize, ScanPoint<f64>)> = profile.iter().copied().enumerate().collect();
        shuffled.reverse();
        let reordered: Vec<ScanPoint<f64>> = shuffled.iter().map(|(_, p)| *p).collect();
        let c = ransac_line_filter(&reordered, 0.5e-3, 200, 42).unwrap();
        let selected_a: Vec<(u64, u64)> = a
            .iter()
            .map(|&k| (profile[k].u.to_bits(), profile[k].w.to_bits()))
            .collect();
        let mut selected_c: Vec<(u64, u64)> = c
            .iter()
            .map(|&k| (reordered[k].u.to_bits(), reordered[k].w.to_bits()))
            .collect();
        selected_c.reverse();
        assert_eq!(selected_a, selected_c, "same physical points selected");
    }

    // Minimal in-test scan generator, independent of the simulator module:
    // random accepted poses whose laser ray fan intersects the given plane.
    fn synthesize_records(
        table: &DhTable<f64>,
        ext: &LaserExtrinsics<f64>,
        normal: Vector3<f64>,
        offset: f64,
        poses: usize,
        points: usize,
        seed: u64,
    ) -> Vec<ScanRecord<f64>> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut records = Vec::new();
        let mut attempts = 0;
        while records.len() < poses {
            attempts += 1;
            assert!(attempts < 2_000_000, "test generator could not find poses");
            let q = JointVector(std::array::from_fn(|_| rng.random_range(-2.5..2.5)));
            let to_base = laser_to_base(table, &q, ext);
            let mut pts = Vec::with_capacity(points);
            let mut ok = true;
            for _ in 0..points {
                let phi: f64 = rng.random_range(-0.3..0.3);
                let dir = to_base.rotation * Vector3::new(phi.sin(), 0.0, phi.cos());
                let denom = normal.dot(&dir);
                if denom.abs() < 0.5 {
                    ok = false;
                    break;
                }
                let s = (offset - normal.dot(&to_base.translation)) / denom;
                if !(0.1..=0.3).contains(&s) {
                    ok = false;
                    break;
                }
                pts.push(ScanPoint::new(s * phi.sin(), s * phi.cos()).unwrap());
            }
            if ok {
                records.push(ScanRecord::new(0, q, pts).unwrap());
            }
        }
        records
    }

    fn ext_error(a: &LaserExtrinsics<f64>, b: &LaserExtrinsics<f64>) -> f64 {
        let dp = (a.position() - b.position()).norm();
        let r = a.rotation().transpose() * b.rotation();
        let c = ((r.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
        dp + c.acos()
    }

    #[test]
    fn bootstrap_is_a_fixed_point_on_noiseless_data() {
        let table = DhTable::<f64>::denso_vs060();
        let truth = nominal_ext();
        let records = synthesize_records(&table, &truth, Vector3::z(), -0.084, 8, 12, 31);
        let est = initial_extrinsics_linear(&records, &table, &truth).unwrap();
        assert!(
            ext_error(&est, &truth) < 1e-8,
            "bootstrap moved away from the truth: {}",
            ext_error(&est, &truth)
        );
    }

    #[test]
    fn bootstrap_improves_a_perturbed_seed() {
        let table = DhTable::<f64>::denso_vs060();
        let truth = nominal_ext();
        let records = synthesize_records(&table, &truth, Vector3::z(), -0.084, 10, 15, 33);

        let seed_rot = rodrigues(Vector3::new(0.0, 0.0, 1.0), 3.14)
            * rodrigues(Vector3::new(1.0, 0.0, 0.0).normalize(), 1.0f64.to_radians());
        let seed = LaserExtrinsics::from_rotation(
            &seed_rot,
            truth.position() + Vector3::new(0.002, -0.0015, 0.001),
        );
        let est = initial_extrinsics_linear(&records, &table, &seed).unwrap();
        let before = ext_error(&seed, &truth);
        let after = ext_error(&est, &truth);
        assert!(
            after < before,
            "bootstrap should reduce the error: before {before}, after {after}"
        );
    }

    #[test]
    fn bootstrap_needs_pose_variety() {
        let table = DhTable::<f64>::denso_vs060();
        let truth = nominal_ext();
        let records = synthesize_records(&table, &truth, Vector3::z(), -0.084, 1, 40, 35);
        let cloned: Vec<ScanRecord<f64>> = (0..5).map(|_| records[0].clone()).collect();
        assert!(matches!(
            initial_extrinsics_linear(&cloned, &table, &truth),
            Err(Error::RankDeficient { .. })
        ));
    }
}
