//! Point sets in `F_q^d`, distance histograms, distance graphs and
//! `G`-distance sets.

mod distance_set;
mod histogram;
mod points_file;

use rand::Rng;
use thiserror::Error;

use crate::field::{FieldError, FieldSpec, Point};
use crate::limits::Limits;
use crate::rng::rng_from_seed;

pub use distance_set::{distance_graph, graph_distance_set, Coverage, DistanceVerdict, GraphDistanceSet, Verdict};
pub use histogram::{distance_histogram, distance_histogram_with, ir_check, ir_check_with, DistanceHistogram, IrRecord, IrReport};
pub(crate) use histogram::ir_report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("{what} has {count} points, above the configured cap {cap}")]
    TooLarge { what: &'static str, count: u128, cap: usize },
    #[error("requested {size} points from a space of {total}")]
    SizeTooLarge { size: usize, total: u128 },
    #[error("dimension must be at least {min}, got {d}")]
    DimensionTooSmall { d: usize, min: usize },
    #[error("point {0} repeats an earlier point")]
    DuplicatePoint(usize),
    #[error("point {index} has dimension {got}, expected {expected}")]
    DimensionMismatch { index: usize, got: usize, expected: usize },
    #[error("points file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Distinct points of `F_q^d`, stored as packed element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    field: FieldSpec,
    d: usize,
    coords: Vec<u16>,
}

impl PointSet {
    pub fn new(field: &FieldSpec, d: usize, points: &[Point]) -> Result<PointSet, GeomError> {
        if d < 1 {
            return Err(GeomError::DimensionTooSmall { d, min: 1 });
        }
        let mut coords = Vec::with_capacity(points.len() * d);
        for (i, p) in points.iter().enumerate() {
            if p.dim() != d {
                return Err(GeomError::DimensionMismatch { index: i, got: p.dim(), expected: d });
            }
            for &c in &p.coords {
                if !field.contains(c) {
                    return Err(FieldError::SpecMismatch.into());
                }
                coords.push(c.index() as u16);
            }
        }
        PointSet::from_raw(field.clone(), d, coords)
    }

    pub(crate) fn from_raw(field: FieldSpec, d: usize, coords: Vec<u16>) -> Result<PointSet, GeomError> {
        let set = PointSet { field, d, coords };
        let mut seen = std::collections::HashSet::with_capacity(set.len());
        for i in 0..set.len() {
            if !seen.insert(set.raw(i)) {
                return Err(GeomError::DuplicatePoint(i));
            }
        }
        Ok(set)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.d
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub(crate) fn raw(&self, i: usize) -> &[u16] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    pub fn point(&self, i: usize) -> Point {
        Point { coords: self.raw(i).iter().map(|&c| self.field.elem(c)).collect() }
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    /// `{x + z : x in E}`.
    pub fn translate(&self, z: &Point) -> Result<PointSet, GeomError> {
        if z.dim() != self.d {
            return Err(GeomError::DimensionMismatch { index: 0, got: z.dim(), expected: self.d });
        }
        let shift: Vec<u16> = z
            .coords
            .iter()
            .map(|&c| if self.field.contains(c) { Ok(c.index() as u16) } else { Err(FieldError::SpecMismatch) })
            .collect::<Result<_, _>>()?;
        let coords = self.coords.chunks(self.d).flat_map(|x| x.iter().zip(&shift).map(|(&a, &b)| self.field.add_idx(a, b))).collect();
        Ok(PointSet { field: self.field.clone(), d: self.d, coords })
    }

    /// Reorders coordinates: new coordinate `i` is old coordinate `perm[i]`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> PointSet {
        assert_eq!(perm.len(), self.d, "permutation length");
        let coords = self.coords.chunks(self.d).flat_map(|x| perm.iter().map(move |&j| x[j])).collect();
        PointSet { field: self.field.clone(), d: self.d, coords }
    }

    /// Sub-collection by point index (order preserved).
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        let coords = indices.iter().flat_map(|&i| self.raw(i).iter().copied()).collect();
        PointSet { field: self.field.clone(), d: self.d, coords }
    }

    /// Points sorted lexicographically (first coordinate most significant).
    pub fn sorted(&self) -> PointSet {
        let mut rows: Vec<&[u16]> = self.coords.chunks(self.d).collect();
        rows.sort_unstable();
        let coords = rows.concat();
        PointSet { field: self.field.clone(), d: self.d, coords }
    }
}

fn space_size(field: &FieldSpec, d: usize) -> u128 {
    (field.q() as u128).checked_pow(d as u32).unwrap_or(u128::MAX)
}

fn decode_point(q: u32, d: usize, mut index: u64, out: &mut Vec<u16>) {
    let start = out.len();
    out.resize(start + d, 0);
    for slot in out[start..].iter_mut().rev() {
        *slot = (index % q as u64) as u16;
        index /= q as u64;
    }
}

/// Every point of `F_q^d` in lexicographic order.
pub fn all_points(field: &FieldSpec, d: usize) -> Result<PointSet, GeomError> {
    all_points_with(field, d, &Limits::default())
}

pub fn all_points_with(field: &FieldSpec, d: usize, limits: &Limits) -> Result<PointSet, GeomError> {
    let total = checked_space(field, d, limits)?;
    let mut coords = Vec::with_capacity(total * d);
    for i in 0..total as u64 {
        decode_point(field.q(), d, i, &mut coords);
    }
    Ok(PointSet { field: field.clone(), d, coords })
}

fn checked_space(field: &FieldSpec, d: usize, limits: &Limits) -> Result<usize, GeomError> {
    if d < 1 {
        return Err(GeomError::DimensionTooSmall { d, min: 1 });
    }
    let total = space_size(field, d);
    if total > limits.max_space_points as u128 {
        return Err(GeomError::TooLarge { what: "F_q^d", count: total, cap: limits.max_space_points });
    }
    Ok(total as usize)
}

/// Uniform sample of `size` distinct points, returned in lexicographic
/// order. Drawn by a partial Fisher–Yates shuffle of the lexicographic
/// point indices, so for a fixed seed smaller samples are subsets of larger
/// ones.
pub fn random_subset(field: &FieldSpec, d: usize, size: usize, seed: u64) -> Result<PointSet, GeomError> {
    random_subset_with(field, d, size, seed, &Limits::default())
}

pub fn random_subset_with(
    field: &FieldSpec,
    d: usize,
    size: usize,
    seed: u64,
    limits: &Limits,
) -> Result<PointSet, GeomError> {
    let total = checked_space(field, d, limits)?;
    if size > total {
        return Err(GeomError::SizeTooLarge { size, total: total as u128 });
    }
    let mut rng = rng_from_seed(seed);
    let mut indices: Vec<u32> = (0..total as u32).collect();
    for i in 0..size {
        let j = rng.gen_range(i..total);
        indices.swap(i, j);
    }
    let mut chosen = indices[..size].to_vec();
    chosen.sort_unstable();
    let mut coords = Vec::with_capacity(size * d);
    for idx in chosen {
        decode_point(field.q(), d, idx as u64, &mut coords);
    }
    Ok(PointSet { field: field.clone(), d, coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn whole_spaces() {
        let f3 = make_field(3, 1).unwrap();
        let e = all_points(&f3, 2).unwrap();
        assert_eq!(e.len(), 9);
        assert_eq!(e.point(1).coords, vec![f3.zero(), f3.one()]);
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(all_points(&f5, 3).unwrap().len(), 125);
        let f13 = make_field(13, 1).unwrap();
        assert!(matches!(all_points(&f13, 4), Err(GeomError::TooLarge { count: 28561, .. })));
    }

    #[test]
    fn sampling_contract() {
        let f5 = make_field(5, 1).unwrap();
        let full = random_subset(&f5, 2, 25, 9).unwrap();
        assert_eq!(full, all_points(&f5, 2).unwrap());
        assert!(random_subset(&f5, 2, 0, 9).unwrap().is_empty());
        assert_eq!(random_subset(&f5, 2, 10, 3).unwrap(), random_subset(&f5, 2, 10, 3).unwrap());
        assert_ne!(random_subset(&f5, 2, 10, 3).unwrap(), random_subset(&f5, 2, 10, 4).unwrap());
        assert!(matches!(random_subset(&f5, 2, 26, 0), Err(GeomError::SizeTooLarge { .. })));
    }

    #[test]
    fn samples_are_nested_for_a_fixed_seed() {
        let f7 = make_field(7, 1).unwrap();
        let small = random_subset(&f7, 2, 12, 5).unwrap();
        let big: std::collections::HashSet<Point> = random_subset(&f7, 2, 30, 5).unwrap().points().collect();
        assert!(small.points().all(|p| big.contains(&p)));
    }

    #[test]
    fn duplicates_and_foreign_points_rejected() {
        let f3 = make_field(3, 1).unwrap();
        let p = f3.point(vec![f3.one(), f3.zero()]).unwrap();
        assert_eq!(PointSet::new(&f3, 2, &[p.clone(), p.clone()]).unwrap_err(), GeomError::DuplicatePoint(1));
        let f5 = make_field(5, 1).unwrap();
        let foreign = Point { coords: vec![f5.one(), f5.one()] };
        assert!(matches!(PointSet::new(&f3, 2, &[foreign]), Err(GeomError::Field(FieldError::SpecMismatch))));
        assert!(matches!(PointSet::new(&f3, 3, &[p]), Err(GeomError::DimensionMismatch { .. })));
    }

    #[test]
    fn translation_and_permutation_stay_in_space() {
        let f3 = make_field(3, 1).unwrap();
        let e = all_points(&f3, 2).unwrap();
        let z = f3.point(vec![f3.one(), f3.from_int(2)]).unwrap();
        assert_eq!(e.translate(&z).unwrap().sorted(), e);
        assert_eq!(e.permute_coordinates(&[1, 0]).sorted(), e);
    }
}
