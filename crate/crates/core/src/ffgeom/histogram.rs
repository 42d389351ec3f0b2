use num_rational::Ratio;
use rayon::prelude::*;

use super::{GeomError, PointSet};
use crate::field::{FieldElement, FieldSpec};
use crate::limits::Limits;

/// Table lookup for `||x - y||` on packed coordinates.
pub(crate) struct NormKernel<'a> {
    field: &'a FieldSpec,
    q: usize,
    diff_sq: Vec<u16>,
}

impl<'a> NormKernel<'a> {
    pub(crate) fn new(field: &'a FieldSpec) -> Self {
        let q = field.q() as usize;
        let mut diff_sq = vec![0u16; q * q];
        for a in 0..q as u16 {
            for b in 0..q as u16 {
                let d = field.add_idx(a, field.neg_idx(b));
                diff_sq[a as usize * q + b as usize] = field.mul_idx(d, d);
            }
        }
        NormKernel { field, q, diff_sq }
    }

    #[inline]
    pub(crate) fn distance(&self, x: &[u16], y: &[u16]) -> u16 {
        x.iter()
            .zip(y)
            .fold(0u16, |acc, (&a, &b)| self.field.add_idx(acc, self.diff_sq[a as usize * self.q + b as usize]))
    }
}

/// `nu(t) = |{(x, y) in E x E : ||x - y|| = t}|` over ordered pairs,
/// diagonal included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceHistogram {
    field: FieldSpec,
    set_size: usize,
    counts: Vec<u64>,
}

impl DistanceHistogram {
    pub fn nu(&self, t: FieldElement) -> u64 {
        assert!(self.field.contains(t), "element from another field");
        self.counts[t.index()]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(t, nu(t))` in field enumeration order.
    pub fn iter(&self) -> impl Iterator<Item = (FieldElement, u64)> + '_ {
        self.counts.iter().enumerate().map(|(i, &c)| (self.field.elem(i as u16), c))
    }

    /// Number of edges in the `t`-distance graph: `nu(t) / 2` off zero,
    /// `(nu(0) - |E|) / 2` at zero.
    pub fn edges_at(&self, t: FieldElement) -> u64 {
        let nu = self.nu(t);
        if t.is_zero() {
            (nu - self.set_size as u64) / 2
        } else {
            nu / 2
        }
    }

    /// Structural invariants: total `|E|^2`, symmetric pair counts.
    pub fn is_consistent(&self) -> bool {
        let n = self.set_size as u64;
        let zero_ok = self.counts[0] >= n && (self.counts[0] - n).is_multiple_of(2);
        self.total() == n * n && zero_ok && self.counts[1..].iter().all(|c| c % 2 == 0)
    }
}

pub fn distance_histogram(set: &PointSet) -> Result<DistanceHistogram, GeomError> {
    distance_histogram_with(set, &Limits::default())
}

pub fn distance_histogram_with(set: &PointSet, limits: &Limits) -> Result<DistanceHistogram, GeomError> {
    let n = set.len();
    if n > limits.max_set_size {
        return Err(GeomError::TooLarge { what: "point set", count: n as u128, cap: limits.max_set_size });
    }
    let q = set.field().q() as usize;
    let kernel = NormKernel::new(set.field());
    let counts = (0..n)
        .into_par_iter()
        .fold(
            || vec![0u64; q],
            |mut acc, i| {
                let x = set.raw(i);
                for j in i + 1..n {
                    acc[kernel.distance(x, set.raw(j)) as usize] += 2;
                }
                acc
            },
        )
        .reduce(|| vec![0u64; q], |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        });
    let mut counts = counts;
    counts[0] += n as u64;
    Ok(DistanceHistogram { field: set.field().clone(), set_size: n, counts })
}

/// One row of an [`IrReport`].
#[derive(Clone, Debug, PartialEq)]
pub struct IrRecord {
    pub t: FieldElement,
    pub nu: u64,
    /// `|E|^2 / q`.
    pub main_term: Ratio<i128>,
    /// `R(t) = nu(t) - |E|^2 / q`.
    pub remainder: Ratio<i128>,
    /// `2 q^{(d-1)/2} |E|`, for display; the verdict is decided exactly.
    pub bound: f64,
    /// `bound - |R(t)|`, for display.
    pub slack: f64,
    /// `|R(t)| <= bound`, decided in integers.
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IrReport {
    pub q: u32,
    pub d: usize,
    pub set_size: usize,
    /// One record per `t`, including `t = 0` (which does not enter `pass`).
    pub records: Vec<IrRecord>,
    pub pass: bool,
}

impl IrReport {
    /// Smallest slack over `t != 0`; `None` when `q` has no nonzero element.
    pub fn min_slack(&self) -> Option<(FieldElement, f64)> {
        self.records
            .iter()
            .filter(|r| !r.t.is_zero())
            .map(|r| (r.t, r.slack))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Checks `|R(t)| <= 2 q^{(d-1)/2} |E|` for every `t != 0`.
///
/// With `a = q nu(t) - |E|^2` we have `R = a / q`, and the inequality is
/// equivalent to `a^2 <= 4 q^{d+1} |E|^2`, which is evaluated in integers.
pub fn ir_check(set: &PointSet) -> Result<IrReport, GeomError> {
    ir_check_with(set, &Limits::default())
}

pub fn ir_check_with(set: &PointSet, limits: &Limits) -> Result<IrReport, GeomError> {
    let d = set.dim();
    if d < 2 {
        return Err(GeomError::DimensionTooSmall { d, min: 2 });
    }
    let hist = distance_histogram_with(set, limits)?;
    Ok(ir_report(&hist, d))
}

pub(crate) fn ir_report(hist: &DistanceHistogram, d: usize) -> IrReport {
    let q = hist.field().q();
    let e = hist.set_size() as i128;
    let e_sq = e * e;
    let bound = 2.0 * (q as f64).powf((d as f64 - 1.0) / 2.0) * e as f64;
    // 4 q^{d+1} |E|^2; overflow means the bound dwarfs any remainder.
    let rhs = (q as u128)
        .checked_pow(d as u32 + 1)
        .and_then(|v| v.checked_mul(4))
        .and_then(|v| v.checked_mul(e_sq as u128));
    let records: Vec<IrRecord> = hist
        .iter()
        .map(|(t, nu)| {
            let a = q as i128 * nu as i128 - e_sq;
            let within_bound = match rhs {
                Some(rhs) => (a.unsigned_abs()).checked_pow(2).is_some_and(|lhs| lhs <= rhs),
                None => true,
            };
            let remainder = Ratio::new(a, q as i128);
            let r_abs = a.unsigned_abs() as f64 / q as f64;
            IrRecord {
                t,
                nu,
                main_term: Ratio::new(e_sq, q as i128),
                remainder,
                bound,
                slack: bound - r_abs,
                within_bound,
            }
        })
        .collect();
    let pass = records.iter().filter(|r| !r.t.is_zero()).all(|r| r.within_bound);
    IrReport { q, d, set_size: hist.set_size(), records, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffgeom::all_points;
    use crate::field::make_field;

    #[test]
    fn full_f3_plane() {
        let f3 = make_field(3, 1).unwrap();
        let e = all_points(&f3, 2).unwrap();
        let h = distance_histogram(&e).unwrap();
        assert_eq!(h.counts(), &[9, 36, 36]);
        assert!(h.is_consistent());
        assert_eq!(h.edges_at(f3.one()), 18);
        assert_eq!(h.edges_at(f3.zero()), 0);

        let report = ir_check(&e).unwrap();
        assert!(report.pass);
        let r1 = &report.records[1];
        assert_eq!(r1.main_term, Ratio::from_integer(27));
        assert_eq!(r1.remainder, Ratio::from_integer(9));
        assert!((r1.bound - 2.0 * 3f64.sqrt() * 9.0).abs() < 1e-9);
    }

    #[test]
    fn singleton_and_empty_sets() {
        let f5 = make_field(5, 1).unwrap();
        let one = PointSet::new(&f5, 2, &[f5.point(vec![f5.one(), f5.one()]).unwrap()]).unwrap();
        let h = distance_histogram(&one).unwrap();
        assert_eq!(h.counts(), &[1, 0, 0, 0, 0]);
        let report = ir_check(&one).unwrap();
        assert!(report.pass);
        assert_eq!(report.records[2].remainder, Ratio::new(-1, 5));

        let empty = PointSet::new(&f5, 3, &[]).unwrap();
        assert!(ir_check(&empty).unwrap().pass);
    }

    #[test]
    fn dimension_one_rejected() {
        let f5 = make_field(5, 1).unwrap();
        let line = all_points(&f5, 1).unwrap();
        assert_eq!(ir_check(&line).unwrap_err(), GeomError::DimensionTooSmall { d: 1, min: 2 });
    }

    #[test]
    fn exact_comparison_catches_violations() {
        // A fabricated histogram far from |E|^2/q must fail.
        let f3 = make_field(3, 1).unwrap();
        let hist = DistanceHistogram { field: f3.clone(), set_size: 9, counts: vec![9, 72, 0] };
        let report = ir_report(&hist, 2);
        assert!(!report.pass);
        assert!(!report.records[1].within_bound);
        assert!(report.records[2].within_bound);
    }
}
