//! Point set text format.
//!
//! ```text
//! p k d n
//! m_0 m_1 ... m_k          # modulus, lowest degree first, monic
//! <n lines of d*k integers>
//! ```
//!
//! Each point line is coefficient-major: all `d` coordinates' `X^0`
//! coefficients, then all `X^1` coefficients, and so on. For prime fields
//! (`k = 1`) a line is simply the `d` coordinates.

use std::path::Path;

use super::{GeomError, PointSet};
use crate::field::FieldSpec;
use crate::limits::Limits;

impl PointSet {
    pub fn to_text(&self) -> String {
        let f = self.field();
        let (k, d) = (f.k() as usize, self.dim());
        let mut out = format!("{} {} {} {}\n", f.p(), k, d, self.len());
        out.push_str(&join(f.modulus().iter()));
        out.push('\n');
        for i in 0..self.len() {
            let coeffs: Vec<Vec<u32>> = self.point(i).coords.iter().map(|&c| f.coeffs(c)).collect();
            let line: Vec<u32> = (0..k).flat_map(|j| coeffs.iter().map(move |c| c[j])).collect();
            out.push_str(&join(line.iter()));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str, limits: &Limits) -> Result<PointSet, GeomError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, msg: String| GeomError::Parse { line, msg };
        let ints = |line: usize, l: &str| -> Result<Vec<u64>, GeomError> {
            l.split_whitespace()
                .map(|s| s.parse::<u64>().map_err(|_| err(line, format!("`{s}` is not a non-negative integer"))))
                .collect()
        };

        let (hl, header) = lines.next().ok_or_else(|| err(1, "missing `p k d n` header".into()))?;
        let h = ints(hl, header)?;
        if h.len() != 4 {
            return Err(err(hl, "header must be `p k d n`".into()));
        }
        let small = |v: u64| u32::try_from(v).map_err(|_| err(hl, "header value too large".into()));
        let (p, k, d, n) = (small(h[0])?, small(h[1])? as usize, h[2] as usize, h[3] as usize);

        let (ml, mline) = lines.next().ok_or_else(|| err(hl + 1, "missing modulus line".into()))?;
        let modulus: Vec<u32> = ints(ml, mline)?.into_iter().map(|c| c as u32).collect();
        if modulus.len() != k + 1 {
            return Err(err(ml, format!("modulus needs {} coefficients", k + 1)));
        }
        let field = FieldSpec::with_modulus(p, &modulus, limits)?;

        let mut coords = Vec::with_capacity(n * d);
        let mut count = 0;
        for (line, l) in lines {
            let vals = ints(line, l)?;
            if vals.len() != d * k {
                return Err(err(line, format!("expected {} integers", d * k)));
            }
            for c in 0..d {
                let cs: Vec<u32> = (0..k).map(|j| vals[j * d + c] as u32).collect();
                let e = field.from_coeffs(&cs).map_err(|_| err(line, "coefficient out of range".into()))?;
                coords.push(e.index() as u16);
            }
            count += 1;
        }
        if count != n {
            return Err(err(hl, format!("header announces {n} points, found {count}")));
        }
        if d == 0 {
            return Err(GeomError::DimensionTooSmall { d, min: 1 });
        }
        PointSet::from_raw(field, d, coords)
    }

    pub fn read_text_file(path: &Path, limits: &Limits) -> Result<PointSet, GeomError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GeomError::Parse { line: 0, msg: format!("{}: {e}", path.display()) })?;
        PointSet::from_text(&text, limits)
    }
}

fn join<'a>(it: impl Iterator<Item = &'a u32>) -> String {
    it.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffgeom::{all_points, random_subset};
    use crate::field::make_field;

    #[test]
    fn prime_field_layout() {
        let f3 = make_field(3, 1).unwrap();
        let e = all_points(&f3, 2).unwrap().subset(&[0, 5]);
        assert_eq!(e.to_text(), "3 1 2 2\n0 1\n0 0\n1 2\n");
    }

    #[test]
    fn extension_field_is_coefficient_major() {
        let f9 = make_field(3, 2).unwrap();
        let x = f9.from_coeffs(&[0, 1]).unwrap();
        let two_x_plus_1 = f9.from_coeffs(&[1, 2]).unwrap();
        let e = PointSet::new(&f9, 2, &[f9.point(vec![x, two_x_plus_1]).unwrap()]).unwrap();
        // X^0 coefficients (0, 1) then X^1 coefficients (1, 2).
        assert_eq!(e.to_text(), "3 2 2 1\n1 0 1\n0 1 1 2\n");
        assert_eq!(PointSet::from_text(&e.to_text(), &Limits::default()).unwrap(), e);
    }

    #[test]
    fn round_trip_random_set() {
        let f25 = make_field(5, 2).unwrap();
        let e = random_subset(&f25, 2, 40, 11).unwrap();
        assert_eq!(PointSet::from_text(&e.to_text(), &Limits::default()).unwrap(), e);
    }

    #[test]
    fn malformed_files() {
        let l = Limits::default();
        for bad in [
            "",
            "3 1 2\n0 1\n",
            "3 1 2 1\n0 2\n0 0\n",
            "3 1 2 1\n0 1\n0 3\n",
            "3 1 2 2\n0 1\n0 0\n",
            "3 1 2 2\n0 1\n0 0\n0 0\n",
            "3 1 2 1\n0 1\n0 0 0\n",
        ] {
            assert!(PointSet::from_text(bad, &l).is_err(), "{bad:?}");
        }
        // Reducible modulus X^2 + 1 over F_5.
        assert!(PointSet::from_text("5 2 2 0\n1 0 1\n", &l).is_err());
    }
}
