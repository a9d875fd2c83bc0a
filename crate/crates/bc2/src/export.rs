//! CSV evaluation grids over the bounding box of region `I`.

use std::io::Write;

use bc2_core::orthogonality::RegionI;
use bc2_core::symbolic::PolyMatrix;

use crate::error::CliError;

pub const DEFAULT_POINTS: usize = 1000;

/// Grid side lengths `(n1, n2)` with `n1 = 2 n2` and `n1 n2 >= points`;
/// the box is twice as wide as it is tall.
pub fn grid_shape(points: usize) -> (usize, usize) {
    let mut n2 = 1;
    while 2 * n2 * n2 < points {
        n2 += 1;
    }
    (2 * n2, n2)
}

/// Writes `x1,x2,entry_i_j,...,in_region` rows for a matrix in `(x1, x2)`.
pub fn write_grid<W: Write>(out: W, mat: &PolyMatrix, points: usize) -> Result<usize, CliError> {
    let region = RegionI;
    let ((lo1, hi1), (lo2, hi2)) = region.bounding_box();
    let (n1, n2) = grid_shape(points);
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["x1".to_string(), "x2".to_string()];
    for i in 0..mat.rows() {
        for j in 0..mat.cols() {
            header.push(format!("entry_{}_{}", i, j));
        }
    }
    header.push("in_region".to_string());
    w.write_record(&header)?;
    let step = |lo: f64, hi: f64, n: usize, k: usize| {
        if n == 1 {
            lo
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    };
    let mut rows = 0;
    for a in 0..n1 {
        for b in 0..n2 {
            let x1 = step(lo1, hi1, n1, a);
            let x2 = step(lo2, hi2, n2, b);
            let mut rec = vec![format!("{}", x1), format!("{}", x2)];
            rec.extend(
                mat.evaluate_f64(&[x1, x2])
                    .into_iter()
                    .map(|v| format!("{}", v)),
            );
            rec.push(if region.contains(x1, x2) {
                "1".into()
            } else {
                "0".into()
            });
            w.write_record(&rec)?;
            rows += 1;
        }
    }
    w.flush()?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bc2_core::symbolic::Vars;

    #[test]
    fn default_grid_has_enough_points() {
        let (a, b) = grid_shape(DEFAULT_POINTS);
        assert!(a * b >= DEFAULT_POINTS);
        assert_eq!(a, 2 * b);
    }

    #[test]
    fn writes_header_and_rows() {
        let mut buf = Vec::new();
        let n = write_grid(&mut buf, &PolyMatrix::identity(&Vars::x(), 2), 8).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let first = text.lines().next().unwrap();
        assert_eq!(
            first,
            "x1,x2,entry_0_0,entry_0_1,entry_1_0,entry_1_1,in_region"
        );
        assert_eq!(text.lines().count(), n + 1);
    }
}
