use crate::error::{FuzzyError, Result};
use std::sync::Arc;

/// A point of a discrete universe: a label plus an optional numeric coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub label: String,
    pub coord: Option<f64>,
}

/// A finite, ordered universe of discourse.
///
/// Invariants: point labels are unique; either no point carries a numeric
/// coordinate or all do, with coordinates strictly increasing in order.
#[derive(Debug, Clone, PartialEq)]
pub struct Universe {
    label: String,
    points: Vec<Point>,
}

impl Universe {
    pub fn new(label: impl Into<String>, points: Vec<Point>) -> Result<Arc<Universe>> {
        let label = label.into();
        if points.is_empty() {
            return Err(FuzzyError::EmptyUniverse(label));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].iter().any(|q| q.label == p.label) {
                return Err(FuzzyError::DuplicatePointLabel {
                    universe: label,
                    label: p.label.clone(),
                });
            }
        }
        let with_coords = points.iter().filter(|p| p.coord.is_some()).count();
        if with_coords != 0 && with_coords != points.len() {
            return Err(FuzzyError::PartialCoordinates(label));
        }
        if with_coords == points.len() {
            for w in points.windows(2) {
                if w[0].coord.unwrap() >= w[1].coord.unwrap() {
                    return Err(FuzzyError::CoordinatesNotIncreasing(label));
                }
            }
        }
        Ok(Arc::new(Universe { label, points }))
    }

    /// Universe from bare labels, no coordinates.
    pub fn labeled<S: Into<String>>(
        label: impl Into<String>,
        names: impl IntoIterator<Item = S>,
    ) -> Result<Arc<Universe>> {
        Universe::new(
            label,
            names
                .into_iter()
                .map(|n| Point {
                    label: n.into(),
                    coord: None,
                })
                .collect(),
        )
    }

    /// Universe whose points are the given coordinates, labeled by their value.
    pub fn numeric(label: impl Into<String>, coords: impl IntoIterator<Item = f64>) -> Result<Arc<Universe>> {
        Universe::new(
            label,
            coords
                .into_iter()
                .map(|c| Point {
                    label: format_coord(c),
                    coord: Some(c),
                })
                .collect(),
        )
    }

    /// An evenly spaced numeric universe over [lo, hi] with `n` points.
    pub fn grid(label: impl Into<String>, lo: f64, hi: f64, n: usize) -> Result<Arc<Universe>> {
        assert!(n >= 2, "grid universe needs at least two points");
        let step = (hi - lo) / (n - 1) as f64;
        Universe::numeric(label, (0..n).map(|i| lo + step * i as f64))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, point_label: &str) -> Option<usize> {
        self.points.iter().position(|p| p.label == point_label)
    }

    pub fn has_coords(&self) -> bool {
        self.points[0].coord.is_some()
    }

    /// Coordinates of all points; error when the universe is purely symbolic.
    pub fn coords(&self) -> Result<Vec<f64>> {
        self.points
            .iter()
            .map(|p| {
                p.coord
                    .ok_or_else(|| FuzzyError::NonNumericUniverse(self.label.clone()))
            })
            .collect()
    }

    /// Mean spacing between consecutive coordinates (1.0 for a single point).
    pub fn mean_spacing(&self) -> Result<f64> {
        let coords = self.coords()?;
        if coords.len() < 2 {
            return Ok(1.0);
        }
        Ok((coords[coords.len() - 1] - coords[0]) / (coords.len() - 1) as f64)
    }
}

pub(crate) fn format_coord(c: f64) -> String {
    if c == c.trunc() && c.abs() < 1e15 {
        format!("{}", c as i64)
    } else {
        format!("{c}")
    }
}

/// Checks that two sets/relations live on the same universe.
pub(crate) fn check_same(a: &Universe, b: &Universe) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(FuzzyError::UniverseMismatch {
            left: a.label().to_string(),
            right: b.label().to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_labels() {
        let err = Universe::labeled("U", ["a", "b", "a"]).unwrap_err();
        assert!(matches!(err, FuzzyError::DuplicatePointLabel { .. }));
    }

    #[test]
    fn rejects_partial_coordinates() {
        let err = Universe::new(
            "U",
            vec![
                Point { label: "a".into(), coord: Some(1.0) },
                Point { label: "b".into(), coord: None },
            ],
        )
        .unwrap_err();
        assert!(matches!(err, FuzzyError::PartialCoordinates(_)));
    }

    #[test]
    fn rejects_non_increasing_coordinates() {
        let err = Universe::new(
            "U",
            vec![
                Point { label: "a".into(), coord: Some(2.0) },
                Point { label: "b".into(), coord: Some(1.0) },
            ],
        )
        .unwrap_err();
        assert!(matches!(err, FuzzyError::CoordinatesNotIncreasing(_)));
        assert!(Universe::numeric("U", [1.0, 2.0, 3.0]).is_ok());
    }

    #[test]
    fn grid_spans_interval() {
        let u = Universe::grid("U", 0.0, 1.0, 101).unwrap();
        assert_eq!(u.len(), 101);
        let coords = u.coords().unwrap();
        assert_eq!(coords[0], 0.0);
        assert_eq!(coords[100], 1.0);
        assert!((u.mean_spacing().unwrap() - 0.01).abs() < 1e-12);
    }
}
