use crate::error::{FuzzyError, Result};
use crate::grade::Grade;
use crate::universe::{check_same, Universe};
use std::fmt;
use std::sync::Arc;

/// Pointwise combination operators on two fuzzy sets over one universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    /// max(x, y)
    Union,
    /// min(x, y)
    Intersection,
    /// x·y
    AlgebraicProduct,
    /// x + y − x·y
    AlgebraicSum,
    /// min(1, x + y)
    BoundedSum,
    /// max(0, x + y − 1)
    BoundedDifference,
}

impl SetOp {
    pub fn apply(self, x: Grade, y: Grade) -> Grade {
        match self {
            SetOp::Union => x.or(y),
            SetOp::Intersection => x.and(y),
            SetOp::AlgebraicProduct => x.prod(y),
            SetOp::AlgebraicSum => x.alg_sum(y),
            SetOp::BoundedSum => x.bounded_sum(y),
            SetOp::BoundedDifference => x.bounded_product(y),
        }
    }
}

/// A finite fuzzy set: one grade per point of its universe.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet {
    universe: Arc<Universe>,
    grades: Vec<Grade>,
}

impl FuzzySet {
    pub fn new(universe: Arc<Universe>, grades: Vec<Grade>) -> Result<FuzzySet> {
        if grades.len() != universe.len() {
            return Err(FuzzyError::GradeCountMismatch {
                universe: universe.label().to_string(),
                points: universe.len(),
                grades: grades.len(),
            });
        }
        Ok(FuzzySet { universe, grades })
    }

    /// Builds a set from raw grade values, validating the [0, 1] range.
    pub fn from_values(universe: Arc<Universe>, values: &[f64]) -> Result<FuzzySet> {
        let grades = values
            .iter()
            .map(|&v| Grade::new(v))
            .collect::<Result<Vec<_>>>()?;
        FuzzySet::new(universe, grades)
    }

    /// The set with grade 0 everywhere.
    pub fn empty(universe: Arc<Universe>) -> FuzzySet {
        let n = universe.len();
        FuzzySet {
            universe,
            grades: vec![Grade::ZERO; n],
        }
    }

    /// The whole universe: grade 1 everywhere.
    pub fn whole(universe: Arc<Universe>) -> FuzzySet {
        let n = universe.len();
        FuzzySet {
            universe,
            grades: vec![Grade::ONE; n],
        }
    }

    /// Grade 1 at one point, 0 elsewhere.
    pub fn singleton(universe: Arc<Universe>, point_label: &str) -> Result<FuzzySet> {
        let idx = universe.index_of(point_label).ok_or_else(|| FuzzyError::UnboundName(point_label.to_string()))?;
        let mut s = FuzzySet::empty(universe);
        s.grades[idx] = Grade::ONE;
        Ok(s)
    }

    /// Samples a membership function over a numeric universe.
    pub fn sample(universe: Arc<Universe>, f: impl Fn(f64) -> f64) -> Result<FuzzySet> {
        let coords = universe.coords()?;
        let values: Vec<f64> = coords.into_iter().map(f).collect();
        FuzzySet::from_values(universe, &values)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn values(&self) -> Vec<f64> {
        self.grades.iter().map(|g| g.value()).collect()
    }

    pub fn grade(&self, idx: usize) -> Grade {
        self.grades[idx]
    }

    pub fn grade_at(&self, point_label: &str) -> Option<Grade> {
        self.universe.index_of(point_label).map(|i| self.grades[i])
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub(crate) fn map(&self, f: impl Fn(Grade) -> Grade) -> FuzzySet {
        FuzzySet {
            universe: Arc::clone(&self.universe),
            grades: self.grades.iter().map(|&g| f(g)).collect(),
        }
    }

    /// μ̄_A: the maximum grade. The set is standard iff this is 1.
    pub fn height(&self) -> Grade {
        self.grades
            .iter()
            .copied()
            .fold(Grade::ZERO, |acc, g| acc.or(g))
    }

    pub fn is_all_zero(&self) -> bool {
        self.grades.iter().all(|g| g.value() == 0.0)
    }

    /// Pointwise 1 − μ.
    pub fn complement(&self) -> FuzzySet {
        self.map(Grade::not)
    }

    /// Pointwise μ^α.
    pub fn power(&self, alpha: f64) -> FuzzySet {
        self.map(|g| g.powf(alpha))
    }

    /// Scalar product k·A; errors when k·height would leave [0, 1].
    pub fn scale(&self, factor: f64) -> Result<FuzzySet> {
        let height = self.height().value();
        if factor < 0.0 || factor * height > 1.0 + 1e-12 {
            return Err(FuzzyError::ScalarOverflow { factor, height });
        }
        Ok(self.map(|g| Grade::clamped(factor * g.value())))
    }

    /// Clips the set at a level: pointwise min(h, μ).
    pub fn clip(&self, h: Grade) -> FuzzySet {
        self.map(|g| g.and(h))
    }

    /// λ-cut: labels of the points with grade ≥ level.
    pub fn lambda_cut(&self, level: Grade) -> Vec<String> {
        self.universe
            .points()
            .iter()
            .zip(&self.grades)
            .filter(|(_, g)| g.value() >= level.value())
            .map(|(p, _)| p.label.clone())
            .collect()
    }

    /// Support: labels of the points with grade > 0.
    pub fn support(&self) -> Vec<String> {
        self.universe
            .points()
            .iter()
            .zip(&self.grades)
            .filter(|(_, g)| g.value() > 0.0)
            .map(|(p, _)| p.label.clone())
            .collect()
    }

    /// A ⊆ B pointwise.
    pub fn subset_of(&self, other: &FuzzySet) -> Result<bool> {
        check_same(&self.universe, &other.universe)?;
        Ok(self
            .grades
            .iter()
            .zip(&other.grades)
            .all(|(a, b)| a.value() <= b.value()))
    }
}

/// Pointwise combination of two fuzzy sets over the same universe.
pub fn combine(op: SetOp, a: &FuzzySet, b: &FuzzySet) -> Result<FuzzySet> {
    check_same(a.universe(), b.universe())?;
    let grades = a
        .grades
        .iter()
        .zip(&b.grades)
        .map(|(&x, &y)| op.apply(x, y))
        .collect();
    Ok(FuzzySet {
        universe: Arc::clone(&a.universe),
        grades,
    })
}

pub fn union(a: &FuzzySet, b: &FuzzySet) -> Result<FuzzySet> {
    combine(SetOp::Union, a, b)
}

pub fn intersection(a: &FuzzySet, b: &FuzzySet) -> Result<FuzzySet> {
    combine(SetOp::Intersection, a, b)
}

impl fmt::Display for FuzzySet {
    /// `Fset(1/a, 0.9/b)`: zero-grade points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fset(")?;
        let mut first = true;
        for (p, g) in self.universe.points().iter().zip(&self.grades) {
            if g.value() == 0.0 {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{}/{}", crate::fstds::format_grade(*g), p.label)?;
            first = false;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u3() -> Arc<Universe> {
        Universe::labeled("X", ["a", "b", "c"]).unwrap()
    }

    fn set(values: &[f64]) -> FuzzySet {
        FuzzySet::from_values(u3(), values).unwrap()
    }

    #[test]
    fn union_matches_demo_output() {
        // A ∪ B from the interpreter demo program
        let a = set(&[1.0, 0.9, 0.3]);
        let b = set(&[0.1, 0.7, 0.9]);
        let c = union(&a, &b).unwrap();
        assert_eq!(c.values(), vec![1.0, 0.9, 0.9]);
    }

    #[test]
    fn intersection_is_idempotent() {
        let a = set(&[0.2, 0.5, 0.8]);
        assert_eq!(intersection(&a, &a).unwrap(), a);
    }

    #[test]
    fn bounded_sum_saturates() {
        let u = Universe::labeled("U", ["p", "q"]).unwrap();
        let a = FuzzySet::from_values(Arc::clone(&u), &[0.6, 0.8]).unwrap();
        let b = FuzzySet::from_values(u, &[0.5, 0.5]).unwrap();
        let c = combine(SetOp::BoundedSum, &a, &b).unwrap();
        assert_eq!(c.values(), vec![1.0, 1.0]);
    }

    #[test]
    fn complement_is_involutive_on_dyadics() {
        let a = set(&[0.25, 0.5, 0.8125]);
        assert_eq!(a.complement().complement(), a);
        assert_eq!(a.complement().values(), vec![0.75, 0.5, 0.1875]);
    }

    #[test]
    fn universe_mismatch_reports_both_labels() {
        let a = set(&[1.0, 0.9, 0.3]);
        let v = Universe::labeled("Y", ["a", "b", "c"]).unwrap();
        let b = FuzzySet::from_values(v, &[0.1, 0.7, 0.9]).unwrap();
        let err = union(&a, &b).unwrap_err();
        assert_eq!(
            err,
            FuzzyError::UniverseMismatch { left: "X".into(), right: "Y".into() }
        );
    }

    #[test]
    fn lambda_cut_thresholds() {
        let a = set(&[1.0, 0.9, 0.3]);
        assert_eq!(a.lambda_cut(Grade::new(0.5).unwrap()), vec!["a", "b"]);
        assert_eq!(a.lambda_cut(Grade::ZERO).len(), 3);
        // Example with no grade reaching 1 has an empty 1-cut.
        let b = set(&[0.8, 0.4, 0.6]);
        assert!(b.lambda_cut(Grade::ONE).is_empty());
    }

    #[test]
    fn height_and_zero_set() {
        let a = set(&[0.8, 0.4, 0.6]);
        assert_eq!(a.height().value(), 0.8);
        assert_eq!(FuzzySet::empty(u3()).height(), Grade::ZERO);
    }

    #[test]
    fn scale_overflow_rejected() {
        let a = set(&[0.8, 0.4, 0.6]);
        assert!(a.scale(1.5).is_err());
        assert!(a.scale(1.25).is_ok()); // 1.25 × 0.8 = 1 exactly
        let half = a.scale(0.5).unwrap();
        assert_eq!(half.values(), vec![0.4, 0.2, 0.3]);
    }

    #[test]
    fn display_omits_zeros() {
        let a = set(&[1.0, 0.9, 0.0]);
        assert_eq!(a.to_string(), "Fset(1/a, 0.9/b)");
    }
}
