use crate::error::{FuzzyError, Result};
use crate::inference::RuleFiring;
use crate::set::FuzzySet;

/// The eight defuzzification methods. The first four act on an aggregate
/// fuzzy set; the last four act on per-rule firings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefuzzMethod {
    Centre,
    MaxAverage,
    MaxMiddle,
    Bisector,
    Height,
    MaxHeight,
    Area,
    GreatestArea,
}

impl DefuzzMethod {
    pub fn name(self) -> &'static str {
        match self {
            DefuzzMethod::Centre => "centre",
            DefuzzMethod::MaxAverage => "max-average",
            DefuzzMethod::MaxMiddle => "max-middle",
            DefuzzMethod::Bisector => "bisector",
            DefuzzMethod::Height => "height",
            DefuzzMethod::MaxHeight => "max-height",
            DefuzzMethod::Area => "area",
            DefuzzMethod::GreatestArea => "greatest-area",
        }
    }

    pub fn parse(name: &str) -> Option<DefuzzMethod> {
        match name.trim().to_ascii_lowercase().as_str() {
            "centre" | "center" | "cog" => Some(DefuzzMethod::Centre),
            "max-average" | "mom" => Some(DefuzzMethod::MaxAverage),
            "max-middle" => Some(DefuzzMethod::MaxMiddle),
            "bisector" => Some(DefuzzMethod::Bisector),
            "height" => Some(DefuzzMethod::Height),
            "max-height" => Some(DefuzzMethod::MaxHeight),
            "area" => Some(DefuzzMethod::Area),
            "greatest-area" => Some(DefuzzMethod::GreatestArea),
            _ => None,
        }
    }

    pub fn is_set_based(self) -> bool {
        matches!(
            self,
            DefuzzMethod::Centre | DefuzzMethod::MaxAverage | DefuzzMethod::MaxMiddle | DefuzzMethod::Bisector
        )
    }
}

const MAX_TIE: f64 = 1e-9;

/// Collapses a fuzzy set over a numeric universe to one crisp coordinate.
pub fn defuzzify(method: DefuzzMethod, c: &FuzzySet) -> Result<f64> {
    let coords = c.universe().coords()?;
    if c.is_all_zero() {
        return Err(FuzzyError::AllZeroSet);
    }
    let grades: Vec<f64> = c.grades().iter().map(|g| g.value()).collect();
    match method {
        DefuzzMethod::Centre => {
            let num: f64 = coords.iter().zip(&grades).map(|(w, g)| w * g).sum();
            let den: f64 = grades.iter().sum();
            Ok(num / den)
        }
        DefuzzMethod::MaxAverage => {
            let maxima = max_coords(&coords, &grades);
            Ok(maxima.iter().sum::<f64>() / maxima.len() as f64)
        }
        DefuzzMethod::MaxMiddle => {
            let maxima = max_coords(&coords, &grades);
            Ok((maxima[0] + maxima[maxima.len() - 1]) / 2.0)
        }
        DefuzzMethod::Bisector => Ok(bisector(&coords, &grades)),
        _ => Err(FuzzyError::Precondition(format!(
            "{} defuzzification needs rule firings, not a single set",
            method.name()
        ))),
    }
}

fn max_coords(coords: &[f64], grades: &[f64]) -> Vec<f64> {
    let top = grades.iter().cloned().fold(f64::MIN, f64::max);
    coords
        .iter()
        .zip(grades)
        .filter(|(_, &g)| (top - g) <= MAX_TIE)
        .map(|(&w, _)| w)
        .collect()
}

/// The coordinate splitting the grade mass into two equal halves.
///
/// Cumulative lumped mass is scanned left to right; if it lands exactly on
/// half at a grid point, the split lies between that point and the next, and
/// their midpoint is returned. Otherwise the crossing is interpolated within
/// the straddling point's mass.
fn bisector(coords: &[f64], grades: &[f64]) -> f64 {
    let total: f64 = grades.iter().sum();
    let half = total / 2.0;
    let mut cum = 0.0;
    for (i, &g) in grades.iter().enumerate() {
        let before = cum;
        cum += g;
        if cum < half {
            continue;
        }
        if (cum - half).abs() <= MAX_TIE * total.max(1.0) {
            return if i + 1 < coords.len() {
                (coords[i] + coords[i + 1]) / 2.0
            } else {
                coords[i]
            };
        }
        if i == 0 {
            return coords[0];
        }
        // interpolate inside the (coords[i-1], coords[i]] arrival of mass g
        let frac = (half - before) / g;
        return coords[i - 1] + frac * (coords[i] - coords[i - 1]);
    }
    coords[coords.len() - 1]
}

/// Defuzzification from per-rule firing data (height/area families).
pub fn defuzzify_firings(method: DefuzzMethod, firings: &[RuleFiring]) -> Result<f64> {
    if firings.is_empty() {
        return Err(FuzzyError::EmptyFirings);
    }
    match method {
        DefuzzMethod::Height => {
            let den: f64 = firings.iter().map(|f| f.strength.value()).sum();
            if den == 0.0 {
                return Err(FuzzyError::ZeroTotalWeight);
            }
            Ok(firings
                .iter()
                .map(|f| f.representative * f.strength.value())
                .sum::<f64>()
                / den)
        }
        DefuzzMethod::Area => {
            let den: f64 = firings.iter().map(|f| f.area).sum();
            if den == 0.0 {
                return Err(FuzzyError::ZeroTotalWeight);
            }
            Ok(firings.iter().map(|f| f.representative * f.area).sum::<f64>() / den)
        }
        // ties resolved by lowest rule index
        DefuzzMethod::MaxHeight => Ok(firings
            .iter()
            .reduce(|best, f| if f.strength.value() > best.strength.value() { f } else { best })
            .unwrap()
            .representative),
        DefuzzMethod::GreatestArea => Ok(firings
            .iter()
            .reduce(|best, f| if f.area > best.area { f } else { best })
            .unwrap()
            .representative),
        _ => Err(FuzzyError::Precondition(format!(
            "{} defuzzification acts on an aggregate set, not firings",
            method.name()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grade::Grade;
    use crate::universe::Universe;
    use std::sync::Arc;

    fn example_set() -> FuzzySet {
        let u = Universe::numeric("W", [-2.0, -1.0, 0.0, 1.0, 2.0, 3.0]).unwrap();
        FuzzySet::from_values(u, &[0.4, 0.8, 0.6, 0.8, 0.8, 0.2]).unwrap()
    }

    #[test]
    fn centre_reproduces_the_worked_value() {
        let w0 = defuzzify(DefuzzMethod::Centre, &example_set()).unwrap();
        assert!((w0 - 0.39).abs() <= 0.005, "got {w0}");
    }

    #[test]
    fn max_average_over_tied_maxima() {
        let w0 = defuzzify(DefuzzMethod::MaxAverage, &example_set()).unwrap();
        assert!((w0 - 0.67).abs() <= 0.005, "got {w0}");
    }

    #[test]
    fn max_middle_uses_the_extreme_maxima() {
        // w' = −1, w'' = 2 per the definition
        let w0 = defuzzify(DefuzzMethod::MaxMiddle, &example_set()).unwrap();
        assert_eq!(w0, 0.5);
    }

    #[test]
    fn bisector_splits_equal_masses_at_the_midpoint() {
        let w0 = defuzzify(DefuzzMethod::Bisector, &example_set()).unwrap();
        assert_eq!(w0, 0.5);
    }

    #[test]
    fn bisector_interpolates_otherwise() {
        let u = Universe::numeric("W", [0.0, 1.0, 2.0]).unwrap();
        let c = FuzzySet::from_values(u, &[0.2, 0.2, 0.6]).unwrap();
        // total 1.0, half 0.5; cumulative 0.2, 0.4, 1.0 → crossing inside
        // the third point's arrival: 1 + (0.5−0.4)/0.6 ≈ 1.1667
        let w0 = defuzzify(DefuzzMethod::Bisector, &c).unwrap();
        assert!((w0 - (1.0 + 0.1 / 0.6)).abs() < 1e-12);
    }

    #[test]
    fn set_methods_reject_bad_inputs() {
        let u = Universe::numeric("W", [0.0, 1.0]).unwrap();
        let zero = FuzzySet::empty(Arc::clone(&u));
        assert_eq!(defuzzify(DefuzzMethod::Centre, &zero).unwrap_err(), FuzzyError::AllZeroSet);
        let sym = Universe::labeled("S", ["a", "b"]).unwrap();
        let s = FuzzySet::from_values(sym, &[0.5, 0.5]).unwrap();
        assert!(matches!(
            defuzzify(DefuzzMethod::Centre, &s),
            Err(FuzzyError::NonNumericUniverse(_))
        ));
    }

    fn firing(w: f64, h: f64, s: f64) -> RuleFiring {
        let u = Universe::numeric("W", [0.0, 1.0]).unwrap();
        RuleFiring {
            strength: Grade::new(h).unwrap(),
            clipped_consequent: FuzzySet::empty(u),
            area: s,
            representative: w,
        }
    }

    #[test]
    fn height_method_weighted_mean() {
        let fs = vec![firing(1.0, 0.6, 1.0), firing(3.0, 0.3, 1.0)];
        let w0 = defuzzify_firings(DefuzzMethod::Height, &fs).unwrap();
        assert!((w0 - 1.5 / 0.9).abs() <= 1e-9);
        let single = vec![firing(2.5, 0.4, 1.0)];
        assert_eq!(defuzzify_firings(DefuzzMethod::Height, &single).unwrap(), 2.5);
    }

    #[test]
    fn argmax_methods_break_ties_by_lowest_index() {
        let fs = vec![firing(1.0, 0.6, 2.0), firing(3.0, 0.3, 2.0)];
        assert_eq!(defuzzify_firings(DefuzzMethod::MaxHeight, &fs).unwrap(), 1.0);
        assert_eq!(defuzzify_firings(DefuzzMethod::GreatestArea, &fs).unwrap(), 1.0);
        let fs = vec![firing(1.0, 0.2, 1.0), firing(3.0, 0.3, 4.0)];
        assert_eq!(defuzzify_firings(DefuzzMethod::MaxHeight, &fs).unwrap(), 3.0);
        assert_eq!(defuzzify_firings(DefuzzMethod::GreatestArea, &fs).unwrap(), 3.0);
    }

    #[test]
    fn firing_methods_reject_degenerate_inputs() {
        assert_eq!(
            defuzzify_firings(DefuzzMethod::Height, &[]).unwrap_err(),
            FuzzyError::EmptyFirings
        );
        let fs = vec![firing(1.0, 0.0, 0.0)];
        assert_eq!(
            defuzzify_firings(DefuzzMethod::Height, &fs).unwrap_err(),
            FuzzyError::ZeroTotalWeight
        );
        assert_eq!(
            defuzzify_firings(DefuzzMethod::Area, &fs).unwrap_err(),
            FuzzyError::ZeroTotalWeight
        );
    }
}
