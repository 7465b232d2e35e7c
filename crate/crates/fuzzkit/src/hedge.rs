use crate::error::{FuzzyError, Result};
use crate::grade::Grade;
use crate::set::{intersection, union, FuzzySet};
use crate::universe::{check_same, Universe};
use std::collections::HashMap;
use std::sync::Arc;

/// Linguistic hedge operators on fuzzy sets.
///
/// `very` squares, `more or less` takes the square root, `plus`/`minus` act
/// more slowly (exponents 1.25 / 0.75), `highly` is minus-very-very (cube).
/// `Con`/`Dil`/`Int`/`Norm` are concentration, dilation, contrast
/// intensification and standardization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HedgeKind {
    Very,
    Plus,
    Minus,
    Highly,
    MoreOrLess,
    SortOf,
    Rather,
    Con,
    Dil,
    Int,
    Norm,
    Power(f64),
    Scalar(f64),
}

/// Selects the alternate printed definition for the two hedges that have one.
#[derive(Debug, Clone, Copy, Default)]
pub struct HedgeOptions {
    /// sort of X = NORM(¬CON(X²) ∩ DIL(X)) instead of the default
    /// NORM(INT(DIL(X)) ∩ INT(DIL(¬X))).
    pub sort_of_alt: bool,
    /// rather X = NORM(INT(CON(X)) ∩ ¬CON(X)) instead of the default
    /// NORM(INT(X)).
    pub rather_alt: bool,
}

/// Contrast intensification: 2x² below ½, 1 − 2(1−x)² above.
pub fn intensify(g: Grade) -> Grade {
    let x = g.value();
    if x <= 0.5 {
        Grade::clamped(2.0 * x * x)
    } else {
        Grade::clamped(1.0 - 2.0 * (1.0 - x) * (1.0 - x))
    }
}

/// NORM(A) = A / μ̄_A; errors on the all-zero set.
pub fn normalize(a: &FuzzySet) -> Result<FuzzySet> {
    let h = a.height().value();
    if h == 0.0 {
        return Err(FuzzyError::NormalizeZeroSet);
    }
    a.scale(1.0 / h)
}

pub fn apply_hedge(kind: HedgeKind, a: &FuzzySet) -> Result<FuzzySet> {
    apply_hedge_with(kind, a, HedgeOptions::default())
}

pub fn apply_hedge_with(kind: HedgeKind, a: &FuzzySet, opts: HedgeOptions) -> Result<FuzzySet> {
    match kind {
        HedgeKind::Very | HedgeKind::Con => Ok(a.power(2.0)),
        HedgeKind::Plus => Ok(a.power(1.25)),
        HedgeKind::Minus => Ok(a.power(0.75)),
        HedgeKind::Highly => Ok(a.power(3.0)), // minus very very
        HedgeKind::MoreOrLess | HedgeKind::Dil => Ok(a.power(0.5)),
        HedgeKind::Int => Ok(a_int(a)),
        HedgeKind::Norm => normalize(a),
        HedgeKind::Power(alpha) => {
            if alpha <= 0.0 {
                return Err(FuzzyError::Precondition(format!(
                    "power hedge exponent must be positive, got {alpha}"
                )));
            }
            Ok(a.power(alpha))
        }
        HedgeKind::Scalar(factor) => a.scale(factor),
        HedgeKind::SortOf => {
            if opts.sort_of_alt {
                // NORM(¬CON(X²) ∩ DIL(X))
                let lhs = a.power(2.0).power(2.0).complement();
                normalize(&intersection(&lhs, &a.power(0.5))?)
            } else {
                // NORM(INT(DIL(X)) ∩ INT(DIL(¬X)))
                let lhs = a_int(&a.power(0.5));
                let rhs = a_int(&a.complement().power(0.5));
                normalize(&intersection(&lhs, &rhs)?)
            }
        }
        HedgeKind::Rather => {
            if opts.rather_alt {
                // NORM(INT(CON(X)) ∩ ¬CON(X))
                let lhs = a_int(&a.power(2.0));
                normalize(&intersection(&lhs, &a.power(2.0).complement())?)
            } else {
                normalize(&a_int(a))
            }
        }
    }
}

fn a_int(a: &FuzzySet) -> FuzzySet {
    FuzzySet::new(
        Arc::clone(a.universe()),
        a.grades().iter().map(|&g| intensify(g)).collect(),
    )
    .expect("same universe")
}

/// A fuzzification kernel: for universe points, a fuzzy set approximately
/// equivalent to that point.
#[derive(Debug, Clone)]
pub struct Kernel {
    universe: Arc<Universe>,
    images: HashMap<usize, FuzzySet>,
}

impl Kernel {
    pub fn new(universe: Arc<Universe>) -> Kernel {
        Kernel {
            universe,
            images: HashMap::new(),
        }
    }

    /// The identity kernel K(y) = 1/y.
    pub fn identity(universe: Arc<Universe>) -> Kernel {
        let mut k = Kernel::new(Arc::clone(&universe));
        for p in universe.points() {
            let label = p.label.clone();
            let image = FuzzySet::singleton(Arc::clone(&universe), &label).unwrap();
            k.set_image(&label, image).unwrap();
        }
        k
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn set_image(&mut self, point_label: &str, image: FuzzySet) -> Result<()> {
        check_same(&self.universe, image.universe())?;
        let idx = self
            .universe
            .index_of(point_label)
            .ok_or_else(|| FuzzyError::UnboundName(point_label.to_string()))?;
        self.images.insert(idx, image);
        Ok(())
    }

    pub fn image(&self, idx: usize) -> Option<&FuzzySet> {
        self.images.get(&idx)
    }
}

/// Fuzzification F(A:K): the union over support points of μ_A(y_i)·K(y_i),
/// where the sum of the scaled image sets is taken pointwise as max.
pub fn fuzzify(a: &FuzzySet, kernel: &Kernel) -> Result<FuzzySet> {
    check_same(a.universe(), kernel.universe())?;
    let mut out = FuzzySet::empty(Arc::clone(a.universe()));
    for (idx, &g) in a.grades().iter().enumerate() {
        if g.value() == 0.0 {
            continue;
        }
        let image = kernel.image(idx).ok_or_else(|| {
            FuzzyError::KernelMissingImage(a.universe().points()[idx].label.clone())
        })?;
        out = union(&out, &image.scale(g.value())?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &FuzzySet, expect: &[f64], tol: f64) {
        let got = a.values();
        assert_eq!(got.len(), expect.len());
        for (g, e) in got.iter().zip(expect) {
            assert!((g - e).abs() <= tol, "got {got:?}, expected {expect:?}");
        }
    }

    #[test]
    fn square_root_and_scalar_of_a_set() {
        // A = 0.64/1 + 0.25/2 + 0.81/3
        let u = Universe::numeric("Y", [1.0, 2.0, 3.0]).unwrap();
        let a = FuzzySet::from_values(u, &[0.64, 0.25, 0.81]).unwrap();
        close(&apply_hedge(HedgeKind::Power(2.0), &a).unwrap(), &[0.41, 0.06, 0.66], 0.005);
        close(&apply_hedge(HedgeKind::Power(0.5), &a).unwrap(), &[0.8, 0.5, 0.9], 0.005);
        close(&a.scale(0.5).unwrap(), &[0.32, 0.125, 0.41], 0.0051);
    }

    #[test]
    fn con_dil_int_profile() {
        let u = Universe::numeric("Y", [1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let a = FuzzySet::from_values(u, &[1.0, 0.8, 0.6, 0.4, 0.2]).unwrap();
        close(&apply_hedge(HedgeKind::Con, &a).unwrap(), &[1.0, 0.64, 0.36, 0.16, 0.04], 1e-12);
        close(&apply_hedge(HedgeKind::Dil, &a).unwrap(), &[1.0, 0.89, 0.77, 0.63, 0.45], 0.005);
        close(&apply_hedge(HedgeKind::Int, &a).unwrap(), &[1.0, 0.92, 0.68, 0.32, 0.08], 1e-12);
    }

    #[test]
    fn norm_rescales_to_standard() {
        let u = Universe::labeled("Y", ["y1", "y2", "y3", "y4"]).unwrap();
        let a = FuzzySet::from_values(u, &[0.8, 0.4, 0.6, 0.2]).unwrap();
        let n = apply_hedge(HedgeKind::Norm, &a).unwrap();
        close(&n, &[1.0, 0.5, 0.75, 0.25], 1e-12);
        assert_eq!(n.height(), Grade::ONE);
    }

    #[test]
    fn norm_of_zero_set_errors() {
        let u = Universe::labeled("Y", ["y1"]).unwrap();
        let z = FuzzySet::empty(u);
        assert_eq!(apply_hedge(HedgeKind::Norm, &z).unwrap_err(), FuzzyError::NormalizeZeroSet);
    }

    #[test]
    fn fuzzify_merges_scaled_kernels_by_max() {
        let u = Universe::numeric("Y", [1.0, 2.0, 3.0, 4.0]).unwrap();
        let a = FuzzySet::from_values(Arc::clone(&u), &[0.8, 0.6, 0.0, 0.0]).unwrap();
        let mut k = Kernel::new(Arc::clone(&u));
        k.set_image("1", FuzzySet::from_values(Arc::clone(&u), &[1.0, 0.4, 0.0, 0.0]).unwrap())
            .unwrap();
        k.set_image("2", FuzzySet::from_values(Arc::clone(&u), &[0.4, 1.0, 0.4, 0.0]).unwrap())
            .unwrap();
        let f = fuzzify(&a, &k).unwrap();
        close(&f, &[0.8, 0.6, 0.24, 0.0], 1e-12);
    }

    #[test]
    fn identity_kernel_is_identity() {
        let u = Universe::numeric("Y", [1.0, 2.0, 3.0]).unwrap();
        let a = FuzzySet::from_values(Arc::clone(&u), &[0.3, 0.9, 0.1]).unwrap();
        let f = fuzzify(&a, &Kernel::identity(u)).unwrap();
        assert_eq!(f, a);
    }

    #[test]
    fn more_or_less_recent_via_kernel() {
        // recent = 1/2003 + 0.9/2002 + 0.7/2001 + 0.5/2000, with the four
        // listed kernel rows; note K(2000) maps to 2001 and 1999.
        let u = Universe::numeric("year", [1999.0, 2000.0, 2001.0, 2002.0, 2003.0]).unwrap();
        let recent = FuzzySet::from_values(Arc::clone(&u), &[0.0, 0.5, 0.7, 0.9, 1.0]).unwrap();
        let mut k = Kernel::new(Arc::clone(&u));
        let row = |vals: &[f64]| FuzzySet::from_values(Arc::clone(&u), vals).unwrap();
        k.set_image("2003", row(&[0.0, 0.0, 0.0, 0.9, 1.0])).unwrap();
        k.set_image("2002", row(&[0.0, 0.0, 0.8, 1.0, 0.0])).unwrap();
        k.set_image("2001", row(&[0.0, 0.8, 1.0, 0.0, 0.0])).unwrap();
        k.set_image("2000", row(&[0.8, 0.0, 1.0, 0.0, 0.0])).unwrap();
        let f = fuzzify(&recent, &k).unwrap();
        close(&f, &[0.4, 0.56, 0.72, 0.9, 1.0], 0.005);
    }

    #[test]
    fn fuzzify_requires_kernel_on_support() {
        let u = Universe::numeric("Y", [1.0, 2.0]).unwrap();
        let a = FuzzySet::from_values(Arc::clone(&u), &[0.5, 0.0]).unwrap();
        let k = Kernel::new(u);
        assert!(matches!(fuzzify(&a, &k), Err(FuzzyError::KernelMissingImage(_))));
    }

    #[test]
    fn hedge_exponent_chain() {
        let u = Universe::numeric("Y", [1.0]).unwrap();
        let a = FuzzySet::from_values(u, &[0.5]).unwrap();
        let very = apply_hedge(HedgeKind::Very, &a).unwrap();
        assert!((very.values()[0] - 0.25).abs() < 1e-12);
        let highly = apply_hedge(HedgeKind::Highly, &a).unwrap();
        assert!((highly.values()[0] - 0.125).abs() < 1e-12);
        let plus = apply_hedge(HedgeKind::Plus, &a).unwrap();
        assert!((plus.values()[0] - 0.5f64.powf(1.25)).abs() < 1e-12);
    }
}
