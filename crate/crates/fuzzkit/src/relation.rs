use crate::error::{FuzzyError, Result};
use crate::grade::Grade;
use crate::set::{FuzzySet, SetOp};
use crate::universe::{check_same, Universe};
use std::fmt::Write as _;
use std::sync::Arc;

/// A fuzzy relation: a grade matrix over a pair of universes (row × column).
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyRelation {
    rows: Arc<Universe>,
    cols: Arc<Universe>,
    grades: Vec<Grade>, // row-major
}

impl FuzzyRelation {
    pub fn new(rows: Arc<Universe>, cols: Arc<Universe>, grades: Vec<Grade>) -> Result<FuzzyRelation> {
        if grades.len() != rows.len() * cols.len() {
            return Err(FuzzyError::GradeCountMismatch {
                universe: format!("{}×{}", rows.label(), cols.label()),
                points: rows.len() * cols.len(),
                grades: grades.len(),
            });
        }
        Ok(FuzzyRelation { rows, cols, grades })
    }

    pub fn from_rows(rows: Arc<Universe>, cols: Arc<Universe>, data: &[Vec<f64>]) -> Result<FuzzyRelation> {
        let mut grades = Vec::with_capacity(rows.len() * cols.len());
        for row in data {
            for &v in row {
                grades.push(Grade::new(v)?);
            }
        }
        FuzzyRelation::new(rows, cols, grades)
    }

    pub fn zero(rows: Arc<Universe>, cols: Arc<Universe>) -> FuzzyRelation {
        let n = rows.len() * cols.len();
        FuzzyRelation {
            rows,
            cols,
            grades: vec![Grade::ZERO; n],
        }
    }

    /// 1 on the diagonal, 0 off it (for a shared universe).
    pub fn identity(u: Arc<Universe>) -> FuzzyRelation {
        let n = u.len();
        let mut grades = vec![Grade::ZERO; n * n];
        for i in 0..n {
            grades[i * n + i] = Grade::ONE;
        }
        FuzzyRelation {
            rows: Arc::clone(&u),
            cols: u,
            grades,
        }
    }

    /// Builds a relation from a pointwise formula over coordinate grades.
    pub fn from_fn(
        rows: Arc<Universe>,
        cols: Arc<Universe>,
        f: impl Fn(usize, usize) -> Grade,
    ) -> FuzzyRelation {
        let mut grades = Vec::with_capacity(rows.len() * cols.len());
        for i in 0..rows.len() {
            for j in 0..cols.len() {
                grades.push(f(i, j));
            }
        }
        FuzzyRelation { rows, cols, grades }
    }

    pub fn row_universe(&self) -> &Arc<Universe> {
        &self.rows
    }

    pub fn col_universe(&self) -> &Arc<Universe> {
        &self.cols
    }

    pub fn grade(&self, i: usize, j: usize) -> Grade {
        self.grades[i * self.cols.len() + j]
    }

    pub fn row(&self, i: usize) -> &[Grade] {
        let w = self.cols.len();
        &self.grades[i * w..(i + 1) * w]
    }

    pub fn values(&self) -> Vec<Vec<f64>> {
        (0..self.rows.len())
            .map(|i| self.row(i).iter().map(|g| g.value()).collect())
            .collect()
    }

    /// Transpose.
    pub fn converse(&self) -> FuzzyRelation {
        FuzzyRelation::from_fn(Arc::clone(&self.cols), Arc::clone(&self.rows), |i, j| {
            self.grade(j, i)
        })
    }

    /// Row-wise maximum, a fuzzy set over the row universe.
    pub fn domain(&self) -> FuzzySet {
        let grades = (0..self.rows.len())
            .map(|i| self.row(i).iter().copied().fold(Grade::ZERO, Grade::or))
            .collect();
        FuzzySet::new(Arc::clone(&self.rows), grades).expect("row count matches")
    }

    /// CSV with point labels as headers and grades at six decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}\\{}", self.rows.label(), self.cols.label()));
        for p in self.cols.points() {
            out.push(',');
            out.push_str(&p.label);
        }
        out.push('\n');
        for (i, p) in self.rows.points().iter().enumerate() {
            out.push_str(&p.label);
            for g in self.row(i) {
                let _ = write!(out, ",{:.6}", g.value());
            }
            out.push('\n');
        }
        out
    }
}

/// Pointwise combination of two relations over the same universe pair.
pub fn combine_relations(op: SetOp, a: &FuzzyRelation, b: &FuzzyRelation) -> Result<FuzzyRelation> {
    check_same(&a.rows, &b.rows)?;
    check_same(&a.cols, &b.cols)?;
    let grades = a
        .grades
        .iter()
        .zip(&b.grades)
        .map(|(&x, &y)| op.apply(x, y))
        .collect();
    FuzzyRelation::new(Arc::clone(&a.rows), Arc::clone(&a.cols), grades)
}

/// The thirteen implication relation constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ImplicationKind {
    Rc,
    Rm,
    Ra,
    Rs,
    Rg,
    Rsg,
    Rgg,
    Rgs,
    Rss,
    Rsharp,
    Rdelta,
    Rsquare,
    Rstar,
}

impl ImplicationKind {
    pub const ALL: [ImplicationKind; 13] = [
        ImplicationKind::Rm,
        ImplicationKind::Ra,
        ImplicationKind::Rc,
        ImplicationKind::Rs,
        ImplicationKind::Rg,
        ImplicationKind::Rsg,
        ImplicationKind::Rgg,
        ImplicationKind::Rgs,
        ImplicationKind::Rss,
        ImplicationKind::Rsharp,
        ImplicationKind::Rdelta,
        ImplicationKind::Rsquare,
        ImplicationKind::Rstar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ImplicationKind::Rc => "R_c",
            ImplicationKind::Rm => "R_m",
            ImplicationKind::Ra => "R_a",
            ImplicationKind::Rs => "R_s",
            ImplicationKind::Rg => "R_g",
            ImplicationKind::Rsg => "R_sg",
            ImplicationKind::Rgg => "R_gg",
            ImplicationKind::Rgs => "R_gs",
            ImplicationKind::Rss => "R_ss",
            ImplicationKind::Rsharp => "R_#",
            ImplicationKind::Rdelta => "R_delta",
            ImplicationKind::Rsquare => "R_square",
            ImplicationKind::Rstar => "R_star",
        }
    }

    pub fn parse(name: &str) -> Option<ImplicationKind> {
        let k = name.trim().to_ascii_lowercase();
        let k = k.strip_prefix("r_").or_else(|| k.strip_prefix('r')).unwrap_or(&k);
        Some(match k {
            "c" => ImplicationKind::Rc,
            "m" => ImplicationKind::Rm,
            "a" => ImplicationKind::Ra,
            "s" => ImplicationKind::Rs,
            "g" => ImplicationKind::Rg,
            "sg" => ImplicationKind::Rsg,
            "gg" => ImplicationKind::Rgg,
            "gs" => ImplicationKind::Rgs,
            "ss" => ImplicationKind::Rss,
            "#" | "sharp" | "b" => ImplicationKind::Rsharp,
            "delta" => ImplicationKind::Rdelta,
            "square" | "box" => ImplicationKind::Rsquare,
            "star" | "*" => ImplicationKind::Rstar,
            _ => return None,
        })
    }
}

/// Reading of the R_* arrow, whose printed definition conflicts with the
/// surrounding equations; both appear in the source material.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StarVariant {
    /// min(x, y) — the displayed formula, the default.
    #[default]
    AsPrinted,
    /// max(0, x + y − 1).
    BoundedProduct,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ImplicationOptions {
    pub star_variant: StarVariant,
}

fn s_arrow(x: f64, y: f64) -> f64 {
    if x <= y {
        1.0
    } else {
        0.0
    }
}

fn g_arrow(x: f64, y: f64) -> f64 {
    if x <= y {
        1.0
    } else {
        y
    }
}

/// The scalar implication arrow for a kind, on membership grades.
pub fn arrow_with(kind: ImplicationKind, x: Grade, y: Grade, opts: ImplicationOptions) -> Grade {
    let (x, y) = (x.value(), y.value());
    let v = match kind {
        ImplicationKind::Rc => x.min(y),
        ImplicationKind::Rm => (x.min(y)).max(1.0 - x),
        ImplicationKind::Ra => (1.0 - x + y).min(1.0),
        ImplicationKind::Rs => s_arrow(x, y),
        ImplicationKind::Rg => g_arrow(x, y),
        ImplicationKind::Rsg => s_arrow(x, y).min(g_arrow(1.0 - x, 1.0 - y)),
        ImplicationKind::Rgg => g_arrow(x, y).min(g_arrow(1.0 - x, 1.0 - y)),
        ImplicationKind::Rgs => g_arrow(x, y).min(s_arrow(1.0 - x, 1.0 - y)),
        ImplicationKind::Rss => s_arrow(x, y).min(s_arrow(1.0 - x, 1.0 - y)),
        ImplicationKind::Rsharp => (1.0 - x).max(y),
        // x = 0 falls in the x ≤ y branch, so the quotient never divides by zero
        ImplicationKind::Rdelta => {
            if x <= y {
                1.0
            } else {
                y / x
            }
        }
        ImplicationKind::Rsquare => {
            if x != 1.0 || y == 1.0 {
                1.0
            } else {
                0.0
            }
        }
        ImplicationKind::Rstar => match opts.star_variant {
            StarVariant::AsPrinted => x.min(y),
            StarVariant::BoundedProduct => (x + y - 1.0).max(0.0),
        },
    };
    Grade::clamped(v)
}

pub fn arrow(kind: ImplicationKind, x: Grade, y: Grade) -> Grade {
    arrow_with(kind, x, y, ImplicationOptions::default())
}

/// R_c = A × B: grade(u, v) = min(μ_A(u), μ_B(v)).
pub fn cartesian_product(a: &FuzzySet, b: &FuzzySet) -> FuzzyRelation {
    FuzzyRelation::from_fn(
        Arc::clone(a.universe()),
        Arc::clone(b.universe()),
        |i, j| a.grade(i).and(b.grade(j)),
    )
}

/// Builds the implication relation of a kind from antecedent and consequent.
pub fn implication_relation(kind: ImplicationKind, a: &FuzzySet, b: &FuzzySet) -> FuzzyRelation {
    implication_relation_with(kind, a, b, ImplicationOptions::default())
}

pub fn implication_relation_with(
    kind: ImplicationKind,
    a: &FuzzySet,
    b: &FuzzySet,
    opts: ImplicationOptions,
) -> FuzzyRelation {
    FuzzyRelation::from_fn(
        Arc::clone(a.universe()),
        Arc::clone(b.universe()),
        |i, j| arrow_with(kind, a.grade(i), b.grade(j), opts),
    )
}

/// The seven IF-THEN-ELSE relation constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElseKind {
    RmPrime,
    RaPrime,
    RbPrime,
    RggPrime,
    RgsPrime,
    RsgPrime,
    RssPrime,
}

impl ElseKind {
    pub const ALL: [ElseKind; 7] = [
        ElseKind::RmPrime,
        ElseKind::RaPrime,
        ElseKind::RbPrime,
        ElseKind::RggPrime,
        ElseKind::RgsPrime,
        ElseKind::RsgPrime,
        ElseKind::RssPrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ElseKind::RmPrime => "R'_m",
            ElseKind::RaPrime => "R'_a",
            ElseKind::RbPrime => "R'_b",
            ElseKind::RggPrime => "R'_gg",
            ElseKind::RgsPrime => "R'_gs",
            ElseKind::RsgPrime => "R'_sg",
            ElseKind::RssPrime => "R'_ss",
        }
    }

    pub fn parse(name: &str) -> Option<ElseKind> {
        let k = name.trim().to_ascii_lowercase();
        let k = k
            .strip_prefix("r'_")
            .or_else(|| k.strip_prefix("r'"))
            .or_else(|| k.strip_prefix("r_"))
            .or_else(|| k.strip_prefix('r'))
            .unwrap_or(&k);
        Some(match k {
            "m" => ElseKind::RmPrime,
            "a" => ElseKind::RaPrime,
            "b" => ElseKind::RbPrime,
            "gg" => ElseKind::RggPrime,
            "gs" => ElseKind::RgsPrime,
            "sg" => ElseKind::RsgPrime,
            "ss" => ElseKind::RssPrime,
            _ => return None,
        })
    }
}

/// The scalar IF-THEN-ELSE formula on grades (x = μ_A(u), y = μ_B(v), z = μ_C(v)).
pub fn else_arrow(kind: ElseKind, x: Grade, y: Grade, z: Grade) -> Grade {
    let (x, y, z) = (x.value(), y.value(), z.value());
    let v = match kind {
        ElseKind::RmPrime => (x.min(y)).max((1.0 - x).min(z)),
        ElseKind::RaPrime => 1.0f64.min(1.0 - x + y).min(x + z),
        ElseKind::RbPrime => ((1.0 - x).max(y)).min(x.max(z)),
        ElseKind::RggPrime => g_arrow(x, y).min(g_arrow(1.0 - x, z)),
        ElseKind::RgsPrime => g_arrow(x, y).min(s_arrow(1.0 - x, z)),
        ElseKind::RsgPrime => s_arrow(x, y).min(g_arrow(1.0 - x, z)),
        ElseKind::RssPrime => s_arrow(x, y).min(s_arrow(1.0 - x, z)),
    };
    Grade::clamped(v)
}

/// Builds the IF-THEN-ELSE relation for "if A then B else C".
pub fn else_relation(kind: ElseKind, a: &FuzzySet, b: &FuzzySet, c: &FuzzySet) -> Result<FuzzyRelation> {
    check_same(b.universe(), c.universe())?;
    Ok(FuzzyRelation::from_fn(
        Arc::clone(a.universe()),
        Arc::clone(b.universe()),
        |i, j| else_arrow(kind, a.grade(i), b.grade(j), c.grade(j)),
    ))
}

/// Sup-t composition rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CompositionRule {
    #[default]
    MaxMin,
    /// max-⊙ with x ⊙ y = max(0, x + y − 1).
    MaxBoundedProduct,
    /// max-∧̇ with the drastic product.
    MaxDrastic,
}

impl CompositionRule {
    pub fn t_norm(self, x: Grade, y: Grade) -> Grade {
        match self {
            CompositionRule::MaxMin => x.and(y),
            CompositionRule::MaxBoundedProduct => x.bounded_product(y),
            CompositionRule::MaxDrastic => x.drastic_product(y),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CompositionRule::MaxMin => "max-min",
            CompositionRule::MaxBoundedProduct => "max-bounded-product",
            CompositionRule::MaxDrastic => "max-drastic",
        }
    }

    pub fn parse(name: &str) -> Option<CompositionRule> {
        match name.trim().to_ascii_lowercase().as_str() {
            "max-min" | "maxmin" | "min" => Some(CompositionRule::MaxMin),
            "max-bounded-product" | "bounded-product" | "bounded" => {
                Some(CompositionRule::MaxBoundedProduct)
            }
            "max-drastic" | "drastic" => Some(CompositionRule::MaxDrastic),
            _ => None,
        }
    }
}

/// B'(v) = max over u of t(μ_{A'}(u), R(u, v)).
pub fn compose(a: &FuzzySet, r: &FuzzyRelation, rule: CompositionRule) -> Result<FuzzySet> {
    check_same(a.universe(), &r.rows)?;
    let grades = (0..r.cols.len())
        .map(|j| {
            (0..r.rows.len())
                .map(|i| rule.t_norm(a.grade(i), r.grade(i, j)))
                .fold(Grade::ZERO, Grade::or)
        })
        .collect();
    FuzzySet::new(Arc::clone(&r.cols), grades)
}

/// A'(u) = max over v of t(R(u, v), μ_{B'}(v)).
pub fn compose_rel_set(r: &FuzzyRelation, b: &FuzzySet, rule: CompositionRule) -> Result<FuzzySet> {
    check_same(b.universe(), &r.cols)?;
    let grades = (0..r.rows.len())
        .map(|i| {
            (0..r.cols.len())
                .map(|j| rule.t_norm(r.grade(i, j), b.grade(j)))
                .fold(Grade::ZERO, Grade::or)
        })
        .collect();
    FuzzySet::new(Arc::clone(&r.rows), grades)
}

/// (R1 ∘ R2)(u, w) = max over v of t(R1(u, v), R2(v, w)).
pub fn compose_rel_rel(
    r1: &FuzzyRelation,
    r2: &FuzzyRelation,
    rule: CompositionRule,
) -> Result<FuzzyRelation> {
    check_same(&r1.cols, &r2.rows)?;
    let mid = r1.cols.len();
    Ok(FuzzyRelation::from_fn(
        Arc::clone(&r1.rows),
        Arc::clone(&r2.cols),
        |i, k| {
            (0..mid)
                .map(|j| rule.t_norm(r1.grade(i, j), r2.grade(j, k)))
                .fold(Grade::ZERO, Grade::or)
        },
    ))
}

/// Image of a set through a relation: compose(a, r, max-min).
pub fn image(r: &FuzzyRelation, a: &FuzzySet) -> Result<FuzzySet> {
    compose(a, r, CompositionRule::MaxMin)
}
