//! Class analysis and synthesis: converting between a fuzzy logic function's
//! membership in a value class [a_{j−1}, a_j) and inequality systems over its
//! variables.

use super::formula::{FFormula, Node};
use super::term::Literal;
use crate::error::{FuzzyError, Result};
use std::fmt;

/// Partition of [0, 1] into classes by boundaries 0 = a_0 < a_1 < … < a_n = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassPartition {
    boundaries: Vec<f64>,
}

impl ClassPartition {
    pub fn new(boundaries: Vec<f64>) -> Result<ClassPartition> {
        if boundaries.len() < 2
            || boundaries[0] != 0.0
            || *boundaries.last().unwrap() != 1.0
            || boundaries.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(FuzzyError::InvalidPartition);
        }
        Ok(ClassPartition { boundaries })
    }

    /// Evenly spaced partition into n classes.
    pub fn even(n: usize) -> Result<ClassPartition> {
        if n == 0 {
            return Err(FuzzyError::InvalidPartition);
        }
        ClassPartition::new((0..=n).map(|i| i as f64 / n as f64).collect())
    }

    pub fn classes(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn boundary(&self, i: usize) -> f64 {
        self.boundaries[i]
    }

    pub fn check_class(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.classes() {
            Err(FuzzyError::ClassIndexOutOfRange {
                index: j,
                classes: self.classes(),
            })
        } else {
            Ok(())
        }
    }
}

/// The symbolic bound of a constraint atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundExpr {
    /// a_{j−1}
    Lower,
    /// 1 − a_{j−1}
    OneMinusLower,
    /// a_j
    Upper,
    /// 1 − a_j
    OneMinusUpper,
    /// a concrete threshold t
    Literal(f64),
}

impl BoundExpr {
    pub fn value(self, partition: &ClassPartition, j: usize) -> f64 {
        match self {
            BoundExpr::Lower => partition.boundary(j - 1),
            BoundExpr::OneMinusLower => 1.0 - partition.boundary(j - 1),
            BoundExpr::Upper => partition.boundary(j),
            BoundExpr::OneMinusUpper => 1.0 - partition.boundary(j),
            BoundExpr::Literal(t) => t,
        }
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundExpr::Lower => write!(f, "a_{{j-1}}"),
            BoundExpr::OneMinusLower => write!(f, "1-a_{{j-1}}"),
            BoundExpr::Upper => write!(f, "a_j"),
            BoundExpr::OneMinusUpper => write!(f, "1-a_j"),
            BoundExpr::Literal(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Ge,
    Le,
    Gt,
    Lt,
}

impl Direction {
    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Ge => ">=",
            Direction::Le => "<=",
            Direction::Gt => ">",
            Direction::Lt => "<",
        }
    }
}

/// One inequality on one variable, e.g. `x2 <= 1-a_{j-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintAtom {
    pub var: usize,
    pub direction: Direction,
    pub bound: BoundExpr,
}

impl ConstraintAtom {
    pub fn new(var: usize, direction: Direction, bound: BoundExpr) -> ConstraintAtom {
        ConstraintAtom {
            var,
            direction,
            bound,
        }
    }
}

impl fmt::Display for ConstraintAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{} {} {}", self.var, self.direction.symbol(), self.bound)
    }
}

/// A conjunction of atoms (one brace system of the worked examples).
pub type System = Vec<ConstraintACell>;

/// One item of a system: a single atom, or an inner disjunction of atoms.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintACell {
    Atom(ConstraintAtom),
    AnyOf(Vec<ConstraintAtom>),
}

impl fmt::Display for ConstraintACell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintACell::Atom(a) => write!(f, "{a}"),
            ConstraintACell::AnyOf(atoms) => {
                write!(f, "(")?;
                for (i, a) in atoms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " or ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Result of analyzing F ∈ c_j: the lower-bound side (one system per term,
/// systems joined disjunctively) and, below the top class, the upper-bound
/// side (one system per term, systems conjoined).
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub lower: Vec<Vec<ConstraintAtom>>,
    pub upper: Option<Vec<Vec<ConstraintAtom>>>,
}

/// Extracts the terms of a formula already in addition normal form, keeping
/// the written order of terms and literals.
fn syntactic_terms(f: &FFormula) -> Result<Vec<Vec<Literal>>> {
    fn literal(node: &Node) -> Option<Literal> {
        match node {
            Node::Var(v) => Some(Literal::pos(*v)),
            Node::Not(inner) => match **inner {
                Node::Var(v) => Some(Literal::neg(v)),
                _ => None,
            },
            _ => None,
        }
    }
    fn product(node: &Node) -> Option<Vec<Literal>> {
        if let Some(l) = literal(node) {
            return Some(vec![l]);
        }
        if let Node::And(cs) = node {
            return cs.iter().map(literal).collect();
        }
        None
    }
    let terms = match f.node() {
        Node::Or(cs) => cs.iter().map(product).collect::<Option<Vec<_>>>(),
        other => product(other).map(|t| vec![t]),
    };
    terms.ok_or_else(|| {
        FuzzyError::Precondition("analysis needs an addition normal form over literals".into())
    })
}

/// The inequality systems equivalent to F(x) ∈ c_j.
///
/// Lower side: a positive literal becomes x ≥ a_{j−1}, a negative one
/// x ≤ 1 − a_{j−1}. Upper side (for j < n): a negative literal becomes
/// x > 1 − a_j, a positive one x < a_j.
pub fn analyze(f: &FFormula, partition: &ClassPartition, j: usize) -> Result<Analysis> {
    partition.check_class(j)?;
    let terms = syntactic_terms(f)?;
    let lower = terms
        .iter()
        .map(|term| {
            term.iter()
                .map(|l| {
                    if l.positive() {
                        ConstraintAtom::new(l.var, Direction::Ge, BoundExpr::Lower)
                    } else {
                        ConstraintAtom::new(l.var, Direction::Le, BoundExpr::OneMinusLower)
                    }
                })
                .collect()
        })
        .collect();
    let upper = if j < partition.classes() {
        Some(
            terms
                .iter()
                .map(|term| {
                    term.iter()
                        .map(|l| {
                            if l.positive() {
                                ConstraintAtom::new(l.var, Direction::Lt, BoundExpr::Upper)
                            } else {
                                ConstraintAtom::new(l.var, Direction::Gt, BoundExpr::OneMinusUpper)
                            }
                        })
                        .collect()
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(Analysis { lower, upper })
}

/// A symbolic weight ω = bound / denom attached to a synthesized literal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicWeight {
    /// a_{j−1} for non-strict atoms, a_j for strict ones.
    pub numerator: BoundExpr,
    /// t_i or 1 − t_i, with the concrete threshold value.
    pub one_minus_t: bool,
    pub t_index: usize,
    pub t_value: f64,
}

impl SymbolicWeight {
    pub fn value(&self, partition: &ClassPartition, j: usize) -> Result<f64> {
        let den = if self.one_minus_t {
            1.0 - self.t_value
        } else {
            self.t_value
        };
        if den == 0.0 {
            return Err(FuzzyError::InconsistentAtom(format!(
                "weight denominator {} is zero",
                self.denom_string()
            )));
        }
        Ok(self.numerator.value(partition, j) / den)
    }

    fn denom_string(&self) -> String {
        if self.one_minus_t {
            format!("(1-t{})", self.t_index)
        } else {
            format!("t{}", self.t_index)
        }
    }
}

impl fmt::Display for SymbolicWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denom_string())
    }
}

/// One literal of a synthesized formula, optionally weighted.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthLiteral {
    pub var: usize,
    pub positive: bool,
    pub weight: Option<SymbolicWeight>,
}

impl fmt::Display for SynthLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(w) = &self.weight {
            write!(f, "({w})")?;
        }
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "~x{}", self.var)
        }
    }
}

/// One factor of a synthesized product term.
#[derive(Debug, Clone, PartialEq)]
pub enum SynthFactor {
    Lit(SynthLiteral),
    /// An inner sum of literals, from a disjunctive constraint.
    Group(Vec<SynthLiteral>),
}

/// A synthesized sum of products.
#[derive(Debug, Clone, PartialEq)]
pub struct Synthesis {
    pub arity: usize,
    pub terms: Vec<Vec<SynthFactor>>,
}

impl Synthesis {
    pub fn is_weighted(&self) -> bool {
        self.terms.iter().flatten().any(|f| match f {
            SynthFactor::Lit(l) => l.weight.is_some(),
            SynthFactor::Group(ls) => ls.iter().any(|l| l.weight.is_some()),
        })
    }

    /// The plain formula, when no weights are involved.
    pub fn to_formula(&self) -> Option<FFormula> {
        fn lit_node(l: &SynthLiteral) -> Option<Node> {
            if l.weight.is_some() {
                return None;
            }
            Some(if l.positive {
                Node::Var(l.var)
            } else {
                Node::Not(Box::new(Node::Var(l.var)))
            })
        }
        let mut terms = Vec::new();
        for term in &self.terms {
            let mut factors = Vec::new();
            for factor in term {
                match factor {
                    SynthFactor::Lit(l) => factors.push(lit_node(l)?),
                    SynthFactor::Group(ls) => {
                        let parts: Option<Vec<Node>> = ls.iter().map(lit_node).collect();
                        factors.push(Node::Or(parts?));
                    }
                }
            }
            terms.push(if factors.len() == 1 {
                factors.pop().unwrap()
            } else {
                Node::And(factors)
            });
        }
        let node = if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Node::Or(terms)
        };
        FFormula::new(self.arity, node).ok()
    }
}

impl fmt::Display for Synthesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            for (k, factor) in term.iter().enumerate() {
                if k > 0 {
                    write!(f, "*")?;
                }
                match factor {
                    SynthFactor::Lit(l) => write!(f, "{l}")?,
                    SynthFactor::Group(ls) => {
                        write!(f, "(")?;
                        for (m, l) in ls.iter().enumerate() {
                            if m > 0 {
                                write!(f, " + ")?;
                            }
                            write!(f, "{l}")?;
                        }
                        write!(f, ")")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn synth_literal(atom: &ConstraintAtom, t_counter: &mut usize) -> Result<SynthLiteral> {
    let positive = matches!(atom.direction, Direction::Ge | Direction::Lt);
    let weight = match atom.bound {
        BoundExpr::Literal(t) => {
            *t_counter += 1;
            let one_minus_t = matches!(atom.direction, Direction::Le | Direction::Gt);
            let numerator = match atom.direction {
                Direction::Ge | Direction::Le => BoundExpr::Lower,
                Direction::Gt | Direction::Lt => BoundExpr::Upper,
            };
            let den = if one_minus_t { 1.0 - t } else { t };
            if den <= 0.0 {
                return Err(FuzzyError::InconsistentAtom(format!(
                    "atom {atom} puts {} in a weight denominator",
                    if one_minus_t { "1-t = 0" } else { "t = 0" }
                )));
            }
            Some(SymbolicWeight {
                numerator,
                one_minus_t,
                t_index: *t_counter,
                t_value: t,
            })
        }
        _ => None,
    };
    Ok(SynthLiteral {
        var: atom.var,
        positive,
        weight,
    })
}

/// The inverse of `analyze`: each conjunction of atoms becomes a product
/// term, with polarity from the inequality direction; concrete thresholds t
/// produce weighted literals with ω = a_{j−1}/t, a_{j−1}/(1−t), a_j/t or
/// a_j/(1−t) by direction.
pub fn synthesize(
    systems: &[System],
    partition: &ClassPartition,
    j: usize,
) -> Result<Synthesis> {
    partition.check_class(j)?;
    let mut t_counter = 0usize;
    let mut arity = 0usize;
    let mut terms = Vec::with_capacity(systems.len());
    for system in systems {
        let mut factors = Vec::with_capacity(system.len());
        for cell in system {
            match cell {
                ConstraintACell::Atom(atom) => {
                    arity = arity.max(atom.var);
                    factors.push(SynthFactor::Lit(synth_literal(atom, &mut t_counter)?));
                }
                ConstraintACell::AnyOf(atoms) => {
                    let ls = atoms
                        .iter()
                        .map(|a| {
                            arity = arity.max(a.var);
                            synth_literal(a, &mut t_counter)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    factors.push(SynthFactor::Group(ls));
                }
            }
        }
        terms.push(factors);
    }
    Ok(Synthesis { arity, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn atom(var: usize, d: Direction, b: BoundExpr) -> ConstraintAtom {
        ConstraintAtom::new(var, d, b)
    }

    #[test]
    fn analyze_two_term_function() {
        // F = x̄ȳ + xyz̄ for class c_j, j below the top
        let f = parse_formula("~x1*~x2 + x1*x2*~x3", Some(3)).unwrap();
        let p = ClassPartition::even(4).unwrap();
        let a = analyze(&f, &p, 2).unwrap();
        assert_eq!(
            a.lower,
            vec![
                vec![
                    atom(1, Direction::Le, BoundExpr::OneMinusLower),
                    atom(2, Direction::Le, BoundExpr::OneMinusLower),
                ],
                vec![
                    atom(1, Direction::Ge, BoundExpr::Lower),
                    atom(2, Direction::Ge, BoundExpr::Lower),
                    atom(3, Direction::Le, BoundExpr::OneMinusLower),
                ],
            ]
        );
        assert_eq!(
            a.upper.unwrap(),
            vec![
                vec![
                    atom(1, Direction::Gt, BoundExpr::OneMinusUpper),
                    atom(2, Direction::Gt, BoundExpr::OneMinusUpper),
                ],
                vec![
                    atom(1, Direction::Lt, BoundExpr::Upper),
                    atom(2, Direction::Lt, BoundExpr::Upper),
                    atom(3, Direction::Gt, BoundExpr::OneMinusUpper),
                ],
            ]
        );
    }

    #[test]
    fn top_class_has_no_upper_side() {
        let f = parse_formula("x1", Some(1)).unwrap();
        let p = ClassPartition::even(3).unwrap();
        let a = analyze(&f, &p, 3).unwrap();
        assert_eq!(a.lower, vec![vec![atom(1, Direction::Ge, BoundExpr::Lower)]]);
        assert!(a.upper.is_none());
    }

    #[test]
    fn synthesize_plain_systems() {
        // x ≥, y ≤ | x ≥, y ≥, z ≤ | x ≤, y ≤, z ≥  →  xȳ + xyz̄ + x̄ȳz
        let p = ClassPartition::even(3).unwrap();
        let systems: Vec<System> = vec![
            vec![
                ConstraintACell::Atom(atom(1, Direction::Ge, BoundExpr::Lower)),
                ConstraintACell::Atom(atom(2, Direction::Le, BoundExpr::OneMinusLower)),
            ],
            vec![
                ConstraintACell::Atom(atom(1, Direction::Ge, BoundExpr::Lower)),
                ConstraintACell::Atom(atom(2, Direction::Ge, BoundExpr::Lower)),
                ConstraintACell::Atom(atom(3, Direction::Le, BoundExpr::OneMinusLower)),
            ],
            vec![
                ConstraintACell::Atom(atom(1, Direction::Le, BoundExpr::OneMinusLower)),
                ConstraintACell::Atom(atom(2, Direction::Le, BoundExpr::OneMinusLower)),
                ConstraintACell::Atom(atom(3, Direction::Ge, BoundExpr::Lower)),
            ],
        ];
        let s = synthesize(&systems, &p, 3).unwrap();
        assert!(!s.is_weighted());
        let expected = parse_formula("x1*~x2 + x1*x2*~x3 + ~x1*~x2*x3", Some(3)).unwrap();
        assert_eq!(s.to_formula().unwrap(), expected);
    }

    #[test]
    fn synthesize_with_inner_disjunction() {
        // {x ≥, y ≥, (x ≤ 1− or z ≥)} or {x ≥, z ≤ 1−} → xy(x̄ + z) + xz̄
        let p = ClassPartition::even(3).unwrap();
        let systems: Vec<System> = vec![
            vec![
                ConstraintACell::Atom(atom(1, Direction::Ge, BoundExpr::Lower)),
                ConstraintACell::Atom(atom(2, Direction::Ge, BoundExpr::Lower)),
                ConstraintACell::AnyOf(vec![
                    atom(1, Direction::Le, BoundExpr::OneMinusLower),
                    atom(3, Direction::Ge, BoundExpr::Lower),
                ]),
            ],
            vec![
                ConstraintACell::Atom(atom(1, Direction::Ge, BoundExpr::Lower)),
                ConstraintACell::Atom(atom(3, Direction::Le, BoundExpr::OneMinusLower)),
            ],
        ];
        let s = synthesize(&systems, &p, 3).unwrap();
        let expected = parse_formula("x1*x2*(~x1 + x3) + x1*~x3", Some(3)).unwrap();
        assert_eq!(s.to_formula().unwrap(), expected);
        assert_eq!(s.to_string(), "x1*x2*(~x1 + x3) + x1*~x3");
    }

    #[test]
    fn synthesize_weighted_thresholds() {
        let p = ClassPartition::even(4).unwrap();
        let systems: Vec<System> = vec![vec![
            ConstraintACell::Atom(atom(1, Direction::Le, BoundExpr::Literal(0.4))),
            ConstraintACell::Atom(atom(2, Direction::Ge, BoundExpr::Literal(0.8))),
        ]];
        let s = synthesize(&systems, &p, 2).unwrap();
        assert!(s.is_weighted());
        assert!(s.to_formula().is_none());
        let lits: Vec<&SynthLiteral> = s.terms[0]
            .iter()
            .map(|f| match f {
                SynthFactor::Lit(l) => l,
                _ => panic!(),
            })
            .collect();
        let w1 = lits[0].weight.as_ref().unwrap();
        assert_eq!(w1.to_string(), "a_{j-1}/(1-t1)");
        assert!(!lits[0].positive);
        assert!((w1.value(&p, 2).unwrap() - 0.25 / 0.6).abs() < 1e-12);
        let w2 = lits[1].weight.as_ref().unwrap();
        assert_eq!(w2.to_string(), "a_{j-1}/t2");
        assert!(lits[1].positive);
    }

    #[test]
    fn degenerate_threshold_is_rejected() {
        let p = ClassPartition::even(2).unwrap();
        let systems: Vec<System> = vec![vec![ConstraintACell::Atom(atom(
            1,
            Direction::Ge,
            BoundExpr::Literal(0.0),
        ))]];
        assert!(matches!(
            synthesize(&systems, &p, 1),
            Err(FuzzyError::InconsistentAtom(_))
        ));
    }

    #[test]
    fn partition_validation() {
        assert!(ClassPartition::new(vec![0.0, 0.5, 1.0]).is_ok());
        assert!(ClassPartition::new(vec![0.1, 0.5, 1.0]).is_err());
        assert!(ClassPartition::new(vec![0.0, 0.5, 0.5, 1.0]).is_err());
        let p = ClassPartition::even(3).unwrap();
        assert!(p.check_class(0).is_err());
        assert!(p.check_class(4).is_err());
    }
}
