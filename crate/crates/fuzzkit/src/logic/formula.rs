use crate::error::{FuzzyError, Result};
use crate::grade::Grade;

/// One node of a fuzzy logical expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    /// 1-based variable index.
    Var(usize),
    Const(Grade),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    /// Łukasiewicz implication min(1, 1 − a + b).
    Implies(Box<Node>, Box<Node>),
}

/// A fuzzy logical expression with an explicit arity.
#[derive(Debug, Clone, PartialEq)]
pub struct FFormula {
    arity: usize,
    node: Node,
}

impl FFormula {
    pub fn new(arity: usize, node: Node) -> Result<FFormula> {
        check_vars(&node, arity)?;
        Ok(FFormula { arity, node })
    }

    pub fn var(arity: usize, index: usize) -> Result<FFormula> {
        FFormula::new(arity, Node::Var(index))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn contains_implies(&self) -> bool {
        fn walk(n: &Node) -> bool {
            match n {
                Node::Implies(..) => true,
                Node::Not(c) => walk(c),
                Node::And(cs) | Node::Or(cs) => cs.iter().any(walk),
                _ => false,
            }
        }
        walk(&self.node)
    }

    /// Evaluates at an assignment (one grade per variable).
    pub fn eval(&self, assignment: &[Grade]) -> Result<Grade> {
        if assignment.len() != self.arity {
            return Err(FuzzyError::ArityMismatch {
                arity: self.arity,
                got: assignment.len(),
            });
        }
        Ok(eval_node(&self.node, assignment))
    }

    pub fn eval_values(&self, values: &[f64]) -> Result<Grade> {
        let assignment = values
            .iter()
            .map(|&v| Grade::new(v))
            .collect::<Result<Vec<_>>>()?;
        self.eval(&assignment)
    }
}

fn check_vars(node: &Node, arity: usize) -> Result<()> {
    match node {
        Node::Var(i) => {
            if *i == 0 || *i > arity {
                Err(FuzzyError::VariableOutOfRange { arity, index: *i })
            } else {
                Ok(())
            }
        }
        Node::Const(_) => Ok(()),
        Node::Not(c) => check_vars(c, arity),
        Node::And(cs) | Node::Or(cs) => cs.iter().try_for_each(|c| check_vars(c, arity)),
        Node::Implies(a, b) => {
            check_vars(a, arity)?;
            check_vars(b, arity)
        }
    }
}

fn eval_node(node: &Node, a: &[Grade]) -> Grade {
    match node {
        Node::Var(i) => a[*i - 1],
        Node::Const(g) => *g,
        Node::Not(c) => eval_node(c, a).not(),
        Node::And(cs) => cs
            .iter()
            .map(|c| eval_node(c, a))
            .fold(Grade::ONE, Grade::and),
        Node::Or(cs) => cs
            .iter()
            .map(|c| eval_node(c, a))
            .fold(Grade::ZERO, Grade::or),
        Node::Implies(p, q) => {
            let (p, q) = (eval_node(p, a).value(), eval_node(q, a).value());
            Grade::clamped((1.0 - p + q).min(1.0))
        }
    }
}

/// Binary-logic classification of a ∨/∧/¬ formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Truth value ≥ ½ for every assignment.
    FuzzyAlwaysTrue,
    /// Truth value < ½ wherever no variable sits exactly at ½.
    FuzzyContradiction,
    Neither,
}

/// Classifies by exhaustive evaluation over {0,1}^n: a binary tautology is
/// fuzzy always true, a binary contradiction is a fuzzy contradiction.
pub fn classify(f: &FFormula) -> Result<Classification> {
    if f.contains_implies() {
        return Err(FuzzyError::UnsupportedNode(
            "classification covers ∨/∧/¬ formulas only".into(),
        ));
    }
    if let Some(bad) = find_fractional_const(&f.node) {
        return Err(FuzzyError::UnsupportedNode(format!(
            "classification needs 0/1 constants, found {bad}"
        )));
    }
    let n = f.arity();
    let mut always_true = true;
    let mut always_false = true;
    for mask in 0u64..(1u64 << n) {
        let assignment: Vec<Grade> = (0..n)
            .map(|i| if mask >> i & 1 == 1 { Grade::ONE } else { Grade::ZERO })
            .collect();
        let v = f.eval(&assignment)?.value();
        if v < 0.5 {
            always_true = false;
        } else {
            always_false = false;
        }
    }
    Ok(if always_true {
        Classification::FuzzyAlwaysTrue
    } else if always_false {
        Classification::FuzzyContradiction
    } else {
        Classification::Neither
    })
}

fn find_fractional_const(node: &Node) -> Option<f64> {
    match node {
        Node::Const(g) if g.value() != 0.0 && g.value() != 1.0 => Some(g.value()),
        Node::Not(c) => find_fractional_const(c),
        Node::And(cs) | Node::Or(cs) => cs.iter().find_map(find_fractional_const),
        Node::Implies(a, b) => find_fractional_const(a).or_else(|| find_fractional_const(b)),
        _ => None,
    }
}

/// Given x ≥ y componentwise, reports whether F(x) ≥ F(y).
pub fn monotone_check(f: &FFormula, x: &[Grade], y: &[Grade]) -> Result<bool> {
    if x.len() != f.arity() || y.len() != f.arity() {
        return Err(FuzzyError::ArityMismatch {
            arity: f.arity(),
            got: x.len().max(y.len()),
        });
    }
    if x.iter().zip(y).any(|(a, b)| a.value() < b.value()) {
        return Err(FuzzyError::Precondition(
            "monotone_check requires x ≥ y componentwise".into(),
        ));
    }
    Ok(f.eval(x)?.value() >= f.eval(y)?.value())
}
