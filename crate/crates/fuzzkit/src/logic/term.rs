use super::formula::{FFormula, Node};
use crate::error::{FuzzyError, Result};
use crate::grade::Grade;
use std::collections::BTreeSet;
use std::fmt;

/// One literal of a product term: a variable with a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    // ordered positive-first within a variable
    negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Literal {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Literal {
        Literal { var, negated: true }
    }

    pub fn positive(self) -> bool {
        !self.negated
    }

    pub fn eval(self, assignment: &[Grade]) -> Grade {
        let g = assignment[self.var - 1];
        if self.negated {
            g.not()
        } else {
            g
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "~x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

/// A product term: a set of literals. Both polarities of one variable may
/// coexist (a complement term). The empty term is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Term {
    literals: BTreeSet<Literal>,
}

impl Term {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Term {
        Term {
            literals: literals.into_iter().collect(),
        }
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.literals.iter().copied()
    }

    pub fn literal_count(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.contains(&lit)
    }

    pub fn with(&self, lit: Literal) -> Term {
        let mut t = self.clone();
        t.literals.insert(lit);
        t
    }

    pub fn without(&self, lit: Literal) -> Term {
        let mut t = self.clone();
        t.literals.remove(&lit);
        t
    }

    pub fn merged(&self, other: &Term) -> Term {
        Term {
            literals: self.literals.union(&other.literals).copied().collect(),
        }
    }

    /// A complement term carries both polarities of some variable.
    pub fn is_complement(&self) -> bool {
        self.literals
            .iter()
            .any(|l| l.negated && self.literals.contains(&Literal::pos(l.var)))
    }

    pub fn is_single(&self) -> bool {
        !self.is_complement()
    }

    /// A complement minimum term mentions every variable of the arity.
    pub fn is_complement_minimum(&self, arity: usize) -> bool {
        self.is_complement() && (1..=arity).all(|v| self.mentions(v))
    }

    pub fn mentions(&self, var: usize) -> bool {
        self.literals.contains(&Literal::pos(var)) || self.literals.contains(&Literal::neg(var))
    }

    /// Pointwise domination: every literal of `self` appears in `other`, so
    /// self ≥ other at every assignment and `other` can be absorbed.
    pub fn dominates(&self, other: &Term) -> bool {
        self.literals.is_subset(&other.literals)
    }

    pub fn eval(&self, assignment: &[Grade]) -> Grade {
        self.literals
            .iter()
            .map(|l| l.eval(assignment))
            .fold(Grade::ONE, Grade::and)
    }

    pub fn max_var(&self) -> usize {
        self.literals.iter().map(|l| l.var).max().unwrap_or(0)
    }

    pub fn to_node(&self) -> Node {
        let parts: Vec<Node> = self
            .literals
            .iter()
            .map(|l| {
                if l.negated {
                    Node::Not(Box::new(Node::Var(l.var)))
                } else {
                    Node::Var(l.var)
                }
            })
            .collect();
        match parts.len() {
            0 => Node::Const(Grade::ONE),
            1 => parts.into_iter().next().unwrap(),
            _ => Node::And(parts),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for l in &self.literals {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// An addition normal form: a set of product terms, max of mins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub arity: usize,
    pub terms: BTreeSet<Term>,
}

impl NormalForm {
    pub fn new(arity: usize, terms: impl IntoIterator<Item = Term>) -> NormalForm {
        NormalForm {
            arity,
            terms: terms.into_iter().collect(),
        }
    }

    pub fn eval(&self, assignment: &[Grade]) -> Grade {
        self.terms
            .iter()
            .map(|t| t.eval(assignment))
            .fold(Grade::ZERO, Grade::or)
    }

    pub fn total_literals(&self) -> usize {
        self.terms.iter().map(Term::literal_count).sum()
    }

    pub fn to_formula(&self) -> FFormula {
        let parts: Vec<Node> = self.terms.iter().map(Term::to_node).collect();
        let node = match parts.len() {
            0 => Node::Const(Grade::ZERO),
            1 => parts.into_iter().next().unwrap(),
            _ => Node::Or(parts),
        };
        FFormula::new(self.arity, node).expect("terms respect arity")
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for t in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
            first = false;
        }
        Ok(())
    }
}

/// Removes every term dominated by another (its literal set a proper
/// superset of another term's), and deduplicates.
pub fn absorb(terms: &BTreeSet<Term>) -> BTreeSet<Term> {
    terms
        .iter()
        .filter(|t| {
            !terms
                .iter()
                .any(|other| other != *t && other.dominates(t))
        })
        .cloned()
        .collect()
}

/// Distributes a ∨/∧/¬ formula into a sum of products with negation pushed
/// to the literals, then absorbs.
pub fn to_normal_form(f: &FFormula) -> Result<NormalForm> {
    if f.contains_implies() {
        return Err(FuzzyError::UnsupportedNode(
            "normal forms cover ∨/∧/¬ formulas only".into(),
        ));
    }
    let terms = distribute(f.node(), false)?;
    Ok(NormalForm {
        arity: f.arity(),
        terms: absorb(&terms.into_iter().collect()),
    })
}

fn distribute(node: &Node, negated: bool) -> Result<Vec<Term>> {
    match node {
        Node::Var(v) => Ok(vec![Term::new([if negated {
            Literal::neg(*v)
        } else {
            Literal::pos(*v)
        }])]),
        Node::Const(g) => {
            let v = if negated { 1.0 - g.value() } else { g.value() };
            if v == 1.0 {
                Ok(vec![Term::default()])
            } else if v == 0.0 {
                Ok(vec![])
            } else {
                Err(FuzzyError::UnsupportedNode(format!(
                    "fractional constant {v} has no term representation"
                )))
            }
        }
        Node::Not(c) => distribute(c, !negated),
        Node::Or(cs) if !negated => Ok(cs
            .iter()
            .map(|c| distribute(c, false))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect()),
        Node::And(cs) if negated => Ok(cs
            .iter()
            .map(|c| distribute(c, true))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect()),
        Node::And(cs) | Node::Or(cs) => {
            // conjunction after De Morgan: cross-product of the child sums
            let mut acc = vec![Term::default()];
            for c in cs {
                let child = distribute(c, negated)?;
                let mut next = Vec::with_capacity(acc.len() * child.len());
                for t in &acc {
                    for u in &child {
                        next.push(t.merged(u));
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
        Node::Implies(..) => Err(FuzzyError::UnsupportedNode(
            "normal forms cover ∨/∧/¬ formulas only".into(),
        )),
    }
}

/// Expands every complement term of the form into complement minimum terms
/// (multiplying by x_j + x̄_j for each missing variable), then absorbs.
pub fn expand_main(nf: &NormalForm) -> NormalForm {
    let mut out: BTreeSet<Term> = BTreeSet::new();
    for term in &nf.terms {
        if term.is_single() {
            out.insert(term.clone());
            continue;
        }
        let mut partial = vec![term.clone()];
        for v in 1..=nf.arity {
            if term.mentions(v) {
                continue;
            }
            partial = partial
                .into_iter()
                .flat_map(|t| [t.with(Literal::pos(v)), t.with(Literal::neg(v))])
                .collect();
        }
        out.extend(partial);
    }
    NormalForm {
        arity: nf.arity,
        terms: absorb(&out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn nf(src: &str, arity: usize) -> NormalForm {
        to_normal_form(&parse_formula(src, Some(arity)).unwrap()).unwrap()
    }

    #[test]
    fn distribution() {
        let f = nf("(x1 + x2)*x3", 3);
        assert_eq!(f.to_string(), "x1*x3 + x2*x3");
    }

    #[test]
    fn absorption_keeps_the_shorter_term() {
        let f = nf("x1*x2 + x1*x2*x3", 3);
        assert_eq!(f.to_string(), "x1*x2");
        // disjoint terms are unchanged; duplicates collapse
        let g = nf("x1*x2 + x3 + x1*x2", 3);
        assert_eq!(g.to_string(), "x1*x2 + x3");
    }

    #[test]
    fn complement_terms_survive_normalization() {
        let f = nf("x1*~x1*x2", 2);
        assert_eq!(f.terms.len(), 1);
        assert!(f.terms.iter().next().unwrap().is_complement());
    }

    #[test]
    fn expand_main_worked_identity() {
        // x̄1x2 + x̄1x2x̄2 + x1x2x3 expands and re-absorbs to x̄1x2 + x1x2x3
        let f = nf("~x1*x2 + ~x1*x2*~x2 + x1*x2*x3", 3);
        let main = expand_main(&f);
        assert_eq!(main.to_string(), "x1*x2*x3 + ~x1*x2");
    }

    #[test]
    fn expand_main_keeps_unabsorbed_minimum_terms() {
        let f = nf("x1*~x1", 2);
        let main = expand_main(&f);
        let strs: Vec<String> = main.terms.iter().map(|t| t.to_string()).collect();
        assert_eq!(strs, vec!["x1*~x1*x2", "x1*~x1*~x2"]);
        assert!(main.terms.iter().all(|t| t.is_complement_minimum(2)));
    }

    #[test]
    fn normal_form_preserves_evaluation_on_a_grid() {
        let f = parse_formula("~(x1*x2) + x3*(x1 + ~x3)", Some(3)).unwrap();
        let n = to_normal_form(&f).unwrap();
        let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
        for &a in &grid {
            for &b in &grid {
                for &c in &grid {
                    let v = [a, b, c];
                    let lhs = f.eval_values(&v).unwrap();
                    let rhs = n.eval(
                        &v.iter().map(|&x| Grade::new(x).unwrap()).collect::<Vec<_>>(),
                    );
                    assert_eq!(lhs, rhs, "at {v:?}");
                }
            }
        }
    }

    #[test]
    fn single_term_round_trip() {
        let f = nf("x1*~x2", 2);
        assert_eq!(f.to_string(), "x1*~x2");
        assert_eq!(to_normal_form(&f.to_formula()).unwrap(), f);
    }
}
