//! Fuzzy grammars: graded productions, best-derivation search, and the
//! word-formation trees whose membership functions compose bottom-up.

use crate::error::{FuzzyError, Result};
use crate::grade::Grade;
use crate::linguistics::LanguageVariable;
use crate::set::{intersection, union, FuzzySet};
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

/// One production LHS → RHS with a grade.
#[derive(Debug, Clone, PartialEq)]
pub struct Production {
    pub lhs: String,
    pub rhs: Vec<String>,
    pub grade: Grade,
}

/// A fuzzy grammar: terminals, nonterminals, start symbol, graded productions.
#[derive(Debug, Clone)]
pub struct FuzzyGrammar {
    start: String,
    nonterminals: Vec<String>,
    productions: Vec<Production>,
}

impl FuzzyGrammar {
    /// Nonterminals are the symbols that appear on a left-hand side; the
    /// start symbol is the first production's LHS.
    pub fn new(productions: Vec<Production>) -> Result<FuzzyGrammar> {
        if productions.is_empty() {
            return Err(FuzzyError::Precondition("grammar needs productions".into()));
        }
        if let Some(p) = productions.iter().find(|p| p.rhs.is_empty()) {
            return Err(FuzzyError::Precondition(format!(
                "production for {} has an empty right-hand side",
                p.lhs
            )));
        }
        let mut nonterminals: Vec<String> = Vec::new();
        for p in &productions {
            if !nonterminals.contains(&p.lhs) {
                nonterminals.push(p.lhs.clone());
            }
        }
        Ok(FuzzyGrammar {
            start: productions[0].lhs.clone(),
            nonterminals,
            productions,
        })
    }

    /// Parses the plain-text format: one production per line, written
    /// `LHS -> RHS @ grade` (grade optional, defaults to 1), `#` comments.
    pub fn parse(source: &str) -> Result<FuzzyGrammar> {
        let mut productions = Vec::new();
        for (lineno, raw) in source.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rest) = line.split_once("->").ok_or_else(|| {
                FuzzyError::parse(lineno + 1, 1, "expected `LHS -> RHS [@ grade]`")
            })?;
            let lhs = lhs.trim();
            if lhs.split_whitespace().count() != 1 {
                return Err(FuzzyError::parse(
                    lineno + 1,
                    1,
                    "left-hand side must be a single symbol",
                ));
            }
            let (rhs_text, grade) = match rest.split_once('@') {
                Some((r, g)) => {
                    let value: f64 = g.trim().parse().map_err(|_| {
                        FuzzyError::parse(lineno + 1, 1, format!("bad grade {:?}", g.trim()))
                    })?;
                    (r, Grade::new(value)?)
                }
                None => (rest, Grade::ONE),
            };
            let rhs: Vec<String> = rhs_text.split_whitespace().map(str::to_string).collect();
            productions.push(Production {
                lhs: lhs.to_string(),
                rhs,
                grade,
            });
        }
        FuzzyGrammar::new(productions)
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn is_nonterminal(&self, symbol: &str) -> bool {
        self.nonterminals.iter().any(|n| n == symbol)
    }

    pub fn terminals(&self) -> Vec<String> {
        let mut out = Vec::new();
        for p in &self.productions {
            for s in &p.rhs {
                if !self.is_nonterminal(s) && !out.contains(s) {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Splits a sentence into terminal symbols: by whitespace when present,
    /// otherwise character by character (for single-letter alphabets).
    pub fn tokenize(&self, sentence: &str) -> Vec<String> {
        if sentence.contains(char::is_whitespace) {
            sentence.split_whitespace().map(str::to_string).collect()
        } else {
            sentence.chars().map(|c| c.to_string()).collect()
        }
    }
}

/// A successful derivation: the leftmost rewrite steps, the sentence, and
/// the min-of-grades membership.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    /// (production index, position of the rewritten symbol) per step.
    pub steps: Vec<(usize, usize)>,
    pub sentence: Vec<String>,
    pub grade: Grade,
}

struct SearchNode {
    grade: Grade,
    steps_taken: usize,
    form: Vec<String>,
    trail: Vec<(usize, usize)>,
}

impl PartialEq for SearchNode {
    fn eq(&self, other: &Self) -> bool {
        self.grade == other.grade
    }
}
impl Eq for SearchNode {}
impl PartialOrd for SearchNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for SearchNode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade
            .value()
            .partial_cmp(&other.grade.value())
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.steps_taken.cmp(&self.steps_taken))
    }
}

/// Best-grade leftmost derivation of a sentence, or None when unreachable.
///
/// Highest-grade-first search over sentential forms with memoization; the
/// min-of-grades objective only falls along a path, so the first time the
/// sentence is completed its grade is maximal. `max_steps` bounds the search
/// (0 picks the default 4 × sentence length).
pub fn derive(g: &FuzzyGrammar, sentence: &[String], max_steps: usize) -> Option<Derivation> {
    if sentence.is_empty() {
        return None;
    }
    let max_steps = if max_steps == 0 {
        4 * sentence.len()
    } else {
        max_steps
    };
    let mut heap = BinaryHeap::new();
    heap.push(SearchNode {
        grade: Grade::ONE,
        steps_taken: 0,
        form: vec![g.start().to_string()],
        trail: Vec::new(),
    });
    let mut best: HashMap<Vec<String>, (f64, usize)> = HashMap::new();
    while let Some(node) = heap.pop() {
        let leftmost_nt = node.form.iter().position(|s| g.is_nonterminal(s));
        match leftmost_nt {
            None => {
                if node.form == sentence {
                    return Some(Derivation {
                        steps: node.trail,
                        sentence: node.form,
                        grade: node.grade,
                    });
                }
                continue;
            }
            Some(pos) => {
                // the terminal prefix is fixed; prune on mismatch
                if node.form.len() > sentence.len()
                    || node.form[..pos] != sentence[..pos.min(sentence.len())]
                {
                    continue;
                }
                if node.steps_taken >= max_steps {
                    continue;
                }
                for (pi, p) in g.productions().iter().enumerate() {
                    if p.lhs != node.form[pos] {
                        continue;
                    }
                    let grade = node.grade.and(p.grade);
                    if grade.value() == 0.0 {
                        continue;
                    }
                    let mut form = Vec::with_capacity(node.form.len() + p.rhs.len() - 1);
                    form.extend_from_slice(&node.form[..pos]);
                    form.extend(p.rhs.iter().cloned());
                    form.extend_from_slice(&node.form[pos + 1..]);
                    if form.len() > sentence.len() {
                        continue;
                    }
                    let steps_taken = node.steps_taken + 1;
                    if let Some(&(g_prev, s_prev)) = best.get(&form) {
                        if g_prev >= grade.value() && s_prev <= steps_taken {
                            continue;
                        }
                    }
                    best.insert(form.clone(), (grade.value(), steps_taken));
                    let mut trail = node.trail.clone();
                    trail.push((pi, pos));
                    heap.push(SearchNode {
                        grade,
                        steps_taken,
                        form,
                        trail,
                    });
                }
            }
        }
    }
    None
}

/// A parse tree over the word-formation rules: terminals are basic nouns,
/// `quite` squares, `not` complements, `and`/`or` intersect/unite.
#[derive(Debug, Clone, PartialEq)]
pub enum WordTree {
    Terminal(String),
    Quite(Box<WordTree>),
    Not(Box<WordTree>),
    And(Box<WordTree>, Box<WordTree>),
    Or(Box<WordTree>, Box<WordTree>),
}

/// Closed-form membership expression of a word tree.
#[derive(Debug, Clone, PartialEq)]
pub enum MembershipExpr {
    /// μ_noun raised to a power.
    Noun(String, u32),
    OneMinus(Box<MembershipExpr>),
    Min(Box<MembershipExpr>, Box<MembershipExpr>),
    Max(Box<MembershipExpr>, Box<MembershipExpr>),
    /// A square that did not land directly on a noun.
    Square(Box<MembershipExpr>),
}

impl fmt::Display for MembershipExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipExpr::Noun(n, 1) => write!(f, "{n}"),
            MembershipExpr::Noun(n, k) => write!(f, "{n}^{k}"),
            MembershipExpr::OneMinus(e) => write!(f, "(1 - {e})"),
            MembershipExpr::Min(a, b) => write!(f, "({a} ∧ {b})"),
            MembershipExpr::Max(a, b) => write!(f, "({a} ∨ {b})"),
            MembershipExpr::Square(e) => write!(f, "({e})^2"),
        }
    }
}

/// The symbolic membership expression of a tree plus its pointwise value on
/// the variable's universe.
pub fn tree_membership(
    variable: &LanguageVariable,
    tree: &WordTree,
) -> Result<(MembershipExpr, FuzzySet)> {
    match tree {
        WordTree::Terminal(word) => {
            let set = variable
                .noun(word)
                .ok_or_else(|| FuzzyError::UnknownWord(word.clone()))?;
            Ok((MembershipExpr::Noun(word.clone(), 1), set.clone()))
        }
        WordTree::Quite(child) => {
            let (expr, set) = tree_membership(variable, child)?;
            let expr = match expr {
                MembershipExpr::Noun(n, k) => MembershipExpr::Noun(n, k * 2),
                other => MembershipExpr::Square(Box::new(other)),
            };
            Ok((expr, set.power(2.0)))
        }
        WordTree::Not(child) => {
            let (expr, set) = tree_membership(variable, child)?;
            Ok((MembershipExpr::OneMinus(Box::new(expr)), set.complement()))
        }
        WordTree::And(left, right) => {
            let (el, sl) = tree_membership(variable, left)?;
            let (er, sr) = tree_membership(variable, right)?;
            Ok((
                MembershipExpr::Min(Box::new(el), Box::new(er)),
                intersection(&sl, &sr)?,
            ))
        }
        WordTree::Or(left, right) => {
            let (el, sl) = tree_membership(variable, left)?;
            let (er, sr) = tree_membership(variable, right)?;
            Ok((
                MembershipExpr::Max(Box::new(el), Box::new(er)),
                union(&sl, &sr)?,
            ))
        }
    }
}

/// The worked two-sided approximate-isosceles grammar over {a, b}.
pub fn ab_example_grammar() -> FuzzyGrammar {
    FuzzyGrammar::parse(
        "S -> A B @ 1\n\
         A -> a @ 1\n\
         B -> b @ 1\n\
         A -> a A B @ 0.9\n\
         A -> a B @ 0.5\n\
         A -> a C @ 0.5\n\
         C -> a @ 0.5\n\
         C -> a a @ 0.2\n\
         A -> B @ 0.2\n",
    )
    .unwrap()
}
