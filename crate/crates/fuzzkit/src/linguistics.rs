//! Language variables: basic nouns bound to fuzzy sets, hedges bound to
//! modifier words, and the and/or/not connectives, with a parser for
//! compound noun phrases.

use crate::error::{FuzzyError, Result};
use crate::hedge::{apply_hedge, HedgeKind};
use crate::set::{intersection, union, FuzzySet};
use crate::universe::{check_same, Universe};
use std::collections::HashMap;
use std::sync::Arc;

/// A language variable: a named universe, basic nouns, and modifier words.
#[derive(Debug, Clone)]
pub struct LanguageVariable {
    name: String,
    universe: Arc<Universe>,
    basic_nouns: HashMap<String, FuzzySet>,
    modifiers: HashMap<String, HedgeKind>,
}

impl LanguageVariable {
    pub fn new(name: impl Into<String>, universe: Arc<Universe>) -> LanguageVariable {
        LanguageVariable {
            name: name.into(),
            universe,
            basic_nouns: HashMap::new(),
            modifiers: HashMap::new(),
        }
    }

    /// The usual modifier vocabulary.
    pub fn with_standard_modifiers(mut self) -> LanguageVariable {
        self.add_modifier("very", HedgeKind::Very);
        self.add_modifier("plus", HedgeKind::Plus);
        self.add_modifier("minus", HedgeKind::Minus);
        self.add_modifier("highly", HedgeKind::Highly);
        self.add_modifier("more or less", HedgeKind::MoreOrLess);
        self.add_modifier("sort of", HedgeKind::SortOf);
        self.add_modifier("rather", HedgeKind::Rather);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn add_noun(&mut self, word: impl Into<String>, set: FuzzySet) -> Result<()> {
        check_same(&self.universe, set.universe())?;
        self.basic_nouns.insert(word.into(), set);
        Ok(())
    }

    pub fn add_modifier(&mut self, word: impl Into<String>, hedge: HedgeKind) {
        self.modifiers.insert(word.into(), hedge);
    }

    pub fn noun(&self, word: &str) -> Option<&FuzzySet> {
        self.basic_nouns.get(word)
    }

    /// Evaluates a compound noun phrase: modifiers apply innermost-first,
    /// `and`/`or`/`not` map to intersection/union/complement, parentheses
    /// group.
    pub fn parse_noun(&self, phrase: &str) -> Result<FuzzySet> {
        let tokens: Vec<&str> = phrase.split_whitespace().collect();
        let mut parser = NounParser {
            variable: self,
            tokens,
            pos: 0,
        };
        let set = parser.or_expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(FuzzyError::UnknownWord(parser.tokens[parser.pos].to_string()));
        }
        Ok(set)
    }

    /// Word sequences (longest first) that name a modifier.
    fn modifier_at(&self, tokens: &[&str]) -> Option<(usize, HedgeKind)> {
        let mut best: Option<(usize, HedgeKind)> = None;
        for (word, &hedge) in &self.modifiers {
            let parts: Vec<&str> = word.split_whitespace().collect();
            if parts.len() <= tokens.len()
                && parts.iter().zip(tokens).all(|(a, b)| a == b)
                && best.map_or(true, |(len, _)| parts.len() > len)
            {
                best = Some((parts.len(), hedge));
            }
        }
        best
    }

    fn noun_at(&self, tokens: &[&str]) -> Option<(usize, &FuzzySet)> {
        let mut best: Option<(usize, &FuzzySet)> = None;
        for (word, set) in &self.basic_nouns {
            let parts: Vec<&str> = word.split_whitespace().collect();
            if parts.len() <= tokens.len()
                && parts.iter().zip(tokens).all(|(a, b)| a == b)
                && best.map_or(true, |(len, _)| parts.len() > len)
            {
                best = Some((parts.len(), set));
            }
        }
        best
    }
}

struct NounParser<'a> {
    variable: &'a LanguageVariable,
    tokens: Vec<&'a str>,
    pos: usize,
}

impl NounParser<'_> {
    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).copied()
    }

    fn or_expr(&mut self) -> Result<FuzzySet> {
        let mut acc = self.and_expr()?;
        while self.peek() == Some("or") {
            self.pos += 1;
            acc = union(&acc, &self.and_expr()?)?;
        }
        Ok(acc)
    }

    fn and_expr(&mut self) -> Result<FuzzySet> {
        let mut acc = self.unary()?;
        while self.peek() == Some("and") {
            self.pos += 1;
            acc = intersection(&acc, &self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FuzzySet> {
        let rest = &self.tokens[self.pos..];
        match self.peek() {
            None => Err(FuzzyError::UnknownWord("<end of phrase>".into())),
            Some("not") => {
                self.pos += 1;
                Ok(self.unary()?.complement())
            }
            Some("(") => {
                self.pos += 1;
                let inner = self.or_expr()?;
                if self.peek() != Some(")") {
                    return Err(FuzzyError::UnknownWord(
                        self.peek().unwrap_or("<end of phrase>").to_string(),
                    ));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(word) => {
                if let Some((len, hedge)) = self.variable.modifier_at(rest) {
                    self.pos += len;
                    return apply_hedge(hedge, &self.unary()?);
                }
                if let Some((len, set)) = self.variable.noun_at(rest) {
                    self.pos += len;
                    return Ok(set.clone());
                }
                Err(FuzzyError::UnknownWord(word.to_string()))
            }
        }
    }
}

/// Iterates the noun-generation recursion T^{i+1} = basic + modifier·T^i
/// from the empty set; depth i yields i nouns.
pub fn generate_nouns(basic: &str, modifier: &str, depth: usize) -> Vec<String> {
    (0..depth)
        .map(|k| {
            let mut s = String::new();
            for _ in 0..k {
                s.push_str(modifier);
                s.push(' ');
            }
            s.push_str(basic);
            s
        })
        .collect()
}

/// The standard age vocabulary on integer ages 0…100: `young` is 1 up to 25
/// then decays as [1+((u−25)/5)²]⁻¹; `old` is 0 up to 50 then rises as
/// [1+((u−50)/5)⁻²]⁻¹.
pub fn age_variable() -> LanguageVariable {
    let u = Universe::numeric("age", (0..=100).map(|i| i as f64)).unwrap();
    let young = FuzzySet::sample(Arc::clone(&u), young_membership).unwrap();
    let old = FuzzySet::sample(Arc::clone(&u), old_membership).unwrap();
    let mut v = LanguageVariable::new("Age", u).with_standard_modifiers();
    v.add_noun("young", young).unwrap();
    v.add_noun("old", old).unwrap();
    v.add_modifier("quite", HedgeKind::Con);
    v
}

pub fn young_membership(u: f64) -> f64 {
    if u <= 25.0 {
        1.0
    } else {
        let t = (u - 25.0) / 5.0;
        1.0 / (1.0 + t * t)
    }
}

pub fn old_membership(u: f64) -> f64 {
    if u <= 50.0 {
        0.0
    } else {
        let t = (u - 50.0) / 5.0;
        1.0 / (1.0 + 1.0 / (t * t))
    }
}
