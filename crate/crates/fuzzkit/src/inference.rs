use crate::defuzz::{defuzzify, DefuzzMethod};
use crate::error::{FuzzyError, Result};
use crate::grade::Grade;
use crate::relation::{
    arrow, compose, compose_rel_set, else_arrow, else_relation, implication_relation,
    CompositionRule, ElseKind, ImplicationKind,
};
use crate::set::{intersection, FuzzySet};
use crate::universe::check_same;
use std::collections::HashMap;
use std::sync::Arc;

/// Premise modifiers used in the reasoning profiles: A, very A, more or less
/// A, not A, and the tollens side's not-very / not-more-or-less.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modifier {
    Identity,
    Very,
    MoreOrLess,
    Not,
    NotVery,
    NotMoreOrLess,
}

impl Modifier {
    pub fn apply(self, x: Grade) -> Grade {
        let v = x.value();
        Grade::clamped(match self {
            Modifier::Identity => v,
            Modifier::Very => v * v,
            Modifier::MoreOrLess => v.sqrt(),
            Modifier::Not => 1.0 - v,
            Modifier::NotVery => 1.0 - v * v,
            Modifier::NotMoreOrLess => 1.0 - v.sqrt(),
        })
    }

    pub fn apply_set(self, a: &FuzzySet) -> FuzzySet {
        match self {
            Modifier::Identity => a.clone(),
            Modifier::Very => a.power(2.0),
            Modifier::MoreOrLess => a.power(0.5),
            Modifier::Not => a.complement(),
            Modifier::NotVery => a.power(2.0).complement(),
            Modifier::NotMoreOrLess => a.power(0.5).complement(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Modifier::Identity => "identity",
            Modifier::Very => "very",
            Modifier::MoreOrLess => "more-or-less",
            Modifier::Not => "not",
            Modifier::NotVery => "not-very",
            Modifier::NotMoreOrLess => "not-more-or-less",
        }
    }

    pub fn parse(name: &str) -> Option<Modifier> {
        match name.trim().to_ascii_lowercase().as_str() {
            "identity" | "id" | "a" | "b" => Some(Modifier::Identity),
            "very" => Some(Modifier::Very),
            "more-or-less" | "mol" => Some(Modifier::MoreOrLess),
            "not" => Some(Modifier::Not),
            "not-very" => Some(Modifier::NotVery),
            "not-more-or-less" | "not-mol" => Some(Modifier::NotMoreOrLess),
            _ => None,
        }
    }
}

/// Generalized modus ponens: B' = A' ∘ (A → B).
pub fn gmp(
    kind: ImplicationKind,
    a: &FuzzySet,
    b: &FuzzySet,
    a_prime: &FuzzySet,
    rule: CompositionRule,
) -> Result<FuzzySet> {
    check_same(a.universe(), a_prime.universe())?;
    compose(a_prime, &implication_relation(kind, a, b), rule)
}

/// Generalized modus tollens: A' = (A → B) ∘ B'.
pub fn gmt(
    kind: ImplicationKind,
    a: &FuzzySet,
    b: &FuzzySet,
    b_prime: &FuzzySet,
    rule: CompositionRule,
) -> Result<FuzzySet> {
    check_same(b.universe(), b_prime.universe())?;
    compose_rel_set(&implication_relation(kind, a, b), b_prime, rule)
}

/// IF-THEN-ELSE inference: D = A' ∘ R'(A, B, C) under max-min.
pub fn ite_infer(
    kind: ElseKind,
    a: &FuzzySet,
    b: &FuzzySet,
    c: &FuzzySet,
    a_prime: &FuzzySet,
) -> Result<FuzzySet> {
    check_same(a.universe(), a_prime.universe())?;
    compose(a_prime, &else_relation(kind, a, b, c)?, CompositionRule::MaxMin)
}

fn grid_point(i: usize, n: usize) -> Grade {
    Grade::clamped(i as f64 / n as f64)
}

/// Modus ponens profile: μ_A gridded over [0, 1] with `grid_n` steps,
/// returns sup over x of t(mod(x), arrow(x, b)).
pub fn profile_gmp(
    kind: ImplicationKind,
    modifier: Modifier,
    b: Grade,
    grid_n: usize,
    rule: CompositionRule,
) -> Grade {
    assert!(grid_n >= 2, "grid_n must be at least 2");
    (0..=grid_n)
        .map(|i| {
            let x = grid_point(i, grid_n);
            rule.t_norm(modifier.apply(x), arrow(kind, x, b))
        })
        .fold(Grade::ZERO, Grade::or)
}

/// Modus tollens profile: μ_B gridded, returns sup over y of
/// t(arrow(a, y), mod(y)).
pub fn profile_gmt(
    kind: ImplicationKind,
    modifier: Modifier,
    a: Grade,
    grid_n: usize,
    rule: CompositionRule,
) -> Grade {
    assert!(grid_n >= 2, "grid_n must be at least 2");
    (0..=grid_n)
        .map(|i| {
            let y = grid_point(i, grid_n);
            rule.t_norm(arrow(kind, a, y), modifier.apply(y))
        })
        .fold(Grade::ZERO, Grade::or)
}

/// IF-THEN-ELSE profile: sup over gridded μ_A of min(mod(x), R'(x, b, c)).
pub fn profile_ite(kind: ElseKind, modifier: Modifier, b: Grade, c: Grade, grid_n: usize) -> Grade {
    assert!(grid_n >= 2, "grid_n must be at least 2");
    (0..=grid_n)
        .map(|i| {
            let x = grid_point(i, grid_n);
            modifier.apply(x).and(else_arrow(kind, x, b, c))
        })
        .fold(Grade::ZERO, Grade::or)
}

/// Outcome of a syllogism check for one implication kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyllogismReport {
    pub holds: bool,
    pub worst_gap: f64,
    /// The (μ_A, μ_C) pair with the largest gap.
    pub witness: (Grade, Grade),
}

/// Checks R(A,B) ∘ R(B,C) = R(A,C) over a grid of (μ_A, μ_C) pairs, with
/// μ_B gridded over [0, 1]. Holds iff the worst gap is within 2/grid_n.
pub fn syllogism_check(kind: ImplicationKind, rule: CompositionRule, grid_n: usize) -> SyllogismReport {
    assert!(grid_n >= 2, "grid_n must be at least 2");
    let grid: Vec<Grade> = (0..=grid_n).map(|i| grid_point(i, grid_n)).collect();
    let mut worst_gap = 0.0f64;
    let mut witness = (Grade::ZERO, Grade::ZERO);
    for &a in &grid {
        // arrow(a, x) for all x, reused across the c sweep
        let left: Vec<Grade> = grid.iter().map(|&x| arrow(kind, a, x)).collect();
        for &c in &grid {
            let lhs = grid
                .iter()
                .enumerate()
                .map(|(ix, &x)| rule.t_norm(left[ix], arrow(kind, x, c)))
                .fold(Grade::ZERO, Grade::or);
            let rhs = arrow(kind, a, c);
            let gap = (lhs.value() - rhs.value()).abs();
            if gap > worst_gap {
                worst_gap = gap;
                witness = (a, c);
            }
        }
    }
    SyllogismReport {
        holds: worst_gap <= 2.0 / grid_n as f64,
        worst_gap,
        witness,
    }
}

/// Input for one rule slot: a fuzzy observation or a crisp coordinate.
#[derive(Debug, Clone)]
pub enum RuleInput {
    Set(FuzzySet),
    Singleton(f64),
}

/// An IF-THEN rule: antecedents over named input slots, one consequent.
#[derive(Debug, Clone)]
pub struct FuzzyRule {
    pub antecedents: Vec<(String, FuzzySet)>,
    pub consequent: FuzzySet,
}

impl FuzzyRule {
    pub fn new(antecedents: Vec<(String, FuzzySet)>, consequent: FuzzySet) -> Result<FuzzyRule> {
        if antecedents.is_empty() {
            return Err(FuzzyError::Precondition(
                "a rule needs at least one antecedent".into(),
            ));
        }
        Ok(FuzzyRule {
            antecedents,
            consequent,
        })
    }
}

/// Per-rule firing data: strength h_i, the clipped consequent, its area S_i
/// and the representative point w_i of the unclipped consequent.
#[derive(Debug, Clone)]
pub struct RuleFiring {
    pub strength: Grade,
    pub clipped_consequent: FuzzySet,
    pub area: f64,
    pub representative: f64,
}

/// Multi-rule inference: per-rule strength is the min over antecedents of
/// height(input ∩ antecedent) (singletons reduce to μ(u₀)); each consequent
/// is clipped at its strength and the clips are aggregated by pointwise max.
pub fn multi_infer(
    rules: &[FuzzyRule],
    inputs: &HashMap<String, RuleInput>,
) -> Result<(FuzzySet, Vec<RuleFiring>)> {
    if rules.is_empty() {
        return Err(FuzzyError::EmptyRuleBase);
    }
    let out_universe = Arc::clone(rules[0].consequent.universe());
    let mut aggregate = FuzzySet::empty(Arc::clone(&out_universe));
    let mut firings = Vec::with_capacity(rules.len());
    for rule in rules {
        check_same(&out_universe, rule.consequent.universe())?;
        let mut strength = Grade::ONE;
        for (slot, antecedent) in &rule.antecedents {
            let input = inputs
                .get(slot)
                .ok_or_else(|| FuzzyError::MissingInput(slot.clone()))?;
            let h = match input {
                RuleInput::Set(s) => intersection(s, antecedent)?.height(),
                RuleInput::Singleton(coord) => {
                    let idx = nearest_point(antecedent, *coord)?;
                    antecedent.grade(idx)
                }
            };
            strength = strength.and(h);
        }
        let clipped = rule.consequent.clip(strength);
        aggregate = crate::set::union(&aggregate, &clipped)?;
        let spacing = out_universe.mean_spacing()?;
        let area = clipped.grades().iter().map(|g| g.value()).sum::<f64>() * spacing;
        let representative = defuzzify(DefuzzMethod::Centre, &rule.consequent)?;
        firings.push(RuleFiring {
            strength,
            clipped_consequent: clipped,
            area,
            representative,
        });
    }
    Ok((aggregate, firings))
}

fn nearest_point(set: &FuzzySet, coord: f64) -> Result<usize> {
    let coords = set.universe().coords()?;
    let (lo, hi) = (coords[0], coords[coords.len() - 1]);
    if coord < lo || coord > hi {
        return Err(FuzzyError::CoordinateOutOfRange {
            universe: set.universe().label().to_string(),
            coord,
        });
    }
    Ok(coords
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            (*a - coord)
                .abs()
                .partial_cmp(&(*b - coord).abs())
                .unwrap()
        })
        .map(|(i, _)| i)
        .unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::Universe;

    const SQRT5: f64 = 2.23606797749979;

    fn g(v: f64) -> Grade {
        Grade::new(v).unwrap()
    }

    #[test]
    fn gmp_rc_clips_at_consistency_height() {
        // B' = h ∧ B with h = height(A' ∩ A), under max-min with R_c
        let u = Universe::numeric("U", (0..=10).map(|i| i as f64)).unwrap();
        let v = Universe::numeric("V", (0..=10).map(|i| i as f64)).unwrap();
        let a = FuzzySet::from_values(Arc::clone(&u), &[0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 0.8, 0.6, 0.4, 0.2, 0.0]).unwrap();
        let b = FuzzySet::from_values(Arc::clone(&v), &[0.1, 0.3, 0.5, 0.7, 0.9, 1.0, 0.9, 0.7, 0.5, 0.3, 0.1]).unwrap();
        let a_prime = FuzzySet::from_values(Arc::clone(&u), &[0.0, 0.0, 0.3, 0.5, 0.5, 0.5, 0.3, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let h = intersection(&a_prime, &a).unwrap().height();
        let b_prime = gmp(ImplicationKind::Rc, &a, &b, &a_prime, CompositionRule::MaxMin).unwrap();
        assert_eq!(b_prime, b.clip(h));
        // fully consistent premise reproduces B exactly
        let same = gmp(ImplicationKind::Rc, &a, &b, &a, CompositionRule::MaxMin).unwrap();
        assert_eq!(same, b);
    }

    #[test]
    fn profile_gmp_spot_values() {
        let n = 1000;
        // (R_m, identity): 0.5 ∨ μ_B
        let p = profile_gmp(ImplicationKind::Rm, Modifier::Identity, g(0.2), n, CompositionRule::MaxMin);
        assert!((p.value() - 0.5).abs() <= 2e-3);
        // (R_s, very): μ_B²
        let p = profile_gmp(ImplicationKind::Rs, Modifier::Very, g(0.49), n, CompositionRule::MaxMin);
        assert!((p.value() - 0.2401).abs() <= 2e-3);
        // (R_c, identity): μ_B for any b
        for i in 0..=10 {
            let b = g(i as f64 / 10.0);
            let p = profile_gmp(ImplicationKind::Rc, Modifier::Identity, b, n, CompositionRule::MaxMin);
            assert!((p.value() - b.value()).abs() <= 2e-3);
        }
    }

    #[test]
    fn profile_gmt_spot_values() {
        let n = 1000;
        // (R_#, not very B): (√5−1)/2 ∨ (1 − μ_A)
        let p = profile_gmt(ImplicationKind::Rsharp, Modifier::NotVery, g(0.7), n, CompositionRule::MaxMin);
        assert!((p.value() - (SQRT5 - 1.0) / 2.0).abs() <= 2e-3);
        // (R_ss, not B): 1 − μ_A
        for i in 0..=10 {
            let a = g(i as f64 / 10.0);
            let p = profile_gmt(ImplicationKind::Rss, Modifier::Not, a, n, CompositionRule::MaxMin);
            assert!((p.value() - (1.0 - a.value())).abs() <= 2e-3);
        }
    }

    #[test]
    fn gmt_with_zero_premise_is_zero() {
        let u = Universe::numeric("U", [0.0, 1.0, 2.0]).unwrap();
        let v = Universe::numeric("V", [0.0, 1.0, 2.0]).unwrap();
        let a = FuzzySet::from_values(u, &[0.2, 0.9, 0.4]).unwrap();
        let b = FuzzySet::from_values(Arc::clone(&v), &[0.5, 1.0, 0.1]).unwrap();
        let zero = FuzzySet::empty(v);
        for kind in ImplicationKind::ALL {
            let a_prime = gmt(kind, &a, &b, &zero, CompositionRule::MaxMin).unwrap();
            assert!(a_prime.is_all_zero(), "{:?}", kind);
        }
    }

    #[test]
    fn ite_singleton_suppresses_the_else_branch() {
        let u = Universe::numeric("U", [0.0, 1.0, 2.0]).unwrap();
        let v = Universe::numeric("V", [0.0, 1.0, 2.0]).unwrap();
        let a = FuzzySet::from_values(Arc::clone(&u), &[1.0, 0.3, 0.0]).unwrap();
        let b = FuzzySet::from_values(Arc::clone(&v), &[0.9, 0.5, 0.2]).unwrap();
        let c = FuzzySet::from_values(Arc::clone(&v), &[0.1, 0.6, 1.0]).unwrap();
        let a_prime = FuzzySet::singleton(u, "0").unwrap();
        let d = ite_infer(ElseKind::RmPrime, &a, &b, &c, &a_prime).unwrap();
        assert_eq!(d, b);
    }

    #[test]
    fn profile_ite_rb_very_a() {
        // R'_b with very A: μ_B ∨ (3−√5)/2, independent of μ_C
        let n = 1000;
        let c382 = (3.0 - SQRT5) / 2.0;
        for bi in 0..=10 {
            for ci in 0..=10 {
                let b = g(bi as f64 / 10.0);
                let c = g(ci as f64 / 10.0);
                let p = profile_ite(ElseKind::RbPrime, Modifier::Very, b, c, n);
                assert!((p.value() - b.value().max(c382)).abs() <= 2e-3);
            }
        }
    }

    #[test]
    fn syllogism_s_holds_m_fails() {
        let r = syllogism_check(ImplicationKind::Rs, CompositionRule::MaxMin, 101);
        assert!(r.holds, "worst gap {}", r.worst_gap);
        let r = syllogism_check(ImplicationKind::Rm, CompositionRule::MaxMin, 101);
        assert!(!r.holds);
        assert!(r.worst_gap > 0.4);
        // bounded-product composition closes the # relation
        let r = syllogism_check(ImplicationKind::Rsharp, CompositionRule::MaxBoundedProduct, 101);
        assert!(r.holds, "worst gap {}", r.worst_gap);
    }

    fn one_rule_base() -> (Vec<FuzzyRule>, Arc<Universe>, Arc<Universe>) {
        let u = Universe::numeric("U", (0..5).map(|i| i as f64)).unwrap();
        let w = Universe::numeric("W", (0..5).map(|i| i as f64)).unwrap();
        let ant = FuzzySet::from_values(Arc::clone(&u), &[0.0, 0.5, 1.0, 0.5, 0.0]).unwrap();
        let con = FuzzySet::from_values(Arc::clone(&w), &[0.2, 0.6, 1.0, 0.6, 0.2]).unwrap();
        (
            vec![FuzzyRule::new(vec![("x".into(), ant)], con).unwrap()],
            u,
            w,
        )
    }

    #[test]
    fn multi_infer_exact_match_reproduces_consequent() {
        let (rules, u, _) = one_rule_base();
        let mut inputs = HashMap::new();
        inputs.insert("x".to_string(), RuleInput::Set(rules[0].antecedents[0].1.clone()));
        let (agg, firings) = multi_infer(&rules, &inputs).unwrap();
        assert_eq!(agg, rules[0].consequent);
        assert_eq!(firings[0].strength, Grade::ONE);
        let _ = u;
    }

    #[test]
    fn multi_infer_singleton_clips() {
        let (rules, _, _) = one_rule_base();
        let mut inputs = HashMap::new();
        inputs.insert("x".to_string(), RuleInput::Singleton(1.0));
        let (agg, firings) = multi_infer(&rules, &inputs).unwrap();
        assert_eq!(firings[0].strength.value(), 0.5);
        assert_eq!(agg, rules[0].consequent.clip(g(0.5)));
    }

    #[test]
    fn multi_infer_missing_slot_and_out_of_range() {
        let (rules, _, _) = one_rule_base();
        let err = multi_infer(&rules, &HashMap::new()).unwrap_err();
        assert_eq!(err, FuzzyError::MissingInput("x".into()));
        let mut inputs = HashMap::new();
        inputs.insert("x".to_string(), RuleInput::Singleton(9.5));
        assert!(matches!(
            multi_infer(&rules, &inputs),
            Err(FuzzyError::CoordinateOutOfRange { .. })
        ));
    }

    #[test]
    fn multi_infer_two_rules_aggregates_by_max() {
        let u = Universe::numeric("U", (0..5).map(|i| i as f64)).unwrap();
        let w = Universe::numeric("W", (0..5).map(|i| i as f64)).unwrap();
        let a1 = FuzzySet::from_values(Arc::clone(&u), &[1.0, 0.6, 0.2, 0.0, 0.0]).unwrap();
        let a2 = FuzzySet::from_values(Arc::clone(&u), &[0.0, 0.0, 0.3, 0.9, 1.0]).unwrap();
        let c1 = FuzzySet::from_values(Arc::clone(&w), &[1.0, 0.8, 0.4, 0.0, 0.0]).unwrap();
        let c2 = FuzzySet::from_values(Arc::clone(&w), &[0.0, 0.2, 0.7, 1.0, 0.9]).unwrap();
        let rules = vec![
            FuzzyRule::new(vec![("x".into(), a1)], c1.clone()).unwrap(),
            FuzzyRule::new(vec![("x".into(), a2)], c2.clone()).unwrap(),
        ];
        let mut inputs = HashMap::new();
        inputs.insert("x".to_string(), RuleInput::Singleton(1.0));
        let (agg, firings) = multi_infer(&rules, &inputs).unwrap();
        assert_eq!(firings[0].strength.value(), 0.6);
        assert_eq!(firings[1].strength.value(), 0.0);
        // brute-force aggregation oracle
        for j in 0..5 {
            let expect = firings[0].strength.and(c1.grade(j)).or(firings[1].strength.and(c2.grade(j)));
            assert_eq!(agg.grade(j), expect);
        }
    }
}
