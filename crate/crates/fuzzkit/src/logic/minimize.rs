use super::formula::FFormula;
use super::term::{absorb, expand_main, to_normal_form, Literal, NormalForm, Term};
use crate::error::Result;
use std::collections::BTreeSet;

/// The fuzzy consistency set FC(α, β): for every variable appearing with
/// opposite polarity in α and β (and not with both polarities in either),
/// the consensus of the remainders — padded with x_j·x̄_j products when the
/// consensus is a single term. Only complement terms are returned.
pub fn fuzzy_consistency(alpha: &Term, beta: &Term, arity: usize) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    for var in 1..=arity {
        for (a_lit, b_lit) in [
            (Literal::pos(var), Literal::neg(var)),
            (Literal::neg(var), Literal::pos(var)),
        ] {
            if !alpha.contains(a_lit) || !beta.contains(b_lit) {
                continue;
            }
            // the split literal's complement must not remain in the rest
            let rest_a = alpha.without(a_lit);
            let rest_b = beta.without(b_lit);
            if rest_a.contains(b_lit) || rest_b.contains(a_lit) {
                continue;
            }
            let consensus = rest_a.merged(&rest_b);
            if consensus.is_complement() {
                out.insert(consensus);
            } else {
                for j in 1..=arity {
                    if j == var {
                        continue;
                    }
                    out.insert(consensus.with(Literal::pos(j)).with(Literal::neg(j)));
                }
            }
        }
    }
    out
}

/// All fuzzy prime implicants of a ∨/∧/¬ formula, by consensus closure:
/// normalize, absorb, add every pairwise fuzzy consistency not dominated by
/// an existing term, repeat until stable.
pub fn fpi(f: &FFormula) -> Result<BTreeSet<Term>> {
    let nf = to_normal_form(f)?;
    Ok(fpi_of_terms(&nf.terms, f.arity()))
}

pub(crate) fn fpi_of_terms(terms: &BTreeSet<Term>, arity: usize) -> BTreeSet<Term> {
    let mut set = absorb(terms);
    loop {
        let snapshot: Vec<Term> = set.iter().cloned().collect();
        let mut fresh: BTreeSet<Term> = BTreeSet::new();
        for (i, a) in snapshot.iter().enumerate() {
            for b in &snapshot[i + 1..] {
                for c in fuzzy_consistency(a, b, arity) {
                    if !set.iter().any(|t| t.dominates(&c)) {
                        fresh.insert(c);
                    }
                }
            }
        }
        if fresh.is_empty() {
            return set;
        }
        set.extend(fresh);
        set = absorb(&set);
    }
}

/// One simplest form and the enumeration over the ties.
///
/// Single items of the normal form are kept; the complement-term prime
/// implicants are computed by consensus closure; minimal subsets of them
/// covering every complement minimum term of the main addition normal form
/// are enumerated, keeping the ties with the fewest total literals.
pub fn simplest_form(f: &FFormula) -> Result<Vec<NormalForm>> {
    let nf = to_normal_form(f)?;
    let arity = f.arity();
    let singles: Vec<Term> = nf.terms.iter().filter(|t| t.is_single()).cloned().collect();
    let main = expand_main(&nf);
    let gammas: Vec<Term> = main
        .terms
        .iter()
        .filter(|t| t.is_complement_minimum(arity))
        .cloned()
        .collect();
    if gammas.is_empty() {
        return Ok(vec![NormalForm::new(arity, singles)]);
    }
    let alphas: Vec<Term> = fpi_of_terms(&nf.terms, arity)
        .into_iter()
        .filter(Term::is_complement)
        .collect();
    let covers = minimal_covers(&alphas, &gammas);
    let min_literals = covers
        .iter()
        .map(|cover| cover.iter().map(Term::literal_count).sum::<usize>())
        .min()
        .unwrap_or(0);
    Ok(covers
        .into_iter()
        .filter(|cover| cover.iter().map(Term::literal_count).sum::<usize>() == min_literals)
        .map(|cover| NormalForm::new(arity, singles.iter().cloned().chain(cover)))
        .collect())
}

/// Inclusion-minimal subsets of `alphas` that dominate every gamma.
/// Instances are small, so plain subset enumeration by increasing size.
fn minimal_covers(alphas: &[Term], gammas: &[Term]) -> Vec<Vec<Term>> {
    let n = alphas.len();
    let mut found: Vec<u32> = Vec::new();
    let mut out = Vec::new();
    for size in 0..=n {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            if found.iter().any(|&prev| prev & mask == prev) {
                continue; // a subset already covers
            }
            let covers_all = gammas.iter().all(|g| {
                (0..n).any(|i| mask >> i & 1 == 1 && alphas[i].dominates(g))
            });
            if covers_all {
                found.push(mask);
                out.push(
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| alphas[i].clone())
                        .collect(),
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grade::Grade;
    use crate::logic::parse_formula;

    fn term(src: &str) -> Term {
        let f = parse_formula(src, None).unwrap();
        let nf = to_normal_form(&f).unwrap();
        assert_eq!(nf.terms.len(), 1);
        nf.terms.into_iter().next().unwrap()
    }

    fn names(set: &BTreeSet<Term>) -> Vec<String> {
        set.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn consistency_worked_instances() {
        // three-variable instances
        let fc = fuzzy_consistency(&term("x1*~x2"), &term("~x1*x2"), 3);
        assert_eq!(names(&fc), vec!["x1*~x1", "x2*~x2"]);

        let fc = fuzzy_consistency(&term("x1*x2"), &term("x1*~x2"), 3);
        assert_eq!(names(&fc), vec!["x1*~x1", "x1*x3*~x3"]);

        let fc = fuzzy_consistency(&term("x1"), &term("~x1"), 3);
        assert_eq!(names(&fc), vec!["x2*~x2", "x3*~x3"]);
    }

    #[test]
    fn consistency_skips_blocked_splits() {
        // both polarities present in one operand block the split
        let fc = fuzzy_consistency(&term("x1*~x1*x2"), &term("~x1*x2"), 2);
        assert!(fc.is_empty());
    }

    #[test]
    fn fpi_collapses_the_worked_four_variable_function() {
        let f = parse_formula(
            "x1*~x1*x2*~x3 + x1*~x1*x2*~x4 + x1*~x1*x2*x3*x4",
            Some(4),
        )
        .unwrap();
        let fpis = fpi(&f).unwrap();
        assert_eq!(names(&fpis), vec!["x1*~x1*x2"]);
    }

    #[test]
    fn fpi_of_a_single_term_is_itself() {
        let f = parse_formula("x1*~x2*x3", Some(3)).unwrap();
        assert_eq!(names(&fpi(&f).unwrap()), vec!["x1*~x2*x3"]);
    }

    #[test]
    fn fpi_without_oppositions_is_unchanged() {
        let f = parse_formula("x1*x2 + x2*x3", Some(3)).unwrap();
        assert_eq!(names(&fpi(&f).unwrap()), vec!["x1*x2", "x2*x3"]);
    }

    #[test]
    fn fpi_terms_are_dominated_and_minimal_on_the_grid() {
        let f = parse_formula(
            "~x2*~x4 + x1*x2*~x3 + ~x1*x2*x4 + x1*~x2*x3*x4 + x1*~x1*~x2*~x3*x4",
            Some(4),
        )
        .unwrap();
        let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
        let mut assignments: Vec<Vec<Grade>> = Vec::new();
        for &a in &grid {
            for &b in &grid {
                for &c in &grid {
                    for &d in &grid {
                        assignments.push(
                            [a, b, c, d].iter().map(|&v| Grade::new(v).unwrap()).collect(),
                        );
                    }
                }
            }
        }
        for t in fpi(&f).unwrap() {
            for a in &assignments {
                assert!(
                    t.eval(a).value() <= f.eval(a).unwrap().value() + 1e-12,
                    "{t} not dominated at {a:?}"
                );
            }
            for lit in t.literals() {
                let weakened = t.without(lit);
                let breaks = assignments
                    .iter()
                    .any(|a| weakened.eval(a).value() > f.eval(a).unwrap().value() + 1e-12);
                assert!(breaks, "dropping {lit} from {t} keeps dominance");
            }
        }
    }

    #[test]
    fn simplest_form_enumerates_the_three_way_tie() {
        let f = parse_formula(
            "~x2*~x4 + x1*x2*~x3 + ~x1*x2*x4 + x1*~x2*x3*x4 + x1*~x1*~x2*~x3*x4",
            Some(4),
        )
        .unwrap();
        let forms = simplest_form(&f).unwrap();
        assert_eq!(forms.len(), 3);
        let singles = ["~x2*~x4", "x1*x2*~x3", "~x1*x2*x4", "x1*~x2*x3*x4"];
        let extras: Vec<String> = forms
            .iter()
            .map(|form| {
                let mut extra = None;
                for t in &form.terms {
                    let s = t.to_string();
                    if !singles.contains(&s.as_str()) {
                        assert!(extra.is_none(), "more than one complement item in {form}");
                        extra = Some(s);
                    }
                }
                for s in singles {
                    assert!(form.terms.iter().any(|t| t.to_string() == s), "{form} lost {s}");
                }
                extra.unwrap()
            })
            .collect();
        let mut extras_sorted = extras.clone();
        extras_sorted.sort();
        // '~' sorts after 'x' in byte order
        assert_eq!(extras_sorted, vec!["x1*~x1*x4", "x1*~x1*~x2", "x1*~x1*~x3"]);
    }

    #[test]
    fn simplest_form_of_a_single_term_is_unique() {
        let f = parse_formula("x1*~x2", Some(2)).unwrap();
        let forms = simplest_form(&f).unwrap();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].to_string(), "x1*~x2");
    }

    #[test]
    fn simplest_form_of_pure_complement_pair() {
        let f = parse_formula("x1*~x1", Some(2)).unwrap();
        let forms = simplest_form(&f).unwrap();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].to_string(), "x1*~x1");
    }
}
