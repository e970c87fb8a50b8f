//! The layered search against brute force over tuples, on every catalog
//! group of order at most 12.

use std::collections::BTreeSet;

use skelsig::genvec::{
    exists_generating_vector, exists_with_options, verify_generating_vector,
    verify_with_convention, CommutatorConvention, SearchOptions,
};
use skelsig::group_kernel::{Catalog, Element, FiniteGroup};
use skelsig::signatures::Signature;

fn closure_size(g: &FiniteGroup, gens: &[Element]) -> usize {
    let mut seen = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

/// Tries every tuple: `h` pairs `(a, b)` with `a⁻¹b⁻¹ab`, then cone
/// elements in descending period order.
fn naive_exists(g: &FiniteGroup, sig: &Signature) -> bool {
    let all: Vec<Element> = g.elements().collect();
    let mut periods = sig.expanded();
    periods.reverse();
    let mut slots: Vec<Vec<Element>> = Vec::new();
    for _ in 0..2 * sig.h() {
        slots.push(all.clone());
    }
    for &n in &periods {
        slots.push(
            all.iter()
                .copied()
                .filter(|&x| g.element_order(x) == n)
                .collect(),
        );
    }
    let mut chosen = Vec::with_capacity(slots.len());
    fn go(g: &FiniteGroup, h: usize, slots: &[Vec<Element>], chosen: &mut Vec<Element>) -> bool {
        if chosen.len() == slots.len() {
            let mut prod = g.identity();
            for i in 0..h {
                let (a, b) = (chosen[2 * i], chosen[2 * i + 1]);
                let comm = g.product([g.inv(a), g.inv(b), a, b]);
                prod = g.mul(prod, comm);
            }
            for &c in &chosen[2 * h..] {
                prod = g.mul(prod, c);
            }
            return prod == g.identity() && closure_size(g, chosen) == g.order();
        }
        for &x in &slots[chosen.len()] {
            chosen.push(x);
            if go(g, h, slots, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(g, sig.h() as usize, &slots, &mut chosen)
}

/// Multisets of size `r` drawn from `periods`.
fn multisets(periods: &[u32], r: usize) -> Vec<Vec<u32>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &p) in periods.iter().enumerate() {
        for mut rest in multisets(&periods[i..], r - 1) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

fn small_groups() -> Vec<std::sync::Arc<FiniteGroup>> {
    let catalog = Catalog::load_default().unwrap();
    (2..=12)
        .flat_map(|n| {
            let slice = catalog.groups_of_order(n);
            assert!(slice.complete, "order {n}");
            slice.groups
        })
        .collect()
}

fn signatures_for(g: &FiniteGroup, max_h: u32, max_r: usize) -> Vec<Signature> {
    let periods: Vec<u32> = g
        .order_histogram()
        .into_iter()
        .map(|(n, _)| n)
        .filter(|&n| (2..=8).contains(&n))
        .collect();
    let mut out = Vec::new();
    for h in 0..=max_h {
        for r in 0..=max_r {
            for ms in multisets(&periods, r) {
                out.push(Signature::from_periods(h, &ms).unwrap());
            }
        }
    }
    out
}

#[test]
fn search_agrees_with_naive_tuples() {
    let mut checked = 0;
    let mut positive = 0;
    for g in small_groups() {
        for sig in signatures_for(&g, 1, 4) {
            let expected = naive_exists(&g, &sig);
            let got = exists_generating_vector(&g, &sig).unwrap();
            assert_eq!(got.exists(), expected, "{} {sig}", g.name());
            if let Some(v) = got.witness() {
                assert_eq!(verify_generating_vector(&g, &sig, v), Ok(true));
                positive += 1;
            }
            checked += 1;
        }
    }
    assert!(
        checked > 800 && positive > 250,
        "{checked} checked, {positive} positive"
    );
}

#[test]
fn existence_is_independent_of_commutator_convention() {
    let reversed = SearchOptions {
        convention: CommutatorConvention::Reversed,
        ..Default::default()
    };
    for g in small_groups() {
        for sig in signatures_for(&g, 2, 3) {
            let a = exists_generating_vector(&g, &sig).unwrap();
            let b = exists_with_options(&g, &sig, reversed).unwrap();
            assert_eq!(a.exists(), b.exists(), "{} {sig}", g.name());
            if let Some(v) = b.witness() {
                assert_eq!(
                    verify_with_convention(&g, &sig, v, CommutatorConvention::Reversed),
                    Ok(true)
                );
            }
        }
    }
}

#[test]
fn tiny_budget_reports_exhaustion_not_absence() {
    let catalog = Catalog::load_default().unwrap();
    let g = catalog.resolve("D6").unwrap();
    let sig: Signature = "(1; [2,2])".parse().unwrap();
    let opts = SearchOptions {
        budget: 1,
        ..Default::default()
    };
    assert!(exists_with_options(&g, &sig, opts).is_err());
}

#[test]
fn harvey_rule_matches_naive_tuples_on_c4() {
    use skelsig::criteria::{harvey_c4, harvey_c4_as_stated};
    use skelsig::signatures::rh_integral_genus;
    use skelsig::transforms::C4Signature;

    let c4 = skelsig::atlas::c4_group();
    let mut literal_mismatches = Vec::new();
    for h in 0..=2 {
        for t1 in 0..=5 {
            for t2 in 0..=4 {
                let sig = C4Signature::new(h, t1, t2).to_signature();
                if rh_integral_genus(4, &sig).is_none() {
                    continue;
                }
                let truth = naive_exists(&c4, &sig);
                assert_eq!(harvey_c4(&sig), Ok(truth), "{sig}");
                if harvey_c4_as_stated(&sig) != Ok(truth) {
                    literal_mismatches.push(sig.to_string());
                }
            }
        }
    }
    // the literal rule accepts (h; [2,t1]) with h ≥ 1 and t1 odd
    assert_eq!(
        literal_mismatches,
        [
            "(1; [2,1])",
            "(1; [2,3])",
            "(1; [2,5])",
            "(2; [2,1])",
            "(2; [2,3])",
            "(2; [2,5])"
        ]
    );
}
