//! Degree-truncated two-sided Gröbner completion in the free algebra.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use super::poly::NcPoly;
use super::word::{Letters, Word};
use crate::error::{Error, Result};

/// Longest run of degree-0 letters searched for before giving up.
const DEGREE_ZERO_CAP: usize = 64;

/// A rewriting rule `lead → tail`, read as the relation `lead − tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Word,
    pub tail: NcPoly,
}

impl Rule {
    pub fn relation(&self) -> NcPoly {
        &NcPoly::word(self.lead.clone()) - &self.tail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletionOptions {
    pub degree_bound: u32,
    /// Stop once this many rules have been created.
    pub max_rules: Option<usize>,
}

impl CompletionOptions {
    pub fn new(degree_bound: u32) -> Self {
        CompletionOptions {
            degree_bound,
            max_rules: None,
        }
    }
}

#[derive(Debug)]
pub struct RewritingSystem {
    degrees: Vec<u32>,
    rules: Vec<Rule>,
    degree_bound: u32,
    complete_to: u32,
    budget_hit: bool,
    index: HashMap<Letters, usize>,
    lead_lengths: Vec<usize>,
    fully_complete: OnceLock<bool>,
    degree_zero_run: OnceLock<Result<usize>>,
}

impl Clone for RewritingSystem {
    fn clone(&self) -> Self {
        RewritingSystem::assemble(
            self.degrees.clone(),
            self.rules.clone(),
            self.degree_bound,
            self.complete_to,
            self.budget_hit,
        )
    }
}

fn overlaps<'a>(a: &'a Word, b: &'a Word) -> impl Iterator<Item = usize> + 'a {
    // lengths k with suffix_k(a) == prefix_k(b), 0 < k < min(|a|, |b|)
    let (la, lb) = (a.letters(), b.letters());
    let max = la.len().min(lb.len());
    (1..max).filter(move |&k| la[la.len() - k..] == lb[..k])
}

impl RewritingSystem {
    fn assemble(
        degrees: Vec<u32>,
        rules: Vec<Rule>,
        degree_bound: u32,
        complete_to: u32,
        budget_hit: bool,
    ) -> Self {
        let index: HashMap<Letters, usize> = rules
            .iter()
            .enumerate()
            .map(|(i, r)| (Letters::from_slice(r.lead.letters()), i))
            .collect();
        let lead_lengths: BTreeSet<usize> = rules.iter().map(|r| r.lead.len()).collect();
        RewritingSystem {
            degrees,
            rules,
            degree_bound,
            complete_to,
            budget_hit,
            index,
            lead_lengths: lead_lengths.into_iter().collect(),
            fully_complete: OnceLock::new(),
            degree_zero_run: OnceLock::new(),
        }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Largest degree through which every overlap is known to resolve.
    pub fn complete_to(&self) -> u32 {
        self.complete_to
    }

    pub fn budget_exceeded(&self) -> bool {
        self.budget_hit
    }

    pub fn leads(&self) -> impl Iterator<Item = &Word> {
        self.rules.iter().map(|r| &r.lead)
    }

    fn find_lead(&self, letters: &[u16]) -> Option<(usize, usize)> {
        for start in 0..letters.len() {
            for &l in &self.lead_lengths {
                if start + l > letters.len() {
                    break;
                }
                if let Some(&r) = self.index.get(&letters[start..start + l]) {
                    return Some((start, r));
                }
            }
        }
        None
    }

    fn ends_with_lead(&self, letters: &[u16]) -> bool {
        self.lead_lengths.iter().any(|&l| {
            l <= letters.len() && self.index.contains_key(&letters[letters.len() - l..])
        })
    }

    /// True when `w` contains no leading word.
    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_lead(w.letters()).is_none()
    }

    /// Reduction without the truncation check.
    pub(crate) fn reduce(&self, p: &NcPoly) -> NcPoly {
        let mut work = p.clone();
        let mut out = NcPoly::zero();
        while let Some((w, c)) = work.pop_leading() {
            match self.find_lead(w.letters()) {
                None => out.add_term(w, &c),
                Some((start, r)) => {
                    let rule = &self.rules[r];
                    let left = w.slice(0, start, &self.degrees);
                    let right = w.slice(start + rule.lead.len(), w.len(), &self.degrees);
                    for (t, tc) in rule.tail.terms() {
                        work.add_term(t.sandwich(&left, &right), &(&c * tc));
                    }
                }
            }
        }
        out
    }

    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly> {
        if let Some(d) = p.max_degree() {
            if d > self.degree_bound {
                return Err(Error::Truncation {
                    degree: d,
                    bound: self.degree_bound,
                });
            }
        }
        Ok(self.reduce(p))
    }

    /// Whether every overlap, of any degree, resolves: then normal forms are
    /// valid in all degrees, not only up to the bound.
    pub fn is_fully_complete(&self) -> bool {
        *self.fully_complete.get_or_init(|| {
            if self.budget_hit || self.complete_to < self.degree_bound {
                return false;
            }
            for a in &self.rules {
                for b in &self.rules {
                    for k in overlaps(&a.lead, &b.lead) {
                        let u = b.lead.slice(k, b.lead.len(), &self.degrees);
                        let v = a.lead.slice(0, a.lead.len() - k, &self.degrees);
                        if a.lead.degree() + u.degree() <= self.degree_bound {
                            continue;
                        }
                        let s = &a.tail.sandwich(&Word::empty(), &u)
                            - &b.tail.sandwich(&v, &Word::empty());
                        if !self.reduce(&s).is_zero() {
                            return false;
                        }
                    }
                }
            }
            true
        })
    }

    /// Maximal length of a normal word built from degree-0 letters only.
    pub fn degree_zero_run(&self) -> Result<usize> {
        self.degree_zero_run
            .get_or_init(|| {
                let zero: Vec<u16> = (0..self.degrees.len() as u16)
                    .filter(|&l| self.degrees[l as usize] == 0)
                    .collect();
                if zero.is_empty() {
                    return Ok(0);
                }
                let mut frontier: Vec<Letters> = vec![Letters::new()];
                let mut len = 0;
                loop {
                    let mut next = Vec::new();
                    for w in &frontier {
                        for &l in &zero {
                            let mut v = w.clone();
                            v.push(l);
                            if !self.ends_with_lead(&v) {
                                next.push(v);
                            }
                        }
                    }
                    if next.is_empty() {
                        return Ok(len);
                    }
                    len += 1;
                    if len > DEGREE_ZERO_CAP {
                        return Err(Error::Unsupported(
                            "infinitely many normal words of degree 0".into(),
                        ));
                    }
                    frontier = next;
                }
            })
            .clone()
    }

    /// Degree-`n` words avoiding every leading word, in ascending order.
    pub fn normal_words(&self, n: u32) -> Result<Vec<Word>> {
        if n > self.degree_bound {
            return Err(Error::Truncation {
                degree: n,
                bound: self.degree_bound,
            });
        }
        if self.index.contains_key(&[][..]) {
            return Ok(Vec::new());
        }
        let run = self.degree_zero_run()?;
        let max_len = n as usize + (n as usize + 1) * run;
        let mut out = Vec::new();
        let mut stack = Letters::new();
        self.dfs(n, 0, max_len, &mut stack, &mut out);
        out.sort();
        Ok(out)
    }

    fn dfs(&self, n: u32, deg: u32, max_len: usize, stack: &mut Letters, out: &mut Vec<Word>) {
        if deg == n {
            out.push(Word::from_parts(deg, stack.clone()));
        }
        if stack.len() == max_len {
            return;
        }
        for l in 0..self.degrees.len() as u16 {
            let d = deg + self.degrees[l as usize];
            if d > n {
                continue;
            }
            stack.push(l);
            if !self.ends_with_lead(stack) {
                self.dfs(n, d, max_len, stack, out);
            }
            stack.pop();
        }
    }
}

/// Runs completion with degree bound `n`.
pub fn complete(relations: &[NcPoly], degrees: &[u32], n: u32) -> Result<RewritingSystem> {
    complete_with(relations, degrees, CompletionOptions::new(n))
}

pub fn complete_with(
    relations: &[NcPoly],
    degrees: &[u32],
    opts: CompletionOptions,
) -> Result<RewritingSystem> {
    let bound = opts.degree_bound;
    let mut pending: BTreeMap<(u32, Word, u64), NcPoly> = BTreeMap::new();
    let mut seq = 0u64;
    for r in relations {
        if r.is_zero() {
            continue;
        }
        let d = r.homogeneous_degree().ok_or_else(|| {
            Error::Presentation("relation is not homogeneous".to_string())
        })?;
        if d > bound {
            return Err(Error::Truncation { degree: d, bound });
        }
        let lead = r.leading().unwrap().0.clone();
        pending.insert((d, lead, seq), r.clone());
        seq += 1;
    }

    let mut rs = RewritingSystem::assemble(degrees.to_vec(), Vec::new(), bound, bound, false);
    let mut created = 0usize;
    while let Some(((d, _, _), p)) = pending.pop_first() {
        let r = rs.reduce(&p);
        if r.is_zero() {
            continue;
        }
        if let Some(max) = opts.max_rules {
            if created >= max {
                let rules = rs.rules;
                let complete_to = d.saturating_sub(1);
                return Ok(finish(degrees, rules, bound, complete_to, true));
            }
        }
        created += 1;
        let r = r.monic();
        let mut terms = r.into_terms().collect::<Vec<_>>();
        let (lead, _) = terms.pop().unwrap();
        let tail = NcPoly::from_terms(terms.into_iter().map(|(w, c)| (w, -c)));
        let new_rule = Rule { lead, tail };

        let mut kept = Vec::with_capacity(rs.rules.len() + 1);
        for old in std::mem::take(&mut rs.rules) {
            if contains_subword(old.lead.letters(), new_rule.lead.letters()) {
                let rel = old.relation();
                pending.insert((old.lead.degree(), old.lead.clone(), seq), rel);
                seq += 1;
            } else {
                kept.push(old);
            }
        }
        kept.push(new_rule);
        let a = kept.last().unwrap().clone();
        for b in &kept {
            for (x, y) in [(&a, b), (b, &a)] {
                for k in overlaps(&x.lead, &y.lead) {
                    let u = y.lead.slice(k, y.lead.len(), degrees);
                    let v = x.lead.slice(0, x.lead.len() - k, degrees);
                    let w = x.lead.concat(&u);
                    if w.degree() > bound {
                        continue;
                    }
                    let s = &x.tail.sandwich(&Word::empty(), &u)
                        - &y.tail.sandwich(&v, &Word::empty());
                    if !s.is_zero() {
                        pending.insert((w.degree(), w, seq), s);
                        seq += 1;
                    }
                }
                if std::ptr::eq(x, y) {
                    break;
                }
            }
        }
        rs = RewritingSystem::assemble(degrees.to_vec(), kept, bound, bound, false);
    }
    Ok(finish(degrees, rs.rules, bound, bound, false))
}

fn contains_subword(hay: &[u16], needle: &[u16]) -> bool {
    needle.is_empty()
        || (needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle))
}

/// Tail-reduces all rules and sorts them by leading word.
fn finish(
    degrees: &[u32],
    mut rules: Vec<Rule>,
    bound: u32,
    complete_to: u32,
    budget_hit: bool,
) -> RewritingSystem {
    rules.sort_by(|a, b| a.lead.cmp(&b.lead));
    let rs = RewritingSystem::assemble(degrees.to_vec(), rules.clone(), bound, complete_to, budget_hit);
    let reduced: Vec<Rule> = rules
        .into_iter()
        .map(|r| Rule {
            tail: rs.reduce(&r.tail),
            lead: r.lead,
        })
        .collect();
    RewritingSystem::assemble(degrees.to_vec(), reduced, bound, complete_to, budget_hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::CycloScalar;

    const D2: [u32; 2] = [1, 1];

    fn w(l: &[u16]) -> NcPoly {
        NcPoly::word(Word::new(l, &D2))
    }

    fn c(v: i64) -> CycloScalar {
        CycloScalar::from_i64(v)
    }

    fn down_up(alpha: i64, beta: i64) -> Vec<NcPoly> {
        // x = 0, y = 1
        let r1 = &(&w(&[0, 0, 1]) - &w(&[0, 1, 0]).scale(&c(alpha))) - &w(&[1, 0, 0]).scale(&c(beta));
        let r2 = &(&w(&[0, 1, 1]) - &w(&[1, 0, 1]).scale(&c(alpha))) - &w(&[1, 1, 0]).scale(&c(beta));
        vec![r1, r2]
    }

    #[test]
    fn commutative_plane_has_one_rule() {
        // precedence y > x: y = 0, x = 1, so the rule is yx -> xy
        let rs = complete(&[&w(&[0, 1]) - &w(&[1, 0])], &D2, 8).unwrap();
        assert_eq!(rs.rules().len(), 1);
        assert_eq!(rs.rules()[0].lead.letters(), &[0, 1]);
        assert_eq!(rs.rules()[0].tail, w(&[1, 0]));
        assert_eq!(rs.complete_to(), 8);
        assert!(rs.is_fully_complete());
        assert_eq!(rs.normal_words(3).unwrap().len(), 4);
    }

    #[test]
    fn skew_plane_normal_form() {
        let q = c(3);
        // y = 0, x = 1: yx - q xy
        let rel = &w(&[0, 1]) - &w(&[1, 0]).scale(&q);
        let rs = complete(&[rel], &D2, 6).unwrap();
        assert_eq!(rs.normal_form(&w(&[0, 1])).unwrap(), w(&[1, 0]).scale(&q));
    }

    #[test]
    fn down_up_rules_and_dims() {
        let rs = complete(&down_up(1, 1), &D2, 12).unwrap();
        let leads: Vec<_> = rs.leads().map(|l| l.letters().to_vec()).collect();
        assert_eq!(leads, vec![vec![0, 1, 1], vec![0, 0, 1]]);
        let dims: Vec<usize> = (0..=6).map(|n| rs.normal_words(n).unwrap().len()).collect();
        assert_eq!(dims, vec![1, 2, 4, 6, 9, 12, 16]);
        let p = rs.normal_form(&w(&[0, 0, 1])).unwrap();
        assert_eq!(p, &w(&[0, 1, 0]) + &w(&[1, 0, 0]));
    }

    #[test]
    fn nilpotent_square() {
        let rs = complete(&[w(&[0, 0])], &[1], 5).unwrap();
        assert_eq!(rs.rules().len(), 1);
        assert!(rs.rules()[0].tail.is_zero());
        assert_eq!(rs.complete_to(), 5);
    }

    #[test]
    fn free_algebra_words() {
        let rs = complete(&[], &D2, 5).unwrap();
        assert_eq!(rs.normal_words(5).unwrap().len(), 32);
    }

    #[test]
    fn truncation_errors() {
        let rs = complete(&[], &D2, 3).unwrap();
        assert!(matches!(rs.normal_words(4), Err(Error::Truncation { .. })));
        assert!(rs.normal_form(&w(&[0, 0, 0, 0])).is_err());
    }

    #[test]
    fn inhomogeneous_rejected() {
        let rel = &w(&[0, 0]) - &w(&[1]);
        assert!(matches!(complete(&[rel], &D2, 4), Err(Error::Presentation(_))));
    }

    #[test]
    fn budget_lowers_complete_to() {
        // x y x - y x y generates infinitely many rules
        let rel = &w(&[0, 1, 0]) - &w(&[1, 0, 1]);
        let full = complete(&[rel.clone()], &D2, 8).unwrap();
        let opts = CompletionOptions {
            degree_bound: 8,
            max_rules: Some(1),
        };
        let cut = complete_with(&[rel], &D2, opts).unwrap();
        assert!(full.rules().len() > 1);
        assert!(cut.budget_exceeded());
        assert!(cut.complete_to() < 8);
    }
}
