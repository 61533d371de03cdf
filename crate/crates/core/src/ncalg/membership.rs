//! Two-sided ideal membership with explicit witnesses.
//!
//! The engine runs a noncommutative Buchberger completion (length-lex order)
//! truncated at a word-length bound, recording for every basis element how it
//! was obtained from the defining relations. A target that reduces to zero
//! yields a witness `Σ c · u · r_i · v` that re-expands to it exactly.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use num_traits::{One, Zero};

use super::{GenSymbol, NCPoly, Presentation, Word};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// Default cap on reduction steps for one engine.
pub const DEFAULT_STEP_BUDGET: usize = 2_000_000;

/// Step budget from `PRG_WORD_BUDGET`, falling back to [`DEFAULT_STEP_BUDGET`].
pub fn budget_from_env() -> usize {
    std::env::var("PRG_WORD_BUDGET").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_STEP_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTerm {
    pub coeff: Scalar,
    pub left: Word,
    pub relation: usize,
    pub right: Word,
}

/// `Σ coeff · left · relations[relation] · right`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MembershipWitness {
    pub terms: Vec<WitnessTerm>,
}

impl MembershipWitness {
    pub fn expand(&self, relations: &[NCPoly]) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for t in &self.terms {
            let r =
                relations.get(t.relation).ok_or_else(|| Error::OutOfRange(format!("relation index {}", t.relation)))?;
            out.add_scaled(&r.sandwich(&t.left, &t.right), &t.coeff);
        }
        Ok(out)
    }

    pub fn verifies(&self, target: &NCPoly, relations: &[NCPoly]) -> bool {
        self.expand(relations).map(|p| &p == target).unwrap_or(false)
    }

    /// Longest single-factor segment among the words `left · w · right`.
    pub fn max_segment_len(&self, relations: &[NCPoly]) -> usize {
        self.terms
            .iter()
            .flat_map(|t| {
                relations[t.relation]
                    .terms()
                    .map(|(w, _)| t.left.concat(w).concat(&t.right).normalized().segment_length())
                    .collect::<Vec<_>>()
            })
            .max()
            .unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A model in which the relations hold; a target that evaluates to a nonzero
/// value there is not in the ideal.
pub trait Falsifier {
    fn name(&self) -> String;
    /// `Some(true)` when `target` is provably outside the ideal, `Some(false)`
    /// when it vanishes in the model, `None` when the model does not apply.
    fn refutes(&self, target: &NCPoly) -> Option<bool>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member { witness: MembershipWitness, bound: usize },
    Refuted { reason: String },
    Unknown { bound: usize },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Coefficients `c` with `target = Σ c_i r_i`, if any.
pub fn span_membership(target: &NCPoly, relations: &[NCPoly]) -> Option<MembershipWitness> {
    if target.is_zero() {
        return Some(MembershipWitness::default());
    }
    let mut rows: BTreeMap<&Word, usize> = BTreeMap::new();
    for p in relations.iter().chain(std::iter::once(target)) {
        for (w, _) in p.terms() {
            let n = rows.len();
            rows.entry(w).or_insert(n);
        }
    }
    let overlaps = relations.iter().any(|r| r.terms().any(|(w, _)| !target.coeff(w).is_zero()));
    if !overlaps {
        return None;
    }
    let mut m = Matrix::zeros(rows.len(), relations.len());
    for (j, r) in relations.iter().enumerate() {
        for (w, c) in r.terms() {
            m.set(rows[w], j, c.clone());
        }
    }
    let mut b = Matrix::zeros(rows.len(), 1);
    for (w, c) in target.terms() {
        b.set(rows[w], 0, c.clone());
    }
    let sol = m.solve(&b).ok()??;
    let terms = (0..relations.len())
        .filter(|&j| !sol.get(j, 0).is_zero())
        .map(|j| WitnessTerm { coeff: sol.get(j, 0).clone(), left: Word::empty(), relation: j, right: Word::empty() })
        .collect();
    Some(MembershipWitness { terms })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Source {
    Relation(usize),
    Element(usize),
}

#[derive(Debug, Clone)]
struct Step {
    coeff: Scalar,
    left: Word,
    source: Source,
    right: Word,
}

#[derive(Debug, Clone)]
struct Element {
    poly: NCPoly,
    lead: Word,
    deriv: Vec<Step>,
    active: bool,
}

/// An overlap `lead(i)[..] = lead(j)[..]` of length `k`, keyed by the length
/// of the overlap word so that short S-polynomials are processed first.
type Pair = (usize, usize, usize, usize);

type Flat = BTreeMap<(Word, usize, Word), Scalar>;

/// Truncated Gröbner basis of the ideal of one presentation, grown on demand.
pub struct IdealEngine {
    relations: Vec<NCPoly>,
    elems: Vec<Element>,
    index: HashMap<Option<GenSymbol>, Vec<usize>>,
    bound: usize,
    queue: BTreeSet<Pair>,
    deferred: BTreeSet<Pair>,
    seeded: bool,
    steps: usize,
    budget: usize,
    flat: HashMap<usize, Rc<Flat>>,
}

impl IdealEngine {
    pub fn new(pres: &Presentation, budget: usize) -> Self {
        Self::from_relations(pres.relations().to_vec(), budget)
    }

    pub fn from_relations(relations: Vec<NCPoly>, budget: usize) -> Self {
        Self {
            relations,
            elems: Vec::new(),
            index: HashMap::new(),
            bound: 0,
            queue: BTreeSet::new(),
            deferred: BTreeSet::new(),
            seeded: false,
            steps: 0,
            budget,
            flat: HashMap::new(),
        }
    }

    pub fn relations(&self) -> &[NCPoly] {
        &self.relations
    }

    /// Reduction steps spent so far.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn basis_size(&self) -> usize {
        self.elems.iter().filter(|e| e.active).count()
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                what: format!("ideal completion at length {}", self.bound),
            });
        }
        Ok(())
    }

    fn find_divisor(&self, w: &Word) -> Option<(usize, usize)> {
        if let Some(g) = self.index.get(&None).and_then(|v| v.first()) {
            return Some((*g, 0));
        }
        let syms = w.symbols();
        for pos in 0..syms.len() {
            let Some(cands) = self.index.get(&Some(syms[pos])) else { continue };
            for &g in cands {
                let lead = self.elems[g].lead.symbols();
                if syms[pos..].starts_with(lead) {
                    return Some((g, pos));
                }
            }
        }
        None
    }

    /// Full reduction. Returns the remainder and the steps `c · u · g · v`
    /// with `p = remainder + Σ steps`.
    fn reduce(&mut self, p: &NCPoly) -> Result<(NCPoly, Vec<Step>)> {
        let mut work = p.clone();
        let mut rem = NCPoly::zero();
        let mut steps = Vec::new();
        while let Some((w, c)) = work.pop_leading() {
            self.tick()?;
            match self.find_divisor(&w) {
                Some((g, pos)) => {
                    let el = &self.elems[g];
                    let left = w.slice(0, pos);
                    let right = w.slice(pos + el.lead.len(), w.len());
                    for (t, d) in el.poly.terms() {
                        if *t != el.lead {
                            work.add_term(left.concat(t).concat(&right), -(&c * d));
                        }
                    }
                    steps.push(Step { coeff: c, left, source: Source::Element(g), right });
                }
                None => rem.add_term(w, c),
            }
        }
        Ok((rem, steps))
    }

    fn add_element(&mut self, p: NCPoly, deriv: Vec<Step>) -> Result<()> {
        let mut pending = vec![(p, deriv)];
        while let Some((p, mut deriv)) = pending.pop() {
            let (rem, steps) = self.reduce(&p)?;
            let Some((lead, lc)) = rem.leading().map(|(w, c)| (w.clone(), c.clone())) else {
                continue;
            };
            for s in steps {
                deriv.push(Step { coeff: -s.coeff, ..s });
            }
            let inv = lc.recip();
            let poly = rem.scale(&inv);
            for s in &mut deriv {
                s.coeff *= &inv;
            }
            let g = self.elems.len();
            // Older elements whose leading word contains the new one are retired
            // and re-inserted after reduction.
            for h in 0..g {
                if self.elems[h].active && self.elems[h].lead.find(&lead).is_some() {
                    self.elems[h].active = false;
                    let key = self.elems[h].lead.symbols().first().copied();
                    if let Some(v) = self.index.get_mut(&key) {
                        v.retain(|&x| x != h);
                    }
                    let step = Step {
                        coeff: Scalar::one(),
                        left: Word::empty(),
                        source: Source::Element(h),
                        right: Word::empty(),
                    };
                    pending.push((self.elems[h].poly.clone(), vec![step]));
                }
            }
            self.elems.push(Element { poly, lead: lead.clone(), deriv, active: true });
            self.index.entry(lead.symbols().first().copied()).or_default().push(g);
            for h in 0..=g {
                if self.elems[h].active {
                    self.add_pairs(g, h);
                    if h != g {
                        self.add_pairs(h, g);
                    }
                }
            }
        }
        Ok(())
    }

    fn add_pairs(&mut self, i: usize, j: usize) {
        let li = self.elems[i].lead.symbols();
        let lj = self.elems[j].lead.symbols();
        let max_k = li.len().min(lj.len()).saturating_sub(1);
        for k in 1..=max_k {
            if li[li.len() - k..] == lj[..k] {
                let len = li.len() + lj.len() - k;
                let pair = (len, i, j, k);
                if len <= self.bound {
                    self.queue.insert(pair);
                } else {
                    self.deferred.insert(pair);
                }
            }
        }
    }

    fn process_pair(&mut self, (_, i, j, k): Pair) -> Result<()> {
        if !self.elems[i].active || !self.elems[j].active {
            return Ok(());
        }
        self.tick()?;
        let li = &self.elems[i].lead;
        let lj = &self.elems[j].lead;
        let u = li.slice(0, li.len() - k);
        let v = lj.slice(k, lj.len());
        let mut s = self.elems[i].poly.sandwich(&Word::empty(), &v);
        s.add_scaled(&self.elems[j].poly.sandwich(&u, &Word::empty()), &-Scalar::one());
        let deriv = vec![
            Step { coeff: Scalar::one(), left: Word::empty(), source: Source::Element(i), right: v },
            Step { coeff: -Scalar::one(), left: u, source: Source::Element(j), right: Word::empty() },
        ];
        self.add_element(s, deriv)
    }

    /// Completes the basis on all overlaps of length at most `bound`.
    pub fn extend_to(&mut self, bound: usize) -> Result<()> {
        if bound > self.bound {
            self.bound = bound;
            let ready: Vec<Pair> = self.deferred.iter().filter(|p| p.0 <= bound).copied().collect();
            for p in ready {
                self.deferred.remove(&p);
                self.queue.insert(p);
            }
        }
        if !self.seeded {
            self.seeded = true;
            for i in 0..self.relations.len() {
                let step = Step {
                    coeff: Scalar::one(),
                    left: Word::empty(),
                    source: Source::Relation(i),
                    right: Word::empty(),
                };
                self.add_element(self.relations[i].clone(), vec![step])?;
            }
        }
        while let Some(p) = self.queue.pop_first() {
            self.process_pair(p)?;
        }
        Ok(())
    }

    fn flatten(&mut self, g: usize) -> Rc<Flat> {
        if let Some(f) = self.flat.get(&g) {
            return f.clone();
        }
        // Iterative post-order over the derivation DAG.
        let mut stack = vec![(g, false)];
        while let Some((e, ready)) = stack.pop() {
            if self.flat.contains_key(&e) {
                continue;
            }
            if !ready {
                stack.push((e, true));
                for s in &self.elems[e].deriv {
                    if let Source::Element(h) = s.source {
                        if !self.flat.contains_key(&h) {
                            stack.push((h, false));
                        }
                    }
                }
                continue;
            }
            let mut out = Flat::new();
            for s in &self.elems[e].deriv {
                match s.source {
                    Source::Relation(r) => accumulate(&mut out, &s.left, r, &s.right, &s.coeff),
                    Source::Element(h) => {
                        for ((l, r, rt), c) in self.flat[&h].iter() {
                            accumulate(&mut out, &s.left.concat(l), *r, &rt.concat(&s.right), &(c * &s.coeff));
                        }
                    }
                }
            }
            self.flat.insert(e, Rc::new(out));
        }
        self.flat[&g].clone()
    }

    fn witness_from(&mut self, steps: &[Step]) -> MembershipWitness {
        let mut out = Flat::new();
        for s in steps {
            if let Source::Element(g) = s.source {
                let f = self.flatten(g);
                for ((l, r, rt), c) in f.iter() {
                    accumulate(&mut out, &s.left.concat(l), *r, &rt.concat(&s.right), &(c * &s.coeff));
                }
            }
        }
        MembershipWitness {
            terms: out
                .into_iter()
                .map(|((left, relation, right), coeff)| WitnessTerm { coeff, left, relation, right })
                .collect(),
        }
    }

    /// Searches for a witness, deepening the truncation from the target's
    /// longest segment up to `bound`.
    pub fn decide(&mut self, target: &NCPoly, bound: usize) -> Result<Membership> {
        if target.is_zero() {
            return Ok(Membership::Member { witness: MembershipWitness::default(), bound: 0 });
        }
        let start = target.max_segment_len().max(1);
        for len in start..=bound {
            self.extend_to(len)?;
            let (rem, steps) = self.reduce(target)?;
            if rem.is_zero() {
                let witness = self.witness_from(&steps);
                debug_assert!(witness.verifies(target, &self.relations));
                let bound = witness.max_segment_len(&self.relations);
                return Ok(Membership::Member { witness, bound });
            }
        }
        Ok(Membership::Unknown { bound })
    }

    /// Normal form of `p` modulo the basis at the current truncation.
    pub fn normal_form(&mut self, p: &NCPoly) -> Result<NCPoly> {
        Ok(self.reduce(p)?.0)
    }
}

fn accumulate(out: &mut Flat, left: &Word, r: usize, right: &Word, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let key = (left.clone(), r, right.clone());
    let v = out.entry(key.clone()).or_insert_with(Scalar::zero);
    *v += c;
    if v.is_zero() {
        out.remove(&key);
    }
}

/// One-shot membership test with falsifiers consulted before the search.
pub fn ideal_membership(
    target: &NCPoly,
    pres: &Presentation,
    bound: usize,
    falsifiers: &[&dyn Falsifier],
) -> Result<Membership> {
    pres.check_symbols(target)?;
    let mut engine = IdealEngine::new(pres, budget_from_env());
    decide_with(&mut engine, target, bound, falsifiers)
}

/// [`IdealEngine::decide`] with a linear fast path and falsifiers.
pub fn decide_with(
    engine: &mut IdealEngine,
    target: &NCPoly,
    bound: usize,
    falsifiers: &[&dyn Falsifier],
) -> Result<Membership> {
    if let Some(witness) = span_membership(target, engine.relations()) {
        let bound = witness.max_segment_len(engine.relations());
        return Ok(Membership::Member { witness, bound });
    }
    if engine.relations().iter().all(NCPoly::is_zero) {
        return Ok(Membership::Refuted { reason: "nonzero element of a free algebra".into() });
    }
    for f in falsifiers {
        if f.refutes(target) == Some(true) {
            return Ok(Membership::Refuted { reason: format!("nonzero in {}", f.name()) });
        }
    }
    let (reduced, mut pre) = cancel_inverse_pairs(target, engine.relations());
    if !pre.is_empty() {
        let rest = match span_membership(&reduced, engine.relations()) {
            Some(w) => Some(w),
            None => match over_budget(engine.decide(&reduced, bound), bound)? {
                Membership::Member { witness, .. } => Some(witness),
                _ => None,
            },
        };
        if let Some(rest) = rest {
            pre.terms.extend(rest.terms);
            let used = pre.max_segment_len(engine.relations());
            if used <= bound {
                return Ok(Membership::Member { witness: pre, bound: used });
            }
        }
    }
    over_budget(engine.decide(target, bound), bound)
}

/// A spent step budget ends the search without a verdict.
fn over_budget(r: Result<Membership>, bound: usize) -> Result<Membership> {
    match r {
        Err(Error::BudgetExceeded { .. }) => Ok(Membership::Unknown { bound }),
        r => r,
    }
}

/// Rewrites `u·v → 1` inside every word of `target` for each relation of the
/// form `c·(u·v - 1)` with `u`, `v` single symbols. Returns the rewritten
/// element and the witness of the difference.
pub fn cancel_inverse_pairs(target: &NCPoly, relations: &[NCPoly]) -> (NCPoly, MembershipWitness) {
    let rules: Vec<(Word, usize, Scalar)> = relations
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            if r.len() != 2 {
                return None;
            }
            let mut terms = r.terms();
            let (w0, c0) = terms.next()?;
            let (w1, c1) = terms.next()?;
            (w0.is_empty() && w1.len() == 2 && (c0 + c1).is_zero()).then(|| (w1.clone(), i, c1.clone()))
        })
        .collect();
    let mut witness = MembershipWitness::default();
    if rules.is_empty() {
        return (target.clone(), witness);
    }
    let mut out = NCPoly::zero();
    for (w, c) in target.terms() {
        let mut w = w.clone();
        'rewrite: loop {
            for (pat, idx, lead) in &rules {
                if let Some(p) = w.find(pat) {
                    let left = w.slice(0, p);
                    let right = w.slice(p + 2, w.len());
                    witness.terms.push(WitnessTerm {
                        coeff: c / lead,
                        left: left.clone(),
                        relation: *idx,
                        right: right.clone(),
                    });
                    w = left.concat(&right);
                    continue 'rewrite;
                }
            }
            break;
        }
        out.add_term(w, c.clone());
    }
    (out, witness)
}
