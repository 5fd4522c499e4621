//! P-morphisms ("reductions") between finite transitive frames: validation,
//! backtracking search, reducibility matrices, and irreducibility audits of
//! frame sequences.
//!
//! A reduction is a total map that is surjective, preserves the relation
//! forward (forth) and reflects it backward (back). The search assigns
//! source points in decreasing-rank order and keeps per-point candidate
//! masks arc-consistent, so impossibility is usually detected long before
//! the exponential tail of the naive search space.

use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

use crate::budget::Budget;
use crate::formula::{satisfiable_at, FormulaError, FrameFormulaSpec};
use crate::frame::{bits, Frame, FrameError, PointId};

/// Errors from reduction construction and search.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("search budget of {limit} node expansions exhausted")]
    BudgetExceeded { limit: u64 },
    #[error("map assigns {0} source points, source frame has {1}")]
    NotTotal(usize, usize),
    #[error("composition mismatch: first map's target differs from second map's source")]
    ComposeMismatch,
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// First condition a candidate map violates, with witnessing points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionViolation {
    /// No source point maps onto this target point.
    NotSurjective { missed: PointId },
    /// R w u in the source but the images are unrelated.
    Forth { w: PointId, u: PointId },
    /// The image of w sees v, but no successor of w maps onto v.
    Back { w: PointId, v: PointId },
}

/// A total map between the points of two frames, candidate or verified
/// reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    source: Frame,
    target: Frame,
    map: Vec<PointId>,
}

impl ReductionMap {
    /// Wrap a total map given as `map[source index] = target point`.
    pub fn new(source: Frame, target: Frame, map: Vec<PointId>) -> Result<Self, ReductionError> {
        if map.len() != source.len() {
            return Err(ReductionError::NotTotal(map.len(), source.len()));
        }
        for &t in &map {
            if t.index() >= target.len() {
                return Err(FrameError::UnknownPoint(format!("target index {}", t.index())).into());
            }
        }
        Ok(ReductionMap { source, target, map })
    }

    /// The identity map on a frame.
    pub fn identity(frame: &Frame) -> Self {
        ReductionMap {
            source: frame.clone(),
            target: frame.clone(),
            map: frame.points().collect(),
        }
    }

    /// Build from name pairs, e.g. parsed witness JSON.
    pub fn from_names(
        source: Frame,
        target: Frame,
        pairs: &BTreeMap<String, String>,
    ) -> Result<Self, ReductionError> {
        let mut map = Vec::with_capacity(source.len());
        for name in source.names() {
            let image = pairs
                .get(name)
                .ok_or_else(|| FrameError::UnknownPoint(name.clone()))?;
            map.push(target.point(image)?);
        }
        Self::new(source, target, map)
    }

    pub fn source(&self) -> &Frame {
        &self.source
    }

    pub fn target(&self) -> &Frame {
        &self.target
    }

    /// Image of a source point.
    pub fn apply(&self, w: PointId) -> PointId {
        self.map[w.index()]
    }

    /// The map as source name → target name pairs.
    pub fn to_name_pairs(&self) -> BTreeMap<String, String> {
        self.source
            .names()
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), self.target.name(self.map[i]).to_owned()))
            .collect()
    }

    /// Check surjectivity, then forth, then back; `None` means the map is a
    /// reduction. The reported violation is the first in that order, with
    /// witnesses least in point order.
    pub fn check(&self) -> Option<ReductionViolation> {
        let mut covered = 0u64;
        for &t in &self.map {
            covered |= 1u64 << t.index();
        }
        let missing = self.target.all_mask() & !covered;
        if missing != 0 {
            return Some(ReductionViolation::NotSurjective {
                missed: PointId(missing.trailing_zeros()),
            });
        }
        for w in self.source.points() {
            for u in bits(self.source.succ_mask(w.index())) {
                let u = PointId(u as u32);
                if !self.target.sees(self.apply(w), self.apply(u)) {
                    return Some(ReductionViolation::Forth { w, u });
                }
            }
        }
        for w in self.source.points() {
            'targets: for v in bits(self.target.succ_mask(self.apply(w).index())) {
                let v = PointId(v as u32);
                for u in bits(self.source.succ_mask(w.index())) {
                    if self.apply(PointId(u as u32)) == v {
                        continue 'targets;
                    }
                }
                return Some(ReductionViolation::Back { w, v });
            }
        }
        None
    }

    pub fn is_reduction(&self) -> bool {
        self.check().is_none()
    }

    /// Compose two reductions F→G and G→H into F→H.
    pub fn compose(first: &ReductionMap, second: &ReductionMap) -> Result<ReductionMap, ReductionError> {
        if first.target != second.source {
            return Err(ReductionError::ComposeMismatch);
        }
        let map = first.map.iter().map(|&mid| second.apply(mid)).collect();
        ReductionMap::new(first.source.clone(), second.target.clone(), map)
    }
}

/// The structural necessities a reduction must satisfy pointwise: dead ends
/// map exactly onto dead ends, and images never gain rank.
pub fn rank_fact_holds(map: &ReductionMap) -> bool {
    let s_ranks: Vec<u32> = map.source().points().map(|w| map.source().rank_of(w)).collect();
    let t_ranks: Vec<u32> = map.target().points().map(|t| map.target().rank_of(t)).collect();
    map.source().points().all(|w| {
        let t = map.apply(w);
        let dead_w = map.source().succ_mask(w.index()) == 0;
        let dead_t = map.target().succ_mask(t.index()) == 0;
        dead_w == dead_t && t_ranks[t.index()] <= s_ranks[w.index()]
    })
}

struct Search<'a> {
    source: &'a Frame,
    target: &'a Frame,
    /// Source points in assignment order: decreasing rank, then point order.
    order: Vec<usize>,
    /// Predecessor masks of target points, precomputed.
    t_preds: Vec<u64>,
    t_all: u64,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    /// Depth-first search over assignments. `domains[x]` is the candidate
    /// mask for source point x; assigned points hold the singleton of their
    /// image, so union checks treat both uniformly. Returns the map of the
    /// first solution in search order.
    fn go(&mut self, depth: usize, domains: &[u64], covered: u64) -> Result<Option<Vec<PointId>>, ReductionError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(ReductionError::BudgetExceeded { limit: self.limit });
        }
        if depth == self.order.len() {
            let map = (0..self.source.len())
                .map(|x| PointId(domains[x].trailing_zeros()))
                .collect();
            return Ok(Some(map));
        }
        let w = self.order[depth];
        let assigned_mask: u64 = self.order[..depth].iter().fold(0, |m, &x| m | (1u64 << x));
        for t in bits(domains[w]) {
            let mut next: Vec<u64> = domains.to_vec();
            next[w] = 1u64 << t;
            if self.propagate(w, t, &mut next, assigned_mask) {
                let next_covered = covered | (1u64 << t);
                if self.feasible(depth, &next, next_covered, assigned_mask | (1u64 << w)) {
                    if let Some(found) = self.go(depth + 1, &next, next_covered)? {
                        return Ok(Some(found));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Forth arc-consistency: once f(w)=t, every successor of w must land in
    /// t's successors and every predecessor in t's predecessors. Returns
    /// false if some candidate mask empties.
    fn propagate(&self, w: usize, t: usize, domains: &mut [u64], assigned: u64) -> bool {
        for x in 0..self.source.len() {
            if x == w || assigned >> x & 1 == 1 {
                continue;
            }
            if self.source.succ_mask(w) >> x & 1 == 1 {
                domains[x] &= self.target.succ_mask(t);
            }
            if self.source.succ_mask(x) >> w & 1 == 1 {
                domains[x] &= self.t_preds[t];
            }
            if domains[x] == 0 {
                return false;
            }
        }
        true
    }

    /// Cheap global prunes: surjectivity must stay reachable, and no
    /// assigned point may have an image successor that neither a known nor a
    /// possible image of its successors can witness (the back condition).
    fn feasible(&self, depth: usize, domains: &[u64], covered: u64, assigned: u64) -> bool {
        let needed = self.t_all & !covered;
        let unassigned = self.source.len() - (depth + 1);
        if needed.count_ones() as usize > unassigned {
            return false;
        }
        let mut reachable = covered;
        for x in 0..self.source.len() {
            if assigned >> x & 1 == 0 {
                reachable |= domains[x];
            }
        }
        if self.t_all & !reachable != 0 {
            return false;
        }
        for w in bits(assigned) {
            let image = domains[w].trailing_zeros() as usize;
            let mut witnessable = 0u64;
            for u in bits(self.source.succ_mask(w)) {
                witnessable |= domains[u];
            }
            if self.target.succ_mask(image) & !witnessable != 0 {
                return false;
            }
        }
        true
    }
}

/// Search for a reduction from `source` onto `target`.
///
/// Deterministic: source points are assigned in decreasing-rank order
/// (ties by point order) and candidate images are tried in point order;
/// the first reduction in that order is returned. `Ok(None)` is a definite
/// "no reduction exists"; exhausting the node budget is an error instead.
pub fn find_reduction(
    source: &Frame,
    target: &Frame,
    budget: &Budget,
) -> Result<Option<ReductionMap>, ReductionError> {
    if target.len() > source.len() {
        return Ok(None); // no surjection at all
    }
    let s_ranks: Vec<u32> = source.points().map(|w| source.rank_of(w)).collect();
    let t_ranks: Vec<u32> = target.points().map(|t| target.rank_of(t)).collect();

    // Static candidate domains from pointwise necessities.
    let mut domains = vec![0u64; source.len()];
    for w in 0..source.len() {
        let dead_w = source.succ_mask(w) == 0;
        let refl_w = source.succ_mask(w) >> w & 1 == 1;
        for t in 0..target.len() {
            let dead_t = target.succ_mask(t) == 0;
            let refl_t = target.succ_mask(t) >> t & 1 == 1;
            let upset_fits = target.succ_mask(t).count_ones() <= source.succ_mask(w).count_ones();
            if t_ranks[t] <= s_ranks[w] && dead_t == dead_w && upset_fits && (!refl_w || refl_t) {
                domains[w] |= 1u64 << t;
            }
        }
        if domains[w] == 0 {
            return Ok(None);
        }
    }

    let mut order: Vec<usize> = (0..source.len()).collect();
    order.sort_by_key(|&w| (std::cmp::Reverse(s_ranks[w]), w));

    let t_preds = (0..target.len()).map(|t| target.pred_mask(t)).collect();
    let mut search = Search {
        source,
        target,
        order,
        t_preds,
        t_all: target.all_mask(),
        nodes: 0,
        limit: budget.search_nodes,
    };
    match search.go(0, &domains, 0)? {
        None => Ok(None),
        Some(map) => {
            let found = ReductionMap::new(source.clone(), target.clone(), map)?;
            debug_assert!(found.is_reduction(), "search returned a non-reduction");
            debug_assert!(rank_fact_holds(&found));
            Ok(Some(found))
        }
    }
}

/// Outcome of asking whether some point-generated subframe of one frame
/// reduces onto another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubframeOutcome {
    /// Witness: the subframe generated by `generator` reduces via `map`.
    Reducible { generator: PointId, map: ReductionMap },
    Irreducible,
    /// At least one generator's search ran out of budget and none succeeded.
    BudgetExceeded,
}

impl SubframeOutcome {
    pub fn is_reducible(&self) -> bool {
        matches!(self, SubframeOutcome::Reducible { .. })
    }
}

/// Does some point-generated subframe of `big` reduce onto `target`?
/// Generators are tried in point order; the first witness wins.
pub fn generated_reduction(big: &Frame, target: &Frame, budget: &Budget) -> SubframeOutcome {
    let mut budget_hit = false;
    for w in big.points() {
        let sub = big
            .generated_subframe(&[w])
            .expect("singleton generator is never empty");
        if sub.len() < target.len() {
            continue;
        }
        match find_reduction(&sub, target, budget) {
            Ok(Some(map)) => return SubframeOutcome::Reducible { generator: w, map },
            Ok(None) => {}
            Err(ReductionError::BudgetExceeded { .. }) => budget_hit = true,
            Err(other) => unreachable!("search on valid frames cannot fail otherwise: {other}"),
        }
    }
    if budget_hit {
        SubframeOutcome::BudgetExceeded
    } else {
        SubframeOutcome::Irreducible
    }
}

/// Matrix entry (i, j): is some point-generated subframe of `frames[j]`
/// reducible to `frames[i]`? Rows are computed in parallel.
pub fn reducibility_matrix(frames: &[Frame], budget: &Budget) -> Vec<Vec<SubframeOutcome>> {
    frames
        .par_iter()
        .map(|target| {
            frames
                .iter()
                .map(|big| generated_reduction(big, target, budget))
                .collect()
        })
        .collect()
}

/// Which ordered pairs an audit covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditMode {
    /// Pairs i < j: later frames must not collapse onto earlier ones.
    Backward,
    /// All pairs i ≠ j.
    Full,
}

/// Failure witness: the subframe of `frames[j]` generated by `generator`
/// reduces onto `frames[i]` via `map`.
#[derive(Debug, Clone)]
pub struct AuditWitness {
    pub i: usize,
    pub j: usize,
    pub generator: PointId,
    pub map: ReductionMap,
}

#[derive(Debug, Clone)]
pub enum AuditVerdict {
    /// No covered pair admits a reduction.
    Pass,
    /// Some pair does; the witness replays.
    Fail(AuditWitness),
    /// No reduction found, but budget-limited searches leave gaps.
    Unknown,
}

#[derive(Debug, Clone)]
pub struct SequenceAudit {
    pub mode: AuditMode,
    pub verdict: AuditVerdict,
    /// Pairs whose searches exhausted the budget.
    pub inconclusive: Vec<(usize, usize)>,
}

/// Audit a frame sequence for (backward) irreducibility. Pairs are checked
/// in lexicographic order; on failure the first failing pair is reported.
pub fn audit_sequence(frames: &[Frame], mode: AuditMode, budget: &Budget) -> SequenceAudit {
    let mut pairs = Vec::new();
    for i in 0..frames.len() {
        for j in 0..frames.len() {
            let covered = match mode {
                AuditMode::Backward => i < j,
                AuditMode::Full => i != j,
            };
            if covered {
                pairs.push((i, j));
            }
        }
    }
    let outcomes: Vec<SubframeOutcome> = pairs
        .par_iter()
        .map(|&(i, j)| generated_reduction(&frames[j], &frames[i], budget))
        .collect();

    let mut inconclusive = Vec::new();
    let mut witness = None;
    for (&(i, j), outcome) in pairs.iter().zip(&outcomes) {
        match outcome {
            SubframeOutcome::Reducible { generator, map } if witness.is_none() => {
                witness = Some(AuditWitness { i, j, generator: *generator, map: map.clone() });
            }
            SubframeOutcome::BudgetExceeded => inconclusive.push((i, j)),
            _ => {}
        }
    }
    let verdict = match witness {
        Some(w) => AuditVerdict::Fail(w),
        None if inconclusive.is_empty() => AuditVerdict::Pass,
        None => AuditVerdict::Unknown,
    };
    SequenceAudit { mode, verdict, inconclusive }
}

/// Both sides of the frame-formula duality, computed independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossCheck {
    /// Is the frame formula of F satisfiable in G at u? (valuation search)
    pub satisfiable: bool,
    /// Is G|_u reducible to F? (reduction search)
    pub reducible: bool,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.satisfiable == self.reducible
    }
}

/// Decide "φ_F is satisfiable in G at u" and "G|_u reduces to F" separately;
/// the two verdicts agreeing is the tested duality.
pub fn crosscheck_frame_formula(
    f: &Frame,
    g: &Frame,
    u: PointId,
    budget: &Budget,
) -> Result<CrossCheck, ReductionError> {
    let spec = FrameFormulaSpec::canonical(f.clone())?;
    let satisfiable = satisfiable_at(g, u, &spec.formula(), budget)?.is_some();
    let sub = g.generated_subframe(&[u])?;
    let reducible = find_reduction(&sub, f, budget)?.is_some();
    Ok(CrossCheck { satisfiable, reducible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn frame(points: &[&str], edges: &[(&str, &str)], close: bool) -> Frame {
        Frame::build(points.iter().map(|s| s.to_string()).collect(), edges, close).unwrap()
    }

    fn fork() -> Frame {
        frame(&["r", "u", "v"], &[("r", "u"), ("r", "v")], false)
    }

    fn chain(k: usize) -> Frame {
        let points: Vec<&str> = ["x0", "x1", "x2", "x3"][..k].to_vec();
        let edges: Vec<(&str, &str)> = (0..k - 1).map(|i| (points[i], points[i + 1])).collect();
        Frame::build(points.iter().map(|s| s.to_string()).collect(), &edges, true).unwrap()
    }

    /// Complete reflexive graph on k points: one nondegenerate cluster.
    fn cluster(k: usize) -> Frame {
        let points: Vec<String> = (0..k).map(|i| format!("w{i}")).collect();
        let mut edges = Vec::new();
        for a in &points {
            for b in &points {
                edges.push((a.clone(), b.clone()));
            }
        }
        Frame::build(points, &edges, false).unwrap()
    }

    fn h(n: u32) -> Frame {
        // Small local copy of the witness family, enough for cross-module tests.
        let cs: Vec<u32> = (0..=n + 1).collect();
        let mut points = vec!["a".to_string()];
        let mut bs = Vec::new();
        for i in &cs {
            for j in &cs {
                if i < j {
                    points.push(format!("b{{{i},{j}}}"));
                    bs.push((*i, *j));
                }
            }
        }
        for k in &cs {
            points.push(format!("c{k}"));
        }
        let mut edges = Vec::new();
        for p in &points[1..] {
            edges.push(("a".to_string(), p.clone()));
        }
        for (i, j) in bs {
            edges.push((format!("b{{{i},{j}}}"), format!("c{i}")));
            edges.push((format!("b{{{i},{j}}}"), format!("c{j}")));
        }
        Frame::build(points, &edges, false).unwrap()
    }

    #[test]
    fn identity_is_a_reduction() {
        for f in [fork(), chain(3), cluster(2), h(1)] {
            let id = ReductionMap::identity(&f);
            assert_eq!(id.check(), None);
            assert!(rank_fact_holds(&id));
        }
    }

    #[test]
    fn cluster_collapse_is_a_reduction() {
        let two = cluster(2);
        let one = cluster(1);
        let map = ReductionMap::new(two, one.clone(), vec![PointId(0), PointId(0)]).unwrap();
        assert_eq!(map.check(), None);
    }

    #[test]
    fn chain_onto_irreflexive_point_fails_forth() {
        let two = chain(2);
        let single = frame(&["w"], &[], false);
        let map = ReductionMap::new(two.clone(), single, vec![PointId(0), PointId(0)]).unwrap();
        assert_eq!(
            map.check(),
            Some(ReductionViolation::Forth { w: two.point("x0").unwrap(), u: two.point("x1").unwrap() })
        );
    }

    #[test]
    fn surjectivity_is_checked_first() {
        let pair = frame(&["x", "y"], &[], false);
        let map = ReductionMap::new(pair.clone(), pair.clone(), vec![PointId(0), PointId(0)]).unwrap();
        assert_eq!(
            map.check(),
            Some(ReductionViolation::NotSurjective { missed: pair.point("y").unwrap() })
        );
    }

    #[test]
    fn back_condition_violation_is_reported() {
        let pair = frame(&["x", "y"], &[], false);
        let two = chain(2);
        let map = ReductionMap::new(pair.clone(), two.clone(), vec![PointId(0), PointId(1)]).unwrap();
        assert_eq!(
            map.check(),
            Some(ReductionViolation::Back { w: pair.point("x").unwrap(), v: two.point("x1").unwrap() })
        );
    }

    #[test]
    fn map_must_be_total_and_in_range() {
        let f = fork();
        assert_eq!(
            ReductionMap::new(f.clone(), f.clone(), vec![PointId(0)]).unwrap_err(),
            ReductionError::NotTotal(1, 3)
        );
        assert!(ReductionMap::new(f.clone(), cluster(1), vec![PointId(0); 3]).is_ok());
        assert!(ReductionMap::new(f.clone(), cluster(1), vec![PointId(7); 3]).is_err());
    }

    /// Exhaustive oracle: enumerate all |target|^|source| maps.
    fn exhaustive_reduction(source: &Frame, target: &Frame) -> Option<ReductionMap> {
        let (ns, nt) = (source.len(), target.len());
        let total = (nt as u64).pow(ns as u32);
        for code in 0..total {
            let mut c = code;
            let mut map = Vec::with_capacity(ns);
            for _ in 0..ns {
                map.push(PointId((c % nt as u64) as u32));
                c /= nt as u64;
            }
            let candidate = ReductionMap::new(source.clone(), target.clone(), map).unwrap();
            if candidate.is_reduction() {
                return Some(candidate);
            }
        }
        None
    }

    #[test]
    fn fork_reduces_onto_two_chain() {
        // The tines both collapse onto the chain's top.
        let found = find_reduction(&fork(), &chain(2), &Budget::default()).unwrap();
        let map = found.expect("fork → 2-chain reduction exists");
        assert!(map.is_reduction());
        assert!(exhaustive_reduction(&fork(), &chain(2)).is_some());
        assert_eq!(map.to_name_pairs()["r"], "x0");
        assert_eq!(map.to_name_pairs()["u"], "x1");
        assert_eq!(map.to_name_pairs()["v"], "x1");
    }

    #[test]
    fn self_reduction_always_found() {
        for f in [fork(), chain(3), cluster(3), h(0)] {
            let found = find_reduction(&f, &f, &Budget::default()).unwrap();
            assert!(found.unwrap().is_reduction());
        }
    }

    #[test]
    fn h1_does_not_reduce_to_h0() {
        let found = find_reduction(&h(1), &h(0), &Budget::default()).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn no_generated_subframe_of_h1_reduces_to_h0() {
        let outcome = generated_reduction(&h(1), &h(0), &Budget::default());
        assert_eq!(outcome, SubframeOutcome::Irreducible);
    }

    #[test]
    fn search_agrees_with_exhaustive_enumeration_on_random_pairs() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let budget = Budget::default();
        for _ in 0..60 {
            let ns = rng.gen_range(1..=4);
            let nt = rng.gen_range(1..=3);
            let mk = |n: usize, rng: &mut StdRng| {
                let points: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
                let mut edges = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if rng.gen_bool(0.4) {
                            edges.push((points[i].clone(), points[j].clone()));
                        }
                    }
                }
                Frame::build(points, &edges, true).unwrap()
            };
            let source = mk(ns, &mut rng);
            let target = mk(nt, &mut rng);
            let found = find_reduction(&source, &target, &budget).unwrap();
            let oracle = exhaustive_reduction(&source, &target);
            assert_eq!(found.is_some(), oracle.is_some(), "{source:?} -> {target:?}");
            if let Some(map) = found {
                assert!(map.is_reduction());
                assert!(rank_fact_holds(&map));
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_an_error_not_a_no() {
        let tight = Budget { enumeration: 1, search_nodes: 0 };
        let err = find_reduction(&fork(), &fork(), &tight).unwrap_err();
        assert_eq!(err, ReductionError::BudgetExceeded { limit: 0 });
    }

    #[test]
    fn matrix_of_chains() {
        let frames = [chain(2), chain(3)];
        let matrix = reducibility_matrix(&frames, &Budget::default());
        // (0,1): the 3-chain's x1 generates a 2-chain, reducible to chain(2).
        assert!(matrix[0][1].is_reducible());
        // (1,0): nothing inside the 2-chain can cover rank 3.
        assert_eq!(matrix[1][0], SubframeOutcome::Irreducible);
        assert!(matrix[0][0].is_reducible() && matrix[1][1].is_reducible());
    }

    #[test]
    fn audit_flags_repeated_frames() {
        let audit = audit_sequence(&[fork(), fork()], AuditMode::Backward, &Budget::default());
        match audit.verdict {
            AuditVerdict::Fail(w) => {
                assert_eq!((w.i, w.j), (0, 1));
                let sub = fork().generated_subframe(&[w.generator]).unwrap();
                assert_eq!(sub, *w.map.source());
                assert!(w.map.is_reduction());
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn audit_passes_on_ascending_chains() {
        // Backward: no subframe of the 2-chain covers the 3-chain.
        let audit = audit_sequence(&[chain(3), chain(2)], AuditMode::Backward, &Budget::default());
        assert!(matches!(audit.verdict, AuditVerdict::Pass));
        // Full adds (chain2 ← chain3) which does reduce, so it fails.
        let audit = audit_sequence(&[chain(3), chain(2)], AuditMode::Full, &Budget::default());
        assert!(matches!(audit.verdict, AuditVerdict::Fail(_)));
    }

    #[test]
    fn audit_reports_unknown_on_budget() {
        let tight = Budget { enumeration: 1, search_nodes: 0 };
        let audit = audit_sequence(&[fork(), fork()], AuditMode::Backward, &tight);
        assert!(matches!(audit.verdict, AuditVerdict::Unknown));
        assert_eq!(audit.inconclusive, vec![(0, 1)]);
    }

    #[test]
    fn composition_of_reductions_is_a_reduction() {
        let c4 = cluster(4);
        let c2 = cluster(2);
        let c1 = cluster(1);
        let first = find_reduction(&c4, &c2, &Budget::default()).unwrap().unwrap();
        let second = find_reduction(&c2, &c1, &Budget::default()).unwrap().unwrap();
        let composed = ReductionMap::compose(&first, &second).unwrap();
        assert!(composed.is_reduction());
        assert_eq!(
            ReductionMap::compose(&second, &first).unwrap_err(),
            ReductionError::ComposeMismatch
        );
    }

    #[test]
    fn crosscheck_on_pinned_examples() {
        let budget = Budget::default();
        let single = frame(&["w"], &[], false);
        let pt = single.point("w").unwrap();
        let cc = crosscheck_frame_formula(&single, &single, pt, &budget).unwrap();
        assert_eq!(cc, CrossCheck { satisfiable: true, reducible: true });

        let f = chain(2);
        let g = h(0);
        let cc = crosscheck_frame_formula(&f, &g, g.point("a").unwrap(), &budget).unwrap();
        assert!(cc.agrees());

        let cc = crosscheck_frame_formula(&h(0), &chain(2), chain(2).point("x0").unwrap(), &budget).unwrap();
        assert_eq!(cc, CrossCheck { satisfiable: false, reducible: false });
    }

    #[test]
    fn from_names_round_trips() {
        let found = find_reduction(&fork(), &chain(2), &Budget::default()).unwrap().unwrap();
        let pairs = found.to_name_pairs();
        let rebuilt = ReductionMap::from_names(fork(), chain(2), &pairs).unwrap();
        assert_eq!(rebuilt.to_name_pairs(), pairs);
        assert!(rebuilt.is_reduction());
    }
}
