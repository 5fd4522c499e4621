//! Frame generators: the H witness family, random constrained corpora, and
//! exhaustive small-frame catalogs.
//!
//! Three sources of frames feed the test suite and the CLI:
//!
//! - [`make_h`] builds the fixed family H_n — rank-3 strict partial orders
//!   whose rank-2 points each have exactly two proper successors — together
//!   with [`verify_h_properties`] which re-derives their advertised
//!   properties from scratch;
//! - [`generate_corpus`] draws random transitive frames satisfying a
//!   [`CorpusSpec`] by biased sampling plus rejection, deterministic per seed;
//! - [`enumerate_frames`] lists every isomorphism class of transitive frames
//!   up to a small point count, the ground set for exhaustive cross-checks.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::Budget;
use crate::formula::{frame_valid, mk_b, mk_wid_plus, FormulaError, ModalFormula, Validity};
use crate::frame::{Frame, FrameError, MAX_POINTS};

/// Errors from the generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamiliesError {
    /// Rejection sampling gave up: the spec is unsatisfiable or far too tight.
    #[error("rejection budget exhausted after {attempts} attempts ({produced} of {requested} frames produced)")]
    RejectionBudgetExceeded { attempts: u64, produced: usize, requested: usize },
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

// ---------------------------------------------------------------------------
// The H family
// ---------------------------------------------------------------------------

/// The n-th member of the H family: a single root `a` above all two-element
/// subsets `b{i,j}` of `{0,…,n+1}`, each of which sees exactly the two
/// singletons `c{i}`, `c{j}` it contains. Every point is irreflexive and the
/// relation is transitive by construction, so the frame is a strict partial
/// order; it has `1 + C(n+2,2) + (n+2)` points and rank 3.
pub fn make_h(n: u32) -> Result<Frame, FrameError> {
    let top = n + 1;
    let mut points = vec!["a".to_string()];
    let mut edges: Vec<(String, String)> = Vec::new();
    for i in 0..=top {
        for j in i + 1..=top {
            points.push(format!("b{{{i},{j}}}"));
        }
    }
    for k in 0..=top {
        points.push(format!("c{{{k}}}"));
    }
    for name in &points[1..] {
        edges.push(("a".to_string(), name.clone()));
    }
    for i in 0..=top {
        for j in i + 1..=top {
            edges.push((format!("b{{{i},{j}}}"), format!("c{{{i}}}")));
            edges.push((format!("b{{{i},{j}}}"), format!("c{{{j}}}")));
        }
    }
    Frame::build(points, &edges, false)
}

/// Number of points of `make_h(n)`.
pub fn h_point_count(n: u32) -> usize {
    let m = (n + 2) as usize;
    1 + m * (m - 1) / 2 + m
}

/// Verdict of a brute-force formula check that may be too big to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaVerdict {
    Valid,
    Invalid,
    /// The valuation space exceeds the enumeration budget; not attempted.
    BudgetExceeded,
}

impl FormulaVerdict {
    fn from_check(result: Result<Validity, FormulaError>) -> Result<FormulaVerdict, FamiliesError> {
        match result {
            Ok(Validity::Valid) => Ok(FormulaVerdict::Valid),
            Ok(Validity::Invalid(_)) => Ok(FormulaVerdict::Invalid),
            Err(FormulaError::BudgetExceeded { .. }) => Ok(FormulaVerdict::BudgetExceeded),
            Err(other) => Err(other.into()),
        }
    }
}

/// Everything [`verify_h_properties`] re-derives about one H frame.
///
/// Structural fields are always computed; the three formula verdicts fall
/// back to [`FormulaVerdict::BudgetExceeded`] once `k·|W|` valuation bits
/// outgrow the enumeration budget (the structural fields then stand in via
/// the frame-condition equivalences).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HReport {
    pub n: u32,
    pub points: usize,
    pub expected_points: usize,
    /// Irreflexive everywhere (transitivity is enforced at construction).
    pub strict_partial_order: bool,
    pub rank: u32,
    /// Largest width of a subframe generated by a strict successor of `a`.
    pub weak_width_at_root: u32,
    /// Size of the largest irreflexive antichain.
    pub irr_antichain_max: u32,
    pub b3: FormulaVerdict,
    pub wid2_plus: FormulaVerdict,
    /// Expected invalid; the structural witness below explains why.
    pub wid1_plus: FormulaVerdict,
    /// A strict successor of the root generating a subframe of width 2,
    /// with the oversized antichain (point names).
    pub weak_width_witness: Option<(String, Vec<String>)>,
}

/// Re-derive the advertised properties of `make_h(n)` from scratch.
///
/// Formula verdicts prefer plain valuation enumeration; when that outgrows
/// the budget they fall back to the exact layer-factored evaluator
/// [`h_formula_verdict`], and only if both are too big does the verdict stay
/// [`FormulaVerdict::BudgetExceeded`].
pub fn verify_h_properties(n: u32, budget: &Budget) -> Result<HReport, FamiliesError> {
    let h = make_h(n)?;
    let root = h.point("a")?;
    let strict_partial_order = h.points().all(|w| !h.is_reflexive(w));
    let weak_width_witness = h.check_weak_width_at_most(root, 1).map(|w| {
        (
            h.name(w.successor).to_string(),
            w.antichain.iter().map(|&p| h.name(p).to_string()).collect(),
        )
    });
    let check = |formula: &ModalFormula| -> Result<FormulaVerdict, FamiliesError> {
        match FormulaVerdict::from_check(frame_valid(&h, formula, budget))? {
            FormulaVerdict::BudgetExceeded => h_formula_verdict(n, formula, budget),
            verdict => Ok(verdict),
        }
    };
    Ok(HReport {
        n,
        points: h.len(),
        expected_points: h_point_count(n),
        strict_partial_order,
        rank: h.rank(),
        weak_width_at_root: h.weak_width_at(root),
        irr_antichain_max: h.irr_antichain_max(),
        b3: check(&mk_b(3)?)?,
        wid2_plus: check(&mk_wid_plus(2)?)?,
        wid1_plus: check(&mk_wid_plus(1)?)?,
        weak_width_witness,
    })
}

// ---------------------------------------------------------------------------
// Exact layer-factored validity on H frames
// ---------------------------------------------------------------------------

/// One subformula, children by index into the postorder table.
enum SubOp {
    Var(usize),
    Bottom,
    Not(usize),
    And(Vec<usize>),
    Or(Vec<usize>),
    Implies(usize, usize),
    Boxed(usize),
    Dia(usize),
}

/// Structurally deduplicated subformulas in postorder (children precede
/// parents); a point's full truth profile fits one u64 bit per entry.
fn sub_table(formula: &ModalFormula, vars: &[String]) -> Vec<SubOp> {
    fn go(
        f: &ModalFormula,
        vars: &[String],
        memo: &mut HashMap<ModalFormula, usize>,
        nodes: &mut Vec<SubOp>,
    ) -> usize {
        if let Some(&i) = memo.get(f) {
            return i;
        }
        let op = match f {
            ModalFormula::Var(v) => {
                SubOp::Var(vars.binary_search(v).expect("vars() lists every variable"))
            }
            ModalFormula::Bottom => SubOp::Bottom,
            ModalFormula::Not(a) => SubOp::Not(go(a, vars, memo, nodes)),
            ModalFormula::And(items) => {
                SubOp::And(items.iter().map(|a| go(a, vars, memo, nodes)).collect())
            }
            ModalFormula::Or(items) => {
                SubOp::Or(items.iter().map(|a| go(a, vars, memo, nodes)).collect())
            }
            ModalFormula::Implies(a, b) => {
                let (a, b) = (go(a, vars, memo, nodes), go(b, vars, memo, nodes));
                SubOp::Implies(a, b)
            }
            ModalFormula::Box(a) => SubOp::Boxed(go(a, vars, memo, nodes)),
            ModalFormula::Diamond(a) => SubOp::Dia(go(a, vars, memo, nodes)),
        };
        nodes.push(op);
        memo.insert(f.clone(), nodes.len() - 1);
        nodes.len() - 1
    }
    let mut nodes = Vec::new();
    go(formula, vars, &mut HashMap::new(), &mut nodes);
    nodes
}

/// What a point's modalities range over.
#[derive(Clone, Copy)]
enum SuccView {
    /// No successors at all (the c layer).
    Empty,
    /// Exactly two successor profiles (a b point over its two c's).
    Pair(u64, u64),
    /// Conjunction and disjunction of all successor profiles (the root).
    Agg { and: u64, or: u64 },
}

/// Truth profile of one point: bit s = subformula s true there, given the
/// point's variable label and its successors' profiles.
fn eval_profile(nodes: &[SubOp], label: u32, succ: SuccView) -> u64 {
    let mut out = 0u64;
    let bit = |mask: u64, i: usize| mask >> i & 1 == 1;
    for (i, op) in nodes.iter().enumerate() {
        let truth = match op {
            SubOp::Var(v) => label >> v & 1 == 1,
            SubOp::Bottom => false,
            SubOp::Not(a) => !bit(out, *a),
            SubOp::And(items) => items.iter().all(|&a| bit(out, a)),
            SubOp::Or(items) => items.iter().any(|&a| bit(out, a)),
            SubOp::Implies(a, b) => !bit(out, *a) || bit(out, *b),
            SubOp::Boxed(r) => match succ {
                SuccView::Empty => true,
                SuccView::Pair(p, q) => bit(p & q, *r),
                SuccView::Agg { and, .. } => bit(and, *r),
            },
            SubOp::Dia(r) => match succ {
                SuccView::Empty => false,
                SuccView::Pair(p, q) => bit(p | q, *r),
                SuccView::Agg { or, .. } => bit(or, *r),
            },
        };
        if truth {
            out |= 1 << i;
        }
    }
    out
}

/// Reachable aggregate pairs may not outgrow this during the root fold.
const AGGREGATE_CAP: usize = 1 << 16;

/// Decide validity of a formula in `make_h(n)` exactly, by layer-factored
/// semantic evaluation instead of one flat scan over all valuations.
///
/// The three layers of an H frame keep the search small: a c point's truth
/// profile depends on its own label alone, a b point's on its label plus its
/// two c's, and only the root needs the conjunction/disjunction of everybody
/// else. So the evaluator enumerates joint labelings of the c layer
/// (`2^(k·(n+2))` for k variables), tabulates the ≤ `2^k` reachable profiles
/// of each b point, and folds the root's reachable aggregate set with
/// deduplication. Exact for every formula; returns
/// [`FormulaVerdict::BudgetExceeded`] when the estimated work exceeds the
/// enumeration budget (or in the pathological case of > 64 distinct
/// subformulas), never a wrong verdict.
///
/// Unlike [`make_h`] this is not limited to frames that fit 64 points: the
/// layer structure is used combinatorially.
pub fn h_formula_verdict(
    n: u32,
    formula: &ModalFormula,
    budget: &Budget,
) -> Result<FormulaVerdict, FamiliesError> {
    let vars = formula.vars();
    let k = vars.len();
    let nodes = sub_table(formula, &vars);
    if nodes.len() > 64 || k >= 16 {
        return Ok(FormulaVerdict::BudgetExceeded);
    }
    let root = nodes.len() - 1;
    let labels = 1u32 << k;
    let cs = (n + 2) as usize;
    let pairs: Vec<(usize, usize)> =
        (0..cs).flat_map(|i| (i + 1..cs).map(move |j| (i, j))).collect();

    // Work estimate: outer labelings × per-labeling b folds. Conservative
    // enough that anything admitted finishes promptly.
    let bits_c = k * cs;
    let est = (bits_c < 64)
        .then(|| 1u64 << bits_c)
        .and_then(|outer| outer.checked_mul((pairs.len() as u64).max(1) * labels as u64));
    match est {
        Some(est) if est <= budget.enumeration => {}
        _ => return Ok(FormulaVerdict::BudgetExceeded),
    }

    let holds = |profile: u64| profile >> root & 1 == 1;

    // Layer c: profile is a function of the point's own label.
    let cprof: Vec<u64> =
        (0..labels).map(|l| eval_profile(&nodes, l, SuccView::Empty)).collect();
    if !cprof.iter().copied().all(holds) {
        return Ok(FormulaVerdict::Invalid);
    }

    // Layer b: profile is a function of (own label, labels of its two c's);
    // any failing combination is realizable because labels are independent.
    // pair_profiles[li][lj] = deduped reachable profiles of such a b point.
    let mut pair_profiles: Vec<Vec<Vec<u64>>> = Vec::with_capacity(labels as usize);
    for li in 0..labels {
        let mut row = Vec::with_capacity(labels as usize);
        for lj in 0..labels {
            let view = SuccView::Pair(cprof[li as usize], cprof[lj as usize]);
            let mut profiles: Vec<u64> =
                (0..labels).map(|l| eval_profile(&nodes, l, view)).collect();
            if !profiles.iter().copied().all(holds) {
                return Ok(FormulaVerdict::Invalid);
            }
            profiles.sort_unstable();
            profiles.dedup();
            row.push(profiles);
        }
        pair_profiles.push(row);
    }

    // Root layer: for each joint c labeling, fold the reachable
    // (AND, OR)-aggregates over independent b choices, then try every root
    // label. The aggregate set is deduplicated at each step and in practice
    // collapses to a handful of pairs.
    let total = 1u64 << bits_c;
    let label_mask = (labels - 1) as u64;
    let overflow = AtomicBool::new(false);
    let invalid = (0..total).into_par_iter().any(|t| {
        let digit = |i: usize| (t >> (k * i) & label_mask) as usize;
        let mut agg_and = !0u64;
        let mut agg_or = 0u64;
        for i in 0..cs {
            let p = cprof[digit(i)];
            agg_and &= p;
            agg_or |= p;
        }
        let mut set = vec![(agg_and, agg_or)];
        for &(i, j) in &pairs {
            let options = &pair_profiles[digit(i)][digit(j)];
            let mut next = Vec::with_capacity(set.len() * options.len());
            for &(a, o) in &set {
                for &p in options {
                    next.push((a & p, o | p));
                }
            }
            next.sort_unstable();
            next.dedup();
            if next.len() > AGGREGATE_CAP {
                overflow.store(true, Ordering::Relaxed);
                return false;
            }
            set = next;
        }
        set.iter().any(|&(and, or)| {
            (0..labels)
                .any(|l| !holds(eval_profile(&nodes, l, SuccView::Agg { and, or })))
        })
    });
    if invalid {
        Ok(FormulaVerdict::Invalid)
    } else if overflow.load(Ordering::Relaxed) {
        Ok(FormulaVerdict::BudgetExceeded)
    } else {
        Ok(FormulaVerdict::Valid)
    }
}

// ---------------------------------------------------------------------------
// Random corpora
// ---------------------------------------------------------------------------

/// Constraints for a random corpus. Every emitted frame is re-validated
/// against each requested constraint by the structural checkers, so a frame
/// in the output provably satisfies the spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    /// Hard cap on points per frame (also bounded by the library's 64).
    pub max_points: u32,
    /// Largest allowed rank.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_bound: Option<u32>,
    /// Demand weak width ⩽ 1 at every point.
    #[serde(default)]
    pub require_weak_width_1: bool,
    /// Demand irreflexive antichains of at most k points in every generated
    /// subframe.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub require_wid_bullet: Option<u32>,
    /// Demand a root.
    #[serde(default)]
    pub require_rooted: bool,
    pub seed: u64,
    pub count: u32,
}

/// Total candidate frames a single [`generate_corpus`] call may draw before
/// giving up.
const REJECTION_ATTEMPTS: u64 = 200_000;

/// Does the frame satisfy every constraint of the spec? Public so corpus
/// consumers can replay the acceptance decision.
pub fn satisfies_spec(frame: &Frame, spec: &CorpusSpec) -> bool {
    frame.len() <= spec.max_points as usize
        && spec.rank_bound.is_none_or(|m| frame.rank() <= m)
        && (!spec.require_rooted || !frame.roots().is_empty())
        && (!spec.require_weak_width_1 || frame.weak_width_at_most_everywhere(1))
        && spec
            .require_wid_bullet
            .is_none_or(|k| frame.points().all(|w| frame.check_irr_antichain_at_most(w, k).is_none()))
}

/// Draw `spec.count` frames satisfying the spec, deterministically for the
/// seed. Sampling is biased toward the constraints (layered orders under a
/// rank bound, chain-shaped upsets under the weak-width flag, cluster
/// inflation for nondegenerate clusters) and then rejection-filtered with
/// the real checkers.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<Frame>, FamiliesError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count as usize);
    let mut attempts = 0u64;
    while out.len() < spec.count as usize {
        attempts += 1;
        if attempts > REJECTION_ATTEMPTS {
            return Err(FamiliesError::RejectionBudgetExceeded {
                attempts: attempts - 1,
                produced: out.len(),
                requested: spec.count as usize,
            });
        }
        let candidate = if spec.require_weak_width_1 || spec.require_rooted {
            rooted_narrow_frame(&mut rng, spec)
        } else {
            layered_dag_frame(&mut rng, spec)
        };
        if satisfies_spec(&candidate, spec) {
            out.push(candidate);
        }
    }
    Ok(out)
}

fn cap_of(spec: &CorpusSpec) -> u32 {
    spec.max_points.clamp(1, MAX_POINTS as u32)
}

/// Random strict order via a layered DAG (layers bound the rank), closed
/// transitively, then cluster-inflated.
fn layered_dag_frame(rng: &mut ChaCha8Rng, spec: &CorpusSpec) -> Frame {
    let cap = cap_of(spec);
    let base = rng.gen_range(1..=cap);
    let layer_count = spec.rank_bound.unwrap_or(base).max(1);
    let layers: Vec<u32> = (0..base).map(|_| rng.gen_range(0..layer_count)).collect();
    let density = rng.gen_range(0.15..0.65);
    let mut edges = Vec::new();
    for i in 0..base as usize {
        for j in 0..base as usize {
            if layers[i] < layers[j] && rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    inflate(rng, base as usize, &edges, cap)
}

/// Random rooted frame with chain-shaped upsets: a root cluster below a
/// forest in which every node sees exactly its ancestor path, then cluster
/// inflation (which preserves both properties).
fn rooted_narrow_frame(rng: &mut ChaCha8Rng, spec: &CorpusSpec) -> Frame {
    let cap = cap_of(spec);
    // Chains above the root may hold at most rank_bound - 1 clusters.
    let max_depth = spec.rank_bound.map_or(u32::MAX, |m| m.saturating_sub(1));
    let forest = if max_depth == 0 { 0 } else { rng.gen_range(0..cap) };
    // Node 0 is the root; nodes 1..=forest hang above it.
    let mut depth = vec![0u32; forest as usize + 1];
    let mut edges = Vec::new();
    for i in 1..=forest as usize {
        edges.push((0, i));
        // Either start a new component above the root or hang below an
        // existing forest node that still has headroom.
        let parents: Vec<usize> = (1..i).filter(|&p| depth[p] < max_depth).collect();
        if !parents.is_empty() && rng.gen_bool(0.6) {
            let parent = parents[rng.gen_range(0..parents.len())];
            depth[i] = depth[parent] + 1;
            // See the whole ancestor path.
            let mut up = parent;
            loop {
                edges.push((i, up));
                let next = edges_parent(&edges, up, forest as usize);
                match next {
                    Some(u) => up = u,
                    None => break,
                }
            }
        } else {
            depth[i] = 1;
        }
    }
    inflate(rng, forest as usize + 1, &edges, cap)
}

/// The immediate ancestor of a forest node among the recorded edges: the
/// unique `u ≠ 0` with `(node, u)` present and `depth(u) = depth(node) - 1`;
/// tracked structurally as the first such edge.
fn edges_parent(edges: &[(usize, usize)], node: usize, forest: usize) -> Option<usize> {
    edges
        .iter()
        .find(|&&(w, u)| w == node && u != 0 && u <= forest)
        .map(|&(_, u)| u)
}

/// Blow some base points up into nondegenerate clusters and decide
/// reflexivity of the singletons, staying within `cap` points total.
fn inflate(rng: &mut ChaCha8Rng, base: usize, edges: &[(usize, usize)], cap: u32) -> Frame {
    let mut sizes = vec![1usize; base];
    let mut reflexive = vec![false; base];
    let mut total = base;
    for w in 0..base {
        if rng.gen_bool(0.25) {
            let grow = rng.gen_range(1..=2usize);
            let grow = grow.min(cap as usize - total);
            sizes[w] += grow;
            total += grow;
        }
        if sizes[w] == 1 {
            reflexive[w] = rng.gen_bool(0.4);
        }
    }
    let mut names = Vec::with_capacity(total);
    let mut member_names: Vec<Vec<String>> = Vec::with_capacity(base);
    for (w, &size) in sizes.iter().enumerate() {
        let members: Vec<String> = (0..size).map(|m| format!("p{w}_{m}")).collect();
        names.extend(members.iter().cloned());
        member_names.push(members);
    }
    let mut out_edges: Vec<(String, String)> = Vec::new();
    for (w, members) in member_names.iter().enumerate() {
        if members.len() > 1 {
            for x in members {
                for y in members {
                    out_edges.push((x.clone(), y.clone()));
                }
            }
        } else if reflexive[w] {
            out_edges.push((members[0].clone(), members[0].clone()));
        }
    }
    for &(w, u) in edges {
        for x in &member_names[w] {
            for y in &member_names[u] {
                out_edges.push((x.clone(), y.clone()));
            }
        }
    }
    Frame::build(names, &out_edges, true).expect("generated frames stay within limits")
}

// ---------------------------------------------------------------------------
// Exhaustive catalogs
// ---------------------------------------------------------------------------

/// Largest point count [`enumerate_frames`] accepts; beyond it the raw space
/// (2^(n²) relations) stops being desk-sized.
pub const MAX_ENUMERATION_POINTS: u32 = 5;

/// Relation codes: bit `i·n + j` set means point i sees point j.
fn code_is_transitive(code: u32, n: usize) -> bool {
    let row = |i: usize| (code >> (i * n)) & ((1u32 << n) - 1);
    for i in 0..n {
        let mut reach = row(i);
        let mut targets = reach;
        while targets != 0 {
            let j = targets.trailing_zeros() as usize;
            targets &= targets - 1;
            reach |= row(j);
        }
        if reach != row(i) {
            return false;
        }
    }
    true
}

fn apply_perm(code: u32, n: usize, perm: &[usize]) -> u32 {
    let mut out = 0u32;
    for i in 0..n {
        for j in 0..n {
            if code >> (i * n + j) & 1 == 1 {
                out |= 1 << (perm[i] * n + perm[j]);
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn go(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            go(k + 1, items, out);
            items.swap(k, i);
        }
    }
    go(0, &mut items, &mut out);
    out
}

/// Number of labeled transitive relations on n points, by direct count.
/// Serves as an independent anchor for the enumeration and its dedup.
pub fn labeled_transitive_count(n: u32) -> u64 {
    let n = n as usize;
    assert!(n >= 1 && n <= MAX_ENUMERATION_POINTS as usize);
    let mut count = 0u64;
    for code in 0..1u64 << (n * n) {
        if code_is_transitive(code as u32, n) {
            count += 1;
        }
    }
    count
}

/// Canonical codes (minimum over point permutations) of all transitive
/// relations on exactly n points, ascending.
fn canonical_codes(n: usize) -> Vec<u32> {
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    for code in 0..1u64 << (n * n) {
        let code = code as u32;
        if !code_is_transitive(code, n) {
            continue;
        }
        let canon = perms.iter().map(|p| apply_perm(code, n, p)).min().unwrap();
        seen.insert(canon);
    }
    seen.into_iter().collect()
}

fn frame_of_code(code: u32, n: usize) -> Frame {
    let points: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if code >> (i * n + j) & 1 == 1 {
                edges.push((points[i].clone(), points[j].clone()));
            }
        }
    }
    Frame::build(points, &edges, false).expect("enumerated codes are transitive")
}

/// One representative per isomorphism class of transitive frames with at
/// most `max_points` points (1 through the cap), in a fixed order: ascending
/// point count, then ascending canonical relation code. `rooted_only` keeps
/// the frames that have a root.
pub fn enumerate_frames(max_points: u32, rooted_only: bool) -> Vec<Frame> {
    assert!(
        (1..=MAX_ENUMERATION_POINTS).contains(&max_points),
        "enumeration supports 1..={MAX_ENUMERATION_POINTS} points"
    );
    let mut out = Vec::new();
    for n in 1..=max_points as usize {
        for code in canonical_codes(n) {
            let frame = frame_of_code(code, n);
            if !rooted_only || !frame.roots().is_empty() {
                out.push(frame);
            }
        }
    }
    out
}
