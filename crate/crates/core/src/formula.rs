//! Modal formulas and brute-force validity checking over finite frames.
//!
//! Formulas are plain ASTs with n-ary conjunction and disjunction (so the
//! large generated conjunctions stay flat and readable). Model checking
//! computes the extension of a formula as a point bitmask; frame validity
//! enumerates every valuation of the formula's variables, in a pinned
//! lexicographic order so the first countermodel is deterministic.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::budget::Budget;
use crate::frame::{Frame, FrameError, PointId};

/// A modal formula. `Box` is the universal modality over successors,
/// `Diamond` its dual.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModalFormula {
    Var(String),
    Bottom,
    Not(Box<ModalFormula>),
    And(Vec<ModalFormula>),
    Or(Vec<ModalFormula>),
    Implies(Box<ModalFormula>, Box<ModalFormula>),
    Box(Box<ModalFormula>),
    Diamond(Box<ModalFormula>),
}

/// Errors from parsing, family construction, and validity checking.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("family index must be at least 1, got {0}")]
    InvalidIndex(u32),
    #[error("valuation enumeration needs 2^{needed_bits} assignments, exceeding the budget of {limit}")]
    BudgetExceeded { needed_bits: usize, limit: u64 },
    #[error("point index {index} is outside the frame ({points} points)")]
    PointOutOfRange { index: usize, points: usize },
    #[error("frame is not rooted")]
    NotRooted,
    #[error("point ordering mismatch: {0}")]
    OrderingMismatch(String),
}

impl ModalFormula {
    pub fn var(name: impl Into<String>) -> Self {
        ModalFormula::Var(name.into())
    }

    pub fn bot() -> Self {
        ModalFormula::Bottom
    }

    pub fn neg(inner: Self) -> Self {
        ModalFormula::Not(Box::new(inner))
    }

    /// Conjunction; a singleton collapses to its only member and the empty
    /// conjunction is ¬⊥.
    pub fn conj(mut items: Vec<Self>) -> Self {
        match items.len() {
            0 => Self::neg(Self::bot()),
            1 => items.pop().unwrap(),
            _ => ModalFormula::And(items),
        }
    }

    /// Disjunction; a singleton collapses to its only member and the empty
    /// disjunction is ⊥.
    pub fn disj(mut items: Vec<Self>) -> Self {
        match items.len() {
            0 => Self::bot(),
            1 => items.pop().unwrap(),
            _ => ModalFormula::Or(items),
        }
    }

    pub fn imp(lhs: Self, rhs: Self) -> Self {
        ModalFormula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn nec(inner: Self) -> Self {
        ModalFormula::Box(Box::new(inner))
    }

    pub fn dia(inner: Self) -> Self {
        ModalFormula::Diamond(Box::new(inner))
    }

    /// The variables occurring in the formula, sorted and deduplicated.
    /// This order also fixes the valuation enumeration order.
    pub fn vars(&self) -> Vec<String> {
        fn collect<'a>(f: &'a ModalFormula, out: &mut BTreeSet<&'a str>) {
            match f {
                ModalFormula::Var(v) => {
                    out.insert(v);
                }
                ModalFormula::Bottom => {}
                ModalFormula::Not(a) | ModalFormula::Box(a) | ModalFormula::Diamond(a) => {
                    collect(a, out)
                }
                ModalFormula::And(items) | ModalFormula::Or(items) => {
                    for a in items {
                        collect(a, out);
                    }
                }
                ModalFormula::Implies(a, b) => {
                    collect(a, out);
                    collect(b, out);
                }
            }
        }
        let mut set = BTreeSet::new();
        collect(self, &mut set);
        set.into_iter().map(str::to_owned).collect()
    }

    /// Flatten nested conjunctions/disjunctions and collapse singletons.
    /// Semantics-preserving; printing already parenthesizes nesting, so this
    /// only canonicalizes shape.
    pub fn normalize(&self) -> ModalFormula {
        match self {
            ModalFormula::Var(_) | ModalFormula::Bottom => self.clone(),
            ModalFormula::Not(a) => Self::neg(a.normalize()),
            ModalFormula::Box(a) => Self::nec(a.normalize()),
            ModalFormula::Diamond(a) => Self::dia(a.normalize()),
            ModalFormula::Implies(a, b) => Self::imp(a.normalize(), b.normalize()),
            ModalFormula::And(items) => {
                let mut flat = Vec::new();
                for a in items {
                    match a.normalize() {
                        ModalFormula::And(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                Self::conj(flat)
            }
            ModalFormula::Or(items) => {
                let mut flat = Vec::new();
                for a in items {
                    match a.normalize() {
                        ModalFormula::Or(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                Self::disj(flat)
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            ModalFormula::Implies(..) => 1,
            ModalFormula::Or(_) => 2,
            ModalFormula::And(_) => 3,
            ModalFormula::Not(_) | ModalFormula::Box(_) | ModalFormula::Diamond(_) => 4,
            ModalFormula::Var(_) | ModalFormula::Bottom => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        if self.prec() < ctx {
            write!(f, "(")?;
            self.write(f, 0)?;
            return write!(f, ")");
        }
        match self {
            ModalFormula::Var(v) => write!(f, "{v}"),
            ModalFormula::Bottom => write!(f, "bot"),
            ModalFormula::Not(a) => {
                write!(f, "~")?;
                a.write(f, 4)
            }
            ModalFormula::Box(a) => {
                write!(f, "[]")?;
                a.write(f, 4)
            }
            ModalFormula::Diamond(a) => {
                write!(f, "<>")?;
                a.write(f, 4)
            }
            ModalFormula::And(items) => {
                for (i, a) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    a.write(f, 4)?;
                }
                Ok(())
            }
            ModalFormula::Or(items) => {
                for (i, a) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    a.write(f, 3)?;
                }
                Ok(())
            }
            ModalFormula::Implies(a, b) => {
                a.write(f, 2)?;
                write!(f, " -> ")?;
                // Right-associative: a chain prints without parentheses.
                b.write(f, 1)
            }
        }
    }
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

// ---------------------------------------------------------------------------
// Formula families
// ---------------------------------------------------------------------------

fn p(i: u32) -> ModalFormula {
    ModalFormula::var(format!("p{i}"))
}

/// The depth formula family: ◇□p1 → p1, then ◇(□p_{i+1} ∧ ¬ ·) → p_{i+1}.
pub fn mk_b(n: u32) -> Result<ModalFormula, FormulaError> {
    if n < 1 {
        return Err(FormulaError::InvalidIndex(n));
    }
    let mut b = ModalFormula::imp(ModalFormula::dia(ModalFormula::nec(p(1))), p(1));
    for i in 2..=n {
        b = ModalFormula::imp(
            ModalFormula::dia(ModalFormula::conj(vec![
                ModalFormula::nec(p(i)),
                ModalFormula::neg(b),
            ])),
            p(i),
        );
    }
    Ok(b)
}

/// Shared consequent of the width families:
/// ⋁ over i≠j of ◇(p_i ∧ (p_j ∨ ◇p_j)), pairs in lexicographic order.
fn wid_consequent(n: u32) -> ModalFormula {
    let mut disjuncts = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            if i != j {
                disjuncts.push(ModalFormula::dia(ModalFormula::conj(vec![
                    p(i),
                    ModalFormula::disj(vec![p(j), ModalFormula::dia(p(j))]),
                ])));
            }
        }
    }
    ModalFormula::disj(disjuncts)
}

/// Width formula: ⋀_{i⩽n}◇p_i → the shared consequent.
pub fn mk_wid(n: u32) -> Result<ModalFormula, FormulaError> {
    if n < 1 {
        return Err(FormulaError::InvalidIndex(n));
    }
    let antecedent = ModalFormula::conj((0..=n).map(|i| ModalFormula::dia(p(i))).collect());
    Ok(ModalFormula::imp(antecedent, wid_consequent(n)))
}

/// Weak-width formula: q ∧ ◇(□¬q ∧ ⋀_{i⩽n}◇p_i) → the shared consequent.
pub fn mk_wid_plus(n: u32) -> Result<ModalFormula, FormulaError> {
    if n < 1 {
        return Err(FormulaError::InvalidIndex(n));
    }
    let q = ModalFormula::var("q");
    let inner = ModalFormula::conj(vec![
        ModalFormula::nec(ModalFormula::neg(q.clone())),
        ModalFormula::conj((0..=n).map(|i| ModalFormula::dia(p(i))).collect()),
    ]);
    let antecedent = ModalFormula::conj(vec![q, ModalFormula::dia(inner)]);
    Ok(ModalFormula::imp(antecedent, wid_consequent(n)))
}

/// Irreflexive-width formula: ⋀_{i⩽n}◇(p_i ∧ □¬p_i) → the shared consequent.
pub fn mk_wid_bullet(n: u32) -> Result<ModalFormula, FormulaError> {
    if n < 1 {
        return Err(FormulaError::InvalidIndex(n));
    }
    let antecedent = ModalFormula::conj(
        (0..=n)
            .map(|i| {
                ModalFormula::dia(ModalFormula::conj(vec![
                    p(i),
                    ModalFormula::nec(ModalFormula::neg(p(i))),
                ]))
            })
            .collect(),
    );
    Ok(ModalFormula::imp(antecedent, wid_consequent(n)))
}

// ---------------------------------------------------------------------------
// Valuations and model checking
// ---------------------------------------------------------------------------

/// Assignment of point sets to variable names. Unassigned variables denote
/// the empty set; assigned points are range-checked at evaluation time.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    assign: BTreeMap<String, BTreeSet<PointId>>,
}

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assign a set of points to a variable, replacing any previous set.
    pub fn set(&mut self, var: impl Into<String>, points: impl IntoIterator<Item = PointId>) {
        self.assign.insert(var.into(), points.into_iter().collect());
    }

    /// Builder-style [`Valuation::set`].
    pub fn with(mut self, var: impl Into<String>, points: impl IntoIterator<Item = PointId>) -> Self {
        self.set(var, points);
        self
    }

    /// The set assigned to a variable, if any.
    pub fn points(&self, var: &str) -> Option<&BTreeSet<PointId>> {
        self.assign.get(var)
    }

    /// All assignments, sorted by variable name.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &BTreeSet<PointId>)> {
        self.assign.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Render as variable → point-name lists for a given frame.
    pub fn to_names(&self, frame: &Frame) -> BTreeMap<String, Vec<String>> {
        self.assign
            .iter()
            .map(|(var, set)| {
                let names = set.iter().map(|&pt| frame.name(pt).to_owned()).collect();
                (var.clone(), names)
            })
            .collect()
    }

    /// Build from variable → point-name lists.
    pub fn from_names(
        frame: &Frame,
        names: &BTreeMap<String, Vec<String>>,
    ) -> Result<Valuation, FrameError> {
        let mut v = Valuation::new();
        for (var, points) in names {
            let pts = points
                .iter()
                .map(|name| frame.point(name))
                .collect::<Result<Vec<_>, _>>()?;
            v.set(var.clone(), pts);
        }
        Ok(v)
    }

    fn mask(&self, var: &str, frame: &Frame) -> Result<u64, FormulaError> {
        let mut m = 0u64;
        if let Some(set) = self.assign.get(var) {
            for &pt in set {
                check_point(frame, pt)?;
                m |= 1u64 << pt.index();
            }
        }
        Ok(m)
    }
}

fn check_point(frame: &Frame, w: PointId) -> Result<(), FormulaError> {
    if w.index() >= frame.len() {
        Err(FormulaError::PointOutOfRange { index: w.index(), points: frame.len() })
    } else {
        Ok(())
    }
}

/// One node of a compiled formula; operands are indices of earlier slots in
/// the table, so a single left-to-right pass evaluates the whole formula.
/// Variables are indices into the valuation's mask slice (`None` = unassigned
/// = empty).
enum Op {
    Var(Option<usize>),
    Bottom,
    Not(usize),
    And(Vec<usize>),
    Or(Vec<usize>),
    Implies(usize, usize),
    Nec(usize),
    Dia(usize),
}

/// Variable-resolved formula flattened into a structurally-deduplicated
/// postorder table. Dedup matters in the hot validity scans: generated
/// formulas repeat literals like ◇p_j many times, and each shared subterm is
/// evaluated once per valuation instead of once per occurrence.
struct Compiled {
    ops: Vec<Op>,
}

fn compile(f: &ModalFormula, vars: &[String]) -> Compiled {
    fn slot(
        f: &ModalFormula,
        vars: &[String],
        ops: &mut Vec<Op>,
        memo: &mut HashMap<ModalFormula, usize>,
    ) -> usize {
        if let Some(&i) = memo.get(f) {
            return i;
        }
        let op = match f {
            ModalFormula::Var(v) => Op::Var(vars.binary_search_by(|x| x.as_str().cmp(v)).ok()),
            ModalFormula::Bottom => Op::Bottom,
            ModalFormula::Not(a) => Op::Not(slot(a, vars, ops, memo)),
            ModalFormula::And(items) => {
                Op::And(items.iter().map(|a| slot(a, vars, ops, memo)).collect())
            }
            ModalFormula::Or(items) => {
                Op::Or(items.iter().map(|a| slot(a, vars, ops, memo)).collect())
            }
            ModalFormula::Implies(a, b) => {
                Op::Implies(slot(a, vars, ops, memo), slot(b, vars, ops, memo))
            }
            ModalFormula::Box(a) => Op::Nec(slot(a, vars, ops, memo)),
            ModalFormula::Diamond(a) => Op::Dia(slot(a, vars, ops, memo)),
        };
        let i = ops.len();
        ops.push(op);
        memo.insert(f.clone(), i);
        i
    }
    let mut ops = Vec::new();
    slot(f, vars, &mut ops, &mut HashMap::new());
    Compiled { ops }
}

/// Extension of a compiled formula as a point bitmask (always a subset of
/// the frame's point mask).
fn extension(c: &Compiled, frame: &Frame, masks: &[u64], all: u64) -> u64 {
    let mut vals = [0u64; 64];
    let mut heap; // spill rarely: formulas small enough to scan fit the stack
    let vals: &mut [u64] = if c.ops.len() <= 64 {
        &mut vals
    } else {
        heap = vec![0u64; c.ops.len()];
        &mut heap
    };
    for (i, op) in c.ops.iter().enumerate() {
        vals[i] = match op {
            Op::Var(Some(v)) => masks[*v],
            Op::Var(None) => 0,
            Op::Bottom => 0,
            Op::Not(a) => all & !vals[*a],
            Op::And(items) => items.iter().fold(all, |m, &a| m & vals[a]),
            Op::Or(items) => items.iter().fold(0, |m, &a| m | vals[a]),
            Op::Implies(a, b) => (all & !vals[*a]) | vals[*b],
            Op::Nec(a) => {
                let e = vals[*a];
                let mut m = 0u64;
                for w in 0..frame.len() {
                    if frame.succ_mask(w) & !e == 0 {
                        m |= 1u64 << w;
                    }
                }
                m
            }
            Op::Dia(a) => {
                let e = vals[*a];
                let mut m = 0u64;
                for w in 0..frame.len() {
                    if frame.succ_mask(w) & e != 0 {
                        m |= 1u64 << w;
                    }
                }
                m
            }
        };
    }
    vals[c.ops.len() - 1]
}

/// Truth of φ at w in the model ⟨frame, valuation⟩.
pub fn satisfies(
    frame: &Frame,
    valuation: &Valuation,
    w: PointId,
    formula: &ModalFormula,
) -> Result<bool, FormulaError> {
    check_point(frame, w)?;
    for (var, _) in valuation.iter() {
        valuation.mask(var, frame)?; // validate even vars the formula ignores
    }
    let vars = formula.vars();
    let masks = vars
        .iter()
        .map(|v| valuation.mask(v, frame))
        .collect::<Result<Vec<_>, _>>()?;
    let compiled = compile(formula, &vars);
    let ext = extension(&compiled, frame, &masks, frame.all_mask());
    Ok(ext >> w.index() & 1 == 1)
}

/// Outcome of a validity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(Countermodel),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            Validity::Valid => None,
            Validity::Invalid(c) => Some(c),
        }
    }
}

/// A falsifying valuation together with the point where the formula fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub valuation: Valuation,
    pub point: PointId,
}

/// Unpack valuation number `t` into one mask per variable.
///
/// Bit layout: the valuation counter is read as a base-2 numeral whose most
/// significant block belongs to the first variable, and inside a block the
/// most significant bit belongs to point 0. Counting t upward therefore
/// enumerates valuations in lexicographic order of (variable, point)
/// membership bits, and the first failing t is the lexicographically least
/// countermodel.
fn decode_masks(t: u64, k: usize, n: usize, out: &mut [u64]) {
    if k == 0 {
        return;
    }
    let block_mask = (1u64 << n) - 1; // k ⩾ 1 and k·n < 64 keep this in range
    for (i, slot) in out.iter_mut().enumerate().take(k) {
        let block = (t >> ((k - 1 - i) * n)) & block_mask;
        *slot = block.reverse_bits() >> (64 - n);
    }
}

fn check_budget(bits: usize, budget: &Budget) -> Result<(), FormulaError> {
    if bits >= 64 || (1u64 << bits) > budget.enumeration {
        return Err(FormulaError::BudgetExceeded { needed_bits: bits, limit: budget.enumeration });
    }
    Ok(())
}

/// Find the least valuation number whose extension fails the predicate,
/// scanning in parallel once the space is large enough to pay for it.
fn first_failure<P>(total: u64, bits: usize, fails: P) -> Option<u64>
where
    P: Fn(u64) -> bool + Sync,
{
    if bits >= 20 {
        (0..total).into_par_iter().find_first(|&t| fails(t))
    } else {
        (0..total).find(|&t| fails(t))
    }
}

fn valuation_at(t: u64, vars: &[String], n: usize) -> Valuation {
    let mut masks = vec![0u64; vars.len()];
    decode_masks(t, vars.len(), n, &mut masks);
    let mut v = Valuation::new();
    for (i, var) in vars.iter().enumerate() {
        v.set(var.clone(), crate::frame::bits(masks[i]).map(|j| PointId(j as u32)));
    }
    v
}

fn validity_scan(
    frame: &Frame,
    formula: &ModalFormula,
    budget: &Budget,
    at: Option<PointId>,
) -> Result<Validity, FormulaError> {
    if let Some(w) = at {
        check_point(frame, w)?;
    }
    let vars = formula.vars();
    let k = vars.len();
    let n = frame.len();
    let bits = k * n;
    check_budget(bits, budget)?;
    let compiled = compile(formula, &vars);
    let all = frame.all_mask();
    let ext_at = |t: u64| {
        let mut masks = [0u64; 64];
        decode_masks(t, k, n, &mut masks);
        extension(&compiled, frame, &masks[..k], all)
    };
    let fails = |t: u64| match at {
        Some(w) => ext_at(t) >> w.index() & 1 == 0,
        None => ext_at(t) != all,
    };
    let total = 1u64 << bits;
    match first_failure(total, bits, fails) {
        None => Ok(Validity::Valid),
        Some(t) => {
            let ext = ext_at(t);
            let point = match at {
                Some(w) => w,
                None => PointId((all & !ext).trailing_zeros()),
            };
            Ok(Validity::Invalid(Countermodel { valuation: valuation_at(t, &vars, n), point }))
        }
    }
}

/// Is φ valid in the frame (true at every point under every valuation of its
/// variables)? On failure reports the lexicographically first countermodel.
pub fn frame_valid(
    frame: &Frame,
    formula: &ModalFormula,
    budget: &Budget,
) -> Result<Validity, FormulaError> {
    validity_scan(frame, formula, budget, None)
}

/// Is φ valid at the given point under every valuation?
pub fn point_valid(
    frame: &Frame,
    w: PointId,
    formula: &ModalFormula,
    budget: &Budget,
) -> Result<Validity, FormulaError> {
    validity_scan(frame, formula, budget, Some(w))
}

/// Is φ satisfiable at w? Returns the lexicographically first witnessing
/// valuation.
pub fn satisfiable_at(
    frame: &Frame,
    w: PointId,
    formula: &ModalFormula,
    budget: &Budget,
) -> Result<Option<Valuation>, FormulaError> {
    match point_valid(frame, w, &ModalFormula::neg(formula.clone()), budget)? {
        Validity::Valid => Ok(None),
        Validity::Invalid(counter) => Ok(Some(counter.valuation)),
    }
}

// ---------------------------------------------------------------------------
// Frame formulas
// ---------------------------------------------------------------------------

/// A frame together with an ordering ⟨w_0,…,w_n⟩ of its points, w_0 a root;
/// the data from which the frame formula is built.
#[derive(Debug, Clone)]
pub struct FrameFormulaSpec {
    frame: Frame,
    ordering: Vec<PointId>,
}

impl FrameFormulaSpec {
    /// Validate an explicit ordering: it must enumerate all points exactly
    /// once and start at a root.
    pub fn new(frame: Frame, ordering: Vec<PointId>) -> Result<Self, FormulaError> {
        if ordering.len() != frame.len() {
            return Err(FormulaError::OrderingMismatch(format!(
                "ordering lists {} points, frame has {}",
                ordering.len(),
                frame.len()
            )));
        }
        let mut seen = 0u64;
        for &w in &ordering {
            check_point(&frame, w)?;
            if seen >> w.index() & 1 == 1 {
                return Err(FormulaError::OrderingMismatch(format!(
                    "point {:?} listed twice",
                    frame.name(w)
                )));
            }
            seen |= 1u64 << w.index();
        }
        let roots = frame.roots();
        if roots.is_empty() {
            return Err(FormulaError::NotRooted);
        }
        if !roots.contains(&ordering[0]) {
            return Err(FormulaError::OrderingMismatch(format!(
                "first point {:?} is not a root",
                frame.name(ordering[0])
            )));
        }
        Ok(FrameFormulaSpec { frame, ordering })
    }

    /// The canonical ordering: the least root first, then the remaining
    /// points in point order.
    pub fn canonical(frame: Frame) -> Result<Self, FormulaError> {
        let root = *frame.roots().first().ok_or(FormulaError::NotRooted)?;
        let mut ordering = vec![root];
        ordering.extend(frame.points().filter(|&w| w != root));
        Ok(FrameFormulaSpec { frame, ordering })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn ordering(&self) -> &[PointId] {
        &self.ordering
    }

    /// The valuation V(p_i) = {w_i} that satisfies the frame formula at w_0.
    pub fn canonical_valuation(&self) -> Valuation {
        let mut v = Valuation::new();
        for (i, &w) in self.ordering.iter().enumerate() {
            v.set(format!("p{i}"), [w]);
        }
        v
    }

    /// The frame formula: one flat conjunction of
    ///   p_0,
    ///   □(p_0 ∨ ⋯ ∨ p_n),
    ///   (p_i → ¬p_j) ∧ □(p_i → ¬p_j)        for i ≠ j,
    ///   (p_i → ◇p_j) ∧ □(p_i → ◇p_j)        where R w_i w_j,
    ///   (p_i → ¬◇p_j) ∧ □(p_i → ¬◇p_j)      where not R w_i w_j.
    pub fn formula(&self) -> ModalFormula {
        let n = self.ordering.len();
        let mut conjuncts = vec![p(0)];
        conjuncts.push(ModalFormula::nec(ModalFormula::disj(
            (0..n as u32).map(p).collect(),
        )));
        let mut push_pair = |f: ModalFormula| {
            conjuncts.push(f.clone());
            conjuncts.push(ModalFormula::nec(f));
        };
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    push_pair(ModalFormula::imp(
                        p(i as u32),
                        ModalFormula::neg(p(j as u32)),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.frame.sees(self.ordering[i], self.ordering[j]) {
                    push_pair(ModalFormula::imp(p(i as u32), ModalFormula::dia(p(j as u32))));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.frame.sees(self.ordering[i], self.ordering[j]) {
                    push_pair(ModalFormula::imp(
                        p(i as u32),
                        ModalFormula::neg(ModalFormula::dia(p(j as u32))),
                    ));
                }
            }
        }
        ModalFormula::conj(conjuncts)
    }
}

// ---------------------------------------------------------------------------
// Concrete syntax
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Neg,
    AndOp,
    OrOp,
    Arrow,
    NecOp,
    DiaOp,
    BottomLit,
    Ident(String),
}

struct Lexed {
    tok: Tok,
    col: usize,
}

fn lex(text: &str) -> Result<(Vec<Lexed>, usize), FormulaError> {
    let mut toks = Vec::new();
    let mut chars = text.chars().enumerate().peekable();
    while let Some((i, c)) = chars.next() {
        let col = i + 1;
        let tok = match c {
            c if c.is_whitespace() => continue,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '~' => Tok::Neg,
            '&' => Tok::AndOp,
            '|' => Tok::OrOp,
            '-' => match chars.next() {
                Some((_, '>')) => Tok::Arrow,
                _ => {
                    return Err(FormulaError::Syntax {
                        column: col,
                        message: "expected \"->\"".into(),
                    })
                }
            },
            '[' => match chars.next() {
                Some((_, ']')) => Tok::NecOp,
                _ => {
                    return Err(FormulaError::Syntax {
                        column: col,
                        message: "expected \"[]\"".into(),
                    })
                }
            },
            '<' => match chars.next() {
                Some((_, '>')) => Tok::DiaOp,
                _ => {
                    return Err(FormulaError::Syntax {
                        column: col,
                        message: "expected \"<>\"".into(),
                    })
                }
            },
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                name.push(c);
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                match name.as_str() {
                    "box" => Tok::NecOp,
                    "dia" => Tok::DiaOp,
                    "bot" => Tok::BottomLit,
                    _ => Tok::Ident(name),
                }
            }
            other => {
                return Err(FormulaError::Syntax {
                    column: col,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        toks.push(Lexed { tok, col });
    }
    Ok((toks, text.chars().count() + 1))
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |l| l.col)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|l| l.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, message: impl Into<String>) -> FormulaError {
        FormulaError::Syntax { column: self.col(), message: message.into() }
    }

    fn formula(&mut self) -> Result<ModalFormula, FormulaError> {
        let lhs = self.or_chain()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.bump();
            let rhs = self.formula()?; // right-associative
            Ok(ModalFormula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or_chain(&mut self) -> Result<ModalFormula, FormulaError> {
        let mut items = vec![self.and_chain()?];
        while self.peek() == Some(&Tok::OrOp) {
            self.bump();
            items.push(self.and_chain()?);
        }
        Ok(ModalFormula::disj(items))
    }

    fn and_chain(&mut self) -> Result<ModalFormula, FormulaError> {
        let mut items = vec![self.unary()?];
        while self.peek() == Some(&Tok::AndOp) {
            self.bump();
            items.push(self.unary()?);
        }
        Ok(ModalFormula::conj(items))
    }

    fn unary(&mut self) -> Result<ModalFormula, FormulaError> {
        match self.peek() {
            Some(Tok::Neg) => {
                self.bump();
                Ok(ModalFormula::neg(self.unary()?))
            }
            Some(Tok::NecOp) => {
                self.bump();
                Ok(ModalFormula::nec(self.unary()?))
            }
            Some(Tok::DiaOp) => {
                self.bump();
                Ok(ModalFormula::dia(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<ModalFormula, FormulaError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.formula()?;
                if self.peek() == Some(&Tok::RParen) {
                    self.bump();
                    Ok(inner)
                } else {
                    Err(self.err("expected ')'"))
                }
            }
            Some(Tok::Ident(name)) => {
                self.bump();
                Ok(ModalFormula::var(name))
            }
            Some(Tok::BottomLit) => {
                self.bump();
                Ok(ModalFormula::bot())
            }
            _ => Err(self.err("expected a formula")),
        }
    }
}

/// Parse the concrete syntax: `~ & | ->` with `[]`/`box` and `<>`/`dia`
/// modalities, `bot` for ⊥, parentheses, and identifier variables.
/// Precedence: unaries bind tightest, then `&`, then `|`, then the
/// right-associative `->`.
pub fn parse(text: &str) -> Result<ModalFormula, FormulaError> {
    let (toks, end_col) = lex(text)?;
    let mut parser = Parser { toks, pos: 0, end_col };
    let formula = parser.formula()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err("unexpected trailing input"));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use proptest::prelude::*;

    fn frame(points: &[&str], edges: &[(&str, &str)]) -> Frame {
        Frame::build(points.iter().map(|s| s.to_string()).collect(), edges, false).unwrap()
    }

    fn fork() -> Frame {
        frame(&["r", "u", "v"], &[("r", "u"), ("r", "v")])
    }

    fn h0() -> Frame {
        frame(
            &["a", "b{0,1}", "c0", "c1"],
            &[
                ("a", "b{0,1}"),
                ("a", "c0"),
                ("a", "c1"),
                ("b{0,1}", "c0"),
                ("b{0,1}", "c1"),
            ],
        )
    }

    /// Independent model checker used as the oracle: explicit set semantics,
    /// no masks, no compilation.
    fn oracle(f: &Frame, v: &BTreeMap<String, BTreeSet<usize>>, w: usize, fml: &ModalFormula) -> bool {
        match fml {
            ModalFormula::Var(x) => v.get(x).is_some_and(|s| s.contains(&w)),
            ModalFormula::Bottom => false,
            ModalFormula::Not(a) => !oracle(f, v, w, a),
            ModalFormula::And(items) => items.iter().all(|a| oracle(f, v, w, a)),
            ModalFormula::Or(items) => items.iter().any(|a| oracle(f, v, w, a)),
            ModalFormula::Implies(a, b) => !oracle(f, v, w, a) || oracle(f, v, w, b),
            ModalFormula::Box(a) => (0..f.len())
                .filter(|&u| f.sees(pid(w), pid(u)))
                .all(|u| oracle(f, v, u, a)),
            ModalFormula::Diamond(a) => (0..f.len())
                .filter(|&u| f.sees(pid(w), pid(u)))
                .any(|u| oracle(f, v, u, a)),
        }
    }

    fn pid(i: usize) -> PointId {
        PointId(i as u32)
    }

    fn to_oracle_valuation(v: &Valuation) -> BTreeMap<String, BTreeSet<usize>> {
        v.iter()
            .map(|(var, set)| (var.to_owned(), set.iter().map(|p| p.index()).collect()))
            .collect()
    }

    #[test]
    fn b_family_shape() {
        let p1 = ModalFormula::var("p1");
        assert_eq!(
            mk_b(1).unwrap(),
            ModalFormula::imp(ModalFormula::dia(ModalFormula::nec(p1.clone())), p1.clone())
        );
        let p2 = ModalFormula::var("p2");
        assert_eq!(
            mk_b(2).unwrap(),
            ModalFormula::imp(
                ModalFormula::dia(ModalFormula::conj(vec![
                    ModalFormula::nec(p2.clone()),
                    ModalFormula::neg(mk_b(1).unwrap()),
                ])),
                p2
            )
        );
        assert_eq!(mk_b(1).unwrap().to_string(), "<>[]p1 -> p1");
        assert_eq!(mk_b(0).unwrap_err(), FormulaError::InvalidIndex(0));
    }

    #[test]
    fn wid_family_shape() {
        assert_eq!(
            mk_wid(1).unwrap().to_string(),
            "<>p0 & <>p1 -> <>(p0 & (p1 | <>p1)) | <>(p1 & (p0 | <>p0))"
        );
        assert_eq!(
            mk_wid_bullet(1).unwrap().to_string(),
            "<>(p0 & []~p0) & <>(p1 & []~p1) -> <>(p0 & (p1 | <>p1)) | <>(p1 & (p0 | <>p0))"
        );
        assert_eq!(mk_wid(3).unwrap().vars().len(), 4);
        assert_eq!(mk_wid_plus(2).unwrap().vars(), vec!["p0", "p1", "p2", "q"]);
        assert_eq!(mk_b(3).unwrap().vars(), vec!["p1", "p2", "p3"]);
        for f in [mk_wid(0), mk_wid_plus(0), mk_wid_bullet(0)] {
            assert_eq!(f.unwrap_err(), FormulaError::InvalidIndex(0));
        }
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse("<>[]p1 -> p1").unwrap(), mk_b(1).unwrap());
        assert_eq!(
            parse("box (p0 | p1)").unwrap(),
            ModalFormula::nec(ModalFormula::disj(vec![
                ModalFormula::var("p0"),
                ModalFormula::var("p1")
            ]))
        );
        assert_eq!(parse("dia q").unwrap(), ModalFormula::dia(ModalFormula::var("q")));
        assert_eq!(parse("bot").unwrap(), ModalFormula::Bottom);
    }

    #[test]
    fn parse_precedence_and_associativity() {
        assert_eq!(
            parse("~p0 & p1 -> p2 | p3 & p4").unwrap(),
            ModalFormula::imp(
                ModalFormula::conj(vec![
                    ModalFormula::neg(ModalFormula::var("p0")),
                    ModalFormula::var("p1")
                ]),
                ModalFormula::disj(vec![
                    ModalFormula::var("p2"),
                    ModalFormula::conj(vec![ModalFormula::var("p3"), ModalFormula::var("p4")])
                ])
            )
        );
        assert_eq!(
            parse("p0 -> p1 -> p2").unwrap(),
            ModalFormula::imp(
                ModalFormula::var("p0"),
                ModalFormula::imp(ModalFormula::var("p1"), ModalFormula::var("p2"))
            )
        );
    }

    #[test]
    fn parse_error_positions() {
        let err = |s: &str| match parse(s).unwrap_err() {
            FormulaError::Syntax { column, .. } => column,
            other => panic!("expected syntax error, got {other:?}"),
        };
        assert_eq!(err("p0 &"), 5);
        assert_eq!(err("p0 p1"), 4);
        assert_eq!(err("(p0"), 4);
        assert_eq!(err(""), 1);
        assert_eq!(err("p0 -"), 4);
        assert_eq!(err("p0 @"), 4);
        assert_eq!(err("box"), 4);
    }

    #[test]
    fn printing_preserves_nesting_with_parens() {
        let nested = parse("p0 & (p1 & p2)").unwrap();
        assert_eq!(nested.to_string(), "p0 & (p1 & p2)");
        assert_eq!(parse(&nested.to_string()).unwrap(), nested);
        // and the normalized form is flat
        assert_eq!(nested.normalize(), parse("p0 & p1 & p2").unwrap());
    }

    #[test]
    fn normalize_is_idempotent_and_collapses() {
        let f = ModalFormula::And(vec![
            ModalFormula::var("a"),
            ModalFormula::And(vec![ModalFormula::var("b"), ModalFormula::var("c")]),
        ]);
        let n = f.normalize();
        assert_eq!(
            n,
            ModalFormula::And(vec![
                ModalFormula::var("a"),
                ModalFormula::var("b"),
                ModalFormula::var("c")
            ])
        );
        assert_eq!(n.normalize(), n);
        assert_eq!(ModalFormula::Or(vec![ModalFormula::var("a")]).normalize(), ModalFormula::var("a"));
    }

    #[test]
    fn satisfies_base_cases() {
        let single = frame(&["w"], &[]);
        let w = single.point("w").unwrap();
        let v = Valuation::new();
        assert!(satisfies(&single, &v, w, &parse("[]bot").unwrap()).unwrap());
        assert!(!satisfies(&single, &v, w, &parse("<>~bot").unwrap()).unwrap());

        let refl = frame(&["w"], &[("w", "w")]);
        let w = refl.point("w").unwrap();
        let v = Valuation::new().with("p", [w]);
        assert!(satisfies(&refl, &v, w, &parse("<>p").unwrap()).unwrap());
    }

    #[test]
    fn satisfies_two_step_diamond_in_h0() {
        let f = h0();
        let a = f.point("a").unwrap();
        let v = Valuation::new().with("p", [f.point("c0").unwrap()]);
        assert!(satisfies(&f, &v, a, &parse("<><>p").unwrap()).unwrap());
        assert!(!satisfies(&f, &v, f.point("c1").unwrap(), &parse("<>p").unwrap()).unwrap());
    }

    #[test]
    fn unassigned_variables_are_empty() {
        let f = fork();
        let r = f.point("r").unwrap();
        let v = Valuation::new();
        assert!(!satisfies(&f, &v, r, &parse("<>p").unwrap()).unwrap());
        assert!(satisfies(&f, &v, r, &parse("[]~p").unwrap()).unwrap());
    }

    #[test]
    fn foreign_points_are_rejected() {
        let big = h0();
        let small = frame(&["w"], &[]);
        let foreign = big.point("c1").unwrap();
        let v = Valuation::new().with("p", [foreign]);
        let err = satisfies(&small, &v, small.point("w").unwrap(), &parse("p").unwrap());
        assert_eq!(err.unwrap_err(), FormulaError::PointOutOfRange { index: 3, points: 1 });
        let err = satisfies(&small, &v.clone(), foreign, &parse("bot").unwrap());
        assert!(matches!(err.unwrap_err(), FormulaError::PointOutOfRange { .. }));
    }

    #[test]
    fn frame_validity_of_depth_formulas() {
        let budget = Budget::default();
        let single = frame(&["w"], &[]);
        assert!(frame_valid(&single, &mk_b(1).unwrap(), &budget).unwrap().is_valid());

        let chain3 = frame(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        assert!(frame_valid(&chain3, &mk_b(3).unwrap(), &budget).unwrap().is_valid());
        let inv = frame_valid(&chain3, &mk_b(2).unwrap(), &budget).unwrap();
        let counter = inv.countermodel().expect("rank 3 frame refutes depth 2");
        // the countermodel replays as an actual failure
        assert!(!satisfies(&chain3, &counter.valuation, counter.point, &mk_b(2).unwrap()).unwrap());

        assert!(frame_valid(&fork(), &mk_b(2).unwrap(), &budget).unwrap().is_valid());
    }

    #[test]
    fn frame_validity_of_width_formulas() {
        let budget = Budget::default();
        let f = fork();
        assert!(frame_valid(&f, &mk_wid(2).unwrap(), &budget).unwrap().is_valid());
        let inv = frame_valid(&f, &mk_wid(1).unwrap(), &budget).unwrap();
        let counter = inv.countermodel().expect("fork has width 2");
        assert!(!satisfies(&f, &counter.valuation, counter.point, &mk_wid(1).unwrap()).unwrap());
    }

    #[test]
    fn point_validity_of_weak_width_formulas_on_h0() {
        let budget = Budget::default();
        let f = h0();
        let a = f.point("a").unwrap();
        assert!(point_valid(&f, a, &mk_wid_plus(2).unwrap(), &budget).unwrap().is_valid());
        let inv = point_valid(&f, a, &mk_wid_plus(1).unwrap(), &budget).unwrap();
        let counter = inv.countermodel().expect("the b point generates a width-2 subframe");
        assert_eq!(counter.point, a);
        assert!(!satisfies(&f, &counter.valuation, a, &mk_wid_plus(1).unwrap()).unwrap());
        // bullet: two irreflexive incomparable points below a
        assert!(point_valid(&f, a, &mk_wid_bullet(2).unwrap(), &budget).unwrap().is_valid());
        assert!(!point_valid(&f, a, &mk_wid_bullet(1).unwrap(), &budget).unwrap().is_valid());
    }

    #[test]
    fn first_countermodel_is_lexicographically_least() {
        let f = fork();
        let wid1 = mk_wid(1).unwrap();
        let got = frame_valid(&f, &wid1, &Budget::default()).unwrap();
        let counter = got.countermodel().unwrap();

        // Oracle: scan valuation numbers upward with the independent
        // evaluator and rebuild the first failure.
        let vars = wid1.vars();
        let (k, n) = (vars.len(), f.len());
        let mut expected = None;
        'scan: for t in 0..1u64 << (k * n) {
            let v = valuation_at(t, &vars, n);
            let ov = to_oracle_valuation(&v);
            for w in 0..n {
                if !oracle(&f, &ov, w, &wid1) {
                    expected = Some((v, pid(w)));
                    break 'scan;
                }
            }
        }
        let (ev, ew) = expected.unwrap();
        assert_eq!(counter.valuation, ev);
        assert_eq!(counter.point, ew);
    }

    #[test]
    fn budget_is_enforced_and_reported() {
        let f = fork();
        let tight = Budget { enumeration: 1 << 10, search_nodes: 1 };
        let err = frame_valid(&f, &mk_wid(3).unwrap(), &tight).unwrap_err();
        assert_eq!(err, FormulaError::BudgetExceeded { needed_bits: 12, limit: 1 << 10 });
    }

    #[test]
    fn satisfiability_witness_replays() {
        let f = fork();
        let r = f.point("r").unwrap();
        assert_eq!(
            satisfiable_at(&f, r, &parse("p0 & ~p0").unwrap(), &Budget::default()).unwrap(),
            None
        );
        let phi = parse("<>p0 & []~p1").unwrap();
        let witness = satisfiable_at(&f, r, &phi, &Budget::default()).unwrap().unwrap();
        assert!(satisfies(&f, &witness, r, &phi).unwrap());
    }

    #[test]
    fn frame_formula_of_single_irreflexive_point() {
        let f = frame(&["w"], &[]);
        let spec = FrameFormulaSpec::canonical(f).unwrap();
        let p0 = ModalFormula::var("p0");
        let no_loop = ModalFormula::imp(p0.clone(), ModalFormula::neg(ModalFormula::dia(p0.clone())));
        assert_eq!(
            spec.formula(),
            ModalFormula::And(vec![
                p0.clone(),
                ModalFormula::nec(p0),
                no_loop.clone(),
                ModalFormula::nec(no_loop),
            ])
        );
        assert_eq!(spec.formula().to_string(), "p0 & []p0 & (p0 -> ~<>p0) & [](p0 -> ~<>p0)");
    }

    #[test]
    fn frame_formula_vars_count_points() {
        let spec = FrameFormulaSpec::canonical(h0()).unwrap();
        assert_eq!(spec.formula().vars().len(), 4);
    }

    #[test]
    fn canonical_valuation_satisfies_frame_formula_at_root() {
        let cluster = frame(&["u", "v"], &[("u", "v"), ("v", "u"), ("u", "u"), ("v", "v")]);
        for f in [h0(), fork(), cluster, frame(&["w"], &[("w", "w")])] {
            let spec = FrameFormulaSpec::canonical(f).unwrap();
            let root = spec.ordering()[0];
            let v = spec.canonical_valuation();
            assert!(
                satisfies(spec.frame(), &v, root, &spec.formula()).unwrap(),
                "frame formula rejected its own canonical model on {:?}",
                spec.frame()
            );
        }
    }

    #[test]
    fn frame_formula_spec_validation() {
        let f = fork();
        let (r, u, v) = (f.point("r").unwrap(), f.point("u").unwrap(), f.point("v").unwrap());
        assert!(matches!(
            FrameFormulaSpec::new(f.clone(), vec![r, u]).unwrap_err(),
            FormulaError::OrderingMismatch(_)
        ));
        assert!(matches!(
            FrameFormulaSpec::new(f.clone(), vec![r, u, u]).unwrap_err(),
            FormulaError::OrderingMismatch(_)
        ));
        assert!(matches!(
            FrameFormulaSpec::new(f.clone(), vec![u, r, v]).unwrap_err(),
            FormulaError::OrderingMismatch(_)
        ));
        assert!(FrameFormulaSpec::new(f, vec![r, v, u]).is_ok());

        let unrooted = Frame::disjoint_union(&[fork(), fork()]).unwrap();
        assert_eq!(
            FrameFormulaSpec::canonical(unrooted).unwrap_err(),
            FormulaError::NotRooted
        );
    }

    // ----- randomized agreement with the independent evaluator -------------

    fn formula_strategy() -> impl Strategy<Value = ModalFormula> {
        let leaf = prop_oneof![
            (0u32..3).prop_map(|i| ModalFormula::var(format!("p{i}"))),
            Just(ModalFormula::Bottom),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(ModalFormula::neg),
                inner.clone().prop_map(ModalFormula::nec),
                inner.clone().prop_map(ModalFormula::dia),
                prop::collection::vec(inner.clone(), 2..4).prop_map(ModalFormula::And),
                prop::collection::vec(inner.clone(), 2..4).prop_map(ModalFormula::Or),
                (inner.clone(), inner).prop_map(|(a, b)| ModalFormula::imp(a, b)),
            ]
        })
    }

    fn frame_strategy() -> impl Strategy<Value = Frame> {
        (1usize..=5).prop_flat_map(|n| {
            prop::collection::vec(prop::bool::ANY, n * n).prop_map(move |cells| {
                let points: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
                let mut edges = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if cells[i * n + j] {
                            edges.push((points[i].clone(), points[j].clone()));
                        }
                    }
                }
                Frame::build(points, &edges, true).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in formula_strategy()) {
            prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
        }

        #[test]
        fn mask_evaluator_agrees_with_oracle(
            f in frame_strategy(),
            phi in formula_strategy(),
            sets in prop::collection::vec(any::<u8>(), 3),
        ) {
            let mut v = Valuation::new();
            for (i, raw) in sets.iter().enumerate() {
                let pts: Vec<PointId> =
                    (0..f.len()).filter(|j| raw >> j & 1 == 1).map(pid).collect();
                v.set(format!("p{i}"), pts);
            }
            let ov = to_oracle_valuation(&v);
            for w in 0..f.len() {
                prop_assert_eq!(
                    satisfies(&f, &v, pid(w), &phi).unwrap(),
                    oracle(&f, &ov, w, &phi)
                );
            }
        }

        #[test]
        fn normalize_preserves_semantics(phi in formula_strategy()) {
            let f = fork();
            let v = Valuation::new()
                .with("p0", [f.point("r").unwrap()])
                .with("p1", [f.point("u").unwrap(), f.point("v").unwrap()]);
            let n = phi.normalize();
            for w in 0..f.len() {
                prop_assert_eq!(
                    satisfies(&f, &v, pid(w), &phi).unwrap(),
                    satisfies(&f, &v, pid(w), &n).unwrap()
                );
            }
        }
    }
}
