//! Finite trees with natural-number labels, the embedding quasi-order on
//! them, and the tree-shaped summaries of transitive frames.
//!
//! The point of this module: a transitive frame whose cluster order is an
//! upside-down tree can be summarised as a small labeled tree ([`rt`]), and a
//! rooted frame as a root label plus a forest of such summaries ([`srt`]).
//! Comparing two summaries with [`tree_embed`] is a cheap sufficient test for
//! one frame being reducible to the other; the reduction search in
//! [`crate::reduction`] provides the expensive ground truth.
//!
//! Trees are kept in a canonical form: the children of every node are sorted
//! by `(label, bracket text)`. All constructors and the parser establish this
//! invariant, so equal trees are structurally equal and serialization is
//! deterministic.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::frame::{bits, Frame, PointId, Skeleton};

/// Errors from tree parsing and from the frame-to-tree constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    /// The bracket text could not be parsed. Columns are 1-based characters.
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    /// The inverted cluster order of the frame is not a tree. The offending
    /// clusters (branching ones and, if several, the final ones) are named by
    /// their least member.
    #[error("cluster order is not an inverted tree; offending clusters: {}", clusters.join(", "))]
    SkeletonNotTree { clusters: Vec<String> },
    /// The frame has no root, so it has no initial cluster.
    #[error("frame has no root")]
    NotRooted,
    /// Some component above the initial cluster fails the tree shape that a
    /// weak-width-1 frame would guarantee. Offending clusters are named by
    /// their least member.
    #[error("upset component is not an inverted tree; offending clusters: {}", clusters.join(", "))]
    WeakWidthViolation { clusters: Vec<String> },
}

fn syntax(column: usize, message: impl Into<String>) -> TreeError {
    TreeError::Syntax { column, message: message.into() }
}

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

/// A finite tree whose nodes carry natural-number labels.
///
/// Children are stored in canonical order: ascending by `(label, bracket
/// text)`. Every public constructor restores this order, so two trees are
/// equal exactly when their bracket texts are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OmegaTree {
    label: u32,
    children: Vec<OmegaTree>,
}

impl OmegaTree {
    /// A node with the given label over the given subtrees. The subtrees are
    /// sorted into canonical sibling order; they must themselves already be
    /// canonical, which every public constructor guarantees.
    pub fn new(label: u32, mut children: Vec<OmegaTree>) -> OmegaTree {
        children.sort();
        OmegaTree { label, children }
    }

    /// A single node.
    pub fn leaf(label: u32) -> OmegaTree {
        OmegaTree { label, children: Vec::new() }
    }

    pub fn label(&self) -> u32 {
        self.label
    }

    /// Children in canonical sibling order.
    pub fn children(&self) -> &[OmegaTree] {
        &self.children
    }

    /// Number of levels; a single node has height 1.
    pub fn height(&self) -> u32 {
        1 + self.children.iter().map(OmegaTree::height).max().unwrap_or(0)
    }

    /// Total number of nodes.
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(OmegaTree::node_count).sum::<usize>()
    }

    /// Number of nodes labeled 0.
    pub fn zero_count(&self) -> usize {
        usize::from(self.label == 0)
            + self.children.iter().map(OmegaTree::zero_count).sum::<usize>()
    }

    /// Parse bracket text: a label, optionally followed by a parenthesised
    /// comma-separated list of subtrees, e.g. `2(0,3(1))`. Whitespace between
    /// tokens is ignored. The result is canonicalized.
    pub fn parse(text: &str) -> Result<OmegaTree, TreeError> {
        let mut parser = TreeParser { chars: text.chars().collect(), pos: 0 };
        let tree = parser.tree()?;
        parser.skip_ws();
        if parser.pos < parser.chars.len() {
            return Err(syntax(parser.col(), "unexpected trailing input"));
        }
        Ok(tree)
    }
}

/// Trees order by label first, then by bracket text. Children sorted under
/// this order are exactly in canonical sibling order.
impl Ord for OmegaTree {
    fn cmp(&self, other: &OmegaTree) -> Ordering {
        self.label
            .cmp(&other.label)
            .then_with(|| self.to_string().cmp(&other.to_string()))
    }
}

impl PartialOrd for OmegaTree {
    fn partial_cmp(&self, other: &OmegaTree) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OmegaTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if let Some((first, rest)) = self.children.split_first() {
            write!(f, "({first}")?;
            for child in rest {
                write!(f, ",{child}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl FromStr for OmegaTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<OmegaTree, TreeError> {
        OmegaTree::parse(s)
    }
}

struct TreeParser {
    chars: Vec<char>,
    pos: usize,
}

impl TreeParser {
    fn col(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn label(&mut self) -> Result<u32, TreeError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(syntax(self.col(), "expected a label"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| syntax(start + 1, "label too large"))
    }

    fn tree(&mut self) -> Result<OmegaTree, TreeError> {
        let label = self.label()?;
        self.skip_ws();
        let mut children = Vec::new();
        if self.peek() == Some('(') {
            self.pos += 1;
            loop {
                children.push(self.tree()?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(syntax(self.col(), "expected ',' or ')'")),
                }
            }
        }
        Ok(OmegaTree::new(label, children))
    }
}

// ---------------------------------------------------------------------------
// Standard triples
// ---------------------------------------------------------------------------

/// A tree viewed as its root label, the children rooted at 0, and the
/// children rooted at a positive label.
///
/// The positive children are arranged so that the child with the least
/// `(label, bracket text)` key comes last; in particular the last positive
/// child has the minimal root label among them. This is the arrangement the
/// embedding order [`tree_embed`] compares positive children in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdTriple {
    pub root_label: u32,
    pub zero_children: Vec<OmegaTree>,
    pub pos_children: Vec<OmegaTree>,
}

/// Split a tree into its standard triple.
pub fn std_triple(tree: &OmegaTree) -> StdTriple {
    let split = tree.children.partition_point(|c| c.label == 0);
    let zero_children = tree.children[..split].to_vec();
    let mut pos_children = tree.children[split..].to_vec();
    if !pos_children.is_empty() {
        // Canonical sibling order is ascending, so the least key is first;
        // rotating moves it to the mandated last slot.
        pos_children.rotate_left(1);
    }
    StdTriple { root_label: tree.label, zero_children, pos_children }
}

impl StdTriple {
    /// Rebuild the tree. `std_triple` of the result is this triple again.
    pub fn reassemble(&self) -> OmegaTree {
        let mut children = self.zero_children.clone();
        children.extend(self.pos_children.iter().cloned());
        OmegaTree::new(self.root_label, children)
    }
}

impl fmt::Display for StdTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, items: &[OmegaTree]) -> fmt::Result {
            write!(f, "(")?;
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{item}")?;
            }
            write!(f, ")")
        }
        write!(f, "({}, ", self.root_label)?;
        list(f, &self.zero_children)?;
        write!(f, ", ")?;
        list(f, &self.pos_children)?;
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// The orders
// ---------------------------------------------------------------------------

/// The base order on labels: `m ≼ n` iff `m = n = 0` or `0 < m ⩽ n`.
/// Zero relates only to zero.
pub fn nat_leq(m: u32, n: u32) -> bool {
    (m == 0 && n == 0) || (0 < m && m <= n)
}

/// Pointwise lift of `cmp` to equal-length sequences.
pub fn seq_pointwise<T>(cmp: impl Fn(&T, &T) -> bool, s: &[T], t: &[T]) -> bool {
    s.len() == t.len() && s.iter().zip(t).all(|(a, b)| cmp(a, b))
}

/// Subsequence lift of `cmp`: true iff both are empty, or `s` is nonempty and
/// no longer than `t`, the last element of `s` relates to the last element of
/// `t`, and `s` relates pointwise to some length-`ℓ(s)` subsequence of `t`.
///
/// Greedy leftmost matching decides the subsequence clause: any witness can
/// be shifted left element by element, so the greedy match exists whenever
/// any match does.
pub fn seq_embed<T>(cmp: impl Fn(&T, &T) -> bool, t: &[T], s: &[T]) -> bool {
    match (t.len(), s.len()) {
        (0, 0) => true,
        (n, k) if k > 0 && n >= k => {
            let mut rest = t.iter();
            cmp(&s[k - 1], &t[n - 1]) && s.iter().all(|a| rest.any(|b| cmp(a, b)))
        }
        _ => false,
    }
}

/// The embedding order on trees: does `small` embed into `large`?
///
/// Recursively over standard triples, `small ⊑ large` holds iff
/// - the root labels relate under [`nat_leq`],
/// - the zero-children lists have equal length and match under some
///   bijection, each pair related by `⊑`, and
/// - the positive-children lists are both empty, or both nonempty with
///   `large` having at least as many, the two last children related by `⊑`,
///   and the whole list of `small` embedding into the list of `large` as in
///   [`seq_embed`].
///
/// Note the order is deliberately rigid: a single node embeds only into a
/// single node, zero-children counts must agree exactly, and the last
/// positive child (the one with minimal label) must embed into the other
/// side's last positive child.
pub fn tree_embed(small: &OmegaTree, large: &OmegaTree) -> bool {
    let mut left = Arena::default();
    let root_l = left.collect(small);
    let mut right = Arena::default();
    let root_r = right.collect(large);
    let mut embedder = Embedder {
        memo: vec![None; left.nodes.len() * right.nodes.len()],
        left,
        right,
    };
    embedder.embed(root_l, root_r)
}

/// One tree flattened into indexable nodes, children pre-split into the
/// standard-triple view.
#[derive(Default)]
struct Arena<'a> {
    nodes: Vec<ArenaNode<'a>>,
}

struct ArenaNode<'a> {
    tree: &'a OmegaTree,
    zero: Vec<usize>,
    /// Positive children in triple order (minimal last).
    pos: Vec<usize>,
}

impl<'a> Arena<'a> {
    fn collect(&mut self, tree: &'a OmegaTree) -> usize {
        let split = tree.children.partition_point(|c| c.label == 0);
        let zero: Vec<usize> = tree.children[..split].iter().map(|c| self.collect(c)).collect();
        let mut pos: Vec<usize> = tree.children[split..].iter().map(|c| self.collect(c)).collect();
        if !pos.is_empty() {
            pos.rotate_left(1);
        }
        self.nodes.push(ArenaNode { tree, zero, pos });
        self.nodes.len() - 1
    }
}

struct Embedder<'a> {
    left: Arena<'a>,
    right: Arena<'a>,
    memo: Vec<Option<bool>>,
}

impl Embedder<'_> {
    fn embed(&mut self, i: usize, j: usize) -> bool {
        let key = i * self.right.nodes.len() + j;
        if let Some(known) = self.memo[key] {
            return known;
        }
        let verdict = self.decide(i, j);
        self.memo[key] = Some(verdict);
        verdict
    }

    fn decide(&mut self, i: usize, j: usize) -> bool {
        if !nat_leq(self.left.nodes[i].tree.label, self.right.nodes[j].tree.label) {
            return false;
        }
        let zero_l = self.left.nodes[i].zero.clone();
        let zero_r = self.right.nodes[j].zero.clone();
        if !self.zeros_match(&zero_l, &zero_r) {
            return false;
        }
        let pos_l = self.left.nodes[i].pos.clone();
        let pos_r = self.right.nodes[j].pos.clone();
        self.pos_match(&pos_l, &pos_r)
    }

    /// Equal counts and a perfect matching under ⊑ (augmenting paths).
    fn zeros_match(&mut self, ls: &[usize], rs: &[usize]) -> bool {
        if ls.len() != rs.len() {
            return false;
        }
        let m = ls.len();
        let mut adj = vec![false; m * m];
        for (a, &l) in ls.iter().enumerate() {
            for (b, &r) in rs.iter().enumerate() {
                adj[a * m + b] = self.embed(l, r);
            }
        }
        let mut matched_to = vec![usize::MAX; m];
        fn augment(a: usize, m: usize, adj: &[bool], seen: &mut [bool], matched_to: &mut [usize]) -> bool {
            for b in 0..m {
                if adj[a * m + b] && !seen[b] {
                    seen[b] = true;
                    if matched_to[b] == usize::MAX
                        || augment(matched_to[b], m, adj, seen, matched_to)
                    {
                        matched_to[b] = a;
                        return true;
                    }
                }
            }
            false
        }
        (0..m).all(|a| augment(a, m, &adj, &mut vec![false; m], &mut matched_to))
    }

    /// Clause for positive children: both empty, or last-to-last plus a
    /// greedy order-preserving injection of the whole left list.
    fn pos_match(&mut self, ls: &[usize], rs: &[usize]) -> bool {
        match (rs.len(), ls.len()) {
            (0, 0) => true,
            (l, n) if n > 0 && l >= n => {
                if !self.embed(ls[n - 1], rs[l - 1]) {
                    return false;
                }
                let mut next = 0;
                for &a in ls {
                    match (next..l).find(|&b| self.embed(a, rs[b])) {
                        Some(b) => next = b + 1,
                        None => return false,
                    }
                }
                true
            }
            _ => false,
        }
    }
}

/// The class of trees of height at most `height_bound` with fewer than
/// `zero_bound` zero-labeled nodes. The embedding order is a
/// well-quasi-order on each such class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeClass {
    pub height_bound: u32,
    pub zero_bound: u32,
}

impl TreeClass {
    pub fn new(height_bound: u32, zero_bound: u32) -> TreeClass {
        TreeClass { height_bound, zero_bound }
    }

    pub fn contains(&self, tree: &OmegaTree) -> bool {
        tree.height() <= self.height_bound && (tree.zero_count() as u32) < self.zero_bound
    }
}

// ---------------------------------------------------------------------------
// Frames to trees
// ---------------------------------------------------------------------------

fn cluster_name(frame: &Frame, sk: &Skeleton, c: usize) -> String {
    frame.name(PointId(sk.clusters[c].least() as u32)).to_string()
}

fn cluster_label(sk: &Skeleton, c: usize) -> u32 {
    if sk.clusters[c].degenerate {
        0
    } else {
        sk.clusters[c].size()
    }
}

/// Clusters that prevent the inverted cluster order from being a tree:
/// clusters whose strict successors are not a chain, and all final clusters
/// when there are several. Empty means the order is a tree.
fn skeleton_tree_offenders(sk: &Skeleton) -> BTreeSet<usize> {
    let mut offenders = BTreeSet::new();
    for c in 0..sk.len() {
        let succs = sk.successors(c);
        for (i, &d) in succs.iter().enumerate() {
            if succs[i + 1..]
                .iter()
                .any(|&e| !sk.sees(d, e) && !sk.sees(e, d))
            {
                offenders.insert(c);
            }
        }
    }
    let finals = sk.final_clusters();
    if finals.len() > 1 {
        offenders.extend(finals);
    }
    offenders
}

fn rt_from_skeleton(frame: &Frame, sk: &Skeleton) -> Result<OmegaTree, TreeError> {
    let offenders = skeleton_tree_offenders(sk);
    if !offenders.is_empty() {
        return Err(TreeError::SkeletonNotTree {
            clusters: offenders.iter().map(|&c| cluster_name(frame, sk, c)).collect(),
        });
    }
    // Every cluster's strict successor set is now a chain, so each non-final
    // cluster has a unique immediate successor, its parent in the tree.
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); sk.len()];
    let mut root = None;
    for c in 0..sk.len() {
        let succs = sk.strict_mask(c);
        if succs == 0 {
            root = Some(c);
            continue;
        }
        let parent = bits(succs)
            .find(|&d| succs & !(1u64 << d) & !sk.strict_mask(d) == 0)
            .expect("a finite chain has a least element");
        kids[parent].push(c);
    }
    fn build(sk: &Skeleton, kids: &[Vec<usize>], c: usize) -> OmegaTree {
        OmegaTree::new(
            cluster_label(sk, c),
            kids[c].iter().map(|&d| build(sk, kids, d)).collect(),
        )
    }
    Ok(build(sk, &kids, root.expect("a nonempty frame has a final cluster")))
}

/// The representation tree of a frame whose inverted cluster order is a
/// tree: that tree, rooted at the final cluster, each cluster labeled by its
/// size if nondegenerate and by 0 if degenerate.
pub fn rt(frame: &Frame) -> Result<OmegaTree, TreeError> {
    rt_from_skeleton(frame, &frame.skeleton())
}

/// The points strictly above the initial cluster, or `NotRooted`.
fn above_initial(frame: &Frame) -> Result<u64, TreeError> {
    let roots = frame.roots();
    if roots.is_empty() {
        return Err(TreeError::NotRooted);
    }
    let mut root_mask = 0u64;
    for r in &roots {
        root_mask |= 1u64 << r.index();
    }
    Ok(frame.all_mask() & !root_mask)
}

/// Split the part of the frame strictly above the initial cluster into its
/// weakly connected components, each of which must pass the tree check that
/// [`rt`] performs. Components are ordered by their least point and keep the
/// original point names. A one-cluster frame yields the empty list.
pub fn decompose_upset(frame: &Frame) -> Result<Vec<Frame>, TreeError> {
    let mut remaining = above_initial(frame)?;
    let mut components = Vec::new();
    while remaining != 0 {
        let mut comp = 1u64 << remaining.trailing_zeros();
        loop {
            let mut grown = comp;
            for w in bits(comp) {
                grown |= (frame.succ_mask(w) | frame.pred_mask(w)) & remaining;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        remaining &= !comp;
        let part = frame
            .restrict_mask(comp)
            .expect("component masks are nonempty");
        let offenders = skeleton_tree_offenders(&part.skeleton());
        if !offenders.is_empty() {
            let sk = part.skeleton();
            return Err(TreeError::WeakWidthViolation {
                clusters: offenders.iter().map(|&c| cluster_name(&part, &sk, c)).collect(),
            });
        }
        components.push(part);
    }
    Ok(components)
}

/// The standard representation tree of a rooted frame: the initial cluster's
/// label over the representation trees of the components above it. View the
/// result with [`std_triple`] for the grouped presentation.
pub fn srt(frame: &Frame) -> Result<OmegaTree, TreeError> {
    let components = decompose_upset(frame)?;
    let sk = frame.skeleton();
    let initial = sk.cluster_of(frame.roots()[0]);
    let mut children = Vec::with_capacity(components.len());
    for part in &components {
        let tree = rt_from_skeleton(part, &part.skeleton()).map_err(|e| match e {
            TreeError::SkeletonNotTree { clusters } => TreeError::WeakWidthViolation { clusters },
            other => other,
        })?;
        children.push(tree);
    }
    Ok(OmegaTree::new(cluster_label(&sk, initial), children))
}
