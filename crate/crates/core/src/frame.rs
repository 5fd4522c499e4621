//! Finite transitive Kripke frames and their structural invariants.
//!
//! A [`Frame`] is an immutable set of named points together with a transitive
//! relation, stored as per-point successor bitmasks. Construction either
//! validates transitivity or takes the transitive closure; every operation
//! after that can rely on the invariant. Points are addressed by [`PointId`]
//! (an index in the fixed point order, which also breaks every tie the
//! algorithms need to break).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Maximum number of points a frame may hold (point sets are u64 bitmasks).
pub const MAX_POINTS: usize = 64;

/// Index of a point within its frame's fixed point order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub(crate) u32);

impl PointId {
    /// Position of the point in the frame's point order.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Errors arising while building or querying a frame.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    /// Frames must have at least one point.
    #[error("frame must contain at least one point")]
    EmptyFrame,
    /// More points than the bitmask representation supports.
    #[error("frame has {0} points, maximum supported is {MAX_POINTS}")]
    TooManyPoints(usize),
    /// The same point name appeared twice.
    #[error("duplicate point {0:?}")]
    DuplicatePoint(String),
    /// An edge referred to a point that is not in the point list.
    #[error("edge endpoint {0:?} is not a declared point")]
    DanglingEdge(String),
    /// Relation is not transitive; carries the first violating triple
    /// (w, u, v) with R w u and R u v but not R w v.
    #[error("relation is not transitive: saw ({0:?}, {1:?}) and ({1:?}, {2:?}) but not ({0:?}, {2:?})")]
    NonTransitive(String, String, String),
    /// A subframe generator set was empty.
    #[error("generator set must be non-empty")]
    EmptyGenerator,
    /// A point name lookup failed.
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    /// The operation requires a rooted frame.
    #[error("frame is not rooted")]
    NotRooted,
    /// Disjoint union of an empty list of frames.
    #[error("disjoint union requires at least one frame")]
    EmptyUnion,
}

/// A finite transitive Kripke frame.
#[derive(Clone, PartialEq, Eq)]
pub struct Frame {
    names: Vec<String>,
    lookup: BTreeMap<String, u32>,
    /// succ[w] = bitmask of points u with R w u.
    succ: Vec<u64>,
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut edges = Vec::new();
        for w in 0..self.len() {
            for u in bits(self.succ[w]) {
                edges.push(format!("{}->{}", self.names[w], self.names[u]));
            }
        }
        f.debug_struct("Frame")
            .field("points", &self.names)
            .field("edges", &edges)
            .finish()
    }
}

/// Iterate over the set bit positions of a mask, ascending.
pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

impl Frame {
    /// Build a frame from named points and edges.
    ///
    /// With `auto_close` the relation is completed to its transitive closure;
    /// without it a non-transitive edge set is rejected, reporting the first
    /// violating triple in point order.
    pub fn build<S1, S2>(points: Vec<String>, edges: &[(S1, S2)], auto_close: bool) -> Result<Frame, FrameError>
    where
        S1: AsRef<str>,
        S2: AsRef<str>,
    {
        if points.is_empty() {
            return Err(FrameError::EmptyFrame);
        }
        if points.len() > MAX_POINTS {
            return Err(FrameError::TooManyPoints(points.len()));
        }
        let mut lookup = BTreeMap::new();
        for (i, name) in points.iter().enumerate() {
            if lookup.insert(name.clone(), i as u32).is_some() {
                return Err(FrameError::DuplicatePoint(name.clone()));
            }
        }
        let mut succ = vec![0u64; points.len()];
        for (from, to) in edges {
            let w = *lookup
                .get(from.as_ref())
                .ok_or_else(|| FrameError::DanglingEdge(from.as_ref().to_owned()))?;
            let u = *lookup
                .get(to.as_ref())
                .ok_or_else(|| FrameError::DanglingEdge(to.as_ref().to_owned()))?;
            succ[w as usize] |= 1u64 << u;
        }
        let mut frame = Frame { names: points, lookup, succ };
        if auto_close {
            frame.close_transitively();
        } else {
            frame.validate_transitive()?;
        }
        Ok(frame)
    }

    fn close_transitively(&mut self) {
        let n = self.len();
        for via in 0..n {
            for w in 0..n {
                if self.succ[w] & (1u64 << via) != 0 {
                    self.succ[w] |= self.succ[via];
                }
            }
        }
    }

    fn validate_transitive(&self) -> Result<(), FrameError> {
        for w in 0..self.len() {
            for u in bits(self.succ[w]) {
                let missing = self.succ[u] & !self.succ[w];
                if missing != 0 {
                    let v = missing.trailing_zeros() as usize;
                    return Err(FrameError::NonTransitive(
                        self.names[w].clone(),
                        self.names[u].clone(),
                        self.names[v].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Frames are never empty, but the conventional probe is still useful.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// All points in point order.
    pub fn points(&self) -> impl Iterator<Item = PointId> + '_ {
        (0..self.len() as u32).map(PointId)
    }

    /// Point names in point order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Look a point up by name.
    pub fn point(&self, name: &str) -> Result<PointId, FrameError> {
        self.lookup
            .get(name)
            .map(|&i| PointId(i))
            .ok_or_else(|| FrameError::UnknownPoint(name.to_owned()))
    }

    /// Name of a point.
    pub fn name(&self, p: PointId) -> &str {
        &self.names[p.index()]
    }

    /// Convert a list of points to their names, in the given order.
    pub fn names_of(&self, ps: &[PointId]) -> Vec<String> {
        ps.iter().map(|&p| self.name(p).to_owned()).collect()
    }

    /// R w u?
    pub fn sees(&self, w: PointId, u: PointId) -> bool {
        self.succ[w.index()] & (1u64 << u.0) != 0
    }

    /// R w u and not R u w (the strict part of the relation).
    pub fn sees_properly(&self, w: PointId, u: PointId) -> bool {
        self.sees(w, u) && !self.sees(u, w)
    }

    /// Neither R w u nor R u w, for distinct points.
    pub fn incomparable(&self, w: PointId, u: PointId) -> bool {
        w != u && !self.sees(w, u) && !self.sees(u, w)
    }

    /// R w w?
    pub fn is_reflexive(&self, p: PointId) -> bool {
        self.sees(p, p)
    }

    /// Relation as ordered name pairs, in point order.
    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for w in 0..self.len() {
            for u in bits(self.succ[w]) {
                out.push((self.names[w].clone(), self.names[u].clone()));
            }
        }
        out
    }

    // ----- mask plumbing -------------------------------------------------

    pub(crate) fn all_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub(crate) fn succ_mask(&self, w: usize) -> u64 {
        self.succ[w]
    }

    pub(crate) fn pred_mask(&self, u: usize) -> u64 {
        let mut m = 0u64;
        for w in 0..self.len() {
            if self.succ[w] & (1u64 << u) != 0 {
                m |= 1u64 << w;
            }
        }
        m
    }

    pub(crate) fn mask_of(&self, ps: &[PointId]) -> u64 {
        ps.iter().fold(0u64, |m, p| m | (1u64 << p.0))
    }

    pub(crate) fn mask_points(&self, mask: u64) -> Vec<PointId> {
        bits(mask).map(|i| PointId(i as u32)).collect()
    }

    pub(crate) fn upset_mask(&self, mask: u64) -> u64 {
        bits(mask).fold(0u64, |m, w| m | self.succ[w])
    }

    pub(crate) fn downset_mask(&self, mask: u64) -> u64 {
        bits(mask).fold(0u64, |m, u| m | self.pred_mask(u))
    }

    // ----- set operations -------------------------------------------------

    /// X↑ — every point some member of X sees.
    pub fn upset(&self, xs: &[PointId]) -> Vec<PointId> {
        self.mask_points(self.upset_mask(self.mask_of(xs)))
    }

    /// X↑⁻ = X↑ − X.
    pub fn upset_strict(&self, xs: &[PointId]) -> Vec<PointId> {
        let m = self.mask_of(xs);
        self.mask_points(self.upset_mask(m) & !m)
    }

    /// X↓ — every point that sees some member of X.
    pub fn downset(&self, xs: &[PointId]) -> Vec<PointId> {
        self.mask_points(self.downset_mask(self.mask_of(xs)))
    }

    /// X↓⁻ = X↓ − X.
    pub fn downset_strict(&self, xs: &[PointId]) -> Vec<PointId> {
        let m = self.mask_of(xs);
        self.mask_points(self.downset_mask(m) & !m)
    }

    /// The subframe generated by X: the restriction to X ∪ X↑.
    ///
    /// Point names and their relative order are preserved.
    pub fn generated_subframe(&self, xs: &[PointId]) -> Result<Frame, FrameError> {
        if xs.is_empty() {
            return Err(FrameError::EmptyGenerator);
        }
        let m = self.mask_of(xs);
        self.restrict_mask(m | self.upset_mask(m))
    }

    /// The restriction F↾X (no upward closure).
    pub fn restriction(&self, xs: &[PointId]) -> Result<Frame, FrameError> {
        if xs.is_empty() {
            return Err(FrameError::EmptyGenerator);
        }
        self.restrict_mask(self.mask_of(xs))
    }

    pub(crate) fn restrict_mask(&self, mask: u64) -> Result<Frame, FrameError> {
        let keep: Vec<usize> = bits(mask).collect();
        if keep.is_empty() {
            return Err(FrameError::EmptyGenerator);
        }
        let mut names = Vec::with_capacity(keep.len());
        let mut lookup = BTreeMap::new();
        let mut reindex = vec![0u32; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            names.push(self.names[old].clone());
            lookup.insert(self.names[old].clone(), new as u32);
            reindex[old] = new as u32;
        }
        let mut succ = vec![0u64; keep.len()];
        for (new, &old) in keep.iter().enumerate() {
            for u in bits(self.succ[old] & mask) {
                succ[new] |= 1u64 << reindex[u];
            }
        }
        Ok(Frame { names, lookup, succ })
    }

    /// Roots: points w with W ⊆ {w} ∪ w↑. Empty list means unrooted.
    pub fn roots(&self) -> Vec<PointId> {
        let all = self.all_mask();
        (0..self.len())
            .filter(|&w| self.succ[w] | (1u64 << w) == all)
            .map(|w| PointId(w as u32))
            .collect()
    }

    /// Disjoint union; point names are tagged with their source index.
    pub fn disjoint_union(frames: &[Frame]) -> Result<Frame, FrameError> {
        if frames.is_empty() {
            return Err(FrameError::EmptyUnion);
        }
        let total: usize = frames.iter().map(|f| f.len()).sum();
        if total > MAX_POINTS {
            return Err(FrameError::TooManyPoints(total));
        }
        let mut names = Vec::with_capacity(total);
        let mut succ = Vec::with_capacity(total);
        let mut offset = 0usize;
        for (i, f) in frames.iter().enumerate() {
            for (w, name) in f.names.iter().enumerate() {
                names.push(format!("{i}:{name}"));
                succ.push(f.succ[w] << offset);
            }
            offset += f.len();
        }
        let mut lookup = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            lookup.insert(name.clone(), i as u32);
        }
        Ok(Frame { names, lookup, succ })
    }

    // ----- clusters and skeleton -------------------------------------------

    /// Partition into clusters and the strict order between them.
    pub fn skeleton(&self) -> Skeleton {
        let n = self.len();
        let mut cluster_of = vec![u32::MAX; n];
        let mut clusters: Vec<Cluster> = Vec::new();
        for w in 0..n {
            if cluster_of[w] != u32::MAX {
                continue;
            }
            let mut members = 1u64 << w;
            for u in w + 1..n {
                if self.sees(PointId(w as u32), PointId(u as u32))
                    && self.sees(PointId(u as u32), PointId(w as u32))
                {
                    members |= 1u64 << u;
                }
            }
            let id = clusters.len() as u32;
            for m in bits(members) {
                cluster_of[m] = id;
            }
            let degenerate = members.count_ones() == 1 && !self.is_reflexive(PointId(w as u32));
            clusters.push(Cluster { members, degenerate });
        }
        let mut strict = vec![0u64; clusters.len()];
        for (c, cl) in clusters.iter().enumerate() {
            let rep = cl.least();
            for (d, dl) in clusters.iter().enumerate() {
                if c != d && self.succ[rep] & (1u64 << dl.least()) != 0 {
                    strict[c] |= 1u64 << d;
                }
            }
        }
        Skeleton { clusters, cluster_of, strict }
    }

    // ----- rank -------------------------------------------------------------

    /// Rank of a point: the length of the longest strictly ascending chain
    /// starting at it (the point itself included).
    pub fn rank_of(&self, p: PointId) -> u32 {
        let sk = self.skeleton();
        sk.cluster_ranks()[sk.cluster_of(p)]
    }

    /// Rank of the frame: the maximum point rank.
    pub fn rank(&self) -> u32 {
        let sk = self.skeleton();
        sk.cluster_ranks().iter().copied().max().unwrap_or(0)
    }

    /// Does every point have rank ⩽ n? On failure returns a strictly
    /// ascending chain longer than n as the certificate.
    pub fn check_rank_at_most(&self, n: u32) -> Option<Vec<PointId>> {
        let sk = self.skeleton();
        let ranks = sk.cluster_ranks();
        let max = ranks.iter().copied().max().unwrap_or(0);
        if max <= n {
            return None;
        }
        // Reconstruct a longest chain, preferring least cluster indices.
        let mut chain = Vec::new();
        let mut want = max;
        let mut at = (0..sk.clusters.len()).find(|&c| ranks[c] == max).unwrap();
        loop {
            chain.push(PointId(sk.clusters[at].least() as u32));
            if want == 1 {
                break;
            }
            want -= 1;
            at = bits(sk.strict[at]).find(|&d| ranks[d] == want).unwrap();
        }
        Some(chain)
    }

    // ----- antichains -------------------------------------------------------

    /// A maximum antichain (pairwise incomparable points); with
    /// `irreflexive_only` the antichain may only use irreflexive points.
    ///
    /// Among all maximum antichains the lexicographically least point set is
    /// returned, so the result is deterministic. The result is empty only
    /// when no candidate point exists at all (for `irreflexive_only` on a
    /// frame whose points are all reflexive).
    pub fn max_antichain(&self, irreflexive_only: bool) -> Vec<PointId> {
        let n = self.len();
        let mut cand = self.all_mask();
        if irreflexive_only {
            for w in 0..n {
                if self.is_reflexive(PointId(w as u32)) {
                    cand &= !(1u64 << w);
                }
            }
        }
        if cand == 0 {
            return Vec::new();
        }
        // Incomparability adjacency restricted to the candidates.
        let mut adj = vec![0u64; n];
        for w in bits(cand) {
            let comparable = self.succ[w] | self.pred_mask(w) | (1u64 << w);
            adj[w] = cand & !comparable;
        }
        let best = max_clique_size(&adj, cand, 0);
        // Lexicographically least witness of the maximum size: fix points in
        // ascending order whenever a completion of the maximum size remains.
        let mut chosen = 0u64;
        let mut chosen_len = 0u32;
        let mut allowed = cand;
        for w in bits(cand) {
            if allowed & (1u64 << w) == 0 {
                continue;
            }
            let next_allowed = allowed & adj[w];
            if chosen_len + 1 + max_clique_size(&adj, next_allowed, 0) >= best {
                chosen |= 1u64 << w;
                chosen_len += 1;
                allowed = next_allowed;
            } else {
                allowed &= !(1u64 << w);
            }
        }
        debug_assert_eq!(chosen_len, best);
        self.mask_points(chosen)
    }

    /// Width check: does every antichain have at most n points?
    ///
    /// Requires a rooted frame; on failure returns the maximum antichain as
    /// the certificate.
    pub fn check_width_at_most(&self, n: u32) -> Result<Option<Vec<PointId>>, FrameError> {
        if self.roots().is_empty() {
            return Err(FrameError::NotRooted);
        }
        let witness = self.max_antichain(false);
        if witness.len() as u32 <= n {
            Ok(None)
        } else {
            Ok(Some(witness))
        }
    }

    /// Width of the frame (maximum antichain size), rooted or not.
    pub fn width(&self) -> u32 {
        self.max_antichain(false).len() as u32
    }

    /// Weak-width check at w: does every u with strict R w u generate a
    /// subframe of width at most n? On failure names the offending successor
    /// together with an oversized antichain inside its generated subframe.
    pub fn check_weak_width_at_most(&self, w: PointId, n: u32) -> Option<WeakWidthWitness> {
        for u in bits(self.succ[w.index()]) {
            let u = PointId(u as u32);
            if self.sees(u, w) {
                continue; // not a strict successor
            }
            let sub = self
                .generated_subframe(&[u])
                .expect("singleton generator is never empty");
            let antichain = sub.max_antichain(false);
            if antichain.len() as u32 > n {
                let antichain = antichain
                    .iter()
                    .map(|&p| self.point(sub.name(p)).expect("subframe points exist in parent"))
                    .collect();
                return Some(WeakWidthWitness { successor: u, antichain });
            }
        }
        None
    }

    /// Weak width at w: the largest width among subframes generated by strict
    /// successors of w (0 when w has none).
    pub fn weak_width_at(&self, w: PointId) -> u32 {
        let mut best = 0;
        for u in bits(self.succ[w.index()]) {
            let u = PointId(u as u32);
            if self.sees(u, w) {
                continue;
            }
            let sub = self
                .generated_subframe(&[u])
                .expect("singleton generator is never empty");
            best = best.max(sub.width());
        }
        best
    }

    /// Does every point of the frame satisfy the weak-width bound n?
    pub fn weak_width_at_most_everywhere(&self, n: u32) -> bool {
        self.points().all(|w| self.check_weak_width_at_most(w, n).is_none())
    }

    /// Irreflexive-antichain check at w: does every antichain of irreflexive
    /// points inside the subframe generated by w have at most n members?
    /// On failure returns an oversized irreflexive antichain.
    pub fn check_irr_antichain_at_most(&self, w: PointId, n: u32) -> Option<Vec<PointId>> {
        let sub = self
            .generated_subframe(&[w])
            .expect("singleton generator is never empty");
        let witness = sub.max_antichain(true);
        if witness.len() as u32 <= n {
            None
        } else {
            Some(
                witness
                    .iter()
                    .map(|&p| self.point(sub.name(p)).expect("subframe points exist in parent"))
                    .collect(),
            )
        }
    }

    /// Size of the largest irreflexive antichain of the whole frame.
    pub fn irr_antichain_max(&self) -> u32 {
        self.max_antichain(true).len() as u32
    }
}

/// Certificate for a failed weak-width check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakWidthWitness {
    /// The strict successor whose generated subframe is too wide.
    pub successor: PointId,
    /// An antichain of that subframe exceeding the bound.
    pub antichain: Vec<PointId>,
}

/// Size of a maximum clique of `adj` inside `allowed`, plus `have`.
///
/// Plain branch and bound: candidates are visited in ascending point order,
/// include-branch first, pruning when even taking every remaining candidate
/// cannot beat the best found so far.
fn max_clique_size(adj: &[u64], allowed: u64, have: u32) -> u32 {
    fn go(adj: &[u64], allowed: u64, have: u32, best: &mut u32) {
        if have + allowed.count_ones() <= *best {
            return;
        }
        if allowed == 0 {
            *best = (*best).max(have);
            return;
        }
        let w = allowed.trailing_zeros() as usize;
        go(adj, allowed & adj[w], have + 1, best);
        go(adj, allowed & !(1u64 << w), have, best);
    }
    let mut best = have;
    go(adj, allowed, have, &mut best);
    best
}

/// One cluster of a frame: a maximal set of mutually related points, or a
/// single point. Degenerate means a lone irreflexive point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub(crate) members: u64,
    pub degenerate: bool,
}

impl Cluster {
    pub(crate) fn least(&self) -> usize {
        self.members.trailing_zeros() as usize
    }

    /// Members in point order.
    pub fn members(&self) -> Vec<PointId> {
        bits(self.members).map(|i| PointId(i as u32)).collect()
    }

    /// Number of points in the cluster.
    pub fn size(&self) -> u32 {
        self.members.count_ones()
    }
}

/// The cluster partition of a frame with the strict order between clusters.
///
/// Clusters are listed by their least member, so cluster indices are stable
/// for a given frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub clusters: Vec<Cluster>,
    cluster_of: Vec<u32>,
    /// strict[c] = bitmask of clusters d ≠ c with c seeing d.
    strict: Vec<u64>,
}

impl Skeleton {
    /// Number of clusters.
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Index of the cluster containing p.
    pub fn cluster_of(&self, p: PointId) -> usize {
        self.cluster_of[p.index()] as usize
    }

    /// Does cluster c strictly precede cluster d?
    pub fn sees(&self, c: usize, d: usize) -> bool {
        self.strict[c] & (1u64 << d) != 0
    }

    /// Bitmask of strict successors of cluster c.
    pub(crate) fn strict_mask(&self, c: usize) -> u64 {
        self.strict[c]
    }

    /// Cluster indices of the strict successors of c, ascending.
    pub fn successors(&self, c: usize) -> Vec<usize> {
        bits(self.strict[c]).collect()
    }

    /// Rank of every cluster: 1 + the longest strict chain below it.
    pub fn cluster_ranks(&self) -> Vec<u32> {
        let n = self.clusters.len();
        let mut ranks = vec![0u32; n];
        fn rank_of(sk: &Skeleton, c: usize, ranks: &mut Vec<u32>) -> u32 {
            if ranks[c] != 0 {
                return ranks[c];
            }
            let mut r = 1;
            for d in bits(sk.strict[c]) {
                r = r.max(1 + rank_of(sk, d, ranks));
            }
            ranks[c] = r;
            r
        }
        for c in 0..n {
            rank_of(self, c, &mut ranks);
        }
        ranks
    }

    /// Clusters with no strict successor (the maximal ones).
    pub fn final_clusters(&self) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.strict[c] == 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn frame(points: &[&str], edges: &[(&str, &str)], auto_close: bool) -> Frame {
        Frame::build(points.iter().map(|s| s.to_string()).collect(), edges, auto_close).unwrap()
    }

    /// The witness family member H(1) built by hand: a above all 2-element
    /// subsets of the 3-point antichain {0,1,2}.
    fn h1_by_hand() -> Frame {
        frame(
            &["a", "b{0,1}", "b{0,2}", "b{1,2}", "c0", "c1", "c2"],
            &[
                ("a", "b{0,1}"),
                ("a", "b{0,2}"),
                ("a", "b{1,2}"),
                ("a", "c0"),
                ("a", "c1"),
                ("a", "c2"),
                ("b{0,1}", "c0"),
                ("b{0,1}", "c1"),
                ("b{0,2}", "c0"),
                ("b{0,2}", "c2"),
                ("b{1,2}", "c1"),
                ("b{1,2}", "c2"),
            ],
            false,
        )
    }

    fn h0_by_hand() -> Frame {
        frame(
            &["a", "b{0,1}", "c0", "c1"],
            &[
                ("a", "b{0,1}"),
                ("a", "c0"),
                ("a", "c1"),
                ("b{0,1}", "c0"),
                ("b{0,1}", "c1"),
            ],
            false,
        )
    }

    fn fork() -> Frame {
        frame(&["r", "u", "v"], &[("r", "u"), ("r", "v")], false)
    }

    #[test]
    fn auto_close_completes_chain() {
        let f = frame(&["a", "b", "c"], &[("a", "b"), ("b", "c")], true);
        let (a, b, c) = (f.point("a").unwrap(), f.point("b").unwrap(), f.point("c").unwrap());
        assert!(f.sees(a, b) && f.sees(b, c) && f.sees(a, c));
        assert!(!f.sees(c, a) && !f.is_reflexive(a));
    }

    #[test]
    fn validation_rejects_open_chain() {
        let err = Frame::build(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a", "b"), ("b", "c")],
            false,
        )
        .unwrap_err();
        assert_eq!(
            err,
            FrameError::NonTransitive("a".into(), "b".into(), "c".into())
        );
    }

    #[test]
    fn build_input_errors() {
        assert_eq!(
            Frame::build(Vec::new(), &[] as &[(&str, &str)], true).unwrap_err(),
            FrameError::EmptyFrame
        );
        assert_eq!(
            Frame::build(vec!["a".into(), "a".into()], &[] as &[(&str, &str)], true).unwrap_err(),
            FrameError::DuplicatePoint("a".into())
        );
        assert_eq!(
            Frame::build(vec!["a".into()], &[("a", "zz")], true).unwrap_err(),
            FrameError::DanglingEdge("zz".into())
        );
        let too_many: Vec<String> = (0..65).map(|i| format!("w{i}")).collect();
        assert_eq!(
            Frame::build(too_many, &[] as &[(&str, &str)], true).unwrap_err(),
            FrameError::TooManyPoints(65)
        );
    }

    #[test]
    fn upset_of_root_covers_everything_above() {
        let f = h0_by_hand();
        let a = f.point("a").unwrap();
        assert_eq!(f.names_of(&f.upset(&[a])), vec!["b{0,1}", "c0", "c1"]);
        assert_eq!(f.names_of(&f.upset_strict(&[a])), vec!["b{0,1}", "c0", "c1"]);
    }

    #[test]
    fn upset_of_reflexive_point_contains_it() {
        let f = frame(&["w"], &[("w", "w")], false);
        let w = f.point("w").unwrap();
        assert_eq!(f.upset(&[w]), vec![w]);
        assert!(f.upset_strict(&[w]).is_empty());
    }

    #[test]
    fn downset_inverts_upset() {
        let f = h0_by_hand();
        let c0 = f.point("c0").unwrap();
        assert_eq!(f.names_of(&f.downset(&[c0])), vec!["a", "b{0,1}"]);
        assert_eq!(f.names_of(&f.downset_strict(&[c0])), vec!["a", "b{0,1}"]);
    }

    #[test]
    fn generated_subframe_of_top_is_single_point() {
        let f = frame(&["a", "b"], &[("a", "b")], false);
        let sub = f.generated_subframe(&[f.point("b").unwrap()]).unwrap();
        assert_eq!(sub.len(), 1);
        assert_eq!(sub.names(), &["b".to_string()]);
        assert!(!sub.is_reflexive(sub.point("b").unwrap()));
    }

    #[test]
    fn generated_subframe_requires_generators() {
        let f = fork();
        assert_eq!(f.generated_subframe(&[]).unwrap_err(), FrameError::EmptyGenerator);
    }

    #[test]
    fn roots_of_cluster_are_all_members() {
        let f = frame(&["u", "v"], &[("u", "v"), ("v", "u"), ("u", "u"), ("v", "v")], false);
        assert_eq!(f.names_of(&f.roots()), vec!["u", "v"]);
    }

    #[test]
    fn rooted_and_unrooted() {
        assert_eq!(h1_by_hand().names_of(&h1_by_hand().roots()), vec!["a"]);
        let two = Frame::disjoint_union(&[fork(), fork()]).unwrap();
        assert!(two.roots().is_empty());
    }

    #[test]
    fn disjoint_union_tags_points_and_keeps_rank() {
        let chain = frame(&["a", "b"], &[("a", "b")], false);
        let single = frame(&["w"], &[("w", "w")], false);
        let u = Frame::disjoint_union(&[chain, single]).unwrap();
        assert_eq!(u.names(), &["0:a", "0:b", "1:w"]);
        assert!(u.sees(u.point("0:a").unwrap(), u.point("0:b").unwrap()));
        assert!(!u.sees(u.point("0:a").unwrap(), u.point("1:w").unwrap()));
        assert_eq!(u.rank(), 2);
        assert_eq!(Frame::disjoint_union(&[]).unwrap_err(), FrameError::EmptyUnion);
    }

    #[test]
    fn clusters_split_by_mutual_reachability() {
        // A two-point cluster below a reflexive point and an irreflexive point.
        let f = frame(
            &["p", "q", "r", "s"],
            &[
                ("p", "q"), ("q", "p"), ("p", "p"), ("q", "q"),
                ("p", "r"), ("q", "r"), ("r", "r"),
                ("p", "s"), ("q", "s"),
            ],
            false,
        );
        let sk = f.skeleton();
        assert_eq!(sk.len(), 3);
        assert_eq!(sk.clusters[0].members(), vec![PointId(0), PointId(1)]);
        assert!(!sk.clusters[0].degenerate);
        assert!(!sk.clusters[1].degenerate); // {r} reflexive
        assert!(sk.clusters[2].degenerate); // {s} irreflexive
        assert!(sk.sees(0, 1) && sk.sees(0, 2));
        assert!(!sk.sees(1, 2) && !sk.sees(1, 0));
    }

    #[test]
    fn rank_counts_strict_chains_only() {
        // A nondegenerate cluster has rank 1 no matter its size.
        let cluster = frame(&["u", "v"], &[("u", "v"), ("v", "u"), ("u", "u"), ("v", "v")], false);
        assert_eq!(cluster.rank(), 1);

        let f = h1_by_hand();
        assert_eq!(f.rank_of(f.point("a").unwrap()), 3);
        assert_eq!(f.rank_of(f.point("b{0,2}").unwrap()), 2);
        assert_eq!(f.rank_of(f.point("c2").unwrap()), 1);
        assert_eq!(f.rank(), 3);
    }

    #[test]
    fn rank_check_returns_a_strict_chain() {
        let f = h1_by_hand();
        assert!(f.check_rank_at_most(3).is_none());
        let chain = f.check_rank_at_most(2).unwrap();
        assert!(chain.len() > 2);
        for pair in chain.windows(2) {
            assert!(f.sees_properly(pair[0], pair[1]));
        }
    }

    #[test]
    fn max_antichain_of_fork_is_the_tines() {
        let f = fork();
        assert_eq!(f.names_of(&f.max_antichain(false)), vec!["u", "v"]);
        assert_eq!(f.names_of(&f.max_antichain(true)), vec!["u", "v"]);
    }

    /// Brute-force oracle: try every subset, keep the lexicographically least
    /// of the maximum pairwise-incomparable ones.
    fn antichain_oracle(f: &Frame, irr_only: bool) -> Vec<PointId> {
        let n = f.len();
        let mut best: Option<u64> = None;
        for set in 0u64..(1u64 << n) {
            let pts: Vec<PointId> = bits(set).map(|i| PointId(i as u32)).collect();
            if irr_only && pts.iter().any(|&p| f.is_reflexive(p)) {
                continue;
            }
            let ok = pts
                .iter()
                .enumerate()
                .all(|(i, &p)| pts[i + 1..].iter().all(|&q| f.incomparable(p, q)));
            if !ok {
                continue;
            }
            best = match best {
                None => Some(set),
                Some(b) if set.count_ones() > b.count_ones() => Some(set),
                // Ascending enumeration of u64 masks is NOT lexicographic
                // order on point sets ({1} = 0b010 comes after {0,2} = 0b101
                // numerically? no: 2 < 5, but {0} = 1 < {1} = 2 works out) —
                // compare the sorted index sequences explicitly instead.
                Some(b) if set.count_ones() == b.count_ones() => {
                    let sb: Vec<usize> = bits(b).collect();
                    let ss: Vec<usize> = bits(set).collect();
                    if ss < sb {
                        Some(set)
                    } else {
                        Some(b)
                    }
                }
                some => some,
            };
        }
        f.mask_points(best.unwrap_or(0))
    }

    #[test]
    fn h1_max_antichain_is_three_by_oracle() {
        let f = h1_by_hand();
        let oracle = antichain_oracle(&f, false);
        assert_eq!(oracle.len(), 3, "oracle disagrees about H(1)'s width");
        let got = f.max_antichain(false);
        assert_eq!(got, oracle);
        // The b-row precedes the c-row in point order, so the b-row wins the tie.
        assert_eq!(f.names_of(&got), vec!["b{0,1}", "b{0,2}", "b{1,2}"]);
    }

    #[test]
    fn antichain_matches_oracle_on_assorted_frames() {
        let frames = vec![
            fork(),
            h0_by_hand(),
            h1_by_hand(),
            frame(&["w"], &[("w", "w")], false),
            frame(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")], false),
            Frame::disjoint_union(&[fork(), fork()]).unwrap(),
        ];
        for f in frames {
            for irr in [false, true] {
                assert_eq!(f.max_antichain(irr), antichain_oracle(&f, irr), "frame {f:?}");
            }
        }
    }

    #[test]
    fn irr_antichain_skips_reflexive_points() {
        let f = frame(&["w"], &[("w", "w")], false);
        assert!(f.max_antichain(true).is_empty());
        assert_eq!(f.irr_antichain_max(), 0);
        assert_eq!(f.width(), 1);
    }

    #[test]
    fn width_check_requires_root() {
        let two = Frame::disjoint_union(&[fork(), fork()]).unwrap();
        assert_eq!(two.check_width_at_most(5).unwrap_err(), FrameError::NotRooted);

        let f = fork();
        assert!(f.check_width_at_most(2).unwrap().is_none());
        let witness = f.check_width_at_most(1).unwrap().unwrap();
        assert_eq!(f.names_of(&witness), vec!["u", "v"]);
    }

    #[test]
    fn weak_width_at_fork_root_is_one() {
        let f = fork();
        let r = f.point("r").unwrap();
        assert!(f.check_weak_width_at_most(r, 1).is_none());
        assert_eq!(f.weak_width_at(r), 1);
    }

    #[test]
    fn weak_width_of_h_family_root_is_two() {
        for f in [h0_by_hand(), h1_by_hand()] {
            let a = f.point("a").unwrap();
            assert!(f.check_weak_width_at_most(a, 2).is_none());
            let w = f.check_weak_width_at_most(a, 1).unwrap();
            assert!(f.name(w.successor).starts_with('b'));
            assert_eq!(w.antichain.len(), 2);
            assert!(f.incomparable(w.antichain[0], w.antichain[1]));
            assert_eq!(f.weak_width_at(a), 2);
        }
    }

    #[test]
    fn weak_width_ignores_cluster_mates() {
        // Points u ∼ v form a cluster; v is not a *strict* successor of u, so
        // the width of the whole cluster never enters the weak-width check.
        let f = frame(&["u", "v"], &[("u", "v"), ("v", "u"), ("u", "u"), ("v", "v")], false);
        let u = f.point("u").unwrap();
        assert!(f.check_weak_width_at_most(u, 1).is_none());
        assert_eq!(f.weak_width_at(u), 0);
    }

    #[test]
    fn irr_antichain_check_on_h0() {
        let f = h0_by_hand();
        let a = f.point("a").unwrap();
        assert!(f.check_irr_antichain_at_most(a, 2).is_none());
        let witness = f.check_irr_antichain_at_most(a, 1).unwrap();
        assert_eq!(f.names_of(&witness), vec!["c0", "c1"]);
    }

    #[test]
    fn restriction_does_not_close_upward() {
        let f = h0_by_hand();
        let b = f.point("b{0,1}").unwrap();
        let c0 = f.point("c0").unwrap();
        let r = f.restriction(&[b, c0]).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.sees(r.point("b{0,1}").unwrap(), r.point("c0").unwrap()));
    }

    #[test]
    fn skeleton_final_clusters() {
        let f = h0_by_hand();
        let sk = f.skeleton();
        assert_eq!(sk.len(), 4);
        assert_eq!(sk.final_clusters().len(), 2); // {c0} and {c1}
        let ranks = sk.cluster_ranks();
        assert_eq!(ranks[sk.cluster_of(f.point("a").unwrap())], 3);
    }
}
