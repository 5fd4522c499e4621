//! JSON document types for the on-disk formats: frames, trees, reduction
//! witnesses, and corpus manifests.
//!
//! These are plain serde mirrors of the library types; all structural
//! invariants are re-established by the conversion into the library type,
//! so a hand-edited file can never smuggle in an invalid object.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::families::CorpusSpec;
use crate::frame::{Frame, FrameError};
use crate::reduction::ReductionMap;
use crate::tree::OmegaTree;

/// A frame on disk: `{"points": [...], "edges": [[w,u],...], "closed": bool}`.
///
/// `closed` declares the edge list transitively closed as written. Reading a
/// document that claims `closed` but is not transitive fails with the first
/// violating triple, unless closure is forced; a document with `closed:
/// false` carries generator edges and is always closed on read.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameDoc {
    pub points: Vec<String>,
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub closed: bool,
}

impl FrameDoc {
    pub fn from_frame(frame: &Frame) -> FrameDoc {
        FrameDoc { points: frame.names().to_vec(), edges: frame.edges(), closed: true }
    }

    /// Rebuild the frame; `force_close` closes even a `closed: true` claim
    /// instead of validating it (the CLI's `--close`).
    pub fn to_frame(&self, force_close: bool) -> Result<Frame, FrameError> {
        Frame::build(self.points.clone(), &self.edges, force_close || !self.closed)
    }
}

/// A tree on disk: `{"label": n, "children": [...]}`. Children are put back
/// into canonical order on conversion, so document order is cosmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDoc {
    pub label: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TreeDoc>,
}

impl TreeDoc {
    pub fn from_tree(tree: &OmegaTree) -> TreeDoc {
        TreeDoc {
            label: tree.label(),
            children: tree.children().iter().map(TreeDoc::from_tree).collect(),
        }
    }

    pub fn to_tree(&self) -> OmegaTree {
        OmegaTree::new(self.label, self.children.iter().map(TreeDoc::to_tree).collect())
    }
}

/// A reduction witness: `{"map": {src: tgt, ...}}`, with sequence context
/// (`i`, `j`, `generator`) when the witness came out of an audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionDoc {
    pub map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

impl ReductionDoc {
    pub fn from_map(map: &ReductionMap) -> ReductionDoc {
        let source = map.source();
        let pairs = source
            .points()
            .map(|w| (source.name(w).to_string(), map.target().name(map.apply(w)).to_string()))
            .collect();
        ReductionDoc { map: pairs, i: None, j: None, generator: None }
    }

    pub fn with_context(mut self, i: usize, j: usize, generator: Option<String>) -> ReductionDoc {
        self.i = Some(i);
        self.j = Some(j);
        self.generator = generator;
        self
    }

    /// Re-validate against the frames it claims to connect.
    pub fn to_map(
        &self,
        source: &Frame,
        target: &Frame,
    ) -> Result<ReductionMap, crate::reduction::ReductionError> {
        ReductionMap::from_names(source.clone(), target.clone(), &self.map)
    }
}

/// One corpus frame's constraint-check log entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub constraint: String,
    pub ok: bool,
}

/// One corpus frame in the manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub points: usize,
    pub rank: u32,
    pub checks: Vec<CheckRecord>,
}

/// The corpus manifest: the generating spec plus a per-frame check log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestDoc {
    pub spec: CorpusSpec,
    pub frames: Vec<ManifestEntry>,
}

impl ManifestDoc {
    /// Build the manifest for generated frames named `frame_NNN.json`,
    /// re-running every requested constraint check.
    pub fn describe(spec: &CorpusSpec, frames: &[Frame]) -> ManifestDoc {
        let entries = frames
            .iter()
            .enumerate()
            .map(|(idx, f)| {
                let mut checks = vec![CheckRecord {
                    constraint: format!("points <= {}", spec.max_points),
                    ok: f.len() <= spec.max_points as usize,
                }];
                if let Some(m) = spec.rank_bound {
                    checks.push(CheckRecord {
                        constraint: format!("rank <= {m}"),
                        ok: f.rank() <= m,
                    });
                }
                if spec.require_rooted {
                    checks.push(CheckRecord {
                        constraint: "rooted".to_string(),
                        ok: !f.roots().is_empty(),
                    });
                }
                if spec.require_weak_width_1 {
                    checks.push(CheckRecord {
                        constraint: "weak width <= 1 everywhere".to_string(),
                        ok: f.weak_width_at_most_everywhere(1),
                    });
                }
                if let Some(k) = spec.require_wid_bullet {
                    checks.push(CheckRecord {
                        constraint: format!("irreflexive antichains <= {k} everywhere"),
                        ok: f.points().all(|w| f.check_irr_antichain_at_most(w, k).is_none()),
                    });
                }
                ManifestEntry {
                    file: format!("frame_{idx:03}.json"),
                    points: f.len(),
                    rank: f.rank(),
                    checks,
                }
            })
            .collect();
        ManifestDoc { spec: spec.clone(), frames: entries }
    }
}
