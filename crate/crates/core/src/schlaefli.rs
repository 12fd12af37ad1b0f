//! The 27-line incidence model: labels, meets relation, tritangent
//! planes, double sixes, the automorphism group, and stabilizers.
//!
//! Lines carry the classical labels a_i, b_i (i in 1..6) and c_ij
//! (1 <= i < j <= 6). The meets relation is fixed by the classical rules:
//! the a's are pairwise skew, the b's are pairwise skew, a_i meets b_j
//! exactly when i != j, a_i and b_i meet c_jk exactly when i is one of
//! j,k, and c_ij meets c_kl exactly when {i,j} and {k,l} are disjoint.
//! Every count the model reports is then a theorem of those rules.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::group::{from_elements, FiniteGroup, GroupFingerprint};
use crate::perm::Permutation;

pub const LINE_COUNT: usize = 27;

/// One of the 27 classical line labels.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LineLabel {
    A(u8),
    B(u8),
    C(u8, u8),
}

impl LineLabel {
    /// Canonical order: a1..a6, b1..b6, then c12, c13, ... c56.
    pub fn from_index(idx: usize) -> LineLabel {
        assert!(idx < LINE_COUNT);
        if idx < 6 {
            return LineLabel::A(idx as u8 + 1);
        }
        if idx < 12 {
            return LineLabel::B(idx as u8 - 5);
        }
        let mut k = idx - 12;
        for i in 1..6u8 {
            let row = (6 - i) as usize;
            if k < row {
                return LineLabel::C(i, i + 1 + k as u8);
            }
            k -= row;
        }
        unreachable!("index in range has a label")
    }

    pub fn index(self) -> usize {
        match self {
            LineLabel::A(i) => i as usize - 1,
            LineLabel::B(i) => i as usize + 5,
            LineLabel::C(i, j) => {
                let (i, j) = (i as usize, j as usize);
                // Offset of row i among the lexicographic pairs.
                12 + (i - 1) * (12 - i) / 2 + (j - i - 1)
            }
        }
    }

    /// The classical meets relation; a line never meets itself.
    pub fn meets(self, other: LineLabel) -> bool {
        use LineLabel::*;
        match (self, other) {
            (A(_), A(_)) | (B(_), B(_)) => false,
            (A(i), B(j)) | (B(j), A(i)) => i != j,
            (A(i), C(j, k)) | (C(j, k), A(i)) => i == j || i == k,
            (B(i), C(j, k)) | (C(j, k), B(i)) => i == j || i == k,
            (C(i, j), C(k, l)) => i != k && i != l && j != k && j != l,
        }
    }
}

impl std::fmt::Display for LineLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LineLabel::A(i) => write!(f, "a{i}"),
            LineLabel::B(i) => write!(f, "b{i}"),
            LineLabel::C(i, j) => write!(f, "c{i}{j}"),
        }
    }
}

/// Symmetric meets relation on the 27 lines, as adjacency bitmasks.
#[derive(Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    adj: [u32; LINE_COUNT],
}

impl IncidenceGraph {
    pub fn build() -> IncidenceGraph {
        let mut adj = [0u32; LINE_COUNT];
        for i in 0..LINE_COUNT {
            for j in 0..LINE_COUNT {
                if i != j && LineLabel::from_index(i).meets(LineLabel::from_index(j)) {
                    adj[i] |= 1 << j;
                }
            }
        }
        IncidenceGraph { adj }
    }

    pub fn meets(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    pub fn neighbors(&self, i: usize) -> u32 {
        self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones() as usize
    }

    pub fn meeting_pair_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn skew_pair_count(&self) -> usize {
        LINE_COUNT * (LINE_COUNT - 1) / 2 - self.meeting_pair_count()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph lines27 {\n");
        for i in 0..LINE_COUNT {
            out.push_str(&format!("  {};\n", LineLabel::from_index(i)));
        }
        for i in 0..LINE_COUNT {
            for j in i + 1..LINE_COUNT {
                if self.meets(i, j) {
                    out.push_str(&format!(
                        "  {} -- {};\n",
                        LineLabel::from_index(i),
                        LineLabel::from_index(j)
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_adjacency_json(&self) -> serde_json::Value {
        let labels: Vec<String> =
            (0..LINE_COUNT).map(|i| LineLabel::from_index(i).to_string()).collect();
        let adjacency: Vec<Vec<String>> = (0..LINE_COUNT)
            .map(|i| {
                (0..LINE_COUNT)
                    .filter(|&j| self.meets(i, j))
                    .map(|j| labels[j].clone())
                    .collect()
            })
            .collect();
        json!({ "labels": labels, "adjacency": adjacency })
    }
}

/// All triangles of the meets relation, each sorted, in lexicographic order.
pub fn tritangent_planes(g: &IncidenceGraph) -> Vec<[u8; 3]> {
    let mut out = Vec::new();
    for i in 0..LINE_COUNT {
        for j in i + 1..LINE_COUNT {
            if !g.meets(i, j) {
                continue;
            }
            let common = g.neighbors(i) & g.neighbors(j);
            for k in j + 1..LINE_COUNT {
                if common >> k & 1 == 1 {
                    out.push([i as u8, j as u8, k as u8]);
                }
            }
        }
    }
    out
}

/// An unordered pair of internally skew 6-sets with the cross-incidence
/// pattern, stored as bitmasks with the smaller mask first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct DoubleSix {
    pub sides: [u32; 2],
}

impl DoubleSix {
    pub fn new(a: u32, b: u32) -> DoubleSix {
        DoubleSix { sides: [a.min(b), a.max(b)] }
    }
}

/// 6-sets of pairwise skew lines, as bitmasks in increasing order.
fn skew_six_sets(g: &IncidenceGraph) -> Vec<u32> {
    fn extend(g: &IncidenceGraph, chosen: u32, forbidden: u32, start: usize, out: &mut Vec<u32>) {
        let size = chosen.count_ones();
        if size == 6 {
            out.push(chosen);
            return;
        }
        // Not enough candidates left to reach six.
        for cand in start..LINE_COUNT {
            if LINE_COUNT - cand < 6 - size as usize {
                break;
            }
            if forbidden >> cand & 1 == 0 {
                extend(g, chosen | 1 << cand, forbidden | g.neighbors(cand) | 1 << cand, cand + 1, out);
            }
        }
    }
    let mut out = Vec::new();
    extend(g, 0, 0, 0, &mut out);
    out
}

/// All double sixes: pairs of disjoint skew 6-sets where every line of one
/// side meets exactly five lines of the other.
pub fn double_sixes(g: &IncidenceGraph) -> Vec<DoubleSix> {
    let sixes = skew_six_sets(g);
    let mut out = Vec::new();
    for (si, &a) in sixes.iter().enumerate() {
        for &b in &sixes[si + 1..] {
            if a & b != 0 {
                continue;
            }
            let cross_ok = |side: u32, other: u32| {
                (0..LINE_COUNT)
                    .filter(|&l| side >> l & 1 == 1)
                    .all(|l| (g.neighbors(l) & other).count_ones() == 5)
            };
            if cross_ok(a, b) && cross_ok(b, a) {
                out.push(DoubleSix::new(a, b));
            }
        }
    }
    out.sort();
    out
}

/// The canonical double six {a1..a6}, {b1..b6}.
pub fn canonical_double_six() -> DoubleSix {
    DoubleSix::new(0b111111, 0b111111 << 6)
}

/// Index relabelings (an S6 on the subscripts) and the a/b swap; these
/// generate a subgroup of order 1440 directly.
pub fn explicit_generators() -> Vec<Permutation> {
    let relabel = |sigma: &dyn Fn(u8) -> u8| -> Permutation {
        let img: Vec<u8> = (0..LINE_COUNT)
            .map(|idx| {
                let label = match LineLabel::from_index(idx) {
                    LineLabel::A(i) => LineLabel::A(sigma(i)),
                    LineLabel::B(i) => LineLabel::B(sigma(i)),
                    LineLabel::C(i, j) => {
                        let (si, sj) = (sigma(i), sigma(j));
                        LineLabel::C(si.min(sj), si.max(sj))
                    }
                };
                label.index() as u8
            })
            .collect();
        Permutation::from_images(img).expect("relabelings permute the lines")
    };
    let transposition = relabel(&|i| match i {
        1 => 2,
        2 => 1,
        other => other,
    });
    let six_cycle = relabel(&|i| if i == 6 { 1 } else { i + 1 });
    let ab_swap = Permutation::from_images(
        (0..LINE_COUNT)
            .map(|idx| {
                let label = match LineLabel::from_index(idx) {
                    LineLabel::A(i) => LineLabel::B(i),
                    LineLabel::B(i) => LineLabel::A(i),
                    c => c,
                };
                label.index() as u8
            })
            .collect(),
    )
    .expect("the a/b swap permutes the lines");
    vec![transposition, six_cycle, ab_swap]
}

fn backtrack_automorphisms(
    g: &IncidenceGraph,
    img: &mut Vec<u8>,
    used: u32,
    out: &mut Vec<Permutation>,
) {
    let level = img.len();
    if level == LINE_COUNT {
        out.push(Permutation::from_images(img.clone()).expect("bijection by construction"));
        return;
    }
    for cand in 0..LINE_COUNT {
        if used >> cand & 1 == 1 {
            continue;
        }
        let consistent = (0..level)
            .all(|p| g.meets(level, p) == g.meets(cand, img[p] as usize));
        if consistent {
            img.push(cand as u8);
            backtrack_automorphisms(g, img, used | 1 << cand, out);
            img.pop();
        }
    }
}

/// Every incidence-preserving permutation, found by backtracking and then
/// certified as a group by element-set reclosure.
pub fn automorphism_group(g: &IncidenceGraph) -> Result<FiniteGroup<Permutation>> {
    let mut found = Vec::new();
    backtrack_automorphisms(g, &mut Vec::with_capacity(LINE_COUNT), 0, &mut found);
    from_elements(found)
}

/// A line, a tritangent plane, or a double six, for stabilizer queries.
#[derive(Clone, Copy, Debug)]
pub enum SurfaceObject {
    Line(usize),
    Tritangent([u8; 3]),
    DoubleSix(DoubleSix),
}

fn apply_mask(p: &Permutation, mask: u32) -> u32 {
    (0..LINE_COUNT)
        .filter(|&l| mask >> l & 1 == 1)
        .fold(0u32, |acc, l| acc | 1 << p.apply(l))
}

impl SurfaceObject {
    fn image(&self, p: &Permutation) -> SurfaceObject {
        match self {
            SurfaceObject::Line(l) => SurfaceObject::Line(p.apply(*l)),
            SurfaceObject::Tritangent(t) => {
                let mut img = [0u8; 3];
                for (slot, &l) in img.iter_mut().zip(t.iter()) {
                    *slot = p.apply(l as usize) as u8;
                }
                img.sort_unstable();
                SurfaceObject::Tritangent(img)
            }
            SurfaceObject::DoubleSix(d) => SurfaceObject::DoubleSix(DoubleSix::new(
                apply_mask(p, d.sides[0]),
                apply_mask(p, d.sides[1]),
            )),
        }
    }

    fn same(&self, other: &SurfaceObject) -> bool {
        match (self, other) {
            (SurfaceObject::Line(a), SurfaceObject::Line(b)) => a == b,
            (SurfaceObject::Tritangent(a), SurfaceObject::Tritangent(b)) => a == b,
            (SurfaceObject::DoubleSix(a), SurfaceObject::DoubleSix(b)) => a == b,
            _ => false,
        }
    }

    fn orbit_key(&self) -> u64 {
        match self {
            SurfaceObject::Line(l) => *l as u64,
            SurfaceObject::Tritangent(t) => {
                1 << 40 | (t[0] as u64) << 16 | (t[1] as u64) << 8 | t[2] as u64
            }
            SurfaceObject::DoubleSix(d) => {
                // Sides are 27-bit masks; fold to a pair-identifying key.
                2 << 60 | (d.sides[0] as u64) << 27 | d.sides[1] as u64
            }
        }
    }
}

/// Setwise stabilizer inside `aut` by filtration.
pub fn stabilizer(
    aut: &FiniteGroup<Permutation>,
    obj: &SurfaceObject,
) -> Result<FiniteGroup<Permutation>> {
    let fixed: Vec<Permutation> = aut
        .elements()
        .iter()
        .filter(|p| obj.image(p).same(obj))
        .cloned()
        .collect();
    if fixed.is_empty() {
        return Err(Error::NotASubgroup);
    }
    from_elements(fixed)
}

/// Orbit size of the object under the group's generators.
pub fn orbit_size(aut: &FiniteGroup<Permutation>, obj: &SurfaceObject) -> usize {
    let gens = aut.generator_elements();
    let mut seen = std::collections::HashSet::new();
    seen.insert(obj.orbit_key());
    let mut frontier = vec![obj.clone()];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = x.image(g);
            if seen.insert(y.orbit_key()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

/// Gate-side quantities the incidence model is compared against.
#[derive(Clone, Debug)]
pub struct GateSideInputs {
    /// Fingerprint of the two-qubit Clifford group modulo its Pauli group.
    pub c2_mod_pauli: GroupFingerprint,
    /// Fingerprint of the two-qubit real subgroup modulo the Pauli group.
    pub b2_mod_pauli: GroupFingerprint,
    /// Order of the symplectic image of the three-qubit real subgroup.
    pub b3_symplectic_image_order: u64,
    /// Order of the quotient V appearing in the three-qubit analysis.
    pub v_order: u64,
}

/// Comparison results between the 27-line side and the gate side.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub meeting_pairs: u64,
    pub skew_pairs: u64,
    pub tritangent_count: u64,
    pub double_six_count: u64,
    pub aut_order: u64,
    pub line_stab_order: u64,
    pub tritangent_stab_order: u64,
    pub double_six_stab_order: u64,
    pub derived_aut_order: u64,
    pub derived_line_stab_order: u64,
    pub c2_quotient_matches_double_six_stab: bool,
    pub b2_quotient_matches_z2_x_s5: bool,
    pub b3_image_order: u64,
    pub derived_aut_matches_b3_image_order: bool,
    pub v_order: u64,
    pub v_matches_skew_pairs: bool,
}

/// Runs every comparison in one pass over freshly computed objects.
pub fn cross_checks(
    graph: &IncidenceGraph,
    aut: &FiniteGroup<Permutation>,
    gate: &GateSideInputs,
) -> Result<CrossCheckReport> {
    let line_stab = stabilizer(aut, &SurfaceObject::Line(LineLabel::A(1).index()))?;
    let tri = {
        let t = [
            LineLabel::A(1).index() as u8,
            LineLabel::B(2).index() as u8,
            LineLabel::C(1, 2).index() as u8,
        ];
        let mut t = t;
        t.sort_unstable();
        stabilizer(aut, &SurfaceObject::Tritangent(t))?
    };
    let dsix_stab = stabilizer(aut, &SurfaceObject::DoubleSix(canonical_double_six()))?;
    let derived_aut = aut.derived_subgroup();
    let derived_line_stab = line_stab.derived_subgroup();
    let skew = graph.skew_pair_count() as u64;
    Ok(CrossCheckReport {
        meeting_pairs: graph.meeting_pair_count() as u64,
        skew_pairs: skew,
        tritangent_count: tritangent_planes(graph).len() as u64,
        double_six_count: double_sixes(graph).len() as u64,
        aut_order: aut.order(),
        line_stab_order: line_stab.order(),
        tritangent_stab_order: tri.order(),
        double_six_stab_order: dsix_stab.order(),
        derived_aut_order: derived_aut.order(),
        derived_line_stab_order: derived_line_stab.order(),
        c2_quotient_matches_double_six_stab: dsix_stab.fingerprint() == gate.c2_mod_pauli,
        b2_quotient_matches_z2_x_s5: crate::perm::z2_x_s5().fingerprint() == gate.b2_mod_pauli,
        b3_image_order: gate.b3_symplectic_image_order,
        derived_aut_matches_b3_image_order: derived_aut.order() == gate.b3_symplectic_image_order,
        v_order: gate.v_order,
        v_matches_skew_pairs: gate.v_order == skew,
    })
}
