//! Coxeter matrices, finite-type diagram data, and certificate search.
//!
//! A certificate that a finite group is a given finite Coxeter group
//! consists of generating involutions whose pairwise product orders
//! realize the type's diagram, together with an order match against the
//! classical value. That data forces an isomorphism: the diagram relations
//! present the Coxeter group, so the certified group is a quotient of it,
//! and equal finite orders rule out a proper one.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};

pub const MAX_RANK: usize = 8;

/// Symmetric matrix of pairwise product orders; 1 on the diagonal.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<u32>,
}

impl CoxeterMatrix {
    pub fn new(rank: usize, entries: Vec<u32>) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::RankTooLarge(rank, MAX_RANK));
        }
        if entries.len() != rank * rank {
            return Err(Error::DimensionMismatch(rank * rank, entries.len()));
        }
        for i in 0..rank {
            for j in 0..rank {
                let m = entries[i * rank + j];
                if i == j && m != 1 {
                    return Err(Error::Malformed("diagonal entries must be 1".into()));
                }
                if i != j && (m < 2 || m != entries[j * rank + i]) {
                    return Err(Error::Malformed(
                        "off-diagonal entries must be symmetric and at least 2".into(),
                    ));
                }
            }
        }
        Ok(Self { rank, entries })
    }

    /// Matrix with the given labeled edges and 2 everywhere else.
    pub fn from_edges(rank: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::RankTooLarge(rank, MAX_RANK));
        }
        let mut entries = vec![2u32; rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = 1;
        }
        for &(a, b, m) in edges {
            if a >= rank || b >= rank || a == b {
                return Err(Error::Malformed(format!("bad edge ({a},{b})")));
            }
            entries[a * rank + b] = m;
            entries[b * rank + a] = m;
        }
        Self::new(rank, entries)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.rank + j]
    }
}

/// The finite diagram types the artifact identifies.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoxeterType {
    A(usize),
    D5,
    F4,
    E6,
    E7,
}

/// A type tag with its diagram matrix and classical group order.
#[derive(Clone, Debug)]
pub struct CoxeterTypeData {
    pub tag: CoxeterType,
    pub matrix: CoxeterMatrix,
    pub order: u64,
}

impl CoxeterType {
    pub fn name(self) -> String {
        match self {
            CoxeterType::A(n) => format!("A{n}"),
            CoxeterType::D5 => "D5".into(),
            CoxeterType::F4 => "F4".into(),
            CoxeterType::E6 => "E6".into(),
            CoxeterType::E7 => "E7".into(),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            CoxeterType::A(n) => n,
            CoxeterType::D5 => 5,
            CoxeterType::F4 => 4,
            CoxeterType::E6 => 6,
            CoxeterType::E7 => 7,
        }
    }

    pub fn data(self) -> CoxeterTypeData {
        let (edges, order): (Vec<(usize, usize, u32)>, u64) = match self {
            CoxeterType::A(n) => {
                assert!(n >= 1 && n <= MAX_RANK, "rank {n} out of range");
                let edges = (0..n.saturating_sub(1)).map(|i| (i, i + 1, 3)).collect();
                let order = (2..=n as u64 + 1).product();
                (edges, order)
            }
            // Chain 0-1-2 with antennas 3 and 4 on node 2.
            CoxeterType::D5 => {
                (vec![(0, 1, 3), (1, 2, 3), (2, 3, 3), (2, 4, 3)], 1_920)
            }
            // The one finite type in scope with a bond of order 4.
            CoxeterType::F4 => (vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)], 1_152),
            // Chain 0-1-2-3-4 with node 5 hanging off node 2.
            CoxeterType::E6 => {
                (vec![(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (2, 5, 3)], 51_840)
            }
            // Chain 0-1-2-3-4-5 with node 6 hanging off node 2.
            CoxeterType::E7 => (
                vec![(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (2, 6, 3)],
                2_903_040,
            ),
        };
        let matrix = CoxeterMatrix::from_edges(self.rank(), &edges).expect("type diagrams are valid");
        CoxeterTypeData { tag: self, matrix, order }
    }
}

/// Measures pairwise product orders of the given generators.
pub fn coxeter_matrix<E: GroupElement>(
    g: &FiniteGroup<E>,
    gens: &[u32],
) -> Result<CoxeterMatrix> {
    let rank = gens.len();
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::RankTooLarge(rank, MAX_RANK));
    }
    for &s in gens {
        if g.element_order(s) != 2 {
            return Err(Error::NotInvolution(s));
        }
    }
    let mut entries = vec![0u32; rank * rank];
    for i in 0..rank {
        for j in 0..rank {
            entries[i * rank + j] = if i == j {
                1
            } else {
                g.element_order(g.mul_ord(gens[i], gens[j]))
            };
        }
    }
    CoxeterMatrix::new(rank, entries)
}

fn perm_extend(m: &CoxeterMatrix, target: &CoxeterMatrix, assign: &mut Vec<usize>, used: &mut u16) -> bool {
    let k = assign.len();
    if k == m.rank() {
        return true;
    }
    for cand in 0..m.rank() {
        if *used >> cand & 1 == 1 {
            continue;
        }
        if (0..k).all(|i| target.entry(k, i) == m.entry(cand, assign[i])) {
            assign.push(cand);
            *used |= 1 << cand;
            if perm_extend(m, target, assign, used) {
                return true;
            }
            assign.pop();
            *used &= !(1 << cand);
        }
    }
    false
}

/// True iff some relabeling of `m`'s generators yields the type's diagram
/// matrix exactly.
pub fn match_type(m: &CoxeterMatrix, t: &CoxeterTypeData) -> bool {
    if m.rank() != t.matrix.rank() {
        return false;
    }
    perm_extend(m, &t.matrix, &mut Vec::new(), &mut 0)
}

/// Evidence that a group is the Coxeter group of `type_name`.
///
/// Ordinals refer to the canonical element order of the group the
/// certificate was found in; `validate` re-derives every property.
#[derive(Clone, Debug, Serialize)]
pub struct CoxeterCertificate {
    pub type_name: String,
    pub generator_ordinals: Vec<u32>,
    pub matrix: CoxeterMatrix,
    pub group_order: u64,
}

impl CoxeterCertificate {
    /// Full independent recheck: involutions, measured product orders,
    /// diagram match, generation, and the classical order.
    pub fn validate<E: GroupElement>(&self, g: &FiniteGroup<E>, t: &CoxeterTypeData) -> Result<()> {
        if g.order() != t.order || self.group_order != t.order {
            return Err(Error::Malformed(format!(
                "order {} does not match |W({})| = {}",
                g.order(),
                t.tag.name(),
                t.order
            )));
        }
        let measured = coxeter_matrix(g, &self.generator_ordinals)?;
        if measured != self.matrix {
            return Err(Error::Malformed("stored matrix disagrees with remeasurement".into()));
        }
        if !match_type(&measured, t) {
            return Err(Error::Malformed("matrix does not realize the type diagram".into()));
        }
        if span_size(g, &self.generator_ordinals) != g.order() as usize {
            return Err(Error::Malformed("certificate generators do not generate".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "type": self.type_name,
            "order": self.group_order,
            "generator_ordinals": self.generator_ordinals,
            "matrix": { "rank": self.matrix.rank(), "entries": self.matrix.entries },
        })
    }
}

/// Size of the subgroup generated by the given ordinals, by ordinal
/// breadth-first closure (no element arithmetic).
fn span_size<E: GroupElement>(g: &FiniteGroup<E>, gens: &[u32]) -> usize {
    g.generated_order(gens) as usize
}

/// Depth-first certificate search.
///
/// Involutions are tried smallest conjugacy class first, key order within
/// a class, and a partial tuple survives only while its measured product
/// orders equal the diagram entries position by position. Returns
/// `Ok(None)` when the order differs from the type's or the search space
/// is exhausted.
pub fn find_certificate<E: GroupElement>(
    g: &FiniteGroup<E>,
    t: &CoxeterTypeData,
    budget: usize,
) -> Result<Option<CoxeterCertificate>> {
    if g.order() != t.order {
        return Ok(None);
    }
    let rank = t.matrix.rank();
    let classes = g.conjugacy_classes();
    let mut involutions: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| g.element_order(x) == 2)
        .collect();
    involutions.sort_by(|&a, &b| {
        let ca = classes.classes[classes.class_of[a as usize] as usize].len();
        let cb = classes.classes[classes.class_of[b as usize] as usize].len();
        ca.cmp(&cb).then_with(|| g.element(a).key().cmp(&g.element(b).key()))
    });

    let mut visited = 0usize;
    let mut tuple: Vec<u32> = Vec::with_capacity(rank);
    if dfs(g, t, &involutions, &mut tuple, &mut visited, budget)? {
        let matrix = coxeter_matrix(g, &tuple)?;
        return Ok(Some(CoxeterCertificate {
            type_name: t.tag.name(),
            generator_ordinals: tuple,
            matrix,
            group_order: g.order(),
        }));
    }
    Ok(None)
}

fn dfs<E: GroupElement>(
    g: &FiniteGroup<E>,
    t: &CoxeterTypeData,
    involutions: &[u32],
    tuple: &mut Vec<u32>,
    visited: &mut usize,
    budget: usize,
) -> Result<bool> {
    let k = tuple.len();
    if k == t.matrix.rank() {
        return Ok(span_size(g, tuple) == g.order() as usize);
    }
    for &cand in involutions {
        *visited += 1;
        if *visited > budget {
            return Err(Error::BudgetExceeded { found: *visited, limit: budget });
        }
        if tuple.contains(&cand) {
            continue;
        }
        if (0..k).all(|i| g.element_order(g.mul_ord(tuple[i], cand)) == t.matrix.entry(i, k)) {
            tuple.push(cand);
            if dfs(g, t, involutions, tuple, visited, budget)? {
                return Ok(true);
            }
            tuple.pop();
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::closure;
    use crate::perm::Permutation;

    fn s_n(n: usize) -> FiniteGroup<Permutation> {
        let gens: Vec<Permutation> = (0..n - 1)
            .map(|i| Permutation::from_cycles(n, &[vec![i, i + 1]]).unwrap())
            .collect();
        closure(&gens, 50_000).unwrap()
    }

    #[test]
    fn symmetric_group_matrix_is_the_a_series_diagram() {
        let s3 = s_n(3);
        let gens: Vec<u32> = s3.generator_ords().to_vec();
        let m = coxeter_matrix(&s3, &gens).unwrap();
        assert_eq!(m, CoxeterMatrix::new(2, vec![1, 3, 3, 1]).unwrap());
    }

    #[test]
    fn commuting_involutions_give_the_disconnected_diagram() {
        let a = Permutation::from_cycles(4, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![2, 3]]).unwrap();
        let g = closure(&[a, b], 100).unwrap();
        let gens: Vec<u32> = g.generator_ords().to_vec();
        let m = coxeter_matrix(&g, &gens).unwrap();
        assert_eq!(m, CoxeterMatrix::new(2, vec![1, 2, 2, 1]).unwrap());
    }

    #[test]
    fn non_involutions_are_rejected() {
        let c3 = closure(&[Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap()], 10).unwrap();
        let gens: Vec<u32> = c3.generator_ords().to_vec();
        assert!(matches!(coxeter_matrix(&c3, &gens), Err(Error::NotInvolution(_))));
    }

    #[test]
    fn matrix_validation_rejects_bad_shapes() {
        assert!(CoxeterMatrix::new(2, vec![1, 3, 3, 2]).is_err());
        assert!(CoxeterMatrix::new(2, vec![1, 3, 4, 1]).is_err());
        assert!(CoxeterMatrix::new(2, vec![1, 1, 1, 1]).is_err());
        assert!(CoxeterMatrix::new(9, vec![1; 81]).is_err());
    }

    #[test]
    fn type_matching_handles_relabelings() {
        let a2 = CoxeterType::A(2).data();
        let m = CoxeterMatrix::new(2, vec![1, 3, 3, 1]).unwrap();
        assert!(match_type(&m, &a2));
        let disconnected = CoxeterMatrix::new(2, vec![1, 2, 2, 1]).unwrap();
        assert!(!match_type(&disconnected, &a2));

        // F4 written back to front still matches by diagram symmetry.
        let f4 = CoxeterType::F4.data();
        let rank = 4;
        let mut rev = vec![0u32; 16];
        for i in 0..rank {
            for j in 0..rank {
                rev[i * rank + j] = f4.matrix.entry(rank - 1 - i, rank - 1 - j);
            }
        }
        let rev = CoxeterMatrix::new(rank, rev).unwrap();
        assert!(match_type(&rev, &f4));

        // Rank mismatch is a clean false.
        assert!(!match_type(&m, &f4));
    }

    #[test]
    fn a3_certificate_from_the_symmetric_group() {
        let s4 = s_n(4);
        let t = CoxeterType::A(3).data();
        let cert = find_certificate(&s4, &t, 100_000).unwrap().expect("certificate exists");
        cert.validate(&s4, &t).unwrap();
        assert_eq!(cert.group_order, 24);
        let again = find_certificate(&s4, &t, 100_000).unwrap().unwrap();
        assert_eq!(cert.generator_ordinals, again.generator_ordinals);
        assert!(cert.to_json()["matrix"]["entries"].is_array());
    }

    #[test]
    fn order_mismatch_fails_immediately() {
        let s4 = s_n(4);
        assert!(find_certificate(&s4, &CoxeterType::D5.data(), 100_000).unwrap().is_none());
    }

    #[test]
    fn search_budget_is_enforced() {
        let s4 = s_n(4);
        let t = CoxeterType::A(3).data();
        assert!(matches!(
            find_certificate(&s4, &t, 2),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn d5_certificate_from_signed_permutations() {
        // Coordinates 1..5 at points 0..4, their negatives at 5..9.
        // Adjacent coordinate swaps plus the sign-flipping swap e4 <-> -e5.
        let mut gens: Vec<Permutation> = (0..4)
            .map(|i| Permutation::from_cycles(10, &[vec![i, i + 1], vec![5 + i, 6 + i]]).unwrap())
            .collect();
        gens.push(Permutation::from_cycles(10, &[vec![3, 9], vec![4, 8]]).unwrap());
        let w = closure(&gens, 10_000).unwrap();
        let t = CoxeterType::D5.data();
        assert_eq!(w.order(), t.order);
        let cert = find_certificate(&w, &t, 2_000_000).unwrap().expect("certificate exists");
        cert.validate(&w, &t).unwrap();
    }

    #[test]
    fn stored_type_orders_are_the_classical_values() {
        assert_eq!(CoxeterType::A(3).data().order, 24);
        assert_eq!(CoxeterType::D5.data().order, 1_920);
        assert_eq!(CoxeterType::F4.data().order, 1_152);
        assert_eq!(CoxeterType::E6.data().order, 51_840);
        assert_eq!(CoxeterType::E7.data().order, 2_903_040);
    }
}
