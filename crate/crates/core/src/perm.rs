//! Permutations on up to 32 points, plus the small reference groups that
//! isomorphism-type claims are checked against.

use crate::error::{Error, Result};
use crate::group::{closure, FiniteGroup, GroupElement};

pub const MAX_POINTS: usize = 32;

/// A permutation stored as its image table: point `i` maps to `img[i]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    img: Box<[u8]>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        assert!(n <= MAX_POINTS);
        Permutation { img: (0..n as u8).collect() }
    }

    /// Validates that `img` is a bijection on `0..img.len()`.
    pub fn from_images(img: Vec<u8>) -> Result<Permutation> {
        let n = img.len();
        if n > MAX_POINTS {
            return Err(Error::Malformed(format!("{n} points exceeds the {MAX_POINTS} limit")));
        }
        let mut seen = vec![false; n];
        for &p in &img {
            if (p as usize) >= n || seen[p as usize] {
                return Err(Error::Malformed("image table is not a bijection".into()));
            }
            seen[p as usize] = true;
        }
        Ok(Permutation { img: img.into() })
    }

    /// Product of disjoint cycles on `n` points, e.g. `[[0,1,2],[3,4]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut img: Vec<u8> = (0..n as u8).collect();
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                let q = cycle[(i + 1) % cycle.len()];
                if p >= n || q >= n {
                    return Err(Error::Malformed(format!("cycle point out of range 0..{n}")));
                }
                if img[p] != p as u8 {
                    return Err(Error::Malformed("cycles are not disjoint".into()));
                }
                img[p] = q as u8;
            }
        }
        Permutation::from_images(img)
    }

    pub fn points(&self) -> usize {
        self.img.len()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.img[p] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.img
    }
}

impl GroupElement for Permutation {
    type Key = Box<[u8]>;

    fn key(&self) -> Box<[u8]> {
        self.img.clone()
    }

    /// `(a*b)(x) = b(a(x))`: apply `a` first, then `b`.
    fn mul(&self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.img.len(), rhs.img.len());
        Permutation { img: self.img.iter().map(|&p| rhs.img[p as usize]).collect() }
    }

    fn inverse(&self) -> Permutation {
        let mut img = vec![0u8; self.img.len()];
        for (i, &p) in self.img.iter().enumerate() {
            img[p as usize] = i as u8;
        }
        Permutation { img: img.into() }
    }

    fn identity_like(&self) -> Permutation {
        Permutation::identity(self.img.len())
    }
}

fn build(n: usize, cycles: &[&[usize]]) -> Vec<Permutation> {
    cycles
        .iter()
        .map(|c| Permutation::from_cycles(n, &[c.to_vec()]).expect("valid cycle literal"))
        .collect()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// The full symmetric group on `n` points.
pub fn symmetric(n: usize) -> FiniteGroup<Permutation> {
    assert!((1..=8).contains(&n), "symmetric group limited to 8 points");
    let gens = match n {
        1 => vec![Permutation::identity(1)],
        2 => build(2, &[&[0, 1]]),
        _ => build(n, &[&[0, 1], &(0..n).collect::<Vec<_>>()]),
    };
    closure(&gens, factorial(n)).expect("symmetric group fits its factorial budget")
}

/// The alternating group on `n` points.
pub fn alternating(n: usize) -> FiniteGroup<Permutation> {
    assert!((3..=8).contains(&n), "alternating group limited to 3..=8 points");
    let gens = if n == 3 {
        build(3, &[&[0, 1, 2]])
    } else if n % 2 == 1 {
        build(n, &[&[0, 1, 2], &(0..n).collect::<Vec<_>>()])
    } else {
        build(n, &[&[0, 1, 2], &(1..n).collect::<Vec<_>>()])
    };
    closure(&gens, factorial(n) / 2).expect("alternating group fits half the factorial budget")
}

/// Cyclic group of order `n` acting on `n` points.
pub fn cyclic(n: usize) -> FiniteGroup<Permutation> {
    assert!((1..=MAX_POINTS).contains(&n));
    let gens = vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()];
    closure(&gens, n).expect("cyclic group fits its order")
}

/// Dihedral group of order `2n` acting on `n` vertices.
pub fn dihedral(n: usize) -> FiniteGroup<Permutation> {
    assert!((3..=MAX_POINTS).contains(&n));
    let rot = Permutation::from_cycles(n, &[(0..n).collect()]).unwrap();
    let flip = Permutation::from_images((0..n as u8).map(|i| (n as u8 - 1) - i).collect()).unwrap();
    closure(&[rot, flip], 2 * n).expect("dihedral group fits twice its degree")
}

/// Elementary abelian group of order `2^k` on `2k` points.
pub fn z2_power(k: usize) -> FiniteGroup<Permutation> {
    assert!((1..=8).contains(&k));
    let n = 2 * k;
    let gens: Vec<Permutation> =
        (0..k).map(|i| Permutation::from_cycles(n, &[vec![2 * i, 2 * i + 1]]).unwrap()).collect();
    closure(&gens, 1 << k).expect("elementary abelian group fits 2^k")
}

/// The direct product of `parts` realized on disjoint point sets.
pub fn direct_product(parts: &[&FiniteGroup<Permutation>]) -> FiniteGroup<Permutation> {
    let total: usize = parts.iter().map(|g| g.element(0).points()).sum();
    assert!(total <= MAX_POINTS, "direct product exceeds the point limit");
    let mut gens = Vec::new();
    let mut offset = 0usize;
    for part in parts {
        for g in part.generator_elements() {
            let mut img: Vec<u8> = (0..total as u8).collect();
            for p in 0..g.points() {
                img[offset + p] = (offset + g.apply(p)) as u8;
            }
            gens.push(Permutation::from_images(img).unwrap());
        }
        offset += part.element(0).points();
    }
    let order: u64 = parts.iter().map(|g| g.order()).product();
    closure(&gens, order as usize).expect("direct product fits the product of orders")
}

pub fn z2_x_s5() -> FiniteGroup<Permutation> {
    direct_product(&[&cyclic(2), &symmetric(5)])
}

pub fn s3_cubed() -> FiniteGroup<Permutation> {
    let s3 = symmetric(3);
    direct_product(&[&s3, &s3, &s3])
}

pub fn z3_squared() -> FiniteGroup<Permutation> {
    let z3 = cyclic(3);
    direct_product(&[&z3, &z3])
}
