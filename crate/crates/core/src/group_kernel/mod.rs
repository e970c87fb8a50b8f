//! Concrete finite groups: permutation realizations, element tables,
//! subgroups, named families and the small-groups catalog.

mod catalog;
mod family;
mod group;
mod perm;
mod subgroup;

use thiserror::Error;

pub use catalog::{
    known_group_count, refined_fingerprint, Catalog, CatalogEntry, OrderSlice, RefinedFingerprint,
    CATALOG_VERSION, DEFAULT_CATALOG,
};
pub use family::{make_family, Family};
pub use group::{Element, Fingerprint, FiniteGroup, DEFAULT_ORDER_CAP};
pub use perm::Perm;
pub use subgroup::{Subgroup, LATTICE_ORDER_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order exceeds the cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("catalog error: {0}")]
    Catalog(String),
}

/// Closure of `generators` with the default order cap.
pub fn enumerate_elements(degree: usize, generators: Vec<Perm>) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::enumerate("G", degree, generators, DEFAULT_ORDER_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q8() -> FiniteGroup {
        make_family(&Family::GeneralizedQuaternion(2), DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn enumerate_cyclic_and_trivial() {
        let c4 = enumerate_elements(4, vec![Perm::parse(4, "(1 2 3 4)").unwrap()]).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.perm(c4.identity()).is_identity());
        let triv = enumerate_elements(3, vec![Perm::identity(3)]).unwrap();
        assert_eq!(triv.order(), 1);
    }

    #[test]
    fn enumerate_q8_on_eight_points() {
        // Q8 acting regularly: i=(1,2,3,4)(5,6,7,8), j=(1,5,3,7)(2,8,4,6)
        let i = Perm::parse(8, "(1,2,3,4)(5,6,7,8)").unwrap();
        let j = Perm::parse(8, "(1,5,3,7)(2,8,4,6)").unwrap();
        let g = enumerate_elements(8, vec![i, j]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.order_histogram(), vec![(1, 1), (2, 1), (4, 6)]);
    }

    #[test]
    fn cap_and_invalid_input() {
        let s5 = vec![
            Perm::parse(5, "(1,2,3,4,5)").unwrap(),
            Perm::parse(5, "(1,2)").unwrap(),
        ];
        assert_eq!(
            FiniteGroup::enumerate("S5", 5, s5, 100).unwrap_err(),
            GroupError::CapExceeded { cap: 100 }
        );
        let mixed = vec![Perm::identity(3), Perm::identity(4)];
        assert!(matches!(
            enumerate_elements(3, mixed),
            Err(GroupError::InvalidPermutation(_))
        ));
    }

    #[test]
    fn deterministic_element_order() {
        let gens = || {
            vec![
                Perm::parse(4, "(1,2,3,4)").unwrap(),
                Perm::parse(4, "(1,3)").unwrap(),
            ]
        };
        let a = enumerate_elements(4, gens()).unwrap();
        let b = enumerate_elements(4, gens()).unwrap();
        assert_eq!(a.checksum(), b.checksum());
        // generator 0 is discovered first
        assert_eq!(a.generator_elements()[0].0, 1);
        assert_eq!(a.generator_elements()[1].0, 2);
    }

    #[test]
    fn commutators() {
        let c6 = make_family(&Family::Cyclic(6), 64).unwrap();
        for a in c6.elements() {
            for b in c6.elements() {
                assert_eq!(c6.commutator(a, b), c6.identity());
            }
        }
        let g = q8();
        let x = g.named("x").unwrap();
        let y = g.named("y").unwrap();
        assert_eq!(g.commutator(x, y), g.pow(x, 2));
        assert_eq!(g.commutator(x, g.identity()), g.identity());
    }

    #[test]
    fn generated_subgroups() {
        let c4 = make_family(&Family::Cyclic(4), 64).unwrap();
        let x = c4.named("x").unwrap();
        assert_eq!(c4.generated_subgroup(&[c4.pow(x, 2)]).order(), 2);
        assert_eq!(c4.generated_subgroup(&[]).order(), 1);
        let g = q8();
        let s = g.generated_subgroup(&[g.named("x").unwrap(), g.named("y").unwrap()]);
        assert_eq!(s.order(), 8);
    }

    #[test]
    fn lattices() {
        let orders = |g: &FiniteGroup| -> Vec<usize> {
            g.subgroup_lattice()
                .unwrap()
                .iter()
                .map(Subgroup::order)
                .collect()
        };
        let c4 = make_family(&Family::Cyclic(4), 64).unwrap();
        assert_eq!(orders(&c4), vec![1, 2, 4]);
        assert_eq!(orders(&q8()), vec![1, 2, 4, 4, 4, 8]);
        let v4 = make_family(&Family::AbelianProduct(vec![2, 2]), 64).unwrap();
        assert_eq!(orders(&v4), vec![1, 2, 2, 2, 4]);
        let big = make_family(&Family::Cyclic(200), 1024).unwrap();
        assert!(matches!(
            big.subgroup_lattice(),
            Err(GroupError::CapExceeded { .. })
        ));
    }

    #[test]
    fn lattice_of_s4_is_complete() {
        // S4 has 30 subgroups
        let s4 = enumerate_elements(
            4,
            vec![
                Perm::parse(4, "(1,2,3,4)").unwrap(),
                Perm::parse(4, "(1,2)").unwrap(),
            ],
        )
        .unwrap();
        let lat = s4.subgroup_lattice().unwrap();
        assert_eq!(lat.len(), 30);
        for s in &lat {
            assert!(s.is_closed_in(&s4));
            assert_eq!(24 % s.order(), 0);
        }
    }
}
