use moridream::cone::{generator_membership, PolyCone};
use num_bigint::BigInt;
use proptest::prelude::*;

fn generators() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (2usize..=4).prop_flat_map(|d| (Just(d), prop::collection::vec(prop::collection::vec(-3i64..=3, d), 1..=6)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dual_is_an_involution((d, gens) in generators()) {
        let c = PolyCone::from_generators(d, &gens, &[]).unwrap();
        prop_assert_eq!(c.dual().dual(), c.clone());
        // H-description reproduces the same cone
        let h = PolyCone::from_inequalities(d, c.facets(), c.equations()).unwrap();
        prop_assert_eq!(h, c);
    }

    #[test]
    fn membership_agrees_with_lp((d, gens) in generators(), x in prop::collection::vec(-4i64..=4, 4)) {
        let c = PolyCone::from_generators(d, &gens, &[]).unwrap();
        let x = &x[..d];
        prop_assert_eq!(c.contains_point(x), generator_membership(&gens, &[], x));
    }

    #[test]
    fn faces_are_anti_isomorphic_to_dual_faces((d, gens) in generators()) {
        let c = PolyCone::from_generators(d, &gens, &[]).unwrap();
        let dual = c.dual();
        let faces: Vec<_> = c.face_lattice().into_iter().flatten().collect();
        let duals: Vec<_> = faces.iter().map(|f| c.star_face(f).unwrap()).collect();
        prop_assert_eq!(faces.len(), dual.face_lattice().into_iter().flatten().count());
        for (f, g) in faces.iter().zip(&duals) {
            prop_assert!(dual.is_face_of(g));
            prop_assert_eq!(f.dim + g.dim, d);
        }
        for i in 0..faces.len() {
            for j in 0..faces.len() {
                prop_assert_eq!(faces[i].contains(&faces[j]), duals[j].contains(&duals[i]));
            }
        }
    }

    #[test]
    fn scalar_types_agree((d, gens) in generators()) {
        let c = PolyCone::from_generators(d, &gens, &[]).unwrap();
        let big: Vec<Vec<BigInt>> = gens.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let b = PolyCone::<BigInt>::from_generators(d, &big, &[]).unwrap();
        prop_assert_eq!(c.map_scalar::<BigInt>(), b);
    }
}
