use num_bigint::BigInt;
use proptest::prelude::*;

use symquad::algebra::rat::int;
use symquad::algebra::{ProjSymPoint, Rat};
use symquad::blowup::{blowup_power, series, AmbientData, SegreData};
use symquad::picard::{gkz_decomposition, Basis, DivClass};
use symquad::schubert::{ring_tables, SchubertElt, StrictPartition};
use symquad::symplectic::strata::{sample_orbit_point, standard_point};
use symquad::symplectic::{
    classify_point, is_symplectic, normal_form, random_symplectic, StratumLabel,
};

fn rats(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| int(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn sampler_is_symplectic(r in 1usize..=3, seed in 1u64..u64::MAX) {
        let m = random_symplectic(r, seed).unwrap();
        prop_assert!(is_symplectic(m.matrix()));
    }

    #[test]
    fn orbit_of_standard_points(r in 1usize..=3, k in 1usize..=3, seed in 1u64..u64::MAX) {
        prop_assume!(k <= r);
        let m = random_symplectic(r, seed).unwrap();
        let p = ProjSymPoint::new(&m.act(&standard_point(r, k))).unwrap();
        prop_assert_eq!(classify_point(r, &p).unwrap(), StratumLabel::Rank(k));
        let id = ProjSymPoint::new(&m.act(&standard_point(r, 2 * r))).unwrap();
        prop_assert_eq!(classify_point(r, &id).unwrap(), StratumLabel::FullRank);
    }

    #[test]
    fn normal_form_is_certified(r in 1usize..=3, seed in 1u64..u64::MAX) {
        let (_, p) = sample_orbit_point(r, seed).unwrap();
        let nf = normal_form(r, &p).unwrap();
        prop_assert!(nf.certificate <= 1e-9);
        prop_assert_eq!(nf.label, classify_point(r, &p).unwrap());
    }

    #[test]
    fn series_inverse(c in prop::collection::vec(-20i64..20, 1..6)) {
        let mut a = rats(&c);
        a[0] = int(1);
        let deg = 6;
        let prod = series::mul(&a, &series::inverse(&a, deg).unwrap(), deg);
        prop_assert_eq!(prod, series::truncate(&[int(1)], deg));
    }

    #[test]
    fn newton_round_trip(c in prop::collection::vec(-9i64..9, 1..6)) {
        let mut a = rats(&c);
        a[0] = int(1);
        let deg = a.len() - 1;
        prop_assert_eq!(series::from_power_sums(&series::power_sums(&a, deg), deg), a);
    }

    #[test]
    fn tensor_with_trivial_bundle(c in prop::collection::vec(-9i64..9, 1..5), rank in 1usize..4) {
        let mut a = rats(&c);
        a[0] = int(1);
        let deg = a.len() - 1;
        // A (x) O^rank has Chern class c(A)^rank
        let mut want = series::truncate(&[int(1)], deg);
        for _ in 0..rank {
            want = series::mul(&want, &a, deg);
        }
        let got = series::tensor_chern(&a, deg.max(1), &series::truncate(&[int(1)], deg), rank, deg);
        prop_assert_eq!(got, want);
    }

    #[test]
    fn point_blowup(a in -6i64..6, b in -6i64..6, n in 1usize..7) {
        let amb = AmbientData::new(n, 1).unwrap();
        let seg = SegreData::new(0, n, 1, rats(&[1])).unwrap();
        let v = blowup_power(a, b, n, &amb, &seg).unwrap();
        prop_assert_eq!(v, BigInt::from(a).pow(n as u32) - BigInt::from(b).pow(n as u32));
    }

    #[test]
    fn divisor_arithmetic(x in prop::collection::vec(-50i64..50, 3), y in prop::collection::vec(-50i64..50, 3)) {
        let a = DivClass::from_i64(Basis::S2r, &x).unwrap();
        let b = DivClass::from_i64(Basis::S2r, &y).unwrap();
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(a.scale(&int(2)), &a + &a);
    }

    #[test]
    fn rank2_chambers(rays in prop::collection::btree_set((0i64..6, 0i64..6), 2..7)) {
        let gens: Vec<DivClass> = rays
            .iter()
            .filter(|(x, y)| *x != 0 || *y != 0)
            .map(|&(x, y)| DivClass::from_i64(Basis::S2r, &[x, y]).unwrap())
            .collect();
        let mut dirs: Vec<Vec<BigInt>> = gens.iter().map(DivClass::primitive_ray).collect();
        dirs.sort();
        dirs.dedup();
        prop_assume!(dirs.len() >= 2);
        let fan = gkz_decomposition(&gens).unwrap();
        prop_assert_eq!(fan.len(), dirs.len() - 1);
        prop_assert!(fan.verify(200, 1).ok());
    }

    #[test]
    fn partition_round_trip(mask in 1u32..(1 << 8)) {
        let parts: Vec<usize> = (0..8).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let p = StrictPartition::new(parts).unwrap();
        prop_assert_eq!(p.to_string().parse::<StrictPartition>().unwrap(), p);
    }
}

fn basis_elt(r: usize, mask: u32) -> SchubertElt {
    let parts: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
    SchubertElt::basis(r, StrictPartition::new(parts).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn schubert_ring_axioms(a in 0u32..16, b in 0u32..16, c in 0u32..16) {
        let t = ring_tables(4).unwrap();
        let (x, y, z) = (basis_elt(4, a), basis_elt(4, b), basis_elt(4, c));
        let xy = t.multiply(&x, &y).unwrap();
        prop_assert_eq!(&xy, &t.multiply(&y, &x).unwrap());
        prop_assert_eq!(
            t.multiply(&xy, &z).unwrap(),
            t.multiply(&x, &t.multiply(&y, &z).unwrap()).unwrap()
        );
        if !xy.is_zero() {
            prop_assert_eq!(xy.weight(), Some(x.weight().unwrap() + y.weight().unwrap()));
        }
        prop_assert_eq!(t.multiply(&t.one(), &x).unwrap(), x);
    }
}
