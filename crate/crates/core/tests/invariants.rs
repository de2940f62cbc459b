use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quartic_twist::ascurves::{count_points_tower, CurveStats, TowerCurve};
use quartic_twist::binfield::FieldCtx;
use quartic_twist::elliptic::build_quartic_twist;
use quartic_twist::fibration::{fiber_type_table, tate_algorithm_at_infinity};
use quartic_twist::polyalg::{normalize_pair, Gen, MultiPoly, RewriteSystem, UniPoly};
use quartic_twist::verify::random_poly;

fn draw(seed: u64, m: u32, da: usize, db: usize) -> (FieldCtx, UniPoly, UniPoly) {
    let f = FieldCtx::new(m).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_poly(&mut rng, &f, da);
    let b = random_poly(&mut rng, &f, db);
    (f, a, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `r~ = r + c`, `s~ = s + c r + d` satisfy the normalized relations.
    #[test]
    fn normalization_is_a_change_of_variables(seed in any::<u64>(), m in 1u32..=3, da in 1usize..7, db in 0usize..9) {
        let (f, a, b) = draw(seed, m, da, db);
        let n = normalize_pair(&a, &b);
        let rs = RewriteSystem::tower(&f, &a, &b).unwrap();
        let r = MultiPoly::gen(&f, Gen::R);
        let s = MultiPoly::gen(&f, Gen::S);
        let (c, d) = (MultiPoly::constant(&n.c), MultiPoly::constant(&n.d));
        let rt = &r + &c;
        let st = &(&s + &(&c * &r)) + &d;
        let h = rs.normal_form(&(&(&rt.pow(2) + &rt) + &MultiPoly::constant(&n.a)));
        let rhs = &(&rt * &MultiPoly::constant(&n.a)) + &MultiPoly::constant(&n.b);
        let cc = rs.normal_form(&(&(&st.pow(2) + &st) + &rhs));
        prop_assert!(h.is_zero(), "r-relation residual {}", h);
        prop_assert!(cc.is_zero(), "s-relation residual {}", cc);
        prop_assert!(n.a.degree().is_none_or(|d| d == 0 || d % 2 == 1));
        prop_assert!(n.b.degree().is_none_or(|d| d == 0 || d % 2 == 1));
    }

    /// `E_{A,B}` has `Δ = 1`, so every finite specialization is smooth.
    #[test]
    fn specializations_are_smooth(seed in any::<u64>(), da in 0usize..8, db in 0usize..8) {
        let (f, a, b) = draw(seed, 2, da, db);
        let big = FieldCtx::new(4).unwrap();
        let emb = f.embedding_into(&big).unwrap();
        let tw = build_quartic_twist(&a.map_coeffs(&emb, &big).unwrap(), &b.map_coeffs(&emb, &big).unwrap()).unwrap();
        for t0 in big.elements() {
            prop_assert!(tw.specialize(&big, t0).unwrap().is_smooth());
        }
    }

    /// Normalized towers obey the Weil bound with the formula genus.
    #[test]
    fn counts_within_weil_bound(seed in any::<u64>(), da in 0usize..3, db in 0usize..4) {
        let (f, a, b) = draw(seed, 1, 2 * da + 1, 2 * db + 1);
        let tower = TowerCurve::new(&f, a, b).unwrap();
        let big = FieldCtx::new(6).unwrap();
        let n = count_points_tower(&tower, &big).unwrap();
        let stats = CurveStats::new(tower.genus_c().unwrap(), n, &big);
        prop_assert!(stats.within_weil_bound(big.size()), "{:?}", stats);
    }

    #[test]
    fn tate_agrees_with_table(seed in any::<u64>(), m in 1u32..=3, da in 0usize..10, db in 0usize..10) {
        let (f, a, b) = draw(seed, m, 2 * da + 1, 2 * db + 1);
        prop_assert_eq!(
            tate_algorithm_at_infinity(&f, &a, &b).unwrap(),
            fiber_type_table(2 * da + 1, 2 * db + 1).unwrap()
        );
    }
}
