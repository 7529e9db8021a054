mod common;

use backdoors::detect::{detect, detect_bruteforce, BackdoorKind, BackdoorQuery, Strategy};
use backdoors::evaluate::{count_via_strong, min_leaf_tree, sat_via_strong, sat_via_tree, validate_tree};
use backdoors::formula::{brute_force_count, brute_force_sat};
use backdoors::islands::{BaseClass, ClassId};
use backdoors::{Var, Weighting};
use common::{any_class, class_where, formula};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { max_global_rejects: 1 << 20, ..ProptestConfig::default() })]

    #[test]
    fn strong_evaluation_agrees_with_brute_force(class in any_class(), f in formula(4, 6)) {
        let q = BackdoorQuery::new(BackdoorKind::Strong, class, f.num_vars());
        let Ok(found) = detect(&f, &q, Strategy::Auto) else { return Ok(()) };
        let r = sat_via_strong(&f, &found.variables, class).unwrap();
        prop_assert_eq!(r.is_sat(), brute_force_sat(&f).unwrap().is_sat());
        if let Some(m) = r.model() {
            prop_assert!(f.is_satisfied_by(m));
        }
    }

    #[test]
    fn tree_evaluation_agrees_with_brute_force(class in any_class(), f in formula(4, 6)) {
        let Ok(t) = min_leaf_tree(&f, class, usize::MAX) else { return Ok(()) };
        prop_assert!(validate_tree(&f, &t, class).accepted());
        let r = sat_via_tree(&f, &t, class).unwrap();
        prop_assert_eq!(r.is_sat(), brute_force_sat(&f).unwrap().is_sat());
    }

    #[test]
    fn leaf_count_is_bounded_by_backdoor_size(class in class_where(BaseClass::self_reducible), f in formula(4, 6)) {
        let q = BackdoorQuery::new(BackdoorKind::Strong, class, f.num_vars());
        let Ok(b) = detect_bruteforce(&f, &q) else { return Ok(()) };
        let k = b.size();
        let leaves = min_leaf_tree(&f, class, usize::MAX).unwrap().leaves();
        prop_assert!(k < leaves && leaves <= 1 << k, "k={}, leaves={}", k, leaves);
    }

    #[test]
    fn counting_through_detected_backdoors(id in prop::sample::select(vec![ClassId::Clu, ClassId::Forest]), f in formula(4, 6), num in 0i64..=3) {
        let class = BaseClass::plain(id);
        let q = BackdoorQuery::new(BackdoorKind::Strong, class, f.num_vars());
        let b = detect(&f, &q, Strategy::Auto).unwrap().variables;
        let w = Weighting::uniform().with(Var::new(2), num, 3).unwrap();
        prop_assert_eq!(count_via_strong(&f, &b, class, &w).unwrap(), brute_force_count(&f, &w).unwrap());
    }
}
