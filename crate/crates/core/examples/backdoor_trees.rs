//! Backdoor trees can be much smaller than the complete tree over a
//! smallest strong backdoor.

use backdoors::evaluate::{min_leaf_tree, min_leaf_tree_over, validate_tree, BackdoorTree};
use backdoors::genbench::backdoor_tree_family;
use backdoors::islands::{BaseClass, ClassId};

fn main() {
    let horn = BaseClass::plain(ClassId::Horn);
    for n in 1..=3 {
        let family = backdoor_tree_family(n).unwrap();
        let f = &family.formula;
        let over_y = BackdoorTree::complete(&family.external).unwrap();
        let caterpillar = BackdoorTree::caterpillar(&family.internal).unwrap();
        let y: std::collections::BTreeSet<_> = family.external.iter().copied().collect();
        let best_y = min_leaf_tree_over(f, horn, &y, 1 << n).unwrap();
        let best = min_leaf_tree(f, horn, 4 * n).unwrap();

        println!("n = {n}: {} clauses over {} variables", f.len(), f.num_vars());
        println!("  complete tree on y: {} leaves, valid {}", over_y.leaves(), validate_tree(f, &over_y, horn).accepted());
        println!("  best tree on y:     {} leaves", best_y.leaves());
        println!("  caterpillar on x:   {} leaves, valid {}", caterpillar.leaves(), validate_tree(f, &caterpillar, horn).accepted());
        println!("  best tree overall:  {} leaves  {best}", best.leaves());
    }
}
