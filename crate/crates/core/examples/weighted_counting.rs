//! Weighted model counting through a strong backdoor into a countable class.

use backdoors::cnf;
use backdoors::detect::{detect, BackdoorKind, BackdoorQuery, Strategy};
use backdoors::evaluate::count_via_strong;
use backdoors::formula::brute_force_count;
use backdoors::islands::{BaseClass, ClassId};
use backdoors::{Var, Weighting};

fn main() {
    let f = cnf![[1, 2], [-1, -2], [2, 3], [-3, 4], [1, -4], [3, 5]];
    let w = Weighting::uniform()
        .with(Var::new(1), 1, 3)
        .and_then(|w| w.with(Var::new(4), 9, 10))
        .unwrap();
    println!("F = {f}");

    for id in [ClassId::Clu, ClassId::Forest] {
        let class = BaseClass::plain(id);
        let query = BackdoorQuery::new(BackdoorKind::Strong, class, f.num_vars());
        let b = detect(&f, &query, Strategy::Auto).unwrap().variables;
        let via = count_via_strong(&f, &b, class, &w).unwrap();
        println!("{class}: backdoor {b:?}, weighted count {via}");
    }
    println!("brute force: {}", brute_force_count(&f, &w).unwrap());
}
