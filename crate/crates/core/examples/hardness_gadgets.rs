//! The or-gadgets behind the hardness of weak backdoor detection, and the
//! hitting set instances built from them.

use std::collections::BTreeSet;

use backdoors::detect::{detect, BackdoorKind, BackdoorQuery, Strategy};
use backdoors::genbench::{hs_weak_instance, or_gadget, strong_rhorn_instance, SetSystem};
use backdoors::islands::{is_member, BaseClass, ClassId};
use backdoors::{Assignment, Var};

fn vars(ids: &[u32]) -> BTreeSet<Var> {
    ids.iter().map(|&i| Var::new(i)).collect()
}

fn main() {
    let x = [Var::new(1), Var::new(2)];
    for id in [ClassId::TwoCnf, ClassId::Horn, ClassId::ZeroVal, ClassId::RHorn, ClassId::Forest, ClassId::Clu] {
        let class = BaseClass::plain(id);
        let g = or_gadget(id, &x).unwrap().formula;
        let fixed = x.iter().all(|&v| is_member(class, &g.reduce(&Assignment::single(v, true))));
        println!("{:<6} {g}  in class: {}, in class after x=1: {fixed}", id.token(), is_member(class, &g));
    }

    let s = SetSystem::new(vec![vars(&[1, 2]), vars(&[2, 3]), vars(&[3, 4])], 2).unwrap();
    println!("\nhitting set instance {:?}, k = {}", s.sets, s.k);
    for id in [ClassId::Horn, ClassId::Clu] {
        let inst = hs_weak_instance(&s, id).unwrap();
        let query = BackdoorQuery::new(BackdoorKind::Weak, BaseClass::plain(id), s.k);
        let r = detect(&inst.formula, &query, Strategy::Auto).unwrap();
        println!("  {}: {} clauses, weak backdoor {:?}, hits every set: {}", id.token(), inst.formula.len(), r.variables, s.is_hit_by(&r.variables));
    }

    let s = SetSystem::new(vec![vars(&[1])], 0).unwrap();
    let inst = strong_rhorn_instance(&s).unwrap();
    let query = BackdoorQuery::new(BackdoorKind::Strong, BaseClass::plain(ClassId::RHorn), 2);
    let r = detect(&inst.formula, &query, Strategy::BruteForce).unwrap();
    println!("\nstrong RHorn instance {}: smallest strong backdoor {:?}", inst.formula, r.variables);
}
