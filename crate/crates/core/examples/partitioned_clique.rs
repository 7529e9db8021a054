//! Partitioned clique as satisfiability: the chosen clique is a weak
//! backdoor into anti-monotone 2CNF.

use backdoors::detect::{verify_backdoor, BackdoorKind, Certificate, Verification};
use backdoors::formula::brute_force_sat;
use backdoors::genbench::{pclique_instance, PartiteGraph};
use backdoors::islands::{BaseClass, ClassId};
use backdoors::{SatResult, Var};

fn main() {
    let v = Var::new;
    let parts = vec![vec![v(1), v(2)], vec![v(3), v(4)], vec![v(5), v(6)]];
    let triangle = PartiteGraph::new(parts.clone(), [(v(1), v(4)), (v(4), v(6)), (v(1), v(6)), (v(2), v(3))]).unwrap();
    let path = PartiteGraph::new(parts, [(v(1), v(3)), (v(3), v(5)), (v(2), v(4))]).unwrap();

    for (name, h) in [("with a triangle", &triangle), ("without", &path)] {
        let f = pclique_instance(h);
        println!("{name}: {} clauses, clique {}", f.len(), h.has_partitioned_clique());
        match brute_force_sat(&f).unwrap() {
            SatResult::Sat(m) => {
                let clique = m.iter().filter(|&(_, b)| b).map(|(x, _)| x).collect();
                let class = BaseClass::plain(ClassId::TwoCnf);
                match verify_backdoor(&f, &clique, BackdoorKind::Weak, class) {
                    Verification::Accept(Certificate::Witness(t)) => {
                        println!("  clique {clique:?} is a weak 2CNF backdoor, witness {t}")
                    }
                    other => println!("  unexpected: {other:?}"),
                }
            }
            SatResult::Unsat => println!("  unsatisfiable"),
        }
    }
}
