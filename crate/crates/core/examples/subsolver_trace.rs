//! Step-by-step runs of unit propagation and pure literal elimination.

use backdoors::cnf;
use backdoors::islands::{subsolver_run, Subsolver, SubsolverStep};

fn main() {
    let cases = [
        cnf![[1], [-1, 2], [-2, 3]],
        cnf![[1, 2], [-1, -2]],
        cnf![[1, 2], [1, -2], [-1, 3]],
        cnf![[1], [-1]],
    ];
    for f in &cases {
        println!("F = {f}");
        for which in [Subsolver::Up, Subsolver::Pl, Subsolver::UpPl] {
            let trace = subsolver_run(which, f);
            let steps: Vec<String> = trace
                .steps
                .iter()
                .map(|s| match s {
                    SubsolverStep::UnitPropagation(l) => format!("unit {l}"),
                    SubsolverStep::PureLiteral(l) => format!("pure {l}"),
                })
                .collect();
            println!("  {which:?}: [{}] -> {:?}, residual {}", steps.join(", "), trace.outcome, trace.residual);
        }
    }
}
