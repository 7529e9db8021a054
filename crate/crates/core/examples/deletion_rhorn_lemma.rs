//! Deletion backdoors into renamable Horn via vertex cover on the literal
//! graph, and the two 2SAT deletion problems derived from it.

use backdoors::cnf;
use backdoors::detect::{detect_deletion_rhorn, Certificate};
use backdoors::genbench::{lemma_2sat_chain, min_deletions_to_sat};
use backdoors::graphkit::lemma_graph;
use backdoors::Clause;

fn main() {
    let formulas = [
        cnf![[1, 2], [-1, 3]],
        cnf![[1, 2], [-1, 2], [1, -2], [-1, -2]],
        cnf![[1, 2, 3], [-1, -2, -3], [1, -2], [2, -3]],
    ];
    for f in &formulas {
        let r = detect_deletion_rhorn(f, f.num_vars()).expect("var(F) is always a deletion backdoor");
        let renaming = match &r.certificate {
            Certificate::Renaming(x) => format!("{x:?}"),
            _ => "-".into(),
        };
        let lg = lemma_graph(f);
        println!("F = {f}");
        println!("  literal graph: {} matching edges, {} co-occurrence edges", lg.matching.len(), lg.cooccurrence_edges().len());
        println!("  deletion backdoor {:?}, renaming {renaming}", r.variables);

        let k = r.size();
        let chain = lemma_2sat_chain(f, k);
        let negative = |c: &Clause| c.positive_count() == 0;
        let a = min_deletions_to_sat(&chain.f2, negative, f.len() + 1).unwrap();
        let b = min_deletions_to_sat(&chain.f2star, |_| true, f.len() + 1).unwrap();
        println!("  F2 has {} clauses, negative deletions needed: {a:?}", chain.f2.len());
        println!("  F2* has {} clauses, deletions needed: {b:?}\n", chain.f2star.len());
    }
}
