//! Which base classes a few small formulas belong to.
//!
//! ```text
//! cargo run --example recognize_islands
//! ```

use backdoors::cnf;
use backdoors::islands::{find_renaming, is_member, BaseClass, ClassId};

fn main() {
    let formulas = [
        ("horn chain", cnf![[1], [-1, 2], [-2, -3, 4]]),
        ("positive pair", cnf![[1, 2]]),
        ("hitting pair", cnf![[1, 2], [-1, -2]]),
        ("overlap", cnf![[1], [1, 2]]),
        ("complete 2-var", cnf![[1, 2], [-1, 2], [1, -2], [-1, -2]]),
        ("wide positive", cnf![[1, 2, 3]]),
    ];

    print!("{:<16}", "");
    for id in ClassId::ALL {
        print!("{:>11}", id.token());
    }
    println!();
    for (name, f) in &formulas {
        print!("{name:<16}");
        for id in ClassId::ALL {
            let mark = if is_member(BaseClass::plain(id), f) { "yes" } else { "." };
            print!("{mark:>11}");
        }
        println!();
    }

    println!();
    for (name, f) in &formulas {
        match find_renaming(f) {
            Some(x) => println!("{name}: Horn after flipping {x:?}"),
            None => println!("{name}: not renamable Horn"),
        }
    }

    let with_empty = BaseClass::with_empty_clause_detection(ClassId::ZeroVal);
    let f = cnf![[1], [-1], []];
    println!(
        "\n{f} in {}: {}, in {with_empty}: {}",
        ClassId::ZeroVal.token(),
        is_member(BaseClass::plain(ClassId::ZeroVal), &f),
        is_member(with_empty, &f)
    );
}
