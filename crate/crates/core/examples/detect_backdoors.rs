//! Weak, strong and deletion backdoors of one formula for several classes,
//! comparing the specialized algorithms with brute force.

use backdoors::cnf;
use backdoors::detect::{detect, has_specialized, BackdoorKind, BackdoorQuery, Strategy};
use backdoors::islands::{BaseClass, ClassId};
use backdoors::Error;

fn main() {
    let f = cnf![[1, 2, 3], [-1, 2], [-2, -3, 4], [3, 4], [-4, 1]];
    println!("F = {f}\n");
    let k = f.num_vars();

    for id in [ClassId::Horn, ClassId::TwoCnf, ClassId::RHorn, ClassId::Forest, ClassId::Clu, ClassId::UP] {
        let class = BaseClass::plain(id);
        for kind in [BackdoorKind::Weak, BackdoorKind::Strong, BackdoorKind::Deletion] {
            let query = BackdoorQuery::new(kind, class, k);
            let line = match detect(&f, &query, Strategy::Auto) {
                Ok(r) => {
                    let check = if has_specialized(kind, class) {
                        let brute = detect(&f, &query, Strategy::BruteForce).map(|b| b.size());
                        format!(" (brute force: {})", brute.map_or("-".into(), |s| s.to_string()))
                    } else {
                        String::new()
                    };
                    format!("{:?} via {}{check}", r.variables, r.algorithm)
                }
                Err(Error::Unsupported(msg)) => format!("n/a: {msg}"),
                Err(e) => e.to_string(),
            };
            println!("{:<8} {kind:<9} {line}", class.to_string());
        }
    }
}
