/// Picks the lexicographically least solution of cardinality `size`.
///
/// `feasible(forced_in, forced_out)` must report whether some solution of
/// cardinality at most `size` contains every element of `forced_in` and
/// none of `forced_out`. `size` must be the optimum, so the greedy choice
/// "take the next candidate whenever still feasible" ends on a solution.
pub(crate) fn lex_least<T: Copy>(
    candidates: &[T],
    size: usize,
    mut feasible: impl FnMut(&[T], &[T]) -> bool,
) -> Vec<T> {
    let mut chosen = Vec::with_capacity(size);
    let mut excluded = Vec::new();
    for &c in candidates {
        if chosen.len() == size {
            break;
        }
        chosen.push(c);
        if !feasible(&chosen, &excluded) {
            chosen.pop();
            excluded.push(c);
        }
    }
    chosen
}
