use super::{Matching, Method};
use crate::points::{check_pair, PointSet};
use crate::{CostSpec, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Color {
    Red,
    Blue,
}

/// Dyck matching of two point sets on the line.
///
/// All `2n` points are merged in coordinate order (a red point before a blue
/// one at equal coordinates, input order within a color) and scanned with a
/// stack: a point is pushed when the stack is empty or its top has the same
/// color, otherwise the top is popped and matched with it. This pairs points
/// across level sets of `#{x_i <= t} - #{y_j <= t}`.
///
/// Edge costs are distances; see [`Matching::priced`].
pub fn dyck_match(x: &PointSet, y: &PointSet) -> Result<Matching> {
    check_pair(x, y)?;
    let xs = x.line_values("dyck matching")?;
    let ys = y.line_values("dyck matching")?;

    let mut merged: Vec<(f64, Color, usize)> = xs
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, Color::Red, i))
        .chain(ys.iter().enumerate().map(|(j, &v)| (v, Color::Blue, j)))
        .collect();
    merged.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut stack: Vec<(Color, usize)> = Vec::with_capacity(xs.len());
    let mut pairs = Vec::with_capacity(xs.len());
    for (_, color, idx) in merged {
        match stack.last() {
            Some(&(top, other)) if top != color => {
                stack.pop();
                pairs.push(match color {
                    Color::Blue => (other, idx),
                    Color::Red => (idx, other),
                });
            }
            _ => stack.push((color, idx)),
        }
    }
    debug_assert!(stack.is_empty());
    pairs.sort_unstable();
    Matching::from_pairs(Method::Dyck, CostSpec::Power(1.0), &pairs, x, y)
}
