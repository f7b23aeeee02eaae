use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Total number of cells above which [`kostka`] refuses to run.
pub const KOSTKA_MAX_CELLS: usize = 64;

fn check_partition(p: &[i64]) -> Result<()> {
    if p.iter().any(|&x| x < 0) || p.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NonDominant(format!("{p:?} is not a partition")));
    }
    Ok(())
}

/// Dimension of the irreducible `GL_n` module of highest weight `partition`, by the
/// hook-content formula `∏ (n + c) / h` over the cells of the diagram.
pub fn weyl_dim(partition: &[i64], n: usize) -> Result<BigInt> {
    check_partition(partition)?;
    let rows: Vec<usize> = partition.iter().map(|&x| x as usize).filter(|&x| x > 0).collect();
    if rows.len() > n {
        return Ok(BigInt::zero());
    }
    let col_len = |j: usize| rows.iter().filter(|&&r| r > j).count();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &len) in rows.iter().enumerate() {
        for j in 0..len {
            let content = j as i64 - i as i64;
            let hook = (len - j - 1) + (col_len(j) - i - 1) + 1;
            num *= BigInt::from(n as i64 + content);
            den *= BigInt::from(hook);
        }
    }
    Ok(num / den)
}

/// Number of semistandard tableaux of shape `partition` and content `content`,
/// enumerated by placing the entries `1, 2, …` in turn as horizontal strips.
pub fn kostka(partition: &[i64], content: &[i64]) -> Result<u64> {
    check_partition(partition)?;
    if content.iter().any(|&c| c < 0) {
        return Err(Error::InvalidArgument(format!("negative content {content:?}")));
    }
    let cells: i64 = partition.iter().sum();
    if cells != content.iter().sum::<i64>() {
        return Err(Error::InvalidArgument(format!(
            "shape {partition:?} and content {content:?} have different sizes"
        )));
    }
    if cells as usize > KOSTKA_MAX_CELLS {
        return Err(Error::SizeGuard(format!("{cells} cells exceed {KOSTKA_MAX_CELLS}")));
    }
    let target: Vec<usize> = partition.iter().map(|&x| x as usize).collect();
    let content: Vec<usize> = content.iter().map(|&x| x as usize).collect();
    let mut memo = HashMap::new();
    Ok(count_strips(&target, &content, 0, vec![0; target.len()], &mut memo))
}

fn count_strips(
    target: &[usize],
    content: &[usize],
    step: usize,
    shape: Vec<usize>,
    memo: &mut HashMap<(usize, Vec<usize>), u64>,
) -> u64 {
    if step == content.len() {
        return u64::from(shape == target);
    }
    if let Some(&v) = memo.get(&(step, shape.clone())) {
        return v;
    }
    let mut total = 0;
    let mut next = shape.clone();
    place(target, &shape, &mut next, 0, content[step], &mut |s| {
        total += count_strips(target, content, step + 1, s.to_vec(), memo);
    });
    memo.insert((step, shape), total);
    total
}

/// Enumerates the ways to add `left` cells to rows `row..`, no two in the same column.
fn place(target: &[usize], shape: &[usize], next: &mut Vec<usize>, row: usize, left: usize, visit: &mut dyn FnMut(&[usize])) {
    if left == 0 {
        visit(next);
        return;
    }
    if row == shape.len() {
        return;
    }
    // A horizontal strip may extend row `row` up to the old length of the row above.
    let cap = if row == 0 { target[0] } else { shape[row - 1].min(target[row]) };
    let room = cap.saturating_sub(shape[row]);
    for add in (0..=room.min(left)).rev() {
        next[row] = shape[row] + add;
        place(target, shape, next, row + 1, left - add, visit);
    }
    next[row] = shape[row];
}
