//! Sparse Z₂ column arithmetic on sorted index lists.

/// `target ← target + other` over Z₂ (symmetric difference). `buf` is scratch.
pub fn add_into(target: &mut Vec<usize>, other: &[usize], buf: &mut Vec<usize>) {
    buf.clear();
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < other.len() {
        match target[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                buf.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                buf.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    buf.extend_from_slice(&target[i..]);
    buf.extend_from_slice(&other[j..]);
    std::mem::swap(target, buf);
}

/// Number of columns left nonzero after reducing the given sorted columns
/// left to right; equals the rank of the matrix.
pub fn rank(columns: &mut [Vec<usize>]) -> usize {
    let mut owner: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut buf = Vec::new();
    let mut rank = 0;
    for j in 0..columns.len() {
        while let Some(&low) = columns[j].last() {
            match owner.get(&low) {
                Some(&k) => {
                    let (left, right) = columns.split_at_mut(j);
                    add_into(&mut right[0], &left[k], &mut buf);
                }
                None => {
                    owner.insert(low, j);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}
