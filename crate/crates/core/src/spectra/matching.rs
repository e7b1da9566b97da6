/// Minimum-cost perfect matching on a square cost matrix (Hungarian method
/// with row/column potentials, `O(k^3)`). Returns `assignment[row] = col`.
pub fn min_cost_assignment(cost: &[Vec<f64>]) -> Vec<usize> {
    let k = cost.len();
    if k == 0 {
        return Vec::new();
    }
    // 1-based internally; column 0 is the virtual start
    let mut u = vec![0.0; k + 1];
    let mut v = vec![0.0; k + 1];
    let mut owner = vec![0usize; k + 1];
    let mut way = vec![0usize; k + 1];
    for row in 1..=k {
        owner[0] = row;
        let mut col0 = 0;
        let mut minv = vec![f64::INFINITY; k + 1];
        let mut used = vec![false; k + 1];
        loop {
            used[col0] = true;
            let r = owner[col0];
            let mut delta = f64::INFINITY;
            let mut next = 0;
            for col in 1..=k {
                if used[col] {
                    continue;
                }
                let reduced = cost[r - 1][col - 1] - u[r] - v[col];
                if reduced < minv[col] {
                    minv[col] = reduced;
                    way[col] = col0;
                }
                if minv[col] < delta {
                    delta = minv[col];
                    next = col;
                }
            }
            for col in 0..=k {
                if used[col] {
                    u[owner[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = next;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            owner[col0] = owner[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; k];
    for col in 1..=k {
        assignment[owner[col] - 1] = col - 1;
    }
    assignment
}
