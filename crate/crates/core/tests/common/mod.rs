#![allow(dead_code)]

pub mod props;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use toric_gw::qpartitions::{Partition, QRational};

/// Brute-force skew Schur function: sum over semistandard tableaux of shape
/// `outer/inner` with entries in 1..=nvars of Π x_{T(c)}, x_i = t^{2i−1−2ν_i}.
/// Returns coefficients of t^e for e in [lo, max_exp].
pub fn ssyt_series(
    outer: &Partition,
    inner: &Partition,
    shift: &Partition,
    nvars: usize,
    lo: i64,
    max_exp: i64,
) -> Vec<BigInt> {
    let x: Vec<i64> = (1..=nvars as i64).map(|i| 2 * i - 1 - 2 * shift.part(i as usize - 1) as i64).collect();
    let min_x = *x.iter().min().unwrap_or(&0);
    let cells: Vec<(usize, usize)> = (0..outer.len())
        .flat_map(|r| (inner.part(r) as usize..outer.part(r) as usize).map(move |c| (r, c)))
        .collect();
    let mut out = vec![BigInt::zero(); (max_exp - lo + 1).max(0) as usize];
    let mut grid: Vec<Vec<usize>> = (0..outer.len()).map(|r| vec![0; outer.part(r) as usize]).collect();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        exp: i64,
        cells: &[(usize, usize)],
        inner: &Partition,
        grid: &mut Vec<Vec<usize>>,
        x: &[i64],
        min_x: i64,
        lo: i64,
        max_exp: i64,
        out: &mut Vec<BigInt>,
    ) {
        // each remaining cell adds at least min_x
        if exp + (cells.len() - k) as i64 * min_x > max_exp {
            return;
        }
        if k == cells.len() {
            if exp >= lo && exp <= max_exp {
                out[(exp - lo) as usize] += 1;
            }
            return;
        }
        let (r, c) = cells[k];
        let mut lower = 1usize;
        if c > inner.part(r) as usize {
            lower = lower.max(grid[r][c - 1]);
        }
        if r > 0 && c < grid[r - 1].len() && c >= inner.part(r - 1) as usize {
            lower = lower.max(grid[r - 1][c] + 1);
        }
        for v in lower..=x.len() {
            grid[r][c] = v;
            rec(k + 1, exp + x[v - 1], cells, inner, grid, x, min_x, lo, max_exp, out);
        }
        grid[r][c] = 0;
    }
    rec(0, 0, &cells, inner, &mut grid, &x, min_x, lo, max_exp, &mut out);
    out
}

/// Series coefficients of a rational function on [lo, max_exp].
pub fn qrational_series(f: &QRational, lo: i64, max_exp: i64) -> Vec<BigInt> {
    let (low, c) = f.series(max_exp);
    (lo..=max_exp)
        .map(|e| {
            let i = e - low;
            if i < 0 || i >= c.len() as i64 {
                BigInt::zero()
            } else {
                let v: &BigRational = &c[i as usize];
                assert!(v.is_integer());
                v.to_integer()
            }
        })
        .collect()
}

/// Smallest number of variables for which the truncated tableau sum is
/// exact through t^max_exp: every monomial involving x_{N+1} or later has
/// exponent above max_exp.
pub fn variables_needed(outer: &Partition, inner: &Partition, shift: &Partition, base: usize, max_exp: i64) -> usize {
    let cells = (outer.size() - inner.size()) as i64;
    let xs = |i: i64| 2 * i - 1 - 2 * shift.part(i as usize - 1) as i64;
    let min_x = (1..=shift.len().max(1) as i64).map(xs).min().unwrap().min(1);
    let mut n = base;
    while xs(n as i64 + 1) + (cells - 1) * min_x <= max_exp {
        n += 1;
    }
    n
}

/// Runs the tableau oracle over every skew shape λ/η with |λ| ≤ max_outer and
/// every shift with |ν| ≤ max_shift, comparing through t^max_exp. Returns the
/// number of comparisons, panicking on the first mismatch.
pub fn schur_oracle_sweep(max_outer: u32, max_shift: u32, base_vars: usize, max_exp: i64) -> usize {
    use toric_gw::qpartitions::skew_schur_specialized;
    let mut checked = 0;
    for shift in Partition::all_up_to(max_shift) {
        for outer in Partition::all_up_to(max_outer) {
            for inner in Partition::all_up_to(outer.size()) {
                if !outer.contains(&inner) {
                    continue;
                }
                let n = variables_needed(&outer, &inner, &shift, base_vars, max_exp);
                let cells = (outer.size() - inner.size()) as i64;
                let min_x = (1..=n as i64).map(|i| 2 * i - 1 - 2 * shift.part(i as usize - 1) as i64).min().unwrap();
                let lo = (cells * min_x).min(0);
                let brute = ssyt_series(&outer, &inner, &shift, n, lo, max_exp);
                let exact = skew_schur_specialized(&outer, &inner, &shift).unwrap();
                let series = qrational_series(&exact, lo, max_exp);
                assert_eq!(brute, series, "s_{{{outer}/{inner}}} at shift {shift}, {n} variables");
                checked += 1;
            }
        }
    }
    checked
}
