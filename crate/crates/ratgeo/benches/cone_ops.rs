//! Parallel vs sequential timing for the data-parallel inner loops:
//! FM pair combination, per-row redundancy LPs and DD insertion.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ratgeo::rational::BigInt;
use ratgeo::{fm_eliminate, Exec, FmOpts, HCone};
use std::collections::BTreeSet;

fn row(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Shannon-style test cone: elemental rows for n=4 (28 rows, dim 15).
fn shannon4() -> HCone {
    let n = 4usize;
    let full = (1usize << n) - 1;
    let idx = |mask: usize| -> usize {
        let mut sets: Vec<usize> = (1..=full).collect();
        sets.sort_by_key(|s| (s.count_ones(), *s));
        sets.iter().position(|&s| s == mask).unwrap()
    };
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut r = vec![0i64; full];
        r[idx(full)] += 1;
        r[idx(full & !(1 << i))] -= 1;
        rows.push(r);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let rest = full & !(1 << i) & !(1 << j);
            let mut sub = rest;
            loop {
                let mut r = vec![0i64; full];
                r[idx(sub | (1 << i))] += 1;
                r[idx(sub | (1 << j))] += 1;
                if sub != 0 {
                    r[idx(sub)] -= 1;
                }
                r[idx(sub | (1 << i) | (1 << j))] -= 1;
                rows.push(r);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
    }
    HCone::new(full, vec![], rows.iter().map(|r| row(r)).collect()).unwrap()
}

fn bench_fm(c: &mut Criterion) {
    let cone = shannon4();
    // Project away every coordinate containing variable 3.
    let full = cone.dim;
    let mut sets: Vec<usize> = (1..=full).collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    let elim: BTreeSet<usize> = sets
        .iter()
        .enumerate()
        .filter(|(_, &s)| s & (1 << 3) != 0)
        .map(|(i, _)| i)
        .collect();

    let mut group = c.benchmark_group("fm_eliminate_shannon4_marginal");
    for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_with_input(BenchmarkId::from_parameter(label), &exec, |b, &exec| {
            let opts = FmOpts {
                exec,
                ..FmOpts::default()
            };
            b.iter(|| fm_eliminate(&cone, &elim, &opts).unwrap());
        });
    }
    group.finish();
}

fn bench_dd(c: &mut Criterion) {
    let cone = shannon4();
    let mut group = c.benchmark_group("h_to_v_shannon4");
    for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_with_input(BenchmarkId::from_parameter(label), &exec, |b, &exec| {
            let opts = ratgeo::dd::DdOpts {
                exec,
                allow_lineality: false,
            };
            b.iter(|| ratgeo::dd::h_to_v_with(&cone, &opts).unwrap());
        });
    }
    group.finish();
}

fn bench_redundancy(c: &mut Criterion) {
    let cone = shannon4();
    // Duplicate the system against itself plus some implied rows.
    let mut fat = cone.clone();
    let doubled: Vec<Vec<BigInt>> = cone
        .ineqs
        .iter()
        .zip(cone.ineqs.iter().cycle().skip(1))
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
        .collect();
    fat.ineqs.extend(doubled);
    let mut group = c.benchmark_group("remove_redundant_shannon4_fat");
    for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_with_input(BenchmarkId::from_parameter(label), &exec, |b, &exec| {
            let opts = ratgeo::redundancy::RedundancyOpts {
                exec,
                implicit_equalities: false,
            };
            b.iter(|| ratgeo::redundancy::remove_redundant_with(&fat, &opts));
        });
    }
    group.finish();
}

criterion_group!(benches, bench_fm, bench_dd, bench_redundancy);
criterion_main!(benches);
