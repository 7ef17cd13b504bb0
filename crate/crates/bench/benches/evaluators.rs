use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use depind::decide::validity;
use depind::kripke_semantics::Evaluator;
use depind::team_semantics::{eval_team, SplitStrategy};
use depind::translations::tchi_i_to_ld;
use depind::Fragment;
use depind_bench::{formula, model};
use std::hint::black_box;

fn team(c: &mut Criterion) {
    let mut g = c.benchmark_group("team");
    let disj = formula("(p & I(q;;r)) | (I(q;;s) & ~r)", Fragment::TEAM_I);
    let dep = formula("D(p;q) | D(r;s) | D(p;s)", Fragment::TEAM_D);
    for n in [6, 8, 10] {
        let m = model(n);
        g.bench_with_input(BenchmarkId::new("general", n), &m, |b, m| {
            b.iter(|| eval_team(m, black_box(&disj), Fragment::TEAM_I, SplitStrategy::General).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("partition", n), &m, |b, m| {
            b.iter(|| eval_team(m, black_box(&dep), Fragment::TEAM_D, SplitStrategy::Partition).unwrap())
        });
    }
    g.finish();
}

fn kripke(c: &mut Criterion) {
    let m = model(16);
    let phi = formula("D(p, q; r) | (C (q & r) & ~D(s; p))", Fragment::LD);
    let psi = formula("I(p, q; r; s) | ~I(p;;s)", Fragment::LI);
    c.bench_function("kripke/16 worlds", |b| {
        b.iter(|| {
            Evaluator::new(&m).eval(black_box(&phi));
            Evaluator::new(&m).eval(black_box(&psi))
        })
    });
}

fn decide(c: &mut Criterion) {
    let phi = formula("D(p, q; r) | C (p -> r)", Fragment::LD);
    c.bench_function("validity/3 symbols", |b| b.iter(|| validity(black_box(&phi), Fragment::LD).unwrap()));
    let chi = formula("I(p;;q) | (p & I(q;;p))", Fragment::TEAM_I);
    c.bench_function("tchi/translate", |b| b.iter(|| tchi_i_to_ld(black_box(&chi)).unwrap()));
}

criterion_group!(benches, team, kripke, decide);
criterion_main!(benches);
