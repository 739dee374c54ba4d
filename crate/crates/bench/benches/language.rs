use cantor_core::language::recurrence_profile;
use cantor_core::scenario::oracle_language;
use cantor_core::{
    generate_language, ActionKind, Budget, FiniteGroup, GroupAction, SubstitutionSequence, Word,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn cyclic(m: usize) -> SubstitutionSequence {
    let g = FiniteGroup::cyclic(m).unwrap();
    let gens = g.default_symmetric_generators();
    let action = GroupAction::new(g, ActionKind::LeftTranslation).unwrap();
    SubstitutionSequence::from_action_schedule(&action, &[gens]).unwrap()
}

fn languages(c: &mut Criterion) {
    let budget = Budget::default();
    let mut group = c.benchmark_group("language");
    for m in [4, 8] {
        let seq = cyclic(m);
        group.bench_with_input(BenchmarkId::new("generate", m), &seq, |b, seq| {
            b.iter(|| generate_language(seq, 0, 12, 6, &budget).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle", m), &seq, |b, seq| {
            b.iter(|| oracle_language(seq, 0, 12, 6, &budget).unwrap())
        });
    }
    group.finish();
}

fn recurrence(c: &mut Criterion) {
    let lang = generate_language(&cyclic(4), 0, 64, 6, &Budget::default()).unwrap();
    let word = Word::new(vec![0, 1]);
    c.bench_function("recurrence/z4-h64", |b| {
        b.iter(|| recurrence_profile(&lang, &word, 64).unwrap())
    });
}

criterion_group!(benches, languages, recurrence);
criterion_main!(benches);
