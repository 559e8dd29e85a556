use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use sp4_bench::sample_form;
use sp4_core::lie::casimir;
use sp4_core::nearhol::{apply_word, numcheck_rootvectors, SiegelPoint};
use sp4_core::structure::index_set;
use sp4_core::verma::{ktype_multiplicity_l, VermaModule};
use sp4_core::{BasisSymbol, OperatorWord, Weight};

fn lie(c: &mut Criterion) {
    c.bench_function("casimir_normal_form", |b| b.iter(|| black_box(casimir())));
}

fn verma(c: &mut Criterion) {
    c.bench_function("highest_weight_vectors_(3,1)_(9,5)", |b| {
        b.iter(|| {
            let n = VermaModule::new(Weight::new(3, 1)).unwrap();
            black_box(n.highest_weight_vectors(Weight::new(9, 5)))
        })
    });
    let word: OperatorWord = "Xp,Ep,Dp,U".parse().unwrap();
    c.bench_function("navigate_XpEpDpU_(6,2)", |b| {
        b.iter(|| black_box(VermaModule::new(Weight::new(6, 2)).unwrap().navigate(&word)))
    });
    c.bench_function("ktype_multiplicity_l_box", |b| {
        b.iter(|| {
            let mut s = 0;
            for k in -6..=6 {
                for l in -6..=k {
                    s += ktype_multiplicity_l(Weight::new(k, l), Weight::new(k + 6, l + 4));
                }
            }
            black_box(s)
        })
    });
}

fn nearhol(c: &mut Criterion) {
    let f = sample_form(4, 2, 3, 2);
    let word: OperatorWord = "Ep,Xp,Dp,U".parse().unwrap();
    c.bench_function("apply_word_EpXpDpU", |b| b.iter(|| black_box(apply_word(&word, &f).unwrap())));
    let z = SiegelPoint::parse("0.1+1.1i,0.2+0.3i,-0.3+0.9i").unwrap();
    c.bench_function("numcheck_P1p", |b| {
        b.iter(|| black_box(numcheck_rootvectors(&f, BasisSymbol::P1p, &z, 1e-4).unwrap()))
    });
}

fn structure(c: &mut Criterion) {
    c.bench_function("index_sets_up_to_20", |b| {
        b.iter(|| {
            let mut n = 0;
            for ell in 1..=20 {
                for m in 0..=(20 - ell) {
                    for lp in 1..=ell {
                        for mp in 0..=(ell + m - lp) {
                            n += index_set(ell, m, lp, mp).len();
                        }
                    }
                }
            }
            black_box(n)
        })
    });
}

criterion_group!(benches, lie, verma, nearhol, structure);
criterion_main!(benches);
