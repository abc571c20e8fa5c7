use criterion::{black_box, criterion_group, criterion_main, Criterion};

use chazy_core::algebra::{c, parse_poly, CycloNumber};
use chazy_core::analytic::{wp_laurent, xi_formal_solution};
use chazy_core::catalog::{artifacts, build_equation, xyz, EquationId};
use chazy_core::classifier::classify_all;
use chazy_core::verifier::verify_first_integrals;

fn cyclo(cr: &mut Criterion) {
    let a = &(&c("sqrt3") + &c("zeta12")) + &CycloNumber::frac(3, 7);
    let b = &c("omega5") - &c("sqrt5");
    cr.bench_function("cyclo_mul", |bn| bn.iter(|| black_box(&a) * black_box(&b)));
    cr.bench_function("cyclo_inv", |bn| bn.iter(|| black_box(&a).inv()));
}

fn polys(cr: &mut Criterion) {
    let r = xyz();
    let p = parse_poly("x^4 - 4*x^2*y + 2*z*x - y^2 + 3*x*y*z", &r).unwrap();
    let q = parse_poly("x^3 - 3*y*x + z", &r).unwrap();
    cr.bench_function("poly_mul", |bn| bn.iter(|| black_box(&p) * black_box(&q)));
    let eq = build_equation(EquationId::Xplus).unwrap();
    let big = artifacts(EquationId::Xplus).poly("Q").unwrap().clone();
    cr.bench_function("lie_derivative_x_q", |bn| bn.iter(|| eq.field().lie_derivative(black_box(&big)).unwrap()));
}

fn pipelines(cr: &mut Criterion) {
    let mut g = cr.benchmark_group("pipelines");
    g.sample_size(10);
    g.bench_function("classify_all", |bn| bn.iter(|| classify_all().unwrap()));
    g.bench_function("first_integrals_ix", |bn| bn.iter(|| verify_first_integrals(EquationId::IX).unwrap()));
    g.bench_function("xi_series_k5_order60", |bn| bn.iter(|| xi_formal_solution(black_box(5), 60)));
    g.bench_function("wp_laurent_40", |bn| bn.iter(|| wp_laurent(black_box(40))));
    g.finish();
}

criterion_group!(benches, cyclo, polys, pipelines);
criterion_main!(benches);
