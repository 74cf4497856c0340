use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use vibpol::kinetics::relaxation_data;
use vibpol::model::diagonalize;
use vibpol::numerics::{expm, hermitian_eig};
use vibpol::response::{dqc_spectrum, pe_spectrum, preset};
use vibpol::{BathSpec, ComplexMatrix, GridSpec, SystemParams, Technique, C64};

fn linear_algebra(c: &mut Criterion) {
    let eig = diagonalize(&SystemParams::default()).unwrap();
    let h = eig.manifolds[2].hamiltonian.clone();
    c.bench_function("hermitian_eig_6x6", |b| b.iter(|| hermitian_eig(black_box(&h)).unwrap()));

    let relax = relaxation_data(&eig, &BathSpec::default()).unwrap();
    let k = relax.manifolds[2].transport_matrix().scale(C64::new(-1.0, 0.0));
    c.bench_function("expm_transport_6x6", |b| b.iter(|| expm(black_box(&k), black_box(500.0)).unwrap()));

    let g = ComplexMatrix::from_fn(12, 12, |i, j| C64::new((i as f64 - j as f64).sin(), ((i * j) as f64).cos() * 0.1));
    c.bench_function("expm_dense_12x12", |b| b.iter(|| expm(black_box(&g), black_box(3.0)).unwrap()));
}

fn model(c: &mut Criterion) {
    let params = SystemParams::default();
    c.bench_function("diagonalize", |b| b.iter(|| diagonalize(black_box(&params)).unwrap()));
    let eig = diagonalize(&params).unwrap();
    let bath = BathSpec::default();
    c.bench_function("relaxation_data", |b| b.iter(|| relaxation_data(black_box(&eig), &bath).unwrap()));
}

fn spectra(c: &mut Criterion) {
    let eig = diagonalize(&SystemParams::default()).unwrap();
    let relax = relaxation_data(&eig, &BathSpec::default()).unwrap();
    let mut group = c.benchmark_group("spectrum_256");
    group.sample_size(20);
    for (name, technique) in [("dqc-a", Technique::Dqc), ("pe-a", Technique::Pe)] {
        let (_, case) = preset(name).unwrap();
        let pulses = case.resolve(technique, &eig).unwrap();
        let mut grid = GridSpec::default_for(technique);
        grid.axis1.points = 256;
        grid.axis2.points = 256;
        group.bench_function(name, |b| {
            b.iter(|| match technique {
                Technique::Dqc => dqc_spectrum(&eig, &relax, &pulses, black_box(&grid)).unwrap(),
                Technique::Pe => pe_spectrum(&eig, &relax, &pulses, black_box(&grid)).unwrap(),
            })
        });
    }
    group.finish();
}

criterion_group!(benches, linear_algebra, model, spectra);
criterion_main!(benches);
