use pcat_core::flavors::{Flavor, ObjectFilter, SubgroupContext};
use pcat_core::nerve::{nerve_complex, FieldSpec};
use std::time::Instant;

fn main() {
    let g = pcat_lab::catalog::lookup("s4").unwrap();
    let ctx = SubgroupContext::new(&g, 2).unwrap();
    for (flavor, filter, dmax) in [
        (Flavor::S, ObjectFilter::Star, 3usize),
        (Flavor::T, ObjectFilter::Star, 2),
        (Flavor::L, ObjectFilter::Star, 2),
        (Flavor::F, ObjectFilter::Star, 3),
        (Flavor::O, ObjectFilter::Star, 3),
        (Flavor::O, ObjectFilter::All, 3),
        (Flavor::FTilde, ObjectFilter::Star, 3),
    ] {
        let t0 = Instant::now();
        let built = ctx.build(flavor, &filter).unwrap();
        let skel = ctx.skeletal(&built);
        let t1 = Instant::now();
        let nerve = nerve_complex(&skel.cat, dmax, 5_000_000).unwrap();
        let t2 = Instant::now();
        let bf = nerve.betti(FieldSpec::Fp(2));
        let t3 = Instant::now();
        let bq = nerve.betti(FieldSpec::Rational);
        let t4 = Instant::now();
        println!(
            "{flavor} {filter}: objs {}->{} mors {}->{} dims {:?} | build {:?} nerve {:?} f2 {:?} q {:?} | bf2 {:?} bq {:?}",
            built.cat.object_count(), skel.cat.object_count(),
            built.cat.mor_count(), skel.cat.mor_count(),
            nerve.dims,
            t1 - t0, t2 - t1, t3 - t2, t4 - t3, bf.betti, bq.betti
        );
    }
}
