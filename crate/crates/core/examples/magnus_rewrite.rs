//! Magnus rewriting of `[a,[a,b]^n]` and the free-by-cyclic test.

use orsolv::magnus::{expand_rewritten, lemma_check, magnus_rewrite};
use orsolv::Presentation;

fn main() {
    for n in 1..=3 {
        let p = Presentation::parse(&format!("a,b ; [a,[a,b]^{n}]")).unwrap();
        let a = p.gen_by_name("a").unwrap();
        let r0 = magnus_rewrite(&p, a).unwrap();
        println!("{p}");
        println!("  r0 = {}", r0.display(p.generators()));
        assert_eq!(&expand_rewritten(&r0), p.relator());
        for v in lemma_check(&p) {
            println!(
                "  eliminate {}, watch {}: mu = {}, nu = {}, once at extremes: {}",
                p.generators()[v.eliminated.0],
                p.generators()[v.witness.0],
                v.mu,
                v.nu,
                v.applicable
            );
        }
    }
}
