//! Classifying presentations and re-checking the certificates.

use orsolv::classifier::{classify, verify_certificate};
use orsolv::Presentation;

fn main() {
    for text in [
        "a,b ; abab",
        "a,b ; a b a^-1 b^-1",
        "a,b ; [a,[a,b]^2]",
        "x,y ; [[[x,y],y],y]",
        "a,b,c,d ; [a,b][c,d]",
        "a,b ; [a, [a,b] [([a,b]^-1 [a,b]^a), ([a,b]^-1 [a,b]^a)^b]]",
        "a,b ; a^2 b^-3",
    ] {
        let p = Presentation::parse(text).unwrap();
        let v = classify(&p);
        println!("{p}\n  status: {}", v.status.name());
        for c in &v.certificates {
            assert!(verify_certificate(&p, c));
            println!("  {:<26} {}", c.kind().name(), c.summary(p.generators()));
        }
    }
}
