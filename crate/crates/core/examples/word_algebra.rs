//! Free-group words: reduction, commutators, conjugation, cyclic reduction.

use orsolv::{Gen, Word};

fn main() {
    let names = vec!["a".to_string(), "b".to_string()];
    let a = Word::generator(Gen(0));
    let b = Word::generator(Gen(1));

    let ab = a.commutator(&b);
    let r = a.commutator(&ab);
    println!("[a,b]        = {}", ab.display(&names));
    println!("[a,[a,b]]    = {}", r.display(&names));
    println!(
        "exponent sums: a {}, b {}",
        r.exponent_sum(Gen(0)),
        r.exponent_sum(Gen(1))
    );

    let u = b.conjugate(&a.inverse());
    println!("b^(a^-1)     = {}", u.display(&names));
    let (core, conj) = u.cyclically_reduce();
    println!(
        "cyclic core  = {}, conjugator = {}",
        core.display(&names),
        conj.display(&names)
    );
    assert_eq!(core.conjugate(&conj), u);

    let x = a.multiply(&b).pow(3);
    println!(
        "(ab)^3 * (ab)^-3 = {}",
        x.multiply(&x.inverse()).display(&names)
    );
}
