//! Separating words from the identity in finite solvable quotients.

use orsolv::oracle::{abelianization, build_catalog, separate, DEFAULT_MAX_ORDER};
use orsolv::parser::parse_word;
use orsolv::Presentation;

fn main() {
    let catalog = build_catalog(DEFAULT_MAX_ORDER);
    for g in &catalog {
        print!("{}({}, dl {}) ", g.name, g.order(), g.derived_length);
    }
    println!();

    let cases = [
        ("a,b ; [a,b]", "a b^-1"),
        ("a,b ; abab", "a b"),
        ("a,b ; [a,[a,b]]", "[a,b]"),
        (
            "a,b ; [a, [a,b] [([a,b]^-1 [a,b]^a), ([a,b]^-1 [a,b]^a)^b]]",
            "[a,b]^-1 [a,b]^a",
        ),
    ];
    for (pres, word) in cases {
        let p = Presentation::parse(pres).unwrap();
        let w = parse_word(word, p.generators()).unwrap().expand();
        print!(
            "{p}, w = {word}, abelianization {}: ",
            abelianization(&p).structure()
        );
        match separate(&p, &w, &catalog) {
            Some(s) => println!("separated in {} by {:?}", s.group_name, s.hom.images),
            None => println!("not separated"),
        }
    }
}
