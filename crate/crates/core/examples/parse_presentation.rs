//! Parsing presentations and the Freiheitssatz report.

use orsolv::presentation::freiheitssatz_report;
use orsolv::Presentation;

fn main() {
    for text in [
        "a,b ; [a,[a,b]]",
        "<x, y | x^2 y^-3>",
        "a,b,c ; [a,b]^c a^2",
        "a,b ; abab",
        "a,b ; [a,b",
        "a,b ; a c",
    ] {
        match Presentation::parse(text) {
            Ok(p) => {
                println!("{text:<24} -> {p}");
                println!("{:<24}    reduced relator: {}", "", p.show(p.relator()));
                if let Ok(f) = freiheitssatz_report(&p) {
                    let bases: Vec<Vec<&str>> = f
                        .maximal_free_bases
                        .iter()
                        .map(|b| b.iter().map(|g| p.generators()[g.0].as_str()).collect())
                        .collect();
                    println!("{:<24}    free subsets: {bases:?}", "");
                }
            }
            Err(e) => println!("{text:<24} -> error: {e}"),
        }
    }
}
