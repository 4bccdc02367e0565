//! Basic commutators on two generators and the `[s_k, y]` tower.

use orsolv::hall::{enumerate_basic, recognize_tower, tower_relator};
use orsolv::{Gen, Presentation};

fn main() {
    let names = vec!["x".to_string(), "y".to_string()];
    let basics = enumerate_basic(&[Gen(0), Gen(1)], 5);
    for w in 1..=5 {
        let shown: Vec<String> = basics
            .iter()
            .filter(|b| b.weight == w)
            .map(|b| b.tree.display(&names).to_string())
            .collect();
        println!("weight {w}: {}", shown.join("  "));
    }

    for k in 1..=4 {
        let r = tower_relator(Gen(0), Gen(1), k);
        let p = Presentation::from_word(names.clone(), &r).unwrap();
        let m = recognize_tower(&p).unwrap();
        println!(
            "k = {k}: |[s_k,y]| = {}, cyclic core {}, recognized k = {}",
            r.len(),
            r.cyclic_core().len(),
            m.k
        );
    }
}
