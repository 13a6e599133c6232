// The invariant-theory route: list the ansatz terms allowed for a pair of
// form degrees, solve the linear constraints on their coefficients, and
// compare the result with the direct solver.

use equivar::classifier::{ansatz_terms, cross_validate, AnsatzOptions, AnsatzSystem, Cell, DirectOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for r in 0..3 {
        let ansatz = ansatz_terms(1, 1, r)?;
        let labels: Vec<String> = ansatz.terms.iter().map(|t| format!("{}^{}", t.family.label(), t.s)).collect();
        println!("p=1 q=1 r={r}: {}", labels.join(", "));
    }

    let cell = Cell::new(3, 1, 1, 1, 1)?;
    let system = AnsatzSystem::new(cell, cell.k + cell.l + 2)?;
    let kernel = system.kernel();
    let names: Vec<String> = system.unknowns.iter().map(|u| u.to_string()).collect();
    println!("unknowns: {}", names.join(" "));
    println!("{} constraints, solution space of dimension {}", system.matrix.to_dense().len(), kernel.dimension());

    let check = cross_validate(cell, &DirectOptions::default(), &AnsatzOptions::default())?;
    println!("direct dim {} / ansatz dim {} / agree {}", check.direct.dimension, check.ansatz.dimension, check.agree);
    assert!(check.agree);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example runs");
}
