//! Prints the brackets of the five vector fields and checks them against
//! the structure constants at a few points of the half-plane `p < 0`.

use riccati_lie::PhasePoint;
use riccati_lie::liealg::{
    StructureConstants, VectorFieldId, check_commutation_table, levi_structure_check,
};

fn main() -> riccati_lie::Result<()> {
    let table = StructureConstants::standard();
    for (i, &a) in VectorFieldId::ALL.iter().enumerate() {
        for &b in &VectorFieldId::ALL[i + 1..] {
            let terms: Vec<String> = VectorFieldId::ALL
                .iter()
                .zip(table.get(a, b))
                .filter(|(_, c)| *c != 0.0)
                .map(|(id, c)| format!("{c} {id}"))
                .collect();
            let rhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            };
            println!("[{a}, {b}] = {rhs}");
        }
    }

    let points = [
        PhasePoint::new(0.0, -1.0),
        PhasePoint::new(1.5, -0.3),
        PhasePoint::new(-2.0, -3.7),
    ];
    println!(
        "\nmax residual at sample points: {:.2e}",
        check_commutation_table(&points)?
    );
    for a in levi_structure_check().assertions {
        println!("{} {}", if a.passed { "ok  " } else { "FAIL" }, a.name);
    }
    Ok(())
}
