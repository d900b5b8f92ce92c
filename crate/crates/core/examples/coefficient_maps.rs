//! Maps a time-dependent potential to Riccati coefficients and back.

use riccati_lie::model::linspace;
use riccati_lie::{PotentialSpec, TimeFn};

fn main() -> riccati_lie::Result<()> {
    let a0: TimeFn = "poly 0.2 -0.1; sin 0.3 1.5 0".parse()?;
    let a1: TimeFn = "cos 0.5 2 0".parse()?;
    let a2: TimeFn = "poly 1 0.1".parse()?;
    println!("a0 = {a0}\na1 = {a1}\na2 = {a2}\n");

    let grid = linspace(0.0, 1.0, 6);
    let potential = PotentialSpec::new(a0, a1, a2);
    let riccati = potential.to_riccati(&grid)?;
    println!(
        "{:>4} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "t", "c0", "c1", "c2", "c3", "f0", "f1"
    );
    for &t in &grid {
        let v = riccati.values(t);
        println!(
            "{t:4.1} {:10.6} {:10.6} {:10.6} {:10.6} {:10.6} {:10.6}",
            v.c[0], v.c[1], v.c[2], v.c[3], v.f0, v.f1
        );
    }

    let (back, defect) = riccati.to_potential(&grid)?;
    let worst = grid
        .iter()
        .flat_map(|&t| {
            let (a, b) = (potential.coefficients(t), back.coefficients(t));
            (0..3).map(move |i| (a[i] - b[i]).abs())
        })
        .fold(0.0, f64::max);
    println!("\nroundtrip error {worst:.2e}, c0 consistency defect {defect:.2e}");
    Ok(())
}
