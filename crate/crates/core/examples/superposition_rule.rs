//! Rebuilds a fourth solution from three particular solutions and two
//! constants, and compares it with direct integration.

use riccati_lie::integrator::{Options, integrate_hamiltonian};
use riccati_lie::model::linspace;
use riccati_lie::superpose::{Genericity, PhaseTuple, constants_from_four, superpose_trajectory};
use riccati_lie::{PhasePoint, PotentialSpec};

fn main() -> riccati_lie::Result<()> {
    let potential = PotentialSpec::constant(0.0, 0.0, 1.0);
    let opts = Options::default();
    let particular = [
        PhasePoint::new(0.0, -0.25),
        PhasePoint::new(0.5, -1.0),
        PhasePoint::new(-0.3, -2.0),
    ];
    let target = PhasePoint::new(0.2, -0.6);

    let [t1, t2, t3] = particular.map(|ic| integrate_hamiltonian(&potential, 0.0, ic, 1.0, &opts));
    let (t1, t2, t3) = (t1?, t2?, t3?);
    let k = constants_from_four(&PhaseTuple::new(
        target,
        particular[0],
        particular[1],
        particular[2],
    ))?;
    println!("k1 = {:.6}, k2 = {:.6}, F0 = {:.6}", k.k1, k.k2, k.f0);

    let grid = linspace(0.0, 1.0, 11);
    let rebuilt = superpose_trajectory(&t1, &t2, &t3, &k, &grid, &Genericity::default())?;
    let direct = integrate_hamiltonian(&potential, 0.0, target, 1.0, &opts)?;
    println!(
        "{:>4} {:>14} {:>14} {:>10}",
        "t", "x0 rebuilt", "x0 direct", "diff"
    );
    for (t, x) in rebuilt.upsilon() {
        let d = direct.sample_at(t)?[0];
        println!("{t:4.1} {x:14.10} {d:14.10} {:10.2e}", (x - d).abs());
    }
    Ok(())
}
