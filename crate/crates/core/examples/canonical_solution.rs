//! Integrates `x'' + 3 x x' + x^3 = 0` in Hamiltonian form from `(x, p) = (0, -1/4)`
//! and compares with the closed-form solution `x = 2t/(1+t^2)`.

use riccati_lie::integrator::{Options, integrate_hamiltonian};
use riccati_lie::model::linspace;
use riccati_lie::{PhasePoint, PotentialSpec};

fn main() -> riccati_lie::Result<()> {
    let potential = PotentialSpec::constant(0.0, 0.0, 1.0);
    let traj = integrate_hamiltonian(
        &potential,
        0.0,
        PhasePoint::new(0.0, -0.25),
        2.0,
        &Options::default(),
    )?;
    println!("{:>5} {:>14} {:>14} {:>10}", "t", "x", "p", "|x - x*|");
    for t in linspace(0.0, 2.0, 11) {
        let [x, p] = traj.sample_at(t)?;
        let exact = 2.0 * t / (1.0 + t * t);
        println!("{t:5.2} {x:14.10} {p:14.10} {:10.2e}", (x - exact).abs());
    }
    println!(
        "{} accepted steps, {} rejected",
        traj.stats.accepted, traj.stats.rejected
    );
    Ok(())
}
