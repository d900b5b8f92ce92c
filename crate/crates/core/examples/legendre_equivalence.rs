//! Solves the same motion twice, as a second-order equation in `(x, v)` and
//! as Hamilton equations in `(x, p)`, linked by the Legendre map.

use riccati_lie::integrator::{Options, integrate_hamiltonian, integrate_riccati2};
use riccati_lie::model::linspace;
use riccati_lie::{LagrangianPoint, PotentialSpec, TimeFn};

fn main() -> riccati_lie::Result<()> {
    let potential = PotentialSpec::new(
        TimeFn::sin(0.4, 1.0, 0.0),
        TimeFn::poly(vec![0.0, 0.5]),
        TimeFn::poly(vec![1.2]),
    );
    let grid = linspace(0.0, 1.0, 11);
    let riccati = potential.to_riccati(&grid)?;
    let opts = Options::default();

    let start = LagrangianPoint::new(0.3, 0.8);
    let phase = potential.legendre_forward(0.0, start)?;
    println!(
        "(x, v) = ({}, {}) maps to (x, p) = ({}, {:.6})",
        start.x, start.v, phase.x, phase.p
    );

    let lag = integrate_riccati2(&riccati, 0.0, start, 1.0, &opts)?;
    let ham = integrate_hamiltonian(&potential, 0.0, phase, 1.0, &opts)?;
    println!(
        "{:>4} {:>14} {:>14} {:>10}",
        "t", "x (Riccati)", "x (Hamilton)", "diff"
    );
    for &t in &grid {
        let (xl, xh) = (lag.sample_at(t)?[0], ham.sample_at(t)?[0]);
        println!("{t:4.1} {xl:14.10} {xh:14.10} {:10.2e}", (xl - xh).abs());
    }
    Ok(())
}
