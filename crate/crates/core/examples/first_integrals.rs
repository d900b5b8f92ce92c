//! Integrates four copies of the Hamiltonian system together and tracks the
//! three first integrals along the flow.

use riccati_lie::cli::verify::integral_drift;
use riccati_lie::integrator::{Options, integrate_prolonged};
use riccati_lie::superpose::{integral_f0, integral_f1, integral_f2};
use riccati_lie::{PhasePoint, PotentialSpec, TimeFn};

fn main() -> riccati_lie::Result<()> {
    let potential = PotentialSpec::new(
        TimeFn::cos(0.2, 2.0, 0.0),
        TimeFn::poly(vec![0.1, -0.2]),
        TimeFn::poly(vec![1.0, 0.1]),
    );
    let ics = [
        PhasePoint::new(0.1, -0.6),
        PhasePoint::new(0.0, -0.25),
        PhasePoint::new(0.5, -1.0),
        PhasePoint::new(-0.3, -2.0),
    ];
    let opts = Options::default();
    let traj = integrate_prolonged::<8>(&potential, 0.0, &ics, 2.0, &opts)?;
    println!("{:>4} {:>16} {:>16} {:>16}", "t", "F0", "F1", "F2");
    for t in [0.0, 0.5, 1.0, 1.5, 2.0] {
        let s = traj.sample_at(t)?;
        let xi: [PhasePoint; 4] = std::array::from_fn(|c| PhasePoint::new(s[2 * c], s[2 * c + 1]));
        println!(
            "{t:4.1} {:16.12} {:16.12} {:16.12}",
            integral_f0(xi[1], xi[2], xi[3])?,
            integral_f1(xi[0], xi[1], xi[2])?,
            integral_f2(xi[0], xi[1], xi[3])?
        );
    }
    let drift = integral_drift(&potential, 0.0, 2.0, &ics, &opts)?;
    println!(
        "scaled drift: F0 {:.2e}, F1 {:.2e}, F2 {:.2e}",
        drift[0], drift[1], drift[2]
    );
    Ok(())
}
