//! Moves a point with the group action and recovers the five vector fields
//! from one-parameter subgroups by finite differences.

use riccati_lie::PhasePoint;
use riccati_lie::liealg::{
    DEFAULT_FD_STEP, Direction, GroupElement, act, combination, compose_subgroup, fundamental_vf,
};

fn main() -> riccati_lie::Result<()> {
    let s = PhasePoint::new(0.7, -1.3);
    println!(
        "identity: {:?} -> {:?}",
        s,
        act(&GroupElement::identity(), s)?
    );

    let g1 = GroupElement::translation(0.2, 0.1);
    let g2 = GroupElement::translation(-0.4, 0.05);
    let joint = act(&compose_subgroup(&g1, &g2)?, s)?;
    let nested = act(&g1, act(&g2, s)?)?;
    println!("g1 g2 acting at once: {joint:?}\ng1 after g2:          {nested:?}\n");

    for dir in Direction::ALL {
        let fd = fundamental_vf(dir, s, DEFAULT_FD_STEP)?;
        let exact = combination(&dir.generator(), s)?;
        println!(
            "{:>8}: finite difference ({:+.8}, {:+.8})  generator ({:+.8}, {:+.8})",
            dir.to_string(),
            fd[0],
            fd[1],
            exact[0],
            exact[1]
        );
    }
    Ok(())
}
