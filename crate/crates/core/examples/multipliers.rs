//! Group and Lie multipliers acting on both sides, and the identities they satisfy.

use supercrossed::catalog;
use supercrossed::crossed::{alpha, mul_compose, mul_group, mul_lie, mul_lie_element, mul_star, xp_multiply};
use supercrossed::enveloping::UEElement;
use supercrossed::group::GroupPoint;

fn main() -> supercrossed::Result<()> {
    let ws = catalog::workspace().map_err(supercrossed::Error::Parse)?;
    let (pair, a) = ws.element("mixed")?;
    let (_, b) = ws.element("d-s-eps")?;
    let s = GroupPoint::finite(1, false);

    for (name, m) in [("lambda_s", mul_group(s)), ("lambda_x", mul_lie(0)), ("star(lambda_x)", mul_star(mul_lie(0)))] {
        let left = m.lam(&pair, &xp_multiply(&pair, a, b)?)? == xp_multiply(&pair, &m.lam(&pair, a)?, b)?;
        let middle = xp_multiply(&pair, a, &m.lam(&pair, b)?)? == xp_multiply(&pair, &m.rho(&pair, a)?, b)?;
        println!("{name:>15}: lambda(ab) = lambda(a)b {left}, a lambda(b) = rho(a)b {middle}");
    }

    let conj = mul_compose(mul_group(s), mul_compose(mul_lie(0), mul_group(s)));
    let adx = mul_lie_element(alpha(&pair, &s, &UEElement::generator(0)));
    println!("lambda_s lambda_x lambda_s^-1 = lambda_(Ad(s)x): {}", conj.lam(&pair, a)? == adx.lam(&pair, a)?);
    Ok(())
}
