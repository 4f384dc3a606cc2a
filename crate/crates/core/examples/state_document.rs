//! Writes a state as a text document and reads it back.

use supergrass::cli::{parse_expr, parse_state, serialize_state, StateDocument};
use supergrass::{FockSpace, Result, Sector, SuperState};

fn main() -> Result<()> {
    let space = FockSpace::new(3, 4, 1)?;
    let psi = SuperState::from_coefficients(
        space,
        [
            (0, Sector::Minus, parse_expr("1 + 0.5*e1*e2", 3)?),
            (1, Sector::Plus, parse_expr("0.25i*e3", 3)?),
        ],
    )?;
    let text = serialize_state(&psi).to_text();
    println!("{text}");
    let back = parse_state(&StateDocument::from_text(&text)?)?;
    println!("round trip difference {}", back.sub(&psi).max_abs());
    Ok(())
}
