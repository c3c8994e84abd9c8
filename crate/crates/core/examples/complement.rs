//! The ladder gap T − φ₁(T) against (1 − c)π(T).
//!
//! ```bash
//! cargo run --release -p zladder --example complement
//! ```

use zladder::experiments::complement_report;
use zladder::ladder::LadderModel;
use zladder::report::{render, Format};

fn main() -> zladder::Result<()> {
    let ts = [1e3, 1e4, 1e5, 1e6, 1e7];
    let rep = complement_report(&ts, &LadderModel::asymptotic())?;
    print!("{}", render(&rep, Format::Table)?);
    println!("gaps increasing: {}", rep.dispersal_increasing);
    Ok(())
}
