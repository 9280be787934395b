// Drive the command line in process and read back its JSON.

use segre_secant::cli::{run, ThresholdsReport};

pub fn run_example() -> segre_secant::Result<()> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["svsec", "thresholds", "--json"], &mut out, &mut err);
    let table: ThresholdsReport = serde_json::from_slice(&out).expect("thresholds json");
    println!("exit {code}, {} rows, {}", table.rows.len(), table.large_r);

    out.clear();
    let code = run(
        ["svsec", "defect", "--factors", "2", "--degrees", "4"],
        &mut out,
        &mut err,
    );
    println!("exit {code}\n{}", String::from_utf8_lossy(&out));
    Ok(())
}

fn main() {
    run_example().expect("command line example");
}
