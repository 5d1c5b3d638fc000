//! Runs the three figure presets through the CLI entry point and prints a
//! few rows of each.

fn main() {
    for preset in ["fig1", "fig2", "fig3"] {
        let mut out = Vec::new();
        let code = l1gv::cli::run(["l1gv", "--preset", preset], &mut out);
        let text = String::from_utf8(out).unwrap();
        println!("--preset {preset}: exit {code}, {} rows", text.lines().count() - 1);
        for line in text.lines().step_by(40).take(6) {
            println!("  {line}");
        }
    }
}
