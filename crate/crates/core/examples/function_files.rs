//! Reading and writing exact function tables, and running the batch
//! experiments programmatically.

use clap::Parser;
use vladimirov::experiment::{run, Cli};
use vladimirov::field::FieldParams;
use vladimirov::functions::{lizorkin_project, TestFunction};
use vladimirov::io::{function_to_json, parse_function_file, write_function_file};

fn main() -> vladimirov::Result<()> {
    let fp = FieldParams::new(3, 1)?;
    let phi = lizorkin_project(&TestFunction::indicator_ball(fp, 1), 0)?;
    print!("{}", function_to_json(&phi)?);

    let path = std::env::temp_dir().join("vladimirov_lizorkin_p3.json");
    write_function_file(&path, &phi)?;
    assert_eq!(parse_function_file(&path)?, phi);

    let path_arg = path.to_string_lossy().into_owned();
    let cli = Cli::parse_from(["vladimirov", "invert", "--alpha", "1/2", "--fn", &path_arg, "--nu-max", "2"]);
    let report = run(&cli)?;
    print!("{}", report.to_csv());
    Ok(())
}
