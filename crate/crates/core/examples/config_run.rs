//! Drive the command-line pipeline from an in-memory configuration.

use anomex::cli::{run, Command};
use anomex::config::parse_config;

fn main() -> anomex::Result<()> {
    let dir = std::env::temp_dir().join("anomex_config_run");
    let doc = format!(
        "operator = \"pucci- lambda=1 Lambda=2\"\nn = 2\noutput_dir = {:?}\n[grid]\nR_max = 12\nN = 300\n",
        dir.display().to_string()
    );
    let config = parse_config(&doc)?;
    print!("{}", config.to_toml());
    println!("hash {}", config.hash());
    run(Command::Exponent, &config, &mut std::io::stdout())?;
    run(Command::Profile, &config, &mut std::io::stdout())?;
    Ok(())
}
