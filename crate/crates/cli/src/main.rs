use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = antiramsey_cli::run(std::env::args_os(), &mut std::io::stdin().lock());
    print!("{}", result.output);
    let mut err = std::io::stderr().lock();
    for d in &result.diagnostics {
        let _ = writeln!(err, "{}", serde_json::to_string(d).expect("diagnostics serialise"));
    }
    let _ = std::io::stdout().flush();
    ExitCode::from(result.exit_code as u8)
}
