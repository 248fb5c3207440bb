use std::io::Write;

fn main() {
    let (code, output) = gll_cli::run(std::env::args_os());
    if code == 0 || !output.starts_with("error:") {
        print!("{output}");
    } else {
        let _ = write!(std::io::stderr(), "{output}");
    }
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
