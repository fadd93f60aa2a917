use std::io::Write;

fn main() {
    let (code, stdout, stderr) = omega_cli::run(std::env::args().collect());
    // a closed pipe downstream is not an error of ours
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(stdout.as_bytes());
    if !stdout.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
    let _ = out.flush();
    let _ = std::io::stderr().write_all(stderr.as_bytes());
    std::process::exit(code);
}
