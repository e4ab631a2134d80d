//! One line per acceptance criterion; exits nonzero if any fails.

fn main() {
    let reports = troplanar::verify::run_all();
    for r in &reports {
        println!("{}", r.line());
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    println!("{} of {} criteria pass", reports.len() - failed, reports.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
