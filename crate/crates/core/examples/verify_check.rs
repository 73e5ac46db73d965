fn main() {
    let t0 = std::time::Instant::now();
    let rep = invosc::diagnostics::run_suite(invosc::diagnostics::Suite::All, None);
    for c in &rep.checks {
        println!("{} {:10.3e} vs {:9.1e}  {}", if c.pass {"PASS"} else {"FAIL"}, c.max_residual, c.tol, c.name);
    }
    println!("overall: {} in {:?}", rep.pass, t0.elapsed());
}
