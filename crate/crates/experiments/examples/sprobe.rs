use gvlc_experiments::config::ExperimentConfig;
use gvlc_experiments::suites;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "all".into());
    let cfg = ExperimentConfig::default();
    if which == "kernel" || which == "all" {
        let t0 = std::time::Instant::now();
        let (rep, _) = suites::run_kernel_suite(42).unwrap();
        rep.print_console();
        eprintln!("kernel suite: {:?}", t0.elapsed());
    }
    if which == "bilinear" || which == "all" {
        let t0 = std::time::Instant::now();
        let (rep, _) = suites::run_bilinear_suite(42).unwrap();
        rep.print_console();
        eprintln!("bilinear suite: {:?}", t0.elapsed());
    }
    if which == "toolkit" || which == "all" {
        let t0 = std::time::Instant::now();
        let (rep, _) = suites::run_toolkit_suite(42).unwrap();
        rep.print_console();
        eprintln!("toolkit suite: {:?}", t0.elapsed());
    }
    if which == "gevrey" || which == "all" {
        let t0 = std::time::Instant::now();
        let run = suites::tracked_run(&cfg).unwrap();
        eprintln!("tracked run: {:?}", t0.elapsed());
        let (rep, series, _) = suites::run_gevrey_tracking(&cfg, &run).unwrap();
        rep.print_console();
        println!("--- series ---\n{}", series.to_csv());
        let (rep2, s2) = suites::run_decay_experiment(&cfg, &run).unwrap();
        rep2.print_console();
        println!("--- decay series ---\n{}", s2.to_csv());
        eprintln!("gevrey+decay: {:?}", t0.elapsed());
    }
    if which == "picard" || which == "all" {
        let t0 = std::time::Instant::now();
        let (rep, _) = suites::run_picard_contraction(&cfg).unwrap();
        rep.print_console();
        eprintln!("picard suite: {:?}", t0.elapsed());
    }
}
