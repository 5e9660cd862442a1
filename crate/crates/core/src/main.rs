use std::env;

fn main() {
    // BOLTZSPECT_THREADS caps worker parallelism (default: hardware count)
    if let Ok(threads) = env::var("BOLTZSPECT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
    let code = boltzspect::cli::run(env::args_os());
    std::process::exit(code);
}
