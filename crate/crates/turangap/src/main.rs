use turangap::cli::{main_with, THREADS_VAR};

fn main() {
    let threads = std::env::var(THREADS_VAR).ok();
    let code = main_with(std::env::args().collect(), threads.as_deref());
    std::process::exit(code);
}
