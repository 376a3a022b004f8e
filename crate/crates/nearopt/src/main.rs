fn main() {
    // Die quietly on a closed pipe (`nearopt ... | head`) like any other
    // command-line tool instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(nearopt::cli::run());
}
