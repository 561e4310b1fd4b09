fn main() {
    // restore default SIGPIPE handling so piping into `head` exits quietly
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(powsum::cli::run());
}
