fn main() {
    // Subcommands land here once the library surface is complete.
    eprintln!("lceq: not yet wired up");
    std::process::exit(2);
}
