fn main() {
    riccati_lie::cli::main()
}
