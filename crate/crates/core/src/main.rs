fn main() {
    std::process::exit(lcd_eaqecc::cli::main());
}
