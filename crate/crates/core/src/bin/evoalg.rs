fn main() {
    std::process::exit(evoalg::cli::main_exit_code());
}
