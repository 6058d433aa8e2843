fn main() {
    std::process::exit(graphene_cp::cli::main_with_args(std::env::args_os()));
}
