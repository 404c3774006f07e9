#include "cli.hpp"

int main(int argc, char** argv) { return satotate::cli::run_cli(argc, argv); }
