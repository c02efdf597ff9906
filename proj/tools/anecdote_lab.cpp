#include "alab/cli/cli.hpp"

int main(int argc, char** argv) { return alab::cli::run_cli(argc, argv); }
