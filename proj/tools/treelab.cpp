#include "cli/commands.hpp"

int main(int argc, char** argv) { return treelab::cli::run_cli(argc, argv); }
