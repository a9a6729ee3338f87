#include "symrec/commands.hpp"

int main(int argc, char** argv) { return symrec::cli::run_cli(argc, argv); }
