#include "cli.hpp"

int main(int argc, char** argv) { return pacdyn::cli::main_entry(argc, argv); }
