#include "qplab/cli.hpp"

int main(int argc, char** argv) { return qplab::cli::main_entry(argc, argv); }
