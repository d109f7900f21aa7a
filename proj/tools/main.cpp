#include "sbp/cli.hpp"

int main(int argc, char** argv) { return sbp::cli::main(argc, argv); }
