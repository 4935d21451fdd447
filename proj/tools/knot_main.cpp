#include "knot/cli.hpp"

int main(int argc, char** argv) { return knot::cli::main(argc, argv); }
