#include "allpass/cli.hpp"

int main(int argc, char** argv) { return allpass::cli::main(argc, argv); }
