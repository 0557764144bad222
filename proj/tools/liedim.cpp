#include "liedim/cli.hpp"

int main(int argc, char** argv) { return liedim::cli::run(argc, argv); }
