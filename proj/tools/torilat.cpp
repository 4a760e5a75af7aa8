#include "torilat/cli.hpp"

int main(int argc, char** argv) { return torilat::cli::run(argc, argv); }
