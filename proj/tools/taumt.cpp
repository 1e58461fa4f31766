#include "taumt/cli.hpp"

int main(int argc, char** argv) { return taumt::cli::run(argc, argv); }
