#include "eivarx/cli.hpp"

int main(int argc, char** argv) { return eivarx::cli::run(argc, argv); }
