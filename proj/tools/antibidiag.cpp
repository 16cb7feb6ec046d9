#include <antibidiag/cli.hpp>

int main(int argc, char** argv) { return antibidiag::cli::main(argc, argv); }
