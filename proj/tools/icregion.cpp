#include "icr/cli.hpp"

int main(int argc, char** argv) { return icr::cli::run(argc, argv); }
