#include "lcurve/cli.hpp"

int main(int argc, char** argv) { return lcurve::cli_main(argc, argv); }
