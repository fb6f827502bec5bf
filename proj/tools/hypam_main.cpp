#include "hypam/cli.hpp"

int main(int argc, char** argv) { return hypam::cli_main(argc, argv); }
