#include "segal/cli.hpp"

int main(int argc, char** argv) { return segal::run_cli(argc, argv); }
