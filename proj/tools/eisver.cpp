#include "eisver/cli.hpp"

int main(int argc, char** argv) { return eisver::run_cli(argc, argv); }
