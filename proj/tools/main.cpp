#include "hq/cli.hpp"

int main(int argc, char** argv) { return hq::run_cli(argc, argv); }
