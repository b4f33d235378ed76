#include "ysys/cli.hpp"

int main(int argc, char** argv) { return ysys::run_cli(argc, argv); }
