#include "swarmorbit/cli.hpp"

int main(int argc, char** argv) { return swarmorbit::cli_main(argc, argv); }
