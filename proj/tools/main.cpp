#include "lpfourier/cli.hpp"

int main(int argc, char** argv) { return lpf::cli_main(argc, argv); }
