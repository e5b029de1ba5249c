#include "cli.hpp"

int main(int argc, char** argv) { return alcove::cli_main(argc, argv); }
