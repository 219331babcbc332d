#include "posetk/cli.hpp"

int main(int argc, char** argv) { return posetk::cli_main(argc, argv); }
