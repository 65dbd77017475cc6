#include "rpspec/cli.hpp"

int main(int argc, char** argv) { return rpspec::cli_main(argc, argv); }
