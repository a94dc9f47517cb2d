#include "logdef/cli.hpp"

int main(int argc, char** argv) { return logdef::run_cli(argc, argv); }
