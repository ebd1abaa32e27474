#include "wm/cli.hpp"

int main(int argc, char** argv) { return wm::run_cli_main(argc, argv); }
