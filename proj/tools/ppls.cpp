#include "ppls/commands.hpp"

int main(int argc, char** argv) { return ppls::cli_main(argc, argv); }
