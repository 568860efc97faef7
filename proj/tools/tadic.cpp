#include "tadic/cli/commands.hpp"

int main(int argc, char** argv) { return tadic::cli::run(argc, argv); }
