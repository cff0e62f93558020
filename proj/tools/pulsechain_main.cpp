#include "pulsechain/cli.hpp"

int main(int argc, char** argv) { return pulsechain::cli::main_entry(argc, argv); }
