#include "steklov/cli.hpp"

int main(int argc, char** argv) { return steklov::cli::main_entry(argc, argv); }
