#include <iostream>

#include "qweb/commands.hpp"

int main(int argc, char** argv) { return qweb::cli::run_cli(argc, argv, std::cout, std::cerr); }
