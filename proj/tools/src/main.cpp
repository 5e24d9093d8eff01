#include <iostream>

#include "flatrange_cli/app.hpp"

int main(int argc, char** argv) { return flatrange::cli::run(argc, argv, std::cout, std::cerr); }
