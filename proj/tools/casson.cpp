#include <iostream>

#include "casson/cli.hpp"

int main(int argc, char** argv) { return casson::cli::run(argc, argv, std::cout, std::cerr); }
