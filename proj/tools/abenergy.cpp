#include <iostream>
#include <string>
#include <vector>

#include "abenergy/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return abenergy::cli::run(args, std::cout, std::cerr);
}
