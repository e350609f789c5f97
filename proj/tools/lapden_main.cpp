#include <iostream>
#include <string>
#include <vector>

#include "lapden/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return lapden::cli::run(args, std::cout, std::cerr);
}
