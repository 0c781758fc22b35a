#include <iostream>
#include <vector>

#include "sepmod/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sepmod::cli::run(args, std::cout, std::cerr);
}
