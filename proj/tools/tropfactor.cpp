#include <iostream>
#include <string>
#include <vector>

#include "tropfactor/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tropfactor::cli::run(args, std::cout, std::cerr, std::cin);
}
