#include <iostream>
#include <string>
#include <vector>

#include "primeperiod/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return primeperiod::cli::run(args, std::cout, std::cerr);
}
