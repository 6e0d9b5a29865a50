#include <iostream>
#include <string>
#include <vector>

#include "nupn/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nupn::cli::run(args, std::cout, std::cerr);
}
