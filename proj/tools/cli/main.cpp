#include <iostream>
#include <string>
#include <vector>

#include "claimdecomp_cli/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return claimdecomp::cli::run(args, std::cout, std::cerr);
}
