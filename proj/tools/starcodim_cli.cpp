#include <iostream>
#include <vector>

#include "starcodim/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return starcodim::run_cli(args, std::cout, std::cerr);
}
