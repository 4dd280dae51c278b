#include <iostream>
#include <string>
#include <vector>

#include "lw/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lw::cli::run_cli(args, std::cin, std::cout, std::cerr);
}
