#include <iostream>
#include <vector>

#include "glueback/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return glueback::run_cli(std::move(args), std::cout, std::cerr);
}
