#include <iostream>

#include "veerpoly/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return veerpoly::run_cli(args, std::cout, std::cerr);
}
