#include <iostream>
#include <string>
#include <vector>

#include "ods/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return static_cast<int>(ods::run_cli(args, std::cout, std::cerr));
}
