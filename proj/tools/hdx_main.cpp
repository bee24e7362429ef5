#include <iostream>
#include <string>
#include <vector>

#include "hdx/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return hdx::runCli(args, std::cout, std::cerr);
}
