#include <iostream>
#include <string>
#include <vector>

#include "deploy/cli.h"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return deploy::runCli(args, std::cout, std::cerr);
}
