#include "tlasso/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tlasso::cli::run(args, std::cerr);
}
