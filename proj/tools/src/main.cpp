#include <iostream>

#include "mixmoran/cli.hpp"

int main(int argc, char** argv) {
    return mixmoran::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
