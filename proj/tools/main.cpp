#include <iostream>

#include "nil2kit/cli.hpp"

int main(int argc, char** argv) {
    return nil2kit::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
