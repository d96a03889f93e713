#include <iostream>

#include "beliefrev/cli.hpp"

int main(int argc, char** argv) {
    return beliefrev::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
