#include <iostream>

#include "qcanon/cli.hpp"

int main(int argc, char** argv) {
    return qcanon::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
