#include <iostream>
#include <string>
#include <vector>

#include "wmark/cli.hpp"

int main(int argc, char** argv) {
    return wmark::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
