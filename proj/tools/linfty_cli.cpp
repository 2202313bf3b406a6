#include <iostream>
#include <string>
#include <vector>

#include "linfty/cli.hpp"

int main(int argc, char** argv) {
    return linfty::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
