#include <iostream>

#include "gkp/cli.hpp"

int main(int argc, char** argv) {
    return gkp::cli::run(argc, argv, std::cout, std::cerr);
}
