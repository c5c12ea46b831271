#include "cmgaps/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return cmgaps::cli::main(argc, argv, std::cout, std::cerr);
}
