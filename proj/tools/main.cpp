#include <iostream>

#include "cli.h"

int main(int argc, char** argv) {
    return origin::cli::main(argc, argv, std::cin, std::cout, std::cerr);
}
