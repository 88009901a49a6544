#include <iostream>

#include "qshadow/cli.hpp"

int main(int argc, char** argv) {
    return qshadow::run_cli(argc, argv, std::cout, std::cerr);
}
