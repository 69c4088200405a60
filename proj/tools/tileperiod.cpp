#include <iostream>

#include "tileperiod/cli.hpp"

int main(int argc, char** argv) {
    return tileperiod::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
