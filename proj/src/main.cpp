#include <iostream>

#include "gpsq/cli.hpp"

int main(int argc, char** argv) {
    return gpsq::cli_main(argc, argv, std::cout, std::cerr);
}
