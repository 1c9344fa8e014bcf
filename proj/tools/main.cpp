#include <iostream>

#include "tangles/cli.hpp"

int main(int argc, char** argv) {
    return tangles::run(argc, argv, std::cout, std::cerr);
}
