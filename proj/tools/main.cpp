#include <iostream>
#include <string>
#include <vector>

#include <powertuple/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return powertuple::cli::run(args, std::cout, std::cerr);
}
