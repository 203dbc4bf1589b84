#include <iostream>
#include <string>
#include <vector>

#include <pivotal/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pivotal::run_cli(std::move(args), std::cout, std::cerr);
}
