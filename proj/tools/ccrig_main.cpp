#include <string>
#include <vector>

#include "ccrig/harness/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ccrig::cli_run(args);
}
