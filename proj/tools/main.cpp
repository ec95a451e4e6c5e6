#include <string>
#include <vector>

#include "mpenergy/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mpenergy::run_cli(args);
}
