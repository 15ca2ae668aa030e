#include <string>
#include <vector>

#include "nsv/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nsv::cli::dispatch(args);
}
