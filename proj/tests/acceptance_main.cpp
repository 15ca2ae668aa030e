#include <iostream>
#include "nsv/acceptance.hpp"
int main() {
    nsv::acceptance::Options options;
    options.log = &std::cout;
    return nsv::acceptance::run_suite(options).all_pass() ? 0 : 1;
}
