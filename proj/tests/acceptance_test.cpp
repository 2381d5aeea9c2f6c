#include <cstdio>

#include "bpskit/selftest.hpp"

int main() {
    int failed = 0;
    for (const auto& r : bpskit::run_selftest()) {
        std::puts(bpskit::format_result(r).c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
