#include "vsplit/log.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>

namespace vsplit {

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("VSPLIT_LOG");
        if (env == nullptr || *env == '\0' || std::strcmp(env, "0") == 0)
            return 0;
        if (std::strcmp(env, "debug") == 0 || std::strcmp(env, "2") == 0)
            return 2;
        return 1; // "info", "1", or anything else non-empty
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1)
        std::cerr << "[vsplit] " << msg << '\n';
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2)
        std::cerr << "[vsplit] " << msg << '\n';
}

} // namespace vsplit
