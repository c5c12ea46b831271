#include "cmgaps/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cmgaps {

unsigned thread_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("CMGAPS_THREADS")) {
        try {
            long cap = std::stol(env);
            if (cap >= 1 && static_cast<unsigned long>(cap) < n) n = static_cast<unsigned>(cap);
        } catch (const std::exception&) {
            // unparsable value: ignore the cap
        }
    }
    return n;
}

}  // namespace cmgaps
