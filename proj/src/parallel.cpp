#include "mtsc/parallel.hpp"

#include <cstdlib>

namespace mtsc {

unsigned default_thread_count() {
    if (const char* env = std::getenv("MTSC_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

}  // namespace mtsc
