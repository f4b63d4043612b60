#include "qsplab/rng.hpp"

#include <cstdlib>
#include <thread>

namespace qsplab {

unsigned worker_count() {
    if (const char* env = std::getenv("QSPLAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

}  // namespace qsplab
