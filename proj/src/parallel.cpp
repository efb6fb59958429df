#include "gridsde/parallel.hpp"

#include <cstdlib>

namespace gridsde::mc {

namespace {
int g_override = 0;
}

int worker_count() {
    if (g_override > 0) return g_override;
    if (const char* env = std::getenv("GRIDSDE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return omp_get_max_threads();
}

void set_worker_count(int workers) { g_override = workers; }

}  // namespace gridsde::mc
