#include "assassin/parallel.hpp"

#include <cstdlib>
#include <string>

namespace assassin {

int resolve_thread_count() {
#ifdef _OPENMP
    if (const char* env = std::getenv("ASSASSIN_SIM_THREADS")) {
        try {
            const int requested = std::stoi(env);
            if (requested > 0) return requested;
        } catch (...) {
            // fall through to the OpenMP default on unparsable values
        }
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace assassin
