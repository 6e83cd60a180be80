#include "compacton/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "compacton/error.hpp"

namespace compacton {

int configure_threads() {
  if (const char* env = std::getenv("COMPACTON_LAB_THREADS"); env && *env) {
    int n = 0;
    try {
      n = std::stoi(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("COMPACTON_LAB_THREADS must be a positive integer, got '") +
                        env + "'");
    }
    if (n < 1) throw ConfigError("COMPACTON_LAB_THREADS must be a positive integer");
    set_threads(n);
  }
  return max_threads();
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads([[maybe_unused]] int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#endif
}

}  // namespace compacton
