#include "forage/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace forage {

void apply_thread_cap() {
#ifdef _OPENMP
  const char* env = std::getenv("FORAGE_THREADS");
  if (env == nullptr || *env == '\0') return;
  int n = 0;
  const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), n);
  if (ec != std::errc() || *ptr != '\0' || n < 1) return;
  omp_set_num_threads(n);
#endif
}

}  // namespace forage
