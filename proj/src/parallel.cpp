#include "sharpwt/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sharpwt {

namespace {
int default_threads() {
  static const int n = omp_get_num_procs();
  return n;
}
}  // namespace

int configure_threads(int requested) {
  if (requested < 0) throw std::invalid_argument("thread count must be >= 0");
  omp_set_num_threads(requested == 0 ? default_threads() : requested);
  return thread_count();
}

int configure_threads() {
  const char* env = std::getenv("SHARPWT_THREADS");
  if (!env || !*env) return configure_threads(0);
  std::size_t pos = 0;
  const int n = std::stoi(env, &pos);
  if (pos != std::string(env).size()) throw std::invalid_argument("SHARPWT_THREADS must be an integer");
  return configure_threads(n);
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace sharpwt
