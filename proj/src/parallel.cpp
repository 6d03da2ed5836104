#include "limitkit/parallel.hpp"

namespace limitkit {

int max_threads() {
#ifdef LIMITKIT_USE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace limitkit
