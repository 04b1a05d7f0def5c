#include "sphlab/lab/rng.hpp"

namespace sphlab::lab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Matrix random_hermitian(Rng& rng, int n) {
  Matrix x(n, n);
  for (int i = 0; i < n; ++i) {
    x(i, i) = rng.uniform(-1.0, 1.0);
    for (int j = i + 1; j < n; ++j) {
      const Complex v{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      x(i, j) = v;
      x(j, i) = std::conj(v);
    }
  }
  return x;
}

}  // namespace sphlab::lab
