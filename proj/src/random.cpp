#include "kstab/random.hpp"

namespace kstab {

Rational random_rational(std::mt19937_64& rng, long max_num, long max_den) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  const long p = num(rng);
  return Rational(p, den(rng));
}

AffineFunction random_affine(std::size_t n, std::mt19937_64& rng) {
  AffineFunction f{Vec(n), random_rational(rng)};
  for (auto& g : f.gradient) g = random_rational(rng);
  return f;
}

PLFunction random_convex_pl(const Polytope& domain, std::mt19937_64& rng, int min_pieces, int max_pieces) {
  std::uniform_int_distribution<int> count(min_pieces, max_pieces);
  const int k = count(rng);
  std::vector<AffineFunction> pieces;
  for (int i = 0; i < k; ++i) pieces.push_back(random_affine(domain.dim(), rng));
  return make_pl(std::move(pieces), domain);
}

}  // namespace kstab
