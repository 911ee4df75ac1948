#include "rose/lbfgs.hpp"

#include <stdexcept>
#include <vector>

namespace rose {

bool PairBuffer::maybe_store(Vector s, Vector y, double c_s) {
  const double rho = y.dot(s);
  if (!(rho > c_s * s.squaredNorm())) return false;
  if (capacity_ == 0) return true;
  if (pairs_.size() == capacity_) pairs_.pop_front();
  pairs_.push_back(UpdatePair{std::move(s), std::move(y), rho});
  return true;
}

Vector two_loop_direction(const Vector& g, const PairBuffer& pairs,
                          const SeedSolve& seed_solve) {
  const std::size_t m = pairs.size();
  if (m == 0) return -seed_solve(g);

  Vector q = g;
  std::vector<double> alpha(m);
  for (std::size_t i = m; i-- > 0;) {
    const UpdatePair& p = pairs[i];
    if (!(p.rho > 0.0)) {
      throw std::logic_error("two_loop_direction: stored pair has y's <= 0");
    }
    alpha[i] = p.s.dot(q) / p.rho;
    q -= alpha[i] * p.y;
  }

  Vector r = seed_solve(q);

  for (std::size_t i = 0; i < m; ++i) {
    const UpdatePair& p = pairs[i];
    const double beta = p.y.dot(r) / p.rho;
    r += (alpha[i] - beta) * p.s;
  }
  return -r;
}

}  // namespace rose
