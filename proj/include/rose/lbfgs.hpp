#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <limits>

#include "rose/operators.hpp"

namespace rose {

inline constexpr std::size_t kUnlimitedMemory =
    std::numeric_limits<std::size_t>::max();

// One stored correction. rho = y's is cached at admission and reused by the
// recursion.
struct UpdatePair {
  Vector s;
  Vector y;
  double rho = 0.0;
};

// Ring of at most `capacity` correction pairs, oldest first.
class PairBuffer {
 public:
  explicit PairBuffer(std::size_t capacity) : capacity_(capacity) {}

  // Cautious admission: the pair is appended iff y's > c_s |s|^2. Appending
  // to a full buffer evicts the oldest pair. A capacity of zero stores
  // nothing.
  bool maybe_store(Vector s, Vector y, double c_s);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const UpdatePair& operator[](std::size_t i) const { return pairs_[i]; }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }
  void clear() { pairs_.clear(); }

 private:
  std::size_t capacity_;
  std::deque<UpdatePair> pairs_;
};

// Applies (B_0)^{-1}, exactly or approximately.
using SeedSolve = std::function<Vector(const Vector&)>;

// d = -H g, where H is the inverse of the BFGS recursion
//
//   B^{(j+1)} = B^{(j)} + y y' / (y's) - B^{(j)} s s' B^{(j)} / (s' B^{(j)} s)
//
// applied to the seed over the stored pairs, oldest to newest. The seed
// enters only through seed_solve. With an empty buffer d = -seed_solve(g).
//
// Throws std::logic_error if a stored pair has rho <= 0.
Vector two_loop_direction(const Vector& g, const PairBuffer& pairs,
                          const SeedSolve& seed_solve);

}  // namespace rose
