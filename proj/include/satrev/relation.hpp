#pragma once

#include <cstddef>

#include "satrev/bitset.hpp"

namespace satrev {

// Extensional binary relation over the bounded model space, pair (i,j)
// meaning model_i ⪯ model_j. The strict part is derived, never stored.
class ModelRelation {
 public:
  ModelRelation() = default;
  explicit ModelRelation(std::size_t models) : n_(models), pairs_(models * models) {}

  std::size_t models() const { return n_; }

  bool leq(std::size_t i, std::size_t j) const { return pairs_.test(i * n_ + j); }
  void set(std::size_t i, std::size_t j, bool v = true) { pairs_.set(i * n_ + j, v); }
  bool strict(std::size_t i, std::size_t j) const { return leq(i, j) && !leq(j, i); }

  ModelRelation united(const ModelRelation& o) const {
    ModelRelation out = *this;
    out.pairs_ |= o.pairs_;
    return out;
  }
  ModelRelation intersected(const ModelRelation& o) const {
    ModelRelation out = *this;
    out.pairs_ &= o.pairs_;
    return out;
  }

  bool operator==(const ModelRelation& o) const { return n_ == o.n_ && pairs_ == o.pairs_; }

 private:
  std::size_t n_ = 0;
  Bitset pairs_;
};

// Min(M, ⪯) = members of M with no strictly smaller member of M.
inline Bitset min_models(const Bitset& m, const ModelRelation& rel) {
  Bitset out(m.size());
  m.for_each_set([&](std::size_t i) {
    bool minimal = true;
    m.for_each_set([&](std::size_t j) {
      if (minimal && rel.strict(j, i)) minimal = false;
    });
    if (minimal) out.set(i);
  });
  return out;
}

}  // namespace satrev
