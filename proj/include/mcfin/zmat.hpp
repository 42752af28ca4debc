// Fixed-width matrices for group enumeration: int64 power-basis numerators over one
// common denominator. Converts to and from Mat; overflow throws instead of wrapping.
#pragma once

#include "mcfin/exactla.hpp"

#include <cstdint>
#include <vector>

namespace mcfin {

class ZMat {
 public:
  ZMat() = default;
  static ZMat from(const Mat& m);
  static ZMat identity(const Field* f, int n);
  Mat to_mat() const;

  const Field* fld() const { return f_; }
  int dim() const { return n_; }
  int64_t den() const { return den_; }

  friend ZMat operator*(const ZMat& a, const ZMat& b);
  friend bool operator==(const ZMat& a, const ZMat& b) {
    return a.den_ == b.den_ && a.c_ == b.c_;
  }
  size_t hash() const { return hash_; }

  bool is_identity() const;
  // rank(g - I) == 1, all 2x2 minors of g - I vanish
  bool is_reflection() const;
  // trace as a Cyclo (cheap filter for callers)
  Cyclo trace() const;

 private:
  const Field* f_ = nullptr;
  int n_ = 0, d_ = 1;
  int64_t den_ = 1;
  std::vector<int64_t> c_;  // (i*n + j)*d + t
  size_t hash_ = 0;
  void normalize();
  void rehash();
  const int64_t* at(int i, int j) const { return &c_[((size_t)i * n_ + j) * d_]; }
};

struct ZMatHash {
  size_t operator()(const ZMat& m) const { return m.hash(); }
};

}  // namespace mcfin
