#include "mcfin/zmat.hpp"

#include <numeric>

namespace mcfin {

namespace {

using i128 = __int128;

int64_t narrow(i128 v) {
  if (v > (i128)INT64_MAX || v < (i128)INT64_MIN) throw Error("ZMat coefficient overflow");
  return (int64_t)v;
}

int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Error("ZMat coefficient overflow");
  return z.get_si();
}

// poly product of two length-d vectors, reduced mod Phi into out (accumulating)
void mul_acc(const Field* f, int d, const int64_t* a, const int64_t* b, i128* tmp, i128* out) {
  bool az = true, bz = true;
  for (int i = 0; i < d; ++i) {
    if (a[i]) az = false;
    if (b[i]) bz = false;
  }
  if (az || bz) return;
  if (d == 1) {
    out[0] += (i128)a[0] * b[0];
    return;
  }
  for (int i = 0; i < 2 * d - 1; ++i) tmp[i] = 0;
  for (int i = 0; i < d; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < d; ++j)
      if (b[j]) tmp[i + j] += (i128)a[i] * b[j];
  }
  for (int j = 2 * d - 2; j >= d; --j) {
    if (!tmp[j]) continue;
    const auto& r = f->red[j - d];
    for (int i = 0; i < d; ++i)
      if (r[i]) tmp[i] += tmp[j] * r[i];
  }
  for (int i = 0; i < d; ++i) out[i] += tmp[i];
}

}  // namespace

ZMat ZMat::from(const Mat& m) {
  if (!m.square()) throw Error("ZMat needs a square matrix");
  ZMat z;
  z.f_ = m.fld();
  z.n_ = m.dim();
  z.d_ = z.f_->deg;
  mpz_class D = 1;
  for (auto& e : m.entries()) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), e.den().get_mpz_t());
  z.den_ = to_i64(D);
  z.c_.assign((size_t)z.n_ * z.n_ * z.d_, 0);
  for (int i = 0; i < z.n_; ++i)
    for (int j = 0; j < z.n_; ++j) {
      const Cyclo& e = m(i, j);
      mpz_class s = D / e.den();
      for (int t = 0; t < z.d_; ++t) z.c_[((size_t)i * z.n_ + j) * z.d_ + t] = to_i64(e.nums()[t] * s);
    }
  z.normalize();
  return z;
}

ZMat ZMat::identity(const Field* f, int n) { return from(Mat::identity(f, n)); }

Mat ZMat::to_mat() const {
  Mat m(f_, n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      std::vector<mpq_class> q(d_);
      const int64_t* p = at(i, j);
      for (int t = 0; t < d_; ++t) q[t] = mpq_class(mpz_class((long)p[t]), mpz_class((long)den_));
      for (auto& x : q) x.canonicalize();
      m.set(i, j, Cyclo(f_, std::move(q)));
    }
  return m;
}

void ZMat::normalize() {
  int64_t g = den_;
  for (auto v : c_) {
    if (g == 1) break;
    if (v) g = std::gcd(g, v < 0 ? -v : v);
  }
  if (g > 1) {
    den_ /= g;
    for (auto& v : c_) v /= g;
  }
  rehash();
}

void ZMat::rehash() {
  uint64_t h = 1469598103934665603ull ^ (uint64_t)den_;
  for (auto v : c_) {
    h ^= (uint64_t)v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  hash_ = (size_t)h;
}

ZMat operator*(const ZMat& a, const ZMat& b) {
  if (a.f_ != b.f_ || a.n_ != b.n_) throw Error("ZMat shape or field mismatch");
  int n = a.n_, d = a.d_;
  ZMat r;
  r.f_ = a.f_;
  r.n_ = n;
  r.d_ = d;
  r.den_ = narrow((i128)a.den_ * b.den_);
  r.c_.assign((size_t)n * n * d, 0);
  std::vector<i128> tmp(2 * d), acc(d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::fill(acc.begin(), acc.end(), 0);
      for (int k = 0; k < n; ++k) mul_acc(a.f_, d, a.at(i, k), b.at(k, j), tmp.data(), acc.data());
      for (int t = 0; t < d; ++t) r.c_[((size_t)i * n + j) * d + t] = narrow(acc[t]);
    }
  r.normalize();
  return r;
}

bool ZMat::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      const int64_t* p = at(i, j);
      for (int t = 0; t < d_; ++t) {
        int64_t want = (i == j && t == 0) ? den_ : 0;
        if (p[t] != want) return false;
      }
    }
  return true;
}

bool ZMat::is_reflection() const {
  int n = n_, d = d_;
  // g - I, numerators over den_
  std::vector<int64_t> m = c_;
  for (int i = 0; i < n; ++i) m[((size_t)i * n + i) * d] -= den_;
  auto e = [&](int i, int j) { return &m[((size_t)i * n + j) * d]; };
  bool nonzero = false;
  for (auto v : m)
    if (v) {
      nonzero = true;
      break;
    }
  if (!nonzero) return false;
  std::vector<i128> tmp(2 * d), p(d), q(d);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = j + 1; l < n; ++l) {
          std::fill(p.begin(), p.end(), 0);
          std::fill(q.begin(), q.end(), 0);
          mul_acc(f_, d, e(i, j), e(k, l), tmp.data(), p.data());
          mul_acc(f_, d, e(i, l), e(k, j), tmp.data(), q.data());
          for (int t = 0; t < d; ++t)
            if (p[t] != q[t]) return false;
        }
  return true;
}

Cyclo ZMat::trace() const {
  std::vector<mpq_class> q(d_);
  for (int i = 0; i < n_; ++i) {
    const int64_t* p = at(i, i);
    for (int t = 0; t < d_; ++t) q[t] += mpq_class((long)p[t]);
  }
  for (auto& x : q) {
    x /= mpq_class((long)den_);
    x.canonicalize();
  }
  return Cyclo(f_, std::move(q));
}

}  // namespace mcfin
