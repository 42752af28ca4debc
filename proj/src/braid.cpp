#include "mcfin/braid.hpp"

#include "mcfin/refgroup.hpp"

#include <sstream>

namespace mcfin {

MatTuple braid_act(int i, const MatTuple& M) {
  int n = (int)M.size();
  if (i < 1 || i >= n) throw Error("braid generator index out of range");
  MatTuple r = M;
  const Mat& a = M[i - 1];
  const Mat& b = M[i];
  r[i - 1] = a * b * a.inverse();
  r[i] = a;
  return r;
}

MatTuple braid_act_inv(int i, const MatTuple& M) {
  int n = (int)M.size();
  if (i < 1 || i >= n) throw Error("braid generator index out of range");
  MatTuple r = M;
  const Mat& a = M[i - 1];
  const Mat& b = M[i];
  r[i - 1] = b;
  r[i] = b.inverse() * a * b;
  return r;
}

size_t Signature::hash() const {
  size_t h = c.size();
  for (auto& x : c) h ^= x.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::string Signature::str() const {
  std::string s;
  for (size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + c[i].str();
  return s;
}

Signature Signature::parse(const std::string& line) {
  Signature s;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) s.c.push_back(Cyclo::parse(tok));
  return s;
}

Signature signature(const MatTuple& M0) {
  if (M0.size() < 4) throw Error("signature needs at least 4 matrices");
  MatTuple M = unify(M0);
  const Field* f = M[0].fld();
  for (auto& m : M)
    if (m.dim() != 2) throw Error("signature needs 2x2 matrices");
  Mat P = M[0];
  for (size_t k = 1; k < M.size(); ++k) P = P * M[k];
  if (!P.is_identity()) throw Error("signature: product is not the identity");
  for (auto& m : M)
    if (!m.det().is_one()) throw Error("signature: matrix not in SL2");
  Signature s;
  int T = (int)M.size() - 1;
  // traces of ordered sub-products of M_1..M_T, by size then lexicographic
  for (int k = 1; k <= T; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      Mat Q = M[idx[0]];
      for (int i = 1; i < k; ++i) Q = Q * M[idx[i]];
      s.c.push_back(Q.trace());
      int i = k - 1;
      while (i >= 0 && idx[i] == T - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  // fields must agree for equality to mean anything
  for (auto& x : s.c)
    if (x.fld() != f) x = embed(x, f);
  return s;
}

bool Orbit::contains(const Signature& s) const { return set.count(s) > 0; }

Orbit orbit(const MatTuple& M0, size_t cap) {
  MatTuple M = unify(M0);
  Orbit o;
  Signature s0 = signature(M);
  o.reps.push_back(M);
  o.sigs.push_back(s0);
  o.set.insert(s0);
  int n = (int)M.size();
  for (size_t h = 0; h < o.reps.size(); ++h) {
    for (int i = 1; i < n; ++i) {
      MatTuple N = braid_act(i, o.reps[h]);
      Signature s = signature(N);
      if (o.set.count(s)) continue;
      if (o.sigs.size() >= cap) {
        o.complete = false;
        return o;
      }
      o.set.insert(s);
      o.sigs.push_back(std::move(s));
      o.reps.push_back(std::move(N));
    }
  }
  return o;
}

bool same_orbit(const Orbit& o, const MatTuple& N) {
  MatTuple U = unify(N);
  Signature s = signature(U);
  if (o.contains(s)) return true;
  // embed mismatch: compare in the orbit field when possible
  if (!o.sigs.empty() && o.sigs[0].c[0].fld() != s.c[0].fld()) {
    long L = lcml(o.sigs[0].c[0].fld()->n, s.c[0].fld()->n);
    const Field* f = field((int)L);
    Signature a;
    for (auto& x : s.c) a.c.push_back(embed(x, f));
    for (auto& t : o.sigs) {
      Signature b;
      for (auto& x : t.c) b.c.push_back(embed(x, f));
      if (a == b) return true;
    }
  }
  if (!o.complete) throw CapExceeded(o.size(), o.size());
  return false;
}

bool same_orbit(const MatTuple& M, const MatTuple& N, size_t cap) {
  if (M.size() != N.size()) throw Error("same_orbit: tuple lengths differ");
  return same_orbit(orbit(M, cap), N);
}

bool same_orbit_up_to_signs(const Orbit& o, const MatTuple& M) {
  int n = (int)M.size();
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(mask) % 2) continue;
    MatTuple v = M;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) v[i] = -v[i];
    try {
      if (same_orbit(o, v)) return true;
    } catch (const CapExceeded&) {
    }
  }
  return false;
}

std::vector<MatTuple> tykhyy_variants(const MatTuple& M0) {
  MatTuple M = unify(M0);
  std::vector<MatTuple> out;
  int n = (int)M.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      MatTuple v = M;
      v[i] = -v[i];
      v[j] = -v[j];
      out.push_back(v);
    }
  {
    MatTuple v;
    for (auto& m : M) v.push_back(m.galois(-1));
    out.push_back(v);
  }
  for (int k = 1; k < n; ++k) {
    MatTuple v;
    for (int t = 0; t < n; ++t) v.push_back(M[(t + k) % n]);
    out.push_back(v);
  }
  out.push_back(inverse_tuple(M));
  return out;
}

}  // namespace mcfin
