#include "mcfin/sl2.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace mcfin {

namespace {

Root sqrt_principal(Root r) {
  // residue k/d -> k/(2d), in [0, 1/2)
  if (r.d == 1) return Root{1, 0};
  return Root::make(2L * r.d, r.k);
}

Induced finish(const MatTuple& U, std::vector<Root> ch, int field_ext) {
  long n = lcml(U[0].fld()->n, field_ext);
  for (auto& a : ch) n = lcml(n, a.d);
  const Field* f = field((int)n);
  Induced r;
  r.character = ch;
  for (size_t i = 0; i < U.size(); ++i) {
    Mat m = U[i].fld() == f ? U[i] : U[i].embed_to(f);
    r.tuple.push_back(m * Cyclo::root(f, ch[i]));
  }
  for (auto& m : r.tuple)
    if (!m.det().is_one()) throw Error("induce: character does not scale into SL2");
  Mat P = r.tuple[0];
  for (size_t i = 1; i < r.tuple.size(); ++i) P = P * r.tuple[i];
  if (!P.is_identity()) throw Error("induce: character product is not 1");
  r.tuple = shrink(r.tuple);
  return r;
}

MatTuple closed(const MatTuple& mc) {
  if (mc.empty()) throw Error("induce: empty tuple");
  for (auto& m : mc)
    if (m.dim() != 2) throw Error("induce: MC output must be 2x2");
  MatTuple U = unify(mc);
  Mat P = U[0];
  for (size_t i = 1; i < U.size(); ++i) P = P * U[i];
  U.push_back(P.inverse());
  return U;
}

}  // namespace

Induced induce(const MatTuple& mc, int field_ext) {
  MatTuple U = closed(mc);
  std::vector<Root> ch;
  for (auto& m : U) {
    auto z = as_root_of_unity(m.det());
    if (!z) throw Error("induce: determinant is not a root of unity");
    ch.push_back(sqrt_principal(z->inv()));
  }
  Root prod{1, 0};
  for (auto& a : ch) prod = prod * a;
  if (!(prod == Root{1, 0})) {
    if (!(prod == Root{2, 1})) throw Error("induce: character product is not +-1");
    ch.back() = ch.back() * Root{2, 1};
  }
  return finish(U, ch, field_ext);
}

Induced induce_with(const MatTuple& mc, const std::vector<Root>& character, int field_ext) {
  MatTuple U = closed(mc);
  if (character.size() != U.size()) throw Error("induce: character length must be T+1");
  return finish(U, character, field_ext);
}

std::string character_str(const std::vector<Root>& ch) {
  std::string s = "(";
  for (size_t i = 0; i < ch.size(); ++i) s += (i ? ", " : "") + ch[i].residue();
  return s + ")";
}

bool infinite_order_certificate(const Mat& g) {
  Cyclo d = g.det();
  if (!as_root_of_unity(d)) return true;
  Cyclo t = g.trace();
  Cyclo u = t * t / d - Cyclo(d.fld(), 2);
  auto c = as_two_cos(u);
  if (!c) return true;
  // equal eigenvalues: finite order forces a scalar matrix
  if (c->d == 1 && !g.is_scalar()) return true;
  return false;
}

namespace {

int element_order(const Mat& g, size_t bound) {
  Mat x = g;
  for (size_t k = 1; k <= bound; ++k) {
    if (x.is_identity()) return (int)k;
    x = x * g;
  }
  return -1;
}

struct Closure {
  std::vector<Mat> elts;
  bool capped = false;
  bool infinite = false;
  Mat cert;
};

Closure close(const MatTuple& gens0, size_t cap) {
  MatTuple gens = unify(gens0);
  Closure c;
  std::unordered_set<Mat, MatHash> seen;
  const Field* f = gens[0].fld();
  Mat I = Mat::identity(f, gens[0].dim());
  seen.insert(I);
  c.elts.push_back(I);
  for (auto& g : gens)
    if (infinite_order_certificate(g)) {
      c.infinite = true;
      c.cert = g;
      return c;
    }
  for (size_t h = 0; h < c.elts.size(); ++h)
    for (auto& g : gens) {
      Mat y = g * c.elts[h];
      if (seen.count(y)) continue;
      if (infinite_order_certificate(y)) {
        c.infinite = true;
        c.cert = y;
        return c;
      }
      if (c.elts.size() >= cap) {
        c.capped = true;
        return c;
      }
      seen.insert(y);
      c.elts.push_back(std::move(y));
    }
  return c;
}

using Hist = std::map<int, int>;

Hist histogram(const std::vector<Mat>& elts) {
  Hist h;
  for (auto& g : elts) ++h[element_order(g, elts.size())];
  return h;
}

// quaternion a + b i + c j + d k as a 2x2 matrix over Q(zeta_n), 4 | n
Mat quat(const Field* f, const Cyclo& a, const Cyclo& b, const Cyclo& c, const Cyclo& d) {
  Cyclo I = Cyclo::zeta(f, f->n / 4);
  return Mat::from_rows(f, {{a + b * I, c + d * I}, {-c + d * I, a - b * I}});
}

struct Ref {
  std::string label;
  int small_id;
  Hist hist;
  size_t order;
};

const std::vector<Ref>& references() {
  static std::vector<Ref> refs;
  static std::once_flag once;
  std::call_once(once, [] {
    auto add = [](const std::string& label, int id, const MatTuple& gens) {
      Closure c = close(gens, 200);
      if (c.infinite || c.capped) throw Error("reference group failed to close: " + label);
      refs.push_back({label, id, histogram(c.elts), c.elts.size()});
    };
    const Field* f4 = field(4);
    Cyclo z(f4), o(f4, 1), h(f4, mpq_class(1, 2)), mh(f4, mpq_class(-1, 2));
    Mat qi = quat(f4, z, o, z, z), qj = quat(f4, z, z, o, z);
    Mat w = quat(f4, mh, h, h, h);
    add("SL(2,3)", 3, {qi, qj, w});
    const Field* f8 = field(8);
    add("binary octahedral", 28, {qi.embed_to(f8), qj.embed_to(f8), w.embed_to(f8),
                                  Mat::from_rows(f8, {{Cyclo::zeta(f8, 1), Cyclo(f8)}, {Cyclo(f8), Cyclo::zeta(f8, 7)}})});
    const Field* f20 = field(20);
    Cyclo z5 = Cyclo::zeta(f20, 4);
    Cyclo s5 = Cyclo(f20, 1) + (z5 + z5.pow(4)) * Cyclo(f20, 2);  // sqrt 5
    Cyclo phi = (Cyclo(f20, 1) + s5) * Cyclo(f20, mpq_class(1, 2));
    Cyclo H(f20, mpq_class(1, 2)), Z(f20), O(f20, 1);
    Mat s = quat(f20, phi * H, phi.inv() * H, H, Z);
    add("SL(2,5)", 5, {quat(f20, Z, O, Z, Z), quat(f20, Z, Z, O, Z), s});
  });
  return refs;
}

Hist dicyclic_hist(int k) {
  const Field* f = field((int)lcml(4, 2L * k));
  Mat a = Mat::from_rows(f, {{Cyclo::zeta(f, f->n / (2 * k)), Cyclo(f)}, {Cyclo(f), Cyclo::zeta(f, f->n - f->n / (2 * k))}});
  Mat b = Mat::from_rows(f, {{Cyclo(f), Cyclo(f, -1)}, {Cyclo(f, 1), Cyclo(f)}});
  Closure c = close({a, b}, 4 * k + 1);
  return histogram(c.elts);
}

int dicyclic_small_id(size_t order) {
  static const std::map<size_t, int> ids{{8, 4}, {12, 1}, {16, 9}, {20, 1}, {24, 4}, {28, 1}, {32, 20}, {36, 1}, {40, 4}, {48, 8}};
  auto it = ids.find(order);
  return it == ids.end() ? 0 : it->second;
}

int cyclic_small_id(size_t order) {
  static const std::map<size_t, int> ids{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 2}, {7, 1}, {8, 1}, {10, 2}, {12, 2}};
  auto it = ids.find(order);
  return it == ids.end() ? 0 : it->second;
}

SubgroupId classify(const Closure& c, bool sl2) {
  SubgroupId s;
  if (c.infinite) {
    s.finite = false;
    s.order = 0;
    s.label = "infinite";
    s.certificate = c.cert;
    s.reason = "element of infinite order, trace " + c.cert.trace().pretty();
    return s;
  }
  if (c.capped) {
    s.inconclusive = true;
    s.order = c.elts.size();
    s.label = "inconclusive";
    s.reason = "closure passed the cap without an infinite-order element";
    return s;
  }
  s.finite = true;
  s.order = c.elts.size();
  Hist h = histogram(c.elts);
  s.histogram.assign(h.begin(), h.end());
  if (!sl2) {
    s.label = "GL2 subgroup";
    return s;
  }
  if (h.rbegin()->first == (int)s.order) {
    s.label = "cyclic";
    s.small_id = cyclic_small_id(s.order);
    return s;
  }
  for (auto& r : references())
    if (r.order == s.order && r.hist == h) {
      s.label = r.label;
      s.small_id = r.small_id;
      return s;
    }
  if (s.order % 4 == 0 && dicyclic_hist((int)s.order / 4) == h) {
    s.label = "dicyclic";
    s.small_id = dicyclic_small_id(s.order);
    return s;
  }
  s.label = "other";
  return s;
}

}  // namespace

std::string SubgroupId::str() const {
  std::ostringstream os;
  if (inconclusive) {
    os << "inconclusive(>=" << order << ")";
  } else if (!finite) {
    os << "0 (infinite)";
  } else {
    os << "<" << order << "," << small_id << "> " << label;
  }
  return os.str();
}

SubgroupId subgroup_id(const MatTuple& M, size_t cap) {
  for (auto& m : M)
    if (!m.det().is_one()) throw Error("subgroup_id: not an SL2 tuple");
  return classify(close(M, cap), true);
}

SubgroupId gl2_subgroup(const MatTuple& M, size_t cap) { return classify(close(M, cap), false); }

std::string Residues::str() const {
  std::string s = "theta=(";
  for (size_t i = 0; i < theta.size(); ++i) s += (i ? "," : "") + theta[i].residue();
  s += ") sigma=(";
  for (size_t i = 0; i < sigma.size(); ++i) s += (i ? "," : "") + sigma[i].residue();
  return s + ")";
}

Residues residues(const MatTuple& M0) {
  MatTuple M = unify(M0);
  auto res = [](const Cyclo& t, const std::string& what) {
    auto z = as_two_cos(t);
    if (!z) throw Error("NotFiniteOrder: trace of " + what + " is not 2cos of a rational angle");
    return *z;
  };
  Residues r;
  for (size_t i = 0; i < M.size(); ++i) r.theta.push_back(res(M[i].trace(), "M" + std::to_string(i + 1)));
  std::vector<std::pair<int, int>> pairs;
  if (M.size() == 4)
    pairs = {{1, 2}, {2, 3}, {1, 3}, {2, 4}};
  else if (M.size() == 5)
    pairs = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {1, 3}, {2, 4}};
  else
    throw Error("residues need a 4- or 5-tuple");
  for (auto [i, j] : pairs)
    r.sigma.push_back(res((M[i - 1] * M[j - 1]).trace(), "M" + std::to_string(i) + "M" + std::to_string(j)));
  return r;
}

}  // namespace mcfin
