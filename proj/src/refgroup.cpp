#include "mcfin/refgroup.hpp"

#include "mcfin/imprim.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>
#include <thread>

#ifndef MCFIN_DATA_DIR
#define MCFIN_DATA_DIR "data"
#endif

namespace mcfin {

int GroupElements::find(const Mat& m) const {
  if (m.fld() != f) {
    if (f->n % m.fld()->n) return -1;
    return find(ZMat::from(m.embed_to(f)));
  }
  return find(ZMat::from(m));
}

namespace {

const Field* common_field(const std::vector<Mat>& ms) {
  int n = 1;
  for (auto& m : ms) n = (int)lcml(n, m.fld()->n);
  return field(n);
}

}  // namespace

GroupElements closure(const std::vector<Mat>& gens, size_t cap) {
  if (gens.empty()) throw Error("closure needs at least one generator");
  GroupElements W;
  W.f = common_field(gens);
  W.n = gens[0].dim();
  for (auto& g : gens) {
    if (!g.square() || g.dim() != W.n) throw Error("closure: generators must be square of equal size");
    W.gens.push_back(ZMat::from(g.fld() == W.f ? g : g.embed_to(W.f)));
  }
  ZMat id = ZMat::identity(W.f, W.n);
  W.idx.emplace(id, 0);
  W.elts.push_back(id);
  for (size_t h = 0; h < W.elts.size(); ++h) {
    for (auto& g : W.gens) {
      ZMat y = g * W.elts[h];
      if (W.idx.find(y) != W.idx.end()) continue;
      if (W.elts.size() >= cap) throw CapExceeded(cap, W.elts.size() + 1);
      W.idx.emplace(y, (int)W.elts.size());
      W.elts.push_back(std::move(y));
    }
  }
  return W;
}

int ReflectionSet::find(int elt) const {
  for (size_t i = 0; i < refl.size(); ++i)
    if (refl[i].elt == elt) return (int)i;
  return -1;
}

ReflectionSet reflections(const GroupElements& W) {
  ReflectionSet R;
  std::unordered_map<int, int> pos;
  for (size_t i = 1; i < W.size(); ++i) {
    if (!W.elts[i].is_reflection()) continue;
    Reflection r;
    r.elt = (int)i;
    r.m = W.mat((int)i);
    auto z = as_root_of_unity(r.m.det());
    if (!z) throw Error("reflection with a non-root-of-unity eigenvalue");
    r.eig = *z;
    pos[(int)i] = (int)R.refl.size();
    R.refl.push_back(std::move(r));
  }
  // conjugation by generators; union-find over reflection indices
  std::vector<int> par(R.refl.size());
  std::iota(par.begin(), par.end(), 0);
  std::function<int(int)> fnd = [&](int v) { return par[v] == v ? v : par[v] = fnd(par[v]); };
  std::vector<ZMat> ginv;
  for (auto& g : W.gens) ginv.push_back(ZMat::from(g.to_mat().inverse()));
  for (size_t k = 0; k < R.refl.size(); ++k)
    for (size_t g = 0; g < W.gens.size(); ++g) {
      ZMat c = W.gens[g] * W.elts[R.refl[k].elt] * ginv[g];
      int e = W.find(c);
      auto it = pos.find(e);
      if (it == pos.end()) throw Error("conjugate of a reflection left the reflection set");
      par[fnd((int)k)] = fnd(it->second);
    }
  std::map<int, int> label;
  for (size_t k = 0; k < R.refl.size(); ++k) {
    int r = fnd((int)k);
    auto it = label.find(r);
    if (it == label.end()) {
      int c = (int)label.size();
      label[r] = c;
      R.reps.push_back((int)k);
      R.refl[k].cls = c;
    } else {
      R.refl[k].cls = it->second;
    }
  }
  R.nclasses = (int)label.size();
  return R;
}

std::vector<std::vector<int32_t>> left_table(const GroupElements& W, const std::vector<Mat>& ms, int threads) {
  std::vector<ZMat> zs;
  for (auto& m : ms) zs.push_back(ZMat::from(m.fld() == W.f ? m : m.embed_to(W.f)));
  std::vector<std::vector<int32_t>> t(zs.size(), std::vector<int32_t>(W.size(), -1));
  if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
  size_t N = W.size();
  threads = (int)std::min<size_t>(threads, std::max<size_t>(1, N / 256));
  std::vector<std::thread> pool;
  std::vector<std::string> errs(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (size_t g = w; g < N; g += threads)
          for (size_t k = 0; k < zs.size(); ++k) {
            int e = W.find(zs[k] * W.elts[g]);
            if (e < 0) throw Error("left_table: product left the group");
            t[k][g] = e;
          }
      } catch (const std::exception& ex) {
        errs[w] = ex.what();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (!e.empty()) throw Error(e);
  return t;
}

bool generates_rows(const std::vector<const std::vector<int32_t>*>& rows, size_t order) {
  std::vector<char> seen(order, 0);
  std::vector<int32_t> q;
  q.reserve(order / 2 + 2);
  q.push_back(0);
  seen[0] = 1;
  for (size_t h = 0; h < q.size(); ++h)
    for (auto* r : rows) {
      int32_t y = (*r)[q[h]];
      if (!seen[y]) {
        seen[y] = 1;
        q.push_back(y);
        // a proper subgroup has at most half the elements
        if (q.size() * 2 > order) return true;
      }
    }
  return q.size() == order;
}

bool generates(const std::vector<Mat>& subset, const GroupElements& W) {
  if (subset.empty()) return W.size() == 1;
  std::vector<ZMat> zs;
  for (auto& m : subset) {
    if (W.find(m) < 0) throw Error("generates: element not in group");
    zs.push_back(ZMat::from(m.fld() == W.f ? m : m.embed_to(W.f)));
  }
  std::vector<char> seen(W.size(), 0);
  std::vector<int> q{0};
  seen[0] = 1;
  for (size_t h = 0; h < q.size(); ++h)
    for (auto& z : zs) {
      int y = W.find(z * W.elts[q[h]]);
      if (!seen[y]) {
        seen[y] = 1;
        q.push_back(y);
        if (q.size() * 2 > W.size()) return true;
      }
    }
  return q.size() == W.size();
}

int CatalogEntry::extension() const {
  long l = 1;
  for (int d : degrees) l = lcml(l, d);
  return (int)l;
}

std::string data_dir() {
  if (const char* e = std::getenv("MCFIN_DATA")) return e;
  return MCFIN_DATA_DIR;
}

CatalogEntry parse_catalog(const std::string& text) {
  CatalogEntry e;
  std::istringstream is(text);
  std::string line, rest;
  bool header = false;
  while (std::getline(is, line)) {
    auto h = line.find('#');
    std::string l = h == std::string::npos ? line : line.substr(0, h);
    if (!header && l.find("id=") != std::string::npos) {
      header = true;
      std::istringstream hs(l);
      std::string kv;
      while (std::getline(hs, kv, ';')) {
        auto a = kv.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        kv = kv.substr(a);
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error("bad catalog header item: " + kv);
        std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
        if (k == "id")
          e.id = v;
        else if (k == "order")
          e.order = std::stoull(v);
        else if (k == "degrees") {
          std::istringstream ds(v);
          std::string d;
          while (std::getline(ds, d, ',')) e.degrees.push_back(std::stoi(d));
        } else if (k == "field")
          e.base = field(std::stoi(v));
        else if (k == "classes")
          e.classes = std::stoi(v);
        else
          throw Error("unknown catalog header key: " + k);
      }
      continue;
    }
    if (header) rest += l + "\n";
  }
  if (!header || e.id.empty() || !e.order || e.degrees.empty() || !e.base) throw Error("catalog header needs id, order, degrees, field");
  e.gens = parse_mats(rest);
  if (e.gens.empty()) throw Error("catalog entry has no generators");
  e.rank = e.gens[0].dim();
  if ((int)e.degrees.size() != e.rank) throw Error("catalog: number of degrees differs from rank");
  int n = 1;
  for (auto& g : e.gens) {
    if (g.fld() != e.base) throw Error("catalog: generator field differs from header field");
    if (g.dim() != e.rank) throw Error("catalog: generators of different sizes");
    n = (int)lcml(n, min_conductor(g));
  }
  // work in the smallest field holding the generators
  for (auto& g : e.gens) g = descend(g, n);
  return e;
}

CatalogEntry load_catalog(const std::string& id) {
  static const std::regex imp(R"(G\((\d+),(\d+),(\d+)\))");
  std::smatch mm;
  if (std::regex_match(id, mm, imp)) {
    int m = std::stoi(mm[1]), p = std::stoi(mm[2]), n = std::stoi(mm[3]);
    if (m < 1 || p < 1 || n < 1 || m % p) throw Error("bad imprimitive parameters " + id);
    CatalogEntry e;
    e.id = id;
    e.rank = n;
    e.order = gpn_order(m, p, n);
    e.degrees = gpn_degrees(m, p, n);
    e.base = field(m);
    for (auto& r : standard_generators(m, p, n)) e.gens.push_back(r.elt(m, p, n).to_matrix());
    if (e.gens.empty()) e.gens.push_back(Mat::identity(e.base, n));
    return e;
  }
  static const std::regex prim(R"(G(2[3-9]|3[0-2]))");
  if (!std::regex_match(id, prim)) throw Error("unknown group id " + id);
  std::string path = data_dir() + "/catalog/" + id + ".txt";
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  CatalogEntry e = parse_catalog(ss.str());
  if (e.id != id) throw Error("catalog file " + path + " holds " + e.id);
  return e;
}

namespace {

int element_order(const ZMat& g, int bound) {
  ZMat x = g;
  for (int k = 1; k <= bound; ++k) {
    if (x.is_identity()) return k;
    x = g * x;
  }
  return -1;
}

}  // namespace

Validation validate(const CatalogEntry& e, const GroupElements& W, const ReflectionSet& R, size_t sample) {
  Validation v;
  v.order = W.size();
  v.nreflections = (int)R.refl.size();
  v.nclasses = R.nclasses;
  if (W.size() != e.order) {
    v.ok = false;
    v.problems.push_back("closure order " + std::to_string(W.size()) + " != " + std::to_string(e.order));
  }
  if (e.classes >= 0 && R.nclasses != e.classes) {
    v.ok = false;
    v.problems.push_back("reflection classes " + std::to_string(R.nclasses) + " != " + std::to_string(e.classes));
  }
  // expected max multiplicity per root order
  std::map<int, int> want;
  for (int d : e.degrees)
    for (int x = 1; x <= d; ++x)
      if (d % x == 0) want[x] = 0;
  for (auto& [x, k] : want)
    for (int d : e.degrees)
      if (d % x == 0) ++k;
  int N = e.extension();
  std::map<int, int> got;
  size_t full = W.size();
  if (sample == 0) sample = full <= 2160 ? full : 3000;
  size_t stride = std::max<size_t>(1, full / std::max<size_t>(1, sample));
  auto attained = [&] {
    for (auto& [x, k] : want)
      if (got[x] != k) return false;
    return true;
  };
  // strided pass first, then sweep the rest only while something is still missing
  std::vector<char> done(full, 0);
  auto scan = [&](size_t i) {
    done[i] = 1;
    ++v.scanned;
    int ord = element_order(W.elts[i], N);
    if (ord < 0) {
      v.ok = false;
      v.problems.push_back("element order does not divide lcm of degrees");
      return;
    }
    auto sp = root_spectrum(charpoly(W.mat((int)i)), ord);
    int tot = 0;
    for (auto& [z, c] : sp) {
      tot += c;
      got[z.d] = std::max(got[z.d], c);
    }
    if (tot != W.n) {
      v.ok = false;
      v.problems.push_back("eigenvalues not all roots of unity of the element order");
    }
  };
  for (size_t i = 0; i < full && v.ok; i += stride) scan(i);
  for (size_t i = 0; i < full && v.ok && !attained(); ++i)
    if (!done[i]) scan(i);
  for (auto& [x, c] : got) {
    auto it = want.find(x);
    if (it == want.end()) {
      v.ok = false;
      v.problems.push_back("eigenvalue of order " + std::to_string(x) + " divides no degree");
    } else if (c > it->second) {
      v.ok = false;
      v.problems.push_back("order " + std::to_string(x) + " multiplicity " + std::to_string(c) + " exceeds " +
                           std::to_string(it->second));
    }
  }
  for (auto& [x, k] : want)
    if (got[x] != k && got[x] <= k) {
      v.ok = false;
      v.problems.push_back("order " + std::to_string(x) + " multiplicity " + std::to_string(k) + " never attained");
    }
  return v;
}

std::shared_ptr<Group> Group::load(const std::string& id, bool check) {
  auto g = std::make_shared<Group>();
  g->entry = load_catalog(id);
  try {
    g->W = closure(g->entry.gens, g->entry.order);
  } catch (const CapExceeded& ex) {
    throw Error("catalog validation failed for " + id + ": generators give more than " + std::to_string(g->entry.order) +
                " elements");
  }
  g->R = reflections(g->W);
  if (check) {
    auto v = validate(g->entry, g->W, g->R);
    if (!v.ok) {
      std::string s = "catalog validation failed for " + id + ":";
      for (auto& p : v.problems) s += " " + p + ";";
      throw Error(s);
    }
  } else if (g->W.size() != g->entry.order) {
    throw Error("catalog validation failed for " + id + ": order mismatch");
  }
  return g;
}

const std::vector<std::vector<int32_t>>& Group::refl_table() {
  if (table_.empty()) {
    std::vector<Mat> ms;
    for (auto& r : R.refl) ms.push_back(r.m);
    table_ = left_table(W, ms);
  }
  return table_;
}

}  // namespace mcfin
