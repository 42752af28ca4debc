#include "mcfin/imprim.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace mcfin {

namespace {
int md(long x, int m) { return (int)(((x % m) + m) % m); }
}  // namespace

GpnElement GpnElement::identity(int m, int p, int n) {
  GpnElement g;
  g.m = m;
  g.p = p;
  g.a.assign(n, 0);
  g.sigma.resize(n);
  std::iota(g.sigma.begin(), g.sigma.end(), 0);
  return g;
}

bool GpnElement::valid() const {
  long s = 0;
  for (int x : a) s += x;
  return md(s, m) % p == 0;
}

Mat GpnElement::to_matrix() const {
  const Field* f = field(m);
  Mat M(f, n(), n());
  for (int i = 0; i < n(); ++i) M.set(i, sigma[i], Cyclo::zeta(f, a[i]));
  return M;
}

GpnElement GpnElement::operator*(const GpnElement& o) const {
  if (m != o.m || n() != o.n()) throw Error("G(m,p,n) shape mismatch");
  GpnElement r;
  r.m = m;
  r.p = std::gcd(p, o.p);
  r.a.resize(n());
  r.sigma.resize(n());
  for (int i = 0; i < n(); ++i) {
    r.a[i] = md(a[i] + o.a[sigma[i]], m);
    r.sigma[i] = o.sigma[sigma[i]];
  }
  return r;
}

GpnElement GpnElement::inverse() const {
  GpnElement r = *this;
  for (int i = 0; i < n(); ++i) {
    r.sigma[sigma[i]] = i;
    r.a[sigma[i]] = md(-a[i], m);
  }
  return r;
}

uint64_t GpnElement::key() const {
  uint64_t k = 0;
  for (int i = 0; i < n(); ++i) k = (k << 3) | (uint64_t)sigma[i];
  for (int i = 0; i < n(); ++i) k = (k << 6) | (uint64_t)a[i];
  return k;
}

std::vector<Root> GpnElement::eigenvalues() const {
  std::vector<Root> r;
  std::vector<char> seen(n(), 0);
  for (int i = 0; i < n(); ++i) {
    if (seen[i]) continue;
    int l = 0;
    long s = 0;
    for (int j = i; !seen[j]; j = sigma[j]) {
      seen[j] = 1;
      ++l;
      s += a[j];
    }
    for (int j = 0; j < l; ++j) r.push_back(Root::make((long)m * l, s + (long)m * j));
  }
  std::sort(r.begin(), r.end());
  return r;
}

std::string GpnElement::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n(); ++i) os << (i ? "," : "") << a[i];
  os << " | ";
  // cycle notation, 1-based
  std::vector<char> seen(n(), 0);
  bool any = false;
  for (int i = 0; i < n(); ++i) {
    if (seen[i] || sigma[i] == i) continue;
    any = true;
    os << "(";
    for (int j = i; !seen[j]; j = sigma[j]) {
      seen[j] = 1;
      os << (j == i ? "" : " ") << j + 1;
    }
    os << ")";
  }
  if (!any) os << "e";
  os << "]";
  return os.str();
}

GpnElement TypedReflection::elt(int m, int p, int n) const {
  GpnElement g = GpnElement::identity(m, p, n);
  if (i < 1 || i > n || (!type2 && (j < 1 || j > n || j == i))) throw Error("reflection index out of range: " + str());
  if (type2) {
    g.a[i - 1] = md(a, m);
  } else {
    g.a[i - 1] = md(a, m);
    g.a[j - 1] = md(-a, m);
    std::swap(g.sigma[i - 1], g.sigma[j - 1]);
  }
  return g;
}

std::string TypedReflection::str() const {
  std::ostringstream os;
  if (type2)
    os << "s(" << i << ";" << a << ")";
  else
    os << "s(" << i << "," << j << ";" << a << ")";
  return os.str();
}

bool TypedReflection::operator==(const TypedReflection& o) const {
  if (type2 != o.type2) return false;
  if (type2) return i == o.i && a == o.a;
  return (i == o.i && j == o.j && a == o.a) || (i == o.j && j == o.i && a == -o.a);
}

std::vector<int> phi(const GpnElement& g) { return g.sigma; }

// ---------------------------------------------------------------- graph invariants

namespace {

struct Graph {
  std::set<int> nodes;
  std::vector<std::tuple<int, int, int>> edges;  // i, j, b (oriented i -> j)
};

Graph graph_of(const std::vector<TypedReflection>& X) {
  Graph g;
  for (auto& r : X) {
    g.nodes.insert(r.i);
    if (!r.type2) {
      g.nodes.insert(r.j);
      g.edges.push_back({r.i, r.j, r.a});
    }
  }
  return g;
}

bool connected(const Graph& g) {
  if (g.nodes.empty()) return false;
  std::map<int, int> par;
  for (int v : g.nodes) par[v] = v;
  std::function<int(int)> find = [&](int v) { return par[v] == v ? v : par[v] = find(par[v]); };
  for (auto& [i, j, b] : g.edges) par[find(i)] = find(j);
  int root = find(*g.nodes.begin());
  for (int v : g.nodes)
    if (find(v) != root) return false;
  return true;
}

}  // namespace

std::optional<int> delta(const std::vector<TypedReflection>& X, int m) {
  (void)m;
  Graph g = graph_of(X);
  std::set<int> tnodes;
  for (auto& [i, j, b] : g.edges) tnodes.insert(i), tnodes.insert(j);
  if (tnodes.empty()) return std::nullopt;
  Graph t{tnodes, g.edges};
  if (!connected(t) || t.edges.size() != tnodes.size()) return std::nullopt;
  // peel leaves; what remains is the unique cycle
  std::vector<int> alive(g.edges.size(), 1);
  std::map<int, int> deg;
  for (auto& [i, j, b] : g.edges) ++deg[i], ++deg[j];
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t e = 0; e < g.edges.size(); ++e) {
      if (!alive[e]) continue;
      auto [i, j, b] = g.edges[e];
      if (deg[i] == 1 || deg[j] == 1) {
        alive[e] = 0;
        --deg[i];
        --deg[j];
        changed = true;
      }
    }
  }
  // walk the cycle, orienting each edge along the walk
  std::vector<int> cyc;
  for (size_t e = 0; e < g.edges.size(); ++e)
    if (alive[e]) cyc.push_back((int)e);
  if (cyc.size() < 2) return std::nullopt;
  std::vector<int> used(g.edges.size(), 0);
  int start = std::get<0>(g.edges[cyc[0]]);
  int at = start;
  long sum = 0;
  for (size_t step = 0; step < cyc.size(); ++step) {
    bool moved = false;
    for (int e : cyc) {
      if (used[e]) continue;
      auto [i, j, b] = g.edges[e];
      if (i == at) {
        sum += b;
        at = j;
      } else if (j == at) {
        sum -= b;
        at = i;
      } else {
        continue;
      }
      used[e] = 1;
      moved = true;
      break;
    }
    if (!moved) return std::nullopt;
  }
  if (at != start) return std::nullopt;
  return (int)std::abs(sum);
}

std::string GpnId::str() const {
  std::ostringstream os;
  os << "G(" << m << "," << p << "," << n << ")";
  return os.str();
}

GpnId identify_subgroup(const std::vector<TypedReflection>& X, int m, int p, int n) {
  (void)p;
  Graph g = graph_of(X);
  if (!connected(g)) throw Error("identify_subgroup: reflection graph is not connected");
  int n1 = (int)g.nodes.size();
  if (n1 > n) throw Error("identify_subgroup: node index beyond rank");
  std::vector<TypedReflection> t2;
  for (auto& r : X)
    if (r.type2) t2.push_back(r);
  if (t2.size() > 1) throw Error("identify_subgroup: more than one Type 2 reflection is unsupported");
  size_t E = g.edges.size();
  bool tree = (E + 1 == (size_t)n1);
  bool one_cycle = (E == (size_t)n1);
  if (!tree && !one_cycle) throw Error("identify_subgroup: graph has more than one cycle");
  if (t2.empty()) {
    if (tree) return {1, 1, n1};
    int d = *delta(X, m);
    int gd = std::gcd(d, m);  // gcd(0,m) = m
    int mm = m / gd;
    return {mm, mm, n1};
  }
  int b = md(t2[0].a, m);
  if (tree) return {m / std::gcd(b, m), 1, n1};
  int d = *delta(X, m);
  int m1 = std::gcd(std::gcd(b, m), d);
  return {m / m1, std::gcd(b, m) / m1, n1};
}

std::vector<TypedReflection> all_reflections(int m, int p, int n) {
  std::vector<TypedReflection> r;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int a = 0; a < m; ++a) r.push_back(TypedReflection::s(i, j, a));
  if (p < m)
    for (int i = 1; i <= n; ++i)
      for (int a = p; a < m; a += p) r.push_back(TypedReflection::s(i, a));
  return r;
}

std::vector<TypedReflection> standard_generators(int m, int p, int n) {
  std::vector<TypedReflection> r;
  for (int i = 1; i < n; ++i) r.push_back(TypedReflection::s(i, i + 1, 0));
  if (p > 1 && m > 1) r.push_back(TypedReflection::s(1, 2, 1));
  if (p < m) r.push_back(TypedReflection::s(1, p));
  return r;
}

unsigned long long gpn_order(int m, int p, int n) {
  unsigned long long o = 1;
  for (int i = 0; i < n; ++i) o *= (unsigned long long)m;
  for (int i = 2; i <= n; ++i) o *= (unsigned long long)i;
  return o / (unsigned long long)p;
}

std::vector<int> gpn_degrees(int m, int p, int n) {
  std::vector<int> d;
  for (int k = 1; k < n; ++k) d.push_back(k * m);
  d.push_back((m / p) * n);
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<Root> nice_lambdas(const std::vector<GpnElement>& tuple) {
  if (tuple.empty()) return {};
  GpnElement P = tuple[0];
  for (size_t k = 1; k < tuple.size(); ++k) P = P * tuple[k];
  int want = (int)tuple.size() - 2;
  std::map<Root, int> mult;
  for (auto& z : P.eigenvalues()) ++mult[z.inv()];
  std::vector<Root> out;
  for (auto& [z, c] : mult)
    if (c == want && !(z.d == 1)) out.push_back(z);
  return out;
}

std::optional<NiceWitness> construct_nice(int m, int p, int n, int T) {
  if (m < 1 || p < 1 || m % p) throw Error("construct_nice: need p | m");
  if (n >= 5) return std::nullopt;
  using R = TypedReflection;
  std::vector<R> t;
  if (n == 3 && T == 3) {
    if (m < 2) return std::nullopt;
    if (p == 1)
      t = {R::s(2, 3, 1), R::s(1, 2, 1), R::s(3, 1)};
    else if (p == m)
      t = {R::s(2, 3, 1), R::s(1, 2, 1), R::s(1, 2, 0)};
    else
      return std::nullopt;
  } else if (n == 3 && T == 4) {
    if (m < 2) return std::nullopt;
    if (p == m && m != 3)
      t = {R::s(1, 2, 1), R::s(1, 2, 0), R::s(2, 3, 2), R::s(2, 3, 0)};
    else if ((p == 1 && std::gcd(m, 3) == 1) || (p == 3 && m > 3))
      // the Type 2 entry carries exponent 3: its inverse eigenvalue is zeta_m^(m-3)
      t = {R::s(1, 2, 0), R::s(2, 3, 1), R::s(2, 3, -1), R::s(3, 3)};
    else
      return std::nullopt;
  } else if (n == 4 && T == 4) {
    if (p != m) return std::nullopt;
    if (m == 4)
      t = {R::s(1, 4, -1), R::s(1, 4, 0), R::s(1, 2, -1), R::s(2, 3, 0)};
    else if (m == 2)
      t = {R::s(1, 4, 1), R::s(1, 4, 0), R::s(1, 2, 0), R::s(2, 3, 0)};
    else
      return std::nullopt;
  } else if (n == 4 && T == 5) {
    if (p != m || (m != 2 && m != 4)) return std::nullopt;
    t = {R::s(1, 2, 1), R::s(1, 3, 0), R::s(1, 2, 0), R::s(2, 3, 1), R::s(2, 4, m == 4 ? 1 : 0)};
  } else {
    throw Error("construct_nice: unsupported (n,T)");
  }
  NiceWitness w;
  w.tuple = t;
  std::vector<GpnElement> es;
  for (auto& r : t) es.push_back(r.elt(m, p, n));
  w.lambdas = nice_lambdas(es);
  return w;
}

bool witness_ok(int m, int p, int n, const NiceWitness& w) {
  if (w.lambdas.empty()) return false;
  std::vector<GpnElement> es;
  for (auto& r : w.tuple) {
    es.push_back(r.elt(m, p, n));
    if (!es.back().valid()) return false;
  }
  unsigned long long order = gpn_order(m, p, n);
  return gpn_closure_order(es, order) == order;
}

unsigned long long gpn_closure_order(const std::vector<GpnElement>& gens, unsigned long long stop_above) {
  if (gens.empty()) return 1;
  int m = gens[0].m, n = gens[0].n();
  if (n > 7 || m >= 64) throw Error("closure key supports n <= 7, m < 64");
  std::unordered_set<uint64_t> seen;
  std::vector<GpnElement> q{GpnElement::identity(m, 1, n)};
  seen.insert(q[0].key());
  for (size_t h = 0; h < q.size(); ++h) {
    for (auto& g : gens) {
      GpnElement y = g * q[h];
      if (seen.insert(y.key()).second) {
        if (seen.size() > stop_above) return seen.size();
        q.push_back(std::move(y));
      }
    }
  }
  return seen.size();
}

BruteResult brute_nice_search(int m, int p, int n, int T, unsigned long long cap, bool first_only) {
  if (m < 1 || p < 1 || m % p) throw Error("brute_nice_search: need p | m");
  unsigned long long order = gpn_order(m, p, n);
  if (order > cap) throw Error("brute_nice_search: group order exceeds cap");
  auto refl = all_reflections(m, p, n);
  std::vector<GpnElement> relts;
  for (auto& r : refl) relts.push_back(r.elt(m, p, n));
  BruteResult res;
  if (T < 2) return res;
  std::map<std::vector<int>, bool> memo;
  auto generates = [&](std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    auto it = memo.find(idx);
    if (it != memo.end()) return it->second;
    // cheap necessary conditions: transitive Type 1 graph, and the exponent-sum image is pZ/m
    std::vector<int> par(n);
    std::iota(par.begin(), par.end(), 0);
    std::function<int(int)> find = [&](int v) { return par[v] == v ? v : par[v] = find(par[v]); };
    int g2 = m;
    for (int k : idx) {
      auto& r = refl[k];
      if (r.type2)
        g2 = std::gcd(g2, r.a % m);
      else
        par[find(r.i - 1)] = find(r.j - 1);
    }
    bool ok = true;
    for (int v = 0; v < n; ++v)
      if (find(v) != find(0)) ok = false;
    if (ok && g2 != p) ok = false;
    if (ok) {
      std::vector<GpnElement> gens;
      for (int k : idx) gens.push_back(relts[k]);
      ok = gpn_closure_order(gens, order) == order;
    }
    memo[idx] = ok;
    return ok;
  };
  int first = 0;  // s(1,2;0)
  std::vector<int> cur{first};
  std::vector<GpnElement> prod{relts[first]};
  bool stop = false;
  std::function<void()> rec = [&]() {
    if (stop) return;
    if ((int)cur.size() == T) {
      const GpnElement& P = prod.back();
      std::map<Root, int> mult;
      for (auto& z : P.eigenvalues()) ++mult[z];
      bool nice = false;
      for (auto& [z, c] : mult)
        if (z.d != 1 && c == T - 2) nice = true;
      if (!nice || !generates(cur)) return;
      std::vector<TypedReflection> t;
      for (int k : cur) t.push_back(refl[k]);
      res.tuples.push_back(std::move(t));
      if (first_only) {
        stop = true;
        res.complete = false;
      }
      return;
    }
    for (int k = 0; k < (int)refl.size() && !stop; ++k) {
      cur.push_back(k);
      prod.push_back(prod.back() * relts[k]);
      rec();
      cur.pop_back();
      prod.pop_back();
    }
  };
  rec();
  return res;
}

}  // namespace mcfin
