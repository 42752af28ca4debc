// Acceptance run: one PASS/FAIL line per criterion, detail lines indented below it.
// Exit status is the number of failed criteria.
#include "mcfin/braid.hpp"
#include "mcfin/imprim.hpp"
#include "mcfin/midconv.hpp"
#include "mcfin/pipeline.hpp"
#include "mcfin/refgroup.hpp"
#include "mcfin/sl2.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace mcfin;

namespace {

using Clock = std::chrono::steady_clock;

double secs(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::vector<std::string> lines;
  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void info(const std::string& what) { lines.push_back("     " + what); }
};

std::vector<Criterion> results;

void report(Criterion& c) {
  std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << " " << c.name << "\n";
  for (auto& l : c.lines) std::cout << "    " << l << "\n";
  std::cout.flush();
  results.push_back(c);
}

std::string fmt(double s) {
  char b[32];
  std::snprintf(b, sizeof b, "%.1fs", s);
  return b;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

template <class F>
void guarded(Criterion& c, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    c.check(false, std::string("exception: ") + e.what());
  }
}

std::map<std::string, std::shared_ptr<Group>> groups;

std::shared_ptr<Group> group(const std::string& id) {
  auto it = groups.find(id);
  if (it != groups.end()) return it->second;
  return groups[id] = Group::load(id, false);
}

// ---------------------------------------------------------------- 1

void catalog_orders() {
  Criterion c{1, "catalog closure orders"};
  const std::pair<const char*, size_t> want[] = {{"G23", 120},  {"G24", 336},   {"G25", 648},  {"G26", 1296},
                                                 {"G27", 2160}, {"G28", 1152}, {"G30", 14400}, {"G32", 155520}};
  for (auto [id, order] : want) {
    guarded(c, [&] {
      auto t0 = Clock::now();
      auto g = Group::load(id, true);
      groups[id] = g;
      c.check(g->W.size() == order, std::string(id) + " order " + std::to_string(g->W.size()) + " want " +
                                        std::to_string(order) + ", validated in " + fmt(secs(t0)));
    });
  }
  report(c);
}

// ---------------------------------------------------------------- 2

void type_counts() {
  Criterion c{2, "nice 3-tuple type counts"};
  struct Want {
    const char* id;
    int types, pairs;  // -1: not stated
  };
  const Want want[] = {{"G23", 3, -1}, {"G24", -1, 1}, {"G25", 8, 4}, {"G26", 6, 3}, {"G27", -1, 3}};
  for (auto w : want) {
    guarded(c, [&] {
      auto t0 = Clock::now();
      auto& G = *group(w.id);
      auto sr = search_nice(G, 3);
      auto types = partition_types(G, sr.tuples);
      int pairs = 0;
      for (size_t i = 0; i < types.size(); ++i)
        if (types[i].inverse > (int)i) ++pairs;
      bool ok = sr.complete && (w.types < 0 || (int)types.size() == w.types) && (w.pairs < 0 || pairs == w.pairs);
      std::ostringstream os;
      os << w.id << ": " << types.size() << " types, " << pairs << " inverse pairs from " << sr.tuples.size()
         << " tuples, want";
      if (w.types >= 0) os << " " << w.types << " types";
      if (w.pairs >= 0) os << " " << w.pairs << " pairs";
      os << " (" << fmt(secs(t0)) << ")";
      c.check(ok, os.str());
    });
  }
  report(c);
}

// ---------------------------------------------------------------- 3

struct Exemplar {
  std::string group, label;
  int T;
  MatTuple A;
};

std::vector<Exemplar> exemplars() {
  std::vector<Exemplar> out;
  for (auto& e : std::filesystem::directory_iterator(data_dir() + "/exemplars")) {
    std::string nm = e.path().stem().string();  // G25_T3_A
    auto a = nm.find('_'), b = nm.rfind('_');
    out.push_back({nm.substr(0, a), nm.substr(b + 1), std::stoi(nm.substr(a + 2, b - a - 2)), read_mats(e.path().string())});
  }
  std::sort(out.begin(), out.end(), [](auto& x, auto& y) {
    return std::tie(x.group, x.T, x.label) < std::tie(y.group, y.T, y.label);
  });
  return out;
}

void mc_dimension() {
  Criterion c{3, "MC dimension 2 with K and L invariant"};
  size_t total = 0, good = 0;
  for (auto& e : exemplars()) {
    guarded(c, [&] {
      auto& G = *group(e.group);
      std::string why;
      std::string tag = e.group + " T" + std::to_string(e.T) + " " + e.label;
      if (!is_nice(G, e.A, &why)) {
        c.check(false, tag + " exemplar is not nice: " + why);
        return;
      }
      MatTuple U = unify(e.A);
      int n = G.entry.extension();
      int count = 0;
      for (auto [z, mult] : root_spectrum(charpoly(product(U).inverse()), n)) {
        if (z.d == 1 || mult != e.T - 2) continue;
        ++count;
        ++total;
        const Field* f = field((int)lcml(U[0].fld()->n, z.d));
        MatTuple V;
        for (auto& m : U) V.push_back(m.fld() == f ? m : m.embed_to(f));
        Cyclo l = Cyclo::root(f, z);
        auto cd = convolution_data(V, l);
        bool inv = true;
        for (auto& B : cd.B) inv = inv && is_invariant(B, cd.K) && is_invariant(B, cd.L);
        int dim = (int)cd.B[0].dim() - cd.K.dim() - cd.L.dim();
        auto mc = middle_convolution(e.A, z);
        bool ok = inv && dim == 2 && mc.tuple.size() == (size_t)e.T && mc.tuple[0].dim() == 2;
        if (ok)
          ++good;
        else
          c.check(false, tag + " xi " + z.residue() + ": dim " + std::to_string(dim) + (inv ? "" : ", not invariant"));
      }
      if (count == 0) c.check(false, tag + " has no admissible lambda");
    });
  }
  c.check(good == total && total > 0, std::to_string(good) + " of " + std::to_string(total) +
                                          " admissible convolutions over all shipped exemplars");
  report(c);
}

// ---------------------------------------------------------------- 4, 5, 6

struct RunSpec {
  std::string group;
  int T;
  std::vector<std::string> orbits;  // "n" exact, ">=n" lower bound; empty: not part of criterion 4
  int distinct = -1;
};

std::map<std::string, RunResult> runs;

std::string run_key(const std::string& g, int T) { return g + " T" + std::to_string(T); }

const RunResult& get_run(const std::string& g, int T) {
  auto k = run_key(g, T);
  auto it = runs.find(k);
  if (it != runs.end()) return it->second;
  RunOptions o;
  o.orbit_cap = 5000;
  return runs[k] = run_group(g, T, o);
}

bool orbit_matches(const std::vector<const ReportRow*>& rows, std::vector<std::string> want) {
  if (rows.size() != want.size()) return false;
  std::vector<bool> used(want.size(), false);
  // exact entries first, bounds after
  std::vector<const ReportRow*> rs = rows;
  std::sort(rs.begin(), rs.end(), [](auto a, auto b) { return a->orbit < b->orbit; });
  std::vector<bool> taken(rs.size(), false);
  for (int pass = 0; pass < 2; ++pass)
    for (size_t k = 0; k < rs.size(); ++k) {
      if (taken[k]) continue;
      auto* r = rs[k];
      bool placed = false;
      for (size_t i = 0; i < want.size() && !placed; ++i) {
        if (used[i]) continue;
        bool bound = want[i].rfind(">=", 0) == 0;
        if (bound != (pass == 1)) continue;
        size_t v = std::stoul(bound ? want[i].substr(2) : want[i]);
        if (bound ? r->orbit >= v : (r->orbit_complete && r->orbit == v)) used[i] = placed = true;
      }
      taken[k] = placed;
    }
  return std::all_of(used.begin(), used.end(), [](bool b) { return b; });
}

std::vector<const ReportRow*> dim2(const RunResult& r) {
  std::vector<const ReportRow*> out;
  for (auto& row : r.rows)
    if (row.dim == 2) out.push_back(&row);
  return out;
}

const std::vector<RunSpec> specs = {
    {"G23", 3, {"40", "10", "10", "40", "10", "10", "72", "18", "18"}, 6},
    {"G24", 3, {"28", "28", "28"}},
    {"G25", 3, {"12", "12", "24", "36", "36", "36", "4", "4", "16", "4"}, 8},
    {"G26", 3, {"24", "24", "24", "36", "36", "36", "12"}},
    {"G27", 3, {"60", "60", "60", "96", "96", "96", "60", "60", "60"}, 9},
    {"G25", 4, {"45", "45", "120"}},
    {"G26", 4, {"120", "240"}},
    {"G28", 4, {"45", "45"}},
    {"G30", 4, {"50", "50", "90", "90", "50", "50"}, 5},
    {"G32", 4, {"40", "60", ">=350", "20", "20"}},
};

void orbit_sizes() {
  Criterion c{4, "orbit sizes, each orbit under a minute"};
  for (auto& s : specs) {
    guarded(c, [&] {
      auto t0 = Clock::now();
      auto& r = get_run(s.group, s.T);
      double run_time = secs(t0);
      auto rows = dim2(r);
      std::string got;
      double worst = 0;
      for (auto* row : rows) {
        got += (got.empty() ? "" : " ") + std::string(row->orbit_complete ? "" : ">=") + std::to_string(row->orbit);
        auto t1 = Clock::now();
        orbit(row->induced, 5000);
        worst = std::max(worst, secs(t1));
      }
      std::string want;
      for (auto& w : s.orbits) want += (want.empty() ? "" : " ") + w;
      c.check(orbit_matches(rows, s.orbits), run_key(s.group, s.T) + ": " + got + " | want " + want);
      c.check(worst < 60, run_key(s.group, s.T) + ": slowest orbit " + fmt(worst) + ", whole run " + fmt(run_time));
      // rows whose tabulated size differs, by type and xi
      auto apx = load_appendix();
      for (auto* row : rows) {
        auto* a = find_appendix(apx, row->group, row->T, row->type, row->xi.residue());
        if (!a || a->osize == "-") continue;
        bool bound = a->osize.rfind(">=", 0) == 0;
        size_t v = std::stoul(bound ? a->osize.substr(2) : a->osize);
        bool ok = bound ? row->orbit >= v : row->orbit == v;
        if (!ok) c.info("row " + row->type + " " + row->xi.residue() + ": " + std::to_string(row->orbit) + " vs tabulated " + a->osize);
      }
    });
  }
  report(c);
}

void distinct_orbits() {
  Criterion c{5, "distinct orbit counts"};
  for (auto& s : specs) {
    if (s.distinct < 0) continue;
    guarded(c, [&] {
      auto& r = get_run(s.group, s.T);
      std::map<int, std::string> cls;
      for (auto* row : dim2(r)) cls[row->orbit_class] += " " + row->type + ":" + row->xi.residue();
      c.check(r.distinct_orbits == s.distinct, run_key(s.group, s.T) + ": " + std::to_string(r.distinct_orbits) +
                                                   " distinct, want " + std::to_string(s.distinct));
      for (auto& [k, v] : cls) c.info("  class " + std::to_string(k) + ":" + v);
    });
  }
  report(c);
}

void subgroups() {
  Criterion c{6, "S. Size and SL2 identification"};
  auto apx = load_appendix();
  std::vector<std::pair<std::string, int>> keys;
  for (auto& s : specs) keys.push_back({s.group, s.T});
  keys.push_back({"G23", 4});
  keys.push_back({"G27", 4});
  keys.push_back({"G32", 5});
  size_t matched = 0, certified = 0;
  for (auto& [g, T] : keys) {
    guarded(c, [&] {
      auto& r = get_run(g, T);
      for (auto& a : apx) {
        if (a.group != g || a.T != T) continue;
        std::string tag = run_key(g, T) + " " + a.type + " " + a.xi;
        const ReportRow* row = nullptr;
        for (auto& x : r.rows)
          if (x.type == a.type && x.xi.residue() == a.xi && x.dim == 2) row = &x;
        if (!row) {
          c.check(false, tag + ": no such row");
          continue;
        }
        std::string ss = std::to_string(row->ssize);
        bool ok = ss == a.ssize && row->sl2 == a.sl2;
        if (ok) ++matched;
        if (!ok || a.ssize == "0" || a.sl2 == "0")
          c.check(ok, tag + ": S " + ss + " SL2 " + row->sl2 + (row->sl2_label.empty() ? "" : " (" + row->sl2_label + ")") +
                          " | tabulated S " + a.ssize + " SL2 " + a.sl2);
        if (a.ssize == "0") {
          auto s = gl2_subgroup(row->mc, 20000);
          bool cert = !s.finite && !s.inconclusive && infinite_order_certificate(s.certificate);
          c.check(cert, tag + ": GL2 infinite-order certificate " + (cert ? one_line(s.certificate.str()) : std::string("missing")));
          certified += cert;
        }
        if (a.sl2 == "0") {
          auto s = subgroup_id(row->induced, 20000);
          bool cert = !s.finite && !s.inconclusive && infinite_order_certificate(s.certificate);
          c.check(cert, tag + ": SL2 infinite-order certificate " + (cert ? std::string("found") : std::string("missing")));
        }
      }
    });
  }
  c.info(std::to_string(matched) + " tabulated rows match, " + std::to_string(certified) + " infinite rows certified");
  report(c);
}

// ---------------------------------------------------------------- 7

void imprimitive() {
  Criterion c{7, "imprimitive construction vs exhaustive search"};
  auto t0 = Clock::now();
  guarded(c, [&] {
    const std::pair<int, int> shapes[] = {{3, 3}, {3, 4}, {4, 4}, {4, 5}};
    int cases = 0, agree = 0;
    for (int m = 2; m <= 6; ++m)
      for (int p = 1; p <= m; ++p) {
        if (m % p) continue;
        for (auto [n, T] : shapes) {
          ++cases;
          auto w = construct_nice(m, p, n, T);
          auto b = brute_nice_search(m, p, n, T, ~0ull, true);
          bool found = !b.tuples.empty();
          bool ok = found == w.has_value() && (found || b.complete) && (!w || witness_ok(m, p, n, *w));
          agree += ok;
          if (!ok)
            c.check(false, "G(" + std::to_string(m) + "," + std::to_string(p) + "," + std::to_string(n) + ") T=" +
                               std::to_string(T) + ": construction " + (w ? "yes" : "no") + ", search " + (found ? "yes" : "no"));
        }
      }
    c.check(agree == cases, std::to_string(agree) + " of " + std::to_string(cases) + " (m,p,n,T) cases agree, m <= 6");
  });
  guarded(c, [&] {
    for (auto [m, p] : {std::pair{2, 2}, std::pair{3, 3}}) {
      auto b = brute_nice_search(m, p, 5, 5, ~0ull);
      c.check(b.complete && b.tuples.empty(), "G(" + std::to_string(m) + "," + std::to_string(p) + ",5) T=5: " +
                                                  std::to_string(b.tuples.size()) + " nice tuples");
    }
  });
  guarded(c, [&] {
    int ok = 0, total = 0;
    for (int m = 2; m <= 12; ++m) {
      auto w = construct_nice(m, m, 3, 3);
      if (!w) continue;
      ++total;
      GpnElement P = GpnElement::identity(m, m, 3);
      for (auto& r : w->tuple) P = P * r.elt(m, m, 3);
      auto ev = P.eigenvalues();
      std::sort(ev.begin(), ev.end());
      bool found = false;
      for (auto l : ev) {
        std::vector<Root> want{(l * l).inv(), l, l * Root{2, 1}};
        std::sort(want.begin(), want.end());
        found = found || want == ev;
      }
      ok += found;
      if (!found) c.check(false, "G(" + std::to_string(m) + "," + std::to_string(m) + ",3) product spectrum shape");
    }
    c.check(ok == total && total > 0, "G(m,m,3) products have shape {l^-2, l, -l}: " + std::to_string(ok) + " of " +
                                          std::to_string(total) + ", m <= 12");
  });
  guarded(c, [&] {
    int ok = 0, total = 0;
    for (int m = 2; m <= 12; ++m) {
      auto w = construct_nice(m, 1, 3, 3);
      if (!w) continue;
      ++total;
      GpnElement P = GpnElement::identity(m, 1, 3);
      for (auto& r : w->tuple) P = P * r.elt(m, 1, 3);
      auto ev = P.eigenvalues();
      std::sort(ev.begin(), ev.end());
      bool distinct = std::adjacent_find(ev.begin(), ev.end()) == ev.end();
      Root z = ev[0] * ev[0] * ev[0];
      bool same = true;
      for (auto& l : ev) same = same && l * l * l == z;
      // z is an m-th root of unity generating the same group as zeta_m
      bool ok1 = ev.size() == 3 && distinct && same && z.d == m;
      ok += ok1;
      if (!ok1)
        c.check(false, "G(" + std::to_string(m) + ",1,3): product spectrum is not the cube roots of a primitive m-th root");
    }
    c.check(ok == total && total > 0, "G(m,1,3) products are the cube roots of a primitive m-th root: " +
                                          std::to_string(ok) + " of " + std::to_string(total) + ", m <= 12");
  });
  double t = secs(t0);
  c.check(t <= 600, "runtime " + fmt(t) + ", limit 600s");
  report(c);
}

// ---------------------------------------------------------------- 8

Cyclo rnd_cyclo(const Field* f, std::mt19937& g, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> c(lo, hi);
  std::vector<mpq_class> v;
  for (int t = 0; t < f->deg; ++t) v.emplace_back(c(g), 1 + (c(g) == 0));
  return Cyclo(f, v);
}

Mat rnd_mat(const Field* f, int n, std::mt19937& g) {
  Mat m(f, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, rnd_cyclo(f, g, -2, 2));
  return m;
}

void properties() {
  Criterion c{8, "property suite"};
  guarded(c, [&] {
    std::mt19937 g(2024);
    const Field* f = field(3);
    int tuples = 0, good = 0;
    for (int s = 0; s < 1000; ++s) {
      int n = 3 + s % 4;
      MatTuple M;
      while ((int)M.size() < n) {
        Mat x = rnd_mat(f, 2, g);
        if (!x.det().is_zero()) M.push_back(x);
      }
      bool ok = true;
      for (int i = 1; i < n; ++i) {
        ok = ok && braid_act_inv(i, braid_act(i, M)) == M && braid_act(i, braid_act_inv(i, M)) == M;
        if (i + 1 < n)
          ok = ok && braid_act(i, braid_act(i + 1, braid_act(i, M))) == braid_act(i + 1, braid_act(i, braid_act(i + 1, M)));
        for (int j = i + 2; j < n; ++j) ok = ok && braid_act(i, braid_act(j, M)) == braid_act(j, braid_act(i, M));
      }
      ok = ok && product(braid_act(1 + s % (n - 1), M)) == product(M);
      ++tuples;
      good += ok;
    }
    c.check(good == tuples, "braid relations: " + std::to_string(good) + " of " + std::to_string(tuples) + " random tuples");
  });

  std::vector<Exemplar> rank3;
  for (auto& e : exemplars())
    if (e.T == 3) rank3.push_back(e);
  guarded(c, [&] {
    int cases = 0, good = 0, inv_cases = 0, inv_good = 0;
    for (auto& e : rank3) {
      int N = load_catalog(e.group).extension();
      for (auto [z, mult] : root_spectrum(charpoly(product(unify(e.A)).inverse()), N)) {
        if (z.d == 1 || mult != 1) continue;
        auto M = induce(middle_convolution(e.A, z).tuple).tuple;
        Orbit o = orbit(M, 5000);
        bool ok = o.complete;
        for (int i = 1; i <= 2; ++i) {
          auto lhs = induce(middle_convolution(braid_act(i, e.A), z).tuple).tuple;
          ok = ok && same_orbit(o, lhs) && same_orbit(o, braid_act(i, M));
        }
        ++cases;
        good += ok;
        if (!ok) c.check(false, e.group + " " + e.label + " xi " + z.residue() + ": MC not braid-equivariant");
        bool ic = inverse_consistent(e.A, z, 5000);
        ++inv_cases;
        inv_good += ic;
        if (!ic) c.check(false, e.group + " " + e.label + " xi " + z.residue() + ": inverse tuple misses the orbit");
      }
    }
    c.check(good == cases && cases > 0, "MC braid-equivariance: " + std::to_string(good) + " of " + std::to_string(cases) +
                                            " rank-3 convolutions");
    c.check(inv_good == inv_cases && inv_cases > 0, "inverse consistency (up to even sign patterns): " +
                                                        std::to_string(inv_good) + " of " + std::to_string(inv_cases));
  });
  guarded(c, [&] {
    std::mt19937 g(5);
    int cases = 0, good = 0;
    for (int n : {1, 3, 4, 5, 12, 24})
      for (int d : {1, 2, 3, 4, 6})
        for (int s = 0; s < 3; ++s) {
          Mat A = rnd_mat(field(n), d, g);
          CharPoly p = charpoly(A);
          bool ok = p.degree() == d && p.c.back().is_one() && p.eval(A) == Mat(A.fld(), d) &&
                    p.c[0] == (d % 2 ? -A.det() : A.det());
          ++cases;
          good += ok;
        }
    c.check(good == cases, "Cayley-Hamilton: " + std::to_string(good) + " of " + std::to_string(cases) + " random matrices");
  });
  guarded(c, [&] {
    std::mt19937 g(3);
    const std::pair<int, int> pairs[] = {{3, 12}, {4, 12}, {5, 20}, {12, 36}, {6, 36}, {5, 60}, {12, 60}, {15, 60}, {8, 24}, {24, 72}};
    int cases = 0, good = 0;
    for (auto [m, n] : pairs)
      for (int s = 0; s < 50; ++s) {
        Cyclo a = rnd_cyclo(field(m), g);
        auto back = try_descend(embed(a, n), m);
        ++cases;
        good += back && *back == a;
      }
    for (auto& e : rank3) {
      for (auto& M : e.A) {
        int n = M.fld()->n;
        Mat up = M.embed_to(field(n * 6));
        ++cases;
        good += descend(up, n) == M;
      }
    }
    c.check(good == cases, "embed/descend round trips: " + std::to_string(good) + " of " + std::to_string(cases));
  });
  report(c);
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  catalog_orders();
  type_counts();
  mc_dimension();
  orbit_sizes();
  distinct_orbits();
  subgroups();
  imprimitive();
  properties();
  int failed = 0;
  for (auto& c : results) failed += !c.pass;
  std::cout << "\n" << results.size() - failed << " of " << results.size() << " criteria pass (" << fmt(secs(t0)) << ")\n";
  for (auto& c : results)
    if (!c.pass) std::cout << "failed: " << c.id << " " << c.name << "\n";
  return failed;
}
