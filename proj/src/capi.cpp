#include "mcfin/mcfin.h"

#include "mcfin/braid.hpp"
#include "mcfin/imprim.hpp"
#include "mcfin/midconv.hpp"
#include "mcfin/pipeline.hpp"
#include "mcfin/refgroup.hpp"
#include "mcfin/sl2.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

using json = nlohmann::json;
using namespace mcfin;

struct mcfin_tuple {
  MatTuple m;
};
struct mcfin_group {
  std::shared_ptr<Group> g;
};
struct mcfin_run {
  RunResult r;
};

namespace {

thread_local std::string last_error;

int fail(int code, const std::string& msg) {
  last_error = msg;
  return code;
}

struct ParseError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

template <class F>
int guard(F&& f) {
  try {
    f();
    last_error.clear();
    return MCFIN_OK;
  } catch (const ParseError& e) {
    return fail(MCFIN_ERR_PARSE, e.what());
  } catch (const IoError& e) {
    return fail(MCFIN_ERR_IO, e.what());
  } catch (const CapExceeded& e) {
    return fail(MCFIN_ERR_CAP, e.what());
  } catch (const Error& e) {
    std::string w = e.what();
    if (w.rfind("NotFiniteOrder", 0) == 0) return fail(MCFIN_ERR_NOT_FINITE, w);
    return fail(MCFIN_ERR_MATH, w);
  } catch (const std::invalid_argument& e) {
    return fail(MCFIN_ERR_PARSE, e.what());
  } catch (const std::out_of_range& e) {
    return fail(MCFIN_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(MCFIN_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MCFIN_ERR_INTERNAL, "unknown exception");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

#define NEED(p)                                        \
  do {                                                 \
    if (!(p)) return fail(MCFIN_ERR_ARG, #p " is null"); \
  } while (0)

Root parse_residue(const std::string& s0) {
  std::string s;
  for (char c : s0)
    if (!std::isspace((unsigned char)c)) s += c;
  auto sl = s.find('/');
  try {
    if (sl == std::string::npos) {
      long v = std::stol(s);
      if (v != 0 && v != 1) throw ParseError("bad residue: " + s0);
      return Root{1, 0};
    }
    long num = std::stol(s.substr(0, sl)), den = std::stol(s.substr(sl + 1));
    if (den <= 0) throw ParseError("bad residue: " + s0);
    return Root::make(den, num);
  } catch (const std::logic_error&) {
    throw ParseError("bad residue: " + s0);
  }
}

std::vector<Root> parse_residues(const std::string& s) {
  std::vector<Root> r;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) r.push_back(parse_residue(tok));
  return r;
}

json residues_json(const std::vector<Root>& v) {
  json a = json::array();
  for (auto& z : v) a.push_back(z.residue());
  return a;
}

MatTuple parse_text(const std::string& text) {
  MatTuple m;
  try {
    m = parse_mats(text);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  if (m.empty()) throw ParseError("no matrices in input");
  return m;
}

json subgroup_json(const SubgroupId& s) {
  json j;
  j["finite"] = s.finite;
  j["inconclusive"] = s.inconclusive;
  j["order"] = s.order;
  j["small_id"] = s.small_id;
  j["label"] = s.label;
  j["id"] = s.str();
  json h = json::array();
  for (auto [o, c] : s.histogram) h.push_back({o, c});
  j["histogram"] = h;
  if (!s.finite && !s.inconclusive) j["certificate"] = s.certificate.str();
  j["reason"] = s.reason;
  return j;
}

json row_json(const ReportRow& r) {
  json j;
  j["id"] = r.id();
  j["group"] = r.group;
  j["T"] = r.T;
  j["type"] = r.type;
  j["xi"] = r.xi.residue();
  j["lambda"] = r.lambda;
  j["multiplicity"] = r.multiplicity;
  j["dim"] = r.dim;
  j["character"] = residues_json(r.character);
  j["character_source"] = r.character_source;
  j["orbit"] = r.orbit;
  j["orbit_complete"] = r.orbit_complete;
  j["ssize"] = r.ssize;
  j["sl2"] = r.sl2;
  j["sl2_label"] = r.sl2_label;
  j["identity_entry"] = r.identity_entry;
  j["reduced_orbit"] = r.reduced_orbit;
  j["orbit_class"] = r.orbit_class;
  j["note"] = r.note;
  return j;
}

json type_json(const TupleType& t, const std::vector<TupleType>& all) {
  json j;
  j["label"] = t.label;
  j["key"] = key_str(t.key);
  j["members"] = t.members;
  j["inverse"] = t.inverse >= 0 ? json(all[t.inverse].label) : json(nullptr);
  j["exemplar"] = mats_str(t.exemplar);
  return j;
}

}  // namespace

extern "C" {

const char* mcfin_version(void) { return "1.0.0"; }

const char* mcfin_last_error(void) { return last_error.c_str(); }

void mcfin_string_free(char* s) { std::free(s); }

int mcfin_tuple_parse(const char* text, mcfin_tuple** out) {
  NEED(text);
  NEED(out);
  *out = nullptr;
  return guard([&] { *out = new mcfin_tuple{parse_text(text)}; });
}

int mcfin_tuple_read(const char* path, mcfin_tuple** out) {
  NEED(path);
  NEED(out);
  *out = nullptr;
  return guard([&] {
    std::ifstream in(path);
    if (!in) throw IoError(std::string("cannot open ") + path);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = new mcfin_tuple{parse_text(ss.str())};
  });
}

int mcfin_tuple_write(const mcfin_tuple* t, const char* path) {
  NEED(t);
  NEED(path);
  return guard([&] {
    std::ofstream o(path);
    if (!o) throw IoError(std::string("cannot write ") + path);
    o << mats_str(t->m);
    if (!o) throw IoError(std::string("write failed: ") + path);
  });
}

void mcfin_tuple_free(mcfin_tuple* t) { delete t; }

int mcfin_tuple_length(const mcfin_tuple* t, size_t* n) {
  NEED(t);
  NEED(n);
  *n = t->m.size();
  return MCFIN_OK;
}

int mcfin_tuple_dim(const mcfin_tuple* t, int* dim) {
  NEED(t);
  NEED(dim);
  *dim = t->m.empty() ? 0 : t->m[0].dim();
  return MCFIN_OK;
}

int mcfin_tuple_str(const mcfin_tuple* t, char** out) {
  NEED(t);
  NEED(out);
  return guard([&] { *out = dup(mats_str(t->m)); });
}

int mcfin_tuple_pretty(const mcfin_tuple* t, char** out) {
  NEED(t);
  NEED(out);
  return guard([&] {
    std::string s;
    for (size_t i = 0; i < t->m.size(); ++i) s += "M" + std::to_string(i + 1) + " = " + t->m[i].pretty() + "\n";
    *out = dup(s);
  });
}

int mcfin_tuple_equal(const mcfin_tuple* a, const mcfin_tuple* b, int* equal) {
  NEED(a);
  NEED(b);
  NEED(equal);
  return guard([&] {
    *equal = 0;
    if (a->m.size() != b->m.size()) return;
    MatTuple all = a->m;
    all.insert(all.end(), b->m.begin(), b->m.end());
    all = unify(all);
    size_t n = a->m.size();
    for (size_t i = 0; i < n; ++i)
      if (all[i] != all[n + i]) return;
    *equal = 1;
  });
}

int mcfin_tuple_inverse(const mcfin_tuple* t, mcfin_tuple** out) {
  NEED(t);
  NEED(out);
  return guard([&] { *out = new mcfin_tuple{inverse_tuple(t->m)}; });
}

int mcfin_group_load(const char* id, int validate, mcfin_group** out) {
  NEED(id);
  NEED(out);
  *out = nullptr;
  return guard([&] { *out = new mcfin_group{Group::load(id, validate != 0)}; });
}

void mcfin_group_free(mcfin_group* g) { delete g; }

static json entry_json(const CatalogEntry& e) {
  json j;
  j["id"] = e.id;
  j["rank"] = e.rank;
  j["order"] = e.order;
  j["degrees"] = e.degrees;
  j["field"] = e.base ? e.base->n : 1;
  j["extension"] = e.extension();
  j["generators"] = e.gens.size();
  if (e.classes >= 0) j["classes_expected"] = e.classes;
  return j;
}

int mcfin_group_info(const mcfin_group* g, char** json_out) {
  NEED(g);
  NEED(json_out);
  return guard([&] {
    json j = entry_json(g->g->entry);
    j["closure_order"] = g->g->W.size();
    j["reflections"] = g->g->R.refl.size();
    j["classes"] = g->g->R.nclasses;
    *json_out = dup(j.dump(2));
  });
}

int mcfin_catalog_info(const char* id, char** json_out) {
  NEED(id);
  NEED(json_out);
  return guard([&] { *json_out = dup(entry_json(load_catalog(id)).dump(2)); });
}

int mcfin_group_validate(const mcfin_group* g, size_t sample, int* ok, char** json_out) {
  NEED(g);
  NEED(ok);
  return guard([&] {
    Validation v = validate(g->g->entry, g->g->W, g->g->R, sample);
    *ok = v.ok ? 1 : 0;
    if (json_out) {
      json j;
      j["id"] = g->g->entry.id;
      j["ok"] = v.ok;
      j["order"] = v.order;
      j["reflections"] = v.nreflections;
      j["classes"] = v.nclasses;
      j["scanned"] = v.scanned;
      j["problems"] = v.problems;
      *json_out = dup(j.dump(2));
    }
  });
}

int mcfin_group_generators(const mcfin_group* g, mcfin_tuple** out) {
  NEED(g);
  NEED(out);
  return guard([&] { *out = new mcfin_tuple{g->g->entry.gens}; });
}

int mcfin_imprim_construct(int m, int p, int n, int T, int* exists, mcfin_tuple** out, char** json_out) {
  NEED(exists);
  if (m < 1 || p < 1 || n < 1 || T < 1) return fail(MCFIN_ERR_ARG, "m, p, n, T must be positive");
  if (out) *out = nullptr;
  return guard([&] {
    auto w = construct_nice(m, p, n, T);
    *exists = w ? 1 : 0;
    json j;
    j["m"] = m;
    j["p"] = p;
    j["n"] = n;
    j["T"] = T;
    j["exists"] = w.has_value();
    if (w) {
      std::vector<std::string> refl;
      MatTuple mats;
      for (auto& r : w->tuple) {
        refl.push_back(r.str());
        mats.push_back(r.elt(m, p, n).to_matrix());
      }
      j["witness"] = refl;
      j["lambda"] = residues_json(w->lambdas);
      if (out) *out = new mcfin_tuple{mats};
    }
    if (json_out) *json_out = dup(j.dump(2));
  });
}

int mcfin_imprim_verify(int m_max, char** tsv, int* all_agree) {
  NEED(tsv);
  if (m_max < 2 || m_max > 12) return fail(MCFIN_ERR_ARG, "m_max must lie in 2..12");
  return guard([&] {
    std::ostringstream os;
    os << "m\tp\tn\tT\texists\twitness\tlambda\tbrute\tagree\n";
    bool all = true;
    const std::pair<int, int> shapes[] = {{3, 3}, {3, 4}, {4, 4}, {4, 5}};
    for (int m = 2; m <= m_max; ++m)
      for (int p = 1; p <= m; ++p) {
        if (m % p) continue;
        for (auto [n, T] : shapes) {
          auto w = construct_nice(m, p, n, T);
          auto b = brute_nice_search(m, p, n, T, ~0ull, true);
          bool found = !b.tuples.empty();
          // first_only stops early, so completeness only matters for a negative answer
          bool agree = found == w.has_value() && (found || b.complete) && (!w || witness_ok(m, p, n, *w));
          all = all && agree;
          std::string wit = "-", lam = "-";
          if (w) {
            wit.clear();
            for (size_t i = 0; i < w->tuple.size(); ++i) wit += (i ? " " : "") + w->tuple[i].str();
            lam.clear();
            for (size_t i = 0; i < w->lambdas.size(); ++i) lam += (i ? "," : "") + w->lambdas[i].residue();
          }
          os << m << '\t' << p << '\t' << n << '\t' << T << '\t' << (w ? 1 : 0) << '\t' << wit << '\t' << lam << '\t'
             << (found ? 1 : 0) << '\t' << (agree ? "yes" : "NO") << '\n';
        }
      }
    *tsv = dup(os.str());
    if (all_agree) *all_agree = all ? 1 : 0;
  });
}

int mcfin_mc(const mcfin_tuple* t, int d, int k, int check_only, mcfin_tuple** out, char** report) {
  NEED(t);
  if (d < 1) return fail(MCFIN_ERR_ARG, "lambda order must be positive");
  if (out) *out = nullptr;
  return guard([&] {
    Root lam = Root::make(d, k);
    if (lam.d == 1) throw Error("middle convolution needs lambda != 1");
    json j;
    j["lambda"] = lam.residue();
    if (check_only) {
      MatTuple U = unify(t->m);
      const Field* f = field((int)lcml(U[0].fld()->n, lam.d));
      for (auto& m : U)
        if (m.fld() != f) m = m.embed_to(f);
      Cyclo l = Cyclo::root(f, lam);
      auto cd = convolution_data(U, l);
      bool inv = true;
      for (auto& B : cd.B) inv = inv && is_invariant(B, cd.K) && is_invariant(B, cd.L);
      j["predicted"] = predicted_dim(U, l);
      j["dimK"] = cd.K.dim();
      j["dimL"] = cd.L.dim();
      j["dim"] = (int)cd.B[0].dim() - cd.K.dim() - cd.L.dim();
      j["invariant"] = inv;
    } else {
      MCResult r = middle_convolution(t->m, lam);
      j["predicted"] = r.predicted;
      j["dimK"] = r.dimK;
      j["dimL"] = r.dimL;
      j["dim"] = r.tuple.empty() ? 0 : r.tuple[0].dim();
      j["invariant"] = true;
      if (out) *out = new mcfin_tuple{r.tuple};
    }
    if (report) *report = dup(j.dump(2));
  });
}

int mcfin_induce(const mcfin_tuple* t, int field_ext, const char* character, mcfin_tuple** out, char** character_out) {
  NEED(t);
  NEED(out);
  *out = nullptr;
  if (field_ext < 1) return fail(MCFIN_ERR_ARG, "field extension must be positive");
  return guard([&] {
    Induced r = character ? induce_with(t->m, parse_residues(character), field_ext) : induce(t->m, field_ext);
    *out = new mcfin_tuple{r.tuple};
    if (character_out) *character_out = dup(character_str(r.character));
  });
}

int mcfin_orbit(const mcfin_tuple* t, size_t cap, size_t* size, int* complete, char** signatures) {
  NEED(t);
  NEED(size);
  return guard([&] {
    Orbit o = orbit(t->m, cap ? cap : 1000000);
    *size = o.size();
    if (complete) *complete = o.complete ? 1 : 0;
    if (signatures) {
      std::string s;
      for (auto& g : o.sigs) s += g.str() + "\n";
      *signatures = dup(s);
    }
  });
}

int mcfin_same_orbit(const mcfin_tuple* a, const mcfin_tuple* b, size_t cap, int* result) {
  NEED(a);
  NEED(b);
  NEED(result);
  return guard([&] { *result = same_orbit(a->m, b->m, cap ? cap : 1000000) ? 1 : 0; });
}

int mcfin_braid(const mcfin_tuple* t, int i, int inverse, mcfin_tuple** out) {
  NEED(t);
  NEED(out);
  if (i < 1 || (size_t)i >= t->m.size()) return fail(MCFIN_ERR_ARG, "braid index out of range");
  return guard([&] { *out = new mcfin_tuple{inverse ? braid_act_inv(i, t->m) : braid_act(i, t->m)}; });
}

int mcfin_signature(const mcfin_tuple* t, char** out) {
  NEED(t);
  NEED(out);
  return guard([&] { *out = dup(signature(t->m).str()); });
}

int mcfin_residues(const mcfin_tuple* t, char** out) {
  NEED(t);
  NEED(out);
  return guard([&] { *out = dup(residues(t->m).str()); });
}

int mcfin_subgroup(const mcfin_tuple* t, size_t cap, int gl2, char** json_out) {
  NEED(t);
  NEED(json_out);
  return guard([&] {
    size_t c = cap ? cap : 20000;
    SubgroupId s = gl2 ? gl2_subgroup(t->m, c) : subgroup_id(t->m, c);
    *json_out = dup(subgroup_json(s).dump(2));
  });
}

int mcfin_search(const char* group, int T, size_t cap, int twelfth_only, char** json_out) {
  NEED(group);
  NEED(json_out);
  if (T < 2) return fail(MCFIN_ERR_ARG, "T must be at least 2");
  return guard([&] {
    auto G = Group::load(group, false);
    SearchOptions so;
    so.cap = cap;
    so.twelfth_only = twelfth_only != 0;
    SearchResult sr = search_nice(*G, T, so);
    auto types = partition_types(*G, sr.tuples);
    adopt_labels(types, load_exemplars(group, T, G->entry.rank));
    json j;
    j["group"] = group;
    j["T"] = T;
    j["complete"] = sr.complete;
    j["visited"] = sr.visited;
    j["tuples"] = sr.tuples.size();
    json ts = json::array();
    int pairs = 0;
    for (size_t i = 0; i < types.size(); ++i) {
      ts.push_back(type_json(types[i], types));
      if (types[i].inverse > (int)i) ++pairs;
    }
    j["types"] = ts;
    j["inverse_pairs"] = pairs;
    *json_out = dup(j.dump(2));
  });
}

void mcfin_run_options_default(mcfin_run_options* o) {
  if (!o) return;
  RunOptions d;
  o->orbit_cap = d.orbit_cap;
  o->subgroup_cap = d.subgroup_cap;
  o->search = d.search ? 1 : 0;
  o->search_cap = d.search_opt.cap;
  o->twelfth_only = d.search_opt.twelfth_only ? 1 : 0;
  o->member_limit = d.member_limit;
  o->appendix_characters = d.appendix_characters ? 1 : 0;
  o->inverse_types = d.inverse_types ? 1 : 0;
  o->check_inverse = d.check_inverse ? 1 : 0;
  o->threads = d.search_opt.threads;
}

int mcfin_run_group(const char* group, int T, const mcfin_run_options* opt, mcfin_run** out) {
  NEED(group);
  NEED(out);
  *out = nullptr;
  return guard([&] {
    mcfin_run_options o;
    mcfin_run_options_default(&o);
    if (opt) o = *opt;
    RunOptions ro;
    ro.orbit_cap = o.orbit_cap;
    ro.subgroup_cap = o.subgroup_cap;
    ro.search = o.search != 0;
    ro.search_opt.cap = o.search_cap;
    ro.search_opt.twelfth_only = o.twelfth_only != 0;
    ro.search_opt.threads = o.threads;
    ro.member_limit = o.member_limit;
    ro.appendix_characters = o.appendix_characters != 0;
    ro.inverse_types = o.inverse_types != 0;
    ro.check_inverse = o.check_inverse != 0;
    *out = new mcfin_run{run_group(group, T, ro)};
  });
}

void mcfin_run_free(mcfin_run* r) { delete r; }

int mcfin_run_row_count(const mcfin_run* r, size_t* n) {
  NEED(r);
  NEED(n);
  *n = r->r.rows.size();
  return MCFIN_OK;
}

int mcfin_run_distinct_orbits(const mcfin_run* r, int* n) {
  NEED(r);
  NEED(n);
  *n = r->r.distinct_orbits;
  return MCFIN_OK;
}

int mcfin_run_summary(const mcfin_run* r, char** json_out) {
  NEED(r);
  NEED(json_out);
  return guard([&] {
    const RunResult& R = r->r;
    json j;
    j["group"] = R.group;
    j["T"] = R.T;
    j["search_complete"] = R.search_complete;
    j["distinct_orbits"] = R.distinct_orbits;
    json ts = json::array();
    for (auto& t : R.types) ts.push_back(type_json(t, R.types));
    j["types"] = ts;
    json rows = json::array();
    for (auto& row : R.rows) rows.push_back(row_json(row));
    j["rows"] = rows;
    json cs = json::array();
    for (auto& c : R.checks) cs.push_back({{"type", c.type}, {"checked", c.checked}, {"landed", c.landed}, {"misses", c.misses},
                    {"inverse_checked", c.inverse_checked}, {"inverse_landed", c.inverse_landed}});
    j["checks"] = cs;
    *json_out = dup(j.dump(2));
  });
}

int mcfin_run_report(const mcfin_run* r, const char* format, char** out) {
  NEED(r);
  NEED(out);
  std::string f = format ? format : "tsv";
  if (f != "tsv" && f != "md") return fail(MCFIN_ERR_ARG, "format must be tsv or md");
  return guard([&] { *out = dup(report(r->r.rows, f)); });
}

int mcfin_run_store(const mcfin_run* r, const char* dir, char** index_path) {
  NEED(r);
  NEED(dir);
  return guard([&] {
    std::string p;
    try {
      p = store_rows(dir, r->r.rows);
    } catch (const std::filesystem::filesystem_error& e) {
      throw IoError(e.what());
    }
    if (index_path) *index_path = dup(p);
  });
}

int mcfin_report_dir(const char* dir, const char* format, char** out) {
  NEED(dir);
  NEED(out);
  std::string f = format ? format : "tsv";
  if (f != "tsv" && f != "md") return fail(MCFIN_ERR_ARG, "format must be tsv or md");
  return guard([&] {
    if (!std::filesystem::is_directory(dir)) throw IoError(std::string("no such directory: ") + dir);
    *out = dup(report(read_store(dir), f));
  });
}

}  // extern "C"
