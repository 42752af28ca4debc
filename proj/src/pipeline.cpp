#include "mcfin/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace fs = std::filesystem;

namespace mcfin {

namespace {

Root parse_residue(const std::string& s) {
  auto sl = s.find('/');
  if (sl == std::string::npos) {
    long v = std::stol(s);
    if (v != 0 && v != 1) throw Error("bad residue: " + s);
    return Root{1, 0};
  }
  return Root::make(std::stol(s.substr(sl + 1)), std::stol(s.substr(0, sl)));
}

std::vector<Root> parse_residues(const std::string& s) {
  std::vector<Root> r;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) r.push_back(parse_residue(tok));
  return r;
}

std::string residues_csv(const std::vector<Root>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].residue();
  return s;
}

// order of a finite-order matrix, by powers
int matrix_order(const Mat& P, int bound) {
  Mat x = P;
  for (int k = 1; k <= bound; ++k) {
    if (x.is_identity()) return k;
    x = x * P;
  }
  throw Error("product has no finite order below " + std::to_string(bound));
}

std::vector<Root> expand(const std::vector<std::pair<Root, int>>& sp) {
  std::vector<Root> r;
  for (auto& [z, c] : sp)
    for (int i = 0; i < c; ++i) r.push_back(z);
  std::sort(r.begin(), r.end());
  return r;
}

// spectrum of P^-1 via the order of P
std::vector<std::pair<Root, int>> inverse_spectrum_pairs(const Mat& P, int bound) {
  int ord = matrix_order(P, bound);
  auto sp = root_spectrum(charpoly(P), ord);
  std::vector<std::pair<Root, int>> r;
  for (auto& [z, c] : sp) r.push_back({z.inv(), c});
  std::sort(r.begin(), r.end());
  return r;
}

std::string mat_inline(const Mat& m) {
  std::string s = "[";
  for (int i = 0; i < m.rows(); ++i) {
    s += i ? "; " : "";
    for (int j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).pretty();
  }
  return s + "]";
}

bool nice_spectrum(const std::vector<std::pair<Root, int>>& sp, int T, bool twelfth) {
  for (auto& [z, c] : sp)
    if (z.d != 1 && c == T - 2 && (!twelfth || 12 % z.d == 0)) return true;
  return false;
}

}  // namespace

MatTuple NiceTuple::mats(const Group& G) const {
  MatTuple r;
  for (int i : refl) r.push_back(G.R.refl[i].m);
  return r;
}

std::vector<Root> inverse_spectrum(const MatTuple& A, int N) { return expand(inverse_spectrum_pairs(product(A), N)); }

bool is_nice(const Group& G, const MatTuple& A0, std::string* why) {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  if (A0.empty()) return fail("empty tuple");
  MatTuple A;
  for (auto& a : A0) {
    Mat b = a;
    if (b.fld() != G.W.f) {
      if (b.fld()->n % G.W.f->n == 0)
        b = descend(b, G.W.f->n);
      else if (G.W.f->n % b.fld()->n == 0)
        b = b.embed_to(G.W.f);
      else
        return fail("entry field does not match the group");
    }
    if (G.W.find(b) < 0) return fail("entry not in the group");
    if ((b - Mat::identity(G.W.f, b.dim())).rank() != 1) return fail("entry is not a reflection");
    A.push_back(b);
  }
  if (!generates(A, G.W)) return fail("entries do not generate the group");
  int T = (int)A.size();
  if (!nice_spectrum(inverse_spectrum_pairs(product(A), G.entry.extension()), T, false))
    return fail("no eigenvalue != 1 of multiplicity T-2");
  return true;
}

SearchResult search_nice(Group& G, int T, const SearchOptions& opt) {
  if (T < 2) throw Error("search_nice: T must be at least 2");
  const auto& tbl = G.refl_table();
  int nr = (int)G.R.refl.size();
  int n = G.W.n;
  int bound = G.entry.extension();
  SearchResult res;
  std::unordered_map<int, int> spec_idx;  // element -> index into spectra
  std::vector<std::vector<std::pair<Root, int>>> spectra;
  std::vector<char> spec_nice;
  std::map<std::vector<int>, bool> gen_memo;
  std::vector<int> cur(T);
  size_t order = G.W.size();

  auto spectrum_of = [&](int g) -> int {
    auto it = spec_idx.find(g);
    if (it != spec_idx.end()) return it->second;
    auto sp = inverse_spectrum_pairs(G.W.mat(g), bound);
    int k = (int)spectra.size();
    spectra.push_back(sp);
    spec_nice.push_back(nice_spectrum(sp, T, opt.twelfth_only));
    spec_idx[g] = k;
    return k;
  };
  auto generates_set = [&](const std::vector<int>& t) {
    std::vector<int> s(t);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if ((int)s.size() < n) return false;
    auto it = gen_memo.find(s);
    if (it != gen_memo.end()) return it->second;
    std::vector<const std::vector<int32_t>*> rows;
    for (int r : s) rows.push_back(&tbl[r]);
    bool ok = generates_rows(rows, order);
    gen_memo[s] = ok;
    return ok;
  };

  // fill positions T-1 down to 0; suffix = A_{pos+1} ... A_T as an element index
  std::function<bool(int, int)> rec = [&](int pos, int suffix) -> bool {
    if (pos < 0) {
      ++res.visited;
      int k = spectrum_of(suffix);
      if (spec_nice[k] && generates_set(cur)) {
        NiceTuple t;
        t.refl = cur;
        t.product = suffix;
        t.inv_eigs = expand(spectra[k]);
        res.tuples.push_back(std::move(t));
      }
      return !(opt.cap && res.visited >= opt.cap);
    }
    if (pos == 0) {
      for (int r : G.R.reps) {
        cur[0] = r;
        if (!rec(-1, tbl[r][suffix])) return false;
      }
      return true;
    }
    for (int r = 0; r < nr; ++r) {
      cur[pos] = r;
      if (!rec(pos - 1, tbl[r][suffix])) return false;
    }
    return true;
  };
  res.complete = rec(T - 1, 0);
  if (!res.complete) {
    // the last visit may have been the final tuple
    size_t total = G.R.reps.size();
    for (int i = 1; i < T; ++i) total *= nr;
    res.complete = res.visited >= total;
  }
  std::sort(res.tuples.begin(), res.tuples.end(), [](const NiceTuple& a, const NiceTuple& b) { return a.refl < b.refl; });
  return res;
}

std::string key_str(const std::vector<Root>& key) {
  std::string s = "{";
  for (size_t i = 0; i < key.size(); ++i) s += (i ? ", " : "") + key[i].residue();
  return s + "}";
}

std::vector<Root> inverted(const std::vector<Root>& key) {
  std::vector<Root> r;
  for (auto& z : key) r.push_back(z.inv());
  std::sort(r.begin(), r.end());
  return r;
}

namespace {

std::string type_label(size_t i) {
  std::string s;
  do {
    s.insert(s.begin(), char('A' + i % 26));
    i /= 26;
  } while (i-- > 0);
  return s;
}

void pair_inverses(std::vector<TupleType>& types) {
  for (auto& t : types) {
    t.inverse = -1;
    auto inv = inverted(t.key);
    for (size_t j = 0; j < types.size(); ++j)
      if (types[j].key == inv) t.inverse = (int)j;
  }
}

}  // namespace

std::vector<TupleType> partition_types(const Group& G, const std::vector<NiceTuple>& tuples, size_t member_limit) {
  std::map<std::vector<Root>, TupleType> by;
  for (auto& t : tuples) {
    auto& ty = by[t.inv_eigs];
    if (ty.members == 0 || t.refl < ty.exemplar_refl) {
      ty.exemplar_refl = t.refl;
      ty.key = t.inv_eigs;
    }
    ++ty.members;
    if (ty.sample.size() < member_limit) ty.sample.push_back(t.mats(G));
  }
  std::vector<TupleType> out;
  for (auto& [k, ty] : by) {
    ty.label = type_label(out.size());
    NiceTuple e;
    e.refl = ty.exemplar_refl;
    ty.exemplar = e.mats(G);
    out.push_back(std::move(ty));
  }
  pair_inverses(out);
  return out;
}

std::vector<TupleType> load_exemplars(const std::string& group, int T, int N) {
  fs::path dir = fs::path(data_dir()) / "exemplars";
  std::string prefix = group + "_T" + std::to_string(T) + "_";
  std::vector<std::pair<std::string, fs::path>> files;
  if (fs::exists(dir))
    for (auto& e : fs::directory_iterator(dir)) {
      std::string name = e.path().filename().string();
      if (name.rfind(prefix, 0) == 0 && e.path().extension() == ".txt")
        files.push_back({name.substr(prefix.size(), name.size() - prefix.size() - 4), e.path()});
    }
  std::sort(files.begin(), files.end());
  std::vector<TupleType> out;
  for (auto& [label, path] : files) {
    TupleType t;
    t.label = label;
    t.exemplar = read_mats(path.string());
    if ((int)t.exemplar.size() != T) throw Error("exemplar " + path.string() + " does not hold " + std::to_string(T) + " matrices");
    t.key = inverse_spectrum(t.exemplar, N);
    t.members = 1;
    out.push_back(std::move(t));
  }
  pair_inverses(out);
  return out;
}

void adopt_labels(std::vector<TupleType>& types, const std::vector<TupleType>& shipped) {
  std::vector<std::string> labels(types.size());
  std::set<std::string> used;
  for (size_t i = 0; i < types.size(); ++i)
    for (auto& s : shipped)
      if (s.key == types[i].key) labels[i] = s.label;
  for (size_t i = 0; i < types.size(); ++i)
    if (labels[i].empty() && types[i].inverse >= 0 && !labels[types[i].inverse].empty() && types[i].inverse != (int)i)
      labels[i] = labels[types[i].inverse] + "'";
  for (auto& l : labels) used.insert(l);
  size_t next = 0;
  for (size_t i = 0; i < types.size(); ++i) {
    if (labels[i].empty()) {
      std::string l;
      do l = "x" + std::to_string(++next);
      while (used.count(l));
      labels[i] = l;
      used.insert(l);
    }
    types[i].label = labels[i];
  }
}

std::vector<AppendixRow> load_appendix(const std::string& path0) {
  std::string path = path0.empty() ? (fs::path(data_dir()) / "fixtures" / "appendix.tsv").string() : path0;
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<AppendixRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::vector<std::string> f;
    std::string tok;
    while (std::getline(ss, tok, '\t')) f.push_back(tok);
    if (f.size() != 8) throw Error("bad appendix line: " + line);
    AppendixRow r;
    r.group = f[0];
    r.T = std::stoi(f[1]);
    r.type = f[2];
    r.xi = parse_residue(f[3]).residue();
    r.character = parse_residues(f[4]);
    r.osize = f[5];
    r.ssize = f[6];
    r.sl2 = f[7];
    rows.push_back(std::move(r));
  }
  return rows;
}

const AppendixRow* find_appendix(const std::vector<AppendixRow>& rows, const std::string& group, int T,
                                 const std::string& type, const std::string& xi) {
  for (auto& r : rows)
    if (r.group == group && r.T == T && r.type == type && r.xi == xi) return &r;
  return nullptr;
}

std::string ReportRow::id() const {
  std::string x = xi.residue();
  std::replace(x.begin(), x.end(), '/', '-');
  return group + "_T" + std::to_string(T) + "_" + type + "_" + x;
}

namespace {

std::string sl2_code(const SubgroupId& s) {
  if (s.inconclusive) return "inconclusive";
  if (!s.finite) return "0";
  return std::to_string(s.order) + "," + std::to_string(s.small_id);
}

}  // namespace

std::vector<ReportRow> mc_rows(const std::string& group, int T, const std::string& type, const MatTuple& A,
                               const RunOptions& opt, const std::vector<AppendixRow>* appendix) {
  std::vector<ReportRow> rows;
  int bound = 1;
  try {
    bound = load_catalog(group).extension();
  } catch (const Error&) {
    bound = 5040;
  }
  for (auto& [lam, mult] : inverse_spectrum_pairs(product(A), bound)) {
    if (lam.d == 1) continue;
    ReportRow r;
    r.group = group;
    r.T = T;
    r.type = type;
    r.xi = lam;
    r.lambda = Cyclo::root(field(lam.d), lam).pretty();
    r.multiplicity = mult;
    r.dim = predicted_dim(A, Cyclo::root(field((int)lcml(lam.d, unify(A)[0].fld()->n)), lam));
    if (r.dim != 2) {
      r.note = "MC dimension " + std::to_string(r.dim);
      rows.push_back(std::move(r));
      continue;
    }
    auto mc = middle_convolution(A, lam);
    r.mc = mc.tuple;
    auto g = gl2_subgroup(mc.tuple, opt.subgroup_cap);
    r.ssize = g.inconclusive ? -1 : g.finite ? (long long)g.order : 0;
    const AppendixRow* ap = appendix ? find_appendix(*appendix, group, T, type, lam.residue()) : nullptr;
    Induced in;
    bool done = false;
    if (ap && opt.appendix_characters) {
      try {
        in = induce_with(mc.tuple, ap->character);
        r.character_source = "appendix";
        done = true;
      } catch (const Error&) {
        r.note = "tabulated character does not fit this MC output; default used";
      }
    }
    if (!done) {
      in = induce(mc.tuple);
      r.character_source = "default";
    }
    r.character = in.character;
    r.induced = in.tuple;
    auto o = orbit(in.tuple, opt.orbit_cap);
    r.orbit = o.size();
    r.orbit_complete = o.complete;
    auto s = subgroup_id(in.tuple, opt.subgroup_cap);
    r.sl2 = sl2_code(s);
    r.sl2_label = s.label;
    MatTuple reduced;
    for (auto& m : in.tuple) {
      if (m.is_identity())
        r.identity_entry = true;
      else
        reduced.push_back(m);
    }
    if (r.identity_entry) {
      r.note += std::string(r.note.empty() ? "" : "; ") + "reduces to " + std::to_string(reduced.size()) + "-tuple";
      if (reduced.size() >= 4) {
        auto ro = orbit(reduced, opt.orbit_cap);
        r.reduced_orbit = ro.complete ? (long long)ro.size() : -(long long)ro.size();
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

bool inverse_consistent(const MatTuple& A, Root lambda, size_t cap) {
  auto fwd = induce(middle_convolution(A, lambda).tuple).tuple;
  auto back = induce(middle_convolution(inverse_tuple(A), lambda.inv()).tuple).tuple;
  Orbit o = orbit(back, cap);
  return same_orbit_up_to_signs(o, inverse_tuple(fwd));
}

int classify_orbits(std::vector<ReportRow>& rows, size_t cap) {
  std::vector<int> idx;
  for (size_t i = 0; i < rows.size(); ++i)
    if (rows[i].dim == 2 && !rows[i].induced.empty()) idx.push_back((int)i);
  std::vector<int> parent(rows.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::map<int, Orbit> orbits;
  for (size_t a = 0; a < idx.size(); ++a) {
    int i = idx[a];
    for (size_t b = a + 1; b < idx.size(); ++b) {
      int j = idx[b];
      if (find(i) == find(j)) continue;
      if (rows[i].induced.size() != rows[j].induced.size()) continue;
      if (rows[i].orbit_complete && rows[j].orbit_complete && rows[i].orbit != rows[j].orbit) continue;
      if (!orbits.count(i)) orbits.emplace(i, orbit(rows[i].induced, cap));
      bool same = false;
      try {
        same = same_orbit(orbits.at(i), rows[j].induced);
      } catch (const CapExceeded&) {
      }
      if (same) parent[find(j)] = find(i);
    }
  }
  std::map<int, int> cls;
  for (int i : idx) {
    int r = find(i);
    if (!cls.count(r)) cls[r] = (int)cls.size();
    rows[i].orbit_class = cls[r];
  }
  return (int)cls.size();
}

RunResult run_group(const std::string& group, int T, const RunOptions& opt) {
  RunResult res;
  res.group = group;
  res.T = T;
  CatalogEntry entry = load_catalog(group);
  int N = entry.extension();
  std::vector<TupleType> shipped = load_exemplars(group, T, N);
  if (opt.search) {
    auto G = Group::load(group, false);
    auto sr = search_nice(*G, T, opt.search_opt);
    res.search_complete = sr.complete;
    res.types = partition_types(*G, sr.tuples, opt.member_limit);
    adopt_labels(res.types, shipped);
  } else {
    res.types = shipped;
  }
  std::vector<AppendixRow> appendix;
  try {
    appendix = load_appendix();
  } catch (const Error&) {
  }
  for (size_t t = 0; t < res.types.size(); ++t) {
    auto& ty = res.types[t];
    if (!opt.inverse_types && ty.inverse >= 0 && ty.inverse != (int)t) {
      // one type per inverse pair; prefer the unprimed label
      const auto& other = res.types[ty.inverse];
      bool primed = ty.label.back() == '\'';
      bool other_primed = other.label.back() == '\'';
      if (primed != other_primed ? primed : ty.inverse < (int)t) continue;
    }
    auto rows = mc_rows(group, T, ty.label, ty.exemplar, opt, &appendix);
    // step 9: other members and the inverse tuple land in the exemplar's orbits
    if (!ty.sample.empty() || opt.check_inverse) {
      StepNine chk;
      chk.type = ty.label;
      if (opt.check_inverse)
        for (auto& r : rows) {
          if (r.dim != 2) continue;
          ++chk.inverse_checked;
          if (inverse_consistent(ty.exemplar, r.xi, opt.orbit_cap))
            ++chk.inverse_landed;
          else
            chk.misses.push_back("inverse " + r.xi.residue());
        }
      for (auto& r : rows) {
        if (r.dim != 2) continue;
        Orbit o = orbit(r.induced, opt.orbit_cap);
        for (auto& m : ty.sample) {
          ++chk.checked;
          auto mc = middle_convolution(m, r.xi);
          auto in = induce(mc.tuple);
          if (same_orbit_up_to_signs(o, in.tuple))
            ++chk.landed;
          else
            chk.misses.push_back(r.xi.residue());
        }
      }
      res.checks.push_back(std::move(chk));
    }
    for (auto& r : rows) res.rows.push_back(std::move(r));
  }
  res.distinct_orbits = classify_orbits(res.rows, opt.orbit_cap);
  return res;
}

namespace {

std::string row_text(const ReportRow& r) {
  std::ostringstream os;
  os << "group=" << r.group << "\nT=" << r.T << "\ntype=" << r.type << "\nxi=" << r.xi.residue() << "\nlambda=" << r.lambda
     << "\nmultiplicity=" << r.multiplicity << "\ndim=" << r.dim << "\ncharacter=" << residues_csv(r.character)
     << "\ncharacter_source=" << r.character_source << "\norbit=" << r.orbit << "\norbit_complete=" << r.orbit_complete
     << "\nssize=" << r.ssize << "\nsl2=" << r.sl2 << "\nsl2_label=" << r.sl2_label
     << "\nidentity_entry=" << r.identity_entry << "\nreduced_orbit=" << r.reduced_orbit
     << "\norbit_class=" << r.orbit_class << "\nnote=" << r.note << "\n";
  os << "[mc]\n" << mats_str(r.mc) << "[induced]\n" << mats_str(r.induced);
  return os.str();
}

ReportRow parse_row(const std::string& text) {
  ReportRow r;
  std::istringstream is(text);
  std::string line, section, mc, ind;
  while (std::getline(is, line)) {
    if (line == "[mc]" || line == "[induced]") {
      section = line;
      continue;
    }
    if (section == "[mc]") {
      mc += line + "\n";
      continue;
    }
    if (section == "[induced]") {
      ind += line + "\n";
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq), v = line.substr(eq + 1);
    if (k == "group") r.group = v;
    else if (k == "T") r.T = std::stoi(v);
    else if (k == "type") r.type = v;
    else if (k == "xi") r.xi = parse_residue(v);
    else if (k == "lambda") r.lambda = v;
    else if (k == "multiplicity") r.multiplicity = std::stoi(v);
    else if (k == "dim") r.dim = std::stoi(v);
    else if (k == "character") r.character = v.empty() ? std::vector<Root>{} : parse_residues(v);
    else if (k == "character_source") r.character_source = v;
    else if (k == "orbit") r.orbit = std::stoul(v);
    else if (k == "orbit_complete") r.orbit_complete = v == "1";
    else if (k == "ssize") r.ssize = std::stoll(v);
    else if (k == "sl2") r.sl2 = v;
    else if (k == "sl2_label") r.sl2_label = v;
    else if (k == "identity_entry") r.identity_entry = v == "1";
    else if (k == "reduced_orbit") r.reduced_orbit = std::stoll(v);
    else if (k == "orbit_class") r.orbit_class = std::stoi(v);
    else if (k == "note") r.note = v;
  }
  if (!mc.empty()) r.mc = parse_mats(mc);
  if (!ind.empty()) r.induced = parse_mats(ind);
  return r;
}

std::string osize_str(const ReportRow& r) {
  if (r.dim != 2) return "-";
  return (r.orbit_complete ? "" : ">=") + std::to_string(r.orbit);
}

std::string ssize_str(const ReportRow& r) {
  if (r.dim != 2) return "-";
  return r.ssize < 0 ? "?" : std::to_string(r.ssize);
}

}  // namespace

std::string store_rows(const std::string& dir, const std::vector<ReportRow>& rows) {
  std::map<fs::path, std::vector<std::pair<std::string, const ReportRow*>>> by_dir;
  for (auto& r : rows) {
    fs::path d = fs::path(dir) / r.group / ("T" + std::to_string(r.T));
    fs::create_directories(d);
    std::string text = row_text(r);
    std::ostringstream h;
    h << std::hex << std::setw(16) << std::setfill('0') << std::hash<std::string>{}(text);
    std::string file = h.str() + ".row";
    std::ofstream(d / file) << text;
    by_dir[d].push_back({file, &r});
  }
  for (auto& [d, entries] : by_dir) {
    // merge with an existing index, newest entry per row id wins
    std::map<std::string, std::string> idx;
    std::ifstream old(d / "index.tsv");
    std::string line;
    while (std::getline(old, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto tab = line.find('\t');
      if (tab != std::string::npos) idx[line.substr(0, tab)] = line;
    }
    for (auto& [file, r] : entries)
      idx[r->id()] = r->id() + "\t" + file + "\t" + osize_str(*r) + "\t" + ssize_str(*r) + "\t" + (r->sl2.empty() ? "-" : r->sl2);
    fs::path tmp = d / "index.tsv.tmp";
    {
      std::ofstream out(tmp);
      out << "# id\tfile\tosize\tssize\tsl2\n";
      for (auto& [k, v] : idx) out << v << "\n";
    }
    fs::rename(tmp, d / "index.tsv");
  }
  return dir;
}

std::vector<ReportRow> read_store(const std::string& dir) {
  std::vector<ReportRow> rows;
  if (!fs::exists(dir)) throw Error("no result store at " + dir);
  std::vector<fs::path> indexes;
  for (auto& e : fs::recursive_directory_iterator(dir))
    if (e.path().filename() == "index.tsv") indexes.push_back(e.path());
  std::sort(indexes.begin(), indexes.end());
  for (auto& ip : indexes) {
    std::ifstream in(ip);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::stringstream ss(line);
      std::string id, file;
      std::getline(ss, id, '\t');
      std::getline(ss, file, '\t');
      std::ifstream f(ip.parent_path() / file);
      if (!f) throw Error("index names a missing row file: " + file);
      std::stringstream buf;
      buf << f.rdbuf();
      rows.push_back(parse_row(buf.str()));
    }
  }
  return rows;
}

std::string report(const std::vector<ReportRow>& rows, const std::string& format) {
  std::ostringstream os;
  if (format == "tsv") {
    os << "group\tT\ttype\txi\tlambda\tmatrices\tcharacter\tosize\tssize\tsl2\tnote\n";
    for (auto& r : rows) {
      std::string ms;
      for (size_t i = 0; i < r.mc.size(); ++i) ms += (i ? " " : "") + mat_inline(r.mc[i]);
      os << r.group << "\t" << r.T << "\t" << r.type << "\t" << r.xi.residue() << "\t" << r.lambda << "\t"
         << (ms.empty() ? "-" : ms) << "\t" << (r.character.empty() ? "-" : character_str(r.character)) << "\t"
         << osize_str(r) << "\t" << ssize_str(r) << "\t" << (r.sl2.empty() ? "-" : r.sl2) << "\t" << r.note << "\n";
    }
    return os.str();
  }
  if (format != "md") throw Error("report format must be tsv or md");
  std::string cur;
  for (auto& r : rows) {
    std::string head = r.group + " T=" + std::to_string(r.T);
    if (head != cur) {
      cur = head;
      os << "\n### " << r.group << ", " << r.T << "-tuples\n\n| Type | ξ | λ |";
      for (int i = 1; i <= r.T; ++i) os << " M" << i << " |";
      os << " Character | O. Size | S. Size | SL2 |\n|---|---|---|";
      for (int i = 1; i <= r.T; ++i) os << "---|";
      os << "---|---|---|---|\n";
    }
    os << "| " << r.type << " | " << r.xi.residue() << " | " << r.lambda << " |";
    for (int i = 0; i < r.T; ++i) os << " " << (i < (int)r.mc.size() ? mat_inline(r.mc[i]) : "-") << " |";
    os << " " << (r.character.empty() ? "-" : character_str(r.character)) << " | " << osize_str(r) << " | "
       << ssize_str(r) << " | " << (r.sl2.empty() ? "-" : r.sl2) << " |\n";
  }
  return os.str();
}

}  // namespace mcfin
