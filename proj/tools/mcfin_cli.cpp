// mcfin command line front end; talks to the library only through mcfin.h
#include "mcfin/mcfin.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { mcfin_string_free(p); }
  char** operator&() { return &p; }
  std::string s() const { return p ? p : ""; }
};

struct Tuple {
  mcfin_tuple* p = nullptr;
  ~Tuple() { mcfin_tuple_free(p); }
};

// exit codes: 0 ok, 1 usage, 2 refused, 10 + mcfin_status on library errors
int check(int rc) {
  if (rc != MCFIN_OK) {
    std::cerr << "error: " << mcfin_last_error() << "\n";
    throw CLI::RuntimeError(10 + rc);
  }
  return rc;
}

void read_tuple(const std::string& path, Tuple& t) { check(mcfin_tuple_read(path.c_str(), &t.p)); }

void emit_tuple(mcfin_tuple* t, const std::string& out) {
  if (!out.empty()) {
    check(mcfin_tuple_write(t, out.c_str()));
    std::cout << "wrote " << out << "\n";
  } else {
    Str s;
    check(mcfin_tuple_str(t, &s));
    std::cout << s.s();
  }
}

bool parse_lambda(const std::string& s, int& d, int& k) {
  auto c = s.find(':');
  if (c == std::string::npos) return false;
  try {
    d = std::stoi(s.substr(0, c));
    k = std::stoi(s.substr(c + 1));
  } catch (const std::exception&) {
    return false;
  }
  return d > 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mcfin: reflection groups, middle convolution and braid orbits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mcfin_version()));

  // group
  auto* group = app.add_subcommand("group", "catalog groups G23..G32 and G(m,p,n)");
  group->require_subcommand(1);
  std::string gid;
  size_t sample = 0;
  auto* ginfo = group->add_subcommand("info", "order, degrees, field and reflection classes");
  ginfo->add_option("id", gid, "group id, e.g. G25 or G(4,2,3)")->required();
  auto* gval = group->add_subcommand("validate", "closure order, reflection classes, degree condition");
  gval->add_option("id", gid, "group id")->required();
  gval->add_option("--sample", sample, "elements to scan, 0 = all");

  // imprim
  auto* imprim = app.add_subcommand("imprim", "imprimitive groups G(m,p,n)");
  imprim->require_subcommand(1);
  int m = 0, p = 0, n = 0, T = 0, mmax = 6;
  std::string out;
  auto* icon = imprim->add_subcommand("construct", "explicit nice tuple");
  icon->add_option("--m", m)->required();
  icon->add_option("--p", p)->required();
  icon->add_option("--n", n)->required();
  icon->add_option("--T", T)->required();
  icon->add_option("--out", out, "write the tuple here");
  auto* iver = imprim->add_subcommand("verify", "construction against exhaustive search");
  iver->add_option("--m-max", mmax, "largest m")->check(CLI::Range(2, 12));

  // mc
  auto* mc = app.add_subcommand("mc", "middle convolution");
  std::string tuple, lambda, tuple2;
  bool check_only = false;
  mc->add_option("--tuple", tuple)->required()->check(CLI::ExistingFile);
  mc->add_option("--lambda", lambda, "d:k for zeta_d^k")->required();
  mc->add_flag("--check-only", check_only, "report dimensions and invariance only");
  mc->add_option("--out", out, "write the output tuple here");

  // induce
  auto* ind = app.add_subcommand("induce", "append the inverse product and scale into SL2");
  int fext = 1;
  std::string character;
  ind->add_option("--tuple", tuple)->required()->check(CLI::ExistingFile);
  ind->add_option("--field-extension", fext)->check(CLI::PositiveNumber);
  ind->add_option("--character", character, "T+1 residues, comma separated");
  ind->add_option("--out", out);

  // orbit
  auto* orb = app.add_subcommand("orbit", "braid orbit of an SL2 tuple");
  size_t cap = 0;
  bool emit = false;
  orb->add_option("--tuple", tuple)->required()->check(CLI::ExistingFile);
  orb->add_option("--cap", cap, "signature cap (default 10^6)");
  orb->add_flag("--emit-signatures", emit);
  orb->add_option("--same-as", tuple2, "also test whether this tuple lies in the orbit")->check(CLI::ExistingFile);

  // braid
  auto* br = app.add_subcommand("braid", "apply one braid generator");
  int bi = 1;
  bool binv = false;
  br->add_option("--tuple", tuple)->required()->check(CLI::ExistingFile);
  br->add_option("--i", bi)->required();
  br->add_flag("--inverse", binv);
  br->add_option("--out", out);

  // subgroup
  auto* sub = app.add_subcommand("subgroup", "finite or infinite generated subgroup");
  bool gl2 = false;
  sub->add_option("--tuple", tuple)->required()->check(CLI::ExistingFile);
  sub->add_option("--cap", cap, "closure cap (default 20000)");
  sub->add_flag("--gl2", gl2, "no det 1 requirement, order only");

  auto* res = app.add_subcommand("residues", "trace residues of a 4- or 5-tuple");
  res->add_option("--tuple", tuple)->required()->check(CLI::ExistingFile);

  // search
  auto* srch = app.add_subcommand("search", "nice tuples and their types");
  std::string grp;
  size_t scap = 0;
  bool unbounded = false;
  srch->add_option("--group", grp)->required();
  srch->add_option("--T", T)->required();
  srch->add_option("--cap", scap, "ordered tuples visited, 0 = none");
  srch->add_flag("--unbounded", unbounded, "allow the G32 5-tuple search");

  // run
  auto* run = app.add_subcommand("run", "MC rows, orbits and subgroups for one group");
  bool search = false, as_json = false, inv_types = false, default_char = false, check_inv = false;
  size_t members = 0, rcap = 5000;
  std::string fmt = "tsv";
  run->add_option("--group", grp)->required();
  run->add_option("--T", T)->required();
  run->add_option("--cap", rcap, "orbit cap");
  run->add_option("--out", out, "result store directory");
  run->add_flag("--search", search, "derive types by search, not from shipped exemplars");
  run->add_option("--search-cap", scap);
  run->add_flag("--unbounded", unbounded, "allow the G32 5-tuple search");
  run->add_option("--members", members, "members per type checked against the exemplar orbit");
  run->add_flag("--inverse-types", inv_types, "also run the inverse type of each pair");
  run->add_flag("--check-inverse", check_inv, "inverse tuples must land in the computed orbits");
  run->add_flag("--default-character", default_char, "ignore tabulated characters");
  run->add_option("--format", fmt)->check(CLI::IsMember({"tsv", "md"}));
  run->add_flag("--json", as_json, "print the full summary as JSON");

  // report
  auto* rep = app.add_subcommand("report", "table from a result store");
  std::string dir;
  rep->add_option("--dir", dir)->required()->check(CLI::ExistingDirectory);
  rep->add_option("--format", fmt)->check(CLI::IsMember({"tsv", "md"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ginfo) {
      mcfin_group* g = nullptr;
      check(mcfin_group_load(gid.c_str(), 0, &g));
      std::unique_ptr<mcfin_group, void (*)(mcfin_group*)> hold(g, mcfin_group_free);
      Str s;
      check(mcfin_group_info(g, &s));
      std::cout << s.s() << "\n";
    } else if (*gval) {
      mcfin_group* g = nullptr;
      check(mcfin_group_load(gid.c_str(), 0, &g));
      std::unique_ptr<mcfin_group, void (*)(mcfin_group*)> hold(g, mcfin_group_free);
      Str s;
      int ok = 0;
      check(mcfin_group_validate(g, sample, &ok, &s));
      std::cout << s.s() << "\n";
      return ok ? 0 : 3;
    } else if (*icon) {
      int exists = 0;
      Tuple t;
      Str s;
      check(mcfin_imprim_construct(m, p, n, T, &exists, &t.p, &s));
      std::cout << s.s() << "\n";
      if (t.p && !out.empty()) emit_tuple(t.p, out);
    } else if (*iver) {
      Str s;
      int all = 0;
      check(mcfin_imprim_verify(mmax, &s, &all));
      std::cout << s.s();
      return all ? 0 : 3;
    } else if (*mc) {
      int d = 0, k = 0;
      if (!parse_lambda(lambda, d, k)) {
        std::cerr << "error: --lambda wants d:k\n";
        return 1;
      }
      Tuple in, o;
      read_tuple(tuple, in);
      Str rpt;
      check(mcfin_mc(in.p, d, k, check_only, check_only ? nullptr : &o.p, &rpt));
      std::cerr << rpt.s() << "\n";
      if (o.p) emit_tuple(o.p, out);
    } else if (*ind) {
      Tuple in, o;
      read_tuple(tuple, in);
      Str ch;
      check(mcfin_induce(in.p, fext, character.empty() ? nullptr : character.c_str(), &o.p, &ch));
      std::cerr << "character " << ch.s() << "\n";
      emit_tuple(o.p, out);
    } else if (*orb) {
      Tuple in;
      read_tuple(tuple, in);
      size_t size = 0;
      int complete = 0;
      Str sigs;
      check(mcfin_orbit(in.p, cap, &size, &complete, emit ? &sigs : nullptr));
      if (emit) std::cout << sigs.s();
      std::cerr << "orbit size " << (complete ? "" : ">=") << size << "\n";
      if (!tuple2.empty()) {
        Tuple other;
        read_tuple(tuple2, other);
        int same = 0;
        check(mcfin_same_orbit(in.p, other.p, cap, &same));
        std::cerr << "same orbit: " << (same ? "yes" : "no") << "\n";
      }
    } else if (*br) {
      Tuple in, o;
      read_tuple(tuple, in);
      check(mcfin_braid(in.p, bi, binv, &o.p));
      emit_tuple(o.p, out);
    } else if (*sub) {
      Tuple in;
      read_tuple(tuple, in);
      Str s;
      check(mcfin_subgroup(in.p, cap, gl2, &s));
      std::cout << s.s() << "\n";
    } else if (*res) {
      Tuple in;
      read_tuple(tuple, in);
      Str s;
      check(mcfin_residues(in.p, &s));
      std::cout << s.s() << "\n";
    } else if (*srch || *run) {
      bool g32 = grp == "G32";
      bool searching = *srch || search;
      if (searching && g32 && T == 5 && !unbounded) {
        std::cerr << "refused: the G32 5-tuple search is very large; pass --unbounded to run it\n";
        return 2;
      }
      int twelfth = searching && g32 && T == 4;
      if (*srch) {
        Str s;
        check(mcfin_search(grp.c_str(), T, scap, twelfth, &s));
        std::cout << s.s() << "\n";
        return 0;
      }
      mcfin_run_options o;
      mcfin_run_options_default(&o);
      o.orbit_cap = rcap;
      o.search = search;
      o.search_cap = scap;
      o.twelfth_only = twelfth;
      o.member_limit = members;
      o.inverse_types = inv_types;
      o.check_inverse = check_inv;
      o.appendix_characters = !default_char;
      mcfin_run* r = nullptr;
      check(mcfin_run_group(grp.c_str(), T, &o, &r));
      std::unique_ptr<mcfin_run, void (*)(mcfin_run*)> hold(r, mcfin_run_free);
      if (!out.empty()) {
        Str idx;
        check(mcfin_run_store(r, out.c_str(), &idx));
        std::cerr << "stored " << idx.s() << "\n";
      }
      Str s;
      if (as_json)
        check(mcfin_run_summary(r, &s));
      else
        check(mcfin_run_report(r, fmt.c_str(), &s));
      std::cout << s.s();
      int distinct = 0;
      check(mcfin_run_distinct_orbits(r, &distinct));
      std::cerr << "distinct orbits " << distinct << "\n";
    } else if (*rep) {
      Str s;
      check(mcfin_report_dir(dir.c_str(), fmt.c_str(), &s));
      std::cout << s.s();
    }
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();
  }
  return 0;
}
