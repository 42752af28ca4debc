#include "mcfin/cyclo.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace mcfin {

long gcdl(long a, long b) { return std::gcd(a, b); }
long lcml(long a, long b) { return a / std::gcd(a, b) * b; }

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

namespace {

std::recursive_mutex g_field_mu;
std::map<int, std::unique_ptr<Field>> g_fields;

// exact division of integer polys, b monic
std::vector<long> polydiv(std::vector<long> a, const std::vector<long>& b) {
  int da = (int)a.size() - 1, db = (int)b.size() - 1;
  std::vector<long> q(da - db + 1, 0);
  for (int i = da; i >= db; --i) {
    long c = a[i];
    q[i - db] = c;
    if (c)
      for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (int i = 0; i < db; ++i)
    if (a[i] != 0) throw Error("cyclotomic division left a remainder");
  return q;
}

Field* build_field(int n) {
  auto f = std::make_unique<Field>();
  f->n = n;
  std::vector<long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = polydiv(p, g_fields.at(d)->phi);
  f->phi = p;
  f->deg = (int)p.size() - 1;
  int D = f->deg;
  if (D != euler_phi(n)) throw Error("bad cyclotomic degree");
  // x^D = -sum phi_i x^i
  std::vector<long> cur(D, 0);
  for (int i = 0; i < D; ++i) cur[i] = -p[i];
  for (int j = 0; j + 1 < D; ++j) {
    f->red.push_back(cur);
    std::vector<long> nx(D, 0);
    long top = cur[D - 1];
    for (int i = D - 1; i > 0; --i) nx[i] = cur[i - 1];
    for (int i = 0; i < D; ++i) nx[i] -= top * p[i];
    cur = nx;
  }
  std::vector<long> z(D, 0);
  z[0] = 1;
  for (int k = 0; k < n; ++k) {
    f->pow.push_back(z);
    std::vector<long> nx(D, 0);
    long top = z[D - 1];
    for (int i = D - 1; i > 0; --i) nx[i] = z[i - 1];
    for (int i = 0; i < D; ++i) nx[i] -= top * p[i];
    z = nx;
  }
  Field* raw = f.get();
  g_fields[n] = std::move(f);
  return raw;
}

}  // namespace

const Field* field(int n) {
  if (n < 1) throw Error("conductor must be positive");
  {
    std::lock_guard<std::recursive_mutex> lk(g_field_mu);
    auto it = g_fields.find(n);
    if (it != g_fields.end()) return it->second.get();
  }
  // build divisors first without the lock (recursive)
  for (int d = 1; d < n; ++d)
    if (n % d == 0) field(d);
  std::lock_guard<std::recursive_mutex> lk(g_field_mu);
  auto it = g_fields.find(n);
  if (it != g_fields.end()) return it->second.get();
  return build_field(n);
}

Root Root::make(long d, long k) {
  if (d < 1) throw Error("root order must be positive");
  k %= d;
  if (k < 0) k += d;
  long g = std::gcd(k, d);
  if (k == 0) return Root{1, 0};
  return Root{(int)(d / g), (int)(k / g)};
}

Root Root::operator*(const Root& o) const {
  long L = lcml(d, o.d);
  return make(L, (long)k * (L / d) + (long)o.k * (L / o.d));
}

std::string Root::residue() const {
  if (k == 0) return "0";
  return std::to_string(k) + "/" + std::to_string(d);
}

// ---------------------------------------------------------------- Cyclo

Cyclo make_raw(const Field* f, std::vector<mpz_class> num, mpz_class den) {
  Cyclo r(f);
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.normalize();
  return r;
}

Cyclo::Cyclo() : Cyclo(field(1)) {}

Cyclo::Cyclo(const Field* f) : f_(f), num_(f->deg), den_(1) {}

Cyclo::Cyclo(const Field* f, long v) : Cyclo(f) { num_[0] = v; }

Cyclo::Cyclo(const Field* f, const mpq_class& v) : Cyclo(f) {
  num_[0] = v.get_num();
  den_ = v.get_den();
}

Cyclo::Cyclo(const Field* f, std::vector<mpq_class> c) : Cyclo(f) {
  if ((int)c.size() > f->deg) {
    // fold via pow table: coefficient i of zeta^i
    std::vector<mpq_class> r(f->deg);
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      const auto& z = f->pow[i % f->n];
      for (int j = 0; j < f->deg; ++j)
        if (z[j]) r[j] += c[i] * z[j];
    }
    c = r;
  }
  c.resize(f->deg);
  mpz_class L = 1;
  for (auto& q : c) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den_mpz_t());
  for (int i = 0; i < f->deg; ++i) num_[i] = c[i].get_num() * (L / c[i].get_den());
  den_ = L;
  normalize();
}

void Cyclo::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& x : num_) x = -x;
  }
  if (den_ == 1) return;
  mpz_class g = den_;
  for (auto& x : num_) {
    if (g == 1) break;
    if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  bool allz = true;
  for (auto& x : num_)
    if (x != 0) allz = false;
  if (allz) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    for (auto& x : num_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

Cyclo Cyclo::zeta(const Field* f, long k) {
  long n = f->n;
  k %= n;
  if (k < 0) k += n;
  Cyclo r(f);
  for (int i = 0; i < f->deg; ++i) r.num_[i] = f->pow[k][i];
  return r;
}

Cyclo Cyclo::root(const Field* f, Root r) {
  long n = f->n;
  if (n % r.d == 0) return zeta(f, (long)r.k * (n / r.d));
  if (n % 2 == 1 && (2 * n) % r.d == 0) {
    // zeta_2n = -zeta_n^((n+1)/2)
    long e = (long)r.k * (2 * n / r.d);
    Cyclo z = zeta(f, e * ((n + 1) / 2));
    return (e % 2) ? -z : z;
  }
  throw Error("root of order " + std::to_string(r.d) + " not in Q(zeta_" + std::to_string(n) + ")");
}

int Cyclo::conductor() const { return f_->n; }

mpq_class Cyclo::coeff(int i) const {
  mpq_class q(num_[i], den_);
  q.canonicalize();
  return q;
}

std::vector<mpq_class> Cyclo::coeffs() const {
  std::vector<mpq_class> r;
  for (int i = 0; i < degree(); ++i) r.push_back(coeff(i));
  return r;
}

bool Cyclo::is_zero() const {
  for (auto& x : num_)
    if (x != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return false;
  return true;
}

bool Cyclo::is_one() const { return is_rational() && den_ == 1 && num_[0] == 1; }

mpq_class Cyclo::rational() const {
  if (!is_rational()) throw Error("not rational");
  return coeff(0);
}

namespace {
// constants promote into the other operand's field
bool promote(const Cyclo& a, const Cyclo& b, Cyclo& A, Cyclo& B) {
  if (a.fld() == b.fld()) return false;
  if (a.fld()->n == 1) {
    A = embed(a, b.fld());
    B = b;
    return true;
  }
  if (b.fld()->n == 1) {
    A = a;
    B = embed(b, a.fld());
    return true;
  }
  throw Error("field mismatch: Q(zeta_" + std::to_string(a.fld()->n) + ") vs Q(zeta_" +
              std::to_string(b.fld()->n) + ")");
}
}  // namespace

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& x : r.num_) x = -x;
  return r;
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
  if (a.fld() != b.fld()) {
    Cyclo A, B;
    promote(a, b, A, B);
    return A + B;
  }
  int D = a.degree();
  std::vector<mpz_class> num(D);
  if (a.den_ == b.den_) {
    for (int i = 0; i < D; ++i) num[i] = a.num_[i] + b.num_[i];
    return make_raw(a.f_, std::move(num), a.den_);
  }
  for (int i = 0; i < D; ++i) num[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
  return make_raw(a.f_, std::move(num), a.den_ * b.den_);
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  if (a.fld() != b.fld()) {
    Cyclo A, B;
    promote(a, b, A, B);
    return A * B;
  }
  const Field* f = a.f_;
  int D = f->deg;
  if (a.is_rational() || b.is_rational()) {
    const Cyclo& s = a.is_rational() ? a : b;
    const Cyclo& o = a.is_rational() ? b : a;
    std::vector<mpz_class> num(D);
    for (int i = 0; i < D; ++i) num[i] = o.num_[i] * s.num_[0];
    return make_raw(f, std::move(num), o.den_ * s.den_);
  }
  std::vector<mpz_class> c(2 * D - 1);
  for (int i = 0; i < D; ++i) {
    if (a.num_[i] == 0) continue;
    for (int j = 0; j < D; ++j)
      if (b.num_[j] != 0) mpz_addmul(c[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
  }
  for (int j = 2 * D - 2; j >= D; --j) {
    if (c[j] == 0) continue;
    const auto& r = f->red[j - D];
    for (int i = 0; i < D; ++i)
      if (r[i]) c[i] += c[j] * r[i];
  }
  c.resize(D);
  return make_raw(f, std::move(c), a.den_ * b.den_);
}

Cyclo Cyclo::mul_int(long v) const {
  std::vector<mpz_class> num(num_.size());
  for (size_t i = 0; i < num_.size(); ++i) num[i] = num_[i] * v;
  return make_raw(f_, std::move(num), den_);
}

namespace {
using QPoly = std::vector<mpq_class>;
void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
// a = q*b + r
void qdivmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  while (r.size() >= b.size() && !r.empty()) {
    mpq_class c = r.back() / b.back();
    size_t s = r.size() - b.size();
    q[s] = c;
    for (size_t i = 0; i < b.size(); ++i) r[s + i] -= c * b[i];
    r.pop_back();
    trim(r);
  }
}
QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}
QPoly qsub(const QPoly& a, const QPoly& b) {
  QPoly c(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  trim(c);
  return c;
}
}  // namespace

Cyclo Cyclo::inv() const {
  if (is_zero()) throw Error("division by zero");
  if (is_rational()) return Cyclo(f_, mpq_class(1) / rational());
  // extended euclid: s*a + t*phi = g (const)
  QPoly a = coeffs();
  trim(a);
  QPoly m(f_->phi.begin(), f_->phi.end());
  QPoly r0 = m, r1 = a, s0 = {}, s1 = {1};
  while (!(r1.size() == 1)) {
    if (r1.empty()) throw Error("non-invertible cyclotomic element");
    QPoly q, r;
    qdivmod(r0, r1, q, r);
    QPoly s = qsub(s0, qmul(q, s1));
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s;
  }
  mpq_class g = r1[0];
  for (auto& x : s1) x /= g;
  return Cyclo(f_, s1);
}

Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inv(); }

Cyclo Cyclo::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Cyclo r(f_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.f_ != b.f_) {
    if (a.f_->n == 1) return embed(a, b.f_) == b;
    if (b.f_->n == 1) return a == embed(b, a.f_);
    throw Error("comparing elements of different fields");
  }
  return a.den_ == b.den_ && a.num_ == b.num_;
}

size_t Cyclo::hash() const {
  size_t h = std::hash<int>()(f_->n) ^ (mpz_get_ui(den_.get_mpz_t()) * 0x9e3779b97f4a7c15ULL);
  for (auto& x : num_) {
    size_t v = mpz_get_ui(x.get_mpz_t()) ^ (size_t)(mpz_sgn(x.get_mpz_t()) + 1);
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Cyclo Cyclo::galois(long k) const {
  long n = f_->n;
  k %= n;
  if (k < 0) k += n;
  if (std::gcd(k, n) != 1) throw Error("galois exponent not a unit");
  int D = f_->deg;
  std::vector<mpz_class> num(D);
  for (int j = 0; j < D; ++j) {
    if (num_[j] == 0) continue;
    const auto& z = f_->pow[(j * k) % n];
    for (int i = 0; i < D; ++i)
      if (z[i]) num[i] += num_[j] * z[i];
  }
  return make_raw(f_, std::move(num), den_);
}

double Cyclo::re() const {
  double s = 0;
  for (int i = 0; i < degree(); ++i) s += coeff(i).get_d() * std::cos(2 * M_PI * i / f_->n);
  return s;
}
double Cyclo::im() const {
  double s = 0;
  for (int i = 0; i < degree(); ++i) s += coeff(i).get_d() * std::sin(2 * M_PI * i / f_->n);
  return s;
}

std::string Cyclo::str() const {
  std::ostringstream os;
  os << f_->n << ":[";
  for (int i = 0; i < degree(); ++i) {
    if (i) os << ",";
    os << coeff(i).get_str();
  }
  os << "]";
  return os.str();
}

Cyclo Cyclo::parse(const std::string& s0) {
  std::string s;
  for (char c : s0)
    if (!isspace((unsigned char)c)) s += c;
  auto colon = s.find(':');
  if (colon == std::string::npos && !s.empty() && s.find('[') == std::string::npos) {
    // bare rational
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error("bad cyclotomic literal: " + s0);
    q.canonicalize();
    return Cyclo(field(1), q);
  }
  if (colon == std::string::npos || s.size() < colon + 3 || s[colon + 1] != '[' || s.back() != ']')
    throw Error("bad cyclotomic literal: " + s0);
  int n = std::stoi(s.substr(0, colon));
  const Field* f = field(n);
  std::vector<mpq_class> c;
  std::string body = s.substr(colon + 2, s.size() - colon - 3);
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    mpq_class q;
    if (q.set_str(tok, 10) != 0) throw Error("bad rational: " + tok);
    q.canonicalize();
    c.push_back(q);
  }
  if ((int)c.size() != f->deg) throw Error("coefficient count does not match degree in " + s0);
  return Cyclo(f, c);
}

std::string Cyclo::pretty() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree() - 1; i >= 0; --i) {
    mpq_class c = coeff(i);
    if (c == 0) continue;
    bool neg = c < 0;
    if (neg) c = -c;
    std::string term;
    std::string mon = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
    if (i == 0)
      term = c.get_str();
    else if (c == 1)
      term = mon;
    else
      term = c.get_str() + "*" + mon;
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? "-" : "+") + term;
  }
  return out;
}

// ---------------------------------------------------------------- fields

Cyclo embed(const Cyclo& a, const Field* t) {
  int m = a.conductor(), n = t->n;
  if (m == n) return a;
  if (n % m != 0) throw Error("cannot embed Q(zeta_" + std::to_string(m) + ") into Q(zeta_" + std::to_string(n) + ")");
  int D = t->deg;
  std::vector<mpz_class> num(D);
  long s = n / m;
  for (int j = 0; j < a.degree(); ++j) {
    const mpz_class& c = a.nums()[j];
    if (c == 0) continue;
    const auto& z = t->pow[(j * s) % n];
    for (int i = 0; i < D; ++i)
      if (z[i]) num[i] += c * z[i];
  }
  return make_raw(t, std::move(num), a.den());
}

Cyclo embed(const Cyclo& a, int n) { return embed(a, field(n)); }

std::optional<Cyclo> try_descend(const Cyclo& a, int m) {
  int n = a.conductor();
  if (m == n) return a;
  if (n % m != 0) return std::nullopt;
  if (a.is_rational()) return Cyclo(field(m), a.rational());
  const Field* fm = field(m);
  const Field* fn = a.fld();
  int R = fn->deg, C = fm->deg;
  // columns: images of zeta_m^j; augmented with a
  std::vector<std::vector<mpq_class>> M(R, std::vector<mpq_class>(C + 1));
  long s = n / m;
  for (int j = 0; j < C; ++j) {
    const auto& z = fn->pow[(j * s) % n];
    for (int i = 0; i < R; ++i) M[i][j] = z[i];
  }
  for (int i = 0; i < R; ++i) M[i][C] = a.coeff(i);
  int row = 0;
  std::vector<int> piv;
  for (int col = 0; col < C && row < R; ++col) {
    int p = -1;
    for (int i = row; i < R; ++i)
      if (M[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(M[p], M[row]);
    mpq_class inv = 1 / M[row][col];
    for (int k = col; k <= C; ++k) M[row][k] *= inv;
    for (int i = 0; i < R; ++i)
      if (i != row && M[i][col] != 0) {
        mpq_class f = M[i][col];
        for (int k = col; k <= C; ++k) M[i][k] -= f * M[row][k];
      }
    piv.push_back(col);
    ++row;
  }
  for (int i = row; i < R; ++i)
    if (M[i][C] != 0) return std::nullopt;
  std::vector<mpq_class> b(C);
  for (int i = 0; i < row; ++i) b[piv[i]] = M[i][C];
  return Cyclo(fm, b);
}

int min_conductor(const Cyclo& a) {
  int n = a.conductor();
  for (int m = 1; m <= n; ++m)
    if (n % m == 0 && try_descend(a, m)) return m;
  return n;
}

int common_conductor(int a, int b) { return (int)lcml(a, b); }

namespace {
struct RootTable {
  int N = 1;
  std::unordered_map<Cyclo, int, CycloHash> idx;
};
std::mutex g_rt_mu;
std::map<int, std::unique_ptr<RootTable>> g_roots;
std::map<int, std::unique_ptr<RootTable>> g_cos;

const RootTable& root_table(const Field* f) {
  std::lock_guard<std::mutex> lk(g_rt_mu);
  auto& slot = g_roots[f->n];
  if (!slot) {
    auto t = std::make_unique<RootTable>();
    int n = f->n;
    t->N = n % 2 ? 2 * n : n;
    for (int k = 0; k < t->N; ++k) t->idx.emplace(Cyclo::root(f, Root::make(t->N, k)), k);
    slot = std::move(t);
  }
  return *slot;
}

const RootTable& cos_table(int M) {
  std::lock_guard<std::mutex> lk(g_rt_mu);
  auto& slot = g_cos[M];
  if (!slot) {
    auto t = std::make_unique<RootTable>();
    t->N = M;
    const Field* f = field(M);
    for (int k = 0; 2 * k <= M; ++k) t->idx.emplace(Cyclo::zeta(f, k) + Cyclo::zeta(f, -k), k);
    slot = std::move(t);
  }
  return *slot;
}
}  // namespace

std::optional<Root> as_root_of_unity(const Cyclo& a) {
  const RootTable& t = root_table(a.fld());
  auto it = t.idx.find(a);
  if (it == t.idx.end()) return std::nullopt;
  return Root::make(t.N, it->second);
}

std::optional<Root> as_two_cos(const Cyclo& t) {
  // any 2cos(2 pi k/d) inside Q(zeta_n) has d | 2n or d in {3,4,6}
  int n = t.conductor();
  int M = (int)lcml(2L * n, 12);
  const RootTable& tab = cos_table(M);
  auto it = tab.idx.find(embed(t, M));
  if (it == tab.idx.end()) return std::nullopt;
  return Root::make(M, it->second);
}

}  // namespace mcfin
